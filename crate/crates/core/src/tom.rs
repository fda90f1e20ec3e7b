//! Tables of marks, subgroup patterns, and comparison up to class reordering.

use std::fmt;

use crate::conjugacy::{normalizer, ClassIdentifier};
use crate::error::{Error, Result};
use crate::group::Group;

/// A square matrix of marks stored as its lower triangle: row `i` holds the
/// entries of columns `0..=i`, and every entry above the diagonal is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TableOfMarks {
    rows: Vec<Vec<u64>>,
}

impl TableOfMarks {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::InvalidPattern(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    i + 1
                )));
            }
        }
        Ok(TableOfMarks { rows })
    }

    /// Builds a table from a full square matrix, which must vanish above the
    /// diagonal.
    pub fn from_square(matrix: &[Vec<u64>]) -> Result<Self> {
        let n = matrix.len();
        let mut rows = Vec::with_capacity(n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidPattern(format!("row {i} is not of length {n}")));
            }
            if row[i + 1..].iter().any(|&x| x != 0) {
                return Err(Error::InvalidPattern(format!("row {i} is nonzero above the diagonal")));
            }
            rows.push(row[..=i].to_vec());
        }
        Ok(TableOfMarks { rows })
    }

    /// The table of the trivial group.
    pub fn trivial() -> Self {
        TableOfMarks { rows: vec![vec![1]] }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        if j > i {
            0
        } else {
            self.rows[i][j]
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.rows[i][i]).collect()
    }

    pub fn to_square(&self) -> Vec<Vec<u64>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// The table with classes reordered: class `i` of the result is class
    /// `perm[i]` of `self`. Fails if the reordering breaks triangularity.
    pub fn reorder(&self, perm: &[usize]) -> Result<Self> {
        let square: Vec<Vec<u64>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        Self::from_square(&square)
    }
}

impl fmt::Display for TableOfMarks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|&x| if x == 0 { ".".to_string() } else { x.to_string() })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Work counters of one table computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    /// Marks decided by explicit incidence counting.
    pub probes: u64,
    /// Largest set of conjugates examined by a single probe.
    pub max_probe: u64,
    pub millis: u64,
}

/// Class representatives of a group together with its table of marks.
#[derive(Debug, Clone)]
pub struct SubgroupPattern {
    pub group: Group,
    pub classes: Vec<Group>,
    pub table: TableOfMarks,
    pub stats: Stats,
}

impl SubgroupPattern {
    pub fn trivial(degree: usize) -> Self {
        let g = Group::trivial(degree);
        SubgroupPattern {
            group: g.clone(),
            classes: vec![g],
            table: TableOfMarks::trivial(),
            stats: Stats::default(),
        }
    }

    /// `|N_G(H)|` for each class, read off the diagonal.
    pub fn normalizer_orders(&self) -> Vec<u64> {
        self.table
            .diagonal()
            .iter()
            .zip(&self.classes)
            .map(|(d, h)| d * h.order())
            .collect()
    }

    /// Number of conjugates of each class representative.
    pub fn class_lengths(&self) -> Vec<u64> {
        self.normalizer_orders()
            .iter()
            .map(|n| self.group.order() / n)
            .collect()
    }

    /// Checks that the stored classes really have the normalizer orders the
    /// diagonal claims.
    pub fn check_normalizers(&self) -> Result<()> {
        for (i, (h, n)) in self.classes.iter().zip(self.normalizer_orders()).enumerate() {
            let actual = normalizer(&self.group, h)?.order();
            if actual != n {
                return Err(Error::InvalidPattern(format!(
                    "class {i}: normalizer order {actual}, table says {n}"
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of comparing two patterns or tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    /// `permutation[i]` is the class of the second operand matched with
    /// class `i` of the first.
    pub permutation: Option<Vec<usize>>,
    pub reason: Option<String>,
}

impl MatchReport {
    pub fn matched(&self) -> bool {
        self.permutation.is_some()
    }

    fn fail(reason: String) -> Self {
        MatchReport {
            permutation: None,
            reason: Some(reason),
        }
    }
}

fn tables_agree(a: &TableOfMarks, b: &TableOfMarks, perm: &[usize]) -> Option<(usize, usize)> {
    let n = a.len();
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j) != b.get(perm[i], perm[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Looks for a reordering of `b`'s classes that makes the tables equal.
/// Classes are paired by backtracking, pruned by diagonal, first column and
/// the sorted multiset of row entries.
pub fn compare_tables(a: &TableOfMarks, b: &TableOfMarks) -> MatchReport {
    let n = a.len();
    if n != b.len() {
        return MatchReport::fail(format!("{} classes vs {}", n, b.len()));
    }
    let signature = |sq: &[Vec<u64>], i: usize| {
        let mut row = sq[i].clone();
        row.sort_unstable();
        let mut col: Vec<u64> = (0..n).map(|k| sq[k][i]).collect();
        col.sort_unstable();
        (sq[i][i], sq[i][0], row, col)
    };
    let (qa, qb) = (a.to_square(), b.to_square());
    let sa: Vec<_> = (0..n).map(|i| signature(&qa, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| signature(&qb, i)).collect();
    let candidates: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| sa[i] == sb[j]).collect()).collect();
    if let Some(i) = candidates.iter().position(Vec::is_empty) {
        return MatchReport::fail(format!("class {i} has no counterpart"));
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        i: usize,
        a: &TableOfMarks,
        b: &TableOfMarks,
        cands: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == perm.len() {
            return true;
        }
        for &c in &cands[i] {
            if used[c] {
                continue;
            }
            let consistent = a.get(i, i) == b.get(c, c)
                && (0..i).all(|j| {
                    let d = perm[j];
                    a.get(i, j) == b.get(c, d) && a.get(j, i) == b.get(d, c)
                });
            if consistent {
                perm[i] = c;
                used[c] = true;
                if search(i + 1, a, b, cands, perm, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        perm[i] = usize::MAX;
        false
    }
    if search(0, a, b, &candidates, &mut perm, &mut used) {
        debug_assert!(tables_agree(a, b, &perm).is_none());
        MatchReport {
            permutation: Some(perm),
            reason: None,
        }
    } else {
        MatchReport::fail("no class bijection makes the tables equal".to_string())
    }
}

/// Matches classes by conjugacy in the common ambient group and then checks
/// that the tables agree under that matching. Falls back to
/// [`compare_tables`] when the groups differ.
pub fn compare_patterns(a: &SubgroupPattern, b: &SubgroupPattern) -> MatchReport {
    if a.classes.len() != b.classes.len() {
        return MatchReport::fail(format!("{} classes vs {}", a.classes.len(), b.classes.len()));
    }
    if !a.group.same_elements(&b.group) {
        return compare_tables(&a.table, &b.table);
    }
    let ident = ClassIdentifier::new(&b.group, &b.classes);
    let mut perm = Vec::with_capacity(a.classes.len());
    let mut used = vec![false; b.classes.len()];
    for (i, h) in a.classes.iter().enumerate() {
        match ident.identify_strict(h) {
            Some(j) if !used[j] => {
                used[j] = true;
                perm.push(j);
            }
            Some(j) => return MatchReport::fail(format!("classes {i} and another both match class {j}")),
            None => return MatchReport::fail(format!("class {i} is conjugate to no class of the other pattern")),
        }
    }
    match tables_agree(&a.table, &b.table, &perm) {
        None => MatchReport {
            permutation: Some(perm),
            reason: None,
        },
        Some((i, j)) => MatchReport::fail(format!(
            "mark at ({i}, {j}) is {} vs {}",
            a.table.get(i, j),
            b.table.get(perm[i], perm[j])
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table() -> TableOfMarks {
        TableOfMarks::from_rows(vec![vec![6], vec![3, 1], vec![2, 0, 2], vec![1, 1, 1, 1]]).unwrap()
    }

    #[test]
    fn shapes() {
        assert!(TableOfMarks::from_rows(vec![vec![1, 2]]).is_err());
        let t = s3_table();
        assert_eq!(t.get(0, 3), 0);
        assert_eq!(t.diagonal(), vec![6, 1, 2, 1]);
        assert_eq!(TableOfMarks::from_square(&t.to_square()).unwrap(), t);
        assert!(TableOfMarks::from_square(&[vec![1, 1], vec![1, 1]]).is_err());
        assert_eq!(t.to_string(), "6\n3 1\n2 . 2\n1 1 1 1\n");
    }

    #[test]
    fn reordering_matches() {
        let t = s3_table();
        let swapped = t.reorder(&[0, 2, 1, 3]).unwrap();
        let r = compare_tables(&t, &swapped);
        assert_eq!(r.permutation, Some(vec![0, 2, 1, 3]));
        assert!(compare_tables(&t, &t).matched());
        let c4 = TableOfMarks::from_rows(vec![vec![4], vec![2, 2], vec![1, 1, 1]]).unwrap();
        assert!(!compare_tables(&t, &c4).matched());
        let other = TableOfMarks::from_rows(vec![vec![6], vec![3, 1], vec![2, 0, 2], vec![1, 1, 0, 1]]).unwrap();
        assert!(!compare_tables(&t, &other).matched());
    }
}
