//! Consistency checks for a subgroup pattern.

use std::fmt;

use crate::conjugacy::{normalizer, ClassIdentifier};
use crate::dress::dress_coefficients_with;
use crate::error::Result;
use crate::series::prime_index_normal_subgroups;
use crate::tom::SubgroupPattern;

/// Normal subgroups of prime index examined per class and prime.
pub const CONGRUENCE_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    /// Table size, subgroup membership.
    Shape,
    /// Classes sorted by order, zero marks where the order does not divide.
    Ordering,
    Diagonal,
    FirstColumn,
    LastRow,
    Divisibility,
    Dress,
    ColumnCongruence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.check, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
    /// Individual conditions evaluated.
    pub checked: usize,
    /// Things that could not be checked, such as classes with too many
    /// normal subgroups of prime index.
    pub skipped: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, check: Check, message: String) {
        self.violations.push(Violation { check, message });
    }

    fn merge(&mut self, other: VerifyReport) {
        self.violations.extend(other.violations);
        self.checked += other.checked;
        self.skipped.extend(other.skipped);
    }
}

fn label(p: &SubgroupPattern, i: usize) -> String {
    format!("class {i} (order {})", p.classes[i].order())
}

/// Every row `y` of the table satisfies `Σ n(U, H_i) y_i ≡ 0 mod |N(U):U|`
/// for every class representative `U`.
pub fn verify_dress(p: &SubgroupPattern) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let ident = ClassIdentifier::new(&p.group, &p.classes);
    let n = p.classes.len();
    for (u, rep) in p.classes.iter().enumerate() {
        let dress = dress_coefficients_with(&p.group, &ident, rep, None)?;
        for k in 0..n {
            let row: Vec<u64> = (0..n).map(|j| p.table.get(k, j)).collect();
            let r = dress.residue(&row);
            report.checked += 1;
            if r != 0 {
                report.fail(
                    Check::Dress,
                    format!(
                        "row {k}: congruence at U = {} leaves residue {r} modulo {}",
                        label(p, u),
                        dress.modulus
                    ),
                );
            }
        }
    }
    Ok(report)
}

/// Shape, ordering, diagonal, first column, last row and divisibility.
pub fn verify_structure(p: &SubgroupPattern) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let n = p.classes.len();
    if p.table.len() != n {
        report.fail(Check::Shape, format!("{n} classes but {} rows", p.table.len()));
        return Ok(report);
    }
    if n == 0 {
        report.fail(Check::Shape, "no classes".to_string());
        return Ok(report);
    }
    for (i, h) in p.classes.iter().enumerate() {
        report.checked += 1;
        if !h.is_subgroup_of(&p.group) {
            report.fail(Check::Shape, format!("{} is not a subgroup of the group", label(p, i)));
        }
    }
    if !report.passed() {
        return Ok(report);
    }
    let g = p.group.order();
    for i in 0..n {
        let k = p.classes[i].order();
        if i > 0 && p.classes[i - 1].order() > k {
            report.fail(Check::Ordering, format!("{} follows a larger class", label(p, i)));
        }
        for j in 0..=i {
            report.checked += 1;
            let h = p.classes[j].order();
            let m = p.table.get(i, j);
            if m != 0 && (!k.is_multiple_of(h) || (j != i && h == k)) {
                report.fail(
                    Check::Ordering,
                    format!("row {i}, column {j}: mark {m} where no conjugate fits"),
                );
            }
        }
        let d = p.table.get(i, i);
        let expected = normalizer(&p.group, &p.classes[i])?.order() / k;
        report.checked += 3;
        if d != expected {
            report.fail(
                Check::Diagonal,
                format!("row {i}: diagonal {d}, normalizer index {expected}"),
            );
        }
        if p.table.get(i, 0) != g / k {
            report.fail(
                Check::FirstColumn,
                format!("row {i}: first mark {}, index {}", p.table.get(i, 0), g / k),
            );
        }
        if d != 0 {
            if let Some(j) = (0..=i).find(|&j| !p.table.get(i, j).is_multiple_of(d)) {
                report.fail(
                    Check::Divisibility,
                    format!(
                        "row {i}: mark {} at column {j} is not a multiple of {d}",
                        p.table.get(i, j)
                    ),
                );
            }
        }
    }
    let last = n - 1;
    report.checked += 1;
    if p.classes[last].order() != g {
        report.fail(Check::LastRow, "the last class is not the whole group".to_string());
    } else if let Some(j) = (0..n).find(|&j| p.table.get(last, j) != 1) {
        report.fail(
            Check::LastRow,
            format!("last row has {} at column {j}", p.table.get(last, j)),
        );
    }
    Ok(report)
}

/// Pairs `(v, u, q)` where the representative of class `u` is conjugate to a
/// normal subgroup of index `q` in that of class `v`.
pub fn congruence_pairs(p: &SubgroupPattern) -> (Vec<(usize, usize, u64)>, Vec<String>) {
    let ident = ClassIdentifier::new(&p.group, &p.classes);
    let mut pairs = Vec::new();
    let mut skipped = Vec::new();
    for (v, rep) in p.classes.iter().enumerate() {
        let mut m = rep.order();
        let mut q = 2;
        while m > 1 {
            if m % q == 0 {
                while m % q == 0 {
                    m /= q;
                }
                match prime_index_normal_subgroups(rep, q, CONGRUENCE_CAP) {
                    Some(hs) => {
                        for h in hs {
                            match ident.identify_strict(&h) {
                                Some(u) => pairs.push((v, u, q)),
                                None => skipped.push(format!(
                                    "{}: a normal subgroup of index {q} matches no class",
                                    label(p, v)
                                )),
                            }
                        }
                    }
                    None => skipped.push(format!("{}: too many normal subgroups of index {q}", label(p, v))),
                }
            }
            q += 1;
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    (pairs, skipped)
}

/// For `U` normal of prime index `q` in `V`, every column satisfies
/// `β(V) ≡ β(U) (mod q)` and `β(V) ≤ β(U)`.
pub fn verify_column_congruences(p: &SubgroupPattern) -> VerifyReport {
    let mut report = VerifyReport::default();
    let (pairs, skipped) = congruence_pairs(p);
    report.skipped = skipped;
    for (v, u, q) in pairs {
        for k in 0..p.classes.len() {
            let (a, b) = (p.table.get(k, v), p.table.get(k, u));
            report.checked += 1;
            if a > b || (b - a) % q != 0 {
                report.fail(
                    Check::ColumnCongruence,
                    format!("row {k}: mark {a} at column {v} and {b} at its index-{q} subgroup column {u}"),
                );
            }
        }
    }
    report
}

/// The full suite.
pub fn verify_pattern(p: &SubgroupPattern) -> Result<VerifyReport> {
    let mut report = verify_structure(p)?;
    if report.violations.iter().any(|v| v.check == Check::Shape) {
        return Ok(report);
    }
    report.merge(verify_dress(p)?);
    report.merge(verify_column_congruences(p));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::oracle::table_of_marks_brute;
    use crate::tom::TableOfMarks;

    #[test]
    fn oracle_tables_pass() {
        for gens in [vec!["(1,2)", "(1,2,3,4)"], vec!["(1,2,3)", "(3,4,5)"]] {
            let g = Group::from_cycles(5, &gens).unwrap();
            let p = table_of_marks_brute(&g).unwrap();
            let r = verify_pattern(&p).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
            assert!(r.skipped.is_empty());
        }
        let t = crate::tom::SubgroupPattern::trivial(1);
        assert!(verify_pattern(&t).unwrap().passed());
    }

    #[test]
    fn perturbation_is_caught() {
        let s4 = Group::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let mut p = table_of_marks_brute(&s4).unwrap();
        let mut rows = p.table.rows().to_vec();
        rows[4][1] += 1;
        p.table = TableOfMarks::from_rows(rows).unwrap();
        let r = verify_pattern(&p).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.check == Check::Dress));
    }
}
