//! Named permutation groups used by the examples, tests and command line.

use crate::error::Result;
use crate::group::Group;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub solvable_hint: Option<bool>,
    /// Name of a catalog entry that is a normal subgroup of prime index,
    /// given by generators of the same degree.
    pub base: Option<String>,
}

impl CatalogEntry {
    pub fn group(&self) -> Result<Group> {
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        Group::from_cycles(self.degree, &gens)
    }
}

fn entry(name: &str, degree: usize, gens: &[&str], solvable: bool, base: Option<&str>) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        degree,
        generators: gens.iter().map(|s| s.to_string()).collect(),
        solvable_hint: Some(solvable),
        base: base.map(str::to_string),
    }
}

fn cycle(n: usize) -> String {
    let points: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    format!("({})", points.join(","))
}

const L2_32_GENS: [&str; 3] = [
    "(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14)(15,16)(17,18)(19,20)(21,22)(23,24)(25,26)(27,28)(29,30)(31,32)",
    "(2,3,5,9,17,6,11,21,14,27,18,8,15,29,30,32,28,20,4,7,13,25,22,16,31,26,24,12,23,10,19)",
    "(1,33)(3,19)(4,29)(5,10)(6,24)(7,15)(8,13)(9,23)(11,26)(12,17)(14,16)(18,25)(20,30)(21,31)(22,27)(28,32)",
];
const FROBENIUS_32: &str = "(3,5,17,14,28)(4,6,18,13,27)(7,21,30,23,26)(8,22,29,24,25)(9,11,15,31,20)(10,12,16,32,19)";

/// All catalog entries, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![entry("trivial", 1, &[], true, None)];
    for n in 2..=12 {
        out.push(entry(&format!("C{n}"), n, &[&cycle(n)], true, None));
    }
    out.extend([
        entry("S3", 3, &["(1,2)", "(1,2,3)"], true, Some("C3")),
        entry("D8", 4, &["(1,2,3,4)", "(1,3)"], true, None),
        entry("Q8", 8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"], true, None),
        entry("D12", 6, &["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"], true, None),
        entry("A4", 4, &["(1,2,3)", "(2,3,4)"], true, None),
        entry("S4", 4, &["(1,2)", "(1,2,3,4)"], true, Some("A4")),
        entry("SL23", 8, &["(3,4,5)(6,8,7)", "(1,4,7)(2,8,5)"], true, None),
        entry("GL23", 8, &["(3,4,5)(6,8,7)", "(1,3)(2,6)(5,7)"], true, Some("SL23")),
        entry("A5", 5, &["(1,2,3)", "(3,4,5)"], false, None),
        entry("S5", 5, &["(1,2)", "(1,2,3,4,5)"], false, Some("A5")),
        entry("A6", 6, &["(1,2,3)", "(2,3,4,5,6)"], false, None),
        entry("S6", 6, &["(1,2)", "(1,2,3,4,5,6)"], false, Some("A6")),
        entry("L2(32)", 33, &L2_32_GENS, false, None),
        entry(
            "L2(32):5",
            33,
            &[L2_32_GENS[0], L2_32_GENS[1], L2_32_GENS[2], FROBENIUS_32],
            false,
            Some("L2(32)"),
        ),
    ]);
    out
}

/// Looks up an entry by name, ignoring case.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        let mut e = 0;
        while n.is_multiple_of(q) {
            n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `n` into non-increasing parts.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Disjoint cycles of the given lengths, one generator each.
fn cycles_on_blocks(lengths: &[u64]) -> (usize, Vec<String>) {
    let mut next = 1;
    let mut gens = Vec::new();
    for &l in lengths {
        let points: Vec<String> = (next..next + l).map(|i| i.to_string()).collect();
        gens.push(format!("({})", points.join(",")));
        next += l;
    }
    ((next - 1) as usize, gens)
}

/// Every abelian group of order `n`, as a direct product of cyclic groups
/// of prime-power order acting on disjoint blocks, named by its invariant
/// factors, for example `C2xC6`.
pub fn abelian_groups(n: u64) -> Vec<CatalogEntry> {
    let mut choices: Vec<Vec<Vec<u64>>> = vec![vec![]];
    for (q, e) in prime_factors(n) {
        let mut next = Vec::new();
        for prefix in &choices {
            for part in partitions(e) {
                let mut c = prefix.clone();
                c.push(part.iter().map(|&k| q.pow(k)).collect());
                next.push(c);
            }
        }
        choices = next;
    }
    choices
        .into_iter()
        .map(|per_prime| {
            let divisors: Vec<u64> = per_prime.iter().flatten().copied().collect();
            let width = per_prime.iter().map(Vec::len).max().unwrap_or(0);
            // the i-th largest invariant factor takes the i-th largest power of every prime
            let mut invariants: Vec<u64> = (0..width)
                .map(|i| per_prime.iter().map(|ps| ps.get(i).copied().unwrap_or(1)).product())
                .collect();
            invariants.reverse();
            let name = if n == 1 {
                "trivial".to_string()
            } else {
                invariants.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x")
            };
            let (degree, gens) = cycles_on_blocks(&divisors);
            let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
            entry(&name, degree.max(1), &gens, true, None)
        })
        .collect()
}

/// The dihedral group of order `2n` acting on `n` points.
pub fn dihedral(n: usize) -> CatalogEntry {
    let reflection: Vec<String> = (1..=n / 2).map(|i| format!("({},{})", i, n + 1 - i)).collect();
    entry(
        &format!("D{}", 2 * n),
        n,
        &[&cycle(n), &reflection.concat()],
        true,
        None,
    )
}

/// The generalized quaternion group of order `2^k`, `k ≥ 3`, in its regular
/// representation.
pub fn quaternion(k: u32) -> CatalogEntry {
    let m = 1usize << (k - 1);
    // element x^i y^j is point i + m j + 1; generators act by right multiplication
    let point = |i: usize, j: usize| i % m + m * j + 1;
    let times = |i: usize, j: usize, a: usize, b: usize| -> (usize, usize) {
        match (j, b) {
            (0, _) => ((i + a) % m, b),
            (_, 0) => ((i + m - a % m) % m, 1),
            _ => ((i + m - a % m + m / 2) % m, 0),
        }
    };
    let image_cycles = |a: usize, b: usize| -> String {
        let images: Vec<usize> = (0..2 * m)
            .map(|p| {
                let (i, j) = times(p % m, p / m, a, b);
                point(i, j) - 1
            })
            .collect();
        let perm = crate::perm::Permutation::from_images(images.iter().map(|&x| x as u32).collect())
            .expect("multiplication is a bijection");
        perm.to_string()
    };
    entry(
        &format!("Q{}", 2 * m),
        2 * m,
        &[&image_cycles(1, 0), &image_cycles(0, 1)],
        true,
        None,
    )
}

/// Solvable groups of order at most `max_order`: every abelian group,
/// dihedral and generalized quaternion groups, and the solvable entries of
/// [`catalog`]. Names are unique; ordered by group order.
pub fn small_solvable_groups(max_order: u64) -> Result<Vec<CatalogEntry>> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    for n in 1..=max_order {
        out.extend(abelian_groups(n));
    }
    for n in 3..=(max_order / 2) as usize {
        out.push(dihedral(n));
    }
    let mut k = 3;
    while 1u64 << k <= max_order {
        out.push(quaternion(k));
        k += 1;
    }
    for e in catalog() {
        if e.solvable_hint == Some(true) {
            out.push(e);
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut keyed = Vec::new();
    for e in out {
        if !seen.insert(e.name.clone()) {
            continue;
        }
        let order = e.group()?.order();
        if order <= max_order {
            keyed.push((order, e));
        }
    }
    keyed.sort_by_key(|(o, _)| *o);
    Ok(keyed.into_iter().map(|(_, e)| e).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::is_solvable;

    #[test]
    fn orders_and_hints() {
        let expected = [
            ("trivial", 1),
            ("C7", 7),
            ("S3", 6),
            ("D8", 8),
            ("Q8", 8),
            ("D12", 12),
            ("A4", 12),
            ("S4", 24),
            ("SL23", 24),
            ("GL23", 48),
            ("A5", 60),
            ("S5", 120),
            ("A6", 360),
            ("S6", 720),
            ("L2(32)", 32736),
            ("L2(32):5", 163680),
        ];
        for (name, order) in expected {
            let e = lookup(name).unwrap();
            let g = e.group().unwrap();
            assert_eq!(g.order(), order, "{name}");
            if order <= 720 {
                assert_eq!(Some(is_solvable(&g)), e.solvable_hint, "{name}");
            }
        }
    }

    #[test]
    fn bases_are_normal_of_prime_index() {
        for e in catalog() {
            if let Some(b) = &e.base {
                let g = e.group().unwrap();
                let a = lookup(b).unwrap().group().unwrap();
                assert!(a.is_normal_in(&g), "{}", e.name);
                let idx = g.order() / a.order();
                assert!(crate::extension::is_prime(idx), "{}", e.name);
            }
        }
    }

    #[test]
    fn generated_families() {
        let names: Vec<String> = abelian_groups(16).into_iter().map(|e| e.name).collect();
        assert_eq!(names, ["C16", "C2xC8", "C4xC4", "C2xC2xC4", "C2xC2xC2xC2"]);
        let c2c6 = abelian_groups(12);
        assert_eq!(c2c6.len(), 2);
        assert_eq!(c2c6[1].name, "C2xC6");
        assert_eq!(c2c6[1].group().unwrap().order(), 12);
        assert_eq!(dihedral(5).group().unwrap().order(), 10);
        let q16 = quaternion(4).group().unwrap();
        assert_eq!(q16.order(), 16);
        assert_eq!(q16.iter().filter(|x| x.order() == 2).count(), 1);
        let all = small_solvable_groups(24).unwrap();
        assert!(all.iter().any(|e| e.name == "SL23"));
        assert!(all
            .windows(2)
            .all(|w| w[0].group().unwrap().order() <= w[1].group().unwrap().order()));
    }

    #[test]
    fn q8_and_gl23_structure() {
        let q8 = lookup("Q8").unwrap().group().unwrap();
        let involutions = q8.iter().filter(|x| x.order() == 2).count();
        assert_eq!(involutions, 1);
        let gl = lookup("gl23").unwrap().group().unwrap();
        let sl = lookup("SL23").unwrap().group().unwrap();
        assert!(sl.is_subgroup_of(&gl));
    }
}
