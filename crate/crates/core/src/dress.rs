//! Dress congruences: the coefficients `n(U, H)` and a small solver for
//! linear constraints over finite candidate sets.

use rustc_hash::FxHashSet;

use crate::action::coset_key;
use crate::conjugacy::{normalizer, ClassIdentifier};
use crate::error::{Error, Result};
use crate::group::Group;

/// For a subgroup `U`, the number `n(U, H_i)` of cosets `Ua` in `N(U)/U`
/// with `<U, a>` conjugate to each class `H_i`.
///
/// Every vector of marks `y` satisfies `Σ n(U, H_i) y_i ≡ 0 (mod modulus)`.
#[derive(Debug, Clone)]
pub struct DressRow {
    pub u: Group,
    pub coeffs: Vec<u64>,
    /// `|N(U) : U|`.
    pub modulus: u64,
    /// `|N_A(U) : U|` when a base subgroup `A` was supplied and `U ≤ A`.
    pub blue_part_size: Option<u64>,
}

impl DressRow {
    /// `Σ n(U, H_i) y_i mod modulus`; zero for every row of a table of marks.
    pub fn residue(&self, marks: &[u64]) -> u64 {
        let sum: u128 = self
            .coeffs
            .iter()
            .zip(marks)
            .map(|(&c, &y)| c as u128 * y as u128)
            .sum();
        (sum % self.modulus as u128) as u64
    }

    /// Indices with a non-zero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] > 0).collect()
    }
}

pub fn dress_coefficients(s: &Group, classes: &[Group], u: &Group) -> Result<DressRow> {
    let ident = ClassIdentifier::new(s, classes);
    dress_coefficients_with(s, &ident, u, None)
}

/// As [`dress_coefficients`], with a prepared identifier and optionally the
/// base subgroup used to count the cosets inside it.
pub fn dress_coefficients_with(
    s: &Group,
    ident: &ClassIdentifier,
    u: &Group,
    base: Option<&Group>,
) -> Result<DressRow> {
    let n = normalizer(s, u)?;
    let mut coeffs = vec![0u64; ident.len()];
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut blue = 0u64;
    let u_in_base = base.map(|a| u.is_subgroup_of(a));
    for a in n.iter() {
        if !seen.insert(coset_key(u, &a)) {
            continue;
        }
        let h = u.closure_with(std::slice::from_ref(&a));
        let i = ident
            .identify(&h)
            .ok_or_else(|| Error::UnmatchedClass(format!("<U, {a}> of order {}", h.order())))?;
        coeffs[i] += 1;
        if let Some(b) = base {
            if b.contains(&a) {
                blue += 1;
            }
        }
    }
    Ok(DressRow {
        u: u.clone(),
        coeffs,
        modulus: n.order() / u.order(),
        blue_part_size: match u_in_base {
            Some(true) => Some(blue),
            _ => None,
        },
    })
}

/// What the weighted sum of the unknowns must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    /// `known + Σ c_j x_j ≡ 0 (mod m)`.
    Modular(u64),
    /// `known + Σ c_j x_j` lies in the given set.
    OneOf(Vec<u64>),
}

/// A linear constraint `known + Σ coeffs[j] · x_j ∈ target` over unknowns
/// `x_j` that range over finite candidate sets.
#[derive(Debug, Clone)]
pub struct LinearConstraint {
    pub known: u64,
    pub coeffs: Vec<u64>,
    pub target: Target,
}

/// Result of solving a [`LinearConstraint`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved {
    /// Surviving candidates of each unknown.
    pub domains: Vec<Vec<u64>>,
    /// Consistent assignments, at most the requested number.
    pub solutions: Vec<Vec<u64>>,
    /// Whether `solutions` is the complete list.
    pub complete: bool,
}

impl LinearConstraint {
    fn reduce(&self, x: u64) -> u64 {
        match self.target {
            Target::Modular(m) => x % m,
            Target::OneOf(_) => x,
        }
    }

    fn limit(&self) -> Option<u64> {
        match &self.target {
            Target::Modular(_) => None,
            Target::OneOf(v) => v.iter().copied().max(),
        }
    }

    fn accepts(&self, x: u64) -> bool {
        match &self.target {
            Target::Modular(m) => x.is_multiple_of(*m),
            Target::OneOf(v) => v.contains(&x),
        }
    }

    /// Reachable partial sums of the unknowns `from..`, reduced.
    fn suffix_sums(&self, domains: &[Vec<u64>]) -> Vec<FxHashSet<u64>> {
        let k = domains.len();
        let limit = self.limit();
        let mut out = vec![FxHashSet::default(); k + 1];
        out[k].insert(0);
        for j in (0..k).rev() {
            let mut next = FxHashSet::default();
            for &b in &out[j + 1] {
                for &v in &domains[j] {
                    let x = b + self.coeffs[j] * v;
                    if limit.is_none_or(|l| x <= l) {
                        next.insert(self.reduce(x));
                    }
                }
            }
            out[j] = next;
        }
        out
    }

    fn completes(&self, partial: u64, suffix: &FxHashSet<u64>) -> bool {
        match &self.target {
            Target::Modular(m) => {
                let need = (m - partial % m) % m;
                suffix.contains(&need)
            }
            Target::OneOf(v) => v.iter().any(|&t| t >= partial && suffix.contains(&(t - partial))),
        }
    }

    /// Prunes each domain to the values occurring in some consistent
    /// assignment, and lists up to `max_solutions` such assignments.
    pub fn solve(&self, domains: &[Vec<u64>], max_solutions: usize) -> Result<Solved> {
        assert_eq!(domains.len(), self.coeffs.len());
        let k = domains.len();
        let suffix = self.suffix_sums(domains);
        let limit = self.limit();
        // forward pass over reachable prefixes, keeping values that extend
        // to a full solution
        let mut prefixes: FxHashSet<u64> = std::iter::once(self.reduce(self.known)).collect();
        let mut pruned: Vec<Vec<u64>> = Vec::with_capacity(k);
        for j in 0..k {
            let mut keep = Vec::new();
            let mut next = FxHashSet::default();
            for &v in &domains[j] {
                let mut ok = false;
                for &a in &prefixes {
                    let x = a + self.coeffs[j] * v;
                    if limit.is_some_and(|l| x > l) {
                        continue;
                    }
                    if self.completes(x, &suffix[j + 1]) {
                        ok = true;
                        next.insert(self.reduce(x));
                    }
                }
                if ok {
                    keep.push(v);
                }
            }
            if keep.is_empty() {
                return Err(Error::Inconsistent(format!(
                    "no value of unknown {j} satisfies the constraint"
                )));
            }
            pruned.push(keep);
            prefixes = next;
        }
        if k == 0 && !self.accepts(self.known) {
            return Err(Error::Inconsistent(format!(
                "constant sum {} violates the constraint",
                self.known
            )));
        }
        let suffix = self.suffix_sums(&pruned);
        let mut solutions = Vec::new();
        let mut complete = true;
        let mut current = Vec::with_capacity(k);
        self.enumerate(
            &pruned,
            &suffix,
            self.reduce(self.known),
            &mut current,
            &mut solutions,
            max_solutions,
            &mut complete,
        );
        Ok(Solved {
            domains: pruned,
            solutions,
            complete,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        domains: &[Vec<u64>],
        suffix: &[FxHashSet<u64>],
        partial: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        max: usize,
        complete: &mut bool,
    ) {
        let j = current.len();
        if j == domains.len() {
            if self.accepts(partial) {
                if out.len() < max {
                    out.push(current.clone());
                } else {
                    *complete = false;
                }
            }
            return;
        }
        for &v in &domains[j] {
            if !*complete {
                return;
            }
            let x = partial + self.coeffs[j] * v;
            if self.limit().is_some_and(|l| x > l) || !self.completes(x, &suffix[j + 1]) {
                continue;
            }
            current.push(v);
            self.enumerate(domains, suffix, self.reduce(x), current, out, max, complete);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::subgroup_classes_brute;

    #[test]
    fn coefficients_sum_to_modulus() {
        let s4 = Group::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let classes = subgroup_classes_brute(&s4, 100).unwrap();
        for u in &classes {
            let row = dress_coefficients(&s4, &classes, u).unwrap();
            assert_eq!(row.coeffs.iter().sum::<u64>(), row.modulus);
        }
        let top = dress_coefficients(&s4, &classes, &s4).unwrap();
        assert_eq!(top.modulus, 1);
        assert_eq!(top.support(), vec![classes.len() - 1]);
    }

    #[test]
    fn modular_constraint() {
        // x + 2y ≡ 0 mod 4 with x ∈ {0,1,2}, y ∈ {0,1}
        let c = LinearConstraint {
            known: 0,
            coeffs: vec![1, 2],
            target: Target::Modular(4),
        };
        let s = c.solve(&[vec![0, 1, 2], vec![0, 1]], 10).unwrap();
        assert_eq!(s.domains, vec![vec![0, 2], vec![0, 1]]);
        assert_eq!(s.solutions, vec![vec![0, 0], vec![2, 1]]);
        assert!(s.complete);
    }

    #[test]
    fn bounded_constraint() {
        let c = LinearConstraint {
            known: 0,
            coeffs: vec![1, 1],
            target: Target::OneOf(vec![2]),
        };
        let s = c.solve(&[vec![0, 2], vec![0, 2]], 10).unwrap();
        assert_eq!(s.domains, vec![vec![0, 2], vec![0, 2]]);
        assert_eq!(s.solutions, vec![vec![0, 2], vec![2, 0]]);
        let none = LinearConstraint {
            known: 1,
            coeffs: vec![2],
            target: Target::Modular(2),
        };
        assert!(none.solve(&[vec![0, 1]], 4).is_err());
        let capped = c.solve(&[vec![0, 2], vec![0, 2]], 1).unwrap();
        assert!(!capped.complete);
    }
}
