//! Permutation groups given by generators, with an eagerly built
//! deterministic stabilizer chain.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

/// One level of a stabilizer chain: the orbit of `base` under the pointwise
/// stabilizer of the earlier base points, with coset representatives.
#[derive(Clone)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    pub pos: Vec<u32>,
    pub reps: Vec<Permutation>,
    pub inv_reps: Vec<Permutation>,
    // number of orbit positions whose Schreier generators have been sifted, per generator
    checked: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            reps: vec![Permutation::identity(degree)],
            inv_reps: vec![Permutation::identity(degree)],
            checked: Vec::new(),
        }
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        self.checked.push(0);
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for gen in &self.gens {
                let img = gen.act(beta);
                if self.pos[img as usize] == NONE {
                    let rep = &self.reps[i] * gen;
                    self.pos[img as usize] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Default)]
pub(crate) struct StabChain {
    pub levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain::default();
        for g in gens {
            let (res, depth) = chain.strip(g, 0);
            if !res.is_identity() {
                chain.insert(degree, depth, res);
            }
        }
        chain
    }

    /// Sifts `g` through the levels starting at `from`. Returns the residue
    /// and the level at which sifting stopped.
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.act(level.base);
            let k = level.pos[beta as usize];
            if k == NONE {
                return (h, l);
            }
            if k != 0 {
                h = &h * &level.inv_reps[k as usize];
            }
        }
        (h, self.levels.len())
    }

    /// Adds `g`, which fixes the base points of levels `< depth`, as a strong
    /// generator on levels `0..=depth` and restores the Schreier-Sims
    /// invariant.
    fn insert(&mut self, degree: usize, depth: usize, g: Permutation) {
        if depth == self.levels.len() {
            let b = g.smallest_moved_point().expect("non-identity residue");
            self.levels.push(Level::new(degree, b));
        }
        for l in 0..=depth {
            self.levels[l].add_gen(g.clone());
        }
        // re-examine Schreier generators from the deepest touched level upwards
        let mut i = depth as isize;
        while i >= 0 {
            match self.check_level(i as usize) {
                Some((j, res)) => {
                    if j == self.levels.len() {
                        let b = res.smallest_moved_point().expect("non-identity residue");
                        self.levels.push(Level::new(degree, b));
                    }
                    for l in (i as usize + 1)..=j {
                        self.levels[l].add_gen(res.clone());
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// Finds one Schreier generator of level `i` that does not sift, marking
    /// checked pairs along the way.
    fn check_level(&mut self, i: usize) -> Option<(usize, Permutation)> {
        let ngens = self.levels[i].gens.len();
        for gi in 0..ngens {
            loop {
                let level = &self.levels[i];
                let k = level.checked[gi];
                if k >= level.orbit.len() {
                    break;
                }
                let x = &level.gens[gi];
                let beta = level.orbit[k];
                let img = x.act(beta);
                let kk = level.pos[img as usize] as usize;
                let s = &(&level.reps[k] * x) * &level.inv_reps[kk];
                self.levels[i].checked[gi] = k + 1;
                if s.is_identity() {
                    continue;
                }
                let (res, j) = self.strip(&s, i + 1);
                if !res.is_identity() {
                    return Some((j, res));
                }
            }
        }
        None
    }

    fn order(&self) -> u64 {
        self.levels.iter().fold(1u64, |acc, l| {
            acc.checked_mul(l.orbit.len() as u64)
                .expect("group order overflows u64")
        })
    }
}

struct Inner {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
    order: u64,
    elements: OnceLock<Vec<Permutation>>,
    classes: OnceLock<crate::conjugacy::ElementClasses>,
}

/// A permutation group. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

/// Subgroups are groups whose generators lie in an ambient group; the
/// ambient is passed explicitly wherever it matters.
pub type SubgroupHandle = Group;
pub type GroupHandle = Group;

impl Group {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(Self::from_gens_unchecked(degree, gens))
    }

    /// Parses generators in cycle notation.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Group> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        Group::new(degree, gens)
    }

    pub(crate) fn from_gens_unchecked(degree: usize, gens: Vec<Permutation>) -> Group {
        let mut gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        gens.dedup();
        let chain = StabChain::build(degree, &gens);
        let order = chain.order();
        Group {
            inner: Arc::new(Inner {
                degree,
                gens,
                chain,
                order,
                elements: OnceLock::new(),
                classes: OnceLock::new(),
            }),
        }
    }

    pub fn trivial(degree: usize) -> Group {
        Self::from_gens_unchecked(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.gens
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.inner.degree)
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.inner.chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.inner.chain.levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree() {
            return false;
        }
        let (res, depth) = self.inner.chain.strip(g, 0);
        depth == self.inner.chain.levels.len() && res.is_identity()
    }

    /// Position of `g` in the deterministic enumeration of the group, or
    /// `None` if `g` is not an element.
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        if g.degree() != self.degree() {
            return None;
        }
        let mut h = g.clone();
        let mut r = 0u64;
        let mut mult = 1u64;
        for level in &self.inner.chain.levels {
            let k = level.pos[h.act(level.base) as usize];
            if k == NONE {
                return None;
            }
            r += k as u64 * mult;
            mult *= level.orbit.len() as u64;
            if k != 0 {
                h = &h * &level.inv_reps[k as usize];
            }
        }
        h.is_identity().then_some(r)
    }

    /// Rank of an element known to lie in the group. Only base images are
    /// traced, so this is much cheaper than [`Group::rank`].
    pub(crate) fn rank_member(&self, g: &Permutation) -> u64 {
        let levels = &self.inner.chain.levels;
        let mut r = 0u64;
        let mut mult = 1u64;
        let mut ks: [usize; 32] = [0; 32];
        let use_stack = levels.len() <= 32;
        let mut kv = Vec::new();
        for (l, level) in levels.iter().enumerate() {
            let mut x = g.act(level.base);
            for m in 0..l {
                let k = if use_stack { ks[m] } else { kv[m] };
                if k != 0 {
                    x = levels[m].inv_reps[k].act(x);
                }
            }
            let k = level.pos[x as usize];
            debug_assert!(k != NONE, "rank_member on a non-member");
            let k = k as usize;
            if use_stack {
                ks[l] = k;
            } else {
                kv.push(k);
            }
            r += k as u64 * mult;
            mult *= level.orbit.len() as u64;
        }
        r
    }

    pub fn unrank(&self, mut r: u64) -> Permutation {
        let levels = &self.inner.chain.levels;
        let mut ks = Vec::with_capacity(levels.len());
        for level in levels {
            let n = level.orbit.len() as u64;
            ks.push((r % n) as usize);
            r /= n;
        }
        let mut g = self.identity();
        for (level, &k) in levels.iter().zip(&ks).rev() {
            if k != 0 {
                g = &g * &level.reps[k];
            }
        }
        g
    }

    /// All elements, indexed by rank. Cached on first use.
    pub fn elements(&self) -> &[Permutation] {
        self.inner
            .elements
            .get_or_init(|| (0..self.order()).map(|r| self.unrank(r)).collect())
    }

    pub(crate) fn classes_cache(&self) -> &OnceLock<crate::conjugacy::ElementClasses> {
        &self.inner.classes
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Group> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::NotContained(format!("element {g}")));
            }
        }
        Ok(Group::from_gens_unchecked(self.degree(), gens))
    }

    pub fn closure_with(&self, extra: &[Permutation]) -> Group {
        let mut gens = self.generators().to_vec();
        gens.extend(extra.iter().filter(|g| !self.contains(g)).cloned());
        Group::from_gens_unchecked(self.degree(), gens)
    }

    pub fn conjugate(&self, g: &Permutation) -> Group {
        Group::from_gens_unchecked(
            self.degree(),
            self.generators().iter().map(|x| x.conjugate_by(g)).collect(),
        )
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree() == other.degree()
            && other.order().is_multiple_of(self.order())
            && self.generators().iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_elements(&self, other: &Group) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, other: &Group) -> bool {
        self.is_subgroup_of(other)
            && other
                .generators()
                .iter()
                .all(|g| self.generators().iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Orbits on points, each sorted, in order of smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orb = vec![start as u32];
            let mut i = 0;
            while i < orb.len() {
                let x = orb[i];
                for g in self.generators() {
                    let y = g.act(x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orb.push(y);
                    }
                }
                i += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// Sorted ranks (in `self`) of the elements of a subgroup.
    pub fn element_key(&self, sub: &Group) -> Vec<u32> {
        let mut key: Vec<u32> = (0..sub.order())
            .map(|r| self.rank_member(&sub.unrank(r)) as u32)
            .collect();
        key.sort_unstable();
        key
    }

    /// Iterates the elements of the group in rank order without caching.
    pub fn iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.order()).map(move |r| self.unrank(r))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, <", self.order())?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn naive_closure(g: &Group) -> HashSet<Permutation> {
        let mut set = HashSet::new();
        set.insert(g.identity());
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for s in g.generators() {
                let y = &x * s;
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s5 = Group::from_cycles(5, &["(1,2)", "(1,2,3,4,5)"]).unwrap();
        assert_eq!(s5.order(), 120);
        let a5 = Group::from_cycles(5, &["(1,2,3)", "(3,4,5)"]).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.contains(&Permutation::parse("(1,2)(3,4)", 5).unwrap()));
        assert!(!a5.contains(&Permutation::parse("(1,2)", 5).unwrap()));
        assert_eq!(Group::trivial(4).order(), 1);
    }

    #[test]
    fn rank_unrank_bijection() {
        let g = Group::from_cycles(6, &["(1,2,3,4,5,6)", "(1,2)"]).unwrap();
        for r in 0..g.order() {
            let x = g.unrank(r);
            assert_eq!(g.rank(&x), Some(r));
            assert_eq!(g.rank_member(&x), r);
        }
        assert_eq!(g.unrank(0), g.identity());
        let a = Group::from_cycles(6, &["(1,2,3)"]).unwrap();
        assert_eq!(a.rank(&Permutation::parse("(1,2)", 6).unwrap()), None);
    }

    #[test]
    fn order_matches_naive_closure() {
        let cases: &[(usize, &[&str])] = &[
            (4, &["(1,2,3,4)", "(1,3)"]),
            (6, &["(1,2)(3,4)(5,6)", "(1,3,5)(2,4,6)"]),
            (7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]),
            (8, &["(1,2)(3,4)", "(5,6,7,8)", "(1,5)(2,6)(3,7)(4,8)"]),
            (5, &["(1,2,3,4,5)", "(2,5)(3,4)"]),
        ];
        for (n, gens) in cases {
            let g = Group::from_cycles(*n, gens).unwrap();
            let naive = naive_closure(&g);
            assert_eq!(g.order() as usize, naive.len(), "{gens:?}");
            for x in &naive {
                assert!(g.contains(x));
            }
        }
    }

    #[test]
    fn normality() {
        let s4 = Group::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let v4 = s4
            .subgroup(vec![
                Permutation::parse("(1,2)(3,4)", 4).unwrap(),
                Permutation::parse("(1,3)(2,4)", 4).unwrap(),
            ])
            .unwrap();
        assert!(v4.is_normal_in(&s4));
        let c2 = s4.subgroup(vec![Permutation::parse("(1,2)", 4).unwrap()]).unwrap();
        assert!(!c2.is_normal_in(&s4));
        assert!(s4.subgroup(vec![Permutation::parse("(1,2)", 3).unwrap()]).is_err());
    }
}
