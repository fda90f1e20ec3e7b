//! Actions on right cosets and quotient groups.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Largest coset action built unless the caller asks for more.
pub const DEFAULT_DEGREE_LIMIT: u64 = 2000;

/// Canonical representative of the right coset `h g`: the element whose
/// images of the base points of `h` are lexicographically smallest.
pub fn coset_canonical(h: &Group, g: &Permutation) -> Permutation {
    let mut c = g.clone();
    for level in &h.chain().levels {
        let k = (0..level.orbit.len())
            .min_by_key(|&k| c.act(level.orbit[k]))
            .expect("orbits are non-empty");
        if k != 0 {
            c = &level.reps[k] * &c;
        }
    }
    c
}

pub fn coset_key(h: &Group, g: &Permutation) -> Vec<u32> {
    coset_canonical(h, g).images().to_vec()
}

/// The action of a group on the right cosets of a subgroup.
pub struct CosetAction {
    group: Group,
    subgroup: Group,
    reps: Vec<Permutation>,
    index: FxHashMap<Vec<u32>, u32>,
    image: Group,
}

impl CosetAction {
    /// Permutation group on the cosets; coset 0 is the subgroup itself.
    pub fn image(&self) -> &Group {
        &self.image
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroup(&self) -> &Group {
        &self.subgroup
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: &Permutation) -> usize {
        self.index[&coset_key(&self.subgroup, g)] as usize
    }

    /// Image of an element of the group under the action homomorphism.
    pub fn map(&self, g: &Permutation) -> Permutation {
        let images = self.reps.iter().map(|r| self.coset_of(&(r * g)) as u32).collect();
        Permutation::from_images_unchecked(images)
    }
}

pub fn coset_action(g: &Group, h: &Group) -> Result<CosetAction> {
    coset_action_with_limit(g, h, DEFAULT_DEGREE_LIMIT)
}

/// A right transversal of `h` in `g`, starting with the identity, found by
/// closing the coset of `h` under right multiplication by the generators.
pub fn right_transversal(g: &Group, h: &Group) -> Result<Vec<Permutation>> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotContained(format!("{h:?}")));
    }
    let mut reps = vec![g.identity()];
    let mut keys: FxHashSet<Vec<u32>> = FxHashSet::default();
    keys.insert(coset_key(h, &reps[0]));
    let mut i = 0;
    while i < reps.len() {
        for x in g.generators() {
            let y = &reps[i] * x;
            if keys.insert(coset_key(h, &y)) {
                reps.push(y);
            }
        }
        i += 1;
    }
    Ok(reps)
}

pub fn coset_action_with_limit(g: &Group, h: &Group, limit: u64) -> Result<CosetAction> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotContained(format!("{h:?}")));
    }
    let index = g.order() / h.order();
    if index > limit {
        return Err(Error::DegreeLimit { index, limit });
    }
    let mut reps = vec![g.identity()];
    let mut keys: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    keys.insert(coset_key(h, &reps[0]), 0);
    let mut gen_images: Vec<Vec<u32>> = vec![Vec::with_capacity(index as usize); g.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        for (gi, x) in g.generators().iter().enumerate() {
            let y = &reps[i] * x;
            let key = coset_key(h, &y);
            let next = reps.len() as u32;
            let j = *keys.entry(key).or_insert_with(|| {
                reps.push(y);
                next
            });
            gen_images[gi].push(j);
        }
        i += 1;
    }
    debug_assert_eq!(reps.len() as u64, index);
    let gens = gen_images.into_iter().map(Permutation::from_images_unchecked).collect();
    Ok(CosetAction {
        group: g.clone(),
        subgroup: h.clone(),
        reps,
        index: keys,
        image: Group::from_gens_unchecked(index as usize, gens),
    })
}

/// `N/H` as the regular permutation group on the cosets of `H`.
pub struct Quotient {
    action: CosetAction,
}

impl Quotient {
    pub fn group(&self) -> &Group {
        self.action.image()
    }

    /// Image of an element of `N`.
    pub fn project(&self, n: &Permutation) -> Permutation {
        self.action.map(n)
    }

    /// A representative in `N` of the coset `w` stands for.
    pub fn lift(&self, w: &Permutation) -> Permutation {
        self.action.reps[w.act(0) as usize].clone()
    }
}

pub fn quotient_group(n: &Group, h: &Group) -> Result<Quotient> {
    quotient_group_with_limit(n, h, DEFAULT_DEGREE_LIMIT)
}

pub fn quotient_group_with_limit(n: &Group, h: &Group, limit: u64) -> Result<Quotient> {
    if !h.is_subgroup_of(n) {
        return Err(Error::NotContained(format!("{h:?}")));
    }
    if !h.is_normal_in(n) {
        return Err(Error::NotNormal);
    }
    Ok(Quotient {
        action: coset_action_with_limit(n, h, limit)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Group {
        Group::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap()
    }

    #[test]
    fn coset_keys_identify_cosets() {
        let g = s4();
        let h = g
            .subgroup(vec![
                Permutation::parse("(1,2,3,4)", 4).unwrap(),
                Permutation::parse("(1,3)", 4).unwrap(),
            ])
            .unwrap();
        let mut keys = std::collections::HashMap::new();
        for x in g.iter() {
            keys.entry(coset_key(&h, &x)).or_insert_with(Vec::new).push(x);
        }
        assert_eq!(keys.len(), 3);
        for members in keys.values() {
            assert_eq!(members.len(), 8);
            let x0 = &members[0];
            assert!(members.iter().all(|y| h.contains(&(y * &x0.inverse()))));
        }
    }

    #[test]
    fn natural_and_klein_actions() {
        let g = s4();
        let s3 = g
            .subgroup(vec![
                Permutation::parse("(1,2)", 4).unwrap(),
                Permutation::parse("(1,2,3)", 4).unwrap(),
            ])
            .unwrap();
        let a = coset_action(&g, &s3).unwrap();
        assert_eq!(a.degree(), 4);
        assert_eq!(a.image().order(), 24);
        let d8 = g
            .subgroup(vec![
                Permutation::parse("(1,2,3,4)", 4).unwrap(),
                Permutation::parse("(1,3)", 4).unwrap(),
            ])
            .unwrap();
        let a = coset_action(&g, &d8).unwrap();
        assert_eq!(a.degree(), 3);
        assert_eq!(a.image().order(), 6);
        // homomorphism check and kernel = Klein four-group
        let elements = g.elements();
        for x in elements {
            for y in elements.iter().step_by(5) {
                assert_eq!(a.map(&(x * y)), &a.map(x) * &a.map(y));
            }
        }
        let kernel = elements.iter().filter(|x| a.map(x).is_identity()).count();
        assert_eq!(kernel, 4);
        let whole = coset_action(&g, &g).unwrap();
        assert_eq!(whole.degree(), 1);
        assert_eq!(whole.image().order(), 1);
    }

    #[test]
    fn degree_limit() {
        let g = s4();
        let t = Group::trivial(4);
        assert_eq!(
            coset_action_with_limit(&g, &t, 10).err(),
            Some(Error::DegreeLimit { index: 24, limit: 10 })
        );
    }

    #[test]
    fn quotients() {
        let g = s4();
        let a4 = g
            .subgroup(vec![
                Permutation::parse("(1,2,3)", 4).unwrap(),
                Permutation::parse("(2,3,4)", 4).unwrap(),
            ])
            .unwrap();
        let q = quotient_group(&g, &a4).unwrap();
        assert_eq!(q.group().order(), 2);
        assert!(a4.contains(&q.lift(&q.group().identity())));

        let c4 = Group::from_cycles(4, &["(1,2,3,4)"]).unwrap();
        let z = c4.subgroup(vec![Permutation::parse("(1,3)(2,4)", 4).unwrap()]).unwrap();
        let q = quotient_group(&c4, &z).unwrap();
        assert_eq!(q.group().order(), 2);
        let w = q.group().generators()[0].clone();
        let lifted = q.lift(&w);
        assert_eq!(lifted.order(), 4);
        assert_eq!(q.project(&lifted), w);

        let q = quotient_group(&c4, &c4).unwrap();
        assert_eq!(q.group().order(), 1);

        let c2 = g.subgroup(vec![Permutation::parse("(1,2)", 4).unwrap()]).unwrap();
        assert_eq!(quotient_group(&g, &c2).err(), Some(Error::NotNormal));
    }
}
