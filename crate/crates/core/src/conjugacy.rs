//! Conjugacy of elements and subgroups, centralizers and normalizers.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::search::{find_element, find_subgroup, ElementMap, SubgroupMap};

/// Subgroups up to this order are fingerprinted by their full cycle-type
/// profile; larger ones only by order and orbit lengths.
pub const PROFILE_LIMIT: u64 = 5000;

/// Conjugacy classes of elements, ordered by element order and then by first
/// appearance in rank order.
#[derive(Debug, Clone)]
pub struct ElementClasses {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u64>,
    class_of: Vec<u32>,
}

impl ElementClasses {
    /// Class index of the element with the given rank.
    pub fn class_of_rank(&self, rank: u64) -> usize {
        self.class_of[rank as usize] as usize
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

pub fn element_conjugacy_classes(g: &Group) -> &ElementClasses {
    g.classes_cache().get_or_init(|| compute_classes(g))
}

fn compute_classes(g: &Group) -> ElementClasses {
    let n = g.order() as usize;
    let elements = g.elements();
    let mut class_of = vec![u32::MAX; n];
    let mut first: Vec<usize> = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = first.len() as u32;
        first.push(start);
        class_of[start] = id;
        let mut stack = vec![start];
        let mut size = 1u64;
        while let Some(r) = stack.pop() {
            for s in g.generators() {
                let y = elements[r].conjugate_by(s);
                let ry = g.rank_member(&y) as usize;
                if class_of[ry] == u32::MAX {
                    class_of[ry] = id;
                    size += 1;
                    stack.push(ry);
                }
            }
        }
        sizes.push(size);
    }
    let mut order: Vec<usize> = (0..first.len()).collect();
    order.sort_by_key(|&c| (elements[first[c]].order(), c));
    let mut remap = vec![0u32; order.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new as u32;
    }
    for c in class_of.iter_mut() {
        *c = remap[*c as usize];
    }
    ElementClasses {
        representatives: order.iter().map(|&c| elements[first[c]].clone()).collect(),
        sizes: order.iter().map(|&c| sizes[c]).collect(),
        class_of,
    }
}

pub fn centralizer(g: &Group, x: &Permutation) -> Result<Group> {
    if !g.contains(x) {
        return Err(Error::NotContained(format!("element {x}")));
    }
    Ok(find_subgroup(g, &ElementMap::new(x, x), std::slice::from_ref(x)))
}

pub fn normalizer(g: &Group, h: &Group) -> Result<Group> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotContained(format!("{h:?}")));
    }
    if h.is_normal_in(g) {
        return Ok(g.clone());
    }
    Ok(find_subgroup(g, &SubgroupMap::new(h, h), h.generators()))
}

/// Some `c` in `g` with `x^c = y`.
pub fn conjugating_element(g: &Group, x: &Permutation, y: &Permutation) -> Option<Permutation> {
    if x.cycle_type() != y.cycle_type() {
        return None;
    }
    find_element(g, &ElementMap::new(x, y))
}

/// Conjugation invariants used to reject non-conjugate subgroups quickly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubgroupFingerprint {
    pub order: u64,
    pub orbit_lengths: Vec<u32>,
    pub profile: Option<Vec<(Vec<u32>, u64)>>,
}

impl SubgroupFingerprint {
    pub fn of(h: &Group) -> Self {
        let mut orbit_lengths: Vec<u32> = h.orbits().iter().map(|o| o.len() as u32).collect();
        orbit_lengths.sort_unstable();
        let profile = (h.order() <= PROFILE_LIMIT).then(|| {
            let mut counts: FxHashMap<Vec<u32>, u64> = FxHashMap::default();
            for x in h.iter() {
                *counts.entry(x.cycle_type()).or_default() += 1;
            }
            let mut v: Vec<_> = counts.into_iter().collect();
            v.sort();
            v
        });
        SubgroupFingerprint {
            order: h.order(),
            orbit_lengths,
            profile,
        }
    }

    /// Element orders with multiplicities, when the profile is available.
    pub fn order_profile(&self) -> Option<Vec<(u64, u64)>> {
        let profile = self.profile.as_ref()?;
        let mut counts: FxHashMap<u64, u64> = FxHashMap::default();
        for (ct, n) in profile {
            let o = ct.iter().fold(1u64, |a, &l| crate::perm::lcm(a, l as u64));
            *counts.entry(o).or_default() += n;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort();
        Some(v)
    }
}

/// Some `c` in `g` with `h^c = k`, after cheap invariant checks.
pub fn are_conjugate_subgroups(g: &Group, h: &Group, k: &Group) -> Option<Permutation> {
    if h.order() != k.order() {
        return None;
    }
    if h.same_elements(k) {
        return Some(g.identity());
    }
    if SubgroupFingerprint::of(h) != SubgroupFingerprint::of(k) {
        return None;
    }
    conjugating_element_for_subgroups(g, h, k)
}

/// Search only, without invariant checks; callers that cache fingerprints
/// use this directly.
pub(crate) fn conjugating_element_for_subgroups(g: &Group, h: &Group, k: &Group) -> Option<Permutation> {
    find_element(g, &SubgroupMap::new(h, k))
}

/// Class representatives of a group with cached fingerprints, for
/// identifying the class of arbitrary subgroups.
#[derive(Clone)]
pub struct ClassIdentifier {
    group: Group,
    reps: Vec<Group>,
    prints: Vec<SubgroupFingerprint>,
}

impl ClassIdentifier {
    pub fn new(group: &Group, reps: &[Group]) -> Self {
        ClassIdentifier {
            group: group.clone(),
            reps: reps.to_vec(),
            prints: reps.iter().map(SubgroupFingerprint::of).collect(),
        }
    }

    pub fn identify(&self, h: &Group) -> Option<usize> {
        let print = SubgroupFingerprint::of(h);
        let candidates: Vec<usize> = (0..self.reps.len()).filter(|&i| self.prints[i] == print).collect();
        if candidates.len() == 1 {
            return Some(candidates[0]);
        }
        if let Some(&i) = candidates.iter().find(|&&i| self.reps[i].same_elements(h)) {
            return Some(i);
        }
        candidates
            .into_iter()
            .find(|&i| conjugating_element_for_subgroups(&self.group, h, &self.reps[i]).is_some())
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Like [`ClassIdentifier::identify`] but never trusts a unique
    /// fingerprint match; used where the transversal may be incomplete.
    pub fn identify_strict(&self, h: &Group) -> Option<usize> {
        let print = SubgroupFingerprint::of(h);
        (0..self.reps.len()).filter(|&i| self.prints[i] == print).find(|&i| {
            self.reps[i].same_elements(h) || conjugating_element_for_subgroups(&self.group, h, &self.reps[i]).is_some()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> Group {
        let cycle = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        Group::from_cycles(n, &["(1,2)", &cycle]).unwrap()
    }

    fn p(x: &str, n: usize) -> Permutation {
        Permutation::parse(x, n).unwrap()
    }

    fn brute_normalizer_order(g: &Group, h: &Group) -> u64 {
        g.iter()
            .filter(|x| h.generators().iter().all(|y| h.contains(&y.conjugate_by(x))))
            .count() as u64
    }

    #[test]
    fn class_sizes() {
        let s4 = s(4);
        let c = element_conjugacy_classes(&s4);
        assert_eq!(c.sizes, vec![1, 6, 3, 8, 6]);
        let a5 = Group::from_cycles(5, &["(1,2,3)", "(3,4,5)"]).unwrap();
        assert_eq!(element_conjugacy_classes(&a5).sizes, vec![1, 15, 20, 12, 12]);
        let t = Group::trivial(3);
        assert_eq!(element_conjugacy_classes(&t).sizes, vec![1]);
    }

    #[test]
    fn centralizers_and_normalizers() {
        let s4 = s(4);
        let c4 = s4.subgroup(vec![p("(1,2,3,4)", 4)]).unwrap();
        let n = normalizer(&s4, &c4).unwrap();
        assert_eq!(n.order(), 8);
        assert_eq!(n.order(), brute_normalizer_order(&s4, &c4));
        let s5 = s(5);
        let c = centralizer(&s5, &p("(1,2)", 5)).unwrap();
        let brute = s5
            .iter()
            .filter(|g| p("(1,2)", 5).conjugate_by(g) == p("(1,2)", 5))
            .count();
        assert_eq!(c.order(), 12);
        assert_eq!(brute, 12);
        assert_eq!(normalizer(&s5, &s5).unwrap().order(), 120);
        assert!(centralizer(&s4, &p("(1,2)", 5)).is_err());
    }

    #[test]
    fn normalizers_match_brute_force_on_every_cyclic_subgroup() {
        let g = s(5);
        for x in g.iter() {
            let h = g.subgroup(vec![x.clone()]).unwrap();
            assert_eq!(
                normalizer(&g, &h).unwrap().order(),
                brute_normalizer_order(&g, &h),
                "{x}"
            );
            let brute = g.iter().filter(|y| x.conjugate_by(y) == x).count() as u64;
            assert_eq!(centralizer(&g, &x).unwrap().order(), brute, "{x}");
        }
    }

    #[test]
    fn subgroup_conjugacy() {
        let s5 = s(5);
        let h = s5.subgroup(vec![p("(1,2)", 5)]).unwrap();
        let k = s5.subgroup(vec![p("(4,5)", 5)]).unwrap();
        let c = are_conjugate_subgroups(&s5, &h, &k).unwrap();
        assert!(h.conjugate(&c).same_elements(&k));
        let s4 = s(4);
        let a = s4.subgroup(vec![p("(1,2)", 4)]).unwrap();
        let b = s4.subgroup(vec![p("(1,2)(3,4)", 4)]).unwrap();
        assert!(are_conjugate_subgroups(&s4, &a, &b).is_none());
        assert_eq!(are_conjugate_subgroups(&s4, &a, &a), Some(s4.identity()));
        // two non-conjugate Klein four-groups with equal orders
        let v_normal = s4.subgroup(vec![p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        let v_other = s4.subgroup(vec![p("(1,2)", 4), p("(3,4)", 4)]).unwrap();
        assert!(are_conjugate_subgroups(&s4, &v_normal, &v_other).is_none());
    }

    #[test]
    fn element_conjugators() {
        let s6 = s(6);
        let x = p("(1,2,3)(4,5)", 6);
        let y = p("(2,6)(1,4,5)", 6);
        let c = conjugating_element(&s6, &x, &y).unwrap();
        assert_eq!(x.conjugate_by(&c), y);
        assert!(conjugating_element(&s6, &x, &p("(1,2,3)", 6)).is_none());
        let a4 = Group::from_cycles(4, &["(1,2,3)", "(2,3,4)"]).unwrap();
        // (1,2,3) and (1,3,2) are not conjugate in A4
        assert!(conjugating_element(&a4, &p("(1,2,3)", 4), &p("(1,3,2)", 4)).is_none());
    }
}
