//! Explicit counting of conjugates of a subgroup containing a given element.

use rustc_hash::FxHashSet;

use crate::action::coset_key;
use crate::conjugacy::{centralizer, conjugating_element, element_conjugacy_classes, normalizer};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// The conjugates of `k` that contain `t`, as a disjoint union of orbits of
/// the centralizer of `t`. Member `K^x` is stored as the conjugator `x`.
#[derive(Debug, Clone)]
pub struct IncidenceProbe {
    pub k: Group,
    pub t: Permutation,
    pub members: Vec<Permutation>,
    pub orbit_sizes: Vec<usize>,
}

impl IncidenceProbe {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The member conjugates themselves.
    pub fn conjugates(&self) -> Vec<Group> {
        self.members.iter().map(|x| self.k.conjugate(x)).collect()
    }

    /// Number of members containing `v`.
    pub fn count_containing(&self, v: &Group) -> usize {
        self.members
            .iter()
            .filter(|x| {
                let xi = x.inverse();
                v.generators().iter().all(|g| self.k.contains(&g.conjugate_by(&xi)))
            })
            .count()
    }
}

/// Elements of `k` conjugate in `s` to `t`.
pub(crate) fn class_meet(s: &Group, k: &Group, t: &Permutation) -> Vec<Permutation> {
    let classes = element_conjugacy_classes(s);
    let ct = classes.class_of_rank(s.rank_member(t));
    k.iter()
        .filter(|a| classes.class_of_rank(s.rank_member(a)) == ct)
        .collect()
}

/// `X(K, t)`: the elements of `K` conjugate to `t` fall into `N_S(K)`-orbits,
/// each of which corresponds to one `C_S(t)`-orbit of conjugates of `K`
/// containing `t`.
pub fn x_set(s: &Group, k: &Group, t: &Permutation) -> Result<IncidenceProbe> {
    if !s.contains(t) {
        return Err(Error::NotContained(format!("element {t}")));
    }
    let n = normalizer(s, k)?;
    let c = centralizer(s, t)?;
    let meet = class_meet(s, k, t);
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    let mut members = Vec::new();
    let mut orbit_sizes = Vec::new();
    for a in &meet {
        if !seen.insert(k.rank_member(a)) {
            continue;
        }
        let mut stack = vec![a.clone()];
        while let Some(b) = stack.pop() {
            for g in n.generators() {
                let y = b.conjugate_by(g);
                if seen.insert(k.rank_member(&y)) {
                    stack.push(y);
                }
            }
        }
        let x0 = conjugating_element(s, a, t).expect("a is conjugate to t");
        // the C-orbit of K^x0; K^x = K^y exactly when N x = N y
        let mut keys: FxHashSet<Vec<u32>> = FxHashSet::default();
        keys.insert(coset_key(&n, &x0));
        let start = members.len();
        members.push(x0);
        let mut i = start;
        while i < members.len() {
            for g in c.generators() {
                let y = &members[i] * g;
                if keys.insert(coset_key(&n, &y)) {
                    members.push(y);
                }
            }
            i += 1;
        }
        orbit_sizes.push(members.len() - start);
    }
    Ok(IncidenceProbe {
        k: k.clone(),
        t: t.clone(),
        members,
        orbit_sizes,
    })
}

/// `β_{S/K}(V) = |N_S(K):K| · #{K' ∈ X(K,t) : V ≤ K'}` for some `t` in `V`.
/// Returns the mark and the size of the probe used.
pub fn explicit_mark_with(s: &Group, k: &Group, v: &Group, t: &Permutation) -> Result<(u64, usize)> {
    if !k.order().is_multiple_of(v.order()) {
        return Ok((0, 0));
    }
    let probe = x_set(s, k, t)?;
    let index = normalizer(s, k)?.order() / k.order();
    Ok((index * probe.count_containing(v) as u64, probe.len()))
}

/// The mark of `V` on the cosets of `K`, choosing `t ∈ V` of smallest order
/// among the generators' powers of prime-power order.
pub fn explicit_mark(s: &Group, k: &Group, v: &Group) -> Result<u64> {
    if v.is_trivial() {
        return Ok(s.order() / k.order());
    }
    let t = v
        .iter()
        .filter(|x| !x.is_identity())
        .min_by_key(|x| x.order())
        .expect("non-trivial group");
    // any element works if every conjugate containing V is found; the
    // smallest order keeps probes short but all of V must be tested anyway
    Ok(explicit_mark_with(s, k, v, &t)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::mark_by_fixed_cosets;

    fn p(x: &str, n: usize) -> Permutation {
        Permutation::parse(x, n).unwrap()
    }

    #[test]
    fn probes() {
        let s5 = Group::from_cycles(5, &["(1,2)", "(1,2,3,4,5)"]).unwrap();
        let k = s5.subgroup(vec![p("(1,2)", 5)]).unwrap();
        let probe = x_set(&s5, &k, &p("(1,2)", 5)).unwrap();
        assert_eq!(probe.len(), 1);
        assert!(probe.conjugates()[0].same_elements(&k));

        let s4 = Group::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let d8 = s4.subgroup(vec![p("(1,2,3,4)", 4), p("(1,3)", 4)]).unwrap();
        let probe = x_set(&s4, &d8, &p("(1,3)", 4)).unwrap();
        assert_eq!(probe.len(), 1);
        // brute force over the three conjugates
        let conjugates: Vec<Group> = s4.iter().map(|x| d8.conjugate(&x)).collect();
        let mut keys: Vec<Vec<u32>> = conjugates.iter().map(|c| s4.element_key(c)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 3);
        let containing = conjugates
            .iter()
            .filter(|c| c.contains(&p("(1,3)", 4)))
            .map(|c| s4.element_key(c))
            .collect::<std::collections::BTreeSet<_>>();
        assert_eq!(containing.len(), 1);

        let s4_in_s5 = s5.subgroup(vec![p("(1,2)", 5), p("(1,2,3,4)", 5)]).unwrap();
        let probe = x_set(&s5, &s4_in_s5, &p("(1,2,3,4,5)", 5)).unwrap();
        assert!(probe.is_empty());
    }

    #[test]
    fn explicit_marks_match_fixed_cosets() {
        let s5 = Group::from_cycles(5, &["(1,2)", "(1,2,3,4,5)"]).unwrap();
        let classes = crate::oracle::subgroup_classes_brute(&s5, 1000).unwrap();
        for k in &classes {
            for v in &classes {
                if v.order() > k.order() {
                    continue;
                }
                assert_eq!(
                    explicit_mark(&s5, k, v).unwrap(),
                    mark_by_fixed_cosets(&s5, k, v),
                    "{k:?} {v:?}"
                );
            }
        }
    }
}
