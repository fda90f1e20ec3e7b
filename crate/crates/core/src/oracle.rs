//! Brute-force subgroup lattices and tables of marks for small groups.
//!
//! Everything here is computed by direct closure and coset counting, with
//! no use of the extension machinery, so it serves as ground truth.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::action::{coset_key, right_transversal};
use crate::conjugacy::{conjugating_element_for_subgroups, normalizer, SubgroupFingerprint};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::tom::{Stats, SubgroupPattern, TableOfMarks};

/// Default bound on the group order accepted by the oracle.
pub const DEFAULT_MAX_ORDER: u64 = 2000;

fn check_cap(g: &Group, cap: u64) -> Result<()> {
    if g.order() > cap {
        Err(Error::OrderCap { order: g.order(), cap })
    } else {
        Ok(())
    }
}

/// Conjugacy class representatives of subgroups, sorted by order with ties
/// in order of discovery.
///
/// Every subgroup other than `1` is `<H, x>` for a class representative `H`
/// of a smaller subgroup and some `x` outside it, so the classes are found by
/// joining each representative with one element from every orbit of
/// `N_G(H)` on the right cosets of `H`.
pub fn subgroup_classes_brute(g: &Group, cap: u64) -> Result<Vec<Group>> {
    check_cap(g, cap)?;
    let mut reps: Vec<Group> = vec![Group::trivial(g.degree())];
    let mut prints: Vec<SubgroupFingerprint> = vec![SubgroupFingerprint::of(&reps[0])];
    let mut by_print: FxHashMap<SubgroupFingerprint, Vec<usize>> = FxHashMap::default();
    by_print.insert(prints[0].clone(), vec![0]);
    let mut i = 0;
    while i < reps.len() {
        let h = reps[i].clone();
        i += 1;
        if h.order() == g.order() {
            continue;
        }
        let n = normalizer(g, &h)?;
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        seen.insert(coset_key(&h, &g.identity()));
        for x in g.iter() {
            let key = coset_key(&h, &x);
            if seen.contains(&key) {
                continue;
            }
            // the orbit of the coset Hx under conjugation by N_G(H)
            seen.insert(key);
            let mut stack = vec![x.clone()];
            while let Some(y) = stack.pop() {
                for s in n.generators() {
                    let z = y.conjugate_by(s);
                    if seen.insert(coset_key(&h, &z)) {
                        stack.push(z);
                    }
                }
            }
            let k = h.closure_with(&[x]);
            let print = SubgroupFingerprint::of(&k);
            let bucket = by_print.entry(print.clone()).or_default();
            let known = bucket
                .iter()
                .any(|&j| reps[j].same_elements(&k) || conjugating_element_for_subgroups(g, &k, &reps[j]).is_some());
            if !known {
                bucket.push(reps.len());
                reps.push(k);
                prints.push(print);
            }
        }
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&j| reps[j].order());
    Ok(order.into_iter().map(|j| reps[j].clone()).collect())
}

/// All subgroups of a group, grouped into conjugacy classes.
#[derive(Debug, Clone)]
pub struct LatticeDump {
    pub subgroups: Vec<Group>,
    /// Indices into `subgroups`; the first member of each class is the
    /// class representative.
    pub classes: Vec<Vec<usize>>,
}

impl LatticeDump {
    pub fn representatives(&self) -> Vec<Group> {
        self.classes.iter().map(|c| self.subgroups[c[0]].clone()).collect()
    }
}

pub fn all_subgroups_brute(g: &Group) -> Result<LatticeDump> {
    all_subgroups_brute_with_cap(g, DEFAULT_MAX_ORDER)
}

pub fn all_subgroups_brute_with_cap(g: &Group, cap: u64) -> Result<LatticeDump> {
    let reps = subgroup_classes_brute(g, cap)?;
    let mut subgroups = Vec::new();
    let mut classes = Vec::new();
    for h in reps {
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        seen.insert(g.element_key(&h));
        let mut class = vec![subgroups.len()];
        subgroups.push(h.clone());
        let mut stack = vec![h];
        while let Some(k) = stack.pop() {
            for s in g.generators() {
                let c = k.conjugate(s);
                if seen.insert(g.element_key(&c)) {
                    class.push(subgroups.len());
                    subgroups.push(c.clone());
                    stack.push(c);
                }
            }
        }
        classes.push(class);
    }
    Ok(LatticeDump { subgroups, classes })
}

/// Number of right cosets `Kx` with `Kx h = Kx` for every `h` in `H`.
pub fn mark_by_fixed_cosets(g: &Group, k: &Group, h: &Group) -> u64 {
    let transversal = right_transversal(g, k).expect("K is a subgroup of G");
    count_fixed(&transversal, k, h)
}

fn count_fixed(transversal: &[Permutation], k: &Group, h: &Group) -> u64 {
    transversal
        .iter()
        .filter(|x| {
            let xi = x.inverse();
            h.generators().iter().all(|y| k.contains(&y.conjugate_by(&xi)))
        })
        .count() as u64
}

pub fn table_of_marks_brute(g: &Group) -> Result<SubgroupPattern> {
    table_of_marks_brute_with_cap(g, DEFAULT_MAX_ORDER)
}

pub fn table_of_marks_brute_with_cap(g: &Group, cap: u64) -> Result<SubgroupPattern> {
    let start = std::time::Instant::now();
    let classes = subgroup_classes_brute(g, cap)?;
    let mut rows = Vec::with_capacity(classes.len());
    for (i, k) in classes.iter().enumerate() {
        let transversal = right_transversal(g, k)?;
        let row = classes[..=i]
            .iter()
            .map(|h| {
                if k.order() % h.order() != 0 {
                    0
                } else {
                    count_fixed(&transversal, k, h)
                }
            })
            .collect();
        rows.push(row);
    }
    Ok(SubgroupPattern {
        group: g.clone(),
        classes,
        table: TableOfMarks::from_rows(rows)?,
        stats: Stats {
            millis: start.elapsed().as_millis() as u64,
            ..Stats::default()
        },
    })
}
