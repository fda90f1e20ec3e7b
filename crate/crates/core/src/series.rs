//! Derived series, solvability and composition series.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Hard cap on the length of a derived series.
pub const DERIVED_SERIES_CAP: usize = 64;

/// A chain `1 = terms[0] < terms[1] < ... < terms[n] = G` where each term is
/// normal of prime index `indices[i]` in the next.
#[derive(Debug, Clone)]
pub struct SeriesChain {
    pub terms: Vec<Group>,
    pub indices: Vec<u64>,
}

fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    &(&(&a.inverse() * &b.inverse()) * a) * b
}

/// Smallest normal subgroup of `g` containing `gens`.
pub fn normal_closure(g: &Group, gens: &[Permutation]) -> Group {
    let mut h = Group::from_gens_unchecked(g.degree(), gens.to_vec());
    loop {
        let extra: Vec<Permutation> = h
            .generators()
            .iter()
            .flat_map(|x| g.generators().iter().map(move |s| x.conjugate_by(s)))
            .filter(|y| !h.contains(y))
            .take(1)
            .collect();
        if extra.is_empty() {
            return h;
        }
        h = h.closure_with(&extra);
    }
}

pub fn derived_subgroup(g: &Group) -> Group {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(commutator(a, b));
        }
    }
    normal_closure(g, &comms)
}

/// `G = D_0 > D_1 > ...` until it stabilizes; at most [`DERIVED_SERIES_CAP`] terms.
pub fn derived_series(g: &Group) -> Vec<Group> {
    let mut series = vec![g.clone()];
    while series.len() < DERIVED_SERIES_CAP {
        let last = series.last().unwrap();
        let d = derived_subgroup(last);
        if d.order() == last.order() {
            break;
        }
        series.push(d);
    }
    series
}

pub fn is_solvable(g: &Group) -> bool {
    derived_series(g).last().is_none_or(Group::is_trivial)
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return q;
        }
        q += 1;
    }
    n
}

pub fn composition_series(g: &Group) -> Result<SeriesChain> {
    let derived = derived_series(g);
    if !derived.last().unwrap().is_trivial() {
        return Err(Error::NotSolvable);
    }
    let mut terms = vec![Group::trivial(g.degree())];
    let mut indices = Vec::new();
    // refine each abelian factor D_i / D_{i+1}, bottom-up
    for upper in derived.iter().rev().skip(1) {
        let mut x = terms.last().unwrap().clone();
        while x.order() < upper.order() {
            let y = upper
                .generators()
                .iter()
                .find(|y| !x.contains(y))
                .expect("a generator outside the current term");
            // order of y modulo x
            let k = (1..=y.order()).find(|&k| x.contains(&y.pow(k as i64))).unwrap();
            let q = smallest_prime_factor(k);
            let z = y.pow((k / q) as i64);
            x = x.closure_with(&[z]);
            indices.push(q);
            terms.push(x.clone());
        }
    }
    Ok(SeriesChain { terms, indices })
}

/// The normal subgroups of index `q` in `v` (for a prime `q`), or `None` if
/// there are more than `cap` of them.
///
/// They are the kernels of the non-zero linear forms on `V / D`, where `D`
/// is generated by commutators and `q`-th powers.
pub fn prime_index_normal_subgroups(v: &Group, q: u64, cap: usize) -> Option<Vec<Group>> {
    let gens = v.generators();
    let mut words: Vec<Permutation> = gens.iter().map(|g| g.pow(q as i64)).collect();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            words.push(commutator(a, b));
        }
    }
    words.retain(|w| !w.is_identity());
    let d = normal_closure(v, &words);
    let mut basis: Vec<Permutation> = Vec::new();
    let mut span = d.clone();
    for g in gens {
        if !span.contains(g) {
            span = span.closure_with(std::slice::from_ref(g));
            basis.push(g.clone());
        }
    }
    let rank = basis.len() as u32;
    if rank == 0 {
        return Some(Vec::new());
    }
    let count = (q.checked_pow(rank)? - 1) / (q - 1);
    if count > cap as u64 {
        return None;
    }
    let mut out = Vec::with_capacity(count as usize);
    // forms with leading coefficient 1 at position `lead`
    for lead in 0..basis.len() {
        let free = basis.len() - lead - 1;
        for code in 0..q.pow(free as u32) {
            let mut kernel: Vec<Permutation> = d.generators().to_vec();
            kernel.extend(basis[..lead].iter().cloned());
            let mut c = code;
            for b in &basis[lead + 1..] {
                let f = c % q;
                c /= q;
                kernel.push(b * &basis[lead].pow(-(f as i64)));
            }
            kernel.retain(|w| !w.is_identity());
            out.push(Group::from_gens_unchecked(v.degree(), kernel));
        }
    }
    Some(out)
}
