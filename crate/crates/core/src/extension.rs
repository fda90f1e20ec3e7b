//! Conjugacy classes of subgroups of `S` from those of a normal subgroup `A`
//! of prime index.
//!
//! Subgroups inside `A` are *blue*, the others *red*. A blue class either
//! keeps its `A`-class (its normalizer leaves `A`) or fuses `p` classes of
//! `A`. Every red `K` is `H<t>` for the blue `H = K ∩ A`, with `t` running
//! over a transversal `T_H` of the order-`p` subgroups of `N_S(H)/H` outside
//! `A`, up to conjugacy in `N_S(H)`.

use crate::conjugacy::{normalizer, ClassIdentifier};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::series::composition_series;

/// A normal subgroup `a` of prime index `p` in `s`, with a fixed element
/// `t` of `s \ a` of `p`-power order.
#[derive(Debug, Clone)]
pub struct ExtensionContext {
    pub s: Group,
    pub a: Group,
    pub p: u64,
    pub t: Permutation,
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|q| q * q <= n).all(|q| !n.is_multiple_of(q))
}

/// The `p`-part of `x`: the power of `x` of `p`-power order that generates
/// the Sylow `p`-subgroup of `<x>`.
pub(crate) fn p_part(x: &Permutation, p: u64) -> Permutation {
    let mut r = x.order();
    while r.is_multiple_of(p) {
        r /= p;
    }
    x.pow(r as i64)
}

impl ExtensionContext {
    pub fn new(s: &Group, a: &Group) -> Result<Self> {
        if !a.is_subgroup_of(s) {
            return Err(Error::NotContained(format!("{a:?}")));
        }
        let p = s.order() / a.order();
        if !is_prime(p) {
            return Err(Error::NotPrimeIndex(p));
        }
        if !a.is_normal_in(s) {
            return Err(Error::NotNormal);
        }
        let x = s
            .generators()
            .iter()
            .find(|g| !a.contains(g))
            .expect("a generator outside a proper subgroup");
        Ok(ExtensionContext {
            s: s.clone(),
            a: a.clone(),
            p,
            t: p_part(x, p),
        })
    }

    pub fn is_blue(&self, h: &Group) -> bool {
        h.generators().iter().all(|g| self.a.contains(g))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlueKind {
    /// The `S`-class coincides with the `A`-class (`N_S(H)` leaves `A`).
    Stable,
    /// The `S`-class is the union of `p` distinct `A`-classes.
    Fused,
}

#[derive(Debug, Clone)]
pub struct BlueClass {
    pub representative: Group,
    /// Indices of the `A`-classes making up this `S`-class, in increasing
    /// order; the first one is the class of the representative.
    pub a_classes: Vec<usize>,
    pub kind: BlueKind,
    pub normalizer: Group,
}

#[derive(Debug, Clone)]
pub struct BlueClassification {
    pub classes: Vec<BlueClass>,
    /// `S`-class of each `A`-class.
    pub a_to_blue: Vec<usize>,
    pub b2_raw_count: usize,
}

impl BlueClassification {
    pub fn b1(&self) -> Vec<&Group> {
        self.of_kind(BlueKind::Stable)
    }

    pub fn b2_fused(&self) -> Vec<&Group> {
        self.of_kind(BlueKind::Fused)
    }

    fn of_kind(&self, kind: BlueKind) -> Vec<&Group> {
        self.classes
            .iter()
            .filter(|c| c.kind == kind)
            .map(|c| &c.representative)
            .collect()
    }

    /// Number of blue classes of `S`.
    pub fn b(&self) -> usize {
        self.classes.len()
    }
}

pub fn classify_blue(a_classes: &[Group], ctx: &ExtensionContext) -> Result<BlueClassification> {
    for h in a_classes {
        if !h.is_subgroup_of(&ctx.a) {
            return Err(Error::NotContained(format!("{h:?}")));
        }
    }
    let ident = ClassIdentifier::new(&ctx.a, a_classes);
    let mut a_to_blue = vec![usize::MAX; a_classes.len()];
    let mut classes = Vec::new();
    let mut b2_raw_count = 0;
    for (i, h) in a_classes.iter().enumerate() {
        if a_to_blue[i] != usize::MAX {
            continue;
        }
        let n = normalizer(&ctx.s, h)?;
        let id = classes.len();
        if n.generators().iter().any(|g| !ctx.a.contains(g)) {
            a_to_blue[i] = id;
            classes.push(BlueClass {
                representative: h.clone(),
                a_classes: vec![i],
                kind: BlueKind::Stable,
                normalizer: n,
            });
            continue;
        }
        let mut fused = vec![i];
        let mut x = ctx.t.clone();
        for _ in 1..ctx.p {
            let j = ident
                .identify(&h.conjugate(&x))
                .ok_or_else(|| Error::UnmatchedClass(format!("{:?}", h.conjugate(&x))))?;
            if a_to_blue[j] != usize::MAX || fused.contains(&j) {
                return Err(Error::Inconsistent(format!("A-class {j} fused twice")));
            }
            fused.push(j);
            x = &x * &ctx.t;
        }
        fused.sort_unstable();
        for &j in &fused {
            a_to_blue[j] = id;
        }
        b2_raw_count += fused.len();
        classes.push(BlueClass {
            representative: h.clone(),
            a_classes: fused,
            kind: BlueKind::Fused,
            normalizer: n,
        });
    }
    Ok(BlueClassification {
        classes,
        a_to_blue,
        b2_raw_count,
    })
}

/// `T_H`, given `N_S(H)`.
///
/// The elements `n` of `N_S(H) \ A` with `n^p ∈ H` are partitioned by the
/// subgroups `H<n>` they generate; one subgroup per `N_S(H)`-orbit is kept.
pub(crate) fn transversal_t_h_in(ctx: &ExtensionContext, h: &Group, n: &Group) -> Vec<Permutation> {
    if n.generators().iter().all(|g| ctx.a.contains(g)) {
        return Vec::new();
    }
    let p = ctx.p as i64;
    let size = n.order() as usize;
    let mut owner = vec![u32::MAX; size];
    let mut found: Vec<(Group, Permutation)> = Vec::new();
    for r in 0..size {
        if owner[r] != u32::MAX {
            continue;
        }
        let x = n.unrank(r as u64);
        if ctx.a.contains(&x) || !h.contains(&x.pow(p)) {
            continue;
        }
        let k = h.closure_with(std::slice::from_ref(&x));
        for y in k.iter() {
            if !h.contains(&y) {
                owner[n.rank_member(&y) as usize] = found.len() as u32;
            }
        }
        found.push((k, x));
    }
    // N_S(H)-orbits on the subgroups found
    let mut parent: Vec<usize> = (0..found.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, (_, x)) in found.iter().enumerate() {
        for g in n.generators() {
            let y = x.conjugate_by(g);
            let j = owner[n.rank_member(&y) as usize] as usize;
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    (0..found.len())
        .filter(|&i| root(&mut parent, i) == i)
        .map(|i| {
            let k = &found[i].0;
            k.iter()
                .filter(|y| !h.contains(y))
                .map(|y| p_part(&y, ctx.p))
                .min_by_key(|y| y.order())
                .expect("K \\ H is non-empty")
        })
        .collect()
}

pub fn transversal_t_h(ctx: &ExtensionContext, h: &Group) -> Result<Vec<Permutation>> {
    if !h.is_subgroup_of(&ctx.a) {
        return Err(Error::NotContained(format!("{h:?}")));
    }
    let n = normalizer(&ctx.s, h)?;
    Ok(transversal_t_h_in(ctx, h, &n))
}

#[derive(Debug, Clone)]
pub struct RedClassInfo {
    pub k: Group,
    /// `K ∩ A`, the representative of a blue class.
    pub h: Group,
    pub t_rep: Permutation,
    /// Index of the blue class of `h`.
    pub blue_class: usize,
}

pub(crate) fn reds_from_blue(blue: &BlueClassification, ctx: &ExtensionContext) -> Vec<RedClassInfo> {
    let mut reds = Vec::new();
    for (i, c) in blue.classes.iter().enumerate() {
        if c.kind != BlueKind::Stable {
            continue;
        }
        for t in transversal_t_h_in(ctx, &c.representative, &c.normalizer) {
            reds.push(RedClassInfo {
                k: c.representative.closure_with(std::slice::from_ref(&t)),
                h: c.representative.clone(),
                t_rep: t,
                blue_class: i,
            });
        }
    }
    reds
}

pub fn red_subgroups(a_classes: &[Group], ctx: &ExtensionContext) -> Result<Vec<RedClassInfo>> {
    let blue = classify_blue(a_classes, ctx)?;
    Ok(reds_from_blue(&blue, ctx))
}

/// A class of `S` in construction order: blue classes first, then red.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRef {
    Blue(usize),
    Red(usize),
}

/// All classes of `S` with their provenance.
#[derive(Debug, Clone)]
pub struct ExtensionClasses {
    pub blue: BlueClassification,
    pub reds: Vec<RedClassInfo>,
    /// Classes sorted by order, ties in construction order.
    pub sorted: Vec<ClassRef>,
}

impl ExtensionClasses {
    pub fn compute(a_classes: &[Group], ctx: &ExtensionContext) -> Result<Self> {
        let blue = classify_blue(a_classes, ctx)?;
        let reds = reds_from_blue(&blue, ctx);
        let mut sorted: Vec<ClassRef> = (0..blue.classes.len())
            .map(ClassRef::Blue)
            .chain((0..reds.len()).map(ClassRef::Red))
            .collect();
        let order = |c: &ClassRef| match *c {
            ClassRef::Blue(i) => blue.classes[i].representative.order(),
            ClassRef::Red(i) => reds[i].k.order(),
        };
        sorted.sort_by_key(order);
        Ok(ExtensionClasses { blue, reds, sorted })
    }

    pub fn representative(&self, c: ClassRef) -> &Group {
        match c {
            ClassRef::Blue(i) => &self.blue.classes[i].representative,
            ClassRef::Red(i) => &self.reds[i].k,
        }
    }

    pub fn representatives(&self) -> Vec<Group> {
        self.sorted.iter().map(|&c| self.representative(c).clone()).collect()
    }
}

pub fn subgroups_by_cyclic_extension(a_classes: &[Group], ctx: &ExtensionContext) -> Result<Vec<Group>> {
    Ok(ExtensionClasses::compute(a_classes, ctx)?.representatives())
}

pub fn all_subgroup_classes_solvable(g: &Group) -> Result<Vec<Group>> {
    let series = composition_series(g)?;
    let mut classes = vec![series.terms[0].clone()];
    for w in series.terms.windows(2) {
        let ctx = ExtensionContext::new(&w[1], &w[0])?;
        classes = subgroups_by_cyclic_extension(&classes, &ctx)?;
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: &str, n: usize) -> Permutation {
        Permutation::parse(x, n).unwrap()
    }

    #[test]
    fn context_validation() {
        let s4 = Group::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let a4 = s4.subgroup(vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        let ctx = ExtensionContext::new(&s4, &a4).unwrap();
        assert_eq!(ctx.p, 2);
        assert!(!a4.contains(&ctx.t));
        assert_eq!(ctx.t.order(), 2);
        assert_eq!(ExtensionContext::new(&s4, &s4).err(), Some(Error::NotPrimeIndex(1)));
        let v4 = s4.subgroup(vec![p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        assert_eq!(ExtensionContext::new(&s4, &v4).err(), Some(Error::NotPrimeIndex(6)));
        let s3 = s4.subgroup(vec![p("(1,2)", 4), p("(1,2,3)", 4)]).unwrap();
        assert!(ExtensionContext::new(&s4, &s3).is_err());
    }

    #[test]
    fn c3_in_s3() {
        let s3 = Group::from_cycles(3, &["(1,2)", "(1,2,3)"]).unwrap();
        let c3 = s3.subgroup(vec![p("(1,2,3)", 3)]).unwrap();
        let ctx = ExtensionContext::new(&s3, &c3).unwrap();
        let blue = classify_blue(&[Group::trivial(3), c3.clone()], &ctx).unwrap();
        assert_eq!(blue.b1().len(), 2);
        assert_eq!(blue.b(), 2);
        let reds = red_subgroups(&[Group::trivial(3), c3], &ctx).unwrap();
        let orders: Vec<u64> = reds.iter().map(|r| r.k.order()).collect();
        assert_eq!(orders, vec![2, 6]);
    }

    #[test]
    fn prime_cyclic_extension_of_trivial() {
        let c2 = Group::from_cycles(2, &["(1,2)"]).unwrap();
        let ctx = ExtensionContext::new(&c2, &Group::trivial(2)).unwrap();
        let reds = red_subgroups(&[Group::trivial(2)], &ctx).unwrap();
        assert_eq!(reds.len(), 1);
        assert_eq!(reds[0].k.order(), 2);
    }

    #[test]
    fn s4_from_a4() {
        let s4 = Group::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let classes = all_subgroup_classes_solvable(&s4).unwrap();
        let orders: Vec<u64> = classes.iter().map(Group::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);

        let a4 = s4.subgroup(vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        let ctx = ExtensionContext::new(&s4, &a4).unwrap();
        let h = s4.subgroup(vec![p("(1,2)(3,4)", 4)]).unwrap();
        assert_eq!(transversal_t_h(&ctx, &h).unwrap().len(), 2);
        assert_eq!(transversal_t_h(&ctx, &Group::trivial(4)).unwrap().len(), 1);
    }
}
