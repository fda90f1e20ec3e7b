//! Backtrack search through a stabilizer chain.
//!
//! An element `g = u_{k-1} ... u_1 u_0` is built from the bottom level up, so
//! the images of the base points become known one at a time and a refiner can
//! reject a partial assignment early.

use crate::group::Group;
use crate::perm::Permutation;

pub(crate) trait Refiner {
    /// `images[i]` is the image of `base[i]`; only the last entry is new.
    fn admissible(&self, base: &[u32], images: &[u32]) -> bool;
    fn accept(&self, g: &Permutation) -> bool;
}

struct Ctx<'a, R: Refiner> {
    group: &'a Group,
    base: Vec<u32>,
    refiner: &'a R,
}

impl<R: Refiner> Ctx<'_, R> {
    fn descend(&self, depth: usize, suffix: &Permutation, images: &mut Vec<u32>) -> Option<Permutation> {
        let levels = &self.group.chain().levels;
        if depth == levels.len() {
            return self.refiner.accept(suffix).then(|| suffix.clone());
        }
        let level = &levels[depth];
        for (k, &gamma) in level.orbit.iter().enumerate() {
            images.push(suffix.act(gamma));
            if self.refiner.admissible(&self.base[..=depth], images) {
                let next = &level.reps[k] * suffix;
                if let Some(g) = self.descend(depth + 1, &next, images) {
                    images.pop();
                    return Some(g);
                }
            }
            images.pop();
        }
        None
    }
}

/// Some element of `group` accepted by the refiner.
pub(crate) fn find_element<R: Refiner>(group: &Group, refiner: &R) -> Option<Permutation> {
    let ctx = Ctx {
        group,
        base: group.base(),
        refiner,
    };
    let mut images = Vec::new();
    ctx.descend(0, &group.identity(), &mut images)
}

/// The subgroup of all accepted elements. The accepted set must be a
/// subgroup; `known` are elements already known to be accepted.
pub(crate) fn find_subgroup<R: Refiner>(group: &Group, refiner: &R, known: &[Permutation]) -> Group {
    let ctx = Ctx {
        group,
        base: group.base(),
        refiner,
    };
    let nlev = ctx.base.len();
    // found[d] holds accepted elements fixing base[..d] and moving base[d]
    let mut found: Vec<Vec<Permutation>> = vec![Vec::new(); nlev];
    for g in known {
        if let Some(d) = ctx.base.iter().position(|&b| g.act(b) != b) {
            found[d].push(g.clone());
        }
    }
    for depth in (0..nlev).rev() {
        let level = &group.chain().levels[depth];
        let b = level.base;
        loop {
            let orbit = point_orbit(b, found[depth..].iter().flatten(), group.degree());
            let mut progress = false;
            for (k, &gamma) in level.orbit.iter().enumerate().skip(1) {
                if orbit[gamma as usize] {
                    continue;
                }
                let mut images: Vec<u32> = ctx.base[..depth].to_vec();
                images.push(gamma);
                if !refiner.admissible(&ctx.base[..=depth], &images) {
                    continue;
                }
                if let Some(g) = ctx.descend(depth + 1, &level.reps[k], &mut images) {
                    found[depth].push(g);
                    progress = true;
                    break;
                }
            }
            if !progress {
                break;
            }
        }
    }
    let gens: Vec<Permutation> = found.into_iter().flatten().collect();
    Group::new(group.degree(), gens).expect("degrees agree")
}

fn point_orbit<'a>(start: u32, gens: impl Iterator<Item = &'a Permutation> + Clone, degree: usize) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[start as usize] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens.clone() {
            let y = g.act(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Orbit partition of a group on points: orbit id and orbit length per point.
pub(crate) struct OrbitStructure {
    id: Vec<u32>,
    len: Vec<u32>,
}

impl OrbitStructure {
    pub fn of(group: &Group) -> Self {
        let mut id = vec![0u32; group.degree()];
        let mut len = vec![0u32; group.degree()];
        for (i, orb) in group.orbits().iter().enumerate() {
            for &x in orb {
                id[x as usize] = i as u32;
                len[x as usize] = orb.len() as u32;
            }
        }
        OrbitStructure { id, len }
    }
}

/// Elements `g` with `source^g = target` for subgroups; a subgroup search when
/// source and target coincide.
pub(crate) struct SubgroupMap<'a> {
    pub source: &'a Group,
    pub target: &'a Group,
    src: OrbitStructure,
    dst: OrbitStructure,
}

impl<'a> SubgroupMap<'a> {
    pub fn new(source: &'a Group, target: &'a Group) -> Self {
        SubgroupMap {
            source,
            target,
            src: OrbitStructure::of(source),
            dst: OrbitStructure::of(target),
        }
    }
}

impl Refiner for SubgroupMap<'_> {
    fn admissible(&self, base: &[u32], images: &[u32]) -> bool {
        let i = images.len() - 1;
        let (b, x) = (base[i] as usize, images[i] as usize);
        if self.src.len[b] != self.dst.len[x] {
            return false;
        }
        (0..i).all(|j| {
            let (bj, xj) = (base[j] as usize, images[j] as usize);
            (self.src.id[bj] == self.src.id[b]) == (self.dst.id[xj] == self.dst.id[x])
        })
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.source
            .generators()
            .iter()
            .all(|h| self.target.contains(&h.conjugate_by(g)))
    }
}

/// Cycle position data of a single permutation.
struct CycleData {
    id: Vec<u32>,
    pos: Vec<u32>,
    len: Vec<u32>,
}

impl CycleData {
    fn of(x: &Permutation) -> Self {
        let n = x.degree();
        let mut id = vec![u32::MAX; n];
        let mut pos = vec![0; n];
        let mut len = vec![1; n];
        let mut next = 0;
        for start in 0..n {
            if id[start] != u32::MAX {
                continue;
            }
            let mut members = vec![start];
            let mut y = x.act(start as u32) as usize;
            while y != start {
                members.push(y);
                y = x.act(y as u32) as usize;
            }
            for (k, &m) in members.iter().enumerate() {
                id[m] = next;
                pos[m] = k as u32;
                len[m] = members.len() as u32;
            }
            next += 1;
        }
        CycleData { id, pos, len }
    }
}

/// Elements `g` with `source^g = target` for single permutations.
pub(crate) struct ElementMap<'a> {
    source: &'a Permutation,
    target: &'a Permutation,
    src: CycleData,
    dst: CycleData,
}

impl<'a> ElementMap<'a> {
    pub fn new(source: &'a Permutation, target: &'a Permutation) -> Self {
        ElementMap {
            source,
            target,
            src: CycleData::of(source),
            dst: CycleData::of(target),
        }
    }
}

impl Refiner for ElementMap<'_> {
    fn admissible(&self, base: &[u32], images: &[u32]) -> bool {
        let i = images.len() - 1;
        let (b, x) = (base[i] as usize, images[i] as usize);
        let l = self.src.len[b];
        if l != self.dst.len[x] {
            return false;
        }
        (0..i).all(|j| {
            let (bj, xj) = (base[j] as usize, images[j] as usize);
            let same_src = self.src.id[bj] == self.src.id[b];
            let same_dst = self.dst.id[xj] == self.dst.id[x];
            if same_src != same_dst {
                return false;
            }
            if !same_src {
                return true;
            }
            (self.src.pos[b] + l - self.src.pos[bj]) % l == (self.dst.pos[x] + l - self.dst.pos[xj]) % l
        })
    }

    fn accept(&self, g: &Permutation) -> bool {
        &self.source.conjugate_by(g) == self.target
    }
}
