//! The table of marks of `S` from that of a normal subgroup `A` of prime
//! index, and its iteration along a composition series.
//!
//! Rows of blue classes and the blue part of red rows follow from the table
//! of `A`. The remaining marks, red rows against red columns, start as finite
//! candidate sets which are narrowed by containment bounds, congruences and
//! Dress' integrality conditions; a cell that cannot be settled that way is
//! counted explicitly.

use std::time::Instant;

use crate::conjugacy::{conjugating_element, element_conjugacy_classes, normalizer, ClassIdentifier};
use crate::dress::{dress_coefficients_with, DressRow, LinearConstraint, Target};
use crate::error::{Error, Result};
use crate::extension::{BlueKind, ClassRef, ExtensionClasses, ExtensionContext};
use crate::group::Group;
use crate::incidence::{class_meet, x_set};
use crate::series::{composition_series, prime_index_normal_subgroups};
use crate::tom::{Stats, SubgroupPattern, TableOfMarks};

/// Constraints with more unknowns than this are not enumerated.
pub const DRESS_UNKNOWN_CAP: usize = 12;

/// Bound on the number of prime-index normal subgroups examined per class
/// for column congruences.
pub const HYPERPLANE_CAP: usize = 64;

/// A mark, or the values it may still take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkCell {
    Decided(u64),
    /// Non-empty, ascending.
    Candidates(Vec<u64>),
}

impl MarkCell {
    fn from_values(values: Vec<u64>) -> Result<Self> {
        match values.len() {
            0 => Err(Error::Inconsistent("empty candidate set".to_string())),
            1 => Ok(MarkCell::Decided(values[0])),
            _ => Ok(MarkCell::Candidates(values)),
        }
    }

    pub fn value(&self) -> Option<u64> {
        match self {
            MarkCell::Decided(v) => Some(*v),
            MarkCell::Candidates(_) => None,
        }
    }

    pub fn is_decided(&self) -> bool {
        matches!(self, MarkCell::Decided(_))
    }

    pub fn values(&self) -> Vec<u64> {
        match self {
            MarkCell::Decided(v) => vec![*v],
            MarkCell::Candidates(c) => c.clone(),
        }
    }

    pub fn min(&self) -> u64 {
        match self {
            MarkCell::Decided(v) => *v,
            MarkCell::Candidates(c) => c[0],
        }
    }

    pub fn max(&self) -> u64 {
        match self {
            MarkCell::Decided(v) => *v,
            MarkCell::Candidates(c) => *c.last().unwrap(),
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        match self {
            MarkCell::Decided(v) => *v == x,
            MarkCell::Candidates(c) => c.binary_search(&x).is_ok(),
        }
    }
}

/// How a cell got its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecidedBy {
    /// Read off the table of `A`, or zero above the blue rows.
    Quarter,
    /// `|N_S(K) : K|`.
    Diagonal,
    /// Zero because no conjugate of the column class fits in the row class.
    Order,
    /// A single candidate from the start.
    Initial,
    Transitivity,
    /// Congruence with a normal subgroup of prime index of the column class.
    Congruence,
    /// Zero because some element of the column class is conjugate to no
    /// element of the row class.
    ElementClasses,
    /// A Dress condition at the given class.
    Dress(usize),
    /// Explicit count of conjugates.
    Probe,
}

/// Result of applying one Dress condition to a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DressOutcome {
    pub u: usize,
    /// The undecided columns involved.
    pub columns: Vec<usize>,
    /// Consistent values of those columns, possibly truncated.
    pub solutions: Vec<Vec<u64>>,
    pub complete: bool,
    pub changed: bool,
    /// Not applied, because there were too many unknowns or nothing to do.
    pub skipped: bool,
}

impl DressOutcome {
    fn skipped(u: usize) -> Self {
        DressOutcome {
            u,
            columns: Vec::new(),
            solutions: Vec::new(),
            complete: false,
            changed: false,
            skipped: true,
        }
    }
}

#[derive(Debug, Clone)]
struct ClassInfo {
    cref: ClassRef,
    rep: Group,
    order: u64,
    /// For red classes, the column of the blue class of `K ∩ A`.
    gamma: Option<usize>,
}

/// Stepwise computation of the table of marks of `S` over `A`.
///
/// Classes are indexed in the final order (by subgroup order). Blue rows
/// are complete from the start; red rows are completed in increasing order.
pub struct ExtensionEngine {
    ctx: ExtensionContext,
    ext: ExtensionClasses,
    info: Vec<ClassInfo>,
    ident: ClassIdentifier,
    cells: Vec<Vec<MarkCell>>,
    decided_by: Vec<Vec<DecidedBy>>,
    complete: Vec<bool>,
    dress: Vec<Option<DressRow>>,
    congruences: Vec<Option<Vec<(usize, u64)>>>,
    element_classes: Vec<Option<Vec<bool>>>,
    stats: Stats,
    start: Instant,
}

fn checked_a_row(pattern_a: &SubgroupPattern, i: usize, blue_cols: &[usize]) -> Vec<u64> {
    blue_cols.iter().map(|&j| pattern_a.table.get(i, j)).collect()
}

impl ExtensionEngine {
    pub fn new(pattern_a: &SubgroupPattern, s: &Group) -> Result<Self> {
        let start = Instant::now();
        if pattern_a.table.len() != pattern_a.classes.len() {
            return Err(Error::InvalidPattern(format!(
                "{} classes but a table of size {}",
                pattern_a.classes.len(),
                pattern_a.table.len()
            )));
        }
        let ctx = ExtensionContext::new(s, &pattern_a.group)?;
        let ext = ExtensionClasses::compute(&pattern_a.classes, &ctx)?;
        let n = ext.sorted.len();
        let mut blue_pos = vec![0; ext.blue.classes.len()];
        for (i, c) in ext.sorted.iter().enumerate() {
            if let ClassRef::Blue(b) = c {
                blue_pos[*b] = i;
            }
        }
        let info: Vec<ClassInfo> = ext
            .sorted
            .iter()
            .map(|&c| {
                let rep = ext.representative(c).clone();
                ClassInfo {
                    cref: c,
                    order: rep.order(),
                    rep,
                    gamma: match c {
                        ClassRef::Blue(_) => None,
                        ClassRef::Red(r) => Some(blue_pos[ext.reds[r].blue_class]),
                    },
                }
            })
            .collect();
        let ident = ClassIdentifier::new(s, &info.iter().map(|c| c.rep.clone()).collect::<Vec<_>>());

        // the A-class standing for each blue column
        let a_of_col: Vec<Option<usize>> = info
            .iter()
            .map(|c| match c.cref {
                ClassRef::Blue(b) => Some(ext.blue.classes[b].a_classes[0]),
                ClassRef::Red(_) => None,
            })
            .collect();
        let blue_cols: Vec<usize> = a_of_col.iter().map(|a| a.unwrap_or(0)).collect();
        let p = ctx.p;

        let mut engine = ExtensionEngine {
            ctx,
            ext,
            info,
            ident,
            cells: Vec::with_capacity(n),
            decided_by: Vec::with_capacity(n),
            complete: vec![false; n],
            dress: vec![None; n],
            congruences: vec![None; n],
            element_classes: vec![None; n],
            stats: Stats::default(),
            start,
        };
        for i in 0..n {
            let mut row = Vec::with_capacity(i + 1);
            let mut how = Vec::with_capacity(i + 1);
            match engine.info[i].cref {
                ClassRef::Blue(b) => {
                    let class = &engine.ext.blue.classes[b];
                    let sources: Vec<usize> = match class.kind {
                        BlueKind::Stable => vec![class.a_classes[0]],
                        BlueKind::Fused => class.a_classes.clone(),
                    };
                    let factor = if class.kind == BlueKind::Stable { p } else { 1 };
                    let mut sum = vec![0u64; i + 1];
                    for &src in &sources {
                        for (x, v) in sum.iter_mut().zip(checked_a_row(pattern_a, src, &blue_cols[..=i])) {
                            *x += factor * v;
                        }
                    }
                    for j in 0..=i {
                        let v = if a_of_col[j].is_some() { sum[j] } else { 0 };
                        row.push(MarkCell::Decided(v));
                        how.push(DecidedBy::Quarter);
                    }
                    engine.complete[i] = true;
                }
                ClassRef::Red(r) => {
                    let h_blue = engine.ext.reds[r].blue_class;
                    let src = engine.ext.blue.classes[h_blue].a_classes[0];
                    let a_row = checked_a_row(pattern_a, src, &blue_cols[..=i]);
                    for j in 0..=i {
                        if j == i {
                            let k = &engine.info[i].rep;
                            let d = normalizer(s, k)?.order() / k.order();
                            row.push(MarkCell::Decided(d));
                            how.push(DecidedBy::Diagonal);
                        } else if a_of_col[j].is_some() {
                            row.push(MarkCell::Decided(a_row[j]));
                            how.push(DecidedBy::Quarter);
                        } else {
                            // filled in by init_candidates
                            row.push(MarkCell::Decided(0));
                            how.push(DecidedBy::Order);
                        }
                    }
                }
            }
            engine.cells.push(row);
            engine.decided_by.push(how);
        }
        for i in 0..n {
            if engine.is_red(i) {
                engine.init_candidates(i)?;
            }
        }
        Ok(engine)
    }

    pub fn len(&self) -> usize {
        self.info.len()
    }

    pub fn is_empty(&self) -> bool {
        self.info.is_empty()
    }

    pub fn context(&self) -> &ExtensionContext {
        &self.ctx
    }

    pub fn classes(&self) -> &ExtensionClasses {
        &self.ext
    }

    pub fn class_ref(&self, i: usize) -> ClassRef {
        self.info[i].cref
    }

    pub fn is_red(&self, i: usize) -> bool {
        matches!(self.info[i].cref, ClassRef::Red(_))
    }

    pub fn representative(&self, i: usize) -> &Group {
        &self.info[i].rep
    }

    pub fn order(&self, i: usize) -> u64 {
        self.info[i].order
    }

    /// Column of the blue class `K ∩ A` of a red class.
    pub fn gamma(&self, i: usize) -> Option<usize> {
        self.info[i].gamma
    }

    /// Class index of a subgroup of `S`.
    pub fn identify(&self, h: &Group) -> Option<usize> {
        self.ident.identify_strict(h)
    }

    pub fn cell(&self, row: usize, col: usize) -> MarkCell {
        if col > row {
            MarkCell::Decided(0)
        } else {
            self.cells[row][col].clone()
        }
    }

    pub fn decided_by(&self, row: usize, col: usize) -> DecidedBy {
        self.decided_by[row][col]
    }

    pub fn is_row_complete(&self, row: usize) -> bool {
        self.complete[row]
    }

    pub fn stats(&self) -> Stats {
        Stats {
            millis: self.start.elapsed().as_millis() as u64,
            ..self.stats
        }
    }

    /// Red rows in the order they are completed.
    pub fn row_order(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_red(i)).collect()
    }

    fn undecided(&self, row: usize) -> Vec<usize> {
        (0..=row).filter(|&j| !self.cells[row][j].is_decided()).collect()
    }

    fn set(&mut self, row: usize, col: usize, values: Vec<u64>, how: DecidedBy) -> Result<bool> {
        let cell = MarkCell::from_values(values)
            .map_err(|_| Error::Inconsistent(format!("row {row}, column {col}: no value survives ({how:?})")))?;
        if cell == self.cells[row][col] {
            return Ok(false);
        }
        if cell.is_decided() {
            self.decided_by[row][col] = how;
        }
        self.cells[row][col] = cell;
        Ok(true)
    }

    fn restrict(&mut self, row: usize, col: usize, keep: impl Fn(u64) -> bool, how: DecidedBy) -> Result<bool> {
        let values: Vec<u64> = self.cells[row][col].values().into_iter().filter(|&x| keep(x)).collect();
        self.set(row, col, values, how)
    }

    /// Resets the red columns of a red row to their initial candidates: the
    /// values up to the mark of `γ(V)`, congruent to it modulo `p`, and
    /// divisible by the diagonal.
    pub fn init_candidates(&mut self, row: usize) -> Result<()> {
        if !self.is_red(row) {
            return Ok(());
        }
        let p = self.ctx.p;
        let diag = self.cells[row][row].min();
        let k_order = self.info[row].order;
        self.complete[row] = false;
        for j in 0..row {
            let Some(g) = self.info[j].gamma else { continue };
            let v_order = self.info[j].order;
            if !k_order.is_multiple_of(v_order) || v_order == k_order {
                self.cells[row][j] = MarkCell::Decided(0);
                self.decided_by[row][j] = DecidedBy::Order;
                continue;
            }
            let ub = self.cells[row][g].min();
            let values: Vec<u64> = (0..=ub).filter(|m| m % p == ub % p && m % diag == 0).collect();
            self.cells[row][j] = MarkCell::Candidates(vec![u64::MAX]);
            self.set(row, j, values, DecidedBy::Initial)?;
        }
        Ok(())
    }

    /// Bounds from containments certified by completed rows or by the stored
    /// representatives themselves: `V ≤ K` gives `β(V) ≥ |N_S(K) : K|`, `V ≤ U ≤ K`
    /// gives `β(V) ≥ β(U)`, `W ≤ V` gives `β(V) ≤ β(W)`, and `V ≤ W ≤ K`
    /// gives `β_{S/K}(V) ≥ β_{S/W}(V) · |W| / |K|`.
    pub fn transitivity_refine(&mut self, row: usize) -> Result<bool> {
        let mut any = false;
        loop {
            let mut changed = false;
            for v in self.undecided(row) {
                let mut lb = 0u64;
                let mut ub = u64::MAX;
                let k_order = self.info[row].order;
                if self.info[v].rep.is_subgroup_of(&self.info[row].rep) {
                    lb = self.cells[row][row].min();
                }
                for u in v + 1..row {
                    if !self.complete[u] {
                        continue;
                    }
                    let contains_v = self.cells[u][v].min() > 0;
                    if contains_v {
                        lb = lb.max(self.cells[row][u].min());
                    }
                    if self.cells[row][u].min() > 0 {
                        let w_order = self.info[u].order;
                        let bound = (self.cells[u][v].min() * w_order).div_ceil(k_order);
                        lb = lb.max(bound);
                    }
                }
                if self.complete[v] {
                    for w in 0..v {
                        if self.cells[v][w].min() > 0 {
                            ub = ub.min(self.cells[row][w].max());
                        }
                    }
                }
                changed |= self.restrict(row, v, |x| x >= lb && x <= ub, DecidedBy::Transitivity)?;
            }
            any |= changed;
            if !changed {
                return Ok(any);
            }
        }
    }

    fn congruence_pairs(&mut self, v: usize) -> &[(usize, u64)] {
        if self.congruences[v].is_none() {
            let rep = self.info[v].rep.clone();
            let mut pairs = Vec::new();
            let mut primes = Vec::new();
            let mut n = rep.order();
            let mut q = 2;
            while n > 1 {
                if n.is_multiple_of(q) {
                    primes.push(q);
                    while n.is_multiple_of(q) {
                        n /= q;
                    }
                }
                q += 1;
            }
            for q in primes {
                if let Some(hs) = prime_index_normal_subgroups(&rep, q, HYPERPLANE_CAP) {
                    for h in hs {
                        if let Some(u) = self.ident.identify(&h) {
                            pairs.push((u, q));
                        }
                    }
                }
            }
            if let Some(g) = self.info[v].gamma {
                if !pairs.contains(&(g, self.ctx.p)) {
                    pairs.push((g, self.ctx.p));
                }
            }
            self.congruences[v] = Some(pairs);
        }
        self.congruences[v].as_deref().unwrap()
    }

    /// `β(V) ≡ β(U) (mod q)` and `β(V) ≤ β(U)` for `U` normal of prime index
    /// `q` in `V`, applied in both directions.
    pub fn congruence_refine(&mut self, row: usize) -> Result<bool> {
        let mut changed = false;
        for v in 0..row {
            if !self.is_red(v) || !self.order(row).is_multiple_of(self.order(v)) {
                continue;
            }
            let pairs = self.congruence_pairs(v).to_vec();
            for (u, q) in pairs {
                if self.cells[row][v].is_decided() && self.cells[row][u].is_decided() {
                    continue;
                }
                let us = self.cells[row][u].values();
                let vs = self.cells[row][v].values();
                changed |= self.restrict(
                    row,
                    v,
                    |x| us.iter().any(|&y| y >= x && (y - x) % q == 0),
                    DecidedBy::Congruence,
                )?;
                changed |= self.restrict(
                    row,
                    u,
                    |y| vs.iter().any(|&x| y >= x && (y - x) % q == 0),
                    DecidedBy::Congruence,
                )?;
            }
        }
        Ok(changed)
    }

    /// Which classes of elements of `S` meet the given class of subgroups.
    fn element_classes_of(&mut self, i: usize) -> &[bool] {
        if self.element_classes[i].is_none() {
            let s = &self.ctx.s;
            let classes = element_conjugacy_classes(s);
            let mut hit = vec![false; classes.len()];
            for x in self.info[i].rep.iter() {
                hit[classes.class_of_rank(s.rank_member(&x))] = true;
            }
            self.element_classes[i] = Some(hit);
        }
        self.element_classes[i].as_deref().unwrap()
    }

    /// A conjugate of `V` inside `K` needs every class of elements meeting
    /// `V` to meet `K`; otherwise the mark is zero.
    pub fn element_class_refine(&mut self, row: usize) -> Result<bool> {
        let mut changed = false;
        for v in self.undecided(row) {
            if self.cells[row][v].min() > 0 {
                continue;
            }
            let in_k = self.element_classes_of(row).to_vec();
            let in_v = self.element_classes_of(v);
            if in_v.iter().zip(&in_k).any(|(&a, &b)| a && !b) {
                changed |= self.set(row, v, vec![0], DecidedBy::ElementClasses)?;
            }
        }
        Ok(changed)
    }

    pub fn dress_row(&mut self, u: usize) -> Result<&DressRow> {
        if self.dress[u].is_none() {
            let row = dress_coefficients_with(&self.ctx.s, &self.ident, &self.info[u].rep, Some(&self.ctx.a))?;
            self.dress[u] = Some(row);
        }
        Ok(self.dress[u].as_ref().unwrap())
    }

    fn apply(
        &mut self,
        row: usize,
        u: usize,
        columns: Vec<usize>,
        constraint: LinearConstraint,
    ) -> Result<DressOutcome> {
        if columns.len() > DRESS_UNKNOWN_CAP {
            return Ok(DressOutcome::skipped(u));
        }
        let domains: Vec<Vec<u64>> = columns.iter().map(|&j| self.cells[row][j].values()).collect();
        let solved = constraint.solve(&domains, 64).map_err(|e| match e {
            Error::Inconsistent(m) => Error::Inconsistent(format!("row {row}, Dress condition at class {u}: {m}")),
            other => other,
        })?;
        let mut changed = false;
        for (&j, values) in columns.iter().zip(solved.domains) {
            changed |= self.set(row, j, values, DecidedBy::Dress(u))?;
        }
        Ok(DressOutcome {
            u,
            columns,
            solutions: solved.solutions,
            complete: solved.complete,
            changed,
            skipped: false,
        })
    }

    /// The condition at a blue class `U` whose normalizer leaves `A`: with
    /// `B = N_A(U)/U`, the blue marks give `o_B = Σ_blue n(U,H) β(H) / |B|`,
    /// and the red sum `Σ_red n(U,H) β(H)` must be `|B| · m` with
    /// `m ≡ -o_B (mod p)` and `0 ≤ m ≤ (p-1) o_B`.
    pub fn dress_refine(&mut self, row: usize, u: usize) -> Result<DressOutcome> {
        let stable = match self.info[u].cref {
            ClassRef::Blue(b) => self.ext.blue.classes[b].kind == BlueKind::Stable,
            ClassRef::Red(_) => false,
        };
        if !stable || u > row {
            return Ok(DressOutcome::skipped(u));
        }
        let p = self.ctx.p;
        let dress = self.dress_row(u)?.clone();
        let b_size = dress.blue_part_size.expect("blue class lies in A");
        let mut blue_sum = 0u64;
        let mut known = 0u64;
        let mut columns = Vec::new();
        let mut coeffs = Vec::new();
        for j in dress.support() {
            if j > row {
                continue;
            }
            let c = dress.coeffs[j];
            match (self.is_red(j), self.cells[row][j].value()) {
                (false, Some(y)) => blue_sum += c * y,
                (false, None) => unreachable!("blue marks of red rows are known"),
                (true, Some(y)) => known += c * y,
                (true, None) => {
                    columns.push(j);
                    coeffs.push(c);
                }
            }
        }
        if !blue_sum.is_multiple_of(b_size) {
            return Err(Error::Inconsistent(format!(
                "row {row}: blue orbit count {blue_sum}/{b_size} at class {u} is not integral"
            )));
        }
        let o_b = blue_sum / b_size;
        let targets: Vec<u64> = (0..=(p - 1) * o_b)
            .filter(|m| (m + o_b).is_multiple_of(p))
            .map(|m| m * b_size)
            .collect();
        if columns.is_empty() && targets.contains(&known) {
            return Ok(DressOutcome::skipped(u));
        }
        let constraint = LinearConstraint {
            known,
            coeffs,
            target: Target::OneOf(targets),
        };
        self.apply(row, u, columns, constraint)
    }

    /// `Σ n(U, H) β(H) ≡ 0 (mod |N_S(U) : U|)` for any class `U`.
    pub fn dress_congruence_refine(&mut self, row: usize, u: usize) -> Result<DressOutcome> {
        if u > row || self.cells[row][u].max() == 0 {
            return Ok(DressOutcome::skipped(u));
        }
        let dress = self.dress_row(u)?.clone();
        let mut known = 0u64;
        let mut columns = Vec::new();
        let mut coeffs = Vec::new();
        for j in dress.support() {
            if j > row {
                continue;
            }
            match self.cells[row][j].value() {
                Some(y) => known += dress.coeffs[j] * y,
                None => {
                    columns.push(j);
                    coeffs.push(dress.coeffs[j]);
                }
            }
        }
        if columns.is_empty() {
            return Ok(DressOutcome::skipped(u));
        }
        let constraint = LinearConstraint {
            known,
            coeffs,
            target: Target::Modular(dress.modulus),
        };
        self.apply(row, u, columns, constraint)
    }

    fn touches_unknowns(&mut self, row: usize, u: usize) -> Result<bool> {
        if self.cells[row][u].max() == 0 {
            return Ok(false);
        }
        let unknown = self.undecided(row);
        if unknown.is_empty() {
            return Ok(false);
        }
        let dress = self.dress_row(u)?;
        Ok(unknown.iter().any(|&j| dress.coeffs[j] > 0))
    }

    /// All propagation rules, repeated until nothing changes.
    pub fn propagate(&mut self, row: usize) -> Result<()> {
        loop {
            let mut changed = self.element_class_refine(row)?;
            changed |= self.transitivity_refine(row)?;
            changed |= self.congruence_refine(row)?;
            for u in 0..=row {
                if self.undecided(row).is_empty() {
                    return Ok(());
                }
                if !self.touches_unknowns(row, u)? {
                    continue;
                }
                changed |= self.dress_refine(row, u)?.changed;
                changed |= self.dress_congruence_refine(row, u)?.changed;
            }
            if !changed || self.undecided(row).is_empty() {
                return Ok(());
            }
        }
    }

    /// Counts the conjugates of `K` containing `t_V` for the undecided
    /// column `V` where `K` meets the class of `t_V` in the fewest elements,
    /// and with that one set decides every undecided column having a
    /// conjugate that contains `t_V`. Returns the columns decided; empty if
    /// the row was already complete.
    pub fn probe(&mut self, row: usize) -> Result<Vec<usize>> {
        let s = self.ctx.s.clone();
        let k = self.info[row].rep.clone();
        let mut best: Option<(usize, usize)> = None;
        for v in self.undecided(row) {
            let ClassRef::Red(r) = self.info[v].cref else {
                unreachable!("only red columns are undecided")
            };
            let size = class_meet(&s, &k, &self.ext.reds[r].t_rep).len();
            if best.is_none_or(|(_, b)| size < b) {
                best = Some((v, size));
            }
        }
        let Some((v, _)) = best else { return Ok(Vec::new()) };
        let ClassRef::Red(r) = self.info[v].cref else {
            unreachable!()
        };
        let t = self.ext.reds[r].t_rep.clone();
        let probe = x_set(&s, &k, &t)?;
        let index = self.cells[row][row].min();
        self.stats.probes += 1;
        self.stats.max_probe = self.stats.max_probe.max(probe.len() as u64);

        let classes = element_conjugacy_classes(&s);
        let t_class = classes.class_of_rank(s.rank_member(&t));
        let mut decided = Vec::new();
        for w in self.undecided(row) {
            let rep = &self.info[w].rep;
            let conjugate = if w == v {
                rep.clone()
            } else {
                let Some(x) = rep.iter().find(|x| classes.class_of_rank(s.rank_member(x)) == t_class) else {
                    continue;
                };
                let c = conjugating_element(&s, &x, &t).expect("same class");
                rep.conjugate(&c)
            };
            let mark = index * probe.count_containing(&conjugate) as u64;
            if !self.cells[row][w].contains(mark) {
                return Err(Error::Inconsistent(format!(
                    "row {row}, column {w}: counted mark {mark} is not among {:?}",
                    self.cells[row][w].values()
                )));
            }
            self.set(row, w, vec![mark], DecidedBy::Probe)?;
            decided.push(w);
        }
        Ok(decided)
    }

    pub fn complete_row(&mut self, row: usize) -> Result<()> {
        if self.complete[row] {
            return Ok(());
        }
        loop {
            self.propagate(row)?;
            if self.probe(row)?.is_empty() {
                break;
            }
        }
        self.complete[row] = true;
        Ok(())
    }

    /// Completes every red row before `row`.
    pub fn run_until(&mut self, row: usize) -> Result<()> {
        for r in self.row_order() {
            if r >= row {
                break;
            }
            self.complete_row(r)?;
        }
        Ok(())
    }

    pub fn run(&mut self) -> Result<()> {
        self.run_until(self.len())
    }

    pub fn finish(mut self) -> Result<SubgroupPattern> {
        self.run()?;
        let rows = self
            .cells
            .iter()
            .map(|r| r.iter().map(|c| c.value().expect("row is complete")).collect())
            .collect();
        let stats = self.stats();
        Ok(SubgroupPattern {
            group: self.ctx.s.clone(),
            classes: self.info.into_iter().map(|c| c.rep).collect(),
            table: TableOfMarks::from_rows(rows)?,
            stats,
        })
    }
}

pub fn table_of_marks_by_cyclic_extension(pattern_a: &SubgroupPattern, s: &Group) -> Result<SubgroupPattern> {
    ExtensionEngine::new(pattern_a, s)?.finish()
}

/// The patterns of every term of a composition series of `g`, starting
/// with the trivial group.
pub fn table_of_marks_solvable_chain(g: &Group) -> Result<Vec<SubgroupPattern>> {
    let series = composition_series(g)?;
    let mut out = vec![SubgroupPattern::trivial(g.degree())];
    for term in &series.terms[1..] {
        let next = table_of_marks_by_cyclic_extension(out.last().unwrap(), term)?;
        out.push(next);
    }
    Ok(out)
}

pub fn table_of_marks_solvable(g: &Group) -> Result<SubgroupPattern> {
    let start = Instant::now();
    let chain = table_of_marks_solvable_chain(g)?;
    let mut stats = Stats::default();
    for p in &chain {
        stats.probes += p.stats.probes;
        stats.max_probe = stats.max_probe.max(p.stats.max_probe);
    }
    stats.millis = start.elapsed().as_millis() as u64;
    let mut last = chain.into_iter().last().unwrap();
    last.stats = stats;
    Ok(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::table_of_marks_brute;
    use crate::tom::compare_patterns;

    fn check(g: &Group) -> SubgroupPattern {
        let ours = table_of_marks_solvable(g).unwrap();
        let brute = table_of_marks_brute(g).unwrap();
        let report = compare_patterns(&ours, &brute);
        assert!(report.matched(), "{:?}\n{}\n{}", report.reason, ours.table, brute.table);
        ours
    }

    #[test]
    fn prime_cyclic() {
        let c5 = Group::from_cycles(5, &["(1,2,3,4,5)"]).unwrap();
        let p = table_of_marks_solvable(&c5).unwrap();
        assert_eq!(p.table.rows(), &[vec![5], vec![1, 1]]);
    }

    #[test]
    fn small_solvable_groups_match_the_oracle() {
        for gens in [
            vec!["(1,2)", "(1,2,3)"],
            vec!["(1,2,3,4)", "(1,3)"],
            vec!["(1,2)", "(1,2,3,4)"],
            vec!["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"],
            vec!["(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"],
        ] {
            let degree = if gens[0].contains('8') { 8 } else { 6 };
            let g = Group::from_cycles(degree, &gens).unwrap();
            check(&g);
        }
    }

    #[test]
    fn s5_over_a5() {
        let s5 = Group::from_cycles(5, &["(1,2)", "(1,2,3,4,5)"]).unwrap();
        let a5 = s5
            .subgroup(vec![
                crate::Permutation::parse("(1,2,3)", 5).unwrap(),
                crate::Permutation::parse("(3,4,5)", 5).unwrap(),
            ])
            .unwrap();
        let pa = table_of_marks_brute(&a5).unwrap();
        let ours = table_of_marks_by_cyclic_extension(&pa, &s5).unwrap();
        let brute = table_of_marks_brute(&s5).unwrap();
        assert!(compare_patterns(&ours, &brute).matched());
        assert_eq!(ours.stats.probes, 0);
    }
}
