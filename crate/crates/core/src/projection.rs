//! Derivation of counterpoint projections and admitted successors.
//!
//! The search runs at cantus firmus 0 over canonical projections
//! `(t2, s, w1, w2)` (so `t1 = 0`). For a source 2-interval with downbeat
//! `y` and upbeat `z`, a projection qualifies when
//!
//! 1. the downbeat becomes a deformed dissonance: `e1.y` lies outside the
//!    deformed set `gX[e1, e2.z]`, which pins `t2 = y - s(p(l) + w2.z)` for
//!    some consonance `l`;
//! 2. `g` commutes with the polarities of source and target space:
//!    `t2 + s.u(1 + w2) = u + v.t2`;
//! 3. the overlap `|gX[e1, e2.z]  meet  X[e1]|` is maximal among candidates
//!    satisfying 1 and 2.
//!
//! The overlap is scored through the kernel `chi` fiber by fiber, with the
//! `w1 = 0` / `w1` unit / `gcd` shortcuts. Admitted successors are the
//! union of `gX[e1, e2.z]  meet  X[e1]` over all maximal projections.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::dichotomy::{chi, deformed_set, deformed_set_first, StrongDichotomy};
use crate::par;
use crate::ring::{
    gcd, polarity1_apply, polarity2_apply, FirstInterval, Projection, Residue, RingError,
    TwoInterval,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("downbeat interval {0} is dissonant")]
    DissonantDownbeat(u32),
    #[error("{0} is not a consonance")]
    NotConsonant(u32),
    #[error("successor count {count} for (y={y}, z={z}) outside [{lower}, {upper}]")]
    BoundViolation {
        y: u32,
        z: u32,
        count: usize,
        lower: usize,
        upper: usize,
    },
}

/// The outcome of the second-species search for one `(y, z)` cell: the
/// maximal projections, their shared score, and the admitted successors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectionResult {
    y: Residue,
    z: Residue,
    max_score: usize,
    projections: BTreeSet<Projection>,
    successors: BTreeSet<FirstInterval>,
}

impl ProjectionResult {
    pub fn y(&self) -> Residue {
        self.y
    }

    pub fn z(&self) -> Residue {
        self.z
    }

    pub fn max_score(&self) -> usize {
        self.max_score
    }

    /// The maximal projections, in parameter order.
    pub fn projections(&self) -> &BTreeSet<Projection> {
        &self.projections
    }

    /// Admitted successors at cantus firmus 0: the union of
    /// `gX[e1, e2.z]  meet  X[e1]` over every maximal projection. An
    /// interval is admitted when *some* maximal projection deforms it
    /// consonant.
    pub fn successors(&self) -> &BTreeSet<FirstInterval> {
        &self.successors
    }

    /// The `[k^2, 2k^2 - k]` window for the per-projection successor
    /// count.
    pub fn successor_bounds(&self) -> (usize, usize) {
        let k = self.y.modulus().half() as usize;
        (k * k, 2 * k * k - k)
    }

    /// Whether the per-projection successor count respects the bounds.
    ///
    /// Each maximal projection admits exactly `max_score` successors, so
    /// that count is what the bounds constrain. The union across tied
    /// maximal projections can legitimately exceed the upper bound.
    pub fn score_within_bounds(&self) -> bool {
        let (lower, upper) = self.successor_bounds();
        (lower..=upper).contains(&self.max_score)
    }

    /// Reassembles a result from stored parts (cache loading). Checks only
    /// shape, not the search invariants.
    pub fn from_parts(
        y: Residue,
        z: Residue,
        max_score: usize,
        projections: BTreeSet<Projection>,
        successors: BTreeSet<FirstInterval>,
    ) -> Result<Self, EngineError> {
        same_modulus(y, z)?;
        for g in &projections {
            same_modulus(y, g.t2())?;
        }
        for eta in &successors {
            same_modulus(y, eta.cantus())?;
        }
        Ok(ProjectionResult {
            y,
            z,
            max_score,
            projections,
            successors,
        })
    }
}

/// First-species analogue: the `w2 = 0`, upbeat-free slice of the search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FirstSpeciesResult {
    y: Residue,
    max_score: usize,
    symmetries: BTreeSet<Projection>,
    successors: BTreeSet<FirstInterval>,
}

impl FirstSpeciesResult {
    pub fn y(&self) -> Residue {
        self.y
    }

    pub fn max_score(&self) -> usize {
        self.max_score
    }

    pub fn symmetries(&self) -> &BTreeSet<Projection> {
        &self.symmetries
    }

    pub fn successors(&self) -> &BTreeSet<FirstInterval> {
        &self.successors
    }

    pub fn from_parts(
        y: Residue,
        max_score: usize,
        symmetries: BTreeSet<Projection>,
        successors: BTreeSet<FirstInterval>,
    ) -> Result<Self, EngineError> {
        for g in &symmetries {
            same_modulus(y, g.t2())?;
        }
        for eta in &successors {
            same_modulus(y, eta.cantus())?;
        }
        Ok(FirstSpeciesResult {
            y,
            max_score,
            symmetries,
            successors,
        })
    }
}

fn same_modulus(a: Residue, b: Residue) -> Result<(), RingError> {
    if a.modulus() == b.modulus() {
        Ok(())
    } else {
        Err(RingError::ModulusMismatch(
            a.modulus().get(),
            b.modulus().get(),
        ))
    }
}

/// The commutation condition `t2 + s.u(1 + w2) = u + v.t2` for a canonical
/// projection.
///
/// In debug builds this is checked against the commuting square itself:
/// `g . p^0 = p_d^0 . g` pointwise over all of `Z_2k[e1,e2]`.
pub fn comm_condition(g: &Projection, d: &StrongDichotomy) -> bool {
    assert!(g.is_canonical(), "comm_condition needs t1 = 0");
    let p = d.polarity();
    let (u, v) = (p.translation(), p.linear());
    let one = d.modulus().residue(1);
    let holds = g.t2() + g.s() * u * (one + g.w2()) == u + v * g.t2();
    debug_assert_eq!(holds, comm_square_pointwise(g, d));
    holds
}

pub(crate) fn comm_square_pointwise(g: &Projection, d: &StrongDichotomy) -> bool {
    let m = d.modulus();
    let p = d.polarity();
    let zero = m.residue(0);
    for c in m.residues() {
        for x in m.residues() {
            for y in m.residues() {
                let xi = TwoInterval::new(c, x, y).expect("same modulus");
                let lhs = g
                    .apply(polarity2_apply(p, zero, xi).expect("same modulus"))
                    .expect("same modulus");
                let rhs = polarity1_apply(p, zero, g.apply(xi).expect("same modulus"))
                    .expect("same modulus");
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The deformation translation forced by consonance `l`:
/// `t2 = y - s(p(l) + w2.z)`. This makes `e1.y` deformed-dissonant for any
/// `w1`; debug builds re-check that through the materialized deformed set.
pub fn t2_from_ell(
    y: Residue,
    s: Residue,
    w2: Residue,
    z: Residue,
    ell: Residue,
    d: &StrongDichotomy,
) -> Result<Residue, EngineError> {
    for r in [s, w2, z, ell] {
        same_modulus(y, r)?;
    }
    if !d.is_consonant(ell) {
        return Err(EngineError::NotConsonant(ell.value()));
    }
    let p_ell = d.polarity().apply(ell)?;
    let t2 = y - s * (p_ell + w2 * z);
    #[cfg(debug_assertions)]
    {
        for w1 in d.modulus().residues() {
            let g = Projection::canonical(t2, s, w1, w2).expect("s is a unit");
            let downbeat = FirstInterval::new(d.modulus().residue(0), y).expect("same modulus");
            debug_assert!(
                !deformed_set(&g, z, d).contains(&downbeat),
                "condition 1 violated for {g}"
            );
        }
    }
    Ok(t2)
}

/// The always-available candidate `(s = v, l = y, w1 = w2 = 0)`, whose
/// translation reduces to `t2 = -v.u`. It passes both conditions for every
/// consonant `y` and any `z`, so the candidate set is never empty.
pub fn remark_witness(y: Residue, d: &StrongDichotomy) -> Result<Projection, EngineError> {
    same_modulus(y, d.modulus().residue(0))?;
    if !d.is_consonant(y) {
        return Err(EngineError::DissonantDownbeat(y.value()));
    }
    let p = d.polarity();
    let (u, v) = (p.translation(), p.linear());
    let zero = d.modulus().residue(0);
    Ok(Projection::canonical(-(v * u), v, zero, zero).expect("v is a unit"))
}

/// Scores a canonical projection against upbeat `z`: the overlap
/// `|gX[e1, e2.z]  meet  X[e1]|`, computed as
/// `sum_r chi(w1.r + t2 + s.w2.z, s)` with the branch shortcuts.
pub fn score(g: &Projection, z: Residue, d: &StrongDichotomy) -> usize {
    assert!(g.is_canonical(), "score needs t1 = 0");
    let m = d.modulus().get();
    let offset = g.t2() + g.s() * g.w2() * z;
    let chi_at = |t: Residue| chi(t, g.s(), d.base()).expect("s is a unit");
    let w1 = g.w1().value();
    let total = if w1 == 0 {
        m as usize * chi_at(offset)
    } else if g.w1().is_unit() {
        let k = d.modulus().half() as usize;
        k * k
    } else {
        let rho = gcd(w1, m);
        let partial: usize = (0..m / rho)
            .map(|j| chi_at(d.modulus().residue(i64::from(j * rho)) + offset))
            .sum();
        rho as usize * partial
    };
    debug_assert_eq!(total, {
        deformed_set(g, z, d)
            .iter()
            .filter(|eta| d.is_consonant(eta.interval()))
            .count()
    });
    total
}

/// Internal search state shared by the second- and first-species loops.
struct SearchCtx {
    m: u32,
    k: u32,
    u: u32,
    v: u32,
    x_mask: u32,
    full_mask: u32,
    consonances: Vec<u32>,
    units: Vec<u32>,
}

impl SearchCtx {
    fn new(d: &StrongDichotomy) -> Self {
        let m = d.modulus().get();
        let p = d.polarity();
        SearchCtx {
            m,
            k: d.modulus().half(),
            u: p.translation().value(),
            v: p.linear().value(),
            x_mask: d.mask(),
            full_mask: crate::ring::full_mask(m),
            consonances: d.consonances().iter().map(|r| r.value()).collect(),
            units: d.modulus().units().iter().map(|r| r.value()).collect(),
        }
    }

    fn rot(&self, mask: u32, t: u32) -> u32 {
        if t == 0 {
            mask
        } else {
            ((mask << t) | (mask >> (self.m - t))) & self.full_mask
        }
    }

    /// `chi(t, s)` for all `t`, as popcounts of the rotated `sX` mask.
    fn chi_row(&self, s: u32) -> Vec<usize> {
        let sx_mask = self
            .consonances
            .iter()
            .fold(0u32, |acc, &x| acc | (1 << (s * x % self.m)));
        (0..self.m)
            .map(|t| (self.rot(sx_mask, t) & self.x_mask).count_ones() as usize)
            .collect()
    }

    fn score_branch(&self, w1: u32, offset: u32, chi_row: &[usize]) -> usize {
        if w1 == 0 {
            self.m as usize * chi_row[offset as usize]
        } else if gcd(w1, self.m) == 1 {
            (self.k * self.k) as usize
        } else {
            let rho = gcd(w1, self.m);
            let partial: usize = (0..self.m / rho)
                .map(|j| chi_row[((j * rho + offset) % self.m) as usize])
                .sum();
            rho as usize * partial
        }
    }

    fn comm_holds(&self, t2: u32, s: u32, w2: u32) -> bool {
        (t2 + s * self.u * (1 + w2)) % self.m == (self.u + self.v * t2) % self.m
    }
}

/// Runs the full second-species search for the cell `(y, z)`.
pub fn second_species_projections(
    y: Residue,
    z: Residue,
    d: &StrongDichotomy,
) -> Result<ProjectionResult, EngineError> {
    same_modulus(y, z)?;
    same_modulus(y, d.modulus().residue(0))?;
    if !d.is_consonant(y) {
        return Err(EngineError::DissonantDownbeat(y.value()));
    }

    let ctx = SearchCtx::new(d);
    let m = ctx.m;
    let mut max_score = 0usize;
    let mut argmax: BTreeSet<(u32, u32, u32, u32)> = BTreeSet::new();

    for &s in &ctx.units {
        let chi_row = ctx.chi_row(s);
        for &ell in &ctx.consonances {
            let p_ell = (ctx.v * ell + ctx.u) % m;
            for w2 in 0..m {
                let t2 = (i64::from(y.value()) - i64::from(s * (p_ell + w2 * z.value()) % m))
                    .rem_euclid(i64::from(m)) as u32;
                if !ctx.comm_holds(t2, s, w2) {
                    continue;
                }
                let offset = (t2 + s * w2 * z.value()) % m;
                for w1 in 0..m {
                    let sc = ctx.score_branch(w1, offset, &chi_row);
                    if sc > max_score {
                        max_score = sc;
                        argmax.clear();
                    }
                    if sc == max_score {
                        argmax.insert((t2, s, w1, w2));
                    }
                }
            }
        }
    }

    let modulus = d.modulus();
    let projections: BTreeSet<Projection> = argmax
        .into_iter()
        .map(|(t2, s, w1, w2)| {
            Projection::canonical(
                modulus.residue(i64::from(t2)),
                modulus.residue(i64::from(s)),
                modulus.residue(i64::from(w1)),
                modulus.residue(i64::from(w2)),
            )
            .expect("s is a unit")
        })
        .collect();

    let mut successors = BTreeSet::new();
    for g in &projections {
        successors.extend(
            deformed_set(g, z, d)
                .into_iter()
                .filter(|eta| d.is_consonant(eta.interval())),
        );
    }

    Ok(ProjectionResult {
        y,
        z,
        max_score,
        projections,
        successors,
    })
}

/// Admitted successors of a 2-interval at any cantus firmus: searched at
/// cantus 0, then translated back onto the source cantus.
pub fn second_species_successors(
    xi: TwoInterval,
    d: &StrongDichotomy,
) -> Result<BTreeSet<FirstInterval>, EngineError> {
    let result = second_species_projections(xi.downbeat(), xi.upbeat(), d)?;
    Ok(translate_all(result.successors(), xi.cantus()))
}

pub(crate) fn translate_all(
    successors: &BTreeSet<FirstInterval>,
    offset: Residue,
) -> BTreeSet<FirstInterval> {
    successors
        .iter()
        .map(|eta| eta.translate_cantus(offset).expect("same modulus"))
        .collect()
}

/// The first-species search: the same loops with `w2 = 0` and no upbeat.
pub fn first_species_symmetries(
    y: Residue,
    d: &StrongDichotomy,
) -> Result<FirstSpeciesResult, EngineError> {
    same_modulus(y, d.modulus().residue(0))?;
    if !d.is_consonant(y) {
        return Err(EngineError::DissonantDownbeat(y.value()));
    }

    let ctx = SearchCtx::new(d);
    let m = ctx.m;
    let mut max_score = 0usize;
    let mut argmax: BTreeSet<(u32, u32, u32)> = BTreeSet::new();

    for &s in &ctx.units {
        let chi_row = ctx.chi_row(s);
        for &ell in &ctx.consonances {
            let p_ell = (ctx.v * ell + ctx.u) % m;
            let t2 =
                (i64::from(y.value()) - i64::from(s * p_ell % m)).rem_euclid(i64::from(m)) as u32;
            if !ctx.comm_holds(t2, s, 0) {
                continue;
            }
            for w1 in 0..m {
                let sc = ctx.score_branch(w1, t2, &chi_row);
                if sc > max_score {
                    max_score = sc;
                    argmax.clear();
                }
                if sc == max_score {
                    argmax.insert((t2, s, w1));
                }
            }
        }
    }

    let modulus = d.modulus();
    let symmetries: BTreeSet<Projection> = argmax
        .into_iter()
        .map(|(t2, s, w1)| {
            Projection::canonical(
                modulus.residue(i64::from(t2)),
                modulus.residue(i64::from(s)),
                modulus.residue(i64::from(w1)),
                modulus.residue(0),
            )
            .expect("s is a unit")
        })
        .collect();

    let mut successors = BTreeSet::new();
    for g in &symmetries {
        successors.extend(
            deformed_set_first(g, d)
                .into_iter()
                .filter(|eta| d.is_consonant(eta.interval())),
        );
    }

    Ok(FirstSpeciesResult {
        y,
        max_score,
        symmetries,
        successors,
    })
}

/// First-species admitted successors of an interval at any cantus firmus.
pub fn first_species_successors(
    eta: FirstInterval,
    d: &StrongDichotomy,
) -> Result<BTreeSet<FirstInterval>, EngineError> {
    let result = first_species_symmetries(eta.interval(), d)?;
    Ok(translate_all(result.successors(), eta.cantus()))
}

/// Successor-count statistics over every `(y, z)` cell.
///
/// Two counts are tracked per cell: the per-projection successor count
/// (`max_score`, identical for every maximal projection), which the
/// `[k^2, 2k^2 - k]` bounds constrain, and the size of the successor
/// union across tied maximal projections, which can exceed the upper
/// bound and is reported rather than gated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TheoremAudit {
    pub lower: usize,
    pub upper: usize,
    pub score_min: usize,
    pub score_max: usize,
    /// per-projection successor count -> number of cells
    pub score_histogram: BTreeMap<usize, usize>,
    pub union_min: usize,
    pub union_max: usize,
    /// union size -> number of cells
    pub union_histogram: BTreeMap<usize, usize>,
    /// cells `(y, z, union size)` whose union lies outside the bounds
    pub union_outliers: Vec<(u32, u32, usize)>,
}

/// Checks `k^2 <= successors-per-projection <= 2k^2 - k` for every
/// consonant downbeat `y` and every upbeat `z`. A violation is an error;
/// union sizes are collected alongside for reporting.
pub fn theorem_audit(d: &StrongDichotomy) -> Result<TheoremAudit, EngineError> {
    let k = d.modulus().half() as usize;
    let (lower, upper) = (k * k, 2 * k * k - k);
    let cells = sweep_cells(d);
    let counts = par::map_items(&cells, |&(y, z)| {
        let result = second_species_projections(y, z, d).expect("y is consonant");
        (y, z, result.max_score(), result.successors().len())
    });
    let mut score_histogram = BTreeMap::new();
    let mut union_histogram = BTreeMap::new();
    let mut union_outliers = Vec::new();
    for &(y, z, score, union) in &counts {
        if !(lower..=upper).contains(&score) {
            return Err(EngineError::BoundViolation {
                y: y.value(),
                z: z.value(),
                count: score,
                lower,
                upper,
            });
        }
        *score_histogram.entry(score).or_insert(0usize) += 1;
        *union_histogram.entry(union).or_insert(0usize) += 1;
        if !(lower..=upper).contains(&union) {
            union_outliers.push((y.value(), z.value(), union));
        }
    }
    let score_min = *score_histogram.keys().next().expect("at least one cell");
    let score_max = *score_histogram
        .keys()
        .next_back()
        .expect("at least one cell");
    let union_min = *union_histogram.keys().next().expect("at least one cell");
    let union_max = *union_histogram
        .keys()
        .next_back()
        .expect("at least one cell");
    Ok(TheoremAudit {
        lower,
        upper,
        score_min,
        score_max,
        score_histogram,
        union_min,
        union_max,
        union_histogram,
        union_outliers,
    })
}

fn sweep_cells(d: &StrongDichotomy) -> Vec<(Residue, Residue)> {
    let mut cells = Vec::new();
    for &y in d.consonances() {
        for z in d.modulus().residues() {
            cells.push((y, z));
        }
    }
    cells
}

/// Computes every `(y in X, z in Z_2k)` cell, in `(y, z)` order. Runs on
/// the rayon pool when the `parallel` feature is enabled.
pub fn sweep_projections(d: &StrongDichotomy) -> Vec<ProjectionResult> {
    let cells = sweep_cells(d);
    par::map_items(&cells, |&(y, z)| {
        second_species_projections(y, z, d).expect("y is consonant")
    })
}

/// Sequential twin of [`sweep_projections`], kept callable regardless of
/// features so the two can be benchmarked against each other.
pub fn sweep_projections_sequential(d: &StrongDichotomy) -> Vec<ProjectionResult> {
    let cells = sweep_cells(d);
    cells
        .iter()
        .map(|&(y, z)| second_species_projections(y, z, d).expect("y is consonant"))
        .collect()
}

/// In-process memo table for one dichotomy's projection results. Values are
/// identical regardless of which worker computes them first, so the table
/// never recomputes a key it already holds.
pub struct ProjectionTable {
    dichotomy: StrongDichotomy,
    second: Mutex<HashMap<(u32, u32), Arc<ProjectionResult>>>,
    first: Mutex<HashMap<u32, Arc<FirstSpeciesResult>>>,
}

impl ProjectionTable {
    pub fn new(dichotomy: StrongDichotomy) -> Self {
        ProjectionTable {
            dichotomy,
            second: Mutex::new(HashMap::new()),
            first: Mutex::new(HashMap::new()),
        }
    }

    pub fn dichotomy(&self) -> &StrongDichotomy {
        &self.dichotomy
    }

    pub fn second_species(
        &self,
        y: Residue,
        z: Residue,
    ) -> Result<Arc<ProjectionResult>, EngineError> {
        let key = (y.value(), z.value());
        if let Some(hit) = self.second.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(second_species_projections(y, z, &self.dichotomy)?);
        let mut cells = self.second.lock().unwrap();
        Ok(cells.entry(key).or_insert(computed).clone())
    }

    pub fn first_species(&self, y: Residue) -> Result<Arc<FirstSpeciesResult>, EngineError> {
        if let Some(hit) = self.first.lock().unwrap().get(&y.value()) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(first_species_symmetries(y, &self.dichotomy)?);
        let mut cells = self.first.lock().unwrap();
        Ok(cells.entry(y.value()).or_insert(computed).clone())
    }

    pub fn second_species_successors(
        &self,
        xi: TwoInterval,
    ) -> Result<BTreeSet<FirstInterval>, EngineError> {
        let result = self.second_species(xi.downbeat(), xi.upbeat())?;
        Ok(translate_all(result.successors(), xi.cantus()))
    }

    pub fn first_species_successors(
        &self,
        eta: FirstInterval,
    ) -> Result<BTreeSet<FirstInterval>, EngineError> {
        let result = self.first_species(eta.interval())?;
        Ok(translate_all(result.successors(), eta.cantus()))
    }

    /// Whether `from -> to` is a valid first-species step. Steps touching a
    /// dissonant interval are never valid.
    pub fn first_species_step_valid(
        &self,
        from: FirstInterval,
        to: FirstInterval,
    ) -> Result<bool, EngineError> {
        same_modulus(from.cantus(), to.cantus())?;
        if !self.dichotomy.is_consonant(from.interval())
            || !self.dichotomy.is_consonant(to.interval())
        {
            return Ok(false);
        }
        let result = self.first_species(from.interval())?;
        let normalized =
            FirstInterval::new(to.cantus() - from.cantus(), to.interval()).expect("same modulus");
        Ok(result.successors().contains(&normalized))
    }

    /// Seeds the table with precomputed results (cache loading). Existing
    /// entries win.
    pub fn preload(&self, results: impl IntoIterator<Item = ProjectionResult>) {
        let mut cells = self.second.lock().unwrap();
        for result in results {
            let key = (result.y().value(), result.z().value());
            cells.entry(key).or_insert_with(|| Arc::new(result));
        }
    }

    /// Every `(y, z)` cell, computing missing ones (in parallel when
    /// enabled) and memoizing them.
    pub fn sweep(&self) -> Vec<Arc<ProjectionResult>> {
        let cells = sweep_cells(&self.dichotomy);
        let missing: Vec<(Residue, Residue)> = {
            let held = self.second.lock().unwrap();
            cells
                .iter()
                .copied()
                .filter(|(y, z)| !held.contains_key(&(y.value(), z.value())))
                .collect()
        };
        let computed = par::map_items(&missing, |&(y, z)| {
            second_species_projections(y, z, &self.dichotomy).expect("y is consonant")
        });
        self.preload(computed);
        let held = self.second.lock().unwrap();
        cells
            .iter()
            .map(|(y, z)| held[&(y.value(), z.value())].clone())
            .collect()
    }
}
