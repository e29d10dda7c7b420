//! Brute-force reimplementations of the projection search, kept
//! deliberately independent of the closed-form scoring path: conditions are
//! checked by materializing sets element by element and by evaluating the
//! commuting square pointwise. Differential tests pit these against the
//! fast engine.

use std::collections::{BTreeSet, HashSet};

use crate::dichotomy::StrongDichotomy;
use crate::projection::{EngineError, FirstSpeciesResult, ProjectionResult};
use crate::ring::{FirstInterval, Modulus, Projection, Residue};

/// Second-species oracle. Construction runs the pointwise commuting-square
/// scan over every canonical candidate once; the per-cell search then
/// materializes deformed sets directly from the projection formula.
pub struct Oracle<'a> {
    d: &'a StrongDichotomy,
    comm_valid: HashSet<(u32, u32, u32, u32)>,
}

impl<'a> Oracle<'a> {
    pub fn new(d: &'a StrongDichotomy) -> Self {
        let m = d.modulus();
        let mut comm_valid = HashSet::new();
        for t2 in m.residues() {
            for s in m.units() {
                for w1 in m.residues() {
                    for w2 in m.residues() {
                        let g = Projection::canonical(t2, s, w1, w2).expect("s is a unit");
                        if crate::projection::comm_square_pointwise(&g, d) {
                            comm_valid.insert((t2.value(), s.value(), w1.value(), w2.value()));
                        }
                    }
                }
            }
        }
        Oracle { d, comm_valid }
    }

    pub fn projections(&self, y: Residue, z: Residue) -> Result<ProjectionResult, EngineError> {
        let d = self.d;
        let m = d.modulus();
        if y.modulus() != m || z.modulus() != m {
            return Err(crate::ring::RingError::ModulusMismatch(y.modulus().get(), m.get()).into());
        }
        if !d.is_consonant(y) {
            return Err(EngineError::DissonantDownbeat(y.value()));
        }

        let mm = m.get();
        let x_mask = masked_consonances(d);
        let mut max_score = 0usize;
        let mut argmax: BTreeSet<(u32, u32, u32, u32)> = BTreeSet::new();

        for t2 in 0..mm {
            for s in m.units().iter().map(|r| r.value()) {
                for w1 in 0..mm {
                    for w2 in 0..mm {
                        if !self.comm_valid.contains(&(t2, s, w1, w2)) {
                            continue;
                        }
                        let fibers = materialize_fibers(d, t2, s, w1, w2, z.value());
                        if fibers[0] & (1 << y.value()) != 0 {
                            continue;
                        }
                        let sc: usize = fibers
                            .iter()
                            .map(|f| (f & x_mask).count_ones() as usize)
                            .sum();
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

        let projections: BTreeSet<Projection> = argmax
            .iter()
            .map(|&(t2, s, w1, w2)| canonical(m, t2, s, w1, w2))
            .collect();
        let mut successors = BTreeSet::new();
        for &(t2, s, w1, w2) in &argmax {
            let fibers = materialize_fibers(d, t2, s, w1, w2, z.value());
            collect_consonant(m, &fibers, x_mask, &mut successors);
        }
        ProjectionResult::from_parts(y, z, max_score, projections, successors)
    }
}

/// One-shot form of [`Oracle::projections`].
pub fn projections_oracle(
    y: Residue,
    z: Residue,
    d: &StrongDichotomy,
) -> Result<ProjectionResult, EngineError> {
    Oracle::new(d).projections(y, z)
}

/// First-species oracle: the `w2 = 0` slice, with the commuting square
/// checked pointwise over `Z_2k[e1]`.
pub fn first_species_oracle(
    y: Residue,
    d: &StrongDichotomy,
) -> Result<FirstSpeciesResult, EngineError> {
    let m = d.modulus();
    if y.modulus() != m {
        return Err(crate::ring::RingError::ModulusMismatch(y.modulus().get(), m.get()).into());
    }
    if !d.is_consonant(y) {
        return Err(EngineError::DissonantDownbeat(y.value()));
    }

    let mm = m.get();
    let x_mask = masked_consonances(d);
    let p = d.polarity();
    let zero = m.residue(0);
    let mut max_score = 0usize;
    let mut argmax: BTreeSet<(u32, u32, u32)> = BTreeSet::new();

    for t2 in 0..mm {
        for s in m.units().iter().map(|r| r.value()) {
            for w1 in 0..mm {
                let g = canonical(m, t2, s, w1, 0);
                let square_commutes = m.residues().all(|c| {
                    m.residues().all(|x| {
                        let eta = FirstInterval::new(c, x).expect("same modulus");
                        let lhs = g
                            .apply_first(
                                crate::ring::polarity1_apply(p, zero, eta).expect("same modulus"),
                            )
                            .expect("same modulus");
                        let rhs = crate::ring::polarity1_apply(
                            p,
                            zero,
                            g.apply_first(eta).expect("same modulus"),
                        )
                        .expect("same modulus");
                        lhs == rhs
                    })
                });
                if !square_commutes {
                    continue;
                }
                let fibers = materialize_first_fibers(d, t2, s, w1);
                if fibers[0] & (1 << y.value()) != 0 {
                    continue;
                }
                let sc: usize = fibers
                    .iter()
                    .map(|f| (f & x_mask).count_ones() as usize)
                    .sum();
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

    let symmetries: BTreeSet<Projection> = argmax
        .iter()
        .map(|&(t2, s, w1)| canonical(m, t2, s, w1, 0))
        .collect();
    let mut successors = BTreeSet::new();
    for &(t2, s, w1) in &argmax {
        let fibers = materialize_first_fibers(d, t2, s, w1);
        collect_consonant(m, &fibers, x_mask, &mut successors);
    }
    FirstSpeciesResult::from_parts(y, max_score, symmetries, successors)
}

/// Successor derivation carried out entirely at cantus firmus `cantus`,
/// against the shifted polarity frame `p^cantus`, over the full projection
/// family including the cantus translation `t1`. Returns the maximal score
/// and the admitted successors (un-normalized). Cross-validates the
/// engine's translate-from-cantus-0 construction.
pub fn shifted_frame_successors(
    cantus: Residue,
    downbeat: Residue,
    upbeat: Residue,
    d: &StrongDichotomy,
) -> Result<(usize, BTreeSet<FirstInterval>), EngineError> {
    let m = d.modulus();
    if !d.is_consonant(downbeat) {
        return Err(EngineError::DissonantDownbeat(downbeat.value()));
    }
    let mm = m.get();
    let x_mask = masked_consonances(d);
    let p = d.polarity();
    let (u, v) = (p.translation().value(), p.linear().value());
    let c = cantus.value();
    // c(1 - v) mod m, kept unsigned.
    let frame_shift = c * (1 + mm - v) % mm;
    let units: Vec<u32> = m.units().iter().map(|r| r.value()).collect();

    let mut max_score = 0usize;
    let mut argmax: Vec<(u32, u32, u32, u32, u32)> = Vec::new();

    for t1 in 0..mm {
        for t2 in 0..mm {
            for &s in &units {
                for w1 in 0..mm {
                    for w2 in 0..mm {
                        let apply = |cc: u32, xx: u32, yy: u32| -> (u32, u32) {
                            ((s * cc + t1) % mm, (s * (w1 * cc + xx + w2 * yy) + t2) % mm)
                        };
                        let pol2 = |cc: u32, xx: u32, yy: u32| -> (u32, u32, u32) {
                            (
                                (v * cc + frame_shift) % mm,
                                (v * xx + u) % mm,
                                (v * yy + u) % mm,
                            )
                        };
                        let pol1 = |cc: u32, xx: u32| -> (u32, u32) {
                            ((v * cc + frame_shift) % mm, (v * xx + u) % mm)
                        };
                        let mut commutes = true;
                        'square: for cc in 0..mm {
                            for xx in 0..mm {
                                for yy in 0..mm {
                                    let (pc, px, py) = pol2(cc, xx, yy);
                                    let lhs = apply(pc, px, py);
                                    let (gc, gx) = apply(cc, xx, yy);
                                    let rhs = pol1(gc, gx);
                                    if lhs != rhs {
                                        commutes = false;
                                        break 'square;
                                    }
                                }
                            }
                        }
                        if !commutes {
                            continue;
                        }
                        let mut fibers = vec![0u32; mm as usize];
                        for cc in 0..mm {
                            for ell in d.consonances() {
                                let (fc, fx) = apply(cc, ell.value(), upbeat.value());
                                fibers[fc as usize] |= 1 << fx;
                            }
                        }
                        if fibers[c as usize] & (1 << downbeat.value()) != 0 {
                            continue;
                        }
                        let sc: usize = fibers
                            .iter()
                            .map(|f| (f & x_mask).count_ones() as usize)
                            .sum();
                        if sc > max_score {
                            max_score = sc;
                            argmax.clear();
                        }
                        if sc == max_score {
                            argmax.push((t1, t2, s, w1, w2));
                        }
                    }
                }
            }
        }
    }

    let mut successors = BTreeSet::new();
    for &(t1, t2, s, w1, w2) in &argmax {
        let mut fibers = vec![0u32; mm as usize];
        for cc in 0..mm {
            for ell in d.consonances() {
                let fc = (s * cc + t1) % mm;
                let fx = (s * (w1 * cc + ell.value() + w2 * upbeat.value()) + t2) % mm;
                fibers[fc as usize] |= 1 << fx;
            }
        }
        collect_consonant(m, &fibers, x_mask, &mut successors);
    }
    Ok((max_score, successors))
}

fn canonical(m: Modulus, t2: u32, s: u32, w1: u32, w2: u32) -> Projection {
    Projection::canonical(
        m.residue(i64::from(t2)),
        m.residue(i64::from(s)),
        m.residue(i64::from(w1)),
        m.residue(i64::from(w2)),
    )
    .expect("s is a unit")
}

fn masked_consonances(d: &StrongDichotomy) -> u32 {
    d.consonances()
        .iter()
        .fold(0u32, |acc, r| acc | (1 << r.value()))
}

/// Per-cantus downbeat masks of `gX[e1, e2.z]`, materialized from the
/// projection formula point by point.
fn materialize_fibers(d: &StrongDichotomy, t2: u32, s: u32, w1: u32, w2: u32, z: u32) -> Vec<u32> {
    let mm = d.modulus().get();
    let mut fibers = vec![0u32; mm as usize];
    for x in 0..mm {
        let c = s * x % mm;
        for ell in d.consonances() {
            let val = (s * (w1 * x + ell.value() + w2 * z) + t2) % mm;
            fibers[c as usize] |= 1 << val;
        }
    }
    fibers
}

fn materialize_first_fibers(d: &StrongDichotomy, t2: u32, s: u32, w1: u32) -> Vec<u32> {
    let mm = d.modulus().get();
    let mut fibers = vec![0u32; mm as usize];
    for c in 0..mm {
        let fc = s * c % mm;
        for ell in d.consonances() {
            let val = (s * (w1 * c + ell.value()) + t2) % mm;
            fibers[fc as usize] |= 1 << val;
        }
    }
    fibers
}

fn collect_consonant(m: Modulus, fibers: &[u32], x_mask: u32, out: &mut BTreeSet<FirstInterval>) {
    for (r, &fiber) in fibers.iter().enumerate() {
        let mut bits = fiber & x_mask;
        while bits != 0 {
            let x = bits.trailing_zeros();
            out.insert(FirstInterval::from_values(m, r as i64, i64::from(x)));
            bits &= bits - 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::{second_species_projections, second_species_successors};
    use crate::ring::TwoInterval;

    #[test]
    fn oracle_agrees_on_first_gradus_cell() {
        let d = StrongDichotomy::classical();
        let m = d.modulus();
        let y = m.residue(7);
        let z = m.residue(0);
        let fast = second_species_projections(y, z, &d).unwrap();
        let slow = projections_oracle(y, z, &d).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn oracle_excludes_identity_on_consonant_downbeat() {
        // Under the identity projection the downbeat stays consonant, so
        // condition 1 can never hold.
        let d = StrongDichotomy::classical();
        let m = d.modulus();
        let result = projections_oracle(m.residue(7), m.residue(0), &d).unwrap();
        assert!(!result.projections().contains(&Projection::identity(m)));
        assert!(result.max_score() <= (m.get() * m.half()) as usize);
    }

    #[test]
    fn shifted_frame_matches_translated_successors() {
        let d = StrongDichotomy::classical();
        let m = d.modulus();
        // The first Gradus measure, validated in its own frame at cantus 2.
        let xi = TwoInterval::from_values(m, 2, 7, 0);
        let via_engine = second_species_successors(xi, &d).unwrap();
        let (max, via_frame) =
            shifted_frame_successors(xi.cantus(), xi.downbeat(), xi.upbeat(), &d).unwrap();
        assert_eq!(via_frame, via_engine);
        let normalized = second_species_projections(xi.downbeat(), xi.upbeat(), &d).unwrap();
        assert_eq!(max, normalized.max_score());
    }
}
