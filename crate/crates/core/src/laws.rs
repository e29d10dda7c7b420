//! Exhaustive verification of the algebraic identities the engine rests
//! on. Each check enumerates its full domain at one modulus and returns
//! the first counterexample as a string, so failures are self-describing.

use crate::dichotomy::StrongDichotomy;
use crate::par;
use crate::projection::{comm_condition, comm_square_pointwise, score};
use crate::ring::{polarity2_apply, AffineMap, FirstInterval, Modulus, Projection, TwoInterval};

/// For every canonical projection `g`, every cantus translation `t1`, and
/// every 2-interval `xi`:
///
/// ```text
/// T^t1 (g(xi))  =  g^(-t1) (T^(s^-1.t1 + e2.t1) (xi))
/// ```
///
/// where `g^(t1) = g . T^(e1.s^-1.w1.t1 + e2.t1)` and the outer `T`
/// translates only the cantus component. This is what justifies running
/// every search at cantus firmus 0.
pub fn translation_relation(m: Modulus) -> Result<(), String> {
    let mut tuples = Vec::new();
    for s in m.units() {
        for w1 in m.residues() {
            for w2 in m.residues() {
                for t2 in m.residues() {
                    tuples.push((s, w1, w2, t2));
                }
            }
        }
    }
    let failures = par::map_items(&tuples, |&(s, w1, w2, t2)| {
        let g = Projection::canonical(t2, s, w1, w2).expect("s is a unit");
        let s_inv = s.inverse().expect("s is a unit");
        for t1 in m.residues() {
            // g^(-t1): feed g the argument translated by
            // (-s^-1.w1.t1) on e1 and (-t1) on e2.
            let eps1_shift = s_inv * w1 * t1;
            for c in m.residues() {
                for x in m.residues() {
                    for y in m.residues() {
                        let xi = TwoInterval::new(c, x, y).expect("same modulus");
                        let lhs = g
                            .apply(xi)
                            .expect("same modulus")
                            .translate_cantus(t1)
                            .expect("same modulus");
                        let shifted =
                            TwoInterval::new(c + s_inv * t1, x, y + t1).expect("same modulus");
                        let arg = TwoInterval::new(
                            shifted.cantus(),
                            shifted.downbeat() - eps1_shift,
                            shifted.upbeat() - t1,
                        )
                        .expect("same modulus");
                        let rhs = g.apply(arg).expect("same modulus");
                        if lhs != rhs {
                            return Some(format!(
                                "translation relation fails at m={m}, g={g}, t1={t1}, xi={xi}: {lhs} vs {rhs}"
                            ));
                        }
                    }
                }
            }
        }
        None
    });
    match failures.into_iter().flatten().next() {
        None => Ok(()),
        Some(msg) => Err(msg),
    }
}

/// For every affine involution `p`, all cantus tones `c1`, `c2`, and every
/// 2-interval: `p^(c1+c2) = T^c1 . p^(c2) . T^(-c1)`, with `T` translating
/// only the cantus component.
pub fn polarity_conjugation(m: Modulus) -> Result<(), String> {
    let involutions: Vec<AffineMap> = AffineMap::all(m)
        .into_iter()
        .filter(|p| p.is_involution())
        .collect();
    let failures = par::map_items(&involutions, |&p| {
        for c1 in m.residues() {
            for c2 in m.residues() {
                for c in m.residues() {
                    for x in m.residues() {
                        for y in m.residues() {
                            let xi = TwoInterval::new(c, x, y).expect("same modulus");
                            let lhs = polarity2_apply(p, c1 + c2, xi).expect("same modulus");
                            let pulled = xi.translate_cantus(-c1).expect("same modulus");
                            let rhs = polarity2_apply(p, c2, pulled)
                                .expect("same modulus")
                                .translate_cantus(c1)
                                .expect("same modulus");
                            if lhs != rhs {
                                return Some(format!(
                                    "conjugation fails at m={m}, p={p}, c1={c1}, c2={c2}, xi={xi}: {lhs} vs {rhs}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    });
    match failures.into_iter().flatten().next() {
        None => Ok(()),
        Some(msg) => Err(msg),
    }
}

/// For every canonical candidate, the arithmetic commutation shortcut must
/// coincide with the commuting square checked point by point over all of
/// `Z_2k[e1,e2]`.
pub fn comm_shortcut_matches_square(d: &StrongDichotomy) -> Result<(), String> {
    let m = d.modulus();
    let mut tuples = Vec::new();
    for s in m.units() {
        for w1 in m.residues() {
            for w2 in m.residues() {
                for t2 in m.residues() {
                    tuples.push((s, w1, w2, t2));
                }
            }
        }
    }
    let failures = par::map_items(&tuples, |&(s, w1, w2, t2)| {
        let g = Projection::canonical(t2, s, w1, w2).expect("s is a unit");
        let fast = comm_condition(&g, d);
        let slow = comm_square_pointwise(&g, d);
        (fast != slow).then(|| format!("shortcut {fast} vs square {slow} for {g}"))
    });
    match failures.into_iter().flatten().next() {
        None => Ok(()),
        Some(msg) => Err(msg),
    }
}

/// For every canonical candidate and every upbeat `z`, the branch-shortcut
/// score must equal the materialized overlap `|gX[e1,e2.z]  meet  X[e1]|`.
pub fn score_matches_materialized(d: &StrongDichotomy) -> Result<(), String> {
    let m = d.modulus();
    let mut tuples = Vec::new();
    for s in m.units() {
        for w1 in m.residues() {
            for w2 in m.residues() {
                for t2 in m.residues() {
                    tuples.push((s, w1, w2, t2));
                }
            }
        }
    }
    let failures = par::map_items(&tuples, |&(s, w1, w2, t2)| {
        let g = Projection::canonical(t2, s, w1, w2).expect("s is a unit");
        for z in m.residues() {
            let fast = score(&g, z, d);
            let mut materialized = 0usize;
            let mut seen = std::collections::BTreeSet::new();
            for c in m.residues() {
                for &ell in d.consonances() {
                    let xi = TwoInterval::new(c, ell, z).expect("same modulus");
                    let eta: FirstInterval = g.apply(xi).expect("same modulus");
                    if d.is_consonant(eta.interval()) && seen.insert(eta) {
                        materialized += 1;
                    }
                }
            }
            if fast != materialized {
                return Some(format!(
                    "score {fast} vs materialized {materialized} for {g}, z={z}"
                ));
            }
        }
        None
    });
    match failures.into_iter().flatten().next() {
        None => Ok(()),
        Some(msg) => Err(msg),
    }
}

/// The always-present candidate `(s = v, l = y, w1 = w2 = 0)` passes both
/// conditions for every consonant `y`, witnessed via the public operations.
pub fn remark_witness_passes(d: &StrongDichotomy) -> Result<(), String> {
    let m = d.modulus();
    for &y in d.consonances() {
        let witness = crate::projection::remark_witness(y, d)
            .map_err(|e| format!("witness for y={y}: {e}"))?;
        if !comm_condition(&witness, d) {
            return Err(format!("witness {witness} fails commutation for y={y}"));
        }
        for z in m.residues() {
            let t2 = crate::projection::t2_from_ell(y, witness.s(), witness.w2(), z, y, d)
                .map_err(|e| format!("witness translation for y={y}, z={z}: {e}"))?;
            if t2 != witness.t2() {
                return Err(format!(
                    "witness translation {t2} differs from {} for y={y}, z={z}",
                    witness.t2()
                ));
            }
        }
    }
    Ok(())
}

/// `sum_t chi(t, s) = k^2` for each unit `s`: every consonance lands back
/// in `X` under exactly `k` translations.
pub fn chi_row_sums(d: &StrongDichotomy) -> Result<(), String> {
    let m = d.modulus();
    let k = m.half() as usize;
    for s in m.units() {
        let total: usize = m
            .residues()
            .map(|t| crate::dichotomy::chi(t, s, d.base()).expect("s is a unit"))
            .sum();
        if total != k * k {
            return Err(format!("chi row sum {total} != {} for s={s}", k * k));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_relation_small_moduli() {
        for modulus in [6u32, 10] {
            translation_relation(Modulus::new(modulus).unwrap()).unwrap();
        }
    }

    #[test]
    fn conjugation_small_moduli() {
        for modulus in [6u32, 10] {
            polarity_conjugation(Modulus::new(modulus).unwrap()).unwrap();
        }
    }

    #[test]
    fn classical_shortcut_and_score_identities() {
        let d = StrongDichotomy::classical();
        comm_shortcut_matches_square(&d).unwrap();
        remark_witness_passes(&d).unwrap();
        chi_row_sums(&d).unwrap();
    }

    #[test]
    fn classical_score_matches_materialized_in_every_branch() {
        score_matches_materialized(&StrongDichotomy::classical()).unwrap();
    }

    #[test]
    fn foreign_modulus_shortcut_identities() {
        let m = Modulus::new(10).unwrap();
        let d = crate::dichotomy::enumerate_strong(m)
            .into_iter()
            .next()
            .expect("Z_10 has strong dichotomies");
        comm_shortcut_matches_square(&d).unwrap();
        remark_witness_passes(&d).unwrap();
        chi_row_sums(&d).unwrap();
    }
}
