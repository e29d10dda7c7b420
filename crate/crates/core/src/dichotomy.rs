//! Dichotomies of `Z_2k`, polarity search, and the deformed-set machinery.
//!
//! A dichotomy splits `Z_2k` into a consonance half `X` and a dissonance
//! half `Y` of equal size. It is *strong* when exactly one affine involution
//! exchanges the halves; that involution is the polarity. All searches here
//! are exhaustive scans, which double as uniqueness certificates at the
//! small moduli this engine targets.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::ring::{AffineMap, FirstInterval, Modulus, Projection, Residue, RingError, TwoInterval};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DichotomyError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("a dichotomy of Z_{modulus} needs {expected} distinct consonances, got {got}")]
    WrongSize {
        modulus: u32,
        expected: usize,
        got: usize,
    },
    #[error("consonance {0} listed twice")]
    Duplicate(u32),
    #[error(transparent)]
    NotStrong(#[from] NotStrongError),
}

/// Failure of the polarity search.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum NotStrongError {
    #[error("no affine involution exchanges the two halves")]
    NoPolarity,
    #[error("polarity is not unique: {} candidates qualify", .0.len())]
    Multiple(Vec<AffineMap>),
}

/// A marked dichotomy `(X / Y)` of `Z_2k`: `X` is the consonance half,
/// stored sorted ascending; `Y` is its complement.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dichotomy {
    modulus: Modulus,
    consonances: Vec<Residue>,
    mask: u32,
}

impl Dichotomy {
    pub fn new(modulus: Modulus, consonances: &[i64]) -> Result<Self, DichotomyError> {
        let k = modulus.half() as usize;
        let mut mask = 0u32;
        for &value in consonances {
            let r = modulus.residue(value);
            if mask & (1 << r.value()) != 0 {
                return Err(DichotomyError::Duplicate(r.value()));
            }
            mask |= 1 << r.value();
        }
        let got = mask.count_ones() as usize;
        if got != k {
            return Err(DichotomyError::WrongSize {
                modulus: modulus.get(),
                expected: k,
                got,
            });
        }
        let consonances = (0..modulus.get())
            .filter(|&v| mask & (1 << v) != 0)
            .map(|v| modulus.residue(i64::from(v)))
            .collect();
        Ok(Dichotomy {
            modulus,
            consonances,
            mask,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// The consonances `X`, ascending.
    pub fn consonances(&self) -> &[Residue] {
        &self.consonances
    }

    /// The dissonances `Y = Z_2k \ X`, ascending.
    pub fn dissonances(&self) -> Vec<Residue> {
        self.modulus
            .residues()
            .filter(|r| !self.is_consonant(*r))
            .collect()
    }

    pub fn is_consonant(&self, r: Residue) -> bool {
        debug_assert_eq!(r.modulus(), self.modulus);
        self.mask & (1 << r.value()) != 0
    }

    /// Bitmask of `X` over `Z_2k` (bit `i` set iff `i` is consonant).
    pub(crate) fn mask(&self) -> u32 {
        self.mask
    }
}

/// A strong dichotomy: the base split together with its unique polarity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrongDichotomy {
    base: Dichotomy,
    polarity: AffineMap,
}

impl StrongDichotomy {
    /// Certifies strength by the exhaustive polarity scan.
    pub fn from_dichotomy(base: Dichotomy) -> Result<Self, NotStrongError> {
        let polarity = find_polarity(&base)?;
        Ok(StrongDichotomy { base, polarity })
    }

    pub fn new(modulus: u32, consonances: &[i64]) -> Result<Self, DichotomyError> {
        let m = Modulus::new(modulus)?;
        let base = Dichotomy::new(m, consonances)?;
        Ok(StrongDichotomy::from_dichotomy(base)?)
    }

    /// The classical consonance/dissonance split of `Z_12` with polarity
    /// `T^2.5`.
    pub fn classical() -> Self {
        StrongDichotomy::new(12, &[0, 3, 4, 7, 8, 9]).expect("classical dichotomy is strong")
    }

    pub fn base(&self) -> &Dichotomy {
        &self.base
    }

    pub fn polarity(&self) -> AffineMap {
        self.polarity
    }

    pub fn modulus(&self) -> Modulus {
        self.base.modulus()
    }

    pub fn consonances(&self) -> &[Residue] {
        self.base.consonances()
    }

    pub fn is_consonant(&self, r: Residue) -> bool {
        self.base.is_consonant(r)
    }

    pub(crate) fn mask(&self) -> u32 {
        self.base.mask()
    }
}

/// Scans all `2k * phi(2k)` affine maps for involutions with `p(X) = Y`.
#[derive(Clone, Debug)]
pub struct PolarityScan {
    pub qualifying: Vec<AffineMap>,
    pub scanned: usize,
}

pub fn polarity_scan(d: &Dichotomy) -> PolarityScan {
    let m = d.modulus();
    let y_mask = !d.mask() & crate::ring::full_mask(m.get());
    let candidates = AffineMap::all(m);
    let scanned = candidates.len();
    let qualifying = candidates
        .into_iter()
        .filter(|p| {
            let mut image = 0u32;
            for &x in d.consonances() {
                image |= 1 << p.apply(x).expect("same modulus").value();
            }
            image == y_mask && p.is_involution()
        })
        .collect();
    PolarityScan {
        qualifying,
        scanned,
    }
}

/// The unique affine involution exchanging `X` and `Y`, if there is exactly
/// one.
pub fn find_polarity(d: &Dichotomy) -> Result<AffineMap, NotStrongError> {
    let scan = polarity_scan(d);
    match scan.qualifying.as_slice() {
        [] => Err(NotStrongError::NoPolarity),
        [p] => Ok(*p),
        _ => Err(NotStrongError::Multiple(scan.qualifying)),
    }
}

/// All strong dichotomies of `Z_2k`, ordered lexicographically by `X`.
///
/// Up to `2k = 16` this walks every k-subset. Past that, candidate halves
/// are generated as orbit transversals of fixed-point-free affine
/// involutions (a half exchanged by some involution must pick one element
/// from each of its 2-cycles), then certified unique by the full scan.
pub fn enumerate_strong(m: Modulus) -> Vec<StrongDichotomy> {
    let candidates = if m.get() <= 16 {
        subset_halves(m)
    } else {
        involution_transversals(m)
    };

    candidates
        .into_iter()
        .filter_map(|values| {
            let values: Vec<i64> = values.into_iter().map(i64::from).collect();
            let base = Dichotomy::new(m, &values).expect("generated subsets are valid halves");
            StrongDichotomy::from_dichotomy(base).ok()
        })
        .collect()
}

fn subset_halves(m: Modulus) -> BTreeSet<Vec<u32>> {
    (0..m.get())
        .combinations(m.half() as usize)
        .map(|x| x.to_vec())
        .collect()
}

fn involution_transversals(m: Modulus) -> BTreeSet<Vec<u32>> {
    let mut halves = BTreeSet::new();
    for p in AffineMap::all(m) {
        if !p.is_involution() {
            continue;
        }
        // Pair up the orbits; a fixed point means p cannot exchange any
        // dichotomy, so skip.
        let mut pairs = Vec::new();
        let mut seen = 0u32;
        let mut fixed_point = false;
        for x in m.residues() {
            if seen & (1 << x.value()) != 0 {
                continue;
            }
            let px = p.apply(x).expect("same modulus");
            if px == x {
                fixed_point = true;
                break;
            }
            seen |= (1 << x.value()) | (1 << px.value());
            pairs.push((x.value(), px.value()));
        }
        if fixed_point {
            continue;
        }
        for choice in 0..(1u32 << pairs.len()) {
            let mut half: Vec<u32> = pairs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if choice & (1 << i) != 0 { b } else { a })
                .collect();
            half.sort_unstable();
            halves.insert(half);
        }
    }
    halves
}

/// `chi(t, s) = |T^t.s X  intersect  X|`, the intersection-cardinality
/// kernel of the maximization.
pub fn chi(t: Residue, s: Residue, d: &Dichotomy) -> Result<usize, RingError> {
    if !s.is_unit() {
        return Err(RingError::NotAUnit {
            value: s.value(),
            modulus: s.modulus().get(),
        });
    }
    let count = d
        .consonances()
        .iter()
        .filter(|&&x| d.is_consonant(s * x + t))
        .count();
    Ok(count)
}

/// The deformed downbeat-consonance set `gX[e1, e2.z]`: the image under `g`
/// of every 2-interval with consonant downbeat and upbeat `z`, materialized
/// element by element.
///
/// `g` must be canonical (`t1 = 0`). In debug builds the result is checked
/// against the closed-form union of per-cantus fibers
/// `r + e1.(w1.r + sX + s.w2.z + t2)`.
pub fn deformed_set(g: &Projection, z: Residue, d: &StrongDichotomy) -> BTreeSet<FirstInterval> {
    assert!(g.is_canonical(), "deformed_set needs t1 = 0");
    let m = d.modulus();
    let mut set = BTreeSet::new();
    for c in m.residues() {
        for &ell in d.consonances() {
            let xi = TwoInterval::new(c, ell, z).expect("same modulus");
            set.insert(g.apply(xi).expect("same modulus"));
        }
    }
    debug_assert_eq!(set, deformed_set_closed_form(g, z, d));
    set
}

fn deformed_set_closed_form(
    g: &Projection,
    z: Residue,
    d: &StrongDichotomy,
) -> BTreeSet<FirstInterval> {
    let m = d.modulus();
    let mut set = BTreeSet::new();
    for r in m.residues() {
        let shift = g.w1() * r + g.s() * g.w2() * z + g.t2();
        for &ell in d.consonances() {
            let x = g.s() * ell + shift;
            set.insert(FirstInterval::new(r, x).expect("same modulus"));
        }
    }
    set
}

/// First-species deformed set `gX[e1]` for a `w2 = 0` symmetry: the image
/// of every consonant first-species interval.
pub fn deformed_set_first(g: &Projection, d: &StrongDichotomy) -> BTreeSet<FirstInterval> {
    assert!(g.is_canonical(), "deformed_set_first needs t1 = 0");
    debug_assert!(g.w2().is_zero(), "first-species symmetries have w2 = 0");
    let m = d.modulus();
    let mut set = BTreeSet::new();
    for c in m.residues() {
        for &ell in d.consonances() {
            let eta = FirstInterval::new(c, ell).expect("same modulus");
            set.insert(g.apply_first(eta).expect("same modulus"));
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical() -> StrongDichotomy {
        StrongDichotomy::classical()
    }

    #[test]
    fn classical_polarity_is_t2_5() {
        let d = classical();
        let m = d.modulus();
        let expected = AffineMap::new(m.residue(2), m.residue(5)).unwrap();
        assert_eq!(d.polarity(), expected);
        let scan = polarity_scan(d.base());
        assert_eq!(scan.scanned, 48);
        assert_eq!(scan.qualifying, vec![expected]);
    }

    #[test]
    fn contiguous_half_has_two_polarity_candidates() {
        let m = Modulus::new(12).unwrap();
        let d = Dichotomy::new(m, &[0, 1, 2, 3, 4, 5]).unwrap();
        match find_polarity(&d) {
            Err(NotStrongError::Multiple(maps)) => {
                let t6_1 = AffineMap::new(m.residue(6), m.residue(1)).unwrap();
                let t11_11 = AffineMap::new(m.residue(11), m.residue(11)).unwrap();
                assert_eq!(maps.len(), 2);
                assert!(maps.contains(&t6_1));
                assert!(maps.contains(&t11_11));
            }
            other => panic!("expected Multiple, got {other:?}"),
        }
    }

    #[test]
    fn mod_4_half_is_not_strong() {
        let m = Modulus::new(4).unwrap();
        let d = Dichotomy::new(m, &[0, 2]).unwrap();
        match find_polarity(&d) {
            Err(NotStrongError::Multiple(maps)) => {
                let t1_3 = AffineMap::new(m.residue(1), m.residue(3)).unwrap();
                let t3_3 = AffineMap::new(m.residue(3), m.residue(3)).unwrap();
                assert_eq!(maps.len(), 2);
                assert!(maps.contains(&t1_3));
                assert!(maps.contains(&t3_3));
            }
            other => panic!("expected Multiple, got {other:?}"),
        }
        assert_eq!(polarity_scan(&d).scanned, 8);
    }

    #[test]
    fn dichotomy_validates_input() {
        let m = Modulus::new(12).unwrap();
        assert!(matches!(
            Dichotomy::new(m, &[0, 1, 2]),
            Err(DichotomyError::WrongSize { .. })
        ));
        assert!(matches!(
            Dichotomy::new(m, &[0, 12, 1, 2, 3, 4]),
            Err(DichotomyError::Duplicate(0))
        ));
        // Values reduce mod 2k before the size check.
        let d = Dichotomy::new(m, &[12, 15, 4, 7, -4, 9]).unwrap();
        assert_eq!(
            d.consonances()
                .iter()
                .map(|r| r.value())
                .collect::<Vec<_>>(),
            vec![0, 3, 4, 7, 8, 9]
        );
    }

    #[test]
    fn enumerate_strong_12_contains_classical_and_round_trips() {
        let m = Modulus::new(12).unwrap();
        let all = enumerate_strong(m);
        assert!(all.iter().any(|d| d == &classical()));
        for d in &all {
            assert_eq!(find_polarity(d.base()), Ok(d.polarity()));
        }
        // Deterministic lexicographic order on X.
        let keys: Vec<Vec<u32>> = all
            .iter()
            .map(|d| d.consonances().iter().map(|r| r.value()).collect())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn enumerate_strong_10_is_nonempty() {
        let m = Modulus::new(10).unwrap();
        assert!(!enumerate_strong(m).is_empty());
    }

    #[test]
    fn polarities_satisfy_the_involution_relations() {
        // p = T^u.v with p.p = id forces v^2 = 1 and u(1 + v) = 0.
        for modulus in [6u32, 8, 10, 12] {
            let m = Modulus::new(modulus).unwrap();
            for d in enumerate_strong(m) {
                let (u, v) = (d.polarity().translation(), d.polarity().linear());
                assert_eq!((v * v).value(), 1, "{d:?}");
                let one = m.residue(1);
                assert_eq!((u * (one + v)).value(), 0, "{d:?}");
            }
        }
    }

    #[test]
    fn transversal_generator_agrees_with_subset_scan() {
        // Both candidate generators must yield the same strong dichotomies
        // wherever the full-subset walk is still affordable, including one
        // modulus (18) where enumerate_strong itself takes the transversal
        // path.
        let strong_of = |halves: BTreeSet<Vec<u32>>, m: Modulus| -> Vec<Vec<u32>> {
            halves
                .into_iter()
                .filter(|values| {
                    let values: Vec<i64> = values.iter().map(|&v| i64::from(v)).collect();
                    let base = Dichotomy::new(m, &values).unwrap();
                    find_polarity(&base).is_ok()
                })
                .collect()
        };
        for modulus in [6u32, 10, 12, 18] {
            let m = Modulus::new(modulus).unwrap();
            let by_subsets = strong_of(subset_halves(m), m);
            let by_transversals = strong_of(involution_transversals(m), m);
            assert_eq!(by_subsets, by_transversals, "modulus {modulus}");
            let by_enumeration: Vec<Vec<u32>> = enumerate_strong(m)
                .iter()
                .map(|d| d.consonances().iter().map(|r| r.value()).collect())
                .collect();
            assert_eq!(by_enumeration, by_subsets, "modulus {modulus}");
        }
    }

    #[test]
    fn chi_spot_values() {
        let d = classical();
        let m = d.modulus();
        assert_eq!(chi(m.residue(0), m.residue(1), d.base()), Ok(6));
        assert_eq!(chi(m.residue(2), m.residue(5), d.base()), Ok(0));
        // 7X = {0,9,4,1,8,3}; meet with X = {0,3,4,8,9}.
        assert_eq!(chi(m.residue(0), m.residue(7), d.base()), Ok(5));
        assert_eq!(
            chi(m.residue(0), m.residue(4), d.base()),
            Err(RingError::NotAUnit {
                value: 4,
                modulus: 12
            })
        );
    }

    #[test]
    fn chi_row_sums_are_k_squared() {
        let d = classical();
        let m = d.modulus();
        for s in m.units() {
            let total: usize = m.residues().map(|t| chi(t, s, d.base()).unwrap()).sum();
            assert_eq!(total, (m.half() * m.half()) as usize);
        }
    }

    #[test]
    fn deformed_set_identity_is_consonant_space() {
        let d = classical();
        let m = d.modulus();
        let id = Projection::identity(m);
        for z in [0i64, 5] {
            let set = deformed_set(&id, m.residue(z), &d);
            assert_eq!(set.len(), 72);
            for eta in &set {
                assert!(d.is_consonant(eta.interval()));
            }
        }
    }

    #[test]
    fn deformed_set_spot_membership() {
        let d = classical();
        let m = d.modulus();
        let g1 =
            Projection::canonical(m.residue(0), m.residue(7), m.residue(0), m.residue(0)).unwrap();
        let set = deformed_set(&g1, m.residue(0), &d);
        assert!(set.contains(&FirstInterval::from_values(m, 3, 4)));

        let g2 =
            Projection::canonical(m.residue(6), m.residue(1), m.residue(6), m.residue(0)).unwrap();
        let set = deformed_set(&g2, m.residue(6), &d);
        assert!(set.contains(&FirstInterval::from_values(m, 11, 8)));
        assert!(!set.contains(&FirstInterval::from_values(m, 0, 4)));
    }

    #[test]
    fn deformed_set_fiber_sizes_decompose() {
        let d = classical();
        let m = d.modulus();
        let g =
            Projection::canonical(m.residue(6), m.residue(5), m.residue(6), m.residue(3)).unwrap();
        let z = m.residue(4);
        let set = deformed_set(&g, z, &d);
        // Each cantus fiber holds exactly k downbeat values.
        for r in m.residues() {
            let fiber = set.iter().filter(|eta| eta.cantus() == r).count();
            assert_eq!(fiber, m.half() as usize);
        }
        assert_eq!(set.len(), (m.get() * m.half()) as usize);
    }
}
