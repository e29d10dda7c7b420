//! Differential tests: the fast engine against its brute-force twins.
//! Full-universe sweeps live in the acceptance suite; these cover the
//! classical dichotomy's interesting cells, one complete foreign modulus,
//! and randomized cells across dichotomies.

use proptest::prelude::*;

use counterpoint_core::dichotomy::{enumerate_strong, StrongDichotomy};
use counterpoint_core::oracle::{
    first_species_oracle, projections_oracle, shifted_frame_successors, Oracle,
};
use counterpoint_core::projection::{
    first_species_symmetries, second_species_projections, second_species_successors,
};
use counterpoint_core::ring::{Modulus, TwoInterval};

#[test]
fn classical_gradus_cells_match_oracle() {
    let d = StrongDichotomy::classical();
    let m = d.modulus();
    let slow = Oracle::new(&d);
    // The cells exercised by the published exercise, plus the all-zero cell
    // where the successor union is largest.
    for (y, z) in [
        (7, 0),
        (4, 6),
        (8, 3),
        (4, 5),
        (9, 4),
        (3, 5),
        (7, 9),
        (0, 0),
    ] {
        let y = m.residue(y);
        let z = m.residue(z);
        let fast = second_species_projections(y, z, &d).unwrap();
        let reference = slow.projections(y, z).unwrap();
        assert_eq!(fast, reference, "cell (y={y}, z={z})");
    }
}

#[test]
fn first_species_matches_oracle_on_classical() {
    let d = StrongDichotomy::classical();
    for &y in d.consonances() {
        let fast = first_species_symmetries(y, &d).unwrap();
        let reference = first_species_oracle(y, &d).unwrap();
        assert_eq!(fast, reference, "first species at y={y}");
    }
}

#[test]
fn one_foreign_modulus_matches_oracle_completely() {
    // The lexicographically first strong dichotomy of Z_10, all 50 cells.
    let m = Modulus::new(10).unwrap();
    let d = enumerate_strong(m)
        .into_iter()
        .next()
        .expect("Z_10 has strong dichotomies");
    let slow = Oracle::new(&d);
    for &y in d.consonances() {
        for z in m.residues() {
            let fast = second_species_projections(y, z, &d).unwrap();
            let reference = slow.projections(y, z).unwrap();
            assert_eq!(fast, reference, "cell (y={y}, z={z})");
        }
    }
}

#[test]
fn shifted_frames_reproduce_translated_successors() {
    // Run the full-generality search (free cantus translation, shifted
    // polarity frame) at a handful of nonzero canti and compare with the
    // engine's translate-from-zero construction.
    let d = StrongDichotomy::classical();
    let m = d.modulus();
    for (c, x, y) in [(1, 7, 0), (5, 4, 6), (9, 0, 11)] {
        let xi = TwoInterval::from_values(m, c, x, y);
        let via_engine = second_species_successors(xi, &d).unwrap();
        let (frame_max, via_frame) =
            shifted_frame_successors(xi.cantus(), xi.downbeat(), xi.upbeat(), &d).unwrap();
        assert_eq!(via_frame, via_engine, "xi = {xi}");
        let cell = second_species_projections(xi.downbeat(), xi.upbeat(), &d).unwrap();
        assert_eq!(frame_max, cell.max_score(), "xi = {xi}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Random cells across the strong dichotomies of Z_6..Z_12 agree with
    /// the one-shot oracle.
    #[test]
    fn random_cells_match_oracle(
        modulus in prop::sample::select(vec![6u32, 8, 10, 12]),
        pick in 0usize..1000,
        y_index in 0usize..16,
        z_raw in 0i64..32,
    ) {
        let m = Modulus::new(modulus).unwrap();
        let all = enumerate_strong(m);
        prop_assume!(!all.is_empty());
        let d = &all[pick % all.len()];
        let y = d.consonances()[y_index % d.consonances().len()];
        let z = m.residue(z_raw);
        let fast = second_species_projections(y, z, d).unwrap();
        let reference = projections_oracle(y, z, d).unwrap();
        prop_assert_eq!(fast, reference);
    }
}
