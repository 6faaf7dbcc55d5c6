//! Property suites for the cone layer: split identities, the cone contour,
//! norm bounds, minimality–orthogonality equivalences, and the witness
//! theorem, on seeded random cones with the brute-force oracle cross-checks.

mod common;

use common::{oracle_contains, oracle_one_norm, oracle_witness_exists};
use mcone_core::cone::{Decomposition, McNorm};
use mcone_core::instances::{
    classical_cone, random_cone, sample_members, sample_vectors, square_base_cone,
};
use mcone_core::rational::{int, rat, Rational};
use mcone_core::RVector;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn p2() -> McNorm {
    McNorm::p(int(2)).unwrap()
}

fn default_precision() -> Rational {
    McNorm::default_precision()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn charge_split_identity(seed in 0u64..4096) {
        let n = 2 + (seed % 3) as usize;
        let cone = random_cone(n, n + (seed % 3) as usize, seed).unwrap();
        for z in sample_vectors(&cone, 3, seed ^ 0x11) {
            let split = cone.charge_split(&z).unwrap();
            prop_assert_eq!(&split.plus - &split.minus, cone.charge_of(&z));
            prop_assert!(!split.plus.is_negative());
            prop_assert!(!split.minus.is_negative());
        }
    }

    /// The joint program and the two separate splits agree exactly.
    #[test]
    fn joint_and_split_agree(seed in 0u64..4096) {
        let n = 2 + (seed % 3) as usize;
        let cone = random_cone(n, n + (seed % 4) as usize, seed).unwrap();
        for z in sample_vectors(&cone, 3, seed ^ 0x22) {
            let split = cone.charge_split(&z).unwrap();
            let d = cone.minimal_decomposition(&z).unwrap();
            prop_assert_eq!(&d.difference(), &z);
            prop_assert!(cone.contains(&d.plus).unwrap());
            prop_assert!(cone.contains(&d.minus).unwrap());
            prop_assert_eq!(cone.charge_of(&d.plus), split.plus.clone());
            prop_assert_eq!(cone.charge_of(&d.minus), split.minus.clone());
        }
    }

    /// `z ∈ V⁺  ⇔  ‖z‖₁ = e(z)`, with membership cross-checked by brute
    /// force.
    #[test]
    fn norm_marks_the_cone_contour(seed in 0u64..4096) {
        let n = 2 + (seed % 2) as usize;
        let cone = random_cone(n, n + (seed % 3) as usize, seed).unwrap();
        for z in sample_vectors(&cone, 3, seed ^ 0x33) {
            let inside = cone.contains(&z).unwrap();
            prop_assert_eq!(inside, oracle_contains(&cone, &z));
            let norm = cone.one_norm(&z).unwrap();
            prop_assert_eq!(&norm, &oracle_one_norm(&cone, &z));
            prop_assert_eq!(inside, norm == cone.charge_of(&z));
        }
    }

    /// `|e(z)| ≤ 𝒫(e₊, e₋) ≤ ‖z‖₁` for every norm in the family.
    #[test]
    fn norm_sandwich(seed in 0u64..4096) {
        let n = 2 + (seed % 3) as usize;
        let cone = random_cone(n, n + (seed % 3) as usize, seed).unwrap();
        let precision = default_precision();
        for z in sample_vectors(&cone, 2, seed ^ 0x44) {
            let lower = {
                let e = cone.charge_of(&z);
                if e.is_negative() { -e } else { e }
            };
            let upper = cone.one_norm(&z).unwrap();
            for norm in [McNorm::One, McNorm::Max, p2()] {
                let iv = cone.mc_norm(&z, &norm, &precision).unwrap();
                prop_assert!(
                    iv.intersects(&lower, &upper),
                    "{norm:?} violates the sandwich: {iv} vs [{lower}, {upper}]"
                );
            }
            // the additive combiner reproduces the base norm exactly
            let one = cone.mc_norm(&z, &McNorm::One, &precision).unwrap();
            prop_assert!(one.is_point());
            prop_assert_eq!(one.lo, upper);
        }
    }

    /// A decomposition attains the split iff difference and carrier have the
    /// same base norm; inflating both parts breaks it strictly.
    #[test]
    fn minimality_is_the_norm_equality(seed in 0u64..4096) {
        let n = 2 + (seed % 3) as usize;
        let cone = random_cone(n, n + (seed % 3) as usize, seed).unwrap();
        let z = &sample_vectors(&cone, 1, seed ^ 0x55)[0];
        let d = cone.minimal_decomposition(z).unwrap();
        prop_assert!(cone.is_minimal(&d, z).unwrap());
        let diff_norm = cone.one_norm(&d.difference()).unwrap();
        let carrier_norm = cone.one_norm(&d.carrier()).unwrap();
        prop_assert_eq!(&diff_norm, &carrier_norm);

        // inflate by a nonzero cone element
        let t = &sample_members(&cone, 1, seed ^ 0x56)[0];
        let inflated = Decomposition::new(d.plus.add(t), d.minus.add(t));
        prop_assert!(!cone.is_minimal(&inflated, z).unwrap());
        let inflated_carrier = cone.one_norm(&inflated.carrier()).unwrap();
        prop_assert!(diff_norm < inflated_carrier);
        // the gap is exactly twice the charge of the inflation
        prop_assert_eq!(
            inflated_carrier - carrier_norm,
            int(2) * cone.charge_of(t)
        );
    }

    /// Orthogonality of cone pairs is exactly witness existence, and both
    /// match the active-set oracle.
    #[test]
    fn orthogonality_iff_witness(seed in 0u64..4096) {
        let n = 2 + (seed % 3) as usize;
        let cone = random_cone(n, n + (seed % 4) as usize, seed).unwrap();
        let members = sample_members(&cone, 4, seed ^ 0x66);
        for pair in members.windows(2) {
            let (x, y) = (&pair[0], &pair[1]);
            let orthogonal = cone.are_orthogonal(x, y).unwrap();
            let witness = cone.disjointness_witness(x, y).unwrap();
            prop_assert_eq!(orthogonal, witness.is_some());
            prop_assert_eq!(orthogonal, oracle_witness_exists(&cone, x, y));
            if let Some(w) = witness {
                prop_assert_eq!(w.value(x), cone.charge_of(x));
                prop_assert!(w.value(y).is_zero());
            }
        }
        // generators against themselves are never orthogonal
        let g = &cone.generators()[0];
        prop_assert!(!cone.are_orthogonal(g, g).unwrap());
    }

    /// Lattice cones have a unique vertex decomposition.
    #[test]
    fn classical_decompositions_are_unique(seed in 0u64..4096) {
        let n = 2 + (seed % 4) as usize;
        let cone = classical_cone(n);
        let z = &sample_vectors(&cone, 1, seed)[0];
        let (plus, minus) = common::componentwise_parts(z);
        let d = cone.minimal_decomposition(z).unwrap();
        prop_assert_eq!(&d.plus, &plus);
        prop_assert_eq!(&d.minus, &minus);
        let set = cone.all_minimal_decompositions(z, 4).unwrap();
        prop_assert_eq!(set.decompositions.len(), 1);
        prop_assert!(!set.non_unique);
    }

    /// Strict positivity: the charge vanishes on no nonzero cone member.
    #[test]
    fn charge_is_strictly_positive(seed in 0u64..4096) {
        let n = 2 + (seed % 3) as usize;
        let cone = random_cone(n, n + (seed % 3) as usize, seed).unwrap();
        for m in sample_members(&cone, 4, seed ^ 0x77) {
            prop_assert!(!m.is_zero());
            prop_assert!(cone.charge_of(&m).is_positive());
        }
        prop_assert!(cone.charge_of(&RVector::zero(n)).is_zero());
    }

    /// For p-norms with p > 1 and the max norm, linearly independent
    /// normalized cone pairs never satisfy the orthogonality equality: the
    /// distance stays strictly below 2.
    #[test]
    fn only_the_base_norm_admits_orthogonality(seed in 0u64..4096) {
        let n = 2 + (seed % 3) as usize;
        let cone = random_cone(n, n + (seed % 3) as usize, seed).unwrap();
        let members = sample_members(&cone, 4, seed ^ 0x88);
        for pair in members.windows(2) {
            let x0 = mcone_core::instances::to_base(&cone, &pair[0]).unwrap();
            let y0 = mcone_core::instances::to_base(&cone, &pair[1]).unwrap();
            if x0 == y0 {
                continue;
            }
            let diff = x0.sub(&y0);
            let split = cone.charge_split(&diff).unwrap();
            // independence in the relevant sense: neither part vanishes
            if split.plus.is_zero() || split.minus.is_zero() {
                continue;
            }
            // exact refutations: max(a,b) < 2 and a² + b² < 2²
            prop_assert!(split.plus.clone().max(split.minus.clone()) < int(2));
            prop_assert!(
                &split.plus * &split.plus + &split.minus * &split.minus < int(4)
            );
            // interval route agrees once refined enough
            let mut precision = default_precision();
            let mut refuted = false;
            for _ in 0..6 {
                let iv = cone.mc_norm(&diff, &p2(), &precision).unwrap();
                if iv.definitely_lt(&int(2)) {
                    refuted = true;
                    break;
                }
                precision /= int(1024);
            }
            prop_assert!(refuted);
        }
    }
}

/// The defining distance identity for orthogonal pairs on a rational grid:
/// `‖αx₀ − βy₀‖₁ = α + β = ‖αx₀ + βy₀‖₁` for `α, β ∈ {0, 1/8, …, 2}`.
#[test]
fn orthogonal_pairs_satisfy_the_grid_identity() {
    let square = square_base_cone();
    let orthant = classical_cone(2);
    let cases: Vec<(_, RVector, RVector)> = vec![
        (
            &square,
            RVector::from_ints(&[1, 0, 1]),
            RVector::from_ints(&[-1, 0, 1]),
        ),
        (
            &square,
            RVector::from_ints(&[1, 1, 1]),
            RVector::from_ints(&[-1, 1, 1]),
        ),
        (
            &square,
            RVector::from_ints(&[1, -1, 1]),
            RVector::from_ints(&[-1, -1, 1]),
        ),
        (
            &orthant,
            RVector::from_ints(&[2, 0]),
            RVector::from_ints(&[0, 3]),
        ),
    ];
    for (cone, x, y) in cases {
        assert!(cone.are_orthogonal(&x, &y).unwrap());
        let x0 = x.scale(&cone.one_norm(&x).unwrap().recip());
        let y0 = y.scale(&cone.one_norm(&y).unwrap().recip());
        for i in 0..=16i64 {
            for j in 0..=16i64 {
                let alpha = rat(i, 8);
                let beta = rat(j, 8);
                let expected = &alpha + &beta;
                let minus = x0.scale(&alpha).sub(&y0.scale(&beta));
                let plus = x0.scale(&alpha).add(&y0.scale(&beta));
                assert_eq!(cone.one_norm(&minus).unwrap(), expected);
                assert_eq!(cone.one_norm(&plus).unwrap(), expected);
            }
        }
    }
}

/// Larger cones keep every identity exact: splits, contour, joint
/// agreement, and witness symmetry at dimensions where the tableaus carry
/// hundreds of rationals.
#[test]
fn larger_cones_stay_exact() {
    for seed in 0..6u64 {
        let n = 6 + (seed % 3) as usize; // 6..=8
        let k = n + 3;
        let cone = random_cone(n, k, seed).unwrap();
        for z in sample_vectors(&cone, 2, seed ^ 0xdead) {
            let split = cone.charge_split(&z).unwrap();
            assert_eq!(&split.plus - &split.minus, cone.charge_of(&z));
            let d = cone.minimal_decomposition(&z).unwrap();
            assert_eq!(d.difference(), z);
            assert_eq!(cone.charge_of(&d.plus), split.plus);
            assert_eq!(cone.charge_of(&d.minus), split.minus);
            let inside = cone.contains(&z).unwrap();
            assert_eq!(inside, split.one_norm() == cone.charge_of(&z));
        }
        let members = sample_members(&cone, 2, seed ^ 0xbead);
        let orthogonal = cone.are_orthogonal(&members[0], &members[1]).unwrap();
        let witness = cone.disjointness_witness(&members[0], &members[1]).unwrap();
        assert_eq!(orthogonal, witness.is_some());
    }
}

/// The distance behind the non-orthogonality of (1,1) and (0,1): the
/// normalized difference has base norm 1, strictly below the maximal 2.
#[test]
fn overlapping_orthant_pair_distance_is_one() {
    let cone = classical_cone(2);
    let x0 = RVector::new(vec![rat(1, 2), rat(1, 2)]); // (1,1) normalized
    let y0 = RVector::from_ints(&[0, 1]);
    let diff = x0.sub(&y0);
    assert_eq!(oracle_one_norm(&cone, &diff), int(1));
    assert_eq!(cone.one_norm(&diff).unwrap(), int(1));
    assert!(!cone
        .are_orthogonal(&RVector::from_ints(&[1, 1]), &y0)
        .unwrap());
}

/// Dimension mismatches are input errors, not panics.
#[test]
fn dimension_mismatch_is_an_input_error() {
    let cone = classical_cone(2);
    let wrong = RVector::from_ints(&[1, 2, 3]);
    assert!(matches!(
        cone.contains(&wrong),
        Err(mcone_core::Error::DimensionMismatch { .. })
    ));
    assert!(matches!(
        cone.charge_split(&wrong),
        Err(mcone_core::Error::DimensionMismatch { .. })
    ));
}

/// The zero vector is disjoint from everything: a witness always exists.
#[test]
fn zero_vector_always_has_a_witness() {
    let cone = classical_cone(2);
    let zero = RVector::zero(2);
    let y = RVector::from_ints(&[1, 1]);
    assert!(cone.disjointness_witness(&zero, &y).unwrap().is_some());
    assert!(cone.disjointness_witness(&y, &zero).unwrap().is_some());
    assert!(oracle_witness_exists(&cone, &zero, &y));
}

/// Membership in the square cone rejects the first axis, matching the
/// brute-force solve over the four rays.
#[test]
fn square_cone_membership_cross_checked() {
    let cone = square_base_cone();
    let z = RVector::from_ints(&[1, 0, 0]);
    assert!(!oracle_contains(&cone, &z));
    assert!(!cone.contains(&z).unwrap());
    let member = RVector::from_ints(&[0, 0, 2]);
    assert!(oracle_contains(&cone, &member));
    assert!(cone.contains(&member).unwrap());
}

/// `(1, α, 1) ⊥ (−1, α, 1)` across the whole family parameter range, and the
/// witness agrees; at |α| > 1 the vectors leave the cone entirely.
#[test]
fn square_family_orthogonality_across_parameters() {
    let cone = square_base_cone();
    for numer in [-2i64, -1, 0, 1, 2] {
        let alpha = rat(numer, 2);
        let x = RVector::new(vec![int(1), alpha.clone(), int(1)]);
        let y = RVector::new(vec![int(-1), alpha.clone(), int(1)]);
        assert!(cone.are_orthogonal(&x, &y).unwrap());
        assert!(cone.disjointness_witness(&x, &y).unwrap().is_some());
    }
    let outside = RVector::from_ints(&[1, 2, 1]);
    assert!(!cone.contains(&outside).unwrap());
    assert!(matches!(
        cone.are_orthogonal(&outside, &RVector::from_ints(&[-1, 0, 1])),
        Err(mcone_core::Error::NotInCone)
    ));
}
