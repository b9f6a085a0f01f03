use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use qring::catalog;
use qring::ideals::{self, PowerConvention};
use qring::zlattice::{hnf, quotient_shape, zvec, IntLattice};
use qring::{Exec, FiniteRack};

#[test]
fn containment_chain_over_catalog() {
    for q in catalog::quandles() {
        let powers = ideals::augmentation_powers(&q, 6, PowerConvention::Full, Exec::default());
        for w in powers.windows(2) {
            assert!(w[1].is_subset_of(&w[0]).unwrap(), "{}", q.label());
        }
    }
}

#[test]
fn powers_are_two_sided_over_catalog() {
    let mut not_ideal = Vec::new();
    for q in catalog::quandles() {
        let powers = ideals::augmentation_powers(&q, 4, PowerConvention::Full, Exec::default());
        for (k, p) in powers.iter().enumerate() {
            if !ideals::is_two_sided(&q, p) {
                not_ideal.push(format!("{} k={}", q.label(), k + 1));
            }
        }
    }
    assert!(not_ideal.is_empty(), "{not_ideal:?}");
}

#[test]
fn r3_is_residually_but_not_nilpotent() {
    let r3 = FiniteRack::dihedral(3).unwrap();
    let g = ideals::graded_series(&r3, 8, Exec::default()).unwrap();
    for k in 1..=8 {
        assert!(!g.power(k).is_zero());
        assert_eq!(g.shape(k).order(), Some(BigInt::from(3)), "k={k}");
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for key in ["R6", "R9", "conjS3", "tetra"] {
        let q = catalog::lookup(key).unwrap();
        let a = ideals::augmentation_powers(&q, 4, PowerConvention::Full, Exec::Sequential);
        let b = ideals::augmentation_powers(&q, 4, PowerConvention::Full, Exec::Parallel);
        assert_eq!(a, b, "{key}");
    }
}

#[test]
fn conventions_agree_on_even_dihedrals() {
    for n in [6, 8] {
        let r = FiniteRack::dihedral(n).unwrap();
        assert_eq!(
            ideals::augmentation_powers(&r, 5, PowerConvention::Full, Exec::default()),
            ideals::augmentation_powers(&r, 5, PowerConvention::Sides, Exec::default())
        );
    }
}

#[test]
fn symmetrization_defect_in_square() {
    for q in catalog::quandles() {
        let q = Arc::new(q);
        let d2 = ideals::ideal_power(&q, 2, Exec::default()).unwrap();
        for x in 0..q.size() {
            for y in 0..q.size() {
                let d = qring::ring::symmetrization_defect(&q, x, y).unwrap();
                assert!(d2.contains_elt(&d).unwrap());
            }
        }
    }
}

#[test]
fn graded_shapes_multiply_to_index() {
    let r5 = FiniteRack::dihedral(5).unwrap();
    let g = ideals::graded_series(&r5, 3, Exec::default()).unwrap();
    let total = quotient_shape(g.power(4), g.power(1)).unwrap();
    let product: BigInt = g.shapes.iter().map(|s| s.order().unwrap()).product();
    assert_eq!(total.order().unwrap(), product);
}

fn dihedral_or_trivial() -> impl Strategy<Value = FiniteRack> {
    prop_oneof![
        (3usize..=7).prop_map(|n| FiniteRack::dihedral(n).unwrap()),
        (1usize..=4).prop_map(|n| FiniteRack::trivial(n).unwrap())
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closures_partition_into_subquandles(q in dihedral_or_trivial(), seed in prop::collection::vec(-3i64..=3, 7)) {
        let q = Arc::new(q);
        let n = q.size();
        let ideal = ideals::two_sided_closure(&q, &[zvec(&seed[..n])]).unwrap();
        prop_assert!(ideals::is_two_sided(&q, ideal.lattice()));
        let blocks = ideals::partition_from_ideal(&ideal).unwrap();
        let mut seen = vec![false; n];
        for b in &blocks {
            prop_assert!(q.is_closed(b));
            for &x in b {
                prop_assert!(!seen[x]);
                seen[x] = true;
            }
            for &x in b {
                for &y in b {
                    prop_assert!(ideal.contains(&ideal.difference(x, y)).unwrap());
                }
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        if q.is_involutary() {
            prop_assert!(ideals::orbit_iso_check(&ideal).unwrap().holds());
        }
    }

    #[test]
    fn relative_ideal_of_trivial_rack_is_delta_of_subset(n in 1usize..=5, mask in 1u32..32) {
        let t = Arc::new(FiniteRack::trivial(n).unwrap());
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!subset.is_empty());
        let rel = ideals::relative_ideal(&t, &subset).unwrap();
        let gens: Vec<_> = subset[1..].iter().map(|&y| {
            let mut v = vec![0i64; n];
            v[y] = 1;
            v[subset[0]] = -1;
            zvec(&v)
        }).collect();
        prop_assert_eq!(rel.lattice(), &hnf(&gens, n).unwrap());
    }

    #[test]
    fn mod_closure_contains_scaled_basis(m in 2u64..=6, n in 2usize..=4) {
        let q = Arc::new(FiniteRack::dihedral(n).unwrap());
        let i = ideals::two_sided_closure_mod(&q, &[], m).unwrap();
        prop_assert_eq!(i.lattice(), &IntLattice::full(n).scaled(&BigInt::from(m)));
    }
}
