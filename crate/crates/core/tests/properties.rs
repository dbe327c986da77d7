mod common;

use aomoto_lab::exactfield::{rat, BigComplex};
use aomoto_lab::kz::{curvature_check, KzSystem};
use aomoto_lab::liealg::{RootData, Weight};
use aomoto_lab::logforms::{verify_grundlegend, DiagonalFormSpec};
use common::*;
use proptest::prelude::*;

fn all_coloured(check: impl Fn(&aomoto_lab::arrangement::WeightedArrangement) -> Result<(), String>) {
    let named = named_arrangements();
    let coloured: Vec<_> = named.iter().filter(|(_, a)| a.coloring().is_some()).collect();
    assert!(coloured.len() >= 2);
    for (name, a) in coloured {
        if let Err(e) = check(a) {
            panic!("{name}: {e}");
        }
    }
}

fn all_named(check: impl Fn(&aomoto_lab::arrangement::WeightedArrangement) -> Result<(), String>) {
    for (name, a) in named_arrangements() {
        if let Err(e) = check(&a) {
            panic!("{name}: {e}");
        }
    }
}

#[test]
fn d_squared_vanishes_on_named() {
    all_named(check_d_squared);
}

#[test]
fn mobius_equals_pairing_rank_on_named() {
    all_named(check_mobius_rank);
}

#[test]
fn phi_annihilates_relations_on_named() {
    all_named(check_phi_annihilates);
}

#[test]
fn gram_is_the_s_map_on_named() {
    all_named(check_gram);
}

#[test]
fn s_map_is_equivariant_on_named() {
    all_coloured(check_s_equivariant);
}

#[test]
fn chi_projectors_are_idempotent_on_named() {
    all_coloured(check_chi_idempotent);
}

#[test]
fn expansion_round_trips_on_named() {
    for (i, (name, a)) in named_arrangements().into_iter().enumerate() {
        if let Err(e) = check_expansion_round_trip(&a, 11 + i as u64) {
            panic!("{name}: {e}");
        }
    }
}

#[test]
fn image_is_scale_invariant() {
    for a in [four_point(3), four_point(7), two_points()] {
        for s in [rat(2, 1), rat(-5, 1), rat(3, 11)] {
            check_scale_invariance(&a, &s).unwrap();
        }
    }
}

#[test]
fn log_form_identity_on_random_three_dimensional_arrangement() {
    let a = random_arrangement(3, 6, 2024);
    let fs = DiagonalFormSpec::coordinates(3, vec![]).functions;
    for k in 1..=3 {
        let r = verify_grundlegend(&a, &fs, k, 5, 100 + k as u64).unwrap();
        assert!(r.holds, "k = {k}: {:?}", r.witness);
    }
}

#[test]
fn kz_curvature_vanishes_for_three_points() {
    let rd = RootData::sl2();
    let ws = vec![Weight::from_labels(&[1]), Weight::from_labels(&[2]), Weight::from_labels(&[1])];
    let z = [0.0, 1.0, 3.0].iter().map(|&x| BigComplex::from_f64(x, 0.0, 256)).collect();
    let sys = KzSystem::new(&rd, &ws, z, rat(5, 2)).unwrap();
    assert!(curvature_check(&sys, 2, 5, 3).unwrap() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), dim in 1usize..=3, extra in 0usize..=2) {
        let a = random_arrangement(dim, dim + 1 + extra, seed);
        prop_assert!(check_d_squared(&a).is_ok());
    }

    #[test]
    fn mobius_equals_pairing_rank(seed in any::<u64>(), dim in 1usize..=3, extra in 0usize..=2) {
        let a = random_arrangement(dim, dim + 1 + extra, seed);
        let r = check_mobius_rank(&a);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn phi_annihilates_relations(seed in any::<u64>(), dim in 2usize..=3, extra in 0usize..=2) {
        let a = random_arrangement(dim, dim + 1 + extra, seed);
        prop_assert!(check_phi_annihilates(&a).is_ok());
    }

    #[test]
    fn gram_is_the_s_map(seed in any::<u64>(), dim in 1usize..=3, extra in 0usize..=2) {
        let a = random_arrangement(dim, dim + 1 + extra, seed);
        let r = check_gram(&a);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn expansion_round_trips(seed in any::<u64>(), dim in 1usize..=2, extra in 0usize..=2) {
        let a = random_arrangement(dim, dim + 1 + extra, seed);
        let r = check_expansion_round_trip(&a, seed);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn log_form_identity_on_random_planes(seed in any::<u64>(), k in 1usize..=2) {
        let a = random_arrangement(2, 4, seed);
        let fs = DiagonalFormSpec::coordinates(2, vec![]).functions;
        let r = verify_grundlegend(&a, &fs, k, 3, seed).unwrap();
        prop_assert!(r.holds);
    }
}
