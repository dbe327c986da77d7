//! Arrangements and property checks shared by the integration tests.
#![allow(dead_code)]

use aomoto_lab::aomoto::{
    chi_projector, differential_matrix, monomial_action, shapovalov_image, AomotoComplex, AomotoSpace, MonomialVector,
};
use aomoto_lab::arrangement::{color_group, intersection_lattice, os_dimension, AffineForm, WeightedArrangement};
use aomoto_lab::exactfield::{rat, Rational};
use aomoto_lab::linalg::Matrix;
use aomoto_lab::logforms::{eval_monomial_vector, expand_top_form};
use aomoto_lab::svmap::{build_arrangement, RepArrangementInput};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn form(c: i64, g: &[i64]) -> AffineForm {
    AffineForm::new(rat(c, 1), g.iter().map(|&x| rat(x, 1)).collect())
}

pub fn arrangement(dim: usize, forms: &[(i64, &[i64])], weights: &[(i64, i64)]) -> WeightedArrangement {
    WeightedArrangement::new(
        dim,
        forms.iter().map(|(c, g)| form(*c, g)).collect(),
        weights.iter().map(|&(p, q)| rat(p, q)).collect(),
        None,
    )
    .unwrap()
}

pub fn two_points() -> WeightedArrangement {
    arrangement(1, &[(-1, &[1]), (1, &[1])], &[(2, 3), (-5, 7)])
}

/// The discriminantal arrangement of four copies of the standard sl2 module.
pub fn four_point_input(kappa: i64) -> RepArrangementInput {
    RepArrangementInput::sl2(&[1, 1, 1, 1], vec![rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)], rat(kappa, 1))
}

pub fn four_point(kappa: i64) -> WeightedArrangement {
    build_arrangement(&four_point_input(kappa), false).unwrap().arrangement
}

/// Generic lines in the plane, a triple point, a braid arrangement and a few
/// coloured discriminantal arrangements.
pub fn named_arrangements() -> Vec<(&'static str, WeightedArrangement)> {
    vec![
        ("two points", two_points()),
        ("crossing lines", arrangement(2, &[(0, &[1, 0]), (0, &[0, 1])], &[(2, 1), (3, 1)])),
        (
            "triple point",
            arrangement(2, &[(0, &[1, 0]), (0, &[0, 1]), (0, &[1, 1]), (1, &[1, -1])], &[(1, 2), (1, 3), (-1, 5), (2, 1)]),
        ),
        (
            "braid A3 slice",
            arrangement(
                3,
                &[(0, &[1, -1, 0]), (0, &[0, 1, -1]), (0, &[1, 0, -1]), (0, &[1, 0, 0]), (0, &[0, 1, 0]), (0, &[0, 0, 1])],
                &[(1, 1), (2, 1), (3, 1), (-1, 1), (1, 4), (5, 3)],
            ),
        ),
        ("sl2 four points", four_point(3)),
        (
            "sl2 (2,1,1)",
            build_arrangement(&RepArrangementInput::sl2(&[2, 1, 1], vec![rat(0, 1), rat(1, 1), rat(3, 1)], rat(7, 1)), false)
                .unwrap()
                .arrangement,
        ),
    ]
}

/// A random arrangement of `n` distinct hyperplanes with small integer
/// coefficients and nonzero weights.
pub fn random_arrangement(dim: usize, n: usize, seed: u64) -> WeightedArrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let forms: Vec<AffineForm> = (0..n)
            .map(|_| {
                AffineForm::new(
                    rat(rng.gen_range(-3..=3), 1),
                    (0..dim).map(|_| rat(rng.gen_range(-2..=2), 1)).collect(),
                )
            })
            .collect();
        let weights = (0..n).map(|_| rat(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=4))).collect();
        if let Ok(a) = WeightedArrangement::new(dim, forms, weights, None) {
            return a;
        }
    }
}

pub fn check_d_squared(arr: &WeightedArrangement) -> Result<(), String> {
    for p in 0..arr.dimension().saturating_sub(1) {
        let dd = differential_matrix(arr, p).mul(&differential_matrix(arr, p + 1));
        if !dd.is_zero() {
            return Err(format!("d∘d ≠ 0 from degree {p}"));
        }
    }
    Ok(())
}

pub fn check_mobius_rank(arr: &WeightedArrangement) -> Result<(), String> {
    let l = intersection_lattice(arr);
    for p in 0..=arr.dimension() {
        let s = AomotoSpace::<Rational>::new(&l, p);
        let (mu, rank) = (os_dimension(&l, p), s.phi.rank());
        if mu != rank {
            return Err(format!("degree {p}: Möbius {mu} vs pairing rank {rank}"));
        }
    }
    Ok(())
}

pub fn check_phi_annihilates(arr: &WeightedArrangement) -> Result<(), String> {
    let l = intersection_lattice(arr);
    for p in 0..=arr.dimension() {
        let s = AomotoSpace::<Rational>::new(&l, p);
        for set in &s.subsets {
            if !s.flags.annihilates_relations(&s.flags.phi(&l, set)) {
                return Err(format!("φ{set:?} does not vanish on a relation"));
            }
        }
    }
    Ok(())
}

/// The contravariant Gram matrix on flags is `Φᵀ diag(a_I) Φ` and is symmetric.
pub fn check_gram(arr: &WeightedArrangement) -> Result<(), String> {
    let l = intersection_lattice(arr);
    for p in 0..=arr.dimension() {
        let s = AomotoSpace::<Rational>::new(&l, p);
        let gram = s.flags.contravariant_gram(arr, &l);
        if gram != gram.transpose() {
            return Err(format!("degree {p}: Gram matrix not symmetric"));
        }
        let a = Matrix::from_fn(s.subsets.len(), s.subsets.len(), |i, j| {
            if i == j {
                s.subsets[i].iter().fold(Rational::one(), |acc, &h| acc * arr.weight(h))
            } else {
                Rational::zero()
            }
        });
        if s.phi.transpose().mul(&a).mul(&s.phi) != gram {
            return Err(format!("degree {p}: Gram ≠ S-map in φ-dual bases"));
        }
    }
    Ok(())
}

/// `ρ(σ) S ρ(σ)ᵀ = S` on top monomials for every colour-preserving permutation.
pub fn check_s_equivariant(arr: &WeightedArrangement) -> Result<(), String> {
    let l = intersection_lattice(arr);
    let c = AomotoComplex::new(arr, &l);
    let m = c.top_degree();
    let d = c.s_diagonal();
    let s = Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { Rational::zero() });
    for g in color_group(arr).map_err(|e| e.to_string())? {
        let rho = monomial_action(arr, &g, m).map_err(|e| e.to_string())?;
        if rho.mul(&s).mul(&rho.transpose()) != s {
            return Err(format!("S-map not invariant under {:?}", g.as_slice()));
        }
    }
    Ok(())
}

pub fn check_chi_idempotent(arr: &WeightedArrangement) -> Result<(), String> {
    let g = color_group(arr).map_err(|e| e.to_string())?;
    for p in 0..=arr.dimension() {
        let proj = chi_projector(arr, &g, p).map_err(|e| e.to_string())?;
        if proj.mul(&proj) != proj {
            return Err(format!("χ projector not idempotent in degree {p}"));
        }
    }
    Ok(())
}

/// Expands a random combination of top monomials from its values and checks
/// that the result is the same element of `A^M`.
pub fn check_expansion_round_trip(arr: &WeightedArrangement, seed: u64) -> Result<(), String> {
    let l = intersection_lattice(arr);
    let m = arr.dimension();
    let top = AomotoSpace::<Rational>::new(&l, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = MonomialVector::zero(arr.num_forms(), m);
    for c in v.coeffs.iter_mut() {
        *c = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
    }
    let w = expand_top_form(|p| eval_monomial_vector(arr, &v, p), arr, &top, seed).map_err(|e| e.to_string())?;
    let diff: Vec<Rational> = v.coeffs.iter().zip(&w.coeffs).map(|(a, b)| a - b).collect();
    if !top.is_zero_form(&diff) {
        return Err("expansion differs from the original form".into());
    }
    Ok(())
}

/// Image rank and subspace are unchanged when all weights are scaled by `s`.
pub fn check_scale_invariance(arr: &WeightedArrangement, s: &Rational) -> Result<(), String> {
    let l = intersection_lattice(arr);
    let c = AomotoComplex::new(arr, &l);
    let scaled = arr.scaled(s);
    let cs = AomotoComplex::new(&scaled, &l);
    let chi = arr.coloring().is_some();
    let a = shapovalov_image(arr, &c, chi).map_err(|e| e.to_string())?;
    let b = shapovalov_image(&scaled, &cs, chi).map_err(|e| e.to_string())?;
    if a.rank != b.rank {
        return Err(format!("rank {} became {} after scaling by {s}", a.rank, b.rank));
    }
    if !c.top_cohomology().same_span(&a.basis, &b.basis) {
        return Err(format!("image subspace changed after scaling by {s}"));
    }
    Ok(())
}
