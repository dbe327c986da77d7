//! One line per acceptance criterion, each with its runtime budget.

mod common;

use std::time::{Duration, Instant};

use aomoto_lab::exactfield::{rat, BigComplex, Rational, DEFAULT_PRECISION};
use aomoto_lab::kz::{
    conformal_kernel, curvature_check, flat_section_residual, generator_reports, hyp2f1, monodromy_report,
    sample_configuration, KzSystem, LoopGeometry, ProductSection, TransportOptions,
};
use aomoto_lab::linalg::Matrix;
use aomoto_lab::liealg::{conformal_block_dim, RootData, Weight};
use aomoto_lab::logforms::{verify_grundlegend, verify_grundlegend_pair, DiagonalFormSpec};
use aomoto_lab::svmap::egregium_check;
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    for kappa in [3, 7] {
        let r = egregium_check(&four_point_input(kappa), 1).map_err(|e| e.to_string())?;
        ensure(r.invariants_dim == 2, format!("κ={kappa}: invariants_dim {}", r.invariants_dim))?;
        ensure(r.sv_rank == 2, format!("κ={kappa}: sv rank {}", r.sv_rank))?;
        ensure(r.image_rank == 2, format!("κ={kappa}: image rank {}", r.image_rank))?;
        ensure(r.subspaces_equal, format!("κ={kappa}: subspaces differ"))?;
        parts.push(format!("κ={kappa}: dims 2/2/2, equal"));
    }
    Ok(parts.join("; "))
}

fn criterion_2() -> Outcome {
    let a = four_point(3);
    for s in [rat(2, 1), rat(-5, 1)] {
        check_scale_invariance(&a, &s)?;
    }
    Ok("image rank and subspace unchanged under ×2 and ×−5".into())
}

fn criterion_3() -> Outcome {
    let cases = [("M=1 two points", two_points()), ("M=2 sl2 four points", four_point(3)), ("M=3 random six planes", random_arrangement(3, 6, 2024))];
    let mut checked = 0;
    for (name, a) in &cases {
        let m = a.dimension();
        let fs = DiagonalFormSpec::coordinates(m, vec![]).functions;
        for k in 1..=m {
            let r = verify_grundlegend(a, &fs, k, 5, 40 + k as u64).map_err(|e| e.to_string())?;
            ensure(r.holds && r.points_checked == 5, format!("{name}, k={k}: fails at {:?}", r.witness))?;
            checked += r.index_sets_checked;
        }
    }
    let a = four_point(3);
    let mut w = a.weights().to_vec();
    w[0] += rat(1, 3);
    let wrong = a.with_weights(w).map_err(|e| e.to_string())?;
    let fs = DiagonalFormSpec::coordinates(2, vec![]).functions;
    let control = verify_grundlegend_pair(&wrong, &a, &fs, 1, 5, 9).map_err(|e| e.to_string())?;
    ensure(!control.holds, "perturbed-weight control was not detected")?;
    Ok(format!("3 arrangements, {checked} index sets × 5 points; control fails as required"))
}

fn criterion_4() -> Outcome {
    let rd = RootData::sl2();
    let ws = vec![Weight::from_labels(&[1]); 4];
    let z = [rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)];
    let dims: Vec<usize> = [1, 2, 5]
        .iter()
        .map(|&l| conformal_block_dim(&rd, &ws, l, &z))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(dims == [1, 2, 2], format!("dims {dims:?}"))?;
    Ok("levels 1, 2, 5 give 1, 2, 2".into())
}

fn criterion_5() -> Outcome {
    let sys = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).map_err(|e| e.to_string())?;
    let m = |r: [[(i64, i64); 2]; 2]| Matrix::from_rows(r.iter().map(|row| row.iter().map(|&(p, q)| rat(p, q)).collect()).collect());
    let a = [[(1, 2), (-1, 1)], [(0, 1), (-3, 2)]];
    let b = [[(-3, 2), (0, 1)], [(-1, 1), (1, 2)]];
    let c = [[(-1, 2), (1, 1)], [(1, 1), (-1, 2)]];
    let want: [((usize, usize), Matrix<Rational>); 6] =
        [((0, 1), m(a)), ((0, 2), m(b)), ((0, 3), m(c)), ((1, 2), m(c)), ((1, 3), m(b)), ((2, 3), m(a))];
    for ((j, k), w) in &want {
        ensure(sys.omega(*j, *k) == w, format!("Ω_{}{} = {:?}", j + 1, k + 1, sys.omega(*j, *k)))?;
    }
    Ok("all six Ω_jk match entrywise".into())
}

fn criterion_6() -> Outcome {
    let sys = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut phi, mut fv, mut wrong) = (0f64, 0f64, f64::INFINITY);
    for _ in 0..5 {
        let z = sample_configuration(&mut rng, 0.1, DEFAULT_PRECISION);
        let r = |s: &ProductSection, q: &[Vec<BigComplex>]| flat_section_residual(&sys, s, &z, q).map_err(|e| e.to_string());
        phi = phi.max(r(&ProductSection::phi_tilde(rat(-1, 6)), &[])?);
        wrong = wrong.min(r(&ProductSection::phi_tilde(rat(-1, 5)), &[])?);
        let ker = conformal_kernel(&sys, &z, 1).map_err(|e| e.to_string())?;
        fv = fv.max(r(&ProductSection::f_v(), &ker)?);
    }
    ensure(phi < 1e-10, format!("Φ̃ residual {phi:e}"))?;
    ensure(fv < 1e-10, format!("f[v] residual {fv:e}"))?;
    ensure(wrong > 1e-3, format!("wrong-exponent residual {wrong:e}"))?;
    Ok(format!("Φ̃ {phi:.1e}, f[v] {fv:.1e}, exponent −1/5 control {wrong:.2e}"))
}

fn criterion_7() -> Outcome {
    let base = BigComplex::from_f64(-0.5, 0.0, DEFAULT_PRECISION);
    let opts = TransportOptions::default();
    let geom = LoopGeometry::default();
    let sys3 = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).map_err(|e| e.to_string())?;
    let r = monodromy_report(&sys3, 1, 3, &base, &opts, &geom).map_err(|e| e.to_string())?;
    ensure(r.unipotence_residual < 1e-6, format!("eigenvalues {:?}", r.eigenvalues))?;
    ensure(r.distance_from_identity > 1e-3, format!("‖M−I‖ = {:e}", r.distance_from_identity))?;
    ensure(r.a21_abs > 1e-3, format!("|a21| = {:e}", r.a21_abs))?;
    let f = hyp2f1(&rat(1, 3), &rat(-1, 3), &rat(1, 3), &BigComplex::from_f64(2.0, 0.0, DEFAULT_PRECISION), DEFAULT_PRECISION)
        .map_err(|e| e.to_string())?
        .abs_f64();
    ensure(f > 0.01, format!("|2F1| = {f:e}"))?;
    let sys4 = sys3.with_kappa(rat(4, 1)).map_err(|e| e.to_string())?;
    let gens = generator_reports(&sys4, &base, &opts, &geom).map_err(|e| e.to_string())?;
    let worst = gens.iter().map(|g| g.eigenvector_condition).fold(0.0, f64::max);
    ensure(worst < 1e3, format!("κ=4 eigenvector condition {worst:e}"))?;
    Ok(format!(
        "κ=3: eigenvalue residual {:.1e}, ‖M−I‖ {:.3}, |a21| {:.4}; |2F1| {f:.4}; κ=4 max condition {worst:.2}",
        r.unipotence_residual, r.distance_from_identity, r.a21_abs
    ))
}

fn criterion_8() -> Outcome {
    let mut arrs: Vec<(String, _)> = named_arrangements().into_iter().map(|(n, a)| (n.to_string(), a)).collect();
    for (i, (dim, n)) in [(2, 4), (2, 5), (3, 5), (3, 6)].into_iter().enumerate() {
        arrs.push((format!("random {dim}d/{n}"), random_arrangement(dim, n, 500 + i as u64)));
    }
    for (i, (name, a)) in arrs.iter().enumerate() {
        let checks: [(&str, Result<(), String>); 5] = [
            ("d∘d", check_d_squared(a)),
            ("Möbius", check_mobius_rank(a)),
            ("φ", check_phi_annihilates(a)),
            ("Gram", check_gram(a)),
            ("expansion", check_expansion_round_trip(a, 70 + i as u64)),
        ];
        for (what, r) in checks {
            r.map_err(|e| format!("{name} {what}: {e}"))?;
        }
        if a.coloring().is_some() {
            check_s_equivariant(a).map_err(|e| format!("{name} S-map: {e}"))?;
            check_chi_idempotent(a).map_err(|e| format!("{name} χ: {e}"))?;
        }
    }
    let sys = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).map_err(|e| e.to_string())?;
    let curv = curvature_check(&sys, 3, 5, 8).map_err(|e| e.to_string())?;
    ensure(curv < 1e-9, format!("curvature {curv:e}"))?;
    Ok(format!("{} arrangements; KZ curvature {curv:.1e}", arrs.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, u64); 8] = [
        (1, "invariants, sv rank and χ-image coincide", criterion_1, 10),
        (2, "image is invariant under weight scaling", criterion_2, 5),
        (3, "logarithmic-form identity for every k", criterion_3, 30),
        (4, "conformal block dimensions", criterion_4, 5),
        (5, "Casimir matrices", criterion_5, 1),
        (6, "flat sections", criterion_6, 30),
        (7, "Pochhammer monodromy", criterion_7, 120),
        (8, "property suites", criterion_8, 180),
    ];
    let mut failed = Vec::new();
    for (n, title, f, budget) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("criterion {n} {status}: {title}: {detail} ({:.2} s, budget {budget} s)", took.as_secs_f64());
        if status == "FAIL" {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 8 criteria pass");
}
