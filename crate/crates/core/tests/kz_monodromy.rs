use aomoto_lab::exactfield::{rat, BigComplex, DEFAULT_PRECISION};
use aomoto_lab::kz::{
    eigenvalues, generator_reports, monodromy_report, pochhammer_monodromy, transport, ContourPath, KzSystem,
    LoopGeometry, TransportOptions,
};

fn base() -> BigComplex {
    BigComplex::from_f64(-0.5, 0.0, DEFAULT_PRECISION)
}

#[test]
fn pochhammer_at_kappa_three_is_unipotent_and_nontrivial() {
    let sys = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).unwrap();
    let r = monodromy_report(&sys, 1, 3, &base(), &TransportOptions::default(), &LoopGeometry::default()).unwrap();
    assert!(r.unipotence_residual < 1e-6, "{}", r.unipotence_residual);
    assert!(r.distance_from_identity > 1e-3);
    assert!(r.a21_abs > 1e-3);
    assert!(r.det_residual < 1e-20);
    assert_eq!(r.loop_points, [2, 4]);
    // the class of v is fixed: the first column of the adapted matrix is (1, a21)
    let first = &r.adapted_matrix[0][0];
    assert!((first[0] - 1.0).abs() < 1e-12 && first[1].abs() < 1e-12);
}

#[test]
fn generators_at_kappa_four_are_diagonalizable() {
    let sys = KzSystem::four_point(rat(4, 1), DEFAULT_PRECISION).unwrap();
    let reports = generator_reports(&sys, &base(), &TransportOptions::default(), &LoopGeometry::default()).unwrap();
    assert_eq!(reports.len(), 3);
    for g in reports {
        assert!(g.eigenvector_condition < 1e3, "point {}: {}", g.point, g.eigenvector_condition);
    }
}

#[test]
fn pochhammer_at_kappa_four_is_scalar() {
    let sys = KzSystem::four_point(rat(4, 1), DEFAULT_PRECISION).unwrap();
    let m = pochhammer_monodromy(&sys, 1, 3, &base(), &TransportOptions::default(), &LoopGeometry::default()).unwrap();
    let ev = eigenvalues(&m).unwrap();
    let minus_one = BigComplex::from_f64(-1.0, 0.0, DEFAULT_PRECISION);
    for l in ev {
        assert!((l - minus_one.clone()).abs_f64() < 1e-12);
    }
}

#[test]
fn large_kappa_gives_nearly_trivial_monodromy() {
    let sys = KzSystem::four_point(rat(1_000_000, 1), DEFAULT_PRECISION).unwrap();
    let opts = TransportOptions { tol: 1e-16, ..Default::default() };
    let m = pochhammer_monodromy(&sys, 1, 3, &base(), &opts, &LoopGeometry::default()).unwrap();
    assert!(m.distance_from_identity() < 1e-6);
    assert!((m.det() - BigComplex::one(DEFAULT_PRECISION)).abs_f64() < 1e-14);
}

#[test]
fn other_pairs_have_unit_determinant() {
    let sys = KzSystem::four_point(rat(7, 1), DEFAULT_PRECISION).unwrap();
    let opts = TransportOptions { tol: 1e-16, ..Default::default() };
    let m = pochhammer_monodromy(&sys, 1, 2, &base(), &opts, &LoopGeometry::default()).unwrap();
    assert!((m.det() - BigComplex::one(DEFAULT_PRECISION)).abs_f64() < 1e-12);
}

#[test]
fn contractible_loop_is_trivial() {
    let sys = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).unwrap();
    let opts = TransportOptions { tol: 1e-20, ..Default::default() };
    let centre = BigComplex::from_f64(0.25, 0.6, DEFAULT_PRECISION);
    let path = ContourPath::circle(0, &centre, 0.3, 12, 0.0);
    let m = transport(&sys, &path, &opts).unwrap();
    assert!(m.distance_from_identity() < 10.0 * opts.tol);
}
