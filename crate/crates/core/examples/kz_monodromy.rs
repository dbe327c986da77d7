//! Pochhammer monodromy of the four-point KZ system at κ = 3 and generator
//! monodromies at κ = 4.

use aomoto_lab::exactfield::{rat, BigComplex, DEFAULT_PRECISION};
use aomoto_lab::kz::{generator_reports, monodromy_report, KzSystem, LoopGeometry, TransportOptions};

fn main() {
    let base = BigComplex::from_f64(-0.5, 0.0, DEFAULT_PRECISION);
    let opts = TransportOptions::default();
    let geom = LoopGeometry::default();
    let sys = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).unwrap();
    let r = monodromy_report(&sys, 1, 3, &base, &opts, &geom).unwrap();
    println!("κ = 3, loop around z2, z4");
    println!("  eigenvalues {:?}", r.eigenvalues);
    println!("  adapted matrix {:?}", r.adapted_matrix);
    println!("  |a21| = {}", r.a21_abs);
    let sys4 = sys.with_kappa(rat(4, 1)).unwrap();
    for g in generator_reports(&sys4, &base, &opts, &geom).unwrap() {
        println!("κ = 4, loop around z{}: eigenvalues {:?}, condition {:.3}", g.point, g.eigenvalues, g.eigenvector_condition);
    }
}
