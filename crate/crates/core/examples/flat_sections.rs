//! Residuals of the explicit flat sections of the four-point KZ system at
//! random complex configurations.

use aomoto_lab::exactfield::{rat, DEFAULT_PRECISION};
use aomoto_lab::kz::{conformal_kernel, flat_section_residual, sample_configuration, KzSystem, ProductSection};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let sys = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..3 {
        let z = sample_configuration(&mut rng, 0.1, DEFAULT_PRECISION);
        let ker = conformal_kernel(&sys, &z, 1).unwrap();
        let phi = flat_section_residual(&sys, &ProductSection::phi_tilde(rat(-1, 6)), &z, &[]).unwrap();
        let fv = flat_section_residual(&sys, &ProductSection::f_v(), &z, &ker).unwrap();
        let off = flat_section_residual(&sys, &ProductSection::phi_tilde(rat(-1, 5)), &z, &[]).unwrap();
        println!("Φ̃ {phi:.2e}   f[v] mod kernel {fv:.2e}   exponent −1/5 {off:.2e}");
    }
}
