//! Casimir operators of the four-point sl2 system on the coinvariant space and
//! the KZ connection matrices at a rational configuration.

use aomoto_lab::exactfield::{rat, DEFAULT_PRECISION};
use aomoto_lab::kz::{kz_rhs_exact, KzSystem};

fn main() {
    let sys = KzSystem::four_point(rat(3, 1), DEFAULT_PRECISION).unwrap();
    for ((j, k), m) in sys.omegas() {
        println!("Ω_{}{} = {:?}", j + 1, k + 1, m.rows_vec().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    }
    let z = [rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)];
    for j in 0..4 {
        let a = kz_rhs_exact(&sys, &z, j).unwrap();
        println!("∂_{} u = {:?} u", j + 1, a.rows_vec().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    }
}
