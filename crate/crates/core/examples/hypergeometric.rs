//! Gauss hypergeometric function by a Pochhammer contour integral, compared
//! with its power series inside the unit disc.

use aomoto_lab::exactfield::{rat, BigComplex};
use aomoto_lab::kz::{hyp2f1, hyp2f1_series, pair};

fn main() {
    let prec = 192;
    let (a, b, c) = (rat(1, 3), rat(-1, 3), rat(1, 3));
    for u in [0.0, 0.5, -0.75] {
        let u = BigComplex::from_f64(u, 0.0, prec);
        let x = hyp2f1(&a, &b, &c, &u, prec).unwrap();
        let y = hyp2f1_series(&a, &b, &c, &u, prec).unwrap();
        println!("u = {:?}: contour {:?}, series {:?}", pair(&u), pair(&x), pair(&y));
    }
    let v = hyp2f1(&a, &b, &c, &BigComplex::from_f64(2.0, 0.0, prec), prec).unwrap();
    println!("2F1(1/3, -1/3; 1/3; 2) = {:?}, |.| = {}", pair(&v), v.abs_f64());
}
