//! Shapovalov image in top cohomology for the sl2 four-point arrangement,
//! with and without the antisymmetrisation over variables of equal colour.

use aomoto_lab::aomoto::{shapovalov_image, AomotoComplex};
use aomoto_lab::arrangement::intersection_lattice;
use aomoto_lab::exactfield::{format_rational, rat};
use aomoto_lab::svmap::{build_arrangement, RepArrangementInput};

fn main() {
    let input = RepArrangementInput::sl2(&[1, 1, 1, 1], vec![rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)], rat(3, 1));
    let arr = build_arrangement(&input, false).unwrap().arrangement;
    let c = AomotoComplex::new(&arr, &intersection_lattice(&arr));
    println!("dim H^2 = {}", c.dim_h(2));
    for chi in [false, true] {
        let img = shapovalov_image(&arr, &c, chi).unwrap();
        println!("chi = {chi}: rank {}", img.rank);
        for v in &img.basis {
            let s: Vec<String> = v.iter().map(format_rational).collect();
            println!("  [{}]", s.join(", "));
        }
    }
}
