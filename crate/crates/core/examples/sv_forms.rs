//! Schechtman–Varchenko forms of the sl2 invariants of three points with
//! weights (2, 1, 1), expanded in logarithmic monomials.

use aomoto_lab::aomoto::{subsets, AomotoComplex};
use aomoto_lab::arrangement::intersection_lattice;
use aomoto_lab::exactfield::{format_rational, rat};
use aomoto_lab::liealg::TensorSpace;
use aomoto_lab::svmap::{build_arrangement, omega_sv, restrict_to_zero_weight, RepArrangementInput};
use num_traits::Zero;

fn main() {
    let input = RepArrangementInput::sl2(&[2, 1, 1], vec![rat(0, 1), rat(1, 1), rat(3, 1)], rat(7, 1));
    let sv = build_arrangement(&input, false).unwrap();
    let arr = &sv.arrangement;
    let c = AomotoComplex::new(arr, &intersection_lattice(arr));
    let sets = subsets(arr.num_forms(), c.top_degree());
    for f in arr.forms() {
        let g: Vec<String> = f.gradient.iter().map(format_rational).collect();
        println!("hyperplane {} + ({})·t", format_rational(&f.constant), g.join(", "));
    }
    let space = TensorSpace::new(&[2, 1, 1]);
    for psi in space.invariant_functionals() {
        let v = omega_sv(&input, &sv, &c, &restrict_to_zero_weight(&space, &psi), 5).unwrap();
        let terms: Vec<String> = sets.iter().zip(&v.coeffs).filter(|(_, x)| !x.is_zero()).map(|(s, x)| format!("{x}·e{s:?}")).collect();
        println!("Ω = {}", terms.join(" + "));
    }
}
