//! Aomoto complex of three lines through a point plus a fourth line, for a
//! resonant and a generic choice of weights.

use aomoto_lab::aomoto::AomotoComplex;
use aomoto_lab::arrangement::{intersection_lattice, AffineForm, WeightedArrangement};
use aomoto_lab::exactfield::rat;

fn main() {
    let f = |c: i64, a: i64, b: i64| AffineForm::new(rat(c, 1), vec![rat(a, 1), rat(b, 1)]);
    let forms = vec![f(0, 1, 0), f(0, 0, 1), f(0, 1, 1), f(-1, 1, -1)];
    for (label, w) in [("generic", [rat(1, 2), rat(1, 3), rat(1, 5), rat(2, 7)]), ("resonant", [rat(1, 1), rat(1, 1), rat(-2, 1), rat(0, 1)])] {
        let arr = WeightedArrangement::new(2, forms.clone(), w.to_vec(), None).unwrap();
        let c = AomotoComplex::new(&arr, &intersection_lattice(&arr));
        let a: Vec<usize> = (0..=2).map(|p| c.dim_a(p)).collect();
        let h: Vec<usize> = (0..=2).map(|p| c.dim_h(p)).collect();
        println!("{label}: dim A = {a:?}, dim H = {h:?}");
    }
}
