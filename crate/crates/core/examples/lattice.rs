//! Intersection lattice of the braid arrangement in three variables together
//! with a generic line, and the Möbius dimensions of the log-form algebra.

use aomoto_lab::arrangement::{intersection_lattice, os_dimension, AffineForm, WeightedArrangement};
use aomoto_lab::exactfield::rat;

fn main() {
    let f = |c: i64, g: [i64; 3]| AffineForm::new(rat(c, 1), g.iter().map(|&x| rat(x, 1)).collect());
    let forms = vec![f(0, [1, -1, 0]), f(0, [0, 1, -1]), f(0, [1, 0, -1]), f(-1, [1, 1, 1])];
    let arr = WeightedArrangement::new(3, forms, vec![rat(1, 1); 4], None).unwrap();
    let l = intersection_lattice(&arr);
    for c in 1..=l.top_codim() {
        println!("codim {c}: {} edges", l.count(c));
    }
    let dims: Vec<usize> = (0..=3).map(|p| os_dimension(&l, p)).collect();
    println!("dim A^p = {dims:?}");
}
