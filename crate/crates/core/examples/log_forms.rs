//! Checks the logarithmic-form identity on a random arrangement of six planes
//! in three-space, and shows it failing when one weight is perturbed.

use aomoto_lab::arrangement::{AffineForm, WeightedArrangement};
use aomoto_lab::exactfield::rat;
use aomoto_lab::logforms::{verify_grundlegend, verify_grundlegend_pair, DiagonalFormSpec};

fn main() {
    let f = |c: i64, g: [i64; 3]| AffineForm::new(rat(c, 1), g.iter().map(|&x| rat(x, 1)).collect());
    let forms = vec![f(0, [1, 0, 0]), f(0, [0, 1, 0]), f(0, [0, 0, 1]), f(-1, [1, 1, 0]), f(2, [0, 1, -1]), f(-3, [1, 2, 1])];
    let weights = vec![rat(1, 2), rat(-1, 3), rat(2, 1), rat(3, 5), rat(-7, 4), rat(1, 1)];
    let arr = WeightedArrangement::new(3, forms, weights.clone(), None).unwrap();
    let fs = DiagonalFormSpec::coordinates(3, vec![]).functions;
    for k in 1..=3 {
        let r = verify_grundlegend(&arr, &fs, k, 5, k as u64).unwrap();
        println!("k = {k}: holds {} on {} index sets × {} points", r.holds, r.index_sets_checked, r.points_checked);
    }
    let mut w = weights;
    w[2] += rat(1, 10);
    let wrong = arr.with_weights(w).unwrap();
    let r = verify_grundlegend_pair(&wrong, &arr, &fs, 2, 5, 0).unwrap();
    println!("perturbed weight: holds {}", r.holds);
}
