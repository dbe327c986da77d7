//! Compares the span of Schechtman–Varchenko forms of invariants with the
//! Shapovalov image for four copies of the sl2 standard representation.

use aomoto_lab::exactfield::rat;
use aomoto_lab::svmap::{egregium_check, RepArrangementInput};

fn main() {
    let z = vec![rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)];
    for kappa in [3, 7] {
        let input = RepArrangementInput::sl2(&[1, 1, 1, 1], z.clone(), rat(kappa, 1));
        let report = egregium_check(&input, 17).expect("egregium check");
        println!("kappa = {kappa}: {}", serde_json::to_string(&report).unwrap());
    }
}
