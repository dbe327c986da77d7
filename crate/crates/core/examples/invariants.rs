//! Invariant and conformal block dimensions for tensor powers of sl2 modules.

use aomoto_lab::exactfield::rat;
use aomoto_lab::liealg::{conformal_block_dim, invariants_dim, RootData, Weight};

fn main() {
    let rd = RootData::sl2();
    for labels in [vec![1, 1, 1, 1], vec![1, 1, 2], vec![2, 2, 2], vec![1; 6]] {
        let ws: Vec<Weight> = labels.iter().map(|&m| Weight::from_labels(&[m])).collect();
        let z: Vec<_> = (0..ws.len() as i64).map(|i| rat(i, 1)).collect();
        // levels below a highest weight are rejected
        let blocks: Vec<String> = (1..=4)
            .map(|l| conformal_block_dim(&rd, &ws, l, &z).map_or("-".to_string(), |d| d.to_string()))
            .collect();
        println!("{labels:?}: invariants {}, conformal blocks at levels 1..4: {}", invariants_dim(&rd, &ws).unwrap(), blocks.join(" "));
    }
}
