//! Builds a job in code and runs it through the same dispatcher as the binary.

use aomoto_lab::cli::{run, sl2_config, Command};
use aomoto_lab::exactfield::rat;

fn main() {
    let mut cfg = sl2_config(&[1, 1, 1, 1], &[rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)], rat(3, 1));
    cfg.levels = vec![1, 2, 5];
    for command in [Command::Lattice, Command::Invariants, Command::Egregium] {
        let report = run(command, &cfg).unwrap();
        println!("{command}: {}", report.result);
    }
}
