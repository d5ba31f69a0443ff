//! Which single one-level improvement moves the index most.
//!
//! `cargo run --example sensitivity`

use ahp_readiness::datasets::{greece_assessment, greece_hierarchy};
use ahp_readiness::scoring::{assess, sensitivity, sensitivity_one_at_a_time};

fn main() {
    let (h, a) = (greece_hierarchy(), greece_assessment());
    let result = assess(&h, &a).unwrap();
    let fast = sensitivity(&result);
    let slow = sensitivity_one_at_a_time(&h, &a).unwrap();
    println!("{:<5} {:>9}    {:<9} {:>8} {:>10}", "id", "from", "to", "delta", "rescored");
    for (f, s) in fast.iter().zip(&slow) {
        println!(
            "{:<5} {:>9} -> {:<9} {:>8.5} {:>10.5}",
            f.criterion_id,
            f.from.to_string(),
            f.to.to_string(),
            f.delta,
            s.delta
        );
    }
}
