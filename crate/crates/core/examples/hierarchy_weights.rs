//! Global weights and ranks for the bundled hierarchy.
//!
//! `cargo run --example hierarchy_weights`

use ahp_readiness::datasets::greece_hierarchy;
use ahp_readiness::hierarchy::{bottom_criteria, compose_global_weights, top_criteria, validate_hierarchy};

fn main() {
    let h = greece_hierarchy();
    let violations = validate_hierarchy(&h);
    println!("{} violations", violations.len());
    for c in &h.categories {
        println!("{:<28} weight {:.3}  tier sum {:.3}", c.name, c.local_weight, c.weight_sum());
    }

    let table = compose_global_weights(&h).expect("valid hierarchy");
    println!("\n{:<5} {:>8} {:>10} {:>5}", "id", "local", "global", "rank");
    for row in &table.rows {
        println!(
            "{:<5} {:>8.3} {:>10.5} {:>5}",
            row.criterion_id, row.local_weight, row.aggregated_weight, row.rank
        );
    }
    println!("\ntop 3:    {:?}", top_criteria(&table, 3));
    println!("bottom 3: {:?}", bottom_criteria(&table, 3));
}
