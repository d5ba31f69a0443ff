//! Scores the bundled Greece assessment and prints the per-category tables.
//!
//! `cargo run --example greece_readiness`

use ahp_readiness::datasets::{greece_assessment, greece_hierarchy};
use ahp_readiness::report::fmt_fixed;
use ahp_readiness::scoring::assess;

fn main() {
    let result = assess(&greece_hierarchy(), &greece_assessment()).expect("bundled data is valid");
    for cat in &result.categories {
        println!("{} ({}%)", cat.name, fmt_fixed(cat.achievement * 100.0, 1));
        for c in &cat.criteria {
            match c.score {
                Some(s) => println!(
                    "  {:<4} {}  {}  {}",
                    c.criterion_id,
                    fmt_fixed(c.normalized_weight, 3),
                    fmt_fixed(s, 2),
                    fmt_fixed(c.weighted_score, 5)
                ),
                None => println!("  {:<4} excluded: {}", c.criterion_id, c.reason.as_deref().unwrap_or("")),
            }
        }
    }
    println!("overall readiness {}%", fmt_fixed(result.overall_index * 100.0, 1));
}
