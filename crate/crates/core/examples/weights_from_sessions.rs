//! Builds one consistent five-person session per node from the bundled
//! weights, runs aggregate -> prioritize -> compose, and compares the result.
//!
//! `cargo run --example weights_from_sessions -- [DIR]` also writes the
//! session files, ready for `ahp-readiness weights --sessions DIR/*.json`.

use ahp_readiness::datasets::greece_hierarchy;
use ahp_readiness::hierarchy::compose_global_weights;
use ahp_readiness::pairwise::Method;
use ahp_readiness::sessions::{derive_hierarchy_weights, synthetic_sessions, WeightOptions};

fn main() -> std::io::Result<()> {
    let h = greece_hierarchy();
    let sessions = synthetic_sessions(&h, 5).expect("weights are positive");
    if let Some(dir) = std::env::args().nth(1) {
        std::fs::create_dir_all(&dir)?;
        for s in &sessions {
            let path = std::path::Path::new(&dir).join(format!("{}.json", s.node));
            std::fs::write(&path, s.to_json())?;
            println!("wrote {}", path.display());
        }
    }

    let derived = derive_hierarchy_weights(
        &sessions,
        WeightOptions {
            method: Method::Evm,
            allow_inconsistent: false,
            template: Some(&h),
        },
    )
    .expect("consistent sessions pass the gate");
    let direct = compose_global_weights(&h).unwrap();
    println!("{:<5} {:>10} {:>10} {:>5}", "id", "derived", "direct", "rank");
    for row in &derived.table.rows {
        let p = direct.get(&row.criterion_id).unwrap();
        println!(
            "{:<5} {:>10.6} {:>10.6} {:>5}",
            row.criterion_id, row.aggregated_weight, p.aggregated_weight, row.rank
        );
    }
    Ok(())
}
