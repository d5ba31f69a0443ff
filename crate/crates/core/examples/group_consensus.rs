//! Aggregating several panelists and measuring how much they agree.
//!
//! `cargo run --example group_consensus`

use ahp_readiness::group::{aggregate_matrices, consensus_indicator, equal_weights, ParticipantJudgments};
use ahp_readiness::pairwise::{derive_priorities_evm, PairwiseMatrix};

fn main() {
    let items: Vec<String> = ["A", "B", "C"].map(String::from).to_vec();
    let panel = [
        ("P1", vec![0.6, 0.3, 0.1]),
        ("P2", vec![0.5, 0.3, 0.2]),
        ("P3", vec![0.2, 0.3, 0.5]),
    ];
    let weights = equal_weights(panel.len());
    let sets: Vec<ParticipantJudgments> = panel
        .iter()
        .zip(&weights)
        .map(|((id, w), &pw)| ParticipantJudgments::new(*id, PairwiseMatrix::from_weights(items.clone(), w).unwrap(), pw))
        .collect();

    let group = aggregate_matrices(&sets).unwrap();
    let p = derive_priorities_evm(&group).unwrap();
    println!("group priorities {:.4?}  CR {:.4}", p.weights, p.cr);

    let vectors: Vec<Vec<f64>> = panel.iter().map(|(_, w)| w.clone()).collect();
    let c = consensus_indicator(&vectors, &weights).unwrap();
    println!(
        "consensus {:.1}% ({}): alpha {:.4} gamma {:.4} beta {:.4}",
        c.s_star * 100.0,
        c.interpretation.label(),
        c.alpha_entropy,
        c.gamma_entropy,
        c.beta_entropy
    );

    let opposed = consensus_indicator(&[[0.9, 0.1], [0.1, 0.9]], &[0.5, 0.5]).unwrap();
    println!("two opposed panelists: {:.3}", opposed.s_star);
    let solo = consensus_indicator(&[[0.7, 0.3]], &[1.0]).unwrap();
    println!("one panelist: {} ({})", solo.s_star, solo.notice.unwrap_or_default());
}
