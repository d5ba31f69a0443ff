//! Priorities and consistency for one judgment matrix, by both methods.
//!
//! `cargo run --example pairwise_priorities`

use ahp_readiness::pairwise::{
    derive_priorities, most_inconsistent_triads, Judgment, Method, PairwiseMatrix, Scale,
};

fn show(label: &str, m: &PairwiseMatrix) {
    println!("== {label}");
    for method in [Method::Evm, Method::Rgmm] {
        let p = derive_priorities(m, method).expect("converges");
        let w: Vec<String> = p.weights.iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "{method:>4}: w = [{}]  lambda_max {:.4}  CR {:.4}  {}",
            w.join(", "),
            p.lambda_max,
            p.cr,
            if p.is_consistent() { "pass" } else { "FAIL" }
        );
    }
    for t in most_inconsistent_triads(m, 3) {
        println!(
            "  triad ({}, {}, {}): score {:.3}, implied {:.3} vs entered {:.3}",
            m.items()[t.i], m.items()[t.j], m.items()[t.l], t.score, t.implied, t.entered
        );
    }
}

fn main() {
    let items: Vec<String> = ["cost", "safety", "comfort"].map(String::from).to_vec();
    let near = PairwiseMatrix::build(
        items.clone(),
        &[Judgment::new(0, 1, 2.0), Judgment::new(0, 2, 5.0), Judgment::new(1, 2, 3.0)],
        Scale::Saaty,
    )
    .unwrap();
    show("near-consistent", &near);

    // a beats b, b beats c, c beats a
    let cyclic = PairwiseMatrix::build(
        items,
        &[Judgment::new(0, 1, 9.0), Judgment::new(0, 2, 1.0 / 9.0), Judgment::new(1, 2, 9.0)],
        Scale::Saaty,
    )
    .unwrap();
    show("cyclic", &cyclic);
}
