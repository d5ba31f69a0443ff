//! Golden values and random generators shared by the integration tests.
#![allow(dead_code)]

use ahp_readiness::hierarchy::{Category, CriteriaHierarchy, Criterion};
use ahp_readiness::scoring::{Assessment, AssessmentEntry, Characterization};
use rand::Rng;

/// Reference aggregated weight (3 decimals) and rank per criterion.
pub const REFERENCE_WEIGHTS: [(&str, f64, usize); 27] = [
    ("PL1", 0.024, 18),
    ("PL2", 0.013, 24),
    ("PL3", 0.022, 20),
    ("PL4", 0.046, 9),
    ("PL5", 0.047, 8),
    ("PL6", 0.054, 5),
    ("PL7", 0.031, 14),
    ("TI1", 0.056, 4),
    ("TI2", 0.075, 3),
    ("TI3", 0.035, 13),
    ("TI4", 0.122, 1),
    ("TI5", 0.082, 2),
    ("TI6", 0.037, 11),
    ("I1", 0.017, 21),
    ("I2", 0.026, 17),
    ("I3", 0.015, 23),
    ("I4", 0.009, 27),
    ("I5", 0.040, 10),
    ("I6", 0.026, 16),
    ("I7", 0.012, 25),
    ("I8", 0.010, 26),
    ("CA1", 0.024, 19),
    ("CA2", 0.016, 22),
    ("CA3", 0.050, 6),
    ("CA4", 0.049, 7),
    ("CA5", 0.027, 15),
    ("CA6", 0.036, 12),
];

/// Reference weighted scores (5 decimals) of the Greece assessment.
pub const REFERENCE_WEIGHTED_SCORES: [(&str, f64); 23] = [
    ("PL1", 0.00693),
    ("PL2", 0.00373),
    ("PL3", 0.00625),
    ("PL4", 0.03951),
    ("PL5", 0.01344),
    ("PL6", 0.03096),
    ("TI1", 0.0),
    ("TI2", 0.01877),
    ("TI3", 0.00887),
    ("TI4", 0.0),
    ("TI5", 0.02060),
    ("TI6", 0.0),
    ("I1", 0.00614),
    ("I2", 0.01892),
    ("I3", 0.01605),
    ("I4", 0.01031),
    ("I5", 0.02872),
    ("CA1", 0.01186),
    ("CA2", 0.00407),
    ("CA3", 0.03724),
    ("CA4", 0.02442),
    ("CA5", 0.00663),
    ("CA6", 0.00899),
];

/// Reference category achievements and the overall index.
pub const REFERENCE_ACHIEVEMENTS: [(&str, f64); 4] = [("PL", 0.4272), ("TI", 0.1183), ("I", 0.5171), ("CA", 0.4637)];
pub const REFERENCE_OVERALL: f64 = 0.3224;

pub fn random_simplex(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}

/// Weights whose pairwise ratios stay inside [1/9, 9].
pub fn random_scale_weights(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..9.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}

pub fn random_hierarchy(rng: &mut impl Rng) -> CriteriaHierarchy {
    let k = rng.random_range(2..=5);
    let cat_w = random_simplex(rng, k);
    let categories = (0..k)
        .map(|c| {
            let id = String::from(char::from(b'A' + c as u8));
            let m = rng.random_range(2..=8);
            let w = random_simplex(rng, m);
            Category {
                id: id.clone(),
                name: format!("Category {id}"),
                local_weight: cat_w[c],
                criteria: (0..m)
                    .map(|i| Criterion {
                        id: format!("{id}{}", i + 1),
                        name: format!("criterion {id}{}", i + 1),
                        local_weight: w[i],
                        justification_source: String::new(),
                    })
                    .collect(),
            }
        })
        .collect();
    CriteriaHierarchy {
        name: "random".into(),
        version: String::new(),
        notes: String::new(),
        categories,
    }
}

/// Random levels; with `exclude`, a random proper subset of each category is excluded.
pub fn random_assessment(rng: &mut impl Rng, h: &CriteriaHierarchy, exclude: bool) -> Assessment {
    let mut entries = Vec::new();
    for cat in &h.categories {
        let keep = rng.random_range(0..cat.criteria.len());
        for (i, c) in cat.criteria.iter().enumerate() {
            if exclude && i != keep && rng.random_bool(0.3) {
                entries.push(AssessmentEntry::excluded(c.id.clone(), "no data"));
            } else {
                let level = Characterization::ALL[rng.random_range(0..5)];
                entries.push(AssessmentEntry::scored(c.id.clone(), level));
            }
        }
    }
    Assessment {
        subject: "random".into(),
        entries,
    }
}

pub fn items(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}
