//! Combining several participants' judgments and measuring how much they agree.
//!
//! Judgments are aggregated entry by entry with a weighted geometric mean,
//! which keeps the result reciprocal and inside the judgment scale.
//!
//! Consensus follows the Shannon alpha/beta/gamma diversity partition of the
//! participants' priority vectors:
//!
//! ```text
//! alpha = sum_k w_k H(p_k)              (mean within-participant entropy)
//! gamma = H(sum_k w_k p_k)              (entropy of the pooled vector)
//! beta  = gamma - alpha                 (>= 0 by concavity of H)
//! S*    = (exp(-beta) - 1/B) / (1 - 1/B),  B = min(K, n)
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pairwise::{pair_count, PairwiseMatrix};

/// Consensus at or above this level is acceptable.
pub const CONSENSUS_ACCEPTABLE: f64 = 0.75;
/// Consensus below this level is low.
pub const CONSENSUS_MODERATE: f64 = 0.65;

const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("no participants")]
    Empty,
    #[error("participant {participant} compares {found:?}, expected {expected:?}")]
    ItemMismatch {
        participant: String,
        expected: Vec<String>,
        found: Vec<String>,
    },
    #[error("participant weights must be positive and sum to 1 (sum = {0})")]
    BadWeights(f64),
    #[error("priority vector {index} has length {found}, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("priority vector {0} has a non-positive component")]
    NonPositive(usize),
    #[error("expected {expected} participant weights, got {found}")]
    WeightCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticipantJudgments {
    pub participant_id: String,
    pub matrix: PairwiseMatrix,
    pub participant_weight: f64,
}

impl ParticipantJudgments {
    pub fn new(participant_id: impl Into<String>, matrix: PairwiseMatrix, participant_weight: f64) -> Self {
        Self {
            participant_id: participant_id.into(),
            matrix,
            participant_weight,
        }
    }
}

pub fn equal_weights(k: usize) -> Vec<f64> {
    vec![1.0 / k as f64; k]
}

/// Rescales positive relative weights so they sum to 1.
pub fn normalize_weights(weights: &[f64]) -> Result<Vec<f64>, GroupError> {
    let sum: f64 = weights.iter().sum();
    if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) || !sum.is_finite() {
        return Err(GroupError::BadWeights(sum));
    }
    Ok(weights.iter().map(|w| w / sum).collect())
}

fn check_weights(weights: &[f64]) -> Result<(), GroupError> {
    let sum: f64 = weights.iter().sum();
    if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) || (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(GroupError::BadWeights(sum));
    }
    Ok(())
}

/// Weighted geometric mean of the participants' judgments, entry by entry.
pub fn aggregate_matrices(sets: &[ParticipantJudgments]) -> Result<PairwiseMatrix, GroupError> {
    let first = sets.first().ok_or(GroupError::Empty)?;
    let items = first.matrix.items();
    for p in sets {
        if p.matrix.items() != items {
            return Err(GroupError::ItemMismatch {
                participant: p.participant_id.clone(),
                expected: items.to_vec(),
                found: p.matrix.items().to_vec(),
            });
        }
    }
    let weights: Vec<f64> = sets.iter().map(|p| p.participant_weight).collect();
    check_weights(&weights)?;
    if sets.len() == 1 {
        return Ok(first.matrix.clone());
    }

    let n = items.len();
    let mut log_upper = vec![0.0; pair_count(n)];
    for p in sets {
        for (acc, j) in log_upper.iter_mut().zip(p.matrix.judgments()) {
            *acc += p.participant_weight * j.value.ln();
        }
    }
    let upper = log_upper
        .into_iter()
        .map(|l| l.exp().clamp(1.0 / 9.0, 9.0))
        .collect();
    Ok(PairwiseMatrix::from_upper_unchecked(items.to_vec(), upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConsensusLevel {
    Low,
    Moderate,
    Acceptable,
}

impl ConsensusLevel {
    pub fn of(s_star: f64) -> Self {
        if s_star >= CONSENSUS_ACCEPTABLE {
            ConsensusLevel::Acceptable
        } else if s_star >= CONSENSUS_MODERATE {
            ConsensusLevel::Moderate
        } else {
            ConsensusLevel::Low
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ConsensusLevel::Low => "low",
            ConsensusLevel::Moderate => "moderate",
            ConsensusLevel::Acceptable => "acceptable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsensusReport {
    pub s_star: f64,
    pub alpha_entropy: f64,
    pub gamma_entropy: f64,
    pub beta_entropy: f64,
    pub interpretation: ConsensusLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

impl ConsensusReport {
    pub fn is_acceptable(&self) -> bool {
        self.interpretation == ConsensusLevel::Acceptable
    }
}

pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>()
}

pub fn consensus_indicator<V: AsRef<[f64]>>(
    priorities: &[V],
    participant_weights: &[f64],
) -> Result<ConsensusReport, GroupError> {
    let k = priorities.len();
    if k == 0 {
        return Err(GroupError::Empty);
    }
    if participant_weights.len() != k {
        return Err(GroupError::WeightCount {
            expected: k,
            found: participant_weights.len(),
        });
    }
    check_weights(participant_weights)?;
    let n = priorities[0].as_ref().len();
    for (idx, p) in priorities.iter().enumerate() {
        let p = p.as_ref();
        if p.len() != n {
            return Err(GroupError::LengthMismatch {
                index: idx,
                expected: n,
                found: p.len(),
            });
        }
        if p.iter().any(|&x| !(x > 0.0)) {
            return Err(GroupError::NonPositive(idx));
        }
    }

    if k < 2 {
        let h = shannon_entropy(priorities[0].as_ref());
        return Ok(ConsensusReport {
            s_star: 1.0,
            alpha_entropy: h,
            gamma_entropy: h,
            beta_entropy: 0.0,
            interpretation: ConsensusLevel::Acceptable,
            notice: Some("single participant (K=1): consensus is 1 by definition".into()),
        });
    }

    let alpha: f64 = priorities
        .iter()
        .zip(participant_weights)
        .map(|(p, w)| w * shannon_entropy(p.as_ref()))
        .sum();
    let pooled: Vec<f64> = (0..n)
        .map(|c| {
            priorities
                .iter()
                .zip(participant_weights)
                .map(|(p, w)| w * p.as_ref()[c])
                .sum()
        })
        .collect();
    let gamma = shannon_entropy(&pooled);
    let beta = gamma - alpha;

    let b = k.min(n) as f64;
    let s_star = (((-beta).exp() - 1.0 / b) / (1.0 - 1.0 / b)).clamp(0.0, 1.0);
    Ok(ConsensusReport {
        s_star,
        alpha_entropy: alpha,
        gamma_entropy: gamma,
        beta_entropy: beta,
        interpretation: ConsensusLevel::of(s_star),
        notice: None,
    })
}
