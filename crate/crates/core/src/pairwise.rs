//! Pairwise comparison matrices, priority derivation and consistency checks.
//!
//! A matrix stores only its strict upper triangle; the diagonal is 1 and the
//! lower triangle is the reciprocal of the mirrored upper entry, so a stored
//! matrix is reciprocal by construction.
//!
//! Two priority methods are provided:
//! - [`Method::Evm`]: principal right eigenvector by power iteration.
//! - [`Method::Rgmm`]: normalized row geometric means.
//!
//! Both report `lambda_max` as the mean of `(A w)_i / w_i`, from which the
//! consistency index `(lambda_max - n) / (n - 1)` and the consistency ratio
//! `CI / RI(n)` follow.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MIN_ITEMS: usize = 2;
pub const MAX_ITEMS: usize = 10;

/// Judgments at or above this consistency ratio are rejected.
pub const CR_THRESHOLD: f64 = 0.10;

/// Saaty's random consistency index for n = 1..=10.
const RANDOM_INDEX: [f64; MAX_ITEMS] = [0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

const POWER_TOLERANCE: f64 = 1e-12;
const POWER_MAX_ITERATIONS: usize = 10_000;

const SCALE_MIN: f64 = 1.0 / 9.0;
const SCALE_MAX: f64 = 9.0;

pub fn random_index(n: usize) -> Option<f64> {
    RANDOM_INDEX.get(n.checked_sub(1)?).copied()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PairwiseError {
    #[error("need at least {MIN_ITEMS} items, got {0}")]
    TooFewItems(usize),
    #[error("at most {MAX_ITEMS} items are supported, got {0}")]
    TooManyItems(usize),
    #[error("duplicate item id {0:?}")]
    DuplicateItem(String),
    #[error("pair ({0},{1}) compares an item with itself")]
    SelfComparison(usize, usize),
    #[error("pair ({0},{1}) refers to an item outside 1..={2}")]
    IndexOutOfBounds(usize, usize, usize),
    #[error("duplicate pair ({0},{1})")]
    DuplicatePair(usize, usize),
    #[error("missing pair ({0},{1})")]
    MissingPair(usize, usize),
    #[error("value {value} for pair ({row},{col}) is outside [1/9, 9]")]
    OutOfRange { row: usize, col: usize, value: f64 },
    #[error("value {value} for pair ({row},{col}) is not 1..9 or a reciprocal")]
    NotOnScale { row: usize, col: usize, value: f64 },
    #[error("entries ({0},{1}) and ({1},{0}) are not reciprocal")]
    NotReciprocal(usize, usize),
    #[error("diagonal entry ({0},{0}) is not 1")]
    Diagonal(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
}

/// Which values a matrix may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// Human judgments: integers 1..=9 and their reciprocals.
    Saaty,
    /// Computed judgments: any real in [1/9, 9].
    Continuous,
}

/// Snaps a value to the elicitation scale, if it is close enough to be meant
/// as one of its points. Decimal reciprocals such as `0.333` or `0.111` are
/// accepted and stored as the exact fraction.
pub fn snap_to_saaty(value: f64) -> Option<f64> {
    if !value.is_finite() || value <= 0.0 {
        return None;
    }
    if value >= 1.0 {
        let r = value.round();
        ((value - r).abs() < 1e-9 && (1.0..=9.0).contains(&r)).then_some(r)
    } else {
        let inv = 1.0 / value;
        let r = inv.round();
        ((inv - r).abs() < 1e-2 && (2.0..=9.0).contains(&r)).then_some(1.0 / r)
    }
}

fn check_range(value: f64) -> Option<f64> {
    const SLACK: f64 = 1e-12;
    if !value.is_finite() || value < SCALE_MIN * (1.0 - SLACK) || value > SCALE_MAX * (1.0 + SLACK) {
        None
    } else {
        Some(value.clamp(SCALE_MIN, SCALE_MAX))
    }
}

/// One judgment: how much more important item `row` is than item `col`.
/// Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Judgment {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl Judgment {
    pub fn new(row: usize, col: usize, value: f64) -> Self {
        Self { row, col, value }
    }

    /// The same judgment expressed on the upper triangle.
    pub fn canonical(self) -> Self {
        if self.row > self.col {
            Self::new(self.col, self.row, 1.0 / self.value)
        } else {
            self
        }
    }
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All upper-triangle pairs `(i, j)`, `i < j`, in row-major order.
pub fn canonical_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    items: Vec<String>,
    upper: Vec<f64>,
}

impl PairwiseMatrix {
    fn check_items(items: &[String]) -> Result<(), PairwiseError> {
        let n = items.len();
        if n < MIN_ITEMS {
            return Err(PairwiseError::TooFewItems(n));
        }
        if n > MAX_ITEMS {
            return Err(PairwiseError::TooManyItems(n));
        }
        for (i, id) in items.iter().enumerate() {
            if items[..i].contains(id) {
                return Err(PairwiseError::DuplicateItem(id.clone()));
            }
        }
        Ok(())
    }

    /// Builds a full reciprocal matrix from exactly one judgment per pair.
    ///
    /// Judgments may be given in either orientation; `(j, i) = v` is read as
    /// `(i, j) = 1/v`.
    pub fn build(items: Vec<String>, judgments: &[Judgment], scale: Scale) -> Result<Self, PairwiseError> {
        Self::check_items(&items)?;
        let n = items.len();
        let mut upper: Vec<Option<f64>> = vec![None; pair_count(n)];
        for j in judgments {
            let (r1, c1) = (j.row + 1, j.col + 1);
            if j.row >= n || j.col >= n {
                return Err(PairwiseError::IndexOutOfBounds(r1, c1, n));
            }
            if j.row == j.col {
                return Err(PairwiseError::SelfComparison(r1, c1));
            }
            let value = match scale {
                Scale::Saaty => snap_to_saaty(j.value).ok_or(PairwiseError::NotOnScale {
                    row: r1,
                    col: c1,
                    value: j.value,
                })?,
                Scale::Continuous => check_range(j.value).ok_or(PairwiseError::OutOfRange {
                    row: r1,
                    col: c1,
                    value: j.value,
                })?,
            };
            let c = Judgment::new(j.row, j.col, value).canonical();
            let slot = &mut upper[upper_index(n, c.row, c.col)];
            if slot.is_some() {
                return Err(PairwiseError::DuplicatePair(c.row + 1, c.col + 1));
            }
            *slot = Some(c.value);
        }
        let upper = canonical_pairs(n)
            .zip(upper)
            .map(|((i, j), v)| v.ok_or(PairwiseError::MissingPair(i + 1, j + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { items, upper })
    }

    /// Builds from a dense row-major matrix, checking the diagonal and reciprocity.
    pub fn from_dense(items: Vec<String>, rows: &[Vec<f64>]) -> Result<Self, PairwiseError> {
        Self::check_items(&items)?;
        let n = items.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(PairwiseError::NotSquare);
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 1.0 {
                return Err(PairwiseError::Diagonal(i + 1));
            }
        }
        let mut judgments = Vec::with_capacity(pair_count(n));
        for (i, j) in canonical_pairs(n) {
            if (rows[i][j] * rows[j][i] - 1.0).abs() > 1e-12 {
                return Err(PairwiseError::NotReciprocal(i + 1, j + 1));
            }
            judgments.push(Judgment::new(i, j, rows[i][j]));
        }
        Self::build(items, &judgments, Scale::Continuous)
    }

    /// The perfectly consistent matrix `a_ij = w_i / w_j`.
    pub fn from_weights(items: Vec<String>, weights: &[f64]) -> Result<Self, PairwiseError> {
        Self::check_items(&items)?;
        let n = items.len();
        if weights.len() != n {
            return Err(PairwiseError::NotSquare);
        }
        let judgments: Vec<_> = canonical_pairs(n)
            .map(|(i, j)| Judgment::new(i, j, weights[i] / weights[j]))
            .collect();
        Self::build(items, &judgments, Scale::Continuous)
    }

    /// Upper-triangle entries must already be validated and within range.
    pub(crate) fn from_upper_unchecked(items: Vec<String>, upper: Vec<f64>) -> Self {
        debug_assert_eq!(upper.len(), pair_count(items.len()));
        Self { items, upper }
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let n = self.n();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Less => self.upper[upper_index(n, i, j)],
            std::cmp::Ordering::Greater => 1.0 / self.upper[upper_index(n, j, i)],
        }
    }

    /// Upper-triangle judgments in canonical order.
    pub fn judgments(&self) -> Vec<Judgment> {
        canonical_pairs(self.n())
            .zip(&self.upper)
            .map(|((i, j), &v)| Judgment::new(i, j, v))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Reorders items so that new item `k` is old item `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        assert_eq!(perm.len(), n, "permutation length");
        let items = perm.iter().map(|&p| self.items[p].clone()).collect();
        let upper = canonical_pairs(n)
            .map(|(i, j)| self.entry(perm[i], perm[j]))
            .collect();
        Self { items, upper }
    }

    fn mul_vec(&self, w: &[f64]) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j) * w[j]).sum())
            .collect()
    }

    /// Mean of `(A w)_i / w_i`.
    pub fn lambda_estimate(&self, weights: &[f64]) -> f64 {
        let aw = self.mul_vec(weights);
        aw.iter().zip(weights).map(|(a, w)| a / w).sum::<f64>() / self.n() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Evm,
    Rgmm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Evm => "evm",
            Method::Rgmm => "rgmm",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "evm" => Ok(Method::Evm),
            "rgmm" => Ok(Method::Rgmm),
            other => Err(format!("unknown method {other:?} (expected evm or rgmm)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorityVector {
    pub weights: Vec<f64>,
    pub method: Method,
    pub lambda_max: f64,
    pub ci: f64,
    pub cr: f64,
}

impl PriorityVector {
    fn with_diagnostics(m: &PairwiseMatrix, weights: Vec<f64>, method: Method) -> Self {
        let n = m.n();
        let lambda_max = m.lambda_estimate(&weights);
        let (ci, cr) = if n <= 2 {
            (0.0, 0.0)
        } else {
            let ci = ((lambda_max - n as f64) / (n as f64 - 1.0)).max(0.0);
            (ci, ci / random_index(n).expect("n checked at construction"))
        };
        Self {
            weights,
            method,
            lambda_max,
            ci,
            cr,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.cr < CR_THRESHOLD
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

impl AsRef<[f64]> for PriorityVector {
    fn as_ref(&self) -> &[f64] {
        &self.weights
    }
}

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

pub fn derive_priorities_evm(m: &PairwiseMatrix) -> Result<PriorityVector, PairwiseError> {
    let n = m.n();
    let mut w = vec![1.0 / n as f64; n];
    for _ in 0..POWER_MAX_ITERATIONS {
        let next = normalize(m.mul_vec(&w));
        let delta: f64 = next.iter().zip(&w).map(|(a, b)| (a - b).abs()).sum();
        w = next;
        if delta <= POWER_TOLERANCE {
            return Ok(PriorityVector::with_diagnostics(m, w, Method::Evm));
        }
    }
    Err(PairwiseError::NoConvergence(POWER_MAX_ITERATIONS))
}

pub fn derive_priorities_rgmm(m: &PairwiseMatrix) -> PriorityVector {
    let n = m.n();
    let means = (0..n)
        .map(|i| ((0..n).map(|j| m.entry(i, j).ln()).sum::<f64>() / n as f64).exp())
        .collect();
    PriorityVector::with_diagnostics(m, normalize(means), Method::Rgmm)
}

pub fn derive_priorities(m: &PairwiseMatrix, method: Method) -> Result<PriorityVector, PairwiseError> {
    match method {
        Method::Evm => derive_priorities_evm(m),
        Method::Rgmm => Ok(derive_priorities_rgmm(m)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyCheck {
    pub cr: f64,
    pub passed: bool,
}

pub fn consistency_ratio(m: &PairwiseMatrix, method: Method) -> Result<ConsistencyCheck, PairwiseError> {
    let p = derive_priorities(m, method)?;
    Ok(ConsistencyCheck {
        cr: p.cr,
        passed: p.is_consistent(),
    })
}

/// Three items whose judgments disagree with each other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triad {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    /// `|ln(a_ij * a_jl / a_il)|`
    pub score: f64,
    /// `a_ij * a_jl`, what `a_il` would be if the triad were consistent.
    pub implied: f64,
    pub entered: f64,
}

pub fn most_inconsistent_triads(m: &PairwiseMatrix, k: usize) -> Vec<Triad> {
    let n = m.n();
    let mut triads = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let implied = m.entry(i, j) * m.entry(j, l);
                let entered = m.entry(i, l);
                triads.push(Triad {
                    i,
                    j,
                    l,
                    score: (implied / entered).ln().abs(),
                    implied,
                    entered,
                });
            }
        }
    }
    // stable sort keeps index order among equal scores
    triads.sort_by(|a, b| b.score.total_cmp(&a.score));
    triads.truncate(k);
    triads
}
