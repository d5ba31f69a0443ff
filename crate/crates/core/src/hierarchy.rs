//! Two-tier criteria hierarchy: categories at the top, criteria underneath.
//!
//! Every node carries a *local* weight (its share within its parent). The
//! global weight of a criterion is the product of its own local weight and
//! the local weight of its category.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Allowed deviation of a tier's weight sum from 1.
///
/// Weights entered to three decimals can make a tier sum to 0.999 or 1.001.
pub const TIER_SUM_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: String,
    pub name: String,
    #[serde(rename = "weight")]
    pub local_weight: f64,
    /// Where the criterion comes from (survey, merged criteria, ...).
    #[serde(rename = "source", default)]
    pub justification_source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Category {
    pub id: String,
    pub name: String,
    #[serde(rename = "weight")]
    pub local_weight: f64,
    pub criteria: Vec<Criterion>,
}

impl Category {
    pub fn criterion(&self, id: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.id == id)
    }

    pub fn weight_sum(&self) -> f64 {
        self.criteria.iter().map(|c| c.local_weight).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaHierarchy {
    pub name: String,
    #[serde(default)]
    pub version: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    pub categories: Vec<Category>,
}

#[derive(Debug, Error)]
pub enum HierarchyError {
    #[error("invalid hierarchy: {0}")]
    Invalid(Violation),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse hierarchy: {0}")]
    Parse(#[from] serde_json::Error),
}

impl CriteriaHierarchy {
    pub fn from_json(text: &str) -> Result<Self, HierarchyError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, HierarchyError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| HierarchyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("hierarchy serializes")
    }

    pub fn category(&self, id: &str) -> Option<&Category> {
        self.categories.iter().find(|c| c.id == id)
    }

    /// Looks a category up by id first, then by display name.
    pub fn find_category(&self, key: &str) -> Option<&Category> {
        self.category(key)
            .or_else(|| self.categories.iter().find(|c| c.name == key))
    }

    pub fn criteria(&self) -> impl Iterator<Item = (&Category, &Criterion)> {
        self.categories
            .iter()
            .flat_map(|cat| cat.criteria.iter().map(move |c| (cat, c)))
    }

    pub fn criterion_count(&self) -> usize {
        self.categories.iter().map(|c| c.criteria.len()).sum()
    }

    pub fn category_weight_sum(&self) -> f64 {
        self.categories.iter().map(|c| c.local_weight).sum()
    }
}

/// The rule a hierarchy node breaks.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    DuplicateId { id: String },
    MalformedId { id: String },
    WeightOutOfRange { node: String, weight: f64 },
    TooFewCriteria { category: String, count: usize },
    TierSum { node: String, sum: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "{id}: id is not unique"),
            Violation::MalformedId { id } => {
                write!(f, "{id}: id must be letters followed by digits")
            }
            Violation::WeightOutOfRange { node, weight } => {
                write!(f, "{node}: weight {weight} must lie in (0, 1]")
            }
            Violation::TooFewCriteria { category, count } => write!(
                f,
                "{category}: category needs >= 2 criteria (has {count})"
            ),
            Violation::TierSum { node, sum } => write!(
                f,
                "{node}: child weights sum to {sum:.4}, outside 1 +/- {TIER_SUM_TOLERANCE}"
            ),
        }
    }
}

fn is_criterion_id(id: &str) -> bool {
    let letters = id.chars().take_while(|c| c.is_ascii_alphabetic()).count();
    let digits = id[letters..].chars().take_while(|c| c.is_ascii_digit()).count();
    letters > 0 && digits > 0 && letters + digits == id.len()
}

fn weight_in_range(w: f64) -> bool {
    w.is_finite() && w > 0.0 && w <= 1.0
}

/// Checks every structural invariant. An empty list means the hierarchy is valid.
pub fn validate_hierarchy(h: &CriteriaHierarchy) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();

    let root_sum = h.category_weight_sum();
    if (root_sum - 1.0).abs() > TIER_SUM_TOLERANCE {
        violations.push(Violation::TierSum {
            node: "root".into(),
            sum: root_sum,
        });
    }

    for cat in &h.categories {
        if !seen.insert(cat.id.as_str()) {
            violations.push(Violation::DuplicateId { id: cat.id.clone() });
        }
        if !weight_in_range(cat.local_weight) {
            violations.push(Violation::WeightOutOfRange {
                node: cat.id.clone(),
                weight: cat.local_weight,
            });
        }
        if cat.criteria.len() < 2 {
            violations.push(Violation::TooFewCriteria {
                category: cat.id.clone(),
                count: cat.criteria.len(),
            });
        }
        let sum = cat.weight_sum();
        if (sum - 1.0).abs() > TIER_SUM_TOLERANCE {
            violations.push(Violation::TierSum {
                node: cat.id.clone(),
                sum,
            });
        }
        for c in &cat.criteria {
            if !seen.insert(c.id.as_str()) {
                violations.push(Violation::DuplicateId { id: c.id.clone() });
            }
            if !is_criterion_id(&c.id) {
                violations.push(Violation::MalformedId { id: c.id.clone() });
            }
            if !weight_in_range(c.local_weight) {
                violations.push(Violation::WeightOutOfRange {
                    node: c.id.clone(),
                    weight: c.local_weight,
                });
            }
        }
    }
    violations
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalWeight {
    pub criterion_id: String,
    pub category_id: String,
    pub category_weight: f64,
    pub local_weight: f64,
    pub aggregated_weight: f64,
    pub rank: usize,
}

/// Global weights in hierarchy order, each carrying its rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalWeightTable {
    pub rows: Vec<GlobalWeight>,
}

impl GlobalWeightTable {
    pub fn get(&self, criterion_id: &str) -> Option<&GlobalWeight> {
        self.rows.iter().find(|r| r.criterion_id == criterion_id)
    }

    pub fn total(&self) -> f64 {
        self.rows.iter().map(|r| r.aggregated_weight).sum()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Descending by full-precision weight, then ascending by id.
fn rank_order(a: (&str, f64), b: (&str, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0))
}

pub fn compose_global_weights(h: &CriteriaHierarchy) -> Result<GlobalWeightTable, HierarchyError> {
    if let Some(v) = validate_hierarchy(h).into_iter().next() {
        return Err(HierarchyError::Invalid(v));
    }
    let mut rows: Vec<GlobalWeight> = h
        .criteria()
        .map(|(cat, c)| GlobalWeight {
            criterion_id: c.id.clone(),
            category_id: cat.id.clone(),
            category_weight: cat.local_weight,
            local_weight: c.local_weight,
            aggregated_weight: cat.local_weight * c.local_weight,
            rank: 0,
        })
        .collect();

    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| {
        rank_order(
            (&rows[a].criterion_id, rows[a].aggregated_weight),
            (&rows[b].criterion_id, rows[b].aggregated_weight),
        )
    });
    for (position, idx) in order.into_iter().enumerate() {
        rows[idx].rank = position + 1;
    }
    Ok(GlobalWeightTable { rows })
}

/// `(id, rank)` pairs from most to least important.
pub fn rank_criteria(t: &GlobalWeightTable) -> Vec<(String, usize)> {
    let mut ranked: Vec<&GlobalWeight> = t.rows.iter().collect();
    ranked.sort_by(|a, b| {
        rank_order(
            (&a.criterion_id, a.aggregated_weight),
            (&b.criterion_id, b.aggregated_weight),
        )
    });
    ranked
        .into_iter()
        .enumerate()
        .map(|(i, r)| (r.criterion_id.clone(), i + 1))
        .collect()
}

pub fn top_criteria(t: &GlobalWeightTable, k: usize) -> Vec<String> {
    rank_criteria(t).into_iter().take(k).map(|(id, _)| id).collect()
}

/// Least important first.
pub fn bottom_criteria(t: &GlobalWeightTable, k: usize) -> Vec<String> {
    rank_criteria(t)
        .into_iter()
        .rev()
        .take(k)
        .map(|(id, _)| id)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crit(id: &str, w: f64) -> Criterion {
        Criterion {
            id: id.into(),
            name: id.into(),
            local_weight: w,
            justification_source: String::new(),
        }
    }

    fn single(weights: &[f64]) -> CriteriaHierarchy {
        CriteriaHierarchy {
            name: "t".into(),
            version: "1".into(),
            notes: String::new(),
            categories: vec![Category {
                id: "A".into(),
                name: "Alpha".into(),
                local_weight: 1.0,
                criteria: weights
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| crit(&format!("A{}", i + 1), w))
                    .collect(),
            }],
        }
    }

    #[test]
    fn single_criterion_category_is_flagged() {
        let v = validate_hierarchy(&single(&[1.0]));
        assert_eq!(
            v,
            vec![Violation::TooFewCriteria {
                category: "A".into(),
                count: 1
            }]
        );
        assert!(v[0].to_string().contains("category needs >= 2 criteria"));
    }

    #[test]
    fn child_sum_outside_tolerance_names_category() {
        let v = validate_hierarchy(&single(&[0.5, 0.4]));
        assert_eq!(v.len(), 1);
        match &v[0] {
            Violation::TierSum { node, sum } => {
                assert_eq!(node, "A");
                assert!((sum - 0.9).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(validate_hierarchy(&single(&[0.5, 0.499])).is_empty());
    }

    #[test]
    fn ids_must_be_letters_then_digits() {
        assert!(is_criterion_id("PL4"));
        assert!(is_criterion_id("I12"));
        assert!(!is_criterion_id("4PL"));
        assert!(!is_criterion_id("PL"));
        assert!(!is_criterion_id("P-1"));
        assert!(!is_criterion_id(""));
    }

    #[test]
    fn duplicate_and_out_of_range_weights() {
        let mut h = single(&[0.5, 0.5]);
        h.categories[0].criteria[1].id = "A1".into();
        h.categories[0].criteria[0].local_weight = 0.0;
        h.categories[0].criteria[1].local_weight = 1.0;
        let v = validate_hierarchy(&h);
        assert!(v.contains(&Violation::DuplicateId { id: "A1".into() }));
        assert!(v.contains(&Violation::WeightOutOfRange {
            node: "A1".into(),
            weight: 0.0
        }));
    }

    #[test]
    fn single_category_identity() {
        let t = compose_global_weights(&single(&[0.5, 0.5])).unwrap();
        assert_eq!(t.rows[0].aggregated_weight, 0.5);
        assert_eq!(t.rows[1].aggregated_weight, 0.5);
        // equal weights fall back to id order
        assert_eq!(t.rows[0].rank, 1);
        assert_eq!(t.rows[1].rank, 2);
    }

    #[test]
    fn compose_rejects_invalid() {
        let err = compose_global_weights(&single(&[1.0])).unwrap_err();
        assert!(matches!(
            err,
            HierarchyError::Invalid(Violation::TooFewCriteria { .. })
        ));
    }

    #[test]
    fn ranks_use_full_precision() {
        let t = compose_global_weights(&single(&[0.2501, 0.25, 0.2499, 0.25])).unwrap();
        let ranked = rank_criteria(&t);
        let ids: Vec<_> = ranked.iter().map(|(id, _)| id.as_str()).collect();
        assert_eq!(ids, ["A1", "A2", "A4", "A3"]);
        assert_eq!(top_criteria(&t, 1), ["A1"]);
        assert_eq!(bottom_criteria(&t, 2), ["A3", "A4"]);
    }
}
