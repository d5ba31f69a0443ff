//! Scoring a subject against a weighted hierarchy.
//!
//! Each criterion is either characterized on a five-level scale or excluded
//! for lack of evidence. Exclusions are absorbed inside their category: the
//! remaining criteria are rescaled so that the category keeps its full
//! weight. Categories with no exclusions use the composed global weights
//! unchanged.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hierarchy::{compose_global_weights, CriteriaHierarchy, GlobalWeightTable, HierarchyError};

/// Score gained by raising a criterion one level.
pub const LEVEL_STEP: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characterization {
    #[serde(alias = "very low", alias = "VeryLow")]
    VeryLow,
    #[serde(alias = "Low")]
    Low,
    #[serde(alias = "Moderate")]
    Moderate,
    #[serde(alias = "High")]
    High,
    #[serde(alias = "very high", alias = "VeryHigh")]
    VeryHigh,
}

impl Characterization {
    pub const ALL: [Characterization; 5] = [
        Characterization::VeryLow,
        Characterization::Low,
        Characterization::Moderate,
        Characterization::High,
        Characterization::VeryHigh,
    ];

    pub fn score(self) -> f64 {
        match self {
            Characterization::VeryLow => 0.0,
            Characterization::Low => 0.25,
            Characterization::Moderate => 0.50,
            Characterization::High => 0.75,
            Characterization::VeryHigh => 1.00,
        }
    }

    /// One level up, or `None` at the top of the scale.
    pub fn raised(self) -> Option<Self> {
        Self::ALL.get(self as usize + 1).copied()
    }

    /// One level down, or `None` at the bottom of the scale.
    pub fn lowered(self) -> Option<Self> {
        (self as usize).checked_sub(1).map(|i| Self::ALL[i])
    }
}

impl fmt::Display for Characterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Characterization::VeryLow => "very low",
            Characterization::Low => "low",
            Characterization::Moderate => "moderate",
            Characterization::High => "high",
            Characterization::VeryHigh => "very high",
        })
    }
}

pub fn characterization_score(c: Characterization) -> f64 {
    c.score()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryStatus {
    Scored {
        characterization: Characterization,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        justification: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        evidence: Option<String>,
    },
    Excluded {
        excluded: bool,
        #[serde(default)]
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssessmentEntry {
    pub criterion: String,
    #[serde(flatten)]
    pub status: EntryStatus,
}

impl AssessmentEntry {
    pub fn scored(criterion: impl Into<String>, level: Characterization) -> Self {
        Self {
            criterion: criterion.into(),
            status: EntryStatus::Scored {
                characterization: level,
                justification: None,
                evidence: None,
            },
        }
    }

    pub fn excluded(criterion: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            criterion: criterion.into(),
            status: EntryStatus::Excluded {
                excluded: true,
                reason: reason.into(),
            },
        }
    }

    pub fn characterization(&self) -> Option<Characterization> {
        match self.status {
            EntryStatus::Scored { characterization, .. } => Some(characterization),
            EntryStatus::Excluded { .. } => None,
        }
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self.status, EntryStatus::Excluded { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assessment {
    pub subject: String,
    pub entries: Vec<AssessmentEntry>,
}

impl Assessment {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScoringError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ScoringError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_json(&text).map_err(ScoringError::Parse)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("assessment serializes")
    }

    pub fn entry(&self, criterion: &str) -> Option<&AssessmentEntry> {
        self.entries.iter().find(|e| e.criterion == criterion)
    }

    pub fn entry_mut(&mut self, criterion: &str) -> Option<&mut AssessmentEntry> {
        self.entries.iter_mut().find(|e| e.criterion == criterion)
    }

    /// Every criterion of the hierarchy at the same level.
    pub fn uniform(subject: impl Into<String>, h: &CriteriaHierarchy, level: Characterization) -> Self {
        Self {
            subject: subject.into(),
            entries: h
                .criteria()
                .map(|(_, c)| AssessmentEntry::scored(c.id.clone(), level))
                .collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ScoringError {
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error("assessment is missing criteria: {}", .0.join(", "))]
    MissingCriteria(Vec<String>),
    #[error("assessment names unknown criteria: {}", .0.join(", "))]
    UnknownCriteria(Vec<String>),
    #[error("criteria assessed more than once: {}", .0.join(", "))]
    DuplicateCriteria(Vec<String>),
    #[error("{0}: an excluded criterion needs a reason")]
    MissingReason(String),
    #[error("{0}: entry has excluded = false but no characterization")]
    NotExcluded(String),
    #[error("category {0} has every criterion excluded")]
    AllExcluded(String),
    #[error("unknown category {0}")]
    UnknownCategory(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse assessment: {0}")]
    Parse(serde_json::Error),
}

/// Checks that the assessment covers the hierarchy exactly once per criterion.
pub fn validate_assessment(h: &CriteriaHierarchy, a: &Assessment) -> Result<(), ScoringError> {
    let known: HashSet<&str> = h.criteria().map(|(_, c)| c.id.as_str()).collect();
    let mut seen = HashSet::new();
    let mut duplicates = Vec::new();
    let mut unknown = Vec::new();
    for e in &a.entries {
        if !known.contains(e.criterion.as_str()) {
            unknown.push(e.criterion.clone());
        } else if !seen.insert(e.criterion.as_str()) {
            duplicates.push(e.criterion.clone());
        }
        if let EntryStatus::Excluded { excluded, reason } = &e.status {
            if !excluded {
                return Err(ScoringError::NotExcluded(e.criterion.clone()));
            }
            if reason.trim().is_empty() {
                return Err(ScoringError::MissingReason(e.criterion.clone()));
            }
        }
    }
    if !unknown.is_empty() {
        return Err(ScoringError::UnknownCriteria(unknown));
    }
    if !duplicates.is_empty() {
        return Err(ScoringError::DuplicateCriteria(duplicates));
    }
    let missing: Vec<String> = h
        .criteria()
        .filter(|(_, c)| !seen.contains(c.id.as_str()))
        .map(|(_, c)| c.id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(ScoringError::MissingCriteria(missing));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub criterion_id: String,
    pub name: String,
    pub aggregated_weight: f64,
    pub normalized_weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characterization: Option<Characterization>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
    pub weighted_score: f64,
    pub excluded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub justification: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryResult {
    pub category_id: String,
    pub name: String,
    pub weight: f64,
    /// Sum of weighted scores divided by the category weight.
    pub achievement: f64,
    pub weighted_total: f64,
    pub criteria: Vec<CriterionResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssessmentResult {
    pub subject: String,
    pub hierarchy: String,
    pub weights: GlobalWeightTable,
    pub categories: Vec<CategoryResult>,
    pub overall_index: f64,
}

impl AssessmentResult {
    pub fn criterion(&self, id: &str) -> Option<&CriterionResult> {
        self.categories
            .iter()
            .flat_map(|c| &c.criteria)
            .find(|c| c.criterion_id == id)
    }

    pub fn category(&self, key: &str) -> Option<&CategoryResult> {
        self.categories
            .iter()
            .find(|c| c.category_id == key)
            .or_else(|| self.categories.iter().find(|c| c.name == key))
    }

    pub fn criteria(&self) -> impl Iterator<Item = &CriterionResult> {
        self.categories.iter().flat_map(|c| &c.criteria)
    }

    /// Sum over categories of `weight * achievement`; equals `overall_index`
    /// up to rounding.
    pub fn index_from_categories(&self) -> f64 {
        self.categories.iter().map(|c| c.weight * c.achievement).sum()
    }
}

/// Runs the full pipeline: validation, renormalization, scoring and aggregation.
pub fn assess(h: &CriteriaHierarchy, a: &Assessment) -> Result<AssessmentResult, ScoringError> {
    let weights = compose_global_weights(h)?;
    validate_assessment(h, a)?;
    let entries: HashMap<&str, &AssessmentEntry> =
        a.entries.iter().map(|e| (e.criterion.as_str(), e)).collect();

    let mut categories = Vec::with_capacity(h.categories.len());
    for cat in &h.categories {
        let included: f64 = cat
            .criteria
            .iter()
            .filter(|c| !entries[c.id.as_str()].is_excluded())
            .map(|c| c.local_weight)
            .sum();
        let any_excluded = cat.criteria.iter().any(|c| entries[c.id.as_str()].is_excluded());
        if included <= 0.0 {
            return Err(ScoringError::AllExcluded(cat.id.clone()));
        }

        let criteria: Vec<CriterionResult> = cat
            .criteria
            .iter()
            .map(|c| {
                let entry = entries[c.id.as_str()];
                let aggregated = weights.get(&c.id).expect("composed").aggregated_weight;
                match &entry.status {
                    EntryStatus::Scored {
                        characterization,
                        justification,
                        evidence,
                    } => {
                        let normalized = if any_excluded {
                            c.local_weight / included * cat.local_weight
                        } else {
                            aggregated
                        };
                        let score = characterization.score();
                        CriterionResult {
                            criterion_id: c.id.clone(),
                            name: c.name.clone(),
                            aggregated_weight: aggregated,
                            normalized_weight: normalized,
                            characterization: Some(*characterization),
                            score: Some(score),
                            weighted_score: normalized * score,
                            excluded: false,
                            justification: justification.clone(),
                            evidence: evidence.clone(),
                            reason: None,
                        }
                    }
                    EntryStatus::Excluded { reason, .. } => CriterionResult {
                        criterion_id: c.id.clone(),
                        name: c.name.clone(),
                        aggregated_weight: aggregated,
                        normalized_weight: 0.0,
                        characterization: None,
                        score: None,
                        weighted_score: 0.0,
                        excluded: true,
                        justification: None,
                        evidence: None,
                        reason: Some(reason.clone()),
                    },
                }
            })
            .collect();

        let weighted_total: f64 = criteria.iter().map(|c| c.weighted_score).sum();
        categories.push(CategoryResult {
            category_id: cat.id.clone(),
            name: cat.name.clone(),
            weight: cat.local_weight,
            achievement: weighted_total / cat.local_weight,
            weighted_total,
            criteria,
        });
    }

    let overall_index = categories
        .iter()
        .flat_map(|c| &c.criteria)
        .map(|c| c.weighted_score)
        .sum();
    Ok(AssessmentResult {
        subject: a.subject.clone(),
        hierarchy: h.name.clone(),
        weights,
        categories,
        overall_index,
    })
}

/// Normalized weight per criterion, in hierarchy order; excluded criteria get 0.
pub fn renormalize_weights(h: &CriteriaHierarchy, a: &Assessment) -> Result<Vec<(String, f64)>, ScoringError> {
    Ok(assess(h, a)?
        .criteria()
        .map(|c| (c.criterion_id.clone(), c.normalized_weight))
        .collect())
}

pub fn weighted_scores(h: &CriteriaHierarchy, a: &Assessment) -> Result<Vec<(String, f64)>, ScoringError> {
    Ok(assess(h, a)?
        .criteria()
        .map(|c| (c.criterion_id.clone(), c.weighted_score))
        .collect())
}

/// Achievement of one category, looked up by id or name.
pub fn category_achievement(h: &CriteriaHierarchy, a: &Assessment, category: &str) -> Result<f64, ScoringError> {
    assess(h, a)?
        .category(category)
        .map(|c| c.achievement)
        .ok_or_else(|| ScoringError::UnknownCategory(category.to_string()))
}

pub fn overall_index(h: &CriteriaHierarchy, a: &Assessment) -> Result<f64, ScoringError> {
    Ok(assess(h, a)?.overall_index)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityEntry {
    pub criterion_id: String,
    pub from: Characterization,
    pub to: Characterization,
    pub delta: f64,
}

/// Index gain from raising each criterion by one level, largest first.
/// Excluded criteria and criteria already at the top are left out.
pub fn sensitivity(result: &AssessmentResult) -> Vec<SensitivityEntry> {
    let mut out: Vec<SensitivityEntry> = result
        .criteria()
        .filter_map(|c| {
            let from = c.characterization?;
            let to = from.raised()?;
            Some(SensitivityEntry {
                criterion_id: c.criterion_id.clone(),
                from,
                to,
                delta: c.normalized_weight * LEVEL_STEP,
            })
        })
        .collect();
    out.sort_by(|a, b| {
        b.delta
            .total_cmp(&a.delta)
            .then_with(|| a.criterion_id.cmp(&b.criterion_id))
    });
    out
}

pub fn sensitivity_one_at_a_time(h: &CriteriaHierarchy, a: &Assessment) -> Result<Vec<SensitivityEntry>, ScoringError> {
    Ok(sensitivity(&assess(h, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{Category, Criterion};

    fn hierarchy() -> CriteriaHierarchy {
        let crit = |id: &str, w: f64| Criterion {
            id: id.into(),
            name: id.into(),
            local_weight: w,
            justification_source: String::new(),
        };
        CriteriaHierarchy {
            name: "toy".into(),
            version: "1".into(),
            notes: String::new(),
            categories: vec![
                Category {
                    id: "A".into(),
                    name: "Alpha".into(),
                    local_weight: 0.6,
                    criteria: vec![crit("A1", 0.5), crit("A2", 0.3), crit("A3", 0.2)],
                },
                Category {
                    id: "B".into(),
                    name: "Beta".into(),
                    local_weight: 0.4,
                    criteria: vec![crit("B1", 0.75), crit("B2", 0.25)],
                },
            ],
        }
    }

    #[test]
    fn table_of_scores() {
        let scores: Vec<f64> = Characterization::ALL.iter().map(|c| characterization_score(*c)).collect();
        assert_eq!(scores, [0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(Characterization::VeryHigh.raised(), None);
        assert_eq!(Characterization::Low.raised(), Some(Characterization::Moderate));
        assert_eq!(Characterization::VeryLow.lowered(), None);
    }

    #[test]
    fn parses_entries() {
        let a = Assessment::from_json(
            r#"{"subject":"X","entries":[
                {"criterion":"A1","characterization":"very_high","justification":"j"},
                {"criterion":"A2","characterization":"very low"},
                {"criterion":"A3","excluded":true,"reason":"no data"}]}"#,
        )
        .unwrap();
        assert_eq!(a.entries[0].characterization(), Some(Characterization::VeryHigh));
        assert_eq!(a.entries[1].characterization(), Some(Characterization::VeryLow));
        assert!(a.entries[2].is_excluded());
        assert_eq!(Assessment::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn exclusion_keeps_category_weight() {
        let h = hierarchy();
        let mut a = Assessment::uniform("X", &h, Characterization::High);
        *a.entry_mut("A3").unwrap() = AssessmentEntry::excluded("A3", "no data");
        let r = assess(&h, &a).unwrap();
        let cat = r.category("A").unwrap();
        let total: f64 = cat.criteria.iter().map(|c| c.normalized_weight).sum();
        assert!((total - 0.6).abs() < 1e-12);
        assert!((r.criterion("A1").unwrap().normalized_weight - 0.5 / 0.8 * 0.6).abs() < 1e-15);
        assert_eq!(r.criterion("A3").unwrap().normalized_weight, 0.0);
        // every included criterion at High, so each category achieves 0.75
        assert!((cat.achievement - 0.75).abs() < 1e-12);
        assert!((r.overall_index - 0.75).abs() < 1e-12);
    }

    #[test]
    fn no_exclusions_use_composed_weights() {
        let h = hierarchy();
        let r = assess(&h, &Assessment::uniform("X", &h, Characterization::Moderate)).unwrap();
        for c in r.criteria() {
            assert_eq!(c.normalized_weight, c.aggregated_weight);
        }
    }

    #[test]
    fn extremes() {
        let h = hierarchy();
        let low = assess(&h, &Assessment::uniform("X", &h, Characterization::VeryLow)).unwrap();
        assert_eq!(low.overall_index, 0.0);
        let high = assess(&h, &Assessment::uniform("X", &h, Characterization::VeryHigh)).unwrap();
        assert!((high.overall_index - 1.0).abs() < 1e-12);
        assert!(high.categories.iter().all(|c| (c.achievement - 1.0).abs() < 1e-12));
        assert!(sensitivity(&high).is_empty());
    }

    #[test]
    fn all_excluded_category_is_an_error() {
        let h = hierarchy();
        let mut a = Assessment::uniform("X", &h, Characterization::Low);
        *a.entry_mut("B1").unwrap() = AssessmentEntry::excluded("B1", "none");
        *a.entry_mut("B2").unwrap() = AssessmentEntry::excluded("B2", "none");
        let err = assess(&h, &a).unwrap_err();
        assert!(matches!(err, ScoringError::AllExcluded(ref c) if c == "B"));
    }

    #[test]
    fn coverage_errors() {
        let h = hierarchy();
        let mut a = Assessment::uniform("X", &h, Characterization::Low);
        a.entries.retain(|e| e.criterion != "A2" && e.criterion != "B2");
        match assess(&h, &a).unwrap_err() {
            ScoringError::MissingCriteria(ids) => assert_eq!(ids, ["A2", "B2"]),
            e => panic!("{e}"),
        }

        let mut a = Assessment::uniform("X", &h, Characterization::Low);
        a.entries.push(AssessmentEntry::scored("Z9", Characterization::Low));
        assert!(matches!(assess(&h, &a), Err(ScoringError::UnknownCriteria(_))));

        let mut a = Assessment::uniform("X", &h, Characterization::Low);
        a.entries.push(AssessmentEntry::scored("A1", Characterization::Low));
        assert!(matches!(assess(&h, &a), Err(ScoringError::DuplicateCriteria(_))));

        let mut a = Assessment::uniform("X", &h, Characterization::Low);
        *a.entry_mut("A1").unwrap() = AssessmentEntry::excluded("A1", " ");
        assert!(matches!(assess(&h, &a), Err(ScoringError::MissingReason(_))));
    }

    #[test]
    fn sensitivity_skips_excluded_and_top_level() {
        let h = hierarchy();
        let mut a = Assessment::uniform("X", &h, Characterization::Low);
        *a.entry_mut("A1").unwrap() = AssessmentEntry::scored("A1", Characterization::VeryHigh);
        *a.entry_mut("A2").unwrap() = AssessmentEntry::excluded("A2", "none");
        let s = sensitivity_one_at_a_time(&h, &a).unwrap();
        let ids: Vec<_> = s.iter().map(|e| e.criterion_id.as_str()).collect();
        // B1 0.3, A3 0.2/0.7*0.6 = 0.1714, B2 0.1
        assert_eq!(ids, ["B1", "A3", "B2"]);
        assert!((s[0].delta - 0.3 * LEVEL_STEP).abs() < 1e-15);
    }

    #[test]
    fn sensitivity_ties_by_id() {
        let mut h = hierarchy();
        h.categories[1].criteria[0].local_weight = 0.5;
        h.categories[1].criteria[1].local_weight = 0.5;
        h.categories[1].criteria.swap(0, 1);
        let s = sensitivity_one_at_a_time(&h, &Assessment::uniform("X", &h, Characterization::Low)).unwrap();
        let b: Vec<_> = s.iter().filter(|e| e.criterion_id.starts_with('B')).map(|e| e.criterion_id.as_str()).collect();
        assert_eq!(b, ["B1", "B2"]);
    }

    #[test]
    fn wrappers_agree_with_assess() {
        let h = hierarchy();
        let a = Assessment::uniform("X", &h, Characterization::High);
        assert!((category_achievement(&h, &a, "Beta").unwrap() - 0.75).abs() < 1e-12);
        assert!(matches!(
            category_achievement(&h, &a, "Gamma"),
            Err(ScoringError::UnknownCategory(_))
        ));
        assert_eq!(renormalize_weights(&h, &a).unwrap().len(), 5);
        assert_eq!(weighted_scores(&h, &a).unwrap()[0].0, "A1");
        assert!((overall_index(&h, &a).unwrap() - 0.75).abs() < 1e-12);
    }
}
