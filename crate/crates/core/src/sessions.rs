//! Judgment and session files, and the pipeline that turns one session per
//! hierarchy node into a full global weight table.
//!
//! Judgment values are written as numbers when they are at least 1 and as
//! strings below 1 (`"1/5"` for scale reciprocals, a decimal otherwise).
//! Both numbers and strings are accepted when reading.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{aggregate_matrices, consensus_indicator, equal_weights, normalize_weights, ConsensusReport, GroupError, ParticipantJudgments};
use crate::hierarchy::{compose_global_weights, Category, CriteriaHierarchy, Criterion, GlobalWeightTable, HierarchyError};
use crate::pairwise::{derive_priorities, derive_priorities_evm, derive_priorities_rgmm, Judgment, Method, PairwiseError, PairwiseMatrix, PriorityVector, Scale, CR_THRESHOLD};

/// Node name of the session that weighs the categories themselves.
pub const ROOT_NODE: &str = "root";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JudgmentValue(pub f64);

impl JudgmentValue {
    pub fn parse(s: &str) -> Result<f64, String> {
        let s = s.trim();
        let v = match s.split_once('/') {
            Some((num, den)) => {
                let num: f64 = num.trim().parse().map_err(|_| format!("bad fraction {s:?}"))?;
                let den: f64 = den.trim().parse().map_err(|_| format!("bad fraction {s:?}"))?;
                num / den
            }
            None => s.parse().map_err(|_| format!("bad number {s:?}"))?,
        };
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(format!("judgment {s:?} must be a positive number"))
        }
    }
}

impl Serialize for JudgmentValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v = self.0;
        if v >= 1.0 {
            if v.fract() == 0.0 && v <= u32::MAX as f64 {
                serializer.serialize_u64(v as u64)
            } else {
                serializer.serialize_f64(v)
            }
        } else {
            let inv = 1.0 / v;
            if inv.round() <= u32::MAX as f64 && 1.0 / inv.round() == v {
                serializer.serialize_str(&format!("1/{}", inv.round() as u64))
            } else {
                serializer.serialize_str(&v.to_string())
            }
        }
    }
}

impl<'de> Deserialize<'de> for JudgmentValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(v) if v.is_finite() && v > 0.0 => Ok(JudgmentValue(v)),
            Raw::Num(v) => Err(de::Error::custom(format!("judgment {v} must be positive"))),
            Raw::Str(s) => JudgmentValue::parse(&s).map(JudgmentValue).map_err(de::Error::custom),
        }
    }
}

/// An item named either by 1-based position or by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ItemRef {
    Index(usize),
    Id(String),
}

impl ItemRef {
    /// Zero-based index into `items`.
    pub fn resolve(&self, items: &[String]) -> Option<usize> {
        match self {
            ItemRef::Index(i) => (*i >= 1 && *i <= items.len()).then(|| i - 1),
            ItemRef::Id(id) => items.iter().position(|x| x == id),
        }
    }
}

impl fmt::Display for ItemRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ItemRef::Index(i) => write!(f, "{i}"),
            ItemRef::Id(id) => f.write_str(id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgmentRecord {
    pub row: ItemRef,
    pub col: ItemRef,
    pub value: JudgmentValue,
}

impl JudgmentRecord {
    pub fn from_judgment(j: &Judgment) -> Self {
        Self {
            row: ItemRef::Index(j.row + 1),
            col: ItemRef::Index(j.col + 1),
            value: JudgmentValue(j.value),
        }
    }
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn resolve_judgments(items: &[String], records: &[JudgmentRecord]) -> Result<Vec<Judgment>, PairwiseError> {
    let n = items.len();
    records
        .iter()
        .map(|r| {
            let bad = || {
                let pos = |x: &ItemRef| match x {
                    ItemRef::Index(i) => *i,
                    ItemRef::Id(_) => 0,
                };
                PairwiseError::IndexOutOfBounds(pos(&r.row), pos(&r.col), n)
            };
            let row = r.row.resolve(items).ok_or_else(bad)?;
            let col = r.col.resolve(items).ok_or_else(bad)?;
            Ok(Judgment::new(row, col, r.value.0))
        })
        .collect()
}

/// A single judgment matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgmentFile {
    pub items: Vec<String>,
    pub judgments: Vec<JudgmentRecord>,
    #[serde(default)]
    pub method: Method,
}

impl JudgmentFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, FileError> {
        read_json(path.as_ref())
    }

    pub fn matrix(&self) -> Result<PairwiseMatrix, PairwiseError> {
        let judgments = resolve_judgments(&self.items, &self.judgments)?;
        PairwiseMatrix::build(self.items.clone(), &judgments, Scale::Continuous)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticipantRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    pub judgments: Vec<JudgmentRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndividualResult {
    pub participant: String,
    pub weight: f64,
    pub priorities: PriorityVector,
}

/// Group outcome of one session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupResult {
    pub method: Method,
    pub aggregated_matrix: Vec<Vec<f64>>,
    pub evm: PriorityVector,
    pub rgmm: PriorityVector,
    /// Consistency ratio of the aggregated matrix under `method`.
    pub cr: f64,
    pub consistent: bool,
    pub consensus: ConsensusReport,
    pub individual: Vec<IndividualResult>,
}

impl GroupResult {
    pub fn priorities(&self) -> &PriorityVector {
        match self.method {
            Method::Evm => &self.evm,
            Method::Rgmm => &self.rgmm,
        }
    }
}

/// One elicitation session: every participant compares the same items.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionFile {
    /// `"root"` for the category session, otherwise a category id or name.
    pub node: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<String>,
    pub items: Vec<String>,
    pub participants: Vec<ParticipantRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<GroupResult>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub forced: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("session has no participants")]
    NoParticipants,
    #[error("participant {participant}: {source}")]
    Judgments {
        participant: String,
        source: PairwiseError,
    },
    #[error("either every participant has a weight or none does")]
    PartialWeights,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Pairwise(#[from] PairwiseError),
}

impl SessionFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, FileError> {
        read_json(path.as_ref())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("session serializes");
        s.push('\n');
        s
    }

    /// Normalized participant weights; equal shares when none are given.
    pub fn participant_weights(&self) -> Result<Vec<f64>, SessionError> {
        let given: Vec<f64> = self.participants.iter().filter_map(|p| p.weight).collect();
        if given.is_empty() {
            Ok(equal_weights(self.participants.len()))
        } else if given.len() != self.participants.len() {
            Err(SessionError::PartialWeights)
        } else {
            Ok(normalize_weights(&given)?)
        }
    }

    pub fn matrices(&self, scale: Scale) -> Result<Vec<PairwiseMatrix>, SessionError> {
        self.participants
            .iter()
            .map(|p| {
                let wrap = |source| SessionError::Judgments {
                    participant: p.id.clone(),
                    source,
                };
                let judgments = resolve_judgments(&self.items, &p.judgments).map_err(wrap)?;
                PairwiseMatrix::build(self.items.clone(), &judgments, scale).map_err(wrap)
            })
            .collect()
    }
}

/// Aggregates, prioritizes and measures consensus for a set of participant matrices.
pub fn evaluate_group(
    participants: &[(String, PairwiseMatrix)],
    weights: &[f64],
    method: Method,
) -> Result<GroupResult, SessionError> {
    if participants.is_empty() {
        return Err(SessionError::NoParticipants);
    }
    let sets: Vec<ParticipantJudgments> = participants
        .iter()
        .zip(weights)
        .map(|((id, m), &w)| ParticipantJudgments::new(id.clone(), m.clone(), w))
        .collect();
    let individual = participants
        .iter()
        .zip(weights)
        .map(|((id, m), &w)| {
            Ok(IndividualResult {
                participant: id.clone(),
                weight: w,
                priorities: derive_priorities(m, method)?,
            })
        })
        .collect::<Result<Vec<_>, PairwiseError>>()?;
    let aggregated = aggregate_matrices(&sets)?;
    let evm = derive_priorities_evm(&aggregated)?;
    let rgmm = derive_priorities_rgmm(&aggregated);
    let priorities: Vec<&PriorityVector> = individual.iter().map(|r| &r.priorities).collect();
    let vectors: Vec<&[f64]> = priorities.iter().map(|p| p.weights.as_slice()).collect();
    let consensus = consensus_indicator(&vectors, weights)?;
    let cr = match method {
        Method::Evm => evm.cr,
        Method::Rgmm => rgmm.cr,
    };
    Ok(GroupResult {
        method,
        aggregated_matrix: aggregated.to_dense(),
        evm,
        rgmm,
        cr,
        consistent: cr < CR_THRESHOLD,
        consensus,
        individual,
    })
}

pub fn evaluate_session(file: &SessionFile, method: Method, scale: Scale) -> Result<GroupResult, SessionError> {
    if file.participants.is_empty() {
        return Err(SessionError::NoParticipants);
    }
    let weights = file.participant_weights()?;
    let matrices = file.matrices(scale)?;
    let participants: Vec<(String, PairwiseMatrix)> = file
        .participants
        .iter()
        .map(|p| p.id.clone())
        .zip(matrices)
        .collect();
    evaluate_group(&participants, &weights, method)
}

/// A session in which every participant enters the consistent matrix of `weights`.
pub fn consistent_session(
    node: &str,
    items: &[String],
    weights: &[f64],
    participants: usize,
) -> Result<SessionFile, PairwiseError> {
    let m = PairwiseMatrix::from_weights(items.to_vec(), weights)?;
    let judgments: Vec<JudgmentRecord> = m.judgments().iter().map(JudgmentRecord::from_judgment).collect();
    Ok(SessionFile {
        node: node.to_string(),
        hierarchy: None,
        items: items.to_vec(),
        participants: (1..=participants)
            .map(|k| ParticipantRecord {
                id: format!("P{k}"),
                weight: None,
                judgments: judgments.clone(),
            })
            .collect(),
        result: None,
        forced: false,
        warnings: Vec::new(),
    })
}

/// Root plus one consistent session per category, generated from the
/// hierarchy's own local weights.
pub fn synthetic_sessions(h: &CriteriaHierarchy, participants: usize) -> Result<Vec<SessionFile>, PairwiseError> {
    let mut out = Vec::with_capacity(h.categories.len() + 1);
    let cat_ids: Vec<String> = h.categories.iter().map(|c| c.id.clone()).collect();
    let cat_weights: Vec<f64> = h.categories.iter().map(|c| c.local_weight).collect();
    let mut root = consistent_session(ROOT_NODE, &cat_ids, &cat_weights, participants)?;
    root.hierarchy = Some(h.name.clone());
    out.push(root);
    for cat in &h.categories {
        let ids: Vec<String> = cat.criteria.iter().map(|c| c.id.clone()).collect();
        let ws: Vec<f64> = cat.criteria.iter().map(|c| c.local_weight).collect();
        let mut s = consistent_session(&cat.id, &ids, &ws, participants)?;
        s.hierarchy = Some(h.name.clone());
        out.push(s);
    }
    Ok(out)
}

#[derive(Debug, Error)]
pub enum WeightsError {
    #[error("no session for node \"root\"")]
    NoRoot,
    #[error("more than one session for node {0:?}")]
    DuplicateNode(String),
    #[error("no session for category {0:?}")]
    MissingSession(String),
    #[error("session node {0:?} is not part of the hierarchy")]
    UnknownNode(String),
    #[error("session {node:?} compares {found:?}, expected {expected:?}")]
    ItemMismatch {
        node: String,
        expected: Vec<String>,
        found: Vec<String>,
    },
    #[error("session {node:?} is inconsistent: cr = {cr:.2} (limit {CR_THRESHOLD})")]
    Inconsistent { node: String, cr: f64 },
    #[error("session {node:?}: {source}")]
    Session { node: String, source: SessionError },
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
}

impl WeightsError {
    /// Inconsistent sessions as `(node, cr)`, for callers that report them.
    pub fn inconsistent(&self) -> Option<(&str, f64)> {
        match self {
            WeightsError::Inconsistent { node, cr } => Some((node, *cr)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct WeightOptions<'a> {
    pub method: Method,
    pub allow_inconsistent: bool,
    /// Supplies display names and fixes the expected node/item structure.
    pub template: Option<&'a CriteriaHierarchy>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionSummary {
    pub node: String,
    pub items: Vec<String>,
    pub result: GroupResult,
}

/// The weight table document produced from a full set of sessions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightDerivation {
    pub method: Method,
    pub sessions: Vec<SessionSummary>,
    pub hierarchy: CriteriaHierarchy,
    pub table: GlobalWeightTable,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl WeightDerivation {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("derivation serializes");
        s.push('\n');
        s
    }
}

fn same_items(a: &[String], b: &[String]) -> bool {
    let a: HashSet<&String> = a.iter().collect();
    let b: HashSet<&String> = b.iter().collect();
    a == b
}

/// Weights of `items` from a session, reordered to follow `order`.
fn weights_in_order(items: &[String], weights: &[f64], order: &[String]) -> Vec<f64> {
    order
        .iter()
        .map(|id| weights[items.iter().position(|x| x == id).expect("same item set")])
        .collect()
}

/// Runs aggregate, prioritize and compose over one session per hierarchy node.
pub fn derive_hierarchy_weights(sessions: &[SessionFile], opts: WeightOptions<'_>) -> Result<WeightDerivation, WeightsError> {
    let mut seen = HashSet::new();
    for s in sessions {
        if !seen.insert(s.node.as_str()) {
            return Err(WeightsError::DuplicateNode(s.node.clone()));
        }
    }
    let root = sessions.iter().find(|s| s.node == ROOT_NODE).ok_or(WeightsError::NoRoot)?;

    // (category id, name, criteria ids, criteria names)
    type Skeleton = (String, String, Vec<String>, Vec<String>);
    let skeleton: Vec<Skeleton> = match opts.template {
        Some(t) => {
            let ids: Vec<String> = t.categories.iter().map(|c| c.id.clone()).collect();
            if !same_items(&root.items, &ids) {
                return Err(WeightsError::ItemMismatch {
                    node: ROOT_NODE.into(),
                    expected: ids,
                    found: root.items.clone(),
                });
            }
            t.categories
                .iter()
                .map(|c| {
                    (
                        c.id.clone(),
                        c.name.clone(),
                        c.criteria.iter().map(|x| x.id.clone()).collect(),
                        c.criteria.iter().map(|x| x.name.clone()).collect(),
                    )
                })
                .collect()
        }
        None => root
            .items
            .iter()
            .map(|id| {
                let s = sessions
                    .iter()
                    .find(|s| &s.node == id)
                    .ok_or_else(|| WeightsError::MissingSession(id.clone()))?;
                Ok((id.clone(), id.clone(), s.items.clone(), s.items.clone()))
            })
            .collect::<Result<_, WeightsError>>()?,
    };

    let find_session = |id: &str, name: &str| sessions.iter().find(|s| s.node == id || s.node == name);
    for s in sessions {
        if s.node != ROOT_NODE && !skeleton.iter().any(|(id, name, ..)| &s.node == id || &s.node == name) {
            return Err(WeightsError::UnknownNode(s.node.clone()));
        }
    }

    let mut warnings = Vec::new();
    let mut summaries = Vec::new();
    let mut evaluate = |s: &SessionFile| -> Result<GroupResult, WeightsError> {
        let result = evaluate_session(s, opts.method, Scale::Continuous).map_err(|source| WeightsError::Session {
            node: s.node.clone(),
            source,
        })?;
        if !result.consistent {
            if opts.allow_inconsistent {
                warnings.push(format!(
                    "session {:?} is inconsistent (cr = {:.4}), accepted by override",
                    s.node, result.cr
                ));
            } else {
                return Err(WeightsError::Inconsistent {
                    node: s.node.clone(),
                    cr: result.cr,
                });
            }
        }
        if !result.consensus.is_acceptable() {
            warnings.push(format!(
                "session {:?} consensus {:.1}% is below the 75% acceptability line",
                s.node,
                result.consensus.s_star * 100.0
            ));
        }
        summaries.push(SessionSummary {
            node: s.node.clone(),
            items: s.items.clone(),
            result: result.clone(),
        });
        Ok(result)
    };

    let root_result = evaluate(root)?;
    let cat_ids: Vec<String> = skeleton.iter().map(|s| s.0.clone()).collect();
    let cat_weights = weights_in_order(&root.items, &root_result.priorities().weights, &cat_ids);

    let mut categories = Vec::with_capacity(skeleton.len());
    for ((id, name, crit_ids, crit_names), cat_weight) in skeleton.into_iter().zip(cat_weights) {
        let session = find_session(&id, &name).ok_or_else(|| WeightsError::MissingSession(id.clone()))?;
        if !same_items(&session.items, &crit_ids) {
            return Err(WeightsError::ItemMismatch {
                node: session.node.clone(),
                expected: crit_ids,
                found: session.items.clone(),
            });
        }
        let result = evaluate(session)?;
        let local = weights_in_order(&session.items, &result.priorities().weights, &crit_ids);
        categories.push(Category {
            id,
            name,
            local_weight: cat_weight,
            criteria: crit_ids
                .into_iter()
                .zip(crit_names)
                .zip(local)
                .map(|((id, name), w)| Criterion {
                    id,
                    name,
                    local_weight: w,
                    justification_source: String::new(),
                })
                .collect(),
        });
    }

    let hierarchy = CriteriaHierarchy {
        name: opts.template.map_or_else(|| root.hierarchy.clone().unwrap_or_default(), |t| t.name.clone()),
        version: opts.template.map(|t| t.version.clone()).unwrap_or_default(),
        notes: format!("weights derived from {} sessions ({})", sessions.len(), opts.method),
        categories,
    };
    let table = compose_global_weights(&hierarchy)?;
    Ok(WeightDerivation {
        method: opts.method,
        sessions: summaries,
        hierarchy,
        table,
        warnings,
    })
}
