//! In-memory session state with an append-only journal per session.
//!
//! Every mutation is expressed as a [`JournalEvent`]. A mutation is first
//! applied to a copy of the session, then written to the journal, then
//! committed, so the journal never records an event the state rejected and
//! replaying a journal reproduces the live state exactly.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::group::normalize_weights;
use crate::hierarchy::CriteriaHierarchy;
use crate::pairwise::{
    canonical_pairs, derive_priorities, most_inconsistent_triads, pair_count, snap_to_saaty, Judgment, Method,
    PairwiseMatrix, PriorityVector, Scale,
};
use crate::sessions::{evaluate_group, GroupResult, ItemRef, JudgmentRecord, JudgmentValue, ParticipantRecord, SessionFile, ROOT_NODE};

use super::ServiceError;

/// Triads with a smaller score are treated as consistent.
const TRIAD_EPSILON: f64 = 1e-9;
const TRIADS_SHOWN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Open,
    Finalized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum JournalEvent {
    Create {
        session_id: String,
        hierarchy: String,
        node: String,
        items: Vec<String>,
        method: Method,
    },
    Participant {
        id: String,
        weight: f64,
    },
    /// `row < col`, both 1-based.
    Judgment {
        participant: String,
        row: usize,
        col: usize,
        value: JudgmentValue,
    },
    Finalize {
        force: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRef {
    pub row: usize,
    pub col: usize,
    pub row_item: String,
    pub col_item: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriadView {
    pub rows: [usize; 3],
    pub items: [String; 3],
    pub score: f64,
    pub implied: f64,
    pub entered: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticipantState {
    pub participant: String,
    pub weight: f64,
    pub answered: usize,
    pub total: usize,
    pub complete: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub missing: Vec<PairRef>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub priorities: Option<PriorityVector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub triads: Option<Vec<TriadView>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    pub session_id: String,
    pub hierarchy: String,
    pub node: String,
    pub items: Vec<String>,
    pub method: Method,
    pub status: Status,
    pub participants: Vec<ParticipantState>,
    /// Present once at least two participants have complete matrices.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<GroupResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CreatedSession {
    pub session_id: String,
    pub node: String,
    pub items: Vec<String>,
    pub pairs: Vec<PairRef>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubmitResponse {
    pub session_id: String,
    pub participant: String,
    pub row: usize,
    pub col: usize,
    pub value: JudgmentValue,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub participant_state: Option<ParticipantState>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<GroupResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalizeResponse {
    pub session_id: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub path: Option<String>,
    pub session: SessionFile,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct CreateRequest {
    #[serde(default)]
    pub hierarchy: Option<String>,
    pub node: String,
    #[serde(default)]
    pub method: Option<Method>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ParticipantRequest {
    pub id: String,
    #[serde(default)]
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct JudgmentRequest {
    pub participant: String,
    pub row: ItemRef,
    pub col: ItemRef,
    pub value: JudgmentValue,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct FinalizeRequest {
    #[serde(default)]
    pub force: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    id: String,
    hierarchy: String,
    node: String,
    items: Vec<String>,
    method: Method,
    status: Status,
    participants: IndexMap<String, f64>,
    judgments: HashMap<String, BTreeMap<(usize, usize), f64>>,
    finalized: Option<SessionFile>,
    journal: Vec<JournalEvent>,
}

impl Session {
    fn from_create(event: JournalEvent) -> Result<Self, ServiceError> {
        let JournalEvent::Create {
            session_id,
            hierarchy,
            node,
            items,
            method,
        } = event.clone()
        else {
            return Err(ServiceError::internal("journal does not start with a create event"));
        };
        Ok(Self {
            id: session_id,
            hierarchy,
            node,
            items,
            method,
            status: Status::Open,
            participants: IndexMap::new(),
            judgments: HashMap::new(),
            finalized: None,
            journal: vec![event],
        })
    }

    /// Rebuilds a session from its journal.
    pub fn replay(events: impl IntoIterator<Item = JournalEvent>) -> Result<Self, ServiceError> {
        let mut events = events.into_iter();
        let first = events.next().ok_or_else(|| ServiceError::internal("empty journal"))?;
        let mut session = Self::from_create(first)?;
        for e in events {
            session.apply(e)?;
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn journal(&self) -> &[JournalEvent] {
        &self.journal
    }

    fn ensure_open(&self) -> Result<(), ServiceError> {
        match self.status {
            Status::Open => Ok(()),
            Status::Finalized => Err(ServiceError::conflict(
                "session_closed",
                format!("session {} is finalized", self.id),
                json!({}),
            )),
        }
    }

    fn pair_ref(&self, i: usize, j: usize) -> PairRef {
        PairRef {
            row: i + 1,
            col: j + 1,
            row_item: self.items[i].clone(),
            col_item: self.items[j].clone(),
        }
    }

    pub fn pairs(&self) -> Vec<PairRef> {
        canonical_pairs(self.items.len()).map(|(i, j)| self.pair_ref(i, j)).collect()
    }

    /// Validates and applies one event, appending it to the in-memory journal.
    pub fn apply(&mut self, event: JournalEvent) -> Result<(), ServiceError> {
        match &event {
            JournalEvent::Create { .. } => {
                return Err(ServiceError::internal("create event in the middle of a journal"));
            }
            JournalEvent::Participant { id, weight } => {
                self.ensure_open()?;
                if id.trim().is_empty() {
                    return Err(ServiceError::bad_request("invalid_participant", "participant id is empty", json!({})));
                }
                if !(weight.is_finite() && *weight > 0.0) {
                    return Err(ServiceError::bad_request(
                        "invalid_weight",
                        format!("participant weight {weight} must be positive"),
                        json!({ "participant": id }),
                    ));
                }
                self.participants.insert(id.clone(), *weight);
                self.judgments.entry(id.clone()).or_default();
            }
            JournalEvent::Judgment {
                participant,
                row,
                col,
                value,
            } => {
                self.ensure_open()?;
                if !self.participants.contains_key(participant) {
                    return Err(ServiceError::not_found(
                        "unknown_participant",
                        format!("participant {participant} is not registered"),
                        json!({ "participant": participant }),
                    ));
                }
                let n = self.items.len();
                if !(*row >= 1 && row < col && *col <= n) {
                    return Err(unknown_pair(*row, *col));
                }
                let v = snap_to_saaty(value.0).ok_or_else(|| invalid_value(value.0))?;
                self.judgments
                    .entry(participant.clone())
                    .or_default()
                    .insert((row - 1, col - 1), v);
            }
            JournalEvent::Finalize { force } => {
                self.ensure_open()?;
                self.finalized = Some(self.finalize_file(*force)?);
                self.status = Status::Finalized;
            }
        }
        self.journal.push(event);
        Ok(())
    }

    /// Resolves a judgment request into its canonical journal event.
    pub fn judgment_event(&self, req: &JudgmentRequest) -> Result<JournalEvent, ServiceError> {
        let row = req.row.resolve(&self.items);
        let col = req.col.resolve(&self.items);
        let (Some(row), Some(col)) = (row, col) else {
            return Err(ServiceError::bad_request(
                "unknown_pair",
                format!("pair ({}, {}) is not part of this session", req.row, req.col),
                json!({ "row": req.row, "col": req.col }),
            ));
        };
        if row == col {
            return Err(unknown_pair(row + 1, col + 1));
        }
        let v = snap_to_saaty(req.value.0).ok_or_else(|| invalid_value(req.value.0))?;
        let c = Judgment::new(row, col, v).canonical();
        let value = snap_to_saaty(c.value).expect("reciprocal of a scale value");
        Ok(JournalEvent::Judgment {
            participant: req.participant.clone(),
            row: c.row + 1,
            col: c.col + 1,
            value: JudgmentValue(value),
        })
    }

    fn matrix_of(&self, participant: &str) -> Option<PairwiseMatrix> {
        let store = self.judgments.get(participant)?;
        if store.len() < pair_count(self.items.len()) {
            return None;
        }
        let judgments: Vec<Judgment> = store.iter().map(|(&(i, j), &v)| Judgment::new(i, j, v)).collect();
        PairwiseMatrix::build(self.items.clone(), &judgments, Scale::Saaty).ok()
    }

    fn participant_state(&self, participant: &str) -> ParticipantState {
        let total = pair_count(self.items.len());
        let store = self.judgments.get(participant);
        let answered = store.map_or(0, |s| s.len());
        let missing = canonical_pairs(self.items.len())
            .filter(|p| store.is_none_or(|s| !s.contains_key(p)))
            .map(|(i, j)| self.pair_ref(i, j))
            .collect();
        let mut state = ParticipantState {
            participant: participant.to_string(),
            weight: self.participants.get(participant).copied().unwrap_or(1.0),
            answered,
            total,
            complete: answered == total,
            missing,
            priorities: None,
            cr: None,
            passed: None,
            triads: None,
        };
        if let Some(m) = self.matrix_of(participant) {
            if let Ok(p) = derive_priorities(&m, self.method) {
                state.cr = Some(p.cr);
                state.passed = Some(p.is_consistent());
                state.priorities = Some(p);
            }
            state.triads = Some(
                most_inconsistent_triads(&m, TRIADS_SHOWN)
                    .into_iter()
                    .filter(|t| t.score > TRIAD_EPSILON)
                    .map(|t| TriadView {
                        rows: [t.i + 1, t.j + 1, t.l + 1],
                        items: [self.items[t.i].clone(), self.items[t.j].clone(), self.items[t.l].clone()],
                        score: t.score,
                        implied: t.implied,
                        entered: t.entered,
                    })
                    .collect(),
            );
        }
        state
    }

    fn complete_participants(&self) -> Vec<(String, f64, PairwiseMatrix)> {
        self.participants
            .iter()
            .filter_map(|(id, &w)| self.matrix_of(id).map(|m| (id.clone(), w, m)))
            .collect()
    }

    fn group_of(&self, members: &[(String, f64, PairwiseMatrix)]) -> Result<GroupResult, ServiceError> {
        let raw: Vec<f64> = members.iter().map(|m| m.1).collect();
        let weights = normalize_weights(&raw).map_err(|e| ServiceError::internal(e.to_string()))?;
        let participants: Vec<(String, PairwiseMatrix)> = members.iter().map(|m| (m.0.clone(), m.2.clone())).collect();
        evaluate_group(&participants, &weights, self.method).map_err(|e| ServiceError::internal(e.to_string()))
    }

    fn live_group(&self) -> Option<GroupResult> {
        let members = self.complete_participants();
        if members.len() < 2 {
            return None;
        }
        self.group_of(&members).ok()
    }

    pub fn state(&self) -> SessionState {
        SessionState {
            session_id: self.id.clone(),
            hierarchy: self.hierarchy.clone(),
            node: self.node.clone(),
            items: self.items.clone(),
            method: self.method,
            status: self.status,
            participants: self.participants.keys().map(|p| self.participant_state(p)).collect(),
            group: self.live_group(),
        }
    }

    fn finalize_file(&self, force: bool) -> Result<SessionFile, ServiceError> {
        if self.participants.is_empty() {
            return Err(ServiceError::conflict(
                "finalize_refused",
                "session has no participants",
                json!({ "incomplete": {} }),
            ));
        }
        let mut incomplete = serde_json::Map::new();
        for id in self.participants.keys() {
            let s = self.participant_state(id);
            if !s.complete {
                incomplete.insert(id.clone(), serde_json::to_value(&s.missing).expect("pairs serialize"));
            }
        }
        if !incomplete.is_empty() {
            return Err(ServiceError::conflict(
                "finalize_refused",
                format!("{} participant(s) have incomplete matrices", incomplete.len()),
                json!({ "incomplete": incomplete }),
            ));
        }

        let members = self.complete_participants();
        let group = self.group_of(&members)?;
        let inconsistent: Vec<(String, f64)> = group
            .individual
            .iter()
            .filter(|r| !r.priorities.is_consistent())
            .map(|r| (r.participant.clone(), r.priorities.cr))
            .collect();
        let mut warnings = Vec::new();
        if !inconsistent.is_empty() {
            let listing: serde_json::Map<String, serde_json::Value> =
                inconsistent.iter().map(|(p, cr)| (p.clone(), json!(cr))).collect();
            if !force {
                let summary: Vec<String> = inconsistent.iter().map(|(p, cr)| format!("{p} (cr = {cr:.2})")).collect();
                return Err(ServiceError::conflict(
                    "finalize_refused",
                    format!("consistency ratio at or above 0.10: {}", summary.join(", ")),
                    json!({ "inconsistent": listing }),
                ));
            }
            for (p, cr) in &inconsistent {
                warnings.push(format!("participant {p} finalized with cr = {cr:.4} (>= 0.10) by force"));
            }
        }
        if let Some(notice) = &group.consensus.notice {
            warnings.push(notice.clone());
        }

        let n = self.items.len();
        let participants = members
            .iter()
            .zip(&group.individual)
            .map(|((id, _, m), r)| ParticipantRecord {
                id: id.clone(),
                weight: Some(r.weight),
                judgments: m.judgments().iter().map(JudgmentRecord::from_judgment).collect(),
            })
            .collect();
        debug_assert!(members.iter().all(|m| m.2.n() == n));
        Ok(SessionFile {
            node: self.node.clone(),
            hierarchy: Some(self.hierarchy.clone()),
            items: self.items.clone(),
            participants,
            result: Some(group),
            forced: !inconsistent.is_empty(),
            warnings,
        })
    }
}

fn unknown_pair(row: usize, col: usize) -> ServiceError {
    ServiceError::bad_request(
        "unknown_pair",
        format!("pair ({row}, {col}) is not part of this session"),
        json!({ "row": row, "col": col }),
    )
}

fn invalid_value(value: f64) -> ServiceError {
    ServiceError::unprocessable(
        "invalid_value",
        format!("{value} is not on the 1..9 scale or a reciprocal of it"),
        json!({ "value": value }),
    )
}

/// All live sessions, optionally backed by a journal directory.
pub struct SessionManager {
    hierarchies: IndexMap<String, CriteriaHierarchy>,
    journal_dir: Option<PathBuf>,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
}

impl SessionManager {
    pub fn new(hierarchies: Vec<CriteriaHierarchy>, journal_dir: Option<PathBuf>) -> Self {
        Self {
            hierarchies: hierarchies.into_iter().map(|h| (h.name.clone(), h)).collect(),
            journal_dir,
            sessions: RwLock::new(HashMap::new()),
        }
    }

    fn journal_path(&self, id: &str) -> Option<PathBuf> {
        self.journal_dir.as_ref().map(|d| d.join(format!("{id}.journal.jsonl")))
    }

    fn append(&self, id: &str, event: &JournalEvent) -> Result<(), ServiceError> {
        let Some(path) = self.journal_path(id) else {
            return Ok(());
        };
        let io = |e: std::io::Error| ServiceError::internal(format!("journal {}: {e}", path.display()));
        let mut f = OpenOptions::new().create(true).append(true).open(&path).map_err(io)?;
        let mut line = serde_json::to_string(event).expect("event serializes");
        line.push('\n');
        f.write_all(line.as_bytes()).map_err(io)?;
        f.sync_data().map_err(io)
    }

    /// Replays every journal in the journal directory. Returns how many
    /// sessions were restored.
    pub fn recover(&self) -> Result<usize, ServiceError> {
        let Some(dir) = &self.journal_dir else {
            return Ok(0);
        };
        let entries = match fs::read_dir(dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(ServiceError::internal(format!("{}: {e}", dir.display()))),
        };
        let mut restored = 0;
        for entry in entries.flatten() {
            let path = entry.path();
            if !path.to_string_lossy().ends_with(".journal.jsonl") {
                continue;
            }
            let session = Session::replay(read_journal(&path)?)?;
            self.sessions
                .write()
                .expect("session map poisoned")
                .insert(session.id.clone(), Arc::new(Mutex::new(session)));
            restored += 1;
        }
        Ok(restored)
    }

    fn hierarchy(&self, name: Option<&str>) -> Result<&CriteriaHierarchy, ServiceError> {
        match name {
            Some(n) => self.hierarchies.get(n).ok_or_else(|| {
                ServiceError::not_found(
                    "unknown_hierarchy",
                    format!("no hierarchy named {n:?}"),
                    json!({ "available": self.hierarchies.keys().collect::<Vec<_>>() }),
                )
            }),
            None if self.hierarchies.len() == 1 => Ok(&self.hierarchies[0]),
            None => Err(ServiceError::bad_request(
                "hierarchy_required",
                "several hierarchies are loaded; name one",
                json!({ "available": self.hierarchies.keys().collect::<Vec<_>>() }),
            )),
        }
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ServiceError> {
        self.sessions
            .read()
            .expect("session map poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| {
                ServiceError::not_found("unknown_session", format!("no session {id}"), json!({ "session_id": id }))
            })
    }

    /// Applies an event under the session lock: validate on a copy, journal, commit.
    fn mutate<T>(
        &self,
        id: &str,
        build: impl FnOnce(&Session) -> Result<JournalEvent, ServiceError>,
        respond: impl FnOnce(&Session, &JournalEvent) -> T,
    ) -> Result<T, ServiceError> {
        let handle = self.session(id)?;
        let mut session = handle.lock().expect("session poisoned");
        let event = build(&session)?;
        let mut next = session.clone();
        next.apply(event.clone())?;
        self.append(id, &event)?;
        *session = next;
        Ok(respond(&session, &event))
    }

    pub fn create_session(&self, req: &CreateRequest) -> Result<CreatedSession, ServiceError> {
        let h = self.hierarchy(req.hierarchy.as_deref())?;
        let (node, items): (String, Vec<String>) = if req.node == ROOT_NODE {
            (ROOT_NODE.into(), h.categories.iter().map(|c| c.id.clone()).collect())
        } else {
            let cat = h.find_category(&req.node).ok_or_else(|| {
                ServiceError::not_found(
                    "unknown_node",
                    format!("no node {:?} in hierarchy {:?}", req.node, h.name),
                    json!({ "node": req.node }),
                )
            })?;
            (cat.id.clone(), cat.criteria.iter().map(|c| c.id.clone()).collect())
        };
        if items.len() < 2 {
            return Err(ServiceError::bad_request(
                "too_few_items",
                format!("node {node} has fewer than 2 items"),
                json!({ "node": node }),
            ));
        }

        let session_id = uuid::Uuid::new_v4().simple().to_string();
        let event = JournalEvent::Create {
            session_id: session_id.clone(),
            hierarchy: h.name.clone(),
            node,
            items,
            method: req.method.unwrap_or_default(),
        };
        let session = Session::from_create(event.clone())?;
        if let Some(path) = self.journal_path(&session_id) {
            if let Some(dir) = path.parent() {
                fs::create_dir_all(dir).map_err(|e| ServiceError::internal(format!("{}: {e}", dir.display())))?;
            }
            File::create(&path).map_err(|e| ServiceError::internal(format!("{}: {e}", path.display())))?;
            self.append(&session_id, &event)?;
        }
        let created = CreatedSession {
            session_id: session_id.clone(),
            node: session.node.clone(),
            items: session.items.clone(),
            pairs: session.pairs(),
        };
        self.sessions
            .write()
            .expect("session map poisoned")
            .insert(session_id, Arc::new(Mutex::new(session)));
        Ok(created)
    }

    pub fn add_participant(&self, id: &str, req: &ParticipantRequest) -> Result<SessionState, ServiceError> {
        self.mutate(
            id,
            |_| {
                Ok(JournalEvent::Participant {
                    id: req.id.clone(),
                    weight: req.weight.unwrap_or(1.0),
                })
            },
            |s, _| s.state(),
        )
    }

    pub fn submit_judgment(&self, id: &str, req: &JudgmentRequest) -> Result<SubmitResponse, ServiceError> {
        self.mutate(
            id,
            |s| s.judgment_event(req),
            |s, event| {
                let JournalEvent::Judgment {
                    participant,
                    row,
                    col,
                    value,
                } = event
                else {
                    unreachable!("judgment_event builds judgments")
                };
                let ps = s.participant_state(participant);
                SubmitResponse {
                    session_id: s.id.clone(),
                    participant: participant.clone(),
                    row: *row,
                    col: *col,
                    value: *value,
                    participant_state: ps.complete.then_some(ps),
                    group: s.live_group(),
                }
            },
        )
    }

    pub fn state(&self, id: &str) -> Result<SessionState, ServiceError> {
        let handle = self.session(id)?;
        let session = handle.lock().expect("session poisoned");
        Ok(session.state())
    }

    pub fn finalize(&self, id: &str, req: &FinalizeRequest) -> Result<FinalizeResponse, ServiceError> {
        let response = self.mutate(
            id,
            |_| Ok(JournalEvent::Finalize { force: req.force }),
            |s, _| FinalizeResponse {
                session_id: s.id.clone(),
                path: None,
                session: s.finalized.clone().expect("finalize stores the file"),
            },
        )?;
        let path = match &self.journal_dir {
            Some(dir) => {
                let path = dir.join(format!("{id}.session.json"));
                fs::write(&path, response.session.to_json())
                    .map_err(|e| ServiceError::internal(format!("{}: {e}", path.display())))?;
                Some(path.display().to_string())
            }
            None => None,
        };
        Ok(FinalizeResponse { path, ..response })
    }

    /// A copy of the session, for inspection and replay checks.
    pub fn snapshot(&self, id: &str) -> Result<Session, ServiceError> {
        Ok(self.session(id)?.lock().expect("session poisoned").clone())
    }
}

pub fn read_journal(path: &Path) -> Result<Vec<JournalEvent>, ServiceError> {
    let f = File::open(path).map_err(|e| ServiceError::internal(format!("{}: {e}", path.display())))?;
    BufReader::new(f)
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|l| {
            let l = l.map_err(|e| ServiceError::internal(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&l).map_err(|e| ServiceError::internal(format!("{}: {e}", path.display())))
        })
        .collect()
}
