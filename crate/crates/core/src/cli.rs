//! `ahp-readiness <validate|weights|score|sensitivity|serve>`.
//!
//! Exit codes: 0 success, 1 domain failure, 2 I/O or parse failure.

use std::ffi::OsString;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use chrono::Utc;
use clap::{Args, Parser, Subcommand};

use crate::group::ConsensusLevel;
use crate::hierarchy::{validate_hierarchy, CriteriaHierarchy, HierarchyError};
use crate::pairwise::Method;
use crate::report::{fmt_fixed, report_file_name, Format, Report};
use crate::scoring::{assess, sensitivity, Assessment, ScoringError};
use crate::service::{http, SessionManager};
use crate::sessions::{derive_hierarchy_weights, SessionFile, WeightOptions, WeightsError};

pub const OUT_ENV: &str = "AHP_READINESS_OUT";
pub const WEIGHTS_FILE: &str = "weights.json";

#[derive(Debug, Parser)]
#[command(name = "ahp-readiness", version, about = "Group AHP weighting and readiness scoring")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a hierarchy file; prints one violation per line.
    Validate {
        path: Option<PathBuf>,
        #[arg(long = "hierarchy", conflicts_with = "path")]
        hierarchy: Option<PathBuf>,
    },
    /// Derive global weights from one session file per node.
    Weights(WeightsArgs),
    /// Score an assessment and write JSON and markdown reports.
    Score(ScoreArgs),
    /// Index gain from raising each criterion one level.
    Sensitivity(InputArgs),
    /// Run the live session service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(long = "sessions", required = true, num_args = 1..)]
    pub sessions: Vec<PathBuf>,
    #[arg(long, default_value = "evm")]
    pub method: Method,
    /// Template hierarchy supplying names and the expected structure.
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
    #[arg(long, env = OUT_ENV)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub allow_inconsistent: bool,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub hierarchy: PathBuf,
    #[arg(long)]
    pub assessment: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Report directory; defaults to the current directory.
    #[arg(long, env = OUT_ENV)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub bind: SocketAddr,
    #[arg(long = "hierarchy", required = true, num_args = 1..)]
    pub hierarchy: Vec<PathBuf>,
    /// Journal and finalized-session directory.
    #[arg(long, env = OUT_ENV)]
    pub out: Option<PathBuf>,
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn domain(message: impl ToString) -> Self {
        Self {
            code: 1,
            message: message.to_string(),
        }
    }

    fn io(message: impl ToString) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<HierarchyError> for Failure {
    fn from(e: HierarchyError) -> Self {
        match e {
            HierarchyError::Invalid(_) => Failure::domain(e),
            HierarchyError::Io { .. } | HierarchyError::Parse(_) => Failure::io(e),
        }
    }
}

impl From<ScoringError> for Failure {
    fn from(e: ScoringError) -> Self {
        match e {
            ScoringError::Hierarchy(h) => h.into(),
            ScoringError::Io { .. } | ScoringError::Parse(_) => Failure::io(e),
            _ => Failure::domain(e),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { path, hierarchy } => {
            let path = path
                .or(hierarchy)
                .ok_or_else(|| Failure::io("validate needs a hierarchy path"))?;
            cmd_validate(&path, out)
        }
        Command::Weights(args) => cmd_weights(&args, out, err),
        Command::Score(args) => cmd_score(&args, out),
        Command::Sensitivity(args) => cmd_sensitivity(&args, out),
        Command::Serve(args) => cmd_serve(&args, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::io(format!("write failed: {e}")))
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> Outcome {
    let h = CriteriaHierarchy::load(path)?;
    let violations = validate_hierarchy(&h);
    if violations.is_empty() {
        return emit(
            out,
            &format!(
                "ok: {} categories, {} criteria\n",
                h.categories.len(),
                h.criterion_count()
            ),
        );
    }
    for v in &violations {
        emit(out, &format!("{v}\n"))?;
    }
    Err(Failure::domain(format!("{} violation(s)", violations.len())))
}

pub fn cmd_weights(args: &WeightsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let template = args.hierarchy.as_deref().map(CriteriaHierarchy::load).transpose()?;
    let sessions = args
        .sessions
        .iter()
        .map(SessionFile::load)
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::io)?;
    let derived = derive_hierarchy_weights(
        &sessions,
        WeightOptions {
            method: args.method,
            allow_inconsistent: args.allow_inconsistent,
            template: template.as_ref(),
        },
    )
    .map_err(|e| match e {
        WeightsError::Hierarchy(h) => Failure::from(h),
        e => Failure::domain(e),
    })?;

    let mut summary = String::new();
    for s in &derived.sessions {
        let c = &s.result.consensus;
        summary.push_str(&format!(
            "{}: cr {} consensus {}% ({}{}){}\n",
            s.node,
            fmt_fixed(s.result.cr, 3),
            fmt_fixed(c.s_star * 100.0, 1),
            c.interpretation.label(),
            if c.interpretation == ConsensusLevel::Acceptable { "" } else { ", below 75%" },
            c.notice.as_deref().map(|n| format!(" note: {n}")).unwrap_or_default(),
        ));
    }
    for w in &derived.warnings {
        emit(err, &format!("warning: {w}\n"))?;
    }
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
            let path = dir.join(WEIGHTS_FILE);
            std::fs::write(&path, derived.to_json()).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
            emit(out, &summary)?;
            emit(out, &format!("wrote {}\n", path.display()))
        }
        None => {
            emit(err, &summary)?;
            emit(out, &derived.to_json())
        }
    }
}

fn load_inputs(args: &InputArgs) -> Result<(CriteriaHierarchy, Assessment), Failure> {
    let h = CriteriaHierarchy::load(&args.hierarchy)?;
    let a = Assessment::load(&args.assessment)?;
    Ok((h, a))
}

pub fn cmd_score(args: &ScoreArgs, out: &mut dyn Write) -> Outcome {
    let (h, a) = load_inputs(&args.input)?;
    let result = assess(&h, &a)?;
    let report = Report::new(&result, Utc::now());
    let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
    for format in [Format::Json, Format::Markdown] {
        let path = dir.join(report_file_name(&result.subject, format));
        std::fs::write(&path, report.render(format)).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    }
    emit(out, &format!("overall {}%\n", fmt_fixed(result.overall_index * 100.0, 1)))
}

pub fn cmd_sensitivity(args: &InputArgs, out: &mut dyn Write) -> Outcome {
    let (h, a) = load_inputs(args)?;
    let result = assess(&h, &a)?;
    let rows = sensitivity(&result);
    if rows.is_empty() {
        return emit(out, "no criterion can be raised\n");
    }
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "{:<6} {:>9} -> {:<9} +{}\n",
            r.criterion_id,
            r.from.to_string(),
            r.to.to_string(),
            fmt_fixed(r.delta, 4)
        ));
    }
    emit(out, &text)
}

pub fn cmd_serve(args: &ServeArgs, out: &mut dyn Write) -> Outcome {
    let hierarchies = args
        .hierarchy
        .iter()
        .map(CriteriaHierarchy::load)
        .collect::<Result<Vec<_>, _>>()?;
    let manager = Arc::new(SessionManager::new(hierarchies, args.out.clone()));
    let restored = manager.recover().map_err(Failure::io)?;
    emit(
        out,
        &format!("listening on http://{} ({restored} session(s) restored)\n", args.bind),
    )?;
    let _ = out.flush();
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::io(format!("runtime: {e}")))?;
    runtime
        .block_on(http::serve(manager, args.bind))
        .map_err(|e| Failure::io(format!("{}: {e}", args.bind)))
}
