//! The `proofmean` command-line front end.
//!
//! [`run`] takes the argument vector and writes the report to the given
//! streams, returning the process exit code:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success                                   |
//! | 1    | a derivation fails to check, or a budget runs out |
//! | 2    | usage, I/O or parse error                 |
//! | 3    | γ search inconclusive                     |

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::meaning::{
    compare, sense_of, Calculus, Comparison, Derivation, MeaningError, SenseMode, Verdict,
};
use crate::nd::check_nd_nodes;
use crate::rewrite::{
    gamma_normalize, normalize_with_budget, EqualityMode, Limits, RewriteError, DEFAULT_GAMMA_FUEL,
};
use crate::sc::{check_sc_nodes, cut_nodes};
use crate::syntax::{parse_source, ParseError, SourceFile};
use crate::term::Term;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable holding the default γ fuel.
pub const FUEL_ENV: &str = "PROOFMEAN_FUEL";

#[derive(Debug, Parser)]
#[command(
    name = "proofmean",
    version,
    about = "Sense and denotation of derivations"
)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Flags {
    /// Equality used for denotations.
    #[arg(long, value_enum, default_value_t = Mode::BetaEta, global = true)]
    mode: Mode,
    /// Layers of γ search [default: $PROOFMEAN_FUEL or 4].
    #[arg(long, global = true)]
    fuel: Option<usize>,
    /// Count repeated sense elements.
    #[arg(long, global = true)]
    multiset: bool,
    /// Emit one JSON report object.
    #[arg(long, global = true)]
    json: bool,
    /// Rename bound variables canonically in printed terms.
    #[arg(long, global = true)]
    canonical: bool,
    /// Rewrite step budget for normalization.
    #[arg(long, global = true, default_value_t = crate::rewrite::DEFAULT_MAX_STEPS)]
    max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    BetaEta,
    BetaEtaGamma,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a derivation and print its judgment or sequent.
    Check { file: PathBuf },
    /// Print the end-term.
    Term { file: PathBuf },
    /// Print the normal form of the end-term.
    #[command(alias = "denote")]
    Normalize { file: PathBuf },
    /// Print the sense, sorted by size then rendering.
    Sense { file: PathBuf },
    /// Classify a pair of derivations.
    Compare { left: PathBuf, right: PathBuf },
    /// Check every derivation in a directory and classify all pairs.
    Corpus { dir: PathBuf },
    /// Print the derivation as an indented tree of judgments.
    Tree { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Term { .. } => "term",
            Command::Normalize { .. } => "normalize",
            Command::Sense { .. } => "sense",
            Command::Compare { .. } => "compare",
            Command::Corpus { .. } => "corpus",
            Command::Tree { .. } => "tree",
        }
    }

    fn inputs(&self) -> Vec<String> {
        match self {
            Command::Check { file }
            | Command::Term { file }
            | Command::Normalize { file }
            | Command::Sense { file }
            | Command::Tree { file } => vec![file.display().to_string()],
            Command::Compare { left, right } => {
                vec![left.display().to_string(), right.display().to_string()]
            }
            Command::Corpus { dir } => vec![dir.display().to_string()],
        }
    }
}

/// The JSON report: exactly one of `verdict`, `judgment`, `term` or `error`
/// is present.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub judgment: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub details: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub kind: ErrorKind,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Usage,
    Io,
    Parse,
    Check,
    Budget,
    Inconclusive,
}

impl ErrorKind {
    fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage | ErrorKind::Io | ErrorKind::Parse => EXIT_USAGE,
            ErrorKind::Check | ErrorKind::Budget => EXIT_CHECK,
            ErrorKind::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }
}

/// A failure together with the file it concerns.
#[derive(Debug)]
struct Failure {
    kind: ErrorKind,
    message: String,
    file: Option<PathBuf>,
    position: Option<(usize, usize)>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            kind: ErrorKind::Usage,
            message: message.into(),
            file: None,
            position: None,
        }
    }

    fn at(mut self, file: &Path) -> Self {
        self.file.get_or_insert_with(|| file.to_path_buf());
        self
    }

    fn report(&self) -> ErrorReport {
        ErrorReport {
            kind: self.kind,
            message: self.message.clone(),
            file: self.file.as_ref().map(|f| f.display().to_string()),
            line: self.position.map(|p| p.0),
            column: self.position.map(|p| p.1),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{}:", file.display())?;
            if self.position.is_none() {
                f.write_str(" ")?;
            }
        }
        f.write_str(&self.message)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            kind: ErrorKind::Parse,
            message: e.to_string(),
            file: None,
            position: Some(e.position()),
        }
    }
}

impl From<MeaningError> for Failure {
    fn from(e: MeaningError) -> Self {
        let kind = match &e {
            MeaningError::Check(_) => ErrorKind::Check,
            MeaningError::Rewrite(RewriteError::Inconclusive { .. }) => ErrorKind::Inconclusive,
            MeaningError::Rewrite(RewriteError::FuelExhausted { .. }) => ErrorKind::Budget,
        };
        Failure {
            kind,
            message: e.to_string(),
            file: None,
            position: None,
        }
    }
}

impl From<crate::meaning::CheckError> for Failure {
    fn from(e: crate::meaning::CheckError) -> Self {
        MeaningError::from(e).into()
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Self {
        MeaningError::from(e).into()
    }
}

/// Settings shared by all subcommands, resolved from flags and environment.
#[derive(Debug, Clone, Copy)]
struct Settings {
    mode: EqualityMode,
    sense_mode: SenseMode,
    canonical: bool,
    limits: Limits,
}

impl Settings {
    fn resolve(flags: &Flags, env_fuel: Option<String>) -> Result<Self, Failure> {
        let fuel = match (flags.fuel, env_fuel) {
            (Some(n), _) => n,
            (None, Some(s)) => s.trim().parse().map_err(|_| {
                Failure::usage(format!("{FUEL_ENV} must be a positive integer, got `{s}`"))
            })?,
            (None, None) => DEFAULT_GAMMA_FUEL,
        };
        if fuel == 0 {
            return Err(Failure::usage("γ fuel must be positive"));
        }
        let mode = match flags.mode {
            Mode::BetaEta => EqualityMode::BetaEta,
            Mode::BetaEtaGamma => EqualityMode::gamma(fuel),
        };
        Ok(Settings {
            mode,
            sense_mode: if flags.multiset {
                SenseMode::Multiset
            } else {
                SenseMode::Set
            },
            canonical: flags.canonical,
            limits: Limits {
                max_steps: flags.max_steps,
                ..Limits::default()
            },
        })
    }

    fn show(&self, t: &Term) -> String {
        crate::syntax::render_term(t, self.canonical)
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let code = match e.kind() {
                K::DisplayHelp
                | K::DisplayVersion
                | K::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{e}");
                    return if e.kind() == K::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        EXIT_OK
                    };
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let json = cli.flags.json;
    let (report, text, code) = match Settings::resolve(&cli.flags, std::env::var(FUEL_ENV).ok()) {
        Ok(settings) => execute(&cli.command, &settings),
        Err(f) => failure_report(&cli.command, f, json!({})),
    };
    if json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else if code == EXIT_OK {
        let _ = write!(out, "{text}");
    } else {
        // partial results such as a corpus listing still go to stdout
        let _ = write!(out, "{text}");
        if let Some(e) = &report.error {
            let _ = writeln!(err, "error: {}", display_error(e));
        }
    }
    code
}

fn display_error(e: &ErrorReport) -> String {
    match (&e.file, e.line) {
        (Some(f), Some(_)) => format!("{f}:{}", e.message),
        (Some(f), None) => format!("{f}: {}", e.message),
        _ => e.message.clone(),
    }
}

fn failure_report(command: &Command, f: Failure, details: Value) -> (Report, String, i32) {
    let code = f.kind.exit_code();
    let report = Report {
        command: command.name().into(),
        inputs: command.inputs(),
        verdict: None,
        judgment: None,
        term: None,
        error: Some(f.report()),
        details,
    };
    (report, String::new(), code)
}

fn execute(command: &Command, s: &Settings) -> (Report, String, i32) {
    let result = match command {
        Command::Check { file } => check(file, s),
        Command::Term { file } => term(file, s),
        Command::Normalize { file } => normalize(file, s),
        Command::Sense { file } => sense(file, s),
        Command::Compare { left, right } => compare_files(left, right, s),
        Command::Corpus { dir } => return corpus(command, dir, s),
        Command::Tree { file } => tree(file, s),
    };
    match result {
        Ok(Outcome {
            field,
            value,
            details,
            text,
            code,
        }) => {
            let mut report = Report {
                command: command.name().into(),
                inputs: command.inputs(),
                verdict: None,
                judgment: None,
                term: None,
                error: None,
                details,
            };
            *match field {
                Field::Verdict => &mut report.verdict,
                Field::Judgment => &mut report.judgment,
                Field::Term => &mut report.term,
            } = Some(value);
            (report, text, code)
        }
        Err(f) => failure_report(command, f, json!({})),
    }
}

enum Field {
    Verdict,
    Judgment,
    Term,
}

struct Outcome {
    field: Field,
    value: String,
    details: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(field: Field, value: String, details: Value, text: String) -> Self {
        Outcome {
            field,
            value,
            details,
            text,
            code: EXIT_OK,
        }
    }
}

fn calculus_from_extension(path: &Path) -> Option<Calculus> {
    match path.extension()?.to_str()? {
        "nd" => Some(Calculus::Nd),
        "sc" => Some(Calculus::Sc),
        _ => None,
    }
}

fn load(path: &Path) -> Result<SourceFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure {
            kind: ErrorKind::Io,
            message: format!("cannot read: {e}"),
            file: None,
            position: None,
        }
        .at(path)
    })?;
    parse_source(&text, calculus_from_extension(path)).map_err(|e| Failure::from(e).at(path))
}

fn calculus_name(c: Calculus) -> &'static str {
    match c {
        Calculus::Nd => "nd",
        Calculus::Sc => "sc",
    }
}

fn check(path: &Path, s: &Settings) -> Result<Outcome, Failure> {
    let src = load(path)?;
    let c = src
        .derivation
        .check()
        .map_err(|e| Failure::from(e).at(path))?;
    let judgment = format!(
        "{}|- {} : {}",
        if c.context.is_empty() {
            String::new()
        } else {
            format!("{} ", c.context)
        },
        s.show(&c.term),
        c.formula
    );
    let cuts = match &src.derivation {
        Derivation::Sc(d) => cut_nodes(d)
            .into_iter()
            .map(|c| json!({"path": c.path.to_string(), "var": c.var.name(), "principal": c.principal}))
            .collect(),
        Derivation::Nd(_) => vec![],
    };
    let details = json!({
        "calculus": calculus_name(src.calculus()),
        "name": src.name,
        "context": c.context,
        "term": s.show(&c.term),
        "formula": c.formula.to_string(),
        "nodes": src.derivation.node_count(),
        "cuts": cuts,
    });
    let text = format!("{judgment}\n");
    Ok(Outcome::ok(Field::Judgment, judgment, details, text))
}

fn term(path: &Path, s: &Settings) -> Result<Outcome, Failure> {
    let src = load(path)?;
    let c = src
        .derivation
        .check()
        .map_err(|e| Failure::from(e).at(path))?;
    let t = s.show(&c.term);
    let details = json!({
        "calculus": calculus_name(src.calculus()),
        "formula": c.formula.to_string(),
        "size": c.term.size(),
    });
    Ok(Outcome::ok(
        Field::Term,
        t.clone(),
        details,
        format!("{t}\n"),
    ))
}

fn normalize(path: &Path, s: &Settings) -> Result<Outcome, Failure> {
    let src = load(path)?;
    let c = src
        .derivation
        .check()
        .map_err(|e| Failure::from(e).at(path))?;
    let n = normalize_with_budget(&c.term, s.limits.max_steps)
        .map_err(|e| Failure::from(e).at(path))?;
    let mut details = json!({
        "calculus": calculus_name(src.calculus()),
        "formula": c.formula.to_string(),
        "end_term": s.show(&c.term),
        "mode": mode_name(s.mode),
    });
    if s.mode.is_gamma() {
        let g =
            gamma_normalize(&c.term, s.limits.max_steps).map_err(|e| Failure::from(e).at(path))?;
        details["gamma_normal_form"] = Value::String(s.show(&g));
    }
    let t = s.show(&n);
    Ok(Outcome::ok(
        Field::Term,
        t.clone(),
        details,
        format!("{t}\n"),
    ))
}

fn sense(path: &Path, s: &Settings) -> Result<Outcome, Failure> {
    let src = load(path)?;
    let c = src
        .derivation
        .check()
        .map_err(|e| Failure::from(e).at(path))?;
    let sense = sense_of(&src.derivation, s.sense_mode).map_err(|e| Failure::from(e).at(path))?;
    let mut text = String::new();
    let mut elements = Vec::new();
    for (t, n) in sense.sorted_with_counts() {
        let shown = s.show(t);
        match s.sense_mode {
            SenseMode::Set => text.push_str(&format!("{shown}\n")),
            SenseMode::Multiset => text.push_str(&format!("{n}\t{shown}\n")),
        }
        elements.push(json!({"term": shown, "count": n}));
    }
    let details = json!({
        "calculus": calculus_name(src.calculus()),
        "formula": c.formula.to_string(),
        "sense_mode": s.sense_mode,
        "size": sense.len(),
        "sense": elements,
    });
    Ok(Outcome::ok(Field::Term, s.show(&c.term), details, text))
}

fn mode_name(m: EqualityMode) -> String {
    match m {
        EqualityMode::BetaEta => "beta-eta".into(),
        EqualityMode::BetaEtaGamma { fuel } => format!("beta-eta-gamma:{fuel}"),
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::SameDenotationUpToGamma { inconclusive: true } => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    }
}

fn comparison_details(c: &Comparison, same_sign: bool, s: &Settings) -> Value {
    let renaming: BTreeMap<&str, &str> = c
        .renaming
        .iter()
        .flatten()
        .map(|(a, b)| (a.name(), b.name()))
        .collect();
    json!({
        "mode": mode_name(s.mode),
        "sense_mode": s.sense_mode,
        "same_sign": same_sign,
        "same_sense": c.renaming.is_some(),
        "renaming": if c.renaming.is_some() { json!(renaming) } else { Value::Null },
        "only_left": c.only_left.iter().map(|t| s.show(t)).collect::<Vec<_>>(),
        "only_right": c.only_right.iter().map(|t| s.show(t)).collect::<Vec<_>>(),
        "normal_forms": [s.show(&c.normal_forms.0), s.show(&c.normal_forms.1)],
        "formulas": [c.formulas.0.to_string(), c.formulas.1.to_string()],
        "inconclusive": matches!(c.verdict, Verdict::SameDenotationUpToGamma { inconclusive: true }),
    })
}

fn compare_files(left: &Path, right: &Path, s: &Settings) -> Result<Outcome, Failure> {
    let l = load(left)?;
    let r = load(right)?;
    l.derivation
        .check()
        .map_err(|e| Failure::from(e).at(left))?;
    r.derivation
        .check()
        .map_err(|e| Failure::from(e).at(right))?;
    let c = compare(
        &l.derivation,
        &r.derivation,
        s.mode,
        s.sense_mode,
        &s.limits,
    )?;
    // the sign is the derivation itself; names in headers are not part of it
    let same_sign = l.derivation == r.derivation;

    let mut text = format!("{}\n", c.verdict);
    text.push_str(&format!(
        "same sign: {}\n",
        if same_sign { "yes" } else { "no" }
    ));
    match &c.renaming {
        Some(rho) => {
            let pairs: Vec<String> = rho.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
            text.push_str(&format!("renaming: {}\n", pairs.join(", ")));
        }
        None => {
            let show = |ts: &[Term]| ts.iter().map(|t| s.show(t)).collect::<Vec<_>>().join(", ");
            text.push_str(&format!("only left: {{{}}}\n", show(&c.only_left)));
            text.push_str(&format!("only right: {{{}}}\n", show(&c.only_right)));
        }
    }
    text.push_str(&format!(
        "normal forms:\n  {}\n  {}\n",
        s.show(&c.normal_forms.0),
        s.show(&c.normal_forms.1)
    ));
    let details = comparison_details(&c, same_sign, s);
    Ok(Outcome {
        field: Field::Verdict,
        value: c.verdict.to_string(),
        details,
        text,
        code: verdict_code(c.verdict),
    })
}

fn tree(path: &Path, s: &Settings) -> Result<Outcome, Failure> {
    let src = load(path)?;
    let mut nodes: Vec<(crate::node::NodePath, String, String)> = match &src.derivation {
        Derivation::Nd(d) => {
            let checked = check_nd_nodes(d)
                .map_err(|e| Failure::from(crate::meaning::CheckError::from(e)).at(path))?;
            let rules = nd_rules(d);
            checked
                .into_iter()
                .map(|(p, j)| {
                    let open = if j.open.is_empty() {
                        String::new()
                    } else {
                        format!("{} ", j.open)
                    };
                    let rule = rules[&p].to_string();
                    (
                        p,
                        rule,
                        format!("{open}|- {} : {}", s.show(&j.term), j.formula),
                    )
                })
                .collect()
        }
        Derivation::Sc(d) => {
            let checked = check_sc_nodes(d)
                .map_err(|e| Failure::from(crate::meaning::CheckError::from(e)).at(path))?;
            let rules = sc_rules(d);
            checked
                .into_iter()
                .map(|(p, q)| {
                    let ante = if q.antecedent.is_empty() {
                        String::new()
                    } else {
                        format!("{} ", q.antecedent)
                    };
                    let rule = rules[&p].to_string();
                    (
                        p,
                        rule,
                        format!("{ante}|- {} : {}", s.show(&q.term), q.succedent),
                    )
                })
                .collect()
        }
    };
    nodes.sort_by(|a, b| a.0.cmp(&b.0));
    let mut text = String::new();
    let mut listed = Vec::new();
    for (p, rule, j) in &nodes {
        text.push_str(&format!("{}{rule}: {j}\n", "  ".repeat(p.depth())));
        listed.push(json!({"path": p.to_string(), "rule": rule, "judgment": j}));
    }
    let root = nodes.first().map(|n| n.2.clone()).unwrap_or_default();
    let details = json!({
        "calculus": calculus_name(src.calculus()),
        "nodes": listed,
    });
    Ok(Outcome::ok(Field::Judgment, root, details, text))
}

fn nd_rules(d: &crate::nd::NdDerivation) -> BTreeMap<crate::node::NodePath, crate::nd::NdRule> {
    fn go(
        d: &crate::nd::NdDerivation,
        p: crate::node::NodePath,
        out: &mut BTreeMap<crate::node::NodePath, crate::nd::NdRule>,
    ) {
        for (i, c) in d.premises().into_iter().enumerate() {
            go(c, p.child(i), out);
        }
        out.insert(p, d.rule());
    }
    let mut out = BTreeMap::new();
    go(d, crate::node::NodePath::root(), &mut out);
    out
}

fn sc_rules(d: &crate::sc::ScDerivation) -> BTreeMap<crate::node::NodePath, crate::sc::ScRule> {
    fn go(
        d: &crate::sc::ScDerivation,
        p: crate::node::NodePath,
        out: &mut BTreeMap<crate::node::NodePath, crate::sc::ScRule>,
    ) {
        for (i, c) in d.premises().into_iter().enumerate() {
            go(c, p.child(i), out);
        }
        out.insert(p, d.rule());
    }
    let mut out = BTreeMap::new();
    go(d, crate::node::NodePath::root(), &mut out);
    out
}

/// One file of a corpus run.
struct Entry {
    file: String,
    result: Result<(SourceFile, crate::meaning::Conclusion), Failure>,
}

fn corpus(command: &Command, dir: &Path, s: &Settings) -> (Report, String, i32) {
    let listing = match std::fs::read_dir(dir) {
        Ok(entries) => entries,
        Err(e) => {
            let f = Failure {
                kind: ErrorKind::Io,
                message: format!("cannot read directory: {e}"),
                file: Some(dir.to_path_buf()),
                position: None,
            };
            return failure_report(command, f, json!({}));
        }
    };
    let mut paths: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| calculus_from_extension(p).is_some())
        .collect();
    paths.sort();

    let entries: Vec<Entry> = paths
        .par_iter()
        .map(|p| Entry {
            file: p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            result: load(p).and_then(|src| {
                let c = src.derivation.check().map_err(|e| Failure::from(e).at(p))?;
                Ok((src, c))
            }),
        })
        .collect();

    let good: Vec<(usize, &SourceFile)> = entries
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.result.as_ref().ok().map(|(src, _)| (i, src)))
        .collect();
    let mut pairs = Vec::new();
    for (a, (i, _)) in good.iter().enumerate() {
        for (j, _) in &good[a + 1..] {
            pairs.push((*i, *j));
        }
    }
    let classified: Vec<(usize, usize, Result<Comparison, Failure>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let d1 = &entries[i].result.as_ref().expect("checked").0.derivation;
            let d2 = &entries[j].result.as_ref().expect("checked").0.derivation;
            (
                i,
                j,
                compare(d1, d2, s.mode, s.sense_mode, &s.limits).map_err(Failure::from),
            )
        })
        .collect();

    let mut code = EXIT_OK;
    let mut worst = |c: i32| {
        // usage beats check failure beats inconclusive
        let rank = |c: i32| match c {
            EXIT_USAGE => 3,
            EXIT_CHECK => 2,
            EXIT_INCONCLUSIVE => 1,
            _ => 0,
        };
        if rank(c) > rank(code) {
            code = c;
        }
    };

    let mut text = String::new();
    let mut files = Vec::new();
    for e in &entries {
        match &e.result {
            Ok((src, c)) => {
                text.push_str(&format!(
                    "{}\tok\t{}\t{}\n",
                    e.file,
                    c.formula,
                    s.show(&c.term)
                ));
                files.push(json!({
                    "file": e.file,
                    "ok": true,
                    "calculus": calculus_name(src.calculus()),
                    "name": src.name,
                    "formula": c.formula.to_string(),
                    "term": s.show(&c.term),
                }));
            }
            Err(f) => {
                worst(f.kind.exit_code());
                text.push_str(&format!("{}\terror\t{}\n", e.file, f.message));
                files.push(json!({"file": e.file, "ok": false, "error": f.report()}));
            }
        }
    }
    let mut matrix = Vec::new();
    for (i, j, r) in &classified {
        let (l, rname) = (&entries[*i].file, &entries[*j].file);
        match r {
            Ok(c) => {
                worst(verdict_code(c.verdict));
                text.push_str(&format!("{l}\t{rname}\t{}\n", c.verdict));
                matrix.push(json!({"left": l, "right": rname, "verdict": c.verdict.to_string()}));
            }
            Err(f) => {
                worst(f.kind.exit_code());
                text.push_str(&format!("{l}\t{rname}\terror\t{}\n", f.message));
                matrix.push(json!({"left": l, "right": rname, "error": f.report()}));
            }
        }
    }
    let failed = entries.iter().filter(|e| e.result.is_err()).count();
    let summary = format!(
        "{} files, {} checked, {} failed",
        entries.len(),
        entries.len() - failed,
        failed
    );
    let report = Report {
        command: command.name().into(),
        inputs: command.inputs(),
        verdict: None,
        judgment: Some(summary),
        term: None,
        error: None,
        details: json!({
            "mode": mode_name(s.mode),
            "sense_mode": s.sense_mode,
            "files": files,
            "pairs": matrix,
        }),
    };
    (report, text, code)
}
