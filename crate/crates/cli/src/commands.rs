//! Subcommands. Each returns an [`Outcome`]; `main` only prints and exits.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use isgcoh::cochain::CochainError;
use isgcoh::cohomology::{cohomology, EnumerationConfig, Subcomplex, DEFAULT_BUDGET};
use isgcoh::correspondence::{
    roundtrip_extension, theorem_harness, CorrespondenceError, HarnessConfig, RoundTripReport,
};
use isgcoh::cover::{build_extension_from_cocycle, Mode};
use isgcoh::crossed::SamplerConfig;
use isgcoh::extraction::{canonical_cover_transversals, TransversalKind};
use isgcoh::report::Report;
use isgcoh::tmodule::TModule;
use serde::Serialize;
use serde_json::json;

use crate::format::{load_cochain, load_module, load_semigroup, CochainSpec, FormatError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Failure before a report could be produced.
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl ToString) -> Self {
        Self {
            code,
            kind,
            message: message.to_string(),
        }
    }

    fn into_outcome(self, json: bool) -> Outcome {
        if json {
            let body =
                json!({ "error": self.kind, "message": self.message, "exit_code": self.code });
            Outcome {
                stdout: pretty(&body),
                code: self.code,
                ..Outcome::default()
            }
        } else {
            Outcome {
                stderr: format!("error ({}): {}\n", self.kind, self.message),
                code: self.code,
                ..Outcome::default()
            }
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let kind = match e {
            FormatError::Io { .. } => "io",
            FormatError::Parse { .. } => "parse",
            _ => "validation",
        };
        Failure::new(EXIT_FAIL, kind, e)
    }
}

impl From<CochainError> for Failure {
    fn from(e: CochainError) -> Self {
        match e {
            CochainError::BudgetExceeded { .. } => Failure::new(EXIT_BUDGET, "budget", e),
            _ => Failure::new(EXIT_FAIL, "validation", e),
        }
    }
}

impl From<CorrespondenceError> for Failure {
    fn from(e: CorrespondenceError) -> Self {
        match e {
            CorrespondenceError::NotFInverse => Failure::new(EXIT_PRECONDITION, "not-f-inverse", e),
            CorrespondenceError::Cochain(c) => c.into(),
            CorrespondenceError::CohomologyWitnessNotFound => Failure::new(EXIT_FAIL, "stage", e),
            other => Failure::new(EXIT_FAIL, "stage", other),
        }
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_violations(out: &mut String, r: &Report) {
    for v in &r.violations {
        let _ = writeln!(out, "  {} at ({})", v.axiom, v.witness.join(", "));
    }
    if r.failed > r.violations.len() {
        let _ = writeln!(out, "  … {} more", r.failed - r.violations.len());
    }
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Semigroup T as {"elements": [...], "table": [[...]]}.
    #[arg(long)]
    pub semigroup: PathBuf,
    /// T-module A over T.
    #[arg(long)]
    pub module: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerationArgs {
    /// Largest number of cochains an enumeration may visit.
    #[arg(long, env = "ISGCOH_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl EnumerationArgs {
    fn config(&self) -> EnumerationConfig {
        EnumerationConfig {
            budget: self.budget,
            jobs: self.jobs,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub semigroup: PathBuf,
    #[arg(long)]
    pub module: Option<PathBuf>,
    /// Cochain files to validate against the module (repeatable).
    #[arg(long, requires = "module")]
    pub cochain: Vec<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Serialize)]
struct CochainSummary {
    path: String,
    degree: usize,
    cocycle: bool,
    order_preserving: bool,
    normalized: bool,
    strongly_normalized: bool,
}

pub fn validate(args: &ValidateArgs) -> Outcome {
    match run_validate(args) {
        Ok(o) => o,
        Err(f) => f.into_outcome(args.json),
    }
}

fn run_validate(args: &ValidateArgs) -> Result<Outcome, Failure> {
    let t = load_semigroup(&args.semigroup)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "semigroup {}: valid ({} elements, {} idempotents, F-inverse monoid: {})",
        args.semigroup.display(),
        t.len(),
        t.idempotents().len(),
        yes(t.is_f_inverse_monoid())
    );
    let mut valid = true;
    let mut module_json = serde_json::Value::Null;
    let mut cochains = Vec::new();
    if let Some(path) = &args.module {
        let module = load_module(path, &t)?;
        let report = module.validate();
        valid &= report.is_ok();
        let _ = writeln!(
            text,
            "module {}: {} ({} checks, {} failed)",
            path.display(),
            if report.is_ok() { "valid" } else { "invalid" },
            report.checks,
            report.failed
        );
        write_violations(&mut text, &report);
        module_json = json!({ "path": path.display().to_string(), "valid": report.is_ok(), "report": report });
        for path in &args.cochain {
            let c = load_cochain(path, &module)?;
            let summary = CochainSummary {
                path: path.display().to_string(),
                degree: c.degree(),
                cocycle: module.is_cocycle(&c),
                order_preserving: module.is_order_preserving(&c),
                normalized: c.degree() <= 3 && module.is_normalized(&c),
                strongly_normalized: module.is_strongly_normalized(&c),
            };
            let _ = writeln!(
                text,
                "cochain {}: valid (degree {}; cocycle: {}; order-preserving: {}; normalized: {}; strongly normalized: {})",
                summary.path,
                summary.degree,
                yes(summary.cocycle),
                yes(summary.order_preserving),
                yes(summary.normalized),
                yes(summary.strongly_normalized)
            );
            cochains.push(summary);
        }
    }
    let _ = writeln!(text, "{}", if valid { "valid" } else { "invalid" });
    let stdout = if args.json {
        pretty(&json!({
            "valid": valid,
            "semigroup": {
                "path": args.semigroup.display().to_string(),
                "elements": t.len(),
                "idempotents": t.idempotents().len(),
                "f_inverse_monoid": t.is_f_inverse_monoid(),
            },
            "module": module_json,
            "cochains": cochains,
        }))
    } else {
        text
    };
    Ok(Outcome {
        stdout,
        code: if valid { EXIT_PASS } else { EXIT_FAIL },
        ..Outcome::default()
    })
}

fn load_valid_module(args: &InstanceArgs) -> Result<TModule, Failure> {
    let t = load_semigroup(&args.semigroup)?;
    let module = load_module(&args.module, &t)?;
    let report = module.validate();
    if !report.is_ok() {
        let mut msg = format!("{}: not a T-module\n", args.module.display());
        write_violations(&mut msg, &report);
        return Err(Failure::new(EXIT_FAIL, "validation", msg.trim_end()));
    }
    Ok(module)
}

#[derive(Debug, Clone, Args)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Degree n of Hⁿ.
    #[arg(short = 'n', long = "degree", default_value_t = 3)]
    pub degree: usize,
    /// Use the subcomplex of order-preserving cochains.
    #[arg(long)]
    pub order_preserving: bool,
    #[command(flatten)]
    pub enumeration: EnumerationArgs,
    #[arg(long)]
    pub json: bool,
}

pub fn cohomology_cmd(args: &CohomologyArgs) -> Outcome {
    match run_cohomology(args) {
        Ok(o) => o,
        Err(f) => f.into_outcome(args.json),
    }
}

fn run_cohomology(args: &CohomologyArgs) -> Result<Outcome, Failure> {
    let module = load_valid_module(&args.instance)?;
    let kind = if args.order_preserving {
        Subcomplex::OrderPreserving
    } else {
        Subcomplex::Full
    };
    let r = cohomology(&module, args.degree, kind, &args.enumeration.config())?;
    let reps: Vec<CochainSpec> = r
        .representatives
        .iter()
        .map(|c| CochainSpec::render(&module, c))
        .collect();
    let stdout = if args.json {
        pretty(&json!({
            "degree": r.degree,
            "subcomplex": r.subcomplex,
            "cochains": r.cochains,
            "cocycles": r.cocycles,
            "coboundaries": r.coboundaries,
            "order": r.order,
            "unquotiented": r.unquotiented,
            "representatives": reps,
        }))
    } else {
        let mut s = String::new();
        let label = if args.order_preserving {
            "order-preserving"
        } else {
            "full"
        };
        let _ = writeln!(s, "H^{} over the {} complex", r.degree, label);
        let _ = writeln!(s, "  cochains:     {}", r.cochains);
        let _ = writeln!(s, "  cocycles:     {}", r.cocycles);
        let _ = writeln!(s, "  coboundaries: {}", r.coboundaries);
        let _ = writeln!(s, "  |H^{}|:        {}", r.degree, r.order);
        if r.unquotiented {
            let _ = writeln!(s, "  (degree 1: no coboundaries are quotiented out)");
        }
        let _ = writeln!(s, "representatives:");
        for (i, rep) in reps.iter().enumerate() {
            let entries: Vec<String> = rep
                .entries
                .iter()
                .map(|(k, v)| format!("({k}) = {v}"))
                .collect();
            let body = if entries.is_empty() {
                "trivial".to_string()
            } else {
                entries.join(", ")
            };
            let _ = writeln!(s, "  [{i}] {body}");
        }
        s
    };
    Ok(Outcome {
        stdout,
        ..Outcome::default()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    /// Normalize, build, re-extract through F-inverse transversals, compare classes.
    Theorem,
    /// Build, extract, rebuild, and check the equivalence back into the extension.
    Extension,
}

#[derive(Debug, Clone, Args)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Order-preserving 3-cocycle.
    #[arg(long)]
    pub cocycle: PathBuf,
    #[arg(long, value_enum, default_value_t = Pipeline::Theorem)]
    pub mode: Pipeline,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub max_word_len: usize,
    /// Samples per sampled invariant.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Evaluate λ both recursively and in closed form, counting disagreements.
    #[arg(long)]
    pub checked: bool,
    #[command(flatten)]
    pub enumeration: EnumerationArgs,
    #[arg(long)]
    pub json: bool,
}

pub fn roundtrip(args: &RoundtripArgs) -> Outcome {
    match run_roundtrip(args) {
        Ok(o) => o,
        Err(f) => f.into_outcome(args.json),
    }
}

fn run_roundtrip(args: &RoundtripArgs) -> Result<Outcome, Failure> {
    let module = load_valid_module(&args.instance)?;
    let c = load_cochain(&args.cocycle, &module)?;
    if c.degree() != 3 || !module.is_cocycle(&c) || !module.is_order_preserving(&c) {
        return Err(Failure::new(
            EXIT_FAIL,
            "validation",
            format!(
                "{}: not an order-preserving 3-cocycle",
                args.cocycle.display()
            ),
        ));
    }
    let mode = if args.checked {
        Mode::Checked
    } else {
        Mode::Fast
    };
    let sampler = SamplerConfig {
        seed: args.seed,
        max_word_len: args.max_word_len,
        samples: args.samples,
    };
    let report = match args.mode {
        Pipeline::Theorem => {
            let cfg = HarnessConfig {
                sampler,
                enumeration: args.enumeration.config(),
                mode,
            };
            theorem_harness(&module, &c, &cfg)?
        }
        Pipeline::Extension => {
            if !module.base().is_f_inverse_monoid() {
                return Err(CorrespondenceError::NotFInverse.into());
            }
            let (normalized, _) = module.normalize_cocycle(&c)?;
            let ext = build_extension_from_cocycle(&module, &normalized, mode)
                .map_err(|e| Failure::new(EXIT_FAIL, "stage", e))?;
            let tr = canonical_cover_transversals(&ext, TransversalKind::FInverse)
                .map_err(CorrespondenceError::from)?;
            let mut r = roundtrip_extension(&ext, &module, &tr, &sampler, mode)?;
            r.input = Some(module.render_cochain(&c));
            r.normalized = Some(module.render_cochain(&normalized));
            r
        }
    };
    let stdout = if args.json {
        pretty(&report)
    } else {
        render_roundtrip(&report)
    };
    Ok(Outcome {
        stdout,
        code: if report.passed { EXIT_PASS } else { EXIT_FAIL },
        ..Outcome::default()
    })
}

fn render_entries(entries: &std::collections::BTreeMap<String, String>) -> String {
    if entries.is_empty() {
        "trivial".into()
    } else {
        entries
            .iter()
            .map(|(k, v)| format!("({k}) = {v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn render_roundtrip(r: &RoundTripReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "pipeline {} (mode {}, seed {}, max word length {}, {} samples)",
        r.pipeline, r.mode, r.seed, r.max_word_len, r.samples
    );
    if let Some(input) = &r.input {
        let _ = writeln!(s, "input:      {}", render_entries(input));
    }
    if let Some(n) = &r.normalized {
        let _ = writeln!(s, "normalized: {}", render_entries(n));
    }
    let _ = writeln!(s, "extracted:  {}", render_entries(&r.extracted));
    if let (Some(w), Some(route)) = (&r.witness, &r.witness_route) {
        let route = serde_json::to_value(route).expect("serializable");
        let _ = writeln!(
            s,
            "witness d′ ({}): {}",
            route.as_str().unwrap_or(""),
            render_entries(w)
        );
    }
    for stage in &r.stages {
        let _ = writeln!(
            s,
            "  {:<36} {} ({} checks)",
            stage.stage,
            if stage.passed { "pass" } else { "FAIL" },
            stage.checks
        );
        for v in &stage.violations {
            let _ = writeln!(s, "      {} at ({})", v.axiom, v.witness.join(", "));
        }
    }
    let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
    s
}
