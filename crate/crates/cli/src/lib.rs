//! Command implementations for the `qsv` binary. Each command renders its
//! report to a string; `main` only prints and sets the exit code.

pub mod demo;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use qsv_core::audit::{run_law_audit, AuditSummary, Execution};
use qsv_core::hilbert::{StateVector, C64};
use qsv_core::logic::{bind, parse, Binding};
use qsv_core::spin;
use qsv_core::valuation::{check_law, evaluate, Law, LawReport, Semantics};
use qsv_core::{Error, Settings};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20_160_101;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;
pub const EXIT_LAW_VIOLATION: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "qsv", version, about = "Evaluate quantum propositions under bivalent, degree and supervaluation semantics")]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Tolerance for algebraic residuals
    #[arg(long, global = true, default_value_t = Settings::DEFAULT_EPS_ALG)]
    pub eps_alg: f64,
    /// Tolerance for subspace membership distance
    #[arg(long, global = true, default_value_t = Settings::DEFAULT_EPS_MEMBER)]
    pub eps_member: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a formula in a state
    Eval(EvalArgs),
    /// Run a builtin demonstration
    #[command(subcommand)]
    Demo(DemoCommand),
    /// Audit excluded middle, non-contradiction and distributivity on random samples
    CheckLaws(CheckLawsArgs),
}

#[derive(Debug, Subcommand)]
pub enum DemoCommand {
    /// Spin-1/2 prepared in z+ and read in the x context
    SternGerlach,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SemanticsArg {
    Bivalent,
    Degree,
    Super,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Bivalent => Semantics::Bivalent,
            SemanticsArg::Degree => Semantics::Degree,
            SemanticsArg::Super => Semantics::Super,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("state_source").required(true).args(["state", "amps"])))]
pub struct EvalArgs {
    /// Builtin state: z+ z- x+ x- y+ y-
    #[arg(long)]
    pub state: Option<String>,
    /// Inline amplitudes "re,im;re,im;..." (rescaled to unit norm)
    #[arg(long)]
    pub amps: Option<String>,
    /// JSON binding file; defaults to the spin-1/2 atoms Z± X± Y±
    #[arg(long = "bind", value_name = "FILE")]
    pub binding: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "super")]
    pub semantics: SemanticsArg,
    /// Formula, e.g. "X+ ^ X-"
    pub formula: String,
}

#[derive(Debug, Args)]
pub struct CheckLawsArgs {
    /// Samples per dimension
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, env = "QSV_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// Rendered command output and its exit status.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }

    fn runtime(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_RUNTIME,
            message: e.to_string(),
        }
    }
}

impl Cli {
    pub fn settings(&self) -> Settings {
        Settings::default()
            .with_eps_alg(self.eps_alg)
            .with_eps_member(self.eps_member)
    }
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let settings = cli.settings();
    if !(settings.eps_alg > 0.0 && settings.eps_member > 0.0) {
        return Err(Failure::input("tolerances must be positive"));
    }
    match &cli.command {
        Command::Eval(args) => cmd_eval(args, cli.json, &settings),
        Command::Demo(DemoCommand::SternGerlach) => demo::cmd_demo_stern_gerlach(cli.json, &settings),
        Command::CheckLaws(args) => cmd_check_laws(args, cli.json, &settings),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Failure::runtime)?;
    s.push('\n');
    Ok(s)
}

/// Parses `"re,im;re,im"`; a lone number is a real amplitude.
pub fn parse_amplitudes(text: &str) -> Result<Vec<C64>, String> {
    text.split(';')
        .map(|part| {
            let nums: Vec<&str> = part.split(',').map(str::trim).collect();
            let num = |s: &str| s.parse::<f64>().map_err(|_| format!("bad amplitude component {s:?}"));
            match nums.as_slice() {
                [re] => Ok(C64::new(num(re)?, 0.0)),
                [re, im] => Ok(C64::new(num(re)?, num(im)?)),
                _ => Err(format!("bad amplitude {part:?}, expected re,im")),
            }
        })
        .collect()
}

fn load_state(args: &EvalArgs, settings: &Settings) -> Result<StateVector, Failure> {
    match (&args.state, &args.amps) {
        (Some(name), None) => spin::builtin_state(name).map_err(Failure::input),
        (None, Some(amps)) => {
            let amps = parse_amplitudes(amps).map_err(Failure::input)?;
            StateVector::normalized(amps, settings).map_err(Failure::input)
        }
        _ => Err(Failure::input("exactly one of --state or --amps is required")),
    }
}

fn load_binding(args: &EvalArgs, settings: &Settings) -> Result<Binding, Failure> {
    match &args.binding {
        None => Ok(spin::spin_binding()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))?;
            Binding::from_json(&text, settings).map_err(Failure::input)
        }
    }
}

pub fn cmd_eval(args: &EvalArgs, json: bool, settings: &Settings) -> Result<Output, Failure> {
    let formula = parse(&args.formula).map_err(Failure::input)?;
    let binding = load_binding(args, settings)?;
    let state = load_state(args, settings)?;
    if state.dim() != binding.dim() {
        return Err(Failure::input(Error::DimensionMismatch {
            expected: binding.dim(),
            found: state.dim(),
        }));
    }
    let bound = bind(formula, &binding).map_err(Failure::input)?;
    let report = evaluate(&state, &bound, args.semantics.into(), settings).map_err(Failure::runtime)?;
    let text = if json { to_json(&report)? } else { report.to_string() };
    Ok(Output { text, code: EXIT_OK })
}

#[derive(Serialize)]
struct CheckLawsReport {
    #[serde(flatten)]
    audit: AuditSummary,
    laws_hold: bool,
    /// Distributivity for (Z+, X+) in the spin-1/2 state z+.
    builtin_distributivity: LawReport,
}

pub fn cmd_check_laws(args: &CheckLawsArgs, json: bool, settings: &Settings) -> Result<Output, Failure> {
    let trials = usize::try_from(args.trials).map_err(Failure::input)?;
    let audit = run_law_audit(&[2, 3, 4], trials, args.seed, settings, Execution::default())
        .map_err(Failure::runtime)?;
    let up = spin::builtin_state("z+").map_err(Failure::runtime)?;
    let builtin = check_law(Law::Distributivity, &up, &spin::spin_binding(), &["Z+", "X+"], settings)
        .map_err(Failure::runtime)?;
    let report = CheckLawsReport {
        laws_hold: audit.laws_hold(),
        audit,
        builtin_distributivity: builtin,
    };
    let code = if report.laws_hold { EXIT_OK } else { EXIT_LAW_VIOLATION };
    let text = if json {
        to_json(&report)?
    } else {
        render_check_laws(&report)
    };
    Ok(Output { text, code })
}

fn render_check_laws(r: &CheckLawsReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "seed: {}  trials per dim: {}", r.audit.seed, r.audit.trials_per_dim);
    for d in &r.audit.dims {
        let dist: Vec<String> = d
            .distributivity
            .iter()
            .map(|(verdict, n)| format!("{verdict} {n}"))
            .collect();
        let _ = writeln!(
            out,
            "dim {}: excluded-middle True {}/{}  non-contradiction False {}/{}  distributivity [{}]",
            d.dim,
            d.excluded_middle_true,
            d.trials,
            d.non_contradiction_false,
            d.trials,
            dist.join(", ")
        );
        if !d.failures.is_empty() {
            let _ = writeln!(out, "  failing trials: {:?}", d.failures);
        }
    }
    let _ = writeln!(out, "spin-1/2 distributivity in state z+:");
    for line in r.builtin_distributivity.to_string().lines() {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "laws hold: {}", r.laws_hold);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplitude_syntax() {
        let a = parse_amplitudes("1,0; 0,-0.5").unwrap();
        assert_eq!(a, vec![C64::new(1.0, 0.0), C64::new(0.0, -0.5)]);
        assert_eq!(parse_amplitudes("0.6;0.8").unwrap()[1], C64::new(0.8, 0.0));
        assert!(parse_amplitudes("1,2,3").is_err());
        assert!(parse_amplitudes("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
