//! Command-line front-end: argument parsing, command dispatch and report
//! rendering. `run` returns the process exit code: 0 when the queried
//! property holds, 1 when it does not, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use starpi::catalog::{self, basis_words_for_slice, Params, TheoremId};
use starpi::decision::{
    central_space_of_slice, identity_space_of_slice, is_central_poly, is_identity, CoefficientSet,
    ConsequenceStrategy, EvalMode, Slice, Status, Verdict, VerificationReport,
};
use starpi::verify::{verify_theorem, SuiteConfig};
use starpi::{Error, Field, InvolutionKind, Result, StarPolynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "starpi", version, about = "Identities and central polynomials of UT2 with involution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a polynomial is an identity or central.
    Check(CheckArgs),
    /// Run the verification suite of a catalog theorem.
    VerifyTheorem(VerifyArgs),
    /// Per-slice dimensions of the identity and central spaces.
    CentralSpace(SpaceArgs),
    /// Print the catalog with its generators.
    CatalogDump(DumpArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Identity,
    Central,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Q, F<p>, F9, F25, F27 or F49.
    #[arg(long, default_value = "F3")]
    pub field: String,
    /// Defaults to exhaustive for finite fields and generic for Q.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Same as `--mode generic`.
    #[arg(long, conflicts_with = "mode")]
    pub generic: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

impl Common {
    pub fn eval_mode(&self) -> Result<EvalMode> {
        let field = Field::from_name(&self.field)?;
        let generic = self.generic || self.mode == Some(ModeArg::Generic);
        if self.mode == Some(ModeArg::Exhaustive) && !field.is_finite() {
            return Err(Error::ModeFieldMismatch { mode: "exhaustive".into(), field });
        }
        EvalMode::for_field(field, generic)
    }
}

fn involution(s: &str) -> std::result::Result<InvolutionKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long, value_parser = involution, default_value = "star")]
    pub involution: InvolutionKind,
    #[arg(long, value_enum, default_value = "identity")]
    pub property: Property,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct StrategyArgs {
    /// Maximal degree of substituted words.
    #[arg(long)]
    pub subst_degree: Option<usize>,
    /// Maximal number of words in a substituted value.
    #[arg(long)]
    pub support: Option<usize>,
    /// `all` or `unit-pairs`.
    #[arg(long)]
    pub coefficients: Option<CoefficientSet>,
}

impl StrategyArgs {
    fn resolve(&self, mode: EvalMode, bound: u32) -> Option<ConsequenceStrategy> {
        if self.subst_degree.is_none() && self.support.is_none() && self.coefficients.is_none() {
            return None;
        }
        let d = ConsequenceStrategy::default_for(mode, bound as usize);
        Some(ConsequenceStrategy::new(
            self.subst_degree.unwrap_or(d.max_subst_degree),
            self.support.unwrap_or(d.max_support),
            self.coefficients.unwrap_or(d.coefficients),
        ))
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Catalog name, e.g. CentralStarFinite.
    pub theorem: String,
    /// For theorems that hold for both involutions.
    #[arg(long, value_parser = involution)]
    pub involution: Option<InvolutionKind>,
    #[arg(long, default_value_t = 4)]
    pub max_degree: u32,
    #[command(flatten)]
    pub strategy: StrategyArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    #[arg(long, value_parser = involution, default_value = "star")]
    pub involution: InvolutionKind,
    #[arg(long, default_value_t = 4)]
    pub max_degree: u32,
    /// Include a basis of each central slice.
    #[arg(long)]
    pub bases: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long, default_value = "F3")]
    pub field: String,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub polynomial: String,
    pub field: String,
    pub mode: String,
    pub involution: String,
    pub property: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceRow {
    pub slice: String,
    pub dim: usize,
    pub identity: usize,
    pub central: usize,
    /// Words of the matching basis theorem, for the star involution.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<usize>,
    /// `dim - identity`.
    pub quotient: usize,
    /// `central - identity`.
    pub central_quotient: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central_basis: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralSpaceReport {
    pub field: String,
    pub mode: String,
    pub involution: String,
    pub slices: Vec<SliceRow>,
}

pub fn run_check(args: &CheckArgs) -> Result<CheckReport> {
    let mode = args.common.eval_mode()?;
    let f = StarPolynomial::parse(&args.poly, mode.field())?;
    let verdict = match args.property {
        Property::Identity => is_identity(&f, args.involution, mode)?,
        Property::Central => is_central_poly(&f, args.involution, mode)?,
    };
    Ok(CheckReport {
        polynomial: f.to_string(),
        field: mode.field().to_string(),
        mode: mode.to_string(),
        involution: args.involution.to_string(),
        property: format!("{:?}", args.property).to_lowercase(),
        holds: verdict.holds(),
        witness: match verdict {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w.to_string()),
        },
    })
}

pub fn run_verify_theorem(args: &VerifyArgs) -> Result<VerificationReport> {
    let id: TheoremId = args.theorem.parse()?;
    let mode = args.common.eval_mode()?;
    let cfg = SuiteConfig {
        mode,
        kind: args.involution,
        max_degree: args.max_degree,
        strategy: args.strategy.resolve(mode, args.max_degree),
    };
    verify_theorem(id, &cfg)
}

pub fn run_central_space(args: &SpaceArgs) -> Result<CentralSpaceReport> {
    let mode = args.common.eval_mode()?;
    let field = mode.field();
    let kind = args.involution;
    let basis_id = match (kind, mode.is_generic()) {
        (InvolutionKind::S, _) => None,
        (InvolutionKind::Star, true) => Some(TheoremId::BasisStarInfinite),
        (InvolutionKind::Star, false) => Some(TheoremId::BasisStarFinite),
    };
    let params = Params::of_field(field);
    let slices: Vec<SliceRow> = Slice::all_up_to(args.max_degree)
        .par_iter()
        .map(|sl| {
            let ids = identity_space_of_slice(sl, kind, mode)?;
            let central = central_space_of_slice(sl, kind, mode)?;
            let basis = match basis_id {
                Some(id) => Some(basis_words_for_slice(id, sl.degree(), &params, field)?.len()),
                None => None,
            };
            Ok(SliceRow {
                slice: sl.to_string(),
                dim: sl.dim(),
                identity: ids.dim(),
                central: central.dim(),
                basis,
                quotient: sl.dim() - ids.dim(),
                central_quotient: central.dim() - ids.dim(),
                central_basis: args.bases.then(|| central.row_polynomials().iter().map(|p| p.to_string()).collect()),
            })
        })
        .collect::<Result<_>>()?;
    Ok(CentralSpaceReport { field: field.to_string(), mode: mode.to_string(), involution: kind.to_string(), slices })
}

pub fn catalog_dump(args: &DumpArgs) -> Result<Vec<catalog::CatalogEntry>> {
    Ok(catalog::dump(Field::from_name(&args.field)?))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn render_check(r: &CheckReport) -> String {
    let verb = if r.holds { "holds" } else { "fails" };
    let mut s = format!("{verb}: {} is {} for {} in {}\n", r.polynomial, r.property, r.involution, r.mode);
    if let Some(w) = &r.witness {
        s += &format!("witness: {w}\n");
    }
    s
}

fn render_report(r: &VerificationReport) -> String {
    let mut s = format!("{} in {}\n", r.theorem, r.mode);
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        };
        s += &format!("{status}  {}", c.name);
        if let Some(d) = &c.dims {
            let mut parts = vec![format!("dim {}", d.slice)];
            for (label, v) in [
                ("identity", d.identity),
                ("central", d.central),
                ("claimed", d.claimed),
                ("basis", d.basis),
                ("rank", d.combined_rank),
            ] {
                if let Some(v) = v {
                    parts.push(format!("{label} {v}"));
                }
            }
            s += &format!("  [{}]", parts.join(", "));
        }
        if let Some(w) = &c.witness {
            s += &format!("  {w}");
        }
        s += "\n";
    }
    s += &format!(
        "{} pass, {} warn, {} fail in {} ms\n",
        r.count(Status::Pass),
        r.count(Status::Warn),
        r.count(Status::Fail),
        r.elapsed_ms
    );
    s
}

fn render_space(r: &CentralSpaceReport) -> String {
    let mut s = format!("{} involution in {}\n", r.involution, r.mode);
    s += "slice                     dim  identity  central  basis  quotient\n";
    for row in &r.slices {
        let basis = row.basis.map_or("-".to_string(), |b| b.to_string());
        s += &format!(
            "{:<24} {:>4} {:>9} {:>8} {:>6} {:>9}\n",
            row.slice, row.dim, row.identity, row.central, basis, row.quotient
        );
        for p in row.central_basis.iter().flatten() {
            s += &format!("    {p}\n");
        }
    }
    s
}

fn render_catalog(entries: &[catalog::CatalogEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        s += &format!("{}: {}\n", e.theorem, e.tag);
        for g in &e.generators {
            s += &format!("    {g}\n");
        }
    }
    s
}

fn dispatch(command: &Command) -> Result<(String, i32)> {
    Ok(match command {
        Command::Check(a) => {
            let r = run_check(a)?;
            let text = match a.common.output {
                OutputFormat::Text => render_check(&r),
                OutputFormat::Json => json(&r) + "\n",
            };
            (text, if r.holds { EXIT_OK } else { EXIT_FALSE })
        }
        Command::VerifyTheorem(a) => {
            let r = run_verify_theorem(a)?;
            let text = match a.common.output {
                OutputFormat::Text => render_report(&r),
                OutputFormat::Json => r.to_json() + "\n",
            };
            (text, if r.passed() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::CentralSpace(a) => {
            let r = run_central_space(a)?;
            let text = match a.common.output {
                OutputFormat::Text => render_space(&r),
                OutputFormat::Json => json(&r) + "\n",
            };
            (text, EXIT_OK)
        }
        Command::CatalogDump(a) => {
            let entries = catalog_dump(a)?;
            let text = match a.output {
                OutputFormat::Text => render_catalog(&entries),
                OutputFormat::Json => json(&entries) + "\n",
            };
            (text, EXIT_OK)
        }
    })
}

/// Parses `args` (including the program name), runs the command and writes
/// its report to `out` and errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Sizes the global thread pool from `STARPI_THREADS`, if set.
pub fn init_threads() {
    if let Some(n) = std::env::var("STARPI_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}
