//! Command-line front end: compute configurations, run the verification
//! suites, diff configuration documents and emit the built-in fixtures.
//!
//! Exit codes: 0 success, 1 a property check failed, 2 invalid input or
//! schema mismatch, 3 the window did not stabilize within `--max-sheets`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{stable_configurations, ConfigDoc, ConfigError, MultisetDiff, Variant};
use crate::covercomplex::{
    format_rational, parse_rational, validate, CoverData, CoverError, EdgeValue, InputDoc, OneForm, Q,
};
use crate::fieldlin::{Field, FieldSpec, PrimeField, Rationals};
use crate::harness::{self, fixtures, HarnessError, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "formconf", version, about = "Exact δ/γ configurations of closed 1-forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Coefficient field `fp:P` or `q`; overrides the input document.
    #[arg(long)]
    pub field: Option<String>,
    /// Degrees as `0..2` (inclusive), `0,2` or `1`; default all.
    #[arg(long)]
    pub degrees: Option<String>,
    /// Largest window (in sheets) tried while stabilizing.
    #[arg(long, default_value_t = 16)]
    pub max_sheets: i64,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for output files; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    Bm,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Duality,
    Stability,
    Theta,
    Dimension,
    Oracle,
    Window,
    Subsurjection,
    Boxes,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute δ, γ and λ and write one document per degree, kind and variant.
    Compute {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
    },
    /// Run one verification suite and write its report.
    Verify {
        #[arg(value_enum)]
        check: Check,
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Stability: edge deltas `[{"edge": [u, v], "value": "n/d"}, …]`;
        /// random perturbations are drawn when absent.
        #[arg(long)]
        perturbation: Option<PathBuf>,
        /// Stability: ε override, as `n/d`.
        #[arg(long)]
        eps: Option<String>,
        /// Stability: number of random perturbations per degree.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Box laws: number of grid levels.
        #[arg(long, default_value_t = 6)]
        grid: usize,
    },
    /// Multiset difference of the 1-D points of two configuration documents.
    Diff { left: PathBuf, right: PathBuf },
    /// Write the built-in fixture documents.
    Fixtures {
        /// One fixture by name (e.g. FIX-W); all when absent.
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn cover_code(e: &CoverError) -> i32 {
    match e {
        CoverError::NotStabilized | CoverError::WindowTooSmall | CoverError::OutOfSafeRange(_) => EXIT_UNSTABLE,
        CoverError::LinAlg(_) | CoverError::NotASubpair => EXIT_PROPERTY,
        _ => EXIT_INPUT,
    }
}

fn config_code(e: &ConfigError) -> i32 {
    match e {
        ConfigError::NotStabilized => EXIT_UNSTABLE,
        ConfigError::Cover(c) => cover_code(c),
        ConfigError::BadInput(_) | ConfigError::BadBox(_) => EXIT_INPUT,
        _ => EXIT_PROPERTY,
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        Failure {
            code: cover_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure {
            code: config_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let code = match &e {
            HarnessError::Config(c) => config_code(c),
            HarnessError::Cover(c) => cover_code(c),
            HarnessError::Diag(_) | HarnessError::LinAlg(_) => EXIT_PROPERTY,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

/// Run a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match cli.command {
        Command::Compute { input, common, variant } => compute(&input, &common, variant, out, err),
        Command::Verify {
            check,
            input,
            common,
            perturbation,
            eps,
            trials,
            grid,
        } => {
            let opts = VerifyOpts {
                check,
                perturbation,
                eps,
                trials,
                grid,
            };
            verify(&input, &common, &opts, out)
        }
        Command::Diff { left, right } => diff(&left, &right, out),
        Command::Fixtures { name, out: dir } => emit_fixtures(name.as_deref(), dir.as_deref(), out),
    };
    match res {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Write through a temporary file so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

struct Loaded {
    field: FieldSpec,
    data: CoverData,
    closed_manifold: bool,
    labels: Vec<u64>,
}

fn load(path: &Path, common: &Common) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let input = InputDoc::parse(&text)?.to_input()?;
    let field = match &common.field {
        Some(s) => s.parse::<FieldSpec>().map_err(|e| Failure::input(e.to_string()))?,
        None => input.field,
    };
    let data = validate(&input.complex, &input.form)?;
    if data.has_period() && common.max_sheets < 4 {
        return Err(Failure::input(
            "--max-sheets must be at least 4 for a form with periods",
        ));
    }
    Ok(Loaded {
        field,
        data,
        closed_manifold: input.closed_manifold,
        labels: input.labels,
    })
}

/// Parse `a..b` (inclusive), `a..=b`, `a,b,c` or `a`.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::input(format!("bad degree list `{s}`"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    let mut v = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

fn degrees(common: &Common, data: &CoverData) -> Result<Vec<usize>, Failure> {
    match &common.degrees {
        Some(s) => parse_degrees(s),
        None => Ok((0..=data.complex.dim()).collect()),
    }
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p).map_err(|e| Failure::input(e.to_string()))?;
                $body
            }
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
        }
    };
}

fn compute(
    path: &Path,
    common: &Common,
    variant: VariantArg,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let l = load(path, common)?;
    let degrees = degrees(common, &l.data)?;
    let variants: &[Variant] = match variant {
        VariantArg::Standard => &[Variant::Standard],
        VariantArg::Bm => &[Variant::Bm],
        VariantArg::Both => &[Variant::Standard, Variant::Bm],
    };
    let stable =
        with_field!(l.field, f => stable_configurations(&f, &l.data, 2, common.max_sheets, variants, &degrees)?);
    let mut docs = Vec::new();
    let mut code = EXIT_OK;
    for res in &stable.results {
        let total = res.configs.delta.total();
        if total != res.novikov {
            let _ = writeln!(
                err,
                "degree {} ({:?}): δ has {total} points but the Novikov–Betti number is {}",
                res.r, res.variant, res.novikov
            );
            code = EXIT_PROPERTY;
        }
        docs.extend(ConfigDoc::from_result(res));
    }
    match &common.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for d in &docs {
                write_atomic(&dir.join(format!("{}.json", d.file_stem())), &(d.to_json() + "\n"))?;
                if common.format == Format::Csv {
                    write_atomic(&dir.join(format!("{}.csv", d.file_stem())), &d.to_csv())?;
                }
            }
        }
        None => match common.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&docs).expect("serializable"))?,
            Format::Csv => {
                for d in &docs {
                    writeln!(out, "# {}", d.file_stem())?;
                    write!(out, "{}", d.to_csv())?;
                }
            }
        },
    }
    Ok(code)
}

struct VerifyOpts {
    check: Check,
    perturbation: Option<PathBuf>,
    eps: Option<String>,
    trials: usize,
    grid: usize,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    check: &'static str,
    field: String,
    passed: bool,
    reports: Vec<T>,
}

fn check_name(c: Check) -> &'static str {
    match c {
        Check::Duality => "duality",
        Check::Stability => "stability",
        Check::Theta => "theta",
        Check::Dimension => "dimension",
        Check::Oracle => "oracle",
        Check::Window => "window",
        Check::Subsurjection => "subsurjection",
        Check::Boxes => "boxes",
    }
}

fn emit<T: Verdict>(
    check: Check,
    field: FieldSpec,
    reports: Vec<T>,
    common: &Common,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let passed = reports.iter().all(Verdict::passed);
    let env = Envelope {
        check: check_name(check),
        field: field.to_string(),
        passed,
        reports,
    };
    let text = serde_json::to_string_pretty(&env).expect("serializable") + "\n";
    match &common.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            write_atomic(&dir.join(format!("{}.json", check_name(check))), &text)?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(if passed { EXIT_OK } else { EXIT_PROPERTY })
}

/// Edge deltas from a document, matched to the input's vertex labels;
/// edges not listed get zero.
fn read_perturbation(path: &Path, l: &Loaded) -> Result<OneForm, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let entries: Vec<EdgeValue> = serde_json::from_str(&text).map_err(|e| Failure::input(e.to_string()))?;
    let c = &l.data.complex;
    let index = |label: u64| {
        l.labels
            .iter()
            .position(|&x| x == label)
            .ok_or_else(|| Failure::input(format!("unknown vertex {label}")))
    };
    let mut values = vec![Q::from_integer(0.into()); c.count(1)];
    for ev in &entries {
        let (u, v) = (index(ev.edge[0])?, index(ev.edge[1])?);
        let x = parse_rational(&ev.value)?;
        let (e, x) = if u < v { ([u, v], x) } else { ([v, u], -x) };
        let i = c
            .index_of(&e)
            .ok_or_else(|| Failure::input(format!("{:?} is not an edge", ev.edge)))?;
        values[i] = x;
    }
    Ok(OneForm { values })
}

fn verify(path: &Path, common: &Common, opts: &VerifyOpts, out: &mut dyn Write) -> Result<i32, Failure> {
    let l = load(path, common)?;
    with_field!(l.field, f => verify_with(&f, &l, common, opts, out))
}

fn verify_with<F: Field>(
    field: &F,
    l: &Loaded,
    common: &Common,
    opts: &VerifyOpts,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let data = &l.data;
    let cap = common.max_sheets;
    let check = opts.check;
    let spec = l.field;
    match check {
        Check::Duality => {
            if !l.closed_manifold {
                return Err(HarnessError::NotAManifold("the input is not flagged as a closed manifold".into()).into());
            }
            let rep = harness::check_duality(field, data, 2, cap)?;
            emit(check, spec, vec![rep], common, out)
        }
        Check::Stability => {
            let eps = opts.eps.as_deref().map(parse_rational).transpose()?;
            let mut reports = Vec::new();
            for r in degrees(common, data)? {
                match &opts.perturbation {
                    Some(p) => {
                        let delta = read_perturbation(p, l)?;
                        reports.push(harness::check_stability(
                            field,
                            data,
                            &delta,
                            r,
                            eps.clone(),
                            2,
                            cap,
                            13,
                        )?);
                    }
                    None => {
                        let (base, _) = harness::stable_delta_1d(field, data, r, 2, cap)?;
                        let sigma = base.points.windows(2).map(|w| &w[1].0 - &w[0].0).min();
                        let bound = sigma.unwrap_or_else(|| data.critical.gap.clone()) / Q::from_integer(9.into());
                        let mut rng = ChaCha8Rng::seed_from_u64(common.seed ^ r as u64);
                        for _ in 0..opts.trials {
                            let delta = harness::random_perturbation(data, &bound, &mut rng);
                            reports.push(harness::check_stability(
                                field,
                                data,
                                &delta,
                                r,
                                eps.clone(),
                                2,
                                cap,
                                13,
                            )?);
                        }
                    }
                }
            }
            emit(check, spec, reports, common, out)
        }
        Check::Theta => {
            let sheets = stable_sheets(field, data, cap)?;
            emit(
                check,
                spec,
                vec![harness::theta_comparison(field, data, sheets)?],
                common,
                out,
            )
        }
        Check::Dimension => emit(
            check,
            spec,
            vec![harness::dimension_audit(field, data, 2, cap)?],
            common,
            out,
        ),
        Check::Oracle => {
            if data.has_period() {
                return Err(Failure::input("the oracle needs an exact form (no periods)"));
            }
            let reports = degrees(common, data)?
                .into_iter()
                .map(|r| harness::persistence_oracle(field, data, r))
                .collect::<Result<Vec<_>, _>>()?;
            emit(check, spec, reports, common, out)
        }
        Check::Window => emit(check, spec, vec![harness::window_audit(field, data, cap)?], common, out),
        Check::Subsurjection => {
            let rep = harness::subsurjection_audit(field, data, &degrees(common, data)?, 2, cap)?;
            emit(check, spec, vec![rep], common, out)
        }
        Check::Boxes => {
            let sheets = stable_sheets(field, data, cap)?;
            emit(
                check,
                spec,
                vec![harness::box_law_audit(field, data, sheets, opts.grid)?],
                common,
                out,
            )
        }
    }
}

fn stable_sheets<F: Field>(field: &F, data: &CoverData, cap: i64) -> Result<i64, Failure> {
    let degrees: Vec<usize> = (0..=data.complex.dim()).collect();
    Ok(stable_configurations(field, data, 2, cap, &[Variant::Standard, Variant::Bm], &degrees)?.sheets)
}

fn read_doc(path: &Path) -> Result<ConfigDoc, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    ConfigDoc::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn diff(left: &Path, right: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let (l, r) = (read_doc(left)?, read_doc(right)?);
    let d = MultisetDiff::between(&l, &r).map_err(|e| Failure::input(e.to_string()))?;
    for (t, m) in &d.only_left {
        writeln!(out, "< {} x{m}", format_rational(t))?;
    }
    for (t, m) in &d.only_right {
        writeln!(out, "> {} x{m}", format_rational(t))?;
    }
    Ok(if d.is_empty() { EXIT_OK } else { EXIT_PROPERTY })
}

fn fixture_file(name: &str) -> String {
    format!("{}.json", name.to_ascii_lowercase())
}

fn emit_fixtures(name: Option<&str>, dir: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let list = match name {
        Some(n) => vec![fixtures::by_name(n).ok_or_else(|| Failure::input(format!("no fixture named {n}")))?],
        None => fixtures::all(),
    };
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for fx in &list {
                let text = serde_json::to_string_pretty(&fx.to_doc()).expect("serializable") + "\n";
                write_atomic(&dir.join(fixture_file(fx.name)), &text)?;
            }
        }
        None => {
            let text = if list.len() == 1 {
                serde_json::to_string_pretty(&list[0].to_doc())
            } else {
                serde_json::to_string_pretty(&list.iter().map(|f| f.to_doc()).collect::<Vec<_>>())
            };
            writeln!(out, "{}", text.expect("serializable"))?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_lists() {
        assert_eq!(parse_degrees("0..2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_degrees("1..=1").unwrap(), vec![1]);
        assert_eq!(parse_degrees("2,0,2").unwrap(), vec![0, 2]);
        assert!(parse_degrees("2..1").is_err());
        assert!(parse_degrees("x").is_err());
    }

    #[test]
    fn cli_parses() {
        let cli = Cli::try_parse_from(["formconf", "verify", "duality", "in.json", "--field", "fp:3"]).unwrap();
        assert!(matches!(
            cli.command,
            Command::Verify {
                check: Check::Duality,
                ..
            }
        ));
    }
}
