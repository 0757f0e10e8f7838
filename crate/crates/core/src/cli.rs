//! The `farank` command line. [`run`] is the whole program minus process I/O.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cache::{cache_dir_from_env, cached_engine};
use crate::divisor::{self, DivisorClass};
use crate::error::{Error, Result};
use crate::fusion::{check_stable, Insertion, RankEngine};
use crate::genfunc::{resolvent_entry, RationalFunction};
use crate::matrix::IntMatrix;
use crate::rational::{self, bigint_json, parse_fraction};
use crate::registry::{self, PointedData};
use crate::spec::VoaSpec;
use crate::verify::{verify_fa_properties, verify_pointed_laws, verify_tensor_laws, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "farank", version, about = "Ranks and Chern classes of bundles of coinvariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank of a bundle of coinvariants.
    Rank(RankArgs),
    /// FA-matrix of an insertion multiset at a genus.
    FaMatrix(FaArgs),
    /// Generating function of ranks along `deviation + (n + 3)·step`.
    Genfunc(GenfuncArgs),
    /// First Chern class and F-curve checks.
    Divisor(DivisorArgs),
    /// Positivity report for a pointed VOA.
    Nef(NefArgs),
    /// Runs the consistency suites.
    Verify(VerifyArgs),
    /// Lists built-in specs, or shows one.
    Registry(RegistryArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    #[default]
    Table,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    /// VOA selector, e.g. `virasoro:2,5`, `sl2:3`, `pointed:z5.json`, `tensor:(a,b)`.
    #[arg(long)]
    pub voa: String,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputMode,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[command(flatten)]
    pub common: Common,
    /// Insertions, e.g. `Wmin^4,V^2` or `[W1,W2,W1]`.
    #[arg(long, default_value = "")]
    pub ins: String,
    #[arg(long, default_value_t = 0)]
    pub genus: usize,
    /// Two extra markings `i,j` (labels or indices); reads entry `(i, j)` of the FA-matrix.
    #[arg(long)]
    pub frame: Option<String>,
    /// Reject `2g − 2 + n ≤ 0`.
    #[arg(long)]
    pub strict_stability: bool,
}

#[derive(Args, Debug)]
pub struct FaArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "")]
    pub ins: String,
    #[arg(long, default_value_t = 0)]
    pub genus: usize,
}

#[derive(Args, Debug)]
pub struct GenfuncArgs {
    #[command(flatten)]
    pub common: Common,
    /// Insertions added once per step.
    #[arg(long)]
    pub step: String,
    /// Fixed insertions.
    #[arg(long, default_value = "")]
    pub deviation: String,
    #[arg(long, default_value_t = 0)]
    pub genus: usize,
    /// Entry `i,j` of the resolvent; by default the rank itself.
    #[arg(long)]
    pub frame: Option<String>,
    /// Number of series coefficients to print.
    #[arg(long, default_value_t = 12)]
    pub coeffs: usize,
}

#[derive(Args, Debug)]
pub struct DivisorArgs {
    #[command(flatten)]
    pub common: Common,
    /// Ordered insertions, e.g. `[Wmin,Wmin,V,Wmin]`.
    #[arg(long)]
    pub ins: String,
    #[arg(long, default_value_t = 0)]
    pub genus: usize,
}

#[derive(Args, Debug)]
pub struct NefArgs {
    #[command(flatten)]
    pub common: Common,
    /// Central charge of a holomorphic VOA used for padding.
    #[arg(long)]
    pub holomorphic_c: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    #[arg(long, default_value_t = 2)]
    pub max_g: usize,
}

#[derive(Args, Debug)]
pub struct RegistryArgs {
    #[arg(long)]
    pub voa: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputMode,
}

/// Exit code and rendered streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Self {
            code: if e.is_domain_error() { EXIT_DOMAIN } else { EXIT_VALIDATION },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_VALIDATION,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(&cli.command)
}

pub fn execute(command: &Command) -> Outcome {
    let result = match command {
        Command::Rank(a) => rank(a).map(Outcome::ok),
        Command::FaMatrix(a) => fa_matrix(a).map(Outcome::ok),
        Command::Genfunc(a) => genfunc(a).map(Outcome::ok),
        Command::Divisor(a) => divisor_cmd(a).map(Outcome::ok),
        Command::Nef(a) => nef(a).map(Outcome::ok),
        Command::Verify(a) => verify(a),
        Command::Registry(a) => registry_cmd(a).map(Outcome::ok),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn engine(selector: &str) -> Result<RankEngine> {
    let spec = registry::resolve_selector(selector)?;
    Ok(cached_engine(spec, cache_dir_from_env().as_deref()))
}

fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json renders");
    s.push('\n');
    s
}

/// Parses an insertion expression into module indices, in order of appearance.
///
/// `label^k` repeats a label; `[a,b,c]` is an ordered list; an empty string is no insertions.
pub fn parse_insertion_list(spec: &VoaSpec, expr: &str) -> Result<Vec<usize>> {
    let expr = expr.trim();
    let body = match (expr.strip_prefix('['), expr.ends_with(']')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => expr,
        _ => return Err(Error::Parse(format!("unbalanced brackets in `{expr}`"))),
    };
    let mut out = Vec::new();
    if body.trim().is_empty() {
        return Ok(out);
    }
    for term in body.split(',') {
        let term = term.trim();
        let (label, count) = match term.split_once('^') {
            Some((label, count)) => {
                let count: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad multiplicity in `{term}`")))?;
                (label.trim(), count)
            }
            None => (term, 1),
        };
        if label.is_empty() {
            return Err(Error::Parse(format!("empty label in `{expr}`")));
        }
        let index = spec.resolve_label(label)?;
        out.extend(std::iter::repeat_n(index, count));
    }
    Ok(out)
}

pub fn parse_insertion(spec: &VoaSpec, expr: &str) -> Result<Insertion> {
    Insertion::from_indices(spec.len(), &parse_insertion_list(spec, expr)?)
}

/// A label or a raw index.
fn parse_module(spec: &VoaSpec, text: &str) -> Result<usize> {
    let text = text.trim();
    spec.resolve_label(text).or_else(|e| match text.parse::<usize>() {
        Ok(i) => spec.check_index(i).map(|_| i),
        Err(_) => Err(e),
    })
}

fn parse_frame(spec: &VoaSpec, text: &str) -> Result<(usize, usize)> {
    let (i, j) = text
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("frame `{text}` is not of the form i,j")))?;
    Ok((parse_module(spec, i)?, parse_module(spec, j)?))
}

fn insertion_json(spec: &VoaSpec, ins: &Insertion) -> Value {
    let map: serde_json::Map<String, Value> = ins
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| (spec.label(i).to_string(), json!(c)))
        .collect();
    Value::Object(map)
}

fn rank(a: &RankArgs) -> Result<String> {
    let e = engine(&a.common.voa)?;
    let spec = e.spec();
    let ins = parse_insertion(spec, &a.ins)?;
    let frame = a.frame.as_deref().map(|f| parse_frame(spec, f)).transpose()?;
    if a.strict_stability {
        let extra = if frame.is_some() { 2 } else { 0 };
        check_stable(a.genus, ins.len() + extra)?;
    }
    let value = match frame {
        Some((i, j)) => e.rank_with_frame(&ins, a.genus, i, j)?,
        None => e.rank(&ins, a.genus)?,
    };
    Ok(match a.common.output {
        OutputMode::Table => format!("{value}\n"),
        OutputMode::Json => {
            let mut v = json!({
                "voa": a.common.voa,
                "genus": a.genus,
                "insertions": insertion_json(spec, &ins),
                "rank": bigint_json(&value),
            });
            if let Some((i, j)) = frame {
                v["frame"] = json!([spec.label(i), spec.label(j)]);
            }
            render_json(&v)
        }
    })
}

fn matrix_table(spec: &VoaSpec, m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain(spec.labels().iter().map(String::len))
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    let _ = write!(out, "{:width$}", "");
    for l in spec.labels() {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    for (label, row) in spec.labels().iter().zip(&cells) {
        let _ = write!(out, "{label:>width$}");
        for c in row {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    }
    out
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.rows()
            .map(|r| Value::Array(r.iter().map(bigint_json).collect()))
            .collect(),
    )
}

fn fa_matrix(a: &FaArgs) -> Result<String> {
    let e = engine(&a.common.voa)?;
    let spec = e.spec();
    let ins = parse_insertion(spec, &a.ins)?;
    let fa = e.fa_matrix(&ins, a.genus)?;
    Ok(match a.common.output {
        OutputMode::Table => matrix_table(spec, &fa.matrix),
        OutputMode::Json => render_json(&json!({
            "voa": a.common.voa,
            "genus": a.genus,
            "insertions": insertion_json(spec, &ins),
            "labels": spec.labels(),
            "matrix": matrix_json(&fa.matrix),
        })),
    })
}

/// Generating function of the rank (or of one frame entry) along the progression.
pub fn rank_generating_function(
    e: &RankEngine,
    deviation: &Insertion,
    step: &Insertion,
    genus: usize,
    frame: Option<(usize, usize)>,
) -> Result<RationalFunction> {
    if step.is_empty() {
        return Err(Error::EmptyStep);
    }
    let a = e.fa_matrix(step, 0)?.matrix;
    if let Some((i, j)) = frame {
        let p = e.fa_matrix(deviation, genus)?.matrix;
        return resolvent_entry(&p, &a, i, j);
    }
    if genus == 0 {
        let v = e.spec().vacuum();
        let p = e.fa_matrix(deviation, 0)?.matrix;
        return resolvent_entry(&p, &a, v, e.spec().dual(v));
    }
    let p = e.fa_matrix(deviation, genus - 1)?.matrix;
    let mut total = RationalFunction::from_poly(crate::genfunc::Poly::zero());
    for i in 0..e.modules() {
        total = &total + &resolvent_entry(&p, &a, i, i)?;
    }
    Ok(total)
}

fn genfunc(a: &GenfuncArgs) -> Result<String> {
    let e = engine(&a.common.voa)?;
    let spec = e.spec();
    let step = parse_insertion(spec, &a.step)?;
    let deviation = parse_insertion(spec, &a.deviation)?;
    let frame = a.frame.as_deref().map(|f| parse_frame(spec, f)).transpose()?;
    let f = rank_generating_function(&e, &deviation, &step, a.genus, frame)?;
    let coeffs = f.integer_series(a.coeffs)?;
    Ok(match a.common.output {
        OutputMode::Table => {
            let list: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
            format!("{f}\n{}\n", list.join(" "))
        }
        OutputMode::Json => render_json(&json!({
            "voa": a.common.voa,
            "genus": a.genus,
            "step": insertion_json(spec, &step),
            "deviation": insertion_json(spec, &deviation),
            "function": f.to_json_value(),
            "display": f.to_string(),
            "coefficients": coeffs.iter().map(bigint_json).collect::<Vec<_>>(),
        })),
    })
}

fn divisor_checks(d: &DivisorClass) -> Result<Vec<(String, Value, String)>> {
    let mut out = Vec::new();
    if d.g == 0 {
        if d.n == 4 {
            let deg = divisor::degree_on_m04(d)?;
            out.push((
                "degree_on_m04".into(),
                json!(rational::to_fraction_string(&deg)),
                rational::display(&deg),
            ));
        }
        let check = divisor::f_check_genus0(d)?;
        let text = match &check.witness {
            None => "holds".to_string(),
            Some(parts) => format!("fails at {parts:?}"),
        };
        out.push((
            "genus0".into(),
            json!({"holds": check.holds, "witness": check.witness}),
            text,
        ));
    } else {
        let t1 = divisor::type1_value(d)?;
        out.push((
            "type1".into(),
            json!({"holds": divisor::f_check_type1(d)?, "value": rational::to_fraction_string(&t1)}),
            format!(
                "{} (value {})",
                verdict(divisor::f_check_type1(d)?),
                rational::display(&t1)
            ),
        ));
        let t2 = divisor::f_check_type2(d)?;
        out.push(("type2".into(), json!({"holds": t2}), verdict(t2).to_string()));
    }
    Ok(out)
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn divisor_cmd(a: &DivisorArgs) -> Result<String> {
    let e = engine(&a.common.voa)?;
    let order = parse_insertion_list(e.spec(), &a.ins)?;
    let d = divisor::c1(&e, &order, a.genus)?;
    let checks = divisor_checks(&d)?;
    Ok(match a.common.output {
        OutputMode::Table => {
            let mut out = d.to_string();
            for (name, _, text) in &checks {
                let _ = writeln!(out, "{name}: {text}");
            }
            out
        }
        OutputMode::Json => {
            let checks: serde_json::Map<String, Value> =
                checks.into_iter().map(|(k, v, _)| (k, v)).collect();
            render_json(&json!({"class": d.to_json_value(), "checks": checks}))
        }
    })
}

fn pointed_data(spec: &VoaSpec) -> Result<PointedData> {
    PointedData::from_spec(spec).ok_or_else(|| Error::InvalidSpec {
        invariant: "pointed",
        witness: "some fusion matrix is not a permutation matrix".into(),
    })
}

fn nef(a: &NefArgs) -> Result<String> {
    let spec = registry::resolve_selector(&a.common.voa)?;
    let data = pointed_data(&spec)?;
    let report = divisor::pointed_nef_report(&data);
    let padding = match &a.holomorphic_c {
        Some(c) => {
            let c = parse_fraction(c)?;
            Some((c.clone(), divisor::padding_exponent(&data, &c)))
        }
        None => None,
    };
    Ok(match a.common.output {
        OutputMode::Table => {
            let mut out = report.to_string();
            if let Some((c, r)) = &padding {
                let r = r.as_ref().map_or("none".to_string(), BigInt::to_string);
                let _ = writeln!(out, "padding exponent (c_H = {}): {r}", rational::display(c));
            }
            out
        }
        OutputMode::Json => {
            let mut v = report.to_json_value();
            if let Some((c, r)) = &padding {
                v["holomorphic_c"] = json!(rational::to_fraction_string(c));
                v["padding_exponent"] = r.as_ref().map_or(Value::Null, bigint_json);
            }
            render_json(&v)
        }
    })
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let e = engine(&a.common.voa)?;
    let mut report = verify_fa_properties(&e, a.max_n, a.max_g);
    if let Some((left, right)) = registry::tensor_factors(&a.common.voa) {
        let e1 = engine(&left)?;
        let e2 = engine(&right)?;
        report.extend(verify_tensor_laws(&e1, &e2, &e, a.max_n, a.max_g)?);
    }
    if let Some(data) = PointedData::from_spec(e.spec()) {
        report.extend(verify_pointed_laws(&e, &data, a.max_n, a.max_g)?);
    }
    Ok(Outcome {
        code: if report.passed() { EXIT_OK } else { EXIT_FAILED_CHECK },
        stdout: render_report(&report, a.common.output),
        stderr: String::new(),
    })
}

fn render_report(report: &VerifyReport, mode: OutputMode) -> String {
    match mode {
        OutputMode::Table => report.to_string(),
        OutputMode::Json => render_json(&report.to_json_value()),
    }
}

fn spec_summary(name: &str, spec: &VoaSpec) -> Value {
    json!({
        "name": name,
        "labels": spec.labels(),
        "weights": spec.weights().iter().map(rational::to_fraction_string).collect::<Vec<_>>(),
        "central_charge": rational::to_fraction_string(spec.central_charge()),
    })
}

fn registry_cmd(a: &RegistryArgs) -> Result<String> {
    if let Some(sel) = &a.voa {
        let spec = registry::resolve_selector(sel)?;
        return Ok(match a.output {
            OutputMode::Json => format!("{}\n", spec.to_json()),
            OutputMode::Table => {
                let mut out = format!("c = {}\n", rational::display(spec.central_charge()));
                for i in 0..spec.len() {
                    let _ = writeln!(
                        out,
                        "{:>3}  {:<12} weight {:<8} dual {}",
                        i,
                        spec.label(i),
                        rational::display(spec.weight(i)),
                        spec.label(spec.dual(i))
                    );
                }
                out
            }
        });
    }
    let specs = registry::builtin_specs();
    Ok(match a.output {
        OutputMode::Json => render_json(&Value::Array(
            specs.iter().map(|(n, s)| spec_summary(n, s)).collect(),
        )),
        OutputMode::Table => {
            let mut out = String::new();
            for (name, spec) in &specs {
                let _ = writeln!(
                    out,
                    "{name:<34} {:>3} modules  c = {}",
                    spec.len(),
                    rational::display(spec.central_charge())
                );
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("farank").chain(args.iter().copied()))
    }

    #[test]
    fn insertion_grammar() {
        let spec = registry::virasoro(2, 5).unwrap();
        assert_eq!(parse_insertion_list(&spec, "Wmin^3,V").unwrap(), vec![0, 0, 0, 1]);
        assert_eq!(parse_insertion_list(&spec, "[W1_2,V,W1_2]").unwrap(), vec![0, 1, 0]);
        assert!(parse_insertion_list(&spec, "").unwrap().is_empty());
        assert!(matches!(parse_insertion_list(&spec, "[V"), Err(Error::Parse(_))));
        assert!(matches!(parse_insertion_list(&spec, "V^x"), Err(Error::Parse(_))));
        assert!(matches!(parse_insertion_list(&spec, "Q"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn rank_and_exit_codes() {
        let out = run_args(&["rank", "--voa", "virasoro:2,5", "--ins", "Wmin^6", "--genus", "0"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "5\n"));
        let bad = run_args(&["rank", "--voa", "virasoro:2,4", "--ins", ""]);
        assert_eq!(bad.code, EXIT_VALIDATION);
        let unstable = run_args(&["rank", "--voa", "virasoro:2,5", "--ins", "V", "--strict-stability"]);
        assert_eq!(unstable.code, EXIT_DOMAIN);
        let help = run_args(&["--help"]);
        assert_eq!(help.code, 0);
    }
}
