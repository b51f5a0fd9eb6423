//! Argument parsing and the `magctl` subcommands.

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maglab_core::constructions::{
    circular_space, cycle_graph, euclidean_fixture, tree_family, isomer, mutant_even, mutant_nonagon, named_type,
    regular_polygon, restricted_polygon, Fixture,
};
use maglab_core::euclid::squared_distance_space;
use maglab_core::exact::rational::parse_rational;
use maglab_core::exact::{Rational, Scalar, Witness};
use maglab_core::genpoly::gr_equal;
use maglab_core::magnitude::{
    default_threshold, formal_magnitude, formal_magnitude_qh, magnitude_at, path_expansion, Method,
};
use maglab_core::metric::{isometry, CircularType, FiniteMetricSpace};
use maglab_core::planar::{enumerate_solutions, expected_solutions, DEFAULT_FSOLVE_CAP};
use maglab_core::report::{identification_report, Check, VerdictReport};
use maglab_core::riesz::{newton_elementary, riesz_at, riesz_equal, riesz_numeric, PowerSumVector};
use serde_json::{json, Value};

use crate::codec::{
    genrational_to_json, interval_to_json, parse_scalar, poly_to_json, report_to_json, scalar_to_json,
    space_from_json, space_to_json, type_from_json, type_to_json,
};
use crate::error::{CliError, Result};
use crate::suites::{run_suite, Options, DEFAULT_CASES, DEFAULT_SEED, SUITES};

#[derive(Parser, Debug)]
#[command(name = "magctl", version, about = "Magnitude, Riesz energy and isometry checks for finite metric spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a space and print it as JSON.
    Build(BuildArgs),
    /// Print one of the Euclidean coordinate fixtures.
    Fixture { name: String },
    /// Formal magnitude, its series and numeric values.
    Magnitude(MagnitudeArgs),
    /// Discrete Riesz energy.
    Riesz(RieszArgs),
    /// Compare two spaces.
    Compare(CompareArgs),
    /// Solutions of F_n(i, j, k) = 0.
    Fsolve(FsolveArgs),
    /// Run a verification suite, or `all`.
    VerifyPaper {
        suite: String,
        /// Cases per randomized property.
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
    },
    /// Mutant, isomer and F_n facts for one n.
    Identify {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    Cycle,
    Polygon,
    Circular,
    Restricted,
    Mutant,
    NonagonMutant,
    Isomer,
    Trees,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(value_enum)]
    pub kind: BuildKind,
    #[arg(long)]
    pub n: Option<usize>,
    /// Source type: `cycle`, `polygon` or `type-file`.
    #[arg(long, default_value = "polygon")]
    pub from: String,
    /// JSON file `{"n": n, "d": [...]}` used with `--from type-file`.
    #[arg(long)]
    pub type_file: Option<String>,
    /// Number of points of a restricted polygon.
    #[arg(long)]
    pub m: Option<usize>,
    /// Symbol names of the trees, comma separated.
    #[arg(long, default_value = "a,b,c")]
    pub symbols: String,
    /// Witness values such as `a=1,b=2,c=3`.
    #[arg(long)]
    pub witness: Option<String>,
}

#[derive(Args, Debug)]
pub struct MagnitudeArgs {
    /// Space JSON file, or `-` for standard input.
    pub space: String,
    /// Compare with n / (row sum) for quasi-homogeneous spaces.
    #[arg(long)]
    pub closed_form: bool,
    /// Truncation bound of the series, as a canonical scalar.
    #[arg(long)]
    pub series: Option<String>,
    /// Check the series against the sum over paths.
    #[arg(long)]
    pub path_oracle: bool,
    /// Evaluate the magnitude of tX at this rational t.
    #[arg(long)]
    pub at: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub prec: u32,
}

#[derive(Args, Debug)]
pub struct RieszArgs {
    pub space: String,
    /// Exact value at an integer z.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<i64>,
    /// Real part of a complex z, for an interval evaluation.
    #[arg(long, allow_hyphen_values = true)]
    pub re: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub im: String,
    #[arg(long, default_value_t = 64)]
    pub prec: u32,
    /// B_X(1..N) and the elementary symmetric functions of the edge lengths.
    #[arg(long)]
    pub power_sums: bool,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    pub a: String,
    pub b: String,
    #[arg(long)]
    pub magnitude: bool,
    #[arg(long)]
    pub riesz: bool,
    #[arg(long)]
    pub isometry: bool,
}

#[derive(Args, Debug)]
pub struct FsolveArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Inclusive range such as `6..30`.
    #[arg(long)]
    pub range: Option<String>,
}

/// Result of one command: the JSON value, its text rendering and whether
/// every check passed.
pub struct Outcome {
    pub value: Value,
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    fn data(value: Value, text: String) -> Self {
        Outcome { value, text, pass: true }
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn read_json(path: &str) -> Result<Value> {
    let s = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io { path: path.into(), source: e })?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), source: e })?
    };
    Ok(serde_json::from_str(&s)?)
}

pub fn read_space(path: &str) -> Result<FiniteMetricSpace> {
    space_from_json(&read_json(path)?)
}

fn parse_witness(s: &str) -> Result<Witness> {
    let vals = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| input(format!("witness entry `{p}` needs `=`")))?;
            let v = parse_rational(v).ok_or_else(|| input(format!("witness value `{v}` is not rational")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Witness::new(vals)?)
}

fn parse_rational_arg(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| input(format!("`{s}` is not a rational")))
}

fn matrix_text(x: &FiniteMetricSpace) -> String {
    let mut out = String::new();
    if let Some(l) = x.label() {
        out.push_str(&format!("# {l}\n"));
    }
    for row in x.rows() {
        let cells: Vec<String> = row.iter().map(Scalar::canonical_text).collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

pub fn report_text(r: &VerdictReport, timing: bool) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        if c.witness.is_empty() {
            out.push_str(&format!("{tag} {}\n", c.name));
        } else {
            out.push_str(&format!("{tag} {}  [{}]\n", c.name, c.witness));
        }
    }
    if timing {
        if let Some(ms) = r.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
    }
    out.push_str(if r.all_pass() { "result: PASS\n" } else { "result: FAIL\n" });
    out
}

fn report_outcome(r: VerdictReport, timing: bool) -> Outcome {
    Outcome { value: report_to_json(&r, timing), text: report_text(&r, timing), pass: r.all_pass() }
}

fn source_type(args: &BuildArgs, n: Option<usize>) -> Result<CircularType> {
    if args.from == "type-file" {
        let path = args.type_file.as_deref().ok_or_else(|| input("`--from type-file` needs `--type-file`"))?;
        return type_from_json(&read_json(path)?);
    }
    let n = n.ok_or_else(|| input("`--n` is required"))?;
    Ok(named_type(&args.from, n)?)
}

pub fn cmd_build(args: &BuildArgs) -> Result<Outcome> {
    let w = args.witness.as_deref().map(parse_witness).transpose()?;
    let need_n = || args.n.ok_or_else(|| input("`--n` is required"));
    let x = match args.kind {
        BuildKind::Cycle => cycle_graph(need_n()?)?,
        BuildKind::Polygon => regular_polygon(need_n()?)?,
        BuildKind::Circular => circular_space(&source_type(args, args.n)?, w.as_ref())?,
        BuildKind::Restricted => {
            let m = args.m.ok_or_else(|| input("`--m` is required"))?;
            restricted_polygon(&source_type(args, args.n)?, m, w.as_ref())?
        }
        BuildKind::Mutant => mutant_even(&source_type(args, args.n)?, w.as_ref())?,
        BuildKind::NonagonMutant => mutant_nonagon()?,
        BuildKind::Isomer => isomer(&source_type(args, args.n)?, w.as_ref())?,
        BuildKind::Trees => {
            let s: Vec<&str> = args.symbols.split(',').map(str::trim).collect();
            if s.len() != 3 {
                return Err(input("`--symbols` needs three names"));
            }
            let spaces = tree_family(s[0], s[1], s[2], w.as_ref())?;
            let text = spaces.iter().map(matrix_text).collect::<Vec<_>>().join("\n");
            return Ok(Outcome::data(Value::Array(spaces.iter().map(space_to_json).collect()), text));
        }
    };
    Ok(Outcome::data(space_to_json(&x), matrix_text(&x)))
}

pub fn cmd_fixture(name: &str) -> Result<Outcome> {
    match euclidean_fixture(name)? {
        Fixture::Points(p) => {
            let pts: Vec<Value> =
                p.points().iter().map(|v| Value::Array(v.iter().map(scalar_to_json).collect())).collect();
            let d2 = squared_distance_space(&p)?;
            let sq: Vec<Value> = d2.iter().map(|r| Value::Array(r.iter().map(scalar_to_json).collect())).collect();
            let mut text = String::new();
            for v in p.points() {
                text.push_str(&v.iter().map(Scalar::canonical_text).collect::<Vec<_>>().join("  "));
                text.push('\n');
            }
            Ok(Outcome::data(json!({"name": name, "points": pts, "squared": sq}), text))
        }
        Fixture::Space(x) => Ok(Outcome::data(space_to_json(&x), matrix_text(&x))),
    }
}

pub fn cmd_magnitude(args: &MagnitudeArgs) -> Result<Outcome> {
    let x = read_space(&args.space)?;
    let w = x.witness();
    let m = formal_magnitude(&x)?;
    let method = match m.method {
        Method::ConstantWeighting => "constant_weighting",
        Method::Elimination => "elimination",
    };
    let mut out = json!({
        "n": x.n(),
        "method": method,
        "magnitude": genrational_to_json(&m.value, w)?,
    });
    if let Some(l) = x.label() {
        out["label"] = json!(l);
    }
    let mut text = format!("m(q) = ({}) / ({})\n", m.value.num().to_text(w)?, m.value.den().to_text(w)?);
    let mut pass = true;

    if args.closed_form {
        match x.quasi_homog_type() {
            Some(t) => {
                let c = formal_magnitude_qh(&t, x.n())?;
                let agrees = gr_equal(&c, &m.value)?;
                pass &= agrees;
                out["closed_form"] = json!({"value": genrational_to_json(&c, w)?, "agrees": agrees});
                text.push_str(&format!("closed form agrees: {agrees}\n"));
            }
            None => {
                out["closed_form"] = json!({"value": null, "agrees": null});
                text.push_str("closed form: not quasi-homogeneous\n");
            }
        }
    }
    if args.series.is_some() || args.path_oracle {
        let bound = match &args.series {
            Some(s) => parse_scalar(s)?,
            None => default_threshold(&x)?,
        };
        let s = m.value.series(&bound, w)?;
        out["series"] = json!({"bound": scalar_to_json(&bound), "value": poly_to_json(&s, w)?});
        text.push_str(&format!("series to q^{}: {}\n", bound.canonical_text(), s.to_text(w)?));
        if args.path_oracle {
            let p = path_expansion(&x, &bound)?;
            let agrees = p == s;
            pass &= agrees;
            out["path_oracle"] = json!({"value": poly_to_json(&p, w)?, "agrees": agrees});
            text.push_str(&format!("path oracle agrees: {agrees}\n"));
        }
    }
    if let Some(t) = &args.at {
        let t = parse_rational_arg(t)?;
        let iv = magnitude_at(&x, &t, args.prec)?;
        let digits = (args.prec as f64 * std::f64::consts::LOG10_2) as u32;
        out["at"] = json!({"t": crate::codec::rational_to_json(&t), "value": interval_to_json(&iv, digits)});
        let (lo, hi) = iv.to_decimal(digits);
        text.push_str(&format!("M(t) in [{lo}, {hi}]\n"));
    }
    Ok(Outcome { value: out, text, pass })
}

pub fn cmd_riesz(args: &RieszArgs) -> Result<Outcome> {
    let x = read_space(&args.space)?;
    let mut out = json!({"n": x.n()});
    let mut text = String::new();
    if let Some(z) = args.z {
        let v = riesz_at(&x, z)?;
        out["z"] = json!(z);
        out["value"] = scalar_to_json(&v);
        text.push_str(&format!("B({z}) = {}\n", v.canonical_text()));
    }
    if let Some(re) = &args.re {
        let (re, im) = (parse_rational_arg(re)?, parse_rational_arg(&args.im)?);
        let (a, b) = riesz_numeric(&x, &re, &im, args.prec)?;
        let digits = (args.prec as f64 * std::f64::consts::LOG10_2) as u32;
        out["numeric"] = json!({
            "re": crate::codec::rational_to_json(&re),
            "im": crate::codec::rational_to_json(&im),
            "value_re": interval_to_json(&a, digits),
            "value_im": interval_to_json(&b, digits),
        });
        let ((alo, ahi), (blo, bhi)) = (a.to_decimal(digits), b.to_decimal(digits));
        text.push_str(&format!("B(z) in [{alo}, {ahi}] + i [{blo}, {bhi}]\n"));
    }
    if args.power_sums {
        let ps = PowerSumVector::of(&x)?;
        let e = newton_elementary(&ps)?;
        out["power_sums"] = Value::Array(ps.b.iter().map(scalar_to_json).collect());
        out["elementary"] = Value::Array(e.iter().map(scalar_to_json).collect());
        text.push_str(&format!("power sums: {}\n", ps.b.iter().map(Scalar::canonical_text).collect::<Vec<_>>().join(", ")));
    }
    if args.z.is_none() && args.re.is_none() && !args.power_sums {
        return Err(input("give `--z`, `--re` or `--power-sums`"));
    }
    Ok(Outcome::data(out, text))
}

pub fn cmd_compare(args: &CompareArgs, timing: bool) -> Result<Outcome> {
    let (a, b) = (read_space(&args.a)?, read_space(&args.b)?);
    let all = !(args.magnitude || args.riesz || args.isometry);
    let mut r = VerdictReport::new(vec![args.a.clone(), args.b.clone()]);
    let start = std::time::Instant::now();
    if all || args.magnitude {
        let same = gr_equal(&formal_magnitude(&a)?.value, &formal_magnitude(&b)?.value)?;
        r.push(Check::new("compare.magnitude_equal", same, ""));
    }
    if all || args.riesz {
        r.push(Check::new("compare.riesz_equal", riesz_equal(&a, &b)?, ""));
    }
    if all || args.isometry {
        let p = isometry(&a, &b, usize::MAX)?;
        let witness = p.as_ref().map(|p| format!("{p:?}")).unwrap_or_default();
        r.push(Check::new("compare.isometric", p.is_some(), witness));
    }
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report_outcome(r, timing))
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once("..").ok_or_else(|| input(format!("range `{s}` must look like 6..30")))?;
    let b = b.trim_start_matches('=');
    let lo = a.trim().parse().map_err(|_| input(format!("bad range start `{a}`")))?;
    let hi = b.trim().parse().map_err(|_| input(format!("bad range end `{b}`")))?;
    if lo > hi {
        return Err(input(format!("empty range `{s}`")));
    }
    Ok((lo, hi))
}

fn fsolve_one(n: usize) -> Result<(Value, String, bool)> {
    let got = enumerate_solutions(n, DEFAULT_FSOLVE_CAP)?;
    let want = expected_solutions(n);
    let missing: Vec<_> = want.iter().filter(|t| !got.solutions.contains(t)).collect();
    let extra: Vec<_> = got.solutions.iter().filter(|t| !want.contains(t)).collect();
    let ok = missing.is_empty() && extra.is_empty();
    let triples = |v: &[(usize, usize, usize)]| -> Vec<Value> { v.iter().map(|&(i, j, k)| json!([i, j, k])).collect() };
    let v = json!({
        "n": n,
        "solutions": triples(&got.solutions),
        "expected": triples(&want),
        "diff": {
            "missing": missing.iter().map(|&&(i, j, k)| json!([i, j, k])).collect::<Vec<_>>(),
            "extra": extra.iter().map(|&&(i, j, k)| json!([i, j, k])).collect::<Vec<_>>(),
        },
    });
    let text = format!("n = {n}: {:?}{}\n", got.solutions, if ok { "" } else { "  (differs from the expected set)" });
    Ok((v, text, ok))
}

pub fn cmd_fsolve(args: &FsolveArgs) -> Result<Outcome> {
    match (args.n, &args.range) {
        (Some(n), None) => {
            let (v, text, pass) = fsolve_one(n)?;
            Ok(Outcome { value: v, text, pass })
        }
        (None, Some(r)) => {
            let (lo, hi) = parse_range(r)?;
            use rayon::prelude::*;
            let rows: Vec<Result<(Value, String, bool)>> = (lo..=hi).into_par_iter().map(fsolve_one).collect();
            let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
            let pass = rows.iter().all(|r| r.2);
            let text = rows.iter().map(|r| r.1.as_str()).collect::<String>();
            let value = json!({"range": [lo, hi], "results": rows.into_iter().map(|r| r.0).collect::<Vec<_>>(), "pass": pass});
            Ok(Outcome { value, text, pass })
        }
        (Some(n), Some(r)) => {
            // a single n, checked to lie in the range
            let (lo, hi) = parse_range(r)?;
            if n < lo || n > hi {
                return Err(input(format!("n = {n} is outside {r}")));
            }
            let (v, text, pass) = fsolve_one(n)?;
            Ok(Outcome { value: v, text, pass })
        }
        (None, None) => Err(input("give `--n` or `--range`")),
    }
}

pub fn cmd_verify(suite: &str, opts: &Options, timing: bool) -> Result<Outcome> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut total = VerdictReport::new(Vec::new());
    let mut ms = 0;
    for name in names {
        let r = run_suite(name, opts)?;
        ms += r.elapsed_ms.unwrap_or(0);
        total.extend(r);
    }
    total.elapsed_ms = Some(ms);
    Ok(report_outcome(total, timing))
}

pub fn cmd_identify(n: usize, timing: bool) -> Result<Outcome> {
    let start = std::time::Instant::now();
    let mut r = identification_report(n, DEFAULT_FSOLVE_CAP)?;
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report_outcome(r, timing))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let opts = Options { seed: cli.seed, jobs: cli.jobs, ..Options::default() };
    match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Fixture { name } => cmd_fixture(name),
        Command::Magnitude(a) => cmd_magnitude(a),
        Command::Riesz(a) => cmd_riesz(a),
        Command::Compare(a) => cmd_compare(a, cli.timing),
        Command::Fsolve(a) => {
            if let Some(j) = cli.jobs {
                let pool = rayon::ThreadPoolBuilder::new().num_threads(j).build().map_err(|e| input(e.to_string()))?;
                pool.install(|| cmd_fsolve(a))
            } else {
                cmd_fsolve(a)
            }
        }
        Command::VerifyPaper { suite, cases } => cmd_verify(suite, &Options { cases: *cases, ..opts }, cli.timing),
        Command::Identify { n } => cmd_identify(*n, cli.timing),
    }
}

/// JSON for a circular type, used by `build --from type-file` callers.
pub fn type_json(t: &CircularType) -> Value {
    type_to_json(t)
}
