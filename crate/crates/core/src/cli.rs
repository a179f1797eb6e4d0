//! The `bivek` command line.
//!
//! Every command writes one JSON document to stdout (or `--out`). Exit codes:
//! 0 on success, 1 on a computation error or a failed check, 2 on a usage or
//! input-schema error.

use std::ffi::OsString;
use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::bicomplex::ConjKind;
use crate::calculus::{self, EvalMode, FdStencil, QuadratureGrid, TbMode};
use crate::decomp::{self, Mode};
use crate::error::Error;
use crate::funcrep::{parse_bipoly, parse_function_spec, BiPoly, Func};
use crate::hardy::{self, StolzPath, TrigPoly};
use crate::random::spiral_probes;
use crate::suites::{self, SuiteConfig, SuiteName};
use crate::vekua::{self, VekuaProblem};

const SCHEMA_HELP: &str = "\
Function spec:
  {\"kind\":\"bipoly\",\"terms\":[{\"mz\":M,\"mzs\":N,\"coeff\":[a,b,c,d]}, ...]}
    a term is coeff · z^M · z*^N with coeff = a + ib + jc + ijd
  {\"kind\":\"closure\",\"name\":\"pow_one_minus_z\",\"params\":{\"beta\":B}}
  {\"kind\":\"closure\",\"name\":\"exp_of_bipoly\",\"params\":{\"bipoly\":<bipoly spec>}}
Problem:
  {\"A\":<function spec>,\"B\":<function spec>,\"conj\":\"bar_ij\"|\"bar_j\",\"degree_cap\":N}
  missing fields default to A = B = 0, bar_ij, cap 24";

#[derive(Debug, Parser)]
#[command(name = "bivek", version, about = "Bicomplex Vekua equations on the unit disk")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Solver and class-membership tolerance
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Quadrature grid, radial x angular nodes
    #[arg(long, global = true, default_value = "256x512", value_parser = parse_grid)]
    pub grid: QuadratureGrid,
    /// Finite-difference order (2, 4 or 6)
    #[arg(long, global = true, default_value_t = 6)]
    pub fd_order: usize,
    /// Bidegree cap for fixed-point iterates [default: 24, or the problem's own]
    #[arg(long, global = true)]
    pub degree_cap: Option<usize>,
    /// Apply both kernels to each component instead of the matched pair
    #[arg(long, global = true)]
    pub tb_literal: bool,
    /// Conjugation in the B·conj(w) term
    #[arg(long, global = true, value_enum)]
    pub conj: Option<ConjArg>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Compact single-line JSON
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConjArg {
    #[value(name = "bar_ij")]
    BarIj,
    #[value(name = "bar_j")]
    BarJ,
}

impl From<ConjArg> for ConjKind {
    fn from(c: ConjArg) -> Self {
        match c {
            ConjArg::BarIj => ConjKind::BarIj,
            ConjArg::BarJ => ConjKind::BarJ,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Poly,
    Meta,
    Hoiv,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Poly => Mode::Poly,
            ModeArg::Meta => Mode::Meta,
            ModeArg::Hoiv => Mode::Hoiv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Algebra,
    Toperator,
    Vekua,
    Decomp,
    Hardy,
    All,
}

impl From<SuiteArg> for SuiteName {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Algebra => SuiteName::Algebra,
            SuiteArg::Toperator => SuiteName::Toperator,
            SuiteArg::Vekua => SuiteName::Vekua,
            SuiteArg::Decomp => SuiteName::Decomp,
            SuiteArg::Hardy => SuiteName::Hardy,
            SuiteArg::All => SuiteName::All,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the bicomplex Theodorescu transform of a function
    Tb {
        #[arg(long)]
        input: String,
        /// Evaluation point x,y (repeatable)
        #[arg(long, required = true, value_parser = parse_point)]
        at: Vec<Complex64>,
        /// Use quadrature even for polynomials
        #[arg(long)]
        quadrature: bool,
    },
    /// Solve ∂̄w = Aw + B·conj(w)
    Solve {
        #[command(subcommand)]
        method: SolveMethod,
    },
    /// Sup-norm Vekua residual of a candidate solution
    Residual {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 100)]
        probes: usize,
        #[arg(long, default_value_t = 0.9)]
        rmax: f64,
    },
    /// Split a polyanalytic, meta-analytic or HOIV function into coefficients
    Decompose {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        input: String,
        /// Problem document supplying A and B
        #[arg(long)]
        problem: Option<String>,
    },
    /// Circle integrals along r = 1 − 2^{−k}
    Hardy {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = hardy::DEFAULT_SCHEDULE_LEN)]
        k: usize,
        #[arg(long, default_value_t = hardy::DEFAULT_N_THETA)]
        n_theta: usize,
    },
    /// Boundary gaps, nontangential limits and Fourier pairings
    Boundary {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Highest trigonometric test degree
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Boundary angle for the nontangential probe
        #[arg(long, default_value_t = 0.0)]
        theta0: f64,
    },
    /// Distributional pairing with real trigonometric tests
    Pair {
        #[arg(long)]
        input: String,
        /// Test function: 1, cosK or sinK (repeatable)
        #[arg(long, required = true, value_parser = parse_test)]
        test: Vec<(String, TrigPoly)>,
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
    /// Fit sup ‖f(re^{iθ})‖ ≈ C/(1 − r)^α
    Growth {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = hardy::DEFAULT_SCHEDULE_LEN)]
        k: usize,
    },
    /// Run invariant suites
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum SolveMethod {
    /// w = φ·exp(T_B A) for B = 0 and holomorphic φ
    Similarity {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 100)]
        probes: usize,
    },
    /// w = φ + T_B(Aw + B·conj(w)), truncated at the degree cap
    FixedPoint {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
    },
}

fn parse_grid(s: &str) -> Result<QuadratureGrid, String> {
    QuadratureGrid::parse(s).map_err(|e| e.to_string())
}

fn parse_point(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected x,y, got {s:?}"));
    }
    let x: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let y: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Complex64::new(x, y))
}

fn parse_test(s: &str) -> Result<(String, TrigPoly), String> {
    let t = s.trim();
    if t == "1" {
        return Ok((t.into(), TrigPoly::constant(1.0)));
    }
    let (kind, k) = t.split_at(t.len().min(3));
    let k: usize = k.parse().map_err(|_| format!("expected 1, cosK or sinK, got {s:?}"))?;
    match kind {
        "cos" => Ok((t.into(), TrigPoly::cos_k(k))),
        "sin" if k > 0 => Ok((t.into(), TrigPoly::sin_k(k))),
        _ => Err(format!("expected 1, cosK or sinK (K ≥ 1 for sin), got {s:?}")),
    }
}

/// Failure modes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(Error),
    ChecksFailed(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema(_) | Error::Convention(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_doc(src: &str) -> Outcome<Value> {
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        fs::read_to_string(src).map_err(|e| Failure::Usage(format!("reading {src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{src}: invalid JSON: {e}")))
}

fn read_function(src: &str) -> Outcome<Func> {
    Ok(parse_function_spec(&read_doc(src)?)?)
}

fn read_bipoly(src: &str) -> Outcome<BiPoly> {
    Ok(parse_bipoly(&read_doc(src)?)?)
}

fn read_problem(src: &str, g: &GlobalOpts) -> Outcome<VekuaProblem> {
    let mut doc = read_doc(src)?;
    if let (Some(obj), Some(cap)) = (doc.as_object_mut(), g.degree_cap) {
        obj.insert("degree_cap".into(), json!(cap));
    }
    let mut p = VekuaProblem::from_json(&doc)?;
    if let Some(c) = g.conj {
        p.conj = c.into();
    }
    Ok(p)
}

fn tb_mode(g: &GlobalOpts) -> TbMode {
    if g.tb_literal {
        TbMode::Literal
    } else {
        TbMode::ComponentMatched
    }
}

fn stencil(g: &GlobalOpts) -> Outcome<FdStencil> {
    FdStencil::new(g.fd_order, FdStencil::default().h).map_err(|e| Failure::Usage(e.to_string()))
}

fn point_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn cmd_tb(g: &GlobalOpts, input: &str, at: &[Complex64], quadrature: bool) -> Outcome<Value> {
    let f = read_function(input)?;
    let tb = tb_mode(g);
    let mut values = Vec::with_capacity(at.len());
    let route = match (&f, quadrature) {
        (Func::Poly(_), false) => "closed_form",
        _ => "quadrature",
    };
    for &z in at {
        let v = match (&f, quadrature) {
            (Func::Poly(p), false) => calculus::t_bicomplex(p, z, EvalMode::ClosedForm, tb)?,
            (Func::Poly(p), true) => calculus::t_bicomplex(p, z, EvalMode::Quadrature(g.grid), tb)?,
            (Func::Closure(c), _) => calculus::t_bicomplex_quadrature(c, z, &g.grid, tb)?,
        };
        values.push(v);
    }
    Ok(json!({
        "kernel": if g.tb_literal { "literal" } else { "component_matched" },
        "route": route,
        "at": at.iter().map(|&z| point_json(z)).collect::<Vec<_>>(),
        "values": values,
    }))
}

fn cmd_solve(g: &GlobalOpts, method: &SolveMethod) -> Outcome<Value> {
    match method {
        SolveMethod::Similarity { problem, phi, probes } => {
            let problem = read_problem(problem, g)?;
            if !problem.b.is_zero() {
                return Err(Failure::Usage("similarity solver needs B = 0".into()));
            }
            let phi = read_bipoly(phi)?;
            let w = vekua::solve_similarity(&problem.a, &phi)?;
            let pts = spiral_probes(*probes, 0.9);
            let res = vekua::residual(&problem, &Func::Closure(w.clone()), &pts, stencil(g)?)?;
            Ok(json!({
                "method": "similarity",
                "exponent": calculus::t_bicomplex_poly(&problem.a, TbMode::ComponentMatched).to_spec(),
                "phi": phi.to_spec(),
                "residual_sup": res,
                "probes": pts.iter().map(|&z| point_json(z)).collect::<Vec<_>>(),
                "values": pts.iter().map(|&z| w.evaluate(z)).collect::<Vec<_>>(),
            }))
        }
        SolveMethod::FixedPoint { problem, phi, max_iter } => {
            let problem = read_problem(problem, g)?;
            let phi = read_bipoly(phi)?;
            let r = vekua::solve_fixed_point(&problem, &phi, *max_iter, g.tol)?;
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["method"] = json!("fixed-point");
            Ok(v)
        }
    }
}

fn cmd_residual(g: &GlobalOpts, problem: &str, w: &str, probes: usize, rmax: f64) -> Outcome<Value> {
    if !(rmax > 0.0 && rmax < 1.0) || probes == 0 {
        return Err(Failure::Usage("need probes ≥ 1 and 0 < rmax < 1".into()));
    }
    let problem = read_problem(problem, g)?;
    let w = read_function(w)?;
    let pts = spiral_probes(probes, rmax);
    let sup = vekua::residual(&problem, &w, &pts, stencil(g)?)?;
    Ok(json!({
        "residual_sup": sup,
        "probes": probes,
        "rmax": rmax,
        "conj": problem.conj,
        "exact": matches!(w, Func::Poly(_)),
    }))
}

fn cmd_decompose(g: &GlobalOpts, mode: ModeArg, order: usize, input: &str, problem: Option<&str>) -> Outcome<Value> {
    let f = read_bipoly(input)?;
    let (a, b) = match problem {
        Some(p) => {
            let p = read_problem(p, g)?;
            (p.a, p.b)
        }
        None => (BiPoly::zero(), BiPoly::zero()),
    };
    Ok(decomp::extract(mode.into(), &f, order, &a, &b, g.tol)?.to_json())
}

fn cmd_hardy(input: &str, p: f64, k: usize, n_theta: usize) -> Outcome<Value> {
    let f = read_function(input)?;
    let radii = hardy::radii_schedule(k);
    let prof = hardy::hardy_profile(&f, p, &radii, n_theta)?;
    let growth = hardy::growth_fit(&f, &radii)?;
    Ok(json!({
        "p": prof.p,
        "radii": prof.radii,
        "circle_values": prof.circle_values,
        "sup": prof.sup,
        "bounded": prof.bounded,
        "growth_slope": prof.growth_slope,
        "alpha": growth.alpha,
        "pairings": [],
    }))
}

fn pairings_json(f: &Func, tests: &[(String, TrigPoly)], radii: &[f64]) -> Outcome<Vec<Value>> {
    tests
        .iter()
        .map(|(name, t)| {
            let v = hardy::dist_pair(f, t, radii)?;
            Ok(json!({ "test": name, "limit": v.limit, "extrapolants": v.extrapolants }))
        })
        .collect()
}

fn cmd_boundary(input: &str, p: f64, k: usize, max_degree: usize, theta0: f64) -> Outcome<Value> {
    let f = read_function(input)?;
    let radii = hardy::radii_schedule(k);
    let prof = hardy::hardy_profile(&f, p, &radii, hardy::DEFAULT_N_THETA)?;
    let growth = hardy::growth_fit(&f, &radii)?;
    let gaps = radii
        .iter()
        .map(|&r| hardy::boundary_gap(&f, p, r, hardy::DEFAULT_N_THETA))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let mut tests = vec![("1".to_string(), TrigPoly::constant(1.0))];
    for d in 1..=max_degree {
        tests.push((format!("cos{d}"), TrigPoly::cos_k(d)));
        tests.push((format!("sin{d}"), TrigPoly::sin_k(d)));
    }
    let stolz = hardy::stolz_probe(&f, &StolzPath::geometric(theta0, std::f64::consts::FRAC_PI_4, 0.5, 14))?;
    Ok(json!({
        "p": p,
        "radii": radii,
        "circle_values": prof.circle_values,
        "sup": prof.sup,
        "bounded": prof.bounded,
        "alpha": growth.alpha,
        "pairings": pairings_json(&f, &tests, &radii)?,
        "gaps": gaps,
        "nontangential": { "theta0": theta0, "limit": stolz.limit, "oscillation": stolz.oscillation },
    }))
}

fn cmd_pair(input: &str, tests: &[(String, TrigPoly)], k: usize) -> Outcome<Value> {
    let f = read_function(input)?;
    let radii = hardy::radii_schedule(k);
    Ok(json!({ "radii": radii, "pairings": pairings_json(&f, tests, &radii)? }))
}

fn cmd_growth(input: &str, k: usize) -> Outcome<Value> {
    let f = read_function(input)?;
    let radii = hardy::radii_schedule(k);
    let g = hardy::growth_fit(&f, &radii)?;
    Ok(json!({ "C": g.c, "alpha": g.alpha, "radii": radii }))
}

fn cmd_check(g: &GlobalOpts, suite: SuiteArg) -> Outcome<(Value, usize)> {
    stencil(g)?;
    let cfg = SuiteConfig {
        tb: tb_mode(g),
        conj: g.conj.map(Into::into).unwrap_or(ConjKind::BarIj),
        grid: g.grid,
        fd_order: g.fd_order,
        degree_cap: g.degree_cap.unwrap_or(vekua::DEFAULT_FIXED_POINT_CAP),
        tol: g.tol,
    };
    let start = Instant::now();
    let report = suites::run_suite(suite.into(), g.seed, &cfg);
    for inv in &report.invariants {
        let status = match (&inv.skipped, inv.failed) {
            (Some(_), _) => "skip",
            (None, 0) => "pass",
            _ => "FAIL",
        };
        eprintln!("{status} {:<48} {}/{}", inv.name, inv.passed, inv.cases);
    }
    eprintln!(
        "{}: {} cases, {} failed, {:.1}s",
        report.suite.name(),
        report.cases,
        report.failed,
        start.elapsed().as_secs_f64()
    );
    let failed = report.failed;
    Ok((serde_json::to_value(&report).expect("report serializes"), failed))
}

fn dispatch(cli: &Cli) -> Outcome<Value> {
    let g = &cli.global;
    match &cli.command {
        Command::Tb { input, at, quadrature } => cmd_tb(g, input, at, *quadrature),
        Command::Solve { method } => cmd_solve(g, method),
        Command::Residual { problem, w, probes, rmax } => cmd_residual(g, problem, w, *probes, *rmax),
        Command::Decompose { mode, order, input, problem } => cmd_decompose(g, *mode, *order, input, problem.as_deref()),
        Command::Hardy { input, p, k, n_theta } => cmd_hardy(input, *p, *k, *n_theta),
        Command::Boundary { input, p, k, max_degree, theta0 } => cmd_boundary(input, *p, *k, *max_degree, *theta0),
        Command::Pair { input, test, k } => cmd_pair(input, test, *k),
        Command::Growth { input, k } => cmd_growth(input, *k),
        Command::Check { suite } => {
            let (v, failed) = cmd_check(g, *suite)?;
            emit(g, &v)?;
            if failed > 0 {
                return Err(Failure::ChecksFailed(failed));
            }
            Ok(Value::Null)
        }
    }
}

fn emit(g: &GlobalOpts, v: &Value) -> Outcome<()> {
    let mut text = if g.json {
        serde_json::to_string(v)
    } else {
        serde_json::to_string_pretty(v)
    }
    .expect("JSON value serializes");
    text.push('\n');
    match &g.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = dispatch(&cli).and_then(|v| if v.is_null() { Ok(()) } else { emit(&cli.global, &v) });
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{SCHEMA_HELP}");
            2
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(Failure::ChecksFailed(n)) => {
            eprintln!("{n} check case(s) failed");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_points_and_tests() {
        assert_eq!(parse_point("0.3, -0.2").unwrap(), Complex64::new(0.3, -0.2));
        assert!(parse_point("0.3").is_err());
        assert_eq!(parse_test("cos3").unwrap().1, TrigPoly::cos_k(3));
        assert_eq!(parse_test("1").unwrap().1, TrigPoly::constant(1.0));
        assert!(parse_test("tan2").is_err());
        assert!(parse_test("sin0").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["bivek", "frobnicate"]), 2);
        assert_eq!(run(["bivek", "tb", "--input", "{\"kind\":\"nope\"}", "--at", "0,0"]), 2);
        assert_eq!(run(["bivek", "tb", "--input", "/nonexistent.json", "--at", "0,0"]), 2);
        assert_eq!(run(["bivek", "--grid", "3x3", "check"]), 2);
    }

    #[test]
    fn computation_errors_exit_one() {
        let one = r#"{"kind":"bipoly","terms":[{"mz":0,"mzs":0,"coeff":[1,0,0,0]}]}"#;
        assert_eq!(run(["bivek", "tb", "--input", one, "--at", "1.5,0", "--out", "/dev/null"]), 1);
    }
}
