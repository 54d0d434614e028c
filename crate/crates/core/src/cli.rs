//! Command-line front end. [`run`] is the whole program minus process I/O,
//! so it can be driven from tests.
//!
//! Exit codes: 0 ok, 1 usage or constraint error, 2 numeric postcondition
//! failure, 3 resource guard exceeded.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::combinatorics::{binom, coefficient_f, Rational, Scenario};
use crate::error::{Error, Result};
use crate::inequality::{
    helper_bounds, maximize_qm_wide, threshold_visibility, trace_bell, v_prime, VisibilityReport,
    VISIBILITY_TIE_TOL,
};
use crate::lhv::{DeterministicStrategy, LhvOracle};
use crate::paradox::{
    best_paradox_choice, construct_paradox, success_probability_closed, success_probability_exact,
    success_probability_supplement, sweep_success, ConstructionCase,
};
use crate::quantum::SingleQubitBasis;
use crate::report::{fmt_rational, fmt_sig12, to_value, Csv, OutputEnvelope};

/// Overrides the LHV enumeration guard (default 12 qubits).
pub const MAX_QUBITS_ENV: &str = "HARDY_LHV_MAX_QUBITS";

/// Agreement required between independent evaluations of the same probability.
const AGREEMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Generalized n-qubit Hardy paradoxes and Hardy-type Bell inequalities")]
#[command(after_help = "Environment:\n  HARDY_LHV_MAX_QUBITS  raise or lower the 4^n enumeration guard of `lhv` (default 12)")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Sizes {
    /// Number of qubits.
    #[arg(long)]
    pub n: usize,
    /// Size of the b-outcome-1 subsets.
    #[arg(long)]
    pub alpha: usize,
    /// Size of the b-outcome-0 subsets.
    #[arg(long)]
    pub beta: usize,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[command(flatten)]
    pub sizes: Sizes,
    /// Weight of the |α| terms, integer or p/q.
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    pub x: Rational,
    /// Weight of the |β| terms, integer or p/q.
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    pub y: Rational,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the paradox on a generalized GHZ state and check every zero constraint.
    #[command(after_help = "CSV columns: n,alpha,beta,gamma,theta_h,a_c0,a_c1,a_phi,b_c0,b_c1,b_phi,\
constraint_count,max_zero_residual,success_probability,success_closed_form,paradox_holds")]
    Paradox {
        #[command(flatten)]
        sizes: Sizes,
        /// |h1|/|h0| of the state.
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Relative phase of the state.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta_h: f64,
    },
    /// Success probability of [n;n,1] versus [n;2,2] on the GHZ state.
    #[command(after_help = "CSV columns: n,p_standard,p_generalized,p_standard_constructed,\
p_generalized_constructed,generalized_exceeds_standard")]
    Sweep {
        /// Smallest qubit count
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        /// Largest qubit count
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Coefficients and bounds of the Bell inequality I[n;|α|,|β|;x,y].
    #[command(after_help = "CSV columns: n,alpha,beta,x,y,F,F_minimizer,binom_alpha,binom_beta,trace,\
v_prime,lower_bound,W,U,classical_max")]
    Inequality {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Maximal symmetric violation and threshold visibility under white noise.
    #[command(after_help = "CSV columns: n,alpha,beta,x,y,trace,qm_max,theta1,theta2,v_thr,v_prime,\
lower_bound,closed_form,closed_form_exact,wide_qm_max,wide_exceedance")]
    Visibility {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Also search states with free γ and bases with free amplitudes.
        #[arg(long)]
        wide: bool,
        /// Random starts for --wide.
        #[arg(long, default_value_t = 32)]
        starts: usize,
        /// Seed for --wide.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Threshold visibilities of the rows (n;1), (2;1), (n-1;1), (2;2) as (|α|;|β|).
    #[command(after_help = "CSV columns: n,alpha,beta,row,v_thr,is_column_min")]
    Table1 {
        /// Smallest qubit count
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        /// Largest qubit count
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Exhaustive checks over deterministic local strategies.
    Lhv {
        #[command(subcommand)]
        command: LhvCommand,
    },
    /// Largest measurement error per zero constraint that keeps the violation.
    #[command(after_help = "CSV columns: n,alpha,beta,x,y,gamma,success_probability,epsilon,epsilon_exact")]
    Tolerance {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
    /// Constructible (|α|, |β|) with the largest success probability.
    #[command(after_help = "CSV columns: n,gamma,alpha,beta,probability,is_best,is_tie")]
    BestChoice {
        /// Number of qubits
        #[arg(long)]
        n: usize,
        /// |h1|/|h0| of the state
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum LhvCommand {
    /// No strategy meets every zero constraint and the success event.
    #[command(after_help = "CSV columns: n,alpha,beta,strategies_checked,holds,counterexample")]
    Verify {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Classical maximum of the Bell expression.
    #[command(after_help = "CSV columns: n,alpha,beta,x,y,coefficient,max_value,argmax_index,argmax")]
    Bound {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Success coefficient to use instead of F.
        #[arg(long, value_parser = parse_rational)]
        f_override: Option<Rational>,
    },
    /// Exact affine rank of the saturating vertices.
    #[command(after_help = "CSV columns: n,alpha,beta,x,y,saturating_vertex_count,affine_rank,ambient_affine_dim,is_tight")]
    Tight {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("{s:?} is not an integer or p/q fraction ({e})"))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Everything a subcommand produces; the format picks what is printed.
struct Rendered {
    command: &'static str,
    params: Map<String, Value>,
    results: Value,
    csv: Csv,
    human: String,
    warnings: Vec<String>,
}

impl Rendered {
    fn new(command: &'static str, params: Map<String, Value>) -> Self {
        Rendered { command, params, results: Value::Null, csv: Csv::default(), human: String::new(), warnings: Vec::new() }
    }
}

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Human => r.human.clone(),
                Format::Csv => r.csv.render(),
                Format::Json => OutputEnvelope::new(r.command, r.params.clone(), r.results.clone()).to_json() + "\n",
            };
            let mut stderr = String::new();
            for w in &r.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            Outcome { code: if r.warnings.is_empty() { 0 } else { 2 }, stdout, stderr }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn oracle() -> Result<LhvOracle> {
    let mut oracle = LhvOracle::default();
    if let Ok(v) = std::env::var(MAX_QUBITS_ENV) {
        oracle.max_qubits = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{MAX_QUBITS_ENV}={v:?} is not a non-negative integer")))?;
    }
    Ok(oracle)
}

fn execute(cmd: &Command) -> Result<Rendered> {
    match cmd {
        Command::Paradox { sizes, gamma, theta_h } => cmd_paradox(sizes, *gamma, *theta_h),
        Command::Sweep { n_min, n_max } => cmd_sweep(*n_min, *n_max),
        Command::Inequality { scenario } => cmd_inequality(scenario),
        Command::Visibility { scenario, wide, starts, seed } => cmd_visibility(scenario, wide.then_some((*starts, *seed))),
        Command::Table1 { n_min, n_max } => cmd_table1(*n_min, *n_max),
        Command::Lhv { command } => match command {
            LhvCommand::Verify { scenario } => cmd_lhv_verify(scenario),
            LhvCommand::Bound { scenario, f_override } => cmd_lhv_bound(scenario, *f_override),
            LhvCommand::Tight { scenario } => cmd_lhv_tight(scenario),
        },
        Command::Tolerance { scenario, gamma } => cmd_tolerance(scenario, *gamma),
        Command::BestChoice { n, gamma } => cmd_best_choice(*n, *gamma),
    }
}

fn size_params(sizes: &Sizes) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(sizes.n));
    m.insert("alpha".into(), json!(sizes.alpha));
    m.insert("beta".into(), json!(sizes.beta));
    m
}

fn scenario_params(a: &ScenarioArgs) -> Map<String, Value> {
    let mut m = size_params(&a.sizes);
    m.insert("x".into(), json!(fmt_rational(&a.x)));
    m.insert("y".into(), json!(fmt_rational(&a.y)));
    m
}

fn build_scenario(a: &ScenarioArgs) -> Result<Scenario> {
    Scenario::weighted(a.sizes.n, a.sizes.alpha, a.sizes.beta, a.x, a.y)
}

fn basis_json(b: &SingleQubitBasis) -> Value {
    json!({"c0": b.c0(), "c1": b.c1(), "phi": b.phi()})
}

fn case_label(c: &ConstructionCase) -> String {
    match c {
        ConstructionCase::Case1 { m1, m2 } => format!("unequal sizes (m1 = {m1}, m2 = {m2})"),
        ConstructionCase::Case2 { m1, m2 } => format!("equal even sizes (m1 = {m1}, m2 = {m2})"),
    }
}

fn rat(r: &Rational) -> Value {
    json!(fmt_rational(r))
}

fn opt_rat(r: &Option<Rational>) -> Value {
    r.as_ref().map_or(Value::Null, rat)
}

fn cmd_paradox(sizes: &Sizes, gamma: f64, theta_h: f64) -> Result<Rendered> {
    let s = Scenario::new(sizes.n, sizes.alpha, sizes.beta)?;
    let mut params = size_params(sizes);
    params.insert("gamma".into(), json!(gamma));
    params.insert("theta_h".into(), json!(theta_h));
    let mut out = Rendered::new("paradox", params);
    let r = construct_paradox(&s, gamma, theta_h)?;
    let closed = success_probability_closed(&s, gamma)?;
    let supplement = success_probability_supplement(&s, gamma)?;
    let exact = success_probability_exact(&s, gamma);
    if !r.paradox_holds {
        out.warnings.push(format!(
            "{s} at γ = {gamma}: every zero constraint holds but the success probability vanishes, no paradox"
        ));
    }
    let spread = (closed - r.success_probability).abs().max((supplement - r.success_probability).abs());
    if spread > AGREEMENT_TOL {
        out.warnings.push(format!("closed-form and state-vector success probabilities differ by {spread:e}"));
    }
    out.results = json!({
        "scenario": s.to_string(),
        "case": case_label(&r.case),
        "settings": {"a": basis_json(&r.settings.a), "b": basis_json(&r.settings.b)},
        "constraint_count": r.constraint_count,
        "max_zero_constraint_residual": r.max_zero_constraint_residual,
        "success_probability": r.success_probability,
        "success_closed_form": closed,
        "success_alternate_form": supplement,
        "success_exact": opt_rat(&exact),
        "paradox_holds": r.paradox_holds,
    });
    let (a, b) = (r.settings.a, r.settings.b);
    out.csv = Csv::new(&[
        "n", "alpha", "beta", "gamma", "theta_h", "a_c0", "a_c1", "a_phi", "b_c0", "b_c1", "b_phi",
        "constraint_count", "max_zero_residual", "success_probability", "success_closed_form", "paradox_holds",
    ]);
    out.csv.push(vec![
        s.n().into(), s.alpha().into(), s.beta().into(), gamma.into(), r.theta_h.into(),
        a.c0().into(), a.c1().into(), a.phi().into(), b.c0().into(), b.c1().into(), b.phi().into(),
        r.constraint_count.into(), r.max_zero_constraint_residual.into(), r.success_probability.into(),
        closed.into(), r.paradox_holds.into(),
    ]);
    let h = &mut out.human;
    let _ = writeln!(h, "scenario            {s}  ({})", case_label(&r.case));
    let _ = writeln!(h, "state               γ = {}, θ_h = {}", fmt_sig12(gamma), fmt_sig12(r.theta_h));
    for (name, basis) in [("a", a), ("b", b)] {
        let _ = writeln!(
            h,
            "basis {name}             {}|0⟩ + {}·e^(i·{})|1⟩",
            fmt_sig12(basis.c0()),
            fmt_sig12(basis.c1()),
            fmt_sig12(basis.phi())
        );
    }
    let _ = writeln!(h, "zero constraints    {}", r.constraint_count);
    let _ = writeln!(h, "max residual        {:.3e}", r.max_zero_constraint_residual);
    let _ = writeln!(h, "success probability {}", fmt_sig12(r.success_probability));
    if let Some(e) = exact {
        let _ = writeln!(h, "  exact             {}", fmt_rational(&e));
    }
    let _ = writeln!(h, "paradox holds       {}", r.paradox_holds);
    Ok(out)
}

fn cmd_sweep(n_min: usize, n_max: usize) -> Result<Rendered> {
    let mut params = Map::new();
    params.insert("n_min".into(), json!(n_min));
    params.insert("n_max".into(), json!(n_max));
    let mut out = Rendered::new("sweep", params);
    let rows = sweep_success(n_min, n_max)?;
    out.csv = Csv::new(&[
        "n", "p_standard", "p_generalized", "p_standard_constructed", "p_generalized_constructed",
        "generalized_exceeds_standard",
    ]);
    let _ = writeln!(out.human, "{:>3}  {:>16}  {:>16}  P^G > P^S", "n", "P^S", "P^G");
    for row in &rows {
        for (label, formula, built) in [
            ("[n;n,1]", row.p_standard, row.p_standard_constructed),
            ("[n;2,2]", row.p_generalized, row.p_generalized_constructed),
        ] {
            match built {
                Some(b) if (b - formula).abs() > AGREEMENT_TOL => out
                    .warnings
                    .push(format!("n = {}: constructed {label} gives {b}, formula {formula}", row.n)),
                _ => {}
            }
        }
        if !row.generalized_exceeds_standard {
            out.warnings.push(format!("n = {}: P^G does not exceed P^S", row.n));
        }
        out.csv.push(vec![
            row.n.into(), row.p_standard.into(), row.p_generalized.into(), row.p_standard_constructed.into(),
            row.p_generalized_constructed.into(), row.generalized_exceeds_standard.into(),
        ]);
        let _ = writeln!(
            out.human,
            "{:>3}  {:>16}  {:>16}  {}",
            row.n,
            fmt_sig12(row.p_standard),
            fmt_sig12(row.p_generalized),
            row.generalized_exceeds_standard
        );
    }
    out.results = to_value(&rows);
    Ok(out)
}

fn cmd_inequality(a: &ScenarioArgs) -> Result<Rendered> {
    let s = build_scenario(a)?;
    let mut out = Rendered::new("inequality", scenario_params(a));
    let f = coefficient_f(&s)?;
    let trace = trace_bell(&s)?;
    let vp = v_prime(&s)?;
    let lower = 1.0 - 2.0 / (1.0 + crate::combinatorics::rational_to_f64(vp));
    let helpers = helper_bounds(s.n(), s.alpha(), s.beta())?;
    let ca = binom(s.n() as u64, s.alpha() as u64)?;
    let cb = binom(s.n() as u64, s.beta() as u64)?;
    let oracle = oracle()?;
    let classical = if s.n() <= oracle.max_qubits { Some(oracle.classical_bound(&s, None)?.max_value) } else { None };
    if classical.is_some_and(|c| c != Rational::from_integer(0)) {
        out.warnings.push(format!("classical maximum {} is not zero", fmt_rational(&classical.unwrap())));
    }
    out.results = json!({
        "scenario": s.to_string(),
        "F": rat(&f.value),
        "F_minimizer": f.minimizer,
        "binom_alpha": ca.to_string(),
        "binom_beta": cb.to_string(),
        "trace": rat(&trace),
        "v_prime": rat(&vp),
        "lower_bound": lower,
        "W": rat(&helpers.w),
        "U": opt_rat(&helpers.u),
        "classical_max": opt_rat(&classical),
    });
    out.csv = Csv::new(&[
        "n", "alpha", "beta", "x", "y", "F", "F_minimizer", "binom_alpha", "binom_beta", "trace", "v_prime",
        "lower_bound", "W", "U", "classical_max",
    ]);
    out.csv.push(vec![
        s.n().into(), s.alpha().into(), s.beta().into(), (&s.x()).into(), (&s.y()).into(), (&f.value).into(),
        f.minimizer.into(), ca.to_string().into(), cb.to_string().into(), (&trace).into(), (&vp).into(),
        lower.into(), (&helpers.w).into(), helpers.u.as_ref().into(), classical.as_ref().into(),
    ]);
    let h = &mut out.human;
    let (x, y) = (fmt_rational(&s.x()), fmt_rational(&s.y()));
    let _ = writeln!(
        h,
        "I{s} = {}·p(a_1…a_n) − {x}·Σ_{{|S|={}}} p(b_S a_S̄) − {y}·Σ_{{|S|={}}} p(b̄_S a_S̄) ≤ 0",
        fmt_rational(&f.value),
        s.alpha(),
        s.beta()
    );
    let _ = writeln!(h, "F                 {} (split m = {})", fmt_rational(&f.value), f.minimizer);
    let _ = writeln!(h, "terms             {ca} + {cb}");
    let _ = writeln!(h, "tr[I]             {}", fmt_rational(&trace));
    let _ = writeln!(h, "V′                {}", fmt_rational(&vp));
    let _ = writeln!(h, "1 − 2/(1+V′)      {}", fmt_sig12(lower));
    let _ = writeln!(h, "W                 {}", fmt_rational(&helpers.w));
    if let Some(u) = helpers.u {
        let _ = writeln!(h, "U                 {}", fmt_rational(&u));
    }
    match classical {
        Some(c) => {
            let _ = writeln!(h, "classical max     {}", fmt_rational(&c));
        }
        None => {
            let _ = writeln!(h, "classical max     not enumerated (n > {})", oracle.max_qubits);
        }
    }
    Ok(out)
}

fn visibility_checks(v: &VisibilityReport, warnings: &mut Vec<String>) {
    let s = &v.scenario;
    if let Some(t) = v.v_thr {
        if t < v.lower_bound - VISIBILITY_TIE_TOL {
            warnings.push(format!("{s}: v_thr {t} below the bound {}", v.lower_bound));
        }
        if let Some(c) = v.closed_form_f64() {
            if (t - c).abs() > VISIBILITY_TIE_TOL {
                warnings.push(format!("{s}: v_thr {t} differs from the closed form {c}"));
            }
        }
    }
}

fn cmd_visibility(a: &ScenarioArgs, wide: Option<(usize, u64)>) -> Result<Rendered> {
    let s = build_scenario(a)?;
    let mut params = scenario_params(a);
    params.insert("wide".into(), json!(wide.is_some()));
    if let Some((starts, seed)) = wide {
        params.insert("starts".into(), json!(starts));
        params.insert("seed".into(), json!(seed));
    }
    let mut out = Rendered::new("visibility", params);
    let v = threshold_visibility(&s)?;
    visibility_checks(&v, &mut out.warnings);
    let wide_result = wide.map(|(starts, seed)| maximize_qm_wide(&s, starts, seed)).transpose()?;
    let mut results = to_value(&v);
    results["scenario"] = json!(s.to_string());
    results["closed_form_value"] = v.closed_form_f64().map_or(Value::Null, |c| json!(c));
    if let Some(w) = &wide_result {
        results["wide"] = to_value(w);
        results["wide"]["scenario"] = json!(s.to_string());
        results["wide"]["exceedance"] = json!(crate::report::round_sig12(w.exceedance()));
    }
    out.results = results;
    out.csv = Csv::new(&[
        "n", "alpha", "beta", "x", "y", "trace", "qm_max", "theta1", "theta2", "v_thr", "v_prime", "lower_bound",
        "closed_form", "closed_form_exact", "wide_qm_max", "wide_exceedance",
    ]);
    out.csv.push(vec![
        s.n().into(), s.alpha().into(), s.beta().into(), (&s.x()).into(), (&s.y()).into(), (&v.trace_value).into(),
        v.qm_max.into(), v.theta1_star.into(), v.theta2_star.into(), v.v_thr.into(), (&v.v_prime).into(),
        v.lower_bound.into(), v.closed_form_f64().into(), v.closed_form.as_ref().into(),
        wide_result.as_ref().map(|w| w.wide).into(), wide_result.as_ref().map(|w| w.exceedance()).into(),
    ]);
    let h = &mut out.human;
    let _ = writeln!(h, "scenario        {s}");
    let _ = writeln!(h, "tr[I]           {}", fmt_rational(&v.trace_value));
    let _ = writeln!(h, "I_max           {}", fmt_sig12(v.qm_max));
    let _ = writeln!(h, "θ1*, θ2*        {}, {}", fmt_sig12(v.theta1_star), fmt_sig12(v.theta2_star));
    match v.v_thr {
        Some(t) => {
            let _ = writeln!(h, "V_thr           {}", fmt_sig12(t));
        }
        None => {
            let _ = writeln!(h, "V_thr           undefined, no violation with symmetric settings");
        }
    }
    if let Some(c) = v.closed_form {
        let _ = writeln!(h, "closed form     {} = {}", fmt_rational(&c), fmt_sig12(crate::combinatorics::rational_to_f64(c)));
    }
    let _ = writeln!(h, "V′              {}", fmt_rational(&v.v_prime));
    let _ = writeln!(h, "1 − 2/(1+V′)    {}", fmt_sig12(v.lower_bound));
    if let Some(w) = &wide_result {
        let _ = writeln!(h, "wide I_max      {} ({} starts)", fmt_sig12(w.wide), w.starts);
        let _ = writeln!(h, "exceedance      {:.3e}", w.exceedance());
        if w.exceedance() > 1e-6 {
            let _ = writeln!(h, "note            the wider family beats the symmetric optimum");
        }
    }
    Ok(out)
}

/// Row set of the visibility table for one `n`, ascending and deduplicated.
pub fn table1_rows(n: usize) -> Vec<(usize, usize, &'static str)> {
    let mut rows = vec![(n, 1, "(n;1)"), (2, 1, "(2;1)"), (n - 1, 1, "(n-1;1)"), (2, 2, "(2;2)")];
    rows.sort_by_key(|&(a, b, _)| (a, b));
    rows.dedup_by_key(|&mut (a, b, _)| (a, b));
    rows
}

fn cmd_table1(n_min: usize, n_max: usize) -> Result<Rendered> {
    if !(3 <= n_min && n_min <= n_max && n_max <= 10) {
        return Err(Error::InvalidArgument(format!("table needs 3 ≤ n_min ≤ n_max ≤ 10, got {n_min}..{n_max}")));
    }
    let mut params = Map::new();
    params.insert("n_min".into(), json!(n_min));
    params.insert("n_max".into(), json!(n_max));
    let mut out = Rendered::new("table1", params);
    out.csv = Csv::new(&["n", "alpha", "beta", "row", "v_thr", "is_column_min"]);
    let mut columns = Vec::new();
    let mut json_columns = Vec::new();
    for n in n_min..=n_max {
        let mut entries = Vec::new();
        for (alpha, beta, label) in table1_rows(n) {
            let v = threshold_visibility(&Scenario::new(n, alpha, beta)?)?;
            visibility_checks(&v, &mut out.warnings);
            let t = v.v_thr.ok_or_else(|| Error::Numeric(format!("no violation for [{n};{alpha},{beta}]")))?;
            entries.push((alpha, beta, label, t));
        }
        let min = entries.iter().map(|e| e.3).fold(f64::INFINITY, f64::min);
        let mut rows = Vec::new();
        for &(alpha, beta, label, t) in &entries {
            let is_min = t - min <= VISIBILITY_TIE_TOL;
            out.csv.push(vec![n.into(), alpha.into(), beta.into(), label.into(), t.into(), is_min.into()]);
            rows.push(json!({"alpha": alpha, "beta": beta, "row": label, "v_thr": t, "is_column_min": is_min}));
        }
        json_columns.push(json!({"n": n, "rows": rows, "min": min}));
        columns.push((n, entries, min));
    }
    out.results = json!({ "columns": json_columns });
    let h = &mut out.human;
    let _ = write!(h, "{:<8}", "row");
    for (n, _, _) in &columns {
        let _ = write!(h, " {:>10}", format!("n={n}"));
    }
    let _ = writeln!(h);
    for label in ["(n;1)", "(2;1)", "(n-1;1)", "(2;2)"] {
        let _ = write!(h, "{label:<8}");
        for (n, entries, min) in &columns {
            let (alpha, beta) = match label {
                "(n;1)" => (*n, 1),
                "(2;1)" => (2, 1),
                "(n-1;1)" => (n - 1, 1),
                _ => (2, 2),
            };
            let t = entries.iter().find(|e| (e.0, e.1) == (alpha, beta)).map(|e| e.3).expect("row present");
            let mark = if t - min <= VISIBILITY_TIE_TOL { "*" } else { " " };
            let _ = write!(h, " {:>9.6}{mark}", t);
        }
        let _ = writeln!(h);
    }
    let _ = writeln!(h, "* column minimum");
    Ok(out)
}

fn strategy_json(st: &DeterministicStrategy) -> Value {
    json!({"index": st.index(), "a": st.a_values(), "b": st.b_values()})
}

fn cmd_lhv_verify(a: &ScenarioArgs) -> Result<Rendered> {
    let s = build_scenario(a)?;
    let mut out = Rendered::new("lhv verify", scenario_params(a));
    let r = oracle()?.verify_theorem1(&s)?;
    if let Some(ce) = &r.counterexample {
        out.warnings.push(format!("{s}: strategy {ce} meets every zero constraint with a_1…a_n = 1"));
    }
    out.results = json!({
        "scenario": s.to_string(),
        "strategies_checked": r.strategies_checked,
        "holds": r.holds(),
        "counterexample": r.counterexample.as_ref().map_or(Value::Null, strategy_json),
    });
    out.csv = Csv::new(&["n", "alpha", "beta", "strategies_checked", "holds", "counterexample"]);
    out.csv.push(vec![
        s.n().into(), s.alpha().into(), s.beta().into(), r.strategies_checked.into(), r.holds().into(),
        r.counterexample.map(|c| c.to_string()).into(),
    ]);
    let _ = writeln!(out.human, "scenario            {s}");
    let _ = writeln!(out.human, "strategies checked  {}", r.strategies_checked);
    match r.counterexample {
        None => {
            let _ = writeln!(out.human, "result              no deterministic strategy reaches a_1…a_n = 1");
        }
        Some(c) => {
            let _ = writeln!(out.human, "result              counterexample {c}");
        }
    }
    Ok(out)
}

fn cmd_lhv_bound(a: &ScenarioArgs, f_override: Option<Rational>) -> Result<Rendered> {
    let s = build_scenario(a)?;
    let mut params = scenario_params(a);
    params.insert("f_override".into(), opt_rat(&f_override));
    let mut out = Rendered::new("lhv bound", params);
    let r = oracle()?.classical_bound(&s, f_override)?;
    if f_override.is_none() && r.max_value != Rational::from_integer(0) {
        out.warnings.push(format!("{s}: classical maximum at F is {}, expected 0", fmt_rational(&r.max_value)));
    }
    out.results = json!({
        "scenario": s.to_string(),
        "coefficient": rat(&r.coefficient),
        "max_value": rat(&r.max_value),
        "argmax": strategy_json(&r.argmax),
    });
    out.csv = Csv::new(&["n", "alpha", "beta", "x", "y", "coefficient", "max_value", "argmax_index", "argmax"]);
    out.csv.push(vec![
        s.n().into(), s.alpha().into(), s.beta().into(), (&s.x()).into(), (&s.y()).into(), (&r.coefficient).into(),
        (&r.max_value).into(), r.argmax.index().into(), r.argmax.to_string().into(),
    ]);
    let _ = writeln!(out.human, "scenario     {s}");
    let _ = writeln!(out.human, "coefficient  {}", fmt_rational(&r.coefficient));
    let _ = writeln!(out.human, "max          {}", fmt_rational(&r.max_value));
    let _ = writeln!(out.human, "argmax       #{} {}", r.argmax.index(), r.argmax);
    Ok(out)
}

fn cmd_lhv_tight(a: &ScenarioArgs) -> Result<Rendered> {
    let s = build_scenario(a)?;
    let mut out = Rendered::new("lhv tight", scenario_params(a));
    let r = oracle()?.check_tightness(&s)?;
    let mut results = to_value(&r);
    results["scenario"] = json!(s.to_string());
    out.results = results;
    out.csv = Csv::new(&[
        "n", "alpha", "beta", "x", "y", "saturating_vertex_count", "affine_rank", "ambient_affine_dim", "is_tight",
    ]);
    out.csv.push(vec![
        s.n().into(), s.alpha().into(), s.beta().into(), (&s.x()).into(), (&s.y()).into(),
        r.saturating_vertex_count.into(), r.affine_rank.into(), r.ambient_affine_dim.into(), r.is_tight.into(),
    ]);
    let _ = writeln!(out.human, "scenario             {s}");
    let _ = writeln!(out.human, "saturating vertices  {}", r.saturating_vertex_count);
    let _ = writeln!(out.human, "affine rank          {} of {}", r.affine_rank, r.ambient_affine_dim);
    let _ = writeln!(out.human, "tight                {}", r.is_tight);
    Ok(out)
}

fn cmd_tolerance(a: &ScenarioArgs, gamma: f64) -> Result<Rendered> {
    let s = build_scenario(a)?;
    let mut params = scenario_params(a);
    params.insert("gamma".into(), json!(gamma));
    let mut out = Rendered::new("tolerance", params);
    let t = crate::inequality::epsilon_tolerance(&s, gamma)?;
    if t.epsilon <= 0.0 {
        out.warnings.push(format!("{s} at γ = {gamma}: success probability vanishes, no error is tolerated"));
    }
    out.results = json!({
        "scenario": s.to_string(),
        "success_probability": t.success_probability,
        "epsilon": t.epsilon,
        "epsilon_exact": opt_rat(&t.exact),
    });
    out.csv = Csv::new(&["n", "alpha", "beta", "x", "y", "gamma", "success_probability", "epsilon", "epsilon_exact"]);
    out.csv.push(vec![
        s.n().into(), s.alpha().into(), s.beta().into(), (&s.x()).into(), (&s.y()).into(), gamma.into(),
        t.success_probability.into(), t.epsilon.into(), t.exact.as_ref().into(),
    ]);
    let _ = writeln!(out.human, "scenario             {s}, γ = {}", fmt_sig12(gamma));
    let _ = writeln!(out.human, "success probability  {}", fmt_sig12(t.success_probability));
    let exact = t.exact.map(|e| format!(" = {}", fmt_rational(&e))).unwrap_or_default();
    let _ = writeln!(out.human, "ε                    {}{exact}", fmt_sig12(t.epsilon));
    Ok(out)
}

fn cmd_best_choice(n: usize, gamma: f64) -> Result<Rendered> {
    let mut params = Map::new();
    params.insert("n".into(), json!(n));
    params.insert("gamma".into(), json!(gamma));
    let mut out = Rendered::new("best-choice", params);
    let b = best_paradox_choice(n, gamma)?;
    out.results = to_value(&b);
    out.results["degenerate"] = json!(b.is_degenerate());
    out.csv = Csv::new(&["n", "gamma", "alpha", "beta", "probability", "is_best", "is_tie"]);
    let _ = writeln!(out.human, "n = {n}, γ = {}", fmt_sig12(gamma));
    for c in &b.candidates {
        let best = (c.alpha, c.beta) == (b.alpha, b.beta);
        let tie = b.ties.contains(&(c.alpha, c.beta));
        out.csv.push(vec![n.into(), gamma.into(), c.alpha.into(), c.beta.into(), c.probability.into(), best.into(), tie.into()]);
        let mark = if best { " <- best" } else if tie { " (tie)" } else { "" };
        let _ = writeln!(out.human, "  [{n};{},{}]  {}{mark}", c.alpha, c.beta, fmt_sig12(c.probability));
    }
    if b.is_degenerate() {
        let _ = writeln!(out.human, "{} choices tie at the maximum", b.ties.len());
    }
    Ok(out)
}
