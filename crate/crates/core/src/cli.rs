//! Command-line front end.
//!
//! Precedence, lowest first: built-in defaults, `ZETALAB_TOL` /
//! `ZETALAB_THREADS`, the `--config` JSON file, explicit flags. The resolved
//! [`RunConfig`] is hashed and the hash is stamped on every record.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::dirichlet::{
    character, enumerate_characters, gauss_sum, hardy_l, l_interpolation, l_oracle, lambda, phi_paper,
    phi_reference, scan_l_zeros, totient, ScanFormula,
};
use crate::dynamics::{
    boundedness_report, concentration_check, dyn_params, exact_conditions, ratio_trajectory, Branch,
    CenteredPoint, Rational,
};
use crate::error::{Error, Result};
use crate::numerics::{QuadratureConfig, RngSeed};
use crate::verify::{lemma2_cases, price_cases, run_criterion, theta_cases, VerifyOptions, CRITERIA};
use crate::zeta::{
    divergence_exponent_with, generator_z, generator_z_continued, generator_zn_sequence,
    interpolate_phi_with_error, phi_oracle_with_error, phi_product, scan_zeros, xi, DivergenceEstimator,
    StripPoint,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

const MAX_MODULUS: u64 = 100_000;
const PRICE_THRESHOLD: f64 = 1e-5;
const THETA_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "zetalab", version, about = "Completed zeta and L-function laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Serialize)]
struct CommonArgs {
    /// Pass/fail tolerance for residual checks
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Absolute and relative quadrature tolerance
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write records here instead of stdout
    #[arg(long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// JSON file of defaults, overridden by flags
    #[arg(long, global = true)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Completed zeta function
    #[command(subcommand)]
    Phi(PhiCmd),
    /// Finite-N generator diagnostics
    #[command(subcommand)]
    Zn(ZnCmd),
    /// Completed Dirichlet L-functions
    #[command(subcommand)]
    Lfun(LfunCmd),
    /// Dirichlet characters
    #[command(subcommand)]
    Char(CharCmd),
    /// Time-parameterized trajectories
    #[command(subcommand)]
    Dyn(DynCmd),
    /// Acceptance checks
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum PhiCmd {
    /// Oracle, product form and ξ at s = (1/2 − σ) + jω
    #[command(allow_negative_numbers = true)]
    Eval(PointArgs),
    /// Generator interpolation against the oracle
    #[command(allow_negative_numbers = true)]
    Identity(PointArgs),
    /// Critical-line zeros by bisection
    Zeros(ScanArgs),
}

#[derive(Subcommand, Debug)]
enum ZnCmd {
    /// Growth exponent of the finite-N generator
    #[command(allow_negative_numbers = true)]
    Diverge(DivergeArgs),
}

#[derive(Subcommand, Debug)]
enum LfunCmd {
    #[command(allow_negative_numbers = true)]
    Eval(LPointArgs),
    /// Continuation and generator residuals against the reference
    #[command(allow_negative_numbers = true)]
    Residual(LPointArgs),
    Zeros(LScanArgs),
}

#[derive(Subcommand, Debug)]
enum CharCmd {
    List(ModulusArgs),
}

#[derive(Subcommand, Debug)]
enum DynCmd {
    #[command(allow_negative_numbers = true)]
    Trajectory(TrajectoryArgs),
    #[command(allow_negative_numbers = true)]
    Concentration(ConcentrationArgs),
    #[command(allow_negative_numbers = true)]
    Bounded(BoundedArgs),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Price,
    Lemma2,
    Theta,
    All(AllArgs),
}

#[derive(Args, Debug, Serialize)]
struct PointArgs {
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct ScanArgs {
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    refine_tol: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct DivergeArgs {
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    /// Comma-separated increasing N values
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<u64>>,
    /// consecutive_increments or fixed_base
    #[arg(long)]
    estimator: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct LPointArgs {
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long)]
    label: Option<usize>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct LScanArgs {
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long)]
    label: Option<usize>,
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    refine_tol: Option<f64>,
    /// reference or paper
    #[arg(long)]
    formula: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct ModulusArgs {
    #[arg(long)]
    modulus: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct TrajectoryArgs {
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_step: Option<f64>,
    /// riemann or dirichlet_odd
    #[arg(long)]
    branch: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct ConcentrationArgs {
    /// Single time; omit for the grid t ∈ {2, 4, 6}
    #[arg(long)]
    t: Option<f64>,
    /// Single ε; omit for ε ∈ {0.05, 0.1}
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    branch: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct BoundedArgs {
    #[arg(long)]
    sigma_lo: Option<f64>,
    #[arg(long)]
    sigma_hi: Option<f64>,
    #[arg(long)]
    sigma_step: Option<f64>,
    #[arg(long)]
    omega_lo: Option<f64>,
    #[arg(long)]
    omega_hi: Option<f64>,
    #[arg(long)]
    omega_step: Option<f64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    branch: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct AllArgs {
    /// Comma-separated criterion ids; all when omitted
    #[arg(long, value_delimiter = ',')]
    criteria: Option<Vec<u32>>,
    #[arg(long)]
    samples: Option<usize>,
}

/// Every parameter any subcommand reads, fully resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub sigma: f64,
    pub omega: f64,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub refine_tol: f64,
    pub n: u64,
    pub n_list: Vec<u64>,
    pub estimator: DivergenceEstimator,
    pub modulus: u64,
    pub label: usize,
    pub formula: ScanFormula,
    pub branch: Branch,
    pub t: Option<f64>,
    pub epsilon: Option<f64>,
    pub t_max: f64,
    pub t_step: f64,
    pub samples: usize,
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub sigma_step: f64,
    pub omega_lo: f64,
    pub omega_hi: f64,
    pub omega_step: f64,
    pub criteria: Vec<u32>,
    pub tol: f64,
    pub quad_tol: f64,
    pub seed: u64,
    pub threads: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            sigma: 0.0,
            omega: 14.134725,
            lo: 10.0,
            hi: 30.0,
            step: 0.05,
            refine_tol: 1e-10,
            n: 8,
            n_list: vec![100, 200, 400, 800, 1600],
            estimator: DivergenceEstimator::default(),
            modulus: 4,
            label: 1,
            formula: ScanFormula::default(),
            branch: Branch::default(),
            t: None,
            epsilon: None,
            t_max: 30.0,
            t_step: 0.05,
            samples: 100_000,
            sigma_lo: -0.4,
            sigma_hi: 0.4,
            sigma_step: 0.1,
            omega_lo: 0.5,
            omega_hi: 3.0,
            omega_step: 0.5,
            criteria: Vec::new(),
            tol: 1e-9,
            quad_tol: 1e-12,
            seed: 20240521,
            threads: 1,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig::with_tolerance(self.quad_tol)
    }

    /// SHA-256 of the configuration with presentation-only fields normalized.
    pub fn hash(&self) -> String {
        let canonical = RunConfig {
            format: Format::Json,
            threads: 1,
            ..self.clone()
        };
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("tol", self.tol),
            ("quad_tol", self.quad_tol),
            ("step", self.step),
            ("refine_tol", self.refine_tol),
            ("t_step", self.t_step),
            ("sigma_step", self.sigma_step),
            ("omega_step", self.omega_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive and finite")));
            }
        }
        for (name, v) in [("sigma", self.sigma), ("omega", self.omega), ("lo", self.lo), ("hi", self.hi)] {
            if !v.is_finite() {
                return Err(Error::domain(format!("{name} must be finite")));
            }
        }
        if self.threads < 1 {
            return Err(Error::domain("threads must be at least 1"));
        }
        if self.modulus < 1 || self.modulus > MAX_MODULUS {
            return Err(Error::domain(format!("modulus must lie in [1, {MAX_MODULUS}]")));
        }
        if let Some(&bad) = self.criteria.iter().find(|&&c| !(1..=15).contains(&c)) {
            return Err(Error::domain(format!("unknown criterion {bad}")));
        }
        Ok(())
    }
}

fn strip_nulls(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m.into_iter().filter(|(_, v)| !v.is_null()).collect(),
        _ => Map::new(),
    }
}

fn to_map<T: Serialize>(v: &T) -> Map<String, Value> {
    strip_nulls(serde_json::to_value(v).expect("arguments serialize"))
}

fn env_layer() -> Result<Map<String, Value>> {
    let mut m = Map::new();
    if let Ok(v) = std::env::var("ZETALAB_TOL") {
        let tol: f64 = v
            .parse()
            .map_err(|_| Error::domain(format!("ZETALAB_TOL is not a number: {v}")))?;
        m.insert("tol".into(), json!(tol));
    }
    if let Ok(v) = std::env::var("ZETALAB_THREADS") {
        let threads: usize = v
            .parse()
            .map_err(|_| Error::domain(format!("ZETALAB_THREADS is not an integer: {v}")))?;
        m.insert("threads".into(), json!(threads));
    }
    Ok(m)
}

fn file_layer(path: &Option<PathBuf>) -> Result<Map<String, Value>> {
    let Some(path) = path else {
        return Ok(Map::new());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read config {}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(Error::domain("config file must hold a JSON object")),
        Err(e) => Err(Error::domain(format!("config file is not valid JSON: {e}"))),
    }
}

fn command_layer(cmd: &Command) -> (String, Map<String, Value>) {
    let (name, args) = match cmd {
        Command::Phi(PhiCmd::Eval(a)) => ("phi eval", to_map(a)),
        Command::Phi(PhiCmd::Identity(a)) => ("phi identity", to_map(a)),
        Command::Phi(PhiCmd::Zeros(a)) => ("phi zeros", to_map(a)),
        Command::Zn(ZnCmd::Diverge(a)) => ("zn diverge", to_map(a)),
        Command::Lfun(LfunCmd::Eval(a)) => ("lfun eval", to_map(a)),
        Command::Lfun(LfunCmd::Residual(a)) => ("lfun residual", to_map(a)),
        Command::Lfun(LfunCmd::Zeros(a)) => ("lfun zeros", to_map(a)),
        Command::Char(CharCmd::List(a)) => ("char list", to_map(a)),
        Command::Dyn(DynCmd::Trajectory(a)) => ("dyn trajectory", to_map(a)),
        Command::Dyn(DynCmd::Concentration(a)) => ("dyn concentration", to_map(a)),
        Command::Dyn(DynCmd::Bounded(a)) => ("dyn bounded", to_map(a)),
        Command::Verify(VerifyCmd::Price) => ("verify price", Map::new()),
        Command::Verify(VerifyCmd::Lemma2) => ("verify lemma2", Map::new()),
        Command::Verify(VerifyCmd::Theta) => ("verify theta", Map::new()),
        Command::Verify(VerifyCmd::All(a)) => ("verify all", to_map(a)),
    };
    (name.to_string(), args)
}

/// Merge the configuration layers into a [`RunConfig`].
fn resolve(cli: &Cli) -> Result<RunConfig> {
    let mut merged = env_layer()?;
    merged.extend(file_layer(&cli.common.config)?);
    merged.extend(to_map(&cli.common));
    let (name, args) = command_layer(&cli.command);
    merged.extend(args);
    merged.insert("command".into(), json!(name));
    let cfg: RunConfig = serde_json::from_value(Value::Object(merged))
        .map_err(|e| Error::domain(format!("invalid configuration: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

fn cx(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

/// Records plus whether every assertion they carry held.
struct Output {
    records: Vec<Map<String, Value>>,
    passed: bool,
}

impl Output {
    fn new(records: Vec<Map<String, Value>>) -> Self {
        let passed = records
            .iter()
            .all(|r| r.get("passed").and_then(Value::as_bool).unwrap_or(true));
        Output { records, passed }
    }
}

fn point_s(cfg: &RunConfig) -> Complex64 {
    Complex64::new(0.5 - cfg.sigma, cfg.omega)
}

fn phi_eval(cfg: &RunConfig) -> Result<Output> {
    let q = cfg.quadrature();
    let s = point_s(cfg);
    let (phi, err) = phi_oracle_with_error(s, &q)?;
    let product = phi_product(s)?;
    let residual = (phi - product).norm();
    Ok(Output::new(vec![obj(json!({
        "s": cx(s),
        "sigma": cfg.sigma,
        "omega": cfg.omega,
        "phi_oracle": cx(phi),
        "phi_product": cx(product),
        "xi": cx(xi(s, &q)?),
        "residual": residual,
        "quadrature_error": err,
        "passed": residual <= cfg.tol,
    }))]))
}

fn phi_identity(cfg: &RunConfig) -> Result<Output> {
    let q = cfg.quadrature();
    let p = StripPoint::new(cfg.sigma, cfg.omega)?;
    let s = p.s();
    let (phi, e1) = phi_oracle_with_error(s, &q)?;
    let (interp, e2) = interpolate_phi_with_error(s, &q)?;
    let residual = (phi - interp).norm();
    Ok(Output::new(vec![obj(json!({
        "s": cx(s),
        "sigma": cfg.sigma,
        "omega": cfg.omega,
        "phi_oracle": cx(phi),
        "interpolated": cx(interp),
        "z": cx(generator_z(s, &q)?.value),
        "z_mirror": cx(generator_z(p.mirror().s(), &q)?.value),
        "residual": residual,
        "quadrature_error": e1 + e2,
        "passed": residual <= cfg.tol,
    }))]))
}

fn phi_zeros(cfg: &RunConfig) -> Result<Output> {
    let q = cfg.quadrature();
    let zeros = scan_zeros(cfg.lo, cfg.hi, cfg.step, cfg.refine_tol)?;
    let mut out = Vec::new();
    for (i, &w) in zeros.iter().enumerate() {
        let s = Complex64::new(0.5, w);
        let (phi, err) = phi_oracle_with_error(s, &q)?;
        out.push(obj(json!({
            "index": i + 1,
            "omega": w,
            "xi": xi(s, &q)?.re,
            "phi_abs": phi.norm(),
            "quadrature_error": err,
        })));
    }
    Ok(Output::new(out))
}

fn zn_diverge(cfg: &RunConfig) -> Result<Output> {
    let s = point_s(cfg);
    let fit = divergence_exponent_with(s, &cfg.n_list, cfg.estimator)?;
    let zs = generator_zn_sequence(s, &cfg.n_list)?;
    let regularized = if s.re > 0.0 && s.re < 1.0 {
        Some(generator_z(s, &cfg.quadrature())?)
    } else {
        generator_z_continued(s, &cfg.quadrature()).ok()
    };
    let expected = if s.re < 1.0 { Some(1.0 - s.re) } else { None };
    Ok(Output::new(
        cfg.n_list
            .iter()
            .zip(&zs)
            .enumerate()
            .map(|(i, (&n, &z))| {
                obj(json!({
                    "s": cx(s),
                    "n": n,
                    "zn": cx(z),
                    "zn_abs": z.norm(),
                    "log_increment": if i == 0 { Value::Null } else { json!(fit.log_increment[i - 1]) },
                    "exponent": fit.exponent,
                    "expected_exponent": expected,
                    "estimator": fit.estimator,
                    "z_limit": regularized.map(|g| cx(g.value)),
                    "quadrature_error": regularized.map(|g| g.quadrature_error).unwrap_or(0.0),
                }))
            })
            .collect(),
    ))
}

fn char_fields(chi: &crate::dirichlet::DirichletCharacter) -> Map<String, Value> {
    obj(json!({
        "modulus": chi.modulus,
        "label": chi.label,
        "parity": chi.parity,
        "primitive": chi.primitive,
        "conductor": chi.conductor,
    }))
}

fn lfun_eval(cfg: &RunConfig) -> Result<Output> {
    let chi = character(cfg.modulus, cfg.label)?;
    let s = point_s(cfg);
    let mut r = char_fields(&chi);
    r.extend(obj(json!({
        "s": cx(s),
        "l_value": cx(l_oracle(s, &chi)?),
        "phi_reference": cx(phi_reference(s, &chi)?),
        "lambda": cx(lambda(s, &chi)?),
    })));
    if chi.primitive {
        let v = phi_paper(s, &chi, &cfg.quadrature())?;
        let res = v.residual_vs_reference.unwrap_or(f64::INFINITY);
        r.extend(obj(json!({
            "continuation": cx(v.value),
            "residual": res,
            "quadrature_error": v.quadrature_error,
            "passed": res <= cfg.tol,
        })));
    } else {
        r.extend(obj(json!({"continuation": null, "residual": null, "quadrature_error": 0.0})));
    }
    Ok(Output::new(vec![r]))
}

fn lfun_residual(cfg: &RunConfig) -> Result<Output> {
    let chi = character(cfg.modulus, cfg.label)?;
    if !chi.primitive {
        return Err(Error::domain("residual checks need a primitive character"));
    }
    let p = StripPoint::new(cfg.sigma, cfg.omega)?;
    let s = p.s();
    let q = cfg.quadrature();
    let a = phi_paper(s, &chi, &q)?;
    let b = phi_paper(s, &chi, &q.halved())?;
    let ra = a.residual_vs_reference.unwrap_or(f64::INFINITY);
    let rb = b.residual_vs_reference.unwrap_or(f64::INFINITY);
    let g = l_interpolation(s, &chi, &q)?;
    let mut r = char_fields(&chi);
    r.extend(obj(json!({
        "s": cx(s),
        "reference": cx(g.reference),
        "continuation": cx(a.value),
        "residual": ra,
        "residual_halved_tol": rb,
        "stability": (ra - rb).abs(),
        "generator_printed": cx(g.paper),
        "generator_printed_residual": g.paper_residual,
        "generator_corrected": cx(g.corrected),
        "generator_corrected_residual": g.corrected_residual,
        "quadrature_error": a.quadrature_error + g.quadrature_error,
        "passed": ra <= cfg.tol && (ra - rb).abs() <= cfg.tol,
    })));
    Ok(Output::new(vec![r]))
}

fn lfun_zeros(cfg: &RunConfig) -> Result<Output> {
    let chi = character(cfg.modulus, cfg.label)?;
    let q = cfg.quadrature();
    let zeros = scan_l_zeros(&chi, cfg.lo, cfg.hi, cfg.step, cfg.refine_tol, cfg.formula, &q)?;
    let mut out = Vec::new();
    for (i, &w) in zeros.iter().enumerate() {
        let mut r = char_fields(&chi);
        r.extend(obj(json!({
            "index": i + 1,
            "omega": w,
            "formula": cfg.formula,
            "hardy_value": hardy_l(w, &chi, ScanFormula::Reference, &q)?,
            "quadrature_error": 0.0,
        })));
        out.push(r);
    }
    Ok(Output::new(out))
}

fn char_list(cfg: &RunConfig) -> Result<Output> {
    let chars = enumerate_characters(cfg.modulus)?;
    debug_assert_eq!(chars.len() as u64, totient(cfg.modulus));
    Ok(Output::new(
        chars
            .iter()
            .map(|chi| {
                let mut r = char_fields(chi);
                r.extend(obj(json!({
                    "order": chi.order(),
                    "values": chi.values.iter().map(|&v| cx(v)).collect::<Vec<_>>(),
                    "gauss_sum": cx(gauss_sum(chi)),
                    "quadrature_error": 0.0,
                })));
                r
            })
            .collect(),
    ))
}

fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(hi >= lo) {
        return Err(Error::domain("grid needs hi >= lo"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(Error::domain("grid is too large"));
    }
    Ok((0..=count).map(|i| lo + i as f64 * step).collect())
}

fn dyn_trajectory(cfg: &RunConfig) -> Result<Output> {
    let p = CenteredPoint::new(cfg.sigma, cfg.omega)?;
    let ts = grid(0.0, cfg.t_max, cfg.t_step)?;
    let q = dyn_params(&p, cfg.branch);
    let samples = ratio_trajectory(&p, cfg.branch, cfg.n, &ts)?;
    Ok(Output::new(
        samples
            .iter()
            .map(|s| {
                obj(json!({
                    "sigma": cfg.sigma,
                    "omega": cfg.omega,
                    "branch": cfg.branch,
                    "n": cfg.n,
                    "t": s.t,
                    "rho": s.rho,
                    "rho_complement": s.rho_complement,
                    "zn_forward": cx(s.zn_forward),
                    "zn_mirror": cx(s.zn_mirror),
                    "ratio": s.ratio,
                    "model_ratio": s.model_ratio,
                    "mean_ratio": s.mean_ratio,
                    "flagged": s.flagged,
                    "gamma_alpha": q.gamma_alpha,
                    "gamma_beta": q.gamma_beta,
                    "omega_alpha": q.omega_alpha,
                    "omega_beta": q.omega_beta,
                    "quadrature_error": 0.0,
                }))
            })
            .collect(),
    ))
}

fn dyn_concentration(cfg: &RunConfig) -> Result<Output> {
    let p = CenteredPoint::new(cfg.sigma, cfg.omega)?;
    let ts = cfg.t.map(|t| vec![t]).unwrap_or_else(|| vec![2.0, 4.0, 6.0]);
    let es = cfg.epsilon.map(|e| vec![e]).unwrap_or_else(|| vec![0.05, 0.1]);
    let mut out = Vec::new();
    let mut stream = 0;
    for &t in &ts {
        for &e in &es {
            let r = concentration_check(t, e, cfg.n, &p, cfg.branch, cfg.samples, RngSeed::new(cfg.seed, stream))?;
            stream += 1;
            out.push(obj(json!({
                "t": r.t,
                "epsilon": r.epsilon,
                "n": r.n,
                "empirical_probability": r.empirical_probability,
                "bound": r.bound,
                "exact_probability": r.exact_probability,
                "samples": r.samples,
                "seed": r.seed.seed,
                "stream_id": r.seed.stream_id,
                "quadrature_error": 0.0,
                "passed": r.satisfied,
            })));
        }
    }
    Ok(Output::new(out))
}

fn rational(x: f64) -> Rational {
    Ratio::new((x * 1e9).round() as i128, 1_000_000_000)
}

/// Order-preserving map over `items` on up to `threads` scoped threads.
fn par_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if threads <= 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(|| part.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn dyn_bounded(cfg: &RunConfig) -> Result<Output> {
    let sigmas = grid(cfg.sigma_lo, cfg.sigma_hi, cfg.sigma_step)?;
    let omegas = grid(cfg.omega_lo, cfg.omega_hi, cfg.omega_step)?;
    let mut points = Vec::with_capacity(sigmas.len() * omegas.len());
    for &s in &sigmas {
        for &w in &omegas {
            points.push(CenteredPoint::new(s, w)?);
        }
    }
    let rows = par_map(&points, cfg.threads, |p| {
        boundedness_report(std::slice::from_ref(p), cfg.branch, cfg.n, cfg.t_max).map(|mut v| v.remove(0))
    });
    let mut out = Vec::with_capacity(rows.len());
    for (p, row) in points.iter().zip(rows) {
        let r = row?;
        let exact = exact_conditions(rational(p.sigma), rational(p.omega), cfg.branch);
        out.push(obj(json!({
            "sigma": r.sigma,
            "omega": r.omega,
            "rate": r.rate,
            "raw_rate": r.raw_rate,
            "bounded": r.bounded,
            "gamma_equal": exact.gamma_equal,
            "omega_equal": exact.omega_equal,
            "joint_condition": exact.joint,
            "exceptional": exact.exceptional,
            "ratio_at_t_max": r.ratio_at_t_max,
            "quadrature_error": 0.0,
        })));
    }
    Ok(Output::new(out))
}

fn verify_price(cfg: &RunConfig) -> Result<Output> {
    Ok(Output::new(
        price_cases(&cfg.quadrature())?
            .iter()
            .map(|k| {
                obj(json!({
                    "nonlinearity": k.nonlinearity,
                    "rho": k.rho,
                    "mean": cx(k.mean),
                    "m1_rate": cx(k.m1_rate),
                    "m2_rate": cx(k.m2_rate),
                    "lhs": cx(k.check.lhs),
                    "rhs": cx(k.check.rhs),
                    "residual": k.check.residual,
                    "threshold": PRICE_THRESHOLD,
                    "quadrature_error": k.check.quadrature_error,
                    "passed": k.check.residual < PRICE_THRESHOLD,
                }))
            })
            .collect(),
    ))
}

fn verify_lemma2(cfg: &RunConfig) -> Result<Output> {
    Ok(Output::new(
        lemma2_cases(&cfg.quadrature())?
            .iter()
            .map(|k| {
                obj(json!({
                    "alpha": k.alpha,
                    "rho": k.rho,
                    "finite_difference": cx(k.finite_difference),
                    "closed_form": cx(k.closed_form),
                    "residual": k.residual,
                    "negative": k.finite_difference.re < 0.0,
                    "threshold": PRICE_THRESHOLD,
                    "quadrature_error": 0.0,
                    "passed": k.residual < PRICE_THRESHOLD && k.finite_difference.re < 0.0,
                }))
            })
            .collect(),
    ))
}

fn verify_theta() -> Result<Output> {
    Ok(Output::new(
        theta_cases()?
            .iter()
            .map(|k| {
                obj(json!({
                    "y": k.y,
                    "residual": k.residual,
                    "threshold": THETA_THRESHOLD,
                    "quadrature_error": 0.0,
                    "passed": k.residual < THETA_THRESHOLD,
                }))
            })
            .collect(),
    ))
}

fn verify_all(cfg: &RunConfig) -> Result<Output> {
    let ids: Vec<u32> = if cfg.criteria.is_empty() {
        CRITERIA.iter().map(|(id, _)| *id).collect()
    } else {
        cfg.criteria.clone()
    };
    let opts = VerifyOptions {
        cfg: cfg.quadrature(),
        seed: cfg.seed,
        samples: cfg.samples,
    };
    let reports = par_map(&ids, cfg.threads, |&id| run_criterion(id, &opts));
    let mut out = Vec::new();
    for r in reports {
        let r = r?;
        eprintln!("{}", r.line());
        out.push(obj(json!({
            "id": r.id,
            "name": r.name,
            "metric": r.metric,
            "threshold": r.threshold,
            "detail": r.detail,
            "quadrature_error": 0.0,
            "passed": r.passed,
        })));
    }
    Ok(Output::new(out))
}

fn dispatch(cfg: &RunConfig) -> Result<Output> {
    match cfg.command.as_str() {
        "phi eval" => phi_eval(cfg),
        "phi identity" => phi_identity(cfg),
        "phi zeros" => phi_zeros(cfg),
        "zn diverge" => zn_diverge(cfg),
        "lfun eval" => lfun_eval(cfg),
        "lfun residual" => lfun_residual(cfg),
        "lfun zeros" => lfun_zeros(cfg),
        "char list" => char_list(cfg),
        "dyn trajectory" => dyn_trajectory(cfg),
        "dyn concentration" => dyn_concentration(cfg),
        "dyn bounded" => dyn_bounded(cfg),
        "verify price" => verify_price(cfg),
        "verify lemma2" => verify_lemma2(cfg),
        "verify theta" => verify_theta(),
        "verify all" => verify_all(cfg),
        other => Err(Error::domain(format!("unknown command {other}"))),
    }
}

fn stamp(records: &mut [Map<String, Value>], cfg: &RunConfig) {
    let hash = cfg.hash();
    for r in records {
        r.insert("command".into(), json!(cfg.command));
        r.insert("config_hash".into(), json!(hash));
        r.insert("tol".into(), json!(cfg.tol));
        r.insert("quad_tol".into(), json!(cfg.quad_tol));
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(m) if m.len() == 2 && m.contains_key("re") && m.contains_key("im") => {
            out.insert(format!("{prefix}_re"), m["re"].clone());
            out.insert(format!("{prefix}_im"), m["im"].clone());
        }
        Value::Object(_) | Value::Array(_) => {
            out.insert(prefix.to_string(), Value::String(v.to_string()));
        }
        _ => {
            out.insert(prefix.to_string(), v.clone());
        }
    }
}

fn csv_cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// Serialize records as JSON Lines or as CSV with a header of all columns.
pub fn render(records: &[Map<String, Value>], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut buf = Vec::new();
            for r in records {
                serde_json::to_writer(&mut buf, r).expect("records serialize");
                buf.push(b'\n');
            }
            Ok(buf)
        }
        Format::Csv => {
            let flat: Vec<Map<String, Value>> = records
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (k, v) in r {
                        flatten(k, v, &mut m);
                    }
                    m
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for m in &flat {
                for k in m.keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            header.sort();
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::domain(format!("csv output failed: {e}"));
            if !flat.is_empty() {
                w.write_record(&header).map_err(io)?;
            }
            for m in &flat {
                w.write_record(header.iter().map(|k| csv_cell(m.get(k)))).map_err(io)?;
            }
            w.into_inner().map_err(|e| Error::domain(format!("csv output failed: {e}")))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Pole { .. } => EXIT_INVALID,
        Error::NonConvergence { .. } | Error::DegenerateFit(_) => EXIT_FAILED,
    }
}

/// Parse `args` (program name first), run the command and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let cfg = match resolve(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("zetalab: {e}");
            return EXIT_INVALID;
        }
    };
    let mut output = match dispatch(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("zetalab: {e}");
            return exit_code(&e);
        }
    };
    stamp(&mut output.records, &cfg);
    let bytes = match render(&output.records, cfg.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("zetalab: {e}");
            return EXIT_FAILED;
        }
    };
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("zetalab: cannot write output: {e}");
        return EXIT_INVALID;
    }
    if output.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
