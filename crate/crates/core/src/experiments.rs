//! Named, seeded experiment recipes. Each one returns an [`ExperimentReport`]
//! holding its inputs, measurements, fits and pass/fail checks with their
//! thresholds; [`ExperimentReport::write_artifacts`] lays out JSON, CSV and
//! SVG files under `<root>/<experiment>/<param-tag>/`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abm::{meanfield_coupling_run, simulate_abm, two_copy_run, AbmConfig, AbmScheme, TwoCopySeeds};
use crate::dist::{uniform_grid, EmpiricalDistribution, InitialLaw, Law};
use crate::equilibrium::{sample_equilibrium, DEFAULT_DEPTH};
use crate::error::{Error, Result};
use crate::io;
use crate::meanfield::{meanfield_path, solve_pde, PdeConfig, DEFAULT_DT, DEFAULT_GRID_SIZE};
use crate::metrics::{characteristic_function, toscani_from_transforms, wasserstein, BinnedLaw, XiGrid};
use crate::par;
use crate::params::{MeanCurve, ModelParams};
use crate::plot::{Chart, Series, Style};
use crate::rng::{RngSpec, SimRng};
use crate::stats::{linear_fit, loglog_fit, mean_se, variance, LinearFit};

// Stream ids separating the random inputs of one experiment.
const STREAM_ABM: u64 = 1;
const STREAM_MF: u64 = 2;
const STREAM_IFS: u64 = 3;
const STREAM_IFS_ALT: u64 = 4;
const STREAM_COUPLING: u64 = 5;
const STREAM_MF_ALT: u64 = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
    /// How `value` is compared with `threshold`, e.g. `<=`.
    pub relation: String,
    /// Non-gating checks are reported but do not affect [`ExperimentReport::passed`].
    pub gating: bool,
    pub detail: String,
}

impl Check {
    pub fn le(name: impl Into<String>, value: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: value <= threshold,
            value,
            threshold,
            relation: "<=".into(),
            gating: true,
            detail: detail.into(),
        }
    }

    pub fn ge(name: impl Into<String>, value: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self {
            passed: value >= threshold,
            relation: ">=".into(),
            ..Self::le(name, value, threshold, detail)
        }
    }

    /// Failed check for a quantity that could not be measured.
    pub fn unavailable(name: impl Into<String>, threshold: f64, relation: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            value: 0.0,
            threshold,
            relation: relation.into(),
            gating: true,
            detail: detail.into(),
        }
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedFit {
    pub name: String,
    pub fit: LinearFit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub param_tag: String,
    pub params: Vec<ModelParams>,
    pub seed: u64,
    pub inputs: BTreeMap<String, Value>,
    pub measured: BTreeMap<String, f64>,
    pub fits: Vec<NamedFit>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
    pub artifacts: Vec<String>,
    #[serde(skip)]
    pub charts: Vec<(String, Chart)>,
}

impl ExperimentReport {
    fn new(name: &str, params: Vec<ModelParams>, seed: u64) -> Self {
        let param_tag = params.iter().map(param_tag).collect::<Vec<_>>().join("__");
        Self {
            name: name.into(),
            param_tag,
            params,
            seed,
            inputs: BTreeMap::new(),
            measured: BTreeMap::new(),
            fits: Vec::new(),
            checks: Vec::new(),
            tables: Vec::new(),
            notes: Vec::new(),
            artifacts: Vec::new(),
            charts: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, v: Value) {
        self.inputs.insert(key.into(), v);
    }

    fn measure(&mut self, key: impl Into<String>, v: f64) {
        self.measured.insert(key.into(), v);
    }

    fn fit(&mut self, name: &str, fit: LinearFit) {
        self.fits.push(NamedFit { name: name.into(), fit });
    }

    pub fn get_fit(&self, name: &str) -> Option<&LinearFit> {
        self.fits.iter().find(|f| f.name == name).map(|f| &f.fit)
    }

    pub fn get_table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn get_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// All gating checks passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.gating).all(|c| c.passed)
    }

    pub fn dir(&self, root: &Path) -> PathBuf {
        root.join(&self.name).join(&self.param_tag)
    }

    /// Writes every table as CSV, every chart as SVG and the report as
    /// `report.json`. Returns the directory.
    pub fn write_artifacts(&mut self, root: &Path) -> Result<PathBuf> {
        let dir = self.dir(root);
        std::fs::create_dir_all(&dir)?;
        let mut artifacts = Vec::new();
        for t in &self.tables {
            let file = format!("{}.csv", t.name);
            let header: Vec<&str> = t.header.iter().map(String::as_str).collect();
            io::write_table_csv(&dir.join(&file), &header, &t.rows)?;
            artifacts.push(file);
        }
        for (name, chart) in &self.charts {
            let file = format!("{name}.svg");
            io::write_text(&dir.join(&file), &chart.to_svg())?;
            artifacts.push(file);
        }
        artifacts.push("report.json".into());
        self.artifacts = artifacts;
        io::write_json(&dir.join("report.json"), self)?;
        Ok(dir)
    }

    pub fn summary(&self) -> String {
        let gating: Vec<&Check> = self.checks.iter().filter(|c| c.gating).collect();
        let ok = gating.iter().filter(|c| c.passed).count();
        format!(
            "{} [{}]: {} ({}/{} checks)",
            self.name,
            self.param_tag,
            if self.passed() { "PASS" } else { "FAIL" },
            ok,
            gating.len()
        )
    }
}

pub fn param_tag(p: &ModelParams) -> String {
    format!("mm{}_mp{}", p.mu_minus(), p.mu_plus())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    ExactMean,
    FluctuationScaling,
    PocMarginal,
    ConvergenceRates,
    FractalFigures,
    TwoCopyStability,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        Self::ExactMean,
        Self::FluctuationScaling,
        Self::PocMarginal,
        Self::ConvergenceRates,
        Self::FractalFigures,
        Self::TwoCopyStability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ExactMean => "exact-mean",
            Self::FluctuationScaling => "fluctuation-scaling",
            Self::PocMarginal => "poc-marginal",
            Self::ConvergenceRates => "convergence-rates",
            Self::FractalFigures => "fractal-figures",
            Self::TwoCopyStability => "two-copy-stability",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|k| k.name()).collect();
                Error::Config(format!("unknown experiment `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

fn replicate<T: Send, F>(n: usize, spec: RngSpec, f: F) -> Vec<T>
where
    F: Fn(usize, &mut SimRng) -> T + Sync + Send,
{
    par::map_indexed(n, |r| f(r, &mut spec.child(r as u64).rng()))
}

fn check_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::Config(format!("{name} must be >= 1")));
    }
    Ok(())
}

fn time_grid(t_end: f64, step: f64) -> Vec<f64> {
    let k = (t_end / step).round() as usize;
    let mut v: Vec<f64> = (0..=k).map(|i| (i as f64 * step).min(t_end)).collect();
    v.dedup();
    if v.last().copied() != Some(t_end) {
        v.push(t_end);
    }
    v
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMeanConfig {
    pub mu: f64,
    pub n_agents: usize,
    pub replicas: usize,
    pub init: InitialLaw,
    pub times: Vec<f64>,
    pub scheme: AbmScheme,
    pub seed: u64,
}

impl Default for ExactMeanConfig {
    fn default() -> Self {
        Self {
            mu: 0.3,
            n_agents: 200,
            replicas: 2000,
            init: InitialLaw::Uniform { lo: 0.0, hi: 1.0 },
            times: vec![0.0, 0.5, 1.0, 2.0],
            scheme: AbmScheme::PairwiseGillespie,
            seed: 1,
        }
    }
}

/// Replica-averaged mean opinion against `m₀e^{−2μt}`, which holds for
/// every `N ≥ 2`.
pub fn exp_exact_mean(cfg: &ExactMeanConfig) -> Result<ExperimentReport> {
    let params = ModelParams::symmetric(cfg.mu)?;
    check_positive("replicas", cfg.replicas)?;
    let t_end = cfg.times.last().copied().unwrap_or(0.0);
    let abm = AbmConfig::new(cfg.n_agents, t_end, cfg.scheme).with_record_times(cfg.times.clone());
    abm.validate()?;
    let m0 = cfg.init.mean();
    let curve = MeanCurve::new(&params, m0)?;

    let runs = replicate(cfg.replicas, RngSpec::new(cfg.seed, STREAM_ABM), |_, rng| {
        simulate_abm(&params, &cfg.init, &abm, rng).map(|r| r.record.mean_opinion)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut rep = ExperimentReport::new(ExperimentKind::ExactMean.name(), vec![params], cfg.seed);
    rep.input("n_agents", json!(cfg.n_agents));
    rep.input("replicas", json!(cfg.replicas));
    rep.input("init", json!(cfg.init.to_string()));
    rep.input("m0", json!(m0));
    rep.input("scheme", json!(cfg.scheme.to_string()));
    rep.input("times", json!(cfg.times));

    let mut table = Table::new("mean", &["t", "target", "mean", "se", "z"]);
    for (k, &t) in cfg.times.iter().enumerate() {
        let xs: Vec<f64> = runs.iter().map(|r| r[k]).collect();
        let (m, se) = mean_se(&xs);
        let target = curve.eval(t);
        let z = if se > 0.0 { (m - target) / se } else { 0.0 };
        table.push(vec![t, target, m, se, z]);
        rep.checks.push(Check::le(
            format!("mean-within-3se@t={t}"),
            (m - target).abs(),
            3.0 * se,
            format!("replica mean {m:.6} vs m0*exp(-2*mu*t) = {target:.6}"),
        ));
    }
    let fine: Vec<(f64, f64)> = time_grid(t_end, t_end.max(1e-9) / 200.0)
        .into_iter()
        .map(|t| (t, curve.eval(t)))
        .collect();
    let points: Vec<(f64, f64)> = table.rows.iter().map(|r| (r[0], r[2])).collect();
    rep.charts.push((
        "mean".into(),
        Chart::new("Replica-averaged mean opinion", "t", "mean")
            .with(Series::new("m0 exp(-2 mu t)", fine, Style::Line))
            .with(Series::new("ABM replicas", points, Style::Points)),
    ));
    rep.tables.push(table);
    Ok(rep)
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationConfig {
    pub mu: f64,
    pub n_list: Vec<usize>,
    pub t: f64,
    pub replicas: usize,
    pub init: InitialLaw,
    pub scheme: AbmScheme,
    pub seed: u64,
}

impl Default for FluctuationConfig {
    fn default() -> Self {
        Self {
            mu: 0.4,
            n_list: vec![100, 400, 1600, 6400],
            t: 2.0,
            replicas: 1000,
            init: InitialLaw::uniform(),
            scheme: AbmScheme::PairwiseGillespie,
            seed: 2,
        }
    }
}

/// Variance over replicas of a tagged agent's view of the others,
/// `𝒜_t = (𝒮_t − X_t^1)/(N−1)`, against `N`.
pub fn exp_fluctuation_scaling(cfg: &FluctuationConfig) -> Result<ExperimentReport> {
    let params = ModelParams::symmetric(cfg.mu)?;
    if cfg.replicas < 2 {
        return Err(Error::Config("replicas must be >= 2 to estimate a variance".into()));
    }
    if cfg.n_list.len() < 2 {
        return Err(Error::Config("n_list needs at least 2 sizes".into()));
    }
    let mut rep = ExperimentReport::new(ExperimentKind::FluctuationScaling.name(), vec![params], cfg.seed);
    rep.input("n_list", json!(cfg.n_list));
    rep.input("t", json!(cfg.t));
    rep.input("replicas", json!(cfg.replicas));
    rep.input("init", json!(cfg.init.to_string()));
    rep.input("scheme", json!(cfg.scheme.to_string()));

    let var0_law = cfg.init.variance();
    let rel_tol = 4.0 * (2.0 / (cfg.replicas as f64 - 1.0)).sqrt();
    let mut table = Table::new("variance", &["n", "var_t", "var_0", "var_0_expected", "n_times_var_t"]);
    for (k, &n) in cfg.n_list.iter().enumerate() {
        let abm = AbmConfig::new(n, cfg.t, cfg.scheme);
        abm.validate()?;
        let spec = RngSpec::new(cfg.seed, STREAM_ABM).child(k as u64);
        let pairs = replicate(cfg.replicas, spec, |_, rng| -> Result<(f64, f64)> {
            let state = crate::abm::EnsembleState::sample(&cfg.init, n, rng)?;
            let a0 = state.avg_excluding(0);
            let run = crate::abm::run_from(state, &params, &abm, rng)?;
            Ok((a0, run.final_state.avg_excluding(0)))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let v0 = variance(&pairs.iter().map(|p| p.0).collect::<Vec<_>>());
        let vt = variance(&pairs.iter().map(|p| p.1).collect::<Vec<_>>());
        let expected = var0_law / (n as f64 - 1.0);
        table.push(vec![n as f64, vt, v0, expected, n as f64 * vt]);
        rep.checks.push(
            Check::le(
                format!("var0-iid@n={n}"),
                (v0 / expected - 1.0).abs(),
                rel_tol,
                "relative deviation of the t=0 variance from Var(rho0)/(N-1)",
            )
            .informational(),
        );
    }
    let ns = table.column("n").expect("column exists");
    let vs = table.column("var_t").expect("column exists");
    let fit = loglog_fit(&ns, &vs)?;
    let (lo, hi) = fit.slope_ci95();
    rep.measure("slope", fit.slope);
    rep.measure("slope_ci95_lo", lo);
    rep.measure("slope_ci95_hi", hi);
    rep.checks.push(Check::ge("slope>=-1.15", fit.slope, -1.15, "log-log slope of Var(A_t) against N"));
    rep.checks.push(Check::le("slope<=-0.85", fit.slope, -0.85, "log-log slope of Var(A_t) against N"));
    rep.fit("log_var_vs_log_n", fit);
    let pts: Vec<(f64, f64)> = ns.iter().copied().zip(vs.iter().copied()).collect();
    let line: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| (n, (fit.intercept + fit.slope * n.ln()).exp()))
        .collect();
    rep.charts.push((
        "variance".into(),
        Chart::new("Fluctuations of the tagged average", "N", "Var(A_t)")
            .log_x()
            .log_y()
            .with(Series::new("measured", pts, Style::Points))
            .with(Series::new(format!("fit slope {:.3}", fit.slope), line, Style::Line)),
    ));
    rep.tables.push(table);
    Ok(rep)
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct PocConfig {
    pub mu_minus: f64,
    pub mu_plus: f64,
    pub n_list: Vec<usize>,
    pub t: f64,
    /// Agents pooled across replicas per population size.
    pub pooled: usize,
    pub mf_samples: usize,
    /// Agents pooled across coupled runs for the coupling distance.
    pub coupling_pooled: usize,
    /// Bins of the streamed laws on `[-1, 1]`.
    pub bins: usize,
    pub init: InitialLaw,
    pub scheme: AbmScheme,
    pub seed: u64,
}

impl Default for PocConfig {
    fn default() -> Self {
        Self {
            mu_minus: 0.5,
            mu_plus: 0.5,
            n_list: vec![50, 100, 200, 400, 800, 1600, 3200],
            t: 3.0,
            pooled: 64_000_000,
            mf_samples: 64_000_000,
            coupling_pooled: 400_000,
            bins: 1 << 20,
            init: InitialLaw::Uniform { lo: 0.0, hi: 1.0 },
            scheme: AbmScheme::PairwiseGillespie,
            seed: 3,
        }
    }
}

/// Work items the streamed samplers are split into; each owns one histogram.
const STREAM_GROUPS: usize = 16;

fn group_ranges(total: usize) -> Vec<std::ops::Range<usize>> {
    let g = STREAM_GROUPS.min(total.max(1));
    (0..g).map(|k| (k * total / g)..((k + 1) * total / g)).collect()
}

fn merge_binned(parts: Vec<Result<BinnedLaw>>, bins: usize) -> Result<BinnedLaw> {
    let mut acc = BinnedLaw::new(bins)?;
    for p in parts {
        acc.merge(&p?)?;
    }
    Ok(acc)
}

/// Final opinions of `reps` independent ABM replicas, binned.
fn binned_abm(
    params: &ModelParams,
    init: &InitialLaw,
    abm: &AbmConfig,
    reps: usize,
    spec: RngSpec,
    bins: usize,
) -> Result<BinnedLaw> {
    let ranges = group_ranges(reps);
    let parts = par::map_indexed(ranges.len(), |g| -> Result<BinnedLaw> {
        let mut h = BinnedLaw::new(bins)?;
        for r in ranges[g].clone() {
            let run = simulate_abm(params, init, abm, &mut spec.child(r as u64).rng())?;
            h.extend(run.final_state.opinions().iter().copied());
        }
        Ok(h)
    });
    merge_binned(parts, bins)
}

/// Endpoints of `n_paths` mean-field paths, binned.
fn binned_meanfield(
    params: &ModelParams,
    init: &InitialLaw,
    t: f64,
    n_paths: usize,
    spec: RngSpec,
    bins: usize,
) -> Result<BinnedLaw> {
    let curve = MeanCurve::new(params, init.mean())?;
    let ranges = group_ranges(n_paths.div_ceil(1 << 14));
    let parts = par::map_indexed(ranges.len(), |g| -> Result<BinnedLaw> {
        let mut h = BinnedLaw::new(bins)?;
        for c in ranges[g].clone() {
            let mut rng = spec.child(c as u64).rng();
            let len = (n_paths - c * (1 << 14)).min(1 << 14);
            for _ in 0..len {
                let z0 = init.sample(&mut rng);
                h.add(meanfield_path(params, &curve, z0, t, &mut rng));
            }
        }
        Ok(h)
    });
    merge_binned(parts, bins)
}

/// Pools the opinions of all agents over `⌈pooled/N⌉` replicas (agents are
/// exchangeable, so each is a draw from the tagged marginal) and measures
/// `W₁` to a large mean-field sample. Both are streamed into fine bins. The
/// synchronous-coupling distance `E|X − Z|` is reported alongside.
pub fn exp_poc_marginal(cfg: &PocConfig) -> Result<ExperimentReport> {
    let params = ModelParams::new(cfg.mu_minus, cfg.mu_plus)?;
    check_positive("pooled", cfg.pooled)?;
    check_positive("mf_samples", cfg.mf_samples)?;
    if cfg.n_list.len() < 2 {
        return Err(Error::Config("n_list needs at least 2 sizes".into()));
    }
    let mf = binned_meanfield(&params, &cfg.init, cfg.t, cfg.mf_samples, RngSpec::new(cfg.seed, STREAM_MF), cfg.bins)?;
    let mf_alt = binned_meanfield(&params, &cfg.init, cfg.t, cfg.pooled, RngSpec::new(cfg.seed, STREAM_MF_ALT), cfg.bins)?;
    let floor = mf_alt.w1(&mf)?;
    drop(mf_alt);

    let mut rep = ExperimentReport::new(ExperimentKind::PocMarginal.name(), vec![params], cfg.seed);
    rep.input("n_list", json!(cfg.n_list));
    rep.input("t", json!(cfg.t));
    rep.input("pooled", json!(cfg.pooled));
    rep.input("mf_samples", json!(cfg.mf_samples));
    rep.input("coupling_pooled", json!(cfg.coupling_pooled));
    rep.input("bins", json!(cfg.bins));
    rep.input("init", json!(cfg.init.to_string()));
    rep.measure("noise_floor_w1", floor);

    let mut table = Table::new("poc", &["n", "replicas", "w1_marginal", "coupling_distance"]);
    for (k, &n) in cfg.n_list.iter().enumerate() {
        let abm = AbmConfig::new(n, cfg.t, cfg.scheme);
        abm.validate()?;
        let reps = cfg.pooled.div_ceil(n);
        let spec = RngSpec::new(cfg.seed, STREAM_ABM).child(k as u64);
        let w1 = binned_abm(&params, &cfg.init, &abm, reps, spec, cfg.bins)?.w1(&mf)?;

        let coupling = if cfg.coupling_pooled > 0 {
            let creps = cfg.coupling_pooled.div_ceil(n);
            let spec = RngSpec::new(cfg.seed, STREAM_COUPLING).child(k as u64);
            let d = replicate(creps, spec, |_, rng| {
                meanfield_coupling_run(&params, n, &cfg.init, &[cfg.t], rng).map(|v| v[0].1)
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            mean_se(&d).0
        } else {
            f64::NAN
        };
        table.push(vec![n as f64, reps as f64, w1, coupling]);
    }
    let ns = table.column("n").expect("column exists");
    let w1s = table.column("w1_marginal").expect("column exists");
    let fit = loglog_fit(&ns, &w1s)?;
    rep.measure("slope_w1", fit.slope);
    rep.checks.push(Check::le(
        "w1-slope<=-0.35",
        fit.slope,
        -0.35,
        "log-log slope of the pooled-marginal W1 against N",
    ));
    rep.checks.push(Check::ge(
        "w1-smallest-n>largest-n",
        w1s[0] - w1s[w1s.len() - 1],
        f64::MIN_POSITIVE,
        "distance at the smallest N minus distance at the largest N",
    ));
    rep.fit("log_w1_vs_log_n", fit);
    let mut series = vec![Series::new(
        "pooled marginal W1",
        ns.iter().copied().zip(w1s.iter().copied()).collect(),
        Style::Line,
    )];
    if cfg.coupling_pooled > 0 {
        let cs = table.column("coupling_distance").expect("column exists");
        let cfit = loglog_fit(&ns, &cs)?;
        rep.measure("slope_coupling", cfit.slope);
        rep.checks.push(
            Check::le(
                "coupling-slope<=-0.35",
                cfit.slope,
                -0.35,
                "log-log slope of the synchronous coupling distance E|X-Z| against N",
            )
            .informational(),
        );
        rep.fit("log_coupling_vs_log_n", cfit);
        series.push(Series::new(
            "coupling E|X-Z|",
            ns.iter().copied().zip(cs).collect(),
            Style::Line,
        ));
    }
    series.push(Series::new(
        "mean-field vs mean-field floor",
        ns.iter().map(|&n| (n, floor)).collect(),
        Style::Line,
    ));
    let mut chart = Chart::new("Propagation of chaos proxies", "N", "distance").log_x().log_y();
    for s in series {
        chart = chart.with(s);
    }
    rep.charts.push(("poc".into(), chart));
    rep.tables.push(table);
    Ok(rep)
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceConfig {
    pub mu_minus: f64,
    pub mu_plus: f64,
    pub grid_size: usize,
    pub dt: f64,
    pub t_end: f64,
    pub record_every: f64,
    pub init: InitialLaw,
    pub ifs_depth: usize,
    pub ifs_samples: usize,
    pub xi_points: usize,
    /// Rate fits use points above this multiple of the numerical floor.
    pub floor_factor: f64,
    pub seed: u64,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        Self {
            mu_minus: 0.5,
            mu_plus: 0.5,
            grid_size: DEFAULT_GRID_SIZE,
            dt: DEFAULT_DT,
            t_end: 8.0,
            record_every: 0.25,
            init: InitialLaw::uniform(),
            ifs_depth: DEFAULT_DEPTH,
            ifs_samples: 1_000_000,
            xi_points: 1024,
            floor_factor: 10.0,
            seed: 4,
        }
    }
}

/// Fitted exponential decay rate of `ys` over the points above `cutoff`
/// (up to the first point that drops below it).
fn decay_rate(ts: &[f64], ys: &[f64], cutoff: f64) -> Option<LinearFit> {
    let k = ys.iter().position(|&y| !(y > cutoff)).unwrap_or(ys.len());
    if k < 3 {
        return None;
    }
    let ly: Vec<f64> = ys[..k].iter().map(|y| y.ln()).collect();
    linear_fit(&ts[..k], &ly).ok()
}

/// Evolves the kinetic equation and tracks `W₂²(ρ_t, ρ∞)` and `d₁(ρ_t, ρ∞)`
/// against a sampled equilibrium. The numerical floor of each distance is
/// the same distance between two independent equilibrium samples.
pub fn exp_convergence_rates(cfg: &ConvergenceConfig) -> Result<ExperimentReport> {
    let params = ModelParams::new(cfg.mu_minus, cfg.mu_plus)?;
    if !(cfg.record_every > 0.0) {
        return Err(Error::Config("record_every must be > 0".into()));
    }
    let m0 = cfg.init.mean();
    let rho0 = cfg.init.to_grid(cfg.grid_size)?;
    let times = time_grid(cfg.t_end, cfg.record_every);
    let pde_cfg = PdeConfig {
        grid_size: cfg.grid_size,
        dt: cfg.dt,
        t_end: cfg.t_end,
        record_times: times.clone(),
    };
    let traj = solve_pde(&rho0, &params, &pde_cfg, m0)?;

    let eq_a = sample_equilibrium(&params, cfg.ifs_depth, cfg.ifs_samples, RngSpec::new(cfg.seed, STREAM_IFS))?;
    let eq_b = sample_equilibrium(&params, cfg.ifs_depth, cfg.ifs_samples, RngSpec::new(cfg.seed, STREAM_IFS_ALT))?;
    let grid = uniform_grid(cfg.grid_size);
    let ref_grid = eq_a.to_grid(&grid)?;
    let alt_grid = eq_b.to_grid(&grid)?;
    let xi = XiGrid::log_spaced(1e-3, 1e3, cfg.xi_points)?;
    let phi_ref = characteristic_function(&ref_grid, &xi);
    let phi_alt = characteristic_function(&alt_grid, &xi);
    let floor_w2sq = wasserstein(2.0, &eq_a, &eq_b)?.powi(2);
    let floor_d1 = toscani_from_transforms(1.0, &phi_alt, &phi_ref, &xi, false).value;

    let m_inf = params.m_inf();
    let curve = MeanCurve::new(&params, m0)?;
    let mut table = Table::new(
        "distances",
        &["t", "w2_sq", "d1", "mean_gap", "w2_envelope", "grid_mean", "curve_mean"],
    );
    let mut w2_0 = 0.0;
    for (t, f) in &traj {
        let w2sq = wasserstein(2.0, f, &eq_a)?.powi(2);
        let d1 = toscani_from_transforms(1.0, &characteristic_function(f, &xi), &phi_ref, &xi, false).value;
        if *t == 0.0 {
            w2_0 = w2sq;
        }
        let mu = params.mu_min();
        let env = 1.2 * (w2_0 + 2.0 * m0.abs()) * (-(2.0 * mu - mu * mu) * t).exp();
        table.push(vec![*t, w2sq, d1, (curve.eval(*t) - m_inf).abs(), env, f.mean(), curve.eval(*t)]);
    }

    let mut rep = ExperimentReport::new(ExperimentKind::ConvergenceRates.name(), vec![params], cfg.seed);
    rep.input("grid_size", json!(cfg.grid_size));
    rep.input("dt", json!(cfg.dt));
    rep.input("t_end", json!(cfg.t_end));
    rep.input("record_every", json!(cfg.record_every));
    rep.input("init", json!(cfg.init.to_string()));
    rep.input("ifs_depth", json!(cfg.ifs_depth));
    rep.input("ifs_samples", json!(cfg.ifs_samples));
    rep.input("xi_points", json!(cfg.xi_points));
    rep.input("floor_factor", json!(cfg.floor_factor));
    rep.measure("floor_w2_sq", floor_w2sq);
    rep.measure("floor_d1", floor_d1);

    let ts = table.column("t").expect("column exists");
    let w2s = table.column("w2_sq").expect("column exists");
    let d1s = table.column("d1").expect("column exists");
    let envs = table.column("w2_envelope").expect("column exists");

    let resolution = pde_cfg.resolution();
    let max_mean_err = table
        .rows
        .iter()
        .map(|r| (r[5] - r[6]).abs())
        .fold(0.0, f64::max);
    rep.measure("max_grid_mean_error", max_mean_err);
    rep.checks.push(
        Check::le(
            "grid-mean-tracks-curve",
            max_mean_err,
            5.0 * resolution,
            "max |grid mean - closed-form mean| over recorded times",
        )
        .informational(),
    );

    if params.is_symmetric() {
        let mu = params.mu_min();
        let env_rate = 2.0 * mu - mu * mu;
        rep.measure("envelope_rate", env_rate);
        let worst_literal = w2s.iter().zip(&envs).map(|(w, e)| w - e).fold(f64::NEG_INFINITY, f64::max);
        let worst_floor = w2s
            .iter()
            .zip(&envs)
            .map(|(w, e)| w - e - floor_w2sq)
            .fold(f64::NEG_INFINITY, f64::max);
        rep.measure("w2_envelope_worst_excess_literal", worst_literal);
        rep.measure("w2_envelope_worst_excess_with_floor", worst_floor);
        rep.checks.push(Check::le(
            "w2-envelope",
            worst_floor,
            0.0,
            "max_t [W2^2(rho_t, rho_inf) - 1.2 (W2^2(rho_0, rho_inf) + 2|m0|) e^{-(2mu-mu^2)t} - sampling floor]",
        ));
        rep.checks.push(
            Check::le(
                "w2-envelope-literal",
                worst_literal,
                0.0,
                "same comparison without the sampling floor",
            )
            .informational(),
        );
    }

    let d1_anchor = if params.is_symmetric() {
        params.mu_min()
    } else {
        params.mean_rate().min(params.mu_min())
    };
    let w2_anchor = if params.is_symmetric() {
        let mu = params.mu_min();
        2.0 * mu - mu * mu
    } else {
        let mu = params.mu_min();
        params.mean_rate().min(1.0 - (1.0 - mu).powi(2))
    };
    rep.measure("d1_anchor_rate", d1_anchor);
    rep.measure("w2_anchor_rate", w2_anchor);

    let d1_floor = floor_d1.max(d1s.iter().copied().fold(f64::INFINITY, f64::min));
    match decay_rate(&ts, &d1s, cfg.floor_factor * d1_floor) {
        Some(fit) => {
            let rate = -fit.slope;
            rep.measure("d1_rate", rate);
            rep.checks.push(Check::ge(
                "d1-rate>=0.9*anchor",
                rate,
                0.9 * d1_anchor,
                "fitted exponential decay rate of d1(rho_t, rho_inf)",
            ));
            if params.is_symmetric() {
                let stated = 2.0 * params.mu_min();
                rep.measure("d1_rate_stated", stated);
                rep.checks.push(
                    Check::ge(
                        "d1-rate>=stated-2mu",
                        rate,
                        stated,
                        "measured d1 rate against the 2*mu envelope; a failure flags the discrepancy",
                    )
                    .informational(),
                );
            }
            rep.fit("log_d1_vs_t", fit);
        }
        None => rep.checks.push(Check::unavailable(
            "d1-rate>=0.9*anchor",
            0.9 * d1_anchor,
            ">=",
            "fewer than 3 points above the d1 floor window",
        )),
    }
    let w2_floor = floor_w2sq.max(w2s.iter().copied().fold(f64::INFINITY, f64::min));
    match decay_rate(&ts, &w2s, cfg.floor_factor * w2_floor) {
        Some(fit) => {
            rep.measure("w2_sq_rate", -fit.slope);
            rep.checks.push(
                Check::ge(
                    "w2sq-rate>=0.9*anchor",
                    -fit.slope,
                    0.9 * w2_anchor,
                    "fitted exponential decay rate of W2^2(rho_t, rho_inf)",
                )
                .informational(),
            );
            rep.fit("log_w2sq_vs_t", fit);
        }
        None => rep
            .notes
            .push("W2^2 stays within 10x of its floor; no rate fitted".into()),
    }

    let pos = |ys: &[f64]| -> Vec<(f64, f64)> { ts.iter().copied().zip(ys.iter().copied()).collect() };
    rep.charts.push((
        "distances".into(),
        Chart::new("Distance to equilibrium", "t", "distance")
            .log_y()
            .with(Series::new("W2^2", pos(&w2s), Style::Line))
            .with(Series::new("d1", pos(&d1s), Style::Line))
            .with(Series::new("W2^2 envelope", pos(&envs), Style::Line))
            .with(Series::new("W2^2 floor", pos(&vec![floor_w2sq; ts.len()]), Style::Line))
            .with(Series::new("d1 floor", pos(&vec![floor_d1; ts.len()]), Style::Line)),
    ));
    rep.tables.push(table);
    Ok(rep)
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct FractalConfig {
    pub params_list: Vec<(f64, f64)>,
    pub n_agents: usize,
    pub t_end: f64,
    pub bins: usize,
    pub grid_size: usize,
    pub dt: f64,
    pub ifs_depth: usize,
    pub ifs_samples: usize,
    pub init: InitialLaw,
    pub scheme: AbmScheme,
    /// Points of the CDF overlay table.
    pub overlay_points: usize,
    pub seed: u64,
}

impl Default for FractalConfig {
    fn default() -> Self {
        Self {
            params_list: vec![(0.75, 0.75), (0.4, 0.9), (0.2, 0.3)],
            n_agents: 1_000_000,
            t_end: 10.0,
            bins: 200,
            grid_size: DEFAULT_GRID_SIZE,
            dt: DEFAULT_DT,
            ifs_depth: DEFAULT_DEPTH,
            ifs_samples: 1_000_000,
            init: InitialLaw::uniform(),
            scheme: AbmScheme::PairwiseGillespie,
            overlay_points: 801,
            seed: 5,
        }
    }
}

/// Sup-norm distances between the three descriptions of the long-time law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeWay {
    pub abm_pde: f64,
    pub abm_ifs: f64,
    pub pde_ifs: f64,
    pub tolerance: f64,
    pub gap_mass: Option<f64>,
}

/// ABM, kinetic equation and IFS sampler side by side for each parameter
/// pair: CDF overlays, histograms and the mass left in the first gap.
pub fn exp_fractal_figures(cfg: &FractalConfig) -> Result<ExperimentReport> {
    if cfg.params_list.is_empty() {
        return Err(Error::Config("params_list is empty".into()));
    }
    let plist = cfg
        .params_list
        .iter()
        .map(|&(a, b)| ModelParams::new(a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = ExperimentReport::new(ExperimentKind::FractalFigures.name(), plist.clone(), cfg.seed);
    rep.input("n_agents", json!(cfg.n_agents));
    rep.input("t_end", json!(cfg.t_end));
    rep.input("bins", json!(cfg.bins));
    rep.input("grid_size", json!(cfg.grid_size));
    rep.input("dt", json!(cfg.dt));
    rep.input("ifs_depth", json!(cfg.ifs_depth));
    rep.input("ifs_samples", json!(cfg.ifs_samples));
    rep.input("init", json!(cfg.init.to_string()));
    rep.input("scheme", json!(cfg.scheme.to_string()));

    let n_eff = cfg.n_agents.min(cfg.ifs_samples) as f64;
    let tol = 5.0 * (cfg.dt + 1.0 / cfg.grid_size as f64 + n_eff.powf(-0.5));
    rep.measure("tolerance", tol);
    let m0 = cfg.init.mean();
    let xs: Vec<f64> = uniform_grid(cfg.overlay_points.max(2));

    for (k, params) in plist.iter().enumerate() {
        let tag = param_tag(params);
        let abm = AbmConfig::new(cfg.n_agents, cfg.t_end, cfg.scheme);
        let mut rng = RngSpec::new(cfg.seed, STREAM_ABM).child(k as u64).rng();
        let abm_law = EmpiricalDistribution::new(simulate_abm(params, &cfg.init, &abm, &mut rng)?.final_state.into_opinions())?;
        let pde_cfg = PdeConfig {
            grid_size: cfg.grid_size,
            dt: cfg.dt,
            t_end: cfg.t_end,
            record_times: vec![cfg.t_end],
        };
        let pde = solve_pde(&cfg.init.to_grid(cfg.grid_size)?, params, &pde_cfg, m0)?
            .pop()
            .expect("one record time")
            .1;
        let ifs = sample_equilibrium(params, cfg.ifs_depth, cfg.ifs_samples, RngSpec::new(cfg.seed, STREAM_IFS).child(k as u64))?;

        let gap_mass = params
            .first_gap()
            .map(|(a, b)| abm_law.count_in_open(a, b) as f64 / abm_law.len() as f64);
        let tw = ThreeWay {
            abm_pde: abm_law.sup_distance(&pde),
            abm_ifs: abm_law.ks_two_sample(&ifs),
            pde_ifs: ifs.sup_distance(&pde),
            tolerance: tol,
            gap_mass,
        };
        for (name, v) in [("abm_pde", tw.abm_pde), ("abm_ifs", tw.abm_ifs), ("pde_ifs", tw.pde_ifs)] {
            rep.measure(format!("{tag}/sup_{name}"), v);
            rep.checks.push(Check::le(
                format!("{tag}/sup-{name}"),
                v,
                tol,
                "sup-norm CDF distance; tolerance 5 (dt + 1/M + n^-1/2)",
            ));
        }
        if let Some(g) = gap_mass {
            rep.measure(format!("{tag}/gap_mass"), g);
            rep.checks.push(Check::le(
                format!("{tag}/gap-mass"),
                g,
                1e-3,
                "fraction of ABM agents inside the first-level gap",
            ));
        }
        rep.measure(format!("{tag}/abm_mean"), abm_law.mean());
        rep.measure(format!("{tag}/ifs_mean"), ifs.mean());
        rep.measure(format!("{tag}/m_inf"), params.m_inf());

        let mut overlay = Table::new(&format!("cdf_{tag}"), &["x", "F_abm", "F_pde", "F_ifs"]);
        for &x in &xs {
            overlay.push(vec![x, abm_law.cdf(x), pde.eval(x), ifs.cdf(x)]);
        }
        let mut hist = Table::new(&format!("hist_{tag}"), &["x", "density_abm", "density_ifs"]);
        for ((x, da), (_, di)) in abm_law.histogram(cfg.bins).into_iter().zip(ifs.histogram(cfg.bins)) {
            hist.push(vec![x, da, di]);
        }
        let col = |t: &Table, c: usize| -> Vec<(f64, f64)> { t.rows.iter().map(|r| (r[0], r[c])).collect() };
        rep.charts.push((
            format!("cdf_{tag}"),
            Chart::new(format!("CDF at t={} ({tag})", cfg.t_end), "x", "F")
                .with(Series::new("ABM", col(&overlay, 1), Style::Step))
                .with(Series::new("kinetic equation", col(&overlay, 2), Style::Line))
                .with(Series::new("IFS equilibrium", col(&overlay, 3), Style::Step)),
        ));
        rep.charts.push((
            format!("hist_{tag}"),
            Chart::new(format!("Normalized histogram ({tag})"), "x", "density")
                .with(Series::new("ABM", col(&hist, 1), Style::Bars))
                .with(Series::new("IFS equilibrium", col(&hist, 2), Style::Line)),
        ));
        rep.tables.push(overlay);
        rep.tables.push(hist);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct TwoCopyConfig {
    pub mu: f64,
    pub n_list: Vec<usize>,
    pub t_end: f64,
    pub record_every: f64,
    pub replicas: usize,
    pub init_a: InitialLaw,
    pub init_b: InitialLaw,
    pub seed: u64,
}

impl Default for TwoCopyConfig {
    fn default() -> Self {
        Self {
            mu: 0.4,
            n_list: vec![100, 400, 1600],
            t_end: 30.0,
            record_every: 1.0,
            replicas: 200,
            init_a: InitialLaw::Atoms(crate::dist::AtomicDistribution::dirac(0.8).expect("valid atom")),
            init_b: InitialLaw::uniform(),
            seed: 6,
        }
    }
}

/// Two ensembles driven by shared randomness from different initial laws.
/// Checks that the replica-averaged distance is nonincreasing within noise
/// and that its long-time level decays at least like `N^{-0.3}`.
pub fn exp_two_copy(cfg: &TwoCopyConfig) -> Result<ExperimentReport> {
    let params = ModelParams::symmetric(cfg.mu)?;
    if cfg.replicas < 2 {
        return Err(Error::Config("replicas must be >= 2".into()));
    }
    if !(cfg.record_every > 0.0) {
        return Err(Error::Config("record_every must be > 0".into()));
    }
    let times = time_grid(cfg.t_end, cfg.record_every);
    let mut rep = ExperimentReport::new(ExperimentKind::TwoCopyStability.name(), vec![params], cfg.seed);
    rep.input("n_list", json!(cfg.n_list));
    rep.input("t_end", json!(cfg.t_end));
    rep.input("replicas", json!(cfg.replicas));
    rep.input("init_a", json!(cfg.init_a.to_string()));
    rep.input("init_b", json!(cfg.init_b.to_string()));

    let mut header = vec!["t".to_string()];
    header.extend(cfg.n_list.iter().map(|n| format!("n{n}")));
    let mut curves = Table {
        name: "distance".into(),
        header,
        rows: times.iter().map(|&t| vec![t]).collect(),
    };
    let mut limits = Table::new("limit", &["n", "limit", "limit_se"]);
    let mut chart = Chart::new("Two-copy distance", "t", "(1/N) sum |x - y|").log_y();
    for (k, &n) in cfg.n_list.iter().enumerate() {
        let base = RngSpec::new(cfg.seed, STREAM_ABM).child(k as u64);
        let runs = replicate(cfg.replicas, base, |r, _| {
            let s = base.child(r as u64);
            let seeds = TwoCopySeeds {
                init_a: s.child(0),
                init_b: s.child(1),
                dynamics: s.child(2),
            };
            two_copy_run(&params, n, &cfg.init_a, &cfg.init_b, &times, seeds)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let mut worst_rise = f64::NEG_INFINITY;
        let mut mean_curve = Vec::with_capacity(times.len());
        for j in 0..times.len() {
            let (m, _) = mean_se(&runs.iter().map(|r| r[j].1).collect::<Vec<_>>());
            mean_curve.push(m);
            curves.rows[j].push(m);
            if j > 0 {
                let diffs: Vec<f64> = runs.iter().map(|r| r[j].1 - r[j - 1].1).collect();
                let (dm, dse) = mean_se(&diffs);
                worst_rise = worst_rise.max(dm - 3.0 * dse);
            }
        }
        rep.checks.push(Check::le(
            format!("nonincreasing@n={n}"),
            worst_rise,
            0.0,
            "max over consecutive times of (mean increment - 3 SE)",
        ));
        let (lm, lse) = mean_se(&runs.iter().map(|r| r[times.len() - 1].1).collect::<Vec<_>>());
        limits.push(vec![n as f64, lm, lse]);
        chart = chart.with(Series::new(
            format!("N={n}"),
            times.iter().copied().zip(mean_curve).collect(),
            Style::Line,
        ));
    }
    if cfg.n_list.len() >= 2 {
        let ns = limits.column("n").expect("column exists");
        let ls = limits.column("limit").expect("column exists");
        match loglog_fit(&ns, &ls) {
            Ok(fit) => {
                rep.measure("limit_slope", fit.slope);
                rep.checks.push(Check::le(
                    "limit-slope<=-0.3",
                    fit.slope,
                    -0.3,
                    "log-log slope of the long-time distance against N (a C/sqrt(N) bound allows -0.5 + 0.2)",
                ));
                rep.checks.push(
                    Check::ge("limit-slope>=-0.7", fit.slope, -0.7, "slope within -0.5 +- 0.2").informational(),
                );
                rep.fit("log_limit_vs_log_n", fit);
            }
            Err(e) => rep.notes.push(format!("no slope fitted: {e}")),
        }
    }
    rep.charts.push(("distance".into(), chart));
    rep.tables.push(curves);
    rep.tables.push(limits);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for k in ExperimentKind::ALL {
            assert_eq!(k.name().parse::<ExperimentKind>().unwrap(), k);
        }
        assert!("nope".parse::<ExperimentKind>().is_err());
    }

    #[test]
    fn time_grid_hits_end() {
        assert_eq!(time_grid(1.0, 0.25), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(time_grid(0.0, 0.25), vec![0.0]);
        assert_eq!(*time_grid(1.1, 0.25).last().unwrap(), 1.1);
    }

    #[test]
    fn decay_rate_recovers_exponent() {
        let ts: Vec<f64> = (0..20).map(|k| k as f64 * 0.5).collect();
        let ys: Vec<f64> = ts.iter().map(|t| 2.0 * (-0.7 * t).exp() + 1e-4).collect();
        let fit = decay_rate(&ts, &ys, 1e-2).unwrap();
        assert!((fit.slope + 0.7).abs() < 0.02, "{}", fit.slope);
        assert!(decay_rate(&ts, &ys, 10.0).is_none());
    }

    #[test]
    fn exact_mean_small() {
        let cfg = ExactMeanConfig {
            replicas: 200,
            n_agents: 20,
            ..Default::default()
        };
        let rep = exp_exact_mean(&cfg).unwrap();
        assert_eq!(rep.get_table("mean").unwrap().rows.len(), 4);
        assert_eq!(rep.checks.len(), 4);
        let again = exp_exact_mean(&cfg).unwrap();
        assert_eq!(rep, again);
    }

    #[test]
    fn report_artifacts_layout() {
        let cfg = ExactMeanConfig {
            replicas: 20,
            n_agents: 10,
            ..Default::default()
        };
        let mut rep = exp_exact_mean(&cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let out = rep.write_artifacts(dir.path()).unwrap();
        assert!(out.ends_with("exact-mean/mm0.3_mp0.3"));
        for f in ["mean.csv", "mean.svg", "report.json"] {
            assert!(out.join(f).exists(), "{f}");
        }
        let back: ExperimentReport = io::read_json(&out.join("report.json")).unwrap();
        assert_eq!(back.artifacts, rep.artifacts);
        assert_eq!(back.checks, rep.checks);
    }
}
