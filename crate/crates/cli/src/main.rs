//! `kinopin`: command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input (flags, config, parameters),
//! 2 runtime failure (I/O and the like).

mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use kinopin::abm::{simulate_abm, AbmConfig, AbmScheme};
use kinopin::equilibrium::{
    boxcount_dimension, default_box_scales, hausdorff_dimension, sample_equilibrium, support_cover, DEFAULT_DEPTH,
};
use kinopin::experiments::{
    exp_convergence_rates, exp_exact_mean, exp_fluctuation_scaling, exp_fractal_figures, exp_poc_marginal,
    exp_two_copy, param_tag, ConvergenceConfig, ExactMeanConfig, ExperimentKind, ExperimentReport, FluctuationConfig,
    FractalConfig, PocConfig, TwoCopyConfig,
};
use kinopin::io;
use kinopin::meanfield::{solve_pde, MomentRow, PdeConfig, DEFAULT_DT, DEFAULT_GRID_SIZE};
use kinopin::metrics::{toscani_distance, wasserstein, MetricRecord, XiGrid};
use kinopin::plot::{Chart, Series, Style};
use kinopin::{EmpiricalDistribution, Error, GridDistribution, InitialLaw, Law, ModelParams, Result, RngSpec};

use config::ConfigFile;

pub const OUT_ENV: &str = "KINOPIN_OUT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format `{other}` (expected csv or json)"))),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kinopin", version, about = "Anticonformity opinion dynamics toolkit")]
struct Cli {
    /// Flat `key = value` config file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Artifact root (also `KINOPIN_OUT`).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Data artifact format: csv or json.
    #[arg(long, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Sets both step sizes.
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    mu_minus: Option<f64>,
    #[arg(long)]
    mu_plus: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate the agent-based model.
    Abm {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n_agents: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
        /// pairwise or thinned
        #[arg(long)]
        scheme: Option<AbmScheme>,
        #[arg(long)]
        replicas: Option<usize>,
        /// uniform, uniform:LO:HI, dirac:X or atoms:X@W,...
        #[arg(long)]
        init: Option<InitialLaw>,
        #[arg(long)]
        record_every: Option<f64>,
        /// Also write every agent's opinion at each record time (first replica).
        #[arg(long)]
        snapshots: bool,
    },
    /// Solve the kinetic equation on a grid.
    Pde {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        grid_size: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        init: Option<InitialLaw>,
        #[arg(long)]
        record_every: Option<f64>,
    },
    /// Sample the stationary law with the IFS.
    Equilibrium {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Nodes of the emitted CDF.
        #[arg(long)]
        grid_size: Option<usize>,
        /// Also write the support cover at this depth.
        #[arg(long)]
        cover_depth: Option<usize>,
    },
    /// Distance between two CDF (`x,F`) or sample (`z`) files.
    Metrics {
        a: PathBuf,
        b: PathBuf,
        /// wasserstein or fourier
        #[arg(long, default_value = "wasserstein")]
        metric: String,
        #[arg(long, default_value_t = 1.0)]
        order: f64,
    },
    /// Hausdorff dimension of the stationary law.
    Dimension {
        #[command(flatten)]
        model: ModelArgs,
        /// Also box-count this many IFS samples.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Run a named experiment.
    Experiment {
        /// exact-mean, fluctuation-scaling, poc-marginal, convergence-rates,
        /// fractal-figures or two-copy-stability
        name: Option<ExperimentKind>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n_agents: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        replicas: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        grid_size: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        init: Option<InitialLaw>,
        #[arg(long)]
        scheme: Option<AbmScheme>,
    },
}

/// Flag, then config file, then default.
struct Resolver {
    file: ConfigFile,
}

impl Resolver {
    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(self.opt(flag, key)?.unwrap_or(default))
    }

    fn opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.file.get(key),
        }
    }

    fn params(&self, m: &ModelArgs, default: f64) -> Result<ModelParams> {
        let both = self.opt(m.mu, "mu")?;
        let lo = both.unwrap_or(default);
        let mu_minus = match m.mu_minus {
            Some(v) => v,
            None => self.file.get("mu_minus")?.or(both).unwrap_or(lo),
        };
        let mu_plus = match m.mu_plus {
            Some(v) => v,
            None => self.file.get("mu_plus")?.or(both).unwrap_or(lo),
        };
        ModelParams::new(mu_minus, mu_plus)
    }

    /// Flag, then `KINOPIN_OUT`, then config file, then `out`.
    fn out_dir(&self, flag: Option<PathBuf>) -> Result<PathBuf> {
        if let Some(p) = flag {
            return Ok(p);
        }
        if let Some(p) = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()) {
            return Ok(PathBuf::from(p));
        }
        Ok(self.file.raw("out_dir").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out")))
    }
}

fn time_grid(t_end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Config(format!("record_every must be > 0, got {step}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::Config(format!("t_end must be finite and >= 0, got {t_end}")));
    }
    let k = (t_end / step + 1e-9).floor() as usize;
    let mut v: Vec<f64> = (0..=k).map(|i| i as f64 * step).filter(|&t| t <= t_end).collect();
    if v.last().is_none_or(|&t| t < t_end) {
        v.push(t_end);
    }
    Ok(v)
}

fn prepare_dir(root: &Path, cmd: &str, tag: &str) -> Result<PathBuf> {
    let dir = root.join(cmd).join(tag);
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn cdf_chart(title: &str, curves: &[(String, &GridDistribution)]) -> String {
    let mut chart = Chart::new(title, "x", "F(x)");
    for (name, g) in curves {
        let pts = g.grid().iter().zip(g.values()).map(|(&x, &f)| (x, f)).collect();
        chart = chart.with(Series::new(name.clone(), pts, Style::Line));
    }
    chart.to_svg()
}

#[derive(Serialize)]
struct GridJson<'a> {
    x: &'a [f64],
    cdf: &'a [f64],
}

fn grid_json(g: &GridDistribution) -> GridJson<'_> {
    GridJson {
        x: g.grid(),
        cdf: g.values(),
    }
}

fn run(cli: Cli) -> Result<String> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let r = Resolver { file };
    let threads = r.opt(cli.threads, "threads")?;
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::Config("threads must be >= 1".into()));
        }
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let seed = r.pick(cli.seed, "seed", 1)?;
    let format = r.pick(cli.format, "format", Format::Csv)?;
    let root = r.out_dir(cli.out_dir)?;

    match cli.command {
        Command::Abm {
            model,
            n_agents,
            t_end,
            scheme,
            replicas,
            init,
            record_every,
            snapshots,
        } => {
            let params = r.params(&model, 0.5)?;
            let n = r.pick(n_agents, "n_agents", 1000)?;
            let t_end = r.pick(t_end, "t_end", 10.0)?;
            let scheme = r.pick(scheme, "scheme", AbmScheme::PairwiseGillespie)?;
            let replicas = r.pick(replicas, "replicas", 1)?;
            let init = r.pick(init, "init", InitialLaw::uniform())?;
            let step = r.pick(record_every, "record_every", t_end.max(1e-9) / 20.0)?;
            if replicas == 0 {
                return Err(Error::Config("replicas must be >= 1".into()));
            }
            let mut cfg = AbmConfig::new(n, t_end, scheme).with_record_times(time_grid(t_end, step)?);
            cfg.validate()?;
            let spec = RngSpec::new(seed, 0);
            let runs = (0..replicas)
                .into_par_iter()
                .map(|k| {
                    let mut c = cfg.clone();
                    c.snapshots = snapshots && k == 0;
                    simulate_abm(&params, &init, &c, &mut spec.child(k as u64).rng())
                })
                .collect::<Result<Vec<_>>>()?;
            cfg.snapshots = snapshots;
            let times = &runs[0].record.times;
            let moments: Vec<MomentRow> = (0..times.len())
                .map(|j| MomentRow {
                    t: times[j],
                    mean: runs.iter().map(|x| x.record.mean_opinion[j]).sum::<f64>() / replicas as f64,
                    second_moment: runs.iter().map(|x| x.record.second_moment[j]).sum::<f64>() / replicas as f64,
                })
                .collect();
            let dir = prepare_dir(&root, "abm", &param_tag(&params))?;
            let finals = EmpiricalDistribution::new(runs[0].final_state.opinions().to_vec())?;
            match format {
                Format::Csv => {
                    io::write_moments_csv(&dir.join("trajectory.csv"), &moments)?;
                    io::write_samples_csv(&dir.join("final.csv"), &finals)?;
                    if snapshots {
                        io::write_snapshots_csv(&dir.join("snapshots.csv"), &runs[0].record.snapshots)?;
                    }
                }
                Format::Json => io::write_json(
                    &dir.join("abm.json"),
                    &json!({
                        "params": params, "n_agents": n, "t_end": t_end, "scheme": scheme.to_string(),
                        "replicas": replicas, "init": init.to_string(), "seed": seed,
                        "trajectory": moments.iter().map(|m| [m.t, m.mean, m.second_moment]).collect::<Vec<_>>(),
                        "final_opinions": finals.samples(),
                        "snapshots": if snapshots { json!(runs[0].record.snapshots) } else { json!(null) },
                    }),
                )?,
            }
            let last = moments.last().expect("t_end is always recorded");
            Ok(format!(
                "abm [{}]: N={n} replicas={replicas} t={t_end} mean={:.6} second_moment={:.6} -> {}",
                param_tag(&params),
                last.mean,
                last.second_moment,
                dir.display()
            ))
        }

        Command::Pde {
            model,
            grid_size,
            dt,
            t_end,
            init,
            record_every,
        } => {
            let params = r.params(&model, 0.5)?;
            let t_end = r.pick(t_end, "t_end", 10.0)?;
            let init = r.pick(init, "init", InitialLaw::uniform())?;
            let step = r.pick(record_every, "record_every", t_end.max(1e-9) / 20.0)?;
            let mut cfg = PdeConfig::new(t_end, time_grid(t_end, step)?);
            cfg.grid_size = r.pick(grid_size, "grid_size", DEFAULT_GRID_SIZE)?;
            cfg.dt = r.pick(dt, "dt", DEFAULT_DT)?;
            cfg.validate()?;
            let rho0 = init.to_grid(cfg.grid_size)?;
            let out = solve_pde(&rho0, &params, &cfg, init.mean())?;
            let moments: Vec<MomentRow> = out
                .iter()
                .map(|(t, g)| MomentRow {
                    t: *t,
                    mean: g.mean(),
                    second_moment: g.variance() + g.mean().powi(2),
                })
                .collect();
            let (_, last) = out.last().expect("t_end is always recorded");
            let dir = prepare_dir(&root, "pde", &param_tag(&params))?;
            match format {
                Format::Csv => {
                    io::write_moments_csv(&dir.join("moments.csv"), &moments)?;
                    io::write_cdf_csv(&dir.join("cdf.csv"), last)?;
                }
                Format::Json => io::write_json(
                    &dir.join("pde.json"),
                    &json!({
                        "params": params, "grid_size": cfg.grid_size, "dt": cfg.dt, "t_end": t_end,
                        "init": init.to_string(),
                        "moments": moments.iter().map(|m| [m.t, m.mean, m.second_moment]).collect::<Vec<_>>(),
                        "final": grid_json(last),
                    }),
                )?,
            }
            io::write_text(
                &dir.join("cdf.svg"),
                &cdf_chart("kinetic equation", &[("t=0".into(), &rho0), (format!("t={t_end}"), last)]),
            )?;
            Ok(format!(
                "pde [{}]: M={} dt={} t={t_end} mean={:.6} (m_inf={:.6}) -> {}",
                param_tag(&params),
                cfg.grid_size,
                cfg.dt,
                last.mean(),
                params.m_inf(),
                dir.display()
            ))
        }

        Command::Equilibrium {
            model,
            depth,
            samples,
            grid_size,
            cover_depth,
        } => {
            let params = r.params(&model, 0.5)?;
            let depth = r.pick(depth, "depth", DEFAULT_DEPTH)?;
            let n = r.pick(samples, "samples", 100_000)?;
            let m = r.pick(grid_size, "grid_size", 1025)?;
            let s = sample_equilibrium(&params, depth, n, RngSpec::new(seed, 0))?;
            let g = s.to_grid(&kinopin::dist::uniform_grid(m))?;
            let cover = cover_depth.map(|d| support_cover(&params, d)).transpose()?;
            let dir = prepare_dir(&root, "equilibrium", &param_tag(&params))?;
            match format {
                Format::Csv => {
                    io::write_samples_csv(&dir.join("samples.csv"), &s)?;
                    io::write_cdf_csv(&dir.join("cdf.csv"), &g)?;
                    if let Some(c) = &cover {
                        let rows: Vec<_> = c.intervals.iter().map(|&(a, b)| (c.depth, a, b)).collect();
                        io::write_intervals_csv(&dir.join("cover.csv"), &rows)?;
                    }
                }
                Format::Json => io::write_json(
                    &dir.join("equilibrium.json"),
                    &json!({
                        "params": params, "depth": depth, "samples": n, "seed": seed,
                        "mean": s.mean(), "m_inf": params.m_inf(),
                        "cdf": grid_json(&g),
                        "cover": cover,
                    }),
                )?,
            }
            io::write_text(&dir.join("cdf.svg"), &cdf_chart("stationary law", &[("IFS".into(), &g)]))?;
            Ok(format!(
                "equilibrium [{}]: n={n} depth={depth} mean={:.6} (m_inf={:.6}) -> {}",
                param_tag(&params),
                s.mean(),
                params.m_inf(),
                dir.display()
            ))
        }

        Command::Metrics { a, b, metric, order } => {
            let la = load_law(&a)?;
            let lb = load_law(&b)?;
            let (value, flags) = match metric.as_str() {
                "wasserstein" | "w" => (la.wasserstein(order, &lb)?, Vec::new()),
                "fourier" | "toscani" | "d" => {
                    let res = la.toscani(order, &lb)?;
                    let mut flags = Vec::new();
                    if res.moment_mismatch {
                        flags.push("moment-mismatch".to_string());
                    }
                    if res.low_freq_blowup {
                        flags.push("low-frequency-blowup".to_string());
                    }
                    (res.value, flags)
                }
                other => {
                    return Err(Error::Config(format!("unknown metric `{other}` (expected wasserstein or fourier)")))
                }
            };
            let rec = MetricRecord {
                metric: metric.clone(),
                order,
                value,
                tolerance_flags: flags,
            };
            std::fs::create_dir_all(root.join("metrics"))?;
            let path = root.join("metrics").join("metric.json");
            io::write_json(&path, &rec)?;
            Ok(format!("metrics: {metric}(p={order}) = {value:.6e} -> {}", path.display()))
        }

        Command::Dimension { model, samples, depth } => {
            let params = r.params(&model, 0.75)?;
            let rep = hausdorff_dimension(&params)?;
            let n = r.opt(samples, "samples")?;
            let depth = r.pick(depth, "depth", DEFAULT_DEPTH)?;
            let bc = match n {
                Some(n) => {
                    let s = sample_equilibrium(&params, depth, n, RngSpec::new(seed, 0))?;
                    Some(boxcount_dimension(&s, &default_box_scales())?)
                }
                None => None,
            };
            let dir = prepare_dir(&root, "dimension", &param_tag(&params))?;
            io::write_json(&dir.join("dimension.json"), &json!({ "analytic": rep, "boxcount": bc }))?;
            let mut line = format!(
                "dimension [{}]: D={} residual={:.1e}",
                param_tag(&params),
                rep.dimension,
                rep.residual
            );
            if let Some(b) = &bc {
                line.push_str(&format!(" boxcount={:.4}", b.dimension()));
            }
            if let Some(d) = &rep.diagnostic {
                line.push_str(&format!(" ({d})"));
            }
            line.push_str(&format!(" -> {}", dir.display()));
            Ok(line)
        }

        Command::Experiment {
            name,
            model,
            n_agents,
            t_end,
            replicas,
            samples,
            grid_size,
            dt,
            depth,
            init,
            scheme,
        } => {
            let kind = r
                .opt(name, "experiment")?
                .ok_or_else(|| Error::Config("experiment name required".into()))?;
            let ov = Overrides {
                mu: r.opt(model.mu, "mu")?,
                mu_minus: r.opt(model.mu_minus, "mu_minus")?,
                mu_plus: r.opt(model.mu_plus, "mu_plus")?,
                n_agents: r.opt(n_agents, "n_agents")?,
                t_end: r.opt(t_end, "t_end")?,
                replicas: r.opt(replicas, "replicas")?,
                samples: r.opt(samples, "samples")?,
                grid_size: r.opt(grid_size, "grid_size")?,
                dt: r.opt(dt, "dt")?,
                depth: r.opt(depth, "depth")?,
                init: r.opt(init, "init")?,
                scheme: r.opt(scheme, "scheme")?,
                seed: r.opt(cli.seed, "seed")?,
            };
            let mut rep = run_experiment(kind, &ov)?;
            let dir = rep.write_artifacts(&root)?;
            Ok(format!("{} -> {}", rep.summary(), dir.display()))
        }
    }
}

/// Optional settings applied on top of an experiment's defaults.
#[derive(Debug, Default)]
struct Overrides {
    mu: Option<f64>,
    mu_minus: Option<f64>,
    mu_plus: Option<f64>,
    n_agents: Option<usize>,
    t_end: Option<f64>,
    replicas: Option<usize>,
    samples: Option<usize>,
    grid_size: Option<usize>,
    dt: Option<f64>,
    depth: Option<usize>,
    init: Option<InitialLaw>,
    scheme: Option<AbmScheme>,
    seed: Option<u64>,
}

impl Overrides {
    fn symmetric_mu(&self, default: f64) -> Result<f64> {
        match (self.mu, self.mu_minus, self.mu_plus) {
            (Some(m), None, None) => Ok(m),
            (None, None, None) => Ok(default),
            (m, a, b) => {
                let v = m.or(a).or(b).unwrap_or(default);
                if a.unwrap_or(v) != v || b.unwrap_or(v) != v {
                    return Err(Error::Config("this experiment uses symmetric step sizes; set --mu".into()));
                }
                Ok(v)
            }
        }
    }

    fn pair(&self, default: (f64, f64)) -> (f64, f64) {
        (
            self.mu_minus.or(self.mu).unwrap_or(default.0),
            self.mu_plus.or(self.mu).unwrap_or(default.1),
        )
    }
}

fn run_experiment(kind: ExperimentKind, o: &Overrides) -> Result<ExperimentReport> {
    macro_rules! set {
        ($field:expr, $v:expr) => {
            if let Some(v) = $v.clone() {
                $field = v;
            }
        };
    }
    match kind {
        ExperimentKind::ExactMean => {
            let mut c = ExactMeanConfig::default();
            c.mu = o.symmetric_mu(c.mu)?;
            set!(c.n_agents, o.n_agents);
            set!(c.replicas, o.replicas);
            set!(c.init, o.init);
            set!(c.scheme, o.scheme);
            set!(c.seed, o.seed);
            if let Some(t) = o.t_end {
                c.times = time_grid(t, t / 4.0)?;
            }
            exp_exact_mean(&c)
        }
        ExperimentKind::FluctuationScaling => {
            let mut c = FluctuationConfig::default();
            c.mu = o.symmetric_mu(c.mu)?;
            set!(c.t, o.t_end);
            set!(c.replicas, o.replicas);
            set!(c.init, o.init);
            set!(c.scheme, o.scheme);
            set!(c.seed, o.seed);
            exp_fluctuation_scaling(&c)
        }
        ExperimentKind::PocMarginal => {
            let mut c = PocConfig::default();
            (c.mu_minus, c.mu_plus) = o.pair((c.mu_minus, c.mu_plus));
            set!(c.t, o.t_end);
            set!(c.pooled, o.samples);
            set!(c.mf_samples, o.samples);
            set!(c.init, o.init);
            set!(c.scheme, o.scheme);
            set!(c.seed, o.seed);
            exp_poc_marginal(&c)
        }
        ExperimentKind::ConvergenceRates => {
            let mut c = ConvergenceConfig::default();
            (c.mu_minus, c.mu_plus) = o.pair((c.mu_minus, c.mu_plus));
            set!(c.t_end, o.t_end);
            set!(c.grid_size, o.grid_size);
            set!(c.dt, o.dt);
            set!(c.ifs_depth, o.depth);
            set!(c.ifs_samples, o.samples);
            set!(c.init, o.init);
            set!(c.seed, o.seed);
            exp_convergence_rates(&c)
        }
        ExperimentKind::FractalFigures => {
            let mut c = FractalConfig::default();
            if o.mu.is_some() || o.mu_minus.is_some() || o.mu_plus.is_some() {
                c.params_list = vec![o.pair((0.5, 0.5))];
            }
            set!(c.n_agents, o.n_agents);
            set!(c.t_end, o.t_end);
            set!(c.grid_size, o.grid_size);
            set!(c.dt, o.dt);
            set!(c.ifs_depth, o.depth);
            set!(c.ifs_samples, o.samples);
            set!(c.init, o.init);
            set!(c.scheme, o.scheme);
            set!(c.seed, o.seed);
            exp_fractal_figures(&c)
        }
        ExperimentKind::TwoCopyStability => {
            let mut c = TwoCopyConfig::default();
            c.mu = o.symmetric_mu(c.mu)?;
            set!(c.t_end, o.t_end);
            set!(c.replicas, o.replicas);
            set!(c.seed, o.seed);
            exp_two_copy(&c)
        }
    }
}

/// A law read from disk: a CDF table or a sample file.
enum LoadedLaw {
    Grid(GridDistribution),
    Samples(EmpiricalDistribution),
}

fn load_law(path: &Path) -> Result<LoadedLaw> {
    let header = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?
        .lines()
        .next()
        .map(str::trim)
        .map(str::to_owned)
        .unwrap_or_default();
    match header.as_str() {
        "x,F" => Ok(LoadedLaw::Grid(io::read_cdf_csv(path)?)),
        "z" => Ok(LoadedLaw::Samples(io::read_samples_csv(path)?)),
        other => Err(Error::Config(format!(
            "{}: header `{other}` is neither `x,F` nor `z`",
            path.display()
        ))),
    }
}

impl LoadedLaw {
    fn wasserstein(&self, p: f64, other: &LoadedLaw) -> Result<f64> {
        use LoadedLaw::*;
        match (self, other) {
            (Grid(a), Grid(b)) => wasserstein(p, a, b),
            (Grid(a), Samples(b)) => wasserstein(p, a, b),
            (Samples(a), Grid(b)) => wasserstein(p, a, b),
            (Samples(a), Samples(b)) => wasserstein(p, a, b),
        }
    }

    fn toscani(&self, s: f64, other: &LoadedLaw) -> Result<kinopin::metrics::ToscaniResult> {
        use LoadedLaw::*;
        let xi = XiGrid::default();
        match (self, other) {
            (Grid(a), Grid(b)) => toscani_distance(s, a, b, &xi),
            (Grid(a), Samples(b)) => toscani_distance(s, a, b, &xi),
            (Samples(a), Grid(b)) => toscani_distance(s, a, b, &xi),
            (Samples(a), Samples(b)) => toscani_distance(s, a, b, &xi),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            if !e.render().to_string().contains("Usage:") {
                eprintln!("\n{}", <Cli as clap::CommandFactory>::command().render_usage());
            }
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
