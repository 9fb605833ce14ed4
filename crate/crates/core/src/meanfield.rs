//! The large-population layer: the mean-field jump process and the
//! Boltzmann-type equation `∂ₜρ = Q₊[ρ] − ρ` for its law.
//!
//! The gain operator `Q₊` is the law of `B·f₊(Z) + (1−B)·f₋(Z)` with
//! `B ~ Bernoulli((1−m)/2)` independent of `Z ~ ρ`, where
//! `f₊(z) = z + μ₊(1−z)` and `f₋(z) = z − μ₋(1+z)`. Both maps are increasing
//! and affine, so on CDFs the operator is an exact mixture of rescaled copies
//! of `F`. The solver evolves the CDF, which stays meaningful when the
//! equilibrium is singular.

use rand::Rng;
use rand_distr::Exp1;

use crate::abm::validate_record_times;
use crate::dist::{uniform_grid, AtomicDistribution, EmpiricalDistribution, GridDistribution, InitialLaw, Law};
use crate::error::{Error, Result};
use crate::par;
use crate::params::{MeanCurve, ModelParams};
use crate::rng::{RngSpec, SimRng};

/// Paths per parallel work item.
const PATH_CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct MeanFieldConfig {
    pub t_end: f64,
    pub n_paths: usize,
    pub record_times: Vec<f64>,
}

/// Moments of the sampled paths at one record time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub t: f64,
    pub mean: f64,
    pub second_moment: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanFieldSample {
    pub final_law: EmpiricalDistribution,
    pub moments: Vec<MomentRow>,
}

/// Samples `n_paths` independent copies of the mean-field process up to
/// `t_end`. Each path has a rate-1 clock; at an event at time `t` it moves
/// toward +1 with probability `(1 − m_t)/2`, where `m_t` is the closed-form
/// mean started from `m0`.
pub fn sample_meanfield(
    params: &ModelParams,
    m0: f64,
    z0: &InitialLaw,
    cfg: &MeanFieldConfig,
    spec: RngSpec,
) -> Result<MeanFieldSample> {
    if cfg.n_paths == 0 {
        return Err(Error::Config("n_paths must be >= 1".into()));
    }
    if !(cfg.t_end >= 0.0) || !cfg.t_end.is_finite() {
        return Err(Error::Config(format!("t_end must be finite and >= 0, got {}", cfg.t_end)));
    }
    validate_record_times(&cfg.record_times, cfg.t_end)?;
    let curve = MeanCurve::new(params, m0)?;
    let chunks = par::chunk_sizes(cfg.n_paths, PATH_CHUNK);
    let n_rec = cfg.record_times.len();

    let results = par::map_indexed(chunks.len(), |c| {
        let mut rng = spec.child(c as u64).rng();
        let mut finals = Vec::with_capacity(chunks[c]);
        let mut sums = vec![(0.0f64, 0.0f64); n_rec];
        for _ in 0..chunks[c] {
            let mut z = z0.sample(&mut rng);
            let mut t = 0.0;
            let mut rec = 0usize;
            loop {
                let e: f64 = rng.sample(Exp1);
                let t_next = t + e;
                while rec < n_rec && cfg.record_times[rec] < t_next {
                    sums[rec].0 += z;
                    sums[rec].1 += z * z;
                    rec += 1;
                }
                if t_next > cfg.t_end {
                    break;
                }
                t = t_next;
                z = if rng.random::<f64>() < ModelParams::prob_plus(curve.eval(t)) {
                    params.map_plus(z)
                } else {
                    params.map_minus(z)
                };
            }
            finals.push(z);
        }
        (finals, sums)
    });

    let n = cfg.n_paths as f64;
    let mut totals = vec![(0.0f64, 0.0f64); n_rec];
    let mut all = Vec::with_capacity(cfg.n_paths);
    for (finals, sums) in results {
        all.extend(finals);
        for (acc, s) in totals.iter_mut().zip(sums) {
            acc.0 += s.0;
            acc.1 += s.1;
        }
    }
    let moments = cfg
        .record_times
        .iter()
        .zip(totals)
        .map(|(&t, (s1, s2))| MomentRow {
            t,
            mean: s1 / n,
            second_moment: s2 / n,
        })
        .collect();
    Ok(MeanFieldSample {
        final_law: EmpiricalDistribution::new(all)?,
        moments,
    })
}

/// One mean-field path from `z` at time 0 to `t_end`, returning its endpoint.
#[inline]
pub fn meanfield_path<R: Rng + ?Sized>(params: &ModelParams, curve: &MeanCurve, mut z: f64, t_end: f64, rng: &mut R) -> f64 {
    let mut t = 0.0;
    loop {
        let e: f64 = rng.sample(Exp1);
        t += e;
        if t > t_end {
            return z;
        }
        z = if rng.random::<f64>() < ModelParams::prob_plus(curve.eval(t)) {
            params.map_plus(z)
        } else {
            params.map_minus(z)
        };
    }
}

/// One application of the gain operator `Q₊` with mean parameter `m`.
pub trait ApplyGain: Sized {
    fn apply_gain(&self, params: &ModelParams, m: f64, rng: &mut SimRng) -> Result<Self>;
}

fn check_mean(m: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&m) {
        return Err(Error::InvalidParam {
            field: "m",
            value: m,
            reason: "mean parameter must lie in [-1, 1]",
        });
    }
    Ok(())
}

/// Random map per sample.
impl ApplyGain for EmpiricalDistribution {
    fn apply_gain(&self, params: &ModelParams, m: f64, rng: &mut SimRng) -> Result<Self> {
        check_mean(m)?;
        let p = ModelParams::prob_plus(m);
        let out = self
            .samples()
            .iter()
            .map(|&z| {
                if rng.random::<f64>() < p {
                    params.map_plus(z)
                } else {
                    params.map_minus(z)
                }
            })
            .collect();
        EmpiricalDistribution::new(out)
    }
}

/// Exact: every atom splits in two.
impl ApplyGain for AtomicDistribution {
    fn apply_gain(&self, params: &ModelParams, m: f64, _rng: &mut SimRng) -> Result<Self> {
        gain_atomic(self, params, m)
    }
}

impl ApplyGain for GridDistribution {
    fn apply_gain(&self, params: &ModelParams, m: f64, _rng: &mut SimRng) -> Result<Self> {
        gain_grid(self, params, m)
    }
}

pub fn gain_atomic(dist: &AtomicDistribution, params: &ModelParams, m: f64) -> Result<AtomicDistribution> {
    check_mean(m)?;
    let p = ModelParams::prob_plus(m);
    let atoms = dist
        .atoms()
        .iter()
        .flat_map(|&(x, w)| [(params.map_plus(x), p * w), (params.map_minus(x), (1.0 - p) * w)])
        .collect();
    AtomicDistribution::new(atoms)
}

/// Gain-operator CDF on the nodes of `dist`:
/// `G(x) = (1−m)/2 · F(f₊⁻¹(x)) + (1+m)/2 · F(f₋⁻¹(x))`, with `F = 0` below
/// −1 and `F = 1` above +1. A unit step size makes the corresponding map
/// constant, contributing a unit step at ±1.
fn gain_values(dist: &GridDistribution, params: &ModelParams, m: f64, out: &mut Vec<f64>) {
    let p = ModelParams::prob_plus(m);
    let (mp, mm) = (params.mu_plus(), params.mu_minus());
    out.clear();
    out.extend(dist.grid().iter().map(|&x| {
        let plus = if mp >= 1.0 {
            if x >= 1.0 { 1.0 } else { 0.0 }
        } else {
            dist.eval((x - mp) / (1.0 - mp))
        };
        let minus = if mm >= 1.0 { 1.0 } else { dist.eval((x + mm) / (1.0 - mm)) };
        p * plus + (1.0 - p) * minus
    }));
}

pub fn gain_grid(dist: &GridDistribution, params: &ModelParams, m: f64) -> Result<GridDistribution> {
    check_mean(m)?;
    let mut v = Vec::with_capacity(dist.len());
    gain_values(dist, params, m, &mut v);
    GridDistribution::from_values_repaired(dist.grid().to_vec(), v)
}

/// `∫ Q[φ] dρ` with `Q[φ](x) = φ(f₊(x))(1−m)/2 + φ(f₋(x))(1+m)/2 − φ(x)`.
pub fn generator_apply<L: Law, F: Fn(f64) -> f64>(phi: F, dist: &L, params: &ModelParams, m: f64) -> f64 {
    let p = ModelParams::prob_plus(m);
    dist.expect(|x| p * phi(params.map_plus(x)) + (1.0 - p) * phi(params.map_minus(x)) - phi(x))
}

pub const DEFAULT_GRID_SIZE: usize = 4097;
pub const DEFAULT_DT: f64 = 0.01;
pub const MIN_GRID_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct PdeConfig {
    pub grid_size: usize,
    pub dt: f64,
    pub t_end: f64,
    pub record_times: Vec<f64>,
}

impl PdeConfig {
    pub fn new(t_end: f64, record_times: Vec<f64>) -> Self {
        Self {
            grid_size: DEFAULT_GRID_SIZE,
            dt: DEFAULT_DT,
            t_end,
            record_times,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_size < MIN_GRID_SIZE {
            return Err(Error::Config(format!(
                "grid_size must be >= {MIN_GRID_SIZE}, got {}",
                self.grid_size
            )));
        }
        if !(self.dt > 0.0 && self.dt < 1.0) {
            return Err(Error::InvalidParam {
                field: "dt",
                value: self.dt,
                reason: "time step must lie in (0, 1) for the Euler update to stay a convex combination",
            });
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::Config(format!("t_end must be finite and >= 0, got {}", self.t_end)));
        }
        validate_record_times(&self.record_times, self.t_end)
    }

    /// `dt + 1/M`, the discretization scale used by tolerance checks.
    pub fn resolution(&self) -> f64 {
        self.dt + 1.0 / self.grid_size as f64
    }
}

/// Explicit Euler in CDF form: `F ← (1−Δt)F + Δt·G(F; m_t)`, with `m_t` from
/// the closed-form mean curve started at `m0`. Steps are shortened to land
/// exactly on record times. Returns the CDF at every record time.
pub fn solve_pde(
    rho0: &GridDistribution,
    params: &ModelParams,
    cfg: &PdeConfig,
    m0: f64,
) -> Result<Vec<(f64, GridDistribution)>> {
    cfg.validate()?;
    let grid = uniform_grid(cfg.grid_size);
    let mut cur = if rho0.grid() == grid.as_slice() {
        rho0.clone()
    } else {
        GridDistribution::from_cdf_fn(grid, |x| rho0.eval(x))?
    };
    let tol = 4.0 / (cfg.grid_size - 1) as f64;
    if (cur.mean() - m0).abs() > tol {
        return Err(Error::Config(format!(
            "initial CDF has mean {} but m0 = {m0}",
            cur.mean()
        )));
    }
    let curve = MeanCurve::new(params, m0)?;
    let mut out = Vec::with_capacity(cfg.record_times.len());
    let mut gain = Vec::with_capacity(cfg.grid_size);
    let mut t = 0.0f64;
    let eps = 1e-12 * cfg.dt;

    for &t_rec in &cfg.record_times {
        while t_rec - t > eps {
            let h = cfg.dt.min(t_rec - t);
            euler_step(&mut cur, params, curve.eval(t), h, &mut gain);
            t += h;
        }
        t = t_rec;
        out.push((t_rec, cur.clone()));
    }
    Ok(out)
}

fn euler_step(cur: &mut GridDistribution, params: &ModelParams, m: f64, h: f64, gain: &mut Vec<f64>) {
    gain_values(cur, params, m, gain);
    let mut running = 0.0f64;
    let next: Vec<f64> = cur
        .values()
        .iter()
        .zip(gain.iter())
        .map(|(&f, &g)| {
            running = running.max(((1.0 - h) * f + h * g).clamp(0.0, 1.0));
            running
        })
        .collect();
    let mut next = next;
    let last = next.len() - 1;
    next[last] = 1.0;
    cur.set_values_trusted(next);
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn rng() -> SimRng {
        RngSpec::from_seed(1).rng()
    }

    #[test]
    fn unit_steps_send_everything_to_the_endpoints() {
        let p = ModelParams::new(1.0, 1.0).unwrap();
        let a = AtomicDistribution::new(vec![(0.3, 0.2), (-0.6, 0.8)]).unwrap();
        let g = a.apply_gain(&p, 0.0, &mut rng()).unwrap();
        assert_eq!(g.atoms(), &[(-1.0, 0.5), (1.0, 0.5)]);

        let grid = GridDistribution::uniform(101).unwrap();
        let g = grid.apply_gain(&p, 0.0, &mut rng()).unwrap();
        assert_eq!(g.values()[0], 0.5);
        assert_eq!(g.values()[99], 0.5);
        assert_eq!(g.values()[100], 1.0);
    }

    #[test]
    fn dirac_zero_splits_into_two_atoms() {
        let p = ModelParams::new(0.2, 0.6).unwrap();
        let d = AtomicDistribution::dirac(0.0).unwrap();
        let g = gain_atomic(&d, &p, 0.0).unwrap();
        assert_eq!(g.atoms().len(), 2);
        assert_abs_diff_eq!(g.atoms()[0].0, -0.2);
        assert_abs_diff_eq!(g.atoms()[0].1, 0.5);
        assert_abs_diff_eq!(g.atoms()[1].0, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(g.atoms()[1].1, 0.5);
    }

    #[test]
    fn gain_grid_matches_atomic_on_uniform() {
        // Uniform[-1,1] under μ = 0.75: half uniform on [-1,-0.5], half on [0.5,1].
        let p = ModelParams::symmetric(0.75).unwrap();
        let g = gain_grid(&GridDistribution::uniform(401).unwrap(), &p, 0.0).unwrap();
        for (x, f) in [(-0.75, 0.25), (-0.5, 0.5), (0.0, 0.5), (0.5, 0.5), (0.75, 0.75)] {
            assert_abs_diff_eq!(g.eval(x), f, epsilon = 1e-12);
        }
    }

    #[test]
    fn generator_examples() {
        let p = ModelParams::symmetric(0.35).unwrap();
        let a = AtomicDistribution::new(vec![(-0.4, 0.3), (0.9, 0.7)]).unwrap();
        let m = a.mean();
        assert_abs_diff_eq!(generator_apply(|x| x, &a, &p, m), -2.0 * 0.35 * m, epsilon = 1e-14);
        assert_abs_diff_eq!(generator_apply(|_| 1.0, &a, &p, m), 0.0, epsilon = 1e-15);
        let asym = ModelParams::new(0.2, 0.7).unwrap();
        // φ(x)=x gives the mean drift
        assert_abs_diff_eq!(
            generator_apply(|x| x, &a, &asym, m),
            asym.mean_drift(m),
            epsilon = 1e-14
        );
    }

    #[test]
    fn pde_rejects_bad_config() {
        let p = ModelParams::symmetric(0.5).unwrap();
        let rho0 = GridDistribution::uniform(129).unwrap();
        let mut cfg = PdeConfig::new(1.0, vec![1.0]);
        cfg.grid_size = 129;
        cfg.dt = 1.0;
        assert!(solve_pde(&rho0, &p, &cfg, 0.0).is_err());
        cfg.dt = 0.1;
        cfg.grid_size = 32;
        assert!(solve_pde(&rho0, &p, &cfg, 0.0).is_err());
        cfg.grid_size = 129;
        assert!(solve_pde(&rho0, &p, &cfg, 0.5).is_err(), "mean mismatch");
    }

    #[test]
    fn pde_conserves_mass_and_monotonicity() {
        let p = ModelParams::new(0.4, 0.9).unwrap();
        let rho0 = GridDistribution::uniform(513).unwrap();
        let mut cfg = PdeConfig::new(3.0, vec![0.0, 0.37, 1.0, 3.0]);
        cfg.grid_size = 513;
        cfg.dt = 0.05;
        let out = solve_pde(&rho0, &p, &cfg, 0.0).unwrap();
        assert_eq!(out.len(), 4);
        assert_eq!(out[0].1, rho0);
        for (_, f) in &out {
            assert_eq!(*f.values().last().unwrap(), 1.0);
            assert!(f.values().windows(2).all(|w| w[1] >= w[0]));
            assert!(f.values()[0] >= 0.0);
        }
    }

    #[test]
    fn meanfield_zero_horizon_returns_initial_law() {
        let p = ModelParams::symmetric(0.3).unwrap();
        let cfg = MeanFieldConfig {
            t_end: 0.0,
            n_paths: 1000,
            record_times: vec![0.0],
        };
        let s = sample_meanfield(&p, 0.8, &InitialLaw::dirac(0.8).unwrap(), &cfg, RngSpec::from_seed(2)).unwrap();
        assert!(s.final_law.samples().iter().all(|&z| z == 0.8));
        assert_abs_diff_eq!(s.moments[0].mean, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn meanfield_unit_steps() {
        let p = ModelParams::new(1.0, 1.0).unwrap();
        let cfg = MeanFieldConfig {
            t_end: 5.0,
            n_paths: 5000,
            record_times: vec![],
        };
        let s = sample_meanfield(&p, 0.0, &InitialLaw::uniform(), &cfg, RngSpec::from_seed(3)).unwrap();
        // P(no event by t=5) = e^-5: those keep their uniform draw
        let off = s.final_law.samples().iter().filter(|&&z| z.abs() != 1.0).count();
        assert!(off < 100, "{off}");
    }
}
