//! The stationary law `ρ∞`: it is the invariant measure of the two-map
//! iterated function system `{f₋, f₊}` with weights `(1+m∞)/2`, `(1−m∞)/2`.
//! When `μ₊ + μ₋ > 1` the two images are disjoint and the support is a
//! Cantor-like set.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dist::{uniform_grid, EmpiricalDistribution, GridDistribution};
use crate::error::{Error, Result};
use crate::meanfield::ApplyGain;
use crate::metrics::{wasserstein, QuantileLaw};
use crate::par;
use crate::params::ModelParams;
use crate::rng::{RngSpec, SimRng};
use crate::stats::{linear_fit, log_space, LinearFit};

const SAMPLE_CHUNK: usize = 1 << 15;

pub const DEFAULT_DEPTH: usize = 40;
pub const MAX_COVER_DEPTH: usize = 24;
pub const MIN_BOXCOUNT_SAMPLES: usize = 100_000;
pub const DIMENSION_RESIDUAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IfsSpec {
    pub params: ModelParams,
    pub weight_plus: f64,
}

impl IfsSpec {
    pub fn new(params: &ModelParams) -> Self {
        Self {
            params: *params,
            weight_plus: (1.0 - params.m_inf()) / 2.0,
        }
    }

    /// `f_{b₁} ∘ ⋯ ∘ f_{b_depth}(0)` for i.i.d. coins; the last map applied
    /// is the outermost one.
    #[inline]
    pub fn sample_point<R: Rng + ?Sized>(&self, depth: usize, rng: &mut R) -> f64 {
        let mut z = 0.0;
        for _ in 0..depth {
            z = if rng.random::<f64>() < self.weight_plus {
                self.params.map_plus(z)
            } else {
                self.params.map_minus(z)
            };
        }
        z
    }
}

/// Draws `n` points of the depth-`depth` IFS approximation of `ρ∞`. Each
/// point is within `(1 − μ_min)^depth` of an attractor point.
pub fn sample_equilibrium(params: &ModelParams, depth: usize, n: usize, spec: RngSpec) -> Result<EmpiricalDistribution> {
    if depth == 0 {
        return Err(Error::Config("depth must be >= 1".into()));
    }
    if n == 0 {
        return Err(Error::Config("sample count must be >= 1".into()));
    }
    let ifs = IfsSpec::new(params);
    let chunks = par::chunk_sizes(n, SAMPLE_CHUNK);
    let parts = par::map_indexed(chunks.len(), |c| {
        let mut rng = spec.child(c as u64).rng();
        (0..chunks[c]).map(|_| ifs.sample_point(depth, &mut rng)).collect::<Vec<_>>()
    });
    EmpiricalDistribution::new(parts.concat())
}

/// Empirical CDF of `n` equilibrium samples tabulated on `grid_size` equally
/// spaced nodes.
pub fn equilibrium_grid(
    params: &ModelParams,
    depth: usize,
    n: usize,
    grid_size: usize,
    spec: RngSpec,
) -> Result<GridDistribution> {
    sample_equilibrium(params, depth, n, spec)?.to_grid(&uniform_grid(grid_size))
}

/// Smallest `k ≥ 1` with `2(1 − μ_min)^k ≤ tol`.
pub fn equilibrium_depth_for(tol: f64, params: &ModelParams) -> Result<usize> {
    if !(tol > 0.0 && tol <= 2.0) {
        return Err(Error::InvalidParam {
            field: "tol",
            value: tol,
            reason: "must lie in (0, 2]",
        });
    }
    let r = 1.0 - params.mu_min();
    let mut k = 1usize;
    let mut bound = 2.0 * r;
    while bound > tol {
        k += 1;
        bound *= r;
    }
    Ok(k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub mu_minus: f64,
    pub mu_plus: f64,
    pub dimension: f64,
    /// `|(1−μ₊)^D + (1−μ₋)^D − 1|`.
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

fn dimension_equation(params: &ModelParams, d: f64) -> f64 {
    (1.0 - params.mu_plus()).powf(d) + (1.0 - params.mu_minus()).powf(d) - 1.0
}

/// Hausdorff dimension of the support of `ρ∞` in the fractal regime: the
/// root `D ∈ (0, 1)` of `(1−μ₊)^D + (1−μ₋)^D = 1`.
pub fn hausdorff_dimension(params: &ModelParams) -> Result<DimensionReport> {
    if !params.is_fractal_regime() {
        return Err(Error::NotFractalRegime(params.mu_plus() + params.mu_minus()));
    }
    let report = |dimension: f64, residual: f64, diagnostic: Option<String>| DimensionReport {
        mu_minus: params.mu_minus(),
        mu_plus: params.mu_plus(),
        dimension,
        residual,
        diagnostic,
    };
    let (mp, mm) = (params.mu_plus(), params.mu_minus());
    if mp >= 1.0 && mm >= 1.0 {
        return Ok(report(0.0, 0.0, Some("both maps are constant: the attractor is {-1, +1}".into())));
    }
    if mp >= 1.0 || mm >= 1.0 {
        // (1−μ)^D = 1 has no root in (0, 1); the attractor is countable.
        let other = if mp >= 1.0 { mm } else { mp };
        let residual = ((1.0 - other).powf(0.0) - 1.0).abs();
        return Ok(report(
            0.0,
            residual,
            Some("one map is constant: the dimension equation has no root in (0, 1); attractor is countable".into()),
        ));
    }
    if params.is_symmetric() {
        let d = std::f64::consts::LN_2 / -(1.0 - mp).ln();
        return Ok(report(d, dimension_equation(params, d).abs(), None));
    }
    // The left side is strictly decreasing in D, positive at 0 and negative at 1.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if dimension_equation(params, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = if dimension_equation(params, lo).abs() <= dimension_equation(params, hi).abs() {
        lo
    } else {
        hi
    };
    Ok(report(d, dimension_equation(params, d).abs(), None))
}

/// Open intervals removed at each refinement depth.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GapTree {
    /// `levels[k-1]` holds the gaps created when passing from depth `k−1` to `k`.
    pub levels: Vec<Vec<(f64, f64)>>,
}

impl GapTree {
    pub fn is_empty(&self) -> bool {
        self.levels.iter().all(Vec::is_empty)
    }

    pub fn all(&self) -> impl Iterator<Item = (usize, (f64, f64))> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(k, g)| g.iter().map(move |&iv| (k + 1, iv)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportCover {
    pub depth: usize,
    /// The `2^depth` images of `[-1, 1]`, sorted left to right.
    pub intervals: Vec<(f64, f64)>,
    pub gaps: GapTree,
}

impl SupportCover {
    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

/// All images `f_{b₁} ∘ ⋯ ∘ f_{b_depth}([-1, 1])`.
///
/// Refining an image `[a, b] = f_w([-1, 1])` gives `f_w(f₋[-1,1])`, the left
/// `(1−μ₋)` fraction of it, and `f_w(f₊[-1,1])`, the right `(1−μ₊)`
/// fraction; anything in between is a gap.
pub fn support_cover(params: &ModelParams, depth: usize) -> Result<SupportCover> {
    if depth > MAX_COVER_DEPTH {
        return Err(Error::Config(format!(
            "cover depth {depth} exceeds the cap {MAX_COVER_DEPTH}"
        )));
    }
    let (lm, lp) = (1.0 - params.mu_minus(), 1.0 - params.mu_plus());
    let mut intervals = vec![(-1.0, 1.0)];
    let mut gaps = GapTree::default();
    for _ in 0..depth {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        let mut level = Vec::new();
        for &(a, b) in &intervals {
            let w = b - a;
            let left = (a, a + w * lm);
            let right = (b - w * lp, b);
            if left.1 < right.0 {
                level.push((left.1, right.0));
            }
            next.push(left);
            next.push(right);
        }
        gaps.levels.push(level);
        intervals = next;
    }
    Ok(SupportCover {
        depth,
        intervals,
        gaps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxCount {
    pub scales: Vec<f64>,
    pub counts: Vec<usize>,
    pub fit: LinearFit,
}

impl BoxCount {
    pub fn dimension(&self) -> f64 {
        self.fit.slope
    }
}

/// Default box sizes: 13 log-spaced scales from 1e-1 down to 1e-4.
pub fn default_box_scales() -> Vec<f64> {
    log_space(1e-1, 1e-4, 13)
}

/// Number of boxes of width `eps` (anchored at −1) holding at least one sample.
pub fn occupied_boxes(samples: &[f64], eps: f64) -> usize {
    let mut count = 0usize;
    let mut last = u64::MAX;
    for &x in samples {
        let k = ((x + 1.0) / eps).floor() as u64;
        if k != last {
            count += 1;
            last = k;
        }
    }
    count
}

/// Box-counting dimension: least-squares slope of `ln(occupied boxes)`
/// against `ln(1/scale)`.
pub fn boxcount_dimension(samples: &EmpiricalDistribution, scales: &[f64]) -> Result<BoxCount> {
    if samples.len() < MIN_BOXCOUNT_SAMPLES {
        return Err(Error::Config(format!(
            "box counting needs at least {MIN_BOXCOUNT_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    let mut usable: Vec<f64> = scales.iter().copied().filter(|&s| s.is_finite() && s > 0.0 && s < 2.0).collect();
    usable.sort_by(|a, b| b.total_cmp(a));
    usable.dedup();
    if usable.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 usable scales in (0, 2), got {}",
            usable.len()
        )));
    }
    let span = (usable[0] / usable[usable.len() - 1]).log10();
    if span < 2.0 - 1e-9 {
        return Err(Error::DegenerateFit(format!("scales span {span:.2} decades; at least 2 required")));
    }
    let counts: Vec<usize> = usable.iter().map(|&e| occupied_boxes(samples.samples(), e)).collect();
    let xs: Vec<f64> = usable.iter().map(|e| -e.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let fit = linear_fit(&xs, &ys)?;
    Ok(BoxCount {
        scales: usable,
        counts,
        fit,
    })
}

/// `W₁(Q₊[ρ; m∞], ρ)`.
pub fn fixed_point_residual<D: ApplyGain + QuantileLaw>(params: &ModelParams, dist: &D, rng: &mut SimRng) -> Result<f64> {
    let mapped = dist.apply_gain(params, params.m_inf(), rng)?;
    wasserstein(1.0, &mapped, dist)
}

/// Average `W₁` between `dist` and a bootstrap resample of itself, the
/// sampling scale against which [`fixed_point_residual`] is judged.
pub fn resampling_floor(dist: &EmpiricalDistribution, reps: usize, rng: &mut SimRng) -> Result<f64> {
    if reps == 0 {
        return Err(Error::Config("reps must be >= 1".into()));
    }
    let s = dist.samples();
    let mut total = 0.0;
    for _ in 0..reps {
        let boot: Vec<f64> = (0..s.len()).map(|_| s[rng.random_range(0..s.len())]).collect();
        total += wasserstein(1.0, &EmpiricalDistribution::new(boot)?, dist)?;
    }
    Ok(total / reps as f64)
}
