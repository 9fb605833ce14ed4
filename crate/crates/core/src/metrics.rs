//! Distances between opinion laws on `[-1, 1]`.
//!
//! Wasserstein distances use the one-dimensional quantile coupling
//! `W_p^p = ∫₀¹ |F₁⁻¹(q) − F₂⁻¹(q)|^p dq`. Every carrier exposes its quantile
//! function as linear pieces, so the integral is evaluated exactly on the
//! merged breakpoints, including for samples of unequal size.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dist::{AtomicDistribution, EmpiricalDistribution, GridDistribution, Law, QuantilePiece};
use crate::error::{Error, Result};
use crate::par;

pub trait QuantileLaw {
    fn quantile_pieces(&self) -> Vec<QuantilePiece>;
}

impl QuantileLaw for GridDistribution {
    fn quantile_pieces(&self) -> Vec<QuantilePiece> {
        GridDistribution::quantile_pieces(self)
    }
}

impl QuantileLaw for EmpiricalDistribution {
    fn quantile_pieces(&self) -> Vec<QuantilePiece> {
        let n = self.len() as f64;
        self.samples()
            .iter()
            .enumerate()
            .map(|(i, &x)| QuantilePiece {
                q0: i as f64 / n,
                q1: (i + 1) as f64 / n,
                x0: x,
                x1: x,
            })
            .collect()
    }
}

impl QuantileLaw for AtomicDistribution {
    fn quantile_pieces(&self) -> Vec<QuantilePiece> {
        let mut q = 0.0;
        self.atoms()
            .iter()
            .map(|&(x, w)| {
                let q0 = q;
                q += w;
                QuantilePiece { q0, q1: q, x0: x, x1: x }
            })
            .collect()
    }
}

/// `∫₀¹ |g(τ)|^p dτ` for `g` linear from `a` to `b`.
fn mean_abs_pow_linear(a: f64, b: f64, p: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        return 0.0;
    }
    if a * b < 0.0 {
        // crosses zero at τ = |a| / (|a| + |b|)
        let tau = a.abs() / (a.abs() + b.abs());
        return (tau * a.abs().powf(p) + (1.0 - tau) * b.abs().powf(p)) / (p + 1.0);
    }
    let (lo, hi) = if a.abs() <= b.abs() { (a.abs(), b.abs()) } else { (b.abs(), a.abs()) };
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    if half <= 1e-6 * mid {
        // Taylor expansion of the exact formula around the midpoint.
        return mid.powf(p) * (1.0 + p * (p - 1.0) * half * half / (6.0 * mid * mid));
    }
    (hi.powf(p + 1.0) - lo.powf(p + 1.0)) / ((p + 1.0) * (hi - lo))
}

fn eval_piece(pc: &QuantilePiece, q: f64) -> f64 {
    if pc.q1 <= pc.q0 {
        return pc.x1;
    }
    let w = ((q - pc.q0) / (pc.q1 - pc.q0)).clamp(0.0, 1.0);
    pc.x0 + w * (pc.x1 - pc.x0)
}

/// `W_p^p` between two quantile functions given as pieces.
fn wasserstein_pow(p: f64, a: &[QuantilePiece], b: &[QuantilePiece]) -> f64 {
    let (mut i, mut j) = (0usize, 0usize);
    let mut q = 0.0f64;
    let mut acc = 0.0;
    while i < a.len() && j < b.len() && q < 1.0 {
        let q_end = a[i].q1.min(b[j].q1).min(1.0);
        if q_end > q {
            let g0 = eval_piece(&a[i], q) - eval_piece(&b[j], q);
            let g1 = eval_piece(&a[i], q_end) - eval_piece(&b[j], q_end);
            acc += (q_end - q) * mean_abs_pow_linear(g0, g1, p);
            q = q_end;
        }
        if a[i].q1 <= q {
            i += 1;
        }
        if j < b.len() && b[j].q1 <= q {
            j += 1;
        }
    }
    acc
}

fn check_order(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidParam {
            field: "order",
            value: p,
            reason: "Wasserstein order must be a finite p >= 1",
        });
    }
    Ok(())
}

/// `W_p` between any two laws with piecewise-linear quantile functions.
pub fn wasserstein<A: QuantileLaw, B: QuantileLaw>(p: f64, a: &A, b: &B) -> Result<f64> {
    check_order(p)?;
    Ok(wasserstein_pow(p, &a.quantile_pieces(), &b.quantile_pieces()).powf(1.0 / p))
}

/// `W_p` between two samples. Unequal sizes are handled exactly by the
/// merged quantile coupling.
pub fn wasserstein_empirical(p: f64, xs: &EmpiricalDistribution, ys: &EmpiricalDistribution) -> Result<f64> {
    check_order(p)?;
    if xs.len() == ys.len() {
        let n = xs.len() as f64;
        let s: f64 = xs
            .samples()
            .iter()
            .zip(ys.samples())
            .map(|(x, y)| (x - y).abs().powf(p))
            .sum();
        return Ok((s / n).powf(1.0 / p));
    }
    wasserstein(p, xs, ys)
}

/// `W_p` between two tabulated CDFs.
pub fn wasserstein_grid(p: f64, f1: &GridDistribution, f2: &GridDistribution) -> Result<f64> {
    wasserstein(p, f1, f2)
}

// ---------------------------------------------------------------------------
// Fourier-based distance

/// Positive frequencies of the Fourier-based distance. Negative frequencies
/// are covered by conjugate symmetry of real laws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XiGrid {
    frequencies: Vec<f64>,
}

impl XiGrid {
    pub fn log_spaced(xi_min: f64, xi_max: f64, points: usize) -> Result<Self> {
        if !(xi_min > 0.0) || !(xi_max > xi_min) || points < 2 {
            return Err(Error::Config(format!(
                "frequency grid needs 0 < xi_min < xi_max and >= 2 points (got {xi_min}, {xi_max}, {points})"
            )));
        }
        let (l0, l1) = (xi_min.ln(), xi_max.ln());
        let frequencies = (0..points)
            .map(|k| (l0 + (l1 - l0) * k as f64 / (points - 1) as f64).exp())
            .collect();
        Ok(Self { frequencies })
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }
}

impl Default for XiGrid {
    fn default() -> Self {
        Self::log_spaced(1e-3, 1e3, 4096).expect("static grid")
    }
}

pub fn characteristic_function<L: Law + Sync>(dist: &L, xi_grid: &XiGrid) -> Vec<Complex64> {
    let f = xi_grid.frequencies();
    par::map_indexed(f.len(), |k| dist.characteristic(f[k]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToscaniResult {
    pub value: f64,
    pub argmax_xi: f64,
    /// Moments that must agree for `d_s < ∞` differ (only checked for `s > 1`).
    pub moment_mismatch: bool,
    /// The ratio peaks at the lowest frequency with `s > 1`: the true sup is
    /// likely infinite and the reported value is a grid artifact.
    pub low_freq_blowup: bool,
}

/// Moment agreement tolerance used for the `s > 1` finiteness warning.
pub const MOMENT_TOLERANCE: f64 = 1e-6;

/// `sup_ξ |φ₁(ξ) − φ₂(ξ)| / |ξ|^s` over the grid.
pub fn toscani_distance<A: Law + Sync, B: Law + Sync>(
    s: f64,
    dist1: &A,
    dist2: &B,
    xi_grid: &XiGrid,
) -> Result<ToscaniResult> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::InvalidParam {
            field: "order",
            value: s,
            reason: "Fourier distance order must be a finite s >= 1",
        });
    }
    let phi1 = characteristic_function(dist1, xi_grid);
    let phi2 = characteristic_function(dist2, xi_grid);
    Ok(toscani_from_transforms(s, &phi1, &phi2, xi_grid, moment_mismatch(s, dist1, dist2)))
}

/// Same as [`toscani_distance`] for precomputed transforms on `xi_grid`.
pub fn toscani_from_transforms(
    s: f64,
    phi1: &[Complex64],
    phi2: &[Complex64],
    xi_grid: &XiGrid,
    moment_mismatch: bool,
) -> ToscaniResult {
    let f = xi_grid.frequencies();
    let mut best = (0.0f64, 0usize);
    for k in 0..f.len() {
        let r = (phi1[k] - phi2[k]).norm() / f[k].powf(s);
        if r > best.0 {
            best = (r, k);
        }
    }
    ToscaniResult {
        value: best.0,
        argmax_xi: f[best.1],
        moment_mismatch,
        low_freq_blowup: s > 1.0 && best.0 > 0.0 && best.1 == 0,
    }
}

fn moment_mismatch<A: Law, B: Law>(s: f64, a: &A, b: &B) -> bool {
    if s <= 1.0 {
        return false;
    }
    let top = if s.fract() == 0.0 { s as i32 - 1 } else { s.floor() as i32 };
    (1..=top).any(|k| (a.expect(|x| x.powi(k)) - b.expect(|x| x.powi(k))).abs() > MOMENT_TOLERANCE)
}

/// Counts on equal bins over `[-1, 1]`, for samples too large to keep.
///
/// `W₁` between two binned laws is `∫|F₁ − F₂|`, with the CDFs known at the
/// bin edges; the error against the unbinned samples is at most one bin width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinnedLaw {
    counts: Vec<u64>,
    total: u64,
}

impl BinnedLaw {
    pub fn new(bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::Config("bin count must be >= 1".into()));
        }
        Ok(Self {
            counts: vec![0; bins],
            total: 0,
        })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_width(&self) -> f64 {
        2.0 / self.counts.len() as f64
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let n = self.counts.len();
        let k = (((x + 1.0) * 0.5 * n as f64) as usize).min(n - 1);
        self.counts[k] += 1;
        self.total += 1;
    }

    pub fn extend<I: IntoIterator<Item = f64>>(&mut self, xs: I) {
        for x in xs {
            self.add(x);
        }
    }

    pub fn merge(&mut self, other: &BinnedLaw) -> Result<()> {
        if other.bins() != self.bins() {
            return Err(Error::Config("cannot merge binned laws with different bins".into()));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }

    pub fn w1(&self, other: &BinnedLaw) -> Result<f64> {
        if other.bins() != self.bins() {
            return Err(Error::Config("binned laws must share their bins".into()));
        }
        if self.total == 0 || other.total == 0 {
            return Err(Error::EmptyDistribution);
        }
        let (na, nb) = (self.total as f64, other.total as f64);
        let (mut ca, mut cb) = (0u64, 0u64);
        let mut acc = 0.0;
        for (a, b) in self.counts.iter().zip(&other.counts) {
            ca += a;
            cb += b;
            acc += (ca as f64 / na - cb as f64 / nb).abs();
        }
        Ok(acc * self.bin_width())
    }
}

/// JSON record emitted by the `metrics` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub metric: String,
    pub order: f64,
    pub value: f64,
    pub tolerance_flags: Vec<String>,
}
