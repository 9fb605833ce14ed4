//! Probability laws on `[-1, 1]`.
//!
//! Three concrete carriers share the [`Law`] interface:
//! - [`EmpiricalDistribution`]: a sorted finite sample (Monte Carlo output),
//! - [`GridDistribution`]: a CDF tabulated on nodes spanning `[-1, 1]`,
//!   linearly interpolated between nodes; `cdf[0]` is an atom at `-1`,
//! - [`AtomicDistribution`]: finitely many weighted atoms (exact laws).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples further than this outside `[-1, 1]` are rejected rather than clamped.
pub const BOUNDS_SLACK: f64 = 1e-9;

pub trait Law {
    fn mean(&self) -> f64;
    /// `E[f(X)]`.
    fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64;
    /// `E[exp(-i ξ X)]`.
    fn characteristic(&self, xi: f64) -> Complex64;
    /// `P(X <= x)`.
    fn cdf(&self, x: f64) -> f64;
    /// `P(X < x)`.
    fn cdf_left(&self, x: f64) -> f64;

    fn second_moment(&self) -> f64 {
        self.expect(|x| x * x)
    }

    fn variance(&self) -> f64 {
        let m = self.mean();
        (self.second_moment() - m * m).max(0.0)
    }
}

fn check_in_bounds(x: f64) -> Result<f64> {
    if x.is_nan() || x < -1.0 - BOUNDS_SLACK || x > 1.0 + BOUNDS_SLACK {
        return Err(Error::Config(format!("value {x} lies outside [-1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0))
}

// ---------------------------------------------------------------------------
// Empirical

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for x in samples.iter_mut() {
            *x = check_in_bounds(*x)?;
        }
        samples.sort_unstable_by(f64::total_cmp);
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.samples[0]
    }

    pub fn max(&self) -> f64 {
        self.samples[self.samples.len() - 1]
    }

    /// Generalized inverse of the empirical CDF.
    pub fn quantile(&self, q: f64) -> f64 {
        let n = self.samples.len();
        let k = ((q * n as f64).ceil() as usize).clamp(1, n);
        self.samples[k - 1]
    }

    /// Number of samples inside the open interval `(a, b)`.
    pub fn count_in_open(&self, a: f64, b: f64) -> usize {
        let lo = self.samples.partition_point(|&x| x <= a);
        let hi = self.samples.partition_point(|&x| x < b);
        hi.saturating_sub(lo)
    }

    /// Tabulates the empirical CDF on `grid` nodes.
    pub fn to_grid(&self, grid: &[f64]) -> Result<GridDistribution> {
        let cdf = grid.iter().map(|&x| self.cdf(x)).collect();
        GridDistribution::new(grid.to_vec(), cdf)
    }

    /// Sup-norm distance between the empirical CDF and any law with a
    /// continuous CDF on `(-1, 1]` (atoms only at `-1`).
    ///
    /// The empirical CDF is constant between order statistics, so the sup is
    /// attained at the sample points from the left or the right.
    pub fn sup_distance<L: Law>(&self, other: &L) -> f64 {
        let n = self.samples.len() as f64;
        let mut best = 0.0f64;
        let mut i = 0;
        let s = &self.samples;
        while i < s.len() {
            let v = s[i];
            let mut j = i;
            while j < s.len() && s[j] == v {
                j += 1;
            }
            let left = i as f64 / n;
            let right = j as f64 / n;
            best = best
                .max((left - other.cdf_left(v)).abs())
                .max((right - other.cdf(v)).abs());
            i = j;
        }
        best
    }

    /// Exact two-sample Kolmogorov–Smirnov statistic.
    pub fn ks_two_sample(&self, other: &EmpiricalDistribution) -> f64 {
        let (a, b) = (&self.samples, &other.samples);
        let (na, nb) = (a.len() as f64, b.len() as f64);
        let (mut i, mut j) = (0usize, 0usize);
        let mut best = 0.0f64;
        while i < a.len() || j < b.len() {
            let v = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) => x.min(y),
                (Some(&x), None) => x,
                (None, Some(&y)) => y,
                (None, None) => unreachable!(),
            };
            while i < a.len() && a[i] <= v {
                i += 1;
            }
            while j < b.len() && b[j] <= v {
                j += 1;
            }
            best = best.max((i as f64 / na - j as f64 / nb).abs());
        }
        best
    }

    /// Histogram with `bins` equal cells on `[-1, 1]`, normalized to a density.
    pub fn histogram(&self, bins: usize) -> Vec<(f64, f64)> {
        let bins = bins.max(1);
        let w = 2.0 / bins as f64;
        let mut counts = vec![0usize; bins];
        for &x in &self.samples {
            let k = (((x + 1.0) / w) as usize).min(bins - 1);
            counts[k] += 1;
        }
        let n = self.samples.len() as f64;
        counts
            .into_iter()
            .enumerate()
            .map(|(k, c)| (-1.0 + (k as f64 + 0.5) * w, c as f64 / (n * w)))
            .collect()
    }
}

impl Law for EmpiricalDistribution {
    fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.samples.iter().map(|&x| f(x)).sum::<f64>() / self.samples.len() as f64
    }

    fn characteristic(&self, xi: f64) -> Complex64 {
        let (mut re, mut im) = (0.0, 0.0);
        for &x in &self.samples {
            let (s, c) = (xi * x).sin_cos();
            re += c;
            im -= s;
        }
        let n = self.samples.len() as f64;
        Complex64::new(re / n, im / n)
    }

    fn cdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.samples.len() as f64
    }

    fn cdf_left(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s < x) as f64 / self.samples.len() as f64
    }
}

// ---------------------------------------------------------------------------
// Grid CDF

/// One linear piece of a quantile function: on `q ∈ [q0, q1]` the quantile
/// moves linearly from `x0` to `x1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantilePiece {
    pub q0: f64,
    pub q1: f64,
    pub x0: f64,
    pub x1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDistribution {
    grid: Vec<f64>,
    cdf: Vec<f64>,
    #[serde(skip)]
    spacing: Option<f64>,
}

/// `m` equally spaced nodes from −1 to +1 inclusive.
pub fn uniform_grid(m: usize) -> Vec<f64> {
    let h = 2.0 / (m - 1) as f64;
    let mut g: Vec<f64> = (0..m).map(|k| -1.0 + k as f64 * h).collect();
    g[m - 1] = 1.0;
    g
}

fn detect_spacing(grid: &[f64]) -> Option<f64> {
    let m = grid.len();
    let h = 2.0 / (m - 1) as f64;
    grid.iter()
        .enumerate()
        .all(|(k, &x)| (x - (-1.0 + k as f64 * h)).abs() <= 1e-12)
        .then_some(h)
}

const CDF_SLACK: f64 = 1e-9;

impl GridDistribution {
    /// Validating constructor. Tiny rounding violations (below `1e-9`) are
    /// repaired; anything larger is rejected.
    pub fn new(grid: Vec<f64>, mut cdf: Vec<f64>) -> Result<Self> {
        let m = grid.len();
        if m < 2 || cdf.len() != m {
            return Err(Error::Config(format!(
                "grid needs at least 2 nodes and matching CDF length (got {} and {})",
                m,
                cdf.len()
            )));
        }
        if grid[0] != -1.0 || grid[m - 1] != 1.0 {
            return Err(Error::Config("grid must start at -1 and end at +1".into()));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("grid must be strictly increasing".into()));
        }
        let mut running = 0.0f64;
        for (k, f) in cdf.iter_mut().enumerate() {
            if f.is_nan() || *f < -CDF_SLACK || *f > 1.0 + CDF_SLACK || *f < running - CDF_SLACK {
                return Err(Error::NonMonotoneCdf { index: k });
            }
            *f = f.clamp(running, 1.0);
            running = *f;
        }
        if (cdf[m - 1] - 1.0).abs() > CDF_SLACK {
            return Err(Error::Config(format!(
                "CDF must reach 1 at the right end, got {}",
                cdf[m - 1]
            )));
        }
        cdf[m - 1] = 1.0;
        let spacing = detect_spacing(&grid);
        Ok(Self { grid, cdf, spacing })
    }

    /// Builds a valid CDF from arbitrary node values: clamps to `[0, 1]`,
    /// enforces monotonicity by a running max and pins `F(1) = 1`.
    pub fn from_values_repaired(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let mut running = 0.0f64;
        let mut cdf: Vec<f64> = values
            .into_iter()
            .map(|v| {
                running = running.max(v.clamp(0.0, 1.0));
                running
            })
            .collect();
        if let Some(last) = cdf.last_mut() {
            *last = 1.0;
        }
        Self::new(grid, cdf)
    }

    pub fn from_cdf_fn<F: Fn(f64) -> f64>(grid: Vec<f64>, f: F) -> Result<Self> {
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::from_values_repaired(grid, values)
    }

    pub fn uniform(m: usize) -> Result<Self> {
        Self::from_cdf_fn(uniform_grid(m), |x| 0.5 * (x + 1.0))
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Replaces the node values with an already valid CDF on the same grid.
    pub(crate) fn set_values_trusted(&mut self, cdf: Vec<f64>) {
        debug_assert_eq!(cdf.len(), self.grid.len());
        debug_assert_eq!(cdf[cdf.len() - 1], 1.0);
        self.cdf = cdf;
    }

    pub fn values(&self) -> &[f64] {
        &self.cdf
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index `k` of the cell `[x_k, x_{k+1}]` containing `x ∈ [-1, 1)`.
    #[inline]
    fn cell(&self, x: f64) -> usize {
        let last = self.grid.len() - 2;
        match self.spacing {
            Some(h) => (((x + 1.0) / h) as usize).min(last),
            None => self.grid.partition_point(|&g| g <= x).saturating_sub(1).min(last),
        }
    }

    /// Linear interpolation of the tabulated CDF.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        if x < -1.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let k = self.cell(x);
        let (x0, x1) = (self.grid[k], self.grid[k + 1]);
        let (f0, f1) = (self.cdf[k], self.cdf[k + 1]);
        let w = ((x - x0) / (x1 - x0)).clamp(0.0, 1.0);
        f0 + w * (f1 - f0)
    }

    /// `P(a < X < b)` for the interpolated law.
    pub fn mass_in_open(&self, a: f64, b: f64) -> f64 {
        (self.eval(b) - self.eval(a)).max(0.0)
    }

    /// Piecewise-linear quantile function, as pieces covering `q ∈ [0, 1]`.
    pub fn quantile_pieces(&self) -> Vec<QuantilePiece> {
        let mut out = Vec::with_capacity(self.grid.len());
        if self.cdf[0] > 0.0 {
            out.push(QuantilePiece {
                q0: 0.0,
                q1: self.cdf[0],
                x0: -1.0,
                x1: -1.0,
            });
        }
        for k in 1..self.grid.len() {
            let (f0, f1) = (self.cdf[k - 1], self.cdf[k]);
            if f1 > f0 {
                out.push(QuantilePiece {
                    q0: f0,
                    q1: f1,
                    x0: self.grid[k - 1],
                    x1: self.grid[k],
                });
            }
        }
        out
    }

    pub fn quantile(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, 1.0);
        if q <= self.cdf[0] {
            return -1.0;
        }
        let k = self.cdf.partition_point(|&f| f < q).min(self.grid.len() - 1);
        let (f0, f1) = (self.cdf[k - 1], self.cdf[k]);
        let (x0, x1) = (self.grid[k - 1], self.grid[k]);
        if f1 <= f0 {
            return x1;
        }
        x0 + (q - f0) / (f1 - f0) * (x1 - x0)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(rng.random::<f64>())
    }

    /// Sup-norm distance to another grid law, evaluated on the union of nodes
    /// (exact for piecewise-linear CDFs).
    pub fn sup_distance(&self, other: &GridDistribution) -> f64 {
        let mut best = (self.cdf[0] - other.cdf[0]).abs();
        for &x in self.grid.iter().chain(other.grid.iter()) {
            best = best.max((self.eval(x) - other.eval(x)).abs());
        }
        best
    }

    /// `∫_{-1}^{1} F(x) dx`, exact for the interpolant.
    fn integral(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.cdf.windows(2))
            .map(|(g, f)| 0.5 * (g[1] - g[0]) * (f[0] + f[1]))
            .sum()
    }
}

/// 5-point Gauss–Legendre nodes and weights on `[-1, 1]`.
const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
    (0.906_179_845_938_664, 0.236_926_885_056_189_08),
];

impl Law for GridDistribution {
    /// `E[X] = 1 − ∫F`.
    fn mean(&self) -> f64 {
        1.0 - self.integral()
    }

    /// `E[X²] = 1 − ∫ 2x F(x) dx`, integrated exactly cell by cell.
    fn second_moment(&self) -> f64 {
        let mut acc = 0.0;
        for k in 0..self.grid.len() - 1 {
            let (a, b) = (self.grid[k], self.grid[k + 1]);
            let (fa, fb) = (self.cdf[k], self.cdf[k + 1]);
            let h = b - a;
            let slope = (fb - fa) / h;
            // ∫ 2x (fa + slope (x − a)) dx over [a, b]
            let i1 = b * b - a * a; // ∫ 2x
            let i2 = (2.0 / 3.0) * (b * b * b - a * a * a) - a * i1; // ∫ 2x (x − a)
            acc += fa * i1 + slope * i2;
        }
        1.0 - acc
    }

    fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut acc = self.cdf[0] * f(-1.0);
        for k in 0..self.grid.len() - 1 {
            let dm = self.cdf[k + 1] - self.cdf[k];
            if dm <= 0.0 {
                continue;
            }
            let (a, b) = (self.grid[k], self.grid[k + 1]);
            let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
            let avg: f64 = GL5.iter().map(|&(t, w)| w * f(c + r * t)).sum::<f64>() * 0.5;
            acc += dm * avg;
        }
        acc
    }

    /// Exact for the interpolated law: each cell carries uniform mass, whose
    /// transform is `exp(-iξc)·sin(ξr)/(ξr)`.
    fn characteristic(&self, xi: f64) -> Complex64 {
        let mut acc = self.cdf[0] * Complex64::from_polar(1.0, xi);
        for k in 0..self.grid.len() - 1 {
            let dm = self.cdf[k + 1] - self.cdf[k];
            if dm <= 0.0 {
                continue;
            }
            let (a, b) = (self.grid[k], self.grid[k + 1]);
            let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
            let arg = xi * r;
            let sinc = if arg.abs() < 1e-4 {
                1.0 - arg * arg / 6.0
            } else {
                arg.sin() / arg
            };
            acc += dm * sinc * Complex64::from_polar(1.0, -xi * c);
        }
        acc
    }

    fn cdf(&self, x: f64) -> f64 {
        self.eval(x)
    }

    fn cdf_left(&self, x: f64) -> f64 {
        if x <= -1.0 {
            0.0
        } else {
            self.eval(x)
        }
    }
}

// ---------------------------------------------------------------------------
// Atoms

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicDistribution {
    /// `(value, weight)` sorted by value, weights summing to 1.
    atoms: Vec<(f64, f64)>,
}

impl AtomicDistribution {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if atoms.iter().any(|a| !(a.1 >= 0.0)) || !(total > 0.0) {
            return Err(Error::Config("atom weights must be nonnegative with positive total".into()));
        }
        let mut v = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            v.push((check_in_bounds(x)?, w / total));
        }
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for (x, w) in v {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += w,
                _ => merged.push((x, w)),
            }
        }
        merged.retain(|a| a.1 > 0.0);
        Ok(Self { atoms: merged })
    }

    pub fn dirac(x: f64) -> Result<Self> {
        Self::new(vec![(x, 1.0)])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for &(x, w) in &self.atoms {
            acc += w;
            if u < acc {
                return x;
            }
        }
        self.atoms[self.atoms.len() - 1].0
    }
}

impl Law for AtomicDistribution {
    fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(x, w)| x * w).sum()
    }

    fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.atoms.iter().map(|&(x, w)| w * f(x)).sum()
    }

    fn characteristic(&self, xi: f64) -> Complex64 {
        self.atoms
            .iter()
            .map(|&(x, w)| w * Complex64::from_polar(1.0, -xi * x))
            .sum()
    }

    fn cdf(&self, x: f64) -> f64 {
        self.atoms.iter().filter(|a| a.0 <= x).map(|a| a.1).sum::<f64>().min(1.0)
    }

    fn cdf_left(&self, x: f64) -> f64 {
        self.atoms.iter().filter(|a| a.0 < x).map(|a| a.1).sum::<f64>().min(1.0)
    }
}

// ---------------------------------------------------------------------------
// Initial laws

/// Initial opinion law `ρ₀`, sampled i.i.d. by the simulators.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialLaw {
    Uniform { lo: f64, hi: f64 },
    Atoms(AtomicDistribution),
    Grid(GridDistribution),
}

impl InitialLaw {
    pub fn uniform() -> Self {
        InitialLaw::Uniform { lo: -1.0, hi: 1.0 }
    }

    pub fn dirac(x: f64) -> Result<Self> {
        Ok(InitialLaw::Atoms(AtomicDistribution::dirac(x)?))
    }

    pub fn uniform_on(lo: f64, hi: f64) -> Result<Self> {
        let (lo, hi) = (check_in_bounds(lo)?, check_in_bounds(hi)?);
        if !(hi > lo) {
            return Err(Error::Config(format!("uniform law needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(InitialLaw::Uniform { lo, hi })
    }

    pub fn mean(&self) -> f64 {
        match self {
            InitialLaw::Uniform { lo, hi } => 0.5 * (lo + hi),
            InitialLaw::Atoms(a) => a.mean(),
            InitialLaw::Grid(g) => g.mean(),
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            InitialLaw::Uniform { lo, hi } => (hi - lo).powi(2) / 12.0,
            InitialLaw::Atoms(a) => a.variance(),
            InitialLaw::Grid(g) => g.variance(),
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            InitialLaw::Uniform { lo, hi } => (lo + (hi - lo) * rng.random::<f64>()).min(*hi),
            InitialLaw::Atoms(a) => a.sample(rng),
            InitialLaw::Grid(g) => g.sample(rng),
        }
    }

    pub fn to_grid(&self, m: usize) -> Result<GridDistribution> {
        let grid = uniform_grid(m);
        match self {
            InitialLaw::Uniform { lo, hi } => {
                let (lo, hi) = (*lo, *hi);
                GridDistribution::from_cdf_fn(grid, |x| ((x - lo) / (hi - lo)).clamp(0.0, 1.0))
            }
            InitialLaw::Atoms(a) => GridDistribution::from_cdf_fn(grid, |x| a.cdf(x)),
            InitialLaw::Grid(g) => GridDistribution::from_cdf_fn(grid, |x| g.eval(x)),
        }
    }
}

impl fmt::Display for InitialLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialLaw::Uniform { lo, hi } => write!(f, "uniform:{lo}:{hi}"),
            InitialLaw::Atoms(a) => {
                if let [(x, _)] = a.atoms() {
                    return write!(f, "dirac:{x}");
                }
                let parts: Vec<String> = a.atoms().iter().map(|(x, w)| format!("{x}@{w}")).collect();
                write!(f, "atoms:{}", parts.join(","))
            }
            InitialLaw::Grid(g) => write!(f, "grid[{}]", g.len()),
        }
    }
}

/// Parses `uniform`, `uniform:LO:HI`, `dirac:X` or `atoms:X@W,X@W,...`.
impl FromStr for InitialLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse initial law `{s}`"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let mut parts = s.trim().splitn(2, ':');
        let kind = parts.next().unwrap_or_default();
        let rest = parts.next();
        match (kind, rest) {
            ("uniform", None) => Ok(Self::uniform()),
            ("uniform", Some(r)) => {
                let (lo, hi) = r.split_once(':').ok_or_else(bad)?;
                Self::uniform_on(num(lo)?, num(hi)?)
            }
            ("dirac", Some(r)) => Self::dirac(num(r)?),
            ("atoms", Some(r)) => {
                let atoms = r
                    .split(',')
                    .map(|a| {
                        let (x, w) = a.split_once('@').ok_or_else(bad)?;
                        Ok((num(x)?, num(w)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(InitialLaw::Atoms(AtomicDistribution::new(atoms)?))
            }
            _ => Err(bad()),
        }
    }
}
