//! Browser bindings. Every export returns flat `f64` arrays so the page can
//! draw them without any glue beyond `Float64Array`.
//!
//! The computations live in [`demo`] and return ordinary `Result`s, so they
//! can be tested natively; the exports only translate errors.

use wasm_bindgen::prelude::*;

pub mod demo {
    use kinopin::dist::uniform_grid;
    use kinopin::equilibrium::{hausdorff_dimension, sample_equilibrium, support_cover};
    use kinopin::meanfield::{solve_pde, PdeConfig};
    use kinopin::{GridDistribution, ModelParams, Result, RngSpec};

    /// Kept small enough for an interactive slider on one core.
    pub const MAX_SAMPLES: usize = 2_000_000;
    pub const MAX_COVER_DEPTH: usize = 14;
    pub const IFS_DEPTH: usize = 40;

    fn check_samples(n: usize) -> Result<()> {
        if n == 0 || n > MAX_SAMPLES {
            return Err(kinopin::Error::Config(format!("samples must be in 1..={MAX_SAMPLES}, got {n}")));
        }
        Ok(())
    }

    /// Empirical CDF of IFS samples at `points` uniform nodes on `[-1, 1]`.
    pub fn equilibrium_cdf(mu_minus: f64, mu_plus: f64, samples: usize, points: usize, seed: u64) -> Result<Vec<f64>> {
        check_samples(samples)?;
        let p = ModelParams::new(mu_minus, mu_plus)?;
        let s = sample_equilibrium(&p, IFS_DEPTH, samples, RngSpec::from_seed(seed))?;
        Ok(s.to_grid(&uniform_grid(points.max(2)))?.values().to_vec())
    }

    /// Density histogram of IFS samples with `bins` cells on `[-1, 1]`.
    pub fn equilibrium_histogram(mu_minus: f64, mu_plus: f64, samples: usize, bins: usize, seed: u64) -> Result<Vec<f64>> {
        check_samples(samples)?;
        let p = ModelParams::new(mu_minus, mu_plus)?;
        let s = sample_equilibrium(&p, IFS_DEPTH, samples, RngSpec::from_seed(seed))?;
        Ok(s.histogram(bins).into_iter().map(|(_, d)| d).collect())
    }

    /// Kinetic-equation CDF at time `t` from Uniform[-1, 1], on `grid_size` nodes.
    pub fn pde_cdf(mu_minus: f64, mu_plus: f64, t: f64, grid_size: usize, dt: f64) -> Result<Vec<f64>> {
        let p = ModelParams::new(mu_minus, mu_plus)?;
        let mut cfg = PdeConfig::new(t, vec![t]);
        cfg.grid_size = grid_size;
        cfg.dt = dt;
        cfg.validate()?;
        let out = solve_pde(&GridDistribution::uniform(grid_size)?, &p, &cfg, 0.0)?;
        Ok(out.last().map(|(_, g)| g.values().to_vec()).unwrap_or_default())
    }

    /// `[dimension, residual]`; the dimension is 1 outside the fractal regime,
    /// where the support is the whole interval.
    pub fn dimension(mu_minus: f64, mu_plus: f64) -> Result<Vec<f64>> {
        let p = ModelParams::new(mu_minus, mu_plus)?;
        if !p.is_fractal_regime() {
            return Ok(vec![1.0, 0.0]);
        }
        let r = hausdorff_dimension(&p)?;
        Ok(vec![r.dimension, r.residual])
    }

    /// Cover intervals flattened as `[a0, b0, a1, b1, ...]`.
    pub fn cover(mu_minus: f64, mu_plus: f64, depth: usize) -> Result<Vec<f64>> {
        if depth > MAX_COVER_DEPTH {
            return Err(kinopin::Error::Config(format!("depth must be <= {MAX_COVER_DEPTH}")));
        }
        let p = ModelParams::new(mu_minus, mu_plus)?;
        Ok(support_cover(&p, depth)?.intervals.into_iter().flat_map(|(a, b)| [a, b]).collect())
    }

    pub fn m_inf(mu_minus: f64, mu_plus: f64) -> Result<f64> {
        Ok(ModelParams::new(mu_minus, mu_plus)?.m_inf())
    }
}

fn js(e: kinopin::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = equilibriumCdf)]
pub fn equilibrium_cdf(mu_minus: f64, mu_plus: f64, samples: u32, points: u32, seed: u32) -> Result<Vec<f64>, JsError> {
    demo::equilibrium_cdf(mu_minus, mu_plus, samples as usize, points as usize, seed as u64).map_err(js)
}

#[wasm_bindgen(js_name = equilibriumHistogram)]
pub fn equilibrium_histogram(mu_minus: f64, mu_plus: f64, samples: u32, bins: u32, seed: u32) -> Result<Vec<f64>, JsError> {
    demo::equilibrium_histogram(mu_minus, mu_plus, samples as usize, bins as usize, seed as u64).map_err(js)
}

#[wasm_bindgen(js_name = pdeCdf)]
pub fn pde_cdf(mu_minus: f64, mu_plus: f64, t: f64, grid_size: u32, dt: f64) -> Result<Vec<f64>, JsError> {
    demo::pde_cdf(mu_minus, mu_plus, t, grid_size as usize, dt).map_err(js)
}

#[wasm_bindgen]
pub fn dimension(mu_minus: f64, mu_plus: f64) -> Result<Vec<f64>, JsError> {
    demo::dimension(mu_minus, mu_plus).map_err(js)
}

#[wasm_bindgen]
pub fn cover(mu_minus: f64, mu_plus: f64, depth: u32) -> Result<Vec<f64>, JsError> {
    demo::cover(mu_minus, mu_plus, depth as usize).map_err(js)
}

#[wasm_bindgen(js_name = mInf)]
pub fn m_inf(mu_minus: f64, mu_plus: f64) -> Result<f64, JsError> {
    demo::m_inf(mu_minus, mu_plus).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::demo;

    #[test]
    fn cdf_and_histogram_shapes() {
        let f = demo::equilibrium_cdf(0.5, 0.5, 50_000, 101, 1).unwrap();
        assert_eq!(f.len(), 101);
        assert_eq!(f[100], 1.0);
        assert!(f.windows(2).all(|w| w[1] >= w[0]));
        // uniform at mu = 1/2
        assert!((f[50] - 0.5).abs() < 0.01);
        let h = demo::equilibrium_histogram(0.5, 0.5, 50_000, 20, 1).unwrap();
        assert_eq!(h.len(), 20);
        let mass: f64 = h.iter().map(|d| d * 0.1).sum();
        assert!((mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn geometry() {
        assert_eq!(demo::dimension(0.75, 0.75).unwrap()[0], 0.5);
        assert_eq!(demo::dimension(0.2, 0.3).unwrap(), vec![1.0, 0.0]);
        let c = demo::cover(0.75, 0.75, 2).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!((c[0], c[7]), (-1.0, 1.0));
        assert!(demo::cover(0.75, 0.75, 99).is_err());
    }

    #[test]
    fn pde_moves_toward_the_limit_mean() {
        let f = demo::pde_cdf(0.4, 0.9, 5.0, 257, 0.01).unwrap();
        let grid = kinopin::dist::uniform_grid(257);
        let g = kinopin::GridDistribution::new(grid, f).unwrap();
        let m = kinopin::Law::mean(&g);
        assert!((m - demo::m_inf(0.4, 0.9).unwrap()).abs() < 0.02, "{m}");
        assert!(demo::pde_cdf(0.4, 0.9, 1.0, 8, 0.01).is_err());
        assert!(demo::equilibrium_cdf(1.5, 0.5, 10, 10, 0).is_err());
    }
}
