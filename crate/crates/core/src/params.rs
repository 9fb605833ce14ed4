//! Model parameters and the closed-form mean opinion curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Step proportions toward −1 (`mu_minus`) and toward +1 (`mu_plus`).
///
/// Both must lie in `(0, 1]`. The ordering `mu_minus <= mu_plus` is not
/// required.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    mu_minus: f64,
    mu_plus: f64,
}

fn check_mu(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParam {
            field,
            value,
            reason: "must be finite",
        });
    }
    if value <= 0.0 {
        return Err(Error::InvalidParam {
            field,
            value,
            reason: "must be strictly positive",
        });
    }
    if value > 1.0 {
        return Err(Error::InvalidParam {
            field,
            value,
            reason: "must not exceed 1",
        });
    }
    Ok(())
}

impl ModelParams {
    pub fn new(mu_minus: f64, mu_plus: f64) -> Result<Self> {
        check_mu("mu_minus", mu_minus)?;
        check_mu("mu_plus", mu_plus)?;
        Ok(Self { mu_minus, mu_plus })
    }

    pub fn symmetric(mu: f64) -> Result<Self> {
        Self::new(mu, mu)
    }

    pub fn mu_minus(&self) -> f64 {
        self.mu_minus
    }

    pub fn mu_plus(&self) -> f64 {
        self.mu_plus
    }

    pub fn mu_min(&self) -> f64 {
        self.mu_minus.min(self.mu_plus)
    }

    /// Image intervals of the two maps are disjoint.
    pub fn is_fractal_regime(&self) -> bool {
        self.mu_plus + self.mu_minus > 1.0
    }

    #[allow(clippy::float_cmp)]
    pub fn is_symmetric(&self) -> bool {
        self.mu_plus == self.mu_minus
    }

    /// Long-run mean `(√μ₊ − √μ₋)/(√μ₊ + √μ₋)`.
    pub fn m_inf(&self) -> f64 {
        if self.is_symmetric() {
            return 0.0;
        }
        let (sp, sm) = (self.mu_plus.sqrt(), self.mu_minus.sqrt());
        (sp - sm) / (sp + sm)
    }

    /// `(μ₊ + μ₋)/(μ₊ − μ₋)`; undefined in the symmetric case.
    pub fn gamma(&self) -> Option<f64> {
        if self.is_symmetric() {
            None
        } else {
            Some((self.mu_plus + self.mu_minus) / (self.mu_plus - self.mu_minus))
        }
    }

    /// Exponential rate at which the mean approaches `m_inf`.
    pub fn mean_rate(&self) -> f64 {
        2.0 * (self.mu_plus * self.mu_minus).sqrt()
    }

    /// Right-hand side of the mean ODE: `(μ₊−μ₋)(1+m²)/2 − (μ₊+μ₋)m`.
    pub fn mean_drift(&self, m: f64) -> f64 {
        0.5 * (self.mu_plus - self.mu_minus) * (1.0 + m * m) - (self.mu_plus + self.mu_minus) * m
    }

    /// Probability that a listener facing a population of mean `m` steps toward +1.
    pub fn prob_plus(m: f64) -> f64 {
        (0.5 * (1.0 - m)).clamp(0.0, 1.0)
    }

    /// `x ↦ x + μ₊(1 − x)`, kept inside its image `[2μ₊ − 1, 1]`.
    #[inline]
    pub fn map_plus(&self, x: f64) -> f64 {
        (x + self.mu_plus * (1.0 - x)).clamp(2.0 * self.mu_plus - 1.0, 1.0)
    }

    /// `x ↦ x − μ₋(1 + x)`, kept inside its image `[−1, 1 − 2μ₋]`.
    #[inline]
    pub fn map_minus(&self, x: f64) -> f64 {
        (x - self.mu_minus * (1.0 + x)).clamp(-1.0, 1.0 - 2.0 * self.mu_minus)
    }

    /// Open interval left empty by the first-level maps, if any.
    pub fn first_gap(&self) -> Option<(f64, f64)> {
        let (lo, hi) = (1.0 - 2.0 * self.mu_minus, 2.0 * self.mu_plus - 1.0);
        (lo < hi).then_some((lo, hi))
    }
}

/// Evaluator of the mean opinion `m(t)` of the mean-field process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanCurve {
    pub m0: f64,
    pub m_inf: f64,
    /// Only defined when `mu_plus != mu_minus`.
    pub gamma: Option<f64>,
    /// Only defined when `mu_plus != mu_minus` and `m0 != m_inf`.
    pub c_const: Option<f64>,
    pub symmetric_branch: bool,
    rate: f64,
    /// The root of the mean ODE outside `[-1, 1]`, equal to `1/m_inf`.
    far_root: f64,
}

impl MeanCurve {
    pub fn new(params: &ModelParams, m0: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&m0) || m0.is_nan() {
            return Err(Error::InvalidParam {
                field: "m0",
                value: m0,
                reason: "must lie in [-1, 1]",
            });
        }
        let m_inf = params.m_inf();
        let rate = params.mean_rate();
        let Some(gamma) = params.gamma() else {
            return Ok(Self {
                m0,
                m_inf,
                gamma: None,
                c_const: None,
                symmetric_branch: true,
                rate,
                far_root: f64::INFINITY,
            });
        };
        // The two roots of the drift are γ ± √(γ²−1) with product 1; the one
        // inside (−1, 1) is m_inf and the other one sits on the same side of 0.
        let far_root = gamma + gamma.signum() * (gamma * gamma - 1.0).sqrt();
        #[allow(clippy::float_cmp)]
        let c_const = (m0 != m_inf).then(|| (far_root - m_inf) / (m0 - m_inf) - 1.0);
        Ok(Self {
            m0,
            m_inf,
            gamma: Some(gamma),
            c_const,
            symmetric_branch: false,
            rate,
            far_root,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.m0;
        }
        if self.symmetric_branch {
            return self.m0 * (-self.rate * t).exp();
        }
        match self.c_const {
            None => self.m_inf,
            Some(c) => {
                let denom = 1.0 + c * (self.rate * t).exp();
                self.m_inf + (self.far_root - self.m_inf) / denom
            }
        }
    }

    /// Exponential approach rate of `m(t)` to `m_inf`.
    pub fn rate(&self) -> f64 {
        self.rate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn validation_examples() {
        let p = ModelParams::new(0.3, 0.5).unwrap();
        assert!(!p.is_fractal_regime());
        assert!(!p.is_symmetric());

        let err = ModelParams::new(0.0, 0.5).unwrap_err();
        assert!(err.to_string().contains("mu_minus"), "{err}");
        let err = ModelParams::new(0.5, 1.2).unwrap_err();
        assert!(err.to_string().contains("mu_plus"), "{err}");
        assert!(ModelParams::new(f64::NAN, 0.5).is_err());
        assert!(ModelParams::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn m_inf_closed_form() {
        let p = ModelParams::new(0.4, 0.9).unwrap();
        assert_abs_diff_eq!(p.m_inf(), 0.2, epsilon = 1e-15);
        // m_inf is a root of the drift
        assert_abs_diff_eq!(p.mean_drift(p.m_inf()), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn map_endpoints() {
        let p = ModelParams::new(1.0, 1.0).unwrap();
        for x in [-1.0, -0.3, 0.0, 0.1, 0.77, 1.0] {
            assert_eq!(p.map_plus(x), 1.0);
            assert_eq!(p.map_minus(x), -1.0);
        }
        let p = ModelParams::new(0.3, 0.6).unwrap();
        assert_eq!(p.map_minus(0.0), -0.3);
        assert_abs_diff_eq!(p.map_plus(0.0), 0.6);
    }

    #[test]
    fn constant_curve_at_fixed_point() {
        let p = ModelParams::new(0.4, 0.9).unwrap();
        let c = MeanCurve::new(&p, p.m_inf()).unwrap();
        assert!(c.c_const.is_none());
        for t in [0.0, 0.5, 3.0, 100.0] {
            assert_eq!(c.eval(t), p.m_inf());
        }
    }

    #[test]
    fn large_times_do_not_overflow() {
        for (a, b, m0) in [(0.4, 0.9, -1.0), (0.9, 0.4, 1.0), (0.2, 0.3, 0.9)] {
            let p = ModelParams::new(a, b).unwrap();
            let c = MeanCurve::new(&p, m0).unwrap();
            let v = c.eval(1e6);
            assert!(v.is_finite());
            assert_abs_diff_eq!(v, p.m_inf(), epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_m0_outside_interval() {
        let p = ModelParams::new(0.4, 0.9).unwrap();
        assert!(MeanCurve::new(&p, 1.5).is_err());
    }
}
