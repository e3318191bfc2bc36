//! Adaptive Simpson quadrature with Richardson extrapolation.

use serde::{Deserialize, Serialize};

use super::RealFunction;
use crate::error::{PseudoError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_depth: 50,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(PseudoError::Parameter(format!(
                "quadrature tolerances must be positive (rel {}, abs {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_depth < 1 {
            return Err(PseudoError::Parameter("max_depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// Integral value with the accumulated local error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Relative offset applied to an endpoint where the integrand is not finite.
const ENDPOINT_OFFSET: f64 = 1e-12;

/// Number of equal panels the interval is split into before adapting.
const INITIAL_PANELS: usize = 4;

struct Simpson<'a, F: ?Sized> {
    f: &'a F,
    max_depth: usize,
    error: f64,
    evaluations: usize,
    a: f64,
    b: f64,
}

impl<F: RealFunction + ?Sized> Simpson<'_, F> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        let v = self.f.eval(x)?;
        if v.is_nan() {
            return Err(PseudoError::Numeric(format!("integrand at x = {x}")));
        }
        Ok(v)
    }

    fn eval_endpoint(&mut self, x: f64, inward: f64) -> Result<f64> {
        self.evaluations += 1;
        let v = self.f.eval(x)?;
        if v.is_finite() {
            return Ok(v);
        }
        let shifted = x + inward * ENDPOINT_OFFSET * x.abs().max(1.0);
        let v = self.eval(shifted)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(PseudoError::Numeric(format!("integrand is not finite near x = {x}")))
        }
    }

    fn finite(&mut self, x: f64) -> Result<f64> {
        let v = self.eval(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(PseudoError::Numeric(format!("integrand is not finite at x = {x}")))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn adapt(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: usize) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.finite(lm)?;
        let frm = self.finite(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || m <= a || m >= b {
            self.error += delta.abs() / 15.0;
            return Ok(left + right + delta / 15.0);
        }
        if depth >= self.max_depth {
            return Err(PseudoError::DepthExceeded {
                a: self.a,
                b: self.b,
                max_depth: self.max_depth,
            });
        }
        // shrinking by √2 rather than 2 lets endpoint kinks like x^0.1 converge
        let child_tol = tol * std::f64::consts::FRAC_1_SQRT_2;
        let l = self.adapt(a, m, fa, flm, fm, left, child_tol, depth + 1)?;
        let r = self.adapt(m, b, fm, frm, fb, right, child_tol, depth + 1)?;
        Ok(l + r)
    }
}

/// `∫_a^b f`, with error target `max(abs_tol, rel_tol·|result|)`.
pub fn quad_with_estimate<F: RealFunction + ?Sized>(f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadEstimate> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(PseudoError::Parameter(format!("integration bounds must be finite, got [{a}, {b}]")));
    }
    if a > b {
        return Err(PseudoError::Parameter(format!("integration bounds reversed: [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadEstimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut s = Simpson {
        f,
        max_depth: cfg.max_depth,
        error: 0.0,
        evaluations: 0,
        a,
        b,
    };
    let n = INITIAL_PANELS;
    let width = (b - a) / n as f64;
    let nodes: Vec<f64> = (0..=2 * n)
        .map(|k| if k == 2 * n { b } else { a + 0.5 * width * k as f64 })
        .collect();
    let mut values = Vec::with_capacity(nodes.len());
    for (k, &x) in nodes.iter().enumerate() {
        let v = if k == 0 {
            s.eval_endpoint(x, 1.0)?
        } else if k == nodes.len() - 1 {
            s.eval_endpoint(x, -1.0)?
        } else {
            s.finite(x)?
        };
        values.push(v);
    }
    let panels: Vec<f64> = (0..n)
        .map(|i| {
            let (x0, x2) = (nodes[2 * i], nodes[2 * i + 2]);
            (x2 - x0) / 6.0 * (values[2 * i] + 4.0 * values[2 * i + 1] + values[2 * i + 2])
        })
        .collect();
    let coarse: f64 = panels.iter().sum();
    let tol = cfg.abs_tol.max(cfg.rel_tol * coarse.abs());
    let mut total = 0.0;
    for i in 0..n {
        total += s.adapt(
            nodes[2 * i],
            nodes[2 * i + 2],
            values[2 * i],
            values[2 * i + 1],
            values[2 * i + 2],
            panels[i],
            tol / n as f64,
            1,
        )?;
    }
    Ok(QuadEstimate {
        value: total,
        error: s.error,
        evaluations: s.evaluations,
    })
}

/// `∫_a^b f` by adaptive Simpson.
pub fn quad<F: RealFunction + ?Sized>(f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    quad_with_estimate(f, a, b, cfg).map(|q| q.value)
}
