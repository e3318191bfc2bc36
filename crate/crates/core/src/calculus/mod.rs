//! Pseudo-derivatives, pseudo-integrals and seminorms.
//!
//! Every pseudo-integral is a classical integral in image space pulled back
//! through `g⁻¹`:
//!
//! | flavor | image-space integrand |
//! |--------|-----------------------|
//! | `∫⊕`   | `g(f(x))`             |
//! | `∫g`   | `g(f(x))·|g'(x)|`     |
//! | `∫g,h` | `g(f(x))·h(x)`        |
//!
//! The `∫g` weight is `|g'|`: for a decreasing generator `g'` is negative and
//! the signed weight would push every image integral below zero.

mod quadrature;

pub use quadrature::{quad, quad_with_estimate, QuadEstimate, QuadratureConfig};

use serde::{Deserialize, Serialize};

use crate::algebra::{pseudo_abs, pseudo_pow, PseudoValue};
use crate::error::{PseudoError, Result};
use crate::generator::PseudoContext;

/// A real function of one variable whose evaluation may fail.
pub trait RealFunction {
    fn eval(&self, x: f64) -> Result<f64>;
}

impl<F: Fn(f64) -> f64> RealFunction for F {
    fn eval(&self, x: f64) -> Result<f64> {
        Ok(self(x))
    }
}

/// Adapts a fallible closure to [`RealFunction`].
pub struct TryFn<F>(pub F);

impl<F: Fn(f64) -> Result<f64>> RealFunction for TryFn<F> {
    fn eval(&self, x: f64) -> Result<f64> {
        (self.0)(x)
    }
}

/// Which weight multiplies `g∘f` under the integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegralFlavor {
    /// `∫g`, weight `|g'(x)|`
    G,
    /// `∫⊕`, no weight
    Oplus,
}

/// Outcome of a pseudo-integral, in raw and image form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralReport {
    pub raw: f64,
    pub image: f64,
    pub error_estimate: f64,
}

impl IntegralReport {
    pub fn value(&self) -> PseudoValue {
        PseudoValue(self.raw)
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(PseudoError::Parameter(format!(
            "integration interval must satisfy a < b, got [{a}, {b}]"
        )));
    }
    Ok(())
}

fn image_of<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, x: f64) -> Result<f64> {
    let fx = f.eval(x)?;
    ctx.eval_g(fx)
}

fn pull_back(ctx: &PseudoContext, est: QuadEstimate) -> Result<IntegralReport> {
    let image = est.value;
    let raw = ctx.eval_g_inv(image)?;
    Ok(IntegralReport {
        raw,
        image: image.max(0.0),
        error_estimate: est.error,
    })
}

/// Image-space weighted integral `∫_a^b g(f(x))·w(x) dx` pulled back by `g⁻¹`.
pub fn weighted_integral<F, W>(ctx: &PseudoContext, f: &F, weight: &W, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralReport>
where
    F: RealFunction + ?Sized,
    W: RealFunction + ?Sized,
{
    check_interval(a, b)?;
    let integrand = TryFn(|x: f64| -> Result<f64> {
        let w = weight.eval(x)?;
        if w < -ctx.eps_cmp() {
            return Err(PseudoError::NegativeWeight { x, value: w });
        }
        Ok(image_of(ctx, f, x)? * w.max(0.0))
    });
    pull_back(ctx, quad_with_estimate(&integrand, a, b, cfg)?)
}

/// Integral of the given flavor, with its image and error estimate.
pub fn pseudo_integral<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    flavor: IntegralFlavor,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralReport> {
    match flavor {
        IntegralFlavor::G => {
            let weight = TryFn(|x: f64| ctx.eval_g_prime(x).map(f64::abs));
            weighted_integral(ctx, f, &weight, a, b, cfg)
        }
        IntegralFlavor::Oplus => {
            check_interval(a, b)?;
            let integrand = TryFn(|x: f64| image_of(ctx, f, x));
            pull_back(ctx, quad_with_estimate(&integrand, a, b, cfg)?)
        }
    }
}

/// `∫g f = g⁻¹(∫ g(f(x))·|g'(x)| dx)`
pub fn g_integral<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<PseudoValue> {
    pseudo_integral(ctx, f, IntegralFlavor::G, a, b, cfg).map(|r| r.value())
}

/// `∫⊕ f = g⁻¹(∫ g(f(x)) dx)`
pub fn oplus_integral<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<PseudoValue> {
    pseudo_integral(ctx, f, IntegralFlavor::Oplus, a, b, cfg).map(|r| r.value())
}

/// Generalized `(g,h)`-integral `g⁻¹(∫ g(f(x))·h(x) dx)` with `h ≥ 0`.
pub fn gh_integral<F, H>(ctx: &PseudoContext, f: &F, h: &H, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<PseudoValue>
where
    F: RealFunction + ?Sized,
    H: RealFunction + ?Sized,
{
    weighted_integral(ctx, f, h, a, b, cfg).map(|r| r.value())
}

/// Default finite-difference step, `cbrt(ε)·max(1,|x|)`.
pub fn default_step(x: f64) -> f64 {
    f64::EPSILON.cbrt() * x.abs().max(1.0)
}

/// Derivative of `g∘f` at `x`: central where `x ± step` lies in `D`,
/// second-order one-sided otherwise.
fn image_derivative<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, x: f64, step: f64) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(PseudoError::Parameter(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    let d = ctx.domain();
    let gf = |t: f64| image_of(ctx, f, t);
    let (h, x) = (step, x);
    if d.contains(x + h) && d.contains(x - h) {
        Ok((gf(x + h)? - gf(x - h)?) / (2.0 * h))
    } else if d.contains(x + 2.0 * h) {
        Ok((-3.0 * gf(x)? + 4.0 * gf(x + h)? - gf(x + 2.0 * h)?) / (2.0 * h))
    } else if d.contains(x - 2.0 * h) {
        Ok((3.0 * gf(x)? - 4.0 * gf(x - h)? + gf(x - 2.0 * h)?) / (2.0 * h))
    } else {
        Err(PseudoError::Domain(format!(
            "no finite-difference stencil of step {h} fits around {x}"
        )))
    }
}

fn derivative_to_value(ctx: &PseudoContext, image: f64, x: f64) -> Result<PseudoValue> {
    if image < -ctx.eps_cmp() * image.abs().max(1.0) {
        return Err(PseudoError::Range(format!(
            "derivative image {image:e} at x = {x} is negative and has no representation"
        )));
    }
    PseudoValue::from_image(ctx, image.max(0.0))
}

/// `D⊕ f(x) = g⁻¹((g∘f)'(x))`
pub fn oplus_derivative<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, x: f64, step: Option<f64>) -> Result<PseudoValue> {
    let x = ctx.clamp_to_domain(x)?;
    let d = image_derivative(ctx, f, x, step.unwrap_or_else(|| default_step(x)))?;
    derivative_to_value(ctx, d, x)
}

/// `D_g f(x) = g⁻¹((g∘f)'(x) / g'(x))`
pub fn g_derivative<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, x: f64, step: Option<f64>) -> Result<PseudoValue> {
    let x = ctx.clamp_to_domain(x)?;
    let slope = ctx.eval_g_prime(x)?;
    if slope == 0.0 {
        return Err(PseudoError::Domain(format!("g'({x}) = 0")));
    }
    let d = image_derivative(ctx, f, x, step.unwrap_or_else(|| default_step(x)))?;
    derivative_to_value(ctx, d / slope, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeminormFlavor {
    /// built on `∫g`
    PseudoImageWeighted,
    /// built on `∫⊕`
    PseudoPlain,
}

impl From<SeminormFlavor> for IntegralFlavor {
    fn from(f: SeminormFlavor) -> Self {
        match f {
            SeminormFlavor::PseudoImageWeighted => IntegralFlavor::G,
            SeminormFlavor::PseudoPlain => IntegralFlavor::Oplus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeminormParams {
    pub p: f64,
    pub a: f64,
    pub b: f64,
    pub flavor: SeminormFlavor,
}

impl SeminormParams {
    pub fn weighted(p: f64, a: f64, b: f64) -> Self {
        SeminormParams {
            p,
            a,
            b,
            flavor: SeminormFlavor::PseudoImageWeighted,
        }
    }

    pub fn plain(p: f64, a: f64, b: f64) -> Self {
        SeminormParams {
            p,
            a,
            b,
            flavor: SeminormFlavor::PseudoPlain,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.p == 0.0 || !self.p.is_finite() {
            return Err(PseudoError::Parameter(format!(
                "seminorm exponent must be finite and nonzero, got {}",
                self.p
            )));
        }
        check_interval(self.a, self.b)
    }
}

/// `[f]_p = (∫ |f|_g^(p) ⊗ dx)^(1/p)`, computed through pointwise
/// pseudo-operations.
pub fn seminorm<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    params: &SeminormParams,
    cfg: &QuadratureConfig,
) -> Result<PseudoValue> {
    params.validate()?;
    let p = params.p;
    let powered = TryFn(|x: f64| -> Result<f64> {
        let fx = PseudoValue(f.eval(x)?);
        Ok(pseudo_pow(ctx, pseudo_abs(ctx, fx)?, p)?.0)
    });
    let integral = pseudo_integral(ctx, &powered, params.flavor.into(), params.a, params.b, cfg)?;
    pseudo_pow(ctx, integral.value(), 1.0 / p)
}

/// `(∫_a^b |F(x)|^p·|g'(x)| dx)^(1/p)` as a plain real.
pub fn classical_weighted_norm<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    big_f: &F,
    p: f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if p == 0.0 || !p.is_finite() {
        return Err(PseudoError::Parameter(format!("norm exponent must be finite and nonzero, got {p}")));
    }
    check_interval(a, b)?;
    let integrand = TryFn(|x: f64| -> Result<f64> {
        let v = big_f.eval(x)?.abs();
        let w = ctx.eval_g_prime(x)?.abs();
        Ok(v.powf(p) * w)
    });
    let integral = quad(&integrand, a, b, cfg)?;
    Ok(integral.powf(1.0 / p))
}

pub const CONNECTION_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionReport {
    pub p: f64,
    /// `[f]_p` through pseudo-operations
    pub seminorm_raw: f64,
    pub seminorm_img: f64,
    /// `g⁻¹([g∘f]_{p,g})`
    pub classical_raw: f64,
    pub classical_img: f64,
    /// image-space discrepancy normalized by `max(1, |images|)`
    pub discrepancy: f64,
    pub passed: bool,
}

/// Computes `[f]_p` and `g⁻¹([g∘f]_{p,g})` independently and compares them.
pub fn check_seminorm_connection<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    p: f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<ConnectionReport> {
    let lhs = seminorm(ctx, f, &SeminormParams::weighted(p, a, b), cfg)?;
    let composed = TryFn(|x: f64| image_of(ctx, f, x));
    let classical_img = classical_weighted_norm(ctx, &composed, p, a, b, cfg)?;
    let classical_raw = ctx.eval_g_inv(classical_img)?;
    let seminorm_img = ctx.eval_g(lhs.0)?;
    let discrepancy = (seminorm_img - classical_img).abs() / seminorm_img.abs().max(classical_img.abs()).max(1.0);
    Ok(ConnectionReport {
        p,
        seminorm_raw: lhs.0,
        seminorm_img,
        classical_raw,
        classical_img,
        discrepancy,
        passed: discrepancy <= CONNECTION_TOLERANCE,
    })
}
