use super::young::{check_exponent, conjugate};
use super::{theorem_direction, InequalityVerdict};
use crate::algebra::{oplus, otimes, pseudo_pow, PseudoValue};
use crate::calculus::{seminorm, QuadratureConfig, RealFunction, SeminormParams, TryFn};
use crate::error::{PseudoError, Result};
use crate::generator::PseudoContext;

const RELATION_TOLERANCE: f64 = 1e-12;

fn norm<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, p: f64, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<PseudoValue> {
    seminorm(ctx, f, &SeminormParams::weighted(p, a, b), cfg)
}

fn pointwise<'a, F, H>(
    ctx: &'a PseudoContext,
    f: &'a F,
    h: &'a H,
    op: fn(&PseudoContext, PseudoValue, PseudoValue) -> Result<PseudoValue>,
) -> TryFn<impl Fn(f64) -> Result<f64> + 'a>
where
    F: RealFunction + ?Sized,
    H: RealFunction + ?Sized,
{
    TryFn(move |x: f64| Ok(op(ctx, PseudoValue(f.eval(x)?), PseudoValue(h.eval(x)?))?.0))
}

/// `[f ⊗ h]_1` against `[f]_p ⊗ [h]_p'`, reversed for `p < 1`.
pub fn holder<F, H>(ctx: &PseudoContext, f: &F, h: &H, p: f64, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<InequalityVerdict>
where
    F: RealFunction + ?Sized,
    H: RealFunction + ?Sized,
{
    check_exponent(p)?;
    let q = conjugate(p);
    let product = pointwise(ctx, f, h, otimes);
    let lhs = norm(ctx, &product, 1.0, a, b, cfg)?;
    let rhs = otimes(ctx, norm(ctx, f, p, a, b, cfg)?, norm(ctx, h, q, a, b, cfg)?)?;
    InequalityVerdict::from_values(ctx, "holder", lhs, rhs, theorem_direction(ctx, p < 1.0))
}

/// `[f ⊗ h]_r` against `[f]_p ⊗ [h]_q` with `1/p + 1/q = 1/r`.
#[allow(clippy::too_many_arguments)]
pub fn holder_general<F, H>(
    ctx: &PseudoContext,
    f: &F,
    h: &H,
    p: f64,
    q: f64,
    r: f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityVerdict>
where
    F: RealFunction + ?Sized,
    H: RealFunction + ?Sized,
{
    if !(p > 1.0 && q > 1.0 && r >= 1.0 && p.is_finite() && q.is_finite() && r.is_finite()) {
        return Err(PseudoError::Parameter(format!("need p, q > 1 and r >= 1, got p={p}, q={q}, r={r}")));
    }
    if (1.0 / p + 1.0 / q - 1.0 / r).abs() > RELATION_TOLERANCE {
        return Err(PseudoError::Parameter(format!("1/p + 1/q must equal 1/r (p={p}, q={q}, r={r})")));
    }
    let product = pointwise(ctx, f, h, otimes);
    let lhs = norm(ctx, &product, r, a, b, cfg)?;
    let rhs = otimes(ctx, norm(ctx, f, p, a, b, cfg)?, norm(ctx, h, q, a, b, cfg)?)?;
    InequalityVerdict::from_values(ctx, "holder_general", lhs, rhs, theorem_direction(ctx, false))
}

/// `r` solving `t/p + (1-t)/q = 1/r`.
pub fn interpolation_exponent(t: f64, p: f64, q: f64) -> f64 {
    1.0 / (t / p + (1.0 - t) / q)
}

/// `[f]_r` against `[f]_p^(t) ⊗ [f]_q^(1-t)` with `t/p + (1-t)/q = 1/r`.
#[allow(clippy::too_many_arguments)]
pub fn holder_interpolation<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    t: f64,
    p: f64,
    q: f64,
    r: f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityVerdict> {
    if !(t > 0.0 && t < 1.0) {
        return Err(PseudoError::Parameter(format!("interpolation weight must lie in (0, 1), got {t}")));
    }
    if !(p > 1.0 && q > 1.0 && r > 1.0 && p.is_finite() && q.is_finite() && r.is_finite()) {
        return Err(PseudoError::Parameter(format!("need p, q, r > 1, got p={p}, q={q}, r={r}")));
    }
    if (t / p + (1.0 - t) / q - 1.0 / r).abs() > RELATION_TOLERANCE {
        return Err(PseudoError::Parameter(format!(
            "t/p + (1-t)/q must equal 1/r (t={t}, p={p}, q={q}, r={r})"
        )));
    }
    let lhs = norm(ctx, f, r, a, b, cfg)?;
    let fp = pseudo_pow(ctx, norm(ctx, f, p, a, b, cfg)?, t)?;
    let fq = pseudo_pow(ctx, norm(ctx, f, q, a, b, cfg)?, 1.0 - t)?;
    let rhs = otimes(ctx, fp, fq)?;
    InequalityVerdict::from_values(ctx, "holder_interpolation", lhs, rhs, theorem_direction(ctx, false))
}

/// `[f ⊕ h]_p` against `[f]_p ⊕ [h]_p`, reversed for `0 < p < 1`.
pub fn minkowski<F, H>(ctx: &PseudoContext, f: &F, h: &H, p: f64, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<InequalityVerdict>
where
    F: RealFunction + ?Sized,
    H: RealFunction + ?Sized,
{
    if p < 0.0 {
        return Err(PseudoError::Parameter(format!(
            "minkowski needs p > 0, got {p} (negative exponents are checked by minkowski_extended)"
        )));
    }
    minkowski_extended(ctx, f, h, p, a, b, cfg)
}

/// [`minkowski`] that also accepts `p < 0`, checked in the reversed direction.
pub fn minkowski_extended<F, H>(
    ctx: &PseudoContext,
    f: &F,
    h: &H,
    p: f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityVerdict>
where
    F: RealFunction + ?Sized,
    H: RealFunction + ?Sized,
{
    check_exponent(p)?;
    let sum = pointwise(ctx, f, h, oplus);
    let lhs = norm(ctx, &sum, p, a, b, cfg)?;
    let rhs = oplus(ctx, norm(ctx, f, p, a, b, cfg)?, norm(ctx, h, p, a, b, cfg)?)?;
    InequalityVerdict::from_values(ctx, "minkowski", lhs, rhs, theorem_direction(ctx, p < 1.0))
}
