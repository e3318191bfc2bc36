use super::{theorem_direction, InequalityVerdict};
use crate::algebra::{oplus, oslash, otimes, pseudo_pow, PseudoValue};
use crate::error::{PseudoError, Result};
use crate::generator::PseudoContext;

/// Conjugate index `p/(p-1)`.
pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if !p.is_finite() || p == 0.0 || p == 1.0 {
        return Err(PseudoError::Parameter(format!("exponent must be finite and not 0 or 1, got {p}")));
    }
    Ok(())
}

/// `a ⊗ b` against `a^(p) ⊘ g⁻¹(p) ⊕ b^(p') ⊘ g⁻¹(p')`.
///
/// For `p < 1` the conjugate is negative and has no preimage, so the right
/// side is evaluated in image space as `g(a)^p/p + g(b)^p'/p'`.
pub fn young(ctx: &PseudoContext, a: PseudoValue, b: PseudoValue, p: f64) -> Result<InequalityVerdict> {
    check_exponent(p)?;
    let q = conjugate(p);
    let ga = ctx.eval_g(a.0)?;
    let gb = ctx.eval_g(b.0)?;
    let lhs = otimes(ctx, a, b)?;
    let expected = theorem_direction(ctx, p < 1.0);
    if p > 1.0 {
        let left = oslash(ctx, pseudo_pow(ctx, a, p)?, PseudoValue(ctx.eval_g_inv(p)?))?;
        let right = oslash(ctx, pseudo_pow(ctx, b, q)?, PseudoValue(ctx.eval_g_inv(q)?))?;
        let rhs = oplus(ctx, left, right)?;
        return InequalityVerdict::from_values(ctx, "young", lhs, rhs, expected);
    }
    for (side, g) in [("a", ga), ("b", gb)] {
        if g <= ctx.eps_cmp() {
            return Err(PseudoError::DivisionByZeroG(if side == "a" { a.0 } else { b.0 }));
        }
    }
    let rhs_img = ga.powf(p) / p + gb.powf(q) / q;
    let lhs_img = ctx.eval_g(lhs.0)?;
    let mut v = InequalityVerdict::from_images(ctx, "young", lhs_img, rhs_img, expected)?;
    v.lhs_raw = Some(lhs.0);
    Ok(v)
}
