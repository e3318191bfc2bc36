//! Pseudo-arithmetic induced by a generator: `⊕ ⊖ ⊗ ⊘`, the scalar product
//! `⊙`, the order `≤_g`, powers, absolute value, `E^x` and `Ln`.
//!
//! All tolerances are applied to g-images, never to raw values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{PseudoError, Result};
use crate::generator::PseudoContext;

/// An element of the pseudo-semiring, stored by its raw representation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PseudoValue(pub f64);

impl PseudoValue {
    pub fn raw(self) -> f64 {
        self.0
    }

    pub fn zero(ctx: &PseudoContext) -> Self {
        PseudoValue(ctx.zero_g())
    }

    pub fn one(ctx: &PseudoContext) -> Self {
        PseudoValue(ctx.one_g())
    }

    /// The element whose image is `y`.
    pub fn from_image(ctx: &PseudoContext, y: f64) -> Result<Self> {
        ctx.eval_g_inv(y).map(PseudoValue)
    }

    pub fn image(self, ctx: &PseudoContext) -> Result<f64> {
        ctx.eval_g(self.0)
    }
}

impl From<f64> for PseudoValue {
    fn from(x: f64) -> Self {
        PseudoValue(x)
    }
}

impl fmt::Display for PseudoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BinaryKind {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryKind {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryKind::Add => "⊕",
            BinaryKind::Sub => "⊖",
            BinaryKind::Mul => "⊗",
            BinaryKind::Div => "⊘",
        }
    }
}

/// Result of comparing two elements under `≤_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GOrdering {
    LessG,
    EqualG,
    GreaterG,
}

fn image_to_value(ctx: &PseudoContext, image: f64, what: &str) -> Result<PseudoValue> {
    if image.is_nan() {
        return Err(PseudoError::Numeric(format!("image of {what}")));
    }
    if image.is_infinite() {
        return Err(PseudoError::Range(format!("image of {what} overflowed")));
    }
    PseudoValue::from_image(ctx, image)
}

/// `g⁻¹(g(x) ∘ g(y))` for `∘ ∈ {+, −, ×, ÷}`.
pub fn binary_op(ctx: &PseudoContext, kind: BinaryKind, x: PseudoValue, y: PseudoValue) -> Result<PseudoValue> {
    let gx = ctx.eval_g(x.0)?;
    let gy = ctx.eval_g(y.0)?;
    let image = match kind {
        BinaryKind::Add => gx + gy,
        BinaryKind::Sub => {
            let d = gx - gy;
            if d < -ctx.eps_cmp() * gx.abs().max(gy.abs()).max(1.0) {
                return Err(PseudoError::Range(format!("{x} ⊖ {y}: image difference {d:e} is negative")));
            }
            d.max(0.0)
        }
        BinaryKind::Mul => gx * gy,
        BinaryKind::Div => {
            if gy.abs() <= ctx.eps_cmp() {
                return Err(PseudoError::DivisionByZeroG(gy));
            }
            gx / gy
        }
    };
    image_to_value(ctx, image, kind.symbol())
}

pub fn oplus(ctx: &PseudoContext, x: PseudoValue, y: PseudoValue) -> Result<PseudoValue> {
    binary_op(ctx, BinaryKind::Add, x, y)
}

pub fn ominus(ctx: &PseudoContext, x: PseudoValue, y: PseudoValue) -> Result<PseudoValue> {
    binary_op(ctx, BinaryKind::Sub, x, y)
}

pub fn otimes(ctx: &PseudoContext, x: PseudoValue, y: PseudoValue) -> Result<PseudoValue> {
    binary_op(ctx, BinaryKind::Mul, x, y)
}

pub fn oslash(ctx: &PseudoContext, x: PseudoValue, y: PseudoValue) -> Result<PseudoValue> {
    binary_op(ctx, BinaryKind::Div, x, y)
}

/// Pseudo-scalar product `n ⊙ x = g⁻¹(n·g(x))`.
pub fn odot(ctx: &PseudoContext, n: f64, x: PseudoValue) -> Result<PseudoValue> {
    if n.is_nan() {
        return Err(PseudoError::Numeric("scalar of ⊙ is NaN".into()));
    }
    if n == 1.0 {
        ctx.eval_g(x.0)?;
        return Ok(x);
    }
    let gx = ctx.eval_g(x.0)?;
    let image = n * gx;
    if image < -ctx.eps_cmp() {
        return Err(PseudoError::Range(format!("{n} ⊙ {x} has negative image {image:e}")));
    }
    image_to_value(ctx, image.max(0.0), "⊙")
}

/// `≤_g` realized as real order on raw values, with equality decided in
/// image space.
pub fn cmp_g(ctx: &PseudoContext, x: PseudoValue, y: PseudoValue) -> Result<GOrdering> {
    let gx = ctx.eval_g(x.0)?;
    let gy = ctx.eval_g(y.0)?;
    if ctx.images_equal(gx, gy) {
        return Ok(GOrdering::EqualG);
    }
    Ok(if x.0 < y.0 { GOrdering::LessG } else { GOrdering::GreaterG })
}

/// `x^(p)`: `g⁻¹(g(x)^p)` for `p > 0`, `1_g` for `p = 0`, and
/// `1_g ⊘ x^(−p)` for `p < 0`.
pub fn pseudo_pow(ctx: &PseudoContext, x: PseudoValue, p: f64) -> Result<PseudoValue> {
    if p.is_nan() {
        return Err(PseudoError::Numeric("exponent is NaN".into()));
    }
    let gx = ctx.eval_g(x.0)?;
    if p == 0.0 {
        return Ok(PseudoValue::one(ctx));
    }
    if p > 0.0 {
        return image_to_value(ctx, gx.max(0.0).powf(p), "power");
    }
    if gx.abs() <= ctx.eps_cmp() {
        return Err(PseudoError::DivisionByZeroG(gx));
    }
    // g(1_g) = 1, so the image of 1_g ⊘ x^(−p) is 1 / g(x)^(−p)
    image_to_value(ctx, 1.0 / gx.powf(-p), "negative power")
}

/// `|x|_g = g⁻¹(|g(x)|)`. With images in `[0, ∞)` this is the identity.
pub fn pseudo_abs(ctx: &PseudoContext, x: PseudoValue) -> Result<PseudoValue> {
    let gx = ctx.eval_g(x.0)?;
    if gx >= 0.0 {
        Ok(x)
    } else {
        image_to_value(ctx, -gx, "|x|_g")
    }
}

/// `E^x = g⁻¹(e^{g(x)})`
pub fn pseudo_exp(ctx: &PseudoContext, x: PseudoValue) -> Result<PseudoValue> {
    let gx = ctx.eval_g(x.0)?;
    image_to_value(ctx, gx.exp(), "E^x")
}

/// `Ln x = g⁻¹(ln g(x))`, defined only where `g(x) ≥ 1` so the image stays
/// nonnegative.
pub fn pseudo_ln(ctx: &PseudoContext, x: PseudoValue) -> Result<PseudoValue> {
    let gx = ctx.eval_g(x.0)?;
    if gx <= ctx.eps_cmp() {
        return Err(PseudoError::LogDomain(gx));
    }
    let l = gx.ln();
    if l < -ctx.eps_cmp() {
        return Err(PseudoError::Range(format!(
            "Ln {x}: ln g(x) = {l:e} is negative and not representable"
        )));
    }
    image_to_value(ctx, l.max(0.0), "Ln x")
}
