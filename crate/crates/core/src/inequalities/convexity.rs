//! Pseudo-convexity, the Hermite-Hadamard chain with its refinement, and the
//! generalized geometric-logarithmic-arithmetic mean chain.

use serde::{Deserialize, Serialize};

use super::{Expected, InequalityVerdict, VERDICT_TOLERANCE};
use crate::algebra::{odot, ominus, oplus, otimes, pseudo_ln, pseudo_pow, PseudoValue};
use crate::calculus::{oplus_integral, QuadratureConfig, RealFunction};
use crate::error::{PseudoError, Result};
use crate::generator::{Direction, PseudoContext};

/// Which way the defining inequality of convexity points in the `≤_g` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Curvature {
    #[default]
    Convex,
    Concave,
}

impl Curvature {
    fn expected(self) -> Expected {
        match self {
            Curvature::Convex => Expected::LhsLeqRhs,
            Curvature::Concave => Expected::LhsGeqRhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub curvature: Curvature,
    pub is_pseudo_convex: bool,
    /// largest normalized image-space violation; negative when strict
    pub worst_violation: f64,
    pub witness: Option<Witness>,
}

fn value_at<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, x: f64) -> Result<PseudoValue> {
    let v = f.eval(x)?;
    ctx.eval_g(v)?;
    Ok(PseudoValue(v))
}

/// `λ⊙u ⊕ (1-λ)⊙v`
fn combine(ctx: &PseudoContext, lambda: f64, u: PseudoValue, v: PseudoValue) -> Result<PseudoValue> {
    oplus(ctx, odot(ctx, lambda, u)?, odot(ctx, 1.0 - lambda, v)?)
}

/// Samples `f(λx + (1-λ)y) ≤_g λ⊙f(x) ⊕ (1-λ)⊙f(y)` on a grid of `x < y`
/// pairs and interior `λ`, flipped for [`Curvature::Concave`].
pub fn pseudo_curvature<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    a: f64,
    b: f64,
    grid_x: usize,
    grid_lambda: usize,
    curvature: Curvature,
) -> Result<ConvexityReport> {
    if grid_x < 2 || grid_lambda < 2 {
        return Err(PseudoError::Parameter(format!(
            "grid sizes must be at least 2, got {grid_x} x {grid_lambda}"
        )));
    }
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(PseudoError::Parameter(format!("interval must satisfy a < b, got [{a}, {b}]")));
    }
    let xs: Vec<f64> = (0..grid_x)
        .map(|i| {
            if i + 1 == grid_x {
                b
            } else {
                a + (b - a) * i as f64 / (grid_x - 1) as f64
            }
        })
        .collect();
    let values = xs.iter().map(|&x| value_at(ctx, f, x)).collect::<Result<Vec<_>>>()?;
    let orient = ctx.direction().sign() * curvature.expected().sign();
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = None;
    for i in 0..grid_x {
        for j in i + 1..grid_x {
            for k in 1..=grid_lambda {
                let lambda = k as f64 / (grid_lambda + 1) as f64;
                let lhs = value_at(ctx, f, lambda * xs[i] + (1.0 - lambda) * xs[j])?;
                let rhs = combine(ctx, lambda, values[i], values[j])?;
                let (li, ri) = (ctx.eval_g(lhs.0)?, ctx.eval_g(rhs.0)?);
                let violation = orient * (li - ri) / li.abs().max(ri.abs()).max(1.0);
                if violation > worst {
                    worst = violation;
                    worst_at = Some(Witness {
                        x: xs[i],
                        y: xs[j],
                        lambda,
                    });
                }
            }
        }
    }
    let ok = worst <= VERDICT_TOLERANCE;
    Ok(ConvexityReport {
        curvature,
        is_pseudo_convex: ok,
        worst_violation: worst,
        witness: if ok { None } else { worst_at },
    })
}

/// [`pseudo_curvature`] for the convex case.
pub fn is_pseudo_convex<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    a: f64,
    b: f64,
    grid_x: usize,
    grid_lambda: usize,
) -> Result<ConvexityReport> {
    pseudo_curvature(ctx, f, a, b, grid_x, grid_lambda, Curvature::Convex)
}

/// The Hermite-Hadamard chain, optionally refined at some `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HHChain {
    /// `f((a+b)/2)`
    pub left: PseudoValue,
    /// `(1/(b-a)) ⊙ ∫⊕ f`
    pub mid: PseudoValue,
    /// `½ ⊙ (f(a) ⊕ f(b))`
    pub right: PseudoValue,
    #[serde(rename = "refined_l")]
    pub refined_lower: Option<PseudoValue>,
    #[serde(rename = "refined_L")]
    pub refined_upper: Option<PseudoValue>,
    pub lambda: Option<f64>,
    pub curvature: Curvature,
    /// consecutive comparisons along the chain
    pub links: Vec<InequalityVerdict>,
}

impl HHChain {
    pub fn holds(&self) -> bool {
        self.links.iter().all(|v| v.holds)
    }

    pub fn min_margin(&self) -> f64 {
        self.links.iter().map(|v| v.margin).fold(f64::INFINITY, f64::min)
    }

    /// The whole chain as a single verdict from `left` to `right`.
    pub fn verdict(&self, name: &str) -> InequalityVerdict {
        InequalityVerdict::aggregate(name, &self.links).expect("a chain always has links")
    }

    /// The chain's values in order.
    pub fn values(&self) -> Vec<PseudoValue> {
        let mut out = vec![self.left];
        out.extend(self.refined_lower);
        out.push(self.mid);
        out.extend(self.refined_upper);
        out.push(self.right);
        out
    }
}

struct Endpoints {
    left: PseudoValue,
    mid: PseudoValue,
    right: PseudoValue,
    fa: PseudoValue,
    fb: PseudoValue,
}

fn endpoints<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Endpoints> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(PseudoError::Parameter(format!("interval must satisfy a < b, got [{a}, {b}]")));
    }
    let fa = value_at(ctx, f, a)?;
    let fb = value_at(ctx, f, b)?;
    let left = value_at(ctx, f, 0.5 * (a + b))?;
    let mid = odot(ctx, 1.0 / (b - a), oplus_integral(ctx, f, a, b, cfg)?)?;
    let right = odot(ctx, 0.5, oplus(ctx, fa, fb)?)?;
    Ok(Endpoints { left, mid, right, fa, fb })
}

fn link(ctx: &PseudoContext, name: &str, lhs: PseudoValue, rhs: PseudoValue, curvature: Curvature) -> Result<InequalityVerdict> {
    InequalityVerdict::from_values(ctx, name, lhs, rhs, curvature.expected())
}

/// `f((a+b)/2) ≤_g (1/(b-a))⊙∫⊕f ≤_g ½⊙(f(a) ⊕ f(b))` for pseudo-convex `f`.
pub fn hermite_hadamard<F: RealFunction + ?Sized>(ctx: &PseudoContext, f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<HHChain> {
    hermite_hadamard_curved(ctx, f, a, b, Curvature::Convex, cfg)
}

/// [`hermite_hadamard`] with the chain reversed for pseudo-concave `f`.
pub fn hermite_hadamard_curved<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    a: f64,
    b: f64,
    curvature: Curvature,
    cfg: &QuadratureConfig,
) -> Result<HHChain> {
    let e = endpoints(ctx, f, a, b, cfg)?;
    let links = vec![
        link(ctx, "hh:left-mid", e.left, e.mid, curvature)?,
        link(ctx, "hh:mid-right", e.mid, e.right, curvature)?,
    ];
    Ok(HHChain {
        left: e.left,
        mid: e.mid,
        right: e.right,
        refined_lower: None,
        refined_upper: None,
        lambda: None,
        curvature,
        links,
    })
}

/// The refined chain `left ≤_g ℓ(λ) ≤_g mid ≤_g L(λ) ≤_g right`.
pub fn hh_refined<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    a: f64,
    b: f64,
    lambda: f64,
    cfg: &QuadratureConfig,
) -> Result<HHChain> {
    hh_refined_curved(ctx, f, a, b, lambda, Curvature::Convex, cfg)
}

/// [`hh_refined`] with the chain reversed for pseudo-concave `f`.
pub fn hh_refined_curved<F: RealFunction + ?Sized>(
    ctx: &PseudoContext,
    f: &F,
    a: f64,
    b: f64,
    lambda: f64,
    curvature: Curvature,
    cfg: &QuadratureConfig,
) -> Result<HHChain> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(PseudoError::Parameter(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let e = endpoints(ctx, f, a, b, cfg)?;
    let p1 = value_at(ctx, f, 0.5 * (lambda * b + (2.0 - lambda) * a))?;
    let p2 = value_at(ctx, f, 0.5 * ((1.0 + lambda) * b + (1.0 - lambda) * a))?;
    let lower = combine(ctx, lambda, p1, p2)?;
    let inner = value_at(ctx, f, lambda * b + (1.0 - lambda) * a)?;
    let upper = odot(ctx, 0.5, oplus(ctx, inner, combine(ctx, lambda, e.fa, e.fb)?)?)?;
    let links = vec![
        link(ctx, "hh_refined:left-l", e.left, lower, curvature)?,
        link(ctx, "hh_refined:l-mid", lower, e.mid, curvature)?,
        link(ctx, "hh_refined:mid-L", e.mid, upper, curvature)?,
        link(ctx, "hh_refined:L-right", upper, e.right, curvature)?,
    ];
    Ok(HHChain {
        left: e.left,
        mid: e.mid,
        right: e.right,
        refined_lower: Some(lower),
        refined_upper: Some(upper),
        lambda: Some(lambda),
        curvature,
        links,
    })
}

/// Geometric, logarithmic and arithmetic pseudo-means of two values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlaMeans {
    pub geometric: PseudoValue,
    pub logarithmic: PseudoValue,
    pub arithmetic: PseudoValue,
    /// operands were exchanged so that `u ⊖ v` exists
    pub swapped: bool,
    pub verdicts: [InequalityVerdict; 2],
}

impl GlaMeans {
    pub fn verdict(&self) -> InequalityVerdict {
        InequalityVerdict::aggregate("gla_means", &self.verdicts).expect("two verdicts")
    }
}

/// `(u⊗v)^(½) ≤_g (1/(g(Ln u) - g(Ln v)))⊙(u⊖v) ≤_g ½⊙(u⊕v)`.
pub fn gla_means(ctx: &PseudoContext, u: PseudoValue, v: PseudoValue) -> Result<GlaMeans> {
    if ctx.direction() != Direction::Increasing {
        return Err(PseudoError::Parameter("the mean chain needs an increasing generator".into()));
    }
    let (gu, gv) = (ctx.eval_g(u.0)?, ctx.eval_g(v.0)?);
    if ctx.images_equal(gu, gv) {
        return Err(PseudoError::Parameter(format!(
            "the mean chain needs u != v, got {} and {}",
            u.0, v.0
        )));
    }
    let swapped = gu < gv;
    let (u, v) = if swapped { (v, u) } else { (u, v) };
    let ln_u = ctx.eval_g(pseudo_ln(ctx, u)?.0)?;
    let ln_v = ctx.eval_g(pseudo_ln(ctx, v)?.0)?;
    let geometric = pseudo_pow(ctx, otimes(ctx, u, v)?, 0.5)?;
    let logarithmic = odot(ctx, 1.0 / (ln_u - ln_v), ominus(ctx, u, v)?)?;
    let arithmetic = odot(ctx, 0.5, oplus(ctx, u, v)?)?;
    let verdicts = [
        InequalityVerdict::from_values(ctx, "gla:geometric-logarithmic", geometric, logarithmic, Expected::LhsLeqRhs)?,
        InequalityVerdict::from_values(ctx, "gla:logarithmic-arithmetic", logarithmic, arithmetic, Expected::LhsLeqRhs)?,
    ];
    Ok(GlaMeans {
        geometric,
        logarithmic,
        arithmetic,
        swapped,
        verdicts,
    })
}
