//! Checkable pseudo-analogues of the classical integral inequalities.
//!
//! Every check produces an [`InequalityVerdict`] that records both sides in
//! raw and image form. The comparison itself happens in image space, where
//! the pseudo inequality reduces to its classical counterpart.

mod convexity;
mod holder;
mod suite;
mod young;

use serde::{Deserialize, Serialize};

use crate::algebra::PseudoValue;
use crate::error::{PseudoError, Result};
use crate::generator::{Direction, PseudoContext};

pub use convexity::{
    gla_means, hermite_hadamard, hermite_hadamard_curved, hh_refined, hh_refined_curved, is_pseudo_convex, pseudo_curvature,
    ConvexityReport, Curvature, GlaMeans, HHChain, Witness,
};
pub use holder::{holder, holder_general, holder_interpolation, interpolation_exponent, minkowski, minkowski_extended};
pub use suite::{
    check_suite, GeneratorRef, GridAxis, ItemError, RandomAxis, Suite, SuiteEntry, SuiteItem, SuiteReport, SuiteSummary, INEQUALITIES,
};
pub use young::{conjugate, young};

/// A verdict holds when its normalized margin is at least `-VERDICT_TOLERANCE`.
pub const VERDICT_TOLERANCE: f64 = 1e-8;

/// Expected relation between the two sides in the `≤_g` order on raw values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expected {
    LhsLeqRhs,
    LhsGeqRhs,
}

impl Expected {
    pub fn sign(self) -> f64 {
        match self {
            Expected::LhsLeqRhs => 1.0,
            Expected::LhsGeqRhs => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Expected::LhsLeqRhs => Expected::LhsGeqRhs,
            Expected::LhsGeqRhs => Expected::LhsLeqRhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Expected::LhsLeqRhs => "<=",
            Expected::LhsGeqRhs => ">=",
        }
    }
}

/// Direction in which a theorem holds under `ctx`: `≤_g` for an increasing
/// generator, reversed for a decreasing one, and flipped once more when
/// `reversed` (the `p < 1` variants).
pub fn theorem_direction(ctx: &PseudoContext, reversed: bool) -> Expected {
    let base = match ctx.direction() {
        Direction::Increasing => Expected::LhsLeqRhs,
        Direction::Decreasing => Expected::LhsGeqRhs,
    };
    if reversed {
        base.flipped()
    } else {
        base
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    pub name: String,
    /// `None` when the side has a negative image and so no raw value
    pub lhs_raw: Option<f64>,
    pub rhs_raw: Option<f64>,
    pub lhs_img: f64,
    pub rhs_img: f64,
    pub expected: Expected,
    pub margin: f64,
    pub holds: bool,
    pub generator_direction: Direction,
}

/// Signed margin of `lhs_img` vs `rhs_img`, positive when the expected raw
/// relation holds strictly.
pub fn margin(direction: Direction, expected: Expected, lhs_img: f64, rhs_img: f64) -> f64 {
    let scale = lhs_img.abs().max(rhs_img.abs()).max(1.0);
    expected.sign() * direction.sign() * (rhs_img - lhs_img) / scale
}

impl InequalityVerdict {
    /// Verdict from image-space sides; raw values are recovered where possible.
    pub fn from_images(ctx: &PseudoContext, name: impl Into<String>, lhs_img: f64, rhs_img: f64, expected: Expected) -> Result<Self> {
        if lhs_img.is_nan() || rhs_img.is_nan() {
            return Err(PseudoError::Numeric("verdict side is NaN".into()));
        }
        let raw = |y: f64| if y >= -ctx.eps_cmp() { ctx.eval_g_inv(y).ok() } else { None };
        Ok(Self::assemble(
            ctx,
            name.into(),
            raw(lhs_img),
            raw(rhs_img),
            lhs_img,
            rhs_img,
            expected,
        ))
    }

    /// Verdict comparing two pseudo values.
    pub fn from_values(
        ctx: &PseudoContext,
        name: impl Into<String>,
        lhs: PseudoValue,
        rhs: PseudoValue,
        expected: Expected,
    ) -> Result<Self> {
        let lhs_img = ctx.eval_g(lhs.0)?;
        let rhs_img = ctx.eval_g(rhs.0)?;
        Ok(Self::assemble(
            ctx,
            name.into(),
            Some(lhs.0),
            Some(rhs.0),
            lhs_img,
            rhs_img,
            expected,
        ))
    }

    fn assemble(
        ctx: &PseudoContext,
        name: String,
        lhs_raw: Option<f64>,
        rhs_raw: Option<f64>,
        lhs_img: f64,
        rhs_img: f64,
        expected: Expected,
    ) -> Self {
        let m = margin(ctx.direction(), expected, lhs_img, rhs_img);
        InequalityVerdict {
            name,
            lhs_raw,
            rhs_raw,
            lhs_img,
            rhs_img,
            expected,
            margin: m,
            holds: m >= -VERDICT_TOLERANCE,
            generator_direction: ctx.direction(),
        }
    }

    /// Folds a chain of links into one verdict spanning the first left side
    /// and the last right side, with the weakest link's margin.
    pub fn aggregate(name: impl Into<String>, links: &[InequalityVerdict]) -> Option<Self> {
        let first = links.first()?;
        let last = links.last()?;
        let margin = links.iter().map(|v| v.margin).fold(f64::INFINITY, f64::min);
        Some(InequalityVerdict {
            name: name.into(),
            lhs_raw: first.lhs_raw,
            rhs_raw: last.rhs_raw,
            lhs_img: first.lhs_img,
            rhs_img: last.rhs_img,
            expected: first.expected,
            margin,
            holds: links.iter().all(|v| v.holds),
            generator_direction: first.generator_direction,
        })
    }
}
