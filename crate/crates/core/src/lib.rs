//! Pseudo-analysis driven by a generator function `g`.
//!
//! A strictly monotone generator `g: D → [0, ∞)` induces a pseudo-semiring
//! on `D` (`x ⊕ y = g⁻¹(g(x) + g(y))`, `x ⊗ y = g⁻¹(g(x)·g(y))`, ...),
//! and with it pseudo-derivatives, pseudo-integrals and seminorms. This crate
//! computes all of them numerically and checks the Young, Hölder, Minkowski
//! and Hermite-Hadamard families of inequalities for both increasing and
//! decreasing generators.
//!
//! ```
//! use pseudocalc::{algebra, PseudoContext, PseudoValue};
//!
//! let ctx = PseudoContext::builtin("power:2").unwrap();
//! let sum = algebra::oplus(&ctx, PseudoValue(3.0), PseudoValue(4.0)).unwrap();
//! assert!((sum.raw() - 5.0).abs() < 1e-12);
//! ```

// `!(a < b)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod calculus;
pub mod error;
pub mod funcspec;
pub mod generator;
pub mod inequalities;

pub use algebra::{BinaryKind, GOrdering, PseudoValue};
pub use calculus::{QuadratureConfig, RealFunction, SeminormFlavor, SeminormParams, TryFn};
pub use error::{PseudoError, Result};
pub use funcspec::Expr;
pub use generator::{make_context, validate_spec, Direction, Domain, GeneratorSpec, PseudoContext};
pub use inequalities::{Curvature, Expected, HHChain, InequalityVerdict, Suite, SuiteEntry, SuiteReport};
