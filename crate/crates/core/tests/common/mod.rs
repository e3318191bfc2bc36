#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use pseudocalc::{PseudoContext, RealFunction, Result};

pub const GENERATORS: [&str; 3] = ["identity", "power:2", "neglog"];

pub fn ctx(name: &str) -> &'static PseudoContext {
    static CTXS: OnceLock<Vec<PseudoContext>> = OnceLock::new();
    let all = CTXS.get_or_init(|| GENERATORS.iter().map(|n| PseudoContext::builtin(n).unwrap()).collect());
    let i = GENERATORS.iter().position(|n| *n == name).expect("known generator");
    &all[i]
}

/// `|a - b| / max(|a|, |b|)`, with a tiny floor.
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
}

/// Raw value with the given image.
pub fn from_image(name: &str, y: f64) -> f64 {
    ctx(name).eval_g_inv(y).unwrap()
}

/// `|g'|` in closed form, independent of the library.
pub fn weight(name: &str, x: f64) -> f64 {
    match name {
        "identity" => 1.0,
        "power:2" => 2.0 * x,
        "neglog" => 1.0 / x,
        _ => unreachable!(),
    }
}

/// An interval of `D` on which `|g'|` has total mass 1, selected by `t ∈ [0, 1]`.
pub fn unit_interval(name: &str, t: f64) -> (f64, f64) {
    match name {
        "identity" => (t, t + 1.0),
        "power:2" => (t, (t * t + 1.0).sqrt()),
        "neglog" => {
            let a = 0.1 + t * (1.0 / std::f64::consts::E - 0.1);
            (a, (a * std::f64::consts::E).min(1.0))
        }
        _ => unreachable!(),
    }
}

/// Positive image-space function from a polynomial or exponential family.
#[derive(Debug, Clone, Copy)]
pub enum Family {
    Poly(f64, f64, f64),
    Exp(f64, f64),
}

impl Family {
    pub fn image(&self, x: f64) -> f64 {
        match *self {
            Family::Poly(c0, c1, c2) => c0 + c1 * x + c2 * x * x,
            Family::Exp(c, k) => c * (k * x).exp(),
        }
    }

    /// The raw function `g⁻¹ ∘ image` under `name`.
    pub fn raw(self, name: &'static str) -> RawFn {
        RawFn { name, family: self }
    }
}

pub struct RawFn {
    pub name: &'static str,
    pub family: Family,
}

impl RealFunction for RawFn {
    fn eval(&self, x: f64) -> Result<f64> {
        ctx(self.name).eval_g_inv(self.family.image(x))
    }
}

/// Image-space functions for `g`, narrower under `neglog` so that powers up to
/// about 5 stay representable.
pub fn family(g: &str) -> BoxedStrategy<Family> {
    if g == "neglog" {
        prop_oneof![
            (0.5..1.5f64, 0.0..1.0f64, 0.0..0.5f64).prop_map(|(a, b, c)| Family::Poly(a, b, c)),
            (0.5..1.5f64, -0.5..0.5f64).prop_map(|(c, k)| Family::Exp(c, k)),
        ]
        .boxed()
    } else {
        prop_oneof![
            (0.2..2.0f64, 0.0..2.0f64, 0.0..1.0f64).prop_map(|(a, b, c)| Family::Poly(a, b, c)),
            (0.2..2.0f64, -1.0..1.0f64).prop_map(|(c, k)| Family::Exp(c, k)),
        ]
        .boxed()
    }
}

/// A generator with two image-space functions suited to it.
pub fn setup() -> impl Strategy<Value = (&'static str, Family, Family)> {
    generator().prop_flat_map(|g| (Just(g), family(g), family(g)))
}

pub fn generator() -> impl Strategy<Value = &'static str> {
    prop::sample::select(GENERATORS.to_vec())
}

/// Classical `∫_a^b f` by composite 5-point Gauss-Legendre, independent of
/// the library's quadrature. Accurate to ~1e-14 for the smooth integrands
/// used in these tests.
pub fn integral(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const NODES: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
        (0.906_179_845_938_664, 0.236_926_885_056_189_08),
    ];
    const PANELS: usize = 64;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|k| {
            let mid = a + (k as f64 + 0.5) * h;
            NODES.iter().map(|&(t, w)| w * f(mid + 0.5 * h * t)).sum::<f64>() * 0.5 * h
        })
        .sum()
}

/// `(∫ F^p |g'|)^{1/p}` over `[a, b]`.
pub fn image_norm(name: &str, f: impl Fn(f64) -> f64, p: f64, a: f64, b: f64) -> f64 {
    integral(|x| f(x).powf(p) * weight(name, x), a, b).powf(1.0 / p)
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
