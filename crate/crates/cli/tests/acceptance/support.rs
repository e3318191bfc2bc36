use std::fmt::Write;
use std::sync::OnceLock;

use pseudocalc::{PseudoContext, PseudoValue, Result, TryFn};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const GENERATORS: [&str; 3] = ["identity", "power:2", "neglog"];

pub fn ctx(name: &str) -> &'static PseudoContext {
    static CTXS: OnceLock<Vec<PseudoContext>> = OnceLock::new();
    let all = CTXS.get_or_init(|| GENERATORS.iter().map(|n| PseudoContext::builtin(n).unwrap()).collect());
    &all[GENERATORS.iter().position(|n| *n == name).expect("known generator")]
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
}

pub fn img(g: &str, v: PseudoValue) -> f64 {
    ctx(g).eval_g(v.0).unwrap()
}

pub fn value(g: &str, y: f64) -> PseudoValue {
    PseudoValue(ctx(g).eval_g_inv(y).unwrap())
}

/// `|g'|` in closed form.
pub fn weight(g: &str, x: f64) -> f64 {
    match g {
        "identity" => 1.0,
        "power:2" => 2.0 * x,
        "neglog" => 1.0 / x,
        _ => unreachable!(),
    }
}

/// Random interval inside the generator's domain, short enough to keep images moderate.
pub fn interval(g: &str, rng: &mut ChaCha8Rng) -> (f64, f64) {
    if g == "neglog" {
        let a = rng.gen_range(0.1..0.6);
        (a, (a + rng.gen_range(0.1..0.4)).min(1.0))
    } else {
        let a = rng.gen_range(0.0..1.0);
        (a, a + rng.gen_range(0.2..1.5))
    }
}

/// Interval on which `|g'|` has total mass 1, so seminorms are power means of the images.
pub fn unit_interval(g: &str, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let t: f64 = rng.gen_range(0.0..1.0);
    match g {
        "identity" => (t, t + 1.0),
        "power:2" => (t, (t * t + 1.0).sqrt()),
        "neglog" => {
            let a = 0.1 + t * (1.0 / std::f64::consts::E - 0.1);
            (a, (a * std::f64::consts::E).min(1.0))
        }
        _ => unreachable!(),
    }
}

/// Positive image-space function.
#[derive(Debug, Clone, Copy)]
pub enum Family {
    Poly(f64, f64, f64),
    Exp(f64, f64),
}

impl Family {
    /// Random member whose images stay representable under `g` after powers up to 4.
    pub fn random(g: &str, rng: &mut ChaCha8Rng) -> Self {
        let narrow = g == "neglog";
        if rng.gen_bool(0.5) {
            if narrow {
                Family::Poly(rng.gen_range(0.5..1.5), rng.gen_range(0.0..1.0), rng.gen_range(0.0..0.5))
            } else {
                Family::Poly(rng.gen_range(0.2..2.0), rng.gen_range(0.0..2.0), rng.gen_range(0.0..1.0))
            }
        } else if narrow {
            Family::Exp(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5))
        } else {
            Family::Exp(rng.gen_range(0.2..2.0), rng.gen_range(-1.0..1.0))
        }
    }

    pub fn image(&self, x: f64) -> f64 {
        match *self {
            Family::Poly(c0, c1, c2) => c0 + c1 * x + c2 * x * x,
            Family::Exp(c, k) => c * (k * x).exp(),
        }
    }

    /// `g⁻¹ ∘ image`
    pub fn raw(self, g: &'static str) -> TryFn<impl Fn(f64) -> Result<f64>> {
        TryFn(move |x: f64| ctx(g).eval_g_inv(self.image(x)))
    }
}

/// Composite 5-point Gauss-Legendre over 64 panels.
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

/// `(∫ F^p |g'|)^{1/p}`
pub fn image_norm(g: &str, f: impl Fn(f64) -> f64, p: f64, a: f64, b: f64) -> f64 {
    integral(|x| f(x).powf(p) * weight(g, x), a, b).powf(1.0 / p)
}

/// Running record of comparisons for one criterion.
#[derive(Default)]
pub struct Tally {
    pub checks: usize,
    pub worst: f64,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    pub fn close(&mut self, label: impl FnOnce() -> String, got: f64, want: f64, tol: f64) {
        let e = rel_err(got, want);
        self.worst = self.worst.max(if e.is_nan() { f64::INFINITY } else { e });
        self.check(e <= tol, || format!("{}: {got} vs {want} (rel {e:.2e})", label()));
    }

    pub fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 3 {
                self.failures.push(label());
            }
        }
    }

    pub fn finish(self, extra: &str) -> std::result::Result<String, String> {
        let mut s = format!("{} checks, worst rel err {:.1e}", self.checks, self.worst);
        if !extra.is_empty() {
            write!(s, ", {extra}").unwrap();
        }
        if self.failed == 0 {
            Ok(s)
        } else {
            Err(format!("{s}; {} failed: {}", self.failed, self.failures.join("; ")))
        }
    }
}
