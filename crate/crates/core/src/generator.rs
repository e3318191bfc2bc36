//! Generator functions and the pseudo context they induce.
//!
//! A generator `g` is a strictly monotone map from an interval `D` onto the
//! image space `[0, ∞)`. Every pseudo-operation is `g` conjugated classical
//! arithmetic, so all of them funnel through [`PseudoContext::eval_g`] and
//! [`PseudoContext::eval_g_inv`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{PseudoError, Result};
use crate::funcspec::{self, Expr};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub const DEFAULT_EPS_INV: f64 = 1e-12;
pub const DEFAULT_EPS_CMP: f64 = 1e-9;
pub const DEFAULT_VALIDATION_SAMPLES: usize = 64;

/// Cap on bisection steps for the numerical inverse. Bisection runs over the
/// ordered bit patterns of `f64`, so 64 halvings always reach adjacent floats.
pub const MAX_BISECTION_ITERS: usize = 64;

/// Span of the finite validation window when `D` is unbounded.
const UNBOUNDED_WINDOW: f64 = 10.0;
/// An image probe near the unbounded end of `D` must reach at least this value.
const UNBOUNDED_IMAGE_FLOOR: f64 = 100.0;
const ROUND_TRIP_TOLERANCE: f64 = 1e-9;
const DERIVATIVE_TOLERANCE: f64 = 1e-6;
const VALIDATION_FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Increasing => 1.0,
            Direction::Decreasing => -1.0,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        })
    }
}

/// The interval on which a generator is defined. Infinite bounds are always
/// treated as open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Domain {
    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Self {
        Domain {
            lo,
            hi,
            lo_open: lo_open || lo.is_infinite(),
            hi_open: hi_open || hi.is_infinite(),
        }
    }

    /// `[0, ∞)`
    pub fn nonnegative() -> Self {
        Domain::new(0.0, f64::INFINITY, false, true)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    /// Distance from `x` to the nearest finite endpoint (infinite when none).
    fn distance_to_boundary(&self, x: f64) -> f64 {
        let mut d = f64::INFINITY;
        if self.lo.is_finite() {
            d = d.min(x - self.lo);
        }
        if self.hi.is_finite() {
            d = d.min(self.hi - x);
        }
        d
    }

    /// Finite sub-interval used for sampling-based checks.
    pub fn finite_window(&self) -> (f64, f64) {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => (self.lo, self.hi),
            (true, false) => (self.lo, self.lo + UNBOUNDED_WINDOW * self.lo.abs().max(1.0)),
            (false, true) => (self.hi - UNBOUNDED_WINDOW * self.hi.abs().max(1.0), self.hi),
            (false, false) => (-UNBOUNDED_WINDOW, UNBOUNDED_WINDOW),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// A generator with optional closed-form inverse and derivative.
///
/// The callbacks must be pure; a context may be shared across threads and
/// evaluates them concurrently.
#[derive(Clone)]
pub struct GeneratorSpec {
    pub name: String,
    pub g: RealFn,
    pub g_inv: Option<RealFn>,
    pub g_prime: Option<RealFn>,
    pub domain: Domain,
    pub direction: Direction,
}

impl fmt::Debug for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorSpec")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("direction", &self.direction)
            .field("g_inv", &self.g_inv.is_some())
            .field("g_prime", &self.g_prime.is_some())
            .finish()
    }
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, g: impl Fn(f64) -> f64 + Send + Sync + 'static, domain: Domain, direction: Direction) -> Self {
        GeneratorSpec {
            name: name.into(),
            g: Arc::new(g),
            g_inv: None,
            g_prime: None,
            domain,
            direction,
        }
    }

    pub fn with_inverse(mut self, g_inv: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.g_inv = Some(Arc::new(g_inv));
        self
    }

    pub fn with_derivative(mut self, g_prime: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.g_prime = Some(Arc::new(g_prime));
        self
    }

    /// `g(x) = x` on `[0, ∞)`; the pseudo-operations become classical ones.
    pub fn identity() -> Self {
        GeneratorSpec::new("identity", |x| x, Domain::nonnegative(), Direction::Increasing)
            .with_inverse(|y| y)
            .with_derivative(|_| 1.0)
    }

    /// `g(x) = x^λ` on `[0, ∞)`, `λ > 0`.
    pub fn power(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(PseudoError::Parameter(format!(
                "power generator needs a finite exponent > 0, got {lambda}"
            )));
        }
        Ok(GeneratorSpec::new(
            format!("power:{lambda}"),
            move |x: f64| x.powf(lambda),
            Domain::nonnegative(),
            Direction::Increasing,
        )
        .with_inverse(move |y: f64| y.powf(1.0 / lambda))
        .with_derivative(move |x: f64| lambda * x.powf(lambda - 1.0)))
    }

    /// `g(x) = -ln x` on `(0, 1]`, a decreasing generator with `0_g = 1`.
    pub fn neglog() -> Self {
        GeneratorSpec::new(
            "neglog",
            |x: f64| -x.ln(),
            Domain::new(0.0, 1.0, true, false),
            Direction::Decreasing,
        )
        .with_inverse(|y: f64| (-y).exp())
        .with_derivative(|x: f64| -1.0 / x)
    }

    /// Resolves `identity`, `power:<λ>` or `neglog`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "identity" => Ok(Self::identity()),
            "neglog" => Ok(Self::neglog()),
            _ => {
                if let Some(rest) = name.strip_prefix("power:") {
                    let lambda: f64 = rest
                        .trim()
                        .parse()
                        .map_err(|_| PseudoError::Config(format!("bad power generator exponent `{rest}`")))?;
                    Self::power(lambda)
                } else {
                    Err(PseudoError::Config(format!(
                        "unknown generator `{name}` (expected identity, power:<λ> or neglog)"
                    )))
                }
            }
        }
    }

    /// Builds a generator from its JSON document form.
    pub fn from_doc(doc: &GeneratorDoc) -> Result<Self> {
        if doc.schema_version != 1 {
            return Err(PseudoError::Config(format!(
                "unsupported generator schema_version {}",
                doc.schema_version
            )));
        }
        let domain = Domain::new(
            doc.domain.lo.unwrap_or(f64::NEG_INFINITY),
            doc.domain.hi.unwrap_or(f64::INFINITY),
            doc.domain.lo_open,
            doc.domain.hi_open,
        );
        if !(domain.lo < domain.hi) {
            return Err(PseudoError::Config(format!("empty generator domain {domain}")));
        }
        let g = funcspec::parse(&doc.g)?;
        let mut spec = GeneratorSpec::new(doc.name.clone(), expr_callback(g), domain, doc.direction);
        if let Some(src) = &doc.g_inv {
            spec.g_inv = Some(Arc::new(expr_callback(funcspec::parse(src)?)));
        }
        if let Some(src) = &doc.g_prime {
            spec.g_prime = Some(Arc::new(expr_callback(funcspec::parse(src)?)));
        }
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GeneratorDoc = serde_json::from_str(text).map_err(|e| PseudoError::Config(format!("generator JSON: {e}")))?;
        Self::from_doc(&doc)
    }
}

/// Evaluation errors of user expressions surface as NaN, which every caller
/// rejects as a numeric error.
fn expr_callback(e: Expr) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    move |x| e.eval(x).unwrap_or(f64::NAN)
}

fn default_schema_version() -> u32 {
    1
}

/// JSON form of a generator definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub name: String,
    pub g: String,
    #[serde(default)]
    pub g_inv: Option<String>,
    #[serde(default)]
    pub g_prime: Option<String>,
    pub domain: DomainDoc,
    pub direction: Direction,
}

/// `null` bounds mean infinite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainDoc {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_violation: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub generator: String,
    pub direction: Direction,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Chebyshev nodes on `[lo, hi]`, ascending; never hits the endpoints.
fn chebyshev_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut xs: Vec<f64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::PI * (2 * k + 1) as f64 / (2 * n) as f64;
            mid - half * theta.cos()
        })
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

fn check(name: &str, passed: bool, max_violation: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed,
        max_violation,
        detail,
    }
}

/// Sampling-based check of the structural generator assumptions.
pub fn validate_spec(spec: &GeneratorSpec, samples: usize) -> ValidationReport {
    let samples = samples.max(2);
    let dom = spec.domain;
    let (wlo, whi) = dom.finite_window();
    let mut grid: Vec<f64> = chebyshev_nodes(wlo, whi, samples)
        .into_iter()
        .filter(|&x| dom.contains(x))
        .collect();
    let mut probes = grid.clone();
    if dom.lo.is_finite() && !dom.lo_open {
        probes.insert(0, dom.lo);
    }
    if dom.hi.is_finite() && !dom.hi_open {
        probes.push(dom.hi);
    }
    let s = spec.direction.sign();
    let g = &spec.g;
    let mut checks = Vec::new();

    // strict monotonicity in the declared direction
    {
        let values: Vec<f64> = probes.iter().map(|&x| g(x)).collect();
        let mut worst = 0.0_f64;
        let mut ok = values.iter().all(|v| !v.is_nan());
        for w in values.windows(2) {
            let step = s * (w[1] - w[0]);
            if !(step > 0.0) {
                ok = false;
                worst = worst.max(if step.is_nan() { f64::INFINITY } else { -step });
            }
        }
        checks.push(check(
            "monotonicity",
            ok,
            worst,
            format!("{} probes, declared {}", probes.len(), spec.direction),
        ));
    }

    // g vanishes at a closed finite endpoint (that endpoint is 0_g)
    {
        let end = match spec.direction {
            Direction::Increasing => (dom.lo, dom.lo_open),
            Direction::Decreasing => (dom.hi, dom.hi_open),
        };
        let (passed, violation, detail) = if end.0.is_finite() && !end.1 {
            let v = g(end.0);
            (v.abs() <= DEFAULT_EPS_CMP, v.abs(), format!("g({}) = {v:e}", end.0))
        } else {
            (
                false,
                f64::INFINITY,
                "0_g must be a closed finite endpoint of the domain".to_string(),
            )
        };
        checks.push(check("zero_element", passed, violation, detail));
    }

    // image unbounded towards the other end
    {
        let reached = unbounded_probe(spec);
        let passed = reached >= UNBOUNDED_IMAGE_FLOOR;
        checks.push(check(
            "unbounded_image",
            passed,
            (UNBOUNDED_IMAGE_FLOOR - reached).max(0.0),
            format!("largest probed image {reached:e}"),
        ));
    }

    if let Some(g_inv) = &spec.g_inv {
        let mut worst = 0.0_f64;
        for &x in &probes {
            let y = g(x);
            if !y.is_finite() || y < 0.0 {
                continue;
            }
            let err = (g(g_inv(y)) - y).abs() / y.abs().max(1.0);
            worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
        }
        checks.push(check(
            "inverse_round_trip",
            worst <= ROUND_TRIP_TOLERANCE,
            worst,
            format!("max |g(g_inv(y)) - y| / max(1,|y|) over {} images", probes.len()),
        ));
    }

    let derivative_at = |x: f64| -> f64 {
        match &spec.g_prime {
            Some(gp) => gp(x),
            None => central_difference(g.as_ref(), &dom, x, f64::EPSILON.cbrt()),
        }
    };

    if spec.g_prime.is_some() {
        let mut worst = 0.0_f64;
        for &x in &grid {
            let fd = central_difference(g.as_ref(), &dom, x, VALIDATION_FD_STEP);
            let exact = derivative_at(x);
            let err = (fd - exact).abs() / exact.abs().max(1.0);
            worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
        }
        checks.push(check(
            "derivative",
            worst <= DERIVATIVE_TOLERANCE,
            worst,
            format!("g_prime vs central difference (h = {VALIDATION_FD_STEP:e})"),
        ));
    }

    {
        grid.retain(|x| x.is_finite());
        let mut worst = 0.0_f64;
        let mut ok = true;
        for &x in &grid {
            let d = s * derivative_at(x);
            if !(d > 0.0) {
                ok = false;
                worst = worst.max(if d.is_nan() { f64::INFINITY } else { -d });
            }
        }
        checks.push(check(
            "nonvanishing_derivative",
            ok,
            worst,
            "sign(g') matches the declared direction on the sample grid".to_string(),
        ));
    }

    ValidationReport {
        generator: spec.name.clone(),
        direction: spec.direction,
        samples,
        checks,
    }
}

/// Largest finite image reached while walking towards the end of `D` where
/// `g` should blow up.
fn unbounded_probe(spec: &GeneratorSpec) -> f64 {
    let dom = spec.domain;
    let g = &spec.g;
    let (end, open, toward_hi) = match spec.direction {
        Direction::Increasing => (dom.hi, dom.hi_open, true),
        Direction::Decreasing => (dom.lo, dom.lo_open, false),
    };
    let mut best = f64::NEG_INFINITY;
    let mut consider = |x: f64| {
        if dom.contains(x) {
            let v = g(x);
            if v.is_finite() {
                best = best.max(v);
            } else if v == f64::INFINITY {
                best = f64::INFINITY;
            }
        }
    };
    if end.is_infinite() {
        for k in 0..=307 {
            let x = 10f64.powi(k);
            consider(if toward_hi { x } else { -x });
        }
    } else if open {
        let scale = end.abs().max(1.0);
        for k in 1..=320 {
            let off = scale * 10f64.powi(-k);
            consider(if toward_hi { end - off } else { end + off });
        }
        // smallest representable step inward
        consider(if toward_hi {
            next_toward(end, f64::NEG_INFINITY)
        } else {
            next_toward(end, f64::INFINITY)
        });
    } else {
        consider(end);
    }
    best
}

/// Central difference with relative step, shrunk near finite endpoints and
/// one-sided when the point sits on the boundary.
pub(crate) fn central_difference(f: &dyn Fn(f64) -> f64, dom: &Domain, x: f64, rel_step: f64) -> f64 {
    let room = dom.distance_to_boundary(x);
    let scale = if room > 0.0 { x.abs().max(1.0).min(room) } else { x.abs().max(1.0) };
    let h = rel_step * scale;
    let fwd_ok = dom.contains(x + 2.0 * h);
    let back_ok = dom.contains(x - 2.0 * h);
    if dom.contains(x + h) && dom.contains(x - h) {
        (f(x + h) - f(x - h)) / (2.0 * h)
    } else if fwd_ok {
        (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h)
    } else if back_ok {
        (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h)
    } else {
        f64::NAN
    }
}

// ---------------------------------------------------------------------------
// Ordered-bits helpers for bisection over f64

fn order_key(x: f64) -> i64 {
    let bits = x.to_bits() as i64;
    if bits < 0 {
        bits ^ i64::MAX
    } else {
        bits
    }
}

fn from_order_key(k: i64) -> f64 {
    let bits = if k < 0 { k ^ i64::MAX } else { k };
    f64::from_bits(bits as u64)
}

fn next_toward(x: f64, target: f64) -> f64 {
    let k = order_key(x);
    if target > x {
        from_order_key(k + 1)
    } else {
        from_order_key(k - 1)
    }
}

// ---------------------------------------------------------------------------
// Context

/// A validated generator with its zero and unit elements and tolerances.
/// Immutable once built.
#[derive(Clone, Debug)]
pub struct PseudoContext {
    spec: GeneratorSpec,
    zero_g: f64,
    one_g: f64,
    eps_inv: f64,
    eps_cmp: f64,
}

/// Builds a context, validating the generator and solving for `0_g`, `1_g`.
pub fn make_context(spec: GeneratorSpec, eps_inv: f64, eps_cmp: f64) -> Result<PseudoContext> {
    if !(eps_inv > 0.0 && eps_cmp > 0.0) {
        return Err(PseudoError::Parameter(format!(
            "tolerances must be positive (eps_inv = {eps_inv}, eps_cmp = {eps_cmp})"
        )));
    }
    let report = validate_spec(&spec, DEFAULT_VALIDATION_SAMPLES);
    if !report.all_passed() {
        let failed: Vec<String> = report.failures().map(|c| format!("{} ({})", c.name, c.detail)).collect();
        return Err(PseudoError::Validation(format!("generator `{}`: {}", spec.name, failed.join("; "))));
    }
    let mut ctx = PseudoContext {
        spec,
        zero_g: f64::NAN,
        one_g: f64::NAN,
        eps_inv,
        eps_cmp,
    };
    let solve = |ctx: &PseudoContext, y: f64| {
        ctx.eval_g_inv(y)
            .map_err(|e| PseudoError::Domain(format!("image {y} is not in the range of g: {e}")))
    };
    ctx.zero_g = solve(&ctx, 0.0)?;
    ctx.one_g = solve(&ctx, 1.0)?;
    Ok(ctx)
}

impl PseudoContext {
    /// Context with the default tolerances.
    pub fn new(spec: GeneratorSpec) -> Result<Self> {
        make_context(spec, DEFAULT_EPS_INV, DEFAULT_EPS_CMP)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        Self::new(GeneratorSpec::builtin(name)?)
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn direction(&self) -> Direction {
        self.spec.direction
    }

    pub fn domain(&self) -> Domain {
        self.spec.domain
    }

    pub fn zero_g(&self) -> f64 {
        self.zero_g
    }

    pub fn one_g(&self) -> f64 {
        self.one_g
    }

    pub fn eps_inv(&self) -> f64 {
        self.eps_inv
    }

    pub fn eps_cmp(&self) -> f64 {
        self.eps_cmp
    }

    /// Maps `x` into `D`, clamping values within `eps_cmp` of a closed end.
    pub fn clamp_to_domain(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(PseudoError::Numeric("argument of g is NaN".into()));
        }
        let d = self.spec.domain;
        if d.contains(x) {
            return Ok(x);
        }
        let tol = |end: f64| self.eps_cmp * end.abs().max(1.0);
        if x < d.lo && !d.lo_open && d.lo - x <= tol(d.lo) {
            return Ok(d.lo);
        }
        if x > d.hi && !d.hi_open && x - d.hi <= tol(d.hi) {
            return Ok(d.hi);
        }
        Err(PseudoError::Domain(format!(
            "{x} is outside the domain {d} of generator `{}`",
            self.spec.name
        )))
    }

    /// `g(x)`
    pub fn eval_g(&self, x: f64) -> Result<f64> {
        let x = self.clamp_to_domain(x)?;
        let y = (self.spec.g)(x);
        if !y.is_finite() {
            return Err(PseudoError::Numeric(format!("g({x}) = {y} for generator `{}`", self.spec.name)));
        }
        Ok(y)
    }

    /// `g⁻¹(y)`, closed form when available, otherwise bisection.
    pub fn eval_g_inv(&self, y: f64) -> Result<f64> {
        if y.is_nan() {
            return Err(PseudoError::Numeric("image value is NaN".into()));
        }
        if y < -self.eps_cmp {
            return Err(PseudoError::Range(format!("image {y:e} is negative and has no preimage")));
        }
        if y == f64::INFINITY {
            return Err(PseudoError::Range("image overflowed to +inf".into()));
        }
        let y = y.max(0.0);
        if let Some(g_inv) = &self.spec.g_inv {
            let x = g_inv(y);
            return self.clamp_to_domain(x).map_err(|_| {
                PseudoError::Range(format!(
                    "image {y:e} has no representable preimage under `{}` (got {x})",
                    self.spec.name
                ))
            });
        }
        self.solve_inverse(y)
    }

    /// `g'(x)`, closed form when available, otherwise a central difference
    /// with step `cbrt(ε)·max(1,|x|)` capped by the distance to the boundary.
    pub fn eval_g_prime(&self, x: f64) -> Result<f64> {
        let x = self.clamp_to_domain(x)?;
        let d = match &self.spec.g_prime {
            Some(gp) => gp(x),
            None => central_difference(self.spec.g.as_ref(), &self.spec.domain, x, f64::EPSILON.cbrt()),
        };
        if !d.is_finite() {
            return Err(PseudoError::Numeric(format!("g'({x}) = {d}")));
        }
        Ok(d)
    }

    /// Tolerance-aware image equality.
    pub fn images_equal(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.eps_cmp * a.abs().max(b.abs()).max(1.0)
    }

    fn solve_inverse(&self, y: f64) -> Result<f64> {
        let d = self.spec.domain;
        let g = &self.spec.g;
        let s = self.spec.direction.sign();
        let tol = self.eps_inv * y.abs().max(1.0);
        // h(x) = s·(g(x) − y) is increasing in x
        let h = |x: f64| s * (g(x) - y);

        let mut lo = if d.lo.is_finite() { d.lo } else { f64::MIN };
        let mut hi = if d.hi.is_finite() { d.hi } else { f64::MAX };
        let lo_excluded = d.lo_open && d.lo.is_finite();
        let hi_excluded = d.hi_open && d.hi.is_finite();
        let mut h_lo = h(lo);
        if h_lo.is_nan() && lo_excluded {
            lo = next_toward(lo, f64::INFINITY);
            h_lo = h(lo);
        }
        let mut h_hi = h(hi);
        if h_hi.is_nan() && hi_excluded {
            hi = next_toward(hi, f64::NEG_INFINITY);
            h_hi = h(hi);
        }
        // expression generators turn overflow into NaN; at an unbounded end that
        // is read as the image running off to infinity
        let nan_hi = h_hi.is_nan() && d.hi.is_infinite() && !h_lo.is_nan();
        let nan_lo = h_lo.is_nan() && d.lo.is_infinite() && !h_hi.is_nan();
        if nan_hi {
            h_hi = f64::INFINITY;
        }
        if nan_lo {
            h_lo = f64::NEG_INFINITY;
        }
        if h_lo.is_nan() || h_hi.is_nan() {
            return Err(PseudoError::Numeric("g is NaN at the inverse bracket".into()));
        }
        if h_lo > 0.0 || h_hi < 0.0 {
            return Err(PseudoError::Range(format!(
                "image {y:e} is outside the range of `{}`",
                self.spec.name
            )));
        }
        let mut best: Option<(f64, f64)> = None;
        fn consider(best: &mut Option<(f64, f64)>, x: f64, hv: f64, excluded: bool) {
            if !excluded && best.is_none_or(|(_, r)| hv.abs() < r) {
                *best = Some((x, hv.abs()));
            }
        }
        consider(&mut best, lo, h_lo, lo_excluded && lo == d.lo);
        consider(&mut best, hi, h_hi, hi_excluded && hi == d.hi);
        if let Some((x, r)) = best {
            if r <= tol {
                return Ok(x);
            }
        }

        let (mut k_lo, mut k_hi) = (order_key(lo), order_key(hi));
        for _ in 0..MAX_BISECTION_ITERS {
            if k_hi - k_lo <= 1 {
                break;
            }
            let k_mid = ((k_lo as i128 + k_hi as i128) / 2) as i64;
            let mid = from_order_key(k_mid);
            let hm = match h(mid) {
                v if !v.is_nan() => v,
                _ if nan_hi => f64::INFINITY,
                _ if nan_lo => f64::NEG_INFINITY,
                _ => return Err(PseudoError::Numeric(format!("g({mid}) is NaN"))),
            };
            consider(&mut best, mid, hm, false);
            if hm.abs() <= tol {
                return Ok(self.newton_polish(mid, y, from_order_key(k_lo), from_order_key(k_hi)));
            }
            if hm < 0.0 {
                k_lo = k_mid;
            } else {
                k_hi = k_mid;
            }
        }
        if k_hi - k_lo > 1 {
            return Err(PseudoError::Convergence {
                target: y,
                iterations: MAX_BISECTION_ITERS,
            });
        }
        // adjacent floats: the best achievable preimage
        best.map(|(x, _)| x)
            .ok_or_else(|| PseudoError::Range(format!("image {y:e} has no preimage inside the open domain")))
    }

    fn newton_polish(&self, x0: f64, y: f64, lo: f64, hi: f64) -> f64 {
        let Some(gp) = &self.spec.g_prime else {
            return x0;
        };
        let g = &self.spec.g;
        let mut x = x0;
        let mut r = (g(x) - y).abs();
        for _ in 0..3 {
            let slope = gp(x);
            if !(slope.is_finite() && slope != 0.0) {
                break;
            }
            let cand = x - (g(x) - y) / slope;
            if !(cand >= lo && cand <= hi && self.spec.domain.contains(cand)) {
                break;
            }
            let rc = (g(cand) - y).abs();
            if !(rc < r) {
                break;
            }
            x = cand;
            r = rc;
        }
        x
    }
}
