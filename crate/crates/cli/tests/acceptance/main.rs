//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod support;

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use pseudocalc::algebra::{cmp_g, odot, ominus, oplus, oslash, otimes, pseudo_exp, pseudo_ln, pseudo_pow, GOrdering};
use pseudocalc::calculus::{check_seminorm_connection, g_derivative, g_integral, oplus_derivative, oplus_integral};
use pseudocalc::inequalities::{
    gla_means, hermite_hadamard, hh_refined, hh_refined_curved, holder, holder_general, holder_interpolation, interpolation_exponent,
    minkowski, pseudo_curvature, young,
};
use pseudocalc::{Curvature, Direction, Expected, InequalityVerdict, PseudoValue, QuadratureConfig, TryFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{ctx, image_norm, img, interval, unit_interval, value, Family, Tally, GENERATORS};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn increasing(g: &str) -> bool {
    ctx(g).direction() == Direction::Increasing
}

/// The raw-order direction a theorem asserts: classical for increasing `g`,
/// flipped for decreasing `g`, flipped again for reversed parameter ranges.
fn asserted(g: &str, reversed: bool) -> Expected {
    if increasing(g) != reversed {
        Expected::LhsLeqRhs
    } else {
        Expected::LhsGeqRhs
    }
}

/// Verdict holds in the asserted direction with a sane margin.
fn verdict_ok(t: &mut Tally, v: &InequalityVerdict, g: &str, reversed: bool, what: &str) {
    let ok = v.holds && v.margin >= -1e-8 && v.expected == asserted(g, reversed);
    t.check(ok, || format!("{what} on {g}: {v:?}"));
}

// 1 -------------------------------------------------------------------------

fn identity_degeneration() -> Outcome {
    let start = Instant::now();
    let c = ctx("identity");
    let mut r = rng(1);
    let mut t = Tally::default();
    for i in 0..200 {
        let (x, y) = (r.gen_range(0.0..50.0), r.gen_range(0.0..50.0));
        match i % 6 {
            0 => t.close(
                || format!("{x} ⊕ {y}"),
                oplus(c, PseudoValue(x), PseudoValue(y)).unwrap().0,
                x + y,
                1e-9,
            ),
            1 => t.close(
                || format!("{x} ⊗ {y}"),
                otimes(c, PseudoValue(x), PseudoValue(y)).unwrap().0,
                x * y,
                1e-9,
            ),
            2 => {
                let a = r.gen_range(0.0..10.0);
                t.close(|| format!("{a} ⊙ {x}"), odot(c, a, PseudoValue(x)).unwrap().0, a * x, 1e-9)
            }
            3 => {
                let p = r.gen_range(0.01..4.0);
                let x = x / 10.0;
                t.close(
                    || format!("{x}^({p})"),
                    pseudo_pow(c, PseudoValue(x), p).unwrap().0,
                    x.powf(p),
                    1e-9,
                )
            }
            4 => {
                let (c0, c1, c2) = (r.gen_range(0.0..2.0), r.gen_range(0.0..2.0), r.gen_range(0.0..2.0));
                let (a, b) = (r.gen_range(0.0..2.0), r.gen_range(2.0..4.0));
                let f = move |x: f64| c0 + c1 * x + c2 * x * x;
                let want = c0 * (b - a) + c1 * (b * b - a * a) / 2.0 + c2 * (b.powi(3) - a.powi(3)) / 3.0;
                t.close(
                    || format!("∫⊕ poly on [{a}, {b}]"),
                    oplus_integral(c, &f, a, b, &cfg()).unwrap().0,
                    want,
                    1e-8,
                )
            }
            _ => {
                // D⊕ must be nonnegative to be representable under the identity
                let (k, s) = (r.gen_range(0.0..1.0), r.gen_range(0.5..2.0));
                let at = r.gen_range(0.5..3.0);
                let f = move |x: f64| s * (k * x).exp();
                let want = s * k * (k * at).exp();
                let got = oplus_derivative(c, &f, at, None).unwrap().0;
                t.check((got - want).abs() <= 1e-8 * want.abs().max(1.0), || {
                    format!("D⊕ at {at}: {got} vs {want}")
                });
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    t.check(secs < 5.0, || format!("took {secs:.2} s"));
    t.finish(&format!("{secs:.2} s"))
}

// 2 -------------------------------------------------------------------------

fn exponent_laws() -> Outcome {
    let mut r = rng(2);
    let mut t = Tally::default();
    for g in GENERATORS {
        let c = ctx(g);
        let range = if g == "neglog" { 0.5..1.4 } else { 0.05..5.0 };
        let pw = |x: PseudoValue, p: f64| pseudo_pow(c, x, p).unwrap();
        let mul = |x: PseudoValue, y: PseudoValue| otimes(c, x, y).unwrap();
        for _ in 0..500 {
            let (x, y) = (value(g, r.gen_range(range.clone())), value(g, r.gen_range(range.clone())));
            let (p, q) = (r.gen_range(0.01..=4.0), r.gen_range(0.01..=4.0));
            let alpha = r.gen_range(0.1..3.0);
            let laws = [
                ("(i)", mul(pw(x, p), pw(x, q)), pw(x, p + q)),
                ("(ii)", pw(pw(x, p), q), pw(x, p * q)),
                ("(iii)", pw(mul(x, y), p), mul(pw(x, p), pw(y, p))),
                ("(iv)", pw(oslash(c, x, y).unwrap(), p), oslash(c, pw(x, p), pw(y, p)).unwrap()),
                ("(v)", pw(odot(c, alpha, x).unwrap(), p), odot(c, alpha.powf(p), pw(x, p)).unwrap()),
            ];
            for (law, l, rhs) in laws {
                t.close(|| format!("law {law} on {g}, p={p}, q={q}"), img(g, l), img(g, rhs), 1e-8);
            }
        }
    }
    t.finish("")
}

// 3 -------------------------------------------------------------------------

fn exponential_properties() -> Outcome {
    let mut r = rng(3);
    let mut t = Tally::default();
    for g in ["power:2", "neglog"] {
        let c = ctx(g);
        let e = |x: PseudoValue| pseudo_exp(c, x).unwrap();
        let ln = |x: PseudoValue| pseudo_ln(c, x).unwrap();
        let exp_fn = |x: f64| pseudo_exp(c, PseudoValue(x)).unwrap().0;
        for _ in 0..50 {
            // (i)
            let x = if g == "neglog" {
                r.gen_range(0.2..0.95)
            } else {
                r.gen_range(0.1..1.5)
            };
            let d = g_derivative(c, &exp_fn, x, None).unwrap();
            t.close(|| format!("(i) on {g} at {x}"), img(g, d), img(g, e(PseudoValue(x))), 1e-5);
            // (ii), definite form
            let (a, b) = interval(g, &mut r);
            let lhs = g_integral(c, &exp_fn, a, b, &cfg()).unwrap();
            let (ea, eb) = (e(PseudoValue(a)), e(PseudoValue(b)));
            let rhs = if increasing(g) { ominus(c, eb, ea) } else { ominus(c, ea, eb) }.unwrap();
            t.close(|| format!("(ii) on {g} over [{a}, {b}]"), img(g, lhs), img(g, rhs), 1e-8);
            // (iii)
            let (x, y) = (value(g, r.gen_range(0.05..3.0)), value(g, r.gen_range(0.05..3.0)));
            t.close(
                || format!("(iii) on {g}"),
                img(g, otimes(c, e(x), e(y)).unwrap()),
                img(g, e(oplus(c, x, y).unwrap())),
                1e-8,
            );
            // (iv), (vi) need images ≥ 1
            let (u, v) = (value(g, r.gen_range(1.0..20.0)), value(g, r.gen_range(1.0..20.0)));
            t.close(|| format!("(iv) on {g}"), img(g, e(ln(u))), img(g, u), 1e-8);
            t.close(|| format!("(v) on {g}"), img(g, ln(e(x))), img(g, x), 1e-8);
            let lhs = ln(otimes(c, u, v).unwrap());
            t.close(
                || format!("(vi) on {g}"),
                img(g, lhs),
                img(g, oplus(c, ln(u), ln(v)).unwrap()),
                1e-8,
            );
        }
    }
    t.finish("")
}

// 4 -------------------------------------------------------------------------

fn integral_properties() -> Outcome {
    let mut r = rng(4);
    let mut t = Tally::default();
    let mut violations = 0;
    for g in GENERATORS {
        let c = ctx(g);
        let gi = |f: &dyn pseudocalc::RealFunction, a, b| g_integral(c, f, a, b, &cfg()).unwrap();
        for _ in 0..100 {
            let (f, h) = (Family::random(g, &mut r), Family::random(g, &mut r));
            let (a, b) = interval(g, &mut r);
            let (fr, hr) = (f.raw(g), h.raw(g));
            let (if_, ih) = (gi(&fr, a, b), gi(&hr, a, b));
            // (a)
            let sum = TryFn(|x: f64| c.eval_g_inv(f.image(x) + h.image(x)));
            t.close(
                || format!("(a) on {g}"),
                img(g, gi(&sum, a, b)),
                img(g, oplus(c, if_, ih).unwrap()),
                1e-7,
            );
            // (b)
            let lam = value(g, r.gen_range(0.2..3.0));
            let prod = TryFn(|x: f64| Ok(otimes(c, lam, value(g, f.image(x)))?.0));
            t.close(
                || format!("(b) on {g}"),
                img(g, gi(&prod, a, b)),
                img(g, otimes(c, lam, if_).unwrap()),
                1e-7,
            );
            // (c)
            let s = r.gen_range(0.05..3.0);
            let scaled = TryFn(|x: f64| Ok(odot(c, s, value(g, f.image(x)))?.0));
            t.close(
                || format!("(c) on {g}"),
                img(g, gi(&scaled, a, b)),
                img(g, odot(c, s, if_).unwrap()),
                1e-7,
            );
            // (d) against the pointwise ≤_g-larger function
            let upper = TryFn(|x: f64| {
                let (u, v) = (value(g, f.image(x)), value(g, h.image(x)));
                Ok(if cmp_g(c, u, v)? == GOrdering::LessG { v.0 } else { u.0 })
            });
            let big = gi(&upper, a, b);
            for small in [if_, ih] {
                if cmp_g(c, small, big).unwrap() == GOrdering::GreaterG {
                    violations += 1;
                }
            }
        }
    }
    t.check(violations == 0, || format!("{violations} order violations in (d)"));
    t.finish("0 order violations")
}

// 5 -------------------------------------------------------------------------

fn seminorm_connection() -> Outcome {
    let mut r = rng(5);
    let mut t = Tally::default();
    for g in GENERATORS {
        for _ in 0..100 {
            let f = Family::random(g, &mut r);
            let (a, b) = unit_interval(g, &mut r);
            let p = r.gen_range(0.05..3.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
            let rep = check_seminorm_connection(ctx(g), &f.raw(g), p, a, b, &cfg()).unwrap();
            t.close(|| format!("{g} p={p}: paths"), rep.seminorm_img, rep.classical_img, 1e-7);
            let oracle = image_norm(g, |x| f.image(x), p, a, b);
            t.close(|| format!("{g} p={p}: oracle"), rep.seminorm_img, oracle, 1e-7);
        }
    }
    t.finish("")
}

// 6 -------------------------------------------------------------------------

fn young_verdicts() -> Outcome {
    let mut r = rng(6);
    let mut t = Tally::default();
    let mut worst_eq: f64 = 0.0;
    for g in ["power:2", "neglog"] {
        for p in [1.25, 2.0, 3.0, 0.5, -1.0] {
            for _ in 0..25 {
                let (ya, yb) = (r.gen_range(0.2..3.0), r.gen_range(0.2..3.0));
                let v = young(ctx(g), value(g, ya), value(g, yb), p).unwrap();
                verdict_ok(&mut t, &v, g, p < 1.0, &format!("young p={p}"));
            }
            let q = p / (p - 1.0);
            for ya in [0.5, 1.0, 1.7] {
                let yb = f64::powf(ya, p / q);
                let v = young(ctx(g), value(g, ya), value(g, yb), p).unwrap();
                worst_eq = worst_eq.max(v.margin.abs());
                t.check(v.margin.abs() <= 1e-6, || format!("equality on {g} p={p}: {v:?}"));
            }
        }
    }
    t.finish(&format!("worst equality margin {worst_eq:.1e}"))
}

// 7 -------------------------------------------------------------------------

fn image_check(t: &mut Tally, v: &InequalityVerdict, lhs: f64, rhs: f64, what: &str) {
    t.close(|| format!("{what} lhs"), v.lhs_img, lhs, 1e-7);
    t.close(|| format!("{what} rhs"), v.rhs_img, rhs, 1e-7);
}

fn holder_family() -> Outcome {
    let mut r = rng(7);
    let mut t = Tally::default();
    for g in GENERATORS {
        let c = ctx(g);
        for _ in 0..20 {
            let (f, h) = (Family::random(g, &mut r), Family::random(g, &mut r));
            let (a, b) = interval(g, &mut r);
            let (fr, hr) = (f.raw(g), h.raw(g));
            let nf = |p: f64| image_norm(g, |x| f.image(x), p, a, b);
            let nh = |p: f64| image_norm(g, |x| h.image(x), p, a, b);
            let nfh = |p: f64| image_norm(g, |x| f.image(x) * h.image(x), p, a, b);
            for p in [1.5, 2.0, 4.0, 0.3, 0.5, 0.8] {
                let what = format!("holder p={p} on {g}");
                let v = holder(c, &fr, &hr, p, a, b, &cfg()).unwrap();
                verdict_ok(&mut t, &v, g, p < 1.0, &what);
                image_check(&mut t, &v, nfh(1.0), nf(p) * nh(p / (p - 1.0)), &what);
            }
            for (p, q, rr) in [(2.0, 2.0, 1.0), (3.0, 6.0, 2.0), (4.0, 4.0, 2.0)] {
                let what = format!("holder_general ({p},{q},{rr}) on {g}");
                let v = holder_general(c, &fr, &hr, p, q, rr, a, b, &cfg()).unwrap();
                verdict_ok(&mut t, &v, g, false, &what);
                image_check(&mut t, &v, nfh(rr), nf(p) * nh(q), &what);
            }
            for (s, p, q) in [(0.5, 2.0, 4.0), (0.25, 1.5, 3.0), (0.75, 2.0, 6.0)] {
                let rr = interpolation_exponent(s, p, q);
                let what = format!("holder_interpolation ({s},{p},{q}) on {g}");
                let v = holder_interpolation(c, &fr, s, p, q, rr, a, b, &cfg()).unwrap();
                verdict_ok(&mut t, &v, g, false, &what);
                image_check(&mut t, &v, nf(rr), nf(p).powf(s) * nf(q).powf(1.0 - s), &what);
            }
        }
    }
    t.finish("")
}

// 8 -------------------------------------------------------------------------

fn minkowski_family() -> Outcome {
    let mut r = rng(8);
    let mut t = Tally::default();
    let mut worst_eq: f64 = 0.0;
    for g in GENERATORS {
        let c = ctx(g);
        for _ in 0..20 {
            let (f, h) = (Family::random(g, &mut r), Family::random(g, &mut r));
            let (a, b) = interval(g, &mut r);
            let lam = r.gen_range(0.2..3.0);
            let scaled = TryFn(|x: f64| Ok(odot(c, lam, value(g, f.image(x)))?.0));
            for p in [1.5, 2.0, 3.0, 0.25, 0.5] {
                let what = format!("minkowski p={p} on {g}");
                let v = minkowski(c, &f.raw(g), &h.raw(g), p, a, b, &cfg()).unwrap();
                verdict_ok(&mut t, &v, g, p < 1.0, &what);
                let n = |k: &dyn Fn(f64) -> f64| image_norm(g, k, p, a, b);
                image_check(
                    &mut t,
                    &v,
                    n(&|x| f.image(x) + h.image(x)),
                    n(&|x| f.image(x)) + n(&|x| h.image(x)),
                    &what,
                );
                let e = minkowski(c, &f.raw(g), &scaled, p, a, b, &cfg()).unwrap();
                worst_eq = worst_eq.max(e.margin.abs());
                t.check(e.margin.abs() <= 1e-6, || format!("equality {what}: {e:?}"));
            }
        }
    }
    t.finish(&format!("worst equality margin {worst_eq:.1e}"))
}

// 9 -------------------------------------------------------------------------

fn hermite_hadamard_chain() -> Outcome {
    let mut r = rng(9);
    let mut t = Tally::default();
    for g in GENERATORS {
        let c = ctx(g);
        let (k0, k1) = (r.gen_range(0.5..2.0), r.gen_range(-1.0..1.0));
        let exp_family = TryFn(move |x: f64| c.eval_g_inv(k0 * (k1 * x).exp()));
        let functions: [(&str, &dyn pseudocalc::RealFunction); 3] = [
            ("x^2", &|x: f64| x * x),
            ("x^4", &|x: f64| x.powi(4)),
            ("exp-composite", &exp_family),
        ];
        // image-convex data is pseudo-convex for increasing g and pseudo-concave for decreasing g
        let curvature = if increasing(g) { Curvature::Convex } else { Curvature::Concave };
        for (name, f) in functions {
            for _ in 0..5 {
                let (a, b) = interval(g, &mut r);
                let shape = pseudo_curvature(c, f, a, b, 12, 7, curvature).unwrap();
                t.check(shape.is_pseudo_convex, || {
                    format!("{name} on {g} over [{a}, {b}] not {curvature:?}: {shape:?}")
                });
                for k in 0..=10 {
                    let lam = k as f64 / 10.0;
                    let chain = hh_refined_curved(c, f, a, b, lam, curvature, &cfg()).unwrap();
                    t.check(chain.holds(), || format!("{name} on {g} over [{a}, {b}] λ={lam}: {chain:?}"));
                }
            }
        }
    }
    let c = ctx("identity");
    let sq = |x: f64| x * x;
    let hh = hermite_hadamard(c, &sq, 0.0, 1.0, &cfg()).unwrap();
    t.check(hh.holds(), || format!("classical chain: {hh:?}"));
    t.close(|| "f((a+b)/2)".into(), hh.left.0, 0.25, 1e-10);
    t.close(|| "mean value".into(), hh.mid.0, 1.0 / 3.0, 1e-9);
    t.close(|| "endpoint average".into(), hh.right.0, 0.5, 1e-10);
    let refined = hh_refined(c, &sq, 0.0, 1.0, 0.5, &cfg()).unwrap();
    t.close(|| "ℓ(1/2)".into(), refined.refined_lower.unwrap().0, 0.3125, 1e-10);
    t.close(|| "L(1/2)".into(), refined.refined_upper.unwrap().0, 0.375, 1e-10);
    t.finish("")
}

// 10 ------------------------------------------------------------------------

fn gla_corollary() -> Outcome {
    let mut r = rng(10);
    let mut t = Tally::default();
    let norm = |l: f64, h: f64| (h - l) / 1f64.max(l.abs()).max(h.abs());
    let c = ctx("identity");
    for _ in 0..100 {
        let (u, v) = (r.gen_range(1.0..100.0), r.gen_range(1.0..100.0));
        let m = gla_means(c, PseudoValue(u), PseudoValue(v)).unwrap();
        let geo = (u * v).sqrt();
        let log = (u - v) / (u.ln() - v.ln());
        let ari = 0.5 * (u + v);
        t.check(m.verdict().holds, || format!("identity ({u}, {v}) fails"));
        let margins = [norm(geo, log), norm(log, ari)];
        for (link, want) in m.verdicts.iter().zip(margins) {
            t.check((link.margin - want).abs() <= 1e-10, || {
                format!("identity ({u}, {v}): margin {} vs {want}", link.margin)
            });
        }
    }
    let g = "power:2";
    let c = ctx(g);
    for _ in 0..100 {
        let (yu, yv) = (r.gen_range(1.0..100.0), r.gen_range(1.0..100.0));
        let m = gla_means(c, value(g, yu), value(g, yv)).unwrap();
        t.check(m.verdict().holds, || format!("power:2 ({yu}, {yv}) fails"));
        t.close(|| "geometric".into(), img(g, m.geometric), (yu * yv).sqrt(), 1e-7);
        t.close(
            || "logarithmic".into(),
            img(g, m.logarithmic),
            (yu - yv) / (yu.ln() - yv.ln()),
            1e-7,
        );
        t.close(|| "arithmetic".into(), img(g, m.arithmetic), 0.5 * (yu + yv), 1e-7);
    }
    t.finish("")
}

// 11 ------------------------------------------------------------------------

fn direction_flip() -> Outcome {
    let mut r = rng(11);
    let mut t = Tally::default();
    let (up, down) = ("power:2", "neglog");
    let (a, b) = (0.2, 0.9);
    let pair = |t: &mut Tally, what: String, run: &dyn Fn(&'static str) -> InequalityVerdict| {
        let (vu, vd) = (run(up), run(down));
        let ok = vu.holds && vd.holds && vu.expected == vd.expected.flipped() && vu.expected != vd.expected;
        t.check(ok, || format!("{what}: {vu:?} / {vd:?}"));
    };
    for _ in 0..10 {
        let (ya, yb) = (r.gen_range(0.2..3.0), r.gen_range(0.2..3.0));
        for p in [1.25, 2.0, 3.0, 0.5, -1.0] {
            pair(&mut t, format!("young p={p}"), &|g| {
                young(ctx(g), value(g, ya), value(g, yb), p).unwrap()
            });
        }
        let (f, h) = (Family::random(down, &mut r), Family::random(down, &mut r));
        for p in [1.5, 2.0, 4.0, 0.3, 0.5, 0.8] {
            pair(&mut t, format!("holder p={p}"), &|g| {
                holder(ctx(g), &f.raw(g), &h.raw(g), p, a, b, &cfg()).unwrap()
            });
        }
        for (p, q, rr) in [(2.0, 2.0, 1.0), (3.0, 6.0, 2.0), (4.0, 4.0, 2.0)] {
            pair(&mut t, format!("holder_general ({p},{q},{rr})"), &|g| {
                holder_general(ctx(g), &f.raw(g), &h.raw(g), p, q, rr, a, b, &cfg()).unwrap()
            });
        }
        for (s, p, q) in [(0.5, 2.0, 4.0), (0.25, 1.5, 3.0), (0.75, 2.0, 6.0)] {
            let rr = interpolation_exponent(s, p, q);
            pair(&mut t, format!("holder_interpolation ({s},{p},{q})"), &|g| {
                holder_interpolation(ctx(g), &f.raw(g), s, p, q, rr, a, b, &cfg()).unwrap()
            });
        }
        for p in [1.5, 2.0, 3.0, 0.25, 0.5] {
            pair(&mut t, format!("minkowski p={p}"), &|g| {
                minkowski(ctx(g), &f.raw(g), &h.raw(g), p, a, b, &cfg()).unwrap()
            });
        }
    }
    t.finish("0 exceptions")
}

// 12 ------------------------------------------------------------------------

fn cli_determinism() -> Outcome {
    let tests = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let runs: [(&str, &[&str]); 3] = [
        (
            "check_standard.csv",
            &["--format", "csv", "check", "--suite", "fixtures/standard_suite.json"],
        ),
        (
            "check_standard.json",
            &["--format", "json", "check", "--suite", "fixtures/standard_suite.json"],
        ),
        (
            "sweep_young.csv",
            &[
                "sweep",
                "--g",
                "identity",
                "--inequality",
                "young",
                "--param",
                "a=1.5",
                "--param",
                "b=2",
                "--range",
                "p=1.1:4:10",
            ],
        ),
    ];
    let mut t = Tally::default();
    for (golden, args) in runs {
        let out = || {
            Command::new(env!("CARGO_BIN_EXE_pseudocalc"))
                .args(args)
                .current_dir(&tests)
                .env_remove("PSEUDOCALC_QUAD_TOL")
                .output()
                .expect("binary runs")
        };
        let (first, second) = (out(), out());
        t.check(first.status.success(), || format!("{golden}: exit {:?}", first.status.code()));
        t.check(first.stdout == second.stdout, || format!("{golden}: runs differ"));
        let want = std::fs::read(tests.join("golden").join(golden)).unwrap_or_default();
        t.check(first.stdout == want, || format!("{golden}: differs from golden file"));
    }
    t.finish("")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("identity-generator degeneration", identity_degeneration),
        ("exponent laws", exponent_laws),
        ("exponential and logarithm properties", exponential_properties),
        ("integral properties", integral_properties),
        ("seminorm connection", seminorm_connection),
        ("Young verdicts", young_verdicts),
        ("Hölder family", holder_family),
        ("Minkowski", minkowski_family),
        ("Hermite-Hadamard and refinement", hermite_hadamard_chain),
        ("geometric-logarithmic-arithmetic means", gla_corollary),
        ("direction flip", direction_flip),
        ("CLI determinism", cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
