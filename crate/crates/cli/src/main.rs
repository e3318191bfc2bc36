mod config;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pseudocalc::algebra::{self, GOrdering};
use pseudocalc::calculus::{self, IntegralFlavor};
use pseudocalc::inequalities::{check_suite, GridAxis, Suite, SuiteEntry, SuiteReport, INEQUALITIES};
use pseudocalc::{validate_spec, Curvature, Expr, PseudoContext, PseudoError, PseudoValue};
use serde::Serialize;

use config::{parse_assignment, parse_range, CliResult, Failure, Format, GeneratorArgs, GlobalArgs, Range};

#[derive(Parser, Debug)]
#[command(name = "pseudocalc", version, about = "Generator-based pseudo-analysis calculator")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a generator is strictly monotone onto [0, ∞)
    Validate {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Number of sample points
        #[arg(long, default_value_t = pseudocalc::generator::DEFAULT_VALIDATION_SAMPLES)]
        samples: usize,
    },
    /// Apply one pseudo-operation
    Eval {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(value_enum)]
        op: EvalOp,
        /// Operands (raw values; the scalar first for `scale`, the exponent second for `pow`)
        #[arg(required = true, num_args = 1..=2, allow_negative_numbers = true)]
        args: Vec<f64>,
    },
    /// Pseudo-integral of f over [from, to]
    Integrate {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Integrand, as an expression in x
        #[arg(long)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, value_enum, default_value_t = Flavor::G)]
        flavor: Flavor,
        /// Weight for the gh flavor
        #[arg(long)]
        h: Option<String>,
    },
    /// Pseudo-derivative of f at a point
    Derivative {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Function, as an expression in x
        #[arg(long)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
        #[arg(long, value_enum, default_value_t = DerivativeFlavor::G)]
        flavor: DerivativeFlavor,
        /// Finite-difference step
        #[arg(long)]
        step: Option<f64>,
    },
    /// Run an inequality suite or a single inline check
    Check {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Suite JSON file
        #[arg(long, conflicts_with = "inequality")]
        suite: Option<PathBuf>,
        #[command(flatten)]
        inline: InlineArgs,
    },
    /// Evaluate an inequality over parameter ranges as CSV
    Sweep {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[command(flatten)]
        inline: InlineArgs,
        /// name=lo:hi:steps, repeatable
        #[arg(long = "range", value_parser = parse_range, required = true)]
        ranges: Vec<Range>,
    },
}

#[derive(Args, Debug, Clone)]
struct InlineArgs {
    /// Inequality name
    #[arg(long)]
    inequality: Option<String>,
    /// name=value, repeatable
    #[arg(long = "param", value_parser = parse_assignment, allow_hyphen_values = true)]
    params: Vec<(String, f64)>,
    /// First function, as an expression in x
    #[arg(long)]
    f: Option<String>,
    /// Second function, as an expression in x
    #[arg(long)]
    h: Option<String>,
    /// Left end of the interval
    #[arg(long, allow_negative_numbers = true, requires = "to")]
    from: Option<f64>,
    /// Right end of the interval
    #[arg(long, allow_negative_numbers = true, requires = "from")]
    to: Option<f64>,
    /// Shape assumed by the Hermite-Hadamard checks
    #[arg(long, value_enum, default_value_t = CurvatureArg::Convex)]
    curvature: CurvatureArg,
}

impl InlineArgs {
    fn entry(&self, generator: &GeneratorArgs) -> CliResult<SuiteEntry> {
        let name = self
            .inequality
            .clone()
            .ok_or_else(|| Failure::config("give --suite or --inequality"))?;
        if !INEQUALITIES.contains(&name.as_str()) {
            return Err(Failure::config(format!(
                "unknown inequality `{name}` (known: {})",
                INEQUALITIES.join(", ")
            )));
        }
        let mut e = SuiteEntry::new(name);
        e.params = self.params.iter().cloned().collect();
        for (key, src) in [("f", &self.f), ("h", &self.h)] {
            if let Some(s) = src {
                e.functions.insert(key.to_string(), s.clone());
            }
        }
        e.interval = self.from.zip(self.to).map(|(a, b)| [a, b]);
        e.curvature = match self.curvature {
            CurvatureArg::Convex => Curvature::Convex,
            CurvatureArg::Concave => Curvature::Concave,
        };
        if !generator.is_set() {
            return Err(Failure::config("one of --generator or --generator-file is required"));
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CurvatureArg {
    Convex,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    G,
    Oplus,
    Gh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DerivativeFlavor {
    G,
    Oplus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum EvalOp {
    Add,
    Sub,
    Mul,
    Div,
    Scale,
    Pow,
    Abs,
    Exp,
    Ln,
    Cmp,
    G,
    Ginv,
}

impl EvalOp {
    fn arity(self) -> usize {
        match self {
            EvalOp::Add | EvalOp::Sub | EvalOp::Mul | EvalOp::Div | EvalOp::Scale | EvalOp::Pow | EvalOp::Cmp => 2,
            _ => 1,
        }
    }
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::compute(format!("write failed: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::compute(e.to_string()))
}

fn cmd_validate(global: &GlobalArgs, generator: &GeneratorArgs, samples: usize) -> CliResult<u8> {
    let spec = generator.spec()?;
    let report = validate_spec(&spec, samples);
    let text = match global.format {
        Format::Json => to_json(&report)?,
        _ => {
            let mut s = format!("generator {} ({}, domain {})\n", report.generator, report.direction, spec.domain);
            for c in &report.checks {
                s += &format!(
                    "  {:<24} {}  max violation {:.3e}  {}\n",
                    c.name,
                    if c.passed { "ok  " } else { "FAIL" },
                    c.max_violation,
                    c.detail
                );
            }
            s += if report.all_passed() { "valid\n" } else { "invalid\n" };
            s
        }
    };
    emit(&text)?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

#[derive(Serialize)]
struct EvalOutput {
    op: EvalOp,
    args: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    image: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ordering: Option<GOrdering>,
}

fn cmd_eval(global: &GlobalArgs, generator: &GeneratorArgs, op: EvalOp, args: &[f64]) -> CliResult<u8> {
    let ctx = generator.context()?;
    if args.len() != op.arity() {
        return Err(Failure::config(format!(
            "`{op:?}` takes {} operand(s), got {}",
            op.arity(),
            args.len()
        )));
    }
    let x = PseudoValue(args[0]);
    let y = args.get(1).copied().map(PseudoValue);
    let compute = || -> pseudocalc::Result<EvalOutput> {
        let mut out = EvalOutput {
            op,
            args: args.to_vec(),
            raw: None,
            image: None,
            ordering: None,
        };
        let value = match op {
            EvalOp::Add => algebra::oplus(&ctx, x, y.unwrap())?,
            EvalOp::Sub => algebra::ominus(&ctx, x, y.unwrap())?,
            EvalOp::Mul => algebra::otimes(&ctx, x, y.unwrap())?,
            EvalOp::Div => algebra::oslash(&ctx, x, y.unwrap())?,
            EvalOp::Scale => algebra::odot(&ctx, args[0], y.unwrap())?,
            EvalOp::Pow => algebra::pseudo_pow(&ctx, x, args[1])?,
            EvalOp::Abs => algebra::pseudo_abs(&ctx, x)?,
            EvalOp::Exp => algebra::pseudo_exp(&ctx, x)?,
            EvalOp::Ln => algebra::pseudo_ln(&ctx, x)?,
            EvalOp::Cmp => {
                out.ordering = Some(algebra::cmp_g(&ctx, x, y.unwrap())?);
                return Ok(out);
            }
            EvalOp::G => {
                out.image = Some(ctx.eval_g(args[0])?);
                return Ok(out);
            }
            EvalOp::Ginv => PseudoValue(ctx.eval_g_inv(args[0])?),
        };
        out.raw = Some(value.0);
        out.image = Some(ctx.eval_g(value.0)?);
        Ok(out)
    };
    let out = compute().map_err(|e| Failure::from_error(&e))?;
    let text = match global.format {
        Format::Json => to_json(&out)?,
        _ => {
            let mut s = String::new();
            if let Some(o) = out.ordering {
                s += &format!("ordering {o:?}\n");
            }
            if let Some(r) = out.raw {
                s += &format!("raw   {r}\n");
            }
            if let Some(i) = out.image {
                s += &format!("image {i}\n");
            }
            s
        }
    };
    emit(&text)?;
    Ok(0)
}

fn parse_expr(label: &str, src: &str) -> CliResult<Expr> {
    src.parse::<Expr>()
        .map_err(|e| Failure::compute(format!("--{label}: {e}\n  {src}\n  {:>width$}", "^", width = e.position + 1)))
}

fn quadrature_failure(e: &PseudoError) -> Failure {
    match e {
        PseudoError::DepthExceeded { .. } | PseudoError::Convergence { .. } => Failure {
            code: 3,
            message: e.to_string(),
        },
        _ => Failure::from_error(e),
    }
}

#[derive(Serialize)]
struct IntegralOutput {
    generator: String,
    flavor: &'static str,
    from: f64,
    to: f64,
    raw: f64,
    image: f64,
    error_estimate: f64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_integrate(
    global: &GlobalArgs,
    generator: &GeneratorArgs,
    f: &str,
    from: f64,
    to: f64,
    flavor: Flavor,
    h: Option<&str>,
) -> CliResult<u8> {
    let cfg = global.quadrature()?;
    let ctx = generator.context()?;
    let f = parse_expr("f", f)?;
    let report = match flavor {
        Flavor::G => calculus::pseudo_integral(&ctx, &f, IntegralFlavor::G, from, to, &cfg),
        Flavor::Oplus => calculus::pseudo_integral(&ctx, &f, IntegralFlavor::Oplus, from, to, &cfg),
        Flavor::Gh => {
            let src = h.ok_or_else(|| Failure::config("--flavor gh needs --h"))?;
            let h = parse_expr("h", src)?;
            calculus::weighted_integral(&ctx, &f, &h, from, to, &cfg)
        }
    }
    .map_err(|e| quadrature_failure(&e))?;
    let out = IntegralOutput {
        generator: ctx.name().to_string(),
        flavor: match flavor {
            Flavor::G => "g",
            Flavor::Oplus => "oplus",
            Flavor::Gh => "gh",
        },
        from,
        to,
        raw: report.raw,
        image: report.image,
        error_estimate: report.error_estimate,
    };
    let text = match global.format {
        Format::Json => to_json(&out)?,
        _ => format!(
            "raw      {:.6}  ({})\nimage    {:.6}  ({})\nerror    {:.3e}\n",
            out.raw, out.raw, out.image, out.image, out.error_estimate
        ),
    };
    emit(&text)?;
    Ok(0)
}

#[derive(Serialize)]
struct DerivativeOutput {
    generator: String,
    flavor: &'static str,
    at: f64,
    raw: f64,
    image: f64,
}

fn cmd_derivative(
    global: &GlobalArgs,
    generator: &GeneratorArgs,
    f: &str,
    at: f64,
    flavor: DerivativeFlavor,
    step: Option<f64>,
) -> CliResult<u8> {
    let ctx = generator.context()?;
    let f = parse_expr("f", f)?;
    let value = match flavor {
        DerivativeFlavor::G => calculus::g_derivative(&ctx, &f, at, step),
        DerivativeFlavor::Oplus => calculus::oplus_derivative(&ctx, &f, at, step),
    }
    .map_err(|e| Failure::from_error(&e))?;
    let image = ctx.eval_g(value.0).map_err(|e| Failure::from_error(&e))?;
    let out = DerivativeOutput {
        generator: ctx.name().to_string(),
        flavor: if flavor == DerivativeFlavor::G { "g" } else { "oplus" },
        at,
        raw: value.0,
        image,
    };
    let text = match global.format {
        Format::Json => to_json(&out)?,
        _ => format!("raw      {}\nimage    {}\n", out.raw, out.image),
    };
    emit(&text)?;
    Ok(0)
}

fn run_suite(global: &GlobalArgs, generator: &GeneratorArgs, suite: &Suite) -> CliResult<SuiteReport> {
    let cfg = global.quadrature()?;
    let ctx: Option<PseudoContext> = generator.optional_context()?;
    check_suite(suite, ctx.as_ref(), &cfg, global.seed).map_err(|e| Failure::config(e.to_string()))
}

fn cmd_check(global: &GlobalArgs, generator: &GeneratorArgs, suite_path: Option<&PathBuf>, inline: &InlineArgs) -> CliResult<u8> {
    let suite = match suite_path {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
            Suite::from_json(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?
        }
        None => Suite::new(vec![inline.entry(generator)?]),
    };
    let report = run_suite(global, generator, &suite)?;
    let mut buf = Vec::new();
    match global.format {
        Format::Human => report::write_human(&mut buf, &report)?,
        Format::Json => report::write_json(&mut buf, &report)?,
        Format::Csv => report::write_csv(&mut buf, &report, false)?,
    }
    emit(&String::from_utf8_lossy(&buf))?;
    Ok(if report.all_hold() { 0 } else { 1 })
}

fn cmd_sweep(global: &GlobalArgs, generator: &GeneratorArgs, inline: &InlineArgs, ranges: &[Range]) -> CliResult<u8> {
    let mut entry = inline.entry(generator)?;
    let mut grid = BTreeMap::new();
    for r in ranges {
        if grid.insert(r.name.clone(), GridAxis::Values(r.values())).is_some() {
            return Err(Failure::config(format!("range `{}` given twice", r.name)));
        }
    }
    entry.grid = Some(grid);
    let report = run_suite(global, generator, &Suite::new(vec![entry]))?;
    let mut buf = Vec::new();
    match global.format {
        Format::Json => report::write_json(&mut buf, &report)?,
        _ => report::write_csv(&mut buf, &report, true)?,
    }
    emit(&String::from_utf8_lossy(&buf))?;
    Ok(0)
}

fn run(cli: &Cli) -> CliResult<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { generator, samples } => cmd_validate(g, generator, *samples),
        Command::Eval { generator, op, args } => cmd_eval(g, generator, *op, args),
        Command::Integrate {
            generator,
            f,
            from,
            to,
            flavor,
            h,
        } => cmd_integrate(g, generator, f, *from, *to, *flavor, h.as_deref()),
        Command::Derivative {
            generator,
            f,
            at,
            flavor,
            step,
        } => cmd_derivative(g, generator, f, *at, *flavor, *step),
        Command::Check { generator, suite, inline } => cmd_check(g, generator, suite.as_ref(), inline),
        Command::Sweep { generator, inline, ranges } => cmd_sweep(g, generator, inline, ranges),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
