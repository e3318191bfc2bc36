use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use pseudocalc::{GeneratorSpec, PseudoContext, PseudoError, QuadratureConfig};

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn compute(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    /// Maps library errors: bad configuration exits 2, the rest exit 1.
    pub fn from_error(e: &PseudoError) -> Self {
        match e {
            PseudoError::Config(_) | PseudoError::Parse(_) | PseudoError::Validation(_) => Failure::config(e.to_string()),
            _ => Failure::compute(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    /// Built-in generator: identity, power:<λ> or neglog
    #[arg(long, visible_alias = "g", conflicts_with = "generator_file")]
    pub generator: Option<String>,

    /// JSON generator definition
    #[arg(long)]
    pub generator_file: Option<PathBuf>,
}

impl GeneratorArgs {
    pub fn is_set(&self) -> bool {
        self.generator.is_some() || self.generator_file.is_some()
    }

    pub fn spec(&self) -> CliResult<GeneratorSpec> {
        match (&self.generator, &self.generator_file) {
            (Some(name), None) => GeneratorSpec::builtin(name).map_err(|e| Failure::config(e.to_string())),
            (None, Some(path)) => {
                let text = fs::read_to_string(path).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
                GeneratorSpec::from_json(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))
            }
            (None, None) => Err(Failure::config("one of --generator or --generator-file is required")),
            (Some(_), Some(_)) => Err(Failure::config("--generator and --generator-file are exclusive")),
        }
    }

    pub fn context(&self) -> CliResult<PseudoContext> {
        PseudoContext::new(self.spec()?).map_err(|e| Failure::config(e.to_string()))
    }

    pub fn optional_context(&self) -> CliResult<Option<PseudoContext>> {
        if self.is_set() {
            self.context().map(Some)
        } else {
            Ok(None)
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Seed for randomized grids
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Relative quadrature tolerance
    #[arg(long, global = true, env = "PSEUDOCALC_QUAD_TOL")]
    pub rel_tol: Option<f64>,

    /// Absolute quadrature tolerance
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Maximum bisection depth of the adaptive quadrature
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

impl GlobalArgs {
    pub fn quadrature(&self) -> CliResult<QuadratureConfig> {
        let mut cfg = QuadratureConfig::default();
        if let Some(v) = self.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            cfg.abs_tol = v;
        }
        if let Some(v) = self.max_depth {
            cfg.max_depth = v;
        }
        cfg.validate().map_err(|e| Failure::config(e.to_string()))?;
        Ok(cfg)
    }
}

/// Parses `name=value`.
pub fn parse_assignment(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v: f64 = value.trim().parse().map_err(|_| format!("`{value}` is not a number"))?;
    Ok((name.trim().to_string(), v))
}

/// `name=lo:hi:steps`, expanded to `steps` evenly spaced values.
#[derive(Debug, Clone, PartialEq)]
pub struct Range {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let n = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == n {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    let (name, spec) = s.split_once('=').ok_or_else(|| format!("expected name=lo:hi:steps, got `{s}`"))?;
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(format!("expected lo:hi:steps, got `{spec}`"));
    };
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    let steps: usize = steps.trim().parse().map_err(|_| format!("bad step count `{steps}`"))?;
    if steps == 0 {
        return Err("step count must be at least 1".into());
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("range needs lo < hi, got {lo}:{hi}"));
    }
    Ok(Range {
        name: name.trim().to_string(),
        lo,
        hi,
        steps,
    })
}
