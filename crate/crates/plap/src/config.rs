//! Run configuration: command-line flags over a `key=value` file over the
//! `PLAP_TOL` environment variable over built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;

use crate::CliError;

pub const TOL_ENV: &str = "PLAP_TOL";
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    Talenti,
    EqualitySubcritical,
    ConePoint,
    Atomic,
    Eigen,
    OrliczEquality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Critical,
    ConePoint,
    SmallR,
    Log,
}

impl FamilyKind {
    pub fn tag(self) -> &'static str {
        match self {
            FamilyKind::Critical => "critical",
            FamilyKind::ConePoint => "cone-point",
            FamilyKind::SmallR => "small-r",
            FamilyKind::Log => "log",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Sweep,
    Constant,
    OrliczNorm,
}

/// Flags shared by every subcommand. Each one may also come from the
/// config file under the same name (`-` or `_` both accepted).
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Flags {
    /// `key=value` file with defaults for any flag below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Solution exponent; `inf` allowed.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Log power of `N` for the Orlicz norm.
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum)]
    pub pair: Option<PairKind>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Family parameter (`R` or `ε`) for a single verification.
    #[arg(long)]
    pub param: Option<f64>,
    /// Comma-separated sweep grid.
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<f64>>,
    /// Domain measure `|D|` for the scaling bound.
    #[arg(long)]
    pub measure: Option<f64>,
    /// Truncation level of the Moser profile.
    #[arg(long)]
    pub level: Option<f64>,
    /// Constant potential value.
    #[arg(long, allow_negative_numbers = true)]
    pub value: Option<f64>,
    /// `K_M` to use instead of the Moser-family estimate.
    #[arg(long)]
    pub km: Option<f64>,
    /// Shift `E <= 0`.
    #[arg(long, allow_negative_numbers = true)]
    pub shift: Option<f64>,
    /// Request the Orlicz constant `K_M` (`p = n`).
    #[arg(long)]
    pub orlicz: bool,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Re-derive three random sweep rows and fail on mismatch.
    #[arg(long)]
    pub check: bool,
    /// Seed for `--check` row selection.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: Option<u32>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub k: Option<f64>,
    pub alpha: Option<f64>,
    pub pair: Option<PairKind>,
    pub family: Option<FamilyKind>,
    pub param: Option<f64>,
    pub grid: Option<Vec<f64>>,
    pub measure: Option<f64>,
    pub level: Option<f64>,
    pub value: Option<f64>,
    pub km: Option<f64>,
    pub shift: Option<f64>,
    pub orlicz: bool,
    pub tol: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub check: bool,
    pub seed: u64,
}

fn bad(field: &str, message: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {message}"))
}

fn parse<T: FromStr>(field: &str, raw: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    raw.trim().parse::<T>().map_err(|e| bad(field, format!("cannot parse {raw:?}: {e}")))
}

fn parse_enum<T: ValueEnum>(field: &str, raw: &str) -> Result<T, CliError> {
    T::from_str(raw.trim(), true).map_err(|_| bad(field, format!("unknown value {raw:?}")))
}

fn parse_bool(field: &str, raw: &str) -> Result<bool, CliError> {
    match raw.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(bad(field, format!("expected a boolean, got {other:?}"))),
    }
}

/// `key=value` lines; blank lines and `#` comments are skipped.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad("config", format!("{}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad("config", format!("line {} is not key=value: {line:?}", i + 1)))?;
        out.insert(key.trim().replace('-', "_"), value.trim().to_string());
    }
    Ok(out)
}

fn fill<T>(slot: &mut Option<T>, file: &BTreeMap<String, String>, key: &str, f: impl Fn(&str, &str) -> Result<T, CliError>) -> Result<(), CliError> {
    if slot.is_none() {
        if let Some(raw) = file.get(key) {
            *slot = Some(f(key, raw)?);
        }
    }
    Ok(())
}

const KNOWN_KEYS: &[&str] = &[
    "n", "p", "q", "r", "beta", "gamma", "k", "alpha", "pair", "family", "param", "grid", "measure", "level",
    "value", "km", "shift", "orlicz", "tol", "output", "format", "check", "seed",
];

impl RunConfig {
    /// Resolve flags against the optional config file and `PLAP_TOL`.
    pub fn resolve(command: CommandKind, flags: Flags) -> Result<Self, CliError> {
        let env = std::env::var(TOL_ENV).ok();
        Self::resolve_with_env(command, flags, env.as_deref())
    }

    pub fn resolve_with_env(command: CommandKind, mut f: Flags, env_tol: Option<&str>) -> Result<Self, CliError> {
        let file = match &f.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        if let Some(key) = file.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(bad(key, "unknown config key"));
        }
        fill(&mut f.n, &file, "n", parse)?;
        fill(&mut f.p, &file, "p", parse)?;
        fill(&mut f.q, &file, "q", parse)?;
        fill(&mut f.r, &file, "r", parse)?;
        fill(&mut f.beta, &file, "beta", parse)?;
        fill(&mut f.gamma, &file, "gamma", parse)?;
        fill(&mut f.k, &file, "k", parse)?;
        fill(&mut f.alpha, &file, "alpha", parse)?;
        fill(&mut f.pair, &file, "pair", parse_enum)?;
        fill(&mut f.family, &file, "family", parse_enum)?;
        fill(&mut f.param, &file, "param", parse)?;
        fill(&mut f.grid, &file, "grid", |key, raw| {
            raw.split(',').map(|x| parse::<f64>(key, x)).collect()
        })?;
        fill(&mut f.measure, &file, "measure", parse)?;
        fill(&mut f.level, &file, "level", parse)?;
        fill(&mut f.value, &file, "value", parse)?;
        fill(&mut f.km, &file, "km", parse)?;
        fill(&mut f.shift, &file, "shift", parse)?;
        fill(&mut f.output, &file, "output", |_, raw| Ok(PathBuf::from(raw)))?;
        fill(&mut f.format, &file, "format", parse_enum)?;
        fill(&mut f.seed, &file, "seed", parse)?;
        if !f.orlicz {
            if let Some(raw) = file.get("orlicz") {
                f.orlicz = parse_bool("orlicz", raw)?;
            }
        }
        if !f.check {
            if let Some(raw) = file.get("check") {
                f.check = parse_bool("check", raw)?;
            }
        }
        let tol = match (f.tol, file.get("tol"), env_tol) {
            (Some(t), _, _) => t,
            (None, Some(raw), _) => parse("tol", raw)?,
            (None, None, Some(raw)) => parse(TOL_ENV, raw)?,
            (None, None, None) => DEFAULT_TOL,
        };
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(bad("tol", format!("tolerance {tol} must be positive")));
        }
        let default_format = if command == CommandKind::Sweep { Format::Csv } else { Format::Json };
        Ok(RunConfig {
            command,
            n: f.n,
            p: f.p,
            q: f.q,
            r: f.r,
            beta: f.beta,
            gamma: f.gamma,
            k: f.k,
            alpha: f.alpha,
            pair: f.pair,
            family: f.family,
            param: f.param,
            grid: f.grid,
            measure: f.measure,
            level: f.level,
            value: f.value,
            km: f.km,
            shift: f.shift,
            orlicz: f.orlicz,
            tol,
            output: f.output,
            format: f.format.unwrap_or(default_format),
            check: f.check,
            seed: f.seed.unwrap_or(0),
        })
    }

    pub fn require_n(&self) -> Result<u32, CliError> {
        self.n.ok_or_else(|| bad("n", "required"))
    }

    pub fn require_p(&self) -> Result<f64, CliError> {
        self.p.ok_or_else(|| bad("p", "required"))
    }

    pub fn require_q(&self) -> Result<f64, CliError> {
        self.q.ok_or_else(|| bad("q", "required"))
    }

    pub fn quad(&self) -> plap_core::quadrature::QuadConfig {
        plap_core::quadrature::QuadConfig::with_abs_tol(self.tol)
    }
}
