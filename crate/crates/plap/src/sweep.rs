//! Parameter sweeps over the extremal and counterexample families.
//!
//! Output columns: `family, param, n, p, q, r, K, norm, product, margin`.
//! `K` is the constant the family is measured against (`K_{q̄,p}` for the
//! critical and small-r families, `K_{∞,p}` for the cone point, the `K_M`
//! estimate for the log family), `norm` is `||V_+||_r` (`||V_+||_N` for the
//! log family), `product` is `K^p · norm` (`K_M |D| · norm`) and
//! `margin = product - 1`. A trailing row with family `fit_slope` carries
//! the least-squares log-log slope of `norm` against the axis named in its
//! `param` column (`param`, or `abs_log_param` = `|ln ε|` for the log family)
//! in its `norm` column.

use plap_core::exponents::{critical_exponent, holder_q};
use plap_core::families::FamilySpec;
use plap_core::math::ball_measure;
use plap_core::optimize::fit_slope;
use plap_core::orlicz::{estimate_k_m, luxemburg_norm_part, moser_grid, OrliczPair};
use plap_core::quadrature::QuadConfig;
use plap_core::radial::{potential_norm, Part};
use plap_core::sobolev::{critical_constant, sup_norm_constant};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{FamilyKind, RunConfig};
use crate::output::{csv_text, fmt_num, parse_num};
use crate::CliError;

pub const COLUMNS: [&str; 10] = ["family", "param", "n", "p", "q", "r", "K", "norm", "product", "margin"];
pub const FIT_FAMILY: &str = "fit_slope";
pub const CHECK_ROWS: usize = 3;
pub const CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: FamilyKind,
    pub n: u32,
    pub p: f64,
    /// Lebesgue exponent of the small-r potential.
    pub r: f64,
    /// Log power of `N` for the log family.
    pub k: f64,
    pub alpha: Option<f64>,
    pub km: Option<f64>,
    pub grid: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub family: FamilyKind,
    pub param: f64,
    pub n: u32,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub k: f64,
    pub norm: f64,
    pub product: f64,
    pub margin: f64,
}

impl Row {
    pub fn cells(&self) -> Vec<String> {
        vec![
            self.family.tag().to_string(),
            fmt_num(self.param),
            self.n.to_string(),
            fmt_num(self.p),
            fmt_num(self.q),
            fmt_num(self.r),
            fmt_num(self.k),
            fmt_num(self.norm),
            fmt_num(self.product),
            fmt_num(self.margin),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub axis: &'static str,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<Row>,
    pub fit: Fit,
}

/// The constant a family is measured against.
#[derive(Debug, Clone, Copy)]
pub struct Reference {
    pub k: f64,
    pub pair: Option<OrliczPair>,
}

impl SweepSpec {
    pub fn from_config(cfg: &RunConfig) -> Result<Self, CliError> {
        let family = cfg.family.ok_or_else(|| CliError::Config("family: required".into()))?;
        let n = cfg.require_n()?;
        let p = match (family, cfg.p) {
            (FamilyKind::Log, None) => n as f64,
            (_, p) => p.ok_or_else(|| CliError::Config("p: required".into()))?,
        };
        let spec = SweepSpec {
            family,
            n,
            p,
            r: cfg.r.unwrap_or(1.0),
            k: cfg.k.unwrap_or(0.0),
            alpha: cfg.alpha,
            km: cfg.km,
            grid: Vec::new(),
        };
        let grid = match &cfg.grid {
            Some(g) => g.clone(),
            None => spec.family_spec(spec.default_parameter())?.default_grid(),
        };
        if grid.is_empty() {
            return Err(CliError::Config("grid: must not be empty".into()));
        }
        let spec = SweepSpec { grid, ..spec };
        for &x in &spec.grid {
            spec.family_spec(x)?;
        }
        if spec.km.is_some_and(|km| km.is_nan() || km <= 0.0) {
            return Err(CliError::Config("km: must be positive".into()));
        }
        Ok(spec)
    }

    fn default_parameter(&self) -> f64 {
        match self.family {
            FamilyKind::Critical => 10.0,
            _ => 0.1,
        }
    }

    pub fn family_spec(&self, param: f64) -> Result<FamilySpec, CliError> {
        let (n, p) = (self.n, self.p);
        Ok(match self.family {
            FamilyKind::Critical => FamilySpec::critical_sharp(n, p, param)?,
            FamilyKind::ConePoint => FamilySpec::cone_point(n, p, param)?,
            FamilyKind::SmallR => FamilySpec::small_r(n, p, param, self.r)?,
            FamilyKind::Log => {
                if p != n as f64 {
                    return Err(CliError::Config(format!("p: the log family needs p = n = {n}, got {p}")));
                }
                FamilySpec::log_family(n, param, self.k)?
            }
        })
    }

    pub fn orlicz_pair(&self) -> Result<OrliczPair, CliError> {
        let base = match self.alpha {
            Some(a) => OrliczPair::new(self.n, a)?,
            None => OrliczPair::with_default_alpha(self.n)?,
        };
        Ok(base.with_log_power(self.k)?)
    }

    pub fn reference(&self, quad: &QuadConfig) -> Result<Reference, CliError> {
        Ok(match self.family {
            FamilyKind::Critical | FamilyKind::SmallR => Reference {
                k: critical_constant(self.n, self.p, quad)?.k,
                pair: None,
            },
            FamilyKind::ConePoint => Reference {
                k: sup_norm_constant(self.n, self.p, quad)?.k,
                pair: None,
            },
            FamilyKind::Log => {
                let pair = self.orlicz_pair()?;
                let k = match self.km {
                    Some(km) => km,
                    None => estimate_k_m(1.0, &pair, &moser_grid(2), quad)?.value,
                };
                Reference { k, pair: Some(pair) }
            }
        })
    }

    pub fn row(&self, reference: &Reference, param: f64, quad: &QuadConfig) -> Result<Row, CliError> {
        let spec = self.family_spec(param)?;
        let out = spec.build(quad)?;
        let (n, p, nf) = (self.n, self.p, self.n as f64);
        let k = reference.k;
        let (q, r, norm, product) = match self.family {
            FamilyKind::Critical => {
                let r = nf / p;
                let norm = potential_norm(&out.v, r, Part::Positive, quad)?;
                (critical_exponent(n, p), r, norm, k.powf(p) * norm)
            }
            FamilyKind::ConePoint => {
                let norm = potential_norm(&out.v, 1.0, Part::Positive, quad)?;
                (f64::INFINITY, 1.0, norm, k.powf(p) * norm)
            }
            FamilyKind::SmallR => {
                let norm = potential_norm(&out.v, self.r, Part::Positive, quad)?;
                (holder_q(p, self.r), self.r, norm, k.powf(p) * norm)
            }
            FamilyKind::Log => {
                let pair = reference.pair.expect("log reference carries its pair");
                let measure = ball_measure(n, 1.0);
                let lux = luxemburg_norm_part(&pair, &out.v, Part::Positive, k, measure, quad)?;
                (f64::INFINITY, f64::NAN, lux.norm, k * measure * lux.norm)
            }
        };
        Ok(Row {
            family: self.family,
            param,
            n,
            p,
            q,
            r,
            k,
            norm,
            product,
            margin: product - 1.0,
        })
    }

    pub fn fit_axis(&self) -> &'static str {
        match self.family {
            FamilyKind::Log => "abs_log_param",
            _ => "param",
        }
    }

    pub fn fit(&self, rows: &[Row]) -> Fit {
        let log = self.family == FamilyKind::Log;
        let x: Vec<f64> = rows.iter().map(|r| if log { r.param.ln().abs().ln() } else { r.param.ln() }).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.norm.ln()).collect();
        Fit {
            axis: self.fit_axis(),
            slope: if rows.len() >= 2 { fit_slope(&x, &y) } else { f64::NAN },
        }
    }

    /// Rows in grid order; grid points are evaluated in parallel.
    pub fn run(&self, quad: &QuadConfig) -> Result<SweepResult, CliError> {
        let reference = self.reference(quad)?;
        let rows = self
            .grid
            .par_iter()
            .map(|&x| self.row(&reference, x, quad))
            .collect::<Result<Vec<_>, _>>()?;
        let fit = self.fit(&rows);
        Ok(SweepResult {
            spec: self.clone(),
            rows,
            fit,
        })
    }
}

impl SweepResult {
    pub fn header() -> Vec<String> {
        COLUMNS.iter().map(|s| s.to_string()).collect()
    }

    pub fn fit_cells(&self) -> Vec<String> {
        let s = &self.spec;
        let first = self.rows.first();
        vec![
            FIT_FAMILY.to_string(),
            self.fit.axis.to_string(),
            s.n.to_string(),
            fmt_num(s.p),
            first.map(|r| fmt_num(r.q)).unwrap_or_default(),
            first.map(|r| fmt_num(r.r)).unwrap_or_default(),
            String::new(),
            fmt_num(self.fit.slope),
            String::new(),
            String::new(),
        ]
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut rows: Vec<Vec<String>> = self.rows.iter().map(Row::cells).collect();
        rows.push(self.fit_cells());
        csv_text(&Self::header(), &rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        use crate::output::num;
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "family": r.family.tag(),
                    "param": num(r.param),
                    "n": r.n,
                    "p": num(r.p),
                    "q": num(r.q),
                    "r": num(r.r),
                    "K": num(r.k),
                    "norm": num(r.norm),
                    "product": num(r.product),
                    "margin": num(r.margin),
                })
            })
            .collect();
        serde_json::json!({
            "rows": rows,
            "fit": { "axis": self.fit.axis, "slope": num(self.fit.slope) },
        })
    }
}

/// Parsed data rows (the fit row excluded) of a sweep CSV.
pub fn parse_csv_rows(text: &str) -> Result<Vec<Vec<String>>, CliError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(String::from).collect();
    if header != SweepResult::header() {
        return Err(CliError::CheckMismatch(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        if &record[0] == FIT_FAMILY {
            continue;
        }
        rows.push(record.iter().map(String::from).collect());
    }
    Ok(rows)
}

fn close(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a == b || (a - b).abs() <= CHECK_TOL * b.abs().max(1.0)
}

/// Recompute `CHECK_ROWS` randomly chosen rows of a written sweep from
/// scratch and compare every numeric column. Returns the checked indices.
pub fn check_rows(spec: &SweepSpec, csv: &str, seed: u64, quad: &QuadConfig) -> Result<Vec<usize>, CliError> {
    let rows = parse_csv_rows(csv)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = sample(&mut rng, rows.len(), CHECK_ROWS.min(rows.len())).into_vec();
    let reference = spec.reference(quad)?;
    for &i in &picks {
        let cells = &rows[i];
        let param = parse_num(&cells[1]).ok_or_else(|| CliError::CheckMismatch(format!("row {i}: bad param")))?;
        let fresh = spec.row(&reference, param, quad)?.cells();
        for (c, name) in COLUMNS.iter().enumerate() {
            let ok = match (parse_num(&cells[c]), parse_num(&fresh[c])) {
                (Some(a), Some(b)) => close(a, b),
                _ => cells[c] == fresh[c],
            };
            if !ok {
                return Err(CliError::CheckMismatch(format!(
                    "row {i}, column {name}: file has {}, recomputed {}",
                    cells[c], fresh[c]
                )));
            }
        }
    }
    Ok(picks)
}
