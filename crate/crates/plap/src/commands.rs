//! The four subcommands. Each returns the rendered output and a status;
//! writing is left to the caller.

use plap_core::exponents::{critical_exponent, ExponentConfig};
use plap_core::families::FamilySpec;
use plap_core::math::{ball_measure, pow};
use plap_core::orlicz::{
    estimate_k_m, euler_lagrange_pair, luxemburg_norm_part, moser_grid, moser_profile, mt_functional, OrliczPair,
};
use plap_core::quadrature::QuadConfig;
use plap_core::radial::{Part, Potential};
use plap_core::sobolev::{
    critical_constant, eigen_lower_bound, scaling_bound, shoot_subcritical, sup_norm_constant, sup_norm_extremal,
    SobolevConstant,
};
use plap_core::verifier::{
    check_beta_bound, check_lr_bound, check_measure_bound, check_orlicz_bound, check_shifted_bound,
    check_shifted_orlicz_bound, domain_measure, BoundReport, Verdict,
};
use serde_json::{Map, Value};

use crate::config::{FamilyKind, Format, PairKind, RunConfig};
use crate::output::{json_text, num, object_csv};
use crate::sweep::{check_rows, SweepSpec};
use crate::CliError;

/// Rendered output of a command.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    /// One line for the terminal.
    pub summary: String,
    /// Set when the verdict is `violated`; the output is still written.
    pub failure: Option<CliError>,
}

fn render(obj: Map<String, Value>, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_text(&Value::Object(obj)),
        Format::Csv => object_csv(&obj),
    }
}

fn report_object(report: &BoundReport) -> Result<Map<String, Value>, CliError> {
    match serde_json::to_value(report)? {
        Value::Object(m) => Ok(m),
        _ => unreachable!("reports serialize to objects"),
    }
}

fn orlicz_pair(cfg: &RunConfig, n: u32, default_power: f64) -> Result<OrliczPair, CliError> {
    let base = match cfg.alpha {
        Some(a) => OrliczPair::new(n, a)?,
        None => OrliczPair::with_default_alpha(n)?,
    };
    Ok(base.with_log_power(cfg.k.unwrap_or(default_power))?)
}

fn k_m_for(cfg: &RunConfig, pair: &OrliczPair, quad: &QuadConfig) -> Result<(f64, bool), CliError> {
    match cfg.km {
        Some(km) if km > 0.0 => Ok((km, false)),
        Some(km) => Err(CliError::Config(format!("km: {km} must be positive"))),
        None => Ok((estimate_k_m(1.0, pair, &moser_grid(2), quad)?.value, true)),
    }
}

fn require_orlicz_p(cfg: &RunConfig, n: u32) -> Result<(), CliError> {
    match cfg.p {
        Some(p) if p != n as f64 => Err(CliError::Config(format!("p: the Orlicz setting needs p = n = {n}, got {p}"))),
        _ => Ok(()),
    }
}

fn apply_shift(
    cfg: &RunConfig,
    u: &plap_core::PiecewiseRadialProfile,
    v: &Potential,
    config: &ExponentConfig,
    k: &SobolevConstant,
    quad: &QuadConfig,
) -> Result<BoundReport, CliError> {
    Ok(match cfg.shift {
        Some(e) => check_shifted_bound(u, v, e, config, k, quad)?,
        None if config.q.is_infinite() && config.p > config.n as f64 => check_measure_bound(u, v, k, quad)?,
        None => check_lr_bound(u, v, config, k, quad)?,
    })
}

/// `verify`: build a named pair or a family member and check its bound.
pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let quad = cfg.quad();
    let mut extra = Map::new();
    let report = match (cfg.pair, cfg.family) {
        (Some(_), Some(_)) => return Err(CliError::Config("pair: give either --pair or --family, not both".into())),
        (None, None) => return Err(CliError::Config("pair: one of --pair or --family is required".into())),
        (Some(pair), None) => {
            extra.insert("pair".into(), Value::String(format!("{pair:?}")));
            verify_pair(cfg, pair, &quad, &mut extra)?
        }
        (None, Some(family)) => {
            extra.insert("family".into(), Value::String(family.tag().into()));
            verify_family(cfg, family, &quad, &mut extra)?
        }
    };
    let mut obj = report_object(&report)?;
    obj.extend(extra);
    let summary = format!(
        "{}: lhs = {} (margin {:+e}), green residual {:e}, verdict {:?}",
        report.theorem.tag(),
        report.lhs,
        report.margin,
        report.green_residual,
        report.verdict
    );
    let failure = (report.verdict == Verdict::Violated).then(|| CliError::Violated(summary.clone()));
    Ok(Outcome {
        text: render(obj, cfg.format)?,
        summary,
        failure,
    })
}

fn verify_pair(cfg: &RunConfig, pair: PairKind, quad: &QuadConfig, extra: &mut Map<String, Value>) -> Result<BoundReport, CliError> {
    let n = cfg.require_n()?;
    match pair {
        PairKind::Talenti => {
            let p = cfg.require_p()?;
            let out = FamilySpec::talenti(n, p)?.build(quad)?;
            let k = critical_constant(n, p, quad)?;
            let config = ExponentConfig::critical(n, p)?;
            extra.insert("k_method".into(), serde_json::to_value(k.method)?);
            apply_shift(cfg, &out.u, &out.v, &config, &k, quad)
        }
        PairKind::EqualitySubcritical => {
            let p = cfg.require_p()?;
            match cfg.beta.filter(|&b| b != p - 2.0) {
                None => {
                    let q = cfg.require_q()?;
                    let e = shoot_subcritical(n, p, q, quad)?;
                    let v = e.state.potential(q, p);
                    let config = match cfg.r {
                        Some(r) => ExponentConfig::new(n, p, q)?.with_r(r)?,
                        None => ExponentConfig::new(n, p, q)?,
                    };
                    extra.insert("k_method".into(), serde_json::to_value(e.constant.method)?);
                    extra.insert("el_residual".into(), num(e.constant.residual));
                    apply_shift(cfg, &e.state.profile, &v, &config, &e.constant, quad)
                }
                Some(beta) => {
                    let r = cfg.r.ok_or_else(|| CliError::Config("r: required with --beta".into()))?;
                    let config = ExponentConfig::new(n, p, critical_exponent(n, p))?.with_r(r)?.with_beta(beta)?;
                    let q_hat = config.q_hat();
                    let e = shoot_subcritical(n, p, q_hat, quad)?;
                    let v = Potential::PowerOf {
                        u: e.state.profile.clone(),
                        coeff: e.state.theta,
                        exponent: q_hat - 2.0 - beta,
                    };
                    extra.insert("k_method".into(), serde_json::to_value(e.constant.method)?);
                    Ok(check_beta_bound(&e.state.profile, &v, &config, &e.constant, quad)?)
                }
            }
        }
        PairKind::ConePoint => {
            let p = cfg.require_p()?;
            let out = FamilySpec::cone_point(n, p, cfg.param.unwrap_or(0.1))?.build(quad)?;
            let k = sup_norm_constant(n, p, quad)?;
            let config = ExponentConfig::new(n, p, f64::INFINITY)?;
            apply_shift(cfg, &out.u, &out.v, &config, &k, quad)
        }
        PairKind::Atomic => {
            let p = cfg.require_p()?;
            let k = sup_norm_constant(n, p, quad)?;
            let u = sup_norm_extremal(n, p)?;
            let v = Potential::atomic(n, 1.0, pow(k.k, -p))?;
            let config = ExponentConfig::new(n, p, f64::INFINITY)?;
            apply_shift(cfg, &u, &v, &config, &k, quad)
        }
        PairKind::Eigen => {
            let p = cfg.require_p()?;
            if let Some(q) = cfg.q.filter(|&q| q != p) {
                return Err(CliError::Config(format!("q: the eigen pair needs q = p, got {q}")));
            }
            let e = shoot_subcritical(n, p, p, quad)?;
            let lambda = eigen_lower_bound(&e.constant);
            // -Δ_p u - V u^{p-1} = E u^{p-1} with V = 2λ, E = -λ
            let v = Potential::Constant {
                n,
                radius: 1.0,
                value: 2.0 * lambda,
            };
            let config = ExponentConfig::new(n, p, p)?;
            extra.insert("eigen_lower_bound".into(), num(lambda));
            extra.insert("k_method".into(), serde_json::to_value(e.constant.method)?);
            Ok(check_shifted_bound(&e.state.profile, &v, -lambda, &config, &e.constant, quad)?)
        }
        PairKind::OrliczEquality => {
            require_orlicz_p(cfg, n)?;
            let pair = orlicz_pair(cfg, n, n as f64 - 1.0)?;
            let u = moser_profile(n, 1.0, cfg.level.unwrap_or(2.0))?;
            let eq = euler_lagrange_pair(&u, &pair, quad)?;
            let (k_m, estimated) = match cfg.km {
                Some(_) => k_m_for(cfg, &pair, quad)?,
                None => (mt_functional(&eq.u, &pair, quad)?, false),
            };
            extra.insert("identity_residual".into(), num(eq.residual));
            extra.insert("k_m_lower_bound".into(), Value::Bool(estimated));
            let measure = domain_measure(&eq.u);
            Ok(match cfg.shift {
                Some(e) => check_shifted_orlicz_bound(&eq.u, &eq.v, e, &pair, k_m, measure, quad)?,
                None => check_orlicz_bound(&eq.u, &eq.v, &pair, k_m, measure, quad)?,
            })
        }
    }
}

fn verify_family(
    cfg: &RunConfig,
    family: FamilyKind,
    quad: &QuadConfig,
    extra: &mut Map<String, Value>,
) -> Result<BoundReport, CliError> {
    let n = cfg.require_n()?;
    match family {
        FamilyKind::Critical => {
            let p = cfg.require_p()?;
            let param = cfg.param.unwrap_or(10.0);
            let out = FamilySpec::critical_sharp(n, p, param)?.build(quad)?;
            let k = critical_constant(n, p, quad)?;
            extra.insert("param".into(), num(param));
            apply_shift(cfg, &out.u, &out.v, &ExponentConfig::critical(n, p)?, &k, quad)
        }
        FamilyKind::ConePoint => {
            let p = cfg.require_p()?;
            let param = cfg.param.unwrap_or(0.1);
            let out = FamilySpec::cone_point(n, p, param)?.build(quad)?;
            let k = sup_norm_constant(n, p, quad)?;
            extra.insert("param".into(), num(param));
            apply_shift(cfg, &out.u, &out.v, &ExponentConfig::new(n, p, f64::INFINITY)?, &k, quad)
        }
        FamilyKind::SmallR => Err(CliError::Config(
            "family: small-r potentials lie outside every Sobolev bound; use `sweep` to see the norms vanish".into(),
        )),
        FamilyKind::Log => {
            require_orlicz_p(cfg, n)?;
            let param = cfg.param.unwrap_or(0.01);
            let k_pow = cfg.k.unwrap_or(0.0);
            let out = FamilySpec::log_family(n, param, k_pow)?.build(quad)?;
            let pair = orlicz_pair(cfg, n, 0.0)?;
            let (k_m, estimated) = k_m_for(cfg, &pair, quad)?;
            extra.insert("param".into(), num(param));
            extra.insert("k_m_lower_bound".into(), Value::Bool(estimated));
            let measure = ball_measure(n, 1.0);
            Ok(match cfg.shift {
                Some(e) => check_shifted_orlicz_bound(&out.u, &out.v, e, &pair, k_m, measure, quad)?,
                None => check_orlicz_bound(&out.u, &out.v, &pair, k_m, measure, quad)?,
            })
        }
    }
}

/// `sweep`: one row per grid point plus the fit row.
pub fn sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let quad = cfg.quad();
    let spec = SweepSpec::from_config(cfg)?;
    let result = spec.run(&quad)?;
    let csv = result.to_csv()?;
    let text = match cfg.format {
        Format::Csv => csv.clone(),
        Format::Json => json_text(&result.to_json())?,
    };
    let mut summary = format!(
        "{} sweep: {} rows, fitted slope {} against {}",
        spec.family.tag(),
        result.rows.len(),
        result.fit.slope,
        result.fit.axis
    );
    if cfg.check {
        let checked = check_rows(&spec, &csv, cfg.seed, &quad)?;
        summary.push_str(&format!(", rows {checked:?} re-derived"));
    }
    Ok(Outcome {
        text,
        summary,
        failure: None,
    })
}

/// The constant for `(n, p, q)`: shooting for `p <= q < q̄`, the Talenti
/// quadrature at `q = q̄`, the closed form at `q = ∞ > n/p`.
pub fn sobolev_constant(n: u32, p: f64, q: f64, quad: &QuadConfig) -> Result<SobolevConstant, CliError> {
    ExponentConfig::new(n, p, q)?;
    let qbar = critical_exponent(n, p);
    if q.is_infinite() {
        if p > n as f64 {
            return Ok(sup_norm_constant(n, p, quad)?);
        }
        return Err(CliError::Config(format!("q: q = ∞ needs p > n = {n}")));
    }
    if qbar.is_finite() && (q - qbar).abs() <= 1e-12 * qbar {
        return Ok(critical_constant(n, p, quad)?);
    }
    Ok(shoot_subcritical(n, p, q, quad)?.constant)
}

/// `constant`: a Sobolev constant (optionally moved to `|D|` by the scaling
/// bound) or, with `--orlicz`, the `K_M` estimate.
pub fn constant(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let quad = cfg.quad();
    let n = cfg.require_n()?;
    let mut obj = Map::new();
    if cfg.orlicz || (cfg.p == Some(n as f64) && cfg.q.is_none()) {
        require_orlicz_p(cfg, n)?;
        let pair = orlicz_pair(cfg, n, n as f64 - 1.0)?;
        let radius = match cfg.measure {
            Some(m) if m > 0.0 => plap_core::math::radius_for_measure(n, m),
            Some(m) => return Err(CliError::Config(format!("measure: {m} must be positive"))),
            None => 1.0,
        };
        let est = estimate_k_m(radius, &pair, &moser_grid(2), &quad)?;
        obj.insert("n".into(), n.into());
        obj.insert("alpha".into(), num(pair.alpha));
        obj.insert("k_m".into(), num(est.value));
        obj.insert("best_level".into(), num(est.best_level));
        obj.insert("lower_bound".into(), Value::Bool(est.lower_bound));
        obj.insert("measure".into(), num(ball_measure(n, radius)));
        obj.insert("method".into(), Value::String("moser_family".into()));
        let summary = format!("K_M >= {} (Moser family, α = {})", est.value, pair.alpha);
        return Ok(Outcome {
            text: render(obj, cfg.format)?,
            summary,
            failure: None,
        });
    }
    let p = cfg.require_p()?;
    let q = cfg.require_q()?;
    let base = sobolev_constant(n, p, q, &quad)?;
    let unit = match cfg.measure {
        Some(_) => Some(base.on_unit_measure()?),
        None => None,
    };
    let k = match (&unit, cfg.measure) {
        (Some(unit), Some(m)) => scaling_bound(unit, m)?,
        _ => base,
    };
    obj.insert("n".into(), n.into());
    obj.insert("p".into(), num(p));
    obj.insert("q".into(), num(q));
    obj.insert("k".into(), num(k.k));
    obj.insert("method".into(), serde_json::to_value(k.method)?);
    obj.insert("residual".into(), num(k.residual));
    obj.insert("domain_radius".into(), num(k.domain_radius));
    if let (Some(m), Some(unit)) = (cfg.measure, &unit) {
        obj.insert("measure".into(), num(m));
        obj.insert("unit_measure_k".into(), num(unit.k));
    }
    let summary = format!("K = {} ({:?}, residual {:e})", k.k, k.method, k.residual);
    Ok(Outcome {
        text: render(obj, cfg.format)?,
        summary,
        failure: None,
    })
}

/// `orlicz-norm`: `||V_+||_N` of a log-family potential, a constant
/// potential (`--value`) or the Euler–Lagrange potential of a Moser profile
/// (`--level`).
pub fn orlicz_norm(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let quad = cfg.quad();
    let n = cfg.require_n()?;
    require_orlicz_p(cfg, n)?;
    let mut obj = Map::new();
    let (v, default_power, source) = if let Some(value) = cfg.value {
        (Potential::Constant { n, radius: 1.0, value }, n as f64 - 1.0, "constant".to_string())
    } else if let Some(level) = cfg.level {
        let pair = orlicz_pair(cfg, n, n as f64 - 1.0)?;
        let eq = euler_lagrange_pair(&moser_profile(n, 1.0, level)?, &pair, &quad)?;
        obj.insert("level".into(), num(level));
        (eq.v, n as f64 - 1.0, "moser_euler_lagrange".to_string())
    } else {
        match cfg.family {
            None | Some(FamilyKind::Log) => {}
            Some(other) => {
                return Err(CliError::Config(format!("family: orlicz-norm takes the log family, not {}", other.tag())))
            }
        }
        let eps = cfg.param.unwrap_or(1e-4);
        let out = FamilySpec::log_family(n, eps, cfg.k.unwrap_or(0.0))?.build(&quad)?;
        obj.insert("param".into(), num(eps));
        (out.v, 0.0, "log".to_string())
    };
    let pair = orlicz_pair(cfg, n, default_power)?;
    let (k_m, estimated) = k_m_for(cfg, &pair, &quad)?;
    let measure = ball_measure(n, 1.0);
    let lux = luxemburg_norm_part(&pair, &v, Part::Positive, k_m, measure, &quad)?;
    obj.insert("source".into(), Value::String(source));
    obj.insert("n".into(), n.into());
    obj.insert("alpha".into(), num(pair.alpha));
    obj.insert("k".into(), num(pair.log_power));
    obj.insert("norm".into(), num(lux.norm));
    obj.insert("lambda".into(), num(lux.lambda));
    obj.insert("f_lambda".into(), num(lux.f_lambda));
    obj.insert("k_m".into(), num(lux.k_m));
    obj.insert("k_m_lower_bound".into(), Value::Bool(estimated));
    obj.insert("measure".into(), num(lux.measure));
    obj.insert("product".into(), num(k_m * measure * lux.norm));
    let summary = format!("||V_+||_N = {} at λ = {} (K_M = {k_m})", lux.norm, lux.lambda);
    Ok(Outcome {
        text: render(obj, cfg.format)?,
        summary,
        failure: None,
    })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    use crate::config::CommandKind::*;
    match cfg.command {
        Verify => verify(cfg),
        Sweep => sweep(cfg),
        Constant => constant(cfg),
        OrliczNorm => orlicz_norm(cfg),
    }
}
