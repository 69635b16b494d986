use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use subforge::barrier::{
    bt_bound, hm_bound, kastza_bound, modified_stable_rank, mrr_bound, mrr_optimal_barrier,
    optimize_barrier, refined_optimal_barrier, refined_potential_bound, shifted_min_bound, zd1_bound,
    zd3_bound,
};
use subforge::gausslucas::{
    check_chain, check_pereira, complex_roots, disc_containment, gl_area_ratio, rr_spread_ratio,
    scatter_csv,
};
use subforge::submatrix::{
    charpoly_as_roots, read_matrix, select_invertible, select_low_norm, select_maxroot_greedy,
    select_smax_greedy, select_two_sided,
};
use subforge::tolerance::{ceil_count, floor_count};
use subforge::{ComplexPoly, GaussLucasError, HermitianMatrix, RealRootedPoly, SelectionCertificate, SpectralProfile, SubmatrixError};

use crate::args::{BoundsArgs, Check, Formula, GaussLucasArgs, Mode, SelectArgs};
use crate::error::CliError;
use crate::report::RunReport;
use crate::Outcome;

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))
}

fn keep_count(args: &SelectArgs, n: usize) -> Result<usize, CliError> {
    match (args.keep, args.keep_frac) {
        (Some(k), _) => Ok(k),
        (None, Some(c)) if (0.0..=1.0).contains(&c) => Ok(floor_count(c, n)),
        (None, Some(c)) => Err(CliError::Validation(format!("--keep-frac {c} outside [0, 1]"))),
        (None, None) => Err(CliError::Validation(format!("{:?} needs --keep or --keep-frac", args.mode))),
    }
}

fn smax_auto(a: &HermitianMatrix, keep: usize) -> Result<SelectionCertificate, CliError> {
    match select_low_norm(a, keep) {
        Err(SubmatrixError::SpectrumOutOfRange { .. }) => {
            // General spectrum: barrier level from the numeric optimum.
            let chi = charpoly_as_roots(a)?;
            let report = optimize_barrier(&chi, a.n() - keep)?;
            match report.optimal_phi.finite() {
                Some(phi) => Ok(select_smax_greedy(a, keep, phi)?),
                None => Ok(select_maxroot_greedy(a, keep)?),
            }
        }
        other => Ok(other?),
    }
}

pub fn select(args: &SelectArgs) -> Result<(RunReport, Outcome), CliError> {
    let bytes = read_input(&args.matrix)?;
    let mut report = RunReport::new("select", &[&bytes]);
    let text = String::from_utf8(bytes).map_err(|e| CliError::Validation(e.to_string()))?;
    let a = report.timed("parse", || read_matrix(&text))?;
    let n = a.n();
    let cert = report.timed("select", || -> Result<_, CliError> {
        match args.mode {
            Mode::Maxroot => Ok(select_maxroot_greedy(&a, keep_count(args, n)?)?),
            Mode::Smax => {
                let keep = keep_count(args, n)?;
                if args.phi == "auto" {
                    smax_auto(&a, keep)
                } else {
                    let phi: f64 = args
                        .phi
                        .parse()
                        .map_err(|_| CliError::Validation(format!("--phi {} is not a number or auto", args.phi)))?;
                    Ok(select_smax_greedy(&a, keep, phi)?)
                }
            }
            Mode::TwoSided => {
                let c = match (args.keep_frac, args.keep) {
                    (Some(c), _) => c,
                    (None, Some(k)) => (k as f64 / n as f64).sqrt(),
                    (None, None) => return Err(CliError::Validation("two-sided needs --keep-frac".into())),
                };
                Ok(select_two_sided(&a, c)?)
            }
            Mode::Invertible => {
                let delta = args
                    .delta
                    .ok_or_else(|| CliError::Validation("invertible needs --delta".into()))?;
                Ok(select_invertible(&a, delta)?)
            }
        }
    })?;
    let json = serde_json::to_string_pretty(&cert).expect("certificate serializes");
    if let Some(out) = &args.out {
        write_output(out, &json)?;
    }
    report.outputs = json!({
        "n": n,
        "holds": cert.holds(),
        "margin": cert.margin(),
        "certificate": cert,
    });
    let outcome = if cert.holds() { Outcome::Pass } else { Outcome::BoundViolation };
    Ok((report, outcome))
}

fn parse_params(text: &str) -> Result<BTreeMap<String, f64>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Validation(format!("parameter `{kv}` is not key=value")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("parameter `{kv}` is not numeric")))?;
            Ok((k.trim().to_owned(), v))
        })
        .collect()
}

fn get(params: &BTreeMap<String, f64>, names: &[&str]) -> Result<f64, CliError> {
    names
        .iter()
        .find_map(|n| params.get(*n).copied())
        .ok_or_else(|| CliError::Validation(format!("missing parameter `{}`", names[0])))
}

fn profile(p: &BTreeMap<String, f64>) -> Result<SpectralProfile, CliError> {
    let n = get(p, &["n"])?;
    if !(n >= 1.0 && n.fract() == 0.0) {
        return Err(CliError::Validation(format!("n = {n} must be a positive integer")));
    }
    Ok(SpectralProfile::new(n as usize, get(p, &["alpha"])?, get(p, &["beta"])?)?)
}

pub fn bounds(args: &BoundsArgs) -> Result<(RunReport, Outcome), CliError> {
    let mut report = RunReport::new("bounds", &[args.params.as_bytes()]);
    let p = parse_params(&args.params)?;
    let mut extra = serde_json::Map::new();
    let value = report.timed("evaluate", || -> Result<f64, CliError> {
        Ok(match args.formula {
            Formula::Mrr => {
                let (alpha, c) = (get(&p, &["alpha"])?, get(&p, &["c"])?);
                let v = mrr_bound(alpha, c)?;
                extra.insert("optimal_barrier".into(), json!(mrr_optimal_barrier(alpha, c)));
                v
            }
            Formula::Zd1 => zd1_bound(get(&p, &["c"])?)?,
            Formula::Zd3 => zd3_bound(get(&p, &["alpha"])?, get(&p, &["c"])?)?,
            Formula::Kastza => kastza_bound(get(&p, &["trB", "tr_b"])?, get(&p, &["delta"])?, get(&p, &["c"])?)?,
            Formula::Bt => bt_bound(get(&p, &["trA", "tr_a"])?, get(&p, &["delta"])?, get(&p, &["c"])?)?,
            Formula::Msr => modified_stable_rank(get(&p, &["trB", "tr_b"])?, get(&p, &["trB2", "tr_b2"])?)?,
            Formula::Hm => hm_bound(&profile(&p)?, get(&p, &["b"])?)?,
            Formula::Refined => {
                let prof = profile(&p)?;
                if let Some(c) = p.get("c") {
                    extra.insert("optimal_barrier".into(), json!(refined_optimal_barrier(&prof, *c)?));
                }
                refined_potential_bound(&prof, get(&p, &["b"])?)?
            }
            Formula::ShiftedMin => shifted_min_bound(get(&p, &["alpha"])?, get(&p, &["c"])?, get(&p, &["x"])?)?,
        })
    })?;
    let mut outputs = serde_json::Map::new();
    outputs.insert("formula".into(), serde_json::to_value(args.formula_name()).expect("string"));
    outputs.insert("params".into(), json!(p));
    outputs.insert("value".into(), json!(value));
    outputs.insert("valid".into(), json!(value.is_finite()));
    outputs.extend(extra);
    report.outputs = Value::Object(outputs);
    Ok((report, Outcome::Pass))
}

impl BoundsArgs {
    fn formula_name(&self) -> String {
        use clap::ValueEnum;
        self.formula
            .to_possible_value()
            .map(|v| v.get_name().to_owned())
            .unwrap_or_default()
    }
}

/// Roots of `p` as reals, if every imaginary part is negligible.
fn as_real_rooted(p: &ComplexPoly) -> Result<RealRootedPoly, CliError> {
    let rs = complex_roots(p)?;
    let scale = rs.max_modulus().max(1.0);
    if rs.roots.iter().any(|z| z.im.abs() > 1e-6 * scale) {
        return Err(CliError::Validation("spread check needs a real-rooted polynomial".into()));
    }
    Ok(RealRootedPoly::from_roots(rs.roots.iter().map(|z| z.re).collect())?)
}

pub fn gauss_lucas(args: &GaussLucasArgs) -> Result<(RunReport, Outcome), CliError> {
    let bytes = read_input(&args.poly)?;
    let mut report = RunReport::new("gauss-lucas", &[&bytes]);
    let p: ComplexPoly =
        serde_json::from_slice(&bytes).map_err(|e| CliError::Validation(format!("polynomial JSON: {e}")))?;
    let n = p.degree();
    if n < 1 {
        return Err(GaussLucasError::DegreeTooSmall { degree: n, needed: 1 }.into());
    }
    let c = args.c;
    let (payload, pass, order) = report.timed("check", || -> Result<(Value, bool, usize), CliError> {
        Ok(match args.check {
            Check::Area => match gl_area_ratio(&p, c) {
                Ok(r) => (json!(r), r.holds, r.derivative_order),
                // Collinear roots: derivative roots stay on the same segment,
                // so both hulls have zero area.
                Err(GaussLucasError::DegenerateHull) => {
                    let k = ceil_count(c, n);
                    (json!({"degree": n, "derivative_order": k, "degenerate": true, "holds": true}), true, k)
                }
                Err(e) => return Err(e.into()),
            },
            Check::Spread => {
                let r = rr_spread_ratio(&as_real_rooted(&p)?, c)?;
                (json!(r), r.holds, r.derivative_order)
            }
            Check::Disc => {
                let r = disc_containment(&p, c)?;
                (json!(r), r.holds, r.derivative_order)
            }
            Check::Chain => {
                let ok = check_chain(&p, args.k)?;
                (json!({"degree": n, "k": args.k, "holds": ok}), ok, args.k)
            }
            Check::Pereira => {
                let ok = check_pereira(&p)?;
                (json!({"degree": n, "k": 1, "holds": ok}), ok, 1)
            }
        })
    })?;
    if let Some(path) = &args.emit_csv {
        let before = complex_roots(&p)?;
        let q = p.derivative(order.min(n - 1));
        let after = complex_roots(&q)?;
        let csv = scatter_csv(&[("p", &before), ("derivative", &after)])
            .map_err(|e| CliError::Internal(e.to_string()))?;
        write_output(path, &csv)?;
    }
    report.outputs = json!({
        "check": format!("{:?}", args.check).to_lowercase(),
        "c": c,
        "verdict": if pass { "pass" } else { "fail" },
        "result": payload,
    });
    Ok((report, if pass { Outcome::Pass } else { Outcome::BoundViolation }))
}
