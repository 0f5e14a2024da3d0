//! The five subcommands. Each writes its artifacts into `cfg.output_dir`.

use std::collections::BTreeMap;
use std::fs;

use anyhow::{Context, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use recurflow_core::kernel::{
    characteristic_spectrum, kernel_g, sigma_of_kernel, symmetrize, validate_assumption, ROOT_RESIDUAL_TOL,
};
use recurflow_core::linear::{
    eigen_check, forced_stability, moment_transform, plateau, product_norm_scan, run_linear, similarity_check,
    LinearTrace,
};
use recurflow_core::recurrence::{compute_r, estimate_x_star, run_recurrence};
use recurflow_core::verify::appendix::appendix_inequality_suite;
use recurflow_core::verify::{
    base_case_verifier, c_sigma, fit_decay, fit_nonlinear_constants, h_sequence, hat_xi_check, identity_check,
    main_lemma_envelope, nonlinear_bound_check, ansatz_check, zero_crossings, AnsatzConstants, DecayFit,
};
use recurflow_core::{Error, MonomialKernel, RealPolynomial, RecurrenceTrace, Spectrum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{parse_forcing, parse_kernel, Check, RunConfig};
use crate::io;

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    ChecksFailed,
}

impl Status {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::ChecksFailed
        }
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
pub struct SpectrumJson {
    pub roots: Vec<[f64; 2]>,
    #[serde(rename = "sigma_G")]
    pub sigma_g: f64,
    pub alpha_f: f64,
    pub distinct: bool,
    pub in_strip: bool,
    pub max_residual: f64,
}

impl From<&Spectrum> for SpectrumJson {
    fn from(s: &Spectrum) -> Self {
        Self {
            roots: s.roots.iter().copied().map(pair).collect(),
            sigma_g: s.sigma_g,
            alpha_f: s.alpha_f,
            distinct: s.distinct,
            in_strip: s.in_strip,
            max_residual: s.max_residual,
        }
    }
}

#[derive(Serialize)]
pub struct FitJson {
    pub exponent: f64,
    pub amplitude: f64,
    pub log_period: f64,
    pub residual: f64,
    pub fit_range: (usize, usize),
}

impl From<&DecayFit> for FitJson {
    fn from(f: &DecayFit) -> Self {
        Self {
            exponent: f.exponent,
            amplitude: f.amplitude,
            log_period: f.log_period,
            residual: f.residual,
            fit_range: f.fit_range,
        }
    }
}

/// Oscillatory fit first, plain power law if that fails.
fn fit_any(seq: &[f64], range: (usize, usize), oscillatory: bool) -> recurflow_core::Result<DecayFit> {
    if oscillatory {
        fit_decay(seq, range, true).or_else(|_| fit_decay(seq, range, false))
    } else {
        fit_decay(seq, range, false)
    }
}

fn prepare_dir(cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.output_dir).with_context(|| format!("creating {}", cfg.output_dir.display()))
}

fn kernel_of(cfg: &RunConfig) -> Result<MonomialKernel> {
    match &cfg.kernel {
        Some(k) => parse_kernel(k),
        None => Ok(MonomialKernel::from_polynomial(&kernel_g(&symmetrize(&cfg.f())))),
    }
}

fn kernel_json(k: &MonomialKernel) -> Vec<Value> {
    k.terms().iter().map(|(c, a)| json!({"alpha": pair(*a), "C": pair(*c)})).collect()
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Status> {
    let f = cfg.f();
    let ft = symmetrize(&f);
    let spec = characteristic_spectrum(&ft, ROOT_RESIDUAL_TOL)?;
    let report = validate_assumption(&f);
    let items: Vec<Value> = report
        .items
        .iter()
        .map(|i| json!({"name": i.name, "pass": i.pass, "measured": i.measured, "expected": i.expected, "detail": i.detail}))
        .collect();
    let mut out = serde_json::to_value(SpectrumJson::from(&spec))?;
    let obj = out.as_object_mut().expect("spectrum is an object");
    obj.insert("f".into(), json!(f.coeffs()));
    obj.insert("f_tilde".into(), json!(ft.coeffs()));
    obj.insert("kernel_G".into(), json!(kernel_g(&ft).coeffs()));
    obj.insert(
        "assumptions".into(),
        json!({
            "all_pass": report.all_pass(),
            "items": items,
            "kernel_integral": report.kernel_integral,
            "kernel_integral_closed_form": report.kernel_integral_closed_form,
            "kernel_integral_is_minus_one": report.kernel_integral_is_minus_one,
        }),
    );
    prepare_dir(cfg)?;
    io::write_json(&cfg.output_dir.join("spectrum.json"), &out)?;
    println!("alpha_f = {}, sigma_G = {}, distinct = {}, in_strip = {}", spec.alpha_f, spec.sigma_g, spec.distinct, spec.in_strip);
    Ok(Status::from_pass(spec.distinct && spec.in_strip))
}

fn simulate_trace(cfg: &RunConfig) -> Result<RecurrenceTrace> {
    match run_recurrence(&cfg.f(), &cfg.engine()) {
        Ok(t) => Ok(t),
        Err(Error::SignDegeneracy { p, partial }) => Err(anyhow::anyhow!(
            "c_{p} is not positive at p = {p}; the normalizer is undefined (last good p = {})",
            partial.horizon()
        )),
        Err(e) => Err(e.into()),
    }
}

fn dominant_is_complex(f: &RealPolynomial) -> bool {
    characteristic_spectrum(&symmetrize(f), ROOT_RESIDUAL_TOL)
        .map(|s| s.dominant_root().im != 0.0)
        .unwrap_or(true)
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Status> {
    let mut trace = simulate_trace(cfg)?;
    let mut warnings = trace.warnings.clone();
    let alpha_f = characteristic_spectrum(&symmetrize(&cfg.f()), ROOT_RESIDUAL_TOL).map(|s| s.alpha_f).ok();
    let est = match estimate_x_star(&mut trace) {
        Ok(e) => Some(e),
        Err(e) => {
            warnings.push(format!("x* not estimated: {e}"));
            None
        }
    };
    let range = cfg.fit_range_or_default();
    let fit = if est.is_some() {
        match fit_any(&trace.delta, range, dominant_is_complex(&cfg.f())) {
            Ok(f) => Some(f),
            Err(e) => {
                warnings.push(format!("delta fit over {range:?} failed: {e}"));
                None
            }
        }
    } else {
        None
    };
    let rv = if est.is_some() {
        match compute_r(&trace, cfg.x) {
            Ok(r) => Some(r),
            Err(e) => {
                warnings.push(format!("R not computed: {e}"));
                None
            }
        }
    } else {
        None
    };
    prepare_dir(cfg)?;
    io::write_trace(&cfg.output_dir, &trace, cfg)?;
    let summary = json!({
        "x_star": est.map(|e| e.x_star),
        "log_x_star": est.map(|e| e.log_x_star),
        "err_bound": est.map(|e| e.err_bound),
        "alpha_f": alpha_f,
        "fitted_exponent": fit.as_ref().map(|f| f.exponent),
        "fit": fit.as_ref().map(FitJson::from),
        "x": cfg.x,
        "R": rv.as_ref().map(|r| r.r),
        "sup_Cp": rv.as_ref().map(|r| r.sup_abs(2)),
        "sup_Cp_fit_range": rv.as_ref().map(|r| r.sup_abs(range.0)),
        "horizon": cfg.horizon,
        "precision": cfg.precision.to_string(),
        "config_hash": io::config_hash(cfg),
        "warnings": warnings,
    });
    io::write_json(&cfg.output_dir.join("summary.json"), &summary)?;
    match (est, &fit) {
        (Some(e), Some(f)) => println!("x* = {:.17e} (err {:.1e}), delta exponent {:.4}", e.x_star, e.err_bound, f.exponent),
        (Some(e), None) => println!("x* = {:.17e} (err {:.1e})", e.x_star, e.err_bound),
        _ => println!("simulated P = {}", cfg.horizon),
    }
    Ok(Status::Pass)
}

fn forcing_of(cfg: &RunConfig) -> Result<Option<(f64, f64)>> {
    cfg.forcing.as_deref().map(parse_forcing).transpose()
}

fn write_linear_csv(path: &std::path::Path, tr: &LinearTrace) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["p", "xi_p", "h_p"])?;
    for p in 2..=tr.horizon() {
        w.write_record([p.to_string(), io::fmt17(tr.xi[p]), io::fmt17(tr.h[p])])?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_linear(cfg: &RunConfig) -> Result<Status> {
    let kernel = kernel_of(cfg)?;
    let spec = sigma_of_kernel(&kernel, ROOT_RESIDUAL_TOL)?;
    let forcing = forcing_of(cfg)?;
    let (amp, expo) = forcing.unwrap_or((0.0, 0.0));
    let big_p = cfg.horizon;
    let tr = run_linear(&kernel, cfg.xi2, |p| amp * (p as f64).powf(expo), big_p)?;
    let moments = moment_transform(&tr);
    let mid = big_p / 2;
    let plateau_tol = cfg.threshold("plateau");
    let pl = plateau(&tr.xi, -spec.sigma_g, 2, mid, big_p);
    let plateau_ok = pl.sup.is_finite() && pl.relative_change < plateau_tol;
    let moment_ok = moments.reconstruction_residual < cfg.threshold("moment_residual");
    let range = cfg.fit_range_or_default();
    let all_zero = tr.xi[2..].iter().all(|&x| x == 0.0);
    let fit = if all_zero { None } else { fit_any(&tr.xi, range, spec.dominant_root().im != 0.0).ok() };
    let forced = forcing.filter(|&(a, _)| a != 0.0).map(|(_, e)| {
        let fs = forced_stability(&tr, spec.sigma_g, spec.sigma_g - e, mid);
        json!({
            "epsilon": spec.sigma_g - e,
            "sup": fs.plateau.sup,
            "c1": fs.c1,
            "ratio_c1": fs.ratio_c1,
            "ratio_c1_xi2": fs.ratio_c1_xi2,
        })
    });
    prepare_dir(cfg)?;
    write_linear_csv(&cfg.output_dir.join("linear.csv"), &tr)?;
    let pass = plateau_ok && moment_ok;
    let out = json!({
        "kernel": kernel_json(&kernel),
        "spectrum": SpectrumJson::from(&spec),
        "xi2": cfg.xi2,
        "forcing": forcing.map(|(a, e)| json!({"amplitude": a, "exponent": e})),
        "horizon": big_p,
        "all_zero": all_zero,
        "plateau": {
            "weight": -spec.sigma_g,
            "sup": pl.sup,
            "sup_at_mid": pl.sup_at_mid,
            "mid": mid,
            "argmax": pl.argmax,
            "relative_change": pl.relative_change,
            "threshold": plateau_tol,
            "pass": plateau_ok,
        },
        "moments": {
            "reconstruction_residual": moments.reconstruction_residual,
            "worst_p": moments.worst_p,
            "threshold": cfg.threshold("moment_residual"),
            "pass": moment_ok,
        },
        "fit": fit.as_ref().map(FitJson::from),
        "forced_stability": forced,
        "pass": pass,
    });
    io::write_json(&cfg.output_dir.join("linear.json"), &out)?;
    println!(
        "sup |xi_p| p^{} = {:.6e}, change {:.2e}, moment residual {:.2e}",
        -spec.sigma_g, pl.sup, pl.relative_change, moments.reconstruction_residual
    );
    Ok(Status::from_pass(pass))
}

pub fn cmd_stability(cfg: &RunConfig) -> Result<Status> {
    let kernel = kernel_of(cfg)?;
    let (shifted, shifted_spec) = kernel.normalized_to_zero_sigma(ROOT_RESIDUAL_TOL)?;
    let shift = sigma_of_kernel(&kernel, ROOT_RESIDUAL_TOL)?.sigma_g;
    let cap = cfg.threshold("norm_cap");
    let plateau_tol = cfg.threshold("plateau");
    let scans: Vec<Value> = cfg
        .q0
        .par_iter()
        .map(|&q0| match product_norm_scan(&shifted, &[q0], cfg.horizon, cap) {
            Ok(mut v) => {
                let s = v.remove(0);
                let change = if s.sup_at_mid > 0.0 { (s.sup_norm - s.sup_at_mid) / s.sup_at_mid } else { 0.0 };
                json!({
                    "q0": s.q0,
                    "sup_norm": s.sup_norm,
                    "profile": s.profile,
                    "plateau_detected": s.sup_norm.is_finite() && change < plateau_tol,
                    "sup_at_mid": s.sup_at_mid,
                })
            }
            Err(e) => json!({
                "q0": q0,
                "sup_norm": null,
                "profile": [],
                "plateau_detected": false,
                "error": e.to_string(),
            }),
        })
        .collect();
    let eig = eigen_check(&kernel)?;
    let sim = similarity_check(&shifted, cfg.horizon.min(2000)).ok();
    let mismatch_tol = cfg.threshold("eigen_mismatch");
    let scans_ok = scans.iter().all(|s| s["plateau_detected"] == json!(true));
    let pass = scans_ok && eig.mismatch < mismatch_tol;
    let n = eig.m_tilde.dim();
    let m_tilde: Vec<Vec<[f64; 2]>> = (0..n).map(|i| (0..n).map(|j| pair(eig.m_tilde[(i, j)])).collect()).collect();
    let out = json!({
        "kernel": kernel_json(&kernel),
        "sigma_shift": shift,
        "shifted_spectrum": SpectrumJson::from(&shifted_spec),
        "horizon": cfg.horizon,
        "norm_cap": cap,
        "scans": scans,
        "eigen": {
            "m_tilde": m_tilde,
            "eigenvalues": eig.eigenvalues.iter().copied().map(pair).collect::<Vec<_>>(),
            "kernel_roots": eig.kernel_roots.iter().copied().map(pair).collect::<Vec<_>>(),
            "mismatch": eig.mismatch,
            "threshold": mismatch_tol,
        },
        "similarity": sim.map(|s| json!({"condition_number": s.condition_number, "fitted_c": s.fitted_c, "worst_p": s.worst_p})),
        "pass": pass,
    });
    prepare_dir(cfg)?;
    io::write_json(&cfg.output_dir.join("stability.json"), &out)?;
    for s in &scans {
        println!("q0 = {}: sup norm {}, plateau {}", s["q0"], s["sup_norm"], s["plateau_detected"]);
    }
    println!("eigen mismatch {:.2e}", eig.mismatch);
    Ok(Status::from_pass(pass))
}

/// One entry of the verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub pass: bool,
    pub measured_constant: Option<f64>,
    pub threshold: Option<f64>,
    pub worst_p: Option<usize>,
    pub details: Value,
}

impl CheckResult {
    fn failed(e: impl std::fmt::Display) -> Self {
        Self { pass: false, measured_constant: None, threshold: None, worst_p: None, details: json!({"error": e.to_string()}) }
    }
}

struct VerifyCtx<'a> {
    cfg: &'a RunConfig,
    trace: RecurrenceTrace,
    g: RealPolynomial,
    ft: RealPolynomial,
    spectrum: Spectrum,
}

fn check_identity(cx: &VerifyCtx) -> Result<CheckResult> {
    let upto = cx.trace.horizon().min(1000);
    let r = identity_check(&cx.trace, upto)?;
    let thr = cx.cfg.threshold("identity");
    Ok(CheckResult {
        pass: r.max_relative_residual < thr,
        measured_constant: Some(r.max_relative_residual),
        threshold: Some(thr),
        worst_p: Some(r.worst_p),
        details: json!({"range": [3, upto], "r1_increment_constant": r.r1_increment_constant}),
    })
}

fn check_main_lemma(cx: &VerifyCtx) -> Result<CheckResult> {
    let to = cx.trace.xi_horizon().min(2000);
    let r = main_lemma_envelope(&cx.trace, 10, to)?;
    // running max over the upper half of the range should have settled
    let half = r.running_max.iter().rev().find(|(p, _)| *p <= to / 2).map(|x| x.1).unwrap_or(0.0);
    let growth = if half > 0.0 { (r.envelope_constant - half) / half } else { f64::INFINITY };
    let thr = cx.cfg.threshold("plateau");
    Ok(CheckResult {
        pass: r.envelope_constant.is_finite() && growth < thr,
        measured_constant: Some(r.envelope_constant),
        threshold: Some(thr),
        worst_p: Some(r.worst_p),
        details: json!({"range": [10, to], "upper_half_growth": growth, "running_max": r.running_max}),
    })
}

fn check_nonlinear(cx: &VerifyCtx) -> Result<CheckResult> {
    let sigma = cx.cfg.threshold("nonlinear_sigma");
    let upto = cx.trace.xi_horizon().min(2000);
    let k = fit_nonlinear_constants(&cx.trace, sigma, upto)?;
    let mut worst = 0.0;
    let mut worst_p = 2 * k.n0;
    let mut first_failure = None;
    for p in 2 * k.n0..=upto {
        let r = nonlinear_bound_check(&cx.trace, &cx.ft, &k, p)?;
        if !r.holds && first_failure.is_none() {
            first_failure = Some(p);
        }
        if r.ratio > worst {
            worst = r.ratio;
            worst_p = p;
        }
    }
    Ok(CheckResult {
        pass: first_failure.is_none(),
        measured_constant: Some(worst),
        threshold: Some(1.0),
        worst_p: Some(worst_p),
        details: json!({
            "sigma": sigma, "C1": k.c1, "C2": k.c2, "N0": k.n0, "C_sigma": c_sigma(sigma),
            "range": [2 * k.n0, upto], "first_failure": first_failure,
        }),
    })
}

fn check_ansatz(cx: &VerifyCtx) -> Result<CheckResult> {
    let p = cx.trace.xi_horizon() + 1;
    // smallest N0 ≥ max(3, A1) where A1 is measured from N0 on
    for n0 in 3..p.saturating_sub(1) {
        let probe = AnsatzConstants { a1: f64::INFINITY, a2: f64::INFINITY, a3: f64::INFINITY, n0, c4: 1.0, epsilon: 0.1, p0: n0 };
        let r = ansatz_check(&cx.trace, &probe, p)?;
        if n0 as f64 >= r.min_a1.max(3.0) {
            let k = AnsatzConstants { a1: r.min_a1, a2: r.min_a2, a3: r.min_a3, ..probe };
            let r = ansatz_check(&cx.trace, &k, p)?;
            return Ok(CheckResult {
                pass: r.all_pass(),
                measured_constant: Some(r.min_a1),
                threshold: None,
                worst_p: Some(p),
                details: json!({"N0": n0, "A1": r.min_a1, "A2": r.min_a2, "A3": r.min_a3}),
            });
        }
    }
    Ok(CheckResult::failed(format!("no N0 < {p} with N0 >= max(3, A1)")))
}

fn check_base_case(cx: &VerifyCtx) -> Result<CheckResult> {
    let epsilon = cx.cfg.threshold("epsilon");
    let sigma_g = cx.spectrum.sigma_g;
    let cap = 0.5 * (1.0 + sigma_g).min(-sigma_g);
    let k = AnsatzConstants { a1: 1.0, a2: 1.0, a3: 1.0, n0: 3, c4: 1.0, epsilon, p0: 2 };
    let r = base_case_verifier(&cx.trace, &cx.g, &k)?;
    let eps_ok = epsilon > 0.0 && epsilon < cap;
    Ok(CheckResult {
        pass: r.feasible && r.horizon_sufficient && eps_ok,
        measured_constant: Some(r.c4),
        threshold: Some(epsilon),
        worst_p: Some(r.p0),
        details: json!({
            "C4": r.c4, "epsilon": epsilon, "epsilon_cap": cap, "p0": r.p0, "margin": r.margin,
            "horizon": r.horizon, "horizon_sufficient": r.horizon_sufficient, "sigma_G": r.sigma_g,
        }),
    })
}

fn check_hat_xi(cx: &VerifyCtx) -> Result<CheckResult> {
    let top = cx.trace.xi_horizon();
    let mut worst: f64 = 0.0;
    let mut worst_p = None;
    let mut checked = 0usize;
    let mut failures = 0usize;
    let mut worst_hat: f64 = 0.0;
    for p in 7..=top {
        let x = cx.trace.xi[p];
        if !x.is_finite() || (p as f64) < 2.0 * x.abs().sqrt() {
            continue;
        }
        let c = hat_xi_check(x, p);
        checked += 1;
        let slack = 4.0 * f64::EPSILON * x.abs();
        if c.gap > c.bound_xi + slack {
            failures += 1;
        }
        if c.bound_xi > 0.0 {
            let ratio = c.gap / c.bound_xi;
            if ratio > worst {
                worst = ratio;
                worst_p = Some(p);
            }
        }
        if c.bound_hat > 0.0 {
            worst_hat = worst_hat.max(c.gap / c.bound_hat);
        }
    }
    Ok(CheckResult {
        pass: failures == 0 && checked > 0,
        measured_constant: Some(worst),
        threshold: Some(1.0),
        worst_p,
        details: json!({"checked": checked, "failures": failures, "max_ratio_hat_form": worst_hat}),
    })
}

fn check_h_order(cx: &VerifyCtx) -> Result<CheckResult> {
    let h = h_sequence(&cx.trace, &cx.g);
    let top = cx.trace.xi_horizon();
    let (lo, hi) = cx.cfg.fit_range_or_default();
    let range = (lo.max(3), hi.min(top));
    let osc = cx.spectrum.dominant_root().im != 0.0;
    let fx = fit_any(&cx.trace.xi, range, osc)?;
    // h rarely changes sign; an oscillatory model then degenerates to ω → 0
    let fh = fit_any(&h, range, osc && zero_crossings(&h, range).len() >= 2)?;
    let gap = cx.cfg.threshold("h_order_gap");
    Ok(CheckResult {
        pass: fh.exponent <= fx.exponent - gap,
        measured_constant: Some(fx.exponent - fh.exponent),
        threshold: Some(gap),
        worst_p: None,
        details: json!({"xi_fit": FitJson::from(&fx), "h_fit": FitJson::from(&fh)}),
    })
}

fn check_decay(cx: &mut VerifyCtx) -> Result<CheckResult> {
    let est = estimate_x_star(&mut cx.trace)?;
    let range = cx.cfg.fit_range_or_default();
    let fit = fit_any(&cx.trace.delta, range, cx.spectrum.dominant_root().im != 0.0)?;
    let tol = cx.cfg.threshold("decay_tolerance");
    let expected = -cx.spectrum.alpha_f;
    Ok(CheckResult {
        pass: (fit.exponent - expected).abs() <= tol,
        measured_constant: Some(fit.exponent),
        threshold: Some(tol),
        worst_p: None,
        details: json!({"expected_exponent": expected, "x_star": est.x_star, "err_bound": est.err_bound, "fit": FitJson::from(&fit)}),
    })
}

fn check_appendix(cx: &VerifyCtx) -> Result<CheckResult> {
    let r = appendix_inequality_suite(cx.cfg.samples, cx.cfg.seed);
    let items: Vec<Value> = r
        .items
        .iter()
        .map(|i| json!({"name": i.name, "samples": i.samples, "failures": i.failures, "worst_margin": i.worst_margin, "witness": i.witness}))
        .collect();
    let worst = r.items.iter().map(|i| i.worst_margin).fold(f64::INFINITY, f64::min);
    Ok(CheckResult {
        pass: r.all_pass(),
        measured_constant: Some(worst),
        threshold: Some(0.0),
        worst_p: None,
        details: json!({"seed": r.seed, "items": items}),
    })
}

pub fn cmd_verify(cfg: &RunConfig, use_cache: bool) -> Result<Status> {
    prepare_dir(cfg)?;
    let cached = if use_cache { io::load_cached_trace(&cfg.output_dir, cfg)? } else { None };
    let from_cache = cached.is_some();
    let trace = match cached {
        Some(t) => t,
        None => {
            let t = simulate_trace(cfg)?;
            io::write_trace(&cfg.output_dir, &t, cfg)?;
            t
        }
    };
    let f = cfg.f();
    let ft = symmetrize(&f);
    let g = kernel_g(&ft);
    let spectrum = characteristic_spectrum(&ft, ROOT_RESIDUAL_TOL)?;
    let mut cx = VerifyCtx { cfg, trace, g, ft, spectrum };

    let mut checks: Vec<Check> = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let mut results: BTreeMap<&'static str, CheckResult> = BTreeMap::new();
    for check in checks {
        let r = match check {
            Check::Identity => check_identity(&cx),
            Check::MainLemma => check_main_lemma(&cx),
            Check::Nonlinear => check_nonlinear(&cx),
            Check::Ansatz => check_ansatz(&cx),
            Check::BaseCase => check_base_case(&cx),
            Check::HatXi => check_hat_xi(&cx),
            Check::HOrder => check_h_order(&cx),
            Check::Decay => check_decay(&mut cx),
            Check::Appendix => check_appendix(&cx),
        };
        let r = r.unwrap_or_else(CheckResult::failed);
        println!("[{}] {}", if r.pass { "PASS" } else { "FAIL" }, check.name());
        results.insert(check.name(), r);
    }
    let all_pass = results.values().all(|r| r.pass);
    let out = json!({
        "config_hash": io::config_hash(cfg),
        "horizon": cfg.horizon,
        "precision": cfg.precision.to_string(),
        "trace_from_cache": from_cache,
        "all_pass": all_pass,
        "checks": results,
    });
    io::write_json(&cfg.output_dir.join("verify.json"), &out)?;
    Ok(Status::from_pass(all_pass))
}
