//! The nonlinear recurrence `c_p = (1/p) Σ f(p₁/p) c_{p₁} c_{p−p₁}`, `c_1 = 1`,
//! where `c_p = Λ_p(1)` and `Λ_p(x) = c_p x^p`.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{self, RealPolynomial};
use crate::numerics::{DoubleDouble, Rational, ScaledReal};
use crate::verify::fit::{fit_decay, DecayFit};

/// Largest horizon the exact oracle accepts.
pub const ORACLE_MAX_HORIZON: usize = 16;

/// Below this horizon the tail of `log a_p` cannot be modeled.
pub const MIN_X_STAR_HORIZON: usize = 100;

/// Beyond this index `ξ_p` is NaN in double precision.
pub const DOUBLE_XI_LIMIT: usize = 4096;

const CHUNK: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    Double,
    #[default]
    DoubleDouble,
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Double => "double",
            Self::DoubleDouble => "double-double",
        })
    }
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "double" => Ok(Self::Double),
            "double-double" | "dd" => Ok(Self::DoubleDouble),
            _ => Err(Error::InvalidConfig(alloc::format!("unknown precision `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EngineConfig {
    pub horizon: usize,
    pub precision: Precision,
    pub parallel: bool,
    /// Binary exponent magnitude of `ĉ_p` that triggers a rescale.
    pub renorm_threshold: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { horizon: 1024, precision: Precision::DoubleDouble, parallel: false, renorm_threshold: 256 }
    }
}

impl EngineConfig {
    pub fn new(horizon: usize) -> Self {
        Self { horizon, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon < 2 {
            return Err(Error::InvalidConfig(alloc::format!("horizon {} < 2", self.horizon)));
        }
        if !(8..=1000).contains(&self.renorm_threshold) {
            return Err(Error::InvalidConfig(alloc::format!(
                "renorm_threshold {} outside [8, 1000]",
                self.renorm_threshold
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XStarEstimate {
    pub x_star: f64,
    pub log_x_star: f64,
    pub err_bound: f64,
    /// Modeled `log x* − log a_P`.
    pub tail: f64,
    pub tail_fit: Option<DecayFit>,
}

/// Output of [`run_recurrence`]. Every per-index vector has length `P + 1`
/// and is indexed by `p`; entry 0 (and entry 1 for `ξ`) is a placeholder.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceTrace {
    pub f: RealPolynomial,
    pub precision: Precision,
    /// `Λ_p(1)`.
    pub c: Vec<ScaledReal>,
    /// Per-index log scale folded out of the internal values at the end of the run.
    pub scale_offset: f64,
    /// True `ln c_p`.
    pub log_c: Vec<f64>,
    pub log_a: Vec<f64>,
    pub a: Vec<f64>,
    /// `Δ_p = ln a_p − ln a_{p−1}`.
    pub log_increment: Vec<f64>,
    pub xi: Vec<f64>,
    /// `(x*/a_p)^p − 1`; empty until [`estimate_x_star`] runs.
    pub delta: Vec<f64>,
    pub x_star: Option<XStarEstimate>,
    pub warnings: Vec<String>,
}

impl RecurrenceTrace {
    fn empty(f: &RealPolynomial, precision: Precision, capacity: usize) -> Self {
        let mut t = Self {
            f: f.clone(),
            precision,
            c: Vec::with_capacity(capacity),
            scale_offset: 0.0,
            log_c: Vec::with_capacity(capacity),
            log_a: Vec::with_capacity(capacity),
            a: Vec::with_capacity(capacity),
            log_increment: Vec::with_capacity(capacity),
            xi: Vec::with_capacity(capacity),
            delta: Vec::new(),
            x_star: None,
            warnings: Vec::new(),
        };
        t.c.push(ScaledReal::ZERO);
        t.log_c.push(f64::NAN);
        t.log_a.push(f64::NAN);
        t.a.push(f64::NAN);
        t.log_increment.push(f64::NAN);
        t.xi.push(f64::NAN);
        t
    }

    /// The horizon `P`.
    pub fn horizon(&self) -> usize {
        self.a.len() - 1
    }

    /// Synthetic trace from normalizers `a_1, …, a_P` (`a[0]` is ignored).
    pub fn from_normalizers(f: &RealPolynomial, a: &[f64]) -> Self {
        let mut t = Self::empty(f, Precision::DoubleDouble, a.len());
        for (p, &ap) in a.iter().enumerate().skip(1) {
            let la = ap.ln();
            t.push_row(p, la, if p == 1 { f64::NAN } else { la - t.log_a[p - 1] });
        }
        t
    }

    /// Synthetic trace from `a_1` and `ξ_2, …, ξ_P` (`xi[0]`, `xi[1]` ignored).
    pub fn from_xi(f: &RealPolynomial, a1: f64, xi: &[f64]) -> Self {
        let mut t = Self::empty(f, Precision::DoubleDouble, xi.len().max(2));
        t.push_row(1, a1.ln(), f64::NAN);
        for (p, &x) in xi.iter().enumerate().skip(2) {
            let d = (x / (p * p * p) as f64).ln_1p();
            let la = t.log_a[p - 1] + d;
            t.push_row(p, la, d);
        }
        t
    }

    /// Rebuild a trace from exported columns `ln c_p` and `ξ_p` (index 0 ignored;
    /// `xi[1]` too). Where `ξ_p` is NaN the increment comes from `ln a`.
    pub fn from_columns(f: &RealPolynomial, precision: Precision, log_c: &[f64], xi: &[f64]) -> Self {
        let mut t = Self::empty(f, precision, log_c.len());
        for (p, &lc) in log_c.iter().enumerate().skip(1) {
            let log_a = -lc / p as f64;
            let x = xi.get(p).copied().unwrap_or(f64::NAN);
            let increment = if p == 1 {
                f64::NAN
            } else if x.is_finite() {
                (x / (p * p * p) as f64).ln_1p()
            } else {
                log_a - t.log_a[p - 1]
            };
            t.c.push(ScaledReal::from_ln(lc));
            t.log_c.push(lc);
            t.log_a.push(log_a);
            t.a.push(log_a.exp());
            t.log_increment.push(increment);
            t.xi.push(if p >= 2 { x } else { f64::NAN });
        }
        t
    }

    fn push_row(&mut self, p: usize, log_a: f64, increment: f64) {
        let log_c = -(p as f64) * log_a;
        self.c.push(ScaledReal::from_ln(log_c));
        self.log_c.push(log_c);
        self.log_a.push(log_a);
        self.a.push(log_a.exp());
        self.log_increment.push(increment);
        self.xi.push(if p >= 2 { xi_from_increment(p, increment) } else { f64::NAN });
    }

    /// Largest `p` with a finite `ξ_p`.
    pub fn xi_horizon(&self) -> usize {
        (2..self.xi.len()).rev().find(|&p| self.xi[p].is_finite()).unwrap_or(1)
    }
}

fn xi_from_increment(p: usize, increment: f64) -> f64 {
    let p = p as f64;
    p * p * p * increment.exp_m1()
}

/// Arithmetic the engine can run in.
trait EngineScalar: Copy + Send + Sync + Add<Output = Self> + Mul<Output = Self> {
    const ZERO: Self;
    fn from_dd(x: DoubleDouble) -> Self;
    fn to_dd(self) -> DoubleDouble;
    fn ratio(num: usize, den: usize) -> Self;
    fn div_usize(self, d: usize) -> Self;
}

impl EngineScalar for f64 {
    const ZERO: Self = 0.0;
    fn from_dd(x: DoubleDouble) -> Self {
        x.to_f64()
    }
    fn to_dd(self) -> DoubleDouble {
        DoubleDouble::from_f64(self)
    }
    fn ratio(num: usize, den: usize) -> Self {
        num as f64 / den as f64
    }
    fn div_usize(self, d: usize) -> Self {
        self / d as f64
    }
}

impl EngineScalar for DoubleDouble {
    const ZERO: Self = DoubleDouble::ZERO;
    fn from_dd(x: DoubleDouble) -> Self {
        x
    }
    fn to_dd(self) -> DoubleDouble {
        self
    }
    fn ratio(num: usize, den: usize) -> Self {
        DoubleDouble::from_f64(num as f64).div_f64(den as f64)
    }
    fn div_usize(self, d: usize) -> Self {
        self.div_f64(d as f64)
    }
}

#[inline]
fn horner<S: EngineScalar>(coeffs: &[S], x: S) -> S {
    coeffs.iter().rev().fold(S::ZERO, |acc, &c| acc * x + c)
}

fn chunk_sum<S: EngineScalar>(c: &[S], ft: &[S], p: usize, lo: usize, hi: usize) -> S {
    let mut acc = S::ZERO;
    for p1 in lo..hi {
        acc = acc + horner(ft, S::ratio(p1, p)) * (c[p1] * c[p - p1]);
    }
    acc
}

/// `Σ_{p₁ < p/2} f̃(p₁/p) c_{p₁} c_{p−p₁}` summed chunk by chunk in a fixed order.
fn paired_sum<S: EngineScalar>(c: &[S], ft: &[S], p: usize, parallel: bool) -> S {
    let half = (p - 1) / 2;
    let chunks = half.div_ceil(CHUNK);
    let bounds = |k: usize| (1 + k * CHUNK, (1 + (k + 1) * CHUNK).min(half + 1));
    #[cfg(feature = "parallel")]
    if parallel && chunks > 1 {
        use rayon::prelude::*;
        let partial: Vec<S> = (0..chunks)
            .into_par_iter()
            .map(|k| {
                let (lo, hi) = bounds(k);
                chunk_sum(c, ft, p, lo, hi)
            })
            .collect();
        return partial.into_iter().fold(S::ZERO, |a, b| a + b);
    }
    let _ = parallel;
    (0..chunks).fold(S::ZERO, |acc, k| {
        let (lo, hi) = bounds(k);
        acc + chunk_sum(c, ft, p, lo, hi)
    })
}

fn run_engine<S: EngineScalar>(f: &RealPolynomial, cfg: &EngineConfig, mut trace: RecurrenceTrace) -> Result<RecurrenceTrace> {
    let big_p = cfg.horizon;
    let ft: Vec<S> = kernel::symmetrized_coeffs_dd(f).into_iter().map(S::from_dd).collect();
    let f_half = S::from_dd(f.eval_dd(DoubleDouble::from_f64(0.5)));
    let threshold = f64::from(cfg.renorm_threshold);

    let mut c: Vec<S> = vec![S::ZERO; big_p + 1];
    c[1] = S::from_dd(DoubleDouble::ONE);
    // true ln c_q = ln ĉ_q + q·offset
    let mut offset = DoubleDouble::ZERO;
    let mut prev_ln = DoubleDouble::ZERO;
    let mut increments: Vec<DoubleDouble> = vec![DoubleDouble::ZERO; big_p + 1];
    let mut ln_hat: Vec<DoubleDouble> = vec![DoubleDouble::ZERO; big_p + 1];
    let mut offsets: Vec<DoubleDouble> = vec![DoubleDouble::ZERO; big_p + 1];
    let mut last = 1;

    for p in 2..=big_p {
        let mut sum = paired_sum(&c, &ft, p, cfg.parallel);
        if p % 2 == 0 {
            let m = c[p / 2];
            sum = sum + f_half * (m * m);
        }
        let cp = sum.div_usize(p);
        let cp_dd = cp.to_dd();
        if !(cp_dd.hi > 0.0) || !cp_dd.is_finite() {
            trace.warnings.push(alloc::format!("c_{p} = {:e} is not positive", cp_dd.to_f64()));
            finish_rows(&mut trace, last, &ln_hat, &offsets, &increments, cfg.precision);
            return Err(Error::SignDegeneracy { p, partial: Box::new(trace) });
        }
        c[p] = cp;
        let ln_p = cp_dd.ln();
        increments[p] = prev_ln.div_f64((p - 1) as f64) - ln_p.div_f64(p as f64);
        ln_hat[p] = ln_p;
        offsets[p] = offset;
        prev_ln = ln_p;
        last = p;

        if libm::ilogb(cp_dd.hi).unsigned_abs() as f64 > threshold {
            let ln_lambda = -ln_p.to_f64() / p as f64;
            let lambda = S::from_dd(DoubleDouble::from_f64(ln_lambda).exp());
            let mut power = lambda;
            for slot in c.iter_mut().take(p + 1).skip(1) {
                *slot = *slot * power;
                power = power * lambda;
            }
            offset = offset.add_f64(-ln_lambda);
            prev_ln = c[p].to_dd().ln();
        }
    }
    finish_rows(&mut trace, last, &ln_hat, &offsets, &increments, cfg.precision);
    trace.scale_offset = offset.to_f64();
    Ok(trace)
}

fn finish_rows(
    trace: &mut RecurrenceTrace,
    last: usize,
    ln_hat: &[DoubleDouble],
    offsets: &[DoubleDouble],
    increments: &[DoubleDouble],
    precision: Precision,
) {
    for p in 1..=last {
        let log_c = if p == 1 { DoubleDouble::ZERO } else { ln_hat[p] + offsets[p].mul_f64(p as f64) };
        let log_a = -log_c.div_f64(p as f64);
        let inc = if p == 1 { f64::NAN } else { increments[p].to_f64() };
        trace.c.push(ScaledReal::from_ln(log_c.to_f64()));
        trace.log_c.push(log_c.to_f64());
        trace.log_a.push(log_a.to_f64());
        trace.a.push(log_a.to_f64().exp());
        trace.log_increment.push(inc);
        let keep = p >= 2 && (precision == Precision::DoubleDouble || p <= DOUBLE_XI_LIMIT);
        trace.xi.push(if keep { xi_from_increment(p, inc) } else { f64::NAN });
    }
}

/// Simulate the recurrence up to `cfg.horizon`.
///
/// Failing integral conditions on `f` are recorded in `warnings`; the run
/// still proceeds. A non-positive `c_p` aborts with [`Error::SignDegeneracy`]
/// carrying the trace up to `p − 1`.
pub fn run_recurrence(f: &RealPolynomial, cfg: &EngineConfig) -> Result<RecurrenceTrace> {
    cfg.validate()?;
    if f.is_zero() || !f.is_finite() {
        return Err(Error::InvalidConfig("f must be a nonzero polynomial with finite coefficients".into()));
    }
    let mut trace = RecurrenceTrace::empty(f, cfg.precision, cfg.horizon + 1);
    let report = kernel::validate_assumption(f);
    for item in report.items.iter().take(2).filter(|i| !i.pass) {
        trace
            .warnings
            .push(alloc::format!("{} = {} (expected {})", item.name, item.measured, item.expected));
    }
    match cfg.precision {
        Precision::Double => run_engine::<f64>(f, cfg, trace),
        Precision::DoubleDouble => run_engine::<DoubleDouble>(f, cfg, trace),
    }
}

/// Exact `Λ_p(x)` for `p ≤ horizon ≤ 16`; entry 0 is zero.
pub fn oracle_lambda(f: &[Rational], horizon: usize, x: &Rational) -> Result<Vec<Rational>> {
    if horizon > ORACLE_MAX_HORIZON {
        return Err(Error::InvalidConfig(alloc::format!(
            "oracle horizon {horizon} exceeds {ORACLE_MAX_HORIZON}"
        )));
    }
    let mut out = vec![Rational::zero(); horizon + 1];
    if horizon >= 1 {
        out[1] = x.clone();
    }
    for p in 2..=horizon {
        let inv_p = Rational::new(1, p as i64)?;
        let mut acc = Rational::zero();
        for p1 in 1..p {
            let gamma = Rational::new(p1 as i64, p as i64)?;
            acc = acc + Rational::eval_poly(f, &gamma) * out[p1].clone() * out[p - p1].clone();
        }
        out[p] = acc * inv_p;
    }
    Ok(out)
}

/// Exact `c_p = Λ_p(1)`.
pub fn oracle_recurrence(f: &[Rational], horizon: usize) -> Result<Vec<Rational>> {
    oracle_lambda(f, horizon, &Rational::one())
}

/// Extrapolate `x* = lim a_p` from the trace and fill `trace.delta`.
///
/// The tail `Σ_{p>P} ln(1 + ξ_p/p³)` is modeled from a fit
/// `ξ_p ≈ Re(Z p^s)` over the upper half of the available `ξ`, summed by
/// Euler-Maclaurin. `err_bound` is the magnitude of that modeled tail.
pub fn estimate_x_star(trace: &mut RecurrenceTrace) -> Result<XStarEstimate> {
    let big_p = trace.horizon();
    if big_p < MIN_X_STAR_HORIZON {
        return Err(Error::InsufficientHorizon { horizon: big_p, required: MIN_X_STAR_HORIZON });
    }
    let xi_top = trace.xi_horizon();
    let window = (xi_top / 2, xi_top);
    let all_zero = (window.0..=window.1).all(|p| trace.xi[p] == 0.0);
    let fit = if all_zero {
        None
    } else {
        fit_decay(&trace.xi, window, true).or_else(|_| fit_decay(&trace.xi, window, false)).ok()
    };
    let tail = match &fit {
        Some(fit) => {
            let (z, s) = fit.complex_form();
            let pp = Complex64::new(big_p as f64, 0.0);
            let integral = pp.powc(s - 2.0) / (2.0 - s);
            let endpoint = pp.powc(s - 3.0) * 0.5;
            let slope = pp.powc(s - 4.0) * (s - 3.0) / 12.0;
            (z * (integral - endpoint - slope)).re
        }
        None => 0.0,
    };
    let log_x_star = trace.log_a[big_p] + tail;
    // ln x* − ln a_p = Σ_{q>p} Δ_q + tail, accumulated from the top
    let mut delta = vec![f64::NAN; big_p + 1];
    let mut suffix = DoubleDouble::from_f64(tail);
    for p in (1..=big_p).rev() {
        delta[p] = (p as f64 * suffix.to_f64()).exp_m1();
        if p >= 2 {
            suffix = suffix.add_f64(trace.log_increment[p]);
        }
    }
    let est = XStarEstimate {
        x_star: log_x_star.exp(),
        log_x_star,
        err_bound: tail.abs(),
        tail,
        tail_fit: fit,
    };
    trace.delta = delta;
    trace.x_star = Some(est);
    Ok(est)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RValue {
    pub r: f64,
    pub alpha_f: f64,
    /// `(Λ_p(x)/R^p − 1)·p^{α_f}`, indexed by `p`.
    pub cp: Vec<f64>,
}

impl RValue {
    pub fn sup_abs(&self, from: usize) -> f64 {
        self.cp.iter().skip(from).filter(|v| v.is_finite()).fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `R = x/x*` and the normalized deviations `C_p`. Since `Λ_p(x)/R^p = (x*/a_p)^p`,
/// `C_p` does not depend on `x`.
pub fn compute_r(trace: &RecurrenceTrace, x: f64) -> Result<RValue> {
    if x == 0.0 {
        return Err(Error::ZeroInput);
    }
    let est = trace
        .x_star
        .ok_or_else(|| Error::InvalidConfig("x* has not been estimated for this trace".into()))?;
    let spectrum = kernel::characteristic_spectrum(&kernel::symmetrize(&trace.f), kernel::ROOT_RESIDUAL_TOL)?;
    let alpha_f = spectrum.alpha_f;
    let cp = trace
        .delta
        .iter()
        .enumerate()
        .map(|(p, d)| d * (p as f64).powf(alpha_f))
        .collect();
    Ok(RValue { r: x / est.x_star, alpha_f, cp })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_f() -> RealPolynomial {
        RealPolynomial::reference_weight()
    }

    fn rationals(f: &RealPolynomial) -> Vec<Rational> {
        f.to_rational().unwrap()
    }

    #[test]
    fn small_values() {
        let t = run_recurrence(&reference_f(), &EngineConfig::new(3)).unwrap();
        assert!((t.c[2].to_f64() - 0.25).abs() < 1e-16);
        assert!((t.c[3].to_f64() - 1.0 / 9.0).abs() < 1e-16);
        assert!((t.a[2] - 2.0).abs() < 1e-15);
        assert!((t.a[3] - 9f64.cbrt()).abs() < 1e-15);

        // f(1/2) = 1 with P = 2
        let f = RealPolynomial::new(vec![1.0]);
        let t = run_recurrence(&f, &EngineConfig::new(2)).unwrap();
        assert_eq!(t.c[2].to_f64(), 0.5);
        assert_eq!(t.horizon(), 2);
    }

    #[test]
    fn oracle_values() {
        let c = oracle_recurrence(&rationals(&reference_f()), 4).unwrap();
        assert_eq!(c[1], Rational::one());
        assert_eq!(c[2], Rational::new(1, 4).unwrap());
        assert_eq!(c[3], Rational::new(1, 9).unwrap());
        // c_4 = (f(1/4)·c_3 + f(1/2)·c_2² + f(3/4)·c_3)/4 = (15/8·1/9 + 1/2·1/16 − 1/8·1/9)/4
        let expected = (Rational::new(15, 72).unwrap() + Rational::new(1, 32).unwrap() - Rational::new(1, 72).unwrap())
            * Rational::new(1, 4).unwrap();
        assert_eq!(c[4], expected);
        assert!(oracle_recurrence(&rationals(&reference_f()), 17).is_err());
    }

    #[test]
    fn engine_matches_oracle() {
        let oracle = oracle_recurrence(&rationals(&reference_f()), 16).unwrap();
        for precision in [Precision::Double, Precision::DoubleDouble] {
            let cfg = EngineConfig { horizon: 16, precision, renorm_threshold: 8, ..EngineConfig::default() };
            let t = run_recurrence(&reference_f(), &cfg).unwrap();
            for p in 1..=16 {
                let exact = oracle[p].to_f64();
                assert!((t.c[p].to_f64() - exact).abs() <= 1e-14 * exact, "p = {p}");
            }
        }
    }

    #[test]
    fn rescale_transparency() {
        let run = |th| {
            let cfg = EngineConfig { horizon: 1500, renorm_threshold: th, ..EngineConfig::default() };
            run_recurrence(&reference_f(), &cfg).unwrap()
        };
        let (a, b) = (run(100), run(1000));
        for p in 1..=1500 {
            assert!((a.a[p] - b.a[p]).abs() <= 1e-13 * b.a[p], "p = {p}");
        }
    }

    #[test]
    fn normalizer_and_xi_consistency() {
        let t = run_recurrence(&reference_f(), &EngineConfig::new(600)).unwrap();
        let mut a = t.a[2];
        for p in 2..=600 {
            let cp_ap = (t.log_c[p] + p as f64 * t.log_a[p]).exp();
            assert!((cp_ap - 1.0).abs() < 1e-12);
            if p > 2 {
                a *= 1.0 + t.xi[p] / (p * p * p) as f64;
            }
            assert!((a - t.a[p]).abs() < 1e-12 * t.a[p]);
        }
    }

    #[test]
    fn double_precision_xi_cut() {
        let cfg = EngineConfig { horizon: 4100, precision: Precision::Double, ..EngineConfig::default() };
        let t = run_recurrence(&reference_f(), &cfg).unwrap();
        assert!(t.xi[4096].is_finite());
        assert!(t.xi[4097].is_nan());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_is_bit_identical() {
        let base = EngineConfig::new(3000);
        let a = run_recurrence(&reference_f(), &base).unwrap();
        let b = run_recurrence(&reference_f(), &EngineConfig { parallel: true, ..base }).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        for (x, y) in [(&a.log_c, &b.log_c), (&a.a, &b.a), (&a.xi, &b.xi), (&a.delta, &b.delta)] {
            assert_eq!(bits(x), bits(y));
        }
        assert_eq!(a.c[1..], b.c[1..]);
    }

    #[test]
    fn sign_degeneracy() {
        // f(1/2) < 0 makes c_2 negative
        let f = RealPolynomial::new(vec![-1.0]);
        match run_recurrence(&f, &EngineConfig::new(10)) {
            Err(Error::SignDegeneracy { p, partial }) => {
                assert_eq!(p, 2);
                assert_eq!(partial.horizon(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_config() {
        assert!(run_recurrence(&reference_f(), &EngineConfig::new(1)).is_err());
        let cfg = EngineConfig { renorm_threshold: 4, ..EngineConfig::new(10) };
        assert!(run_recurrence(&reference_f(), &cfg).is_err());
    }

    #[test]
    fn constant_normalizers() {
        let mut t = RecurrenceTrace::from_normalizers(&reference_f(), &vec![2.0; 201]);
        let est = estimate_x_star(&mut t).unwrap();
        assert_eq!(est.x_star, 2.0);
        assert_eq!(est.err_bound, 0.0);
        assert!(t.delta.iter().skip(1).all(|&d| d == 0.0));

        let mut short = RecurrenceTrace::from_normalizers(&reference_f(), &vec![2.0; 50]);
        assert_eq!(
            estimate_x_star(&mut short),
            Err(Error::InsufficientHorizon { horizon: 49, required: MIN_X_STAR_HORIZON })
        );
    }

    #[test]
    fn columns_roundtrip() {
        let t = run_recurrence(&reference_f(), &EngineConfig::new(300)).unwrap();
        let back = RecurrenceTrace::from_columns(&reference_f(), t.precision, &t.log_c, &t.xi);
        assert_eq!(back.horizon(), 300);
        assert_eq!(back.xi[2..], t.xi[2..]);
        for p in 2..=300 {
            assert!((back.log_increment[p] - t.log_increment[p]).abs() <= 1e-15 * t.log_increment[p].abs());
        }
    }

    #[test]
    fn r_value() {
        let mut t = run_recurrence(&reference_f(), &EngineConfig::new(400)).unwrap();
        let est = estimate_x_star(&mut t).unwrap();
        let one = compute_r(&t, est.x_star).unwrap();
        assert!((one.r - 1.0).abs() < 1e-15);
        let two = compute_r(&t, 2.0 * est.x_star).unwrap();
        assert!((two.r - 2.0).abs() < 1e-15);
        assert_eq!(one.cp[1..], two.cp[1..]);
        assert_eq!(compute_r(&t, 0.0), Err(Error::ZeroInput));
    }
}
