//! Numerical checks of the quantitative estimates behind the decay theorem,
//! evaluated on an actual [`RecurrenceTrace`].

pub mod appendix;
pub mod fit;

#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::kernel::{kernel_g, sigma_of_kernel, symmetrize, MonomialKernel, RealPolynomial, ROOT_RESIDUAL_TOL};
use crate::numerics::{symmetric_beta_integral, CompensatedAccumulator, DoubleDouble};
use crate::recurrence::RecurrenceTrace;

pub use appendix::{appendix_inequality_suite, AppendixReport, InequalityResult};
pub use fit::{fit_decay, zero_crossings, DecayFit};

/// Default tolerance for the decomposition identity, relative to `1 + |Q|`.
pub const IDENTITY_TOL: f64 = 1e-8;

/// `ξ_p − (1/p) Σ_{q=2}^{p−1} G(q/p) ξ_q` for `3 ≤ p ≤` the last finite `ξ`;
/// other entries are NaN.
pub fn h_sequence(trace: &RecurrenceTrace, g: &RealPolynomial) -> Vec<f64> {
    h_from_xi(&trace.xi[..=trace.xi_horizon()], g)
}

/// [`h_sequence`] on a bare `ξ` sequence indexed by `p`.
pub fn h_from_xi(xi: &[f64], g: &RealPolynomial) -> Vec<f64> {
    let mut h = vec![f64::NAN; xi.len()];
    for p in 3..xi.len() {
        h[p] = xi[p] - kernel_average(xi, g, p);
    }
    h
}

fn kernel_average(xi: &[f64], g: &RealPolynomial, p: usize) -> f64 {
    let inv = 1.0 / p as f64;
    let mut acc = CompensatedAccumulator::new();
    for q in 2..p {
        acc.add(g.eval(q as f64 * inv) * xi[q]);
    }
    acc.value() / p as f64
}

/// The four terms of `R⁽¹⁾_p + R⁽²⁾_p − Q_p = N_p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecompositionTerms {
    pub p: usize,
    pub r1: f64,
    pub r2: f64,
    pub q: f64,
    pub npp: f64,
}

impl DecompositionTerms {
    /// `|R1 + R2 − Q − N| / (1 + |Q|)`.
    pub fn relative_residual(&self) -> f64 {
        (self.r1 + self.r2 - self.q - self.npp).abs() / (1.0 + self.q.abs())
    }
}

/// Prefix sums `s_q = Σ_{r=2}^q ln(1 + ξ_r/r³)` so that
/// `∏_{p₁<q<p}(1+ξ_q/q³)^{p₁} = exp(p₁ (s_{p−1} − s_{p₁}))`.
#[derive(Clone, Debug)]
pub struct Decomposer {
    f: RealPolynomial,
    f_tilde: RealPolynomial,
    g: RealPolynomial,
    xi: Vec<f64>,
    prefix: Vec<DoubleDouble>,
}

impl Decomposer {
    pub fn new(trace: &RecurrenceTrace, f: &RealPolynomial) -> Self {
        Self::from_xi(&trace.xi[..=trace.xi_horizon()], f)
    }

    pub fn from_xi(xi: &[f64], f: &RealPolynomial) -> Self {
        let mut prefix = vec![DoubleDouble::ZERO; xi.len().max(2)];
        for q in 2..xi.len() {
            let y = xi[q] / (q * q * q) as f64;
            prefix[q] = prefix[q - 1].add_f64(y.ln_1p());
        }
        let f_tilde = symmetrize(f);
        Self { g: kernel_g(&f_tilde), f: f.clone(), f_tilde, xi: xi.to_vec(), prefix }
    }

    pub fn horizon(&self) -> usize {
        self.xi.len() - 1
    }

    /// `Σ_{p₁<q<p} ln(1 + ξ_q/q³)`.
    pub fn log_product(&self, p1: usize, p: usize) -> f64 {
        if p1 + 1 >= p {
            return 0.0;
        }
        (self.prefix[p - 1] - self.prefix[p1]).to_f64()
    }

    /// `∏_{p₁<q<p}(1+ξ_q/q³)^{p₁} − 1`.
    pub fn product_minus_one(&self, p1: usize, p: usize) -> f64 {
        (p1 as f64 * self.log_product(p1, p)).exp_m1()
    }

    fn check(&self, p: usize, min: usize) -> Result<()> {
        if p < min || p > self.horizon() {
            return Err(Error::InvalidConfig(format!(
                "index {p} outside [{min}, {}]",
                self.horizon()
            )));
        }
        Ok(())
    }

    /// `Q_p = Σ_{p₁=1}^{p−2} f̃(p₁/p)(∏_{p₁<q<p}(1+ξ_q/q³)^{p₁} − 1)`.
    pub fn q(&self, p: usize) -> f64 {
        let inv = 1.0 / p as f64;
        let mut acc = CompensatedAccumulator::new();
        for p1 in 1..p.saturating_sub(1) {
            acc.add(self.f_tilde.eval(p1 as f64 * inv) * self.product_minus_one(p1, p));
        }
        acc.value()
    }

    pub fn terms(&self, p: usize) -> Result<DecompositionTerms> {
        self.check(p, 3)?;
        let pf = p as f64;
        let inv = 1.0 / pf;
        let mut fsum = CompensatedAccumulator::new();
        let mut npp = CompensatedAccumulator::new();
        let pm1: Vec<f64> = (0..p).map(|p1| if p1 == 0 { 0.0 } else { self.product_minus_one(p1, p) }).collect();
        for p1 in 1..p {
            let fv = self.f.eval(p1 as f64 * inv);
            fsum.add(fv);
            npp.add(fv * pm1[p1] * pm1[p - p1]);
        }
        let y = self.xi[p] / (pf * pf * pf);
        Ok(DecompositionTerms {
            p,
            r1: pf - fsum.value(),
            r2: pf * (-pf * y.ln_1p()).exp_m1(),
            q: self.q(p),
            npp: npp.value(),
        })
    }

    /// `|p(Q_p − Q_{p−1}) − (p/(p−1)) ξ_{p−1} + (1/p) Σ_{q=2}^{p−1} G(q/p) ξ_q|`.
    pub fn main_lemma_residual(&self, p: usize) -> Result<f64> {
        self.check(p, 4)?;
        let pf = p as f64;
        let lhs = pf * (self.q(p) - self.q(p - 1));
        Ok((lhs - pf / (pf - 1.0) * self.xi[p - 1] + kernel_average(&self.xi, &self.g, p)).abs())
    }
}

pub fn decomposition_terms(trace: &RecurrenceTrace, f: &RealPolynomial, p: usize) -> Result<DecompositionTerms> {
    Decomposer::new(trace, f).terms(p)
}

/// `f̃` is accepted for interface symmetry; the decomposer rebuilds it from
/// the trace's `f`.
pub fn main_lemma_residual(trace: &RecurrenceTrace, f_tilde: &RealPolynomial, p: usize) -> Result<f64> {
    let d = Decomposer::new(trace, &trace.f);
    debug_assert!(d.f_tilde.coeffs().iter().zip(f_tilde.coeffs()).all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + b.abs())));
    d.main_lemma_residual(p)
}

/// Identity residual over `3 ≤ p ≤ upto`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityReport {
    pub max_relative_residual: f64,
    pub worst_p: usize,
    /// `sup_p p·|p(R⁽¹⁾_p − R⁽¹⁾_{p−1})|`.
    pub r1_increment_constant: f64,
}

pub fn identity_check(trace: &RecurrenceTrace, upto: usize) -> Result<IdentityReport> {
    let d = Decomposer::new(trace, &trace.f);
    let upto = upto.min(d.horizon());
    let mut worst = 0.0;
    let mut worst_p = 3;
    let mut r1_const: f64 = 0.0;
    let mut prev_r1 = f64::NAN;
    for p in 3..=upto {
        let t = d.terms(p)?;
        let r = t.relative_residual();
        if !(r <= worst) {
            worst = r;
            worst_p = p;
        }
        if prev_r1.is_finite() {
            r1_const = r1_const.max(p as f64 * (p as f64 * (t.r1 - prev_r1)).abs());
        }
        prev_r1 = t.r1;
    }
    Ok(IdentityReport { max_relative_residual: worst, worst_p, r1_increment_constant: r1_const })
}

/// Envelope of the Main Lemma residual against `log p / p`.
#[derive(Clone, Debug, PartialEq)]
pub struct MainLemmaReport {
    /// `max residual·p/log p` over the range.
    pub envelope_constant: f64,
    pub worst_p: usize,
    /// Running max of `residual·p/log p` sampled at log-spaced `p`.
    pub running_max: Vec<(usize, f64)>,
}

pub fn main_lemma_envelope(trace: &RecurrenceTrace, from: usize, to: usize) -> Result<MainLemmaReport> {
    let d = Decomposer::new(trace, &trace.f);
    let to = to.min(d.horizon());
    let mut best = 0.0;
    let mut worst_p = from;
    let mut running = Vec::new();
    let mut mark = from as f64;
    for p in from.max(4)..=to {
        let v = d.main_lemma_residual(p)? * p as f64 / (p as f64).ln();
        if v > best {
            best = v;
            worst_p = p;
        }
        if p as f64 >= mark || p == to {
            running.push((p, best));
            mark *= 1.25;
        }
    }
    Ok(MainLemmaReport { envelope_constant: best, worst_p, running_max: running })
}

/// Constants of the inductive ansatz and the base case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnsatzConstants {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub n0: usize,
    pub c4: f64,
    pub epsilon: f64,
    pub p0: usize,
}

impl AnsatzConstants {
    /// `N₀ ≥ max(3, A₁)` and `0 < ε < min(1+σ, −σ)/2`.
    pub fn validate(&self, sigma_g: f64) -> Result<()> {
        if (self.n0 as f64) < self.a1.max(3.0) {
            return Err(Error::HypothesisViolated(format!("N0 = {} < max(3, A1 = {})", self.n0, self.a1)));
        }
        let cap = 0.5 * (1.0 + sigma_g).min(-sigma_g);
        if !(self.epsilon > 0.0 && self.epsilon < cap) {
            return Err(Error::HypothesisViolated(format!("epsilon = {} outside (0, {cap})", self.epsilon)));
        }
        Ok(())
    }
}

/// Items (1)–(3) of the ansatz at step `p`, and the smallest feasible constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnsatzReport {
    pub p: usize,
    pub item1: bool,
    pub item2: bool,
    pub item3: bool,
    pub n0_admissible: bool,
    /// `max_{N₀≤q<p} |ξ_q|`.
    pub min_a1: f64,
    /// `max_{p₁<N₀} |∏_{p₁<q≤N₀}(1+ξ_q/q³)^{p₁}|`.
    pub min_a2: f64,
    /// `max_{2≤q≤N₀} |ξ_q|`.
    pub min_a3: f64,
}

impl AnsatzReport {
    pub fn all_pass(&self) -> bool {
        self.item1 && self.item2 && self.item3 && self.n0_admissible
    }
}

pub fn ansatz_check(trace: &RecurrenceTrace, constants: &AnsatzConstants, p: usize) -> Result<AnsatzReport> {
    let n0 = constants.n0;
    let top = trace.xi_horizon();
    if p <= n0 || p > top + 1 {
        return Err(Error::InvalidConfig(format!("ansatz step {p} must lie in ({n0}, {}]", top + 1)));
    }
    let xi = &trace.xi;
    let min_a1 = (n0.max(2)..p).map(|q| xi[q].abs()).fold(0.0, f64::max);
    let min_a3 = (2..=n0).map(|q| xi[q].abs()).fold(0.0, f64::max);
    let d = Decomposer::new(trace, &trace.f);
    // ∏_{p₁<q≤N₀} is the p = N₀ + 1 product
    let min_a2 = (1..n0).map(|p1| (p1 as f64 * d.log_product(p1, n0 + 1)).exp()).fold(0.0, f64::max);
    Ok(AnsatzReport {
        p,
        item1: min_a1 <= constants.a1,
        item2: min_a2 <= constants.a2,
        item3: min_a3 <= constants.a3,
        n0_admissible: n0 as f64 >= constants.a1.max(3.0),
        min_a1,
        min_a2,
        min_a3,
    })
}

/// Constants of the nonlinear-term lemma, in its convention
/// `|ξ_q| ≤ C₂ q^{−σ}` with `σ = −σ(G) > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlinearConstants {
    pub sigma: f64,
    pub c1: f64,
    pub c2: f64,
    pub n0: usize,
}

fn nonlinear_c1(d: &Decomposer, n0: usize) -> f64 {
    (1..n0).map(|p1| (p1 as f64 * d.log_product(p1, n0)).exp()).fold(0.0, f64::max)
}

fn nonlinear_c2(xi: &[f64], sigma: f64, n0: usize, upto: usize) -> f64 {
    ((n0 + 1)..=upto).map(|q| xi[q].abs() * (q as f64).powf(sigma)).fold(0.0, f64::max)
}

fn n0_admissible(n0: usize, c2: f64, sigma: f64) -> bool {
    let need = c2.powf(1.0 / (1.0 + sigma)).max((4.0 * c2).powf(1.0 / (3.0 + sigma)));
    n0 as f64 >= need
}

/// Smallest `N₀ ≥ 3` whose measured `C₂` (over `q ≤ upto`) satisfies the
/// lemma's lower bound on `N₀`, with the matching `C₁`.
pub fn fit_nonlinear_constants(trace: &RecurrenceTrace, sigma: f64, upto: usize) -> Result<NonlinearConstants> {
    let upto = upto.min(trace.xi_horizon());
    let d = Decomposer::new(trace, &trace.f);
    for n0 in 3..=upto / 2 {
        let c2 = nonlinear_c2(&trace.xi, sigma, n0, upto);
        if n0_admissible(n0, c2, sigma) {
            return Ok(NonlinearConstants { sigma, c1: nonlinear_c1(&d, n0), c2, n0 });
        }
    }
    Err(Error::HypothesisViolated(format!("no admissible N0 below {}", upto / 2)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlinearBoundReport {
    pub p: usize,
    pub actual: f64,
    pub bound: f64,
    pub ratio: f64,
    pub holds: bool,
    pub c_sigma: f64,
}

/// `C_σ = ∫₀¹ γ^{−σ}(1−γ)^{−σ} dγ`.
pub fn c_sigma(sigma: f64) -> f64 {
    symmetric_beta_integral(sigma, 64)
}

/// Compare `|N_p|` with
/// `‖f̃‖∞ ((1+C₁+C₂) 2N₀² C₂/(p−N₀)^{2+σ} + 4C₂² C_σ/p^{1+2σ})`.
pub fn nonlinear_bound_check(
    trace: &RecurrenceTrace,
    f_tilde: &RealPolynomial,
    constants: &NonlinearConstants,
    p: usize,
) -> Result<NonlinearBoundReport> {
    let NonlinearConstants { sigma, c1, c2, n0 } = *constants;
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::HypothesisViolated(format!("sigma = {sigma} outside (0, 1)")));
    }
    if p < 2 * n0 {
        return Err(Error::HypothesisViolated(format!("p = {p} < 2 N0 = {}", 2 * n0)));
    }
    if !n0_admissible(n0, c2, sigma) {
        return Err(Error::HypothesisViolated(format!("N0 = {n0} too small for C2 = {c2}")));
    }
    let d = Decomposer::new(trace, &trace.f);
    if p > d.horizon() {
        return Err(Error::InsufficientHorizon { horizon: d.horizon(), required: p });
    }
    let measured_c1 = nonlinear_c1(&d, n0);
    if measured_c1 > c1 {
        return Err(Error::HypothesisViolated(format!("product bound: {measured_c1} > C1 = {c1}")));
    }
    let measured_c2 = nonlinear_c2(&trace.xi, sigma, n0, p - 1);
    if measured_c2 > c2 {
        return Err(Error::HypothesisViolated(format!("decay bound: {measured_c2} > C2 = {c2}")));
    }
    let actual = d.terms(p)?.npp.abs();
    let cs = c_sigma(sigma);
    let (pf, n0f) = (p as f64, n0 as f64);
    let bound = f_tilde.sup_norm_unit()
        * ((1.0 + c1 + c2) * 2.0 * n0f * n0f * c2 / (pf - n0f).powf(2.0 + sigma)
            + 4.0 * c2 * c2 * cs / pf.powf(1.0 + 2.0 * sigma));
    Ok(NonlinearBoundReport {
        p,
        actual,
        bound,
        ratio: if bound > 0.0 { actual / bound } else if actual == 0.0 { 0.0 } else { f64::INFINITY },
        holds: actual <= bound,
        c_sigma: cs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseCaseReport {
    pub epsilon: f64,
    pub sigma_g: f64,
    /// `max_{r≥3} |h_r| r^{−(σ−ε)}` over the horizon.
    pub c4: f64,
    /// Last `r` where `|h_r| r^{−(σ−ε)} > C₄/margin`; the hypothesis holds
    /// with that margin for every `r > p₀`.
    pub p0: usize,
    pub margin: f64,
    pub horizon: usize,
    /// `horizon ≥ 2 p₀`.
    pub horizon_sufficient: bool,
    pub feasible: bool,
}

/// Measure the inductive hypothesis `|h_r| ≤ C₄ r^{σ(G)−ε}`. `h` starts at
/// `r = 3`, the first index where it is defined.
pub fn base_case_verifier(trace: &RecurrenceTrace, g: &RealPolynomial, constants: &AnsatzConstants) -> Result<BaseCaseReport> {
    let sigma_g = sigma_of_kernel(&MonomialKernel::from_polynomial(g), ROOT_RESIDUAL_TOL)?.sigma_g;
    let h = h_sequence(trace, g);
    let horizon = h.len() - 1;
    let epsilon = constants.epsilon;
    let margin = 2.0;
    let ratio: Vec<f64> = (0..=horizon)
        .map(|r| if r < 3 { 0.0 } else { h[r].abs() * (r as f64).powf(-(sigma_g - epsilon)) })
        .collect();
    let c4 = ratio.iter().copied().fold(0.0, f64::max);
    let p0 = if c4 == 0.0 {
        2
    } else {
        (3..=horizon).rev().find(|&r| ratio[r] > c4 / margin).unwrap_or(2)
    };
    Ok(BaseCaseReport {
        epsilon,
        sigma_g,
        c4,
        p0,
        margin,
        horizon,
        horizon_sufficient: horizon >= 2 * p0,
        feasible: c4.is_finite(),
    })
}

/// `ξ̂_p = −p²((1+ξ_p/p³)^{−p} − 1)`.
pub fn hat_xi_value(xi: f64, p: usize) -> f64 {
    let pf = p as f64;
    -pf * pf * (-pf * (xi / (pf * pf * pf)).ln_1p()).exp_m1()
}

pub fn hat_xi(trace: &RecurrenceTrace, p: usize) -> Result<f64> {
    if p < 2 || p >= trace.xi.len() || !trace.xi[p].is_finite() {
        return Err(Error::InvalidConfig(format!("no finite xi at p = {p}")));
    }
    Ok(hat_xi_value(trace.xi[p], p))
}

/// `|ξ − ξ̂|` against `(5/4)ξ²/p²` and `(5/4)ξ̂²/p²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HatXiCheck {
    pub gap: f64,
    pub bound_xi: f64,
    pub bound_hat: f64,
}

pub fn hat_xi_check(xi: f64, p: usize) -> HatXiCheck {
    let h = hat_xi_value(xi, p);
    let p2 = (p * p) as f64;
    HatXiCheck { gap: (xi - h).abs(), bound_xi: 1.25 * xi * xi / p2, bound_hat: 1.25 * h * h / p2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{run_recurrence, EngineConfig};

    fn reference_f() -> RealPolynomial {
        RealPolynomial::reference_weight()
    }

    fn zero_trace(n: usize) -> RecurrenceTrace {
        RecurrenceTrace::from_xi(&reference_f(), 2.0, &vec![0.0; n + 1])
    }

    #[test]
    fn zero_xi_terms() {
        let t = zero_trace(50);
        let d = decomposition_terms(&t, &reference_f(), 20).unwrap();
        assert_eq!(d.q, 0.0);
        assert_eq!(d.npp, 0.0);
        assert!(h_sequence(&t, &kernel_g(&symmetrize(&reference_f())))[3..].iter().all(|&h| h == 0.0));
        assert_eq!(main_lemma_residual(&t, &symmetrize(&reference_f()), 20).unwrap(), 0.0);
    }

    #[test]
    fn identity_on_simulated_trace() {
        let t = run_recurrence(&reference_f(), &EngineConfig::new(400)).unwrap();
        let r = identity_check(&t, 400).unwrap();
        assert!(r.max_relative_residual < 1e-8, "{r:?}");
        assert!(r.r1_increment_constant.is_finite());
    }

    #[test]
    fn identity_detects_a_wrong_trace() {
        let t = run_recurrence(&reference_f(), &EngineConfig::new(100)).unwrap();
        let mut xi = t.xi.clone();
        xi[50] *= 1.01;
        let bad = RecurrenceTrace::from_xi(&reference_f(), t.a[1], &xi);
        assert!(decomposition_terms(&bad, &reference_f(), 50).unwrap().relative_residual() > 1e-8);
    }

    #[test]
    fn main_lemma_envelope_bounded() {
        let t = run_recurrence(&reference_f(), &EngineConfig::new(800)).unwrap();
        let r = main_lemma_envelope(&t, 10, 800).unwrap();
        assert!(r.envelope_constant.is_finite());
    }

    #[test]
    fn ansatz_items() {
        let mut xi = vec![0.5; 40];
        xi[0] = f64::NAN;
        xi[1] = f64::NAN;
        let t = RecurrenceTrace::from_xi(&reference_f(), 2.0, &xi);
        let k = AnsatzConstants { a1: 1.0, a2: 2.0, a3: 1.0, n0: 3, c4: 1.0, epsilon: 0.2, p0: 10 };
        let r = ansatz_check(&t, &k, 30).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.min_a1, 0.5);

        let growing: Vec<f64> = (0..40).map(|q| q as f64).collect();
        let t = RecurrenceTrace::from_xi(&reference_f(), 2.0, &growing);
        let r = ansatz_check(&t, &k, 30).unwrap();
        assert!(!r.item1);
        assert!((r.min_a1 - 29.0).abs() < 1e-12);
    }

    #[test]
    fn constants_validation() {
        let k = AnsatzConstants { a1: 5.0, a2: 1.0, a3: 1.0, n0: 4, c4: 1.0, epsilon: 0.2, p0: 10 };
        assert!(k.validate(-0.5).is_err());
        let k = AnsatzConstants { n0: 5, ..k };
        assert!(k.validate(-0.5).is_ok());
        assert!(AnsatzConstants { epsilon: 0.3, ..k }.validate(-0.5).is_err());
    }

    #[test]
    fn c_sigma_half_is_pi() {
        assert!((c_sigma(0.5) - core::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn nonlinear_bound_zero_trace() {
        let t = zero_trace(100);
        let k = NonlinearConstants { sigma: 0.5, c1: 1.0, c2: 0.0, n0: 3 };
        let r = nonlinear_bound_check(&t, &symmetrize(&reference_f()), &k, 50).unwrap();
        assert_eq!(r.actual, 0.0);
        assert!(r.holds);
    }

    #[test]
    fn nonlinear_hypothesis_violation() {
        let t = run_recurrence(&reference_f(), &EngineConfig::new(300)).unwrap();
        let k = NonlinearConstants { sigma: 0.5, c1: 100.0, c2: 1e-6, n0: 3 };
        assert!(matches!(
            nonlinear_bound_check(&t, &symmetrize(&reference_f()), &k, 100),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn nonlinear_bound_on_simulated_trace() {
        let t = run_recurrence(&reference_f(), &EngineConfig::new(600)).unwrap();
        let k = fit_nonlinear_constants(&t, 0.5, 600).unwrap();
        let ft = symmetrize(&reference_f());
        for p in (2 * k.n0..=600).step_by(7) {
            let r = nonlinear_bound_check(&t, &ft, &k, p).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn base_case_zero_h() {
        let t = zero_trace(100);
        let g = kernel_g(&symmetrize(&reference_f()));
        let k = AnsatzConstants { a1: 1.0, a2: 1.0, a3: 1.0, n0: 3, c4: 1.0, epsilon: 0.2, p0: 10 };
        let r = base_case_verifier(&t, &g, &k).unwrap();
        assert_eq!(r.c4, 0.0);
        assert_eq!(r.p0, 2);
    }

    #[test]
    fn hat_xi_examples() {
        assert_eq!(hat_xi_value(0.0, 5), 0.0);
        // −100·((1.001)^{−10} − 1) = 0.99452193...
        let v = hat_xi_value(1.0, 10);
        assert!((v - 0.994_521_928_699_700_6).abs() < 1e-15);
        let c = hat_xi_check(1.0, 10);
        assert!(c.gap <= c.bound_xi && c.gap <= c.bound_hat);
    }
}
