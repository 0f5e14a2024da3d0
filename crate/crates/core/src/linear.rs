//! The linear system `ξ_p = h_p + (1/p) Σ_{q=2}^{p−1} G(q/p) ξ_q`, its moment
//! form, transition matrices, and product-norm bounds.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{sigma_of_kernel, MonomialKernel, RealPolynomial, ROOT_RESIDUAL_TOL};
use crate::numerics::roots::{aberth, multiset_distance, sort_roots, DEFAULT_MAX_ITER};
use crate::numerics::{spectral_norm, spectral_norm_from, CMatrix, CompensatedAccumulator, PowerIteration};

/// Default cap on product norms before a scan gives up.
pub const DEFAULT_NORM_CAP: f64 = 1e6;

/// Running maxima closer than this (relative) count as a plateau.
pub const PLATEAU_TOL: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearTrace {
    pub kernel: MonomialKernel,
    /// Indexed by `p`; entries 0 and 1 are NaN.
    pub xi: Vec<f64>,
    /// Forcing, indexed by `p`; zero for `p ≤ 2`.
    pub h: Vec<f64>,
}

impl LinearTrace {
    pub fn horizon(&self) -> usize {
        self.xi.len() - 1
    }
}

enum KernelEval {
    Real(RealPolynomial),
    Complex { coeffs: Vec<Complex64>, alphas: Vec<Complex64> },
}

impl KernelEval {
    fn new(kernel: &MonomialKernel) -> Self {
        match kernel.as_polynomial() {
            Some(g) => Self::Real(g),
            None => Self::Complex {
                coeffs: kernel.coefficients().collect(),
                alphas: kernel.exponents().collect(),
            },
        }
    }
}

/// Direct `O(P²)` evaluation of the linear recurrence from `ξ_2 = xi2`.
pub fn run_linear<H: Fn(usize) -> f64>(kernel: &MonomialKernel, xi2: f64, h: H, horizon: usize) -> Result<LinearTrace> {
    if horizon < 3 {
        return Err(Error::InvalidConfig(alloc::format!("linear horizon {horizon} < 3")));
    }
    let mut xi = vec![f64::NAN; horizon + 1];
    let mut hs = vec![0.0; horizon + 1];
    xi[2] = xi2;
    match KernelEval::new(kernel) {
        KernelEval::Real(g) => {
            for p in 3..=horizon {
                let mut acc = CompensatedAccumulator::new();
                let inv = 1.0 / p as f64;
                for q in 2..p {
                    acc.add(g.eval(q as f64 * inv) * xi[q]);
                }
                hs[p] = h(p);
                xi[p] = hs[p] + acc.value() / p as f64;
            }
        }
        KernelEval::Complex { coeffs, alphas } => {
            // q^{α_k} for every q, so G(q/p) = Σ_k C_k q^{α_k} p^{−α_k}
            let powers: Vec<Vec<Complex64>> = alphas
                .iter()
                .map(|&a| (0..=horizon).map(|q| if q == 0 { Complex64::new(0.0, 0.0) } else { (a * (q as f64).ln()).exp() }).collect())
                .collect();
            for p in 3..=horizon {
                let scale: Vec<Complex64> = coeffs.iter().zip(&powers).map(|(c, pw)| c / pw[p]).collect();
                let (mut re, mut im) = (CompensatedAccumulator::new(), CompensatedAccumulator::new());
                for q in 2..p {
                    let g: Complex64 = scale.iter().zip(&powers).map(|(s, pw)| s * pw[q]).sum();
                    re.add(g.re * xi[q]);
                    im.add(g.im * xi[q]);
                }
                hs[p] = h(p);
                xi[p] = hs[p] + re.value() / p as f64;
            }
        }
    }
    Ok(LinearTrace { kernel: kernel.clone(), xi, h: hs })
}

/// Moments `B^{(k)}_p = Σ_{q=2}^p ξ_q q^{α_k}` and their scaled forms.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentState {
    /// `b[k][p]`; zero for `p < 2`.
    pub b: Vec<Vec<Complex64>>,
    /// `p^{−α_k−1} B^{(k)}_p`.
    pub b_tilde: Vec<Vec<Complex64>>,
    /// Largest relative residual of `ξ_p − h_p = Σ_k C_k p^{−α_k−1} B^{(k)}_{p−1}`,
    /// measured against the sum of absolute values of the terms.
    pub reconstruction_residual: f64,
    pub worst_p: usize,
}

impl MomentState {
    /// `max_p ‖B̃_p‖₂` over `2 ≤ p ≤ upto`.
    pub fn max_tilde_norm(&self, upto: usize) -> f64 {
        let n = self.b_tilde.first().map_or(0, Vec::len);
        (2..=upto.min(n.saturating_sub(1)))
            .map(|p| self.b_tilde.iter().map(|bk| bk[p].norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }
}

pub fn moment_transform(trace: &LinearTrace) -> MomentState {
    let big_p = trace.horizon();
    let terms = trace.kernel.terms();
    let mut b = Vec::with_capacity(terms.len());
    let mut b_abs = Vec::with_capacity(terms.len());
    let mut b_tilde = Vec::with_capacity(terms.len());
    for &(_, a) in terms {
        let (mut re, mut im, mut ab) = (CompensatedAccumulator::new(), CompensatedAccumulator::new(), CompensatedAccumulator::new());
        let mut bk = vec![Complex64::new(0.0, 0.0); big_p + 1];
        let mut absk = vec![0.0; big_p + 1];
        let mut tk = vec![Complex64::new(0.0, 0.0); big_p + 1];
        for q in 2..=big_p {
            let lq = (q as f64).ln();
            let term = (a * lq).exp() * trace.xi[q];
            re.add(term.re);
            im.add(term.im);
            ab.add(term.norm());
            bk[q] = Complex64::new(re.value(), im.value());
            absk[q] = ab.value();
            tk[q] = bk[q] * (-(a + 1.0) * lq).exp();
        }
        b.push(bk);
        b_abs.push(absk);
        b_tilde.push(tk);
    }
    let mut worst = 0.0;
    let mut worst_p = 0;
    for p in 3..=big_p {
        let lp = (p as f64).ln();
        let mut rhs = Complex64::new(0.0, 0.0);
        let mut scale = trace.h[p].abs() + trace.xi[p].abs();
        for (k, &(c, a)) in terms.iter().enumerate() {
            let w = c * (-(a + 1.0) * lp).exp();
            rhs += w * b[k][p - 1];
            scale += w.norm() * b_abs[k][p - 1];
        }
        let diff = (Complex64::new(trace.xi[p] - trace.h[p], 0.0) - rhs).norm();
        let rel = if diff == 0.0 { 0.0 } else { diff / scale };
        if rel > worst {
            worst = rel;
            worst_p = p;
        }
    }
    MomentState { b, b_tilde, reconstruction_residual: worst, worst_p }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    pub p: usize,
    pub entries: CMatrix,
}

/// `M_p^{(k,j)} = (1−1/p)^{α_k+1} δ_{kj} + C_j (1−1/p)^{α_j+1}/p`.
pub fn transition_matrix(kernel: &MonomialKernel, p: usize) -> TransitionMatrix {
    let l = (1.0 - 1.0 / p as f64).ln();
    let decay: Vec<Complex64> = kernel.exponents().map(|a| ((a + 1.0) * l).exp()).collect();
    let coeffs: Vec<Complex64> = kernel.coefficients().collect();
    let entries = CMatrix::from_fn(kernel.len(), |k, j| {
        let off = coeffs[j] * decay[j] / p as f64;
        if k == j {
            decay[k] + off
        } else {
            off
        }
    });
    TransitionMatrix { p, entries }
}

/// `ξ_p` recomputed through `B̃_p = M_p B̃_{p−1} + (h_p/p)·1` from `B̃_2 = ξ_2/2`.
pub fn matrix_path_xi<H: Fn(usize) -> f64>(kernel: &MonomialKernel, xi2: f64, h: H, horizon: usize) -> Vec<f64> {
    let n = kernel.len();
    let coeffs: Vec<Complex64> = kernel.coefficients().collect();
    let alphas: Vec<Complex64> = kernel.exponents().collect();
    let mut xi = vec![f64::NAN; horizon + 1];
    if horizon < 2 {
        return xi;
    }
    xi[2] = xi2;
    let mut bt = vec![Complex64::new(xi2 / 2.0, 0.0); n];
    for p in 3..=horizon {
        let l = (1.0 - 1.0 / p as f64).ln();
        let decay: Vec<Complex64> = alphas.iter().map(|a| ((a + 1.0) * l).exp()).collect();
        let hp = h(p);
        let conv: Complex64 = (0..n).map(|j| coeffs[j] * decay[j] * bt[j]).sum();
        xi[p] = hp + conv.re;
        let m = transition_matrix(kernel, p).entries;
        let mut next = m.mul_vec(&bt);
        for z in next.iter_mut() {
            *z += hp / p as f64;
        }
        bt = next;
    }
    xi
}

/// Running supremum of `|seq_p| p^{weight}`, compared between a midpoint and
/// the end of the range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plateau {
    pub sup: f64,
    pub sup_at_mid: f64,
    pub argmax: usize,
    pub relative_change: f64,
    pub detected: bool,
}

pub fn plateau(seq: &[f64], weight: f64, from: usize, mid: usize, to: usize) -> Plateau {
    let mut sup = 0.0;
    let mut sup_at_mid = 0.0;
    let mut argmax = from;
    for p in from..=to.min(seq.len() - 1) {
        let v = seq[p].abs() * (p as f64).powf(weight);
        if v.is_finite() && v > sup {
            sup = v;
            argmax = p;
        }
        if p == mid {
            sup_at_mid = sup;
        }
    }
    let relative_change = if sup_at_mid > 0.0 { (sup - sup_at_mid) / sup_at_mid } else if sup == 0.0 { 0.0 } else { f64::INFINITY };
    Plateau { sup, sup_at_mid, argmax, relative_change, detected: sup.is_finite() && relative_change < PLATEAU_TOL }
}

/// Forced-stability measurements for a linear run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForcedStability {
    /// `sup_p |ξ_p| p^{−σ}`.
    pub plateau: Plateau,
    /// `sup_p |h_p| p^{−(σ−ε)}`.
    pub c1: f64,
    /// `sup |ξ_p| p^{−σ} / C₁`.
    pub ratio_c1: f64,
    /// `sup |ξ_p| p^{−σ} / (C₁ + |ξ_2|)`.
    pub ratio_c1_xi2: f64,
}

pub fn forced_stability(trace: &LinearTrace, sigma: f64, epsilon: f64, mid: usize) -> ForcedStability {
    let big_p = trace.horizon();
    let plateau = plateau(&trace.xi, -sigma, 2, mid, big_p);
    let c1 = (3..=big_p)
        .map(|p| trace.h[p].abs() * (p as f64).powf(-(sigma - epsilon)))
        .fold(0.0, f64::max);
    ForcedStability {
        plateau,
        c1,
        ratio_c1: plateau.sup / c1,
        ratio_c1_xi2: plateau.sup / (c1 + trace.xi[2].abs()),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub q0: usize,
    pub sup_norm: f64,
    /// `(p, ‖M_p⋯M_{q₀}‖₂)` at roughly log-spaced `p`.
    pub profile: Vec<(usize, f64)>,
    pub plateau_detected: bool,
    pub sup_at_mid: f64,
}

/// Sup of `‖M_p⋯M_{q₀}‖₂` over `q₀ ≤ p ≤ P` for each `q₀`.
///
/// The kernel must already satisfy `max Re σ ≤ 0`; see
/// [`MonomialKernel::normalized_to_zero_sigma`].
pub fn product_norm_scan(kernel: &MonomialKernel, q0_set: &[usize], horizon: usize, cap: f64) -> Result<Vec<ScanReport>> {
    let spec = sigma_of_kernel(kernel, ROOT_RESIDUAL_TOL)?;
    if spec.sigma_g > 1e-9 {
        return Err(Error::HypothesisViolated(alloc::format!(
            "product scan needs max Re σ ≤ 0, kernel has {}",
            spec.sigma_g
        )));
    }
    let mid = (horizon / 2).max(q0_set.iter().copied().max().unwrap_or(2));
    q0_set.iter().map(|&q0| scan_one(kernel, q0.max(2), horizon, mid, cap)).collect()
}

fn scan_one(kernel: &MonomialKernel, q0: usize, horizon: usize, mid: usize, cap: f64) -> Result<ScanReport> {
    let opts = PowerIteration { tol: 1e-13, ..PowerIteration::default() };
    let mut product = transition_matrix(kernel, q0).entries;
    let mut sup = 0.0;
    let mut sup_at_mid = 0.0;
    let mut profile = Vec::new();
    let mut next_mark = q0 as f64;
    let mut start: Option<Vec<Complex64>> = None;
    for p in q0..=horizon {
        if p > q0 {
            product = &transition_matrix(kernel, p).entries * &product;
        }
        let sn = spectral_norm_from(&product, start.as_deref(), &opts)?;
        start = Some(sn.vector);
        let norm = sn.norm;
        if !(norm <= cap) {
            return Err(Error::NormBlowup { q0, p, norm, cap });
        }
        sup = f64::max(sup, norm);
        if p <= mid {
            sup_at_mid = sup;
        }
        if p as f64 >= next_mark || p == horizon {
            profile.push((p, norm));
            next_mark = (next_mark * 1.1).max(p as f64 + 1.0);
        }
    }
    let change = if sup_at_mid > 0.0 { (sup - sup_at_mid) / sup_at_mid } else { 0.0 };
    Ok(ScanReport { q0, sup_norm: sup, profile, plateau_detected: change < PLATEAU_TOL, sup_at_mid })
}

/// `det(λI − A)` coefficients, lowest degree first (Faddeev-LeVerrier).
pub fn characteristic_polynomial(a: &CMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m = CMatrix::zeros(n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        m = next;
        let am = a * &m;
        let trace: Complex64 = (0..n).map(|i| am[(i, i)]).sum();
        coeffs[n - k] = -trace / k as f64;
    }
    coeffs
}

/// `M̃^{(k,j)} = C_j − (α_k+1)δ_{kj}`, the first-order part of `p(M_p − I)`.
pub fn m_tilde(kernel: &MonomialKernel) -> CMatrix {
    let terms = kernel.terms();
    CMatrix::from_fn(terms.len(), |k, j| {
        let d = if k == j { terms[k].1 + 1.0 } else { Complex64::new(0.0, 0.0) };
        terms[j].0 - d
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenReport {
    pub m_tilde: CMatrix,
    pub eigenvalues: Vec<Complex64>,
    pub kernel_roots: Vec<Complex64>,
    pub mismatch: f64,
}

/// Eigenvalues of `M̃` against the roots of `Σ C_i/(λ+α_i+1) = 1`.
pub fn eigen_check(kernel: &MonomialKernel) -> Result<EigenReport> {
    let mt = m_tilde(kernel);
    let mut eigenvalues = aberth(&characteristic_polynomial(&mt), DEFAULT_MAX_ITER)?;
    sort_roots(&mut eigenvalues);
    let kernel_roots = sigma_of_kernel(kernel, ROOT_RESIDUAL_TOL)?.roots;
    let mismatch = multiset_distance(&eigenvalues, &kernel_roots);
    Ok(EigenReport { m_tilde: mt, eigenvalues, kernel_roots, mismatch })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityReport {
    /// `‖S‖₂ ‖S⁻¹‖₂`.
    pub condition_number: f64,
    /// Smallest `c` with `‖S⁻¹M_pS‖₂ ≤ 1 + c/p²` over the scanned range.
    pub fitted_c: f64,
    pub worst_p: usize,
}

/// Check `‖S⁻¹ M_p S‖₂ ≤ 1 + c/p²` for `2 ≤ p ≤ horizon`, with `S` the
/// eigenvector matrix of `M̃`, `v_k = 1/(σ + α_k + 1)`.
pub fn similarity_check(kernel: &MonomialKernel, horizon: usize) -> Result<SimilarityReport> {
    let roots = sigma_of_kernel(kernel, ROOT_RESIDUAL_TOL)?.roots;
    let alphas: Vec<Complex64> = kernel.exponents().collect();
    if roots.len() != alphas.len() {
        return Err(Error::HypothesisViolated("characteristic degree differs from kernel size".into()));
    }
    let s = CMatrix::from_fn(alphas.len(), |k, i| (roots[i] + alphas[k] + 1.0).inv());
    let s_inv = s
        .inverse()
        .ok_or_else(|| Error::HypothesisViolated("eigenvector matrix is singular".into()))?;
    let condition_number = spectral_norm(&s, 1e-13)? * spectral_norm(&s_inv, 1e-13)?;
    let mut fitted_c = f64::NEG_INFINITY;
    let mut worst_p = 2;
    for p in 2..=horizon {
        let m = transition_matrix(kernel, p).entries;
        let n = spectral_norm(&(&(&s_inv * &m) * &s), 1e-13)?;
        let c = (n - 1.0) * (p * p) as f64;
        if c > fitted_c {
            fitted_c = c;
            worst_p = p;
        }
    }
    Ok(SimilarityReport { condition_number, fitted_c, worst_p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fit::zero_crossings;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reference_kernel() -> MonomialKernel {
        MonomialKernel::from_real(&[(-4.0, 0.0), (6.0, 1.0)]).unwrap()
    }

    #[test]
    fn trivial_runs() {
        let t = run_linear(&reference_kernel(), 0.0, |_| 0.0, 100).unwrap();
        assert!(t.xi[2..].iter().all(|&x| x == 0.0));
        let one = run_linear(&reference_kernel(), 1.0, |_| 0.0, 300).unwrap();
        let two = run_linear(&reference_kernel(), 2.0, |_| 0.0, 300).unwrap();
        for p in 2..=300 {
            assert_eq!(two.xi[p], 2.0 * one.xi[p]);
        }
        assert!(run_linear(&reference_kernel(), 1.0, |_| 0.0, 2).is_err());
    }

    #[test]
    fn moments_trivial() {
        let zero = run_linear(&reference_kernel(), 0.0, |_| 0.0, 50).unwrap();
        let m = moment_transform(&zero);
        assert!(m.b.iter().all(|bk| bk.iter().all(|z| z.norm() == 0.0)));

        let k = MonomialKernel::from_real(&[(0.0, 0.0)]).unwrap();
        let t = run_linear(&k, 1.0, |_| 0.0, 20).unwrap();
        let m = moment_transform(&t);
        for p in 2..=20 {
            assert_eq!(m.b[0][p], c(1.0, 0.0));
        }
    }

    #[test]
    fn moment_reconstruction() {
        let t = run_linear(&reference_kernel(), 1.0, |p| (p as f64).powf(-0.75), 2000).unwrap();
        assert!(moment_transform(&t).reconstruction_residual < 1e-12);
    }

    #[test]
    fn transition_examples() {
        let m = transition_matrix(&reference_kernel(), 2).entries;
        assert!((m[(0, 0)] - c(-0.5, 0.0)).norm() < 1e-15);
        let big = transition_matrix(&reference_kernel(), 1_000_000).entries;
        assert!(big.max_abs_diff(&CMatrix::identity(2)) < 1e-5);
        let p = 100_000.0;
        let first_order = CMatrix::from_fn(2, |i, j| (big[(i, j)] - if i == j { 1.0 } else { 0.0 }) * p * 10.0);
        assert!(first_order.max_abs_diff(&m_tilde(&reference_kernel())) < 1e-4);
    }

    #[test]
    fn matrix_path_matches_direct() {
        let h = |p: usize| (p as f64).powf(-0.75);
        for kernel in [reference_kernel(), MonomialKernel::from_real(&[(-4.0, -0.5), (6.0, 0.5)]).unwrap()] {
            let direct = run_linear(&kernel, 1.0, h, 2000).unwrap();
            let matrix = matrix_path_xi(&kernel, 1.0, h, 2000);
            for p in 2..=2000 {
                let scale = direct.xi[p].abs().max(1e-3 * (p as f64).powf(-0.5));
                assert!((direct.xi[p] - matrix[p]).abs() <= 1e-10 * scale, "p = {p}");
            }
        }
    }

    #[test]
    fn homogeneous_decay_and_oscillation() {
        let t = run_linear(&reference_kernel(), 1.0, |_| 0.0, 10_000).unwrap();
        let pl = plateau(&t.xi, 0.5, 2, 5000, 10_000);
        assert!(pl.detected, "{pl:?}");
        let z = zero_crossings(&t.xi, (100, 10_000));
        let last = z[z.len() - 1] - z[z.len() - 2];
        assert!((last - 2.0 * core::f64::consts::PI / 15f64.sqrt()).abs() < 0.05, "{z:?}");
    }

    #[test]
    fn scalar_product_telescopes() {
        // M_p = 1 − 1/p² so the product from q₀ = 2 is ∏(1 − 1/p²) → 1/2
        let k = MonomialKernel::from_real(&[(1.0, 0.0)]).unwrap();
        let m = transition_matrix(&k, 7).entries;
        assert!((m[(0, 0)] - c(1.0 - 1.0 / 49.0, 0.0)).norm() < 1e-15);
        let scan = product_norm_scan(&k, &[2], 2000, DEFAULT_NORM_CAP).unwrap();
        let exact = 0.75; // p = 2 factor alone; the running product only shrinks
        assert!((scan[0].sup_norm - exact).abs() < 1e-12);
        let (p, last) = *scan[0].profile.last().unwrap();
        assert_eq!(p, 2000);
        assert!((last - (2001.0 / 4000.0)).abs() < 1e-12);
    }

    #[test]
    fn contraction_when_c_vanishes() {
        let k = MonomialKernel::from_real(&[(0.0, 0.0), (0.0, 1.0)]).unwrap();
        for p in 2..50 {
            let m = transition_matrix(&k, p).entries;
            assert!(spectral_norm(&m, 1e-13).unwrap() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn shifted_reference_kernel_products_bounded() {
        let (shifted, spec) = reference_kernel().normalized_to_zero_sigma(1e-12).unwrap();
        assert!(spec.sigma_g.abs() < 1e-12);
        let scans = product_norm_scan(&shifted, &[2, 10, 100], 3000, DEFAULT_NORM_CAP).unwrap();
        for s in &scans {
            assert!(s.sup_norm.is_finite());
        }
        assert!(matches!(
            product_norm_scan(&MonomialKernel::from_real(&[(2.5, 0.0)]).unwrap(), &[2], 100, 1e6),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn blowup_reported() {
        let k = MonomialKernel::from_real(&[(-4.0, -0.5), (6.0, 0.5)]).unwrap();
        match product_norm_scan(&k, &[2], 500, 1.0) {
            Err(Error::NormBlowup { q0: 2, cap, .. }) => assert_eq!(cap, 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn eigen_examples() {
        let r = eigen_check(&reference_kernel()).unwrap();
        let expected = CMatrix::from_real_rows(&[&[-5.0, 6.0], &[-4.0, 4.0]]);
        assert_eq!(r.m_tilde.max_abs_diff(&expected), 0.0);
        let cp = characteristic_polynomial(&r.m_tilde);
        assert!((cp[0] - 4.0).norm() < 1e-14 && (cp[1] - 1.0).norm() < 1e-14 && (cp[2] - 1.0).norm() == 0.0);
        assert!(r.mismatch < 1e-12);

        let single = eigen_check(&MonomialKernel::from_real(&[(2.5, 0.0)]).unwrap()).unwrap();
        assert!((single.eigenvalues[0] - c(1.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn similarity_bound() {
        let (shifted, _) = reference_kernel().normalized_to_zero_sigma(1e-12).unwrap();
        let r = similarity_check(&shifted, 2000).unwrap();
        assert!(r.condition_number.is_finite() && r.condition_number >= 1.0);
        assert!(r.fitted_c.is_finite());
    }
}
