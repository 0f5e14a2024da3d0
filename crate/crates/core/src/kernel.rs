//! Polynomial algebra for the weight `f`, its symmetrization `f̃`, the
//! integral kernel `G`, and the characteristic spectrum that fixes the decay
//! exponent `α_f`.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, NumericsError, Result};
use crate::numerics::roots::{self, aberth, min_pairwise_distance, sort_roots};
use crate::numerics::{DoubleDouble, Rational};

/// Default back-substitution residual accepted for characteristic roots.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;

/// Roots closer than this (scaled by `1 + max|root|`) count as coincident.
pub const DISTINCT_ROOT_TOL: f64 = 1e-8;

/// Tolerance for the integral conditions on `f`.
pub const INTEGRAL_TOL: f64 = 1e-12;

/// Real polynomial `Σ a_n γⁿ`, coefficients lowest degree first.
///
/// The trailing coefficient is nonzero unless the polynomial is identically
/// zero, in which case `coeffs` is empty.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// The weight `6γ² − 10γ + 4`.
    pub fn reference_weight() -> Self {
        Self::new(vec![4.0, -10.0, 6.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `len(coeffs) − 1`; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_dd(&self, x: DoubleDouble) -> DoubleDouble {
        self.coeffs
            .iter()
            .rev()
            .fold(DoubleDouble::ZERO, |acc, &c| (acc * x).add_f64(c))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &a)| n as f64 * a)
                .collect(),
        )
    }

    /// `∫₀¹ γᵏ p(γ) dγ = Σ a_n / (n + k + 1)`, exact from the coefficients.
    pub fn moment(&self, k: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| a / (n + k + 1) as f64)
            .sum()
    }

    pub fn integral(&self) -> f64 {
        self.moment(0)
    }

    /// `max_{γ∈[0,1]} |p(γ)|` from the endpoints and the real critical points.
    pub fn sup_norm_unit(&self) -> f64 {
        let mut best = self.eval(0.0).abs().max(self.eval(1.0).abs());
        let d = self.derivative();
        if d.degree() >= 1 {
            let c: Vec<Complex64> = d.coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
            if let Ok(crit) = aberth(&c, roots::DEFAULT_MAX_ITER) {
                for z in crit {
                    if z.im.abs() <= 1e-9 * (1.0 + z.re.abs()) && (0.0..=1.0).contains(&z.re) {
                        best = best.max(self.eval(z.re).abs());
                    }
                }
            }
        }
        best
    }

    /// Exact rational image of the coefficients (each `f64` is dyadic).
    pub fn to_rational(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|&c| Rational::from_f64(c)).collect()
    }
}

impl From<Vec<f64>> for RealPolynomial {
    fn from(c: Vec<f64>) -> Self {
        Self::new(c)
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, &a) in self.coeffs.iter().enumerate().rev() {
            if a == 0.0 {
                continue;
            }
            if !first {
                f.write_str(if a < 0.0 { " - " } else { " + " })?;
            } else if a < 0.0 {
                f.write_str("-")?;
            }
            first = false;
            match n {
                0 => write!(f, "{}", a.abs())?,
                1 => write!(f, "{}γ", a.abs())?,
                _ => write!(f, "{}γ^{}", a.abs(), n)?,
            }
        }
        Ok(())
    }
}

/// Coefficients of `f(1 − γ)` in double-double: `Σ_n a_n Σ_k C(n,k) (−γ)^k`.
pub(crate) fn reflected_coeffs_dd(f: &RealPolynomial) -> Vec<DoubleDouble> {
    let n = f.coeffs.len();
    let mut out = vec![DoubleDouble::ZERO; n];
    for (deg, &a) in f.coeffs.iter().enumerate() {
        let mut binom: u128 = 1;
        for k in 0..=deg {
            let term = DoubleDouble::from_i128(binom as i128).mul_f64(a);
            out[k] += if k % 2 == 0 { term } else { -term };
            binom = binom * (deg - k) as u128 / (k + 1) as u128;
        }
    }
    out
}

/// Coefficients of `f̃(γ) = f(γ) + f(1−γ)` in double-double.
pub(crate) fn symmetrized_coeffs_dd(f: &RealPolynomial) -> Vec<DoubleDouble> {
    let mut out = reflected_coeffs_dd(f);
    for (o, &a) in out.iter_mut().zip(&f.coeffs) {
        *o = o.add_f64(a);
    }
    out
}

/// `f̃(γ) = f(γ) + f(1 − γ)`.
pub fn symmetrize(f: &RealPolynomial) -> RealPolynomial {
    RealPolynomial::new(symmetrized_coeffs_dd(f).into_iter().map(DoubleDouble::to_f64).collect())
}

/// `G(γ) = ∫₀¹ f̃′(tγ) t² dt = Σ_{n≥1} (n a_n / (n+2)) γ^{n−1}`.
pub fn kernel_g(f_tilde: &RealPolynomial) -> RealPolynomial {
    RealPolynomial::new(
        f_tilde
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &a)| n as f64 * a / (n + 2) as f64)
            .collect(),
    )
}

/// `G(γ) = Σ C_i γ^{α_i}` with complex coefficients and exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialKernel {
    terms: Vec<(Complex64, Complex64)>,
}

impl MonomialKernel {
    /// Terms are `(C_i, α_i)` pairs; the exponents must be pairwise distinct.
    pub fn new(terms: Vec<(Complex64, Complex64)>) -> Result<Self> {
        for i in 0..terms.len() {
            if !(terms[i].0.re.is_finite()
                && terms[i].0.im.is_finite()
                && terms[i].1.re.is_finite()
                && terms[i].1.im.is_finite())
            {
                return Err(NumericsError::NonFinite.into());
            }
            for j in (i + 1)..terms.len() {
                if terms[i].1 == terms[j].1 {
                    return Err(Error::InvalidKernel(alloc::format!(
                        "exponent {} appears twice",
                        terms[i].1
                    )));
                }
            }
        }
        Ok(Self { terms })
    }

    /// Real terms given as `(C_i, α_i)`.
    pub fn from_real(terms: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            terms
                .iter()
                .map(|&(c, a)| (Complex64::new(c, 0.0), Complex64::new(a, 0.0)))
                .collect(),
        )
    }

    /// The nonzero coefficients of a polynomial `G`, with `α_i = i`.
    pub fn from_polynomial(g: &RealPolynomial) -> Self {
        let terms = g
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(i, &c)| (Complex64::new(c, 0.0), Complex64::new(i as f64, 0.0)))
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> &[(Complex64, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.terms.iter().map(|t| t.0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.terms.iter().map(|t| t.1)
    }

    /// True when every coefficient and exponent is real and every exponent
    /// is a nonnegative integer, so `G` is an ordinary polynomial.
    pub fn as_polynomial(&self) -> Option<RealPolynomial> {
        let mut coeffs = Vec::new();
        for &(c, a) in &self.terms {
            if c.im != 0.0 || a.im != 0.0 || a.re < 0.0 || a.re.fract() != 0.0 || a.re > 64.0 {
                return None;
            }
            let k = a.re as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0.0);
            }
            coeffs[k] += c.re;
        }
        Some(RealPolynomial::new(coeffs))
    }

    /// `G(γ)` for `0 < γ ≤ 1`, with `γ^α = exp(α log γ)` and real `log γ`.
    pub fn eval(&self, gamma: f64) -> Complex64 {
        let lg = gamma.ln();
        self.terms.iter().map(|&(c, a)| c * (a * lg).exp()).sum()
    }

    /// Kernel with every exponent moved by `+s`. Its characteristic roots are
    /// those of `self` moved by `−s`, and it generates `p^{−s} ξ_p` from `ξ_p`.
    pub fn shift_exponents(&self, s: Complex64) -> Self {
        Self { terms: self.terms.iter().map(|&(c, a)| (c, a + s)).collect() }
    }

    /// Shift by `Re σ(G)` so the largest real part of the roots becomes zero.
    pub fn normalized_to_zero_sigma(&self, tol: f64) -> Result<(Self, Spectrum)> {
        let spec = sigma_of_kernel(self, tol)?;
        let shifted = self.shift_exponents(Complex64::new(spec.sigma_g, 0.0));
        let spec = sigma_of_kernel(&shifted, tol)?;
        Ok((shifted, spec))
    }

    /// The cleared-denominator characteristic polynomial
    /// `∏(λ+α_i+1) − Σ_i C_i ∏_{j≠i}(λ+α_j+1)`, lowest degree first.
    pub fn characteristic_polynomial(&self) -> Vec<Complex64> {
        let shifts: Vec<Complex64> = self.exponents().map(|a| a + 1.0).collect();
        let mut out = linear_factor_product(&shifts, None);
        for (i, (c, _)) in self.terms.iter().enumerate() {
            let partial = linear_factor_product(&shifts, Some(i));
            for (k, v) in partial.into_iter().enumerate() {
                out[k] -= c * v;
            }
        }
        out
    }

    /// `|Σ C_i/(λ+α_i+1) − 1|`.
    pub fn residual(&self, lambda: Complex64) -> f64 {
        let s: Complex64 = self.terms.iter().map(|&(c, a)| c / (lambda + a + 1.0)).sum();
        (s - 1.0).norm()
    }
}

/// `∏_{i≠skip} (λ + s_i)` as coefficients, lowest degree first.
fn linear_factor_product(shifts: &[Complex64], skip: Option<usize>) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); shifts.len() + 1];
    out[0] = Complex64::new(1.0, 0.0);
    let mut deg = 0;
    for (i, &s) in shifts.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        for k in (0..=deg).rev() {
            let v = out[k];
            out[k + 1] += v;
            out[k] = v * s;
        }
        deg += 1;
    }
    out
}

/// Characteristic roots and the derived decay exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Sorted by real part, then by decreasing imaginary part.
    pub roots: Vec<Complex64>,
    /// `max_i Re σ_i`.
    pub sigma_g: f64,
    /// `1 − sigma_g`.
    pub alpha_f: f64,
    pub distinct: bool,
    /// All roots satisfy `−1 < Re σ < 0`.
    pub in_strip: bool,
    /// Largest back-substitution residual over the roots.
    pub max_residual: f64,
}

impl Spectrum {
    fn from_roots<R: Fn(Complex64) -> f64>(
        mut roots: Vec<Complex64>,
        residual: R,
        tol: f64,
    ) -> Result<Self> {
        sort_roots(&mut roots);
        let max_residual = roots.iter().map(|&z| residual(z)).fold(0.0, f64::max);
        if !(max_residual < tol) {
            return Err(NumericsError::RootFindingFailure { iterations: roots::DEFAULT_MAX_ITER }.into());
        }
        let sigma_g = roots.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        let scale = 1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Ok(Self {
            distinct: min_pairwise_distance(&roots) > DISTINCT_ROOT_TOL * scale,
            in_strip: roots.iter().all(|z| z.re > -1.0 && z.re < 0.0),
            alpha_f: 1.0 - sigma_g,
            sigma_g,
            max_residual,
            roots,
        })
    }

    /// A root with the largest real part (the one with positive imaginary part
    /// when it belongs to a conjugate pair).
    pub fn dominant_root(&self) -> Complex64 {
        self.roots
            .iter()
            .copied()
            .filter(|z| z.re == self.sigma_g)
            .max_by(|a, b| a.im.partial_cmp(&b.im).unwrap_or(core::cmp::Ordering::Equal))
            .unwrap_or(Complex64::new(self.sigma_g, 0.0))
    }
}

/// Roots of `Σ_{n≥1} (n a_n/(n+2)) · 1/(n+α) = 1` for `f̃ = Σ a_n γⁿ`.
///
/// Denominators are cleared into a polynomial of degree equal to the number
/// of nonzero `a_n` with `n ≥ 1`; terms with `a_n = 0` drop out of the
/// equation and would otherwise contribute the spurious root `−n`.
pub fn characteristic_spectrum(f_tilde: &RealPolynomial, tol: f64) -> Result<Spectrum> {
    let terms: Vec<(usize, f64)> = f_tilde
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &a)| a != 0.0)
        .map(|(n, &a)| (n, n as f64 * a / (n + 2) as f64))
        .collect();
    if terms.is_empty() {
        return Err(Error::DegenerateKernel);
    }
    // ∏(α+n) − Σ_n C_n ∏_{m≠n}(α+m), real coefficients
    let shifts: Vec<f64> = terms.iter().map(|&(n, _)| n as f64).collect();
    let real_product = |skip: Option<usize>| {
        let mut out = vec![0.0f64; shifts.len() + 1];
        out[0] = 1.0;
        let mut deg = 0;
        for (i, &s) in shifts.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            for k in (0..=deg).rev() {
                let v = out[k];
                out[k + 1] += v;
                out[k] = v * s;
            }
            deg += 1;
        }
        out
    };
    let mut poly = real_product(None);
    for (i, &(_, c)) in terms.iter().enumerate() {
        for (k, v) in real_product(Some(i)).into_iter().enumerate() {
            poly[k] -= c * v;
        }
    }
    let coeffs: Vec<Complex64> = poly.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let roots = aberth(&coeffs, roots::DEFAULT_MAX_ITER)?;
    let residual = |z: Complex64| {
        let s: Complex64 = terms.iter().map(|&(n, c)| c / (z + n as f64)).sum();
        (s - 1.0).norm()
    };
    Spectrum::from_roots(roots, residual, tol)
}

/// Roots of `Σ C_i/(λ+α_i+1) = 1` for a general monomial kernel. Terms with
/// `C_i = 0` are dropped before clearing denominators.
pub fn sigma_of_kernel(kernel: &MonomialKernel, tol: f64) -> Result<Spectrum> {
    let live = MonomialKernel {
        terms: kernel.terms.iter().copied().filter(|t| t.0.norm() != 0.0).collect(),
    };
    if live.is_empty() {
        return Err(Error::DegenerateKernel);
    }
    let roots = aberth(&live.characteristic_polynomial(), roots::DEFAULT_MAX_ITER)?;
    Spectrum::from_roots(roots, |z| live.residual(z), tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssumptionItem {
    pub name: &'static str,
    pub pass: bool,
    pub measured: f64,
    pub expected: f64,
    pub detail: String,
}

/// Structured outcome of the standing assumptions on `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssumptionReport {
    pub items: Vec<AssumptionItem>,
    pub spectrum: Option<Spectrum>,
    /// `∫₀¹ G` computed from the coefficients.
    pub kernel_integral: f64,
    /// Closed form `1 − f̃(0)/2`, valid when `∫₀¹ f̃(γ)γ dγ = 1`.
    pub kernel_integral_closed_form: f64,
    /// Whether the often-quoted value `∫₀¹ G = −1` holds for this `f`.
    pub kernel_integral_is_minus_one: bool,
}

impl AssumptionReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn item(&self, name: &str) -> Option<&AssumptionItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

/// Check `∫f = 1`, `∫f̃ = 2`, `∫f̃ γ = 1`, and distinct in-strip roots.
/// Failures are reported, never raised.
pub fn validate_assumption(f: &RealPolynomial) -> AssumptionReport {
    let ft = symmetrize(f);
    let g = kernel_g(&ft);
    let mk = |name, measured: f64, expected: f64| AssumptionItem {
        name,
        pass: (measured - expected).abs() <= INTEGRAL_TOL * (1.0 + expected.abs()),
        measured,
        expected,
        detail: String::new(),
    };
    let mut items = vec![
        mk("integral_f", f.integral(), 1.0),
        mk("integral_f_tilde", ft.integral(), 2.0),
        mk("first_moment_f_tilde", ft.moment(1), 1.0),
    ];
    let spectrum = characteristic_spectrum(&ft, ROOT_RESIDUAL_TOL);
    let (pass, measured, detail) = match &spectrum {
        Ok(s) => (
            s.distinct && s.in_strip,
            s.sigma_g,
            alloc::format!("distinct = {}, in_strip = {}", s.distinct, s.in_strip),
        ),
        Err(e) => (false, f64::NAN, alloc::format!("{e}")),
    };
    items.push(AssumptionItem { name: "spectrum", pass, measured, expected: f64::NAN, detail });
    let kernel_integral = g.integral();
    AssumptionReport {
        items,
        spectrum: spectrum.ok(),
        kernel_integral,
        kernel_integral_closed_form: 1.0 - ft.eval(0.0) / 2.0,
        kernel_integral_is_minus_one: (kernel_integral + 1.0).abs() <= INTEGRAL_TOL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_quadrature;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn symmetrize_examples() {
        let f = RealPolynomial::reference_weight();
        assert_eq!(symmetrize(&f).coeffs(), &[4.0, -12.0, 12.0]);
        assert_eq!(symmetrize(&RealPolynomial::constant(1.0)).coeffs(), &[2.0]);
        assert_eq!(symmetrize(&RealPolynomial::new(vec![0.0, 1.0])).coeffs(), &[1.0]);
    }

    #[test]
    fn kernel_examples() {
        let ft = RealPolynomial::new(vec![4.0, -12.0, 12.0]);
        assert_eq!(kernel_g(&ft).coeffs(), &[-4.0, 6.0]);
        assert!(kernel_g(&RealPolynomial::constant(2.0)).is_zero());
        let g = kernel_g(&RealPolynomial::new(vec![0.0, 1.0]));
        assert_eq!(g.coeffs(), &[1.0 / 3.0]);
        // ∫₀¹ t² dt
        assert!((gauss_quadrature(|t| t * t, 4) - g.coeffs()[0]).abs() < 1e-15);
    }

    #[test]
    fn reference_spectrum() {
        let ft = symmetrize(&RealPolynomial::reference_weight());
        let s = characteristic_spectrum(&ft, 1e-12).unwrap();
        let im = 15f64.sqrt() / 2.0;
        assert!((s.roots[0] - c(-0.5, im)).norm() < 1e-13);
        assert!((s.roots[1] - c(-0.5, -im)).norm() < 1e-13);
        assert_eq!(s.alpha_f, 1.5);
        assert!(s.distinct && s.in_strip);
        for z in &s.roots {
            // Σ n a_n/((n+2)(n+σ)) − 1 written out for a_1 = −12, a_2 = 12
            let lhs = c(-12.0, 0.0) / (3.0 * (z + 1.0)) + c(24.0, 0.0) / (4.0 * (z + 2.0));
            assert!((lhs - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn degenerate_kernel() {
        assert_eq!(
            characteristic_spectrum(&RealPolynomial::constant(2.0), 1e-10),
            Err(Error::DegenerateKernel)
        );
        let k = MonomialKernel::from_real(&[(0.0, 0.0)]).unwrap();
        assert_eq!(sigma_of_kernel(&k, 1e-10), Err(Error::DegenerateKernel));
    }

    #[test]
    fn monomial_kernel_examples() {
        let k = MonomialKernel::from_real(&[(-4.0, 0.0), (6.0, 1.0)]).unwrap();
        let s = sigma_of_kernel(&k, 1e-12).unwrap();
        let im = 15f64.sqrt() / 2.0;
        assert!((s.roots[0] - c(-0.5, im)).norm() < 1e-13);
        assert!((s.roots[1] - c(-0.5, -im)).norm() < 1e-13);

        let single = MonomialKernel::from_real(&[(2.5, 0.0)]).unwrap();
        let s = sigma_of_kernel(&single, 1e-12).unwrap();
        assert_eq!(s.roots, vec![c(1.5, 0.0)]);
    }

    #[test]
    fn coincident_roots_flagged() {
        // c/(λ+1) + d/(λ+2) = 1 clears to λ² + (3−c−d)λ + (2−2c−d); c = −1,
        // d = 4 gives λ² = 0.
        let k = MonomialKernel::from_real(&[(-1.0, 0.0), (4.0, 1.0)]).unwrap();
        let s = sigma_of_kernel(&k, 1e-10).unwrap();
        assert!(!s.distinct);
        assert!(s.roots.iter().all(|z| z.norm() < 1e-7));
    }

    #[test]
    fn duplicate_exponents_rejected() {
        assert!(matches!(
            MonomialKernel::from_real(&[(1.0, 0.5), (2.0, 0.5)]),
            Err(Error::InvalidKernel(_))
        ));
    }

    #[test]
    fn assumption_examples() {
        let report = validate_assumption(&RealPolynomial::reference_weight());
        assert!(report.all_pass(), "{report:?}");
        assert!((report.kernel_integral + 1.0).abs() < 1e-15);
        assert!(report.kernel_integral_is_minus_one);

        let report = validate_assumption(&RealPolynomial::new(vec![0.0, 1.0]));
        let item = report.item("integral_f").unwrap();
        assert!(!item.pass);
        assert_eq!(item.measured, 0.5);
    }

    #[test]
    fn kernel_integral_minus_one_is_not_general() {
        // f = 1 satisfies ∫f = 1 and ∫f̃ = 2 but f̃(0) = 2, so ∫G = 0.
        let report = validate_assumption(&RealPolynomial::constant(1.0));
        assert!(report.item("integral_f_tilde").unwrap().pass);
        assert_eq!(report.kernel_integral, 0.0);
        assert_eq!(report.kernel_integral_closed_form, 0.0);
        assert!(!report.kernel_integral_is_minus_one);
    }

    #[test]
    fn exponent_shift_moves_roots() {
        let k = MonomialKernel::from_real(&[(-4.0, 0.0), (6.0, 1.0)]).unwrap();
        let base = sigma_of_kernel(&k, 1e-12).unwrap();
        let s = base.dominant_root();
        let shifted = sigma_of_kernel(&k.shift_exponents(s), 1e-10).unwrap();
        let expected: Vec<Complex64> = base.roots.iter().map(|z| z - s).collect();
        assert!(roots::multiset_distance(&shifted.roots, &expected) < 1e-10);

        let (_, zeroed) = k.normalized_to_zero_sigma(1e-12).unwrap();
        assert!(zeroed.sigma_g.abs() < 1e-12);
    }

    #[test]
    fn sup_norm() {
        let ft = RealPolynomial::new(vec![4.0, -12.0, 12.0]);
        assert_eq!(ft.sup_norm_unit(), 4.0);
        let p = RealPolynomial::new(vec![0.0, 1.0, -1.0]);
        assert!((p.sup_norm_unit() - 0.25).abs() < 1e-15);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = RealPolynomial> {
        proptest::collection::vec(-5.0f64..5.0, 1..=max_deg + 1).prop_map(RealPolynomial::new)
    }

    proptest! {
        #[test]
        fn symmetrization_is_symmetric(f in arb_poly(8), gammas in proptest::collection::vec(0.0f64..=1.0, 1000)) {
            let ft = symmetrize(&f);
            for g in gammas {
                prop_assert!((ft.eval(g) - ft.eval(1.0 - g)).abs() < 1e-12);
                prop_assert!((ft.eval(g) - f.eval(g) - f.eval(1.0 - g)).abs() < 1e-11);
            }
        }

        #[test]
        fn kernel_closed_form_matches_quadrature(ft in arb_poly(8), gammas in proptest::collection::vec(0.0f64..=1.0, 100)) {
            let g = kernel_g(&ft);
            let d = ft.derivative();
            for x in gammas {
                let numeric = gauss_quadrature(|t| d.eval(t * x) * t * t, 12);
                prop_assert!((g.eval(x) - numeric).abs() < 1e-10);
            }
        }

        #[test]
        fn kernel_integral_closed_form(f in arb_poly(6)) {
            // Normalize so that ∫f̃ = 2 (then ∫f̃γ = 1 by symmetry).
            let ft = symmetrize(&f);
            let m = ft.integral();
            prop_assume!(m.abs() > 1e-3);
            let ft = RealPolynomial::new(ft.coeffs().iter().map(|a| 2.0 * a / m).collect());
            prop_assert!((ft.moment(1) - 1.0).abs() < 1e-9);
            let g = kernel_g(&ft);
            let quad = gauss_quadrature(|x| g.eval(x), 16);
            prop_assert!((quad - (1.0 - ft.eval(0.0) / 2.0)).abs() < 1e-9 * (1.0 + ft.eval(0.0).abs()));
            prop_assert!((g.integral() - quad).abs() < 1e-9 * (1.0 + quad.abs()));
        }

        #[test]
        fn spectrum_routes_agree(ft in arb_poly(6)) {
            let a = characteristic_spectrum(&ft, 1e-8);
            let b = sigma_of_kernel(&MonomialKernel::from_polynomial(&kernel_g(&ft)), 1e-8);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    prop_assume!(a.distinct);
                    let scale = 1.0 + a.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
                    prop_assert!(roots::multiset_distance(&a.roots, &b.roots) < 1e-10 * scale);
                }
                (Err(Error::DegenerateKernel), Err(Error::DegenerateKernel)) => {}
                _ => prop_assume!(false),
            }
        }
    }
}
