//! Gauss-Legendre quadrature on `[0, 1]`.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::PI;


/// Nodes and weights of the `n`-point rule mapped to `[0, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on `P_n` from Chebyshev-like guesses.
    ///
    /// Panics if `n < 2`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "Gauss-Legendre needs at least two nodes");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes.push(0.5 * (1.0 - x));
            weights.push(0.5 * w);
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `∫₀¹ g(γ) dγ` with an `nodes`-point Gauss-Legendre rule.
pub fn gauss_quadrature<F: FnMut(f64) -> f64>(g: F, nodes: usize) -> f64 {
    GaussLegendre::new(nodes).integrate(g)
}

/// `∫₀¹ γ^{-σ} (1-γ)^{-σ} dγ` for `σ < 1`.
///
/// The substitution `γ = sin²(πu/2)` turns the integrand into
/// `(π/2) 2^{2σ} sin(πu)^{1-2σ}`, which is bounded for `σ <= 1/2` and only
/// mildly singular above.
pub fn symmetric_beta_integral(sigma: f64, nodes: usize) -> f64 {
    let scale = 0.5 * PI * (2.0 * sigma).exp2();
    gauss_quadrature(|u| scale * (PI * u).sin().powf(1.0 - 2.0 * sigma), nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_polynomial_exactness() {
        assert!((gauss_quadrature(|_| 1.0, 2) - 1.0).abs() < 1e-15);
        assert!((gauss_quadrature(|g| g * g, 8) - 1.0 / 3.0).abs() < 1e-14);
        // 2n-1 = 15
        assert!((gauss_quadrature(|g| g.powi(15), 8) - 1.0 / 16.0).abs() < 1e-14);
    }

    #[test]
    fn weights_sum_to_one() {
        for n in [2, 5, 17, 64, 200] {
            let rule = GaussLegendre::new(n);
            let s: f64 = rule.weights().iter().sum();
            assert!((s - 1.0).abs() < 1e-13, "n = {n}");
            assert!(rule.nodes().iter().all(|&x| x > 0.0 && x < 1.0));
        }
    }

    #[test]
    fn arcsine_density_integrates_to_pi() {
        let v = symmetric_beta_integral(0.5, 16);
        assert!((v - PI).abs() < 1e-6);
    }

    #[test]
    fn symmetric_beta_matches_gamma_ratio() {
        for &s in &[0.1, 0.25, 0.4, 0.5] {
            let a = 1.0 - s;
            let exact = libm::tgamma(a) * libm::tgamma(a) / libm::tgamma(2.0 * a);
            let v = symmetric_beta_integral(s, 400);
            assert!((v - exact).abs() < 1e-6 * exact, "sigma = {s}: {v} vs {exact}");
        }
    }
}
