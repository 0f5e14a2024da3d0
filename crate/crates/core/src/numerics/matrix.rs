//! Small dense complex matrices: just enough for transition-matrix products.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::NumericsError;

/// Row-major `n x n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).max_by(|&x, &y| {
                a[(x, col)].norm().partial_cmp(&a[(y, col)].norm()).unwrap_or(core::cmp::Ordering::Equal)
            })?;
            if a[(pivot, col)].norm() == 0.0 {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let d = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] *= d;
                inv[(col, j)] *= d;
            }
            for i in 0..n {
                if i != col {
                    let factor = a[(i, col)];
                    if factor.norm() != 0.0 {
                        for j in 0..n {
                            let (aj, ij) = (a[(col, j)], inv[(col, j)]);
                            a[(i, j)] -= factor * aj;
                            inv[(i, j)] -= factor * ij;
                        }
                    }
                }
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

/// Settings for power iteration on `M* M`.
#[derive(Clone, Copy, Debug)]
pub struct PowerIteration {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for PowerIteration {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 20_000, seed: 0x5eed }
    }
}

/// Result of a spectral norm evaluation; `vector` is the dominant right
/// singular vector and can warm-start the next evaluation.
#[derive(Clone, Debug)]
pub struct SpectralNorm {
    pub norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub vector: Vec<Complex64>,
}

/// `‖M‖₂` by power iteration on `M* M`, seeded with the all-ones vector plus a
/// small deterministic perturbation.
pub fn spectral_norm(m: &CMatrix, tol: f64) -> Result<f64, NumericsError> {
    let opts = PowerIteration { tol, ..PowerIteration::default() };
    spectral_norm_from(m, None, &opts).map(|s| s.norm)
}

pub fn spectral_norm_from(
    m: &CMatrix,
    start: Option<&[Complex64]>,
    opts: &PowerIteration,
) -> Result<SpectralNorm, NumericsError> {
    if !m.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    let n = m.dim();
    let gram = &m.conj_transpose() * m;
    let mut v: Vec<Complex64> = match start {
        Some(s) if s.len() == n && s.iter().any(|z| z.norm() > 0.0) => s.to_vec(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            (0..n)
                .map(|_| Complex64::new(1.0 + 0.1 * rng.gen::<f64>(), 0.1 * rng.gen::<f64>()))
                .collect()
        }
    };
    normalize(&mut v);
    let mut rho = 0.0;
    for it in 1..=opts.max_iter {
        let w = gram.mul_vec(&v);
        // Rayleigh quotient of the Hermitian gram matrix and its eigen-residual
        rho = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
        let residual = norm2(&w.iter().zip(&v).map(|(a, b)| a - b * rho).collect::<Vec<_>>());
        let wn = norm2(&w);
        if wn == 0.0 {
            return Ok(SpectralNorm { norm: 0.0, iterations: it, converged: true, vector: v });
        }
        if residual <= opts.tol * rho.abs() {
            return Ok(SpectralNorm { norm: rho.max(0.0).sqrt(), iterations: it, converged: true, vector: v });
        }
        v = w.into_iter().map(|z| z / wn).collect();
    }
    Ok(SpectralNorm { norm: rho.max(0.0).sqrt(), iterations: opts.max_iter, converged: false, vector: v })
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = norm2(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_and_diagonal() {
        assert!((spectral_norm(&CMatrix::identity(2), 1e-14).unwrap() - 1.0).abs() < 1e-12);
        let d = CMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, -4.0]]);
        assert!((spectral_norm(&d, 1e-14).unwrap() - 4.0).abs() < 1e-10);
    }

    #[test]
    fn two_by_two_closed_form() {
        // M^T M = [[41, -46], [-46, 52]]; largest eigenvalue from trace/determinant
        let m = CMatrix::from_real_rows(&[&[-5.0, 6.0], &[-4.0, 4.0]]);
        let (a, b, c) = (41.0f64, -46.0f64, 52.0f64);
        let tr = a + c;
        let det = a * c - b * b;
        let lmax = 0.5 * (tr + (tr * tr - 4.0 * det).sqrt());
        let got = spectral_norm(&m, 1e-15).unwrap();
        assert!((got - lmax.sqrt()).abs() < 1e-10 * lmax.sqrt(), "{got} vs {}", lmax.sqrt());
    }

    #[test]
    fn non_finite_rejected() {
        let m = CMatrix::from_real_rows(&[&[f64::NAN, 0.0], &[0.0, 1.0]]);
        assert_eq!(spectral_norm(&m, 1e-12), Err(NumericsError::NonFinite));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = CMatrix::from_fn(3, |i, j| Complex64::new((i * 3 + j) as f64 + 1.0 + if i == j { 4.0 } else { 0.0 }, (i as f64) - (j as f64)));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).max_abs_diff(&CMatrix::identity(3)) < 1e-12);
        assert!(CMatrix::zeros(2).inverse().is_none());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = CMatrix> {
        proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n * n).prop_map(move |v| {
            CMatrix::from_fn(n, |i, j| {
                let (re, im) = v[i * n + j];
                Complex64::new(re, im)
            })
        })
    }

    proptest! {
        #[test]
        fn submultiplicative((a, b) in (1usize..5).prop_flat_map(|n| (arb_matrix(n), arb_matrix(n)))) {
            let tol = 1e-13;
            let na = spectral_norm(&a, tol).unwrap();
            let nb = spectral_norm(&b, tol).unwrap();
            let nab = spectral_norm(&(&a * &b), tol).unwrap();
            prop_assert!(nab <= na * nb * (1.0 + 1e-8) + 1e-12, "{} > {} * {}", nab, na, nb);
        }
    }
}
