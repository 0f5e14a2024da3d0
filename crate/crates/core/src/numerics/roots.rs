//! Simultaneous polynomial root finding (Aberth-Ehrlich).

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::NumericsError;

pub const DEFAULT_MAX_ITER: usize = 500;

/// Horner evaluation of `p` and `p'`, coefficients lowest degree first.
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Multiply out `∏ (z - r_i)` into coefficients, lowest degree first.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = alloc::vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = alloc::vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= r * c;
        }
        coeffs = next;
    }
    coeffs
}

/// All roots of the polynomial with the given complex coefficients (lowest
/// degree first). Trailing zero coefficients are ignored.
///
/// Initial guesses sit on a circle of radius given by the Fujiwara bound,
/// rotated off the real axis. Iteration stops when every correction is below
/// `1e-15` relative, or fails after `max_iter` sweeps. Converged roots get
/// two Newton polishing steps, and pairs that land on a multiple root are
/// merged to their mean.
pub fn aberth(coeffs: &[Complex64], max_iter: usize) -> Result<Vec<Complex64>, NumericsError> {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].norm() == 0.0 {
        n -= 1;
    }
    if n == 0 {
        return Err(NumericsError::ZeroPolynomial);
    }
    let degree = n - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs[..n].iter().map(|c| c / lead).collect();
    if degree == 1 {
        return Ok(alloc::vec![-monic[0]]);
    }
    if monic.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(NumericsError::NonFinite);
    }

    let radius = (0..degree)
        .map(|k| {
            let m = monic[k].norm();
            let exp = 1.0 / (degree - k) as f64;
            if k == 0 {
                (0.5 * m).powf(exp)
            } else {
                m.powf(exp)
            }
        })
        .fold(0.0, f64::max)
        .max(1e-3)
        * 2.0;
    let center = -monic[degree - 1] / degree as f64;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / degree as f64 + 0.4))
        .collect();

    let mut converged = false;
    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for k in 0..degree {
            let (p, dp) = eval_with_derivative(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step <= 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(NumericsError::RootFindingFailure { iterations: max_iter });
    }
    for root in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = eval_with_derivative(&monic, *root);
            if dp.norm() > 0.0 {
                let next = *root - p / dp;
                if next.re.is_finite() && next.im.is_finite() {
                    *root = next;
                }
            }
        }
    }
    merge_multiple_roots(&monic, &mut z);
    Ok(z)
}

/// Pairs closer than `1e-5` relative whose midpoint is also a critical point
/// of the polynomial are a double root resolved only to `sqrt(eps)`; snap
/// both to the simple root of `p'` next to the midpoint.
fn merge_multiple_roots(monic: &[Complex64], z: &mut [Complex64]) {
    let n = z.len();
    let scale = monic.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let deriv: Vec<Complex64> = monic.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (z[i] - z[j]).norm();
            let size = 1.0 + z[i].norm().max(z[j].norm());
            if d < 1e-5 * size {
                let mut mid = (z[i] + z[j]) * 0.5;
                let (_, dp) = eval_with_derivative(monic, mid);
                if dp.norm() <= 1e-7 * scale * size.powi(n as i32) {
                    for _ in 0..3 {
                        let (d, dd) = eval_with_derivative(&deriv, mid);
                        if dd.norm() == 0.0 {
                            break;
                        }
                        let next = mid - d / dd;
                        if !(next.re.is_finite() && next.im.is_finite()) || (next - mid).norm() > 1e-5 * size {
                            break;
                        }
                        mid = next;
                    }
                    z[i] = mid;
                    z[j] = mid;
                }
            }
        }
    }
}

/// Smallest pairwise distance between roots (`inf` for fewer than two).
pub fn min_pairwise_distance(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    best
}

/// Sort by real part, then imaginary part, for reproducible output.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(b.im.partial_cmp(&a.im).unwrap_or(core::cmp::Ordering::Equal))
    });
}

/// Greedy matching distance between two root multisets of equal size: the
/// largest distance from a root in `a` to its matched partner in `b`.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = alloc::vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let mut best = (f64::INFINITY, usize::MAX);
        for (j, y) in b.iter().enumerate() {
            if !used[j] {
                let d = (x - y).norm();
                if d < best.0 {
                    best = (d, j);
                }
            }
        }
        if best.1 == usize::MAX {
            return f64::INFINITY;
        }
        used[best.1] = true;
        worst = worst.max(best.0);
    }
    worst
}
