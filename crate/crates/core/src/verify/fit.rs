//! Power-law and oscillating power-law fits in `log p`.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Fewest usable samples `fit_decay` accepts.
pub const MIN_FIT_POINTS: usize = 8;

/// `seq_p ≈ p^β (A cos(ω ln p) + B sin(ω ln p))`; non-oscillatory fits have
/// `ω = 0` and `B = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayFit {
    pub exponent: f64,
    /// `√(A² + B²)`.
    pub amplitude: f64,
    /// `2π/ω`, NaN when no oscillation was fitted.
    pub log_period: f64,
    /// RMS of `(seq − model)/envelope` for oscillatory fits, RMS of the
    /// `log|seq|` residual otherwise.
    pub residual: f64,
    pub fit_range: (usize, usize),
    pub omega: f64,
    pub cos_coeff: f64,
    pub sin_coeff: f64,
}

impl DecayFit {
    pub fn model(&self, p: f64) -> f64 {
        let u = p.ln();
        p.powf(self.exponent) * (self.cos_coeff * (self.omega * u).cos() + self.sin_coeff * (self.omega * u).sin())
    }

    /// Complex amplitude `Z` and exponent `s` with `model(p) = Re(Z p^s)`.
    pub fn complex_form(&self) -> (Complex64, Complex64) {
        (Complex64::new(self.cos_coeff, -self.sin_coeff), Complex64::new(self.exponent, self.omega))
    }
}

fn samples(seq: &[f64], p_range: (usize, usize), need_nonzero: bool) -> Vec<(f64, f64)> {
    let hi = p_range.1.min(seq.len().saturating_sub(1));
    (p_range.0.max(1)..=hi)
        .filter(|&p| seq[p].is_finite() && (!need_nonzero || seq[p] != 0.0))
        .map(|p| (p as f64, seq[p]))
        .collect()
}

/// Positions in `ln p` where `seq` changes sign, by linear interpolation.
pub fn zero_crossings(seq: &[f64], p_range: (usize, usize)) -> Vec<f64> {
    let pts = samples(seq, p_range, true);
    pts.windows(2)
        .filter(|w| w[0].1.signum() != w[1].1.signum())
        .map(|w| {
            let (u0, u1) = (w[0].0.ln(), w[1].0.ln());
            let t = w[0].1 / (w[0].1 - w[1].1);
            u0 + t * (u1 - u0)
        })
        .collect()
}

/// Fit a decay law to `seq[p]` for `p` in `p_range` (inclusive).
///
/// Samples are weighted by `1/p`, i.e. uniformly in `ln p`. The oscillatory
/// fit is a variable-projection least-squares problem: for fixed `(β, ω)` the
/// amplitudes `A, B` are linear, and `(β, ω)` are refined by Nelder-Mead from
/// the zero-crossing frequency.
pub fn fit_decay(seq: &[f64], p_range: (usize, usize), oscillatory: bool) -> Result<DecayFit> {
    if oscillatory {
        fit_oscillatory(seq, p_range)
    } else {
        fit_power_law(seq, p_range)
    }
}

fn fit_power_law(seq: &[f64], p_range: (usize, usize)) -> Result<DecayFit> {
    let pts = samples(seq, p_range, true);
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData { have: pts.len(), need: MIN_FIT_POINTS });
    }
    let (mut sw, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(p, y) in &pts {
        let (w, x, y) = (1.0 / p, p.ln(), y.abs().ln());
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    let (mx, my) = (sx / sw, sy / sw);
    let slope = (sxy / sw - mx * my) / (sxx / sw - mx * mx);
    let intercept = my - slope * mx;
    let rss: f64 = pts
        .iter()
        .map(|&(p, y)| {
            let r = y.abs().ln() - intercept - slope * p.ln();
            r * r / p
        })
        .sum();
    let positive = pts.iter().filter(|t| t.1 > 0.0).count();
    let sign = if 2 * positive >= pts.len() { 1.0 } else { -1.0 };
    let amplitude = intercept.exp();
    Ok(DecayFit {
        exponent: slope,
        amplitude,
        log_period: f64::NAN,
        residual: (rss / sw).sqrt(),
        fit_range: p_range,
        omega: 0.0,
        cos_coeff: sign * amplitude,
        sin_coeff: 0.0,
    })
}

struct Projection {
    objective: f64,
    a: f64,
    b: f64,
}

/// Best `A, B` for fixed `(β, ω)`; objective is the unexplained fraction of
/// the weighted energy of `seq/p^β`.
fn project(pts: &[(f64, f64)], beta: f64, omega: f64) -> Projection {
    let (mut scc, mut scs, mut sss, mut syc, mut sys, mut syy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for &(p, v) in pts {
        let w = 1.0 / p;
        let y = v * p.powf(-beta);
        let (s, c) = (omega * p.ln()).sin_cos();
        scc += w * c * c;
        scs += w * c * s;
        sss += w * s * s;
        syc += w * y * c;
        sys += w * y * s;
        syy += w * y * y;
    }
    let det = scc * sss - scs * scs;
    let (a, b) = if det.abs() > 1e-300 && det.abs() > 1e-14 * scc * sss {
        ((syc * sss - sys * scs) / det, (sys * scc - syc * scs) / det)
    } else if scc > 0.0 {
        (syc / scc, 0.0)
    } else {
        (0.0, 0.0)
    };
    let explained = a * syc + b * sys;
    let objective = if syy > 0.0 { ((syy - explained) / syy).max(0.0) } else { f64::INFINITY };
    Projection { objective: if objective.is_finite() { objective } else { f64::INFINITY }, a, b }
}

fn nelder_mead<F: Fn([f64; 2]) -> f64>(f: F, start: [f64; 2], step: [f64; 2], iters: usize) -> [f64; 2] {
    let mut simplex = [start, [start[0] + step[0], start[1]], [start[0], start[1] + step[1]]];
    let mut values = simplex.map(&f);
    for _ in 0..iters {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(core::cmp::Ordering::Equal));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);
        let spread = (simplex[2][0] - simplex[0][0]).abs() + (simplex[2][1] - simplex[0][1]).abs();
        if spread < 1e-12 && (values[2] - values[0]).abs() <= 1e-18 {
            break;
        }
        let centroid = [(simplex[0][0] + simplex[1][0]) / 2.0, (simplex[0][1] + simplex[1][1]) / 2.0];
        let along = |t: f64| [centroid[0] + t * (simplex[2][0] - centroid[0]), centroid[1] + t * (simplex[2][1] - centroid[1])];
        let reflected = along(-1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let contracted = if fr < values[2] { along(-0.5) } else { along(0.5) };
            let fc = f(contracted);
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = [
                        simplex[0][0] + 0.5 * (simplex[i][0] - simplex[0][0]),
                        simplex[0][1] + 0.5 * (simplex[i][1] - simplex[0][1]),
                    ];
                    values[i] = f(simplex[i]);
                }
            }
        }
    }
    let best = (0..3)
        .min_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(core::cmp::Ordering::Equal))
        .unwrap_or(0);
    simplex[best]
}

fn fit_oscillatory(seq: &[f64], p_range: (usize, usize)) -> Result<DecayFit> {
    let pts = samples(seq, p_range, false);
    let nonzero = pts.iter().filter(|t| t.1 != 0.0).count();
    if nonzero < MIN_FIT_POINTS {
        return Err(Error::InsufficientData { have: nonzero, need: MIN_FIT_POINTS });
    }
    let crossings = zero_crossings(seq, p_range);
    let objective = |t: [f64; 2]| project(&pts, t[0], t[1].abs()).objective;

    let mut omegas: Vec<f64> = Vec::new();
    if crossings.len() >= 2 {
        let spacing = (crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64;
        omegas.push(core::f64::consts::PI / spacing);
    } else {
        let span = (pts[pts.len() - 1].0 / pts[0].0).ln().max(1e-3);
        // at most half a period visible in the window: scan low frequencies
        omegas.extend((0..=40).map(|k| k as f64 * 0.025 * core::f64::consts::PI / span));
    }
    let mut start = [0.0, omegas[0]];
    let mut best = f64::INFINITY;
    for &w in &omegas {
        for k in 0..=48 {
            let beta = -4.0 + 0.125 * k as f64;
            let v = objective([beta, w]);
            if v < best {
                best = v;
                start = [beta, w];
            }
        }
    }
    let step_w = if start[1] > 0.0 { 0.05 * start[1] } else { 0.05 };
    let mut theta = nelder_mead(objective, start, [0.05, step_w], 2000);
    theta = nelder_mead(objective, theta, [0.01, 0.01 * step_w.max(0.01)], 2000);
    let (beta, omega) = (theta[0], theta[1].abs());
    let proj = project(&pts, beta, omega);
    let amplitude = proj.a.hypot(proj.b);
    let mut fit = DecayFit {
        exponent: beta,
        amplitude,
        log_period: if omega > 1e-9 { 2.0 * core::f64::consts::PI / omega } else { f64::NAN },
        residual: 0.0,
        fit_range: p_range,
        omega,
        cos_coeff: proj.a,
        sin_coeff: proj.b,
    };
    let env = |p: f64| p.powf(beta) * amplitude;
    let ss: f64 = pts.iter().map(|&(p, y)| ((y - fit.model(p)) / env(p)).powi(2)).sum();
    fit.residual = (ss / pts.len() as f64).sqrt();
    Ok(fit)
}
