//! Randomized checks of the elementary inequalities and product bounds used
//! to control constants.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityResult {
    pub name: &'static str,
    pub samples: usize,
    pub failures: usize,
    /// Smallest `rhs − lhs` seen (negative on failure).
    pub worst_margin: f64,
    /// First failing input.
    pub witness: Option<String>,
}

impl InequalityResult {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AppendixReport {
    pub seed: u64,
    pub items: Vec<InequalityResult>,
}

impl AppendixReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(InequalityResult::pass)
    }
}

struct Tally {
    result: InequalityResult,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            result: InequalityResult { name, samples: 0, failures: 0, worst_margin: f64::INFINITY, witness: None },
        }
    }

    /// Record `lhs ≤ rhs`, allowing rounding of a few ulps of the operands.
    fn le(&mut self, lhs: f64, rhs: f64, witness: impl FnOnce() -> String) {
        let slack = 4.0 * f64::EPSILON * (lhs.abs() + rhs.abs());
        let margin = rhs - lhs;
        self.result.samples += 1;
        self.result.worst_margin = self.result.worst_margin.min(margin);
        if !(margin >= -slack) {
            self.result.failures += 1;
            if self.result.witness.is_none() {
                self.result.witness = Some(witness());
            }
        }
    }
}

/// A random sequence `ξ_2..ξ_{len−1}` with `|ξ_q| ≤ a3` below `n0` and
/// `|ξ_q| ≤ a1` from `n0` on (index 0 and 1 unused).
fn admissible_xi(rng: &mut ChaCha8Rng, len: usize, n0: usize, a1: f64, a3: f64) -> Vec<f64> {
    let mut xi = vec![0.0; len];
    for (q, x) in xi.iter_mut().enumerate().skip(2) {
        let bound = if q >= n0 { a1 } else { a3 };
        // push some samples onto the boundary, where the bounds are tight
        *x = match rng.gen_range(0..8) {
            0 => bound,
            1 => -bound,
            _ => rng.gen_range(-bound..=bound),
        };
    }
    xi
}

/// Prefix sums of `ln(1 + ξ_q/q³)`; `s[q] = Σ_{r=2}^q`.
fn log_prefix(xi: &[f64]) -> Vec<f64> {
    let mut s = vec![0.0; xi.len()];
    let mut acc = crate::numerics::CompensatedAccumulator::new();
    for q in 2..xi.len() {
        acc.add((xi[q] / (q * q * q) as f64).ln_1p());
        s[q] = acc.value();
    }
    s
}

fn lin_prefix(xi: &[f64]) -> Vec<f64> {
    let mut s = vec![0.0; xi.len()];
    let mut acc = crate::numerics::CompensatedAccumulator::new();
    for q in 2..xi.len() {
        acc.add(xi[q] / (q * q * q) as f64);
        s[q] = acc.value();
    }
    s
}

/// `Σ_{a<q<b}` from a prefix array.
fn range(s: &[f64], a: usize, b: usize) -> f64 {
    if a + 1 >= b {
        0.0
    } else {
        s[b - 1] - s[a]
    }
}

/// Run every inequality on `samples` random admissible inputs.
pub fn appendix_inequality_suite(samples: usize, seed: u64) -> AppendixReport {
    let samples = samples.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();

    let mut t = Tally::new("log(1+x) <= x for x > -1");
    t.le(0.0f64.ln_1p(), 0.0, || "x = 0".into());
    for _ in 1..samples {
        // (−1, 1] uniformly, or log-uniform on (0, e^30)
        let x = if rng.gen_bool(0.5) { 1.0 - 2.0 * rng.gen::<f64>() } else { libm::exp(rng.gen_range(-30.0..30.0)) };
        t.le(x.ln_1p(), x, || format!("x = {x:e}"));
    }
    items.push(t.result);

    let mut t = Tally::new("sum_{q=N+1}^M q^(-a-1) <= (N^-a - M^-a)/a");
    for _ in 0..samples {
        let n: usize = rng.gen_range(1..=200);
        let m: usize = n + rng.gen_range(1..=300);
        let a: f64 = libm::exp(rng.gen_range(-4.0f64..1.5));
        let lhs: f64 = ((n + 1)..=m).map(|q| (q as f64).powf(-a - 1.0)).sum();
        let rhs = ((n as f64).powf(-a) - (m as f64).powf(-a)) / a;
        t.le(lhs, rhs, || format!("N = {n}, M = {m}, alpha = {a:e}"));
    }
    items.push(t.result);

    let mut t = Tally::new("exp(x/2) <= 1+x on [0,1]");
    for i in 0..samples {
        let x = if i < 2 { i as f64 } else { rng.gen_range(0.0..=1.0) };
        t.le((x / 2.0).exp(), 1.0 + x, || format!("x = {x:e}"));
    }
    items.push(t.result);

    let mut t = Tally::new("exp(2x) <= 1+x on [-1/4,0]");
    for i in 0..samples {
        let x = match i {
            0 => 0.0,
            1 => -0.25,
            _ => rng.gen_range(-0.25..=0.0),
        };
        t.le((2.0 * x).exp(), 1.0 + x, || format!("x = {x:e}"));
    }
    items.push(t.result);

    let mut t = Tally::new("exp(x) <= 1+x+x^2 for |x| <= 1/2");
    for i in 0..samples {
        let x = match i {
            0 => 0.0,
            1 => 0.5,
            2 => -0.5,
            _ => rng.gen_range(-0.5..=0.5),
        };
        t.le(x.exp(), 1.0 + x + x * x, || format!("x = {x:e}"));
    }
    items.push(t.result);

    let mut t = Tally::new("log(1+x) >= x-x^2 for |x| <= 1/4");
    for i in 0..samples {
        let x = match i {
            0 => 0.0,
            1 => 0.25,
            2 => -0.25,
            _ => rng.gen_range(-0.25..=0.25),
        };
        t.le(x - x * x, x.ln_1p(), || format!("x = {x:e}"));
    }
    items.push(t.result);

    let mut t = Tally::new("Lemma A.2: |p^3((1+x/p^2)^(-1/p)-1)+x| <= 5x^2/(4p^2)");
    for i in 0..samples {
        let d1 = [1.0, 4.0, 16.0][i % 3];
        let p_min = (2.0 * d1.sqrt()).max(7.0).ceil() as u64;
        let p = if rng.gen_bool(0.5) { p_min + rng.gen_range(0..20) } else { rng.gen_range(p_min..=10_000) } as f64;
        let x = if i < 3 { 0.0 } else { rng.gen_range(-d1..=d1) };
        let p3 = p * p * p;
        let lhs = (p3 * (-(x / (p * p)).ln_1p() / p).exp_m1() + x).abs();
        let rhs = 5.0 * x * x / (4.0 * p * p);
        t.le(lhs, rhs, || format!("D1 = {d1}, x = {x:e}, p = {p}"));
        t.le(rhs, 5.0 * d1 * d1 / (4.0 * p * p), || format!("D1 = {d1}, x = {x:e}, p = {p}"));
    }
    items.push(t.result);

    // Product lemmas share the hypothesis |ξ_q| ≤ A for q ≥ N₀ ≥ max(1, A).
    let mut a3 = Tally::new("Lemma A.3: |prod_{p1<q<p}(1+xi_q/q^3)^p1 - 1| <= A/p1");
    let mut a6 = Tally::new("Lemma A.6: |prod - (1 + p1 sum xi_q/q^3)| <= A^2/(4 p1^2)");
    for i in 0..samples {
        let (a, n0, p1, p) = if i == 0 {
            (1.0, 4, 10, 60)
        } else {
            let a: f64 = rng.gen_range(0.01..=6.0);
            let n0 = a.max(1.0).ceil() as usize + rng.gen_range(0..4);
            let p1 = n0 + rng.gen_range(0..40);
            (a, n0, p1, p1 + rng.gen_range(2..200))
        };
        let xi = admissible_xi(&mut rng, p, n0, a, a);
        let log_sum: f64 = ((p1 + 1)..p).map(|q| (xi[q] / (q * q * q) as f64).ln_1p()).sum();
        let lin_sum: f64 = ((p1 + 1)..p).map(|q| xi[q] / (q * q * q) as f64).sum();
        let prod = (p1 as f64 * log_sum).exp();
        let w = || format!("A = {a}, N0 = {n0}, p1 = {p1}, p = {p}");
        a3.le((prod - 1.0).abs(), a / p1 as f64, w);
        a6.le((prod - (1.0 + p1 as f64 * lin_sum)).abs(), a * a / (4.0 * (p1 * p1) as f64), w);
    }
    items.push(a3.result);

    let mut t = Tally::new("Lemma A.4: sum_{N0<=p1<=p-3} gamma^2/(p-1)^2 |prod - 1| <= A/(2p^2)");
    for _ in 0..samples {
        let a: f64 = rng.gen_range(0.01..=6.0);
        let n0 = a.max(1.0).ceil() as usize + rng.gen_range(0..4);
        let p = n0 + 3 + rng.gen_range(0..150);
        let xi = admissible_xi(&mut rng, p, n0, a, a);
        let s = log_prefix(&xi);
        let pf = p as f64;
        let lhs: f64 = (n0..=p - 3)
            .map(|p1| {
                let g = p1 as f64 / pf;
                g * g / ((pf - 1.0) * (pf - 1.0)) * (p1 as f64 * range(&s, p1, p)).exp_m1().abs()
            })
            .sum();
        t.le(lhs, a / (2.0 * pf * pf), || format!("A = {a}, N0 = {n0}, p = {p}"));
    }
    items.push(t.result);

    // The remaining lemmas add a bound A₃ on ξ_q below N₀ and the product
    // constant A₂, taken as the smallest value valid for the sample.
    let mut a5 = Tally::new("Lemma A.5: sum_{1<=p1<=p-3} gamma^2/(p-1)^2 |prod - 1| <= A1/(2p^2) + N0^3(1+A2(1+A1/N0))/(3(p-1)^2 p^2)");
    let mut a7 = Tally::new("Lemma A.7: sum_{1<=p1<=p-3} gamma/(p-1) |prod - (1 + p1 sum)| <= A1^2 log(p-3)/(4p(p-1)) + ...");
    for _ in 0..samples {
        let a1: f64 = rng.gen_range(0.01..=6.0);
        let a3c: f64 = rng.gen_range(0.0..=4.0);
        let n0 = a1.max(3.0).ceil() as usize + rng.gen_range(0..6);
        let p = n0 + 4 + rng.gen_range(0..150);
        let xi = admissible_xi(&mut rng, p, n0, a1, a3c);
        let s = log_prefix(&xi);
        let l = lin_prefix(&xi);
        let a2 = (1..=n0).map(|p1| (p1 as f64 * range(&s, p1, n0 + 1)).exp()).fold(0.0, f64::max);
        let (pf, nf) = (p as f64, n0 as f64);
        let mut lhs5 = 0.0;
        let mut lhs7 = 0.0;
        for p1 in 1..=p - 3 {
            let g = p1 as f64 / pf;
            let prod = (p1 as f64 * range(&s, p1, p)).exp();
            lhs5 += g * g / ((pf - 1.0) * (pf - 1.0)) * (prod - 1.0).abs();
            lhs7 += g / (pf - 1.0) * (prod - (1.0 + p1 as f64 * range(&l, p1, p))).abs();
        }
        let rhs5 = a1 / (2.0 * pf * pf) + nf.powi(3) / (3.0 * (pf - 1.0) * (pf - 1.0) * pf * pf) * (1.0 + a2 * (1.0 + a1 / nf));
        let rhs7 = a1 * a1 * (pf - 3.0).ln() / (4.0 * pf * (pf - 1.0))
            + ((1.0 + a2) / 2.0 * nf * nf + ((3.0 * a2 + 1.0) * a1 + 3.0 * a3c) / 6.0 * nf) / (pf * (pf - 1.0));
        let w = || format!("A1 = {a1}, A2 = {a2}, A3 = {a3c}, N0 = {n0}, p = {p}");
        a5.le(lhs5, rhs5, w);
        a7.le(lhs7, rhs7, w);
    }
    items.push(a5.result);
    items.push(a6.result);
    items.push(a7.result);

    AppendixReport { seed, items }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = appendix_inequality_suite(2000, 7);
        for item in &r.items {
            assert!(item.pass(), "{item:?}");
            assert!(item.samples >= 2000);
        }
    }

    #[test]
    fn witness_reported() {
        let mut t = Tally::new("1 <= 0");
        t.le(1.0, 0.0, || "always".into());
        assert_eq!(t.result.failures, 1);
        assert_eq!(t.result.witness.as_deref(), Some("always"));
    }

    #[test]
    fn spec_product_example() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let xi = admissible_xi(&mut rng, 200, 4, 1.0, 1.0);
            let prod = (10.0 * (11..200).map(|q| (xi[q] / (q * q * q) as f64).ln_1p()).sum::<f64>()).exp();
            assert!((prod - 1.0).abs() <= 0.1);
        }
    }
}
