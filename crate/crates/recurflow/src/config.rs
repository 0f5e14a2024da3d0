//! Run configuration shared by every subcommand.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use clap::ValueEnum;
use recurflow_core::{EngineConfig, MonomialKernel, Precision, RealPolynomial};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Checks run by `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Check {
    Identity,
    MainLemma,
    Nonlinear,
    Ansatz,
    BaseCase,
    HatXi,
    HOrder,
    Decay,
    Appendix,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Identity,
        Check::MainLemma,
        Check::Nonlinear,
        Check::Ansatz,
        Check::BaseCase,
        Check::HatXi,
        Check::HOrder,
        Check::Decay,
        Check::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Identity => "identity",
            Check::MainLemma => "main_lemma",
            Check::Nonlinear => "nonlinear",
            Check::Ansatz => "ansatz",
            Check::BaseCase => "base_case",
            Check::HatXi => "hat_xi",
            Check::HOrder => "h_order",
            Check::Decay => "decay",
            Check::Appendix => "appendix",
        }
    }
}

/// Named thresholds and their defaults.
pub const THRESHOLDS: &[(&str, f64)] = &[
    ("identity", 1e-8),
    ("decay_tolerance", 0.1),
    ("epsilon", 0.2),
    ("h_order_gap", 0.2),
    ("nonlinear_sigma", 0.5),
    ("eigen_mismatch", 1e-9),
    ("moment_residual", 1e-12),
    ("plateau", 0.05),
    ("norm_cap", 1e6),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Coefficients of `f`, lowest degree first.
    pub f_coeffs: Vec<f64>,
    pub horizon: usize,
    #[serde(serialize_with = "ser_precision", deserialize_with = "de_precision")]
    pub precision: Precision,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub checks: Vec<Check>,
    pub fit_range: Option<(usize, usize)>,
    pub thresholds: BTreeMap<String, f64>,
    pub renorm_threshold: u32,
    /// Monomial kernel `"α:C,α:C"`; when absent the kernel is `G` of `f`.
    pub kernel: Option<String>,
    pub xi2: f64,
    /// Forcing `h_p = A p^e` as `"A:e"` or just `"e"`.
    pub forcing: Option<String>,
    pub q0: Vec<usize>,
    pub samples: usize,
    /// Initial value for `R = x/x*`.
    pub x: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            f_coeffs: vec![4.0, -10.0, 6.0],
            horizon: 1024,
            precision: Precision::DoubleDouble,
            seed: 0,
            output_dir: PathBuf::from("."),
            checks: Check::ALL.to_vec(),
            fit_range: None,
            thresholds: BTreeMap::new(),
            renorm_threshold: EngineConfig::default().renorm_threshold,
            kernel: None,
            xi2: 1.0,
            forcing: None,
            q0: vec![2, 10, 100],
            samples: 100_000,
            x: 1.0,
        }
    }
}

fn ser_precision<S: Serializer>(p: &Precision, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn de_precision<'de, D: Deserializer<'de>>(d: D) -> Result<Precision, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

impl RunConfig {
    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.horizon >= 2, "P must be at least 2, got {}", self.horizon);
        ensure!(!self.f_coeffs.is_empty(), "f needs at least one coefficient");
        ensure!(self.f_coeffs.iter().all(|c| c.is_finite()), "f coefficients must be finite");
        if let Some((lo, hi)) = self.fit_range {
            ensure!(2 <= lo && lo < hi && hi <= self.horizon, "fit range {lo},{hi} must satisfy 2 <= lo < hi <= P = {}", self.horizon);
        }
        for (name, v) in &self.thresholds {
            ensure!(THRESHOLDS.iter().any(|(n, _)| n == name), "unknown threshold `{name}`");
            ensure!(v.is_finite() && *v > 0.0, "threshold `{name}` must be positive and finite");
        }
        self.engine().validate()?;
        ensure!(self.samples >= 1, "samples must be at least 1");
        ensure!(self.xi2.is_finite(), "xi2 must be finite");
        if let Some(k) = &self.kernel {
            parse_kernel(k)?;
        }
        if let Some(h) = &self.forcing {
            parse_forcing(h)?;
        }
        Ok(())
    }

    /// Extra constraints of the `stability` command.
    pub fn validate_q0(&self) -> Result<()> {
        ensure!(!self.q0.is_empty(), "q0 needs at least one value");
        for &q in &self.q0 {
            ensure!(q >= 2 && q <= self.horizon, "q0 = {q} must lie in [2, P]");
        }
        Ok(())
    }

    pub fn f(&self) -> RealPolynomial {
        RealPolynomial::new(self.f_coeffs.clone())
    }

    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            horizon: self.horizon,
            precision: self.precision,
            parallel: crate::thread_cap() != Some(1),
            renorm_threshold: self.renorm_threshold,
        }
    }

    pub fn threshold(&self, name: &str) -> f64 {
        self.thresholds.get(name).copied().unwrap_or_else(|| {
            THRESHOLDS
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| *v)
                .unwrap_or_else(|| panic!("no default for threshold `{name}`"))
        })
    }

    /// The configured fit range, or `[max(2, P/32), P]`.
    pub fn fit_range_or_default(&self) -> (usize, usize) {
        self.fit_range.unwrap_or(((self.horizon / 32).max(2), self.horizon))
    }
}

/// `"0:-4,1:6"` → `−4 γ⁰ + 6 γ¹`.
pub fn parse_kernel(s: &str) -> Result<MonomialKernel> {
    let mut terms = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((a, c)) = part.split_once(':') else {
            bail!("kernel term `{part}` is not of the form alpha:C");
        };
        let alpha: f64 = a.trim().parse().with_context(|| format!("bad exponent in `{part}`"))?;
        let coeff: f64 = c.trim().parse().with_context(|| format!("bad coefficient in `{part}`"))?;
        terms.push((coeff, alpha));
    }
    ensure!(!terms.is_empty(), "kernel `{s}` has no terms");
    Ok(MonomialKernel::from_real(&terms)?)
}

/// `"A:e"` or `"e"` → `(A, e)`.
pub fn parse_forcing(s: &str) -> Result<(f64, f64)> {
    let (a, e) = match s.split_once(':') {
        Some((a, e)) => (a.trim().parse::<f64>()?, e.trim().parse::<f64>()?),
        None => (1.0, s.trim().parse::<f64>().with_context(|| format!("bad forcing `{s}`"))?),
    };
    ensure!(a.is_finite() && e.is_finite(), "forcing `{s}` must be finite");
    Ok((a, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_syntax() {
        let k = parse_kernel("0:-4, 1:6").unwrap();
        assert_eq!(k.len(), 2);
        assert!(parse_kernel("0-4").is_err());
        assert!(parse_kernel("").is_err());
        assert!(parse_kernel("1:2,1:3").is_err());
    }

    #[test]
    fn forcing_syntax() {
        assert_eq!(parse_forcing("-0.75").unwrap(), (1.0, -0.75));
        assert_eq!(parse_forcing("2:-1").unwrap(), (2.0, -1.0));
        assert!(parse_forcing("x").is_err());
    }

    #[test]
    fn config_roundtrip_and_rejections() {
        let c = RunConfig::default();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), c);
        assert!(serde_json::from_str::<RunConfig>(r#"{"checks": ["nope"]}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
        let c: RunConfig = serde_json::from_str(r#"{"precision": "double", "horizon": 10}"#).unwrap();
        assert_eq!(c.precision, Precision::Double);

        let bad = RunConfig { fit_range: Some((1, 5)), ..RunConfig::default() };
        assert!(bad.validate().is_err());
        let bad = RunConfig { horizon: 1, ..RunConfig::default() };
        assert!(bad.validate().is_err());
        let mut bad = RunConfig::default();
        bad.thresholds.insert("nope".into(), 1.0);
        assert!(bad.validate().is_err());
    }
}
