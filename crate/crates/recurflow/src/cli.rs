//! Argument parsing. Flags override values from `--config`.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use recurflow_core::Precision;

use crate::config::{Check, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "recurflow", version, about = "Simulate and analyze quadratic convolution recurrences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic roots and decay exponent of f.
    Spectrum(Common),
    /// Run the recurrence, estimate x*, write trace.csv and summary.json.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        engine: Engine,
        /// Initial value x for R = x/x*.
        #[arg(long)]
        x: Option<f64>,
    },
    /// Run the linear recurrent system.
    Linear {
        #[command(flatten)]
        common: Common,
        /// Monomial kernel "alpha:C,alpha:C"; defaults to G of f.
        #[arg(long, allow_hyphen_values = true)]
        kernel: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        xi2: Option<f64>,
        /// Forcing h_p = A p^e given as "A:e" or "e".
        #[arg(long, allow_hyphen_values = true)]
        forcing: Option<String>,
    },
    /// Transition-matrix product norms and the eigenvalue check.
    Stability {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        kernel: Option<String>,
        #[arg(long, value_delimiter = ',')]
        q0: Option<Vec<usize>>,
    },
    /// Run the verification suite against a fresh or cached trace.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        engine: Engine,
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<Check>>,
        #[arg(long)]
        seed: Option<u64>,
        /// Random samples per appendix inequality.
        #[arg(long)]
        samples: Option<usize>,
        /// Always simulate, ignoring a cached trace.
        #[arg(long)]
        no_cache: bool,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration; flags given here take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Coefficients of f, lowest degree first, e.g. 4,-10,6.
    #[arg(long = "f", value_delimiter = ',', allow_hyphen_values = true)]
    pub f: Option<Vec<f64>>,
    /// Horizon P.
    #[arg(long = "P")]
    pub horizon: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fit window "lo,hi".
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub fit_range: Option<Vec<usize>>,
    /// Named threshold override NAME=VALUE; repeatable.
    #[arg(long = "threshold", value_parser = parse_named)]
    pub thresholds: Vec<(String, f64)>,
}

#[derive(Debug, Args)]
pub struct Engine {
    /// double or double-double.
    #[arg(long)]
    pub precision: Option<Precision>,
    /// Renormalize when |log2 c_p| exceeds this.
    #[arg(long)]
    pub renorm_threshold: Option<u32>,
}

fn parse_named(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("`{s}` is not NAME=VALUE"))?;
    let v: f64 = v.parse().map_err(|e| format!("`{v}`: {e}"))?;
    Ok((k.trim().to_owned(), v))
}

impl Common {
    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        if let Some(f) = &self.f {
            cfg.f_coeffs = f.clone();
        }
        if let Some(p) = self.horizon {
            cfg.horizon = p;
        }
        if let Some(o) = &self.out {
            cfg.output_dir = o.clone();
        }
        if let Some(r) = &self.fit_range {
            anyhow::ensure!(r.len() == 2, "--fit-range takes two values lo,hi");
            cfg.fit_range = Some((r[0], r[1]));
        }
        for (k, v) in &self.thresholds {
            cfg.thresholds.insert(k.clone(), *v);
        }
        Ok(())
    }

    fn base(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path).with_context(|| format!("loading config {}", path.display()))?,
            None => RunConfig::default(),
        };
        self.apply(&mut cfg)?;
        Ok(cfg)
    }
}

impl Engine {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(p) = self.precision {
            cfg.precision = p;
        }
        if let Some(t) = self.renorm_threshold {
            cfg.renorm_threshold = t;
        }
    }
}

/// What to run, with its fully resolved configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum Resolved {
    Spectrum(RunConfig),
    Simulate(RunConfig),
    Linear(RunConfig),
    Stability(RunConfig),
    Verify { cfg: RunConfig, use_cache: bool },
}

impl Command {
    pub fn resolve(&self) -> Result<Resolved> {
        let r = match self {
            Command::Spectrum(c) => Resolved::Spectrum(c.base()?),
            Command::Simulate { common, engine, x } => {
                let mut cfg = common.base()?;
                engine.apply(&mut cfg);
                if let Some(x) = x {
                    cfg.x = *x;
                }
                Resolved::Simulate(cfg)
            }
            Command::Linear { common, kernel, xi2, forcing } => {
                let mut cfg = common.base()?;
                if kernel.is_some() {
                    cfg.kernel = kernel.clone();
                }
                if let Some(x) = xi2 {
                    cfg.xi2 = *x;
                }
                if forcing.is_some() {
                    cfg.forcing = forcing.clone();
                }
                Resolved::Linear(cfg)
            }
            Command::Stability { common, kernel, q0 } => {
                let mut cfg = common.base()?;
                if kernel.is_some() {
                    cfg.kernel = kernel.clone();
                }
                if let Some(q) = q0 {
                    cfg.q0 = q.clone();
                }
                cfg.validate_q0()?;
                Resolved::Stability(cfg)
            }
            Command::Verify { common, engine, checks, seed, samples, no_cache } => {
                let mut cfg = common.base()?;
                engine.apply(&mut cfg);
                if let Some(c) = checks {
                    cfg.checks = c.clone();
                }
                if let Some(s) = seed {
                    cfg.seed = *s;
                }
                if let Some(n) = samples {
                    cfg.samples = *n;
                }
                Resolved::Verify { cfg, use_cache: !no_cache }
            }
        };
        r.config().validate()?;
        Ok(r)
    }
}

impl Resolved {
    pub fn config(&self) -> &RunConfig {
        match self {
            Resolved::Spectrum(c) | Resolved::Simulate(c) | Resolved::Linear(c) | Resolved::Stability(c) => c,
            Resolved::Verify { cfg, .. } => cfg,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(args: &[&str]) -> Result<Resolved> {
        let cli = Cli::try_parse_from(std::iter::once("recurflow").chain(args.iter().copied()))?;
        cli.command.resolve()
    }

    #[test]
    fn flags_reach_the_config() {
        let r = resolve(&["simulate", "--f", "4,-10,6", "--P", "300", "--precision", "double", "--fit-range", "20,300"]).unwrap();
        let c = r.config();
        assert_eq!(c.f_coeffs, vec![4.0, -10.0, 6.0]);
        assert_eq!(c.horizon, 300);
        assert_eq!(c.precision, Precision::Double);
        assert_eq!(c.fit_range, Some((20, 300)));
    }

    #[test]
    fn negative_leading_coefficient() {
        let r = resolve(&["spectrum", "--f", "-1,2"]).unwrap();
        assert_eq!(r.config().f_coeffs, vec![-1.0, 2.0]);
    }

    #[test]
    fn unknown_check_rejected_at_parse_time() {
        assert!(resolve(&["verify", "--checks", "identity,bogus"]).is_err());
        let r = resolve(&["verify", "--checks", "identity,hat_xi"]).unwrap();
        assert_eq!(r.config().checks, vec![Check::Identity, Check::HatXi]);
    }

    #[test]
    fn invalid_values_rejected() {
        assert!(resolve(&["simulate", "--P", "1"]).is_err());
        assert!(resolve(&["simulate", "--P", "100", "--fit-range", "1,50"]).is_err());
        assert!(resolve(&["simulate", "--P", "100", "--fit-range", "10,200"]).is_err());
        assert!(resolve(&["verify", "--threshold", "nope=1"]).is_err());
        assert!(resolve(&["simulate", "--renorm-threshold", "4"]).is_err());
        assert!(resolve(&["stability", "--P", "50", "--q0", "2,100"]).is_err());
    }
}
