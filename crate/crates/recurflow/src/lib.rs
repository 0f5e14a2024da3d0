//! Command-line driver for `recurflow-core`: argument handling, the trace
//! CSV format, JSON reports and the exit-code contract
//! (0 success, 1 error, 2 check failure).

pub mod cli;
pub mod commands;
pub mod config;
pub mod io;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Resolved};
use crate::commands::Status;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_CHECK_FAILED: u8 = 2;

/// `RECURFLOW_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("RECURFLOW_THREADS").ok().and_then(|v| v.trim().parse().ok()).filter(|&n| n > 0)
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var("RECURFLOW_THREADS") {
        let n = thread_cap().ok_or_else(|| anyhow::anyhow!("RECURFLOW_THREADS = `{raw}` is not a positive integer"))?;
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

pub fn execute(r: &Resolved) -> anyhow::Result<Status> {
    match r {
        Resolved::Spectrum(c) => commands::cmd_spectrum(c),
        Resolved::Simulate(c) => commands::cmd_simulate(c),
        Resolved::Linear(c) => commands::cmd_linear(c),
        Resolved::Stability(c) => commands::cmd_stability(c),
        Resolved::Verify { cfg, use_cache } => commands::cmd_verify(cfg, *use_cache),
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    let outcome = init_threads().and_then(|_| cli.command.resolve()).and_then(|r| execute(&r));
    match outcome {
        Ok(Status::Pass) => ExitCode::from(EXIT_OK),
        Ok(Status::ChecksFailed) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
