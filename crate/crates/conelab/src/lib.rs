//! Verification suites, report files and tables on top of `conelab-core`.
//!
//! The binary is a thin layer over [`run_suite`], [`run_su11`] and
//! [`tables::emit_table`].

pub mod config;
pub mod error;
pub mod output;
pub mod suites;
pub mod tables;

use config::SuiteConfig;
use output::ReportFile;
use suites::Su11Cmd;

pub use error::{CliError, Result};

/// Runs the configured suite and assembles its report.
pub fn run_suite(cfg: &SuiteConfig) -> ReportFile {
    let out = suites::run(cfg);
    ReportFile::assemble(cfg.suite.as_str(), cfg, out)
}

/// Runs one `su11 <cmd>` part.
pub fn run_su11(cmd: Su11Cmd, cfg: &SuiteConfig) -> ReportFile {
    let label = match cmd {
        Su11Cmd::Factor => "su11-factor",
        Su11Cmd::Norm => "su11-norm",
        Su11Cmd::Hardy => "su11-hardy",
        Su11Cmd::Psi => "su11-psi",
    };
    ReportFile::assemble(label, cfg, suites::su11(cmd, cfg))
}
