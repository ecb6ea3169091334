use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use conelab::config::{
    find_profile, parse_grid, parse_int_grid, AlgebraChoice, ConfigFile, Format, Overrides, SuiteConfig, SuiteName,
    PROFILE_ENV,
};
use conelab::output::{emit, write_file, ReportFile};
use conelab::suites::Su11Cmd;
use conelab::tables::{emit_table, TableKind, TableSpec};
use conelab::{run_su11, run_suite, CliError, Result};

#[derive(Parser)]
#[command(name = "conelab", version, about = "Numerical certification of symmetric-cone and holomorphic discrete series identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Debug)]
struct Grid(Vec<f64>);

#[derive(Clone, Debug)]
struct IntGrid(Vec<i32>);

#[derive(Args, Clone, Debug, Default)]
struct Common {
    /// TOML config file; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    algebra: Option<AlgebraChoice>,
    /// Weights: `3,4,5` or `start:end:step`.
    #[arg(long, value_parser = |s: &str| parse_grid(s).map(Grid))]
    m: Option<Grid>,
    /// Character parameter: `e`, a scalar list, or `x11,x22,x12` on sym2.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// SU(1,1) weights: `2,3` or `start:end:step`.
    #[arg(long, value_parser = |s: &str| parse_int_grid(s).map(IntGrid))]
    n: Option<IntGrid>,
    /// Grid profile: fast, default, strict or one defined in the config file.
    #[arg(long)]
    profile: Option<String>,
    /// Write the report here (plus a `.meta.json` sidecar) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed of the random samples.
    #[arg(long)]
    seed: Option<u64>,
    /// Random samples per algebra where a suite draws them.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Option<SuiteName>,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate a special function or the formal dimension.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Swept parameter: `s1` for gamma_cone, `u` for bessel, `m` otherwise.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        /// Second exponent of the rank-2 gamma_cone table.
        #[arg(long, default_value_t = 1.0)]
        s2: f64,
        #[command(flatten)]
        common: Common,
    },
    /// SU(1,1) checks.
    Su11 {
        #[arg(value_enum)]
        cmd: Su11Cmd,
        #[command(flatten)]
        common: Common,
    },
    /// Run the calibration chain and embed the constant table.
    Calibrate {
        #[command(flatten)]
        common: Common,
    },
}

fn env_profile() -> Option<String> {
    std::env::var(PROFILE_ENV).ok().filter(|s| !s.is_empty())
}

fn load(common: &Common) -> Result<ConfigFile> {
    match &common.config {
        Some(p) => ConfigFile::load(p),
        None => Ok(ConfigFile::default()),
    }
}

fn overrides(c: &Common) -> Overrides {
    Overrides {
        algebra: c.algebra,
        m: c.m.clone().map(|g| g.0),
        v: c.v.clone(),
        n: c.n.clone().map(|g| g.0),
        profile: c.profile.clone(),
        out: c.out.clone(),
        format: c.format,
        seed: c.seed,
        samples: c.samples,
    }
}

fn resolve(suite: Option<SuiteName>, common: &Common) -> Result<SuiteConfig> {
    SuiteConfig::resolve(suite, load(common)?, overrides(common), env_profile())
}

fn finish(report: &ReportFile, cfg: &SuiteConfig, started: Instant) -> Result<i32> {
    emit(report, cfg.format, cfg.out.as_deref(), started.elapsed().as_secs_f64())?;
    let s = &report.summary;
    eprintln!(
        "{}: {} records, {} passed, {} failed ({} divergence probes, {} detected) in {:.1} s",
        report.suite,
        s.total,
        s.passed,
        s.failed,
        s.probes,
        s.probes_detected,
        started.elapsed().as_secs_f64()
    );
    for r in report.failures() {
        eprintln!("FAILED {} {:?} deviation={:?} tolerance={:e} {:?}", r.check, r.algebra, r.deviation, r.tolerance, r.notes);
    }
    Ok(s.exit_status)
}

fn default_range(kind: TableKind, alg: AlgebraChoice) -> &'static str {
    match (kind, alg) {
        (TableKind::GammaCone, _) => "1:5:1",
        (TableKind::Bessel, _) => "0:10:0.5",
        (_, AlgebraChoice::Rank1) => "3:6:0.5",
        (_, AlgebraChoice::Sym2) => "3:5:0.5",
    }
}

fn table(kind: TableKind, range: Option<String>, s2: f64, common: &Common) -> Result<i32> {
    let file = load(common)?;
    let alg = common.algebra.or(file.algebra).unwrap_or(AlgebraChoice::Rank1);
    let name = common.profile.clone().or(file.profile.clone()).or_else(env_profile).unwrap_or_else(|| "default".into());
    let profile = find_profile(&name, &file.profiles)?;
    let range = range.unwrap_or_else(|| default_range(kind, alg).to_string());
    let spec = TableSpec {
        kind,
        algebra: alg.algebra(),
        range: parse_grid(&range).map_err(CliError::usage)?,
        m: common.m.as_ref().and_then(|g| g.0.first().copied()).unwrap_or(2.0),
        s2,
        profile,
    };
    let body = emit_table(&spec)?.render(common.format.or(file.format).unwrap_or(Format::Csv))?;
    match common.out.clone().or(file.out) {
        Some(p) => write_file(&p, &body)?,
        None => print!("{body}"),
    }
    Ok(0)
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Verify { suite, common } => {
            let cfg = resolve(suite, &common)?;
            let t = Instant::now();
            finish(&run_suite(&cfg), &cfg, t)
        }
        Cmd::Su11 { cmd, common } => {
            let suite = match cmd {
                Su11Cmd::Factor | Su11Cmd::Norm => SuiteName::Su11,
                Su11Cmd::Hardy | Su11Cmd::Psi => SuiteName::Kernel,
            };
            let cfg = resolve(Some(suite), &common)?;
            let t = Instant::now();
            finish(&run_su11(cmd, &cfg), &cfg, t)
        }
        Cmd::Calibrate { common } => {
            let cfg = resolve(Some(SuiteName::Calibration), &common)?;
            let t = Instant::now();
            finish(&run_suite(&cfg), &cfg, t)
        }
        Cmd::Table { kind, range, s2, common } => table(kind, range, s2, &common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
