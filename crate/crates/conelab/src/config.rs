//! Suite configuration: TOML files, command-line overrides and profile lookup.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use conelab_core::{Algebra, GridProfile, JordanElement};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Environment variable that replaces the default grid profile.
pub const PROFILE_ENV: &str = "CONELAB_PROFILE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Jordan,
    Gamma,
    Su11,
    Whittaker,
    LktNorm,
    FormalDim,
    Orthogonality,
    Bessel,
    Kernel,
    Calibration,
    All,
}

impl SuiteName {
    /// Every concrete suite, in report order.
    pub const CONCRETE: [SuiteName; 10] = [
        SuiteName::Jordan,
        SuiteName::Gamma,
        SuiteName::Su11,
        SuiteName::Whittaker,
        SuiteName::LktNorm,
        SuiteName::FormalDim,
        SuiteName::Orthogonality,
        SuiteName::Bessel,
        SuiteName::Kernel,
        SuiteName::Calibration,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Jordan => "jordan",
            SuiteName::Gamma => "gamma",
            SuiteName::Su11 => "su11",
            SuiteName::Whittaker => "whittaker",
            SuiteName::LktNorm => "lkt-norm",
            SuiteName::FormalDim => "formal-dim",
            SuiteName::Orthogonality => "orthogonality",
            SuiteName::Bessel => "bessel",
            SuiteName::Kernel => "kernel",
            SuiteName::Calibration => "calibration",
            SuiteName::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraChoice {
    Rank1,
    Sym2,
}

impl AlgebraChoice {
    pub fn algebra(&self) -> Algebra {
        match self {
            AlgebraChoice::Rank1 => Algebra::RANK_ONE,
            AlgebraChoice::Sym2 => Algebra::SYM2,
        }
    }
}

/// Contents of a config file. Every key is optional; flags win over the file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub suite: Option<SuiteName>,
    pub algebra: Option<AlgebraChoice>,
    pub m: Option<Vec<f64>>,
    pub v: Option<String>,
    pub n: Option<Vec<i32>>,
    pub profile: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    /// Extra named grid profiles.
    #[serde(default)]
    pub profiles: Vec<GridProfile>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead { path: path.into(), source })?;
        toml::from_str(&text).map_err(|source| CliError::ConfigParse { path: path.into(), source })
    }
}

/// Values given on the command line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub algebra: Option<AlgebraChoice>,
    pub m: Option<Vec<f64>>,
    pub v: Option<String>,
    pub n: Option<Vec<i32>>,
    pub profile: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

/// A fully resolved suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub algebra: Option<AlgebraChoice>,
    pub m: Option<Vec<f64>>,
    pub v: Option<String>,
    pub n: Option<Vec<i32>>,
    pub profile: GridProfile,
    pub format: Format,
    pub seed: u64,
    pub samples: Option<usize>,
    /// Not part of the report, so reruns to another path stay identical.
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub const DEFAULT_SEED: u64 = 20240601;

/// Looks up a profile among the built-in and file-defined ones.
pub fn find_profile(name: &str, extra: &[GridProfile]) -> Result<GridProfile> {
    if let Some(p) = extra.iter().find(|p| p.name == name) {
        p.validate()?;
        return Ok(p.clone());
    }
    GridProfile::named(name).map_err(|_| {
        let mut known: Vec<String> = GridProfile::NAMES.iter().map(|s| s.to_string()).collect();
        known.extend(extra.iter().map(|p| p.name.clone()));
        CliError::usage(format!("unknown profile `{name}` (known: {})", known.join(", ")))
    })
}

impl SuiteConfig {
    /// Flag > config file > `CONELAB_PROFILE` > `default`, key by key.
    pub fn resolve(suite: Option<SuiteName>, file: ConfigFile, cli: Overrides, env_profile: Option<String>) -> Result<Self> {
        let suite = suite.or(file.suite).ok_or_else(|| CliError::usage("no suite given"))?;
        let profile_name = cli.profile.or(file.profile).or(env_profile).unwrap_or_else(|| "default".into());
        let profile = find_profile(&profile_name, &file.profiles)?;
        let cfg = SuiteConfig {
            suite,
            algebra: cli.algebra.or(file.algebra),
            m: cli.m.or(file.m),
            v: cli.v.or(file.v),
            n: cli.n.or(file.n),
            profile,
            format: cli.format.or(file.format).unwrap_or(Format::Json),
            seed: cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            samples: cli.samples.or(file.samples),
            out: cli.out.or(file.out),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// A config with everything at its default.
    pub fn new(suite: SuiteName, profile: GridProfile) -> Self {
        SuiteConfig { suite, algebra: None, m: None, v: None, n: None, profile, format: Format::Json, seed: DEFAULT_SEED, samples: None, out: None }
    }

    /// Algebras a suite runs on: the selected one, or both.
    pub fn algebras(&self) -> Vec<Algebra> {
        match self.algebra {
            Some(a) => vec![a.algebra()],
            None => vec![Algebra::RANK_ONE, Algebra::SYM2],
        }
    }

    /// Formal dimension runs at rank 1 unless an algebra is chosen.
    pub fn formal_dim_algebras(&self) -> Vec<Algebra> {
        vec![self.algebra.map_or(Algebra::RANK_ONE, |a| a.algebra())]
    }

    /// The character parameter as an element of `alg` (`e` when unset).
    pub fn v_element(&self, alg: Algebra) -> Result<JordanElement> {
        parse_v(self.v.as_deref().unwrap_or("e"), alg)
    }

    /// The `v` entries read as a plain list of scalars.
    pub fn v_scalars(&self) -> Result<Option<Vec<f64>>> {
        match self.v.as_deref() {
            None => Ok(None),
            Some("e") => Ok(Some(vec![1.0])),
            Some(s) => parse_grid(s).map(Some).map_err(CliError::usage),
        }
    }

    /// Checks that parameters sit in a convergence domain, or in a suite that
    /// turns them into divergence probes.
    pub fn validate(&self) -> Result<()> {
        self.profile.validate()?;
        if self.samples == Some(0) {
            return Err(CliError::usage("samples must be positive"));
        }
        let ms = self.m.clone().unwrap_or_default();
        if ms.iter().any(|m| !m.is_finite()) {
            return Err(CliError::usage("weights must be finite"));
        }
        match self.suite {
            SuiteName::LktNorm => {
                for alg in self.algebras() {
                    if let Some(&m) = ms.iter().find(|&&m| m <= alg.discrete_series_threshold()) {
                        return Err(CliError::usage(format!(
                            "lkt-norm needs m > {} on {} (got {m})",
                            alg.discrete_series_threshold(),
                            alg.name()
                        )));
                    }
                }
            }
            SuiteName::Orthogonality => {
                if self.algebra == Some(AlgebraChoice::Sym2) {
                    return Err(CliError::usage("the orthogonality suite runs at rank 1 only"));
                }
                if ms.iter().any(|&m| m.fract() != 0.0 || m < 2.0) {
                    return Err(CliError::usage("orthogonality needs integer weights m ≥ 2"));
                }
                let v = self.v_element(Algebra::RANK_ONE)?;
                if !(v.coord(0).re > 0.0) {
                    return Err(CliError::usage("orthogonality needs v > 0"));
                }
            }
            SuiteName::Bessel => {
                if ms.iter().any(|&m| m <= 1.0) {
                    return Err(CliError::usage("the Bessel function needs m > 1"));
                }
            }
            SuiteName::Kernel => {
                let ns = self.n.clone().unwrap_or_default();
                let vs = self.v_scalars()?.unwrap_or_default();
                if ns.iter().any(|&n| n < 2) || vs.iter().any(|&v| v <= 0.0) {
                    return Err(CliError::usage("the kernel suite needs n > 1 and v > 0"));
                }
            }
            SuiteName::FormalDim | SuiteName::Whittaker => {
                let algs = if self.suite == SuiteName::FormalDim { self.formal_dim_algebras() } else { self.algebras() };
                for alg in algs {
                    self.v_element(alg)?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// `e`, a scalar, or the three coordinates `x11, x22, x12` of a cone element.
pub fn parse_v(s: &str, alg: Algebra) -> Result<JordanElement> {
    let s = s.trim();
    if s == "e" {
        return Ok(alg.unit());
    }
    let c = parse_grid(s).map_err(CliError::usage)?;
    let v = JordanElement::real(alg, &c)
        .map_err(|_| CliError::usage(format!("v needs {} coordinates on {}", alg.dim(), alg.name())))?;
    if !conelab_core::jordan::cone_contains(&v) {
        return Err(CliError::usage(format!("v = {s} is not in the cone of {}", alg.name())));
    }
    Ok(v)
}

/// `a,b,c` lists and inclusive `start:end:step` ranges. An empty string and a
/// range with `end < start` are both empty.
pub fn parse_grid(s: &str) -> std::result::Result<Vec<f64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range `{s}` must be start:end:step"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
        let (a, b, h) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(h > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(format!("range `{s}` needs finite ends and a positive step"));
        }
        if b < a {
            return Ok(Vec::new());
        }
        let count = ((b - a) / h + 1e-9).floor() as usize + 1;
        return Ok((0..count).map(|k| a + k as f64 * h).collect());
    }
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"))).collect()
}

/// Integer version of [`parse_grid`].
pub fn parse_int_grid(s: &str) -> std::result::Result<Vec<i32>, String> {
    parse_grid(s)?
        .into_iter()
        .map(|x| if x.fract() == 0.0 { Ok(x as i32) } else { Err(format!("`{x}` is not an integer")) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("3,4,5").unwrap(), vec![3.0, 4.0, 5.0]);
        assert_eq!(parse_grid("1:2:0.5").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("0:1:0.1").unwrap().len(), 11);
        assert!(parse_grid("5:1:1").unwrap().is_empty());
        assert!(parse_grid("").unwrap().is_empty());
        assert!(parse_grid("1:2").is_err() && parse_grid("x").is_err() && parse_grid("1:2:0").is_err());
        assert_eq!(parse_int_grid("2,3").unwrap(), vec![2, 3]);
        assert!(parse_int_grid("2.5").is_err());
    }

    #[test]
    fn v_parsing() {
        assert_eq!(parse_v("e", Algebra::SYM2).unwrap(), Algebra::SYM2.unit());
        assert_eq!(parse_v("1.7", Algebra::RANK_ONE).unwrap(), JordanElement::scalar(1.7));
        assert!(parse_v("1,1,2", Algebra::SYM2).is_err());
        assert!(parse_v("1,2", Algebra::SYM2).is_err());
    }

    #[test]
    fn precedence() {
        let file: ConfigFile = toml::from_str(
            r#"
            suite = "lkt-norm"
            m = [3, 4]
            profile = "mine"
            [[profiles]]
            name = "mine"
            panels = [2, 2, 2]
            depth = 100
            abs_tol = 1e-14
            rel_tol = 1e-7
            "#,
        )
        .unwrap();
        let cfg = SuiteConfig::resolve(None, file.clone(), Overrides::default(), Some("strict".into())).unwrap();
        assert_eq!(cfg.profile.name, "mine");
        assert_eq!(cfg.m, Some(vec![3.0, 4.0]));
        let cli = Overrides { profile: Some("fast".into()), ..Default::default() };
        assert_eq!(SuiteConfig::resolve(None, file, cli, None).unwrap().profile.name, "fast");
        let env = SuiteConfig::resolve(Some(SuiteName::Jordan), ConfigFile::default(), Overrides::default(), Some("strict".into())).unwrap();
        assert_eq!(env.profile.name, "strict");
    }

    #[test]
    fn invalid_configs() {
        let bad = |suite, o: Overrides| SuiteConfig::resolve(Some(suite), ConfigFile::default(), o, None).unwrap_err().exit_code();
        assert_eq!(bad(SuiteName::Jordan, Overrides { profile: Some("nope".into()), ..Default::default() }), 2);
        assert_eq!(bad(SuiteName::LktNorm, Overrides { m: Some(vec![1.0]), ..Default::default() }), 2);
        assert_eq!(bad(SuiteName::Orthogonality, Overrides { m: Some(vec![3.5]), ..Default::default() }), 2);
        assert_eq!(bad(SuiteName::Kernel, Overrides { n: Some(vec![1]), ..Default::default() }), 2);
        assert!(toml::from_str::<ConfigFile>("colour = 1").is_err());
    }
}
