//! Run configuration: flags layered over an optional `key=value` file.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Subcommand};

use ptdimer_core::epfinder::{EpAxis, DEFAULT_COARSE_STEPS, DEFAULT_TOL};
use ptdimer_core::DimerParams;

use crate::error::CliError;

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// Print the 6x6 Hamiltonian in the two-electron basis.
    Matrix,
    /// Print the six eigenvalues from every applicable method.
    Spectrum,
    /// Tabulate the complex-capable level pair along one parameter.
    Sweep,
    /// Locate and classify exceptional points along lambda or gamma.
    FindEp,
    /// Trace PT phase boundaries in the lambda-U or gamma-U plane.
    Boundary,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Matrix => "matrix",
            Command::Spectrum => "spectrum",
            Command::Sweep => "sweep",
            Command::FindEp => "find-ep",
            Command::Boundary => "boundary",
        }
    }
}

/// Every option can also be given in the config file under the same name
/// (without the dashes).
#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// Mean hopping t.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// On-site energy ε.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eps: Option<f64>,
    /// Hopping asymmetry λ (t± = t ± λ).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Gain/loss γ (ε± = ε ± iγ).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Hubbard interaction U.
    #[arg(long = "U", global = true, allow_negative_numbers = true)]
    pub u: Option<f64>,
    /// Scanned parameter: lambda, gamma, u, t or eps (find-ep and boundary
    /// take lambda or gamma).
    #[arg(long, global = true)]
    pub axis: Option<String>,
    /// Scan range `lo:hi` [default: 0:2, or 0:3 for boundary].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Grid intervals along the axis [default: 400 for sweep, 2000 otherwise].
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// EP bracket width [default: 1e-9].
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output CSV path [default: stdout]. boundary writes one file per
    /// branch, `<stem>_branch<k>.<ext>`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Read options from a `key=value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for sweeps [default: all cores].
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// U range `lo:hi` for boundary [default: 0:6].
    #[arg(long = "u-range", global = true, allow_hyphen_values = true)]
    pub u_range: Option<String>,
    /// Number of U values for boundary, endpoints included [default: 61].
    #[arg(long = "u-steps", global = true)]
    pub u_steps: Option<usize>,
}

const KEYS: [&str; 13] = [
    "t", "eps", "lambda", "gamma", "U", "axis", "range", "steps", "tol", "out", "jobs", "u-range",
    "u-steps",
];

/// Parameter a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    Lambda,
    Gamma,
    U,
    T,
    Eps,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Lambda => "lambda",
            SweepAxis::Gamma => "gamma",
            SweepAxis::U => "U",
            SweepAxis::T => "t",
            SweepAxis::Eps => "eps",
        }
    }

    pub fn set(self, params: &DimerParams, value: f64) -> ptdimer_core::Result<DimerParams> {
        match self {
            SweepAxis::Lambda => params.with_lambda(value),
            SweepAxis::Gamma => params.with_gamma(value),
            SweepAxis::U => params.with_u(value),
            SweepAxis::T => params.with_t(value),
            SweepAxis::Eps => params.with_epsilon(value),
        }
    }

    /// The EP-scan axis this corresponds to, if any.
    pub fn ep_axis(self) -> Option<EpAxis> {
        match self {
            SweepAxis::Lambda => Some(EpAxis::Lambda),
            SweepAxis::Gamma => Some(EpAxis::Gamma),
            _ => None,
        }
    }
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lambda" => Ok(SweepAxis::Lambda),
            "gamma" => Ok(SweepAxis::Gamma),
            "u" | "U" => Ok(SweepAxis::U),
            "t" => Ok(SweepAxis::T),
            "eps" => Ok(SweepAxis::Eps),
            other => Err(format!(
                "unknown axis `{other}` (expected lambda, gamma, u, t or eps)"
            )),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fully resolved and validated settings for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: DimerParams,
    pub axis: SweepAxis,
    pub range: (f64, f64),
    pub steps: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub u_range: (f64, f64),
    pub u_steps: usize,
}

impl RunConfig {
    pub fn resolve(command: Command, flags: &Flags) -> Result<RunConfig, CliError> {
        let file = match &flags.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let pick_f64 = |flag: Option<f64>, key: &str| -> Result<Option<f64>, CliError> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file
                    .get(key)
                    .map(|s| parse_value::<f64>(key, s))
                    .transpose(),
            }
        };
        let pick_usize = |flag: Option<usize>, key: &str| -> Result<Option<usize>, CliError> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file
                    .get(key)
                    .map(|s| parse_value::<usize>(key, s))
                    .transpose(),
            }
        };
        let pick_str =
            |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());

        let params = DimerParams::new(
            pick_f64(flags.eps, "eps")?.unwrap_or(0.0),
            pick_f64(flags.t, "t")?.unwrap_or(0.0),
            pick_f64(flags.lambda, "lambda")?.unwrap_or(0.0),
            pick_f64(flags.gamma, "gamma")?.unwrap_or(0.0),
            pick_f64(flags.u, "U")?.unwrap_or(0.0),
        )
        .map_err(|e| CliError::Config(e.to_string()))?;

        let axis = match pick_str(&flags.axis, "axis") {
            Some(s) => s.parse::<SweepAxis>().map_err(CliError::Config)?,
            None => SweepAxis::Lambda,
        };
        if matches!(command, Command::FindEp | Command::Boundary) && axis.ep_axis().is_none() {
            return Err(CliError::Config(format!(
                "{} scans lambda or gamma, not {axis}",
                command.name()
            )));
        }
        let default_range = if command == Command::Boundary {
            "0:3"
        } else {
            "0:2"
        };
        let range = parse_range(
            "range",
            &pick_str(&flags.range, "range").unwrap_or_else(|| default_range.into()),
        )?;
        let default_steps = if command == Command::Sweep {
            400
        } else {
            DEFAULT_COARSE_STEPS
        };
        let steps = pick_usize(flags.steps, "steps")?.unwrap_or(default_steps);
        if steps < 2 {
            return Err(CliError::Config(format!(
                "steps must be at least 2, got {steps}"
            )));
        }
        let tol = pick_f64(flags.tol, "tol")?.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Config(format!("tol must be positive, got {tol}")));
        }
        let out = flags
            .out
            .clone()
            .or_else(|| file.get("out").map(PathBuf::from));
        let jobs = pick_usize(flags.jobs, "jobs")?
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if jobs == 0 {
            return Err(CliError::Config("jobs must be at least 1".into()));
        }
        let u_range = parse_range(
            "u-range",
            &pick_str(&flags.u_range, "u-range").unwrap_or_else(|| "0:6".into()),
        )?;
        let u_steps = pick_usize(flags.u_steps, "u-steps")?.unwrap_or(61);
        if u_steps < 2 {
            return Err(CliError::Config(format!(
                "u-steps must be at least 2, got {u_steps}"
            )));
        }

        Ok(RunConfig {
            command,
            params,
            axis,
            range,
            steps,
            tol,
            out,
            jobs,
            u_range,
            u_steps,
        })
    }

    /// `key=value` echo of every setting, for CSV metadata.
    pub fn echo(&self) -> Vec<(String, String)> {
        let p = &self.params;
        let mut lines = vec![
            ("command".to_string(), self.command.name().to_string()),
            ("eps".into(), p.epsilon().to_string()),
            ("t".into(), p.t().to_string()),
            ("lambda".into(), p.lambda().to_string()),
            ("gamma".into(), p.gamma().to_string()),
            ("U".into(), p.u().to_string()),
        ];
        match self.command {
            Command::Matrix | Command::Spectrum => {}
            Command::Sweep => {
                lines.push(("axis".into(), self.axis.to_string()));
                lines.push(("range".into(), format!("{}:{}", self.range.0, self.range.1)));
                lines.push(("steps".into(), self.steps.to_string()));
            }
            Command::FindEp => {
                lines.push(("axis".into(), self.axis.to_string()));
                lines.push(("range".into(), format!("{}:{}", self.range.0, self.range.1)));
                lines.push(("steps".into(), self.steps.to_string()));
                lines.push(("tol".into(), self.tol.to_string()));
            }
            Command::Boundary => {
                lines.push(("axis".into(), self.axis.to_string()));
                lines.push(("range".into(), format!("{}:{}", self.range.0, self.range.1)));
                lines.push(("tol".into(), self.tol.to_string()));
                lines.push((
                    "u-range".into(),
                    format!("{}:{}", self.u_range.0, self.u_range.1),
                ));
                lines.push(("u-steps".into(), self.u_steps.to_string()));
            }
        }
        lines
    }
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.parse()
        .map_err(|_| CliError::Config(format!("cannot parse `{raw}` for `{key}`")))
}

/// `lo:hi` with `lo < hi`, both finite.
pub fn parse_range(key: &str, raw: &str) -> Result<(f64, f64), CliError> {
    let (lo, hi) = raw
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("`{key}` must look like lo:hi, got `{raw}`")))?;
    let lo: f64 = parse_value(key, lo.trim())?;
    let hi: f64 = parse_value(key, hi.trim())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Config(format!(
            "`{key}` must satisfy lo < hi, got `{raw}`"
        )));
    }
    Ok((lo, hi))
}

/// Reads `key = value` lines. Blank lines and `#` comments are skipped;
/// unknown or repeated keys are errors.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", n + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(format!("line {}: unknown key `{key}`", n + 1));
        }
        if map.insert(key.to_string(), value.to_string()).is_some() {
            return Err(format!("line {}: `{key}` given twice", n + 1));
        }
    }
    Ok(map)
}
