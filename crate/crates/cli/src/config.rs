use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cbqt_core::Params;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Values a flag or the config file may set. `None` means "not given".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub alpha2: Option<f64>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub theta_p: Option<f64>,
    pub phi_p: Option<f64>,
    pub n_max: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Overrides {
    /// Fields set in `self` win.
    fn layered_over(self, base: Overrides) -> Overrides {
        Overrides {
            alpha2: self.alpha2.or(base.alpha2),
            theta: self.theta.or(base.theta),
            phi: self.phi.or(base.phi),
            theta_p: self.theta_p.or(base.theta_p),
            phi_p: self.phi_p.or(base.phi_p),
            n_max: self.n_max.or(base.n_max),
            tol: self.tol.or(base.tol),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub alpha2: f64,
    pub theta: f64,
    pub phi: f64,
    pub theta_p: f64,
    pub phi_p: f64,
    pub n_max: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha2: 2.0,
            theta: FRAC_PI_2,
            phi: 0.0,
            theta_p: FRAC_PI_3,
            phi_p: 0.0,
            n_max: 40,
            tol: 1e-9,
            out: None,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    /// Defaults, then the config file, then flags.
    pub fn resolve(flags: Overrides, file: Option<&Path>) -> Result<Self, CliError> {
        let from_file = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => Overrides::default(),
        };
        let o = flags.layered_over(from_file);
        let d = RunConfig::default();
        let cfg = RunConfig {
            alpha2: o.alpha2.unwrap_or(d.alpha2),
            theta: o.theta.unwrap_or(d.theta),
            phi: o.phi.unwrap_or(d.phi),
            theta_p: o.theta_p.unwrap_or(d.theta_p),
            phi_p: o.phi_p.unwrap_or(d.phi_p),
            n_max: o.n_max.unwrap_or(d.n_max),
            tol: o.tol.unwrap_or(d.tol),
            out: o.out,
            format: o.format.unwrap_or(d.format),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.alpha2 > 0.0 && self.alpha2.is_finite()) {
            return Err(CliError::Usage(format!("alpha2 must be positive, got {}", self.alpha2)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!("tol must be positive, got {}", self.tol)));
        }
        self.params().map(|_| ())
    }

    pub fn params(&self) -> Result<Params, CliError> {
        Params::new(self.alpha2, self.theta, self.phi, self.theta_p, self.phi_p)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

fn number<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Usage(format!("config line {line}: bad value '{value}' for {key}")))
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {line}: expected key=value")))?;
        let (key, value) = (key.trim(), value.trim());
        match key.replace('-', "_").as_str() {
            "alpha2" => o.alpha2 = Some(number(key, value, line)?),
            "theta" => o.theta = Some(number(key, value, line)?),
            "phi" => o.phi = Some(number(key, value, line)?),
            "theta_p" => o.theta_p = Some(number(key, value, line)?),
            "phi_p" => o.phi_p = Some(number(key, value, line)?),
            "n_max" => o.n_max = Some(number(key, value, line)?),
            "tol" => o.tol = Some(number(key, value, line)?),
            "out" => o.out = Some(PathBuf::from(value)),
            "format" => {
                o.format = Some(value.parse().map_err(|e| CliError::Usage(format!("config line {line}: {e}")))?)
            }
            _ => return Err(CliError::Usage(format!("config line {line}: unknown key '{key}'"))),
        }
    }
    Ok(o)
}
