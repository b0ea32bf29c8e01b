use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cli::{Model, ModelArgs};
use crate::error::{CliError, CliResult};

/// A spin quantum number stored as `2S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spin(pub u32);

impl FromStr for Spin {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("spin must be a positive integer or half-integer such as 1/2, 1, 3/2; got {s:?}");
        let (num, den) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?),
            None => (s.trim().parse::<u32>().map_err(|_| bad())?, 1),
        };
        match den {
            1 if num > 0 => Ok(Spin(2 * num)),
            2 if num % 2 == 1 => Ok(Spin(num)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Spin {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Validated model parameters shared by `exact` and `simulate`.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub model: Model,
    pub spin: Spin,
    /// Loop weight: 2 for the Heisenberg and XY soups, the colour count for the interchange model.
    pub theta: u32,
    pub beta: f64,
    pub delta: f64,
    pub u: f64,
    pub h: Vec<f64>,
}

impl RunConfig {
    pub fn from_args(command: &'static str, args: &ModelArgs) -> CliResult<Self> {
        if !(args.beta > 0.0 && args.beta.is_finite()) {
            return Err(CliError::usage(format!("--beta must be positive, got {}", args.beta)));
        }
        match args.model {
            Model::Heisenberg | Model::Xy => Self::heisenberg(command, args),
            Model::Interchange => Self::interchange(command, args),
        }
    }

    fn heisenberg(command: &'static str, args: &ModelArgs) -> CliResult<Self> {
        if args.theta.is_some() {
            return Err(CliError::usage("--theta applies to the interchange model only; use --spin"));
        }
        let spin = args.spin.unwrap_or(Spin(1));
        let default_delta = if args.model == Model::Xy { 0.0 } else { 1.0 };
        let delta = match (args.delta, args.u) {
            (Some(d), Some(u)) if (2.0 * u - 1.0 - d).abs() > 1e-12 => {
                return Err(CliError::usage(format!("--delta {d} and --u {u} disagree (delta = 2u - 1)")));
            }
            (Some(d), _) => d,
            (None, Some(u)) => 2.0 * u - 1.0,
            (None, None) => default_delta,
        };
        if !(-1.0..=1.0).contains(&delta) {
            return Err(CliError::usage(format!("--delta must lie in [-1, 1], got {delta}")));
        }
        if args.model == Model::Xy && delta >= 1.0 {
            return Err(CliError::usage("the xy model needs delta < 1 (u < 1)"));
        }
        let h = args.h.clone().unwrap_or_else(|| vec![1.0]);
        if h.len() != 1 {
            return Err(CliError::usage(format!("{:?} takes a scalar --h", args.model)));
        }
        Ok(Self { command, model: args.model, spin, theta: 2, beta: args.beta, delta, u: (delta + 1.0) / 2.0, h })
    }

    fn interchange(command: &'static str, args: &ModelArgs) -> CliResult<Self> {
        if args.delta.is_some_and(|d| d != 1.0) || args.u.is_some_and(|u| u != 1.0) {
            return Err(CliError::usage("the interchange model has crosses only (u = 1, delta = 1)"));
        }
        let theta = match (args.theta, args.spin) {
            (Some(t), Some(s)) if t != s.0 + 1 => {
                return Err(CliError::usage(format!("--theta {t} does not match --spin {s} (theta = 2S + 1)")));
            }
            (Some(t), _) => t,
            (None, Some(s)) => s.0 + 1,
            (None, None) => return Err(CliError::usage("the interchange model needs --theta or --spin")),
        };
        if theta < 2 {
            return Err(CliError::usage("--theta must be at least 2"));
        }
        let h = args.h.clone().ok_or_else(|| CliError::usage(format!("the interchange model needs --h with {theta} values")))?;
        if h.len() != theta as usize {
            return Err(CliError::usage(format!("--h has {} values, theta = {theta} needs {theta}", h.len())));
        }
        Ok(Self { command, model: Model::Interchange, spin: Spin(theta - 1), theta, beta: args.beta, delta: 1.0, u: 1.0, h })
    }

    pub fn field_label(&self) -> String {
        self.h.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
    }
}
