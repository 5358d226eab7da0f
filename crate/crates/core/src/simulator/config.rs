use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

use super::{Profile, Scheme, SimConfig, SimError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value `{value}` for `{key}`: {message}")]
    BadValue { key: String, value: String, message: String },
    #[error(transparent)]
    Invalid(#[from] SimError),
}

const KEYS: &[&str] = &[
    "n",
    "L",
    "dt",
    "T",
    "beta",
    "gamma",
    "dealias",
    "scheme",
    "record_every",
    "profile",
    "k",
    "center",
    "amplitude",
    "width",
    "seed",
    "cutoff",
    "max_drift",
    "snapshot_every",
];

pub const DEFAULT_MAX_DRIFT: f64 = 1e-6;

/// A simulation run: grid and stepping parameters, initial profile and the
/// drift budget.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub sim: SimConfig,
    pub profile: Profile,
    pub max_drift: f64,
    pub snapshot_every: usize,
}

/// Parses `key = value` lines; `#` starts a comment. Later keys win.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    RunConfig::from_pairs(parse_pairs(text)?)
}

pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut pairs = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: i + 1,
            message: format!("expected key = value, got `{line}`"),
        })?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

fn value<T: FromStr>(map: &BTreeMap<String, String>, key: &str, default: T) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    match map.get(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|e: T::Err| ConfigError::BadValue {
            key: key.into(),
            value: v.clone(),
            message: e.to_string(),
        }),
    }
}

impl RunConfig {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, String)>) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if !KEYS.contains(&k.as_str()) {
                return Err(ConfigError::UnknownKey(k));
            }
            map.insert(k, v);
        }
        let d = SimConfig::default();
        let scheme = match map.get("scheme").map(String::as_str) {
            None | Some("etdrk4") => Scheme::Etdrk4,
            Some(other) => {
                return Err(ConfigError::BadValue {
                    key: "scheme".into(),
                    value: other.into(),
                    message: "only etdrk4 is available".into(),
                })
            }
        };
        let sim = SimConfig {
            n: value(&map, "n", d.n)?,
            length: value(&map, "L", d.length)?,
            dt: value(&map, "dt", d.dt)?,
            t_final: value(&map, "T", d.t_final)?,
            beta: value(&map, "beta", d.beta)?,
            gamma: value(&map, "gamma", d.gamma)?,
            dealias: value(&map, "dealias", d.dealias)?,
            scheme,
            record_every: value(&map, "record_every", d.record_every)?,
        };
        sim.validate()?;
        let name = map.get("profile").map(String::as_str).unwrap_or("zero");
        let profile = match name {
            "zero" => Profile::Zero,
            "kdv-soliton" => Profile::KdvSoliton {
                beta: sim.beta,
                k: value(&map, "k", 1.0)?,
                center: value(&map, "center", sim.length / 2.0)?,
            },
            "gaussian-dipole" => Profile::GaussianDipole {
                amplitude: value(&map, "amplitude", 1.0)?,
                width: value(&map, "width", 2.0)?,
            },
            "random-smooth" => Profile::RandomSmooth {
                seed: value(&map, "seed", 0)?,
                cutoff: value(&map, "cutoff", 10)?,
                amplitude: value(&map, "amplitude", 1.0)?,
            },
            other => {
                return Err(ConfigError::BadValue {
                    key: "profile".into(),
                    value: other.into(),
                    message: "expected zero, kdv-soliton, gaussian-dipole or random-smooth".into(),
                })
            }
        };
        Ok(RunConfig {
            sim,
            profile,
            max_drift: value(&map, "max_drift", DEFAULT_MAX_DRIFT)?,
            snapshot_every: value(&map, "snapshot_every", 0)?,
        })
    }
}
