//! Body specs, tolerances and the error type carrying the exit code.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use htgeom::convex::BodySpec;
use htgeom::{ConvexBody, GeomError};
use serde_json::Value;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> CliError {
        CliError::input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A body given on the command line, with the spec it was built from.
pub struct LoadedBody {
    pub spec: BodySpec,
    pub body: ConvexBody,
}

impl LoadedBody {
    pub fn echo(&self) -> Value {
        serde_json::to_value(&self.spec).expect("specs serialize")
    }
}

/// Inline JSON if the argument starts with `{`, otherwise a path to a JSON file.
pub fn load_body(flag: &str, arg: &str) -> CliResult<LoadedBody> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::input(format!("--{flag} {arg}: {e}")))?
    };
    let spec = BodySpec::from_json(&text).map_err(|e| CliError::input(format!("--{flag}: {e}")))?;
    let body = spec.build().map_err(|e| CliError::input(format!("--{flag}: {e}")))?;
    Ok(LoadedBody { spec, body })
}

/// Named tolerances with defaults; `--tol name=value` overrides known names only.
pub fn tolerances(defaults: &[(&str, f64)], overrides: &[String]) -> CliResult<BTreeMap<String, f64>> {
    let mut map: BTreeMap<String, f64> = defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for item in overrides {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("--tol expects name=value, got {item:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("--tol {name}: not a number")))?;
        if !(value > 0.0) {
            return Err(CliError::input(format!("--tol {name}: must be positive")));
        }
        match map.get_mut(name.trim()) {
            Some(v) => *v = value,
            None => {
                let known: Vec<&str> = defaults.iter().map(|(k, _)| *k).collect();
                return Err(CliError::input(format!(
                    "unknown tolerance {name:?}; known: {}",
                    known.join(", ")
                )));
            }
        }
    }
    Ok(map)
}

/// Comma-separated coordinates.
pub fn parse_vector(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("bad coordinate {s:?} in {text:?}")))
        })
        .collect()
}
