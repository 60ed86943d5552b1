//! TOML configuration: a Cartan datum, optional edge orientations with
//! `tau` scalars, and run options.
//!
//! ```toml
//! [cartan]
//! vertices = ["i", "j"]
//! pairing = [[2, -2], [-2, 4]]
//!
//! [[edge]]            # optional, one per oriented edge
//! from = "i"
//! to = "j"
//! tau_from_to = 1     # integer or "p/q"
//! tau_to_from = "-1/2"
//!
//! [options]           # all optional
//! trunc = 20
//! seed = 0
//! format = "text"     # or "csv"
//! ```

use serde::Deserialize;
use thiserror::Error;

use crate::cartan::{CartanDatum, CartanError, ValidatedCartan};
use crate::deform::{DeformError, TauDatum};
use crate::qring::Rational;

pub const DEFAULT_TRUNC: i64 = 20;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config syntax: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("config value: {0}")]
    Value(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn to_rational(&self) -> Result<Rational, ConfigError> {
        match self {
            Scalar::Int(n) => Ok(Rational::from_integer((*n).into())),
            Scalar::Text(s) => s.trim().parse().map_err(|_| ConfigError::Value(format!("`{s}` is not a rational"))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCartan {
    vertices: Vec<String>,
    pairing: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: String,
    to: String,
    #[serde(default = "one")]
    tau_from_to: Scalar,
    #[serde(default = "one")]
    tau_to_from: Scalar,
}

fn one() -> Scalar {
    Scalar::Int(1)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub trunc: Option<i64>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    cartan: RawCartan,
    #[serde(default)]
    edge: Vec<RawEdge>,
    #[serde(default)]
    options: Options,
}

/// A parsed but not yet validated configuration.
#[derive(Debug)]
pub struct Config {
    pub cartan: CartanDatum,
    edges: Vec<RawEdge>,
    pub options: Options,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let raw: Raw = toml::from_str(text)?;
        if let Some(d) = raw.options.trunc {
            if d < 1 {
                return Err(ConfigError::Value(format!("trunc = {d} must be at least 1")));
            }
        }
        Ok(Config { cartan: CartanDatum::new(raw.cartan.vertices, raw.cartan.pairing), edges: raw.edge, options: raw.options })
    }

    pub fn validate(&self) -> Result<ValidatedCartan, CartanError> {
        self.cartan.clone().validate()
    }

    pub fn has_tau(&self) -> bool {
        !self.edges.is_empty()
    }

    /// The `tau` datum of the `[[edge]]` tables (all ones if there are none).
    pub fn tau(&self, datum: &ValidatedCartan) -> Result<TauDatum, ConfigError> {
        let mut entries = Vec::new();
        for e in &self.edges {
            let v = |n: &str| datum.vertex(n).map_err(|e| ConfigError::Value(e.to_string()));
            entries.push((v(&e.from)?, v(&e.to)?, e.tau_from_to.to_rational()?, e.tau_to_from.to_rational()?));
        }
        TauDatum::new(datum, &entries).map_err(|e: DeformError| ConfigError::Value(e.to_string()))
    }

    pub fn trunc(&self) -> i64 {
        self.options.trunc.unwrap_or(DEFAULT_TRUNC)
    }
}
