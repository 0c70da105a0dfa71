//! The job description: a JSON document whose top-level fields can also be
//! set from the command line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    #[default]
    Compute,
    Verify,
    SchubertTable,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    Schubert,
    Qdual,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeKind {
    #[serde(rename = "sc")]
    SimplyConnected,
    #[default]
    #[serde(rename = "adj")]
    Adjoint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumConfig {
    /// A Cartan letter together with `rank`, or a full designator such as
    /// `A2` or `A1xB2`.
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default)]
    pub lattice: LatticeKind,
    /// Simple-root indices, counted from 1.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theta: Vec<usize>,
}

impl DatumConfig {
    pub fn designator(&self) -> String {
        match self.rank {
            Some(r) => format!("{}{}", self.kind, r),
            None => self.kind.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub name: String,
    #[serde(default)]
    pub degree: i32,
    #[serde(default)]
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    /// `Z`, `Q` or `Fp`.
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default)]
    pub generators: Vec<GeneratorConfig>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryConfig {
    /// `additive`, `multiplicative`, `multiplicative_periodic` or `twist(K)`.
    pub law: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingConfig>,
    /// Law parameters as expressions in the ring, e.g. `{"beta": "2"}`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperationConfig {
    Steenrod {
        p: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        i: Option<i32>,
    },
    ChowTrace {
        p: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        partition: Option<Vec<u32>>,
    },
    ChernCharacter,
    Twist {
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        partition: Option<Vec<u32>>,
    },
    Identity,
    Custom {
        /// Images of the source ring generators, as expressions in the
        /// target ring.
        #[serde(default)]
        phi: BTreeMap<String, String>,
        /// `γ` as a polynomial in `x` over the target ring.
        gamma: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub command: Command,
    pub datum: DatumConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_theory: Option<TheoryConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_theory: Option<TheoryConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operation: Option<OperationConfig>,
    #[serde(default)]
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i32>,
    #[serde(default)]
    pub output: OutputFormat,
}

/// A configuration problem, located by its field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { path: path.into(), message: message.into() }
    }
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ConfigError::new(path, e.into_inner().to_string())
        })
    }

    /// Checks that do not need the algebra.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(p) = self.precision {
            if p < 1 {
                return Err(ConfigError::new("precision", "must be at least 1"));
            }
        }
        if self.datum.theta.contains(&0) {
            return Err(ConfigError::new("datum.theta", "simple-root indices start at 1"));
        }
        match &self.operation {
            Some(OperationConfig::ChowTrace { p, partition: Some(parts) }) => {
                for (k, part) in parts.iter().enumerate() {
                    if !is_prime_power_minus_one(*p, *part) {
                        return Err(ConfigError::new(
                            format!("operation.partition[{k}]"),
                            format!("{part} is not of the form {p}^r - 1"),
                        ));
                    }
                }
            }
            Some(OperationConfig::Twist { partition: Some(parts), k }) => {
                for (i, part) in parts.iter().enumerate() {
                    if *part == 0 || *part as usize > *k {
                        return Err(ConfigError::new(
                            format!("operation.partition[{i}]"),
                            format!("entries must lie between 1 and {k}"),
                        ));
                    }
                }
            }
            Some(OperationConfig::Custom { .. }) => {
                if self.source_theory.is_none() {
                    return Err(ConfigError::new("source_theory", "required for a custom operation"));
                }
                if self.target_theory.is_none() {
                    return Err(ConfigError::new("target_theory", "required for a custom operation"));
                }
            }
            _ => {}
        }
        if self.command == Command::Compute && self.operation.is_none() {
            return Err(ConfigError::new("operation", "required by the compute command"));
        }
        Ok(())
    }
}

fn is_prime_power_minus_one(p: u32, n: u32) -> bool {
    let mut q = p as u64;
    while q - 1 < n as u64 {
        q *= p as u64;
    }
    n > 0 && q - 1 == n as u64
}
