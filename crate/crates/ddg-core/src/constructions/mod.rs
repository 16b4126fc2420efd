//! The construction engine: every parameterized recipe producing DDGs, the
//! ingredient store feeding them, and the structure searches they rely on
//! (Seidel automorphisms, Hoffman colorings, distance decompositions).

pub mod analysis;
mod builds;
pub mod ingredients;
pub mod matrices;
pub mod named;

pub use analysis::{
    distance_matrices, dual_seidel_switching, find_hoffman_colorings, find_seidel_automorphisms,
    require_drg, srg_parameters, AnalysisError, DistanceDecomposition,
};
pub use builds::{construct, construct_all, Built};
pub use ingredients::{Ingredient, IngredientStore, Payload};
pub use matrices::{DesignMeta, MatrixError, SignKind, SignMatrix, ZeroOneMatrix};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Identifier of a construction; `C1`..`C23` plus the sporadic assembler
/// `R1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ConstructionId {
    C(u8),
    R1,
}

impl FromStr for ConstructionId {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, ConstructError> {
        let s = s.to_ascii_lowercase();
        if s == "r1" {
            return Ok(ConstructionId::R1);
        }
        if let Some(num) = s.strip_prefix('c') {
            if let Ok(n) = num.parse::<u8>() {
                if (1..=23).contains(&n) {
                    return Ok(ConstructionId::C(n));
                }
            }
        }
        Err(ConstructError::UnknownConstruction(s))
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionId::C(n) => write!(f, "c{n}"),
            ConstructionId::R1 => write!(f, "r1"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("unknown construction {0:?}")]
    UnknownConstruction(String),
    #[error("unknown ingredient {0:?}")]
    UnknownIngredient(String),
    #[error("ingredient {name} is not a {expected}")]
    WrongKind { name: String, expected: &'static str },
    #[error("ingredient rejected: {0}")]
    Ingredient(String),
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("option {0}: {1}")]
    BadOption(&'static str, String),
    #[error("construction produced a non-DDG; this is a bug: {0}")]
    Internal(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Free-form `key=value` options for a construction.
#[derive(Clone, Debug, Default)]
pub struct Opts(BTreeMap<String, String>);

impl Opts {
    pub fn new() -> Self {
        Opts::default()
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn parse_pairs(pairs: &[String]) -> Result<Self, ConstructError> {
        let mut map = BTreeMap::new();
        for pair in pairs {
            let (k, v) = pair.split_once('=').ok_or_else(|| {
                ConstructError::BadOption("opt", format!("expected key=value, got {pair:?}"))
            })?;
            map.insert(k.to_string(), v.to_string());
        }
        Ok(Opts(map))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn usize(&self, key: &'static str) -> Result<Option<usize>, ConstructError> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| ConstructError::BadOption(key, v.to_string())))
            .transpose()
    }

    pub fn require_usize(&self, key: &'static str) -> Result<usize, ConstructError> {
        self.usize(key)?
            .ok_or(ConstructError::BadOption(key, "missing".into()))
    }
}
