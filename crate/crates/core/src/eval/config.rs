use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Reading of the plain existential quantifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExistentialMode {
    /// `∃f: X → M`, one value per assignment.
    #[default]
    Strict,
    /// `∃F: X → 𝒫(M)∖{∅}`.
    Lax,
}

/// Largeness condition used for non-monotone quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Largeness {
    /// Every larger satisfying `F′` must map into `Q`.
    #[default]
    Corrected,
    /// The condition as literally stated: `F` itself maps into `Q`.
    Literal,
}

impl FromStr for ExistentialMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(ExistentialMode::Strict),
            "lax" => Ok(ExistentialMode::Lax),
            _ => Err(Error::InvalidConfig(format!("unknown existential mode `{s}`"))),
        }
    }
}

impl FromStr for Largeness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Largeness::Corrected),
            "literal" => Ok(Largeness::Literal),
            _ => Err(Error::InvalidConfig(format!("unknown largeness mode `{s}`"))),
        }
    }
}

impl fmt::Display for ExistentialMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExistentialMode::Strict => "strict",
            ExistentialMode::Lax => "lax",
        })
    }
}

impl fmt::Display for Largeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Largeness::Corrected => "corrected",
            Largeness::Literal => "literal",
        })
    }
}

/// Resource guards. Exceeding any of them aborts with `Error::LimitExceeded`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest team the evaluator will build.
    pub max_rows: usize,
    pub max_domain: usize,
    /// Total witness candidates tried in one call.
    pub max_candidates: u64,
    /// Largest `|M|^|FV(φ)|` for semantic values.
    pub max_semantic_value_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rows: 4096,
            max_domain: 8,
            max_candidates: 50_000_000,
            max_semantic_value_cells: 16,
        }
    }
}

pub const LIMITS_ENV: &str = "TEAMSEM_LIMITS";

impl Limits {
    /// Parses overrides of the form `max_rows=100,max_domain=4`.
    pub fn parse_overrides(mut self, spec: &str) -> Result<Limits> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("bad limit `{part}`")))?;
            let bad = || Error::InvalidConfig(format!("bad limit value `{part}`"));
            match key.trim() {
                "max_rows" => self.max_rows = value.trim().parse().map_err(|_| bad())?,
                "max_domain" => self.max_domain = value.trim().parse().map_err(|_| bad())?,
                "max_candidates" => self.max_candidates = value.trim().parse().map_err(|_| bad())?,
                "max_semantic_value_cells" => {
                    self.max_semantic_value_cells = value.trim().parse().map_err(|_| bad())?
                }
                other => return Err(Error::InvalidConfig(format!("unknown limit `{other}`"))),
            }
        }
        Ok(self)
    }

    /// Defaults overridden by the `TEAMSEM_LIMITS` environment variable.
    pub fn from_env() -> Result<Limits> {
        match std::env::var(LIMITS_ENV) {
            Ok(spec) => Limits::default().parse_overrides(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    pub existential: ExistentialMode,
    pub largeness: Largeness,
    pub limits: Limits,
    /// Restrict witnesses of monotone quantifiers to minimal sets when the
    /// body is in the downward-closed fragment.
    pub minimal_witnesses: bool,
    /// Run the largeness check for monotone quantifiers too.
    pub check_largeness_for_monotone: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            existential: ExistentialMode::Strict,
            largeness: Largeness::Corrected,
            limits: Limits::default(),
            minimal_witnesses: true,
            check_largeness_for_monotone: false,
        }
    }
}

impl EvalConfig {
    pub fn lax() -> EvalConfig {
        EvalConfig {
            existential: ExistentialMode::Lax,
            ..EvalConfig::default()
        }
    }

    pub fn literal() -> EvalConfig {
        EvalConfig {
            largeness: Largeness::Literal,
            ..EvalConfig::default()
        }
    }
}
