//! Functional and multivalued dependencies as statements about teams:
//! satisfaction, rule-based inference, and bounded semantic implication.

mod atoms;
mod inference;
mod io;
mod semantic;

use std::fmt;

pub use atoms::{
    join_decomposition_check, mvd_first_order, team_satisfies, team_satisfies_fd, team_satisfies_indep,
    team_satisfies_mvd,
};
pub use inference::{armstrong_derives, bfh_derives, Derivation, Step, MAX_BFH_UNIVERSE};
pub use io::{DependencyFile, FdEntry, IndepEntry};
pub use semantic::{semantic_implies, Bounds, Verdict};

use crate::error::{Error, Result};
use crate::model::Var;
use crate::syntax::VarSet;

/// `x̄ → ȳ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fd {
    pub lhs: VarSet,
    pub rhs: VarSet,
}

/// `x̄ ↠ ȳ` relative to the universe `U`; the rest `U ∖ x̄ȳ` is the context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mvd {
    pub lhs: VarSet,
    pub rhs: VarSet,
    pub universe: VarSet,
}

/// `ȳ ⊥_x̄ z̄`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndepStatement {
    pub cond: VarSet,
    pub left: VarSet,
    pub right: VarSet,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dependency {
    Fd(Fd),
    Mvd(Mvd),
    Indep(IndepStatement),
}

pub(crate) fn set(names: &[&str]) -> VarSet {
    names.iter().map(|&n| Var::from(n)).collect()
}

impl Fd {
    pub fn new(lhs: &[&str], rhs: &[&str]) -> Fd {
        Fd {
            lhs: set(lhs),
            rhs: set(rhs),
        }
    }

    pub fn vars(&self) -> VarSet {
        self.lhs.union(&self.rhs).cloned().collect()
    }
}

impl Mvd {
    /// Fails when `lhs ∪ rhs ⊄ universe`.
    pub fn new(lhs: &[&str], rhs: &[&str], universe: &[&str]) -> Result<Mvd> {
        Mvd::from_sets(set(lhs), set(rhs), set(universe))
    }

    pub fn from_sets(lhs: VarSet, rhs: VarSet, universe: VarSet) -> Result<Mvd> {
        if let Some(v) = lhs.iter().chain(&rhs).find(|v| !universe.contains(*v)) {
            return Err(Error::UniverseMismatch(format!("`{v}` is not in the universe")));
        }
        Ok(Mvd { lhs, rhs, universe })
    }

    /// `U ∖ (x̄ ∪ ȳ)`.
    pub fn context(&self) -> VarSet {
        self.universe
            .iter()
            .filter(|v| !self.lhs.contains(*v) && !self.rhs.contains(*v))
            .cloned()
            .collect()
    }
}

impl IndepStatement {
    pub fn new(cond: &[&str], left: &[&str], right: &[&str]) -> IndepStatement {
        IndepStatement {
            cond: set(cond),
            left: set(left),
            right: set(right),
        }
    }
}

impl Dependency {
    pub fn vars(&self) -> VarSet {
        match self {
            Dependency::Fd(d) => d.vars(),
            Dependency::Mvd(d) => d.universe.clone(),
            Dependency::Indep(d) => d.cond.iter().chain(&d.left).chain(&d.right).cloned().collect(),
        }
    }

    /// Parses `x,y -> z`, `x ->> y z` or `ind(x;y;z)`. Either side of an
    /// arrow may be empty. Multivalued dependencies take `universe` as context.
    pub fn parse(text: &str, universe: &VarSet) -> Result<Dependency> {
        let bad = |msg: &str| Error::Parse(crate::error::ParseError::new(0, format!("{msg} in `{text}`")));
        let side = |s: &str| -> Result<VarSet> {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|w| !w.is_empty())
                .map(|w| {
                    let ok = w.chars().next().is_some_and(|c| c.is_ascii_lowercase())
                        && w.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
                    if ok {
                        Ok(Var::from(w))
                    } else {
                        Err(bad(&format!("bad variable `{w}`")))
                    }
                })
                .collect()
        };
        let t = text.trim();
        if let Some(inner) = t.strip_prefix("ind(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(';').collect();
            if parts.len() != 3 {
                return Err(bad("expected `ind(x;y;z)`"));
            }
            return Ok(Dependency::Indep(IndepStatement {
                cond: side(parts[0])?,
                left: side(parts[1])?,
                right: side(parts[2])?,
            }));
        }
        if let Some((l, r)) = t.split_once("->>") {
            return Ok(Dependency::Mvd(Mvd::from_sets(side(l)?, side(r)?, universe.clone())?));
        }
        if let Some((l, r)) = t.split_once("->") {
            return Ok(Dependency::Fd(Fd {
                lhs: side(l)?,
                rhs: side(r)?,
            }));
        }
        Err(bad("expected `->`, `->>` or `ind(…)`"))
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, s: &VarSet) -> fmt::Result {
    let names: Vec<&str> = s.iter().map(Var::as_str).collect();
    f.write_str(&names.join(","))
}

impl fmt::Display for Fd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, &self.lhs)?;
        f.write_str(" -> ")?;
        write_set(f, &self.rhs)
    }
}

impl fmt::Display for Mvd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, &self.lhs)?;
        f.write_str(" ->> ")?;
        write_set(f, &self.rhs)
    }
}

impl fmt::Display for IndepStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ind(")?;
        write_set(f, &self.cond)?;
        f.write_str(";")?;
        write_set(f, &self.left)?;
        f.write_str(";")?;
        write_set(f, &self.right)?;
        f.write_str(")")
    }
}

impl fmt::Display for Dependency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dependency::Fd(d) => d.fmt(f),
            Dependency::Mvd(d) => d.fmt(f),
            Dependency::Indep(d) => d.fmt(f),
        }
    }
}
