use serde::{Deserialize, Serialize};

use super::{Dependency, Fd, IndepStatement, Mvd};
use crate::error::Result;
use crate::model::Var;
use crate::syntax::VarSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdEntry {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndepEntry {
    #[serde(default)]
    pub cond: Vec<String>,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// `{"universe": [...], "fds": [{"lhs": [...], "rhs": [...]}], "mvds": [...], "inds": [...]}`.
/// Multivalued dependencies are relative to `universe`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyFile {
    pub universe: Vec<String>,
    #[serde(default)]
    pub fds: Vec<FdEntry>,
    #[serde(default)]
    pub mvds: Vec<FdEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inds: Vec<IndepEntry>,
}

fn set(names: &[String]) -> VarSet {
    names.iter().map(|n| Var::from(n.as_str())).collect()
}

fn names(s: &VarSet) -> Vec<String> {
    s.iter().map(|v| v.to_string()).collect()
}

impl DependencyFile {
    pub fn from_json(text: &str) -> Result<DependencyFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn universe(&self) -> VarSet {
        set(&self.universe)
    }

    /// Every statement in file order: functional, multivalued, independence.
    /// Fails when a multivalued dependency leaves the universe.
    pub fn dependencies(&self) -> Result<Vec<Dependency>> {
        let u = self.universe();
        let mut out: Vec<Dependency> = self
            .fds
            .iter()
            .map(|e| {
                Dependency::Fd(Fd {
                    lhs: set(&e.lhs),
                    rhs: set(&e.rhs),
                })
            })
            .collect();
        for e in &self.mvds {
            out.push(Dependency::Mvd(Mvd::from_sets(set(&e.lhs), set(&e.rhs), u.clone())?));
        }
        out.extend(self.inds.iter().map(|e| {
            Dependency::Indep(IndepStatement {
                cond: set(&e.cond),
                left: set(&e.left),
                right: set(&e.right),
            })
        }));
        Ok(out)
    }

    pub fn from_dependencies(universe: &VarSet, deps: &[Dependency]) -> DependencyFile {
        let mut file = DependencyFile {
            universe: names(universe),
            ..DependencyFile::default()
        };
        for d in deps {
            match d {
                Dependency::Fd(d) => file.fds.push(FdEntry {
                    lhs: names(&d.lhs),
                    rhs: names(&d.rhs),
                }),
                Dependency::Mvd(d) => file.mvds.push(FdEntry {
                    lhs: names(&d.lhs),
                    rhs: names(&d.rhs),
                }),
                Dependency::Indep(d) => file.inds.push(IndepEntry {
                    cond: names(&d.cond),
                    left: names(&d.left),
                    right: names(&d.right),
                }),
            }
        }
        file
    }
}
