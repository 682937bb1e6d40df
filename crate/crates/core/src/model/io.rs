//! Flat JSON formats for structures and teams.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Element, Structure, Team, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub arity: usize,
    pub tuples: Vec<Vec<String>>,
}

/// `{"domain":[…], "relations":{"R":{"arity":2,"tuples":[…]}}, "constants":{}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub domain: Vec<String>,
    #[serde(default)]
    pub relations: BTreeMap<String, RelationFile>,
    #[serde(default)]
    pub constants: BTreeMap<String, String>,
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<StructureFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self) -> Result<Structure> {
        let mut m = Structure::new(self.domain.iter().cloned())?;
        for (name, rel) in &self.relations {
            let tuples = rel
                .tuples
                .iter()
                .map(|t| t.iter().map(|a| m.element(a)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            m = m.with_relation(name, rel.arity, tuples)?;
        }
        for (name, value) in &self.constants {
            let a = m.element(value)?;
            m = m.with_constant(name, a)?;
        }
        Ok(m)
    }

    pub fn describe(m: &Structure) -> StructureFile {
        let names = |t: &Vec<Element>| t.iter().map(|&a| m.name_of(a).to_string()).collect();
        StructureFile {
            domain: m.domain().to_vec(),
            relations: m
                .relations()
                .map(|(n, r)| {
                    (
                        n.to_string(),
                        RelationFile {
                            arity: r.arity(),
                            tuples: r.tuples().iter().map(names).collect(),
                        },
                    )
                })
                .collect(),
            constants: m
                .constants()
                .map(|(n, a)| (n.to_string(), m.name_of(a).to_string()))
                .collect(),
        }
    }
}

/// `{"vars":["x","y"], "rows":[["0","0"],["1","2"]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeamFile {
    pub vars: Vec<Var>,
    pub rows: Vec<Vec<String>>,
}

impl TeamFile {
    pub fn from_json(text: &str) -> Result<TeamFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Resolves element names against `m`.
    pub fn build(&self, m: &Structure) -> Result<Team> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|a| m.element(a)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if let Some(r) = rows.iter().find(|r| r.len() != self.vars.len()) {
            return Err(Error::InvalidTeam(format!(
                "row of length {} for {} variables",
                r.len(),
                self.vars.len()
            )));
        }
        Team::from_rows(&self.vars, rows)
    }

    pub fn describe(team: &Team, m: &Structure) -> TeamFile {
        TeamFile {
            vars: team.vars().to_vec(),
            rows: team
                .rows()
                .map(|r| r.iter().map(|&a| m.name_of(a).to_string()).collect())
                .collect(),
        }
    }
}
