use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Element, Team, Var};
use crate::quantifiers::{DownSet, TupleSpace};

/// `⟦φ⟧_M`: the teams over `FV(φ)` that satisfy `φ`, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticValue {
    vars: Vec<Var>,
    teams: Vec<Team>,
}

impl SemanticValue {
    pub(super) fn new(vars: Vec<Var>, mut teams: Vec<Team>) -> SemanticValue {
        teams.sort();
        SemanticValue { vars, teams }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn teams(&self) -> &[Team] {
        &self.teams
    }

    pub fn len(&self) -> usize {
        self.teams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.teams.is_empty()
    }

    pub fn contains(&self, x: &Team) -> bool {
        self.teams.binary_search(x).is_ok()
    }

    /// Closed under removing rows.
    pub fn is_downward_closed(&self) -> bool {
        self.teams.iter().all(|t| {
            t.rows().all(|r| {
                let smaller = t.filter(|o| o != r);
                self.contains(&smaller)
            })
        })
    }

    /// Each team as a relation over the variables in order.
    pub fn relations(&self) -> Vec<BTreeSet<Vec<Element>>> {
        self.teams
            .iter()
            .map(|t| t.rows().map(<[Element]>::to_vec).collect())
            .collect()
    }

    /// The value as an element of the Hodges space over `M^|FV|`.
    pub fn to_down_set(&self, domain_size: usize) -> Result<DownSet> {
        let space = TupleSpace::new(domain_size, self.vars.len())?;
        let members = self
            .relations()
            .iter()
            .map(|r| space.set_of(r))
            .collect::<Result<Vec<_>>>()?;
        DownSet::new(space, members).map_err(|_| Error::NotDownSet)
    }
}
