use std::collections::BTreeSet;
use std::fmt;

use super::tuples::{TupleSet, TupleSpace};
use crate::error::{Error, Result};
use crate::model::Element;

/// A local quantifier `Q_M`: an explicit family of subsets of `M^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalQuantifier {
    name: String,
    space: TupleSpace,
    sets: Vec<TupleSet>,
    monotone: bool,
}

impl LocalQuantifier {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        domain_size: usize,
        sets: impl IntoIterator<Item = TupleSet>,
    ) -> Result<LocalQuantifier> {
        let space = TupleSpace::new(domain_size, arity)?;
        let full = space.full();
        let mut sets: Vec<TupleSet> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| !s.is_subset(full)) {
            return Err(Error::InvalidStructure(format!(
                "set {bad:?} is not a relation over a domain of size {domain_size}"
            )));
        }
        sets.sort();
        sets.dedup();
        let monotone = upward_closed(&sets, full);
        Ok(LocalQuantifier {
            name: name.into(),
            space,
            sets,
            monotone,
        })
    }

    /// Builds a quantifier from explicit sets of tuples.
    pub fn from_tuples(
        name: impl Into<String>,
        arity: usize,
        domain_size: usize,
        sets: &[BTreeSet<Vec<Element>>],
    ) -> Result<LocalQuantifier> {
        let space = TupleSpace::new(domain_size, arity)?;
        let sets = sets
            .iter()
            .map(|s| space.set_of(s))
            .collect::<Result<Vec<_>>>()?;
        LocalQuantifier::new(name, arity, domain_size, sets)
    }

    /// All `A ⊆ M^k` for which `keep` holds.
    pub fn by_predicate(
        name: impl Into<String>,
        arity: usize,
        domain_size: usize,
        keep: impl Fn(TupleSet) -> bool,
    ) -> Result<LocalQuantifier> {
        let space = TupleSpace::new(domain_size, arity)?;
        let sets: Vec<TupleSet> = space.all_sets()?.filter(|&s| keep(s)).collect();
        LocalQuantifier::new(name, arity, domain_size, sets)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> LocalQuantifier {
        self.name = name.into();
        self
    }

    pub fn arity(&self) -> usize {
        self.space.arity()
    }

    pub fn domain_size(&self) -> usize {
        self.space.domain_size()
    }

    pub fn space(&self) -> TupleSpace {
        self.space
    }

    /// The member sets in increasing bitmask order.
    pub fn sets(&self) -> &[TupleSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: TupleSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn contains_tuples(&self, s: &BTreeSet<Vec<Element>>) -> bool {
        self.space.set_of(s).is_ok_and(|s| self.contains(s))
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// The inclusion-minimal members.
    pub fn minimal_sets(&self) -> Vec<TupleSet> {
        self.sets
            .iter()
            .copied()
            .filter(|&s| !self.sets.iter().any(|&t| t != s && t.is_subset(s)))
            .collect()
    }

    /// The member sets as explicit tuple sets.
    pub fn tuple_sets(&self) -> Vec<BTreeSet<Vec<Element>>> {
        self.sets.iter().map(|&s| self.space.tuples_of(s)).collect()
    }
}

impl fmt::Debug for LocalQuantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}⟨{}⟩ on |M|={} {:?}",
            self.name,
            self.arity(),
            self.domain_size(),
            self.sets
        )
    }
}

/// Upward closure in `𝒫(full)`. Checking one-element extensions suffices:
/// every strict superset is reached by a chain of them.
fn upward_closed(sets: &[TupleSet], full: TupleSet) -> bool {
    sets.iter().all(|&s| {
        full.difference(s)
            .iter()
            .all(|i| sets.binary_search(&s.with(i)).is_ok())
    })
}

/// `Q` is monotone iff it is upward closed.
pub fn is_monotone(q: &LocalQuantifier) -> bool {
    q.is_monotone()
}

pub(crate) fn exists(domain_size: usize, arity: usize) -> Result<LocalQuantifier> {
    LocalQuantifier::by_predicate("exists", arity, domain_size, |s| !s.is_empty())
}

pub(crate) fn forall(domain_size: usize, arity: usize) -> Result<LocalQuantifier> {
    let space = TupleSpace::new(domain_size, arity)?;
    LocalQuantifier::new("forall", arity, domain_size, [space.full()])
}

pub(crate) fn at_least(n: usize, domain_size: usize, arity: usize) -> Result<LocalQuantifier> {
    LocalQuantifier::by_predicate(format!("exists_geq_{n}"), arity, domain_size, |s| s.len() >= n)
}

pub(crate) fn exactly(n: usize, domain_size: usize, arity: usize) -> Result<LocalQuantifier> {
    LocalQuantifier::by_predicate(format!("exists_eq_{n}"), arity, domain_size, |s| s.len() == n)
}

/// Strict majority of `M^k`: `2|A| > |M^k|`.
pub(crate) fn most_dom(domain_size: usize, arity: usize) -> Result<LocalQuantifier> {
    let total = TupleSpace::new(domain_size, arity)?.size();
    LocalQuantifier::by_predicate("most_dom", arity, domain_size, |s| 2 * s.len() > total)
}
