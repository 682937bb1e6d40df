//! Finite structures, assignments and teams.

mod io;
mod team;

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{StructureFile, TeamFile};
pub use team::{SetWitness, Team};

/// A domain element, identified by its position in the structure's domain.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub fn new(index: usize) -> Element {
        Element(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Var {
        Var(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Var {
        Var(s.to_string())
    }
}

impl From<String> for Var {
    fn from(s: String) -> Var {
        Var(s)
    }
}

impl Borrow<str> for Var {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Convenience for building variable lists in code and tests.
pub fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|&n| Var::from(n)).collect()
}

/// A finite partial map from variables to elements. The empty assignment is
/// `Assignment::empty()`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(BTreeMap<Var, Element>);

impl Assignment {
    pub fn empty() -> Assignment {
        Assignment(BTreeMap::new())
    }

    pub fn from_pairs<V: Into<Var>>(pairs: impl IntoIterator<Item = (V, Element)>) -> Assignment {
        Assignment(pairs.into_iter().map(|(v, a)| (v.into(), a)).collect())
    }

    pub fn get(&self, var: &str) -> Option<Element> {
        self.0.get(var).copied()
    }

    /// `s[a/x]`: binds `x` to `a`, overwriting any previous binding.
    pub fn extend(&self, x: &Var, a: Element) -> Assignment {
        let mut out = self.clone();
        out.0.insert(x.clone(), a);
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, Element)> {
        self.0.iter().map(|(v, &a)| (v, a))
    }

    /// `s ⊆ s'` as sets of pairs.
    pub fn is_subset_of(&self, other: &Assignment) -> bool {
        self.0.iter().all(|(v, a)| other.0.get(v) == Some(a))
    }

    /// `s↾ȳ`.
    pub fn restrict(&self, ys: &[Var]) -> Assignment {
        Assignment(
            self.0
                .iter()
                .filter(|(v, _)| ys.contains(v))
                .map(|(v, &a)| (v.clone(), a))
                .collect(),
        )
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<Vec<Element>>,
}

impl Relation {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &BTreeSet<Vec<Element>> {
        &self.tuples
    }

    pub fn contains(&self, tuple: &[Element]) -> bool {
        self.tuples.contains(tuple)
    }
}

/// A finite relational structure with optional named constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    domain: Vec<String>,
    index: HashMap<String, Element>,
    relations: BTreeMap<String, Relation>,
    constants: BTreeMap<String, Element>,
}

impl Structure {
    /// A structure with the given element names and no relations.
    pub fn new<S: Into<String>>(domain: impl IntoIterator<Item = S>) -> Result<Structure> {
        let domain: Vec<String> = domain.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, name) in domain.iter().enumerate() {
            if index.insert(name.clone(), Element::new(i)).is_some() {
                return Err(Error::InvalidStructure(format!(
                    "element `{name}` listed twice"
                )));
            }
        }
        Ok(Structure {
            domain,
            index,
            relations: BTreeMap::new(),
            constants: BTreeMap::new(),
        })
    }

    /// The structure with domain `"0", …, "n-1"` and no relations.
    pub fn with_size(n: usize) -> Structure {
        Structure::new((0..n).map(|i| i.to_string())).expect("distinct names")
    }

    pub fn with_relation(
        mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<Element>>,
    ) -> Result<Structure> {
        if arity == 0 {
            return Err(Error::InvalidStructure(format!(
                "relation `{name}` must have positive arity"
            )));
        }
        if self.relations.contains_key(name) {
            return Err(Error::InvalidStructure(format!(
                "relation `{name}` declared twice"
            )));
        }
        let mut set = BTreeSet::new();
        for t in tuples {
            if t.len() != arity {
                return Err(Error::ArityMismatch {
                    name: name.to_string(),
                    expected: arity,
                    found: t.len(),
                });
            }
            if let Some(bad) = t.iter().find(|a| a.index() >= self.size()) {
                return Err(Error::UnknownElement(format!("{bad:?}")));
            }
            set.insert(t);
        }
        self.relations.insert(
            name.to_string(),
            Relation {
                arity,
                tuples: set,
            },
        );
        Ok(self)
    }

    /// Adds a relation given by element names.
    pub fn with_named_relation(
        self,
        name: &str,
        arity: usize,
        tuples: &[&[&str]],
    ) -> Result<Structure> {
        let tuples = tuples
            .iter()
            .map(|t| t.iter().map(|n| self.element(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        self.with_relation(name, arity, tuples)
    }

    pub fn with_constant(mut self, name: &str, value: Element) -> Result<Structure> {
        if value.index() >= self.size() {
            return Err(Error::UnknownElement(format!("{value:?}")));
        }
        if self.constants.insert(name.to_string(), value).is_some() {
            return Err(Error::InvalidStructure(format!(
                "constant `{name}` declared twice"
            )));
        }
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.domain.len()).map(Element::new)
    }

    pub fn element(&self, name: &str) -> Result<Element> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn name_of(&self, a: Element) -> &str {
        &self.domain[a.index()]
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn constant(&self, name: &str) -> Option<Element> {
        self.constants.get(name).copied()
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, Element)> {
        self.constants.iter().map(|(n, &a)| (n.as_str(), a))
    }

    /// All tuples of `M^k` in lexicographic order.
    pub fn tuples(&self, k: usize) -> Vec<Vec<Element>> {
        all_tuples(self.size(), k)
    }
}

/// All tuples over `{0..n}` of length `k`, lexicographically ordered.
pub(crate) fn all_tuples(n: usize, k: usize) -> Vec<Vec<Element>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * n);
        for prefix in &out {
            for a in 0..n {
                let mut t = prefix.clone();
                t.push(Element::new(a));
                next.push(t);
            }
        }
        out = next;
    }
    out
}
