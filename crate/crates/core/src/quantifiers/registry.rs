use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::algebra::{branch, branch_sher, product};
use super::local::{self, LocalQuantifier};
use crate::error::{Error, Result};
use crate::model::Structure;

/// How a registered name is turned into a local quantifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definition {
    Exists,
    Forall,
    AtLeast(usize),
    Exactly(usize),
    MostDom,
    Branch(String, String),
    Sher(String, String),
    Product(String, String),
    Fixed(LocalQuantifier),
}

type CacheKey = (String, usize, usize);

/// Global quantifiers by name. Built-ins (`exists`, `forall`,
/// `exists_geq_N`, `exists_eq_N`, `most_dom`) are always available and take
/// any arity; user entries are branchings, products, or explicit tables.
pub struct QuantifierRegistry {
    defs: BTreeMap<String, Definition>,
    cache: RwLock<HashMap<CacheKey, Arc<LocalQuantifier>>>,
}

impl Default for QuantifierRegistry {
    fn default() -> Self {
        QuantifierRegistry::new()
    }
}

impl Clone for QuantifierRegistry {
    fn clone(&self) -> Self {
        QuantifierRegistry {
            defs: self.defs.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for QuantifierRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuantifierRegistry").field("defs", &self.defs).finish()
    }
}

fn builtin(name: &str) -> Option<Definition> {
    let count = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    match name {
        "exists" => Some(Definition::Exists),
        "forall" => Some(Definition::Forall),
        "most_dom" => Some(Definition::MostDom),
        _ => count("exists_geq_")
            .map(Definition::AtLeast)
            .or_else(|| count("exists_eq_").map(Definition::Exactly)),
    }
}

impl QuantifierRegistry {
    pub fn new() -> QuantifierRegistry {
        QuantifierRegistry {
            defs: BTreeMap::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn definition(&self, name: &str) -> Result<Definition> {
        self.defs
            .get(name)
            .cloned()
            .or_else(|| builtin(name))
            .ok_or_else(|| Error::UnknownQuantifier(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.defs.contains_key(name) || builtin(name).is_some()
    }

    /// Names of the user-defined entries.
    pub fn defined(&self) -> impl Iterator<Item = (&str, &Definition)> {
        self.defs.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn register(&mut self, name: &str, def: Definition) -> Result<()> {
        if self.contains(name) {
            return Err(Error::DuplicateQuantifier(name.to_string()));
        }
        if let Definition::Branch(a, b) | Definition::Sher(a, b) | Definition::Product(a, b) = &def {
            for part in [a, b] {
                self.definition(part)?;
            }
        }
        if let Definition::Branch(a, b) = &def {
            for part in [a, b] {
                if !self.is_monotone_hint(part)? {
                    return Err(Error::NonMonotone(part.clone()));
                }
            }
        }
        self.defs.insert(name.to_string(), def);
        self.cache.write().unwrap_or_else(|e| e.into_inner()).clear();
        Ok(())
    }

    /// Registers `Br(q1,q2)`; both parts must be monotone.
    pub fn register_branch(&mut self, name: &str, q1: &str, q2: &str) -> Result<()> {
        self.register(name, Definition::Branch(q1.into(), q2.into()))
    }

    /// Registers Sher's `Br^S(q1,q2)`.
    pub fn register_sher(&mut self, name: &str, q1: &str, q2: &str) -> Result<()> {
        self.register(name, Definition::Sher(q1.into(), q2.into()))
    }

    /// Registers the iteration `q1 q2`.
    pub fn register_product(&mut self, name: &str, q1: &str, q2: &str) -> Result<()> {
        self.register(name, Definition::Product(q1.into(), q2.into()))
    }

    /// Registers an explicit local quantifier, usable only on structures of
    /// its domain size.
    pub fn register_local(&mut self, name: &str, q: LocalQuantifier) -> Result<()> {
        let q = q.renamed(name);
        self.register(name, Definition::Fixed(q))
    }

    /// The number of variables `name` binds: `None` for the arity-polymorphic
    /// built-ins.
    pub fn arity(&self, name: &str) -> Result<Option<usize>> {
        Ok(match self.definition(name)? {
            Definition::Fixed(q) => Some(q.arity()),
            Definition::Branch(a, b) | Definition::Sher(a, b) | Definition::Product(a, b) => {
                Some(self.arity(&a)?.unwrap_or(1) + self.arity(&b)?.unwrap_or(1))
            }
            _ => None,
        })
    }

    /// Monotonicity known from the definition. `exists_eq_N` counts as non-monotone
    /// even on the domains where it happens to be upward closed.
    pub fn is_monotone_hint(&self, name: &str) -> Result<bool> {
        Ok(match self.definition(name)? {
            Definition::Exists | Definition::Forall | Definition::AtLeast(_) | Definition::MostDom => true,
            Definition::Exactly(_) | Definition::Sher(..) => false,
            Definition::Branch(..) => true,
            Definition::Product(a, b) => self.is_monotone_hint(&a)? && self.is_monotone_hint(&b)?,
            Definition::Fixed(q) => q.is_monotone(),
        })
    }

    /// `Q_M` for the structure's domain, at the quantifier's own arity (1 for
    /// the built-ins).
    pub fn instantiate(&self, name: &str, m: &Structure) -> Result<Arc<LocalQuantifier>> {
        let arity = self.arity(name)?.unwrap_or(1);
        self.instantiate_arity(name, m.size(), arity)
    }

    pub fn instantiate_arity(&self, name: &str, domain_size: usize, arity: usize) -> Result<Arc<LocalQuantifier>> {
        let key = (name.to_string(), domain_size, arity);
        if let Some(q) = self.cache.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(Arc::clone(q));
        }
        let q = Arc::new(self.build(name, domain_size, arity)?);
        self.cache
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(key, Arc::clone(&q));
        Ok(q)
    }

    fn build(&self, name: &str, n: usize, arity: usize) -> Result<LocalQuantifier> {
        let def = self.definition(name)?;
        if let Some(k) = self.arity(name)? {
            if k != arity {
                return Err(Error::ArityMismatch {
                    name: name.to_string(),
                    expected: k,
                    found: arity,
                });
            }
        }
        let parts = |a: &str, b: &str| -> Result<(Arc<LocalQuantifier>, Arc<LocalQuantifier>)> {
            let ka = self.arity(a)?.unwrap_or(1);
            let kb = self.arity(b)?.unwrap_or(1);
            Ok((self.instantiate_arity(a, n, ka)?, self.instantiate_arity(b, n, kb)?))
        };
        let q = match def {
            Definition::Exists => local::exists(n, arity)?,
            Definition::Forall => local::forall(n, arity)?,
            Definition::AtLeast(k) => local::at_least(k, n, arity)?,
            Definition::Exactly(k) => local::exactly(k, n, arity)?,
            Definition::MostDom => local::most_dom(n, arity)?,
            Definition::Branch(a, b) => {
                let (qa, qb) = parts(&a, &b)?;
                branch(&qa, &qb)?
            }
            Definition::Sher(a, b) => {
                let (qa, qb) = parts(&a, &b)?;
                branch_sher(&qa, &qb)?
            }
            Definition::Product(a, b) => {
                let (qa, qb) = parts(&a, &b)?;
                product(&qa, &qb)?
            }
            Definition::Fixed(q) => {
                if q.domain_size() != n {
                    return Err(Error::DomainMismatch {
                        expected: q.domain_size(),
                        found: n,
                    });
                }
                q
            }
        };
        Ok(q.renamed(name))
    }
}
