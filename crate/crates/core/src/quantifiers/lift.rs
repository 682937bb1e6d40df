use std::collections::BTreeSet;

use super::algebra::fibers_in;
use super::local::LocalQuantifier;
use super::tuples::{TupleSet, TupleSpace};
use crate::error::{Error, Result};

/// A down set of relations over `M^k`: an element of the Hodges space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DownSet {
    space: TupleSpace,
    members: BTreeSet<TupleSet>,
}

impl DownSet {
    pub fn new(space: TupleSpace, members: impl IntoIterator<Item = TupleSet>) -> Result<DownSet> {
        let members: BTreeSet<TupleSet> = members.into_iter().collect();
        let full = space.full();
        if members.iter().any(|m| !m.is_subset(full)) {
            return Err(Error::NotDownSet);
        }
        let closed = members.iter().all(|&m| {
            m.iter()
                .all(|i| members.contains(&TupleSet(m.0 & !(1u64 << i))))
        });
        if !closed {
            return Err(Error::NotDownSet);
        }
        Ok(DownSet { space, members })
    }

    pub fn empty(space: TupleSpace) -> DownSet {
        DownSet {
            space,
            members: BTreeSet::new(),
        }
    }

    /// `↓G = {X | X ⊆ Y for some Y ∈ G}`.
    pub fn closure(space: TupleSpace, generators: impl IntoIterator<Item = TupleSet>) -> DownSet {
        let mut members = BTreeSet::new();
        for g in generators {
            debug_assert!(g.is_subset(space.full()));
            if members.contains(&g) {
                continue;
            }
            members.extend(g.subsets());
        }
        DownSet { space, members }
    }

    pub fn principal(space: TupleSpace, top: TupleSet) -> DownSet {
        DownSet::closure(space, [top])
    }

    /// The whole power set `𝒫(M^k)`.
    pub fn full(space: TupleSpace) -> DownSet {
        DownSet::principal(space, space.full())
    }

    pub fn space(&self) -> TupleSpace {
        self.space
    }

    pub fn contains(&self, r: TupleSet) -> bool {
        self.members.contains(&r)
    }

    pub fn members(&self) -> impl Iterator<Item = TupleSet> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The inclusion-maximal members.
    pub fn maximal(&self) -> Vec<TupleSet> {
        self.members
            .iter()
            .copied()
            .filter(|&m| {
                self.space
                    .full()
                    .difference(m)
                    .iter()
                    .all(|i| !self.members.contains(&m.with(i)))
            })
            .collect()
    }
}

/// Every down set of `𝒫(M^k)`, for `|M^k| ≤ 5`.
///
/// A down set over `m` points splits into the members without the last
/// point and those with it, and the second part (with the point removed) is a
/// down set contained in the first.
pub fn all_down_sets(space: TupleSpace) -> Result<Vec<DownSet>> {
    let m = space.size();
    if m > 5 {
        return Err(Error::LimitExceeded(format!(
            "enumerating the down sets of a power set on {m} points"
        )));
    }
    // families are bitmasks over the 2^m subsets
    let mut families: Vec<u64> = vec![0, 1];
    for level in 0..m {
        let half = 1u32 << level;
        let mut next = Vec::new();
        for &lower in &families {
            for &upper in &families {
                if upper & !lower == 0 {
                    next.push(lower | upper << half);
                }
            }
        }
        families = next;
    }
    Ok(families
        .into_iter()
        .map(|f| DownSet {
            space,
            members: TupleSet(f).iter().map(|i| TupleSet(i as u64)).collect(),
        })
        .collect())
}

fn split(q: &LocalQuantifier, x: &DownSet) -> Result<TupleSpace> {
    let space = x.space();
    if space.domain_size() != q.domain_size() {
        return Err(Error::DomainMismatch {
            expected: q.domain_size(),
            found: space.domain_size(),
        });
    }
    let n = space.arity().checked_sub(q.arity()).ok_or(Error::ArityMismatch {
        name: q.name().to_string(),
        expected: q.arity(),
        found: space.arity(),
    })?;
    TupleSpace::new(space.domain_size(), n)
}

/// `h_Q(R) = {ā | R_ā ∈ Q}`, mapping relations over `M^(n+k)` to `M^n`.
pub fn h_q(q: &LocalQuantifier, r: TupleSet, outer: &TupleSpace) -> TupleSet {
    fibers_in(r, outer.size(), q.space().size(), q)
}

/// `ℒ(h_Q)(𝒳) = ↓{h_Q(X) | X ∈ 𝒳}`.
pub fn hodges_lift(q: &LocalQuantifier, x: &DownSet) -> Result<DownSet> {
    let outer = split(q, x)?;
    Ok(DownSet::closure(outer, x.members().map(|r| h_q(q, r, &outer))))
}

/// `{Y | ∃F: Y → Q with Y[F] ∈ 𝒳}`.
pub fn witness_lift(q: &LocalQuantifier, x: &DownSet) -> Result<DownSet> {
    let outer = split(q, x)?;
    let inner = q.space().size();
    fn search(rows: &[usize], acc: TupleSet, q: &LocalQuantifier, inner: usize, x: &DownSet) -> bool {
        let Some((&a, rest)) = rows.split_first() else {
            return true;
        };
        q.sets().iter().any(|&b| {
            let next = acc.union(TupleSet(b.0 << (a * inner)));
            x.contains(next) && search(rest, next, q, inner, x)
        })
    }
    let mut members = Vec::new();
    for y in outer.all_sets()? {
        let rows: Vec<usize> = y.iter().collect();
        if x.contains(TupleSet::EMPTY) && search(&rows, TupleSet::EMPTY, q, inner, x) {
            members.push(y);
        }
    }
    Ok(DownSet {
        space: outer,
        members: members.into_iter().collect(),
    })
}
