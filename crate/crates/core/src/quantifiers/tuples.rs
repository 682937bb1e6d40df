use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{all_tuples, Element};

/// Largest `|M|^k` a relation bitmask can hold.
pub const MAX_TUPLES: usize = 64;

/// The tuples of `M^k`, indexed lexicographically: `(a1,…,ak)` has index
/// `a1·n^(k-1) + … + ak`. With this order a tuple of `M^(k+l)` splits as
/// `index = prefix_index · n^l + suffix_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TupleSpace {
    domain_size: usize,
    arity: usize,
    size: usize,
}

impl TupleSpace {
    pub fn new(domain_size: usize, arity: usize) -> Result<TupleSpace> {
        let size = domain_size
            .checked_pow(arity as u32)
            .filter(|&s| s <= MAX_TUPLES)
            .ok_or_else(|| {
                Error::LimitExceeded(format!(
                    "{domain_size}^{arity} tuples do not fit a relation bitmask"
                ))
            })?;
        Ok(TupleSpace {
            domain_size,
            arity,
            size,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `|M^k|`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, t: &[Element]) -> usize {
        debug_assert_eq!(t.len(), self.arity);
        t.iter().fold(0, |acc, a| acc * self.domain_size + a.index())
    }

    pub fn tuple(&self, mut index: usize) -> Vec<Element> {
        let mut t = vec![Element::new(0); self.arity];
        for slot in t.iter_mut().rev() {
            *slot = Element::new(index % self.domain_size);
            index /= self.domain_size;
        }
        t
    }

    pub fn tuples(&self) -> Vec<Vec<Element>> {
        all_tuples(self.domain_size, self.arity)
    }

    pub fn full(&self) -> TupleSet {
        TupleSet::below(self.size)
    }

    /// Every subset of `M^k`, in increasing bitmask order.
    pub fn all_sets(&self) -> Result<impl Iterator<Item = TupleSet>> {
        if self.size > 24 {
            return Err(Error::LimitExceeded(format!(
                "enumerating all 2^{} relations",
                self.size
            )));
        }
        Ok((0u64..(1u64 << self.size)).map(TupleSet))
    }

    pub fn set_of<'a>(&self, tuples: impl IntoIterator<Item = &'a Vec<Element>>) -> Result<TupleSet> {
        let mut s = TupleSet::EMPTY;
        for t in tuples {
            if t.len() != self.arity {
                return Err(Error::ArityMismatch {
                    name: "tuple".into(),
                    expected: self.arity,
                    found: t.len(),
                });
            }
            if let Some(a) = t.iter().find(|a| a.index() >= self.domain_size) {
                return Err(Error::UnknownElement(format!("{a:?}")));
            }
            s = s.with(self.index(t));
        }
        Ok(s)
    }

    pub fn tuples_of(&self, s: TupleSet) -> BTreeSet<Vec<Element>> {
        s.iter().map(|i| self.tuple(i)).collect()
    }

    /// The space `M^(k+l)` of pairs from `self × other`.
    pub fn product(&self, other: &TupleSpace) -> Result<TupleSpace> {
        if self.domain_size != other.domain_size {
            return Err(Error::DomainMismatch {
                expected: self.domain_size,
                found: other.domain_size,
            });
        }
        TupleSpace::new(self.domain_size, self.arity + other.arity)
    }
}

/// A relation over some `M^k`, as a bitmask of tuple indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleSet(pub u64);

impl TupleSet {
    pub const EMPTY: TupleSet = TupleSet(0);

    /// The set `{0, …, n-1}`.
    pub fn below(n: usize) -> TupleSet {
        if n >= 64 {
            TupleSet(u64::MAX)
        } else {
            TupleSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> TupleSet {
        TupleSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> TupleSet {
        TupleSet(self.0 | 1u64 << i)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: TupleSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: TupleSet) -> TupleSet {
        TupleSet(self.0 | other.0)
    }

    pub fn intersection(self, other: TupleSet) -> TupleSet {
        TupleSet(self.0 & other.0)
    }

    pub fn difference(self, other: TupleSet) -> TupleSet {
        TupleSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, starting with `self` itself and ending with ∅.
    pub fn subsets(self) -> impl Iterator<Item = TupleSet> {
        let mut next = Some(self.0);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & self.0) };
            Some(TupleSet(cur))
        })
    }

    /// `A × B` in the product space, where `B` lives in a space of `inner` tuples.
    pub fn cartesian(self, other: TupleSet, inner: usize) -> TupleSet {
        let mut out = TupleSet::EMPTY;
        for a in self.iter() {
            out.0 |= other.0 << (a * inner);
        }
        out
    }

    /// The fiber `R_ā = { b̄ | ⟨ā,b̄⟩ ∈ R }` for a prefix of index `a`.
    pub fn fiber(self, a: usize, inner: usize) -> TupleSet {
        let mask = TupleSet::below(inner).0;
        TupleSet(if a * inner >= 64 { 0 } else { (self.0 >> (a * inner)) & mask })
    }
}

impl fmt::Debug for TupleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let s = TupleSpace::new(3, 2).unwrap();
        assert_eq!(s.size(), 9);
        for i in 0..9 {
            assert_eq!(s.index(&s.tuple(i)), i);
        }
        assert_eq!(s.tuples().iter().map(|t| s.index(t)).collect::<Vec<_>>(), (0..9).collect::<Vec<_>>());
        assert!(TupleSpace::new(3, 4).is_err());
    }

    #[test]
    fn cartesian_and_fibers() {
        // A = {0}, B = {1,2} over M = {0,1,2}
        let a = TupleSet::singleton(0);
        let b = TupleSet::singleton(1).with(2);
        let ab = a.cartesian(b, 3);
        let pairs = TupleSpace::new(3, 2).unwrap();
        let expect: Vec<Vec<Element>> = vec![
            vec![Element::new(0), Element::new(1)],
            vec![Element::new(0), Element::new(2)],
        ];
        assert_eq!(ab, pairs.set_of(&expect).unwrap());
        assert_eq!(ab.fiber(0, 3), b);
        assert!(ab.fiber(1, 3).is_empty());
    }

    #[test]
    fn subsets_enumeration() {
        let s = TupleSet(0b101);
        let subs: Vec<u64> = s.subsets().map(|t| t.0).collect();
        assert_eq!(subs, vec![0b101, 0b100, 0b001, 0]);
        assert_eq!(TupleSet::EMPTY.subsets().count(), 1);
    }
}
