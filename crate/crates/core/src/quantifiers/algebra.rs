use super::local::LocalQuantifier;
use super::tuples::{TupleSet, TupleSpace};
use crate::error::{Error, Result};

fn joint_space(q1: &LocalQuantifier, q2: &LocalQuantifier) -> Result<TupleSpace> {
    q1.space().product(&q2.space())
}

/// The iteration `Q1Q2`: `R ∈ Q1Q2` iff `{ā | R_ā ∈ Q2} ∈ Q1`.
pub fn product(q1: &LocalQuantifier, q2: &LocalQuantifier) -> Result<LocalQuantifier> {
    let space = joint_space(q1, q2)?;
    let (outer, inner) = (q1.space().size(), q2.space().size());
    let name = format!("product({},{})", q1.name(), q2.name());
    LocalQuantifier::by_predicate(name, space.arity(), space.domain_size(), |r| {
        q1.contains(fibers_in(r, outer, inner, q2))
    })
}

/// `{ā | R_ā ∈ Q}` where `ā` ranges over `outer` prefixes.
pub(crate) fn fibers_in(r: TupleSet, outer: usize, inner: usize, q: &LocalQuantifier) -> TupleSet {
    (0..outer)
        .filter(|&a| q.contains(r.fiber(a, inner)))
        .fold(TupleSet::EMPTY, TupleSet::with)
}

/// `Br(Q1,Q2) = {R | ∃A ∈ Q1, B ∈ Q2 : A × B ⊆ R}`, defined for monotone
/// arguments only.
pub fn branch(q1: &LocalQuantifier, q2: &LocalQuantifier) -> Result<LocalQuantifier> {
    for q in [q1, q2] {
        if !q.is_monotone() {
            return Err(Error::NonMonotone(q.name().to_string()));
        }
    }
    let space = joint_space(q1, q2)?;
    let inner = q2.space().size();
    let rects: Vec<TupleSet> = q1
        .minimal_sets()
        .into_iter()
        .flat_map(|a| q2.minimal_sets().into_iter().map(move |b| a.cartesian(b, inner)))
        .collect();
    let name = format!("branch({},{})", q1.name(), q2.name());
    LocalQuantifier::by_predicate(name, space.arity(), space.domain_size(), |r| {
        rects.iter().any(|ab| ab.is_subset(r))
    })
}

/// Is `A × B` a maximal cartesian product inside `R`? `A` ranges over
/// `outer`, `B` over `inner`. A proper extension exists iff a
/// single-element extension does.
pub fn is_maximal_product(a: TupleSet, b: TupleSet, r: TupleSet, outer: &TupleSpace, inner: &TupleSpace) -> bool {
    let n = inner.size();
    if !a.cartesian(b, n).is_subset(r) {
        return false;
    }
    let grows_a = outer
        .full()
        .difference(a)
        .iter()
        .any(|x| TupleSet::singleton(x).cartesian(b, n).is_subset(r));
    let grows_b = inner
        .full()
        .difference(b)
        .iter()
        .any(|y| a.cartesian(TupleSet::singleton(y), n).is_subset(r));
    !grows_a && !grows_b
}

/// Sher's branching `Br^S(Q1,Q2) = {R | ∃A ∈ Q1, B ∈ Q2 : A × B maximal in R}`.
pub fn branch_sher(q1: &LocalQuantifier, q2: &LocalQuantifier) -> Result<LocalQuantifier> {
    let space = joint_space(q1, q2)?;
    let (outer, inner) = (q1.space(), q2.space());
    let name = format!("sher({},{})", q1.name(), q2.name());
    LocalQuantifier::by_predicate(name, space.arity(), space.domain_size(), |r| {
        q1.sets().iter().any(|&a| {
            q2.sets()
                .iter()
                .any(|&b| is_maximal_product(a, b, r, &outer, &inner))
        })
    })
}

/// `R^T = {⟨b̄,ā⟩ | ⟨ā,b̄⟩ ∈ R}` for `R ⊆ M^k × M^l`, given the sizes of `M^k`
/// and `M^l`.
pub fn transpose(r: TupleSet, outer: usize, inner: usize) -> TupleSet {
    r.iter()
        .map(|i| (i % inner) * outer + i / inner)
        .fold(TupleSet::EMPTY, TupleSet::with)
}
