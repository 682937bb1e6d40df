use crate::error::{Error, Result};
use crate::model::{Assignment, Element, Structure, Var};
use crate::quantifiers::{QuantifierRegistry, TupleSet, TupleSpace};
use crate::syntax::{is_first_order, Formula, QuantifierRef, Term};

fn value(m: &Structure, s: &Assignment, t: &Term) -> Result<Element> {
    match t {
        Term::Var(v) => s.get(v.as_str()).ok_or_else(|| Error::UnboundVariable(v.to_string())),
        Term::Const(c) => m.constant(c).ok_or_else(|| Error::UnknownConstant(c.clone())),
    }
}

/// Classical satisfaction `M, s ⊨ φ` for first-order formulas with
/// generalized quantifiers: `Q x̄ ψ` holds iff `ψ^{M,s} ∈ Q_M`.
pub fn satisfies_tarski(m: &Structure, registry: &QuantifierRegistry, s: &Assignment, phi: &Formula) -> Result<bool> {
    if !is_first_order(phi) {
        return Err(Error::FragmentViolation(phi.to_string()));
    }
    eval(m, registry, s, phi)
}

/// `ψ^{M,s} = {ā ∈ M^k | M, s[ā/x̄] ⊨ ψ}`.
pub fn tarski_extension(
    m: &Structure,
    registry: &QuantifierRegistry,
    s: &Assignment,
    xs: &[Var],
    psi: &Formula,
) -> Result<TupleSet> {
    if !is_first_order(psi) {
        return Err(Error::FragmentViolation(psi.to_string()));
    }
    extension(m, registry, s, xs, psi)
}

fn extension(m: &Structure, registry: &QuantifierRegistry, s: &Assignment, xs: &[Var], psi: &Formula) -> Result<TupleSet> {
    let space = TupleSpace::new(m.size(), xs.len())?;
    let mut out = TupleSet::EMPTY;
    for (i, t) in space.tuples().into_iter().enumerate() {
        let mut s2 = s.clone();
        for (x, a) in xs.iter().zip(t) {
            s2 = s2.extend(x, a);
        }
        if eval(m, registry, &s2, psi)? {
            out = out.with(i);
        }
    }
    Ok(out)
}

fn eval(m: &Structure, registry: &QuantifierRegistry, s: &Assignment, phi: &Formula) -> Result<bool> {
    Ok(match phi {
        Formula::Rel { name, args, negated } => {
            let rel = m
                .relation(name)
                .ok_or_else(|| Error::UnknownRelation(name.clone()))?;
            if rel.arity() != args.len() {
                return Err(Error::ArityMismatch {
                    name: name.clone(),
                    expected: rel.arity(),
                    found: args.len(),
                });
            }
            let t = args.iter().map(|a| value(m, s, a)).collect::<Result<Vec<_>>>()?;
            rel.contains(&t) != *negated
        }
        Formula::Eq { left, right, negated } => (value(m, s, left)? == value(m, s, right)?) != *negated,
        Formula::And(l, r) => eval(m, registry, s, l)? && eval(m, registry, s, r)?,
        Formula::Or(l, r) => eval(m, registry, s, l)? || eval(m, registry, s, r)?,
        Formula::Quant {
            quantifier,
            vars,
            body,
            ..
        } => {
            let ext = extension(m, registry, s, vars, body)?;
            match quantifier {
                QuantifierRef::Exists => !ext.is_empty(),
                QuantifierRef::Forall => ext == TupleSpace::new(m.size(), vars.len())?.full(),
                QuantifierRef::Named(name) => registry.instantiate_arity(name, m.size(), vars.len())?.contains(ext),
            }
        }
        Formula::Dep { .. } | Formula::Mvd { .. } | Formula::Indep { .. } => {
            return Err(Error::FragmentViolation(phi.to_string()))
        }
    })
}
