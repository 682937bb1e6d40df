use super::ast::{Formula, Mode, QuantifierRef, Term};
use crate::error::{Error, Result};
use crate::model::Var;

/// Is `dep` (with no negation) a guard `dep(x̄; y)` for the variable `y`?
fn is_guard(dep: &Formula, y: &Var) -> bool {
    matches!(dep, Formula::Dep { dependents, negated: false, .. }
        if dependents.len() == 1 && dependents[0].as_var() == Some(y))
}

/// A formula is normal when every functional dependence atom occurs only as
/// a top-level conjunct `dep(x̄;y)` directly under `exists y`.
pub fn is_normal(phi: &Formula) -> bool {
    fn walk(phi: &Formula) -> bool {
        match phi {
            Formula::Dep { .. } => false,
            Formula::Rel { .. } | Formula::Eq { .. } | Formula::Mvd { .. } | Formula::Indep { .. } => true,
            Formula::And(l, r) | Formula::Or(l, r) => walk(l) && walk(r),
            Formula::Quant {
                quantifier: QuantifierRef::Exists,
                vars,
                mode: Mode::Plain,
                body,
            } if vars.len() == 1 => body.conjuncts().into_iter().all(|c| match c {
                Formula::Dep { .. } => is_guard(c, &vars[0]),
                other => walk(other),
            }),
            Formula::Quant { body, .. } => walk(body),
        }
    }
    walk(phi)
}

fn map_deps(phi: &Formula, f: &mut impl FnMut(&Formula) -> Result<Formula>) -> Result<Formula> {
    Ok(match phi {
        Formula::Dep { .. } => f(phi)?,
        Formula::And(l, r) => Formula::and(map_deps(l, f)?, map_deps(r, f)?),
        Formula::Or(l, r) => Formula::or(map_deps(l, f)?, map_deps(r, f)?),
        Formula::Quant {
            quantifier,
            vars,
            mode,
            body,
        } => Formula::quant(quantifier.clone(), vars.clone(), mode.clone(), map_deps(body, f)?),
        other => other.clone(),
    })
}

/// Replaces every `dep(x̄;y)` of a normal formula by `mvd(x̄;y)`.
pub fn replace_fdep_with_mvd(phi: &Formula) -> Result<Formula> {
    if !is_normal(phi) {
        return Err(Error::NotNormal(phi.to_string()));
    }
    let to_vars = |ts: &[Term]| -> Result<Vec<Var>> {
        ts.iter()
            .map(|t| {
                t.as_var()
                    .cloned()
                    .ok_or_else(|| Error::NotNormal(format!("constant `{t}` in a dependence atom")))
            })
            .collect()
    };
    map_deps(phi, &mut |dep| match dep {
        Formula::Dep {
            determiners,
            dependents,
            negated,
        } => Ok(Formula::Mvd {
            lhs: to_vars(determiners)?,
            rhs: to_vars(dependents)?,
            negated: *negated,
        }),
        _ => unreachable!(),
    })
}

/// Rewrites each `exists x̄\(ȳ) ψ` into `exists x̄ (dep(ȳ;x̄) & ψ)`.
/// Backslashed universal and generalized quantifiers are left unchanged.
pub fn backslash_to_fdep(phi: &Formula) -> Formula {
    match phi {
        Formula::And(l, r) => Formula::and(backslash_to_fdep(l), backslash_to_fdep(r)),
        Formula::Or(l, r) => Formula::or(backslash_to_fdep(l), backslash_to_fdep(r)),
        Formula::Quant {
            quantifier: QuantifierRef::Exists,
            vars,
            mode: Mode::Backslashed(ys),
            body,
        } => {
            let guard = Formula::Dep {
                determiners: ys.iter().cloned().map(Term::Var).collect(),
                dependents: vars.iter().cloned().map(Term::Var).collect(),
                negated: false,
            };
            Formula::quant(
                QuantifierRef::Exists,
                vars.clone(),
                Mode::Plain,
                Formula::and(guard, backslash_to_fdep(body)),
            )
        }
        Formula::Quant {
            quantifier,
            vars,
            mode,
            body,
        } => Formula::quant(quantifier.clone(), vars.clone(), mode.clone(), backslash_to_fdep(body)),
        atom => atom.clone(),
    }
}
