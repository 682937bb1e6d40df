use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Structure, Var};
use crate::quantifiers::QuantifierRegistry;
use crate::syntax::{free_variables, Formula, Mode, QuantifierRef, Term};

/// Rejects formulas that cannot be evaluated on a team over `team_vars`:
/// unknown symbols, wrong arities, free variables missing from the team, and
/// slash lists naming variables outside the team at that point.
pub fn validate(m: &Structure, registry: &QuantifierRegistry, team_vars: &[Var], phi: &Formula) -> Result<()> {
    let scope: BTreeSet<Var> = team_vars.iter().cloned().collect();
    walk(m, registry, &scope, phi)?;
    match free_variables(phi).into_iter().find(|v| !scope.contains(v)) {
        Some(v) => Err(Error::UnboundVariable(v.to_string())),
        None => Ok(()),
    }
}

fn terms(m: &Structure, scope: &BTreeSet<Var>, ts: &[Term]) -> Result<()> {
    for t in ts {
        match t {
            Term::Var(v) if !scope.contains(v) => return Err(Error::UnboundVariable(v.to_string())),
            Term::Const(c) if m.constant(c).is_none() => return Err(Error::UnknownConstant(c.clone())),
            _ => {}
        }
    }
    Ok(())
}

fn vars(scope: &BTreeSet<Var>, vs: &[Var]) -> Result<()> {
    match vs.iter().find(|v| !scope.contains(*v)) {
        Some(v) => Err(Error::UnboundVariable(v.to_string())),
        None => Ok(()),
    }
}

fn walk(m: &Structure, registry: &QuantifierRegistry, scope: &BTreeSet<Var>, phi: &Formula) -> Result<()> {
    match phi {
        Formula::Rel { name, args, .. } => {
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
            terms(m, scope, args)
        }
        Formula::Eq { left, right, .. } => terms(m, scope, &[left.clone(), right.clone()]),
        Formula::Dep {
            determiners,
            dependents,
            ..
        } => {
            terms(m, scope, determiners)?;
            terms(m, scope, dependents)
        }
        Formula::Mvd { lhs, rhs, .. } => {
            vars(scope, lhs)?;
            vars(scope, rhs)
        }
        Formula::Indep {
            cond, left, right, ..
        } => {
            vars(scope, cond)?;
            vars(scope, left)?;
            vars(scope, right)
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            walk(m, registry, scope, l)?;
            walk(m, registry, scope, r)
        }
        Formula::Quant {
            quantifier,
            vars: bound,
            mode,
            body,
        } => {
            if let QuantifierRef::Named(name) = quantifier {
                if let Some(k) = registry.arity(name)? {
                    if k != bound.len() {
                        return Err(Error::ArityMismatch {
                            name: name.clone(),
                            expected: k,
                            found: bound.len(),
                        });
                    }
                }
            }
            if let Mode::Slashed(ys) | Mode::Backslashed(ys) = mode {
                if let Some(y) = ys.iter().find(|y| !scope.contains(*y)) {
                    return Err(Error::SlashOutsideTeam(y.to_string()));
                }
            }
            let mut inner = scope.clone();
            inner.extend(bound.iter().cloned());
            walk(m, registry, &inner, body)
        }
    }
}
