//! Formula syntax: AST, parser, printer, and syntactic analyses.

mod ast;
mod parser;
mod rewrite;

use std::collections::BTreeSet;

pub use ast::{Formula, Mode, QuantifierRef, Term};
pub use parser::{parse, parse_with};
pub use rewrite::{backslash_to_fdep, is_normal, replace_fdep_with_mvd};

use crate::error::Result;
use crate::model::Var;
use crate::quantifiers::QuantifierRegistry;

pub type VarSet = BTreeSet<Var>;

fn term_vars<'a>(terms: impl IntoIterator<Item = &'a Term>, out: &mut VarSet) {
    out.extend(terms.into_iter().filter_map(Term::as_var).cloned());
}

/// `FV(φ)`. Variables of dependence atoms are free, a quantifier binds its
/// variables, and slash/backslash lists contribute free occurrences.
pub fn free_variables(phi: &Formula) -> VarSet {
    let mut out = VarSet::new();
    match phi {
        Formula::Rel { args, .. } => term_vars(args, &mut out),
        Formula::Eq { left, right, .. } => term_vars([left, right], &mut out),
        Formula::Dep {
            determiners,
            dependents,
            ..
        } => term_vars(determiners.iter().chain(dependents), &mut out),
        Formula::Mvd { lhs, rhs, .. } => out.extend(lhs.iter().chain(rhs).cloned()),
        Formula::Indep {
            cond, left, right, ..
        } => out.extend(cond.iter().chain(left).chain(right).cloned()),
        Formula::And(l, r) | Formula::Or(l, r) => {
            out = free_variables(l);
            out.extend(free_variables(r));
        }
        Formula::Quant {
            vars, mode, body, ..
        } => {
            out = free_variables(body);
            for v in vars {
                out.remove(v);
            }
            if let Mode::Slashed(ys) | Mode::Backslashed(ys) = mode {
                out.extend(ys.iter().cloned());
            }
        }
    }
    out
}

/// True when `phi` has no multivalued-dependence or independence atom and
/// only quantifiers known to be monotone. Formulas in this fragment are
/// closed under subteams; the converse does not hold.
pub fn is_downward_closed_fragment(phi: &Formula, registry: &QuantifierRegistry) -> Result<bool> {
    Ok(match phi {
        Formula::Mvd { .. } | Formula::Indep { .. } => false,
        Formula::Rel { .. } | Formula::Eq { .. } | Formula::Dep { .. } => true,
        Formula::And(l, r) | Formula::Or(l, r) => {
            is_downward_closed_fragment(l, registry)? && is_downward_closed_fragment(r, registry)?
        }
        Formula::Quant {
            quantifier, body, ..
        } => {
            let monotone = match quantifier {
                QuantifierRef::Exists | QuantifierRef::Forall => true,
                QuantifierRef::Named(name) => registry.is_monotone_hint(name)?,
            };
            monotone && is_downward_closed_fragment(body, registry)?
        }
    })
}

/// True for formulas of first-order logic with generalized quantifiers:
/// no dependence atoms and no slashed or backslashed quantifiers.
pub fn is_first_order(phi: &Formula) -> bool {
    match phi {
        Formula::Rel { .. } | Formula::Eq { .. } => true,
        Formula::Dep { .. } | Formula::Mvd { .. } | Formula::Indep { .. } => false,
        Formula::And(l, r) | Formula::Or(l, r) => is_first_order(l) && is_first_order(r),
        Formula::Quant { mode, body, .. } => *mode == Mode::Plain && is_first_order(body),
    }
}
