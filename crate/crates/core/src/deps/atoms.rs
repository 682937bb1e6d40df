use std::collections::{BTreeMap, BTreeSet};

use super::{Dependency, Fd, IndepStatement, Mvd};
use crate::error::{Error, Result};
use crate::model::{Element, Team, Var};
use crate::syntax::VarSet;

fn list(s: &VarSet) -> Vec<Var> {
    s.iter().cloned().collect()
}

fn project(row: &[Element], cols: &[usize]) -> Vec<Element> {
    cols.iter().map(|&c| row[c]).collect()
}

/// `X ⊨ x̄ → ȳ`: rows agreeing on `x̄` agree on `ȳ`.
pub fn team_satisfies_fd(x: &Team, fd: &Fd) -> Result<bool> {
    let lhs = x.columns(&list(&fd.lhs))?;
    let rhs = x.columns(&list(&fd.rhs))?;
    let mut seen: BTreeMap<Vec<Element>, Vec<Element>> = BTreeMap::new();
    for row in x.rows() {
        let value = project(row, &rhs);
        match seen.get(&project(row, &lhs)) {
            Some(v) if *v != value => return Ok(false),
            Some(_) => {}
            None => {
                seen.insert(project(row, &lhs), value);
            }
        }
    }
    Ok(true)
}

fn check_universe(x: &Team, mvd: &Mvd) -> Result<()> {
    let vars: VarSet = x.vars().iter().cloned().collect();
    if vars != mvd.universe {
        return Err(Error::UniverseMismatch(format!(
            "the team is over {{{}}} but the dependency `{mvd}` is relative to {{{}}}",
            names(&vars),
            names(&mvd.universe)
        )));
    }
    Ok(())
}

fn names(s: &VarSet) -> String {
    s.iter().map(Var::as_str).collect::<Vec<_>>().join(",")
}

/// `X ⊨ x̄ ↠ ȳ` in its possible-values form: for every `s ∈ X`, the values
/// of `ȳ` compatible with `s↾x̄` are those compatible with `s↾x̄z̄`. The team
/// must be over exactly the universe of the dependency.
pub fn team_satisfies_mvd(x: &Team, mvd: &Mvd) -> Result<bool> {
    check_universe(x, mvd)?;
    let ys = list(&mvd.rhs);
    let xz: Vec<Var> = mvd
        .universe
        .iter()
        .filter(|v| mvd.lhs.contains(*v) || !mvd.rhs.contains(*v))
        .cloned()
        .collect();
    let xs = list(&mvd.lhs);
    for s in x.assignments() {
        if x.possible_values(&s.restrict(&xs), &ys)? != x.possible_values(&s.restrict(&xz), &ys)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X ⊨ x̄ ↠ ȳ` in its first-order form: for `s, s′` agreeing on `x̄` some
/// `s₀` agrees with `s` on `x̄ȳ` and with `s′` on the context.
pub fn mvd_first_order(x: &Team, mvd: &Mvd) -> Result<bool> {
    check_universe(x, mvd)?;
    witness_exists(x, &list(&mvd.lhs), &list(&mvd.rhs), &list(&mvd.context()))
}

/// `X ⊨ ȳ ⊥_x̄ z̄`.
pub fn team_satisfies_indep(x: &Team, ind: &IndepStatement) -> Result<bool> {
    witness_exists(x, &list(&ind.cond), &list(&ind.left), &list(&ind.right))
}

fn witness_exists(x: &Team, xs: &[Var], ys: &[Var], zs: &[Var]) -> Result<bool> {
    let xc = x.columns(xs)?;
    let yc = x.columns(ys)?;
    let zc = x.columns(zs)?;
    let rows: Vec<&[Element]> = x.rows().collect();
    let present: BTreeSet<(Vec<Element>, Vec<Element>, Vec<Element>)> = rows
        .iter()
        .map(|r| (project(r, &xc), project(r, &yc), project(r, &zc)))
        .collect();
    for s in &rows {
        for t in &rows {
            let key = project(s, &xc);
            if key != project(t, &xc) {
                continue;
            }
            if !present.contains(&(key, project(s, &yc), project(t, &zc))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `X` is the natural join of `X↾x̄ȳ` and `X↾x̄z̄`, where `z̄` is the
/// rest of the team's variables.
pub fn join_decomposition_check(x: &Team, xs: &VarSet, ys: &VarSet) -> Result<bool> {
    let all: VarSet = x.vars().iter().cloned().collect();
    if let Some(v) = xs.iter().chain(ys).find(|v| !all.contains(*v)) {
        return Err(Error::UnknownVariable(v.to_string()));
    }
    let xy: Vec<Var> = all.iter().filter(|v| xs.contains(*v) || ys.contains(*v)).cloned().collect();
    let xz: Vec<Var> = all.iter().filter(|v| xs.contains(*v) || !ys.contains(*v)).cloned().collect();
    Ok(x.restrict(&xy)?.natural_join(&x.restrict(&xz)?) == *x)
}

/// Satisfaction of any dependency statement.
pub fn team_satisfies(x: &Team, d: &Dependency) -> Result<bool> {
    match d {
        Dependency::Fd(d) => team_satisfies_fd(x, d),
        Dependency::Mvd(d) => team_satisfies_mvd(x, d),
        Dependency::Indep(d) => team_satisfies_indep(x, d),
    }
}
