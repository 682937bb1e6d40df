use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::model::{Element, Structure, Team, Var};
use crate::syntax::{Formula, Term};

#[derive(Clone, Copy)]
enum Source {
    Column(usize),
    Fixed(Element),
}

fn source(m: &Structure, x: &Team, t: &Term) -> Result<Source> {
    match t {
        Term::Var(v) => x
            .column(v.as_str())
            .map(Source::Column)
            .ok_or_else(|| Error::UnboundVariable(v.to_string())),
        Term::Const(c) => m
            .constant(c)
            .map(Source::Fixed)
            .ok_or_else(|| Error::UnknownConstant(c.clone())),
    }
}

fn sources(m: &Structure, x: &Team, ts: &[Term]) -> Result<Vec<Source>> {
    ts.iter().map(|t| source(m, x, t)).collect()
}

fn read(row: &[Element], s: Source) -> Element {
    match s {
        Source::Column(c) => row[c],
        Source::Fixed(a) => a,
    }
}

fn project(row: &[Element], ss: &[Source]) -> Vec<Element> {
    ss.iter().map(|&s| read(row, s)).collect()
}

/// Relational and equality literals hold on a team iff they hold in every row.
pub(super) fn literal_holds(m: &Structure, x: &Team, phi: &Formula) -> Result<bool> {
    match phi {
        Formula::Rel { name, args, negated } => {
            let rel = m
                .relation(name)
                .ok_or_else(|| Error::UnknownRelation(name.clone()))?;
            let ss = sources(m, x, args)?;
            Ok(x.rows().all(|r| rel.contains(&project(r, &ss)) != *negated))
        }
        Formula::Eq {
            left,
            right,
            negated,
        } => {
            let (l, r) = (source(m, x, left)?, source(m, x, right)?);
            Ok(x.rows().all(|row| (read(row, l) == read(row, r)) != *negated))
        }
        _ => unreachable!("not a literal"),
    }
}

/// `dep(t̄; ū)`: rows agreeing on `t̄` agree on `ū`.
pub(super) fn dep_holds(m: &Structure, x: &Team, determiners: &[Term], dependents: &[Term]) -> Result<bool> {
    let (d, e) = (sources(m, x, determiners)?, sources(m, x, dependents)?);
    let mut seen: HashMap<Vec<Element>, Vec<Element>> = HashMap::new();
    for row in x.rows() {
        let value = project(row, &e);
        match seen.get(&project(row, &d)) {
            Some(v) if *v != value => return Ok(false),
            Some(_) => {}
            None => {
                seen.insert(project(row, &d), value);
            }
        }
    }
    Ok(true)
}

fn columns(x: &Team, vs: &[Var]) -> Result<Vec<Source>> {
    vs.iter()
        .map(|v| {
            x.column(v.as_str())
                .map(Source::Column)
                .ok_or_else(|| Error::UnboundVariable(v.to_string()))
        })
        .collect()
}

/// `ȳ ⊥_x̄ z̄`: among rows agreeing on `x̄`, every combination of a `ȳ`-value
/// and a `z̄`-value occurs together in some row.
pub(super) fn indep_holds(x: &Team, cond: &[Var], left: &[Var], right: &[Var]) -> Result<bool> {
    let (c, l, r) = (columns(x, cond)?, columns(x, left)?, columns(x, right)?);
    type Group = (BTreeSet<Vec<Element>>, BTreeSet<Vec<Element>>, BTreeSet<(Vec<Element>, Vec<Element>)>);
    let mut groups: HashMap<Vec<Element>, Group> = HashMap::new();
    for row in x.rows() {
        let g = groups.entry(project(row, &c)).or_default();
        let (lv, rv) = (project(row, &l), project(row, &r));
        g.0.insert(lv.clone());
        g.1.insert(rv.clone());
        g.2.insert((lv, rv));
    }
    Ok(groups.values().all(|(ls, rs, both)| both.len() == ls.len() * rs.len()))
}

/// `x̄ ↠ ȳ` in the context of the whole team: `ȳ ⊥_x̄ z̄` where `z̄` are the
/// remaining variables of the team.
pub(super) fn mvd_holds(x: &Team, lhs: &[Var], rhs: &[Var]) -> Result<bool> {
    let rest: Vec<Var> = x
        .vars()
        .iter()
        .filter(|v| !lhs.contains(v) && !rhs.contains(v))
        .cloned()
        .collect();
    indep_holds(x, lhs, rhs, &rest)
}
