use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{all_tuples, Assignment, Element, Structure, Var};
use crate::error::{Error, Result};

/// A set of assignments over a common, finite set of variables.
///
/// Variables are kept in lexicographic order and rows are stored as a sorted
/// set of value vectors aligned with that order, so two teams are equal iff
/// they have the same variables and the same assignments. A team with no
/// variables and one (empty) row is `{ε}`; with no rows it is the empty team.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Team {
    vars: Vec<Var>,
    rows: BTreeSet<Vec<Element>>,
}

fn check_distinct(vars: &[Var]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for v in vars {
        if !seen.insert(v) {
            return Err(Error::DuplicateVariable(v.to_string()));
        }
    }
    Ok(())
}

impl Team {
    /// The empty team over `vars`.
    pub fn empty(vars: impl IntoIterator<Item = Var>) -> Result<Team> {
        let mut vars: Vec<Var> = vars.into_iter().collect();
        check_distinct(&vars)?;
        vars.sort();
        Ok(Team {
            vars,
            rows: BTreeSet::new(),
        })
    }

    /// `{ε}`.
    pub fn unit() -> Team {
        Team {
            vars: Vec::new(),
            rows: BTreeSet::from([Vec::new()]),
        }
    }

    /// Builds a team from rows whose columns follow `order`.
    pub fn from_rows(
        order: &[Var],
        rows: impl IntoIterator<Item = Vec<Element>>,
    ) -> Result<Team> {
        check_distinct(order)?;
        let mut vars = order.to_vec();
        vars.sort();
        let perm: Vec<usize> = vars
            .iter()
            .map(|v| order.iter().position(|o| o == v).unwrap())
            .collect();
        let mut set = BTreeSet::new();
        for row in rows {
            if row.len() != order.len() {
                return Err(Error::InvalidTeam(format!(
                    "row has {} values but the team has {} variables",
                    row.len(),
                    order.len()
                )));
            }
            set.insert(perm.iter().map(|&i| row[i]).collect());
        }
        Ok(Team { vars, rows: set })
    }

    /// Builds a team from assignments that all bind exactly `vars`.
    pub fn from_assignments(
        vars: &[Var],
        rows: impl IntoIterator<Item = Assignment>,
    ) -> Result<Team> {
        let mut out = Team::empty(vars.iter().cloned())?;
        for s in rows {
            if s.len() != out.vars.len() {
                return Err(Error::InvalidTeam(format!(
                    "assignment {s:?} does not bind exactly {:?}",
                    out.vars
                )));
            }
            let row = out
                .vars
                .iter()
                .map(|v| s.get(v.as_str()).ok_or_else(|| Error::UnknownVariable(v.to_string())))
                .collect::<Result<Vec<_>>>()?;
            out.rows.insert(row);
        }
        Ok(out)
    }

    /// All assignments of `vars` into a domain of size `n`.
    pub fn full(vars: &[Var], n: usize) -> Result<Team> {
        let mut out = Team::empty(vars.iter().cloned())?;
        out.rows = all_tuples(n, vars.len()).into_iter().collect();
        Ok(out)
    }

    /// `dom(X)`, sorted.
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows in canonical order, as value vectors aligned with [`Team::vars`].
    pub fn rows(&self) -> impl Iterator<Item = &[Element]> + Clone {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        self.rows.iter().map(move |r| self.assignment_of(r))
    }

    pub fn assignment_of(&self, row: &[Element]) -> Assignment {
        Assignment::from_pairs(self.vars.iter().cloned().zip(row.iter().copied()))
    }

    pub fn contains(&self, s: &Assignment) -> bool {
        if s.len() != self.vars.len() {
            return false;
        }
        let row: Option<Vec<Element>> = self.vars.iter().map(|v| s.get(v.as_str())).collect();
        row.is_some_and(|r| self.rows.contains(&r))
    }

    pub fn column(&self, var: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(var)).ok()
    }

    pub(crate) fn columns(&self, vars: &[Var]) -> Result<Vec<usize>> {
        vars.iter()
            .map(|v| {
                self.column(v.as_str())
                    .ok_or_else(|| Error::UnknownVariable(v.to_string()))
            })
            .collect()
    }

    pub fn is_subteam_of(&self, other: &Team) -> bool {
        self.vars == other.vars && self.rows.is_subset(&other.rows)
    }

    /// The subteam keeping rows for which `keep` holds.
    pub fn filter(&self, mut keep: impl FnMut(&[Element]) -> bool) -> Team {
        Team {
            vars: self.vars.clone(),
            rows: self.rows.iter().filter(|r| keep(r)).cloned().collect(),
        }
    }

    pub(crate) fn with_rows(&self, rows: BTreeSet<Vec<Element>>) -> Team {
        Team {
            vars: self.vars.clone(),
            rows,
        }
    }

    /// Extends every row by the tuples produced by `tuples_for(row_index, row)`
    /// for the variables `xs`, overwriting existing bindings of `xs`.
    pub(crate) fn extend_rows<I, F>(&self, xs: &[Var], mut tuples_for: F) -> Team
    where
        F: FnMut(usize, &[Element]) -> I,
        I: IntoIterator,
        I::Item: AsRef<[Element]>,
    {
        enum Src {
            Old(usize),
            New(usize),
        }
        let mut vars: Vec<Var> = self
            .vars
            .iter()
            .filter(|v| !xs.contains(v))
            .cloned()
            .collect();
        vars.extend(xs.iter().cloned());
        vars.sort();
        let sources: Vec<Src> = vars
            .iter()
            .map(|v| match xs.iter().position(|x| x == v) {
                Some(j) => Src::New(j),
                None => Src::Old(self.column(v.as_str()).unwrap()),
            })
            .collect();
        let mut rows = BTreeSet::new();
        for (i, row) in self.rows.iter().enumerate() {
            for t in tuples_for(i, row) {
                let t = t.as_ref();
                rows.insert(
                    sources
                        .iter()
                        .map(|s| match *s {
                            Src::Old(c) => row[c],
                            Src::New(j) => t[j],
                        })
                        .collect(),
                );
            }
        }
        Team { vars, rows }
    }

    /// `X[M/ȳ]`: every row extended by every tuple of `M^k`.
    pub fn extend_universal(&self, ys: &[Var], m: &Structure) -> Result<Team> {
        check_distinct(ys)?;
        let tuples = m.tuples(ys.len());
        Ok(self.extend_rows(ys, |_, _| tuples.iter()))
    }

    /// `X[f/y]`.
    pub fn extend_function(&self, y: &Var, mut f: impl FnMut(&Assignment) -> Element) -> Team {
        let ys = std::slice::from_ref(y);
        self.extend_rows(ys, |_, row| [[f(&self.assignment_of(row))]])
    }

    /// `X[F/x̄]`: every row `s` extended by every tuple of `F(s)`.
    pub fn extend_setwitness(&self, witness: &SetWitness, xs: &[Var]) -> Result<Team> {
        check_distinct(xs)?;
        if witness.arity != xs.len() {
            return Err(Error::ArityMismatch {
                name: "witness".into(),
                expected: witness.arity,
                found: xs.len(),
            });
        }
        if witness.vars != self.vars || self.rows.iter().any(|r| !witness.map.contains_key(r)) {
            return Err(Error::InvalidTeam(
                "witness is not defined on every row of the team".into(),
            ));
        }
        Ok(self.extend_rows(xs, |_, row| witness.map[row].iter()))
    }

    /// `X↾ȳ`.
    pub fn restrict(&self, ys: &[Var]) -> Result<Team> {
        check_distinct(ys)?;
        let mut keep: Vec<Var> = ys.to_vec();
        keep.sort();
        let cols = self.columns(&keep)?;
        Ok(Team {
            vars: keep,
            rows: self
                .rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c]).collect())
                .collect(),
        })
    }

    /// `X^ȳ_s`: the values of `ȳ` over the rows extending `s`.
    pub fn possible_values(&self, s: &Assignment, ys: &[Var]) -> Result<BTreeSet<Vec<Element>>> {
        let ycols = self.columns(ys)?;
        let fixed: Vec<(usize, Element)> = s
            .iter()
            .map(|(v, a)| {
                self.column(v.as_str())
                    .map(|c| (c, a))
                    .ok_or_else(|| Error::UnknownVariable(v.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok(self
            .rows
            .iter()
            .filter(|r| fixed.iter().all(|&(c, a)| r[c] == a))
            .map(|r| ycols.iter().map(|&c| r[c]).collect())
            .collect())
    }

    /// `X ⋈ Y`.
    pub fn natural_join(&self, other: &Team) -> Team {
        let mut vars: Vec<Var> = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        let shared: Vec<(usize, usize)> = self
            .vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| other.column(v.as_str()).map(|j| (i, j)))
            .collect();
        let sources: Vec<(bool, usize)> = vars
            .iter()
            .map(|v| match self.column(v.as_str()) {
                Some(i) => (true, i),
                None => (false, other.column(v.as_str()).unwrap()),
            })
            .collect();
        let mut rows = BTreeSet::new();
        for r in &self.rows {
            for q in &other.rows {
                if shared.iter().all(|&(i, j)| r[i] == q[j]) {
                    rows.insert(
                        sources
                            .iter()
                            .map(|&(mine, c)| if mine { r[c] } else { q[c] })
                            .collect(),
                    );
                }
            }
        }
        Team { vars, rows }
    }

    /// `X(x1,…,xk)`: the relation obtained by reading the rows along `order`.
    pub fn to_relation(&self, order: &[Var]) -> Result<BTreeSet<Vec<Element>>> {
        check_distinct(order)?;
        if order.len() != self.vars.len() {
            return Err(Error::InvalidTeam(format!(
                "order {order:?} is not a permutation of {:?}",
                self.vars
            )));
        }
        let cols = self.columns(order)?;
        Ok(self
            .rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect())
    }

    /// `[R/x1,…,xk]`.
    pub fn from_relation<'a>(
        relation: impl IntoIterator<Item = &'a Vec<Element>>,
        order: &[Var],
    ) -> Result<Team> {
        Team::from_rows(order, relation.into_iter().cloned())
    }

    /// All subteams, in the order of the bitmask over canonical rows.
    pub fn subteams(&self) -> impl Iterator<Item = Team> + '_ {
        let rows: Vec<&Vec<Element>> = self.rows.iter().collect();
        assert!(rows.len() < 64, "too many rows to enumerate subteams");
        (0u64..(1u64 << rows.len())).map(move |mask| Team {
            vars: self.vars.clone(),
            rows: rows
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, r)| (*r).clone())
                .collect(),
        })
    }

    /// Renders the team with element names from `m`.
    pub fn display<'a>(&'a self, m: &'a Structure) -> impl fmt::Display + 'a {
        TeamDisplay { team: self, m }
    }
}

impl fmt::Debug for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Team{:?}", self.vars)?;
        f.debug_set().entries(self.rows.iter()).finish()
    }
}

struct TeamDisplay<'a> {
    team: &'a Team,
    m: &'a Structure,
}

impl fmt::Display for TeamDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, row) in self.team.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, (v, a)) in self.team.vars.iter().zip(row).enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}↦{}", self.m.name_of(*a))?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// A set-valued witness `F: X → 𝒫(M^k)`, defined on the rows of one team.
#[derive(Clone, PartialEq, Eq)]
pub struct SetWitness {
    vars: Vec<Var>,
    arity: usize,
    map: BTreeMap<Vec<Element>, BTreeSet<Vec<Element>>>,
}

impl SetWitness {
    /// Builds a witness on `team` from a function of its assignments.
    pub fn from_fn(
        team: &Team,
        arity: usize,
        mut f: impl FnMut(&Assignment) -> BTreeSet<Vec<Element>>,
    ) -> Result<SetWitness> {
        let mut map = BTreeMap::new();
        for row in team.rows.iter() {
            let set = f(&team.assignment_of(row));
            if let Some(bad) = set.iter().find(|t| t.len() != arity) {
                return Err(Error::ArityMismatch {
                    name: "witness tuple".into(),
                    expected: arity,
                    found: bad.len(),
                });
            }
            map.insert(row.clone(), set);
        }
        Ok(SetWitness {
            vars: team.vars.clone(),
            arity,
            map,
        })
    }

    pub(crate) fn from_rows(
        team: &Team,
        arity: usize,
        sets: impl IntoIterator<Item = BTreeSet<Vec<Element>>>,
    ) -> SetWitness {
        SetWitness {
            vars: team.vars.clone(),
            arity,
            map: team.rows.iter().cloned().zip(sets).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, s: &Assignment) -> Option<&BTreeSet<Vec<Element>>> {
        let row: Option<Vec<Element>> = self.vars.iter().map(|v| s.get(v.as_str())).collect();
        self.map.get(&row?)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Assignment, &BTreeSet<Vec<Element>>)> + '_ {
        self.map.iter().map(move |(row, set)| {
            (
                Assignment::from_pairs(self.vars.iter().cloned().zip(row.iter().copied())),
                set,
            )
        })
    }

    /// The pointwise order `F ≤ F'`.
    pub fn le(&self, other: &SetWitness) -> bool {
        self.vars == other.vars
            && self.map.len() == other.map.len()
            && self
                .map
                .iter()
                .all(|(row, set)| other.map.get(row).is_some_and(|o| set.is_subset(o)))
    }
}

impl fmt::Debug for SetWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}
