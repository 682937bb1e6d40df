//! The team satisfaction relation and its companions: the Tarskian
//! evaluator for first-order formulas with generalized quantifiers, semantic
//! values and witness inspection.

mod atoms;
mod check;
mod config;
mod semantic;
mod tarski;

use std::cell::Cell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub use check::validate;
pub use config::{EvalConfig, ExistentialMode, Largeness, Limits, LIMITS_ENV};
pub use semantic::SemanticValue;
pub use tarski::{satisfies_tarski, tarski_extension};

use crate::error::{Error, Result};
use crate::model::{Element, SetWitness, Structure, Team, Var};
use crate::quantifiers::{LocalQuantifier, QuantifierRegistry, TupleSet, TupleSpace};
use crate::syntax::{free_variables, is_downward_closed_fragment, Formula, Mode, QuantifierRef};

/// Decides `M, X ⊨ φ` by exhaustive witness search.
pub struct Evaluator<'a> {
    m: &'a Structure,
    registry: &'a QuantifierRegistry,
    config: EvalConfig,
    candidates: Cell<u64>,
}

/// How the witness of one quantifier node is searched.
struct Plan {
    space: TupleSpace,
    choices: Vec<TupleSet>,
    /// Set for the corrected largeness check.
    large_in: Option<Arc<LocalQuantifier>>,
    /// Whether a failing partial assignment rules out all completions.
    prune: bool,
}

impl<'a> Evaluator<'a> {
    pub fn new(m: &'a Structure, registry: &'a QuantifierRegistry, config: EvalConfig) -> Evaluator<'a> {
        Evaluator {
            m,
            registry,
            config,
            candidates: Cell::new(0),
        }
    }

    pub fn structure(&self) -> &Structure {
        self.m
    }

    pub fn config(&self) -> &EvalConfig {
        &self.config
    }

    /// Witness candidates tried by the last top-level call.
    pub fn candidates_tried(&self) -> u64 {
        self.candidates.get()
    }

    fn prepare(&self, x: &Team, phi: &Formula) -> Result<()> {
        let limits = &self.config.limits;
        if self.m.size() > limits.max_domain {
            return Err(Error::LimitExceeded(format!(
                "domain of size {} exceeds max_domain={}",
                self.m.size(),
                limits.max_domain
            )));
        }
        self.check_rows(x.len())?;
        validate(self.m, self.registry, x.vars(), phi)?;
        self.candidates.set(0);
        Ok(())
    }

    fn check_rows(&self, n: usize) -> Result<()> {
        if n > self.config.limits.max_rows {
            return Err(Error::LimitExceeded(format!(
                "team of {n} rows exceeds max_rows={}",
                self.config.limits.max_rows
            )));
        }
        Ok(())
    }

    fn tick(&self) -> Result<()> {
        let n = self.candidates.get() + 1;
        if n > self.config.limits.max_candidates {
            return Err(Error::LimitExceeded(format!(
                "more than {} witness candidates",
                self.config.limits.max_candidates
            )));
        }
        self.candidates.set(n);
        Ok(())
    }

    /// `M, X ⊨ φ`.
    pub fn satisfies(&self, x: &Team, phi: &Formula) -> Result<bool> {
        self.prepare(x, phi)?;
        self.sat(x, phi)
    }

    /// `M ⊨ σ`, i.e. `M, {ε} ⊨ σ`.
    pub fn sentence_truth(&self, sigma: &Formula) -> Result<bool> {
        let fv = free_variables(sigma);
        if !fv.is_empty() {
            let names: Vec<String> = fv.iter().map(|v| v.to_string()).collect();
            return Err(Error::NotASentence(names.join(", ")));
        }
        self.satisfies(&Team::unit(), sigma)
    }

    /// A witness `F` for the quantifier at the top of `φ`, if `M, X ⊨ φ`.
    /// For the universal quantifier the witness is the constant `M^k`.
    pub fn find_witness(&self, x: &Team, phi: &Formula) -> Result<Option<SetWitness>> {
        self.prepare(x, phi)?;
        let Formula::Quant {
            quantifier,
            vars,
            mode,
            body,
        } = phi
        else {
            return Err(Error::FragmentViolation(
                "a witness exists only for a quantified formula".into(),
            ));
        };
        let space = TupleSpace::new(self.m.size(), vars.len())?;
        let found = self.quant(x, quantifier, vars, mode, body)?;
        Ok(found.map(|sets| {
            SetWitness::from_rows(x, vars.len(), sets.into_iter().map(|s| space.tuples_of(s)))
        }))
    }

    /// `⟦φ⟧_M`: every team over `FV(φ)` satisfying `φ`.
    pub fn semantic_value(&self, phi: &Formula) -> Result<SemanticValue> {
        let vars: Vec<Var> = free_variables(phi).into_iter().collect();
        let cells = self
            .m
            .size()
            .checked_pow(vars.len() as u32)
            .filter(|&c| c <= self.config.limits.max_semantic_value_cells && c < 64)
            .ok_or_else(|| {
                Error::LimitExceeded(format!(
                    "{}^{} assignments exceed max_semantic_value_cells={}",
                    self.m.size(),
                    vars.len(),
                    self.config.limits.max_semantic_value_cells
                ))
            })?;
        let assignments = self.m.tuples(vars.len());
        let mut teams = Vec::new();
        for mask in 0u64..(1u64 << cells) {
            let rows = TupleSet(mask).iter().map(|i| assignments[i].clone());
            let team = Team::from_rows(&vars, rows)?;
            if self.satisfies(&team, phi)? {
                teams.push(team);
            }
        }
        Ok(SemanticValue::new(vars, teams))
    }

    fn dc(&self, phi: &Formula) -> bool {
        is_downward_closed_fragment(phi, self.registry).unwrap_or(false)
    }

    fn sat(&self, x: &Team, phi: &Formula) -> Result<bool> {
        if x.is_empty() {
            return Ok(true);
        }
        match phi {
            Formula::Rel { .. } | Formula::Eq { .. } => atoms::literal_holds(self.m, x, phi),
            Formula::Dep {
                determiners,
                dependents,
                negated,
            } => Ok(!negated && atoms::dep_holds(self.m, x, determiners, dependents)?),
            Formula::Mvd { lhs, rhs, negated } => Ok(!negated && atoms::mvd_holds(x, lhs, rhs)?),
            Formula::Indep {
                cond,
                left,
                right,
                negated,
            } => Ok(!negated && atoms::indep_holds(x, cond, left, right)?),
            Formula::And(l, r) => Ok(self.sat(x, l)? && self.sat(x, r)?),
            Formula::Or(l, r) => self.or(x, l, r),
            Formula::Quant {
                quantifier,
                vars,
                mode,
                body,
            } => Ok(self.quant(x, quantifier, vars, mode, body)?.is_some()),
        }
    }

    /// `∃ Y ∪ Z = X` with `Y ⊨ l` and `Z ⊨ r`. When both sides are
    /// downward closed, disjoint splits suffice.
    fn or(&self, x: &Team, l: &Formula, r: &Formula) -> Result<bool> {
        if self.sat(x, l)? || self.sat(x, r)? {
            return Ok(true);
        }
        let rows: Vec<Vec<Element>> = x.rows().map(<[Element]>::to_vec).collect();
        let n = rows.len();
        if n >= 63 {
            return Err(Error::LimitExceeded(format!("splitting a team of {n} rows")));
        }
        let sub = |mask: u64| {
            x.with_rows(
                TupleSet(mask)
                    .iter()
                    .map(|i| rows[i].clone())
                    .collect(),
            )
        };
        let full = TupleSet::below(n);
        let disjoint = self.dc(l) && self.dc(r);
        let mut right: HashMap<u64, bool> = HashMap::new();
        for y in full.subsets() {
            if y == full || y.is_empty() {
                continue;
            }
            self.tick()?;
            if !self.sat(&sub(y.0), l)? {
                continue;
            }
            let rest = full.difference(y);
            let extras: Vec<TupleSet> = if disjoint {
                vec![TupleSet::EMPTY]
            } else {
                y.subsets().collect()
            };
            for t in extras {
                let z = rest.union(t);
                let ok = match right.get(&z.0) {
                    Some(&ok) => ok,
                    None => {
                        self.tick()?;
                        let ok = self.sat(&sub(z.0), r)?;
                        right.insert(z.0, ok);
                        ok
                    }
                };
                if ok {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn plan(&self, quantifier: &QuantifierRef, k: usize, body: &Formula) -> Result<Plan> {
        let n = self.m.size();
        let space = TupleSpace::new(n, k)?;
        let dc = self.dc(body);
        let minimal = self.config.minimal_witnesses && dc;
        let singletons = || (0..space.size()).map(TupleSet::singleton).collect::<Vec<_>>();
        let plan = match quantifier {
            QuantifierRef::Forall => Plan {
                space,
                choices: vec![space.full()],
                large_in: None,
                prune: dc,
            },
            QuantifierRef::Exists => {
                let choices = match self.config.existential {
                    ExistentialMode::Strict => singletons(),
                    ExistentialMode::Lax if minimal => singletons(),
                    ExistentialMode::Lax => space.all_sets()?.filter(|s| !s.is_empty()).collect(),
                };
                Plan {
                    space,
                    choices,
                    large_in: None,
                    prune: dc,
                }
            }
            QuantifierRef::Named(name) => {
                let q = self.registry.instantiate_arity(name, n, k)?;
                let corrected = self.config.largeness == Largeness::Corrected;
                let check = corrected && (!q.is_monotone() || self.config.check_largeness_for_monotone);
                let choices = if q.is_monotone() && !check && minimal {
                    q.minimal_sets()
                } else {
                    q.sets().to_vec()
                };
                Plan {
                    space,
                    choices,
                    large_in: check.then_some(q),
                    prune: dc,
                }
            }
        };
        Ok(plan)
    }

    /// Row-indexed witness sets for a quantifier node, or `None`.
    fn quant(
        &self,
        x: &Team,
        quantifier: &QuantifierRef,
        xs: &[Var],
        mode: &Mode,
        body: &Formula,
    ) -> Result<Option<Vec<TupleSet>>> {
        if x.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let plan = self.plan(quantifier, xs.len(), body)?;
        let rows: Vec<&[Element]> = x.rows().collect();
        if let QuantifierRef::Forall = quantifier {
            let full = vec![plan.space.full(); rows.len()];
            let ext = self.extend(x, xs, &plan.space, &full)?;
            return Ok(self.sat(&ext, body)?.then_some(full));
        }
        let class_of = self.classes(x, mode)?;
        let classes = class_of.iter().max().map_or(0, |c| c + 1);
        let mut chosen = vec![0usize; classes];
        self.search(x, &rows, &class_of, &plan, xs, body, &mut chosen, 0)
    }

    /// Groups rows by the values the witness may depend on; classes are
    /// numbered in the order of those values.
    fn classes(&self, x: &Team, mode: &Mode) -> Result<Vec<usize>> {
        let cols: Vec<usize> = match mode {
            Mode::Plain => (0..x.vars().len()).collect(),
            Mode::Slashed(ys) | Mode::Backslashed(ys) => {
                if let Some(y) = ys.iter().find(|y| x.column(y.as_str()).is_none()) {
                    return Err(Error::SlashOutsideTeam(y.to_string()));
                }
                let listed = |v: &Var| ys.contains(v);
                (0..x.vars().len())
                    .filter(|&c| listed(&x.vars()[c]) == matches!(mode, Mode::Backslashed(_)))
                    .collect()
            }
        };
        let keys: Vec<Vec<Element>> = x
            .rows()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        let index: BTreeMap<&Vec<Element>, usize> = keys
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        Ok(keys.iter().map(|k| index[k]).collect())
    }

    fn extend(&self, x: &Team, xs: &[Var], space: &TupleSpace, f: &[TupleSet]) -> Result<Team> {
        let total: usize = f.iter().map(|s| s.len()).sum();
        self.check_rows(total)?;
        let tuples = space.tuples();
        Ok(x.extend_rows(xs, |i, _| f[i].iter().map(|t| &tuples[t])))
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        x: &Team,
        rows: &[&[Element]],
        class_of: &[usize],
        plan: &Plan,
        xs: &[Var],
        body: &Formula,
        chosen: &mut Vec<usize>,
        next: usize,
    ) -> Result<Option<Vec<TupleSet>>> {
        if next == chosen.len() {
            self.tick()?;
            let f: Vec<TupleSet> = class_of.iter().map(|&c| plan.choices[chosen[c]]).collect();
            let ext = self.extend(x, xs, &plan.space, &f)?;
            if !self.sat(&ext, body)? {
                return Ok(None);
            }
            if let Some(q) = &plan.large_in {
                if !self.large(x, &f, q, xs, body, &plan.space)? {
                    return Ok(None);
                }
            }
            return Ok(Some(f));
        }
        for choice in 0..plan.choices.len() {
            chosen[next] = choice;
            if plan.prune && next + 1 < chosen.len() {
                self.tick()?;
                let part = x.filter(|r| {
                    let i = rows.binary_search(&r).unwrap_or(usize::MAX);
                    i != usize::MAX && class_of[i] <= next
                });
                let f: Vec<TupleSet> = part
                    .rows()
                    .map(|r| {
                        let i = rows.binary_search(&r).expect("row of the team");
                        plan.choices[chosen[class_of[i]]]
                    })
                    .collect();
                let ext = self.extend(&part, xs, &plan.space, &f)?;
                if !self.sat(&ext, body)? {
                    continue;
                }
            }
            if let Some(found) = self.search(x, rows, class_of, plan, xs, body, chosen, next + 1)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    /// Corrected largeness: no `F′ ≥ F` (over individual rows) satisfies the
    /// body while leaving `Q` somewhere.
    fn large(
        &self,
        x: &Team,
        f: &[TupleSet],
        q: &LocalQuantifier,
        xs: &[Var],
        body: &Formula,
        space: &TupleSpace,
    ) -> Result<bool> {
        let options: Vec<Vec<TupleSet>> = f
            .iter()
            .map(|&s| space.full().difference(s).subsets().collect())
            .collect();
        let mut idx = vec![0usize; f.len()];
        loop {
            let bigger: Vec<TupleSet> = f
                .iter()
                .zip(&idx)
                .zip(&options)
                .map(|((&s, &i), opts)| s.union(opts[i]))
                .collect();
            if bigger.iter().any(|&s| !q.contains(s)) {
                self.tick()?;
                let ext = self.extend(x, xs, space, &bigger)?;
                if self.sat(&ext, body)? {
                    return Ok(false);
                }
            }
            // odometer, last row fastest
            let mut pos = f.len();
            loop {
                if pos == 0 {
                    return Ok(true);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < options[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// `M, X ⊨ φ` with a fresh evaluator.
pub fn satisfies(
    m: &Structure,
    registry: &QuantifierRegistry,
    x: &Team,
    phi: &Formula,
    config: EvalConfig,
) -> Result<bool> {
    Evaluator::new(m, registry, config).satisfies(x, phi)
}

/// `M ⊨ σ` with a fresh evaluator.
pub fn sentence_truth(m: &Structure, registry: &QuantifierRegistry, sigma: &Formula, config: EvalConfig) -> Result<bool> {
    Evaluator::new(m, registry, config).sentence_truth(sigma)
}
