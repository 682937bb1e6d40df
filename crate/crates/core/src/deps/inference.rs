use std::collections::VecDeque;
use std::fmt;

use super::{Fd, Mvd};
use crate::error::{Error, Result};
use crate::model::Var;
use crate::syntax::VarSet;

/// Largest universe `bfh_derives` saturates over.
pub const MAX_BFH_UNIVERSE: usize = 8;

/// One line of a derivation: a statement, the rule producing it, and the
/// lines it was obtained from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub statement: String,
    pub rule: &'static str,
    pub premises: Vec<usize>,
}

/// Outcome of a rule-based derivation attempt. When `derivable` holds,
/// `steps` ends in the goal and every premise index points to an earlier
/// step (counting from 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub derivable: bool,
    pub steps: Vec<Step>,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, "({}) {}  [{}", i + 1, s.statement, s.rule)?;
            for (j, p) in s.premises.iter().enumerate() {
                write!(f, "{}({p})", if j == 0 { " " } else { ", " })?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

struct Trace(Vec<Step>);

impl Trace {
    fn push(&mut self, statement: String, rule: &'static str, premises: Vec<usize>) -> usize {
        self.0.push(Step {
            statement,
            rule,
            premises,
        });
        self.0.len()
    }
}

fn fd_text(l: &VarSet, r: &VarSet) -> String {
    Fd {
        lhs: l.clone(),
        rhs: r.clone(),
    }
    .to_string()
}

/// Decides `Σ ⊢ goal` for functional dependencies by attribute closure. The
/// trace uses reflexivity, transitivity, and the derived union and
/// decomposition rules.
pub fn armstrong_derives(sigma: &[Fd], goal: &Fd) -> Derivation {
    let start = goal.lhs.clone();
    let mut closure = start.clone();
    let mut trace = Trace(Vec::new());
    let mut current = trace.push(fd_text(&start, &closure), "reflexivity", vec![]);
    let mut used = vec![false; sigma.len()];
    loop {
        let next = sigma
            .iter()
            .enumerate()
            .find(|(i, fd)| !used[*i] && fd.lhs.is_subset(&closure) && !fd.rhs.is_subset(&closure));
        let Some((i, fd)) = next else { break };
        used[i] = true;
        let a = trace.push(fd_text(&start, &fd.lhs), "decomposition", vec![current]);
        let b = trace.push(fd.to_string(), "given", vec![]);
        let c = trace.push(fd_text(&start, &fd.rhs), "transitivity", vec![a, b]);
        closure.extend(fd.rhs.iter().cloned());
        current = trace.push(fd_text(&start, &closure), "union", vec![current, c]);
    }
    if !goal.rhs.is_subset(&closure) {
        return Derivation {
            derivable: false,
            steps: trace.0,
        };
    }
    if goal.rhs != closure {
        trace.push(goal.to_string(), "decomposition", vec![current]);
    }
    Derivation {
        derivable: true,
        steps: trace.0,
    }
}

#[derive(Debug, Clone, Copy)]
enum Rule {
    Given,
    Reflexivity,
    Complementation(usize),
    Augmentation(usize),
    Transitivity(usize, usize),
}

/// Decides `Σ ⊢ goal` for multivalued dependencies over `universe` by
/// saturating under complementation, reflexivity, augmentation and
/// transitivity. Every dependency must be relative to `universe`.
pub fn bfh_derives(sigma: &[Mvd], goal: &Mvd, universe: &VarSet) -> Result<Derivation> {
    let n = universe.len();
    if n > MAX_BFH_UNIVERSE {
        return Err(Error::LimitExceeded(format!(
            "a universe of {n} variables exceeds {MAX_BFH_UNIVERSE}"
        )));
    }
    let order: Vec<&Var> = universe.iter().collect();
    let mask = |s: &VarSet| -> usize {
        order
            .iter()
            .enumerate()
            .filter(|(_, v)| s.contains(**v))
            .map(|(i, _)| 1 << i)
            .sum()
    };
    for d in sigma.iter().chain([goal]) {
        if d.universe != *universe {
            return Err(Error::UniverseMismatch(format!(
                "`{d}` is relative to a different universe"
            )));
        }
    }
    let full = (1usize << n) - 1;
    let key = |x: usize, y: usize| (x << n) | y;
    let mut sat = Saturation {
        n,
        rule: vec![None; 1 << (2 * n)],
        by_lhs: vec![Vec::new(); 1 << n],
        by_rhs: vec![Vec::new(); 1 << n],
        queue: VecDeque::new(),
    };
    for d in sigma {
        sat.add(mask(&d.lhs), mask(&d.rhs), Rule::Given);
    }
    for x in 0..=full {
        for y in submasks(x) {
            sat.add(x, y, Rule::Reflexivity);
        }
    }
    while let Some((x, y)) = sat.queue.pop_front() {
        let from = key(x, y);
        let rest = full & !(x | y);
        for w in submasks(x) {
            sat.add(x, rest | w, Rule::Complementation(from));
        }
        for z in 0..=full {
            sat.add(x | z, y | z, Rule::Augmentation(from));
        }
        // (x, y) as the first premise, then as the second
        for z in sat.by_lhs[y].clone() {
            sat.add(x, z & !y, Rule::Transitivity(from, key(y, z)));
        }
        for w in sat.by_rhs[x].clone() {
            sat.add(w, y & !x, Rule::Transitivity(key(w, x), from));
        }
    }
    let rule = sat.rule;
    let target = key(mask(&goal.lhs), mask(&goal.rhs));
    if rule[target].is_none() {
        return Ok(Derivation {
            derivable: false,
            steps: Vec::new(),
        });
    }
    let text = |k: usize| -> String {
        let set = |m: usize| -> VarSet {
            order
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, v)| (*v).clone())
                .collect()
        };
        Mvd {
            lhs: set(k >> n),
            rhs: set(k & full),
            universe: universe.clone(),
        }
        .to_string()
    };
    let mut trace = Trace(Vec::new());
    let mut line: Vec<usize> = vec![0; rule.len()];
    emit(target, &rule, &mut line, &mut trace, &text);
    Ok(Derivation {
        derivable: true,
        steps: trace.0,
    })
}

fn emit(k: usize, rule: &[Option<Rule>], line: &mut [usize], trace: &mut Trace, text: &dyn Fn(usize) -> String) -> usize {
    if line[k] != 0 {
        return line[k];
    }
    let r = rule[k].expect("derived statement");
    let (name, premises) = match r {
        Rule::Given => ("given", vec![]),
        Rule::Reflexivity => ("reflexivity", vec![]),
        Rule::Complementation(a) => ("complementation", vec![emit(a, rule, line, trace, text)]),
        Rule::Augmentation(a) => ("augmentation", vec![emit(a, rule, line, trace, text)]),
        Rule::Transitivity(a, b) => {
            let pa = emit(a, rule, line, trace, text);
            let pb = emit(b, rule, line, trace, text);
            ("transitivity", vec![pa, pb])
        }
    };
    line[k] = trace.push(text(k), name, premises);
    line[k]
}

struct Saturation {
    n: usize,
    rule: Vec<Option<Rule>>,
    by_lhs: Vec<Vec<usize>>,
    by_rhs: Vec<Vec<usize>>,
    queue: VecDeque<(usize, usize)>,
}

impl Saturation {
    fn add(&mut self, x: usize, y: usize, r: Rule) {
        let k = (x << self.n) | y;
        if self.rule[k].is_none() {
            self.rule[k] = Some(r);
            self.by_lhs[x].push(y);
            self.by_rhs[y].push(x);
            self.queue.push_back((x, y));
        }
    }
}

/// Every `w ⊆ x`.
fn submasks(x: usize) -> impl Iterator<Item = usize> {
    let mut next = Some(x);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & x) };
        Some(cur)
    })
}
