//! Helpers shared by the integration tests: small structures, exhaustive
//! team enumeration and formula generators.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use teamsem::eval::{satisfies, EvalConfig};
use teamsem::model::{vars, Element, Structure, Team, Var};
use teamsem::quantifiers::{QuantifierRegistry, TupleSet, TupleSpace};
use teamsem::syntax::{parse, Formula, Mode, QuantifierRef, Term};

pub fn el(i: usize) -> Element {
    Element::new(i)
}

pub fn team(order: &[&str], rows: &[&[usize]]) -> Team {
    Team::from_rows(&vars(order), rows.iter().map(|r| r.iter().map(|&i| el(i)).collect())).unwrap()
}

/// Every team over `names` with values below `n` and at most `max_rows` rows,
/// the empty team included.
pub fn all_teams(names: &[&str], n: usize, max_rows: usize) -> Vec<Team> {
    let vs = vars(names);
    let space = TupleSpace::new(n, names.len()).unwrap();
    space
        .all_sets()
        .unwrap()
        .filter(|s| s.len() <= max_rows)
        .map(|s| Team::from_rows(&vs, space.tuples_of(s)).unwrap())
        .collect()
}

/// The tuples of `r ⊆ M^k` as element vectors.
pub fn tuples(space: &TupleSpace, r: TupleSet) -> Vec<Vec<Element>> {
    space.tuples_of(r).into_iter().collect()
}

/// `M = {0,1,2}` with `R = {⟨0,0⟩} ∪ {0,1}×{1,2}`.
pub fn figure1() -> Structure {
    Structure::with_size(3)
        .with_named_relation("R", 2, &[&["0", "0"], &["0", "1"], &["0", "2"], &["1", "1"], &["1", "2"]])
        .unwrap()
}

pub fn holds(m: &Structure, reg: &QuantifierRegistry, x: &Team, text: &str) -> bool {
    satisfies(m, reg, x, &parse(text).unwrap(), EvalConfig::default()).unwrap()
}

pub fn sentence(m: &Structure, reg: &QuantifierRegistry, text: &str) -> bool {
    holds(m, reg, &Team::unit(), text)
}

/// The atoms of the flatness grammar over `{x, y}`.
pub fn flat_atoms() -> Vec<Formula> {
    ["P(x)", "!P(y)", "x=y", "!R(x,y)"].iter().map(|t| parse(t).unwrap()).collect()
}

/// Every formula of depth at most `depth` built from `atoms` with `&`, `|`
/// and the given quantifiers binding `x` or `y`.
pub fn generate(atoms: &[Formula], quantifiers: &[QuantifierRef], depth: usize) -> Vec<Formula> {
    let mut levels: Vec<Vec<Formula>> = vec![atoms.to_vec()];
    for d in 1..=depth {
        let below: Vec<&Formula> = levels.iter().flatten().collect();
        let top = &levels[d - 1];
        let mut next = Vec::new();
        for l in &below {
            for r in &below {
                if l.depth() == d - 1 || r.depth() == d - 1 {
                    next.push(Formula::and((*l).clone(), (*r).clone()));
                    next.push(Formula::or((*l).clone(), (*r).clone()));
                }
            }
        }
        for q in quantifiers {
            for x in ["x", "y"] {
                for body in top {
                    next.push(Formula::quant(q.clone(), vec![Var::from(x)], Mode::Plain, body.clone()));
                }
            }
        }
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

/// A random formula of the downward-closed fragment with free variables
/// among `free`. `depth` bounds the nesting.
pub fn random_dc_formula<R: Rng>(rng: &mut R, free: &[Var], depth: usize) -> Formula {
    let pick = |rng: &mut R, pool: &[Var]| pool.choose(rng).unwrap().clone();
    if depth == 0 || free.is_empty() || rng.gen_bool(0.25) {
        if free.is_empty() {
            return parse("#c=#c").unwrap();
        }
        let a = pick(rng, free);
        let b = pick(rng, free);
        let neg = rng.gen_bool(0.4);
        return match rng.gen_range(0..4) {
            0 => Formula::Rel {
                name: "P".into(),
                args: vec![Term::Var(a)],
                negated: neg,
            },
            1 => Formula::Rel {
                name: "R".into(),
                args: vec![Term::Var(a), Term::Var(b)],
                negated: neg,
            },
            2 => Formula::Eq {
                left: Term::Var(a),
                right: Term::Var(b),
                negated: neg,
            },
            _ => {
                let k = rng.gen_range(0..=free.len().min(2));
                let mut det: Vec<Var> = free.to_vec();
                det.shuffle(rng);
                det.truncate(k);
                Formula::Dep {
                    determiners: det.into_iter().map(Term::Var).collect(),
                    dependents: vec![Term::Var(b)],
                    negated: false,
                }
            }
        };
    }
    match rng.gen_range(0..3) {
        0 => Formula::and(random_dc_formula(rng, free, depth - 1), random_dc_formula(rng, free, depth - 1)),
        1 => Formula::or(random_dc_formula(rng, free, depth - 1), random_dc_formula(rng, free, depth - 1)),
        _ => {
            let names = ["x", "y", "z"];
            let bound = Var::from(*names.choose(rng).unwrap());
            let quantifier = match rng.gen_range(0..5) {
                0 | 1 => QuantifierRef::Exists,
                2 => QuantifierRef::Forall,
                3 => QuantifierRef::Named("exists_geq_2".into()),
                _ => QuantifierRef::Named("most_dom".into()),
            };
            let others: Vec<Var> = free.iter().filter(|f| **f != bound).cloned().collect();
            let mode = match rng.gen_range(0..3) {
                0 if !others.is_empty() => Mode::Slashed(vec![pick(rng, &others)]),
                1 if !others.is_empty() => Mode::Backslashed(vec![pick(rng, &others)]),
                _ => Mode::Plain,
            };
            let mut inner: Vec<Var> = free.to_vec();
            if !inner.contains(&bound) {
                inner.push(bound.clone());
            }
            Formula::quant(quantifier, vec![bound], mode, random_dc_formula(rng, &inner, depth - 1))
        }
    }
}

/// A structure of size `n` with random unary `P`, binary `R` and the
/// constant `c = 0`.
pub fn random_structure<R: Rng>(rng: &mut R, n: usize) -> Structure {
    let p: Vec<Vec<Element>> = (0..n).filter(|_| rng.gen_bool(0.5)).map(|i| vec![el(i)]).collect();
    let mut r = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(0.5) {
                r.push(vec![el(a), el(b)]);
            }
        }
    }
    Structure::with_size(n)
        .with_relation("P", 1, p)
        .unwrap()
        .with_relation("R", 2, r)
        .unwrap()
        .with_constant("c", el(0))
        .unwrap()
}

/// A random team over `names` with at most `max_rows` rows.
pub fn random_team<R: Rng>(rng: &mut R, names: &[&str], n: usize, max_rows: usize) -> Team {
    let rows = rng.gen_range(0..=max_rows);
    let rows: Vec<Vec<Element>> = (0..rows)
        .map(|_| (0..names.len()).map(|_| el(rng.gen_range(0..n))).collect())
        .collect();
    Team::from_rows(&vars(names), rows).unwrap()
}
