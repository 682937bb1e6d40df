//! Fixed judgments about small structures, run by `teamsem paper-suite`.
//! Every check is deterministic and the order of the list is the order of
//! the report.

use std::collections::BTreeSet;

use teamsem::deps::{
    armstrong_derives, bfh_derives, join_decomposition_check, semantic_implies, team_satisfies_fd,
    team_satisfies_indep, team_satisfies_mvd, Bounds, Dependency, Fd, IndepStatement, Mvd, Verdict,
};
use teamsem::eval::{satisfies, EvalConfig, Evaluator};
use teamsem::model::{vars, Assignment, Element, SetWitness, Structure, Team, Var};
use teamsem::quantifiers::{
    all_down_sets, branch_sher, hodges_lift, is_maximal_product, DownSet, LocalQuantifier, QuantifierRegistry,
    TupleSet, TupleSpace,
};
use teamsem::syntax::{
    backslash_to_fdep, free_variables, is_downward_closed_fragment, is_normal, parse, replace_fdep_with_mvd, Formula,
    Mode, QuantifierRef, Term, VarSet,
};
use teamsem::Result;

pub struct Check {
    pub tag: &'static str,
    pub name: &'static str,
    /// The judgment in formal notation.
    pub judgment: &'static str,
    pub run: fn() -> Result<bool>,
}

pub const TAGS: [&str; 7] = ["team", "syntax", "quant", "eval", "fig1", "mvd", "fd"];

fn el(i: usize) -> Element {
    Element::new(i)
}

fn set(names: &[&str]) -> VarSet {
    names.iter().map(|&n| Var::from(n)).collect()
}

fn team(order: &[&str], rows: &[&[usize]]) -> Result<Team> {
    Team::from_rows(&vars(order), rows.iter().map(|r| r.iter().map(|&i| el(i)).collect()))
}

/// Every team over `names` with values below `n` and at most `max_rows` rows.
fn all_teams(names: &[&str], n: usize, max_rows: usize) -> Result<Vec<Team>> {
    let vs = vars(names);
    let space = TupleSpace::new(n, names.len())?;
    space
        .all_sets()?
        .filter(|s| s.len() <= max_rows)
        .map(|s| Team::from_rows(&vs, space.tuples_of(s)))
        .collect()
}

/// `M = {0,1,2}` with `R = {⟨0,0⟩} ∪ ({0,1}×{1,2})`.
pub fn figure1() -> Result<Structure> {
    Structure::with_size(3).with_named_relation("R", 2, &[&["0", "0"], &["0", "1"], &["0", "2"], &["1", "1"], &["1", "2"]])
}

/// `S = ({0,1}×{0,1}) ∪ ({2}×{1,2})` on `{0,1,2}`.
fn s_relation() -> Vec<Vec<Element>> {
    [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (2, 2)]
        .iter()
        .map(|&(a, b)| vec![el(a), el(b)])
        .collect()
}

fn sentence(m: &Structure, reg: &QuantifierRegistry, text: &str) -> Result<bool> {
    satisfies(m, reg, &Team::unit(), &parse(text)?, EvalConfig::default())
}

fn mvd(l: &[&str], r: &[&str], u: &[&str]) -> Result<Mvd> {
    Mvd::new(l, r, u)
}

fn possible_values_at(a: usize) -> Result<bool> {
    let x = Team::from_relation(&s_relation(), &vars(&["x", "y"]))?;
    let pv = x.possible_values(&Assignment::from_pairs([("x", el(a))]), &vars(&["y"]))?;
    let want: BTreeSet<Vec<Element>> = match a {
        1 => [0, 1],
        _ => [1, 2],
    }
    .iter()
    .map(|&b| vec![el(b)])
    .collect();
    Ok(pv == want)
}

fn fig1_sher() -> Result<bool> {
    let mut reg = QuantifierRegistry::new();
    reg.register_sher("brS_e1_e", "exists_eq_1", "exists")?;
    sentence(&figure1()?, &reg, "Q[brS_e1_e] x y R(x,y)")
}

fn fig1_rectangles() -> Result<(TupleSpace, TupleSet)> {
    let m = figure1()?;
    let space = TupleSpace::new(3, 2)?;
    let r = space.set_of(m.relation("R").expect("defined above").tuples())?;
    Ok((TupleSpace::new(3, 1)?, r))
}

fn down_sets_pairs() -> Result<(TupleSpace, Vec<DownSet>)> {
    let space = TupleSpace::new(2, 2)?;
    Ok((TupleSpace::new(2, 1)?, all_down_sets(space)?))
}

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            tag: "team",
            name: "possible-values-at-1",
            judgment: "X = [S/x,y], s = {x↦1}: X^y_s = {0,1}",
            run: || possible_values_at(1),
        },
        Check {
            tag: "team",
            name: "possible-values-at-2",
            judgment: "X = [S/x,y], s′ = {x↦2}: X^y_s′ = {1,2}",
            run: || possible_values_at(2),
        },
        Check {
            tag: "team",
            name: "disjoint-join-is-product",
            judgment: "[{0,1}/x] ⋈ [{0,1,2}/y] = {0,1}×{0,1,2}",
            run: || {
                let j = team(&["x"], &[&[0], &[1]])?.natural_join(&team(&["y"], &[&[0], &[1], &[2]])?);
                let product = Team::full(&vars(&["x", "y"]), 3)?.filter(|r| r[0].index() < 2);
                Ok(j == product && j.len() == 6)
            },
        },
        Check {
            tag: "team",
            name: "relation-as-team",
            judgment: "R = {⟨0,0⟩} ∪ ({0,1}×{1,2}) ↔ [R/x,y] with 5 rows",
            run: || {
                let m = figure1()?;
                let r = m.relation("R").expect("defined above").tuples();
                let t = Team::from_relation(r, &vars(&["x", "y"]))?;
                Ok(t.len() == 5 && &t.to_relation(&vars(&["x", "y"]))? == r)
            },
        },
        Check {
            tag: "team",
            name: "empty-witness-empties-team",
            judgment: "F(s) = ∅ for all s ⟹ X[F/x] = ∅",
            run: || {
                let x = team(&["y"], &[&[0], &[1]])?;
                let f = SetWitness::from_fn(&x, 1, |_| BTreeSet::new())?;
                Ok(x.extend_setwitness(&f, &vars(&["x"]))?.is_empty())
            },
        },
        Check {
            tag: "syntax",
            name: "signaling-parse",
            judgment: "∀x∃y/x x=y parses with y slashed by x",
            run: || {
                let want = Formula::quant(
                    QuantifierRef::Forall,
                    vars(&["x"]),
                    Mode::Plain,
                    Formula::quant(
                        QuantifierRef::Exists,
                        vars(&["y"]),
                        Mode::Slashed(vars(&["x"])),
                        Formula::Eq {
                            left: Term::var("x"),
                            right: Term::var("y"),
                            negated: false,
                        },
                    ),
                );
                Ok(parse("forall x exists y/(x) x=y")? == want)
            },
        },
        Check {
            tag: "syntax",
            name: "free-variables-of-dep",
            judgment: "FV(=(x,y)) = {x,y}",
            run: || Ok(free_variables(&parse("dep(x;y)")?) == set(&["x", "y"])),
        },
        Check {
            tag: "syntax",
            name: "dependence-logic-is-downward-closed",
            judgment: "∀x∃y(=(x,y) ∧ x=y) lies in the downward-closed fragment",
            run: || {
                let reg = QuantifierRegistry::new();
                is_downward_closed_fragment(&parse("forall x exists y (dep(x;y) & x=y)")?, &reg)
            },
        },
        Check {
            tag: "syntax",
            name: "normal-form-rewrite",
            judgment: "∃y(=(x,y) ∧ R(x,y)) ↦ ∃y(↠(x;y) ∧ R(x,y))",
            run: || {
                let phi = parse("exists y (dep(x;y) & R(x,y))")?;
                Ok(is_normal(&phi) && replace_fdep_with_mvd(&phi)? == parse("exists y (mvd(x;y) & R(x,y))")?)
            },
        },
        Check {
            tag: "syntax",
            name: "backslash-rewrite",
            judgment: "∃x\\y R(x,y) ↦ ∃x(=(y,x) ∧ R(x,y))",
            run: || Ok(backslash_to_fdep(&parse("exists x\\(y) R(x,y)")?) == parse("exists x (dep(y;x) & R(x,y))")?),
        },
        Check {
            tag: "quant",
            name: "maximal-product",
            judgment: "{0}×{0,1,2} is a maximal product in R",
            run: || {
                let (m, r) = fig1_rectangles()?;
                Ok(is_maximal_product(TupleSet(0b001), TupleSet(0b111), r, &m, &m))
            },
        },
        Check {
            tag: "quant",
            name: "non-maximal-product",
            judgment: "{0}×{1,2} is not maximal in R",
            run: || {
                let (m, r) = fig1_rectangles()?;
                Ok(!is_maximal_product(TupleSet(0b001), TupleSet(0b110), r, &m, &m))
            },
        },
        Check {
            tag: "quant",
            name: "relation-in-sher-branching",
            judgment: "R ∈ Br^S(∃^{=1},∃) on {0,1,2}",
            run: || {
                let reg = QuantifierRegistry::new();
                let q = branch_sher(
                    &*reg.instantiate_arity("exists_eq_1", 3, 1)?,
                    &*reg.instantiate_arity("exists", 3, 1)?,
                )?;
                let (_, r) = fig1_rectangles()?;
                Ok(q.contains(r))
            },
        },
        Check {
            tag: "quant",
            name: "universal-lift",
            judgment: "ℒ(∀)(𝒳) = {Y | Y[M] ∈ 𝒳} for every down set at |M| = 2",
            run: || {
                let (outer, downs) = down_sets_pairs()?;
                let forall = QuantifierRegistry::new().instantiate_arity("forall", 2, 1)?;
                for x in &downs {
                    let lift = hodges_lift(&forall, x)?;
                    for y in outer.all_sets()? {
                        if lift.contains(y) != x.contains(y.cartesian(outer.full(), 2)) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            },
        },
        Check {
            tag: "quant",
            name: "lift-of-empty-family",
            judgment: "Q_ℋ(∅) = ∅",
            run: || {
                let reg = QuantifierRegistry::new();
                let empty = DownSet::empty(TupleSpace::new(2, 2)?);
                for name in ["exists", "forall", "exists_eq_1", "most_dom"] {
                    if !hodges_lift(&*reg.instantiate_arity(name, 2, 1)?, &empty)?.is_empty() {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        Check {
            tag: "quant",
            name: "lift-with-empty-set",
            judgment: "∅ ∈ Q, 𝒳 ≠ ∅ ⟹ Q_ℋ(𝒳) = 𝒫(M^n)",
            run: || {
                let (outer, downs) = down_sets_pairs()?;
                let subsets: Vec<TupleSet> = outer.all_sets()?.collect();
                for pick in 0u64..16 {
                    if pick & 1 == 0 {
                        continue;
                    }
                    let q = LocalQuantifier::new("q", 1, 2, TupleSet(pick).iter().map(|i| subsets[i]))?;
                    for x in downs.iter().filter(|x| !x.is_empty()) {
                        if hodges_lift(&q, x)?.len() != subsets.len() {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            },
        },
        Check {
            tag: "eval",
            name: "signaling-fails",
            judgment: "{0,1} ⊭ ∀x∃y/x x=y",
            run: || Ok(!sentence(&Structure::with_size(2), &QuantifierRegistry::new(), "forall x exists y/(x) x=y")?),
        },
        Check {
            tag: "eval",
            name: "signaling-through-copy",
            judgment: "{0,1} ⊨ ∀x∃z∃y/x x=y",
            run: || sentence(&Structure::with_size(2), &QuantifierRegistry::new(), "forall x exists z exists y/(x) x=y"),
        },
        Check {
            tag: "eval",
            name: "no-excluded-middle",
            judgment: "full X: X ⊭ =(x,y), X ⊭ ¬=(x,y); {0,1} ⊭ ∀x∀y(=(x,y) ∨ ¬=(x,y))",
            run: || {
                let m = Structure::with_size(2);
                let reg = QuantifierRegistry::new();
                let full = Team::full(&vars(&["x", "y"]), 2)?;
                let cfg = EvalConfig::default();
                Ok(!satisfies(&m, &reg, &full, &parse("dep(x;y)")?, cfg)?
                    && !satisfies(&m, &reg, &full, &parse("!dep(x;y)")?, cfg)?
                    && !sentence(&m, &reg, "forall x, y (dep(x;y) | !dep(x;y))")?)
            },
        },
        Check {
            tag: "eval",
            name: "empty-team",
            judgment: "M, ∅ ⊨ φ",
            run: || {
                let m = figure1()?;
                let reg = QuantifierRegistry::new();
                for text in [
                    "R(x,y) & !R(x,y)",
                    "!dep(;x) & x=y",
                    "forall z exists w/(z) (w=z & !w=z)",
                    "Q[exists_eq_1] z !x=x",
                    "ind(;x;y) & mvd(x;y)",
                ] {
                    let phi = parse(text)?;
                    let x = Team::empty(free_variables(&phi))?;
                    if !satisfies(&m, &reg, &x, &phi, EvalConfig::default())? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        Check {
            tag: "eval",
            name: "counting-on-full-relation",
            judgment: "({0,1,2}, M²) ⊨ ∀x∃^{≥3}y\\ε R(x,y)",
            run: || {
                let m = Structure::with_size(3).with_relation("R", 2, Structure::with_size(3).tuples(2))?;
                sentence(&m, &QuantifierRegistry::new(), "forall x Q[exists_geq_3] y\\() R(x,y)")
            },
        },
        Check {
            tag: "eval",
            name: "counting-on-s",
            judgment: "({0,1,2}, S) ⊭ ∀x∃^{≥2}y\\ε R(x,y)",
            run: || {
                let m = Structure::with_size(3).with_relation("R", 2, s_relation())?;
                Ok(!sentence(&m, &QuantifierRegistry::new(), "forall x Q[exists_geq_2] y\\() R(x,y)")?)
            },
        },
        Check {
            tag: "eval",
            name: "trivial-mvd-value",
            judgment: "⟦↠(;x)⟧ = every team over {x}",
            run: || {
                let m = Structure::with_size(2);
                let reg = QuantifierRegistry::new();
                let v = Evaluator::new(&m, &reg, EvalConfig::default()).semantic_value(&parse("mvd(;x)")?)?;
                Ok(v.len() == 4)
            },
        },
        Check {
            tag: "eval",
            name: "exchanged-prefix-witness",
            judgment: "∃y∃^{=1}x/y R(x,y): the outer witness exists",
            run: || {
                let m = figure1()?;
                let reg = QuantifierRegistry::new();
                let eval = Evaluator::new(&m, &reg, EvalConfig::default());
                let phi = parse("exists y Q[exists_eq_1] x/(y) R(x,y)")?;
                Ok(eval.find_witness(&Team::unit(), &phi)?.is_some())
            },
        },
        Check {
            tag: "fig1",
            name: "linear-prefix-fails",
            judgment: "(M,R) ⊭ ∃^{=1}x∃y/x R(x,y)",
            run: || Ok(!sentence(&figure1()?, &QuantifierRegistry::new(), "Q[exists_eq_1] x exists y/(x) R(x,y)")?),
        },
        Check {
            tag: "fig1",
            name: "exchanged-prefix-holds",
            judgment: "(M,R) ⊨ ∃y∃^{=1}x/y R(x,y)",
            run: || sentence(&figure1()?, &QuantifierRegistry::new(), "exists y Q[exists_eq_1] x/(y) R(x,y)"),
        },
        Check {
            tag: "fig1",
            name: "sher-branching-holds",
            judgment: "(M,R) ⊨ Br^S(∃^{=1},∃)xy R(x,y)",
            run: fig1_sher,
        },
        Check {
            tag: "mvd",
            name: "diagonal-is-not-independent",
            judgment: "M, {s,s′} ⊭ ↠(;x) for s = (0,0), s′ = (1,1)",
            run: || {
                let x = team(&["x", "y"], &[&[0, 0], &[1, 1]])?;
                Ok(!team_satisfies_mvd(&x, &mvd(&[], &["x"], &["x", "y"])?)?)
            },
        },
        Check {
            tag: "mvd",
            name: "restriction-context",
            judgment: "M, X↾x ⊨ ↠(;x)",
            run: || {
                let x = team(&["x", "y"], &[&[0, 0], &[1, 1]])?.restrict(&vars(&["x"]))?;
                team_satisfies_mvd(&x, &mvd(&[], &["x"], &["x"])?)
            },
        },
        Check {
            tag: "mvd",
            name: "chained-law",
            judgment: "↠(x;y), ↠(x,y;z) ⊨ ↠(x;y,z) on all teams with ≤ 4 rows, |M| = 2",
            run: || {
                for u in [&["x", "y", "z"][..], &["x", "y", "z", "w"][..]] {
                    let a = mvd(&["x"], &["y"], u)?;
                    let b = mvd(&["x", "y"], &["z"], u)?;
                    let c = mvd(&["x"], &["y", "z"], u)?;
                    for t in all_teams(u, 2, 4)? {
                        if team_satisfies_mvd(&t, &a)? && team_satisfies_mvd(&t, &b)? && !team_satisfies_mvd(&t, &c)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            },
        },
        Check {
            tag: "mvd",
            name: "mvd-is-independence",
            judgment: "X ⊨ ↠(x̄;ȳ) iff X ⊨ ȳ ⊥_x̄ z̄, all teams with ≤ 3 rows, |M| = 2",
            run: || {
                let u = ["x", "y", "z"];
                let subsets: Vec<Vec<&str>> = (0..8)
                    .map(|m: usize| u.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| *v).collect())
                    .collect();
                for t in all_teams(&u, 2, 3)? {
                    for l in &subsets {
                        for r in &subsets {
                            let d = mvd(l, r, &u)?;
                            let rest: Vec<&str> = u.iter().copied().filter(|v| !l.contains(v) && !r.contains(v)).collect();
                            let ind = IndepStatement::new(l, r, &rest);
                            if team_satisfies_mvd(&t, &d)? != team_satisfies_indep(&t, &ind)? {
                                return Ok(false);
                            }
                        }
                    }
                }
                Ok(true)
            },
        },
        Check {
            tag: "mvd",
            name: "product-team-splits",
            judgment: "X = Y ⊗ Z ⟹ X ⊨ ↠(;vars(Y)) and X = X↾vars(Y) ⋈ X↾vars(Z)",
            run: || {
                let y = team(&["x"], &[&[0], &[2]])?;
                let z = team(&["y", "z"], &[&[0, 1], &[1, 1], &[2, 0]])?;
                let x = y.natural_join(&z);
                Ok(team_satisfies_mvd(&x, &mvd(&[], &["x"], &["x", "y", "z"])?)?
                    && join_decomposition_check(&x, &set(&[]), &set(&["x"]))?)
            },
        },
        Check {
            tag: "mvd",
            name: "complementation",
            judgment: "U = {x,y,z}: {x↠y} ⊢ x↠z",
            run: || {
                let u = ["x", "y", "z"];
                Ok(bfh_derives(&[mvd(&["x"], &["y"], &u)?], &mvd(&["x"], &["z"], &u)?, &set(&u))?.derivable)
            },
        },
        Check {
            tag: "mvd",
            name: "chained-derivation",
            judgment: "U = {x,y,z}: {x↠y, xy↠z} ⊢ x↠yz",
            run: || {
                let u = ["x", "y", "z"];
                let sigma = [mvd(&["x"], &["y"], &u)?, mvd(&["x", "y"], &["z"], &u)?];
                Ok(bfh_derives(&sigma, &mvd(&["x"], &["y", "z"], &u)?, &set(&u))?.derivable)
            },
        },
        Check {
            tag: "mvd",
            name: "no-splitting",
            judgment: "U = {x,y,z}: {x↠yz} ⊬ x↠y, with a countermodel",
            run: || {
                let u = ["x", "y", "z"];
                let premise = mvd(&["x"], &["y", "z"], &u)?;
                let goal = mvd(&["x"], &["y"], &u)?;
                let derived = bfh_derives(std::slice::from_ref(&premise), &goal, &set(&u))?.derivable;
                let verdict = semantic_implies(&[Dependency::Mvd(premise)], &Dependency::Mvd(goal), &set(&u), Bounds::new(2, 4))?;
                Ok(!derived && matches!(verdict, Verdict::Countermodel(_)))
            },
        },
        Check {
            tag: "mvd",
            name: "trivial-in-small-universe",
            judgment: "U = {x}: ∅ ⊨ ↠(;x)",
            run: || {
                let goal = Dependency::Mvd(mvd(&[], &["x"], &["x"])?);
                Ok(semantic_implies(&[], &goal, &set(&["x"]), Bounds::new(3, 3))?.is_valid())
            },
        },
        Check {
            tag: "fd",
            name: "transitivity",
            judgment: "{x→y, y→z} ⊢ x→z",
            run: || {
                let sigma = [Fd::new(&["x"], &["y"]), Fd::new(&["y"], &["z"])];
                Ok(armstrong_derives(&sigma, &Fd::new(&["x"], &["z"])).derivable)
            },
        },
        Check {
            tag: "fd",
            name: "reflexivity",
            judgment: "⊢ xy→x",
            run: || Ok(armstrong_derives(&[], &Fd::new(&["x", "y"], &["x"])).derivable),
        },
        Check {
            tag: "fd",
            name: "reflexivity-holds-everywhere",
            judgment: "ȳ ⊆ x̄ ⟹ X ⊨ =(x̄,ȳ) for every X",
            run: || {
                for t in all_teams(&["x", "y"], 3, 4)? {
                    if !team_satisfies_fd(&t, &Fd::new(&["x", "y"], &["x"]))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
    ]
}
