use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};
use serde_json::json;
use teamsem::deps::{
    armstrong_derives, bfh_derives, join_decomposition_check, semantic_implies, Bounds, Dependency, DependencyFile,
    Derivation, Fd, Mvd, Verdict,
};
use teamsem::eval::{EvalConfig, Evaluator, ExistentialMode, Largeness, Limits};
use teamsem::model::{Element, SetWitness, Structure, StructureFile, Team, TeamFile, Var};
use teamsem::quantifiers::{branch, branch_sher, product, LocalQuantifier, QuantifierRegistry, TupleSpace};
use teamsem::syntax::{free_variables, is_downward_closed_fragment, parse_with, Formula};
use teamsem::Error;

use crate::args::{
    EvalArgs, Global, ImplyArgs, JoinArgs, LargenessArg, Method, ModeArg, PairArgs, QuantCommand, SemvalueArgs,
    SuiteArgs,
};
use crate::suite;

/// `Ok(true)` and `Ok(false)` become exit codes 0 and 1.
pub type Outcome = anyhow::Result<bool>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_structure(path: &Path) -> anyhow::Result<Structure> {
    let file = StructureFile::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    file.build().with_context(|| format!("in {}", path.display()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Member {
    Name(String),
    Tuple(Vec<String>),
}

/// `{"name":"q","arity":1,"sets":[["0"],["0","1"]]}`. For arity above one
/// each member of a set is a list of element names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantifierFile {
    pub name: String,
    pub arity: usize,
    pub sets: Vec<Vec<Member>>,
}

impl QuantifierFile {
    pub fn build(&self, m: &Structure) -> anyhow::Result<LocalQuantifier> {
        let mut sets = Vec::new();
        for s in &self.sets {
            let mut tuples = BTreeSet::new();
            for member in s {
                let names = match member {
                    Member::Name(n) => std::slice::from_ref(n),
                    Member::Tuple(t) => t.as_slice(),
                };
                if names.len() != self.arity {
                    bail!("quantifier `{}`: member {names:?} does not have arity {}", self.name, self.arity);
                }
                tuples.insert(names.iter().map(|n| m.element(n)).collect::<Result<Vec<_>, _>>()?);
            }
            sets.push(tuples);
        }
        Ok(LocalQuantifier::from_tuples(&self.name, self.arity, m.size(), &sets)?)
    }

    pub fn describe(q: &LocalQuantifier, m: &Structure) -> QuantifierFile {
        let sets = q
            .tuple_sets()
            .iter()
            .map(|s| {
                s.iter()
                    .map(|t| {
                        let names: Vec<String> = t.iter().map(|&a| m.name_of(a).to_string()).collect();
                        if q.arity() == 1 {
                            Member::Name(names[0].clone())
                        } else {
                            Member::Tuple(names)
                        }
                    })
                    .collect()
            })
            .collect();
        QuantifierFile {
            name: q.name().to_string(),
            arity: q.arity(),
            sets,
        }
    }
}

fn registry(global: &Global, m: &Structure) -> anyhow::Result<QuantifierRegistry> {
    let mut reg = QuantifierRegistry::new();
    for path in &global.quantifiers {
        let file: QuantifierFile =
            serde_json::from_str(&read(path)?).with_context(|| format!("in {}", path.display()))?;
        let q = file.build(m).with_context(|| format!("in {}", path.display()))?;
        reg.register_local(&file.name, q)?;
    }
    for def in &global.defines {
        let bad = || anyhow!("bad definition `{def}`; expected NAME=branch(Q1,Q2), sher(Q1,Q2) or product(Q1,Q2)");
        let (name, rest) = def.split_once('=').ok_or_else(bad)?;
        let (kind, args) = rest.trim().split_once('(').ok_or_else(bad)?;
        let (q1, q2) = args.strip_suffix(')').and_then(|a| a.split_once(',')).ok_or_else(bad)?;
        let (name, q1, q2) = (name.trim(), q1.trim(), q2.trim());
        match kind.trim() {
            "branch" => reg.register_branch(name, q1, q2)?,
            "sher" => reg.register_sher(name, q1, q2)?,
            "product" => reg.register_product(name, q1, q2)?,
            _ => return Err(bad()),
        }
    }
    Ok(reg)
}

fn limits(global: &Global) -> anyhow::Result<Limits> {
    let mut limits = Limits::default();
    if let Some(spec) = &global.limits {
        limits = limits.parse_overrides(spec)?;
    }
    if let Some(n) = global.max_rows {
        limits.max_rows = n;
    }
    if let Some(n) = global.max_domain {
        limits.max_domain = n;
    }
    Ok(limits)
}

fn config(global: &Global) -> anyhow::Result<EvalConfig> {
    Ok(EvalConfig {
        existential: match global.mode {
            ModeArg::Strict => ExistentialMode::Strict,
            ModeArg::Lax => ExistentialMode::Lax,
        },
        largeness: match global.largeness {
            LargenessArg::Corrected => Largeness::Corrected,
            LargenessArg::Literal => Largeness::Literal,
        },
        limits: limits(global)?,
        ..EvalConfig::default()
    })
}

fn check_domain(m: &Structure, limits: &Limits) -> anyhow::Result<()> {
    if m.size() > limits.max_domain {
        return Err(Error::LimitExceeded(format!(
            "domain of size {} exceeds max_domain={}",
            m.size(),
            limits.max_domain
        ))
        .into());
    }
    Ok(())
}

/// Parses `text`, pointing at the offending position on failure.
pub fn parse_formula(text: &str, reg: &QuantifierRegistry) -> anyhow::Result<Formula> {
    parse_with(text, reg).map_err(|e| match &e {
        Error::Parse(p) => {
            let column = text.get(..p.position).map_or(p.position, |s| s.chars().count());
            anyhow!("{e}\n  {text}\n  {}^", " ".repeat(column))
        }
        _ => e.into(),
    })
}

/// Rows of a team as a small table, one row per line.
pub fn render_team(team: &Team, m: &Structure) -> String {
    let mut out = String::new();
    if team.vars().is_empty() {
        out.push_str(if team.is_empty() { "∅\n" } else { "{ε}\n" });
        return out;
    }
    let names: Vec<&str> = team.vars().iter().map(Var::as_str).collect();
    let _ = writeln!(out, "{}", names.join("\t"));
    for row in team.rows() {
        let values: Vec<&str> = row.iter().map(|&a| m.name_of(a)).collect();
        let _ = writeln!(out, "{}", values.join("\t"));
    }
    if team.is_empty() {
        out.push_str("(no rows)\n");
    }
    out
}

fn render_set(tuples: &BTreeSet<Vec<Element>>, m: &Structure) -> String {
    let parts: Vec<String> = tuples
        .iter()
        .map(|t| {
            let names: Vec<&str> = t.iter().map(|&a| m.name_of(a)).collect();
            if names.len() == 1 {
                names[0].to_string()
            } else {
                format!("({})", names.join(","))
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn witness_json(w: &SetWitness, m: &Structure) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = w
        .iter()
        .map(|(s, set)| {
            let assignment: serde_json::Map<String, serde_json::Value> =
                s.iter().map(|(v, a)| (v.to_string(), json!(m.name_of(a)))).collect();
            let values: Vec<Vec<&str>> = set.iter().map(|t| t.iter().map(|&a| m.name_of(a)).collect()).collect();
            json!({"assignment": assignment, "values": values})
        })
        .collect();
    json!(entries)
}

pub fn eval(global: &Global, args: &EvalArgs) -> Outcome {
    let m = load_structure(&args.structure)?;
    let cfg = config(global)?;
    check_domain(&m, &cfg.limits)?;
    let reg = registry(global, &m)?;
    let phi = parse_formula(&args.formula, &reg)?;
    let team = if let Some(path) = &args.team.team {
        TeamFile::from_json(&read(path)?)?.build(&m).with_context(|| format!("in {}", path.display()))?
    } else if args.team.empty_team {
        Team::empty(free_variables(&phi))?
    } else {
        Team::unit()
    };
    let evaluator = Evaluator::new(&m, &reg, cfg);
    let verdict = evaluator.satisfies(&team, &phi)?;
    let witness = if args.witness && verdict && matches!(phi, Formula::Quant { .. }) {
        evaluator.find_witness(&team, &phi)?
    } else {
        None
    };
    if global.json {
        let report = json!({
            "verdict": verdict,
            "formula": phi.to_string(),
            "mode": cfg.existential.to_string(),
            "largeness": cfg.largeness.to_string(),
            "team": TeamFile::describe(&team, &m),
            "witness": witness.as_ref().map(|w| witness_json(w, &m)),
        });
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{}", if verdict { "satisfied" } else { "not satisfied" });
        if let Some(w) = &witness {
            println!("witness:");
            for (s, set) in w.iter() {
                let parts: Vec<String> = s.iter().map(|(v, a)| format!("{v}={}", m.name_of(a))).collect();
                let at = if parts.is_empty() { "ε".to_string() } else { parts.join(", ") };
                println!("  {at} ↦ {}", render_set(set, &m));
            }
        }
    }
    Ok(verdict)
}

fn fds_only(deps: &[Dependency]) -> anyhow::Result<Vec<Fd>> {
    deps.iter()
        .map(|d| match d {
            Dependency::Fd(f) => Ok(f.clone()),
            other => Err(anyhow!("--method armstrong takes functional dependencies only, found `{other}`")),
        })
        .collect()
}

fn mvds_only(deps: &[Dependency]) -> anyhow::Result<Vec<Mvd>> {
    deps.iter()
        .map(|d| match d {
            Dependency::Mvd(f) => Ok(f.clone()),
            other => Err(anyhow!("--method bfh takes multivalued dependencies only, found `{other}`")),
        })
        .collect()
}

fn print_derivation(global: &Global, method: &str, d: &Derivation, trace: bool) -> anyhow::Result<()> {
    if global.json {
        let steps: Vec<serde_json::Value> = d
            .steps
            .iter()
            .map(|s| json!({"statement": s.statement, "rule": s.rule, "premises": s.premises}))
            .collect();
        let report = json!({"method": method, "verdict": d.derivable, "steps": steps});
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{}", if d.derivable { "derivable" } else { "not derivable" });
        if trace && d.derivable {
            print!("{d}");
        }
    }
    Ok(())
}

pub fn imply(global: &Global, args: &ImplyArgs) -> Outcome {
    let file = DependencyFile::from_json(&read(&args.deps)?).with_context(|| format!("in {}", args.deps.display()))?;
    let universe = file.universe();
    let premises = file.dependencies()?;
    let goal = Dependency::parse(&args.goal, &universe)?;
    match args.method {
        Method::Armstrong => {
            let sigma = fds_only(&premises)?;
            let goal = fds_only(std::slice::from_ref(&goal))?.remove(0);
            let d = armstrong_derives(&sigma, &goal);
            print_derivation(global, "armstrong", &d, args.trace)?;
            Ok(d.derivable)
        }
        Method::Bfh => {
            let sigma = mvds_only(&premises)?;
            let goal = mvds_only(std::slice::from_ref(&goal))?.remove(0);
            let d = bfh_derives(&sigma, &goal, &universe)?;
            print_derivation(global, "bfh", &d, args.trace)?;
            Ok(d.derivable)
        }
        Method::Semantic => {
            let verdict = semantic_implies(&premises, &goal, &universe, Bounds::new(args.domain, args.rows))?;
            let m = Structure::with_size(args.domain);
            if global.json {
                let report = match &verdict {
                    Verdict::ValidUpToBounds { teams_checked } => json!({
                        "method": "semantic", "verdict": true, "domain": args.domain, "rows": args.rows,
                        "teams_checked": teams_checked,
                    }),
                    Verdict::Countermodel(t) => json!({
                        "method": "semantic", "verdict": false, "domain": args.domain, "rows": args.rows,
                        "countermodel": TeamFile::describe(t, &m),
                    }),
                };
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                match &verdict {
                    Verdict::ValidUpToBounds { teams_checked } => println!(
                        "valid up to bounds (domain {}, at most {} rows, {teams_checked} teams checked)",
                        args.domain, args.rows
                    ),
                    Verdict::Countermodel(t) => {
                        println!("countermodel:");
                        print!("{}", render_team(t, &m));
                    }
                }
            }
            Ok(verdict.is_valid())
        }
    }
}

pub fn semvalue(global: &Global, args: &SemvalueArgs) -> Outcome {
    let m = load_structure(&args.structure)?;
    let cfg = config(global)?;
    check_domain(&m, &cfg.limits)?;
    let reg = registry(global, &m)?;
    let phi = parse_formula(&args.formula, &reg)?;
    let value = Evaluator::new(&m, &reg, cfg).semantic_value(&phi)?;
    let files: Vec<TeamFile> = value.teams().iter().map(|t| TeamFile::describe(t, &m)).collect();
    let text = serde_json::to_string_pretty(&files)?;
    match &args.out {
        Some(path) => {
            fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?;
            if global.json {
                println!("{}", json!({"count": files.len(), "out": path.display().to_string()}));
            } else {
                println!("{} teams written to {}", files.len(), path.display());
            }
        }
        None if global.json => println!("{text}"),
        None => {
            println!("{} teams", files.len());
            for t in value.teams() {
                println!();
                print!("{}", render_team(t, &m));
            }
        }
    }
    Ok(true)
}

pub fn paper_suite(global: &Global, args: &SuiteArgs) -> Outcome {
    let checks: Vec<suite::Check> = suite::checks()
        .into_iter()
        .filter(|c| args.filter.as_deref().is_none_or(|f| c.tag == f))
        .collect();
    if checks.is_empty() {
        bail!(
            "no check has tag `{}`; tags are {}",
            args.filter.as_deref().unwrap_or_default(),
            suite::TAGS.join(", ")
        );
    }
    let mut passed = 0;
    let mut rows = Vec::new();
    for c in &checks {
        let (ok, error) = match (c.run)() {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(e.to_string())),
        };
        passed += usize::from(ok);
        if global.json {
            rows.push(json!({"tag": c.tag, "name": c.name, "judgment": c.judgment, "pass": ok, "error": error}));
        } else {
            let status = if ok { "PASS" } else { "FAIL" };
            println!("{status} [{}] {}: {}", c.tag, c.name, c.judgment);
            if let Some(e) = error {
                println!("     error: {e}");
            }
        }
    }
    if global.json {
        let report = json!({"checks": rows, "passed": passed, "total": checks.len()});
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{passed} of {} checks passed", checks.len());
    }
    Ok(passed == checks.len())
}

fn instantiate(reg: &QuantifierRegistry, name: &str, size: usize, arity: usize) -> anyhow::Result<LocalQuantifier> {
    let arity = reg.arity(name)?.unwrap_or(arity);
    Ok(reg.instantiate_arity(name, size, arity)?.as_ref().clone())
}

fn print_quantifier(global: &Global, q: &LocalQuantifier, m: &Structure) -> anyhow::Result<()> {
    if global.json {
        println!("{}", serde_json::to_string_pretty(&QuantifierFile::describe(q, m))?);
        return Ok(());
    }
    println!(
        "{} on a domain of size {}, arity {}: {} sets, {}",
        q.name(),
        q.domain_size(),
        q.arity(),
        q.len(),
        if q.is_monotone() { "monotone" } else { "not monotone" }
    );
    for s in q.tuple_sets() {
        println!("{}", render_set(&s, m));
    }
    Ok(())
}

fn pair(global: &Global, args: &PairArgs) -> anyhow::Result<(LocalQuantifier, LocalQuantifier, Structure)> {
    let m = Structure::with_size(args.size);
    check_domain(&m, &limits(global)?)?;
    let reg = registry(global, &m)?;
    let q1 = instantiate(&reg, &args.q1, args.size, 1)?;
    let q2 = instantiate(&reg, &args.q2, args.size, 1)?;
    Ok((q1, q2, m))
}

const SEARCH_BODIES: [&str; 5] = [
    "ind(;x;y)",
    "R(x,y) | ind(;x;y)",
    "R(x,y) & ind(;x;y)",
    "!R(x,y) | ind(;y;x)",
    "ind(;x;y) | ind(y;x;x)",
];

fn sher_search(global: &Global, max_size: usize, names: &[String], bodies: &[String]) -> Outcome {
    let bodies: Vec<String> = if bodies.is_empty() {
        SEARCH_BODIES.iter().map(|s| s.to_string()).collect()
    } else {
        bodies.to_vec()
    };
    let mut cases = 0u64;
    let mut found = Vec::new();
    for n in 1..=max_size {
        let base = Structure::with_size(n);
        check_domain(&base, &limits(global)?)?;
        let mut reg = registry(global, &base)?;
        for a in names {
            for b in names {
                reg.register_sher(&format!("__sher_{a}_{b}"), a, b)?;
            }
        }
        let cfg = config(global)?;
        let space = TupleSpace::new(n, 2)?;
        for r in space.all_sets()? {
            let m = Structure::with_size(n).with_relation("R", 2, space.tuples_of(r))?;
            let evaluator = Evaluator::new(&m, &reg, cfg);
            for body in &bodies {
                let phi = parse_formula(body, &reg)?;
                let downward = is_downward_closed_fragment(&phi, &reg)?;
                for a in names {
                    for b in names {
                        let linear = parse_formula(&format!("Q[{a}] x Q[{b}] y/(x) {body}"), &reg)?;
                        let branched = parse_formula(&format!("Q[__sher_{a}_{b}] x y {body}"), &reg)?;
                        cases += 1;
                        if evaluator.sentence_truth(&linear)? && !evaluator.sentence_truth(&branched)? {
                            found.push(json!({
                                "q1": a, "q2": b, "size": n, "body": body, "downward_closed": downward,
                                "R": render_set(&space.tuples_of(r), &m),
                            }));
                        }
                    }
                }
            }
        }
    }
    if global.json {
        println!("{}", serde_json::to_string_pretty(&json!({"cases": cases, "counterexamples": found}))?);
    } else {
        for f in &found {
            println!(
                "counterexample: Q1={} Q2={} |M|={} R={} body `{}`",
                f["q1"].as_str().unwrap_or_default(),
                f["q2"].as_str().unwrap_or_default(),
                f["size"],
                f["R"].as_str().unwrap_or_default(),
                f["body"].as_str().unwrap_or_default()
            );
        }
        println!("{cases} cases checked, {} counterexamples", found.len());
    }
    Ok(true)
}

pub fn quant(global: &Global, cmd: &QuantCommand) -> Outcome {
    match cmd {
        QuantCommand::Show { name, size, arity } => {
            let m = Structure::with_size(*size);
            check_domain(&m, &limits(global)?)?;
            let reg = registry(global, &m)?;
            print_quantifier(global, &instantiate(&reg, name, *size, *arity)?, &m)?;
        }
        QuantCommand::Branch(args) => {
            let (q1, q2, m) = pair(global, args)?;
            print_quantifier(global, &branch(&q1, &q2)?, &m)?;
        }
        QuantCommand::Sher(args) => {
            let (q1, q2, m) = pair(global, args)?;
            print_quantifier(global, &branch_sher(&q1, &q2)?, &m)?;
        }
        QuantCommand::Product(args) => {
            let (q1, q2, m) = pair(global, args)?;
            print_quantifier(global, &product(&q1, &q2)?, &m)?;
        }
        QuantCommand::SherSearch {
            max_size,
            candidates,
            bodies,
        } => return sher_search(global, *max_size, candidates, bodies),
    }
    Ok(true)
}

fn var_set(names: &[String]) -> BTreeSet<Var> {
    names.iter().filter(|n| !n.is_empty()).map(|n| Var::from(n.as_str())).collect()
}

pub fn join_check(global: &Global, args: &JoinArgs) -> Outcome {
    let file = TeamFile::from_json(&read(&args.team)?).with_context(|| format!("in {}", args.team.display()))?;
    let m = match &args.structure {
        Some(path) => load_structure(path)?,
        None => {
            let names: BTreeSet<&String> = file.rows.iter().flatten().collect();
            if names.is_empty() {
                Structure::with_size(1)
            } else {
                Structure::new(names.into_iter().cloned())?
            }
        }
    };
    let team = file.build(&m).with_context(|| format!("in {}", args.team.display()))?;
    let (xs, ys) = (var_set(&args.lhs), var_set(&args.rhs));
    let lossless = join_decomposition_check(&team, &xs, &ys)?;
    let all: Vec<Var> = team.vars().to_vec();
    let left: Vec<Var> = all.iter().filter(|v| xs.contains(*v) || ys.contains(*v)).cloned().collect();
    let right: Vec<Var> = all.iter().filter(|v| xs.contains(*v) || !ys.contains(*v)).cloned().collect();
    let (l, r) = (team.restrict(&left)?, team.restrict(&right)?);
    let joined = l.natural_join(&r);
    if global.json {
        let report = json!({
            "verdict": lossless,
            "left": TeamFile::describe(&l, &m),
            "right": TeamFile::describe(&r, &m),
            "join": TeamFile::describe(&joined, &m),
        });
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else if lossless {
        println!("lossless");
    } else {
        println!("not lossless; the join adds");
        let extra = joined.filter(|row| !team.contains(&joined.assignment_of(row)));
        print!("{}", render_team(&extra, &m));
    }
    Ok(lossless)
}
