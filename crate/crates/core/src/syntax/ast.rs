use std::fmt;

use crate::model::Var;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    /// A named structure constant, written `#name`.
    Const(String),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::from(name))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "#{c}"),
        }
    }
}

/// The quantifier at a quantifier node: the two first-order keywords or a
/// registry name `Q[name]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuantifierRef {
    Exists,
    Forall,
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Mode {
    Plain,
    /// `/(ȳ)`: the witness may not look at `ȳ`.
    Slashed(Vec<Var>),
    /// `\(ȳ)`: the witness may look only at `ȳ`.
    Backslashed(Vec<Var>),
}

/// A formula in negation normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Rel {
        name: String,
        args: Vec<Term>,
        negated: bool,
    },
    Eq {
        left: Term,
        right: Term,
        negated: bool,
    },
    /// `dep(t̄ ; ū)`
    Dep {
        determiners: Vec<Term>,
        dependents: Vec<Term>,
        negated: bool,
    },
    /// `mvd(x̄ ; ȳ)`
    Mvd {
        lhs: Vec<Var>,
        rhs: Vec<Var>,
        negated: bool,
    },
    /// `ind(x̄ ; ȳ ; z̄)`: `ȳ` and `z̄` are independent given `x̄`.
    Indep {
        cond: Vec<Var>,
        left: Vec<Var>,
        right: Vec<Var>,
        negated: bool,
    },
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Quant {
        quantifier: QuantifierRef,
        vars: Vec<Var>,
        mode: Mode,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn quant(quantifier: QuantifierRef, vars: Vec<Var>, mode: Mode, body: Formula) -> Formula {
        Formula::Quant {
            quantifier,
            vars,
            mode,
            body: Box::new(body),
        }
    }

    pub fn is_atomic(&self) -> bool {
        !matches!(self, Formula::And(..) | Formula::Or(..) | Formula::Quant { .. })
    }

    /// The top-level conjuncts of a chain of `&`.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::And(l, r) => {
                let mut out = l.conjuncts();
                out.extend(r.conjuncts());
                out
            }
            other => vec![other],
        }
    }

    /// Number of nested connectives and quantifiers; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Quant { body, .. } => 1 + body.depth(),
            _ => 0,
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, t) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

fn bang(negated: bool) -> &'static str {
    if negated {
        "!"
    } else {
        ""
    }
}

impl Formula {
    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Rel {
                name,
                args,
                negated,
            } => {
                write!(f, "{}{name}(", bang(*negated))?;
                write_list(f, args)?;
                write!(f, ")")
            }
            Formula::Eq {
                left,
                right,
                negated,
            } => write!(f, "{}{left}={right}", bang(*negated)),
            Formula::Dep {
                determiners,
                dependents,
                negated,
            } => {
                write!(f, "{}dep(", bang(*negated))?;
                write_list(f, determiners)?;
                write!(f, ";")?;
                write_list(f, dependents)?;
                write!(f, ")")
            }
            Formula::Mvd { lhs, rhs, negated } => {
                write!(f, "{}mvd(", bang(*negated))?;
                write_list(f, lhs)?;
                write!(f, ";")?;
                write_list(f, rhs)?;
                write!(f, ")")
            }
            Formula::Indep {
                cond,
                left,
                right,
                negated,
            } => {
                write!(f, "{}ind(", bang(*negated))?;
                write_list(f, cond)?;
                write!(f, ";")?;
                write_list(f, left)?;
                write!(f, ";")?;
                write_list(f, right)?;
                write!(f, ")")
            }
            // Quantifier bodies extend to the right, so a quantifier operand
            // is always parenthesized; left-associative chains need parens
            // only on the right.
            Formula::And(l, r) => {
                l.fmt_operand(f, matches!(**l, Formula::Or(..) | Formula::Quant { .. }))?;
                write!(f, " & ")?;
                r.fmt_operand(f, !r.is_atomic())
            }
            Formula::Or(l, r) => {
                l.fmt_operand(f, matches!(**l, Formula::Quant { .. }))?;
                write!(f, " | ")?;
                r.fmt_operand(f, matches!(**r, Formula::Or(..) | Formula::Quant { .. }))
            }
            Formula::Quant {
                quantifier,
                vars,
                mode,
                body,
            } => {
                match quantifier {
                    QuantifierRef::Exists => write!(f, "exists")?,
                    QuantifierRef::Forall => write!(f, "forall")?,
                    QuantifierRef::Named(n) => write!(f, "Q[{n}]")?,
                }
                // commas keep `exists x y (…)` from reading `y(…)` as an atom
                write!(f, " ")?;
                write_list(f, vars)?;
                match mode {
                    Mode::Plain => {}
                    Mode::Slashed(ys) => {
                        write!(f, "/(")?;
                        write_list(f, ys)?;
                        write!(f, ")")?;
                    }
                    Mode::Backslashed(ys) => {
                        write!(f, "\\(")?;
                        write_list(f, ys)?;
                        write!(f, ")")?;
                    }
                }
                write!(f, " {body}")
            }
        }
    }
}
