//! The assertion language: terms over variables, parameter symbols and
//! integers, comparison atoms and propositional connectives.
//!
//! Terms evaluate over the full integers; only symbols are bounded, so an
//! intermediate value such as `b - 1` may be negative.

use std::fmt;

use crate::error::CapError;
use crate::model::{Network, ParamId, State, Valuation, VarId};
use crate::solver::ValuationSpace;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Int(i64),
    Var(VarId),
    Param(ParamId),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Eq,
    Lt,
    Gt,
    Le,
    Ge,
}

impl CmpOp {
    pub fn eval(self, lhs: i64, rhs: i64) -> bool {
        match self {
            CmpOp::Eq => lhs == rhs,
            CmpOp::Lt => lhs < rhs,
            CmpOp::Gt => lhs > rhs,
            CmpOp::Le => lhs <= rhs,
            CmpOp::Ge => lhs >= rhs,
        }
    }

    /// The comparison equivalent to the negation of `self`, when one exists.
    /// `=` has no single-atom complement in the language.
    pub fn negated(self) -> Option<CmpOp> {
        match self {
            CmpOp::Eq => None,
            CmpOp::Lt => Some(CmpOp::Ge),
            CmpOp::Gt => Some(CmpOp::Le),
            CmpOp::Le => Some(CmpOp::Gt),
            CmpOp::Ge => Some(CmpOp::Lt),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assertion {
    True,
    False,
    Atom(Term, CmpOp, Term),
    Not(Box<Assertion>),
    And(Box<Assertion>, Box<Assertion>),
    Or(Box<Assertion>, Box<Assertion>),
    Implies(Box<Assertion>, Box<Assertion>),
}

impl Assertion {
    // a constructor in the same family as `and`/`or`/`implies`, not an
    // operator implementation
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Assertion) -> Assertion {
        Assertion::Not(Box::new(a))
    }

    pub fn and(a: Assertion, b: Assertion) -> Assertion {
        Assertion::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Assertion, b: Assertion) -> Assertion {
        Assertion::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Assertion, b: Assertion) -> Assertion {
        Assertion::Implies(Box::new(a), Box::new(b))
    }

    pub fn atom(lhs: Term, op: CmpOp, rhs: Term) -> Assertion {
        Assertion::Atom(lhs, op, rhs)
    }

    /// Left-associated conjunction of a non-empty list; `True` when empty.
    pub fn conjunction(parts: Vec<Assertion>) -> Assertion {
        let mut it = parts.into_iter();
        match it.next() {
            None => Assertion::True,
            Some(first) => it.fold(first, Assertion::and),
        }
    }

    /// Left-associated disjunction of a non-empty list; `False` when empty.
    pub fn disjunction(parts: Vec<Assertion>) -> Assertion {
        let mut it = parts.into_iter();
        match it.next() {
            None => Assertion::False,
            Some(first) => it.fold(first, Assertion::or),
        }
    }
}

pub fn eval_term(term: &Term, state: &State, valuation: &Valuation) -> i64 {
    match term {
        Term::Int(n) => *n,
        Term::Var(v) => state.level(*v),
        Term::Param(p) => valuation.level(*p),
        Term::Add(a, b) => eval_term(a, state, valuation) + eval_term(b, state, valuation),
        Term::Sub(a, b) => eval_term(a, state, valuation) - eval_term(b, state, valuation),
    }
}

pub fn eval_assertion(assertion: &Assertion, state: &State, valuation: &Valuation) -> bool {
    match assertion {
        Assertion::True => true,
        Assertion::False => false,
        Assertion::Atom(lhs, op, rhs) => op.eval(
            eval_term(lhs, state, valuation),
            eval_term(rhs, state, valuation),
        ),
        Assertion::Not(a) => !eval_assertion(a, state, valuation),
        Assertion::And(a, b) => {
            eval_assertion(a, state, valuation) && eval_assertion(b, state, valuation)
        }
        Assertion::Or(a, b) => {
            eval_assertion(a, state, valuation) || eval_assertion(b, state, valuation)
        }
        Assertion::Implies(a, b) => {
            !eval_assertion(a, state, valuation) || eval_assertion(b, state, valuation)
        }
    }
}

fn substitute_term(term: &Term, v: VarId, replacement: &Term) -> Term {
    match term {
        Term::Var(u) if *u == v => replacement.clone(),
        Term::Int(_) | Term::Var(_) | Term::Param(_) => term.clone(),
        Term::Add(a, b) => Term::Add(
            Box::new(substitute_term(a, v, replacement)),
            Box::new(substitute_term(b, v, replacement)),
        ),
        Term::Sub(a, b) => Term::Sub(
            Box::new(substitute_term(a, v, replacement)),
            Box::new(substitute_term(b, v, replacement)),
        ),
    }
}

/// `Q[v <- t]`: textual replacement of every occurrence of `v`. The
/// language has no binders, so this is plain structural substitution.
pub fn substitute(assertion: &Assertion, v: VarId, replacement: &Term) -> Assertion {
    match assertion {
        Assertion::True | Assertion::False => assertion.clone(),
        Assertion::Atom(lhs, op, rhs) => Assertion::Atom(
            substitute_term(lhs, v, replacement),
            *op,
            substitute_term(rhs, v, replacement),
        ),
        Assertion::Not(a) => Assertion::not(substitute(a, v, replacement)),
        Assertion::And(a, b) => {
            Assertion::and(substitute(a, v, replacement), substitute(b, v, replacement))
        }
        Assertion::Or(a, b) => {
            Assertion::or(substitute(a, v, replacement), substitute(b, v, replacement))
        }
        Assertion::Implies(a, b) => {
            Assertion::implies(substitute(a, v, replacement), substitute(b, v, replacement))
        }
    }
}

/// True iff the assertion holds at every state of the network under the
/// given valuation.
pub fn check_validity(network: &Network, assertion: &Assertion, valuation: &Valuation) -> bool {
    network
        .enumerate_states()
        .iter()
        .all(|state| eval_assertion(assertion, state, valuation))
}

/// True iff some (state, valuation) pair within bounds (and respecting
/// pinned parameters) satisfies the assertion. Finite enumeration; errors
/// out when the search space exceeds `cap` pairs.
pub fn check_satisfiability(
    network: &Network,
    assertion: &Assertion,
    cap: u128,
) -> Result<bool, CapError> {
    let space = ValuationSpace::new(network);
    let size = network.state_count() * space.count();
    if size > cap {
        return Err(CapError::SizeLimitExceeded { size, cap });
    }
    let states = network.enumerate_states();
    for i in 0..space.count() {
        let valuation = space.decode(i);
        if states
            .iter()
            .any(|state| eval_assertion(assertion, state, &valuation))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Pretty-printer for terms and assertions against a network's symbol table.
pub struct DisplayTerm<'a> {
    pub network: &'a Network,
    pub term: &'a Term,
}

impl fmt::Display for DisplayTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(f, self.network, self.term, 0)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, net: &Network, term: &Term, prec: u8) -> fmt::Result {
    match term {
        Term::Int(n) => write!(f, "{}", n),
        Term::Var(v) => write!(f, "{}", net.var_name(*v)),
        Term::Param(p) => write!(f, "{}", net.display_param(*p)),
        Term::Add(a, b) => {
            if prec > 0 {
                write!(f, "(")?;
            }
            fmt_term(f, net, a, 0)?;
            write!(f, "+")?;
            fmt_term(f, net, b, 1)?;
            if prec > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
        Term::Sub(a, b) => {
            if prec > 0 {
                write!(f, "(")?;
            }
            fmt_term(f, net, a, 0)?;
            write!(f, "-")?;
            fmt_term(f, net, b, 1)?;
            if prec > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

pub struct DisplayAssertion<'a> {
    pub network: &'a Network,
    pub assertion: &'a Assertion,
}

impl fmt::Display for DisplayAssertion<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_assertion(f, self.network, self.assertion, 0)
    }
}

// precedence levels: => 1 (right-assoc), | 2, & 3, ! 4, atoms 5
fn fmt_assertion(
    f: &mut fmt::Formatter<'_>,
    net: &Network,
    a: &Assertion,
    prec: u8,
) -> fmt::Result {
    match a {
        Assertion::True => write!(f, "true"),
        Assertion::False => write!(f, "false"),
        Assertion::Atom(lhs, op, rhs) => {
            fmt_term(f, net, lhs, 0)?;
            write!(f, "{}", op.symbol())?;
            fmt_term(f, net, rhs, 0)
        }
        Assertion::Not(inner) => {
            write!(f, "!")?;
            fmt_assertion(f, net, inner, 4)
        }
        Assertion::And(l, r) => {
            let need = prec > 3;
            if need {
                write!(f, "(")?;
            }
            fmt_assertion(f, net, l, 3)?;
            write!(f, " & ")?;
            fmt_assertion(f, net, r, 4)?;
            if need {
                write!(f, ")")?;
            }
            Ok(())
        }
        Assertion::Or(l, r) => {
            let need = prec > 2;
            if need {
                write!(f, "(")?;
            }
            fmt_assertion(f, net, l, 2)?;
            write!(f, " | ")?;
            fmt_assertion(f, net, r, 3)?;
            if need {
                write!(f, ")")?;
            }
            Ok(())
        }
        Assertion::Implies(l, r) => {
            let need = prec > 1;
            if need {
                write!(f, "(")?;
            }
            fmt_assertion(f, net, l, 2)?;
            write!(f, " => ")?;
            fmt_assertion(f, net, r, 1)?;
            if need {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl Network {
    pub fn show_assertion(&self, a: &Assertion) -> String {
        DisplayAssertion {
            network: self,
            assertion: a,
        }
        .to_string()
    }

    pub fn show_term(&self, t: &Term) -> String {
        DisplayTerm {
            network: self,
            term: t,
        }
        .to_string()
    }
}
