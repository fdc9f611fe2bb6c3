//! Path program AST and printer.
//!
//! Sequential composition is kept flattened; quantifier blocks are n-ary
//! lists (at least two branches) in written order.

use std::fmt;

use crate::assertion::{Assertion, DisplayAssertion};
use crate::model::{Network, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathProgram {
    Inc(VarId),
    Dec(VarId),
    Assign(VarId, i64),
    Assert(Assertion),
    /// Flattened sequence of at least one program, none of which is a `Seq`.
    Seq(Vec<PathProgram>),
    If {
        cond: Assertion,
        then_branch: Box<PathProgram>,
        else_branch: Box<PathProgram>,
    },
    While {
        cond: Assertion,
        invariant: Assertion,
        body: Box<PathProgram>,
    },
    /// At least two branches.
    Forall(Vec<PathProgram>),
    /// At least two branches.
    Exists(Vec<PathProgram>),
    Epsilon,
}

impl PathProgram {
    /// Flattened sequential composition.
    pub fn seq(parts: Vec<PathProgram>) -> PathProgram {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                PathProgram::Seq(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.into_iter().next().unwrap()
        } else {
            PathProgram::Seq(flat)
        }
    }

    pub fn forall(branches: Vec<PathProgram>) -> PathProgram {
        let mut flat = Vec::new();
        for p in branches {
            match p {
                PathProgram::Forall(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.into_iter().next().unwrap()
        } else {
            PathProgram::Forall(flat)
        }
    }

    pub fn exists(branches: Vec<PathProgram>) -> PathProgram {
        let mut flat = Vec::new();
        for p in branches {
            match p {
                PathProgram::Exists(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.into_iter().next().unwrap()
        } else {
            PathProgram::Exists(flat)
        }
    }

    pub fn contains_while(&self) -> bool {
        match self {
            PathProgram::While { .. } => true,
            PathProgram::Seq(ps) | PathProgram::Forall(ps) | PathProgram::Exists(ps) => {
                ps.iter().any(PathProgram::contains_while)
            }
            PathProgram::If {
                then_branch,
                else_branch,
                ..
            } => then_branch.contains_while() || else_branch.contains_while(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoareTriple {
    pub pre: Assertion,
    pub program: PathProgram,
    pub post: Assertion,
}

pub struct DisplayProgram<'a> {
    pub network: &'a Network,
    pub program: &'a PathProgram,
}

impl fmt::Display for DisplayProgram<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_program(f, self.network, self.program)
    }
}

fn fmt_program(f: &mut fmt::Formatter<'_>, net: &Network, p: &PathProgram) -> fmt::Result {
    let assertion = |a: &Assertion| {
        DisplayAssertion {
            network: net,
            assertion: a,
        }
        .to_string()
    };
    match p {
        PathProgram::Inc(v) => write!(f, "{}+", net.var_name(*v)),
        PathProgram::Dec(v) => write!(f, "{}-", net.var_name(*v)),
        PathProgram::Assign(v, n) => write!(f, "{} := {}", net.var_name(*v), n),
        PathProgram::Assert(a) => write!(f, "assert({})", assertion(a)),
        PathProgram::Seq(ps) => {
            for (i, sub) in ps.iter().enumerate() {
                if i > 0 {
                    write!(f, "; ")?;
                }
                fmt_program(f, net, sub)?;
            }
            Ok(())
        }
        PathProgram::If {
            cond,
            then_branch,
            else_branch,
        } => {
            write!(f, "if {} then ", assertion(cond))?;
            fmt_program(f, net, then_branch)?;
            write!(f, " else ")?;
            fmt_program(f, net, else_branch)?;
            write!(f, " end")
        }
        PathProgram::While {
            cond,
            invariant,
            body,
        } => {
            write!(f, "while {} with {} do ", assertion(cond), assertion(invariant))?;
            fmt_program(f, net, body)?;
            write!(f, " end")
        }
        PathProgram::Forall(ps) => fmt_quantifier(f, net, "forall", ps),
        PathProgram::Exists(ps) => fmt_quantifier(f, net, "exists", ps),
        PathProgram::Epsilon => write!(f, "eps"),
    }
}

fn fmt_quantifier(
    f: &mut fmt::Formatter<'_>,
    net: &Network,
    keyword: &str,
    branches: &[PathProgram],
) -> fmt::Result {
    write!(f, "{}(", keyword)?;
    for (i, sub) in branches.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        fmt_program(f, net, sub)?;
    }
    write!(f, ")")
}

impl Network {
    pub fn show_program(&self, p: &PathProgram) -> String {
        DisplayProgram {
            network: self,
            program: p,
        }
        .to_string()
    }
}
