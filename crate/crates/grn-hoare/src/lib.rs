//! Parameter synthesis for discrete gene regulatory networks through a
//! Hoare-style backward calculus over path programs.
//!
//! The pipeline: parse a network (variables, multiplexes, targets, pinned
//! parameters) and a Hoare triple; either push the postcondition backward
//! through the path program to get a constraint over parameter symbols, or
//! run the program's set-of-sets semantics directly; then enumerate the
//! finite parameter space to list every consistent valuation.

pub mod assertion;
pub mod dot;
pub mod error;
pub mod model;
pub mod oracle;
pub mod parse;
pub mod program;
pub mod simplify;
pub mod solver;
pub mod wp;

#[cfg(test)]
pub mod fixtures;

pub use assertion::{
    check_satisfiability, check_validity, eval_assertion, eval_term, substitute, Assertion,
    CmpOp, Term,
};
pub use error::{CapError, ModelError, ParseError};
pub use model::{
    build_valuation, resolve_param, validate_network, Multiplex, MultiplexFormula, MxId, Network,
    ParamId, ParamSymbol, RawFormula, RawNetwork, State, Valuation, VarId, Variable,
};
pub use oracle::{Oracle, RelationResult, TripleVerdict};
pub use parse::{parse_assertion, parse_network, parse_program, parse_triple, parse_valuation};
pub use program::{HoareTriple, PathProgram};
pub use simplify::simplify;
pub use solver::{
    cross_check, describe_solution_set, report_json, solve_triple, SolveMode, SolveReport,
    SolverConfig, ValuationSpace,
};
pub use wp::{derive_triple, phi_eq, phi_minus, phi_omega, phi_plus, weakest_precondition,
    ProofOutcome, VcKind, VerificationCondition,
};
