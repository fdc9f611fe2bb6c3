//! Weakest preconditions for path programs, with the increase/decrease
//! enabling conditions expressed over parameter symbols.

use crate::assertion::{substitute, Assertion, CmpOp, Term};
use crate::model::{MultiplexFormula, Network, VarId};
use crate::program::{HoareTriple, PathProgram};
use crate::simplify::simplify;

/// Side condition emitted for a `while` loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationCondition {
    /// Pre-order index of the loop within the program, counting from 0.
    pub origin: usize,
    pub kind: VcKind,
    pub formula: Assertion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcKind {
    /// `(e & I) => wp(body, I)`
    InvariantPreservation,
    /// `(!e & I) => Q`
    LoopExit,
}

impl VcKind {
    pub fn describe(self) -> &'static str {
        match self {
            VcKind::InvariantPreservation => "invariant-preservation",
            VcKind::LoopExit => "loop-exit",
        }
    }
}

/// Result of pushing a postcondition backward through a triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofOutcome {
    /// `wp(program, post)`.
    pub wp: Assertion,
    /// Loop side conditions, innermost first.
    pub vcs: Vec<VerificationCondition>,
    /// `pre => wp(program, post)`; together with the side conditions this
    /// characterizes the parameter valuations under which the triple holds.
    pub final_implication: Assertion,
}

/// Flattened multiplex formula as an assertion over threshold atoms.
fn formula_assertion(f: &MultiplexFormula) -> Assertion {
    match f {
        MultiplexFormula::VarAtom(v, s) => {
            Assertion::atom(Term::Var(*v), CmpOp::Ge, Term::Int(*s))
        }
        MultiplexFormula::MxAtom(_) => unreachable!("flattened formulas have no multiplex atoms"),
        MultiplexFormula::Not(g) => Assertion::not(formula_assertion(g)),
        MultiplexFormula::And(a, b) => {
            Assertion::and(formula_assertion(a), formula_assertion(b))
        }
        MultiplexFormula::Or(a, b) => Assertion::or(formula_assertion(a), formula_assertion(b)),
    }
}

/// Resource-set recognizer: the states where the resources of `v` are
/// exactly the subset of `predecessors(v)` selected by `mask`.
pub fn phi_omega(net: &Network, v: VarId, mask: usize) -> Assertion {
    let preds = net.predecessors(v);
    let mut parts = Vec::with_capacity(preds.len());
    for (i, m) in preds.iter().enumerate() {
        let f = formula_assertion(net.flatten(*m));
        if mask & (1 << i) != 0 {
            parts.push(f);
        } else {
            parts.push(Assertion::not(f));
        }
    }
    Assertion::conjunction(parts)
}

fn phi_cmp(net: &Network, v: VarId, op: CmpOp) -> Assertion {
    let preds = net.predecessors(v);
    let mut parts = Vec::new();
    for mask in 0..(1usize << preds.len()) {
        let k = net.param_for_mask(v, mask);
        parts.push(Assertion::implies(
            phi_omega(net, v, mask),
            Assertion::atom(Term::Param(k), op, Term::Var(v)),
        ));
    }
    Assertion::conjunction(parts)
}

/// States where `v` may increase: the focal parameter exceeds `v`.
pub fn phi_plus(net: &Network, v: VarId) -> Assertion {
    phi_cmp(net, v, CmpOp::Gt)
}

/// States where `v` may decrease: the focal parameter is below `v`.
pub fn phi_minus(net: &Network, v: VarId) -> Assertion {
    phi_cmp(net, v, CmpOp::Lt)
}

/// States where `v` is at its focal level.
pub fn phi_eq(net: &Network, v: VarId) -> Assertion {
    phi_cmp(net, v, CmpOp::Eq)
}

struct WpCtx<'n> {
    net: &'n Network,
    simplify_steps: bool,
    vcs: Vec<VerificationCondition>,
    while_counter: usize,
}

impl WpCtx<'_> {
    fn finish(&self, a: Assertion) -> Assertion {
        if self.simplify_steps {
            simplify(self.net, &a)
        } else {
            a
        }
    }

    fn wp(&mut self, p: &PathProgram, q: &Assertion) -> Assertion {
        let result = match p {
            PathProgram::Epsilon => q.clone(),
            PathProgram::Inc(v) => {
                let shifted = Term::Add(Box::new(Term::Var(*v)), Box::new(Term::Int(1)));
                Assertion::and(phi_plus(self.net, *v), substitute(q, *v, &shifted))
            }
            PathProgram::Dec(v) => {
                let shifted = Term::Sub(Box::new(Term::Var(*v)), Box::new(Term::Int(1)));
                Assertion::and(phi_minus(self.net, *v), substitute(q, *v, &shifted))
            }
            PathProgram::Assign(v, n) => substitute(q, *v, &Term::Int(*n)),
            PathProgram::Assert(e) => Assertion::and(e.clone(), q.clone()),
            PathProgram::Seq(parts) => {
                let mut acc = q.clone();
                for part in parts.iter().rev() {
                    acc = self.wp(part, &acc);
                }
                return acc; // sub-steps already finished individually
            }
            PathProgram::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let then_wp = self.wp(then_branch, q);
                let else_wp = self.wp(else_branch, q);
                Assertion::or(
                    Assertion::and(cond.clone(), then_wp),
                    Assertion::and(Assertion::not(cond.clone()), else_wp),
                )
            }
            PathProgram::While {
                cond,
                invariant,
                body,
            } => {
                let origin = self.while_counter;
                self.while_counter += 1;
                let body_wp = self.wp(body, invariant);
                let preservation = Assertion::implies(
                    Assertion::and(cond.clone(), invariant.clone()),
                    body_wp,
                );
                let exit = Assertion::implies(
                    Assertion::and(Assertion::not(cond.clone()), invariant.clone()),
                    q.clone(),
                );
                self.vcs.push(VerificationCondition {
                    origin,
                    kind: VcKind::InvariantPreservation,
                    formula: self.finish(preservation),
                });
                self.vcs.push(VerificationCondition {
                    origin,
                    kind: VcKind::LoopExit,
                    formula: self.finish(exit),
                });
                invariant.clone()
            }
            PathProgram::Forall(branches) => {
                Assertion::conjunction(branches.iter().map(|b| self.wp(b, q)).collect())
            }
            PathProgram::Exists(branches) => {
                Assertion::disjunction(branches.iter().map(|b| self.wp(b, q)).collect())
            }
        };
        self.finish(result)
    }
}

/// `wp(program, post)` plus the loop side conditions, collected innermost
/// first. With `simplify_steps` every intermediate assertion is normalized,
/// which keeps formula growth roughly linear on typical programs.
pub fn weakest_precondition(
    net: &Network,
    program: &PathProgram,
    post: &Assertion,
    simplify_steps: bool,
) -> (Assertion, Vec<VerificationCondition>) {
    let mut ctx = WpCtx {
        net,
        simplify_steps,
        vcs: Vec::new(),
        while_counter: 0,
    };
    let wp = ctx.wp(program, post);
    (wp, ctx.vcs)
}

/// Backward proof of a triple: compute `wp(program, post)` and bundle the
/// final implication `pre => wp` with the loop side conditions.
pub fn derive_triple(net: &Network, triple: &HoareTriple, simplify_steps: bool) -> ProofOutcome {
    let (wp, vcs) = weakest_precondition(net, &triple.program, &triple.post, simplify_steps);
    let implication = Assertion::implies(triple.pre.clone(), wp.clone());
    let final_implication = if simplify_steps {
        simplify(net, &implication)
    } else {
        implication
    };
    ProofOutcome {
        wp,
        vcs,
        final_implication,
    }
}
