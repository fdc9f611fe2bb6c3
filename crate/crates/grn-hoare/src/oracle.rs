//! Direct set-of-sets semantics of path programs over the asynchronous
//! state graph, used as ground truth against the backward calculus.
//!
//! A program relates a start state to a collection of state sets: each set
//! is one possibility through the existential choices, and the states
//! inside a set are grouped by universal branching. A program with no
//! related set at a state is infeasible there. `while` loops are unrolled
//! with a fuel budget; every set found within the budget is genuinely in
//! the relation, and the result is marked incomplete when fuel cut off an
//! unrolling, so that running out of fuel is never conflated with
//! infeasibility.

use std::collections::BTreeSet;

use crate::assertion::eval_assertion;
use crate::error::CapError;
use crate::model::{Network, State, Valuation};
use crate::program::{HoareTriple, PathProgram};

pub type StateSet = BTreeSet<State>;
pub type Collection = BTreeSet<StateSet>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationResult {
    /// Sets related to the start state. Never contains an empty set.
    pub sets: Collection,
    /// True when `sets` is the whole relation; false when a loop ran out
    /// of fuel somewhere, in which case further sets may exist.
    pub complete: bool,
}

impl RelationResult {
    fn singleton(s: State) -> RelationResult {
        let mut set = BTreeSet::new();
        set.insert(s);
        let mut sets = BTreeSet::new();
        sets.insert(set);
        RelationResult {
            sets,
            complete: true,
        }
    }

    fn infeasible() -> RelationResult {
        RelationResult {
            sets: BTreeSet::new(),
            complete: true,
        }
    }

    fn fuel_limited() -> RelationResult {
        RelationResult {
            sets: BTreeSet::new(),
            complete: false,
        }
    }

    /// Definitively no related set.
    pub fn is_infeasible(&self) -> bool {
        self.complete && self.sets.is_empty()
    }

    pub fn fuel_limited_somewhere(&self) -> bool {
        !self.complete
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TripleVerdict {
    Holds,
    /// First state (in enumeration order) satisfying the precondition from
    /// which no related set satisfies the postcondition throughout.
    Fails(State),
    /// Loop unrolling ran out of fuel before a verdict could be reached.
    Undetermined,
}

pub const DEFAULT_FUEL: u64 = 256;
pub const DEFAULT_MAX_SETS: usize = 1_000_000;

pub struct Oracle<'n> {
    net: &'n Network,
    valuation: &'n Valuation,
    /// Remaining loop entries allowed along any one unrolling.
    pub fuel: u64,
    /// Upper bound on the number of sets in any intermediate collection.
    pub max_sets: usize,
}

impl<'n> Oracle<'n> {
    pub fn new(net: &'n Network, valuation: &'n Valuation) -> Self {
        Oracle {
            net,
            valuation,
            fuel: DEFAULT_FUEL,
            max_sets: DEFAULT_MAX_SETS,
        }
    }

    /// All sets related to `state` by `program` (within fuel).
    pub fn relation(
        &self,
        program: &PathProgram,
        state: &State,
    ) -> Result<RelationResult, CapError> {
        self.rel(program, state, self.fuel)
    }

    fn rel(&self, p: &PathProgram, eta: &State, fuel: u64) -> Result<RelationResult, CapError> {
        Ok(match p {
            PathProgram::Epsilon => RelationResult::singleton(eta.clone()),
            PathProgram::Inc(v) => {
                if self.net.can_increase(self.valuation, eta, *v) {
                    RelationResult::singleton(eta.with_level(*v, eta.level(*v) + 1))
                } else {
                    RelationResult::infeasible()
                }
            }
            PathProgram::Dec(v) => {
                if self.net.can_decrease(self.valuation, eta, *v) {
                    RelationResult::singleton(eta.with_level(*v, eta.level(*v) - 1))
                } else {
                    RelationResult::infeasible()
                }
            }
            PathProgram::Assign(v, k) => RelationResult::singleton(eta.with_level(*v, *k)),
            PathProgram::Assert(e) => {
                if eval_assertion(e, eta, self.valuation) {
                    RelationResult::singleton(eta.clone())
                } else {
                    RelationResult::infeasible()
                }
            }
            PathProgram::Seq(parts) => {
                let mut current = RelationResult::singleton(eta.clone());
                for part in parts {
                    let step = self.advance(&current.sets, part, fuel)?;
                    current = RelationResult {
                        sets: step.sets,
                        complete: current.complete && step.complete,
                    };
                    if current.sets.is_empty() {
                        break; // nothing left to continue from
                    }
                }
                current
            }
            PathProgram::If {
                cond,
                then_branch,
                else_branch,
            } => {
                if eval_assertion(cond, eta, self.valuation) {
                    self.rel(then_branch, eta, fuel)?
                } else {
                    self.rel(else_branch, eta, fuel)?
                }
            }
            PathProgram::While { cond, body, .. } => {
                if !eval_assertion(cond, eta, self.valuation) {
                    RelationResult::singleton(eta.clone())
                } else {
                    // one unrolling: the body, then the loop again; an
                    // infeasible body refutes the loop without consuming
                    // fuel, which only bounds the number of re-entries
                    let after_body = self.rel(body, eta, fuel)?;
                    if after_body.is_infeasible() {
                        RelationResult::infeasible()
                    } else if fuel == 0 {
                        RelationResult::fuel_limited()
                    } else {
                        let step = self.advance(&after_body.sets, p, fuel - 1)?;
                        RelationResult {
                            sets: step.sets,
                            complete: after_body.complete && step.complete,
                        }
                    }
                }
            }
            PathProgram::Forall(branches) => {
                let mut groups: Vec<Vec<StateSet>> = Vec::with_capacity(branches.len());
                let mut complete = true;
                for b in branches {
                    let r = self.rel(b, eta, fuel)?;
                    if r.is_infeasible() {
                        return Ok(RelationResult::infeasible());
                    }
                    complete &= r.complete;
                    groups.push(r.sets.into_iter().collect());
                }
                if groups.iter().any(|g| g.is_empty()) {
                    // a fuel-limited branch produced nothing to pair up yet
                    RelationResult::fuel_limited()
                } else {
                    RelationResult {
                        sets: self.combine(&groups)?,
                        complete,
                    }
                }
            }
            PathProgram::Exists(branches) => {
                let mut sets: Collection = BTreeSet::new();
                let mut complete = true;
                for b in branches {
                    let r = self.rel(b, eta, fuel)?;
                    complete &= r.complete;
                    for set in r.sets {
                        sets.insert(set);
                        if sets.len() > self.max_sets {
                            return Err(CapError::ResultTooLarge { cap: self.max_sets });
                        }
                    }
                }
                RelationResult { sets, complete }
            }
        })
    }

    /// Sequential step: continue each set of `current` through `part`. For
    /// every set `F` and every choice of one continuation per state of `F`,
    /// the union of the chosen sets is related. A set containing a state
    /// from which `part` is infeasible contributes nothing.
    fn advance(
        &self,
        current: &Collection,
        part: &PathProgram,
        fuel: u64,
    ) -> Result<RelationResult, CapError> {
        let mut next: Collection = BTreeSet::new();
        let mut complete = true;
        'families: for f in current {
            let mut family: Vec<Vec<StateSet>> = Vec::with_capacity(f.len());
            for e in f {
                let r = self.rel(part, e, fuel)?;
                if r.is_infeasible() {
                    continue 'families;
                }
                complete &= r.complete;
                if r.sets.is_empty() {
                    // fuel-limited with nothing known: no choice for this
                    // member, so this family yields no union yet
                    continue 'families;
                }
                family.push(r.sets.into_iter().collect());
            }
            for set in self.combine(&family)? {
                next.insert(set);
                if next.len() > self.max_sets {
                    return Err(CapError::ResultTooLarge { cap: self.max_sets });
                }
            }
        }
        Ok(RelationResult {
            sets: next,
            complete,
        })
    }

    /// All unions obtained by picking one set from each group.
    fn combine(&self, groups: &[Vec<StateSet>]) -> Result<Collection, CapError> {
        let mut out: Collection = BTreeSet::new();
        let mut choice = vec![0usize; groups.len()];
        loop {
            let mut union: StateSet = BTreeSet::new();
            for (g, &c) in groups.iter().zip(&choice) {
                union.extend(g[c].iter().cloned());
            }
            out.insert(union);
            if out.len() > self.max_sets {
                return Err(CapError::ResultTooLarge { cap: self.max_sets });
            }
            // odometer over the choices, last group fastest
            let mut i = groups.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < groups[i].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }

    /// Decide a triple by quantifying the relation over all states that
    /// satisfy the precondition. A state with a known good set passes even
    /// under fuel exhaustion elsewhere; a definitive counterexample wins
    /// over fuel exhaustion at other states.
    pub fn triple_holds(&self, triple: &HoareTriple) -> Result<TripleVerdict, CapError> {
        let mut undetermined = false;
        for eta in self.net.enumerate_states() {
            if !eval_assertion(&triple.pre, &eta, self.valuation) {
                continue;
            }
            let r = self.relation(&triple.program, &eta)?;
            let ok = r.sets.iter().any(|set| {
                set.iter()
                    .all(|s| eval_assertion(&triple.post, s, self.valuation))
            });
            if ok {
                continue;
            }
            if r.complete {
                return Ok(TripleVerdict::Fails(eta));
            }
            undetermined = true;
        }
        if undetermined {
            Ok(TripleVerdict::Undetermined)
        } else {
            Ok(TripleVerdict::Holds)
        }
    }
}
