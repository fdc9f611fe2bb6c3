//! Exhaustive finite-domain synthesis: enumerate every parameter valuation,
//! decide the triple under each one, and summarize the consistent set.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::assertion::{check_validity, Assertion, CmpOp, Term};
use crate::error::CapError;
use crate::model::{Network, ParamId, Valuation};
use crate::oracle::{Oracle, TripleVerdict};
use crate::program::HoareTriple;
use crate::wp::derive_triple;

/// Default cap on the number of valuations enumerated.
pub const DEFAULT_VALUATION_CAP: u128 = 1 << 24;

/// The free-parameter search space of a network, addressable by index so
/// that enumeration can be split across threads without coordination.
pub struct ValuationSpace {
    /// Pinned values, or 0 placeholders for free parameters.
    template: Vec<i64>,
    /// (parameter index, radix = bound+1) for free parameters, canonical order.
    free: Vec<(usize, i64)>,
    count: u128,
}

impl ValuationSpace {
    pub fn new(net: &Network) -> ValuationSpace {
        let mut template = Vec::with_capacity(net.params().len());
        let mut free = Vec::new();
        for i in 0..net.params().len() {
            let p = ParamId(i);
            match net.fixed_value(p) {
                Some(v) => template.push(v),
                None => {
                    template.push(0);
                    free.push((i, net.param_bound(p) + 1));
                }
            }
        }
        let count = free.iter().map(|&(_, r)| r as u128).product();
        ValuationSpace {
            template,
            free,
            count,
        }
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    /// Parameter indices not pinned by the network, in canonical order.
    pub fn free_params(&self) -> impl Iterator<Item = ParamId> + '_ {
        self.free.iter().map(|&(i, _)| ParamId(i))
    }

    /// Mixed-radix decoding; the first free parameter is the most
    /// significant digit, so indices enumerate valuations lexicographically
    /// in canonical parameter order.
    pub fn decode(&self, mut index: u128) -> Valuation {
        let mut levels = self.template.clone();
        for &(i, radix) in self.free.iter().rev() {
            levels[i] = (index % radix as u128) as i64;
            index /= radix as u128;
        }
        Valuation(levels)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// Decide each valuation by running the set-of-sets semantics.
    Oracle,
    /// Decide each valuation by checking the backward-derived implication
    /// and all loop side conditions over every state.
    Wp,
}

impl SolveMode {
    pub fn name(self) -> &'static str {
        match self {
            SolveMode::Oracle => "oracle",
            SolveMode::Wp => "wp",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub mode: SolveMode,
    pub fuel: u64,
    pub max_sets: usize,
    /// Valuation-count cap; exceeding it is a hard error.
    pub cap: u128,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: SolveMode::Wp,
            fuel: crate::oracle::DEFAULT_FUEL,
            max_sets: crate::oracle::DEFAULT_MAX_SETS,
            cap: DEFAULT_VALUATION_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub mode: SolveMode,
    pub total: u128,
    /// Consistent valuations in enumeration order.
    pub consistent: Vec<Valuation>,
    /// Valuations where fuel blocked a verdict (oracle mode only).
    pub undetermined: Vec<Valuation>,
    /// Assertion over parameter symbols satisfied by exactly the
    /// consistent valuations.
    pub constraint: Assertion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Consistent,
    Inconsistent,
    Undetermined,
}

/// Classify every valuation of the network against the triple.
pub fn solve_triple(
    net: &Network,
    triple: &HoareTriple,
    config: &SolverConfig,
) -> Result<SolveReport, CapError> {
    let space = ValuationSpace::new(net);
    if space.count() > config.cap {
        return Err(CapError::SizeLimitExceeded {
            size: space.count(),
            cap: config.cap,
        });
    }
    let n = space.count() as usize;
    let statuses: Vec<Status> = match config.mode {
        SolveMode::Wp => {
            let outcome = derive_triple(net, triple, false);
            let mut goals = vec![outcome.final_implication.clone()];
            goals.extend(outcome.vcs.iter().map(|vc| vc.formula.clone()));
            (0..n)
                .into_par_iter()
                .map(|i| {
                    let val = space.decode(i as u128);
                    if goals.iter().all(|g| check_validity(net, g, &val)) {
                        Status::Consistent
                    } else {
                        Status::Inconsistent
                    }
                })
                .collect()
        }
        SolveMode::Oracle => (0..n)
            .into_par_iter()
            .map(|i| {
                let val = space.decode(i as u128);
                let mut oracle = Oracle::new(net, &val);
                oracle.fuel = config.fuel;
                oracle.max_sets = config.max_sets;
                Ok(match oracle.triple_holds(triple)? {
                    TripleVerdict::Holds => Status::Consistent,
                    TripleVerdict::Fails(_) => Status::Inconsistent,
                    TripleVerdict::Undetermined => Status::Undetermined,
                })
            })
            .collect::<Result<Vec<Status>, CapError>>()?,
    };
    let mut consistent = Vec::new();
    let mut undetermined = Vec::new();
    for (i, status) in statuses.iter().enumerate() {
        match status {
            Status::Consistent => consistent.push(space.decode(i as u128)),
            Status::Undetermined => undetermined.push(space.decode(i as u128)),
            Status::Inconsistent => {}
        }
    }
    let constraint = describe_solution_set(net, &space, &consistent);
    Ok(SolveReport {
        mode: config.mode,
        total: space.count(),
        consistent,
        undetermined,
        constraint,
    })
}

/// One valuation on which the two decision procedures disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub valuation: Valuation,
    pub wp_consistent: bool,
    /// The semantic verdict, including the counterexample state on Fails.
    pub oracle_verdict: TripleVerdict,
}

/// Compare the backward calculus against the direct semantics on every
/// valuation. Only defined for loop-free programs, where both procedures
/// are total and must agree.
pub fn cross_check(
    net: &Network,
    triple: &HoareTriple,
    config: &SolverConfig,
) -> Result<Vec<Disagreement>, CapError> {
    if triple.program.contains_while() {
        return Err(CapError::WhileNotSupportedForCrossCheck);
    }
    let space = ValuationSpace::new(net);
    if space.count() > config.cap {
        return Err(CapError::SizeLimitExceeded {
            size: space.count(),
            cap: config.cap,
        });
    }
    let outcome = derive_triple(net, triple, false);
    debug_assert!(outcome.vcs.is_empty());
    let n = space.count() as usize;
    let mismatches: Vec<Option<Disagreement>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let val = space.decode(i as u128);
            let wp_consistent = check_validity(net, &outcome.final_implication, &val);
            let mut oracle = Oracle::new(net, &val);
            oracle.max_sets = config.max_sets;
            let verdict = oracle.triple_holds(triple)?;
            let agree = matches!(
                (&verdict, wp_consistent),
                (TripleVerdict::Holds, true) | (TripleVerdict::Fails(_), false)
            );
            Ok(if agree {
                None
            } else {
                Some(Disagreement {
                    valuation: val,
                    wp_consistent,
                    oracle_verdict: verdict,
                })
            })
        })
        .collect::<Result<_, CapError>>()?;
    Ok(mismatches.into_iter().flatten().collect())
}

/// Compact, exact description of the consistent set: equalities for the
/// parameters that take a single value across it, plus a disjunction over
/// the residual combinations when those equalities alone are not exact.
pub fn describe_solution_set(
    net: &Network,
    space: &ValuationSpace,
    consistent: &[Valuation],
) -> Assertion {
    if consistent.is_empty() {
        return Assertion::False;
    }
    if consistent.len() as u128 == space.count() {
        return Assertion::True;
    }
    let free: Vec<ParamId> = space.free_params().collect();
    let mut fixed = Vec::new();
    let mut residual = Vec::new();
    for &p in &free {
        let first = consistent[0].level(p);
        if consistent.iter().all(|v| v.level(p) == first) {
            fixed.push((p, first));
        } else {
            residual.push(p);
        }
    }
    let eq = |p: ParamId, value: i64| {
        Assertion::atom(Term::Param(p), CmpOp::Eq, Term::Int(value))
    };
    let conj = Assertion::conjunction(fixed.iter().map(|&(p, v)| eq(p, v)).collect());
    let residual_combos: u128 = residual
        .iter()
        .map(|&p| (net.param_bound(p) + 1) as u128)
        .product();
    if consistent.len() as u128 == residual_combos {
        // every residual combination occurs: the equalities are exact
        return conj;
    }
    let disj = Assertion::disjunction(
        consistent
            .iter()
            .map(|v| {
                Assertion::conjunction(residual.iter().map(|&p| eq(p, v.level(p))).collect())
            })
            .collect(),
    );
    if fixed.is_empty() {
        disj
    } else {
        Assertion::and(conj, disj)
    }
}

fn valuation_object(net: &Network, v: &Valuation) -> Value {
    let mut map = Map::new();
    for i in 0..net.params().len() {
        let p = ParamId(i);
        map.insert(net.display_param(p), json!(v.level(p)));
    }
    Value::Object(map)
}

/// Frozen JSON form of a report.
pub fn report_json(
    net: &Network,
    triple: &HoareTriple,
    report: &SolveReport,
    elapsed_ms: u64,
) -> Value {
    let variables: Vec<Value> = net
        .variables()
        .iter()
        .map(|v| json!({ "name": v.name, "bound": v.bound }))
        .collect();
    json!({
        "network": { "variables": variables },
        "triple": {
            "pre": net.show_assertion(&triple.pre),
            "program": net.show_program(&triple.program),
            "post": net.show_assertion(&triple.post),
        },
        "mode": report.mode.name(),
        "total": report.total as u64,
        "consistent": report
            .consistent
            .iter()
            .map(|v| valuation_object(net, v))
            .collect::<Vec<_>>(),
        "undetermined": report
            .undetermined
            .iter()
            .map(|v| valuation_object(net, v))
            .collect::<Vec<_>>(),
        "constraint": net.show_assertion(&report.constraint),
        "elapsed_ms": elapsed_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assertion::eval_assertion;
    use crate::fixtures;
    use crate::model::State;
    use crate::parse::parse_triple;

    fn p1_triple(net: &Network) -> HoareTriple {
        parse_triple(
            net,
            "pre { a=1 & b=0 & c=0 } program { b+; c+; b- } post { b=0 }",
        )
        .unwrap()
    }

    #[test]
    fn valuation_space_counts() {
        assert_eq!(ValuationSpace::new(&fixtures::feedforward_network()).count(), 128);
        assert_eq!(
            ValuationSpace::new(&fixtures::feedforward_network_pinned()).count(),
            64
        );
        let net = crate::parse::parse_network("network { var v : 0 .. 1; }").unwrap();
        assert_eq!(ValuationSpace::new(&net).count(), 2);
        assert_eq!(ValuationSpace::new(&fixtures::loop2_network()).count(), 324);
    }

    #[test]
    fn decode_is_lexicographic_and_respects_pins() {
        let net = fixtures::feedforward_network();
        let space = ValuationSpace::new(&net);
        assert_eq!(space.decode(0).0, vec![0; 7]);
        assert_eq!(space.decode(127).0, vec![1; 7]);
        // last parameter is the fastest digit
        assert_eq!(space.decode(1).0, vec![0, 0, 0, 0, 0, 0, 1]);
        let pinned = fixtures::feedforward_network_pinned();
        let pspace = ValuationSpace::new(&pinned);
        let sigma = crate::model::resolve_param(&pinned, "b", &["sigma".into()])
            .unwrap()
            .0;
        for i in 0..pspace.count() {
            assert_eq!(pspace.decode(i).level(sigma), 0);
        }
    }

    #[test]
    fn solve_p1_gives_sixteen_valuations_in_both_modes() {
        let net = fixtures::feedforward_network();
        let triple = p1_triple(&net);
        for mode in [SolveMode::Wp, SolveMode::Oracle] {
            let config = SolverConfig {
                mode,
                ..Default::default()
            };
            let report = solve_triple(&net, &triple, &config).unwrap();
            assert_eq!(report.total, 128);
            assert_eq!(report.consistent.len(), 16, "mode {}", mode.name());
            assert!(report.undetermined.is_empty());
            let ks = |name: &str| {
                crate::model::resolve_param(
                    &net,
                    &name[0..1],
                    &name[2..]
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(String::from)
                        .collect::<Vec<_>>(),
                )
                .unwrap()
                .0
            };
            let k_bls = ks("b:lambda,sigma");
            let k_bs = ks("b:sigma");
            let k_cl = ks("c:l");
            for v in &report.consistent {
                assert_eq!(v.level(k_bls), 1);
                assert_eq!(v.level(k_bs), 0);
                assert_eq!(v.level(k_cl), 1);
            }
            assert_eq!(
                net.show_assertion(&report.constraint),
                "K[b,{sigma}]=0 & K[b,{lambda,sigma}]=1 & K[c,{l}]=1"
            );
        }
    }

    #[test]
    fn wp_and_oracle_reports_agree_on_p1() {
        let net = fixtures::feedforward_network();
        let triple = p1_triple(&net);
        let wp = solve_triple(&net, &triple, &SolverConfig::default()).unwrap();
        let oracle = solve_triple(
            &net,
            &triple,
            &SolverConfig {
                mode: SolveMode::Oracle,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(wp.consistent, oracle.consistent);
    }

    #[test]
    fn infeasible_program_has_empty_solution_set() {
        let net = fixtures::feedforward_network();
        let triple = parse_triple(
            &net,
            "pre { a=1 & b=0 & c=0 } program { b+; b- } post { b=0 }",
        )
        .unwrap();
        for mode in [SolveMode::Wp, SolveMode::Oracle] {
            let config = SolverConfig {
                mode,
                ..Default::default()
            };
            let report = solve_triple(&net, &triple, &config).unwrap();
            assert!(report.consistent.is_empty());
            assert_eq!(report.constraint, Assertion::False);
        }
    }

    #[test]
    fn false_precondition_accepts_everything() {
        let net = fixtures::feedforward_network();
        let triple = parse_triple(&net, "pre { false } program { b+ } post { false }").unwrap();
        let report = solve_triple(&net, &triple, &SolverConfig::default()).unwrap();
        assert_eq!(report.consistent.len(), 128);
        assert_eq!(report.constraint, Assertion::True);
    }

    #[test]
    fn constraint_refilters_to_the_consistent_set() {
        let net = fixtures::feedforward_network();
        let triple = p1_triple(&net);
        let report = solve_triple(&net, &triple, &SolverConfig::default()).unwrap();
        let space = ValuationSpace::new(&net);
        let dummy = State(vec![0; net.var_count()]);
        let mut refiltered = Vec::new();
        for i in 0..space.count() {
            let v = space.decode(i);
            if eval_assertion(&report.constraint, &dummy, &v) {
                refiltered.push(v);
            }
        }
        assert_eq!(refiltered, report.consistent);
    }

    #[test]
    fn pinning_filters_the_consistent_set() {
        let net = fixtures::feedforward_network();
        let pinned = fixtures::feedforward_network_pinned();
        let full = solve_triple(&net, &p1_triple(&net), &SolverConfig::default()).unwrap();
        let sub = solve_triple(&pinned, &p1_triple(&pinned), &SolverConfig::default()).unwrap();
        // K[b,{sigma}] = 0 already holds on every consistent valuation
        assert_eq!(sub.consistent.len(), full.consistent.len());
        assert_eq!(
            full.consistent.iter().map(|v| &v.0).collect::<Vec<_>>(),
            sub.consistent.iter().map(|v| &v.0).collect::<Vec<_>>()
        );
    }

    #[test]
    fn cross_check_agrees_on_examples() {
        let net = fixtures::feedforward_network();
        assert!(cross_check(&net, &p1_triple(&net), &SolverConfig::default())
            .unwrap()
            .is_empty());
        let loop2 = fixtures::loop2_network();
        let t = parse_triple(
            &loop2,
            "pre { a=0 & b=0 } program { a+; a+; b+ } post { a=2 & b=1 }",
        )
        .unwrap();
        assert!(cross_check(&loop2, &t, &SolverConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn cross_check_rejects_loops() {
        let net = fixtures::loop2_network();
        let t = parse_triple(
            &net,
            "pre { true } program { while a<2 with true do a+ end } post { true }",
        )
        .unwrap();
        assert!(matches!(
            cross_check(&net, &t, &SolverConfig::default()),
            Err(CapError::WhileNotSupportedForCrossCheck)
        ));
    }

    #[test]
    fn valuation_cap_is_enforced() {
        let net = fixtures::feedforward_network();
        let config = SolverConfig {
            cap: 64,
            ..Default::default()
        };
        assert!(matches!(
            solve_triple(&net, &p1_triple(&net), &config),
            Err(CapError::SizeLimitExceeded { size: 128, cap: 64 })
        ));
    }

    #[test]
    fn solving_is_deterministic() {
        let net = fixtures::feedforward_network();
        let triple = p1_triple(&net);
        let a = solve_triple(&net, &triple, &SolverConfig::default()).unwrap();
        let b = solve_triple(&net, &triple, &SolverConfig::default()).unwrap();
        assert_eq!(a, b);
        let ja = report_json(&net, &triple, &a, 0);
        let jb = report_json(&net, &triple, &b, 0);
        assert_eq!(
            serde_json::to_string(&ja).unwrap(),
            serde_json::to_string(&jb).unwrap()
        );
    }
}
