//! Seeded random corpus: small networks and loop-free path programs for
//! the cross-checking and invariant campaigns.

use grn_hoare::{
    parse_network, parse_valuation, validate_network, Assertion, CmpOp, Network, PathProgram,
    RawFormula, RawNetwork, Term, ValuationSpace, VarId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn loop2_network() -> Network {
    parse_network(include_str!("../fixtures/loop2.net")).unwrap()
}

pub fn loop2_valuation(net: &Network) -> grn_hoare::Valuation {
    parse_valuation(net, include_str!("../fixtures/loop2.val")).unwrap()
}

// each integration-test target compiles its own copy of this module, and
// not every target uses every helper
#[allow(dead_code)]
pub fn feedforward_network() -> Network {
    parse_network(include_str!("../fixtures/feedforward.net")).unwrap()
}

fn random_formula(rng: &mut ChaCha8Rng, bounds: &[i64]) -> RawFormula {
    let atom = |rng: &mut ChaCha8Rng| {
        let v = rng.gen_range(0..bounds.len());
        let s = rng.gen_range(1..=bounds[v]);
        RawFormula::VarAtom(format!("v{}", v), s)
    };
    match rng.gen_range(0..4) {
        0 => atom(rng),
        1 => RawFormula::Not(Box::new(atom(rng))),
        2 => RawFormula::And(Box::new(atom(rng)), Box::new(atom(rng))),
        _ => RawFormula::Or(Box::new(atom(rng)), Box::new(atom(rng))),
    }
}

/// Random network with at most 3 variables (bounds at most 2) and at most
/// 2 input multiplexes per variable, kept small enough to enumerate every
/// valuation quickly.
pub fn random_network(rng: &mut ChaCha8Rng, max_valuations: u128) -> Network {
    loop {
        let nv = rng.gen_range(1..=3);
        let bounds: Vec<i64> = (0..nv).map(|_| rng.gen_range(1..=2)).collect();
        let variables: Vec<(String, i64)> = bounds
            .iter()
            .enumerate()
            .map(|(i, b)| (format!("v{}", i), *b))
            .collect();
        let mut multiplexes = Vec::new();
        let mut targets = Vec::new();
        for v in 0..nv {
            let k = rng.gen_range(0..=2);
            let mut names = Vec::new();
            for j in 0..k {
                let name = format!("m{}_{}", v, j);
                multiplexes.push((name.clone(), random_formula(rng, &bounds)));
                names.push(name);
            }
            if !names.is_empty() {
                targets.push((format!("v{}", v), names));
            }
        }
        let raw = RawNetwork {
            variables,
            multiplexes,
            targets,
            params: Vec::new(),
        };
        let net = validate_network(&raw).expect("generated network is valid");
        if ValuationSpace::new(&net).count() <= max_valuations {
            return net;
        }
    }
}

fn random_atom(rng: &mut ChaCha8Rng, net: &Network) -> Assertion {
    let v = VarId(rng.gen_range(0..net.var_count()));
    let op = match rng.gen_range(0..5) {
        0 => CmpOp::Eq,
        1 => CmpOp::Lt,
        2 => CmpOp::Gt,
        3 => CmpOp::Le,
        _ => CmpOp::Ge,
    };
    let k = rng.gen_range(0..=net.bound(v));
    Assertion::atom(Term::Var(v), op, Term::Int(k))
}

pub fn random_assertion(rng: &mut ChaCha8Rng, net: &Network, depth: u32) -> Assertion {
    if depth == 0 {
        return random_atom(rng, net);
    }
    match rng.gen_range(0..5) {
        0 => random_atom(rng, net),
        1 => Assertion::not(random_assertion(rng, net, depth - 1)),
        2 => Assertion::and(
            random_assertion(rng, net, depth - 1),
            random_assertion(rng, net, depth - 1),
        ),
        3 => Assertion::or(
            random_assertion(rng, net, depth - 1),
            random_assertion(rng, net, depth - 1),
        ),
        _ => Assertion::implies(
            random_assertion(rng, net, depth - 1),
            random_assertion(rng, net, depth - 1),
        ),
    }
}

fn random_leaf(rng: &mut ChaCha8Rng, net: &Network) -> PathProgram {
    let v = VarId(rng.gen_range(0..net.var_count()));
    match rng.gen_range(0..4) {
        0 => PathProgram::Inc(v),
        1 => PathProgram::Dec(v),
        2 => PathProgram::Assign(v, rng.gen_range(0..=net.bound(v))),
        _ => PathProgram::Assert(random_assertion(rng, net, 1)),
    }
}

/// Random loop-free program of the given depth, covering sequence,
/// branching and both quantifiers.
pub fn random_loopfree_program(rng: &mut ChaCha8Rng, net: &Network, depth: u32) -> PathProgram {
    if depth == 0 {
        return random_leaf(rng, net);
    }
    match rng.gen_range(0..8) {
        0 | 1 => random_leaf(rng, net),
        2 | 3 => {
            let n = rng.gen_range(2..=3);
            PathProgram::seq(
                (0..n)
                    .map(|_| random_loopfree_program(rng, net, depth - 1))
                    .collect(),
            )
        }
        4 => PathProgram::If {
            cond: random_assertion(rng, net, 1),
            then_branch: Box::new(random_loopfree_program(rng, net, depth - 1)),
            else_branch: Box::new(random_loopfree_program(rng, net, depth - 1)),
        },
        5 | 6 => PathProgram::forall(
            (0..rng.gen_range(2..=3))
                .map(|_| random_loopfree_program(rng, net, depth - 1))
                .collect(),
        ),
        _ => PathProgram::exists(
            (0..rng.gen_range(2..=3))
                .map(|_| random_loopfree_program(rng, net, depth - 1))
                .collect(),
        ),
    }
}
