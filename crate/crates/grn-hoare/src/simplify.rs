//! Boundary-axiom-aware simplification of assertions.
//!
//! The simplifier normalizes atoms to linear form, bounds every symbol by
//! its boundary axioms (`0 <= v <= b_v`, `0 <= K <= b_v`, pinned parameters
//! collapse to a point) and decides atoms by interval reasoning. Within a
//! conjunction, facts established by sibling conjuncts refine the symbol
//! intervals used for the others, and an implication's consequent is
//! simplified under its antecedent. The result is semantically equivalent
//! over all in-bounds (state, valuation) pairs; it is best-effort and makes
//! no canonical-form promise beyond propagating decided atoms.

use std::collections::BTreeMap;

use crate::assertion::{Assertion, CmpOp, Term};
use crate::model::{Network, ParamId, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Sym {
    Var(VarId),
    Param(ParamId),
}

impl Sym {
    fn term(self) -> Term {
        match self {
            Sym::Var(v) => Term::Var(v),
            Sym::Param(p) => Term::Param(p),
        }
    }
}

/// Symbol intervals in force at the current point of the traversal.
#[derive(Debug, Clone)]
struct Ctx<'n> {
    net: &'n Network,
    ranges: BTreeMap<Sym, (i64, i64)>,
}

impl<'n> Ctx<'n> {
    fn base(net: &'n Network) -> Self {
        Ctx {
            net,
            ranges: BTreeMap::new(),
        }
    }

    fn range(&self, sym: Sym) -> (i64, i64) {
        if let Some(r) = self.ranges.get(&sym) {
            return *r;
        }
        match sym {
            Sym::Var(v) => (0, self.net.bound(v)),
            Sym::Param(p) => match self.net.fixed_value(p) {
                Some(k) => (k, k),
                None => (0, self.net.param_bound(p)),
            },
        }
    }

    /// Intersect the known range of `sym` with `[lo, hi]`.
    /// Returns false when the intersection is empty.
    fn refine(&mut self, sym: Sym, lo: i64, hi: i64) -> bool {
        let (cur_lo, cur_hi) = self.range(sym);
        let lo = lo.max(cur_lo);
        let hi = hi.min(cur_hi);
        if lo > hi {
            return false;
        }
        self.ranges.insert(sym, (lo, hi));
        true
    }

    /// Absorb the atom-level facts of an assertion already known to hold.
    /// Returns false when the facts contradict the current context.
    fn absorb_facts(&mut self, a: &Assertion) -> bool {
        match a {
            Assertion::True => true,
            Assertion::False => false,
            Assertion::And(l, r) => self.absorb_facts(l) && self.absorb_facts(r),
            Assertion::Atom(lhs, op, rhs) => self.absorb_atom(lhs, *op, rhs),
            Assertion::Not(inner) => {
                if let Assertion::Atom(lhs, op, rhs) = inner.as_ref() {
                    if let Some(neg) = op.negated() {
                        return self.absorb_atom(lhs, neg, rhs);
                    }
                }
                true
            }
            _ => true,
        }
    }

    fn absorb_atom(&mut self, lhs: &Term, op: CmpOp, rhs: &Term) -> bool {
        let lin = Linear::of_term(lhs).sub(&Linear::of_term(rhs));
        if lin.coeffs.len() != 1 {
            return true;
        }
        let (&sym, &coeff) = lin.coeffs.iter().next().unwrap();
        let (lo, hi) = self.range(sym);
        match feasible(coeff, lin.constant, op, lo, hi) {
            Feasible::Empty => false,
            Feasible::All => true,
            Feasible::Interval(l, u) => self.refine(sym, l, u),
        }
    }
}

/// Sum of unit-coefficient symbols and a constant; what `+`/`-` terms
/// normalize to.
#[derive(Debug, Clone, Default)]
struct Linear {
    coeffs: BTreeMap<Sym, i64>,
    constant: i64,
}

impl Linear {
    fn of_term(term: &Term) -> Linear {
        let mut lin = Linear::default();
        lin.add_term(term, 1);
        lin
    }

    fn add_term(&mut self, term: &Term, sign: i64) {
        match term {
            Term::Int(n) => self.constant += sign * n,
            Term::Var(v) => *self.coeffs.entry(Sym::Var(*v)).or_insert(0) += sign,
            Term::Param(p) => *self.coeffs.entry(Sym::Param(*p)).or_insert(0) += sign,
            Term::Add(a, b) => {
                self.add_term(a, sign);
                self.add_term(b, sign);
            }
            Term::Sub(a, b) => {
                self.add_term(a, sign);
                self.add_term(b, -sign);
            }
        }
    }

    fn sub(mut self, other: &Linear) -> Linear {
        self.constant -= other.constant;
        for (sym, c) in &other.coeffs {
            *self.coeffs.entry(*sym).or_insert(0) -= c;
        }
        self.coeffs.retain(|_, c| *c != 0);
        self
    }

    /// Fold symbols whose context range is a single point into the constant.
    fn fold_points(&mut self, ctx: &Ctx) {
        let mut folded = Vec::new();
        for (sym, coeff) in &self.coeffs {
            let (lo, hi) = ctx.range(*sym);
            if lo == hi {
                folded.push((*sym, coeff * lo));
            }
        }
        for (sym, value) in folded {
            self.constant += value;
            self.coeffs.remove(&sym);
        }
    }

    fn value_range(&self, ctx: &Ctx) -> (i64, i64) {
        let mut lo = self.constant;
        let mut hi = self.constant;
        for (sym, coeff) in &self.coeffs {
            let (slo, shi) = ctx.range(*sym);
            if *coeff >= 0 {
                lo += coeff * slo;
                hi += coeff * shi;
            } else {
                lo += coeff * shi;
                hi += coeff * slo;
            }
        }
        (lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Feasible {
    Empty,
    /// The whole `[lo, hi]` range satisfies the atom.
    All,
    Interval(i64, i64),
}

/// Integer solution set of `coeff*x + constant OP 0` within `x in [lo, hi]`.
fn feasible(coeff: i64, constant: i64, op: CmpOp, lo: i64, hi: i64) -> Feasible {
    let (a, c, op) = if coeff < 0 {
        let flipped = match op {
            CmpOp::Eq => CmpOp::Eq,
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::Le => CmpOp::Ge,
            CmpOp::Ge => CmpOp::Le,
        };
        (-coeff, -constant, flipped)
    } else {
        (coeff, constant, op)
    };
    debug_assert!(a > 0);
    // a*x + c OP 0, a > 0
    let (mut l, mut u) = (lo, hi);
    match op {
        CmpOp::Eq => {
            if (-c).rem_euclid(a) != 0 {
                return Feasible::Empty;
            }
            let x = (-c).div_euclid(a);
            l = l.max(x);
            u = u.min(x);
        }
        CmpOp::Lt => u = u.min((-c - 1).div_euclid(a)),
        CmpOp::Le => u = u.min((-c).div_euclid(a)),
        CmpOp::Gt => l = l.max((-c).div_euclid(a) + 1),
        CmpOp::Ge => l = l.max(-(c.div_euclid(a))),
    }
    if l > u {
        Feasible::Empty
    } else if l == lo && u == hi {
        Feasible::All
    } else {
        Feasible::Interval(l, u)
    }
}

/// Simplify an assertion under the network's boundary axioms. Semantics
/// preserving for every in-bounds (state, valuation) pair.
pub fn simplify(net: &Network, assertion: &Assertion) -> Assertion {
    simp(&Ctx::base(net), assertion)
}

fn simp(ctx: &Ctx, a: &Assertion) -> Assertion {
    match a {
        Assertion::True | Assertion::False => a.clone(),
        Assertion::Atom(lhs, op, rhs) => simp_atom(ctx, lhs, *op, rhs),
        Assertion::Not(inner) => match simp(ctx, inner) {
            Assertion::True => Assertion::False,
            Assertion::False => Assertion::True,
            Assertion::Atom(lhs, op, rhs) => match op.negated() {
                Some(neg) => simp_atom(ctx, &lhs, neg, &rhs),
                None => negate_eq_atom(ctx, &lhs, &rhs)
                    .unwrap_or_else(|| Assertion::not(Assertion::Atom(lhs, op, rhs))),
            },
            Assertion::Not(x) => *x,
            other => Assertion::not(other),
        },
        Assertion::And(_, _) => {
            let mut parts = Vec::new();
            flatten_and(a, &mut parts);
            simp_and(ctx, &parts)
        }
        Assertion::Or(l, r) => {
            let mut branches = Vec::new();
            for side in [l.as_ref(), r.as_ref()] {
                match simp(ctx, side) {
                    Assertion::True => return Assertion::True,
                    Assertion::False => {}
                    other => {
                        if !branches.contains(&other) {
                            branches.push(other);
                        }
                    }
                }
            }
            Assertion::disjunction(branches)
        }
        Assertion::Implies(ant, cons) => {
            let p = simp(ctx, ant);
            match p {
                Assertion::False => Assertion::True,
                Assertion::True => simp(ctx, cons),
                p => {
                    let mut local = ctx.clone();
                    if !local.absorb_facts(&p) {
                        // antecedent cannot hold in this context
                        return Assertion::True;
                    }
                    match simp(&local, cons) {
                        Assertion::True => Assertion::True,
                        Assertion::False => simp(ctx, &Assertion::not(p)),
                        q => Assertion::implies(p, q),
                    }
                }
            }
        }
    }
}

fn flatten_and(a: &Assertion, out: &mut Vec<Assertion>) {
    match a {
        Assertion::And(l, r) => {
            flatten_and(l, out);
            flatten_and(r, out);
        }
        other => out.push(other.clone()),
    }
}

/// Two fact-propagation passes over the conjuncts: left-to-right, then
/// right-to-left, so that a late conjunct such as `b-1=0` also reaches the
/// conjuncts before it. Each conjunct is simplified under the facts of the
/// conjuncts that remain on its fact side, which keeps the whole
/// conjunction equivalent.
fn simp_and(ctx: &Ctx, parts: &[Assertion]) -> Assertion {
    let mut forward: Vec<Assertion> = Vec::new();
    for part in parts {
        let mut local = ctx.clone();
        for prev in &forward {
            if !local.absorb_facts(prev) {
                return Assertion::False;
            }
        }
        match simp(&local, part) {
            Assertion::False => return Assertion::False,
            Assertion::True => {}
            s => flatten_and(&s, &mut forward),
        }
    }

    let mut backward_rev: Vec<Assertion> = Vec::new();
    for part in forward.iter().rev() {
        let mut local = ctx.clone();
        for later in &backward_rev {
            if !local.absorb_facts(later) {
                return Assertion::False;
            }
        }
        match simp(&local, part) {
            Assertion::False => return Assertion::False,
            Assertion::True => {}
            s => flatten_and(&s, &mut backward_rev),
        }
    }
    backward_rev.reverse();

    let mut seen = Vec::new();
    for part in backward_rev {
        if !seen.contains(&part) {
            seen.push(part);
        }
    }
    Assertion::conjunction(seen)
}

fn simp_atom(ctx: &Ctx, lhs: &Term, op: CmpOp, rhs: &Term) -> Assertion {
    let mut lin = Linear::of_term(lhs).sub(&Linear::of_term(rhs));
    lin.fold_points(ctx);

    if lin.coeffs.is_empty() {
        return if op.eval(lin.constant, 0) {
            Assertion::True
        } else {
            Assertion::False
        };
    }

    let (lo, hi) = lin.value_range(ctx);
    let decided = match op {
        CmpOp::Eq => {
            if lo > 0 || hi < 0 {
                Some(false)
            } else if lo == 0 && hi == 0 {
                Some(true)
            } else {
                None
            }
        }
        CmpOp::Lt => decide(hi < 0, lo >= 0),
        CmpOp::Le => decide(hi <= 0, lo > 0),
        CmpOp::Gt => decide(lo > 0, hi <= 0),
        CmpOp::Ge => decide(lo >= 0, hi < 0),
    };
    if let Some(truth) = decided {
        return if truth {
            Assertion::True
        } else {
            Assertion::False
        };
    }

    if lin.coeffs.len() == 1 {
        let (&sym, &coeff) = lin.coeffs.iter().next().unwrap();
        let (slo, shi) = ctx.range(sym);
        return match feasible(coeff, lin.constant, op, slo, shi) {
            Feasible::Empty => Assertion::False,
            Feasible::All => Assertion::True,
            Feasible::Interval(l, u) => {
                if l == u {
                    Assertion::atom(sym.term(), CmpOp::Eq, Term::Int(l))
                } else if l > slo && u < shi {
                    Assertion::and(
                        Assertion::atom(sym.term(), CmpOp::Ge, Term::Int(l)),
                        Assertion::atom(sym.term(), CmpOp::Le, Term::Int(u)),
                    )
                } else if l > slo {
                    Assertion::atom(sym.term(), CmpOp::Ge, Term::Int(l))
                } else {
                    Assertion::atom(sym.term(), CmpOp::Le, Term::Int(u))
                }
            }
        };
    }

    Assertion::Atom(lhs.clone(), op, rhs.clone())
}

/// `!(t = t')` over a single bounded symbol: the complement of a point is
/// contiguous only when the point sits at an end of the range.
fn negate_eq_atom(ctx: &Ctx, lhs: &Term, rhs: &Term) -> Option<Assertion> {
    let mut lin = Linear::of_term(lhs).sub(&Linear::of_term(rhs));
    lin.fold_points(ctx);
    if lin.coeffs.len() != 1 {
        return None;
    }
    let (&sym, &coeff) = lin.coeffs.iter().next().unwrap();
    let (slo, shi) = ctx.range(sym);
    match feasible(coeff, lin.constant, CmpOp::Eq, slo, shi) {
        Feasible::Empty => Some(Assertion::True),
        Feasible::All => Some(Assertion::False),
        Feasible::Interval(x, y) => {
            debug_assert_eq!(x, y);
            let (l, u) = if x == slo {
                (slo + 1, shi)
            } else if x == shi {
                (slo, shi - 1)
            } else {
                return None;
            };
            Some(if l == u {
                Assertion::atom(sym.term(), CmpOp::Eq, Term::Int(l))
            } else if x == slo {
                Assertion::atom(sym.term(), CmpOp::Ge, Term::Int(l))
            } else {
                Assertion::atom(sym.term(), CmpOp::Le, Term::Int(u))
            })
        }
    }
}

fn decide(yes: bool, no: bool) -> Option<bool> {
    if yes {
        Some(true)
    } else if no {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assertion::{check_satisfiability, eval_assertion};
    use crate::fixtures;
    use crate::parse::parse_assertion;
    use crate::solver::ValuationSpace;

    fn equivalent(net: &Network, a: &Assertion, b: &Assertion) -> bool {
        let space = ValuationSpace::new(net);
        let states = net.enumerate_states();
        (0..space.count()).all(|i| {
            let val = space.decode(i);
            states
                .iter()
                .all(|s| eval_assertion(a, s, &val) == eval_assertion(b, s, &val))
        })
    }

    #[test]
    fn boundary_atoms_decide() {
        let net = fixtures::loop2_network();
        let a = parse_assertion(&net, "a>=0").unwrap();
        assert_eq!(simplify(&net, &a), Assertion::True);
        let a = parse_assertion(&net, "b<=1").unwrap();
        assert_eq!(simplify(&net, &a), Assertion::True);
        let a = parse_assertion(&net, "a>2").unwrap();
        assert_eq!(simplify(&net, &a), Assertion::False);
    }

    #[test]
    fn negated_threshold_pins_boolean() {
        let net = fixtures::feedforward_network();
        // b_c = 1, so !(c>=1) is c=0
        let a = parse_assertion(&net, "!(c>=1)").unwrap();
        let s = simplify(&net, &a);
        assert_eq!(net.show_assertion(&s), "c=0");
    }

    #[test]
    fn conflicting_pins_collapse_to_false() {
        let net = fixtures::feedforward_network();
        let a = parse_assertion(&net, "K[b,{sigma}]=1 & K[b,{sigma}]=0").unwrap();
        assert_eq!(simplify(&net, &a), Assertion::False);
    }

    #[test]
    fn late_fact_reaches_earlier_conjuncts() {
        let net = fixtures::feedforward_network();
        // K[b,{sigma}] < b is undecided alone; with b-1=0 it pins to 0.
        let a = parse_assertion(&net, "(K[b,{sigma}]<b) & b-1=0").unwrap();
        let s = simplify(&net, &a);
        assert_eq!(net.show_assertion(&s), "K[b,{sigma}]=0 & b=1");
        assert!(equivalent(&net, &a, &s));
    }

    #[test]
    fn q1_shape_from_phi_minus_conjunct() {
        let net = fixtures::feedforward_network();
        // One clause of the Q1 derivation: the sigma-lambda case.
        let a = parse_assertion(
            &net,
            "((!!(c>=1) & a>=1) => K[b,{sigma}]<b) & b-1=0",
        )
        .unwrap();
        let s = simplify(&net, &a);
        assert_eq!(
            net.show_assertion(&s),
            "(c=1 & a=1 => K[b,{sigma}]=0) & b=1"
        );
        assert!(equivalent(&net, &a, &s));
    }

    #[test]
    fn tautological_implication_is_dropped() {
        let net = fixtures::feedforward_network();
        // c+1 >= 1 always holds; c+1 < 1 never does
        let a = parse_assertion(&net, "(c+1>=1 => b=0) & (c+1<1 => b=1)").unwrap();
        let s = simplify(&net, &a);
        assert_eq!(net.show_assertion(&s), "b=0");
        assert!(equivalent(&net, &a, &s));
    }

    #[test]
    fn simplify_preserves_semantics_exhaustively() {
        let net = fixtures::loop2_network();
        let samples = [
            "a=1 | !(b>=1) & a-b>=1",
            "(a+b<2 => K[a,{}]>a) & b=1",
            "!(a=0 & b=0) => a+1<=2",
            "K[a,{mu1,mu3}]-K[a,{}]>=1 & a>=2 | b<1",
            "a-1>=0 & a-1<=0",
        ];
        for text in samples {
            let a = parse_assertion(&net, text).unwrap();
            let s = simplify(&net, &a);
            assert!(equivalent(&net, &a, &s), "not equivalent for {}", text);
        }
    }

    #[test]
    fn simplify_respects_pinned_parameters() {
        let net = fixtures::feedforward_network_pinned();
        // K[b,{sigma}] is pinned to 0 in this network
        let a = parse_assertion(&net, "K[b,{sigma}]=0").unwrap();
        assert_eq!(simplify(&net, &a), Assertion::True);
        let a = parse_assertion(&net, "K[b,{sigma}]>=1").unwrap();
        assert_eq!(simplify(&net, &a), Assertion::False);
    }

    #[test]
    fn unsatisfiable_conjunction_reported_by_enumeration() {
        let net = fixtures::feedforward_network();
        // Q4-style: antecedents cover all cases, each forcing 1 = 0
        let a = parse_assertion(
            &net,
            "(c>=1 => K[b,{sigma}]=1 & K[b,{sigma}]=0) & (c<1 => K[b,{lambda}]=1 & K[b,{lambda}]=0)",
        )
        .unwrap();
        assert!(!check_satisfiability(&net, &a, 1 << 20).unwrap());
        let s = simplify(&net, &a);
        assert!(equivalent(&net, &a, &s));
    }
}
