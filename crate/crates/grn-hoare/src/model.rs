//! Core network model: variables, multiplexes, logical parameters, states
//! and the asynchronous state graph.
//!
//! A network is a bipartite-ish labeled graph: variables carry an integer
//! bound, multiplexes carry a propositional formula over threshold atoms
//! `v >= s` and other multiplexes. Each variable `v` owns one logical
//! parameter `K[v,w]` per subset `w` of its predecessor multiplexes; the
//! parameter is the focal level `v` drifts toward when exactly the
//! multiplexes of `w` are satisfied.

use std::collections::HashMap;
use std::fmt;

use crate::error::ModelError;

/// Index of a variable in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

/// Index of a multiplex in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MxId(pub usize);

/// Index into the canonical parameter list of a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplex {
    pub name: String,
    pub formula: MultiplexFormula,
}

/// Propositional formula labelling a multiplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiplexFormula {
    /// `v >= s`
    VarAtom(VarId, i64),
    /// Reference to another multiplex, replaced by its formula on flattening.
    MxAtom(MxId),
    Not(Box<MultiplexFormula>),
    And(Box<MultiplexFormula>, Box<MultiplexFormula>),
    Or(Box<MultiplexFormula>, Box<MultiplexFormula>),
}

/// A logical parameter symbol `K[v,w]`. The resource set is kept sorted by
/// multiplex name so that equal sets always compare and print identically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamSymbol {
    pub var: VarId,
    pub omega: Vec<MxId>,
}

/// Total map variable -> level, indexed by `VarId`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(pub Vec<i64>);

impl State {
    pub fn level(&self, v: VarId) -> i64 {
        self.0[v.0]
    }

    pub fn with_level(&self, v: VarId, k: i64) -> State {
        let mut levels = self.0.clone();
        levels[v.0] = k;
        State(levels)
    }
}

/// Total map parameter symbol -> level, indexed by `ParamId` in the
/// network's canonical parameter order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(pub Vec<i64>);

impl Valuation {
    pub fn level(&self, p: ParamId) -> i64 {
        self.0[p.0]
    }
}

/// Unvalidated network description as produced by the parser.
#[derive(Debug, Clone, Default)]
pub struct RawNetwork {
    pub variables: Vec<(String, i64)>,
    pub multiplexes: Vec<(String, RawFormula)>,
    /// `target v <- m1, m2;` statements, in declaration order.
    pub targets: Vec<(String, Vec<String>)>,
    /// `param K[v,{...}] = n;` statements pinning parameter values.
    pub params: Vec<(String, Vec<String>, i64)>,
}

/// Multiplex formula over names, before symbol resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawFormula {
    VarAtom(String, i64),
    /// A bare identifier: variable-free atom naming another multiplex.
    NameAtom(String),
    Not(Box<RawFormula>),
    And(Box<RawFormula>, Box<RawFormula>),
    Or(Box<RawFormula>, Box<RawFormula>),
}

/// A validated gene regulatory network.
#[derive(Debug, Clone)]
pub struct Network {
    variables: Vec<Variable>,
    multiplexes: Vec<Multiplex>,
    var_index: HashMap<String, VarId>,
    mx_index: HashMap<String, MxId>,
    /// Predecessor multiplexes of each variable, sorted by multiplex name.
    predecessors: Vec<Vec<MxId>>,
    /// Flattened formula of each multiplex (only `VarAtom`s).
    flattened: Vec<MultiplexFormula>,
    /// Canonical parameter list: variables in declaration order, resource
    /// subsets in binary-counter order over the sorted predecessor list.
    params: Vec<ParamSymbol>,
    param_index: HashMap<ParamSymbol, ParamId>,
    /// User-pinned parameter values, parallel to `params`.
    fixed: Vec<Option<i64>>,
}

impl Network {
    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn multiplexes(&self) -> &[Multiplex] {
        &self.multiplexes
    }

    pub fn var_count(&self) -> usize {
        self.variables.len()
    }

    pub fn bound(&self, v: VarId) -> i64 {
        self.variables[v.0].bound
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.variables[v.0].name
    }

    pub fn mx_name(&self, m: MxId) -> &str {
        &self.multiplexes[m.0].name
    }

    pub fn lookup_var(&self, name: &str) -> Option<VarId> {
        self.var_index.get(name).copied()
    }

    pub fn lookup_mx(&self, name: &str) -> Option<MxId> {
        self.mx_index.get(name).copied()
    }

    /// `N^-1(v)`: input multiplexes of `v`, sorted by name.
    pub fn predecessors(&self, v: VarId) -> &[MxId] {
        &self.predecessors[v.0]
    }

    pub fn params(&self) -> &[ParamSymbol] {
        &self.params
    }

    pub fn param_symbol(&self, p: ParamId) -> &ParamSymbol {
        &self.params[p.0]
    }

    pub fn fixed_value(&self, p: ParamId) -> Option<i64> {
        self.fixed[p.0]
    }

    /// Bound of the variable a parameter belongs to.
    pub fn param_bound(&self, p: ParamId) -> i64 {
        self.bound(self.params[p.0].var)
    }

    pub fn lookup_param(&self, var: VarId, omega: &[MxId]) -> Option<ParamId> {
        let mut omega = omega.to_vec();
        self.sort_omega(&mut omega);
        self.param_index
            .get(&ParamSymbol { var, omega })
            .copied()
    }

    fn sort_omega(&self, omega: &mut Vec<MxId>) {
        omega.sort_by(|a, b| self.mx_name(*a).cmp(self.mx_name(*b)));
        omega.dedup();
    }

    /// Resolve the parameter for variable `v` under resource set `omega`
    /// given as the subset mask over `predecessors(v)`.
    pub fn param_for_mask(&self, v: VarId, mask: usize) -> ParamId {
        let preds = &self.predecessors[v.0];
        let omega: Vec<MxId> = preds
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, m)| *m)
            .collect();
        self.param_index[&ParamSymbol { var: v, omega }]
    }

    pub fn display_param(&self, p: ParamId) -> String {
        let sym = &self.params[p.0];
        let names: Vec<&str> = sym.omega.iter().map(|m| self.mx_name(*m)).collect();
        format!("K[{},{{{}}}]", self.var_name(sym.var), names.join(","))
    }

    /// Flattened formula of a multiplex: only `VarAtom`s remain.
    pub fn flatten(&self, m: MxId) -> &MultiplexFormula {
        &self.flattened[m.0]
    }

    /// Truth of a (flattened or not) multiplex formula at a state.
    pub fn holds(&self, formula: &MultiplexFormula, state: &State) -> bool {
        match formula {
            MultiplexFormula::VarAtom(v, s) => state.level(*v) >= *s,
            MultiplexFormula::MxAtom(m) => self.holds(&self.flattened[m.0], state),
            MultiplexFormula::Not(f) => !self.holds(f, state),
            MultiplexFormula::And(a, b) => self.holds(a, state) && self.holds(b, state),
            MultiplexFormula::Or(a, b) => self.holds(a, state) || self.holds(b, state),
        }
    }

    /// `rho(eta, v)`: the input multiplexes of `v` whose flattened formulas
    /// hold at `state`. Sorted by multiplex name.
    pub fn resources(&self, state: &State, v: VarId) -> Vec<MxId> {
        self.predecessors[v.0]
            .iter()
            .copied()
            .filter(|m| self.holds(&self.flattened[m.0], state))
            .collect()
    }

    /// Subset mask of `resources(state, v)` over `predecessors(v)`.
    pub fn resource_mask(&self, state: &State, v: VarId) -> usize {
        let mut mask = 0;
        for (i, m) in self.predecessors[v.0].iter().enumerate() {
            if self.holds(&self.flattened[m.0], state) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Focal level `K[v, rho(eta, v)]` of `v` at `state`.
    pub fn focal_level(&self, valuation: &Valuation, state: &State, v: VarId) -> i64 {
        let mask = self.resource_mask(state, v);
        valuation.level(self.param_for_mask(v, mask))
    }

    /// Successor states in the asynchronous state graph. A stable state has
    /// itself as its only successor; otherwise each unstable variable moves
    /// by one unit toward its focal level.
    pub fn successors(&self, valuation: &Valuation, state: &State) -> Vec<State> {
        let mut result = Vec::new();
        for (i, _) in self.variables.iter().enumerate() {
            let v = VarId(i);
            let level = state.level(v);
            let focal = self.focal_level(valuation, state, v);
            if level < focal {
                result.push(state.with_level(v, level + 1));
            } else if level > focal {
                result.push(state.with_level(v, level - 1));
            }
        }
        if result.is_empty() {
            result.push(state.clone());
        }
        result
    }

    /// Whether the transition `state -> state.with_level(v, level+1)` exists.
    pub fn can_increase(&self, valuation: &Valuation, state: &State, v: VarId) -> bool {
        state.level(v) < self.focal_level(valuation, state, v)
    }

    /// Whether the transition `state -> state.with_level(v, level-1)` exists.
    pub fn can_decrease(&self, valuation: &Valuation, state: &State, v: VarId) -> bool {
        state.level(v) > self.focal_level(valuation, state, v)
    }

    pub fn is_stable(&self, valuation: &Valuation, state: &State) -> bool {
        (0..self.variables.len()).all(|i| {
            let v = VarId(i);
            state.level(v) == self.focal_level(valuation, state, v)
        })
    }

    /// Number of states, `prod (b_v + 1)`.
    pub fn state_count(&self) -> u128 {
        self.variables
            .iter()
            .map(|v| (v.bound + 1) as u128)
            .product()
    }

    /// All states in lexicographic order by variable declaration order.
    pub fn enumerate_states(&self) -> Vec<State> {
        let mut states = Vec::new();
        let mut current = vec![0i64; self.variables.len()];
        loop {
            states.push(State(current.clone()));
            // odometer: last variable varies fastest
            let mut i = self.variables.len();
            loop {
                if i == 0 {
                    return states;
                }
                i -= 1;
                if current[i] < self.variables[i].bound {
                    current[i] += 1;
                    break;
                }
                current[i] = 0;
            }
        }
    }

    pub fn display_state(&self, state: &State) -> String {
        let parts: Vec<String> = self
            .variables
            .iter()
            .zip(&state.0)
            .map(|(v, l)| format!("{}={}", v.name, l))
            .collect();
        parts.join(",")
    }
}

/// Check all network invariants and derive the validated form.
pub fn validate_network(raw: &RawNetwork) -> Result<Network, ModelError> {
    let mut var_index = HashMap::new();
    let mut mx_index = HashMap::new();
    let mut variables = Vec::new();
    for (name, bound) in &raw.variables {
        if var_index.contains_key(name) {
            return Err(ModelError::DuplicateName(name.clone()));
        }
        var_index.insert(name.clone(), VarId(variables.len()));
        variables.push(Variable {
            name: name.clone(),
            bound: *bound,
        });
    }
    for (i, (name, _)) in raw.multiplexes.iter().enumerate() {
        if var_index.contains_key(name) || mx_index.contains_key(name) {
            return Err(ModelError::DuplicateName(name.clone()));
        }
        mx_index.insert(name.clone(), MxId(i));
    }

    // Resolve formulas. A bare identifier must name a multiplex; `v >= s`
    // atoms must respect the bound of `v`.
    let mut multiplexes = Vec::new();
    for (name, raw_formula) in &raw.multiplexes {
        let formula = resolve_formula(raw_formula, &var_index, &mx_index, &variables)?;
        multiplexes.push(Multiplex {
            name: name.clone(),
            formula,
        });
    }

    // The multiplex-only subgraph must be acyclic (flattening terminates).
    let mut flattened: Vec<Option<MultiplexFormula>> = vec![None; multiplexes.len()];
    let mut in_progress = vec![false; multiplexes.len()];
    for i in 0..multiplexes.len() {
        flatten_rec(MxId(i), &multiplexes, &mut flattened, &mut in_progress)?;
    }
    let flattened: Vec<MultiplexFormula> = flattened.into_iter().map(|f| f.unwrap()).collect();

    // Targets: N^-1(v), sorted by multiplex name, duplicates collapsed.
    let mut predecessors: Vec<Vec<MxId>> = vec![Vec::new(); variables.len()];
    for (var, mxs) in &raw.targets {
        let v = *var_index
            .get(var)
            .ok_or_else(|| ModelError::UnknownName(var.clone()))?;
        for mx in mxs {
            let m = *mx_index
                .get(mx)
                .ok_or_else(|| ModelError::UnknownName(mx.clone()))?;
            predecessors[v.0].push(m);
        }
    }
    for (v, preds) in predecessors.iter_mut().enumerate() {
        preds.sort_by(|a, b| raw.multiplexes[a.0].0.cmp(&raw.multiplexes[b.0].0));
        preds.dedup();
        if preds.len() >= usize::BITS as usize - 1 {
            // subset masks would overflow; desk-scale networks never get here
            return Err(ModelError::UnknownName(format!(
                "too many predecessors for {}",
                variables[v].name
            )));
        }
    }

    // Canonical parameter list.
    let mut params = Vec::new();
    let mut param_index = HashMap::new();
    for (i, _) in variables.iter().enumerate() {
        let v = VarId(i);
        let preds = &predecessors[i];
        for mask in 0..(1usize << preds.len()) {
            let omega: Vec<MxId> = preds
                .iter()
                .enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0)
                .map(|(_, m)| *m)
                .collect();
            let sym = ParamSymbol { var: v, omega };
            param_index.insert(sym.clone(), ParamId(params.len()));
            params.push(sym);
        }
    }

    let mut network = Network {
        variables,
        multiplexes,
        var_index,
        mx_index,
        predecessors,
        flattened,
        params,
        param_index,
        fixed: Vec::new(),
    };
    network.fixed = vec![None; network.params.len()];

    // Pinned parameters: the index set must be a subset of N^-1(v) and the
    // value must respect the boundary axioms.
    for (var, omega_names, value) in &raw.params {
        let (p, bound) = resolve_param(&network, var, omega_names)?;
        if *value < 0 || *value > bound {
            return Err(ModelError::ParamOutOfBounds {
                symbol: network.display_param(p),
                value: *value,
                bound,
            });
        }
        network.fixed[p.0] = Some(*value);
    }

    Ok(network)
}

/// Resolve a `K[v,{...}]` reference against a validated network.
pub fn resolve_param(
    network: &Network,
    var: &str,
    omega_names: &[String],
) -> Result<(ParamId, i64), ModelError> {
    let v = network
        .lookup_var(var)
        .ok_or_else(|| ModelError::UnknownName(var.to_string()))?;
    let mut omega = Vec::new();
    for name in omega_names {
        let m = network
            .lookup_mx(name)
            .ok_or_else(|| ModelError::UnknownName(name.clone()))?;
        omega.push(m);
    }
    let symbol_text = format!("K[{},{{{}}}]", var, omega_names.join(","));
    let p = network
        .lookup_param(v, &omega)
        .ok_or(ModelError::ParamIndexNotSubsetOfPredecessors {
            symbol: symbol_text,
            var: var.to_string(),
        })?;
    Ok((p, network.bound(v)))
}

fn resolve_formula(
    raw: &RawFormula,
    var_index: &HashMap<String, VarId>,
    mx_index: &HashMap<String, MxId>,
    variables: &[Variable],
) -> Result<MultiplexFormula, ModelError> {
    Ok(match raw {
        RawFormula::VarAtom(name, s) => {
            let v = *var_index
                .get(name)
                .ok_or_else(|| ModelError::UnknownName(name.clone()))?;
            let bound = variables[v.0].bound;
            if *s < 1 || *s > bound {
                return Err(ModelError::ThresholdOutOfRange {
                    var: name.clone(),
                    threshold: *s,
                    bound,
                });
            }
            MultiplexFormula::VarAtom(v, *s)
        }
        RawFormula::NameAtom(name) => {
            let m = *mx_index
                .get(name)
                .ok_or_else(|| ModelError::UnknownName(name.clone()))?;
            MultiplexFormula::MxAtom(m)
        }
        RawFormula::Not(f) => MultiplexFormula::Not(Box::new(resolve_formula(
            f, var_index, mx_index, variables,
        )?)),
        RawFormula::And(a, b) => MultiplexFormula::And(
            Box::new(resolve_formula(a, var_index, mx_index, variables)?),
            Box::new(resolve_formula(b, var_index, mx_index, variables)?),
        ),
        RawFormula::Or(a, b) => MultiplexFormula::Or(
            Box::new(resolve_formula(a, var_index, mx_index, variables)?),
            Box::new(resolve_formula(b, var_index, mx_index, variables)?),
        ),
    })
}

fn flatten_rec(
    m: MxId,
    multiplexes: &[Multiplex],
    flattened: &mut Vec<Option<MultiplexFormula>>,
    in_progress: &mut Vec<bool>,
) -> Result<MultiplexFormula, ModelError> {
    if let Some(f) = &flattened[m.0] {
        return Ok(f.clone());
    }
    if in_progress[m.0] {
        return Err(ModelError::MultiplexCycle(multiplexes[m.0].name.clone()));
    }
    in_progress[m.0] = true;
    let result = flatten_formula(&multiplexes[m.0].formula.clone(), multiplexes, flattened, in_progress)?;
    in_progress[m.0] = false;
    flattened[m.0] = Some(result.clone());
    Ok(result)
}

fn flatten_formula(
    f: &MultiplexFormula,
    multiplexes: &[Multiplex],
    flattened: &mut Vec<Option<MultiplexFormula>>,
    in_progress: &mut Vec<bool>,
) -> Result<MultiplexFormula, ModelError> {
    Ok(match f {
        MultiplexFormula::VarAtom(v, s) => MultiplexFormula::VarAtom(*v, *s),
        MultiplexFormula::MxAtom(m) => flatten_rec(*m, multiplexes, flattened, in_progress)?,
        MultiplexFormula::Not(g) => MultiplexFormula::Not(Box::new(flatten_formula(
            g, multiplexes, flattened, in_progress,
        )?)),
        MultiplexFormula::And(a, b) => MultiplexFormula::And(
            Box::new(flatten_formula(a, multiplexes, flattened, in_progress)?),
            Box::new(flatten_formula(b, multiplexes, flattened, in_progress)?),
        ),
        MultiplexFormula::Or(a, b) => MultiplexFormula::Or(
            Box::new(flatten_formula(a, multiplexes, flattened, in_progress)?),
            Box::new(flatten_formula(b, multiplexes, flattened, in_progress)?),
        ),
    })
}

/// Build a total valuation from `(var, omega names, value)` entries,
/// checking totality and bounds. Pinned network parameters may be omitted.
pub fn build_valuation(
    network: &Network,
    entries: &[(String, Vec<String>, i64)],
) -> Result<Valuation, ModelError> {
    let mut by_id: Vec<Option<i64>> = network.fixed.clone();
    for (var, omega, value) in entries {
        let (p, bound) = resolve_param(network, var, omega)?;
        if *value < 0 || *value > bound {
            return Err(ModelError::ParamOutOfBounds {
                symbol: network.display_param(p),
                value: *value,
                bound,
            });
        }
        by_id[p.0] = Some(*value);
    }
    let mut levels = Vec::with_capacity(by_id.len());
    for (i, v) in by_id.iter().enumerate() {
        match v {
            Some(level) => levels.push(*level),
            None => {
                return Err(ModelError::IncompleteValuation(
                    network.display_param(ParamId(i)),
                ))
            }
        }
    }
    Ok(Valuation(levels))
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn loop2_network_is_valid() {
        let net = fixtures::loop2_network();
        assert_eq!(net.var_count(), 2);
        assert_eq!(net.multiplexes().len(), 3);
        assert_eq!(net.params().len(), 6);
        // a has predecessors {mu1, mu3}, b has {mu2}
        let a = net.lookup_var("a").unwrap();
        let b = net.lookup_var("b").unwrap();
        assert_eq!(net.predecessors(a).len(), 2);
        assert_eq!(net.predecessors(b).len(), 1);
    }

    #[test]
    fn isolated_variable_has_only_empty_param() {
        let raw = RawNetwork {
            variables: vec![("v".into(), 1)],
            ..Default::default()
        };
        let net = validate_network(&raw).unwrap();
        assert_eq!(net.params().len(), 1);
        assert_eq!(net.display_param(ParamId(0)), "K[v,{}]");
    }

    #[test]
    fn multiplex_two_cycle_is_rejected() {
        let raw = RawNetwork {
            variables: vec![("v".into(), 1)],
            multiplexes: vec![
                ("m1".into(), RawFormula::NameAtom("m2".into())),
                ("m2".into(), RawFormula::NameAtom("m1".into())),
            ],
            ..Default::default()
        };
        match validate_network(&raw) {
            Err(ModelError::MultiplexCycle(_)) => {}
            other => panic!("expected MultiplexCycle, got {:?}", other),
        }
    }

    #[test]
    fn threshold_out_of_range_is_rejected() {
        let raw = RawNetwork {
            variables: vec![("v".into(), 1)],
            multiplexes: vec![("m".into(), RawFormula::VarAtom("v".into(), 2))],
            ..Default::default()
        };
        assert!(matches!(
            validate_network(&raw),
            Err(ModelError::ThresholdOutOfRange { .. })
        ));
    }

    #[test]
    fn param_index_must_be_subset_of_predecessors() {
        let raw = RawNetwork {
            variables: vec![("a".into(), 1), ("b".into(), 1)],
            multiplexes: vec![("m".into(), RawFormula::VarAtom("a".into(), 1))],
            targets: vec![("a".into(), vec!["m".into()])],
            params: vec![("b".into(), vec!["m".into()], 0)],
        };
        assert!(matches!(
            validate_network(&raw),
            Err(ModelError::ParamIndexNotSubsetOfPredecessors { .. })
        ));
    }

    #[test]
    fn flatten_substitutes_multiplex_atoms() {
        // m = (m1 & !m2), m1 = (u>=1), m2 = (w>=2)
        let raw = RawNetwork {
            variables: vec![("u".into(), 1), ("w".into(), 2)],
            multiplexes: vec![
                ("m1".into(), RawFormula::VarAtom("u".into(), 1)),
                ("m2".into(), RawFormula::VarAtom("w".into(), 2)),
                (
                    "m".into(),
                    RawFormula::And(
                        Box::new(RawFormula::NameAtom("m1".into())),
                        Box::new(RawFormula::Not(Box::new(RawFormula::NameAtom("m2".into())))),
                    ),
                ),
            ],
            ..Default::default()
        };
        let net = validate_network(&raw).unwrap();
        let m = net.lookup_mx("m").unwrap();
        let u = net.lookup_var("u").unwrap();
        let w = net.lookup_var("w").unwrap();
        let expected = MultiplexFormula::And(
            Box::new(MultiplexFormula::VarAtom(u, 1)),
            Box::new(MultiplexFormula::Not(Box::new(MultiplexFormula::VarAtom(
                w, 2,
            )))),
        );
        assert_eq!(net.flatten(m), &expected);
    }

    #[test]
    fn loop2_resources() {
        let net = fixtures::loop2_network();
        let a = net.lookup_var("a").unwrap();
        // (a=2, b=1): mu1 (a>=2) holds, mu3 (!(b>=1)) does not
        let res = net.resources(&State(vec![2, 1]), a);
        assert_eq!(res.len(), 1);
        assert_eq!(net.mx_name(res[0]), "mu1");
        // (a=0, b=0): only mu3
        let res = net.resources(&State(vec![0, 0]), a);
        assert_eq!(res.len(), 1);
        assert_eq!(net.mx_name(res[0]), "mu3");
    }

    #[test]
    fn loop2_successors_and_stability() {
        let net = fixtures::loop2_network();
        let val = fixtures::loop2_valuation(&net);
        let succ = net.successors(&val, &State(vec![0, 0]));
        assert_eq!(succ, vec![State(vec![1, 0]), State(vec![0, 1])]);
        assert!(!net.is_stable(&val, &State(vec![0, 0])));
        // (1,1) is the only stable state of this network
        assert_eq!(net.successors(&val, &State(vec![1, 1])), vec![State(vec![1, 1])]);
        assert!(net.is_stable(&val, &State(vec![1, 1])));
    }

    #[test]
    fn enumerate_states_is_lexicographic() {
        let net = fixtures::loop2_network();
        let states = net.enumerate_states();
        assert_eq!(states.len(), 6);
        assert_eq!(states[0], State(vec![0, 0]));
        assert_eq!(states[1], State(vec![0, 1]));
        assert_eq!(states[5], State(vec![2, 1]));
        assert_eq!(fixtures::feedforward_network().enumerate_states().len(), 8);
    }
}
