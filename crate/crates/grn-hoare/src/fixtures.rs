//! Shared test networks: a two-variable mutual-influence loop and a
//! three-variable boolean feedforward circuit.

use crate::model::{Network, Valuation};
use crate::parse::{parse_network, parse_valuation};

/// Two variables, `a` in 0..2 and `b` boolean; `a` activates both, `b`
/// inhibits `a`.
pub fn loop2_network() -> Network {
    parse_network(
        "network {
            var a : 0 .. 2;
            var b : 0 .. 1;
            multiplex mu1 : a >= 2;
            multiplex mu2 : a >= 1;
            multiplex mu3 : !(b >= 1);
            target a <- mu1, mu3;
            target b <- mu2;
        }",
    )
    .unwrap()
}

/// The valuation under which (1,1) is the unique stable state.
pub fn loop2_valuation(net: &Network) -> Valuation {
    parse_valuation(
        net,
        "param K[a,{}] = 1;
         param K[a,{mu1}] = 1;
         param K[a,{mu3}] = 2;
         param K[a,{mu1,mu3}] = 2;
         param K[b,{}] = 1;
         param K[b,{mu2}] = 1;",
    )
    .unwrap()
}

/// Boolean feedforward circuit: `a` drives `c` through `l`, and drives `b`
/// through `sigma` while `c` inhibits `b` through `lambda`.
pub fn feedforward_network() -> Network {
    parse_network(feedforward_text(""))
    .unwrap()
}

/// Same circuit with `K[b,{sigma}]` pinned to 0.
pub fn feedforward_network_pinned() -> Network {
    parse_network(feedforward_text("param K[b,{sigma}] = 0;")).unwrap()
}

fn feedforward_text(extra: &str) -> &'static str {
    // leak is fine in tests; keeps call sites simple
    Box::leak(
        format!(
            "network {{
                var a : 0 .. 1;
                var b : 0 .. 1;
                var c : 0 .. 1;
                multiplex l : a >= 1;
                multiplex lambda : !(c >= 1);
                multiplex sigma : a >= 1;
                target b <- sigma, lambda;
                target c <- l;
                {}
            }}",
            extra
        )
        .into_boxed_str(),
    )
}

/// Valuation with the named parameters pinned and every other parameter 0.
pub fn feedforward_valuation(net: &Network, pins: &[(&str, i64)]) -> Valuation {
    let mut levels = vec![0i64; net.params().len()];
    for (i, level) in levels.iter_mut().enumerate() {
        if let Some(v) = net.fixed_value(crate::model::ParamId(i)) {
            *level = v;
        }
    }
    for (name, value) in pins {
        let i = (0..net.params().len())
            .find(|&i| net.display_param(crate::model::ParamId(i)) == *name)
            .unwrap_or_else(|| panic!("no parameter named {}", name));
        levels[i] = *value;
    }
    Valuation(levels)
}
