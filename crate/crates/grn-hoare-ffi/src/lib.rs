//! C ABI for the network analysis library.
//!
//! Conventions:
//! - Handles (`GrnNetwork`, `GrnTriple`, `GrnValuation`) are opaque; create
//!   them with the `*_parse` functions and release them with `*_free`.
//! - A triple or valuation is only meaningful together with the network it
//!   was parsed against; always pass that same network handle.
//! - Every fallible function returns a `GrnStatus`. On failure, call
//!   `grn_last_error` for a thread-local, human-readable message (valid
//!   until the next failing call on the same thread).
//! - Strings returned through out-parameters are heap-allocated; release
//!   them with `grn_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use grn_hoare::{
    derive_triple, parse_network, parse_triple, parse_valuation, report_json, solve_triple,
    HoareTriple, Network, Oracle, SolveMode, SolverConfig, TripleVerdict, Valuation,
};

/// Result of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GrnStatus {
    /// The call succeeded.
    GrnOk = 0,
    /// The input text was rejected; see `grn_last_error`.
    GrnParseError = 1,
    /// A configured resource cap was hit before an answer was reached.
    GrnCapExceeded = 2,
    /// A null pointer, invalid UTF-8, or out-of-range argument was passed.
    GrnInvalidArgument = 3,
    /// An internal error occurred; see `grn_last_error`.
    GrnInternalError = 4,
}

/// Verdict of `grn_check`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GrnVerdict {
    /// The triple holds under the valuation.
    GrnHolds = 0,
    /// A starting state violates the triple; see the witness out-parameter.
    GrnFails = 1,
    /// The loop-unrolling budget ran out before a verdict was reached.
    GrnUndetermined = 2,
}

/// Opaque parsed network.
pub struct GrnNetwork {
    inner: Network,
}

/// Opaque parsed specification triple.
pub struct GrnTriple {
    inner: HoareTriple,
}

/// Opaque parameter valuation.
pub struct GrnValuation {
    inner: Valuation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: impl std::fmt::Display) {
    let sanitized = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(sanitized).unwrap());
}

fn fail(status: GrnStatus, message: impl std::fmt::Display) -> GrnStatus {
    set_error(message);
    status
}

/// Last error message for the current thread, as a NUL-terminated string.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn grn_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn utf8_arg<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, GrnStatus> {
    if ptr.is_null() {
        return Err(fail(
            GrnStatus::GrnInvalidArgument,
            format!("{} is null", what),
        ));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        fail(
            GrnStatus::GrnInvalidArgument,
            format!("{} is not valid UTF-8", what),
        )
    })
}

unsafe fn handle_arg<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, GrnStatus> {
    if ptr.is_null() {
        Err(fail(
            GrnStatus::GrnInvalidArgument,
            format!("{} is null", what),
        ))
    } else {
        Ok(&*ptr)
    }
}

unsafe fn out_arg<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, GrnStatus> {
    if ptr.is_null() {
        Err(fail(
            GrnStatus::GrnInvalidArgument,
            format!("{} is null", what),
        ))
    } else {
        Ok(&mut *ptr)
    }
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

fn guard(body: impl FnOnce() -> GrnStatus) -> GrnStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(GrnStatus::GrnInternalError, "internal panic"),
    }
}

fn solve_mode(mode: c_int) -> Result<SolveMode, GrnStatus> {
    match mode {
        0 => Ok(SolveMode::Oracle),
        1 => Ok(SolveMode::Wp),
        other => Err(fail(
            GrnStatus::GrnInvalidArgument,
            format!("mode must be 0 (oracle) or 1 (backward); got {}", other),
        )),
    }
}

/// Parse a network description. On success, `*out` owns the new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grn_network_parse(
    text: *const c_char,
    out: *mut *mut GrnNetwork,
) -> GrnStatus {
    guard(|| {
        let out = match out_arg(out, "out") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let text = match utf8_arg(text, "text") {
            Ok(v) => v,
            Err(s) => return s,
        };
        match parse_network(text) {
            Ok(net) => {
                *out = Box::into_raw(Box::new(GrnNetwork { inner: net }));
                GrnStatus::GrnOk
            }
            Err(e) => fail(GrnStatus::GrnParseError, e),
        }
    })
}

/// Release a network handle. A null pointer is ignored.
///
/// # Safety
/// `network` must come from `grn_network_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn grn_network_free(network: *mut GrnNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// Parse a `pre { } program { } post { }` triple against a network.
///
/// # Safety
/// `network` must be a live handle; `text` and `out` as in
/// `grn_network_parse`.
#[no_mangle]
pub unsafe extern "C" fn grn_triple_parse(
    network: *const GrnNetwork,
    text: *const c_char,
    out: *mut *mut GrnTriple,
) -> GrnStatus {
    guard(|| {
        let out = match out_arg(out, "out") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let net = match handle_arg(network, "network") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let text = match utf8_arg(text, "text") {
            Ok(v) => v,
            Err(s) => return s,
        };
        match parse_triple(&net.inner, text) {
            Ok(triple) => {
                *out = Box::into_raw(Box::new(GrnTriple { inner: triple }));
                GrnStatus::GrnOk
            }
            Err(e) => fail(GrnStatus::GrnParseError, e),
        }
    })
}

/// Release a triple handle. A null pointer is ignored.
///
/// # Safety
/// `triple` must come from `grn_triple_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn grn_triple_free(triple: *mut GrnTriple) {
    if !triple.is_null() {
        drop(Box::from_raw(triple));
    }
}

/// Parse a valuation (`param K[v,{...}] = n;` statements) against a network.
/// Every free parameter must be assigned.
///
/// # Safety
/// `network` must be a live handle; `text` and `out` as in
/// `grn_network_parse`.
#[no_mangle]
pub unsafe extern "C" fn grn_valuation_parse(
    network: *const GrnNetwork,
    text: *const c_char,
    out: *mut *mut GrnValuation,
) -> GrnStatus {
    guard(|| {
        let out = match out_arg(out, "out") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let net = match handle_arg(network, "network") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let text = match utf8_arg(text, "text") {
            Ok(v) => v,
            Err(s) => return s,
        };
        match parse_valuation(&net.inner, text) {
            Ok(val) => {
                *out = Box::into_raw(Box::new(GrnValuation { inner: val }));
                GrnStatus::GrnOk
            }
            Err(e) => fail(GrnStatus::GrnParseError, e),
        }
    })
}

/// Release a valuation handle. A null pointer is ignored.
///
/// # Safety
/// `valuation` must come from `grn_valuation_parse` and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn grn_valuation_free(valuation: *mut GrnValuation) {
    if !valuation.is_null() {
        drop(Box::from_raw(valuation));
    }
}

/// Derive the weakest precondition of a triple. `*out` receives a text
/// report (`wp:`, `vc[i] ...:` and `final:` lines). Pass `simplify` != 0 to
/// normalize intermediate assertions.
///
/// # Safety
/// `network` and `triple` must be live handles from this library; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grn_wp(
    network: *const GrnNetwork,
    triple: *const GrnTriple,
    simplify: c_int,
    out: *mut *mut c_char,
) -> GrnStatus {
    guard(|| {
        let out = match out_arg(out, "out") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let net = match handle_arg(network, "network") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let triple = match handle_arg(triple, "triple") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let outcome = derive_triple(&net.inner, &triple.inner, simplify != 0);
        let mut text = format!("wp: {}\n", net.inner.show_assertion(&outcome.wp));
        for vc in &outcome.vcs {
            text.push_str(&format!(
                "vc[{}] {}: {}\n",
                vc.origin,
                vc.kind.describe(),
                net.inner.show_assertion(&vc.formula)
            ));
        }
        text.push_str(&format!(
            "final: {}\n",
            net.inner.show_assertion(&outcome.final_implication)
        ));
        *out = export_string(text);
        GrnStatus::GrnOk
    })
}

/// Decide a triple under one concrete valuation. `mode` is 0 for the
/// direct path semantics and 1 for the backward calculus; `fuel` bounds
/// loop unrolling in mode 0 (pass 0 for the default). On `GrnFails`,
/// `*witness_out` (if non-null) receives a description of the violating
/// state.
///
/// # Safety
/// All handle arguments must be live handles from this library;
/// `verdict_out` must be valid; `witness_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn grn_check(
    network: *const GrnNetwork,
    triple: *const GrnTriple,
    valuation: *const GrnValuation,
    mode: c_int,
    fuel: u64,
    verdict_out: *mut GrnVerdict,
    witness_out: *mut *mut c_char,
) -> GrnStatus {
    guard(|| {
        let verdict_out = match out_arg(verdict_out, "verdict_out") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let net = match handle_arg(network, "network") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let triple = match handle_arg(triple, "triple") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let val = match handle_arg(valuation, "valuation") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let mode = match solve_mode(mode) {
            Ok(m) => m,
            Err(s) => return s,
        };
        let verdict = match mode {
            SolveMode::Oracle => {
                let mut oracle = Oracle::new(&net.inner, &val.inner);
                if fuel > 0 {
                    oracle.fuel = fuel;
                }
                match oracle.triple_holds(&triple.inner) {
                    Ok(v) => v,
                    Err(e) => return fail(GrnStatus::GrnCapExceeded, e),
                }
            }
            SolveMode::Wp => {
                let outcome = derive_triple(&net.inner, &triple.inner, false);
                let mut goals = vec![outcome.final_implication];
                goals.extend(outcome.vcs.into_iter().map(|vc| vc.formula));
                let witness = net.inner.enumerate_states().into_iter().find(|state| {
                    goals
                        .iter()
                        .any(|g| !grn_hoare::eval_assertion(g, state, &val.inner))
                });
                match witness {
                    None => TripleVerdict::Holds,
                    Some(state) => TripleVerdict::Fails(state),
                }
            }
        };
        *verdict_out = match verdict {
            TripleVerdict::Holds => GrnVerdict::GrnHolds,
            TripleVerdict::Fails(state) => {
                if !witness_out.is_null() {
                    *witness_out = export_string(net.inner.display_state(&state));
                }
                GrnVerdict::GrnFails
            }
            TripleVerdict::Undetermined => GrnVerdict::GrnUndetermined,
        };
        GrnStatus::GrnOk
    })
}

/// Enumerate all valuations and report the consistent ones as a JSON
/// document in `*out`. `mode` is 0 for the direct path semantics and 1 for
/// the backward calculus; pass 0 for `fuel`, `max_sets` or
/// `max_valuations` to use the defaults.
///
/// # Safety
/// `network` and `triple` must be live handles from this library; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grn_solve_json(
    network: *const GrnNetwork,
    triple: *const GrnTriple,
    mode: c_int,
    fuel: u64,
    max_sets: u64,
    max_valuations: u64,
    out: *mut *mut c_char,
) -> GrnStatus {
    guard(|| {
        let out = match out_arg(out, "out") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let net = match handle_arg(network, "network") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let triple = match handle_arg(triple, "triple") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let mode = match solve_mode(mode) {
            Ok(m) => m,
            Err(s) => return s,
        };
        let defaults = SolverConfig::default();
        let config = SolverConfig {
            mode,
            fuel: if fuel > 0 { fuel } else { defaults.fuel },
            max_sets: if max_sets > 0 {
                max_sets as usize
            } else {
                defaults.max_sets
            },
            cap: if max_valuations > 0 {
                max_valuations as u128
            } else {
                defaults.cap
            },
        };
        match solve_triple(&net.inner, &triple.inner, &config) {
            Ok(report) => {
                let doc = report_json(&net.inner, &triple.inner, &report, 0);
                *out = export_string(serde_json::to_string_pretty(&doc).unwrap());
                GrnStatus::GrnOk
            }
            Err(e) => fail(GrnStatus::GrnCapExceeded, e),
        }
    })
}

/// Render the asynchronous state graph under a valuation as Graphviz DOT
/// text in `*out`.
///
/// # Safety
/// `network` and `valuation` must be live handles from this library; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grn_graph_dot(
    network: *const GrnNetwork,
    valuation: *const GrnValuation,
    out: *mut *mut c_char,
) -> GrnStatus {
    guard(|| {
        let out = match out_arg(out, "out") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let net = match handle_arg(network, "network") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let val = match handle_arg(valuation, "valuation") {
            Ok(v) => v,
            Err(s) => return s,
        };
        *out = export_string(grn_hoare::dot::state_graph_dot(&net.inner, &val.inner));
        GrnStatus::GrnOk
    })
}

/// Release a string returned through an out-parameter. A null pointer is
/// ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn grn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    const NETWORK: &str = "network {\n\
        var a : 0 .. 1;\n\
        var b : 0 .. 1;\n\
        var c : 0 .. 1;\n\
        multiplex l : a >= 1;\n\
        multiplex lambda : !(c >= 1);\n\
        multiplex sigma : a >= 1;\n\
        target b <- sigma, lambda;\n\
        target c <- l;\n\
    }\n";

    const TRIPLE: &str =
        "pre { a=1 & b=0 & c=0 } program { b+; c+; b- } post { b=0 }";

    fn cstring(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn parse_all() -> (*mut GrnNetwork, *mut GrnTriple) {
        let mut net = ptr::null_mut();
        assert_eq!(
            grn_network_parse(cstring(NETWORK).as_ptr(), &mut net),
            GrnStatus::GrnOk
        );
        let mut triple = ptr::null_mut();
        assert_eq!(
            grn_triple_parse(net, cstring(TRIPLE).as_ptr(), &mut triple),
            GrnStatus::GrnOk
        );
        (net, triple)
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_owned();
        grn_string_free(ptr);
        s
    }

    #[test]
    fn wp_through_the_c_abi() {
        unsafe {
            let (net, triple) = parse_all();
            let mut out = ptr::null_mut();
            assert_eq!(grn_wp(net, triple, 1, &mut out), GrnStatus::GrnOk);
            let text = take_string(out);
            assert!(text.contains(
                "final: a=1 & b=0 & c=0 => \
                 K[b,{lambda,sigma}]=1 & K[c,{l}]=1 & K[b,{sigma}]=0"
            ));
            grn_triple_free(triple);
            grn_network_free(net);
        }
    }

    #[test]
    fn solve_through_the_c_abi() {
        unsafe {
            let (net, triple) = parse_all();
            let mut out = ptr::null_mut();
            assert_eq!(
                grn_solve_json(net, triple, 0, 0, 0, 0, &mut out),
                GrnStatus::GrnOk
            );
            let doc: serde_json::Value =
                serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["total"], 128);
            assert_eq!(doc["consistent"].as_array().unwrap().len(), 16);
            grn_triple_free(triple);
            grn_network_free(net);
        }
    }

    #[test]
    fn check_and_graph_through_the_c_abi() {
        unsafe {
            let (net, triple) = parse_all();
            let valuation_text: String = [
                "param K[a,{}] = 1;",
                "param K[b,{}] = 0;",
                "param K[b,{lambda}] = 1;",
                "param K[b,{sigma}] = 0;",
                "param K[b,{lambda,sigma}] = 1;",
                "param K[c,{}] = 0;",
                "param K[c,{l}] = 1;",
            ]
            .join("\n");
            let mut val = ptr::null_mut();
            assert_eq!(
                grn_valuation_parse(net, cstring(&valuation_text).as_ptr(), &mut val),
                GrnStatus::GrnOk
            );
            let mut verdict = GrnVerdict::GrnUndetermined;
            let mut witness = ptr::null_mut();
            assert_eq!(
                grn_check(net, triple, val, 0, 0, &mut verdict, &mut witness),
                GrnStatus::GrnOk
            );
            assert_eq!(verdict, GrnVerdict::GrnHolds);
            assert!(witness.is_null());
            let mut dot = ptr::null_mut();
            assert_eq!(grn_graph_dot(net, val, &mut dot), GrnStatus::GrnOk);
            let text = take_string(dot);
            assert!(text.starts_with("digraph states {"));
            grn_valuation_free(val);
            grn_triple_free(triple);
            grn_network_free(net);
        }
    }

    #[test]
    fn errors_set_status_and_message() {
        unsafe {
            let mut net = ptr::null_mut();
            assert_eq!(
                grn_network_parse(cstring("network { var }").as_ptr(), &mut net),
                GrnStatus::GrnParseError
            );
            let msg = CStr::from_ptr(grn_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());
            assert_eq!(
                grn_network_parse(ptr::null(), &mut net),
                GrnStatus::GrnInvalidArgument
            );
            let (net, triple) = parse_all();
            let mut out = ptr::null_mut();
            assert_eq!(
                grn_solve_json(net, triple, 7, 0, 0, 0, &mut out),
                GrnStatus::GrnInvalidArgument
            );
            // a ten-valuation cap cannot cover the 128-valuation space
            assert_eq!(
                grn_solve_json(net, triple, 0, 0, 0, 10, &mut out),
                GrnStatus::GrnCapExceeded
            );
            grn_triple_free(triple);
            grn_network_free(net);
        }
    }
}
