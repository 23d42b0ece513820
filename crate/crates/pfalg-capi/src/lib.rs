//! C ABI for the pfalg library.
//!
//! Handles are opaque pointers created and freed here; every report is a
//! heap-allocated C string released with [`pfalg_string_free`]. Functions
//! return the same status codes the command-line tool exits with: 0 for
//! success/valid, 1 for a counterexample/violation/defect, 2 when a search
//! budget ran out, 64 for misuse of the API, 65 for malformed input data and
//! 70 for internal inconsistencies.

use std::ffi::{c_char, CStr, CString};
use std::time::{Duration, Instant};

use pfalg::decide::{decide_equation, Mode, SearchOptions, Verdict};
use pfalg::laws::{axiom_suite_for, check_quasiequation, CheckOutcome};
use pfalg::lift::lift_antidomain;
use pfalg::parse::{parse_equation, parse_term};
use pfalg::represent::{verify_representation, RepresentError};
use pfalg::satred::{parse_formula, sat_to_equation};
use pfalg::schein::build_quotient_representation;
use pfalg::sig::{Op, Signature};
use pfalg::table::FiniteAlgebra;

pub const PFALG_STATUS_OK: i32 = 0;
pub const PFALG_STATUS_FAIL: i32 = 1;
pub const PFALG_STATUS_BUDGET: i32 = 2;
pub const PFALG_STATUS_USAGE: i32 = 64;
pub const PFALG_STATUS_DATA: i32 = 65;
pub const PFALG_STATUS_INTERNAL: i32 = 70;

/// Search modes for `pfalg_check_equation`.
pub const PFALG_MODE_EXHAUSTIVE: u32 = 0;
pub const PFALG_MODE_RANDOM: u32 = 1;

/// An opaque finite algebra given by operation tables.
pub struct PfalgAlgebra {
    inner: FiniteAlgebra,
}

fn c_in<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

fn c_out(s: String, out: *mut *mut c_char) {
    if out.is_null() {
        return;
    }
    let c = CString::new(s.replace('\0', " ")).expect("nul bytes stripped");
    unsafe { *out = c.into_raw() };
}

/// Version of the underlying library, as a static string.
#[no_mangle]
pub extern "C" fn pfalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Free a string returned by any function of this API.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn pfalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parse the line-oriented algebra format into a handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer slot when non-null.
#[no_mangle]
pub unsafe extern "C" fn pfalg_algebra_parse(
    text: *const c_char,
    out: *mut *mut PfalgAlgebra,
    error_out: *mut *mut c_char,
) -> i32 {
    let Some(src) = c_in(text) else {
        return PFALG_STATUS_USAGE;
    };
    if out.is_null() {
        return PFALG_STATUS_USAGE;
    }
    match FiniteAlgebra::parse_text(src) {
        Ok(alg) => {
            unsafe { *out = Box::into_raw(Box::new(PfalgAlgebra { inner: alg })) };
            PFALG_STATUS_OK
        }
        Err(e) => {
            c_out(e.to_string(), error_out);
            PFALG_STATUS_DATA
        }
    }
}

/// Free an algebra handle.
///
/// # Safety
/// `alg` must come from `pfalg_algebra_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pfalg_algebra_free(alg: *mut PfalgAlgebra) {
    if !alg.is_null() {
        drop(unsafe { Box::from_raw(alg) });
    }
}

/// Number of elements of the algebra.
///
/// # Safety
/// `alg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pfalg_algebra_element_count(alg: *const PfalgAlgebra) -> usize {
    if alg.is_null() {
        return 0;
    }
    unsafe { &*alg }.inner.len()
}

/// Check the axiom suite selected by the algebra's signature. Writes a
/// one-line-per-law report. Returns 0 when every checkable law holds and 1
/// when some law has a witness against it.
///
/// # Safety
/// `alg` must be a live handle; `report_out` a valid slot when non-null.
#[no_mangle]
pub unsafe extern "C" fn pfalg_algebra_check_axioms(
    alg: *const PfalgAlgebra,
    report_out: *mut *mut c_char,
) -> i32 {
    if alg.is_null() {
        return PFALG_STATUS_USAGE;
    }
    let alg = &unsafe { &*alg }.inner;
    let suite = axiom_suite_for(alg.signature());
    let mut lines = Vec::new();
    if let Some(w) = &suite.warning {
        lines.push(format!("warning: {}", w));
    }
    let mut violated = 0;
    for law in &suite.laws {
        match check_quasiequation(&law.q, alg) {
            Ok(CheckOutcome::Holds) => lines.push(format!("law {} {}: holds", law.label, law.q)),
            Ok(CheckOutcome::Witness(w)) => {
                violated += 1;
                let binds: Vec<String> = w
                    .iter()
                    .map(|(v, e)| format!("{}={}", v, alg.name(*e)))
                    .collect();
                lines.push(format!(
                    "law {} {}: FAILS at {}",
                    law.label,
                    law.q,
                    binds.join(", ")
                ));
            }
            Err(e) => lines.push(format!(
                "law {} {}: not checkable ({})",
                law.label, law.q, e
            )),
        }
    }
    c_out(lines.join("\n"), report_out);
    if violated == 0 {
        PFALG_STATUS_OK
    } else {
        PFALG_STATUS_FAIL
    }
}

/// Construct a functional representation for the given signature (or the
/// algebra's own when `signature` is null), verify it, and write the report.
///
/// # Safety
/// `alg` must be a live handle; string arguments NUL-terminated;
/// `report_out` a valid slot when non-null.
#[no_mangle]
pub unsafe extern "C" fn pfalg_algebra_represent(
    alg: *const PfalgAlgebra,
    signature: *const c_char,
    report_out: *mut *mut c_char,
) -> i32 {
    if alg.is_null() {
        return PFALG_STATUS_USAGE;
    }
    let alg = &unsafe { &*alg }.inner;
    let sig = if signature.is_null() {
        alg.signature()
    } else {
        let Some(src) = c_in(signature) else {
            return PFALG_STATUS_USAGE;
        };
        match Signature::parse(src) {
            Ok(sig) => sig,
            Err(e) => {
                c_out(e.to_string(), report_out);
                return PFALG_STATUS_DATA;
            }
        }
    };
    let built = if sig.contains(Op::AntiDom) {
        lift_antidomain(alg, sig, 200_000).map(|l| l.rep)
    } else {
        build_quotient_representation(alg, sig, 200_000)
    };
    let rep = match built {
        Ok(rep) => rep,
        Err(e @ RepresentError::UnsupportedSignature(_)) | Err(e @ RepresentError::Eval(_)) => {
            c_out(e.to_string(), report_out);
            return PFALG_STATUS_DATA;
        }
        Err(e) => {
            c_out(e.to_string(), report_out);
            return PFALG_STATUS_INTERNAL;
        }
    };
    let defects = match verify_representation(&rep, alg, sig, 1) {
        Ok(d) => d,
        Err(e) => {
            c_out(e.to_string(), report_out);
            return PFALG_STATUS_DATA;
        }
    };
    let mut text = rep.report(alg);
    if defects.is_empty() {
        text.push_str("verifier: faithful representation\n");
        c_out(text, report_out);
        PFALG_STATUS_OK
    } else {
        for d in &defects {
            text.push_str(&format!("defect: {}\n", d.description));
        }
        c_out(text, report_out);
        PFALG_STATUS_FAIL
    }
}

/// Decide an equation over all function algebras of a signature. `mode` is
/// one of the `PFALG_MODE_*` constants; `budget_secs` of 0 means no
/// wall-clock budget. Returns 0 (valid), 1 (counterexample, described in the
/// report), 2 (budget exceeded) or an error code.
///
/// # Safety
/// String arguments must be NUL-terminated; `report_out` a valid slot when
/// non-null.
#[no_mangle]
pub unsafe extern "C" fn pfalg_check_equation(
    signature: *const c_char,
    equation: *const c_char,
    mode: u32,
    seed: u64,
    budget_secs: u64,
    report_out: *mut *mut c_char,
) -> i32 {
    let (Some(sig_src), Some(eq_src)) = (c_in(signature), c_in(equation)) else {
        return PFALG_STATUS_USAGE;
    };
    let sig = match Signature::parse(sig_src) {
        Ok(sig) => sig,
        Err(e) => {
            c_out(e.to_string(), report_out);
            return PFALG_STATUS_DATA;
        }
    };
    let eq = match parse_equation(eq_src) {
        Ok(eq) => eq,
        Err(e) => {
            c_out(e.to_string(), report_out);
            return PFALG_STATUS_DATA;
        }
    };
    let opts = SearchOptions {
        mode: if mode == PFALG_MODE_RANDOM {
            Mode::Random
        } else {
            Mode::Exhaustive
        },
        seed,
        deadline: (budget_secs > 0).then(|| Instant::now() + Duration::from_secs(budget_secs)),
        ..Default::default()
    };
    match decide_equation(&eq, sig, &opts) {
        Ok(decision) => match decision.verdict {
            Verdict::Valid => {
                c_out(
                    format!("valid (base bound {})", decision.theorem_bound),
                    report_out,
                );
                PFALG_STATUS_OK
            }
            Verdict::Counterexample(ce) => {
                let mut lines = vec![format!("counterexample on base {}", ce.base)];
                for (name, f) in ce.assignment.iter() {
                    lines.push(format!("{}: {}", name, f.to_text()));
                }
                lines.push(format!("witness: point {}", ce.witness));
                if let Some(seed) = ce.seed {
                    lines.push(format!("seed: {}", seed));
                }
                c_out(lines.join("\n"), report_out);
                PFALG_STATUS_FAIL
            }
            Verdict::BudgetExceeded {
                largest_base_exhausted,
            } => {
                c_out(
                    format!(
                        "budget exceeded; bases up to {} exhausted",
                        largest_base_exhausted
                    ),
                    report_out,
                );
                PFALG_STATUS_BUDGET
            }
        },
        Err(e) => {
            c_out(e.to_string(), report_out);
            PFALG_STATUS_DATA
        }
    }
}

/// Evaluate a term against a function fixture (the `base:`/`name: {…}`
/// format) and write the resulting partial function in map text form.
///
/// # Safety
/// String arguments must be NUL-terminated; `value_out` a valid slot when
/// non-null.
#[no_mangle]
pub unsafe extern "C" fn pfalg_eval_term(
    fixture: *const c_char,
    term: *const c_char,
    value_out: *mut *mut c_char,
) -> i32 {
    let (Some(fixture_src), Some(term_src)) = (c_in(fixture), c_in(term)) else {
        return PFALG_STATUS_USAGE;
    };
    let alg = match pfalg::fnalg::FunctionAlgebra::parse_fixture(fixture_src, Signature::full()) {
        Ok(alg) => alg,
        Err(e) => {
            c_out(e.to_string(), value_out);
            return PFALG_STATUS_DATA;
        }
    };
    let term = match parse_term(term_src) {
        Ok(t) => t,
        Err(e) => {
            c_out(e.to_string(), value_out);
            return PFALG_STATUS_DATA;
        }
    };
    match alg.evaluate(&term) {
        Ok(value) => {
            c_out(value.to_text(), value_out);
            PFALG_STATUS_OK
        }
        Err(e) => {
            c_out(e.to_string(), value_out);
            PFALG_STATUS_DATA
        }
    }
}

/// Translate a propositional formula over `!`/`&` into the equation whose
/// validity over function algebras matches the formula's validity.
///
/// # Safety
/// `formula` must be NUL-terminated; `equation_out` a valid slot when
/// non-null.
#[no_mangle]
pub unsafe extern "C" fn pfalg_reduce_sat(
    formula: *const c_char,
    equation_out: *mut *mut c_char,
) -> i32 {
    let Some(src) = c_in(formula) else {
        return PFALG_STATUS_USAGE;
    };
    match parse_formula(src) {
        Ok(phi) => {
            c_out(sat_to_equation(&phi).to_string(), equation_out);
            PFALG_STATUS_OK
        }
        Err(e) => {
            c_out(e.to_string(), equation_out);
            PFALG_STATUS_DATA
        }
    }
}
