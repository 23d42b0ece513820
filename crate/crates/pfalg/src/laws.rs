//! The axiom catalog for algebras of partial functions and the brute-force
//! quasiequation checker.
//!
//! Laws carry the roman/arabic labels used throughout the literature on
//! domain–range semigroups: I–VII for domain, VIII–IX for meet, X–XVI for
//! antidomain, XVII–XXII for range, XXIIIa/b for domain–range, XXIV for
//! antirange, 25–26 for preferential union and 27a/b–28 for maximum iterate.
//! Laws marked [`LawKind::Consequence`] follow from the others over
//! representable algebras; suites include them as sanity checks, not as
//! membership criteria.
//!
//! Greek-letter variables (`alpha`, `beta`) range over domain elements only;
//! the checker enumerates them over `D(S) = {s : d(s) = s}`.

use std::collections::BTreeMap;

use crate::parse::parse_quasiequation;
use crate::sig::{Op, Signature};
use crate::table::{AbsEvalError, FiniteAlgebra};
use crate::term::Quasiequation;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LawKind {
    /// Required for representability in the suite's signature.
    Membership,
    /// Valid over representable algebras but implied by the membership laws.
    Consequence,
}

#[derive(Clone, Debug)]
pub struct Law {
    pub label: &'static str,
    pub name: &'static str,
    pub kind: LawKind,
    pub q: Quasiequation,
}

impl Law {
    fn new(
        label: &'static str,
        name: &'static str,
        kind: LawKind,
        src: &str,
        domain_sorted: &[&str],
    ) -> Law {
        let mut q = parse_quasiequation(src).expect("catalog law must parse");
        q.domain_sorted = domain_sorted.iter().map(|s| s.to_string()).collect();
        Law {
            label,
            name,
            kind,
            q,
        }
    }
}

/// The selected laws for one signature.
#[derive(Clone, Debug)]
pub struct AxiomSuite {
    pub signature: Signature,
    pub laws: Vec<Law>,
    pub warning: Option<String>,
}

impl AxiomSuite {
    pub fn membership_laws(&self) -> impl Iterator<Item = &Law> {
        self.laws.iter().filter(|l| l.kind == LawKind::Membership)
    }
}

fn catalog_for(sig: Signature) -> Vec<Law> {
    use LawKind::*;
    let mut laws = Vec::new();
    let has = |op: Op| sig.contains(op);
    let dom_notion = sig.has_domain_notion();

    laws.push(Law::new(
        "assoc",
        "associativity",
        Membership,
        "x;(y;z) = (x;y);z",
        &[],
    ));

    if dom_notion {
        // with `d` primitive these are membership criteria; with `d` derived
        // from `a` they follow from the antidomain laws
        let kind = if has(Op::Dom) {
            Membership
        } else {
            Consequence
        };
        laws.push(Law::new(
            "I",
            "domain-left-identity",
            kind,
            "d(x);x = x",
            &[],
        ));
        laws.push(Law::new(
            "II",
            "domain-commutes",
            kind,
            "d(x);d(y) = d(y);d(x)",
            &[],
        ));
        laws.push(Law::new(
            "III",
            "domain-idempotent",
            kind,
            "d(d(x)) = d(x)",
            &[],
        ));
        laws.push(Law::new(
            "IV",
            "domain-order",
            kind,
            "d(x);d(x;y) = d(x;y)",
            &[],
        ));
        laws.push(Law::new(
            "V",
            "domain-twisted",
            kind,
            "x;d(y) = d(x;y);x",
            &[],
        ));
        laws.push(Law::new(
            "VI",
            "domain-export",
            Consequence,
            "d(x);d(y) = d(d(x);y)",
            &[],
        ));
        laws.push(Law::new(
            "VII",
            "domain-left-congruence",
            Consequence,
            "d(x;d(y)) = d(x;y)",
            &[],
        ));
    }

    if has(Op::Meet) {
        laws.push(Law::new(
            "sl1",
            "meet-idempotent",
            Membership,
            "x.x = x",
            &[],
        ));
        laws.push(Law::new(
            "sl2",
            "meet-commutes",
            Membership,
            "x.y = y.x",
            &[],
        ));
        laws.push(Law::new(
            "sl3",
            "meet-associative",
            Membership,
            "x.(y.z) = (x.y).z",
            &[],
        ));
        laws.push(Law::new(
            "VIII",
            "meet-twisted",
            Membership,
            "x;(y.z) = (x;y).(x;z)",
            &[],
        ));
        if dom_notion {
            laws.push(Law::new(
                "IX",
                "meet-order",
                Membership,
                "x.y = d(x.y);x",
                &[],
            ));
        }
    }

    if has(Op::AntiDom) {
        laws.push(Law::new(
            "X",
            "antidomain-zero",
            Membership,
            "a(x);x = a(y);y",
            &[],
        ));
        laws.push(Law::new("XI", "zero-left", Membership, "0;y = 0", &[]));
        laws.push(Law::new(
            "XII",
            "identity-left",
            Membership,
            "1';y = y",
            &[],
        ));
        laws.push(Law::new(
            "XIII",
            "antidomain-commutes",
            Membership,
            "a(x);a(y) = a(y);a(x)",
            &[],
        ));
        laws.push(Law::new(
            "XIV",
            "antidomain-twisted",
            Membership,
            "x;a(y) = a(x;y);x",
            &[],
        ));
        laws.push(Law::new(
            "XV",
            "antidomain-order",
            Consequence,
            "a(x);a(y) = a(x);a(a(x);y)",
            &[],
        ));
        laws.push(Law::new(
            "XVI",
            "split-by-domain-element",
            Membership,
            "alpha;x = alpha;y & a(alpha);x = a(alpha);y => x = y",
            &["alpha"],
        ));
        laws.push(Law::new(
            "XVI'",
            "join-splitting",
            Consequence,
            "alpha;x = alpha;y & beta;x = beta;y => a(a(alpha);a(beta));x = a(a(alpha);a(beta));y",
            &["alpha", "beta"],
        ));
        laws.push(Law::new(
            "XVI''",
            "antidomain-of-join-action",
            Consequence,
            "a(alpha;x);a(beta;x) = a(a(a(alpha);a(beta));x)",
            &["alpha", "beta"],
        ));
    }

    if has(Op::Range) && dom_notion {
        laws.push(Law::new(
            "XVII",
            "range-right-identity",
            Membership,
            "x;r(x) = x",
            &[],
        ));
        laws.push(Law::new(
            "XVIII",
            "range-commutes",
            Membership,
            "r(x);r(y) = r(y);r(x)",
            &[],
        ));
        laws.push(Law::new(
            "XIX",
            "range-idempotent",
            Membership,
            "r(r(x)) = r(x)",
            &[],
        ));
        laws.push(Law::new(
            "XX",
            "range-order",
            Membership,
            "r(x;y);r(y) = r(x;y)",
            &[],
        ));
        laws.push(Law::new(
            "XXI",
            "range-right-congruence",
            Membership,
            "r(r(x);y) = r(x;y)",
            &[],
        ));
        laws.push(Law::new(
            "XXII",
            "right-cancellation-to-range",
            Membership,
            "x;y = x;z => r(x);y = r(x);z",
            &[],
        ));
        laws.push(Law::new(
            "XXIIIa",
            "domain-of-range",
            Membership,
            "d(r(x)) = r(x)",
            &[],
        ));
        laws.push(Law::new(
            "XXIIIb",
            "range-of-domain",
            Membership,
            "r(d(x)) = d(x)",
            &[],
        ));
        if has(Op::AntiDom) {
            laws.push(Law::new(
                "XXIV",
                "antirange",
                Membership,
                "a(a(r(alpha;x));a(r(beta;x))) = r(a(a(alpha);a(beta));x)",
                &["alpha", "beta"],
            ));
        }
    }

    if has(Op::PrefUnion) && dom_notion {
        laws.push(Law::new(
            "25",
            "union-keeps-left",
            Membership,
            "d(x);(x+y) = x",
            &[],
        ));
        if has(Op::AntiDom) {
            laws.push(Law::new(
                "26",
                "union-defaults-right",
                Membership,
                "a(x);(x+y) = a(x);y",
                &[],
            ));
        }
    }

    if has(Op::MaxIter) && dom_notion {
        laws.push(Law::new(
            "27a",
            "iterate-absorbs-domain",
            Membership,
            "d(x);x^ = x;x^",
            &[],
        ));
        if has(Op::AntiDom) {
            laws.push(Law::new(
                "27b",
                "iterate-fixes-antidomain",
                Membership,
                "a(x);x^ = a(x)",
                &[],
            ));
        }
        laws.push(Law::new(
            "28",
            "iterate-preserves-invariants",
            Membership,
            "alpha;y = alpha;y;alpha => alpha;y^ = alpha;y^;alpha",
            &["alpha"],
        ));
        if has(Op::AntiDom) {
            // equational form of law 28
            laws.push(Law::new(
                "28eq",
                "iterate-invariance-equational",
                Consequence,
                "d(x);a(y;a(x));(y;a(d(x);y;a(x)))^;a(x) = 0",
                &[],
            ));
        }
    }

    if has(Op::Zero) {
        if !has(Op::AntiDom) {
            laws.push(Law::new("XI", "zero-left", Membership, "0;y = 0", &[]));
        }
        laws.push(Law::new(
            "0r",
            "zero-right",
            if has(Op::AntiDom) {
                Consequence
            } else {
                Membership
            },
            "y;0 = 0",
            &[],
        ));
        if dom_notion {
            laws.push(Law::new(
                "0d",
                "zero-is-domain-element",
                Membership,
                "d(0) = 0",
                &[],
            ));
        }
    }

    if has(Op::Identity) {
        if !has(Op::AntiDom) {
            laws.push(Law::new(
                "XII",
                "identity-left",
                Membership,
                "1';y = y",
                &[],
            ));
        }
        laws.push(Law::new(
            "1r",
            "identity-right",
            if has(Op::AntiDom) {
                Consequence
            } else {
                Membership
            },
            "y;1' = y",
            &[],
        ));
        if dom_notion {
            laws.push(Law::new(
                "1d",
                "identity-is-domain-element",
                Membership,
                "d(1') = 1'",
                &[],
            ));
        }
    }

    if has(Op::Fixset) && dom_notion {
        laws.push(Law::new(
            "fx1",
            "fixset-restricts",
            Membership,
            "fix(x);x = fix(x)",
            &[],
        ));
        laws.push(Law::new(
            "fx2",
            "fixset-is-domain-element",
            Membership,
            "d(fix(x)) = fix(x)",
            &[],
        ));
        laws.push(Law::new(
            "fx3",
            "fixset-absorption",
            Membership,
            "x;y = x => x;fix(y) = x",
            &[],
        ));
        if has(Op::Meet) {
            laws.push(Law::new(
                "fx4",
                "fixset-as-meet",
                Consequence,
                "fix(x) = d(x).x",
                &[],
            ));
        }
    }

    laws
}

/// The laws prescribed for a signature by the representation theorems for
/// restriction semigroups and their extensions with meet, antidomain, range,
/// preferential union and maximum iterate (the iterate laws characterise
/// finite algebras only). Membership laws are the representability criteria;
/// consequence laws ride along as sanity checks.
///
/// Signatures with neither `d` nor `a` get associativity plus a warning,
/// since the catalog assumes a domain notion.
pub fn axiom_suite_for(sig: Signature) -> AxiomSuite {
    let warning = if !sig.has_domain_notion() {
        Some(
            "signature has neither `d` nor `a`; the catalog assumes a domain notion, \
             so only associativity is checked"
                .to_string(),
        )
    } else {
        None
    };
    AxiomSuite {
        signature: sig,
        laws: catalog_for(sig),
        warning,
    }
}

/// Every law of the catalog in its constant-ful form, for sweeping concrete
/// function algebras.
pub fn full_catalog() -> Vec<Law> {
    catalog_for(Signature::full())
}

/// Result of checking one quasiequation against one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    /// The first assignment (in enumeration order) satisfying every premise
    /// but violating the conclusion.
    Witness(BTreeMap<String, usize>),
}

/// The set `D(S)` of elements fixed by the domain operation.
pub fn domain_element_indices(a: &FiniteAlgebra) -> Result<Vec<usize>, AbsEvalError> {
    let mut out = Vec::new();
    for x in 0..a.len() {
        if a.dom_of(x)? == x {
            out.push(x);
        }
    }
    Ok(out)
}

/// Check a quasiequation by enumerating all assignments of its variables,
/// domain-sorted variables ranging over `D(S)` only. Returns the first
/// violating assignment, if any.
pub fn check_quasiequation(
    q: &Quasiequation,
    a: &FiniteAlgebra,
) -> Result<CheckOutcome, AbsEvalError> {
    let vars: Vec<&str> = q.variables();
    if a.is_empty() {
        return Ok(CheckOutcome::Holds);
    }
    let all_elems: Vec<usize> = (0..a.len()).collect();
    let domain_elems = if q.domain_sorted.is_empty() {
        Vec::new()
    } else {
        domain_element_indices(a)?
    };
    let ranges: Vec<&[usize]> = vars
        .iter()
        .map(|v| {
            if q.domain_sorted.iter().any(|s| s == v) {
                domain_elems.as_slice()
            } else {
                all_elems.as_slice()
            }
        })
        .collect();
    if ranges.iter().any(|r| r.is_empty()) {
        // a sorted variable with no domain elements quantifies vacuously
        return Ok(CheckOutcome::Holds);
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let bind = |name: &str| -> Option<usize> {
            vars.iter()
                .position(|v| *v == name)
                .map(|i| ranges[i][idx[i]])
        };
        let mut premises_hold = true;
        for p in &q.premises {
            if a.eval_term(&p.lhs, &bind)? != a.eval_term(&p.rhs, &bind)? {
                premises_hold = false;
                break;
            }
        }
        if premises_hold
            && a.eval_term(&q.conclusion.lhs, &bind)? != a.eval_term(&q.conclusion.rhs, &bind)?
        {
            let witness = vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.to_string(), ranges[i][idx[i]]))
                .collect();
            return Ok(CheckOutcome::Witness(witness));
        }
        // odometer over the variable ranges
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return Ok(CheckOutcome::Holds);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < ranges[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
