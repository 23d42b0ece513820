//! Reduction of propositional validity to function-algebra equations.
//!
//! A formula over negation and conjunction maps to a term over
//! `{;, a, d, 1'}` by sending each proposition `p` to `d(f_p)`, negation to
//! antidomain and conjunction to composition; the formula is a tautology iff
//! the equation `φ* = 1'` is valid over function algebras. A truth-table
//! oracle lives alongside for cross-validation.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::term::{Equation, Term};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    Prop(String),
    Not(Rc<Formula>),
    And(Rc<Formula>, Rc<Formula>),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Rc<Formula> {
        Rc::new(Formula::Prop(name.into()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Rc<Formula>) -> Rc<Formula> {
        Rc::new(Formula::Not(f))
    }

    pub fn and(l: Rc<Formula>, r: Rc<Formula>) -> Rc<Formula> {
        Rc::new(Formula::And(l, r))
    }

    /// Proposition names in first-occurrence order.
    pub fn props(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Prop(p) => {
                if !out.contains(&p.as_str()) {
                    out.push(p);
                }
            }
            Formula::Not(f) => f.collect_props(out),
            Formula::And(l, r) => {
                l.collect_props(out);
                r.collect_props(out);
            }
        }
    }

    pub fn connective_count(&self) -> usize {
        match self {
            Formula::Prop(_) => 0,
            Formula::Not(f) => 1 + f.connective_count(),
            Formula::And(l, r) => 1 + l.connective_count() + r.connective_count(),
        }
    }

    pub fn eval(&self, val: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Formula::Prop(p) => val(p),
            Formula::Not(f) => !f.eval(val),
            Formula::And(l, r) => l.eval(val) && r.eval(val),
        }
    }

    /// Truth-table validity oracle.
    pub fn is_tautology(&self) -> bool {
        let props = self.props();
        debug_assert!(props.len() < 60);
        (0u64..(1 << props.len())).all(|mask| {
            self.eval(&|name| {
                let i = props.iter().position(|p| *p == name).unwrap();
                mask & (1 << i) != 0
            })
        })
    }

    /// The term `φ*`: `p ↦ d(f_p)`, `¬ ↦ a`, `∧ ↦ ;`.
    pub fn to_term(&self) -> Term {
        match self {
            Formula::Prop(p) => Term::dom(Term::var(format!("f_{}", p))),
            Formula::Not(f) => Term::antidom(f.to_term()),
            Formula::And(l, r) => Term::compose(l.to_term(), r.to_term()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Prop(p) => f.write_str(p),
            Formula::Not(inner) => write!(f, "!{}", WrapAnd(inner)),
            Formula::And(l, r) => write!(f, "{} & {}", WrapAnd(l), WrapAnd(r)),
        }
    }
}

/// Parenthesize conjunctions under tighter contexts.
struct WrapAnd<'a>(&'a Formula);

impl fmt::Display for WrapAnd<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Formula::And(..) => write!(f, "({})", self.0),
            other => write!(f, "{}", other),
        }
    }
}

/// The equation `φ* = 1'`, valid over function algebras iff `φ` is a
/// propositional validity.
pub fn sat_to_equation(phi: &Formula) -> Equation {
    Equation::new(phi.to_term(), Term::Identity)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of formula")]
    UnexpectedEnd,
    #[error("trailing input at byte {0}")]
    Trailing(usize),
}

/// Grammar: `formula := unary ('&' unary)*`, `unary := '!' unary | prop |
/// '(' formula ')'`, props matching `[a-z][a-zA-Z0-9_]*`.
pub fn parse_formula(src: &str) -> Result<Rc<Formula>, FormulaParseError> {
    let bytes = src.as_bytes();
    let mut pos = 0usize;
    let f = parse_and(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos < bytes.len() {
        return Err(FormulaParseError::Trailing(pos));
    }
    Ok(f)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && (bytes[*pos] as char).is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_and(bytes: &[u8], pos: &mut usize) -> Result<Rc<Formula>, FormulaParseError> {
    let mut f = parse_unary(bytes, pos)?;
    loop {
        skip_ws(bytes, pos);
        if *pos < bytes.len() && bytes[*pos] == b'&' {
            *pos += 1;
            let r = parse_unary(bytes, pos)?;
            f = Formula::and(f, r);
        } else {
            return Ok(f);
        }
    }
}

fn parse_unary(bytes: &[u8], pos: &mut usize) -> Result<Rc<Formula>, FormulaParseError> {
    skip_ws(bytes, pos);
    if *pos >= bytes.len() {
        return Err(FormulaParseError::UnexpectedEnd);
    }
    match bytes[*pos] {
        b'!' | b'~' => {
            *pos += 1;
            Ok(Formula::not(parse_unary(bytes, pos)?))
        }
        b'(' => {
            *pos += 1;
            let f = parse_and(bytes, pos)?;
            skip_ws(bytes, pos);
            if *pos < bytes.len() && bytes[*pos] == b')' {
                *pos += 1;
                Ok(f)
            } else {
                Err(FormulaParseError::UnexpectedEnd)
            }
        }
        b'a'..=b'z' => {
            let start = *pos;
            *pos += 1;
            while *pos < bytes.len()
                && ((bytes[*pos] as char).is_ascii_alphanumeric() || bytes[*pos] == b'_')
            {
                *pos += 1;
            }
            Ok(Formula::prop(
                std::str::from_utf8(&bytes[start..*pos]).unwrap(),
            ))
        }
        other => Err(FormulaParseError::UnexpectedChar(other as char, *pos)),
    }
}

/// Every formula over the given propositions with at most `max_connectives`
/// occurrences of `!` and `&`. Subformulas are shared, so the result stays
/// small in memory even though the count grows quickly.
pub fn enumerate_formulas(props: &[&str], max_connectives: usize) -> Vec<Rc<Formula>> {
    let mut levels: Vec<Vec<Rc<Formula>>> = Vec::with_capacity(max_connectives + 1);
    levels.push(props.iter().map(|p| Formula::prop(*p)).collect());
    for c in 1..=max_connectives {
        let mut level = Vec::new();
        for f in &levels[c - 1] {
            level.push(Formula::not(f.clone()));
        }
        for i in 0..c {
            let j = c - 1 - i;
            for l in &levels[i] {
                for r in &levels[j] {
                    level.push(Formula::and(l.clone(), r.clone()));
                }
            }
        }
        levels.push(level);
    }
    levels.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::{decide_equation, SearchOptions, Verdict};
    use crate::sig::Signature;

    fn sat_sig() -> Signature {
        Signature::parse("; a d 1'").unwrap()
    }

    #[test]
    fn excluded_middle_reduces_to_a_valid_equation() {
        let phi = parse_formula("!(p & !p)").unwrap();
        assert!(phi.is_tautology());
        let eq = sat_to_equation(&phi);
        assert_eq!(eq.to_string(), "a(d(f_p);a(d(f_p))) = 1'");
        let d = decide_equation(&eq, sat_sig(), &SearchOptions::default()).unwrap();
        assert!(matches!(d.verdict, Verdict::Valid));
    }

    #[test]
    fn bare_proposition_is_refuted_on_one_point() {
        let phi = parse_formula("p").unwrap();
        assert!(!phi.is_tautology());
        let eq = sat_to_equation(&phi);
        let d = decide_equation(&eq, sat_sig(), &SearchOptions::default()).unwrap();
        match d.verdict {
            Verdict::Counterexample(ce) => {
                assert_eq!(ce.base, 1);
                assert!(ce.assignment.get("f_p").unwrap().is_empty());
            }
            other => panic!("expected counterexample, got {:?}", other),
        }
    }

    #[test]
    fn contradiction_is_refuted() {
        let phi = parse_formula("p & !p").unwrap();
        let eq = sat_to_equation(&phi);
        let d = decide_equation(&eq, sat_sig(), &SearchOptions::default()).unwrap();
        assert!(matches!(d.verdict, Verdict::Counterexample(_)));
    }

    #[test]
    fn verdicts_match_truth_tables_on_small_formulas() {
        let formulas = enumerate_formulas(&["p", "q"], 3);
        for phi in &formulas {
            let eq = sat_to_equation(phi);
            let d = decide_equation(&eq, sat_sig(), &SearchOptions::default()).unwrap();
            let valid = matches!(d.verdict, Verdict::Valid);
            assert_eq!(valid, phi.is_tautology(), "formula {}", phi);
        }
    }

    #[test]
    fn enumeration_counts() {
        // t(0)=2, t(1)=2+4=6, t(2)=6+2*2*6=30
        let fs = enumerate_formulas(&["p", "q"], 2);
        assert_eq!(fs.len(), 2 + 6 + 30);
        assert!(fs.iter().all(|f| f.connective_count() <= 2));
    }

    #[test]
    fn parser_round_trip() {
        for src in ["p", "!p", "p & q", "!(p & !q) & r", "~x1 & (y & z)"] {
            let f = parse_formula(src).unwrap();
            let printed = f.to_string();
            let back = parse_formula(&printed).unwrap();
            assert_eq!(back, f, "{} -> {}", src, printed);
        }
        assert!(parse_formula("p &").is_err());
        assert!(parse_formula("(p").is_err());
        assert!(parse_formula("P").is_err());
    }
}
