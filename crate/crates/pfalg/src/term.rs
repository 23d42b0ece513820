//! Terms, equations and quasiequations.

use std::fmt;

use thiserror::Error;

use crate::sig::{Op, Signature};

/// A term over the language of partial functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(String),
    Zero,
    Identity,
    Unary(Op, Box<Term>),
    Binary(Op, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn compose(l: Term, r: Term) -> Term {
        Term::Binary(Op::Compose, Box::new(l), Box::new(r))
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::Binary(Op::Meet, Box::new(l), Box::new(r))
    }

    pub fn prefunion(l: Term, r: Term) -> Term {
        Term::Binary(Op::PrefUnion, Box::new(l), Box::new(r))
    }

    pub fn dom(t: Term) -> Term {
        Term::Unary(Op::Dom, Box::new(t))
    }

    pub fn antidom(t: Term) -> Term {
        Term::Unary(Op::AntiDom, Box::new(t))
    }

    pub fn range(t: Term) -> Term {
        Term::Unary(Op::Range, Box::new(t))
    }

    pub fn fixset(t: Term) -> Term {
        Term::Unary(Op::Fixset, Box::new(t))
    }

    pub fn maxiter(t: Term) -> Term {
        Term::Unary(Op::MaxIter, Box::new(t))
    }

    /// Node count of the syntax tree; variables and constants count one.
    pub fn length(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::Identity => 1,
            Term::Unary(_, t) => 1 + t.length(),
            Term::Binary(_, l, r) => 1 + l.length() + r.length(),
        }
    }

    /// Variable names in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Term::Zero | Term::Identity => {}
            Term::Unary(_, t) => t.collect_vars(out),
            Term::Binary(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// The operation symbol of the root node, if the root is not a variable.
    pub fn head(&self) -> Option<Op> {
        match self {
            Term::Var(_) => None,
            Term::Zero => Some(Op::Zero),
            Term::Identity => Some(Op::Identity),
            Term::Unary(op, _) => Some(*op),
            Term::Binary(op, _, _) => Some(*op),
        }
    }

    pub fn contains_op(&self, op: Op) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Zero => op == Op::Zero,
            Term::Identity => op == Op::Identity,
            Term::Unary(o, t) => *o == op || t.contains_op(op),
            Term::Binary(o, l, r) => *o == op || l.contains_op(op) || r.contains_op(op),
        }
    }

    /// Check that every symbol of the term lies in `sig`. On failure reports
    /// the first offending symbol in preorder together with its tree path.
    pub fn check_well_formed(&self, sig: Signature) -> Result<(), WellFormedError> {
        self.check_wf_at(sig, &mut Vec::new())
    }

    fn check_wf_at(&self, sig: Signature, path: &mut Vec<usize>) -> Result<(), WellFormedError> {
        let fail = |op: Op, path: &[usize]| {
            Err(WellFormedError {
                symbol: op,
                path: path.to_vec(),
            })
        };
        match self {
            Term::Var(_) => Ok(()),
            Term::Zero => {
                if sig.contains(Op::Zero) {
                    Ok(())
                } else {
                    fail(Op::Zero, path)
                }
            }
            Term::Identity => {
                if sig.contains(Op::Identity) {
                    Ok(())
                } else {
                    fail(Op::Identity, path)
                }
            }
            Term::Unary(op, t) => {
                if !sig.contains(*op) {
                    return fail(*op, path);
                }
                path.push(0);
                let res = t.check_wf_at(sig, path);
                path.pop();
                res
            }
            Term::Binary(op, l, r) => {
                if !sig.contains(*op) {
                    return fail(*op, path);
                }
                path.push(0);
                l.check_wf_at(sig, path)?;
                path.pop();
                path.push(1);
                let res = r.check_wf_at(sig, path);
                path.pop();
                res
            }
        }
    }

    /// Substitute terms for variables. Names without a replacement stay.
    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<Term>) -> Term {
        match self {
            Term::Var(name) => map(name).unwrap_or_else(|| self.clone()),
            Term::Zero | Term::Identity => self.clone(),
            Term::Unary(op, t) => Term::Unary(*op, Box::new(t.substitute(map))),
            Term::Binary(op, l, r) => Term::Binary(
                *op,
                Box::new(l.substitute(map)),
                Box::new(r.substitute(map)),
            ),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("symbol `{symbol}` not in signature (at tree path {path:?})")]
pub struct WellFormedError {
    pub symbol: Op,
    pub path: Vec<usize>,
}

// Printing uses the CLI grammar: postfix `^` binds tightest, then `;`,
// then `.`, then `+`; binary operators are left-associative.
fn prec(op: Op) -> u8 {
    match op {
        Op::PrefUnion => 1,
        Op::Meet => 2,
        Op::Compose => 3,
        Op::MaxIter => 4,
        _ => 5,
    }
}

impl Term {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        match self {
            Term::Var(name) => f.write_str(name),
            Term::Zero => f.write_str("0"),
            Term::Identity => f.write_str("1'"),
            Term::Unary(Op::MaxIter, t) => {
                let p = prec(Op::MaxIter);
                if p < min {
                    f.write_str("(")?;
                }
                t.fmt_prec(f, p)?;
                f.write_str("^")?;
                if p < min {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::Unary(op, t) => {
                write!(f, "{}(", op.token())?;
                t.fmt_prec(f, 0)?;
                f.write_str(")")
            }
            Term::Binary(op, l, r) => {
                let p = prec(*op);
                if p < min {
                    f.write_str("(")?;
                }
                l.fmt_prec(f, p)?;
                f.write_str(op.token())?;
                // left-associative: the right child needs strictly higher binding
                r.fmt_prec(f, p + 1)?;
                if p < min {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// An equation between two terms. Variable sets of the sides may differ;
/// validity quantifies over the union.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut vars = self.lhs.variables();
        for v in self.rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars
    }

    pub fn check_well_formed(&self, sig: Signature) -> Result<(), WellFormedError> {
        self.lhs.check_well_formed(sig)?;
        self.rhs.check_well_formed(sig)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Sort of a quantified variable in a quasiequation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarSort {
    /// Ranges over all elements.
    Any,
    /// Ranges over domain elements only (elements fixed by `d`).
    DomainElement,
}

/// An implication between equations; with no premises it is an equation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quasiequation {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
    /// Variables carrying the domain-element sort. Everything else is `Any`.
    pub domain_sorted: Vec<String>,
}

impl Quasiequation {
    pub fn equation(eq: Equation) -> Quasiequation {
        Quasiequation {
            premises: Vec::new(),
            conclusion: eq,
            domain_sorted: Vec::new(),
        }
    }

    pub fn is_equation(&self) -> bool {
        self.premises.is_empty()
    }

    pub fn sort_of(&self, var: &str) -> VarSort {
        if self.domain_sorted.iter().any(|v| v == var) {
            VarSort::DomainElement
        } else {
            VarSort::Any
        }
    }

    /// All variables, first-occurrence order across premises then conclusion.
    pub fn variables(&self) -> Vec<&str> {
        let mut vars: Vec<&str> = Vec::new();
        for eq in self
            .premises
            .iter()
            .chain(std::iter::once(&self.conclusion))
        {
            for v in eq.variables() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        vars
    }
}

impl fmt::Display for Quasiequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.premises.is_empty() {
            for (i, p) in self.premises.iter().enumerate() {
                if i > 0 {
                    f.write_str(" & ")?;
                }
                write!(f, "{}", p)?;
            }
            f.write_str(" => ")?;
        }
        write!(f, "{}", self.conclusion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    #[test]
    fn length_counts_nodes() {
        assert_eq!(Term::var("x").length(), 1);
        // d, x, ;, y
        let t = parse_term("d(x);y").unwrap();
        assert_eq!(t.length(), 4);
        // a, d, f_p, ;, a, d, f_q — seven nodes in the parsed tree
        let t = parse_term("a(d(f_p));a(d(f_q))").unwrap();
        assert_eq!(t.length(), 7);
    }

    #[test]
    fn variables_first_occurrence_order() {
        let t = parse_term("d(x);x").unwrap();
        assert_eq!(t.variables(), vec!["x"]);
        let t = parse_term("x;y . y;x").unwrap();
        assert_eq!(t.variables(), vec!["x", "y"]);
        let t = parse_term("1'").unwrap();
        assert!(t.variables().is_empty());
    }

    #[test]
    fn well_formedness_reports_first_offending_symbol() {
        let sig = Signature::parse("; d r").unwrap();
        let t = parse_term("a(x)").unwrap();
        let err = t.check_well_formed(sig).unwrap_err();
        assert_eq!(err.symbol, Op::AntiDom);
        assert_eq!(err.path, Vec::<usize>::new());

        assert!(parse_term("d(x);r(y)")
            .unwrap()
            .check_well_formed(sig)
            .is_ok());

        let sig = Signature::parse("; a fix ^").unwrap();
        assert!(parse_term("x^").unwrap().check_well_formed(sig).is_ok());
    }

    #[test]
    fn display_respects_precedence() {
        let t = parse_term("(x+y);z").unwrap();
        assert_eq!(t.to_string(), "(x+y);z");
        let t = parse_term("x+y;z").unwrap();
        assert_eq!(t.to_string(), "x+y;z");
        let t = parse_term("x;(y;z)").unwrap();
        assert_eq!(t.to_string(), "x;(y;z)");
        let t = parse_term("(x;y)^").unwrap();
        assert_eq!(t.to_string(), "(x;y)^");
    }
}
