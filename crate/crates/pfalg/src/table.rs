//! Finite abstract algebras presented by operation tables.
//!
//! Elements are identified by index into a name list. Every symbol of the
//! signature carries a total table over element indices. When both a `d` and
//! an `a` table are present they must agree with `d = a∘a`; when a zero
//! element is declared, `0;y = 0` must hold. Both are enforced at
//! construction so downstream constructions can rely on them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::sig::{Op, Signature};
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    signature: Signature,
    unary: BTreeMap<Op, Vec<usize>>,
    binary: BTreeMap<Op, Vec<usize>>,
    zero: Option<usize>,
    identity: Option<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("element names must be unique (`{0}` repeats)")]
    DuplicateElement(String),
    #[error("unknown element name `{0}`")]
    UnknownElement(String),
    #[error("algebra must have at least one element")]
    NoElements,
    #[error("missing table for `{0}`")]
    MissingTable(Op),
    #[error("table for `{op}` has {found} entries, expected {expected}")]
    WrongTableSize {
        op: Op,
        expected: usize,
        found: usize,
    },
    #[error("table entry {0} is not a valid element index (size {1})")]
    EntryOutOfRange(usize, usize),
    #[error("`{0}` is a constant of the signature but no element is declared for it")]
    MissingConstant(Op),
    #[error("zero law fails: 0;{0} != 0")]
    ZeroLawViolated(String),
    #[error("declared domain table disagrees with a(a(x)) at `{0}`")]
    DomAntidomDisagree(String),
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("operation closure exceeds {0} elements")]
    ClosureTooLarge(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbsEvalError {
    #[error("no binding for variable `{0}`")]
    UnboundVariable(String),
    #[error("`{0}` has no table and no derivation in this algebra")]
    NoTable(Op),
    #[error("domain requested but neither a `d` table nor an `a` table is available")]
    NoDomainNotion,
}

pub struct Builder {
    names: Vec<String>,
    signature: Signature,
    unary: BTreeMap<Op, Vec<usize>>,
    binary: BTreeMap<Op, Vec<usize>>,
    zero: Option<usize>,
    identity: Option<usize>,
}

impl Builder {
    pub fn unary_table(&mut self, op: Op, table: Vec<usize>) -> &mut Self {
        self.unary.insert(op, table);
        self
    }

    pub fn binary_table(&mut self, op: Op, table: Vec<usize>) -> &mut Self {
        self.binary.insert(op, table);
        self
    }

    pub fn zero(&mut self, idx: usize) -> &mut Self {
        self.zero = Some(idx);
        self
    }

    pub fn identity(&mut self, idx: usize) -> &mut Self {
        self.identity = Some(idx);
        self
    }

    pub fn finish(self) -> Result<FiniteAlgebra, TableError> {
        let n = self.names.len();
        if n == 0 {
            return Err(TableError::NoElements);
        }
        for (i, name) in self.names.iter().enumerate() {
            if self.names[..i].contains(name) {
                return Err(TableError::DuplicateElement(name.clone()));
            }
        }
        for op in self.signature.iter() {
            match op.arity() {
                1 => {
                    let t = self.unary.get(&op).ok_or(TableError::MissingTable(op))?;
                    if t.len() != n {
                        return Err(TableError::WrongTableSize {
                            op,
                            expected: n,
                            found: t.len(),
                        });
                    }
                }
                2 => {
                    let t = self.binary.get(&op).ok_or(TableError::MissingTable(op))?;
                    if t.len() != n * n {
                        return Err(TableError::WrongTableSize {
                            op,
                            expected: n * n,
                            found: t.len(),
                        });
                    }
                }
                0 => {
                    let declared = match op {
                        Op::Zero => self.zero,
                        Op::Identity => self.identity,
                        _ => unreachable!(),
                    };
                    if declared.is_none() {
                        return Err(TableError::MissingConstant(op));
                    }
                }
                _ => unreachable!(),
            }
        }
        for t in self.unary.values().chain(self.binary.values()) {
            for &e in t {
                if e >= n {
                    return Err(TableError::EntryOutOfRange(e, n));
                }
            }
        }
        for &c in self.zero.iter().chain(self.identity.iter()) {
            if c >= n {
                return Err(TableError::EntryOutOfRange(c, n));
            }
        }
        let alg = FiniteAlgebra {
            names: self.names,
            signature: self.signature,
            unary: self.unary,
            binary: self.binary,
            zero: self.zero,
            identity: self.identity,
        };
        if let Some(z) = alg.zero {
            for y in 0..n {
                if alg.compose(z, y) != z {
                    return Err(TableError::ZeroLawViolated(alg.names[y].clone()));
                }
            }
        }
        if let (Some(d), Some(a)) = (alg.unary.get(&Op::Dom), alg.unary.get(&Op::AntiDom)) {
            for x in 0..n {
                if d[x] != a[a[x]] {
                    return Err(TableError::DomAntidomDisagree(alg.names[x].clone()));
                }
            }
        }
        Ok(alg)
    }
}

impl FiniteAlgebra {
    pub fn builder(names: Vec<String>, signature: Signature) -> Builder {
        Builder {
            names,
            signature,
            unary: BTreeMap::new(),
            binary: BTreeMap::new(),
            zero: None,
            identity: None,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn compose(&self, x: usize, y: usize) -> usize {
        self.binary[&Op::Compose][x * self.len() + y]
    }

    pub fn has_table(&self, op: Op) -> bool {
        match op.arity() {
            1 => self.unary.contains_key(&op),
            2 => self.binary.contains_key(&op),
            0 => self.constant(op).is_some(),
            _ => false,
        }
    }

    pub fn constant(&self, op: Op) -> Option<usize> {
        match op {
            Op::Zero => self.zero,
            Op::Identity => self.identity,
            _ => None,
        }
    }

    /// The declared zero element, or the element `a(e);e` when an antidomain
    /// table is available. The latter is the zero of the algebra whenever the
    /// antidomain axioms hold; on arbitrary tables it is just a candidate.
    pub fn zero_element(&self) -> Option<usize> {
        self.zero.or_else(|| {
            let a = self.unary.get(&Op::AntiDom)?;
            Some(self.compose(a[0], 0))
        })
    }

    /// The declared identity element, or `a(0)` when derivable.
    pub fn identity_element(&self) -> Option<usize> {
        self.identity.or_else(|| {
            let a = self.unary.get(&Op::AntiDom)?;
            let zero = self.zero_element()?;
            Some(a[zero])
        })
    }

    /// Domain of an element: the `d` table when present, else `a(a(x))`.
    pub fn dom_of(&self, x: usize) -> Result<usize, AbsEvalError> {
        if let Some(t) = self.unary.get(&Op::Dom) {
            return Ok(t[x]);
        }
        if let Some(a) = self.unary.get(&Op::AntiDom) {
            return Ok(a[a[x]]);
        }
        Err(AbsEvalError::NoDomainNotion)
    }

    pub fn apply1(&self, op: Op, x: usize) -> Result<usize, AbsEvalError> {
        if let Some(t) = self.unary.get(&op) {
            return Ok(t[x]);
        }
        match op {
            Op::Dom => self.dom_of(x),
            // fix(x) = d(x) . x when both pieces are available
            Op::Fixset => {
                let meet = self
                    .binary
                    .get(&Op::Meet)
                    .ok_or(AbsEvalError::NoTable(op))?;
                let d = self.dom_of(x)?;
                Ok(meet[d * self.len() + x])
            }
            _ => Err(AbsEvalError::NoTable(op)),
        }
    }

    pub fn apply2(&self, op: Op, x: usize, y: usize) -> Result<usize, AbsEvalError> {
        let t = self.binary.get(&op).ok_or(AbsEvalError::NoTable(op))?;
        Ok(t[x * self.len() + y])
    }

    /// Evaluate a term by table lookup. Constants fall back to their derived
    /// definitions (`0 = a(x);x`, `1' = a(0)`) when not declared.
    pub fn eval_term(
        &self,
        t: &Term,
        bind: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<usize, AbsEvalError> {
        match t {
            Term::Var(name) => {
                bind(name).ok_or_else(|| AbsEvalError::UnboundVariable(name.clone()))
            }
            Term::Zero => self.zero_element().ok_or(AbsEvalError::NoTable(Op::Zero)),
            Term::Identity => self
                .identity_element()
                .ok_or(AbsEvalError::NoTable(Op::Identity)),
            Term::Unary(op, s) => {
                let x = self.eval_term(s, bind)?;
                self.apply1(*op, x)
            }
            Term::Binary(op, l, r) => {
                let x = self.eval_term(l, bind)?;
                let y = self.eval_term(r, bind)?;
                self.apply2(*op, x, y)
            }
        }
    }

    /// Line-oriented text format, canonical form:
    ///
    /// ```text
    /// elements: 0 a b d r
    /// signature: ; . d r 0
    /// table ;:
    /// 0 0 0 0 0
    /// …
    /// table d: 0 d d d r
    /// zero: 0
    /// ```
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "elements: {}", self.names.join(" ")).unwrap();
        writeln!(s, "signature: {}", self.signature).unwrap();
        let n = self.len();
        for op in self.signature.iter() {
            match op.arity() {
                2 => {
                    writeln!(s, "table {}:", op.token()).unwrap();
                    let t = &self.binary[&op];
                    for row in 0..n {
                        let cells: Vec<&str> = (0..n)
                            .map(|col| self.names[t[row * n + col]].as_str())
                            .collect();
                        writeln!(s, "{}", cells.join(" ")).unwrap();
                    }
                }
                1 => {
                    let t = &self.unary[&op];
                    let cells: Vec<&str> = t.iter().map(|&e| self.names[e].as_str()).collect();
                    writeln!(s, "table {}: {}", op.token(), cells.join(" ")).unwrap();
                }
                _ => {}
            }
        }
        if let Some(z) = self.zero {
            writeln!(s, "zero: {}", self.names[z]).unwrap();
        }
        if let Some(e) = self.identity {
            writeln!(s, "identity: {}", self.names[e]).unwrap();
        }
        s
    }

    pub fn parse_text(src: &str) -> Result<FiniteAlgebra, TableError> {
        let mut names: Option<Vec<String>> = None;
        let mut signature: Option<Signature> = None;
        let mut unary: BTreeMap<Op, Vec<usize>> = BTreeMap::new();
        let mut binary: BTreeMap<Op, Vec<usize>> = BTreeMap::new();
        let mut zero = None;
        let mut identity = None;
        // table currently being filled and how many entries it still needs
        let mut pending: Option<(Op, Vec<usize>, usize)> = None;

        let lookup = |names: &Option<Vec<String>>, tok: &str, lineno: usize| {
            names
                .as_ref()
                .and_then(|ns| ns.iter().position(|n| n == tok))
                .ok_or_else(|| TableError::Line(lineno, format!("unknown element `{}`", tok)))
        };

        for (i, raw) in src.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((op, mut acc, want)) = pending.take() {
                if !line.contains(':') {
                    for tok in line.split_whitespace() {
                        acc.push(lookup(&names, tok, lineno)?);
                    }
                    if acc.len() < want {
                        pending = Some((op, acc, want));
                    } else {
                        match op.arity() {
                            1 => unary.insert(op, acc),
                            _ => binary.insert(op, acc),
                        };
                    }
                    continue;
                }
                // a new `key:` line closes the pending table early
                match op.arity() {
                    1 => unary.insert(op, acc),
                    _ => binary.insert(op, acc),
                };
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| TableError::Line(lineno, "expected `key: value`".into()))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "elements" => {
                    names = Some(value.split_whitespace().map(str::to_string).collect());
                }
                "signature" => {
                    signature = Some(
                        Signature::parse(value)
                            .map_err(|e| TableError::Line(lineno, e.to_string()))?,
                    );
                }
                "zero" => zero = Some(lookup(&names, value, lineno)?),
                "identity" => identity = Some(lookup(&names, value, lineno)?),
                _ => {
                    let op_tok = key.strip_prefix("table").map(str::trim).ok_or_else(|| {
                        TableError::Line(lineno, format!("unknown key `{}`", key))
                    })?;
                    let op = Op::from_token(op_tok).ok_or_else(|| {
                        TableError::Line(lineno, format!("unknown operation `{}`", op_tok))
                    })?;
                    let n = names.as_ref().map(|ns| ns.len()).ok_or_else(|| {
                        TableError::Line(lineno, "elements must come first".into())
                    })?;
                    let want = match op.arity() {
                        1 => n,
                        2 => n * n,
                        _ => {
                            return Err(TableError::Line(
                                lineno,
                                format!("`{}` is a constant, use `zero:`/`identity:`", op_tok),
                            ))
                        }
                    };
                    let mut acc = Vec::with_capacity(want);
                    for tok in value.split_whitespace() {
                        acc.push(lookup(&names, tok, lineno)?);
                    }
                    if acc.len() < want {
                        pending = Some((op, acc, want));
                    } else {
                        match op.arity() {
                            1 => unary.insert(op, acc),
                            _ => binary.insert(op, acc),
                        };
                    }
                }
            }
        }
        if let Some((op, acc, _)) = pending.take() {
            match op.arity() {
                1 => unary.insert(op, acc),
                _ => binary.insert(op, acc),
            };
        }
        let names = names.ok_or(TableError::Line(0, "missing `elements:` line".into()))?;
        let signature = signature.ok_or(TableError::Line(0, "missing `signature:` line".into()))?;
        let mut b = FiniteAlgebra::builder(names, signature);
        for (op, t) in unary {
            b.unary_table(op, t);
        }
        for (op, t) in binary {
            b.binary_table(op, t);
        }
        if let Some(z) = zero {
            b.zero(z);
        }
        if let Some(e) = identity {
            b.identity(e);
        }
        b.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::testutil::PARALLEL_PAIR;

    #[test]
    fn parse_save_round_trip_is_bit_exact() {
        let alg = FiniteAlgebra::parse_text(PARALLEL_PAIR).unwrap();
        assert_eq!(alg.len(), 5);
        let saved = alg.to_text();
        let reparsed = FiniteAlgebra::parse_text(&saved).unwrap();
        assert_eq!(alg, reparsed);
        assert_eq!(reparsed.to_text(), saved);
    }

    #[test]
    fn eval_matches_forced_products() {
        let alg = FiniteAlgebra::parse_text(PARALLEL_PAIR).unwrap();
        let bind = |name: &str| alg.index_of(name);
        // d;a;r multiplies out to a
        let t = parse_term("d;a;r").unwrap();
        assert_eq!(
            alg.eval_term(&t, &bind).unwrap(),
            alg.index_of("a").unwrap()
        );
        // a;b collapses to zero
        let t = parse_term("a;b").unwrap();
        assert_eq!(
            alg.eval_term(&t, &bind).unwrap(),
            alg.index_of("0").unwrap()
        );
    }

    #[test]
    fn zero_law_checked_at_load() {
        let bad = "\
elements: 0 x
signature: ; 0
table ;:
0 x
x x
zero: 0
";
        assert!(matches!(
            FiniteAlgebra::parse_text(bad),
            Err(TableError::ZeroLawViolated(_))
        ));
    }

    #[test]
    fn dom_antidom_agreement_checked_at_load() {
        // d(x) = x but a(a(x)) = 0 for the non-idempotent element
        let bad = "\
elements: z e
signature: ; d a
table ;:
z z
z e
table d: z e
table a: e e
";
        assert!(matches!(
            FiniteAlgebra::parse_text(bad),
            Err(TableError::DomAntidomDisagree(_))
        ));
    }

    #[test]
    fn missing_table_rejected() {
        let bad = "\
elements: x
signature: ; d
table ;:
x
";
        assert_eq!(
            FiniteAlgebra::parse_text(bad),
            Err(TableError::MissingTable(Op::Dom))
        );
    }

    #[test]
    fn domain_requires_a_table_or_antidomain() {
        let no_dom = "\
elements: x
signature: ; r
table ;:
x
table r: x
";
        let alg = FiniteAlgebra::parse_text(no_dom).unwrap();
        assert_eq!(alg.dom_of(0), Err(AbsEvalError::NoDomainNotion));
        let t = parse_term("d(y)").unwrap();
        let bind = |_: &str| Some(0);
        assert_eq!(alg.eval_term(&t, &bind), Err(AbsEvalError::NoDomainNotion));
    }

    #[test]
    fn identity_laws_hold_via_eval() {
        let one = "\
elements: e
signature: ; d 0 1'
table ;:
e
table d: e
zero: e
identity: e
";
        let alg = FiniteAlgebra::parse_text(one).unwrap();
        let t = parse_term("1';y").unwrap();
        let bind = |name: &str| if name == "y" { Some(0) } else { None };
        assert_eq!(alg.eval_term(&t, &bind).unwrap(), 0);
    }
}
