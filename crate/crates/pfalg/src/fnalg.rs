//! Concrete algebras of partial functions: named generators over a common
//! base, term evaluation, relativization to a subset of the base, and the
//! text fixture format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::pfn::{PartialFunction, PfnError};
use crate::sig::{Op, Signature};
use crate::table::{FiniteAlgebra, TableError};
use crate::term::{Term, WellFormedError};

/// A family of named partial functions on one base, under a signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionAlgebra {
    base: usize,
    signature: Signature,
    generators: BTreeMap<String, PartialFunction>,
}

/// A binding of term variables to partial functions on one base.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    map: BTreeMap<String, PartialFunction>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("no binding for variable `{0}`")]
    UnboundVariable(String),
    #[error("binding for `{name}` lives on base {found}, expected {expected}")]
    BaseMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    NotWellFormed(#[from] WellFormedError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("missing `base:` line")]
    MissingBase,
    #[error(transparent)]
    Pfn(#[from] PfnError),
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn bind(mut self, name: impl Into<String>, f: PartialFunction) -> Assignment {
        self.map.insert(name.into(), f);
        self
    }

    pub fn insert(&mut self, name: impl Into<String>, f: PartialFunction) {
        self.map.insert(name.into(), f);
    }

    pub fn get(&self, name: &str) -> Option<&PartialFunction> {
        self.map.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PartialFunction)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn check_covers(&self, t: &Term, base: usize) -> Result<(), EvalError> {
        for v in t.variables() {
            match self.map.get(v) {
                None => return Err(EvalError::UnboundVariable(v.to_string())),
                Some(f) if f.base() != base => {
                    return Err(EvalError::BaseMismatch {
                        name: v.to_string(),
                        expected: base,
                        found: f.base(),
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl FromIterator<(String, PartialFunction)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (String, PartialFunction)>>(iter: I) -> Assignment {
        Assignment {
            map: iter.into_iter().collect(),
        }
    }
}

/// Evaluate a term at an assignment. `base` is the antidomain/identity
/// parameter; every binding used must live on it.
pub fn evaluate(t: &Term, asg: &Assignment, base: usize) -> Result<PartialFunction, EvalError> {
    asg.check_covers(t, base)?;
    Ok(eval_unchecked(t, asg, base))
}

pub(crate) fn eval_unchecked(t: &Term, asg: &Assignment, base: usize) -> PartialFunction {
    match t {
        Term::Var(name) => asg.map[name].clone(),
        Term::Zero => PartialFunction::empty(base),
        Term::Identity => PartialFunction::identity(base),
        Term::Unary(op, s) => {
            let f = eval_unchecked(s, asg, base);
            match op {
                Op::Dom => f.dom(),
                Op::AntiDom => f.antidom(),
                Op::Range => f.range(),
                Op::Fixset => f.fixset(),
                Op::MaxIter => f.maxiter(),
                _ => unreachable!("unary op"),
            }
        }
        Term::Binary(op, l, r) => {
            let fl = eval_unchecked(l, asg, base);
            let fr = eval_unchecked(r, asg, base);
            match op {
                Op::Compose => fl.compose(&fr),
                Op::Meet => fl.meet(&fr),
                Op::PrefUnion => fl.prefunion(&fr),
                _ => unreachable!("binary op"),
            }
        }
    }
}

impl FunctionAlgebra {
    pub fn new(
        base: usize,
        signature: Signature,
        generators: impl IntoIterator<Item = (String, PartialFunction)>,
    ) -> Result<FunctionAlgebra, EvalError> {
        let generators: BTreeMap<String, PartialFunction> = generators.into_iter().collect();
        for (name, f) in &generators {
            if f.base() != base {
                return Err(EvalError::BaseMismatch {
                    name: name.clone(),
                    expected: base,
                    found: f.base(),
                });
            }
        }
        Ok(FunctionAlgebra {
            base,
            signature,
            generators,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, &PartialFunction)> {
        self.generators.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn generator(&self, name: &str) -> Option<&PartialFunction> {
        self.generators.get(name)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn as_assignment(&self) -> Assignment {
        Assignment {
            map: self.generators.clone(),
        }
    }

    /// Evaluate a term whose variables name generators of this algebra.
    pub fn evaluate(&self, t: &Term) -> Result<PartialFunction, EvalError> {
        t.check_well_formed(self.signature)?;
        evaluate(t, &self.as_assignment(), self.base)
    }

    /// Relativize to a set of points: every generator is intersected with
    /// `Y × Y` and the base becomes `Y`, reindexed by increasing original
    /// index. Returns the algebra and the old-to-new point map.
    pub fn restrict(&self, keep: &[usize]) -> (FunctionAlgebra, Vec<Option<usize>>) {
        let mut sorted: Vec<usize> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.retain(|&p| p < self.base);
        let mut old_to_new = vec![None; self.base];
        for (new, &old) in sorted.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let generators = self
            .generators
            .iter()
            .map(|(name, f)| (name.clone(), f.restrict_reindex(&old_to_new, sorted.len())))
            .collect();
        (
            FunctionAlgebra {
                base: sorted.len(),
                signature: self.signature,
                generators,
            },
            old_to_new,
        )
    }

    /// Close the generator set under the signature operations and return the
    /// resulting abstract operation tables. Element names are `f0, f1, …` in
    /// discovery order; returns the elements as functions alongside.
    ///
    /// Fails if the closure exceeds `max_elements`.
    pub fn to_finite_algebra(
        &self,
        max_elements: usize,
    ) -> Result<(FiniteAlgebra, Vec<PartialFunction>), TableError> {
        let mut elems: Vec<PartialFunction> = Vec::new();
        let mut index: BTreeMap<PartialFunction, usize> = BTreeMap::new();
        let add = |f: PartialFunction,
                   elems: &mut Vec<PartialFunction>,
                   index: &mut BTreeMap<PartialFunction, usize>|
         -> usize {
            if let Some(&i) = index.get(&f) {
                return i;
            }
            let i = elems.len();
            index.insert(f.clone(), i);
            elems.push(f);
            i
        };
        // constants first so that 0 and 1' are present when in signature
        if self.signature.contains(Op::Zero) {
            add(PartialFunction::empty(self.base), &mut elems, &mut index);
        }
        if self.signature.contains(Op::Identity) {
            add(PartialFunction::identity(self.base), &mut elems, &mut index);
        }
        for f in self.generators.values() {
            add(f.clone(), &mut elems, &mut index);
        }
        let mut next = 0;
        while next < elems.len() {
            if elems.len() > max_elements {
                return Err(TableError::ClosureTooLarge(max_elements));
            }
            let f = elems[next].clone();
            for op in self.signature.iter() {
                match op.arity() {
                    1 => {
                        let g = apply1_concrete(op, &f);
                        add(g, &mut elems, &mut index);
                    }
                    2 => {
                        for i in 0..=next {
                            let other = elems[i].clone();
                            add(apply2_concrete(op, &f, &other), &mut elems, &mut index);
                            add(apply2_concrete(op, &other, &f), &mut elems, &mut index);
                        }
                    }
                    _ => {}
                }
            }
            next += 1;
        }
        if elems.len() > max_elements {
            return Err(TableError::ClosureTooLarge(max_elements));
        }
        let names: Vec<String> = (0..elems.len()).map(|i| format!("f{}", i)).collect();
        let mut builder = FiniteAlgebra::builder(names, self.signature);
        for op in self.signature.iter() {
            match op.arity() {
                1 => {
                    let table: Vec<usize> = elems
                        .iter()
                        .map(|f| index[&apply1_concrete(op, f)])
                        .collect();
                    builder.unary_table(op, table);
                }
                2 => {
                    let mut table = Vec::with_capacity(elems.len() * elems.len());
                    for f in &elems {
                        for g in &elems {
                            table.push(index[&apply2_concrete(op, f, g)]);
                        }
                    }
                    builder.binary_table(op, table);
                }
                _ => {}
            }
        }
        if self.signature.contains(Op::Zero) {
            builder.zero(index[&PartialFunction::empty(self.base)]);
        }
        if self.signature.contains(Op::Identity) {
            builder.identity(index[&PartialFunction::identity(self.base)]);
        }
        Ok((builder.finish()?, elems))
    }

    /// Fixture format: a `base:` line, then one `name: {x->y, …}` line per
    /// generator. Blank lines and `#` comments are skipped.
    pub fn to_fixture(&self) -> String {
        let mut s = String::new();
        writeln!(s, "base: {}", self.base).unwrap();
        for (name, f) in &self.generators {
            writeln!(s, "{}: {}", name, f.to_text()).unwrap();
        }
        s
    }

    /// Parse the fixture format. The signature is not part of the file; the
    /// caller supplies it (defaulting to the full signature is common).
    pub fn parse_fixture(src: &str, signature: Signature) -> Result<FunctionAlgebra, FixtureError> {
        let mut base: Option<usize> = None;
        let mut generators = BTreeMap::new();
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| FixtureError::Line(lineno + 1, "expected `key: value`".into()))?;
            let key = key.trim();
            let value = value.trim();
            if key == "base" {
                let k: usize = value.parse().map_err(|_| {
                    FixtureError::Line(lineno + 1, format!("bad base size `{}`", value))
                })?;
                base = Some(k);
            } else {
                let k = base.ok_or(FixtureError::MissingBase)?;
                // names are arbitrary word tokens; only identifier-shaped
                // ones are reachable from term syntax
                if key.is_empty() || key.contains(char::is_whitespace) {
                    return Err(FixtureError::Line(
                        lineno + 1,
                        format!("`{}` is not a valid name", key),
                    ));
                }
                let f = PartialFunction::parse_text(value, k)?;
                generators.insert(key.to_string(), f);
            }
        }
        let base = base.ok_or(FixtureError::MissingBase)?;
        Ok(FunctionAlgebra {
            base,
            signature,
            generators,
        })
    }
}

pub(crate) fn apply1_concrete(op: Op, f: &PartialFunction) -> PartialFunction {
    match op {
        Op::Dom => f.dom(),
        Op::AntiDom => f.antidom(),
        Op::Range => f.range(),
        Op::Fixset => f.fixset(),
        Op::MaxIter => f.maxiter(),
        _ => unreachable!("unary op"),
    }
}

pub(crate) fn apply2_concrete(op: Op, f: &PartialFunction, g: &PartialFunction) -> PartialFunction {
    match op {
        Op::Compose => f.compose(g),
        Op::Meet => f.meet(g),
        Op::PrefUnion => f.prefunion(g),
        _ => unreachable!("binary op"),
    }
}
