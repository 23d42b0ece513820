//! Explicit functional representations of finite abstract algebras, and the
//! verifier that checks them element by element.
//!
//! A representation maps every algebra element to a partial function on a
//! base of equivalence classes of permissible sequences (see
//! [`crate::schein`]). Nothing is trusted: [`verify_representation`] checks
//! injectivity and, symbol by symbol, that operation tables commute with the
//! concrete operations on the image functions.

use std::fmt::Write as _;

use thiserror::Error;

use crate::fnalg::{apply1_concrete, apply2_concrete, FunctionAlgebra};
use crate::pfn::PartialFunction;
use crate::schein::ScheinError;
use crate::sig::{Op, Signature};
use crate::structure::StructureError;
use crate::table::{AbsEvalError, FiniteAlgebra};

/// One equivalence class of reduced permissible sequences: its identifying
/// view, the first sequence discovered with that view, and optionally a
/// second, distinct witness sequence for the well-definedness audits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    /// The view: nonzero element index → address of the forward image.
    pub view: std::collections::BTreeMap<usize, usize>,
    pub rep_seq: Vec<usize>,
    pub alt_seq: Option<Vec<usize>>,
}

impl ClassInfo {
    pub fn address(&self) -> usize {
        *self.rep_seq.last().expect("sequences are nonempty")
    }
}

/// A candidate functional representation over a base of sequence classes.
#[derive(Clone, Debug)]
pub struct Representation {
    pub classes: Vec<ClassInfo>,
    /// Element index → partial function on the class base.
    pub map: Vec<PartialFunction>,
    /// The signature this representation is claimed for.
    pub signature: Signature,
}

#[derive(Debug, Error)]
pub enum RepresentError {
    #[error(transparent)]
    Eval(#[from] AbsEvalError),
    #[error(transparent)]
    Schein(#[from] ScheinError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("signature not supported by this construction: {0}")]
    UnsupportedSignature(String),
    #[error("class count exceeded the cap of {0}; evidence that the input is not representable")]
    ClassExplosion(usize),
    #[error("construction inconsistency ({0}); evidence that the input is not representable")]
    Inconsistency(String),
    #[error(
        "antidomain lift failed: the pieces for element `{element}` overlap at class {point}; \
         evidence that the input is not representable"
    )]
    UnionNotFunction { element: String, point: usize },
}

impl Representation {
    pub fn base(&self) -> usize {
        self.classes.len()
    }

    /// Human-readable report: one line per class, one per element.
    pub fn report(&self, a: &FiniteAlgebra) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "base: {} classes", self.base());
        for (i, class) in self.classes.iter().enumerate() {
            let view: Vec<String> = class
                .view
                .iter()
                .map(|(k, v)| format!("{}->{}", a.name(*k), a.name(*v)))
                .collect();
            let seq: Vec<&str> = class.rep_seq.iter().map(|&e| a.name(e)).collect();
            let _ = writeln!(
                s,
                "class {}: view {{{}}} rep ({})",
                i,
                view.join(", "),
                seq.join(",")
            );
        }
        for (e, f) in self.map.iter().enumerate() {
            let _ = writeln!(s, "{}: {}", a.name(e), f.to_text());
        }
        s
    }

    /// Machine-readable dump in the function-algebra fixture format, so the
    /// image can be reloaded and examined as a concrete algebra.
    pub fn to_fixture(&self, a: &FiniteAlgebra) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "base: {}", self.base());
        for (e, f) in self.map.iter().enumerate() {
            let _ = writeln!(s, "{}: {}", a.name(e), f.to_text());
        }
        s
    }

    /// The image as a concrete function algebra (element names preserved).
    pub fn image_algebra(&self, a: &FiniteAlgebra) -> FunctionAlgebra {
        let gens = self
            .map
            .iter()
            .enumerate()
            .map(|(e, f)| (a.name(e).to_string(), f.clone()));
        FunctionAlgebra::new(self.base(), self.signature, gens)
            .expect("representation functions share the class base")
    }
}

/// A reported discrepancy between the abstract tables and the concrete
/// operations applied to the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub symbol: Option<Op>,
    /// Element indices the operation was applied to (empty for injectivity).
    pub args: Vec<usize>,
    /// A point of the class base where the two sides differ.
    pub point: Option<usize>,
    pub description: String,
}

/// Check injectivity and the homomorphism property for every symbol of
/// `check_sig`, reporting every defect. An empty result is a verified
/// faithful representation for that signature.
pub fn verify_representation(
    rep: &Representation,
    a: &FiniteAlgebra,
    check_sig: Signature,
    jobs: usize,
) -> Result<Vec<Defect>, AbsEvalError> {
    let n = a.len();
    assert_eq!(rep.map.len(), n, "one function per element");
    let mut defects = Vec::new();

    for i in 0..n {
        for j in (i + 1)..n {
            if rep.map[i] == rep.map[j] {
                defects.push(Defect {
                    symbol: None,
                    args: vec![i, j],
                    point: None,
                    description: format!(
                        "not injective: `{}` and `{}` map to the same function",
                        a.name(i),
                        a.name(j)
                    ),
                });
            }
        }
    }

    let first_diff = |x: &PartialFunction, y: &PartialFunction| -> Option<usize> {
        (0..x.base()).find(|&p| x.get(p) != y.get(p))
    };

    for op in check_sig.iter() {
        match op.arity() {
            0 => {
                let idx = match op {
                    Op::Zero => a.zero_element(),
                    Op::Identity => a.identity_element(),
                    _ => unreachable!(),
                }
                .ok_or(AbsEvalError::NoTable(op))?;
                let expected = match op {
                    Op::Zero => PartialFunction::empty(rep.base()),
                    _ => PartialFunction::identity(rep.base()),
                };
                if rep.map[idx] != expected {
                    defects.push(Defect {
                        symbol: Some(op),
                        args: vec![idx],
                        point: first_diff(&rep.map[idx], &expected),
                        description: format!(
                            "constant `{}` (element `{}`) is not represented canonically",
                            op,
                            a.name(idx)
                        ),
                    });
                }
            }
            1 => {
                for x in 0..n {
                    let table = a.apply1(op, x)?;
                    let concrete = apply1_concrete(op, &rep.map[x]);
                    if rep.map[table] != concrete {
                        defects.push(Defect {
                            symbol: Some(op),
                            args: vec![x],
                            point: first_diff(&rep.map[table], &concrete),
                            description: format!(
                                "{}({}) = {} in the table, but the concrete operation differs",
                                op,
                                a.name(x),
                                a.name(table)
                            ),
                        });
                    }
                }
            }
            2 => {
                let check_pair = |x: usize, y: usize| -> Result<Option<Defect>, AbsEvalError> {
                    let table = a.apply2(op, x, y)?;
                    let concrete = apply2_concrete(op, &rep.map[x], &rep.map[y]);
                    if rep.map[table] != concrete {
                        Ok(Some(Defect {
                            symbol: Some(op),
                            args: vec![x, y],
                            point: first_diff(&rep.map[table], &concrete),
                            description: format!(
                                "{} {} {} = {} in the table, but the concrete operation differs",
                                a.name(x),
                                op,
                                a.name(y),
                                a.name(table)
                            ),
                        }))
                    } else {
                        Ok(None)
                    }
                };
                if jobs <= 1 || n < 4 {
                    for x in 0..n {
                        for y in 0..n {
                            if let Some(d) = check_pair(x, y)? {
                                defects.push(d);
                            }
                        }
                    }
                } else {
                    // split rows across workers; results keep (x, y) order
                    let rows: Vec<Result<Vec<Defect>, AbsEvalError>> =
                        std::thread::scope(|scope| {
                            let check_pair = &check_pair;
                            let handles: Vec<_> = (0..n)
                                .map(|x| {
                                    scope.spawn(move || {
                                        let mut out = Vec::new();
                                        for y in 0..n {
                                            if let Some(d) = check_pair(x, y)? {
                                                out.push(d);
                                            }
                                        }
                                        Ok(out)
                                    })
                                })
                                .collect();
                            handles
                                .into_iter()
                                .map(|h| h.join().expect("worker"))
                                .collect()
                        });
                    for row in rows {
                        defects.extend(row?);
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(defects)
}
