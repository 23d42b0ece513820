//! Order-theoretic structure of a finite abstract algebra: domain elements,
//! the natural order, the boolean algebra they form under antidomain, its
//! atoms, and the subalgebra of elements with atomic domain.

use thiserror::Error;

use crate::laws::domain_element_indices;
use crate::sig::{Op, Signature};
use crate::table::{AbsEvalError, FiniteAlgebra, TableError};

/// The natural order `x <= y iff x = d(x);y`, as a boolean matrix.
#[derive(Clone, Debug)]
pub struct OrderMatrix {
    n: usize,
    le: Vec<bool>,
}

impl OrderMatrix {
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x * self.n + y]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.le(x, x))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| x == y || !(self.le(x, y) && self.le(y, x))))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n)
                .all(|y| (0..self.n).all(|z| !(self.le(x, y) && self.le(y, z)) || self.le(x, z)))
        })
    }
}

pub fn natural_order(a: &FiniteAlgebra) -> Result<OrderMatrix, AbsEvalError> {
    let n = a.len();
    let mut le = vec![false; n * n];
    for x in 0..n {
        let dx = a.dom_of(x)?;
        for y in 0..n {
            le[x * n + y] = a.compose(dx, y) == x;
        }
    }
    Ok(OrderMatrix { n, le })
}

/// The boolean algebra carried by the domain elements when the antidomain
/// axioms hold: `;` is meet, `a` is complement, `a(a(x);a(y))` is join,
/// `a(e);e` is bottom and its complement is top.
#[derive(Clone, Debug)]
pub struct BooleanStructure {
    /// Indices (into the ambient algebra) of the domain elements.
    pub elements: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
    pub atoms: Vec<usize>,
}

impl BooleanStructure {
    pub fn is_degenerate(&self) -> bool {
        self.bottom == self.top
    }
}

/// A failed boolean law, with the offending domain elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFailure {
    pub law: &'static str,
    pub witness: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Eval(#[from] AbsEvalError),
    #[error("the boolean structure of the domain elements fails: {} at {:?}", .0.law, .0.witness)]
    NotBoolean(BooleanFailure),
    #[error(
        "subalgebra of atomic-domain elements is not closed: {op} applied to {args:?} leaves it"
    )]
    NotClosed { op: Op, args: Vec<usize> },
    #[error("building the atomic-domain subalgebra failed: {0}")]
    Core(TableError),
}

/// Verify that `(D(S), ;, a, 0, 1')` is a boolean algebra and return its
/// structure, or the first violated law.
pub fn boolean_structure(
    a: &FiniteAlgebra,
) -> Result<Result<BooleanStructure, BooleanFailure>, AbsEvalError> {
    if !a.has_table(Op::AntiDom) {
        return Err(AbsEvalError::NoTable(Op::AntiDom));
    }
    let dom = domain_element_indices(a)?;
    let anti = |x: usize| a.apply1(Op::AntiDom, x).expect("antidomain table present");
    let meet = |x: usize, y: usize| a.compose(x, y);
    let join = |x: usize, y: usize| anti(meet(anti(x), anti(y)));
    let bottom = a.compose(anti(0), 0);
    let top = anti(bottom);
    let fail = |law: &'static str, witness: Vec<usize>| Ok(Err(BooleanFailure { law, witness }));

    let in_dom = |x: usize| dom.contains(&x);
    if !in_dom(bottom) {
        return fail("bottom is a domain element", vec![bottom]);
    }
    if !in_dom(top) {
        return fail("top is a domain element", vec![top]);
    }
    for &x in &dom {
        if !in_dom(anti(x)) {
            return fail("closure under complement", vec![x]);
        }
        for &y in &dom {
            if !in_dom(meet(x, y)) {
                return fail("closure under meet", vec![x, y]);
            }
        }
    }
    for &x in &dom {
        if meet(x, x) != x {
            return fail("meet idempotent", vec![x]);
        }
        if meet(x, bottom) != bottom || meet(bottom, x) != bottom {
            return fail("bottom absorbs meet", vec![x]);
        }
        if meet(x, top) != x || meet(top, x) != x {
            return fail("top is neutral for meet", vec![x]);
        }
        if meet(x, anti(x)) != bottom {
            return fail("complement meets to bottom", vec![x]);
        }
        if join(x, anti(x)) != top {
            return fail("complement joins to top", vec![x]);
        }
        if anti(anti(x)) != x {
            return fail("complement is involutive", vec![x]);
        }
        for &y in &dom {
            if meet(x, y) != meet(y, x) {
                return fail("meet commutes", vec![x, y]);
            }
            if join(x, y) != join(y, x) {
                return fail("join commutes", vec![x, y]);
            }
            if meet(x, join(x, y)) != x {
                return fail("meet absorbs join", vec![x, y]);
            }
            if join(x, meet(x, y)) != x {
                return fail("join absorbs meet", vec![x, y]);
            }
            for &z in &dom {
                if meet(x, meet(y, z)) != meet(meet(x, y), z) {
                    return fail("meet associates", vec![x, y, z]);
                }
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)) {
                    return fail("meet distributes over join", vec![x, y, z]);
                }
            }
        }
    }
    // atoms: minimal nonzero in the boolean order alpha <= beta iff alpha;beta = alpha
    let le = |x: usize, y: usize| meet(x, y) == x;
    let atoms: Vec<usize> = dom
        .iter()
        .copied()
        .filter(|&x| x != bottom && dom.iter().all(|&y| !le(y, x) || y == bottom || y == x))
        .collect();
    Ok(Ok(BooleanStructure {
        elements: dom,
        bottom,
        top,
        atoms,
    }))
}

/// The subalgebra of elements whose domain is an atom of `D(S)`, together
/// with zeroland. Inherits every operation of the ambient signature except
/// antidomain, preferential union, maximum iterate and the identity constant
/// (which has a non-atomic domain unless the boolean algebra has one atom);
/// closure under the inherited operations is asserted.
#[derive(Clone, Debug)]
pub struct AtomCore {
    /// Core index → ambient element index. Entry 0 is the zero element.
    pub element_map: Vec<usize>,
    pub algebra: FiniteAlgebra,
}

impl AtomCore {
    pub fn ambient_of(&self, core_idx: usize) -> usize {
        self.element_map[core_idx]
    }

    pub fn core_of(&self, ambient_idx: usize) -> Option<usize> {
        self.element_map.iter().position(|&x| x == ambient_idx)
    }
}

pub fn atom_core(a: &FiniteAlgebra) -> Result<AtomCore, StructureError> {
    let bs = boolean_structure(a)?.map_err(StructureError::NotBoolean)?;
    let zero = bs.bottom;
    let mut members: Vec<usize> = vec![zero];
    for s in 0..a.len() {
        if s == zero {
            continue;
        }
        let d = a.dom_of(s)?;
        if bs.atoms.contains(&d) {
            members.push(s);
        }
    }
    let inherited: Vec<Op> = [Op::Compose, Op::Meet, Op::Dom, Op::Range, Op::Fixset]
        .into_iter()
        .filter(|&op| op == Op::Dom || a.signature().contains(op))
        .collect();
    // identity stays only when it has an atomic domain
    let keep_identity = a
        .identity_element()
        .map(|e| members.contains(&e) && a.signature().contains(Op::Identity))
        .unwrap_or(false);

    let core_of = |x: usize| members.iter().position(|&m| m == x);
    let mut sig = Signature::new([Op::Compose]).unwrap().with(Op::Zero);
    for &op in &inherited {
        sig = sig.with(op);
    }
    if keep_identity {
        sig = sig.with(Op::Identity);
    }
    let names: Vec<String> = members.iter().map(|&m| a.name(m).to_string()).collect();
    let mut b = FiniteAlgebra::builder(names, sig);
    for &op in &inherited {
        match op.arity() {
            1 => {
                let mut t = Vec::with_capacity(members.len());
                for &x in &members {
                    let v = if op == Op::Dom {
                        a.dom_of(x)?
                    } else {
                        a.apply1(op, x)?
                    };
                    let cv = core_of(v).ok_or(StructureError::NotClosed { op, args: vec![x] })?;
                    t.push(cv);
                }
                b.unary_table(op, t);
            }
            2 => {
                let mut t = Vec::with_capacity(members.len() * members.len());
                for &x in &members {
                    for &y in &members {
                        let v = a.apply2(op, x, y)?;
                        let cv = core_of(v).ok_or(StructureError::NotClosed {
                            op,
                            args: vec![x, y],
                        })?;
                        t.push(cv);
                    }
                }
                b.binary_table(op, t);
            }
            _ => {}
        }
    }
    b.zero(0);
    if keep_identity {
        let e = a.identity_element().unwrap();
        b.identity(core_of(e).unwrap());
    }
    let algebra = b.finish().map_err(StructureError::Core)?;
    Ok(AtomCore {
        element_map: members,
        algebra,
    })
}
