//! Permissible sequences, their normal forms and views, and the finite
//! quotient representation built from them.
//!
//! For an algebra with composition, domain and range, a sequence
//! `(a0, b0, a1, …, bn, a(n+1))` of nonzero elements is *permissible* when
//! `r(ai) = r(bi)` and `d(bi) = d(a(i+1))` for all `i`. The last entry is
//! the sequence's *address*. A sequence whose last block satisfies
//! `bn;y = a(n+1)` *reduces* by replacing the last three entries with
//! `an;y`; iterating until no reduction applies yields the *normal form*,
//! which is independent of the witness `y` chosen whenever the right
//! cancellation law `x;y = x;z ⇒ r(x);y = r(x);z` holds.
//!
//! An element `x` acts on a reduced sequence with address `t` when
//! `t;d(x) = t`, by replacing the address with `t;x` and renormalizing. The
//! *view* of a sequence records, for every element that acts on it, the
//! address of the result. Sequences with equal views are interchangeable:
//! the action descends to view classes, and the classes form a finite base
//! on which the algebra acts faithfully by partial functions. Classes are
//! discovered by closing length-1 seeds under the action and under
//! extension, which appends `(u;r(t), d(u;r(t)))` for each element `u`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::pfn::PartialFunction;
use crate::represent::{ClassInfo, RepresentError, Representation};
use crate::sig::{Op, Signature};
use crate::table::{AbsEvalError, FiniteAlgebra};

/// A view: for every nonzero element acting on a sequence, the address of
/// the image sequence.
pub type View = BTreeMap<usize, usize>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheinError {
    #[error(transparent)]
    Eval(#[from] AbsEvalError),
    #[error("sequence {0:?} is not permissible")]
    NotPermissible(Vec<usize>),
    #[error(
        "reduction of {seq:?} is ambiguous: witnesses {y1} and {y2} shorten it differently; \
         the right cancellation law fails"
    )]
    AmbiguousReduction {
        seq: Vec<usize>,
        y1: usize,
        y2: usize,
    },
    #[error("action produced a zero address on {seq:?} with {x}; the domain laws fail")]
    ZeroProduct { seq: Vec<usize>, x: usize },
    #[error(
        "extension of {seq:?} by {u} reduces with witness {y} outside the source view; \
         the construction is inconsistent"
    )]
    ExtensionWitnessEscapes { seq: Vec<usize>, u: usize, y: usize },
}

/// Context for sequence arithmetic over one algebra.
pub struct Sequences<'a> {
    a: &'a FiniteAlgebra,
    zero: Option<usize>,
}

impl<'a> Sequences<'a> {
    pub fn new(a: &'a FiniteAlgebra) -> Sequences<'a> {
        Sequences {
            a,
            zero: a.zero_element(),
        }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.a
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn nonzero_elements(&self) -> Vec<usize> {
        (0..self.a.len())
            .filter(|&e| Some(e) != self.zero)
            .collect()
    }

    fn is_zero(&self, e: usize) -> bool {
        Some(e) == self.zero
    }

    fn dom(&self, e: usize) -> Result<usize, ScheinError> {
        Ok(self.a.dom_of(e)?)
    }

    fn ran(&self, e: usize) -> Result<usize, ScheinError> {
        Ok(self.a.apply1(Op::Range, e)?)
    }

    pub fn is_permissible(&self, seq: &[usize]) -> Result<bool, ScheinError> {
        if seq.is_empty() || seq.len().is_multiple_of(2) {
            return Ok(false);
        }
        if seq.iter().any(|&e| e >= self.a.len() || self.is_zero(e)) {
            return Ok(false);
        }
        for i in (0..seq.len() - 1).step_by(2) {
            // pairs (a_i, b_i) share a range; (b_i, a_{i+1}) share a domain
            if self.ran(seq[i])? != self.ran(seq[i + 1])? {
                return Ok(false);
            }
            if self.dom(seq[i + 1])? != self.dom(seq[i + 2])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn address(seq: &[usize]) -> usize {
        *seq.last().expect("sequences are nonempty")
    }

    /// Apply tail reductions until none fires. When several witnesses `y`
    /// satisfy `b;y = target` they must shorten the sequence identically;
    /// otherwise the input algebra violates right cancellation and the
    /// construction stops with evidence.
    pub fn normal_form(&self, seq: &[usize]) -> Result<Vec<usize>, ScheinError> {
        if !self.is_permissible(seq)? {
            return Err(ScheinError::NotPermissible(seq.to_vec()));
        }
        let mut s = seq.to_vec();
        while s.len() >= 3 {
            let target = s[s.len() - 1];
            let b = s[s.len() - 2];
            let head = s[s.len() - 3];
            let mut witnesses = (0..self.a.len()).filter(|&y| self.a.compose(b, y) == target);
            let Some(y0) = witnesses.next() else { break };
            let shortened = self.a.compose(head, y0);
            for y in witnesses {
                if self.a.compose(head, y) != shortened {
                    return Err(ScheinError::AmbiguousReduction {
                        seq: s,
                        y1: y0,
                        y2: y,
                    });
                }
            }
            s.truncate(s.len() - 3);
            s.push(shortened);
        }
        // reduction preserves permissibility when the axioms hold; a
        // violation here is evidence against the input
        if !self.is_permissible(&s)? {
            return Err(ScheinError::NotPermissible(s));
        }
        Ok(s)
    }

    /// The action of `x` on a reduced sequence: defined when the address `t`
    /// satisfies `t;d(x) = t`, in which case the address becomes `t;x` and
    /// the result is renormalized.
    pub fn theta_forward(
        &self,
        seq: &[usize],
        x: usize,
    ) -> Result<Option<Vec<usize>>, ScheinError> {
        let t = Sequences::address(seq);
        let dx = self.dom(x)?;
        if self.a.compose(t, dx) != t {
            return Ok(None);
        }
        let tx = self.a.compose(t, x);
        if self.is_zero(tx) {
            return Err(ScheinError::ZeroProduct {
                seq: seq.to_vec(),
                x,
            });
        }
        let mut next = seq.to_vec();
        *next.last_mut().unwrap() = tx;
        self.normal_form(&next).map(Some)
    }

    /// Append `(u;r(t), d(u;r(t)))` to a reduced sequence with address `t`,
    /// when the candidate is permissible; `skip` (None) otherwise. A
    /// reduction firing immediately on the appended tail must use a witness
    /// the source's view is defined at; a violation is reported as
    /// construction inconsistency.
    pub fn extend(&self, seq: &[usize], u: usize) -> Result<Option<Vec<usize>>, ScheinError> {
        let t = Sequences::address(seq);
        let rt = self.ran(t)?;
        let c = self.a.compose(u, rt);
        if self.is_zero(c) {
            return Ok(None);
        }
        let mut candidate = seq.to_vec();
        candidate.push(c);
        candidate.push(self.dom(c)?);
        if !self.is_permissible(&candidate)? {
            return Ok(None);
        }
        let target = self.dom(c)?;
        for y in 0..self.a.len() {
            if self.a.compose(c, y) == target {
                // the immediate reduction witness must act on the source
                let dy = self.dom(y)?;
                if self.a.compose(t, dy) != t {
                    return Err(ScheinError::ExtensionWitnessEscapes {
                        seq: seq.to_vec(),
                        u,
                        y,
                    });
                }
            }
        }
        self.normal_form(&candidate).map(Some)
    }

    /// The view of a reduced sequence.
    pub fn view_of(&self, seq: &[usize]) -> Result<View, ScheinError> {
        let t = Sequences::address(seq);
        let mut view = View::new();
        for x in self.nonzero_elements() {
            let dx = self.dom(x)?;
            if self.a.compose(t, dx) == t {
                let image = self
                    .theta_forward(seq, x)?
                    .expect("domain condition checked");
                view.insert(x, Sequences::address(&image));
            }
        }
        Ok(view)
    }
}

/// Size bound on the class base: `(n-1)^n` with a zero element, `n^(n+1)`
/// without (saturating).
pub fn class_bound(n: usize, has_zero: bool) -> u128 {
    let (base, exp) = if has_zero {
        ((n.max(1) - 1) as u128, n as u32)
    } else {
        (n as u128, n as u32 + 1)
    };
    base.checked_pow(exp).unwrap_or(u128::MAX)
}

/// Build the quotient representation: seed a class per nonzero element's
/// length-1 sequence, close under the action and extension, then read the
/// action off on classes. Supports signatures within
/// `{;, ., d, r, fix, 0, 1'}` (meet rides along untrusted — the verifier
/// decides its fate); antidomain signatures go through the lift instead.
pub fn build_quotient_representation(
    a: &FiniteAlgebra,
    sig: Signature,
    class_cap: usize,
) -> Result<Representation, RepresentError> {
    if sig.contains(Op::AntiDom) {
        return Err(RepresentError::UnsupportedSignature(
            "antidomain signatures are handled by the atom lift".to_string(),
        ));
    }
    if !a.signature().has_domain_notion() {
        return Err(RepresentError::UnsupportedSignature(
            "the construction needs a domain operation".to_string(),
        ));
    }
    if !a.has_table(Op::Range) {
        return Err(RepresentError::UnsupportedSignature(
            "the construction needs a range operation".to_string(),
        ));
    }
    let seqs = Sequences::new(a);
    let bound = class_bound(a.len(), seqs.zero().is_some());
    let cap = if bound < class_cap as u128 {
        bound as usize
    } else {
        class_cap
    };

    let mut classes: Vec<ClassInfo> = Vec::new();
    let mut index: BTreeMap<View, usize> = BTreeMap::new();
    let register = |seq: Vec<usize>,
                    classes: &mut Vec<ClassInfo>,
                    index: &mut BTreeMap<View, usize>|
     -> Result<usize, RepresentError> {
        let view = seqs.view_of(&seq)?;
        if let Some(&id) = index.get(&view) {
            let class = &mut classes[id];
            if class.rep_seq != seq && class.alt_seq.is_none() {
                class.alt_seq = Some(seq);
            }
            return Ok(id);
        }
        let id = classes.len();
        index.insert(view.clone(), id);
        classes.push(ClassInfo {
            view,
            rep_seq: seq,
            alt_seq: None,
        });
        Ok(id)
    };

    let nonzero = seqs.nonzero_elements();
    let mut seed_classes = Vec::new();
    for &c in &nonzero {
        seed_classes.push(register(vec![c], &mut classes, &mut index)?);
    }
    // distinct length-1 sequences must land in distinct classes
    for i in 0..seed_classes.len() {
        for j in 0..i {
            if seed_classes[i] == seed_classes[j] {
                return Err(RepresentError::Inconsistency(format!(
                    "length-1 sequences ({}) and ({}) share a view",
                    a.name(nonzero[i]),
                    a.name(nonzero[j]),
                )));
            }
        }
    }

    let mut next = 0;
    while next < classes.len() {
        if classes.len() > cap {
            return Err(RepresentError::ClassExplosion(cap));
        }
        let rep = classes[next].rep_seq.clone();
        for &x in &nonzero {
            if let Some(image) = seqs.theta_forward(&rep, x)? {
                register(image, &mut classes, &mut index)?;
            }
        }
        for &u in &nonzero {
            if let Some(longer) = seqs.extend(&rep, u)? {
                register(longer, &mut classes, &mut index)?;
            }
        }
        next += 1;
    }

    let nclasses = classes.len();
    let mut map = Vec::with_capacity(a.len());
    for s in 0..a.len() {
        let mut img = vec![None; nclasses];
        // the zero element maps to the empty function unconditionally
        if Some(s) != seqs.zero() {
            for (ci, class) in classes.iter().enumerate() {
                let t = class.address();
                let ds = a.dom_of(s)?;
                if a.compose(t, ds) == t {
                    let image = seqs
                        .theta_forward(&class.rep_seq, s)?
                        .expect("domain condition checked");
                    let view = seqs.view_of(&image)?;
                    let target = *index.get(&view).ok_or_else(|| {
                        RepresentError::Inconsistency(format!(
                            "the class of {:?} acted on by `{}` left the closure",
                            class.rep_seq,
                            a.name(s)
                        ))
                    })?;
                    img[ci] = Some(target);
                }
            }
        }
        map.push(PartialFunction::from_images(img).expect("classes are in range"));
    }
    Ok(Representation {
        classes,
        map,
        signature: sig,
    })
}

/// Re-check that equal-view witness pairs discovered during closure act and
/// extend to equal views. The construction relies on this; the audit makes
/// it observable.
pub fn audit_well_definedness(
    rep: &Representation,
    a: &FiniteAlgebra,
) -> Result<(), RepresentError> {
    let seqs = Sequences::new(a);
    for class in &rep.classes {
        let Some(alt) = &class.alt_seq else { continue };
        audit_pair(&seqs, &class.rep_seq, alt)?;
    }
    Ok(())
}

/// Check one pair of equal-view sequences under every action and extension.
pub fn audit_pair(
    seqs: &Sequences<'_>,
    left: &[usize],
    right: &[usize],
) -> Result<(), RepresentError> {
    let a = seqs.algebra();
    if seqs.view_of(left)? != seqs.view_of(right)? {
        return Err(RepresentError::Inconsistency(format!(
            "{left:?} and {right:?} do not share a view"
        )));
    }
    for x in seqs.nonzero_elements() {
        let li = seqs.theta_forward(left, x)?;
        let ri = seqs.theta_forward(right, x)?;
        match (li, ri) {
            (None, None) => {}
            (Some(ls), Some(rs)) => {
                if seqs.view_of(&ls)? != seqs.view_of(&rs)? {
                    return Err(RepresentError::Inconsistency(format!(
                        "action by `{}` separates equal views {left:?} / {right:?}",
                        a.name(x)
                    )));
                }
            }
            _ => {
                return Err(RepresentError::Inconsistency(format!(
                    "action by `{}` is defined on only one of {left:?} / {right:?}",
                    a.name(x)
                )))
            }
        }
        let le = seqs.extend(left, x)?;
        let re = seqs.extend(right, x)?;
        match (le, re) {
            (None, None) => {}
            (Some(ls), Some(rs)) => {
                if seqs.view_of(&ls)? != seqs.view_of(&rs)? {
                    return Err(RepresentError::Inconsistency(format!(
                        "extension by `{}` separates equal views {left:?} / {right:?}",
                        a.name(x)
                    )));
                }
            }
            _ => {
                return Err(RepresentError::Inconsistency(format!(
                    "extension by `{}` is defined on only one of {left:?} / {right:?}",
                    a.name(x)
                )))
            }
        }
    }
    Ok(())
}
