//! Witness sets for pointwise term evaluation and the restriction property.
//!
//! `sigma(t, x)` collects the base points a term evaluation at `x` actually
//! touches: the point itself, images of variables along the composition
//! trail, and one preimage witness per range subterm (the least one, for
//! determinism). Its size is at most twice the term length. Relativizing an
//! algebra to any superset of `sigma(t, x)` preserves the value of `t` at
//! `x` — provided no range subterm has an antitone argument (one containing
//! antidomain or preferential union). Restriction can create new domain
//! points for antitone subterms, which in turn can create new range
//! preimages; [`range_args_antitone_free`] tests for that boundary and
//! [`check_restriction`] reports how a concrete instance behaves.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::fnalg::{eval_unchecked, evaluate, Assignment, EvalError, FunctionAlgebra};
use crate::sig::Op;
use crate::term::Term;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SigmaError {
    #[error("maximum iterate is not supported by the witness-set construction")]
    MaxIterUnsupported,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// `sigma(t, x)` together with the value of `t` at `x`.
pub fn sigma_with_value(
    t: &Term,
    x: usize,
    asg: &Assignment,
    base: usize,
) -> Result<(BTreeSet<usize>, Option<usize>), SigmaError> {
    if t.contains_op(Op::MaxIter) {
        return Err(SigmaError::MaxIterUnsupported);
    }
    // surface binding and base problems before the recursion
    evaluate(t, asg, base)?;
    if x >= base {
        return Err(SigmaError::Eval(EvalError::BaseMismatch {
            name: "witness point".to_string(),
            expected: base,
            found: x,
        }));
    }
    Ok(walk(t, x, asg, base))
}

pub fn sigma(
    t: &Term,
    x: usize,
    asg: &Assignment,
    base: usize,
) -> Result<BTreeSet<usize>, SigmaError> {
    sigma_with_value(t, x, asg, base).map(|(s, _)| s)
}

fn walk(t: &Term, x: usize, asg: &Assignment, base: usize) -> (BTreeSet<usize>, Option<usize>) {
    let just_x = || BTreeSet::from([x]);
    match t {
        Term::Zero => (just_x(), None),
        Term::Identity => (just_x(), Some(x)),
        Term::Var(name) => {
            let f = asg.get(name).expect("assignment checked");
            match f.get(x) {
                Some(y) => (BTreeSet::from([x, y]), Some(y)),
                None => (just_x(), None),
            }
        }
        Term::Unary(Op::Fixset, s) => {
            // fix(s) behaves like 1'.s: whether x is fixed depends on the
            // value of s at x, so the subterm's witnesses are needed
            let (set, v) = walk(s, x, asg, base);
            (set, if v == Some(x) { Some(x) } else { None })
        }
        Term::Unary(Op::Dom, s) => {
            let (set, v) = walk(s, x, asg, base);
            (set, v.map(|_| x))
        }
        Term::Unary(Op::AntiDom, s) => {
            let (set, v) = walk(s, x, asg, base);
            (set, if v.is_none() { Some(x) } else { None })
        }
        Term::Unary(Op::Range, s) => {
            // least y with s(y) = x, if any
            let f = eval_unchecked(s, asg, base);
            let witness = (0..base).find(|&y| f.get(y) == Some(x));
            match witness {
                Some(y) => {
                    let (set, v) = walk(s, y, asg, base);
                    debug_assert_eq!(v, Some(x));
                    (set, Some(x))
                }
                None => (just_x(), None),
            }
        }
        Term::Unary(op, _) => unreachable!("unsupported unary {op:?}"),
        Term::Binary(Op::Compose, l, r) => {
            let (mut set, lv) = walk(l, x, asg, base);
            match lv {
                Some(z) => {
                    let (rset, rv) = walk(r, z, asg, base);
                    set.extend(rset);
                    (set, rv)
                }
                None => (set, None),
            }
        }
        Term::Binary(Op::Meet, l, r) => {
            let (mut set, lv) = walk(l, x, asg, base);
            let (rset, rv) = walk(r, x, asg, base);
            set.extend(rset);
            (set, if lv.is_some() && lv == rv { lv } else { None })
        }
        Term::Binary(Op::PrefUnion, l, r) => {
            let (mut set, lv) = walk(l, x, asg, base);
            let (rset, rv) = walk(r, x, asg, base);
            set.extend(rset);
            (set, lv.or(rv))
        }
        Term::Binary(op, ..) => unreachable!("unsupported binary {op:?}"),
    }
}

/// True when no range subterm contains antidomain or preferential union.
/// For such terms the value of every subterm in a relativized algebra is a
/// sub-graph of its value in the full one, which is what makes the witness
/// set sufficient for restriction.
pub fn range_args_antitone_free(t: &Term) -> bool {
    fn antitone_free(t: &Term) -> bool {
        match t {
            Term::Var(_) | Term::Zero | Term::Identity => true,
            Term::Unary(Op::AntiDom, _) => false,
            Term::Unary(_, s) => antitone_free(s),
            Term::Binary(Op::PrefUnion, ..) => false,
            Term::Binary(_, l, r) => antitone_free(l) && antitone_free(r),
        }
    }
    match t {
        Term::Var(_) | Term::Zero | Term::Identity => true,
        Term::Unary(Op::Range, s) => antitone_free(s) && range_args_antitone_free(s),
        Term::Unary(_, s) => range_args_antitone_free(s),
        Term::Binary(_, l, r) => range_args_antitone_free(l) && range_args_antitone_free(r),
    }
}

/// How the value of `t` at `x` compares against its value in the algebra
/// relativized to `keep`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictionOutcome {
    Agrees,
    Disagrees {
        original: Option<usize>,
        /// Value in the relativized algebra, translated back to original
        /// point indices.
        restricted: Option<usize>,
    },
}

/// Evaluate `t` at `x` both in the full algebra and in the algebra
/// relativized to `keep`, and compare. Intended to be called with
/// `keep ⊇ sigma(t, x)`; callers may drop that precondition to demonstrate
/// that it is necessary.
pub fn check_restriction(
    t: &Term,
    x: usize,
    asg: &Assignment,
    base: usize,
    keep: &BTreeSet<usize>,
) -> Result<RestrictionOutcome, SigmaError> {
    let original = evaluate(t, asg, base)?.get(x);
    let keep_vec: Vec<usize> = keep.iter().copied().filter(|&p| p < base).collect();
    let gens: Vec<(String, _)> = asg
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    let alg = FunctionAlgebra::new(base, crate::sig::Signature::full(), gens)
        .map_err(SigmaError::Eval)?;
    let (restricted_alg, old_to_new) = alg.restrict(&keep_vec);
    let restricted_value = match old_to_new.get(x).copied().flatten() {
        None => None, // x itself was dropped; the restricted term is undefined at it
        Some(nx) => {
            let rasg: Assignment = restricted_alg
                .generators()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            eval_unchecked(t, &rasg, restricted_alg.base()).get(nx)
        }
    };
    let restricted = restricted_value.map(|ny| keep_vec[ny]);
    if original == restricted {
        Ok(RestrictionOutcome::Agrees)
    } else {
        Ok(RestrictionOutcome::Disagrees {
            original,
            restricted,
        })
    }
}
