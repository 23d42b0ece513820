//! Lifting a quotient representation to signatures with antidomain.
//!
//! When the domain elements form an atomic boolean algebra, the elements
//! whose domain is an atom form a subalgebra (plus zero) closed under
//! everything except antidomain, union and iterate. That subalgebra gets a
//! quotient representation; each ambient element `s` is then represented as
//! the union of the representations of `δ;s` over the atoms `δ`. Distinct
//! atoms contribute domain-disjoint pieces, so the union is a function, and
//! antidomain comes out right because the class base is exhausted by the
//! atom actions. Preferential union and maximum iterate (finite algebras)
//! ride along on any faithful representation of the reduct, so they need no
//! construction of their own; the verifier still checks them.

use crate::pfn::PartialFunction;
use crate::represent::{RepresentError, Representation};
use crate::schein::build_quotient_representation;
use crate::sig::{Op, Signature};
use crate::structure::{atom_core, boolean_structure, AtomCore};
use crate::table::FiniteAlgebra;

/// The representation of the atomic-domain subalgebra together with the
/// lifted representation of the full algebra over the same base.
#[derive(Debug)]
pub struct AtomLift {
    pub core: AtomCore,
    pub core_rep: Representation,
    pub rep: Representation,
}

/// `sig` is the signature the lifted representation claims; it must contain
/// antidomain and range, must not contain meet, and every symbol must be
/// available on the algebra.
pub fn lift_antidomain(
    a: &FiniteAlgebra,
    sig: Signature,
    class_cap: usize,
) -> Result<AtomLift, RepresentError> {
    if !sig.contains(Op::AntiDom) {
        return Err(RepresentError::UnsupportedSignature(
            "the lift applies to signatures with antidomain".to_string(),
        ));
    }
    if !sig.contains(Op::Range) {
        return Err(RepresentError::UnsupportedSignature(
            "the construction needs a range operation".to_string(),
        ));
    }
    if sig.contains(Op::Meet) {
        return Err(RepresentError::UnsupportedSignature(
            "no finite construction is attempted with meet in the signature".to_string(),
        ));
    }
    let bs = boolean_structure(a)?.map_err(|f| {
        RepresentError::Inconsistency(format!("domain elements not boolean: {:?}", f))
    })?;
    let core = atom_core(a)?;
    let core_sig = core.algebra.signature();
    let core_rep = build_quotient_representation(&core.algebra, core_sig, class_cap)?;
    let base = core_rep.base();

    let mut map = Vec::with_capacity(a.len());
    for s in 0..a.len() {
        let mut img: Vec<Option<usize>> = vec![None; base];
        for &delta in &bs.atoms {
            let piece_elem = a.compose(delta, s);
            if Some(piece_elem) == a.zero_element() {
                continue;
            }
            let core_idx = core.core_of(piece_elem).ok_or_else(|| {
                RepresentError::Inconsistency(format!(
                    "`{}` composed with atom `{}` has a non-atomic domain",
                    a.name(s),
                    a.name(delta)
                ))
            })?;
            // distinct atoms must contribute domain-disjoint pieces
            for (x, y) in core_rep.map[core_idx].pairs() {
                if img[x].is_some() {
                    return Err(RepresentError::UnionNotFunction {
                        element: a.name(s).to_string(),
                        point: x,
                    });
                }
                img[x] = Some(y);
            }
        }
        map.push(PartialFunction::from_images(img).expect("points in base"));
    }
    let rep = Representation {
        classes: core_rep.classes.clone(),
        map,
        signature: sig,
    };
    Ok(AtomLift {
        core,
        core_rep,
        rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::represent::verify_representation;
    use crate::testutil::all_maps_on_two_points;

    #[test]
    fn lift_represents_all_maps_on_two_points() {
        let (alg, _) = all_maps_on_two_points("; a r 0 1'");
        let lift = lift_antidomain(&alg, alg.signature(), 100_000).unwrap();
        // the atomic-domain core: zero plus the four singleton-domain maps
        assert_eq!(lift.core.element_map.len(), 5);
        let defects = verify_representation(&lift.rep, &alg, alg.signature(), 1).unwrap();
        assert!(defects.is_empty(), "{:?}", defects);
        assert!(lift.rep.base() >= 1);
    }

    #[test]
    fn lift_covers_union_and_iterate() {
        let (alg, _) = all_maps_on_two_points("; a r + ^ 0 1'");
        let lift = lift_antidomain(&alg, alg.signature(), 100_000).unwrap();
        let defects = verify_representation(&lift.rep, &alg, alg.signature(), 1).unwrap();
        assert!(defects.is_empty(), "{:?}", defects);
    }

    #[test]
    fn single_atom_core_is_the_whole_algebra() {
        // the two partial maps on one point: the empty map and the identity
        let (alg, elems) = {
            use crate::fnalg::FunctionAlgebra;
            use crate::sig::Signature;
            let gens = vec![
                ("z".to_string(), PartialFunction::empty(1)),
                ("e".to_string(), PartialFunction::identity(1)),
            ];
            let alg =
                FunctionAlgebra::new(1, Signature::parse("; a r 0 1'").unwrap(), gens).unwrap();
            alg.to_finite_algebra(8).unwrap()
        };
        assert_eq!(elems.len(), 2);
        let lift = lift_antidomain(&alg, alg.signature(), 1000).unwrap();
        assert_eq!(lift.core.element_map.len(), 2);
        let defects = verify_representation(&lift.rep, &alg, alg.signature(), 1).unwrap();
        assert!(defects.is_empty(), "{:?}", defects);
    }

    #[test]
    fn meet_is_refused() {
        let (alg, _) = all_maps_on_two_points("; . a r 0 1'");
        assert!(matches!(
            lift_antidomain(&alg, alg.signature(), 1000),
            Err(RepresentError::UnsupportedSignature(_))
        ));
    }
}
