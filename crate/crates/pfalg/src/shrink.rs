//! Shrinking a concrete range-free algebra to a small base.
//!
//! For a closed family of functions under a signature without range, pick
//! one disagreement point per pair of distinct elements, add every image of
//! those points under every element, and restrict to the collected set. The
//! map `s ↦ s ∩ (Y×Y)` is then injective by choice of disagreement points
//! and a homomorphism because `Y` is closed under images (compositions land
//! back inside). The outcome carries at most `|S|³` points and is verified
//! operation by operation before being returned.

use thiserror::Error;

use crate::fnalg::{apply1_concrete, apply2_concrete, FunctionAlgebra};
use crate::pfn::PartialFunction;
use crate::sig::Op;
use crate::table::{FiniteAlgebra, TableError};

#[derive(Debug, Error)]
pub enum ShrinkError {
    #[error("the signature contains range; the shrink applies to range-free signatures")]
    RangePresent,
    #[error(transparent)]
    Closure(#[from] TableError),
    #[error("collected point set is not image-closed at point {0}; this is a bug")]
    ClosureUnstable(usize),
    #[error(
        "kept {kept} points, above the cube bound {bound} for {elements} elements; this is a bug"
    )]
    CubeBoundExceeded {
        kept: usize,
        bound: usize,
        elements: usize,
    },
    #[error("restriction is not faithful: {0}; this is a bug")]
    NotFaithful(String),
}

#[derive(Debug)]
pub struct ShrinkOutcome {
    /// Distinct functions of the closed algebra, in discovery order.
    pub elements: Vec<PartialFunction>,
    /// The abstract tables of the closed algebra (names `f0, f1, …`).
    pub table: FiniteAlgebra,
    /// Points kept, in increasing order of the original base.
    pub kept_points: Vec<usize>,
    /// The restricted elements over the reindexed base.
    pub restricted: Vec<PartialFunction>,
}

impl ShrinkOutcome {
    pub fn restricted_algebra(&self) -> FunctionAlgebra {
        let sig = self.table.signature();
        let gens = self
            .restricted
            .iter()
            .enumerate()
            .map(|(i, f)| (format!("f{}", i), f.clone()));
        FunctionAlgebra::new(self.kept_points.len(), sig, gens)
            .expect("restricted functions share the shrunken base")
    }
}

/// Close the generators, collect disagreement points and their images, and
/// restrict. `max_elements` caps the closure size.
pub fn shrink_range_free(
    alg: &FunctionAlgebra,
    max_elements: usize,
) -> Result<ShrinkOutcome, ShrinkError> {
    if alg.signature().contains(Op::Range) {
        return Err(ShrinkError::RangePresent);
    }
    let (table, elems) = alg.to_finite_algebra(max_elements)?;
    let n = elems.len();
    let base = alg.base();

    let mut keep = vec![false; base];
    for i in 0..n {
        for j in (i + 1)..n {
            let x = (0..base)
                .find(|&x| elems[i].get(x) != elems[j].get(x))
                .expect("distinct functions disagree somewhere");
            keep[x] = true;
            for u in &elems {
                if let Some(y) = u.get(x) {
                    keep[y] = true;
                }
            }
        }
    }
    let kept_points: Vec<usize> = (0..base).filter(|&x| keep[x]).collect();

    // one pass suffices: an image of an image is an image under a
    // composition, and the family is composition-closed
    for &y in &kept_points {
        for u in &elems {
            if let Some(z) = u.get(y) {
                if !keep[z] {
                    return Err(ShrinkError::ClosureUnstable(y));
                }
            }
        }
    }

    let bound = n.saturating_mul(n).saturating_mul(n);
    if kept_points.len() > bound {
        return Err(ShrinkError::CubeBoundExceeded {
            kept: kept_points.len(),
            bound,
            elements: n,
        });
    }

    let mut old_to_new = vec![None; base];
    for (new, &old) in kept_points.iter().enumerate() {
        old_to_new[old] = Some(new);
    }
    let new_base = kept_points.len();
    let restricted: Vec<PartialFunction> = elems
        .iter()
        .map(|f| f.restrict_reindex(&old_to_new, new_base))
        .collect();

    // injectivity
    for i in 0..n {
        for j in (i + 1)..n {
            if restricted[i] == restricted[j] {
                return Err(ShrinkError::NotFaithful(format!(
                    "f{} and f{} collapse after restriction",
                    i, j
                )));
            }
        }
    }
    // homomorphism, operation by operation over the abstract tables
    for op in alg.signature().iter() {
        match op.arity() {
            1 => {
                for i in 0..n {
                    let expected = &restricted[table.apply1(op, i).expect("table present")];
                    let concrete = apply1_concrete(op, &restricted[i]);
                    if concrete != *expected {
                        return Err(ShrinkError::NotFaithful(format!("{}(f{})", op, i)));
                    }
                }
            }
            2 => {
                for i in 0..n {
                    for j in 0..n {
                        let expected = &restricted[table.apply2(op, i, j).expect("table present")];
                        let concrete = apply2_concrete(op, &restricted[i], &restricted[j]);
                        if concrete != *expected {
                            return Err(ShrinkError::NotFaithful(format!("f{} {} f{}", i, op, j)));
                        }
                    }
                }
            }
            0 => {
                let idx = table.constant(op).expect("constant declared by closure");
                let expected = match op {
                    Op::Zero => PartialFunction::empty(new_base),
                    _ => PartialFunction::identity(new_base),
                };
                if restricted[idx] != expected {
                    return Err(ShrinkError::NotFaithful(format!("constant {}", op)));
                }
            }
            _ => unreachable!(),
        }
    }

    Ok(ShrinkOutcome {
        elements: elems,
        table,
        kept_points,
        restricted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::sig::Signature;

    #[test]
    fn all_maps_on_two_points_survive_unshrunk() {
        // the full family on 2 points already sits well under the cube bound
        let mut gens = Vec::new();
        let mut i = 0;
        for x in [None, Some(0), Some(1)] {
            for y in [None, Some(0), Some(1)] {
                gens.push((
                    format!("g{}", i),
                    PartialFunction::from_images(vec![x, y]).unwrap(),
                ));
                i += 1;
            }
        }
        let alg = FunctionAlgebra::new(2, Signature::parse("; a d 0 1'").unwrap(), gens).unwrap();
        let out = shrink_range_free(&alg, 16).unwrap();
        assert_eq!(out.elements.len(), 9);
        assert_eq!(out.kept_points, vec![0, 1]);
        assert_eq!(out.restricted.len(), 9);
    }

    #[test]
    fn involution_on_a_large_base_shrinks_to_two_points() {
        // a transposition padded with identity on 50 points: the closed
        // family is {f, 1'}, and one disagreement point plus images suffice
        let base = 50;
        let mut img: Vec<Option<usize>> = (0..base).map(Some).collect();
        img[0] = Some(1);
        img[1] = Some(0);
        let f = PartialFunction::from_images(img).unwrap();
        let alg = FunctionAlgebra::new(
            base,
            Signature::parse("; d").unwrap(),
            [("f".to_string(), f)],
        )
        .unwrap();
        let out = shrink_range_free(&alg, 100).unwrap();
        assert_eq!(out.elements.len(), 2);
        assert_eq!(out.kept_points, vec![0, 1]);
    }

    #[test]
    fn chain_generator_stays_within_the_cube_bound() {
        let base = 12;
        let f = PartialFunction::from_pairs(base, (0..base - 1).map(|i| (i, i + 1))).unwrap();
        let alg = FunctionAlgebra::new(
            base,
            Signature::parse("; d 0").unwrap(),
            [("f".to_string(), f)],
        )
        .unwrap();
        let out = shrink_range_free(&alg, 2_000).unwrap();
        let n = out.elements.len();
        assert!(out.kept_points.len() <= n * n * n);
    }

    #[test]
    fn random_generators_shrink_and_verify() {
        let mut rng = SplitMix64::new(0x0b5e55ed);
        let sig = Signature::parse("; a d + fix ^ 0 1'").unwrap();
        for trial in 0..25 {
            let base = 3 + (rng.next() % 14) as usize;
            let g0 = PartialFunction::random(&mut rng, base);
            let alg = FunctionAlgebra::new(base, sig, [("g".to_string(), g0)]).unwrap();
            match shrink_range_free(&alg, 600) {
                Ok(out) => {
                    let n = out.elements.len();
                    assert!(out.kept_points.len() <= n * n * n, "trial {}", trial);
                }
                Err(ShrinkError::Closure(_)) => {
                    // closure blew past the element cap; skip such draws
                }
                Err(other) => panic!("trial {}: {}", trial, other),
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let alg = FunctionAlgebra::new(
            3,
            Signature::parse("; d 0").unwrap(),
            [("z".to_string(), PartialFunction::empty(3))],
        )
        .unwrap();
        let out = shrink_range_free(&alg, 10).unwrap();
        // the closure is {0, d(0)=0, ...} = just the empty map once 0 joins
        assert_eq!(out.elements.len(), 1);
        assert!(out.kept_points.is_empty());
        assert_eq!(out.restricted_algebra().base(), 0);
    }

    #[test]
    fn range_signature_is_refused() {
        let alg = FunctionAlgebra::new(
            2,
            Signature::parse("; d r").unwrap(),
            [("f".to_string(), PartialFunction::identity(2))],
        )
        .unwrap();
        assert!(matches!(
            shrink_range_free(&alg, 10),
            Err(ShrinkError::RangePresent)
        ));
    }
}
