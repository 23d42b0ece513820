//! Shared fixtures for unit tests.

use crate::fnalg::FunctionAlgebra;
use crate::pfn::PartialFunction;
use crate::sig::Signature;
use crate::table::FiniteAlgebra;

/// Five elements: two parallel arrows `a`, `b` from a domain idempotent `d`
/// to a range idempotent `r`, plus zero. The only nonzero compositions are
/// the ones forced by `d` and `r` acting as the arrows' domain and range.
/// All distinct elements meet to zero.
pub const PARALLEL_PAIR: &str = "\
elements: 0 a b d r
signature: ; . d r fix 0
table ;:
0 0 0 0 0
0 0 0 0 a
0 0 0 0 b
0 a b d 0
0 0 0 0 r
table .:
0 0 0 0 0
0 a 0 0 0
0 0 b 0 0
0 0 0 d 0
0 0 0 0 r
table d: 0 d d d r
table r: 0 r r d r
table fix: 0 0 0 d r
zero: 0
";

pub fn parallel_pair() -> FiniteAlgebra {
    FiniteAlgebra::parse_text(PARALLEL_PAIR).unwrap()
}

/// All nine partial maps on a two-point base, closed into abstract tables.
pub fn all_maps_on_two_points(sig: &str) -> (FiniteAlgebra, Vec<PartialFunction>) {
    let signature = Signature::parse(sig).unwrap();
    let mut gens = Vec::new();
    let mut i = 0;
    for x in [None, Some(0), Some(1)] {
        for y in [None, Some(0), Some(1)] {
            let f = PartialFunction::from_images(vec![x, y]).unwrap();
            gens.push((format!("g{}", i), f));
            i += 1;
        }
    }
    let alg = FunctionAlgebra::new(2, signature, gens).unwrap();
    alg.to_finite_algebra(16).unwrap()
}
