//! Seeded random generators for terms, assignments and function algebras,
//! shared by the fuzz suites and the randomized search mode.

use crate::fnalg::{Assignment, FunctionAlgebra};
use crate::pfn::PartialFunction;
use crate::rng::SplitMix64;
use crate::sig::{Op, Signature};
use crate::term::Term;

#[derive(Clone, Debug)]
pub struct TermGenOptions {
    /// Upper bound on the node count of generated terms.
    pub max_len: usize,
    /// Operation palette.
    pub allowed: Vec<Op>,
    /// Keep antidomain and preferential union out of range arguments, so
    /// generated terms stay within the scope of the restriction property.
    pub safe_ranges: bool,
    /// Allow `0` and `1'` leaves.
    pub constants: bool,
}

impl TermGenOptions {
    /// Every operation except maximum iterate.
    pub fn no_maxiter() -> TermGenOptions {
        TermGenOptions {
            max_len: 12,
            allowed: vec![
                Op::Compose,
                Op::Meet,
                Op::PrefUnion,
                Op::Dom,
                Op::AntiDom,
                Op::Range,
                Op::Fixset,
            ],
            safe_ranges: false,
            constants: true,
        }
    }

    /// No maximum iterate and no antitone operations under range.
    pub fn safe() -> TermGenOptions {
        TermGenOptions {
            safe_ranges: true,
            ..TermGenOptions::no_maxiter()
        }
    }

    pub fn with_ops(ops: &[Op]) -> TermGenOptions {
        TermGenOptions {
            max_len: 12,
            allowed: ops.to_vec(),
            safe_ranges: false,
            constants: true,
        }
    }
}

pub fn random_term(rng: &mut SplitMix64, vars: &[&str], opts: &TermGenOptions) -> Term {
    gen_term(rng, vars, opts, opts.max_len.max(1), false)
}

fn gen_term(
    rng: &mut SplitMix64,
    vars: &[&str],
    opts: &TermGenOptions,
    budget: usize,
    under_range: bool,
) -> Term {
    let leaf = |rng: &mut SplitMix64| -> Term {
        if opts.constants && rng.chance(1, 6) {
            if rng.chance(1, 2) {
                Term::Zero
            } else {
                Term::Identity
            }
        } else {
            let i = rng.below(vars.len() as u64) as usize;
            Term::var(vars[i])
        }
    };
    if budget <= 1 || rng.chance(1, 4) {
        return leaf(rng);
    }
    let restricted = opts.safe_ranges && under_range;
    let pool: Vec<Op> = opts
        .allowed
        .iter()
        .copied()
        .filter(|op| op.arity() < budget)
        .filter(|op| !restricted || !matches!(op, Op::AntiDom | Op::PrefUnion))
        .collect();
    if pool.is_empty() {
        return leaf(rng);
    }
    let op = pool[rng.below(pool.len() as u64) as usize];
    match op.arity() {
        1 => {
            let inner_range = under_range || op == Op::Range;
            let child = gen_term(rng, vars, opts, budget - 1, inner_range);
            Term::Unary(op, Box::new(child))
        }
        2 => {
            let left_budget = 1 + rng.below((budget - 2) as u64) as usize;
            let l = gen_term(rng, vars, opts, left_budget, under_range);
            let remaining = budget.saturating_sub(1 + l.length()).max(1);
            let r = gen_term(rng, vars, opts, remaining, under_range);
            Term::Binary(op, Box::new(l), Box::new(r))
        }
        _ => unreachable!(),
    }
}

/// Bind every variable of `t` to a uniformly random partial function.
pub fn random_assignment(rng: &mut SplitMix64, t: &Term, base: usize) -> Assignment {
    let mut asg = Assignment::new();
    for v in t.variables() {
        asg.insert(v, PartialFunction::random(rng, base));
    }
    asg
}

/// A function algebra with `n_gens` random generators named `f0, f1, …`.
pub fn random_function_algebra(
    rng: &mut SplitMix64,
    base: usize,
    n_gens: usize,
    signature: Signature,
) -> FunctionAlgebra {
    let gens = (0..n_gens).map(|i| (format!("f{}", i), PartialFunction::random(rng, base)));
    FunctionAlgebra::new(base, signature, gens).expect("bases agree by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::range_args_antitone_free;

    #[test]
    fn generated_terms_respect_budget_and_palette() {
        let mut rng = SplitMix64::new(99);
        let opts = TermGenOptions::no_maxiter();
        for _ in 0..500 {
            let t = random_term(&mut rng, &["x", "y"], &opts);
            assert!(t.length() <= opts.max_len);
            assert!(!t.contains_op(Op::MaxIter));
        }
    }

    #[test]
    fn safe_mode_keeps_range_arguments_monotone() {
        let mut rng = SplitMix64::new(7);
        let opts = TermGenOptions {
            max_len: 14,
            ..TermGenOptions::safe()
        };
        let mut saw_range = false;
        for _ in 0..2000 {
            let t = random_term(&mut rng, &["x", "y", "z"], &opts);
            saw_range |= t.contains_op(Op::Range);
            assert!(range_args_antitone_free(&t), "{}", t);
        }
        assert!(saw_range);
    }

    #[test]
    fn parse_print_round_trip_on_random_terms() {
        use crate::parse::parse_term;
        let mut rng = SplitMix64::new(0xabcd);
        let mut opts = TermGenOptions::no_maxiter();
        opts.allowed.push(Op::MaxIter);
        opts.max_len = 20;
        for _ in 0..3000 {
            let t = random_term(&mut rng, &["x", "y", "zz", "w1"], &opts);
            let printed = t.to_string();
            let back = parse_term(&printed).unwrap();
            assert_eq!(back, t, "print/parse mismatch for {}", printed);
            assert_eq!(back.length(), t.length());
        }
    }
}
