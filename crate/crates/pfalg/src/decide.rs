//! Deciding equation validity over algebras of partial functions.
//!
//! A failing equation has a finite counterexample whose base is at most
//! twice the combined term length: restricting a disagreement witness's
//! model to the evaluation witness set of both sides preserves the
//! disagreement. The exhaustive engine therefore searches models generated
//! by the evaluation trace itself: the disagreement point is fixed at 0,
//! every further point is introduced in discovery order (which quotients
//! away base renamings), and every guessed model is verified by concrete
//! evaluation before it is reported.
//!
//! Three engines cooperate:
//!
//! * a pointwise engine for terms whose variables all sit directly under
//!   `d` or `a` — such terms denote restrictions of the identity whose
//!   value at a point depends only on the per-variable definedness bits,
//!   so a truth-table over those bits decides validity outright;
//! * the trace engine above, complete for maxiter-free equations whose
//!   range arguments are free of antidomain and preferential union (see
//!   [`crate::sigma::range_args_antitone_free`]);
//! * brute-force enumeration and seeded random sampling, used as a
//!   refutation fallback where completeness is out of reach (maxiter, or
//!   antitone range arguments) and as an independent oracle in tests.
//!
//! `Valid` is only ever returned by a complete engine; everything else ends
//! in a counterexample or an honest budget report.

use std::collections::BTreeSet;
use std::time::Instant;

use thiserror::Error;

use crate::fnalg::{evaluate, Assignment};
use crate::pfn::PartialFunction;
use crate::rng::SplitMix64;
use crate::sig::{Op, Signature};
use crate::sigma::{range_args_antitone_free, sigma, SigmaError};
use crate::term::{Equation, Term, WellFormedError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub mode: Mode,
    pub seed: u64,
    /// Cap on the base sizes the engines may build. `None` means the
    /// theorem bound `2(|u|+|v|)`.
    pub max_base: Option<usize>,
    /// Deterministic step budget for the trace engine.
    pub step_budget: u64,
    /// Assignment budget per base size for the brute-force fallback.
    pub raw_assignment_cap: u64,
    /// Sample count for random mode and the random fallback.
    pub random_samples: u64,
    /// Worker threads for the brute-force enumeration.
    pub jobs: usize,
    /// Optional wall-clock deadline, checked coarsely.
    pub deadline: Option<Instant>,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            mode: Mode::Exhaustive,
            seed: 0,
            max_base: None,
            step_budget: 20_000_000,
            raw_assignment_cap: 2_000_000,
            random_samples: 20_000,
            jobs: 1,
            deadline: None,
        }
    }
}

/// A refuting model: an assignment on a small base where the two sides
/// disagree at the witness point.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub base: usize,
    pub assignment: Assignment,
    pub witness: usize,
    pub lhs_value: Option<usize>,
    pub rhs_value: Option<usize>,
    /// Seed of the randomized run that found it, when applicable.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// Exhaustive search up to the theorem bound completed with no
    /// counterexample, via a complete engine.
    Valid,
    Counterexample(Counterexample),
    /// The search was cut short; carries the largest base size for which
    /// every assignment was exhausted.
    BudgetExceeded {
        largest_base_exhausted: usize,
    },
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    /// `2(|u|+|v|)`: a counterexample exists within this base size iff the
    /// equation is invalid (maxiter-free signatures).
    pub theorem_bound: usize,
    pub engine: &'static str,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecideError {
    #[error(transparent)]
    NotWellFormed(#[from] WellFormedError),
}

pub fn theorem_bound(eq: &Equation) -> usize {
    2 * (eq.lhs.length() + eq.rhs.length())
}

/// Decide `lhs = rhs` over all function algebras of the signature.
pub fn decide_equation(
    eq: &Equation,
    sig: Signature,
    opts: &SearchOptions,
) -> Result<Decision, DecideError> {
    eq.check_well_formed(sig)?;
    let bound = theorem_bound(eq);
    let cap = opts.max_base.unwrap_or(bound).min(bound);

    if opts.mode == Mode::Random {
        let verdict = match random_refute(eq, cap.max(1), opts) {
            Some(ce) => Verdict::Counterexample(ce),
            None => Verdict::BudgetExceeded {
                largest_base_exhausted: 0,
            },
        };
        return Ok(Decision {
            verdict,
            theorem_bound: bound,
            engine: "random",
        });
    }

    if is_pointwise_term(&eq.lhs) && is_pointwise_term(&eq.rhs) {
        let verdict = decide_pointwise(eq);
        return Ok(Decision {
            verdict,
            theorem_bound: bound,
            engine: "pointwise",
        });
    }

    let has_maxiter = eq.lhs.contains_op(Op::MaxIter) || eq.rhs.contains_op(Op::MaxIter);
    if has_maxiter {
        // sound refutation only; validity is out of reach with iteration
        let verdict = refute_only(eq, cap, opts);
        return Ok(Decision {
            verdict,
            theorem_bound: bound,
            engine: "refutation",
        });
    }

    let mut trace = TraceSearch::new(eq, cap, opts);
    let exhausted = trace.run();
    if let Some(ce) = trace.found {
        return Ok(Decision {
            verdict: Verdict::Counterexample(ce),
            theorem_bound: bound,
            engine: "trace",
        });
    }
    let safe = range_args_antitone_free(&eq.lhs) && range_args_antitone_free(&eq.rhs);
    if exhausted && safe && cap >= bound {
        return Ok(Decision {
            verdict: Verdict::Valid,
            theorem_bound: bound,
            engine: "trace",
        });
    }
    // incomplete: either the trace budget ran out, the caller capped the
    // base, or completeness is unavailable for these terms
    let verdict = refute_only(eq, cap, opts);
    Ok(Decision {
        verdict,
        theorem_bound: bound,
        engine: "refutation",
    })
}

fn refute_only(eq: &Equation, cap: usize, opts: &SearchOptions) -> Verdict {
    let n = eq.variables().len().max(1);
    let mut exhausted = 0;
    for k in 0..=cap {
        if assignments_on_base(k, n) > opts.raw_assignment_cap {
            break;
        }
        if let Some(ce) = raw_search(eq, k, opts.jobs) {
            return Verdict::Counterexample(ce);
        }
        exhausted = k;
    }
    if let Some(ce) = random_refute(eq, cap.max(1), opts) {
        return Verdict::Counterexample(ce);
    }
    Verdict::BudgetExceeded {
        largest_base_exhausted: exhausted,
    }
}

// ---------------------------------------------------------------------------
// pointwise engine

/// Terms built from `0`, `1'` and variables guarded by an immediate `d` or
/// `a`, under composition, meet, preferential union, and the unary
/// operations other than maxiter. Every subterm denotes a restriction of
/// the identity, and membership of a point depends only on the definedness
/// bits of the variables at that point.
fn is_pointwise_term(t: &Term) -> bool {
    match t {
        Term::Zero | Term::Identity => true,
        Term::Var(_) => false,
        Term::Unary(Op::MaxIter, _) => false,
        Term::Unary(Op::Dom | Op::AntiDom, s) => {
            matches!(**s, Term::Var(_)) || is_pointwise_term(s)
        }
        Term::Unary(_, s) => is_pointwise_term(s),
        Term::Binary(_, l, r) => is_pointwise_term(l) && is_pointwise_term(r),
    }
}

fn pointwise_eval(t: &Term, bit: &dyn Fn(&str) -> bool) -> bool {
    match t {
        Term::Zero => false,
        Term::Identity => true,
        Term::Var(_) => unreachable!("guarded by is_pointwise_term"),
        Term::Unary(Op::Dom, s) => match &**s {
            Term::Var(v) => bit(v),
            s => pointwise_eval(s, bit),
        },
        Term::Unary(Op::AntiDom, s) => match &**s {
            Term::Var(v) => !bit(v),
            s => !pointwise_eval(s, bit),
        },
        // range and fixset of a subidentity are the subidentity itself
        Term::Unary(Op::Range | Op::Fixset, s) => pointwise_eval(s, bit),
        Term::Unary(op, _) => unreachable!("pointwise {op:?}"),
        Term::Binary(Op::Compose | Op::Meet, l, r) => {
            pointwise_eval(l, bit) && pointwise_eval(r, bit)
        }
        Term::Binary(Op::PrefUnion, l, r) => pointwise_eval(l, bit) || pointwise_eval(r, bit),
        Term::Binary(op, ..) => unreachable!("pointwise {op:?}"),
    }
}

fn decide_pointwise(eq: &Equation) -> Verdict {
    let vars = eq.variables();
    debug_assert!(vars.len() < 60);
    for mask in 0u64..(1u64 << vars.len()) {
        let bit = |name: &str| -> bool {
            let i = vars.iter().position(|v| *v == name).unwrap();
            mask & (1 << i) != 0
        };
        if pointwise_eval(&eq.lhs, &bit) != pointwise_eval(&eq.rhs, &bit) {
            // realize the bit pattern on a one-point base
            let mut asg = Assignment::new();
            for (i, v) in vars.iter().enumerate() {
                let f = if mask & (1 << i) != 0 {
                    PartialFunction::identity(1)
                } else {
                    PartialFunction::empty(1)
                };
                asg.insert(*v, f);
            }
            let lhs_value = evaluate(&eq.lhs, &asg, 1).expect("bindings total").get(0);
            let rhs_value = evaluate(&eq.rhs, &asg, 1).expect("bindings total").get(0);
            debug_assert_ne!(lhs_value, rhs_value);
            return Verdict::Counterexample(Counterexample {
                base: 1,
                assignment: asg,
                witness: 0,
                lhs_value,
                rhs_value,
                seed: None,
            });
        }
    }
    Verdict::Valid
}

// ---------------------------------------------------------------------------
// trace engine

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Cell {
    Unknown,
    Undef,
    Def(usize),
}

#[derive(Clone)]
struct TState {
    npoints: usize,
    /// cells[variable][point]
    cells: Vec<Vec<Cell>>,
}

impl TState {
    fn new(nvars: usize) -> TState {
        TState {
            npoints: 1,
            cells: vec![vec![Cell::Unknown]; nvars],
        }
    }

    fn grow(&mut self) -> usize {
        for col in &mut self.cells {
            col.push(Cell::Unknown);
        }
        self.npoints += 1;
        self.npoints - 1
    }
}

type Cont<'c> = &'c mut dyn FnMut(&mut TraceSearch<'_>, TState, Option<usize>);

struct TraceSearch<'a> {
    vars: Vec<&'a str>,
    lhs: &'a Term,
    rhs: &'a Term,
    max_points: usize,
    steps_left: u64,
    budget_hit: bool,
    deadline: Option<Instant>,
    found: Option<Counterexample>,
}

impl<'a> TraceSearch<'a> {
    fn new(eq: &'a Equation, max_points: usize, opts: &SearchOptions) -> TraceSearch<'a> {
        TraceSearch {
            vars: eq.variables(),
            lhs: &eq.lhs,
            rhs: &eq.rhs,
            max_points: max_points.max(1),
            steps_left: opts.step_budget,
            budget_hit: false,
            deadline: opts.deadline,
            found: None,
        }
    }

    /// Returns true if every branch was explored within budget.
    fn run(&mut self) -> bool {
        let st = TState::new(self.vars.len());
        let lhs = self.lhs;
        self.eval(st, lhs, 0, &mut |this, st2, lv| {
            let rhs = this.rhs;
            this.eval(st2, rhs, 0, &mut |this2, st3, rv| {
                if lv != rv {
                    this2.check_candidate(&st3);
                }
            });
        });
        !self.budget_hit
    }

    fn cut(&mut self) -> bool {
        if self.found.is_some() || self.budget_hit {
            return true;
        }
        if self.steps_left == 0 {
            self.budget_hit = true;
            return true;
        }
        self.steps_left -= 1;
        if self.steps_left.is_multiple_of(65536) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.budget_hit = true;
                    return true;
                }
            }
        }
        false
    }

    fn eval(&mut self, st: TState, t: &Term, p: usize, k: Cont<'_>) {
        if self.cut() {
            return;
        }
        match t {
            Term::Zero => k(self, st, None),
            Term::Identity => k(self, st, Some(p)),
            Term::Var(name) => {
                let vi = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .expect("known variable");
                match st.cells[vi][p] {
                    Cell::Undef => k(self, st, None),
                    Cell::Def(q) => k(self, st, Some(q)),
                    Cell::Unknown => {
                        let mut st2 = st.clone();
                        st2.cells[vi][p] = Cell::Undef;
                        k(self, st2, None);
                        for q in 0..st.npoints {
                            if self.found.is_some() || self.budget_hit {
                                return;
                            }
                            let mut st2 = st.clone();
                            st2.cells[vi][p] = Cell::Def(q);
                            k(self, st2, Some(q));
                        }
                        if st.npoints < self.max_points && self.found.is_none() && !self.budget_hit
                        {
                            let mut st2 = st.clone();
                            let q = st2.grow();
                            st2.cells[vi][p] = Cell::Def(q);
                            k(self, st2, Some(q));
                        }
                    }
                }
            }
            Term::Unary(Op::Dom, s) => {
                self.eval(st, s, p, &mut |this, st2, sv| k(this, st2, sv.map(|_| p)));
            }
            Term::Unary(Op::AntiDom, s) => {
                self.eval(st, s, p, &mut |this, st2, sv| {
                    k(this, st2, if sv.is_none() { Some(p) } else { None })
                });
            }
            Term::Unary(Op::Fixset, s) => {
                self.eval(st, s, p, &mut |this, st2, sv| {
                    k(this, st2, if sv == Some(p) { Some(p) } else { None })
                });
            }
            Term::Unary(Op::Range, s) => {
                // guess a preimage among known points, or a fresh one
                for y in 0..st.npoints {
                    if self.found.is_some() || self.budget_hit {
                        return;
                    }
                    let branch = st.clone();
                    self.eval(branch, s, y, &mut |this, st2, sv| {
                        if sv == Some(p) {
                            k(this, st2, Some(p));
                        }
                    });
                }
                if st.npoints < self.max_points && self.found.is_none() && !self.budget_hit {
                    let mut branch = st.clone();
                    let y = branch.grow();
                    self.eval(branch, s, y, &mut |this, st2, sv| {
                        if sv == Some(p) {
                            k(this, st2, Some(p));
                        }
                    });
                }
                // or no preimage at all; concrete verification arbitrates
                if self.found.is_none() && !self.budget_hit {
                    k(self, st, None);
                }
            }
            Term::Unary(Op::MaxIter, _) => {
                unreachable!("maxiter terms never reach the trace engine")
            }
            Term::Unary(op, _) => unreachable!("unary {op:?}"),
            Term::Binary(Op::Compose, l, r) => {
                self.eval(st, l, p, &mut |this, st2, lv| match lv {
                    None => k(this, st2, None),
                    Some(q) => this.eval(st2, r, q, &mut |this2, st3, rv| k(this2, st3, rv)),
                });
            }
            Term::Binary(Op::Meet, l, r) => {
                self.eval(st, l, p, &mut |this, st2, lv| {
                    this.eval(st2, r, p, &mut |this2, st3, rv| {
                        let out = if lv.is_some() && lv == rv { lv } else { None };
                        k(this2, st3, out)
                    });
                });
            }
            Term::Binary(Op::PrefUnion, l, r) => {
                self.eval(st, l, p, &mut |this, st2, lv| match lv {
                    Some(q) => k(this, st2, Some(q)),
                    None => this.eval(st2, r, p, &mut |this2, st3, rv| k(this2, st3, rv)),
                });
            }
            Term::Binary(op, ..) => unreachable!("binary {op:?}"),
        }
    }

    fn check_candidate(&mut self, st: &TState) {
        if self.found.is_some() {
            return;
        }
        let base = st.npoints;
        let mut asg = Assignment::new();
        for (vi, name) in self.vars.iter().enumerate() {
            let img = st.cells[vi]
                .iter()
                .map(|c| match c {
                    Cell::Def(q) => Some(*q),
                    _ => None,
                })
                .collect();
            asg.insert(
                *name,
                PartialFunction::from_images(img).expect("points in range"),
            );
        }
        let lhs_value = evaluate(self.lhs, &asg, base)
            .expect("assignment total")
            .get(0);
        let rhs_value = evaluate(self.rhs, &asg, base)
            .expect("assignment total")
            .get(0);
        if lhs_value != rhs_value {
            self.found = Some(Counterexample {
                base,
                assignment: asg,
                witness: 0,
                lhs_value,
                rhs_value,
                seed: None,
            });
        }
    }
}

// ---------------------------------------------------------------------------
// brute force and random engines

fn assignments_on_base(k: usize, nvars: usize) -> u64 {
    let per_fn = (k as u64 + 1).checked_pow(k as u32).unwrap_or(u64::MAX);
    per_fn.checked_pow(nvars as u32).unwrap_or(u64::MAX)
}

fn decode_fn(mut code: u64, k: usize) -> PartialFunction {
    let mut img = Vec::with_capacity(k);
    for _ in 0..k {
        let digit = (code % (k as u64 + 1)) as usize;
        code /= k as u64 + 1;
        img.push(if digit == k { None } else { Some(digit) });
    }
    PartialFunction::from_images(img).expect("digits in range")
}

/// Exhaustively search every assignment on a base of exactly `k` points,
/// in lexicographic order of the function tables. Workers split the first
/// variable's code range; the least hit in enumeration order wins.
pub fn raw_search(eq: &Equation, k: usize, jobs: usize) -> Option<Counterexample> {
    let vars = eq.variables();
    let n = vars.len();
    if n == 0 {
        let asg = Assignment::new();
        let l = evaluate(&eq.lhs, &asg, k).expect("no variables");
        let r = evaluate(&eq.rhs, &asg, k).expect("no variables");
        let witness = (0..k).find(|&x| l.get(x) != r.get(x))?;
        return Some(Counterexample {
            base: k,
            assignment: asg,
            witness,
            lhs_value: l.get(witness),
            rhs_value: r.get(witness),
            seed: None,
        });
    }
    let per_fn = (k as u64 + 1).pow(k as u32);

    let scan = |first_range: std::ops::Range<u64>| -> Option<(Vec<u64>, Counterexample)> {
        let mut codes = vec![0u64; n];
        for first in first_range {
            codes[0] = first;
            for c in codes[1..].iter_mut() {
                *c = 0;
            }
            'assignments: loop {
                let mut asg = Assignment::new();
                for (i, v) in vars.iter().enumerate() {
                    asg.insert(*v, decode_fn(codes[i], k));
                }
                let l = evaluate(&eq.lhs, &asg, k).expect("assignment total");
                let r = evaluate(&eq.rhs, &asg, k).expect("assignment total");
                if let Some(witness) = (0..k).find(|&x| l.get(x) != r.get(x)) {
                    let ce = Counterexample {
                        base: k,
                        assignment: asg,
                        witness,
                        lhs_value: l.get(witness),
                        rhs_value: r.get(witness),
                        seed: None,
                    };
                    return Some((codes.clone(), ce));
                }
                // advance the tail odometer over codes[1..]
                let mut pos = n;
                loop {
                    if pos == 1 {
                        break 'assignments;
                    }
                    pos -= 1;
                    codes[pos] += 1;
                    if codes[pos] < per_fn {
                        break;
                    }
                    codes[pos] = 0;
                }
            }
        }
        None
    };

    if jobs <= 1 || per_fn < 2 * jobs as u64 {
        return scan(0..per_fn).map(|(_, ce)| ce);
    }
    let jobs = jobs.min(per_fn as usize);
    let chunk = per_fn.div_ceil(jobs as u64);
    let hits: Vec<Option<(Vec<u64>, Counterexample)>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        let scan_ref = &scan;
        for j in 0..jobs as u64 {
            let lo = j * chunk;
            let hi = ((j + 1) * chunk).min(per_fn);
            handles.push(scope.spawn(move || scan_ref(lo..hi)));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    hits.into_iter()
        .flatten()
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, ce)| ce)
}

fn random_refute(eq: &Equation, max_base: usize, opts: &SearchOptions) -> Option<Counterexample> {
    let vars = eq.variables();
    let mut rng = SplitMix64::new(opts.seed);
    let cap = max_base.clamp(1, 8);
    for _ in 0..opts.random_samples {
        let k = 1 + rng.below(cap as u64) as usize;
        let mut asg = Assignment::new();
        for v in &vars {
            asg.insert(*v, PartialFunction::random(&mut rng, k));
        }
        let l = evaluate(&eq.lhs, &asg, k).expect("assignment total");
        let r = evaluate(&eq.rhs, &asg, k).expect("assignment total");
        if let Some(witness) = (0..k).find(|&x| l.get(x) != r.get(x)) {
            return Some(Counterexample {
                base: k,
                assignment: asg,
                witness,
                lhs_value: l.get(witness),
                rhs_value: r.get(witness),
                seed: Some(opts.seed),
            });
        }
    }
    None
}

// ---------------------------------------------------------------------------
// counterexample minimization

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinimizeError {
    #[error("the reported model does not refute the equation")]
    NotACounterexample,
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Eval(#[from] crate::fnalg::EvalError),
}

/// Restrict a counterexample to the union of the two sides' witness sets at
/// the disagreement point. The disagreement is re-verified after
/// restriction; if an antitone range argument breaks it, the witness set is
/// closed under the range arguments' own witness sets until it persists.
pub fn minimize_counterexample(
    ce: &Counterexample,
    eq: &Equation,
) -> Result<Counterexample, MinimizeError> {
    let base = ce.base;
    let l = evaluate(&eq.lhs, &ce.assignment, base)?;
    let r = evaluate(&eq.rhs, &ce.assignment, base)?;
    let witness = if l.get(ce.witness) != r.get(ce.witness) {
        ce.witness
    } else {
        (0..base)
            .find(|&x| l.get(x) != r.get(x))
            .ok_or(MinimizeError::NotACounterexample)?
    };

    let mut keep: BTreeSet<usize> = sigma(&eq.lhs, witness, &ce.assignment, base)?;
    keep.extend(sigma(&eq.rhs, witness, &ce.assignment, base)?);
    loop {
        if let Some(out) = try_restrict(ce, eq, witness, &keep)? {
            return Ok(out);
        }
        // close under witness sets of range arguments and retry
        let mut extended = keep.clone();
        let mut args = Vec::new();
        collect_range_args(&eq.lhs, &mut args);
        collect_range_args(&eq.rhs, &mut args);
        for s in args {
            for &y in &keep {
                extended.extend(sigma(s, y, &ce.assignment, base)?);
            }
        }
        if extended == keep {
            // no more witnesses to add: fall back to the full base
            extended = (0..base).collect();
            let out = try_restrict(ce, eq, witness, &extended)?
                .expect("the full base preserves the disagreement");
            return Ok(out);
        }
        keep = extended;
    }
}

fn try_restrict(
    ce: &Counterexample,
    eq: &Equation,
    witness: usize,
    keep: &BTreeSet<usize>,
) -> Result<Option<Counterexample>, MinimizeError> {
    let keep_vec: Vec<usize> = keep.iter().copied().collect();
    let mut old_to_new = vec![None; ce.base];
    for (new, &old) in keep_vec.iter().enumerate() {
        old_to_new[old] = Some(new);
    }
    let new_base = keep_vec.len();
    let mut asg = Assignment::new();
    for (name, f) in ce.assignment.iter() {
        asg.insert(name, f.restrict_reindex(&old_to_new, new_base));
    }
    let new_witness = old_to_new[witness].expect("witness kept");
    let l = evaluate(&eq.lhs, &asg, new_base)?;
    let r = evaluate(&eq.rhs, &asg, new_base)?;
    if l.get(new_witness) == r.get(new_witness) {
        return Ok(None);
    }
    Ok(Some(Counterexample {
        base: new_base,
        assignment: asg,
        witness: new_witness,
        lhs_value: l.get(new_witness),
        rhs_value: r.get(new_witness),
        seed: ce.seed,
    }))
}

fn collect_range_args<'t>(t: &'t Term, out: &mut Vec<&'t Term>) {
    match t {
        Term::Var(_) | Term::Zero | Term::Identity => {}
        Term::Unary(op, s) => {
            if *op == Op::Range {
                out.push(s);
            }
            collect_range_args(s, out);
        }
        Term::Binary(_, l, r) => {
            collect_range_args(l, out);
            collect_range_args(r, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;

    fn decide(src: &str, sig: &str) -> Decision {
        let eq = parse_equation(src).unwrap();
        let sig = Signature::parse(sig).unwrap();
        decide_equation(&eq, sig, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn restriction_law_is_valid() {
        let d = decide("d(x);x = x", "; d");
        assert!(matches!(d.verdict, Verdict::Valid), "engine {}", d.engine);
        assert_eq!(d.theorem_bound, 10);
    }

    #[test]
    fn composition_does_not_commute() {
        let d = decide("x;y = y;x", "; d");
        match d.verdict {
            Verdict::Counterexample(ce) => {
                assert_eq!(ce.base, 2);
                assert_ne!(ce.lhs_value, ce.rhs_value);
            }
            other => panic!("expected counterexample, got {:?}", other),
        }
    }

    #[test]
    fn antidomain_zero_law_is_valid() {
        let d = decide("a(x);x = 0", "; a 0");
        assert!(matches!(d.verdict, Verdict::Valid), "engine {}", d.engine);
    }

    #[test]
    fn pointwise_engine_handles_test_terms() {
        let d = decide("a(d(f);a(d(f))) = 1'", "; a d 1'");
        assert_eq!(d.engine, "pointwise");
        assert!(matches!(d.verdict, Verdict::Valid));

        let d = decide("d(f) = 1'", "; a d 1'");
        assert_eq!(d.engine, "pointwise");
        match d.verdict {
            Verdict::Counterexample(ce) => {
                assert_eq!(ce.base, 1);
                assert!(ce.assignment.get("f").unwrap().is_empty());
            }
            other => panic!("expected counterexample, got {:?}", other),
        }
    }

    #[test]
    fn selected_catalog_equations_are_valid() {
        for (src, sig) in [
            ("d(x);d(y) = d(y);d(x)", "; d"),
            ("x;d(y) = d(x;y);x", "; d"),
            ("d(x);d(x;y) = d(x;y)", "; d"),
            ("x;r(x) = x", "; d r"),
            ("r(r(x);y) = r(x;y)", "; d r"),
            ("x;a(y) = a(x;y);x", "; a"),
            ("d(x);(x+y) = x", "; d a +"),
            ("a(x);(x+y) = a(x);y", "; d a +"),
            ("x.y = d(x.y);x", "; . d"),
        ] {
            let d = decide(src, sig);
            assert!(
                matches!(d.verdict, Verdict::Valid),
                "{} should be valid ({})",
                src,
                d.engine
            );
        }
    }

    #[test]
    fn invalid_equations_yield_verified_counterexamples() {
        for (src, sig) in [
            ("r(x);x = x", "; d r"),
            ("d(x);y = y", "; d"),
            ("x;y = x;z", "; d"),
            ("a(x) = d(x)", "; a d"),
            ("xized = x", "; d"),
            ("fix(x) = d(x)", "; d fix"),
            ("r(a(x);y) = r(y)", "; a r d"),
        ] {
            let d = decide(src, sig);
            let eq = parse_equation(src).unwrap();
            match d.verdict {
                Verdict::Counterexample(ce) => {
                    let l = evaluate(&eq.lhs, &ce.assignment, ce.base).unwrap();
                    let r = evaluate(&eq.rhs, &ce.assignment, ce.base).unwrap();
                    assert_ne!(l.get(ce.witness), r.get(ce.witness), "{}", src);
                    assert!(ce.base <= d.theorem_bound);
                }
                other => panic!("{} should fail, got {:?} via {}", src, other, d.engine),
            }
        }
    }

    #[test]
    fn maxiter_equations_never_report_valid() {
        let d = decide("x^ = x", "; a d ^");
        assert!(matches!(d.verdict, Verdict::Counterexample(_)));
        // a true law with maxiter still cannot earn Valid
        let d = decide("a(x);x^ = a(x)", "; a d ^");
        assert!(
            matches!(d.verdict, Verdict::BudgetExceeded { .. }),
            "{:?}",
            d.verdict
        );
    }

    #[test]
    fn random_mode_refutes_with_seed() {
        let eq = parse_equation("x;y = y;x").unwrap();
        let opts = SearchOptions {
            mode: Mode::Random,
            seed: 17,
            ..Default::default()
        };
        let d = decide_equation(&eq, Signature::parse("; d").unwrap(), &opts).unwrap();
        match d.verdict {
            Verdict::Counterexample(ce) => assert_eq!(ce.seed, Some(17)),
            other => panic!("expected counterexample, got {:?}", other),
        }
    }

    #[test]
    fn trace_engine_never_validates_raw_refutables() {
        use crate::gen::{random_term, TermGenOptions};
        let mut rng = SplitMix64::new(0xc0de);
        let opts = TermGenOptions {
            max_len: 6,
            ..TermGenOptions::safe()
        };
        let mut validated = 0;
        for _ in 0..200 {
            let lhs = random_term(&mut rng, &["x", "y"], &opts);
            let rhs = random_term(&mut rng, &["x", "y"], &opts);
            let eq = Equation::new(lhs, rhs);
            let d = decide_equation(&eq, Signature::full(), &SearchOptions::default()).unwrap();
            if matches!(d.verdict, Verdict::Valid) {
                validated += 1;
                for k in 0..=3 {
                    assert!(
                        raw_search(&eq, k, 1).is_none(),
                        "decided valid but raw refutes on base {}: {}",
                        k,
                        eq
                    );
                }
            }
        }
        assert!(validated > 0, "expected some valid equations in the sample");
    }

    #[test]
    fn raw_search_is_deterministic_across_jobs() {
        let eq = parse_equation("x;y = y;x").unwrap();
        let single = raw_search(&eq, 2, 1).unwrap();
        let multi = raw_search(&eq, 2, 4).unwrap();
        assert_eq!(single.assignment.iter().collect::<Vec<_>>().len(), 2);
        for (name, f) in single.assignment.iter() {
            assert_eq!(multi.assignment.get(name), Some(f));
        }
        assert_eq!(single.witness, multi.witness);
    }

    #[test]
    fn minimize_shrinks_padded_counterexamples() {
        let eq = parse_equation("x;y = y;x").unwrap();
        let d = decide_equation(
            &eq,
            Signature::parse("; d").unwrap(),
            &SearchOptions::default(),
        )
        .unwrap();
        let ce = match d.verdict {
            Verdict::Counterexample(ce) => ce,
            other => panic!("{:?}", other),
        };
        // pad the base with idle points
        let padded_base = 50;
        let mut asg = Assignment::new();
        for (name, f) in ce.assignment.iter() {
            let pairs: Vec<(usize, usize)> = f.pairs().collect();
            asg.insert(
                name,
                PartialFunction::from_pairs(padded_base, pairs).unwrap(),
            );
        }
        let padded = Counterexample {
            base: padded_base,
            assignment: asg,
            witness: ce.witness,
            lhs_value: ce.lhs_value,
            rhs_value: ce.rhs_value,
            seed: None,
        };
        let min = minimize_counterexample(&padded, &eq).unwrap();
        assert!(min.base <= theorem_bound(&eq));
        assert_ne!(min.lhs_value, min.rhs_value);
        // already-minimal counterexamples survive unchanged up to reindexing
        let again = minimize_counterexample(&min, &eq).unwrap();
        assert_eq!(again.base, min.base);
    }

    #[test]
    fn minimize_rejects_non_counterexamples() {
        let eq = parse_equation("x = x").unwrap();
        let ce = Counterexample {
            base: 2,
            assignment: Assignment::new().bind("x", PartialFunction::identity(2)),
            witness: 0,
            lhs_value: None,
            rhs_value: None,
            seed: None,
        };
        assert!(matches!(
            minimize_counterexample(&ce, &eq),
            Err(MinimizeError::NotACounterexample)
        ));
    }
}
