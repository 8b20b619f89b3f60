//! Deciding whether every element of `m·O⁺` is a sum of squares.
//!
//! It suffices to test `m·α` for the representatives `α_{i,r}` of the
//! indecomposables: every totally positive integer is a sum of
//! indecomposables, conjugation preserves sums of squares, and multiplying by
//! the square `ε²` does too.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::bounds::{corollary_predicates, theorem2_intervals, Case, ExclusionIntervals};
use crate::cf::CfExpansion;
use crate::error::{Error, Result};
use crate::indecomposable::{self, Indecomposable};
use crate::integer::{is_squarefree, mod4};
use crate::peters;
use crate::quad::QuadraticField;

/// How a decision was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// `m` odd, `D ≡ 2, 3`: the first indecomposable with odd `√D`
    /// coefficient fails; the search stops there.
    OddMultiplier,
    /// `D <= m` (`D ≡ 2, 3`, `m` even) or `D <= 2m` (`D ≡ 1`).
    SufficientBound,
    /// Every representative was tested, or the first failure was found.
    Enumeration,
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub m: BigInt,
    pub d: BigInt,
    pub answer: bool,
    /// First `α_{i,r}` in `(i, r)` order whose `m`-multiple is not a sum of squares.
    pub witness: Option<Indecomposable>,
    /// Number of representatives; not computed on the sufficiency shortcut.
    pub indecomposable_count: Option<BigInt>,
    pub route: Route,
}

fn check_m(m: &BigInt) -> Result<()> {
    if !m.is_positive() {
        return Err(Error::NonPositiveM(m.clone()));
    }
    Ok(())
}

fn first_failure(m: &BigInt, cf: &CfExpansion) -> Option<Indecomposable> {
    indecomposable::stream(cf).find(|alpha| {
        let scaled = alpha.value.scale(m);
        !peters::representable(&scaled).expect("multiples of indecomposables are totally positive")
    })
}

fn enumerate_decision(m: &BigInt, d: &BigInt, route: Route) -> Result<Decision> {
    let field = QuadraticField::new(d)?;
    let cf = CfExpansion::of_field(&field);
    let witness = first_failure(m, &cf);
    Ok(Decision {
        m: m.clone(),
        d: d.clone(),
        answer: witness.is_none(),
        witness,
        indecomposable_count: Some(indecomposable::count(&cf)),
        route,
    })
}

pub fn decide(m: &BigInt, d: &BigInt) -> Result<Decision> {
    check_m(m)?;
    QuadraticField::new(d)?;
    let pred = corollary_predicates(m, d);
    if pred.excluded_by_e {
        let decision = enumerate_decision(m, d, Route::OddMultiplier)?;
        debug_assert!(!decision.answer);
        return Ok(decision);
    }
    if pred.sufficient_by_d {
        return Ok(Decision {
            m: m.clone(),
            d: d.clone(),
            answer: true,
            witness: None,
            indecomposable_count: None,
            route: Route::SufficientBound,
        });
    }
    enumerate_decision(m, d, Route::Enumeration)
}

/// Plain enumeration with no shortcut.
pub fn decide_by_enumeration(m: &BigInt, d: &BigInt) -> Result<Decision> {
    check_m(m)?;
    enumerate_decision(m, d, Route::Enumeration)
}

/// Answer only; shortcut cases skip the continued fraction entirely.
pub fn accepts(m: &BigInt, d: &BigInt) -> Result<bool> {
    check_m(m)?;
    let field = QuadraticField::new(d)?;
    let pred = corollary_predicates(m, d);
    if pred.excluded_by_e {
        return Ok(false);
    }
    if pred.sufficient_by_d {
        return Ok(true);
    }
    Ok(first_failure(m, &CfExpansion::of_field(&field)).is_none())
}

/// Largest `D` not excluded by the head bounds in any case:
/// `4D < (m+8)²`, `4D < (m+16)²` for even `m`, `D < (m+4)²` for odd `m`.
pub fn default_d_max(m: &BigInt) -> BigInt {
    let sqrt_case: BigInt = ((m + 8) * (m + 8) - 1) / 4;
    let half_case = if m.is_even() {
        ((m + 16) * (m + 16) - 1) / 4
    } else {
        (m + 4) * (m + 4) - 1
    };
    sqrt_case.max(half_case)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Skip `D` excluded by the analytic bounds, use the shortcuts.
    Pruned,
    /// Enumerate for every squarefree `D`.
    Exhaustive,
}

impl SweepMode {
    pub fn label(self) -> &'static str {
        match self {
            SweepMode::Pruned => "pruned",
            SweepMode::Exhaustive => "exhaustive",
        }
    }
}

/// Exclusion data for one `m`, covering both residues of `D`.
pub struct Pruner {
    m: BigInt,
    sqrt_case: ExclusionIntervals,
    half_case: ExclusionIntervals,
}

impl Pruner {
    pub fn new(m: &BigInt) -> Pruner {
        let half = if m.is_even() { Case::HalfEvenM } else { Case::HalfOddM };
        Pruner {
            m: m.clone(),
            sqrt_case: theorem2_intervals(m, Case::Sqrt),
            half_case: theorem2_intervals(m, half),
        }
    }

    pub fn intervals(&self, d: &BigInt) -> &ExclusionIntervals {
        if mod4(d) == 1 {
            &self.half_case
        } else {
            &self.sqrt_case
        }
    }

    /// Whether `d` is ruled out without enumeration.
    pub fn excluded(&self, d: &BigInt) -> bool {
        let pred = corollary_predicates(&self.m, d);
        pred.excluded_by_e || pred.excluded_by_a_b_c || self.intervals(d).excludes(d)
    }
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
}

/// All squarefree `2 <= D <= d_max` for which every element of `m·O⁺` is a
/// sum of squares, ascending.
pub fn sweep(m: &BigInt, mode: SweepMode, d_max: Option<&BigInt>, threads: usize) -> Result<Vec<BigInt>> {
    check_m(m)?;
    let d_max = d_max.cloned().unwrap_or_else(|| default_d_max(m));
    let upper = d_max.to_u64().unwrap_or(0);
    let pruner = Pruner::new(m);
    let mut found: Vec<BigInt> = pool(threads).install(|| {
        (2..=upper)
            .into_par_iter()
            .filter_map(|d| {
                let d = BigInt::from(d);
                if !is_squarefree(&d) {
                    return None;
                }
                let ok = match mode {
                    SweepMode::Pruned => {
                        !pruner.excluded(&d) && accepts(m, &d).expect("squarefree D")
                    }
                    SweepMode::Exhaustive => {
                        decide_by_enumeration(m, &d).expect("squarefree D").answer
                    }
                };
                ok.then_some(d)
            })
            .collect()
    });
    found.sort();
    Ok(found)
}
