//! Brute-force references, independent of the closed-form criteria.
//!
//! Everything here searches explicitly: sums of at most five squares (the
//! Pythagoras number of every real quadratic ring of integers is at most 5),
//! and the integer minimisation behind the lower bounds in [`crate::bounds`].

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bounds::Parity;
use crate::error::{Error, Result};
use crate::integer::isqrt;
use crate::quad::{QuadInt, QuadraticField};

/// Search depth: five squares always suffice.
pub const MAX_SQUARES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecomposition {
    /// Nonzero `β_j`, ordered by non-increasing `trace(β_j²)`.
    pub parts: Vec<QuadInt>,
    pub target: QuadInt,
}

impl SquareDecomposition {
    /// `Σ β_j² == target`, recomputed exactly.
    pub fn verify(&self) -> bool {
        let sum = self
            .parts
            .iter()
            .fold(QuadInt::zero(self.target.field()), |acc, b| &acc + &b.square());
        sum == self.target && self.parts.len() <= MAX_SQUARES && self.parts.iter().all(|b| !b.is_zero())
    }
}

/// Every `β ≠ 0`, one of each `±β` pair, with `trace(β²) <= trace_max`,
/// sorted by `trace(β²)` ascending.
pub fn roots_upto(field: &Arc<QuadraticField>, trace_max: &BigInt) -> Vec<QuadInt> {
    // β = (u + v√D)/2 has trace(β²) = (u² + v²D)/2
    let d = field.d();
    let budget = trace_max * 2;
    let mut out = Vec::new();
    let v_max = isqrt(&(&budget / d));
    let mut v = BigInt::zero();
    while v <= v_max {
        let rest = &budget - &v * &v * d;
        let u_max = isqrt(&rest);
        let mut u = -&u_max;
        while u <= u_max {
            let canonical = v > BigInt::zero() || u > BigInt::zero();
            if canonical {
                if let Some(beta) = QuadInt::from_half_coords(&u, &v, field) {
                    out.push(beta);
                }
            }
            u += 1;
        }
        v += 1;
    }
    out.sort_by_cached_key(|b| (b.square().trace(), b.y().clone(), b.x().clone()));
    out
}

/// Every totally positive `ξ` with `trace(ξ) <= trace_max`, by trace then `√D`-part.
pub fn totally_positive_upto(field: &Arc<QuadraticField>, trace_max: &BigInt) -> Vec<QuadInt> {
    // ξ = (u + v√D)/2 totally positive iff u > |v|√D; trace = u
    let d = field.d();
    let mut out = Vec::new();
    let mut u = BigInt::from(1);
    while &u <= trace_max {
        let mut v_max = isqrt(&(&u * &u / d));
        if &v_max * &v_max * d == &u * &u {
            v_max -= 1;
        }
        let mut v = -&v_max;
        while v <= v_max {
            if let Some(xi) = QuadInt::from_half_coords(&u, &v, field) {
                debug_assert!(xi.is_totally_positive());
                out.push(xi);
            }
            v += 1;
        }
        u += 1;
    }
    out
}

/// Depth-limited search for `ξ = Σ β_j²` with at most five nonzero parts.
///
/// Only `β` with `β² ≼ ξ` can occur. Candidates are tried in non-increasing
/// `trace(β²)`; dead ends are memoised by remaining target.
pub fn brute_force_sos(xi: &QuadInt) -> Result<Option<SquareDecomposition>> {
    if !xi.is_totally_positive() {
        return Err(Error::NotTotallyPositive);
    }
    let mut candidates: Vec<(QuadInt, QuadInt)> = roots_upto(xi.field(), &xi.trace())
        .into_iter()
        .map(|b| {
            let sq = b.square();
            (b, sq)
        })
        .filter(|(_, sq)| sq.totally_le(xi))
        .collect();
    candidates.reverse();
    let mut search = Search {
        candidates,
        failed: HashMap::new(),
    };
    let parts = search.run(xi, MAX_SQUARES);
    Ok(parts.map(|mut parts| {
        parts.sort_by_cached_key(|b| std::cmp::Reverse(b.square().trace()));
        SquareDecomposition {
            parts,
            target: xi.clone(),
        }
    }))
}

struct Search {
    candidates: Vec<(QuadInt, QuadInt)>,
    /// remaining target -> largest depth known to fail
    failed: HashMap<QuadInt, usize>,
}

impl Search {
    fn run(&mut self, rest: &QuadInt, depth: usize) -> Option<Vec<QuadInt>> {
        if rest.is_zero() {
            return Some(Vec::new());
        }
        if depth == 0 {
            return None;
        }
        if self.failed.get(rest).is_some_and(|&f| f >= depth) {
            return None;
        }
        for k in 0..self.candidates.len() {
            if !self.candidates[k].1.totally_le(rest) {
                continue;
            }
            let next = rest - &self.candidates[k].1;
            if let Some(mut parts) = self.run(&next, depth - 1) {
                parts.push(self.candidates[k].0.clone());
                return Some(parts);
            }
        }
        self.failed.insert(rest.clone(), depth);
        None
    }
}

/// All sums of at most five nonzero squares with trace bounded by `trace_max`,
/// built breadth-first so every element keeps a shortest decomposition.
pub struct SosTable {
    field: Arc<QuadraticField>,
    trace_max: BigInt,
    roots: Vec<QuadInt>,
    /// element -> (element before the last square, index into `roots`)
    parent: HashMap<QuadInt, (QuadInt, usize)>,
}

impl SosTable {
    pub fn build(field: &Arc<QuadraticField>, trace_max: &BigInt) -> SosTable {
        let roots = roots_upto(field, trace_max);
        let square_traces: Vec<(QuadInt, BigInt)> = roots
            .iter()
            .map(|b| {
                let sq = b.square();
                let t = sq.trace();
                (sq, t)
            })
            .collect();
        let mut parent = HashMap::new();
        let mut frontier = vec![QuadInt::zero(field)];
        for _ in 0..MAX_SQUARES {
            let mut next = Vec::new();
            for e in &frontier {
                let budget = trace_max - e.trace();
                for (idx, (sq, t)) in square_traces.iter().enumerate() {
                    if t > &budget {
                        break;
                    }
                    let s = e + sq;
                    if !s.is_zero() && !parent.contains_key(&s) {
                        parent.insert(s.clone(), (e.clone(), idx));
                        next.push(s);
                    }
                }
            }
            frontier = next;
        }
        SosTable {
            field: Arc::clone(field),
            trace_max: trace_max.clone(),
            roots,
            parent,
        }
    }

    pub fn trace_max(&self) -> &BigInt {
        &self.trace_max
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Whether `ξ` (with trace within the table bound) is a sum of squares.
    pub fn contains(&self, xi: &QuadInt) -> bool {
        assert!(xi.trace() <= self.trace_max, "element outside table bound");
        self.parent.contains_key(xi)
    }

    pub fn decomposition(&self, xi: &QuadInt) -> Option<SquareDecomposition> {
        let mut parts = Vec::new();
        let mut cur = xi.clone();
        while !cur.is_zero() {
            let (prev, idx) = self.parent.get(&cur)?;
            parts.push(self.roots[*idx].clone());
            cur = prev.clone();
        }
        parts.sort_by_cached_key(|b| std::cmp::Reverse(b.square().trace()));
        Some(SquareDecomposition {
            parts,
            target: xi.clone(),
        })
    }

    pub fn field(&self) -> &Arc<QuadraticField> {
        &self.field
    }
}

/// `min Σ (a_i² + D·b_i²)` over non-negative integers with `Σ a_i·b_i = m`
/// (and `a_i ≡ b_i mod 2` when parity is required).
///
/// Pairs with `a_i·b_i = 0` only add cost, so the search runs over pairs with
/// `a, b >= 1`; `best[n]` is the optimum for total product `n`.
pub fn brute_force_lemma_min(m: u64, d: &BigInt, parity: Parity) -> BigInt {
    assert!(m >= 1);
    let m = m as usize;
    let mut best: Vec<Option<BigInt>> = vec![None; m + 1];
    best[0] = Some(BigInt::zero());
    for n in 1..=m {
        let mut current: Option<BigInt> = None;
        for a in 1..=n {
            for b in 1..=n / a {
                if parity == Parity::Required && (a + b) % 2 != 0 {
                    continue;
                }
                let Some(prev) = &best[n - a * b] else { continue };
                let cost = BigInt::from(a * a) + d * BigInt::from(b * b) + prev;
                if current.as_ref().is_none_or(|c| &cost < c) {
                    current = Some(cost);
                }
            }
        }
        best[n] = current;
    }
    best[m].clone().expect("(1,1) pairs always reach m")
}

/// One-line description of an element for mismatch reports.
pub fn describe(xi: &QuadInt) -> String {
    format!("{} (trace {}, norm {})", xi, xi.trace(), xi.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peters;

    fn field(d: i64) -> Arc<QuadraticField> {
        QuadraticField::new(&BigInt::from(d)).unwrap()
    }

    #[test]
    fn sos_examples() {
        let f2 = field(2);
        let dec = brute_force_sos(&QuadInt::from_int(2, &f2)).unwrap().unwrap();
        assert!(dec.verify());
        // 2 = (√2)²
        assert_eq!(dec.parts, vec![QuadInt::new(0, 1, &f2)]);

        let f5 = field(5);
        let dec = brute_force_sos(&QuadInt::new(1, 1, &f5)).unwrap().unwrap();
        assert!(dec.verify());
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].square(), QuadInt::new(1, 1, &f5));

        let f3 = field(3);
        assert_eq!(brute_force_sos(&QuadInt::new(3, 1, &f3)).unwrap(), None);
    }

    #[test]
    fn sos_rejects_non_totally_positive() {
        let f = field(2);
        assert_eq!(brute_force_sos(&QuadInt::new(1, 1, &f)), Err(Error::NotTotallyPositive));
    }

    #[test]
    fn seven_needs_four_rational_squares() {
        let f = field(7);
        let dec = brute_force_sos(&QuadInt::from_int(7, &f)).unwrap().unwrap();
        assert!(dec.verify());
        assert!(dec.parts.len() <= 5);
    }

    #[test]
    fn dfs_table_and_peters_agree_small() {
        for d in [2i64, 3, 5, 6, 7, 10, 13, 14, 15, 17, 21] {
            let f = field(d);
            let t = BigInt::from(40);
            let table = SosTable::build(&f, &t);
            for xi in totally_positive_upto(&f, &t) {
                let dfs = brute_force_sos(&xi).unwrap();
                if let Some(dec) = &dfs {
                    assert!(dec.verify());
                }
                let tab = table.decomposition(&xi);
                if let Some(dec) = &tab {
                    assert!(dec.verify());
                }
                assert_eq!(dfs.is_some(), tab.is_some(), "D = {d}, ξ = {xi:?}");
                assert_eq!(dfs.is_some(), peters::representable(&xi).unwrap(), "D = {d}, ξ = {xi:?}");
            }
        }
    }

    #[test]
    fn enumerations_are_exact() {
        for d in [2i64, 5, 7, 13] {
            let f = field(d);
            let t = BigInt::from(30);
            let all = totally_positive_upto(&f, &t);
            // independent count over a box in ω-coordinates
            let mut count = 0;
            for x in -60i64..=60 {
                for y in -60i64..=60 {
                    let e = QuadInt::new(x, y, &f);
                    if e.is_totally_positive() && e.trace() <= t {
                        count += 1;
                        assert!(all.contains(&e));
                    }
                }
            }
            assert_eq!(count, all.len());
            let roots = roots_upto(&f, &t);
            let mut rc = 0;
            for x in -60i64..=60 {
                for y in -60i64..=60 {
                    let e = QuadInt::new(x, y, &f);
                    if !e.is_zero() && e.square().trace() <= t {
                        rc += 1;
                    }
                }
            }
            assert_eq!(2 * roots.len(), rc);
        }
    }

    #[test]
    fn lemma_min_examples() {
        assert_eq!(brute_force_lemma_min(1, &BigInt::from(5), Parity::None), BigInt::from(6));
        assert_eq!(brute_force_lemma_min(2, &BigInt::from(3), Parity::None), BigInt::from(7));
        // m = 5, D = 2: best is 15 (e.g. five copies of (1,1))
        assert_eq!(brute_force_lemma_min(5, &BigInt::from(2), Parity::None), BigInt::from(15));
        // m = 4 with parity: (3,1)+(1,1) costs 10 + 2D
        assert_eq!(brute_force_lemma_min(4, &BigInt::from(5), Parity::Required), BigInt::from(20));
    }

    #[test]
    fn odd_coefficient_never_representable() {
        for d in [2i64, 3, 6, 7] {
            let f = field(d);
            for xi in totally_positive_upto(&f, &BigInt::from(40)) {
                if num_integer::Integer::is_odd(xi.y()) {
                    assert_eq!(brute_force_sos(&xi).unwrap(), None);
                }
            }
        }
    }
}
