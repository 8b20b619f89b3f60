//! Indecomposable totally positive integers up to conjugation and `ε²`.
//!
//! The representatives are `α_{i,r} = α_i + r·α_{i+1}` for odd `i` in
//! `[-1, 2s-3]` and `0 <= r < u_{i+2}`. They are produced lazily by running the
//! convergent recurrence on the `α_i` themselves, so a sweep that exits early
//! never materialises the tail of the sequence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cf::{alpha_from_convergent, AlphaSeq, CfExpansion};
use crate::quad::QuadInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indecomposable {
    /// Odd index `i`, `-1 <= i <= 2s-3`.
    pub i: isize,
    /// Offset `0 <= r <= u_{i+2} - 1`.
    pub r: BigInt,
    pub value: QuadInt,
}

/// Number of representatives, `Σ_{j=1..s} u_{2j-1}`.
pub fn count(cf: &CfExpansion) -> BigInt {
    (1..=cf.s()).map(|j| cf.u(2 * j - 1)).sum()
}

/// All representatives, ordered by `(i, r)`, using a precomputed `α` table.
pub fn enumerate(seq: &AlphaSeq, cf: &CfExpansion) -> Vec<Indecomposable> {
    let s = cf.s() as isize;
    let mut out = Vec::new();
    let mut i = -1isize;
    while i <= 2 * s - 3 {
        let step = seq.alpha(i + 1);
        let mut value = seq.alpha(i).clone();
        let limit = cf.u((i + 2) as usize);
        let mut r = BigInt::zero();
        while &r < limit {
            out.push(Indecomposable {
                i,
                r: r.clone(),
                value: value.clone(),
            });
            value = &value + step;
            r += 1;
        }
        i += 2;
    }
    out
}

/// Lazy version of [`enumerate`], same order.
pub fn stream(cf: &CfExpansion) -> Indecomposables<'_> {
    let field = cf.field();
    let alpha_i = QuadInt::from_int(1, field);
    let alpha_next = alpha_from_convergent(cf.u0(), &BigInt::one(), field);
    Indecomposables {
        cf,
        i: -1,
        r: BigInt::zero(),
        current: alpha_i,
        alpha_next,
        last_i: 2 * cf.s() as isize - 3,
    }
}

pub struct Indecomposables<'a> {
    cf: &'a CfExpansion,
    i: isize,
    r: BigInt,
    /// `α_i + r·α_{i+1}`
    current: QuadInt,
    alpha_next: QuadInt,
    last_i: isize,
}

impl Iterator for Indecomposables<'_> {
    type Item = Indecomposable;

    fn next(&mut self) -> Option<Indecomposable> {
        if self.i > self.last_i {
            return None;
        }
        let item = Indecomposable {
            i: self.i,
            r: self.r.clone(),
            value: self.current.clone(),
        };
        self.r += 1;
        self.current = &self.current + &self.alpha_next;
        if &self.r == self.cf.u((self.i + 2) as usize) {
            // current is now α_i + u_{i+2}·α_{i+1} = α_{i+2}
            let alpha_i2 = self.current.clone();
            let alpha_i3 = &self.alpha_next + &alpha_i2.scale(self.cf.u((self.i + 3) as usize));
            self.i += 2;
            self.r = BigInt::zero();
            self.alpha_next = alpha_i3;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer::is_squarefree;
    use num_traits::Signed;
    use std::collections::HashSet;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn cf(d: i64) -> CfExpansion {
        CfExpansion::expand(&b(d)).unwrap()
    }

    fn coords(list: &[Indecomposable]) -> Vec<(BigInt, BigInt)> {
        list.iter().map(|e| (e.value.x().clone(), e.value.y().clone())).collect()
    }

    #[test]
    fn enumerate_examples() {
        let c = cf(2);
        let list = enumerate(&c.alphas(), &c);
        assert_eq!(coords(&list), vec![(b(1), b(0)), (b(2), b(1))]);
        assert_eq!((list[1].i, list[1].r.clone()), (-1, b(1)));

        let c = cf(5);
        assert_eq!(coords(&enumerate(&c.alphas(), &c)), vec![(b(1), b(0))]);

        let c = cf(15);
        let list = enumerate(&c.alphas(), &c);
        assert_eq!(coords(&list), vec![(b(1), b(0)), (b(4), b(1))]);
        assert_eq!(list[1].i, 1);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(&cf(2)), b(2));
        assert_eq!(count(&cf(5)), b(1));
        assert_eq!(count(&cf(15)), b(2));
    }

    #[test]
    fn stream_equals_enumerate_and_count() {
        for d in 2..1500i64 {
            if !is_squarefree(&b(d)) {
                continue;
            }
            let c = cf(d);
            let eager = enumerate(&c.alphas(), &c);
            let lazy: Vec<_> = stream(&c).collect();
            assert_eq!(eager, lazy, "D = {d}");
            assert_eq!(BigInt::from(eager.len()), count(&c), "D = {d}");
            assert!(eager.iter().all(|e| e.value.is_totally_positive()), "D = {d}");
            assert!(eager.iter().all(|e| e.i % 2 != 0), "D = {d}");
        }
    }

    #[test]
    fn gluing_identity() {
        for d in 2..1500i64 {
            if !is_squarefree(&b(d)) {
                continue;
            }
            let c = cf(d);
            let a = c.alphas();
            let s = c.s() as isize;
            let mut i = -1;
            while i <= 2 * s - 3 {
                let glued = a.alpha(i) + &a.alpha(i + 1).scale(c.u((i + 2) as usize));
                assert_eq!(&glued, a.alpha(i + 2), "D = {d}, i = {i}");
                i += 2;
            }
        }
    }

    /// Totally positive elements with trace at most `max_trace`, by half coordinates.
    fn totally_positive_upto(c: &CfExpansion, max_trace: i64) -> Vec<QuadInt> {
        let f = c.field();
        let d = c.d().clone();
        let mut out = Vec::new();
        for u in 1..=max_trace {
            let mut vmax = 0i64;
            while b((vmax + 1) * (vmax + 1)) * &d < b(u * u) {
                vmax += 1;
            }
            for v in -vmax..=vmax {
                if let Some(e) = QuadInt::from_half_coords(&b(u), &b(v), f) {
                    if e.is_totally_positive() {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    fn is_indecomposable_brute(alpha: &QuadInt, pool: &[QuadInt]) -> bool {
        !pool.iter().any(|beta| {
            let rest = alpha - beta;
            rest.is_totally_positive()
        })
    }

    #[test]
    fn indecomposability_brute_force() {
        for d in [2i64, 3, 5, 6, 7, 10, 11, 13, 14, 15] {
            let c = cf(d);
            let reps = enumerate(&c.alphas(), &c);
            let bound = 80i64;
            let pool = totally_positive_upto(&c, bound);
            for rep in &reps {
                if rep.value.trace() <= b(bound) {
                    assert!(is_indecomposable_brute(&rep.value, &pool), "D = {d}, {:?}", rep.value);
                }
            }
            // Orbit of representatives under conjugation and powers of ε².
            let eps2 = c.alphas().fundamental_unit().square();
            let eps2_inv = eps2.conjugate(); // N(ε²) = 1
            let mut orbit: HashSet<QuadInt> = HashSet::new();
            for rep in &reps {
                for start in [rep.value.clone(), rep.value.conjugate()] {
                    let mut up = start.clone();
                    let mut down = start.clone();
                    for _ in 0..8 {
                        orbit.insert(up.clone());
                        orbit.insert(down.clone());
                        up = &up * &eps2;
                        down = &down * &eps2_inv;
                    }
                }
            }
            for gamma in &pool {
                let indec = is_indecomposable_brute(gamma, &pool);
                assert_eq!(indec, orbit.contains(gamma), "D = {d}, γ = {gamma:?}");
            }
            assert!(pool.iter().all(|g| !g.trace().is_negative()));
        }
    }
}
