//! Continued fraction of `ω_D`, its convergents and the `α_i` sequence.
//!
//! The expansion runs the integer surd recurrence on states `(P + √D)/Q`.
//! The tail after `u_0` is purely periodic, so the period ends at the first
//! return to the state reached after `u_0`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::quad::{Basis, QuadInt, QuadraticField};

/// `ω_D = [u_0; u_1, ..., u_s]` with the bar over the period.
#[derive(Debug, Clone)]
pub struct CfExpansion {
    field: Arc<QuadraticField>,
    u0: BigInt,
    period: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct SurdState {
    p: BigInt,
    q: BigInt,
}

impl SurdState {
    fn start(field: &QuadraticField) -> SurdState {
        match field.basis() {
            Basis::Sqrt => SurdState { p: BigInt::zero(), q: BigInt::one() },
            Basis::Half => SurdState { p: BigInt::one(), q: BigInt::from(2) },
        }
    }

    /// Returns `⌊(P + √D)/Q⌋` and advances to the reciprocal of the fractional part.
    fn step(&mut self, d: &BigInt, sqrt_floor: &BigInt) -> BigInt {
        let a = if self.q.is_positive() {
            (&self.p + sqrt_floor).div_floor(&self.q)
        } else {
            // ⌊(P+√D)/Q⌋ = ⌊(-P-√D)/|Q|⌋ and ⌊-P-√D⌋ = -P-⌊√D⌋-1
            let num: BigInt = -&self.p - sqrt_floor - 1;
            num.div_floor(&-&self.q)
        };
        let p_next = &a * &self.q - &self.p;
        let q_next = (d - &p_next * &p_next) / &self.q;
        self.p = p_next;
        self.q = q_next;
        a
    }
}

impl CfExpansion {
    pub fn expand(d: &BigInt) -> Result<CfExpansion> {
        let field = QuadraticField::new(d)?;
        Ok(CfExpansion::of_field(&field))
    }

    pub fn of_field(field: &Arc<QuadraticField>) -> CfExpansion {
        let d = field.d();
        let sqrt_floor = field.sqrt_floor();
        let mut state = SurdState::start(field);
        let u0 = state.step(d, sqrt_floor);
        let first = state.clone();
        let mut period = Vec::new();
        loop {
            period.push(state.step(d, sqrt_floor));
            if state == first {
                break;
            }
        }
        CfExpansion {
            field: Arc::clone(field),
            u0,
            period,
        }
    }

    pub fn field(&self) -> &Arc<QuadraticField> {
        &self.field
    }

    pub fn d(&self) -> &BigInt {
        self.field.d()
    }

    pub fn u0(&self) -> &BigInt {
        &self.u0
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    /// Period length `s`.
    pub fn s(&self) -> usize {
        self.period.len()
    }

    /// Partial quotient `u_n` for any `n >= 0`.
    pub fn u(&self, n: usize) -> &BigInt {
        if n == 0 {
            &self.u0
        } else {
            &self.period[(n - 1) % self.period.len()]
        }
    }

    /// Eager `α_i` for `-1 <= i <= 2s-1` and convergents up to index `2s`.
    pub fn alphas(&self) -> AlphaSeq {
        let s = self.s();
        let last = 2 * s; // highest convergent index
        let mut p = Vec::with_capacity(last + 2);
        let mut q = Vec::with_capacity(last + 2);
        p.push(BigInt::one());
        q.push(BigInt::zero());
        p.push(self.u0.clone());
        q.push(BigInt::one());
        for n in 1..=last {
            let u = self.u(n);
            let pn = u * &p[n] + &p[n - 1];
            let qn = u * &q[n] + &q[n - 1];
            p.push(pn);
            q.push(qn);
        }
        let alpha = (0..2 * s + 1)
            .map(|k| alpha_from_convergent(&p[k], &q[k], &self.field))
            .collect();
        AlphaSeq {
            field: Arc::clone(&self.field),
            s,
            p,
            q,
            alpha,
        }
    }
}

/// `α = p - q·ω'` in `ω`-coordinates.
pub(crate) fn alpha_from_convergent(p: &BigInt, q: &BigInt, field: &Arc<QuadraticField>) -> QuadInt {
    match field.basis() {
        // ω' = -√D
        Basis::Sqrt => QuadInt::new(p.clone(), q.clone(), field),
        // ω' = 1 - ω
        Basis::Half => QuadInt::new(p - q, q.clone(), field),
    }
}

/// Convergents `p_i/q_i` and `α_i = p_i - q_i·ω'_D`, indexed from `i = -1`.
#[derive(Debug, Clone)]
pub struct AlphaSeq {
    field: Arc<QuadraticField>,
    s: usize,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    alpha: Vec<QuadInt>,
}

impl AlphaSeq {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn field(&self) -> &Arc<QuadraticField> {
        &self.field
    }

    /// `p_i` for `-1 <= i <= 2s`.
    pub fn p(&self, i: isize) -> &BigInt {
        &self.p[(i + 1) as usize]
    }

    pub fn q(&self, i: isize) -> &BigInt {
        &self.q[(i + 1) as usize]
    }

    /// `α_i` for `-1 <= i <= 2s-1`.
    pub fn alpha(&self, i: isize) -> &QuadInt {
        &self.alpha[(i + 1) as usize]
    }

    /// Highest index with a stored `α_i`.
    pub fn max_index(&self) -> isize {
        2 * self.s as isize - 1
    }

    /// `ε = α_{s-1}`.
    pub fn fundamental_unit(&self) -> &QuadInt {
        self.alpha(self.s as isize - 1)
    }

    /// `ε⁺`: `ε` when `s` is even, otherwise `ε² = α_{2s-1}`.
    pub fn totally_positive_unit(&self) -> &QuadInt {
        if self.s.is_multiple_of(2) {
            self.fundamental_unit()
        } else {
            self.alpha(2 * self.s as isize - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer::{is_squarefree, isqrt};
    use num_rational::BigRational;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn expand(d: i64) -> CfExpansion {
        CfExpansion::expand(&b(d)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| b(x)).collect()
    }

    /// Partial quotients of a rational lower approximation of ω_D, by Euclid.
    /// Precision `10^digits` keeps the first terms exact for small D.
    fn euclid_quotients(d: i64, digits: u32, count: usize) -> Vec<BigInt> {
        let scale = b(10).pow(digits);
        let root = isqrt(&(b(d) * &scale * &scale)); // ⌊√D·10^k⌋
        let num = match Basis::of(&b(d)) {
            Basis::Sqrt => root,
            Basis::Half => &scale + root,
        };
        let den = match Basis::of(&b(d)) {
            Basis::Sqrt => scale.clone(),
            Basis::Half => &scale * 2,
        };
        let mut x = BigRational::new(num, den);
        let mut out = Vec::new();
        for _ in 0..count {
            let a = x.floor().to_integer();
            out.push(a.clone());
            let frac = &x - BigRational::from_integer(a);
            x = frac.recip();
        }
        out
    }

    #[test]
    fn expand_examples() {
        let c = expand(2);
        assert_eq!((c.u0().clone(), c.period().to_vec()), (b(1), ints(&[2])));
        let c = expand(13);
        assert_eq!((c.u0().clone(), c.period().to_vec()), (b(2), ints(&[3])));
        let c = expand(15);
        assert_eq!((c.u0().clone(), c.period().to_vec()), (b(3), ints(&[1, 6])));
        let c = expand(5);
        assert_eq!((c.u0().clone(), c.period().to_vec()), (b(1), ints(&[1])));
    }

    #[test]
    fn expand_rejects_bad_d() {
        assert!(CfExpansion::expand(&b(18)).is_err());
        assert!(CfExpansion::expand(&b(1)).is_err());
    }

    #[test]
    fn expansion_matches_euclid_on_rational_approximation() {
        for d in 2..300i64 {
            if !is_squarefree(&b(d)) {
                continue;
            }
            let c = expand(d);
            let n = (2 * c.s() + 1).min(40);
            let reference = euclid_quotients(d, 120, n);
            let ours: Vec<BigInt> = (0..n).map(|k| c.u(k).clone()).collect();
            assert_eq!(ours, reference, "D = {d}");
        }
    }

    #[test]
    fn alphas_examples() {
        let a = expand(2).alphas();
        assert_eq!(a.alpha(-1).x(), &b(1));
        assert_eq!((a.alpha(0).x().clone(), a.alpha(0).y().clone()), (b(1), b(1)));

        let a = expand(5).alphas();
        assert_eq!((a.alpha(0).x().clone(), a.alpha(0).y().clone()), (b(0), b(1)));

        let a = expand(15).alphas();
        assert_eq!(a.p(1), &b(4));
        assert_eq!(a.q(1), &b(1));
        assert_eq!((a.alpha(1).x().clone(), a.alpha(1).y().clone()), (b(4), b(1)));
    }

    #[test]
    fn initial_conditions() {
        for d in [2i64, 5, 13, 94, 109] {
            let a = expand(d).alphas();
            assert_eq!(a.q(-1), &b(0));
            assert_eq!(a.p(-1), &b(1));
            assert_eq!(a.q(0), &b(1));
            assert_eq!(a.p(0), expand(d).u0());
        }
    }

    #[test]
    fn units() {
        let a = expand(2).alphas();
        let eps = a.fundamental_unit();
        assert_eq!((eps.x().clone(), eps.y().clone()), (b(1), b(1)));
        assert_eq!(eps.norm(), b(-1));
        let ep = a.totally_positive_unit();
        assert_eq!((ep.x().clone(), ep.y().clone()), (b(3), b(2)));

        let a = expand(13).alphas();
        let eps = a.fundamental_unit();
        assert_eq!((eps.x().clone(), eps.y().clone()), (b(1), b(1)));
        assert_eq!(eps.norm(), b(-1));

        let a = expand(15).alphas();
        let eps = a.fundamental_unit();
        assert_eq!((eps.x().clone(), eps.y().clone()), (b(4), b(1)));
        assert_eq!(eps.norm(), b(1));
        assert_eq!(a.totally_positive_unit(), eps);
    }

    #[test]
    fn structure_identities_small_d() {
        for d in 2..2000i64 {
            if !is_squarefree(&b(d)) {
                continue;
            }
            let c = expand(d);
            assert!(c.period().iter().all(|u| u >= &b(1)));
            let a = c.alphas();
            let s = a.s() as isize;
            for i in -1..2 * s {
                let det = a.p(i + 1) * a.q(i) - a.p(i) * a.q(i + 1);
                let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                assert_eq!(det, b(sign), "D = {d}, i = {i}");
            }
            let eps = a.fundamental_unit();
            assert!(eps.norm() == b(1) || eps.norm() == b(-1));
            for i in -1..s {
                assert_eq!(a.alpha(i + s), &(eps * a.alpha(i)), "D = {d}, i = {i}");
            }
            let ep = a.totally_positive_unit();
            assert!(ep.is_totally_positive());
            assert_eq!(ep.norm(), b(1));
        }
    }

    #[test]
    fn family_t_squared_minus_one() {
        for t in (2..=40i64).step_by(2) {
            let d = t * t - 1;
            if !is_squarefree(&b(d)) {
                continue;
            }
            let c = expand(d);
            assert_eq!(c.u0(), &b(t - 1));
            assert_eq!(c.period(), ints(&[1, 2 * (t - 1)]).as_slice(), "t = {t}");
        }
    }

    #[test]
    fn family_odd_square_minus_four() {
        for t in 2..=20i64 {
            let d = (2 * t + 1) * (2 * t + 1) - 4;
            if !is_squarefree(&b(d)) {
                continue;
            }
            let c = expand(d);
            assert_eq!(c.u0(), &b(t));
            assert_eq!(c.period(), ints(&[1, 2 * t - 1]).as_slice(), "t = {t}");
        }
    }
}
