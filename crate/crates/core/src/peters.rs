//! Integer-only test of whether a totally positive element is a sum of squares.
//!
//! With `ξ = a + b·(1+√D)/2` (`D ≡ 1 mod 4`) resp. `ξ = a + 2b·√D`
//! (`D ≡ 2, 3 mod 4`), `ξ` is a sum of (five) squares iff some integer `c`
//! satisfies
//!
//! ```text
//! D ≡ 1:     |D·c - (2a + b)| <= 2·√N(ξ),  c ≡ b (mod 2)
//! D ≡ 2, 3:  |2D·c - a|       <=   √N(ξ)
//! ```
//!
//! Both sides are non-negative, so squaring gives exact integer tests.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::quad::{Basis, QuadInt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetersVerdict {
    pub representable: bool,
    /// The integer `c` found in the interval, when representable.
    pub certificate_c: Option<BigInt>,
}

impl PetersVerdict {
    fn no() -> Self {
        PetersVerdict { representable: false, certificate_c: None }
    }

    fn yes(c: BigInt) -> Self {
        PetersVerdict { representable: true, certificate_c: Some(c) }
    }
}

pub fn is_sum_of_squares(xi: &QuadInt) -> Result<PetersVerdict> {
    if !xi.is_totally_positive() {
        return Err(Error::NotTotallyPositive);
    }
    let d = xi.d();
    Ok(match xi.basis() {
        Basis::Sqrt => {
            // Squares have even √D-coefficient: (a + b√D)² = a² + Db² + 2ab√D.
            if xi.y().is_odd() {
                return Ok(PetersVerdict::no());
            }
            let a = xi.x();
            let norm = xi.norm();
            let two_d = d * 2;
            let r = a.mod_floor(&two_d);
            let base = (a - &r) / &two_d;
            let up = &two_d - &r;
            if &r * &r <= norm {
                PetersVerdict::yes(base)
            } else if &up * &up <= norm {
                PetersVerdict::yes(base + 1)
            } else {
                PetersVerdict::no()
            }
        }
        Basis::Half => {
            let b = xi.y();
            let m: BigInt = xi.x() * 2 + b;
            let four_norm = &m * &m - b * b * d;
            let c0 = m.div_floor(d);
            let hit = (-1..=2)
                .map(|k| &c0 + k)
                .filter(|c: &BigInt| (c - b).is_even())
                .find(|c| {
                    let gap = d * c - &m;
                    &gap * &gap <= four_norm
                });
            match hit {
                Some(c) => PetersVerdict::yes(c),
                None => PetersVerdict::no(),
            }
        }
    })
}

/// Shorthand for `is_sum_of_squares(xi)?.representable`.
pub fn representable(xi: &QuadInt) -> Result<bool> {
    Ok(is_sum_of_squares(xi)?.representable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadraticField;
    use num_traits::Signed;
    use std::sync::Arc;

    fn field(d: i64) -> Arc<QuadraticField> {
        QuadraticField::new(&BigInt::from(d)).unwrap()
    }

    fn verdict(x: i64, y: i64, d: i64) -> PetersVerdict {
        is_sum_of_squares(&QuadInt::new(x, y, &field(d))).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(verdict(1, 1, 5), PetersVerdict::yes(BigInt::from(1)));
        assert!(!verdict(16, 4, 14).representable);
        assert!(verdict(4, 2, 3).representable);
        assert!(!verdict(3, 1, 3).representable);
    }

    #[test]
    fn rejects_non_totally_positive() {
        let f = field(2);
        assert_eq!(
            is_sum_of_squares(&QuadInt::new(1, 1, &f)).unwrap_err(),
            Error::NotTotallyPositive
        );
        assert!(is_sum_of_squares(&QuadInt::zero(&f)).is_err());
    }

    #[test]
    fn certificate_satisfies_interval() {
        for d in [2i64, 3, 5, 6, 7, 13, 17, 21, 33] {
            let f = field(d);
            let db = BigInt::from(d);
            for x in -60i64..60 {
                for y in -30i64..30 {
                    let xi = QuadInt::new(x, y, &f);
                    if !xi.is_totally_positive() {
                        continue;
                    }
                    let v = is_sum_of_squares(&xi).unwrap();
                    assert_eq!(v.representable, v.certificate_c.is_some());
                    let Some(c) = v.certificate_c else { continue };
                    match xi.basis() {
                        Basis::Sqrt => {
                            let gap = &db * 2 * &c - xi.x();
                            assert!(&gap * &gap <= xi.norm());
                        }
                        Basis::Half => {
                            let m = xi.x() * 2 + xi.y();
                            let gap = &db * &c - &m;
                            assert!(&gap * &gap <= xi.norm() * 4);
                            assert!((&c - xi.y()).is_even());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn squares_and_sums_of_squares_pass() {
        for d in [2i64, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 21, 101] {
            let f = field(d);
            let mut squares = Vec::new();
            for x in -6i64..=6 {
                for y in -6i64..=6 {
                    let beta = QuadInt::new(x, y, &f);
                    if !beta.is_zero() {
                        squares.push(beta.square());
                    }
                }
            }
            for s in &squares {
                assert!(representable(s).unwrap(), "D = {d}, {s:?}");
            }
            for s in squares.iter().step_by(7) {
                for t in squares.iter().step_by(11) {
                    assert!(representable(&(s + t)).unwrap(), "D = {d}");
                }
            }
        }
    }

    #[test]
    fn scaling_by_squares_preserves_representability() {
        for d in [2i64, 3, 5, 7, 13, 21] {
            let f = field(d);
            for x in 1i64..40 {
                for y in -20i64..20 {
                    let xi = QuadInt::new(x, y, &f);
                    if !xi.is_totally_positive() || !representable(&xi).unwrap() {
                        continue;
                    }
                    for (sx, sy) in [(1i64, 1i64), (2, 1), (0, 1), (3, -1)] {
                        let sigma = QuadInt::new(sx, sy, &f).square();
                        assert!(representable(&(&xi * &sigma)).unwrap(), "D = {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn large_norm_suffices() {
        for d in [2i64, 3, 6, 7, 10, 5, 13, 17] {
            let f = field(d);
            let db = BigInt::from(d);
            for x in 1i64..200 {
                for y in -80i64..80 {
                    let xi = QuadInt::new(x, y, &f);
                    if !xi.is_totally_positive() {
                        continue;
                    }
                    let n = xi.norm();
                    let long_enough = match xi.basis() {
                        // interval length √N/D >= 1
                        Basis::Sqrt => y % 2 == 0 && n >= &db * &db,
                        // length 4√N/D >= 2, i.e. 4N >= D²
                        Basis::Half => &n * 4 >= &db * &db,
                    };
                    if long_enough {
                        assert!(representable(&xi).unwrap(), "D = {d}, {xi:?}");
                    }
                    assert!(!n.is_negative());
                }
            }
        }
    }
}
