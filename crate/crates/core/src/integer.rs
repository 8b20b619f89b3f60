//! Rational-integer helpers shared by every other module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

/// Floor of the square root, `r*r <= n < (r+1)*(r+1)`.
///
/// Panics on negative input.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative number {n}");
    n.sqrt()
}

/// Smallest `r` with `r*r >= n` (for `n >= 0`).
pub fn isqrt_ceil(n: &BigInt) -> BigInt {
    let r = isqrt(n);
    if &(&r * &r) == n {
        r
    } else {
        r + 1
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = isqrt(n);
    &(&r * &r) == n
}

/// Trial division up to `isqrt(n)`. Values below 2 are reported as not squarefree.
pub fn is_squarefree(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    match n.to_u64() {
        Some(v) => is_squarefree_u64(v),
        None => is_squarefree_big(n),
    }
}

fn is_squarefree_u64(mut n: u64) -> bool {
    if n.is_multiple_of(4) {
        return false;
    }
    if n.is_multiple_of(2) {
        n /= 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 2;
    }
    true
}

fn is_squarefree_big(n: &BigInt) -> bool {
    let mut n = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            n /= &p;
            if n.is_multiple_of(&p) {
                return false;
            }
        }
        p += if p == BigInt::from(2) { BigInt::one() } else { BigInt::from(2) };
    }
    true
}

/// `ceil(a / b)` for `b > 0`.
pub fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    -((-a).div_floor(b))
}

/// Residue of `d` modulo 4 in `0..4`.
pub fn mod4(d: &BigInt) -> u32 {
    d.mod_floor(&BigInt::from(4)).to_u32().unwrap_or(0)
}

pub fn is_odd(n: &BigInt) -> bool {
    n.is_odd()
}
