//! Exact real numbers of the form `(p + q·√r)/s` and closed intervals with
//! such endpoints. Comparisons never leave the integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// `(num + coef·√radicand) / den` with `den > 0` and `radicand >= 0`.
#[derive(Debug, Clone)]
pub struct Surd {
    num: BigInt,
    coef: BigInt,
    radicand: BigInt,
    den: BigInt,
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `e + f·√g`.
fn sign_one_root(e: &BigInt, f: &BigInt, g: &BigInt) -> i8 {
    let se = sign(e);
    let sf = if g.is_zero() { 0 } else { sign(f) };
    if sf == 0 {
        return se;
    }
    if se == 0 || se == sf {
        return sf;
    }
    match (e * e).cmp(&(f * f * g)) {
        Ordering::Greater => se,
        Ordering::Less => sf,
        Ordering::Equal => 0,
    }
}

/// Sign of `a + b·√x + c·√y`.
fn sign_two_roots(a: &BigInt, b: &BigInt, x: &BigInt, c: &BigInt, y: &BigInt) -> i8 {
    // w = b√x + c√y
    let bx = b * b * x;
    let cy = c * c * y;
    let s1 = if x.is_zero() { 0 } else { sign(b) };
    let s2 = if y.is_zero() { 0 } else { sign(c) };
    let sw = if s1 == 0 {
        s2
    } else if s2 == 0 || s1 == s2 {
        s1
    } else {
        match bx.cmp(&cy) {
            Ordering::Greater => s1,
            Ordering::Less => s2,
            Ordering::Equal => 0,
        }
    };
    let sa = sign(a);
    if sw == 0 {
        return sa;
    }
    if sa == 0 || sa == sw {
        return sw;
    }
    // opposite signs: compare a² with w² = bx + cy + 2bc√(xy)
    let e = a * a - bx - cy;
    let bc: BigInt = b * c;
    let f: BigInt = -(bc * BigInt::from(2));
    match sign_one_root(&e, &f, &(x * y)) {
        1 => sa,
        -1 => sw,
        _ => 0,
    }
}

impl Surd {
    pub fn new(num: BigInt, coef: BigInt, radicand: BigInt, den: BigInt) -> Surd {
        assert!(!den.is_zero(), "zero denominator");
        assert!(!radicand.is_negative(), "negative radicand");
        let (mut num, mut coef, mut den) = if den.is_negative() {
            (-num, -coef, -den)
        } else {
            (num, coef, den)
        };
        let radicand = if coef.is_zero() { BigInt::zero() } else { radicand };
        let g = num.gcd(&coef).gcd(&den);
        if g > BigInt::from(1) {
            num /= &g;
            coef /= &g;
            den /= &g;
        }
        Surd { num, coef, radicand, den }
    }

    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Surd {
        Surd::new(num.into(), BigInt::zero(), BigInt::zero(), den.into())
    }

    pub fn integer(n: impl Into<BigInt>) -> Surd {
        Surd::rational(n, 1)
    }

    /// `√n`.
    pub fn sqrt(n: impl Into<BigInt>) -> Surd {
        Surd::new(BigInt::zero(), BigInt::from(1), n.into(), BigInt::from(1))
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn coef(&self) -> &BigInt {
        &self.coef
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    /// Exact comparison.
    pub fn compare(&self, other: &Surd) -> Ordering {
        let a = &self.num * &other.den - &other.num * &self.den;
        let b = &self.coef * &other.den;
        let c = -(&other.coef * &self.den);
        match sign_two_roots(&a, &b, &self.radicand, &c, &other.radicand) {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        (f(&self.num) + f(&self.coef) * f(&self.radicand).sqrt()) / f(&self.den)
    }

    /// `⌊self · scale⌋`, exactly.
    pub fn floor_scaled(&self, scale: &BigInt) -> BigInt {
        // ⌊(p·k + q·k·√r)/s⌋ via ⌊q·k·√r⌋ = ±isqrt(q²k²r) with sign fix
        let qk = &self.coef * scale;
        let root = crate::integer::isqrt(&(&qk * &qk * &self.radicand));
        let root_floor = if qk.is_negative() {
            if &root * &root == &qk * &qk * &self.radicand {
                -root
            } else {
                -root - 1
            }
        } else {
            root
        };
        // ⌊(A + x)/s⌋ = ⌊(A + ⌊x⌋)/s⌋ for integer A and s > 0
        (&self.num * scale + root_floor).div_floor(&self.den)
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = BigInt::from(1);
        let top = if self.coef.is_zero() {
            self.num.to_string()
        } else {
            let root = if self.coef == one {
                format!("sqrt({})", self.radicand)
            } else if self.coef == -&one {
                format!("-sqrt({})", self.radicand)
            } else {
                format!("{}*sqrt({})", self.coef, self.radicand)
            };
            if self.num.is_zero() {
                root
            } else if self.coef.is_negative() {
                format!("{} - {}", self.num, root.trim_start_matches('-'))
            } else {
                format!("{} + {}", self.num, root)
            }
        };
        if self.den == one {
            write!(f, "{top}")
        } else if self.coef.is_zero() {
            write!(f, "{top}/{}", self.den)
        } else {
            write!(f, "({top})/{}", self.den)
        }
    }
}

/// Right endpoint of an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Upper {
    Finite(Surd),
    Infinity,
}

/// The quantity an interval constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    D,
    SqrtD,
}

/// Closed interval `[lo, hi]` over `D` or `√D`, possibly with an
/// applicability guard `D >= min_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalQ {
    pub lo: Surd,
    pub hi: Upper,
    pub variable: Variable,
    pub min_d: Option<BigInt>,
}

impl IntervalQ {
    pub fn new(lo: Surd, hi: Upper, variable: Variable) -> IntervalQ {
        IntervalQ { lo, hi, variable, min_d: None }
    }

    pub fn with_min_d(mut self, min_d: BigInt) -> IntervalQ {
        self.min_d = Some(min_d);
        self
    }

    pub fn is_empty(&self) -> bool {
        match &self.hi {
            Upper::Infinity => false,
            Upper::Finite(hi) => &self.lo > hi,
        }
    }

    /// Membership of a value of the interval's variable.
    pub fn contains(&self, x: &Surd) -> bool {
        if x < &self.lo {
            return false;
        }
        match &self.hi {
            Upper::Infinity => true,
            Upper::Finite(hi) => x <= hi,
        }
    }

    /// Whether the integer `d` is caught: `d` (or `√d`) lies in the interval
    /// and the guard, if any, holds.
    pub fn contains_d(&self, d: &BigInt) -> bool {
        if self.min_d.as_ref().is_some_and(|min| d < min) {
            return false;
        }
        let x = match self.variable {
            Variable::D => Surd::integer(d.clone()),
            Variable::SqrtD => Surd::sqrt(d.clone()),
        };
        self.contains(&x)
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.variable {
            Variable::D => "D",
            Variable::SqrtD => "sqrt(D)",
        };
        match &self.hi {
            Upper::Infinity => write!(f, "{var} in [{}, inf)", self.lo),
            Upper::Finite(hi) => write!(f, "{var} in [{}, {}]", self.lo, hi),
        }
    }
}
