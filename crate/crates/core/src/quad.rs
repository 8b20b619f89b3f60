//! Exact arithmetic in the ring of integers of a real quadratic field.
//!
//! Elements are stored in the integral basis `{1, ω}` where `ω = √D` for
//! `D ≡ 2, 3 (mod 4)` and `ω = (1 + √D)/2` for `D ≡ 1 (mod 4)`. Every sign
//! test reduces to comparisons of rational integers.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::integer::{is_squarefree, isqrt, mod4};

/// Which integral basis the field uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `D ≡ 2, 3 (mod 4)`, `ω = √D`.
    Sqrt,
    /// `D ≡ 1 (mod 4)`, `ω = (1 + √D)/2`.
    Half,
}

impl Basis {
    pub fn of(d: &BigInt) -> Basis {
        if mod4(d) == 1 {
            Basis::Half
        } else {
            Basis::Sqrt
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Basis::Sqrt => "2,3 mod 4",
            Basis::Half => "1 mod 4",
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct QuadraticField {
    d: BigInt,
    basis: Basis,
    sqrt_floor: BigInt,
}

impl QuadraticField {
    /// Field `Q(√d)` for squarefree `d >= 2`.
    pub fn new(d: &BigInt) -> Result<Arc<QuadraticField>> {
        if d < &BigInt::from(2) {
            return Err(Error::DTooSmall(d.clone()));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d.clone()));
        }
        Ok(Arc::new(QuadraticField {
            d: d.clone(),
            basis: Basis::of(d),
            sqrt_floor: isqrt(d),
        }))
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// `⌊√D⌋`.
    pub fn sqrt_floor(&self) -> &BigInt {
        &self.sqrt_floor
    }

    /// `(D - 1)/4`, the constant in `ω² = ω + (D - 1)/4`. Zero in the `√D` basis.
    fn omega_sq_const(&self) -> BigInt {
        match self.basis {
            Basis::Sqrt => BigInt::zero(),
            Basis::Half => (&self.d - 1) / 4,
        }
    }
}

/// An element `x + y·ω` of the ring of integers.
#[derive(Clone)]
pub struct QuadInt {
    x: BigInt,
    y: BigInt,
    field: Arc<QuadraticField>,
}

impl QuadInt {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, field: &Arc<QuadraticField>) -> Self {
        QuadInt {
            x: x.into(),
            y: y.into(),
            field: Arc::clone(field),
        }
    }

    pub fn from_int(x: impl Into<BigInt>, field: &Arc<QuadraticField>) -> Self {
        QuadInt::new(x, 0, field)
    }

    pub fn zero(field: &Arc<QuadraticField>) -> Self {
        QuadInt::new(0, 0, field)
    }

    /// Element with value `(u + v√D)/2`; `None` if that is not an algebraic integer.
    pub fn from_half_coords(u: &BigInt, v: &BigInt, field: &Arc<QuadraticField>) -> Option<Self> {
        match field.basis {
            Basis::Sqrt => {
                if u.is_odd() || v.is_odd() {
                    return None;
                }
                Some(QuadInt::new(u / 2, v / 2, field))
            }
            Basis::Half => {
                let diff = u - v;
                if diff.is_odd() {
                    return None;
                }
                Some(QuadInt::new(diff / 2, v.clone(), field))
            }
        }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn d(&self) -> &BigInt {
        &self.field.d
    }

    pub fn basis(&self) -> Basis {
        self.field.basis
    }

    pub fn field(&self) -> &Arc<QuadraticField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `(u, v)` with `self = (u + v√D)/2`.
    pub fn half_coords(&self) -> (BigInt, BigInt) {
        match self.field.basis {
            Basis::Sqrt => (&self.x * 2, &self.y * 2),
            Basis::Half => (&self.x * 2 + &self.y, self.y.clone()),
        }
    }

    fn check_same(&self, other: &QuadInt) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.d == other.field.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.d.clone(), other.field.d.clone()))
        }
    }

    pub fn checked_add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_same(other)?;
        Ok(QuadInt::new(&self.x + &other.x, &self.y + &other.y, &self.field))
    }

    pub fn checked_sub(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_same(other)?;
        Ok(QuadInt::new(&self.x - &other.x, &self.y - &other.y, &self.field))
    }

    pub fn checked_mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_same(other)?;
        let xx = &self.x * &other.x;
        let yy = &self.y * &other.y;
        let cross = &self.x * &other.y + &other.x * &self.y;
        let (x, y) = match self.field.basis {
            Basis::Sqrt => (xx + &yy * &self.field.d, cross),
            Basis::Half => (xx + &yy * self.field.omega_sq_const(), cross + yy),
        };
        Ok(QuadInt::new(x, y, &self.field))
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        QuadInt::new(&self.x * k, &self.y * k, &self.field)
    }

    pub fn square(&self) -> QuadInt {
        self.checked_mul(self).expect("same field")
    }

    pub fn pow(&self, mut e: u32) -> QuadInt {
        let mut base = self.clone();
        let mut acc = QuadInt::from_int(1, &self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Galois conjugate; `ω' = -ω` resp. `ω' = 1 - ω`.
    pub fn conjugate(&self) -> QuadInt {
        match self.field.basis {
            Basis::Sqrt => QuadInt::new(self.x.clone(), -&self.y, &self.field),
            Basis::Half => QuadInt::new(&self.x + &self.y, -&self.y, &self.field),
        }
    }

    pub fn norm(&self) -> BigInt {
        match self.field.basis {
            Basis::Sqrt => &self.x * &self.x - &self.y * &self.y * &self.field.d,
            Basis::Half => {
                let m = &self.x * 2 + &self.y;
                (&m * &m - &self.y * &self.y * &self.field.d) / 4
            }
        }
    }

    pub fn trace(&self) -> BigInt {
        match self.field.basis {
            Basis::Sqrt => &self.x * 2,
            Basis::Half => &self.x * 2 + &self.y,
        }
    }

    /// Both real embeddings strictly positive.
    ///
    /// With `self = (u + v√D)/2` this is `u > |v|·√D`, i.e. `u > 0` and `u² > v²D`.
    pub fn is_totally_positive(&self) -> bool {
        let (u, v) = self.half_coords();
        u.is_positive() && &u * &u > &v * &v * &self.field.d
    }

    /// Same predicate as [`QuadInt::is_totally_positive`], through trace and norm.
    pub fn is_totally_positive_by_norm_trace(&self) -> bool {
        self.trace().is_positive() && self.norm().is_positive()
    }

    /// `other - self` is zero or totally positive, i.e. `self ≼ other`.
    pub fn totally_le(&self, other: &QuadInt) -> bool {
        let diff = other - self;
        diff.is_zero() || diff.is_totally_positive()
    }

    /// Approximate value of the first embedding. Display only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (u, v) = self.half_coords();
        let d = self.field.d.to_f64().unwrap_or(f64::NAN);
        (u.to_f64().unwrap_or(f64::NAN) + v.to_f64().unwrap_or(f64::NAN) * d.sqrt()) / 2.0
    }
}

impl PartialEq for QuadInt {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y && self.field.d == other.field.d
    }
}

impl Eq for QuadInt {}

impl Hash for QuadInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadInt({}, {}; D={})", self.x, self.y, self.field.d)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = match self.field.basis {
            Basis::Sqrt => format!("sqrt({})", self.field.d),
            Basis::Half => format!("(1+sqrt({}))/2", self.field.d),
        };
        let coef = self.y.abs();
        let term = if coef.is_one() { gen } else { format!("{coef}*{gen}") };
        match (self.x.is_zero(), self.y.sign()) {
            (_, Sign::NoSign) => write!(f, "{}", self.x),
            (true, Sign::Plus) => write!(f, "{term}"),
            (true, Sign::Minus) => write!(f, "-{term}"),
            (false, Sign::Plus) => write!(f, "{} + {term}", self.x),
            (false, Sign::Minus) => write!(f, "{} - {term}", self.x),
        }
    }
}

// Operator impls panic on mismatched fields; use the checked_* methods when
// the operands may come from different fields.
impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        self.checked_add(rhs).expect("field mismatch in add")
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        self.checked_sub(rhs).expect("field mismatch in sub")
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        self.checked_mul(rhs).expect("field mismatch in mul")
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-&self.x, -&self.y, &self.field)
    }
}
