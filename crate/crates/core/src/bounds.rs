//! Analytic exclusion and sufficiency bounds in terms of `m` and `D`.
//!
//! * `I_t(m)`, `J_t(m)`: the ranges of `D` on which `x ↦ m²/x + x·D` is
//!   minimised at `x = t` over all positive integers resp. over integers of
//!   the parity of `m`.
//! * Single exclusion intervals `S(t, k)` for `√D`, with their applicability
//!   guards `D >= m` resp. `D >= 4m`.
//! * The grouped intervals with the constants `√40` and `√70`.
//! * The closed-form characterisations for `D = t² - 1` and `D = (2t+1)² - 4`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::integer::{div_ceil, isqrt, mod4};
use crate::quad::Basis;
use crate::surd::{IntervalQ, Surd, Upper, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// No constraint on the pairs `(a_i, b_i)`.
    None,
    /// `a_i ≡ b_i (mod 2)`.
    Required,
}

/// The three regimes with different bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `D ≡ 2, 3 (mod 4)`.
    Sqrt,
    /// `D ≡ 1 (mod 4)`, `m` even.
    HalfEvenM,
    /// `D ≡ 1 (mod 4)`, `m` odd.
    HalfOddM,
}

impl Case {
    pub fn of(m: &BigInt, d: &BigInt) -> Case {
        match (Basis::of(d), m.is_even()) {
            (Basis::Sqrt, _) => Case::Sqrt,
            (Basis::Half, true) => Case::HalfEvenM,
            (Basis::Half, false) => Case::HalfOddM,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Case::Sqrt => "D = 2,3 mod 4",
            Case::HalfEvenM => "D = 1 mod 4, m even",
            Case::HalfOddM => "D = 1 mod 4, m odd",
        }
    }

    pub fn matches(self, m: &BigInt, d: &BigInt) -> bool {
        Case::of(m, d) == self
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn b(v: u64) -> BigInt {
    BigInt::from(v)
}

/// `I_t(m)` as an interval over `D`.
pub fn interval_i(t: u64, m: &BigInt) -> IntervalQ {
    assert!(t >= 1);
    let m2 = m * m;
    if t == 1 {
        return IntervalQ::new(Surd::rational(m2, 2), Upper::Infinity, Variable::D);
    }
    IntervalQ::new(
        Surd::rational(m2.clone(), b(t * (t + 1))),
        Upper::Finite(Surd::rational(m2, b((t - 1) * t))),
        Variable::D,
    )
}

/// `J_t(m)` as an interval over `D`.
pub fn interval_j(t: u64, m: &BigInt) -> IntervalQ {
    assert!(t >= 1);
    let m2 = m * m;
    let lo = Surd::rational(m2.clone(), b(t * (t + 2)));
    if t <= 2 {
        return IntervalQ::new(lo, Upper::Infinity, Variable::D);
    }
    IntervalQ::new(lo, Upper::Finite(Surd::rational(m2, b((t - 2) * t))), Variable::D)
}

/// Minimiser of `m²/x + x·D` over admissible positive integers `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaBound {
    /// Smallest minimising `t`.
    pub t: u64,
    /// A second minimiser when `D` sits on the boundary between two ranges.
    pub tie: Option<u64>,
    /// `m²/t + t·D`.
    pub value: BigRational,
}

impl LemmaBound {
    pub fn minimizers(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(self.t).chain(self.tie)
    }
}

fn lemma_objective(m: &BigInt, d: &BigInt, x: u64) -> BigRational {
    BigRational::new(m * m, b(x)) + BigRational::from_integer(d * b(x))
}

/// Lower bound for `Σ a_i² + D·b_i²` under `Σ a_i·b_i = m`; with
/// [`Parity::Required`] the minimum runs over `t ≡ m (mod 2)`.
pub fn lemma_min(m: &BigInt, d: &BigInt, parity: Parity) -> LemmaBound {
    assert!(m.is_positive() && d.is_positive());
    // real minimiser is m/√D; ⌊m/√D⌋ = isqrt(⌊m²/D⌋)
    let center = isqrt(&(m * m / d)).to_u64().expect("t fits in u64");
    let m_odd = m.is_odd();
    let mut candidates: Vec<(u64, BigRational)> = (center.saturating_sub(2)..=center + 3)
        .filter(|&x| x >= 1)
        .filter(|&x| parity == Parity::None || (x % 2 == 1) == m_odd)
        .map(|x| (x, lemma_objective(m, d, x)))
        .collect();
    candidates.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    let (t, value) = candidates[0].clone();
    let tie = candidates.get(1).filter(|c| c.1 == value).map(|c| c.0);
    LemmaBound { t, tie, value }
}

/// Whether the bound at `t` is attained without parity constraint:
/// `t² / gcd(m, t)²` divides `t`.
pub fn lemma_bound_attained(m: &BigInt, t: u64) -> bool {
    assert!(t >= 1);
    let t = b(t);
    let g = m.gcd(&t);
    let reduced = &t / &g;
    t.is_multiple_of(&(&reduced * &reduced))
}

/// Attainment when `a_i ≡ b_i (mod 2)` is also required.
///
/// Equality forces `a_i = (m/t)·b_i` with `Σ b_i² = t`. With `g = gcd(m, t)`
/// that means `b_i = (t/g)·c_i`, `Σ c_i² = g²/t`, and `a_i ≡ b_i` needs either
/// `m/g ≡ t/g (mod 2)` or every `c_i` even.
pub fn lemma_bound_attained_with_parity(m: &BigInt, t: u64) -> bool {
    if !lemma_bound_attained(m, t) {
        return false;
    }
    let tb = b(t);
    let g = m.gcd(&tb);
    let same_parity = ((m / &g) - (&tb / &g)).is_even();
    same_parity || (&g * &g).is_multiple_of(&(tb * 4))
}

/// Exclusion interval `S(t, k)` for `√D`.
///
/// * `D ≡ 2, 3`: `[mk/(2t) + √(m/t), mk/(2(t-1)) - √(m/(t-1))]`, open to the
///   right for `t = 1`, guarded by `D >= m`.
/// * `D ≡ 1`: `[mk/t + 2√(m/t), mk/(t-2) - 2√(m/(t-2))]`, needs
///   `t ≡ mk (mod 2)`, open to the right for `t <= 2`, guarded by `D >= 4m`.
pub fn proposition_interval(t: u64, k: u64, m: &BigInt, basis: Basis) -> Result<IntervalQ> {
    if t == 0 {
        return Err(Error::BadT(BigInt::zero()));
    }
    if k == 0 {
        return Err(Error::BadK(BigInt::zero()));
    }
    let mk = m * b(k);
    match basis {
        Basis::Sqrt => {
            // mk/(2t) + √(mt)/t = (mk + 2√(mt)) / 2t
            let lo = Surd::new(mk.clone(), b(2), m * b(t), b(2 * t));
            let hi = if t == 1 {
                Upper::Infinity
            } else {
                let t1 = t - 1;
                Upper::Finite(Surd::new(mk, -b(2), m * b(t1), b(2 * t1)))
            };
            Ok(IntervalQ::new(lo, hi, Variable::SqrtD).with_min_d(m.clone()))
        }
        Basis::Half => {
            if (&mk - b(t)).is_odd() {
                return Err(Error::ParityViolation { t: b(t) });
            }
            let lo = Surd::new(mk.clone(), b(2), m * b(t), b(t));
            let hi = if t <= 2 {
                Upper::Infinity
            } else {
                let t2 = t - 2;
                Upper::Finite(Surd::new(mk, -b(2), m * b(t2), b(t2)))
            };
            Ok(IntervalQ::new(lo, hi, Variable::SqrtD).with_min_d(m * 4))
        }
    }
}

/// Threshold above which `S(t, k)` is non-empty, as a surd in `m`:
/// `4t(t-1)(2t-1+2√(t(t-1)))/k²` resp. `t(t-2)(2t-2+2√(t(t-2)))/k²`.
pub fn proposition_nonempty_threshold(t: u64, k: u64, basis: Basis) -> Surd {
    let (f, g) = match basis {
        Basis::Sqrt => (4 * t * (t - 1), t * (t - 1)),
        Basis::Half => (t * (t - 2), t * (t - 2)),
    };
    let lin = match basis {
        Basis::Sqrt => 2 * t - 1,
        Basis::Half => 2 * t - 2,
    };
    Surd::new(b(f * lin), b(2 * f), b(g), b(k * k))
}

/// Some `(t, k)` whose applicable `S(t, k)` contains `√d`, if any.
///
/// Only `t` within two of `mk/(2√d)` (resp. `mk/√d`) can work for a given `k`,
/// and non-emptiness caps `k` at roughly `d^{3/2}/m²`.
pub fn proposition_excludes(m: &BigInt, d: &BigInt) -> Option<(u64, u64)> {
    let basis = Basis::of(d);
    let d3 = d * d * d;
    let k_max = (isqrt(&d3) / (m * m)).to_u64().unwrap_or(u64::MAX - 4) + 4;
    let denom = match basis {
        Basis::Sqrt => d * 4,
        Basis::Half => d.clone(),
    };
    let fixed: &[u64] = match basis {
        Basis::Sqrt => &[1],
        Basis::Half => &[1, 2],
    };
    for k in 1..=k_max {
        let mk = m * b(k);
        let center = isqrt(&(&mk * &mk / &denom)).to_u64().unwrap_or(u64::MAX - 4);
        let near = center.saturating_sub(1).max(1)..=center + 3;
        for t in fixed.iter().copied().chain(near) {
            let Ok(interval) = proposition_interval(t, k, m, basis) else {
                continue;
            };
            if interval.contains_d(d) {
                return Some((t, k));
            }
        }
    }
    None
}

/// Head interval plus the non-empty grouped intervals for one case.
#[derive(Debug, Clone)]
pub struct ExclusionIntervals {
    pub m: BigInt,
    pub case: Case,
    pub head: IntervalQ,
    /// `(i, interval)` for every non-empty grouped interval.
    pub grouped: Vec<(u64, IntervalQ)>,
}

impl ExclusionIntervals {
    pub fn intervals(&self) -> impl Iterator<Item = &IntervalQ> {
        std::iter::once(&self.head).chain(self.grouped.iter().map(|(_, iv)| iv))
    }

    /// Whether `√d` falls in one of the intervals. The caller is responsible
    /// for `d` belonging to this case.
    pub fn excludes(&self, d: &BigInt) -> bool {
        self.intervals().any(|iv| iv.contains_d(d))
    }
}

/// The grouped exclusion intervals over `√D`:
///
/// ```text
/// D ≡ 2,3:          [m/2 + 4, ∞),  [m/(2i) + i√40,   m/(2(i-1)) - (i-1)√70],  i > 1
/// D ≡ 1, m even:    [m/2 + 8, ∞),  [m/(2i) + 2i√40,  m/(2(i-1)) - 2(i-1)√70], i > 1
/// D ≡ 1, m odd:     [m + 4, ∞),    [m/(2i+1) + (4i+2)√40, m/(2i-1) - (4i-2)√70], i > 0
/// ```
///
/// The width of the grouped intervals decreases in `i`, so generation stops
/// at the first empty one.
pub fn theorem2_intervals(m: &BigInt, case: Case) -> ExclusionIntervals {
    assert!(m.is_positive());
    let forty = b(40);
    let seventy = b(70);
    let head_lo = match case {
        Case::Sqrt => Surd::rational(m + 8, 2),
        Case::HalfEvenM => Surd::rational(m + 16, 2),
        Case::HalfOddM => Surd::integer(m + 4),
    };
    let head = IntervalQ::new(head_lo, Upper::Infinity, Variable::SqrtD);
    let mut grouped = Vec::new();
    let mut i: u64 = match case {
        Case::HalfOddM => 1,
        _ => 2,
    };
    loop {
        // lo = m/L + a√40, hi = m/H - c√70
        let (l, a, h, c) = match case {
            Case::Sqrt => (2 * i, i, 2 * (i - 1), i - 1),
            Case::HalfEvenM => (2 * i, 2 * i, 2 * (i - 1), 2 * (i - 1)),
            Case::HalfOddM => (2 * i + 1, 4 * i + 2, 2 * i - 1, 4 * i - 2),
        };
        let lo = Surd::new(m.clone(), b(a * l), forty.clone(), b(l));
        let hi = Surd::new(m.clone(), -b(c * h), seventy.clone(), b(h));
        let iv = IntervalQ::new(lo, Upper::Finite(hi), Variable::SqrtD);
        if iv.is_empty() {
            break;
        }
        grouped.push((i, iv));
        i += 1;
    }
    ExclusionIntervals {
        m: m.clone(),
        case,
        head,
        grouped,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorollaryPredicates {
    /// `D` at or beyond the head bound of its case.
    pub excluded_by_a_b_c: bool,
    /// `D <= m` (`D ≡ 2,3`, `m` even) or `D <= 2m` (`D ≡ 1`).
    pub sufficient_by_d: bool,
    /// `m` odd and `D ≡ 2, 3 (mod 4)`.
    pub excluded_by_e: bool,
}

pub fn corollary_predicates(m: &BigInt, d: &BigInt) -> CorollaryPredicates {
    let half = mod4(d) == 1;
    let m_even = m.is_even();
    let excluded_by_a_b_c = match (half, m_even) {
        // D >= (m/2 + 4)²  <=>  4D >= (m + 8)²
        (false, _) => d * 4 >= (m + 8) * (m + 8),
        (true, true) => d * 4 >= (m + 16) * (m + 16),
        (true, false) => d >= &((m + 4) * (m + 4)),
    };
    let sufficient_by_d = if half { d <= &(m * 2) } else { m_even && d <= m };
    CorollaryPredicates {
        excluded_by_a_b_c,
        sufficient_by_d,
        excluded_by_e: !half && !m_even,
    }
}

/// Whether some integer `k >= 0` satisfies `lo_num/lo_den <= k <= hi_num/hi_den`.
fn exists_k(lo_num: &BigInt, lo_den: &BigInt, hi_num: &BigInt, hi_den: &BigInt) -> bool {
    let k_lo = div_ceil(lo_num, lo_den).max(BigInt::zero());
    let k_hi = hi_num.div_floor(hi_den);
    k_lo <= k_hi
}

/// `D = t² - 1`, `t` even: all of `2m·O⁺` are sums of squares iff
/// `m = (t-1)k + l` with `k >= 0`, `0 <= l <= 2k`.
///
/// For fixed `k` this is `(t-1)k <= m <= (t+1)k`.
pub fn family_t2m1(t: &BigInt, m: &BigInt) -> Result<bool> {
    if t <= &BigInt::one() || t.is_odd() {
        return Err(Error::BadT(t.clone()));
    }
    if !m.is_positive() {
        return Err(Error::NonPositiveM(m.clone()));
    }
    Ok(exists_k(m, &(t + 1), m, &(t - 1)))
}

/// `D = (2t+1)² - 4`: all of `m·O⁺` are sums of squares iff `m = (4t-2)k + l`,
/// `k >= 0`, with
/// (a) `l` even, `0 <= l <= 8k`;
/// (b) `l` odd, `0 <= l <= 8k - 2t - 3`; or
/// (c) `l` odd, `2t - 1 <= l <= 8k + 2t + 3`.
pub fn family_odd_square_minus4(t: &BigInt, m: &BigInt) -> Result<bool> {
    if t <= &BigInt::one() {
        return Err(Error::BadT(t.clone()));
    }
    if !m.is_positive() {
        return Err(Error::NonPositiveM(m.clone()));
    }
    let step = t * 4 - 2; // 4t - 2
    let wide = t * 4 + 6; // 4t + 6, from l <= 8k
    let one = BigInt::one();
    if m.is_even() {
        return Ok(exists_k(m, &wide, m, &step));
    }
    let case_b = exists_k(&(m + t * 2 + 3), &wide, m, &step);
    let case_c = exists_k(&(m - t * 2 - 3), &wide, &(m - t * 2 + &one), &step);
    Ok(case_b || case_c)
}
