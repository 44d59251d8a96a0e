//! Exact dyadic rationals `m · 2^e` and correctly rounded conversion to `f64`.
//!
//! Every finite `f64` is a dyadic rational, and the Chebyshev recurrences only
//! multiply, add and double, so an exact evaluation at a float never leaves this
//! set. Keeping the denominator as a bare exponent avoids the gcd work a general
//! rational type does on every operation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact value `mant · 2^exp`. The representation is not normalized;
/// equality and ordering are by value.
#[derive(Clone)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn zero() -> Self {
        Dyadic::new(BigInt::zero(), 0)
    }

    pub fn one() -> Self {
        Dyadic::new(BigInt::one(), 0)
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// The exact value of a finite float; `None` for NaN and infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mut m, mut e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        if m == 0 {
            return Some(Dyadic::zero());
        }
        let tz = m.trailing_zeros();
        m >>= tz;
        e += tz as i64;
        let mant = BigInt::from(m);
        Some(Dyadic::new(if negative { -mant } else { mant }, e))
    }

    /// The exact value of `v` when its denominator is a power of two.
    pub fn from_rational(v: &BigRational) -> Option<Self> {
        let den = v.denom().magnitude();
        if let Some(k) = pow2_exponent(den) {
            return Some(Dyadic::new(v.numer().clone(), -(k as i64)));
        }
        // A raw (unreduced) ratio can still be dyadic.
        let reduced = v.reduced();
        pow2_exponent(reduced.denom().magnitude())
            .map(|k| Dyadic::new(reduced.numer().clone(), -(k as i64)))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn abs(&self) -> Self {
        Dyadic::new(self.mant.abs(), self.exp)
    }

    /// Multiplication by `2^k`, always exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic::new(self.mant.clone(), self.exp + k)
    }

    /// Strips trailing zero bits from the mantissa.
    pub fn normalized(&self) -> Self {
        if self.mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        Dyadic::new(&self.mant >> tz, self.exp + tz as i64)
    }

    /// Nearest `f64`, ties to even; out-of-range magnitudes become infinite.
    pub fn to_f64(&self) -> f64 {
        let negative = self.mant.is_negative();
        round_ratio(negative, self.mant.magnitude(), &BigUint::one(), self.exp)
    }

    pub fn to_rational(&self) -> BigRational {
        let n = self.normalized();
        if n.exp >= 0 {
            BigRational::from_integer(n.mant << n.exp as usize)
        } else {
            // odd numerator over a power of two is already in lowest terms
            BigRational::new_raw(n.mant, BigInt::one() << (-n.exp) as usize)
        }
    }

    /// Exact `|self| / |other|` rounded to the nearest `f64`.
    /// Returns `+inf` when `other` is zero and `self` is not, `0` when both are.
    pub fn ratio_to_f64(&self, other: &Dyadic) -> f64 {
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        round_ratio(
            false,
            self.mant.magnitude(),
            other.mant.magnitude(),
            self.exp - other.exp,
        )
    }
}

fn pow2_exponent(v: &BigUint) -> Option<u64> {
    let tz = v.trailing_zeros()?;
    (v.bits() == tz + 1).then_some(tz)
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        match self.exp.cmp(&rhs.exp) {
            Ordering::Equal => Dyadic::new(&self.mant + &rhs.mant, self.exp),
            Ordering::Less => Dyadic::new(
                &self.mant + (&rhs.mant << (rhs.exp - self.exp) as usize),
                self.exp,
            ),
            Ordering::Greater => Dyadic::new(
                (&self.mant << (self.exp - rhs.exp) as usize) + &rhs.mant,
                rhs.exp,
            ),
        }
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul<&Dyadic> for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic::new(-&self.mant, self.exp)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic::new(-self.mant, self.exp)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a != b => sign_rank(a).cmp(&sign_rank(b)),
            (Sign::NoSign, _) => Ordering::Equal,
            _ => match (self - other).sign() {
                Sign::Minus => Ordering::Less,
                Sign::NoSign => Ordering::Equal,
                Sign::Plus => Ordering::Greater,
            },
        }
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        write!(f, "{}*2^{}", n.mant, n.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Nearest `f64` to an integer, ties to even.
pub fn bigint_to_f64(v: &BigInt) -> f64 {
    round_ratio(v.is_negative(), v.magnitude(), &BigUint::one(), 0)
}

/// Nearest `f64` to `±(num / den) · 2^scale`, ties to even, with gradual
/// underflow and overflow to infinity. `den` must be nonzero.
pub(crate) fn round_ratio(negative: bool, num: &BigUint, den: &BigUint, scale: i64) -> f64 {
    assert!(!den.is_zero(), "zero denominator");
    let signed = |v: f64| if negative { -v } else { v };
    if num.is_zero() {
        return 0.0;
    }

    // floor(log2(num / den)) is either bits(num) - bits(den) or one less.
    let mut e = num.bits() as i64 - den.bits() as i64;
    let at_least = if e >= 0 {
        *num >= den << e as usize
    } else {
        num << (-e) as usize >= *den
    };
    if !at_least {
        e -= 1;
    }
    let top = e.saturating_add(scale);
    if top > 1023 {
        return signed(f64::INFINITY);
    }
    let ulp_exp = (top - 52).max(-1074);

    // q = floor(num * 2^shift / den), plus where the dropped part sits
    // relative to one half.
    let shift = scale - ulp_exp;
    let (q, half_cmp) = if den.is_one() && shift < 0 {
        let s = (-shift) as u64;
        if s > num.bits() + 1 {
            (BigUint::zero(), Ordering::Less)
        } else {
            let q = num >> s as usize;
            let half_bit = num.bit(s - 1);
            let sticky = num.trailing_zeros().unwrap_or(0) < s - 1;
            let c = match (half_bit, sticky) {
                (false, _) => Ordering::Less,
                (true, false) => Ordering::Equal,
                (true, true) => Ordering::Greater,
            };
            (q, c)
        }
    } else {
        let (n2, d2) = if shift >= 0 {
            (num << shift as usize, den.clone())
        } else {
            (num.clone(), den << (-shift) as usize)
        };
        let (q, r) = n2.div_rem(&d2);
        let c = (r << 1usize).cmp(&d2);
        (q, c)
    };

    let mut m: u64 = q.try_into().expect("quotient fits in 54 bits");
    let round_up = match half_cmp {
        Ordering::Greater => true,
        Ordering::Equal => m & 1 == 1,
        Ordering::Less => false,
    };
    if round_up {
        m += 1;
    }
    let mut ue = ulp_exp;
    if m == 1u64 << 53 {
        m >>= 1;
        ue += 1;
    }
    if m == 0 {
        return signed(0.0);
    }
    let bits = if m < 1u64 << 52 {
        // subnormal: ue is pinned at -1074
        m
    } else {
        let biased = ue + 52 + 1023;
        if biased >= 2047 {
            return signed(f64::INFINITY);
        }
        ((biased as u64) << 52) | (m & ((1u64 << 52) - 1))
    };
    signed(f64::from_bits(bits))
}
