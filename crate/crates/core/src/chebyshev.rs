//! Floating-point evaluation of `T_N(x)` and `U_n(x)`.
//!
//! All kernels here perform every multiply and every add/subtract as a
//! separately rounded `f64` operation. Rust never contracts `a * b - c` into a
//! fused multiply-add on its own, and nothing in this module calls `mul_add`;
//! the rounding-error constants in [`crate::stability`] depend on that.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dyadic::bigint_to_f64;
use crate::error::{Error, Result};

/// The four evaluation strategies for `T_N(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// I: three-term recurrence `T_n = 2x T_{n-1} - T_{n-2}`.
    Recurrence,
    /// II: repeated doubling `R_n = 2 R_{n-1}^2 - 1`, for `N = 2^p`.
    Doubling,
    /// III: `cos(N arccos x)`.
    Trig,
    /// IV: Horner's scheme on the expanded monomial coefficients.
    Horner,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Recurrence,
        Algorithm::Doubling,
        Algorithm::Trig,
        Algorithm::Horner,
    ];

    /// Roman-numeral label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Recurrence => "I",
            Algorithm::Doubling => "II",
            Algorithm::Trig => "III",
            Algorithm::Horner => "IV",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Recurrence => "recurrence",
            Algorithm::Doubling => "doubling",
            Algorithm::Trig => "trig",
            Algorithm::Horner => "horner",
        }
    }

    /// Whether `degree` is a legal input for this algorithm.
    pub fn supports(self, degree: u32) -> bool {
        match self {
            Algorithm::Doubling => degree.is_power_of_two(),
            _ => true,
        }
    }

    /// Evaluates `T_degree(x)`. Horner regenerates its coefficients on every
    /// call; use [`Evaluator`] for repeated evaluation.
    pub fn evaluate(self, x: f64, degree: u32) -> Result<f64> {
        Evaluator::new(self, degree)?.eval(x)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" | "recurrence" | "three-term" => Ok(Algorithm::Recurrence),
            "ii" | "2" | "doubling" | "fast" => Ok(Algorithm::Doubling),
            "iii" | "3" | "trig" | "trigonometric" => Ok(Algorithm::Trig),
            "iv" | "4" | "horner" => Ok(Algorithm::Horner),
            other => Err(format!(
                "unknown algorithm '{other}' (expected I, II, III or IV)"
            )),
        }
    }
}

/// Three-term recurrence for `T_n(x)`.
pub fn eval_recurrence(x: f64, n: u32) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            // doubling is exact in binary, so 2x carries no rounding
            let two_x = 2.0 * x;
            let (mut prev, mut cur) = (1.0, x);
            for _ in 2..=n {
                let next = two_x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Computes `T_{2^p}(x)` by squaring: `R_0 = x`, `R_k = 2 R_{k-1}^2 - 1`.
pub fn eval_doubling(x: f64, p: u32) -> f64 {
    let mut r = x;
    for _ in 0..p {
        r = 2.0 * (r * r) - 1.0;
    }
    r
}

/// `cos(N arccos x)` through the platform's libm.
pub fn eval_trig(x: f64, n: u32) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(x));
    }
    Ok((n as f64 * x.acos()).cos())
}

/// Same recurrence as [`eval_recurrence`] with `U_0 = 1`, `U_1 = 2x`.
pub fn eval_second_kind(x: f64, n: u32) -> f64 {
    let two_x = 2.0 * x;
    match n {
        0 => 1.0,
        1 => two_x,
        _ => {
            let (mut prev, mut cur) = (1.0, two_x);
            for _ in 2..=n {
                let next = two_x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Exact integer coefficients `a_0 .. a_N` of `T_N(x) = Σ a_k x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientVector {
    coeffs: Vec<BigInt>,
}

impl CoefficientVector {
    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Coefficients indexed by power of `x`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    /// Round-to-nearest-even conversion; magnitudes beyond `f64::MAX`
    /// become infinite.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(bigint_to_f64).collect()
    }
}

/// Runs the recurrence on integer coefficient vectors:
/// `c^(n) = 2 · shift(c^(n-1)) - c^(n-2)`.
pub fn expanded_coefficients(n: u32) -> CoefficientVector {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return CoefficientVector { coeffs: prev };
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 2..=n {
        let mut next = Vec::with_capacity(cur.len() + 1);
        next.push(-&prev[0]);
        for k in 1..=cur.len() {
            let mut v: BigInt = cur[k - 1].clone() << 1usize;
            if let Some(p) = prev.get(k) {
                v -= p;
            }
            next.push(v);
        }
        prev = cur;
        cur = next;
    }
    CoefficientVector { coeffs: cur }
}

/// Horner's scheme on rounded coefficients.
pub fn eval_horner(c: &CoefficientVector, x: f64) -> f64 {
    horner(&c.to_f64(), x)
}

/// Horner's scheme, `b <- b·x + a_k` from the top coefficient down. Non-finite
/// values propagate.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut iter = coeffs.iter().rev();
    let Some(&top) = iter.next() else {
        return 0.0;
    };
    iter.fold(top, |b, &a| b * x + a)
}

/// Zeros of `T_n`: `cos((2i-1)π / 2n)` for `i = 1..=n`, largest first.
pub fn roots_first_kind(n: u32) -> Vec<f64> {
    let denom = 2.0 * n as f64;
    (1..=n)
        .map(|i| ((2 * i - 1) as f64 * PI / denom).cos())
        .collect()
}

/// Interior extrema of `T_n`: `cos(iπ / n)` for `i = 1..n`, largest first.
/// `T_n` takes the value `(-1)^i` there.
pub fn extrema_points(n: u32) -> Vec<f64> {
    (1..n).map(|i| (i as f64 * PI / n as f64).cos()).collect()
}

#[derive(Debug, Clone)]
enum Prepared {
    Recurrence,
    Doubling { p: u32 },
    Trig,
    Horner(Vec<f64>),
}

/// One algorithm bound to one degree, with any per-degree setup done up front.
#[derive(Debug, Clone)]
pub struct Evaluator {
    algorithm: Algorithm,
    degree: u32,
    prepared: Prepared,
}

impl Evaluator {
    pub fn new(algorithm: Algorithm, degree: u32) -> Result<Self> {
        let prepared = match algorithm {
            Algorithm::Recurrence => Prepared::Recurrence,
            Algorithm::Doubling => {
                if !degree.is_power_of_two() {
                    return Err(Error::NotPowerOfTwo(degree));
                }
                Prepared::Doubling {
                    p: degree.trailing_zeros(),
                }
            }
            Algorithm::Trig => Prepared::Trig,
            Algorithm::Horner => Prepared::Horner(expanded_coefficients(degree).to_f64()),
        };
        Ok(Evaluator {
            algorithm,
            degree,
            prepared,
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(match &self.prepared {
            Prepared::Recurrence => eval_recurrence(x, self.degree),
            Prepared::Doubling { p } => eval_doubling(x, *p),
            Prepared::Trig => eval_trig(x, self.degree)?,
            Prepared::Horner(c) => horner(c, x),
        })
    }
}
