//! Exact reference values of `T_N`, `U_{N-1}` and the condition quantity
//! `C_N(x) = |T_N(x)| + N |x U_{N-1}(x)|`.
//!
//! Inputs that are dyadic (every finite float) run the recurrences on
//! [`Dyadic`] values with no reduction step; other rationals fall back to
//! `BigRational` arithmetic.

use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dyadic::{round_ratio, Dyadic};
use crate::error::{Error, Result};

/// Machine precision used by every error statistic: `2^-52`.
pub const EPS_M: f64 = f64::EPSILON;

const EPS_M_LOG2: i64 = -52;

/// Exact `T_N(x)` together with `U_{N-1}(x)`.
///
/// For `N = 0` the convention `U_{-1} = 0` keeps this total. The pair satisfies
/// `T_N² + (1 - x²) U_{N-1}² = 1` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactEval {
    pub degree: u32,
    pub x: BigRational,
    pub t_value: BigRational,
    pub u_value: BigRational,
}

impl ExactEval {
    /// `T_N² + (1 - x²) U_{N-1}²`, which must be one.
    pub fn pell_residual(&self) -> BigRational {
        let one = BigRational::one();
        &self.t_value * &self.t_value + (&one - &self.x * &self.x) * &self.u_value * &self.u_value
    }
}

/// Runs `v_k = two_x · v_{k-1} - v_{k-2}` from `(v0, v1)` up to index `n`.
fn three_term<V>(two_x: &V, v0: V, v1: V, n: u32) -> V
where
    for<'a> &'a V: Mul<&'a V, Output = V> + Sub<&'a V, Output = V>,
{
    if n == 0 {
        return v0;
    }
    let (mut prev, mut cur) = (v0, v1);
    for _ in 1..n {
        let next = &(two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn t_and_u<V>(x: &V, n: u32, zero: V, one: V, two_x: V) -> (V, V)
where
    V: Clone,
    for<'a> &'a V: Mul<&'a V, Output = V> + Sub<&'a V, Output = V>,
{
    let t = three_term(&two_x, one.clone(), x.clone(), n);
    let u = match n {
        0 => zero,
        _ => three_term(&two_x, one, two_x.clone(), n - 1),
    };
    (t, u)
}

/// Exact values at a dyadic point, kept in unreduced form for the sweeps.
#[derive(Debug, Clone)]
pub struct DyadicEval {
    pub degree: u32,
    pub x: Dyadic,
    /// `T_N(x)`
    pub t: Dyadic,
    /// `U_{N-1}(x)`, zero for `N = 0`
    pub u: Dyadic,
}

impl DyadicEval {
    pub fn new(x: Dyadic, degree: u32) -> Self {
        let two_x = x.mul_pow2(1);
        let (t, u) = t_and_u(&x, degree, Dyadic::zero(), Dyadic::one(), two_x);
        DyadicEval { degree, x, t, u }
    }

    /// Exact evaluation at a finite float.
    pub fn at_float(x: f64, degree: u32) -> Result<Self> {
        let x = Dyadic::from_f64(x).ok_or(Error::NonFinite(x))?;
        Ok(DyadicEval::new(x, degree))
    }

    /// `|x · N · U_{N-1}(x)|`, which equals `|x T_N'(x)|`.
    pub fn derivative_term(&self) -> Dyadic {
        (&(&self.x * &self.u) * &Dyadic::from_integer(self.degree)).abs()
    }

    /// `C_N(x) = |T_N(x)| + |x T_N'(x)|`.
    pub fn condition(&self) -> Dyadic {
        &self.t.abs() + &self.derivative_term()
    }

    /// `computed - T_N(x)` exactly, or `None` when `computed` is not finite.
    pub fn error_of(&self, computed: f64) -> Option<Dyadic> {
        Dyadic::from_f64(computed).map(|c| &c - &self.t)
    }

    /// `|computed - T_N(x)| / ε_M`, rounded once. Non-finite input gives `+inf`.
    pub fn forward_error_in_eps(&self, computed: f64) -> f64 {
        match self.error_of(computed) {
            Some(e) => e.abs().mul_pow2(-EPS_M_LOG2).to_f64(),
            None => f64::INFINITY,
        }
    }

    /// Smallest `L` with `|computed - T_N(x)| ≤ ε_M · L · C_N(x)` at this point.
    ///
    /// Exact agreement contributes zero even where `C_N(x) = 0`; any
    /// disagreement there, or a non-finite `computed`, gives `+inf`.
    pub fn backward_constant(&self, computed: f64) -> f64 {
        match self.error_of(computed) {
            Some(e) => {
                let scaled = e.mul_pow2(-EPS_M_LOG2);
                scaled.ratio_to_f64(&self.condition())
            }
            None => f64::INFINITY,
        }
    }

    pub fn to_exact_eval(&self) -> ExactEval {
        ExactEval {
            degree: self.degree,
            x: self.x.to_rational(),
            t_value: self.t.to_rational(),
            u_value: self.u.to_rational(),
        }
    }
}

/// Exact `T_N(x)` and `U_{N-1}(x)`; `O(N)` big-number operations.
pub fn exact_t_and_u(x: &BigRational, n: u32) -> ExactEval {
    if let Some(d) = Dyadic::from_rational(x) {
        let mut eval = DyadicEval::new(d, n).to_exact_eval();
        eval.x = x.clone();
        return eval;
    }
    let two_x = x * BigRational::from_integer(BigInt::from(2));
    let (t_value, u_value) = t_and_u(x, n, BigRational::zero(), BigRational::one(), two_x);
    ExactEval {
        degree: n,
        x: x.clone(),
        t_value,
        u_value,
    }
}

/// Exact `T_N(x)`.
pub fn exact_t(x: &BigRational, n: u32) -> BigRational {
    exact_t_and_u(x, n).t_value
}

/// Exact `U_n(x)` through the second-kind recurrence.
pub fn exact_u(x: &BigRational, n: u32) -> BigRational {
    exact_t_and_u(x, n + 1).u_value
}

/// The two summands `(|T_N(x)|, |x · N · U_{N-1}(x)|)` of `C_N(x)`.
pub fn exact_condition(x: &BigRational, n: u32) -> (BigRational, BigRational) {
    let e = exact_t_and_u(x, n);
    let deriv = (x * &e.u_value * BigRational::from_integer(BigInt::from(n))).abs();
    (e.t_value.abs(), deriv)
}

/// Nearest `f64` to `v`, ties to even; overflow gives `±inf`.
pub fn float_of_rational(v: &BigRational) -> f64 {
    round_ratio(
        v.is_negative(),
        v.numer().magnitude(),
        v.denom().magnitude(),
        0,
    )
}

/// The exact value of a finite float.
pub fn rational_of_float(x: f64) -> Result<BigRational> {
    Dyadic::from_f64(x)
        .map(|d| d.to_rational())
        .ok_or(Error::NonFinite(x))
}

/// `|computed - exact| / ε_M`, evaluated exactly and rounded once.
/// A non-finite `computed` gives `+inf`.
pub fn forward_error_in_eps(computed: f64, exact: &BigRational) -> f64 {
    let Ok(c) = rational_of_float(computed) else {
        return f64::INFINITY;
    };
    let diff = (c - exact).abs();
    round_ratio(
        false,
        diff.numer().magnitude(),
        diff.denom().magnitude(),
        52,
    )
}
