//! Proven error bounds for the recurrence and doubling algorithms, and the
//! empirical backward-stability certificate.
//!
//! An algorithm is backward stable at `x` with constant `L` when
//! `|T̃_N(x) - T_N(x)| ≤ ε_M · L · C_N(x)`. Forward bounds `ε_M · L1` become
//! backward constants wherever `C_N(x) ≥ 1`, which holds for every even `N`
//! and for `|x| ≥ s_N`. For odd `N` below the threshold the forward bound has
//! the form `ε_M · L2 · |x|` and `C_N(x) ≥ N |x|`, giving `L = L2 / N`.

use rayon::prelude::*;

use crate::chebyshev::{Algorithm, Evaluator};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::exact::DyadicEval;

/// Relative slack on every proven bound, standing in for the neglected
/// `O(ε²)` terms.
pub const BOUND_SLACK: f64 = 1e-8;

/// `s_N = 1 / sqrt(N² + 1)`, the point separating the two regimes of the
/// lower bounds on `C_N`.
pub fn threshold_s(n: u32) -> f64 {
    let n = n as f64;
    1.0 / (n * n + 1.0).sqrt()
}

/// Exact test of `|x| ≤ s_N`, i.e. `x² (N² + 1) ≤ 1`.
pub fn within_threshold(x: &Dyadic, n: u32) -> bool {
    let n2p1 = Dyadic::from_integer(u64::from(n) * u64::from(n) + 1);
    &(x * x) * &n2p1 <= Dyadic::one()
}

/// Forward-error factor `3N(N-1)/2` of the recurrence, valid on `[-1, 1]`.
pub fn bound_alg1_global(n: u32) -> f64 {
    let n = n as f64;
    3.0 * n * (n - 1.0) / 2.0
}

/// Forward-error factor `9(N-1)/2` of the recurrence for `|x| ≤ s_N`.
pub fn bound_alg1_small_x(n: u32) -> f64 {
    9.0 * (n as f64 - 1.0) / 2.0
}

fn small_x_odd_factor(n: u32) -> f64 {
    let n = n as f64;
    5.0 * (n - 1.0) * (n + 7.0) / 8.0
}

/// Forward-error bound `5(N-1)(N+7)/8 · |x|` (in units of `ε_M`) of the
/// recurrence for odd `N ≥ 3` and `|x| ≤ s_N`.
pub fn bound_alg1_small_x_odd(n: u32, x: f64) -> Result<f64> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "small-x odd bound needs odd N >= 3, got {n}"
        )));
    }
    let xd = Dyadic::from_f64(x).ok_or(Error::NonFinite(x))?;
    if !within_threshold(&xd, n) {
        return Err(Error::Precondition(format!(
            "small-x odd bound needs |x| <= s_{n} = {}, got x = {x}",
            threshold_s(n)
        )));
    }
    Ok(small_x_odd_factor(n) * x.abs())
}

/// Forward-error factor `N²` of the doubling algorithm.
pub fn bound_alg2(n: u32) -> Result<f64> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let n = n as f64;
    Ok(n * n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `s_N ≤ |x| ≤ 1`
    LargeX,
    /// `|x| ≤ s_N`
    SmallX,
}

/// Turns a forward-error constant into a backward-stability constant.
///
/// `l1` is the constant of a bound `ε_M · L1`; `l2` the constant of a bound
/// `ε_M · L2 · |x|`, which is required for odd `N` in the small-x region.
pub fn backward_constant_from_forward(
    n: u32,
    region: Region,
    l1: f64,
    l2: Option<f64>,
) -> Result<f64> {
    if l1 < 0.0 {
        return Err(Error::Precondition(format!(
            "L1 must be nonnegative, got {l1}"
        )));
    }
    if n.is_multiple_of(2) || region == Region::LargeX {
        return Ok(l1);
    }
    match l2 {
        Some(l2) => Ok(l2 / n as f64),
        None => Err(Error::Precondition(format!(
            "odd N = {n} with |x| <= s_N needs the |x|-proportional constant L2"
        ))),
    }
}

/// Proven backward constant for `algorithm` over the given regions, if any.
pub fn theoretical_constant(
    algorithm: Algorithm,
    n: u32,
    touches_large: bool,
    touches_small: bool,
) -> Option<f64> {
    match algorithm {
        Algorithm::Recurrence => {
            if n < 2 {
                // T_0 and T_1 are returned without rounding
                return Some(0.0);
            }
            let mut l: f64 = 0.0;
            if touches_large {
                let c =
                    backward_constant_from_forward(n, Region::LargeX, bound_alg1_global(n), None);
                l = l.max(c.expect("valid constants"));
            }
            if touches_small {
                let c = backward_constant_from_forward(
                    n,
                    Region::SmallX,
                    bound_alg1_small_x(n),
                    Some(small_x_odd_factor(n)),
                );
                l = l.max(c.expect("valid constants"));
            }
            Some(l)
        }
        Algorithm::Doubling => bound_alg2(n).ok(),
        Algorithm::Trig | Algorithm::Horner => None,
    }
}

/// One evaluated point: the computed value and its exact errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSample {
    pub x: f64,
    pub computed: f64,
    /// `|T̃ - T| / ε_M`
    pub forward_eps: f64,
    /// `|T̃ - T| / (ε_M C_N(x))`
    pub backward: f64,
    pub small_x: bool,
}

impl PointSample {
    pub fn new(x: f64, oracle: &DyadicEval, computed: f64) -> Self {
        PointSample {
            x,
            computed,
            forward_eps: oracle.forward_error_in_eps(computed),
            backward: oracle.backward_constant(computed),
            small_x: within_threshold(&oracle.x, oracle.degree),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.computed.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityCertificate {
    pub algorithm: Algorithm,
    pub degree: u32,
    pub point_count: usize,
    /// Smallest `L` such that every tested point satisfies the backward bound.
    pub l_observed: f64,
    pub l_theoretical: Option<f64>,
    pub worst_point: f64,
    pub passed: bool,
}

/// Builds a certificate from already evaluated points. The first point
/// attaining the maximum is reported as the worst.
pub fn certify_samples(
    algorithm: Algorithm,
    degree: u32,
    samples: &[PointSample],
) -> Result<StabilityCertificate> {
    let first = samples
        .first()
        .ok_or_else(|| Error::Precondition("certification needs at least one point".into()))?;
    let (mut l_observed, mut worst_point) = (first.backward, first.x);
    for s in &samples[1..] {
        if s.backward > l_observed {
            l_observed = s.backward;
            worst_point = s.x;
        }
    }
    let touches_small = samples.iter().any(|s| s.small_x);
    let touches_large = samples.iter().any(|s| !s.small_x);
    let l_theoretical = theoretical_constant(algorithm, degree, touches_large, touches_small);
    let all_finite = samples.iter().all(PointSample::is_finite);
    let passed = all_finite
        && match l_theoretical {
            Some(l) => l_observed <= l * (1.0 + BOUND_SLACK),
            None => l_observed.is_finite(),
        };
    Ok(StabilityCertificate {
        algorithm,
        degree,
        point_count: samples.len(),
        l_observed,
        l_theoretical,
        worst_point,
        passed,
    })
}

/// Evaluates `algorithm` at every point and checks the backward bound
/// against the exact oracle.
pub fn certify(algorithm: Algorithm, degree: u32, points: &[f64]) -> Result<StabilityCertificate> {
    if let Some(&x) = points.iter().find(|x| !(-1.0..=1.0).contains(*x)) {
        return Err(Error::Precondition(format!(
            "point {x} lies outside [-1, 1]"
        )));
    }
    let evaluator = Evaluator::new(algorithm, degree)?;
    let samples = points
        .par_iter()
        .map(|&x| {
            let oracle = DyadicEval::at_float(x, degree)?;
            Ok(PointSample::new(x, &oracle, evaluator.eval(x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    certify_samples(algorithm, degree, &samples)
}
