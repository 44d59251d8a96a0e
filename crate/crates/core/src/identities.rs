//! Randomized exact-arithmetic checks of the classical Chebyshev identities
//! and of the lower bounds on `C_n(x)`. Shipped in the library so the CLI's
//! `selftest` can run them without a test harness.
//!
//! Every comparison here is exact: values are [`Dyadic`] and the sample points
//! are floats, which are dyadic.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chebyshev::{
    eval_recurrence, eval_second_kind, expanded_coefficients, horner, CoefficientVector,
};
use crate::dyadic::Dyadic;
use crate::exact::DyadicEval;
use crate::stability::{threshold_s, within_threshold};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sample sizes for [`run_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSizes {
    pub pell_max_degree: u32,
    pub pell_samples: usize,
    pub composition_max: u32,
    pub composition_samples: usize,
    pub doubling_max: u32,
    pub doubling_samples: usize,
    pub coefficient_max_degree: u32,
    pub parity_samples: usize,
    pub parity_max_degree: u32,
    pub bounds_max_degree: u32,
    pub bounds_samples: usize,
    pub theorem_max_degree: u32,
    pub theorem_samples: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            pell_max_degree: 200,
            pell_samples: 3,
            composition_max: 8,
            composition_samples: 4,
            doubling_max: 100,
            doubling_samples: 3,
            coefficient_max_degree: 300,
            parity_samples: 10_000,
            parity_max_degree: 64,
            bounds_max_degree: 101,
            bounds_samples: 10,
            theorem_max_degree: 100,
            theorem_samples: 50,
        }
    }
}

fn dy(x: f64) -> Dyadic {
    Dyadic::from_f64(x).expect("finite sample")
}

fn unit_sample(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

/// `T_N² + (1 - x²) U_{N-1}² = 1` for `N = 1..=max_degree`.
pub fn pell_identity(rng: &mut impl Rng, max_degree: u32, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("pell identity");
    for n in 1..=max_degree {
        for _ in 0..samples {
            let x = unit_sample(rng);
            let e = DyadicEval::at_float(x, n).expect("finite");
            let xx = dy(x);
            let lhs = &(&e.t * &e.t) + &(&(&Dyadic::one() - &(&xx * &xx)) * &(&e.u * &e.u));
            out.check(lhs == Dyadic::one(), || {
                format!("N = {n}, x = {x}: residual {lhs}")
            });
        }
    }
    out
}

/// `T_{mn}(x) = T_m(T_n(x))` for `m, n = 1..=max`.
pub fn composition(rng: &mut impl Rng, max: u32, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("composition");
    for m in 1..=max {
        for n in 1..=max {
            for _ in 0..samples {
                let x = unit_sample(rng);
                let inner = DyadicEval::at_float(x, n).expect("finite").t;
                let nested = DyadicEval::new(inner, m).t;
                let direct = DyadicEval::at_float(x, m * n).expect("finite").t;
                out.check(nested == direct, || format!("m = {m}, n = {n}, x = {x}"));
            }
        }
    }
    out
}

/// `T_{2n}(x) = 2 T_n(x)² - 1`.
pub fn doubling_identity(rng: &mut impl Rng, max: u32, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("doubling identity");
    for n in 0..=max {
        for _ in 0..samples {
            let x = unit_sample(rng);
            let t = DyadicEval::at_float(x, n).expect("finite").t;
            let squared = &(&t * &t).mul_pow2(1) - &Dyadic::one();
            let direct = DyadicEval::at_float(x, 2 * n).expect("finite").t;
            out.check(squared == direct, || format!("n = {n}, x = {x}"));
        }
    }
    out
}

fn exact_horner(c: &CoefficientVector, x: &Dyadic) -> Dyadic {
    c.coeffs().iter().rev().fold(Dyadic::zero(), |acc, a| {
        &(&acc * x) + &Dyadic::from_integer(a.clone())
    })
}

/// Coefficient vectors generated independently per degree satisfy the
/// integer recurrence, have leading term `2^{N-1}`, vanish at powers of the
/// wrong parity, and agree with the exact recurrence as polynomials.
pub fn coefficient_recurrence(rng: &mut impl Rng, max_degree: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("coefficient recurrence");
    let mut older = expanded_coefficients(0);
    let mut old = expanded_coefficients(1);
    out.check(old.coeffs() == [BigInt::zero(), BigInt::one()], || {
        "T_1 != x".into()
    });
    for n in 2..=max_degree {
        let cur = expanded_coefficients(n);
        let c = cur.coeffs();
        out.check(c.len() == n as usize + 1, || {
            format!("N = {n}: length {}", c.len())
        });
        out.check(*cur.leading() == BigInt::one() << (n - 1) as usize, || {
            format!("N = {n}: leading coefficient {}", cur.leading())
        });
        let expected = (0..=n as usize).map(|k| {
            let shifted = if k >= 1 {
                old.coeffs().get(k - 1).cloned().unwrap_or_default() << 1usize
            } else {
                BigInt::zero()
            };
            shifted - older.coeffs().get(k).cloned().unwrap_or_default()
        });
        let recurrence_ok = expected.zip(c).all(|(e, a)| e == *a);
        out.check(recurrence_ok, || format!("N = {n}: recurrence broken"));
        let parity_ok = c
            .iter()
            .enumerate()
            .all(|(k, a)| (k as u32 + n).is_multiple_of(2) || a.is_zero());
        out.check(parity_ok, || {
            format!("N = {n}: nonzero coefficient of wrong parity")
        });
        if n % 25 == 0 {
            let x = unit_sample(rng);
            let via_coeffs = exact_horner(&cur, &dy(x));
            let via_recurrence = DyadicEval::at_float(x, n).expect("finite").t;
            out.check(via_coeffs == via_recurrence, || {
                format!("N = {n}: expansion differs at x = {x}")
            });
        }
        older = old;
        old = cur;
    }
    out
}

/// `f(-x) = (-1)^n f(x)` bit for bit for the recurrence, the second-kind
/// recurrence and Horner.
pub fn parity(rng: &mut impl Rng, samples: usize, max_degree: u32) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("parity");
    let coeffs: Vec<Vec<f64>> = (0..=max_degree)
        .map(|n| expanded_coefficients(n).to_f64())
        .collect();
    for i in 0..samples {
        let x = unit_sample(rng);
        let n = (i as u32) % (max_degree + 1);
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let same = |a: f64, b: f64| a.to_bits() == (sign * b).to_bits();
        let t = eval_recurrence(-x, n);
        out.check(same(t, eval_recurrence(x, n)), || {
            format!("T_{n} at x = {x}")
        });
        let u = eval_second_kind(-x, n);
        out.check(same(u, eval_second_kind(x, n)), || {
            format!("U_{n} at x = {x}")
        });
        let c = &coeffs[n as usize];
        out.check(same(horner(c, -x), horner(c, x)), || {
            format!("Horner T_{n} at x = {x}")
        });
    }
    out
}

/// `|T_n(x)| ≤ 1`, `|U_n(x)| ≤ n + 1` on `[-1, 1]`, and for odd degrees
/// `|T_{2m+1}(x)| ≤ (2m+1)|x|`, `|U_{2m+1}(x)| ≤ 2(m+1)|x|`.
pub fn magnitude_bounds(rng: &mut impl Rng, max_degree: u32, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("magnitude bounds");
    for n in 0..=max_degree {
        for _ in 0..samples {
            let x = unit_sample(rng);
            let xd = dy(x);
            // U_n is the U_{N-1} of degree N = n + 1
            let e = DyadicEval::at_float(x, n + 1).expect("finite");
            let t_n = DyadicEval::at_float(x, n).expect("finite").t;
            let u_n = e.u;
            out.check(t_n.abs() <= Dyadic::one(), || format!("|T_{n}({x})| > 1"));
            out.check(u_n.abs() <= Dyadic::from_integer(n + 1), || {
                format!("|U_{n}({x})| > n + 1")
            });
            if n % 2 == 1 {
                let half_up = (n + 1) as i64;
                out.check(t_n.abs() <= &Dyadic::from_integer(n) * &xd.abs(), || {
                    format!("|T_{n}({x})| > {n}|x|")
                });
                out.check(
                    u_n.abs() <= &Dyadic::from_integer(half_up) * &xd.abs(),
                    || format!("|U_{n}({x})| > {half_up}|x|"),
                );
            }
        }
    }
    out
}

fn sample_above_threshold(rng: &mut impl Rng, n: u32) -> f64 {
    let s = threshold_s(n);
    loop {
        let x: f64 = rng.gen_range(s..=1.0);
        if !within_threshold(&dy(x), n) {
            return x;
        }
    }
}

fn sample_below_threshold(rng: &mut impl Rng, n: u32) -> f64 {
    let s = threshold_s(n);
    loop {
        let x: f64 = rng.gen_range(0.0..=s);
        if within_threshold(&dy(x), n) {
            return x;
        }
    }
}

/// `C_n(x) ≥ 1` for `s_n ≤ x ≤ 1`.
pub fn condition_above_threshold(
    rng: &mut impl Rng,
    max_degree: u32,
    samples: usize,
) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("C_n >= 1 above s_n");
    for n in 1..=max_degree {
        for _ in 0..samples {
            let x = sample_above_threshold(rng, n);
            let c = DyadicEval::at_float(x, n).expect("finite").condition();
            out.check(c >= Dyadic::one(), || {
                format!("n = {n}, x = {x}: C = {}", c.to_f64())
            });
        }
    }
    out
}

/// `C_n(x) ≥ n x` for `0 ≤ x ≤ s_n`, and `C_n(x) ≥ 1` there when `n` is even.
pub fn condition_below_threshold(
    rng: &mut impl Rng,
    max_degree: u32,
    samples: usize,
) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("C_n >= n|x| (>= 1 for even n) below s_n");
    for n in 1..=max_degree {
        for _ in 0..samples {
            let x = sample_below_threshold(rng, n);
            let c = DyadicEval::at_float(x, n).expect("finite").condition();
            let nx = &Dyadic::from_integer(n) * &dy(x);
            out.check(c >= nx, || {
                format!("n = {n}, x = {x}: C = {} < n x", c.to_f64())
            });
            if n % 2 == 0 {
                out.check(c >= Dyadic::one(), || {
                    format!("n = {n}, x = {x}: C = {} < 1", c.to_f64())
                });
            }
        }
    }
    out
}

/// Runs every suite from one seed.
pub fn run_all(seed: u64, sizes: &SuiteSizes) -> Vec<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        pell_identity(&mut rng, sizes.pell_max_degree, sizes.pell_samples),
        composition(&mut rng, sizes.composition_max, sizes.composition_samples),
        doubling_identity(&mut rng, sizes.doubling_max, sizes.doubling_samples),
        coefficient_recurrence(&mut rng, sizes.coefficient_max_degree),
        parity(&mut rng, sizes.parity_samples, sizes.parity_max_degree),
        magnitude_bounds(&mut rng, sizes.bounds_max_degree, sizes.bounds_samples),
        condition_above_threshold(&mut rng, sizes.theorem_max_degree, sizes.theorem_samples),
        condition_below_threshold(&mut rng, sizes.theorem_max_degree, sizes.theorem_samples),
    ]
}
