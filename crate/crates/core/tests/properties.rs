use proptest::prelude::*;

use cheb_core::chebyshev::{
    eval_doubling, eval_recurrence, eval_second_kind, expanded_coefficients, horner,
};
use cheb_core::exact::{exact_t, float_of_rational, rational_of_float, DyadicEval};
use cheb_core::stability::{bound_alg1_global, bound_alg1_small_x, bound_alg2, threshold_s};
use cheb_core::sweep::sweep;
use cheb_core::{Algorithm, Dyadic, GridSpec};

fn unit() -> impl Strategy<Value = f64> {
    -1.0f64..=1.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parity_is_bit_exact(x in unit(), n in 0u32..80) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(eval_recurrence(-x, n).to_bits(), (sign * eval_recurrence(x, n)).to_bits());
        prop_assert_eq!(eval_second_kind(-x, n).to_bits(), (sign * eval_second_kind(x, n)).to_bits());
        let c = expanded_coefficients(n).to_f64();
        prop_assert_eq!(horner(&c, -x).to_bits(), (sign * horner(&c, x)).to_bits());
    }

    #[test]
    fn float_rational_round_trip(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let back = float_of_rational(&rational_of_float(x).unwrap());
        prop_assert!(back.to_bits() == x.to_bits() || (x == 0.0 && back == 0.0));
    }

    #[test]
    fn composition_up_to_sixteen(x in unit(), m in 1u32..=16, n in 1u32..=16) {
        let inner = DyadicEval::at_float(x, n).unwrap().t;
        let nested = DyadicEval::new(inner, m).t;
        prop_assert_eq!(nested, DyadicEval::at_float(x, m * n).unwrap().t);
    }

    #[test]
    fn recurrence_within_global_bound(x in unit(), n in 2u32..400) {
        let err = DyadicEval::at_float(x, n).unwrap().forward_error_in_eps(eval_recurrence(x, n));
        prop_assert!(err <= bound_alg1_global(n) * (1.0 + 1e-8));
        prop_assert!(eval_recurrence(x, n).abs() <= 1.0 + f64::EPSILON * bound_alg1_global(n));
    }

    #[test]
    fn recurrence_within_small_x_bound(t in -1.0f64..=1.0, n in 2u32..400) {
        let x = t * threshold_s(n) * (1.0 - 1e-15);
        let err = DyadicEval::at_float(x, n).unwrap().forward_error_in_eps(eval_recurrence(x, n));
        prop_assert!(err <= bound_alg1_small_x(n) * (1.0 + 1e-8));
    }

    #[test]
    fn doubling_within_bound(x in unit(), p in 0u32..=10) {
        let n = 1u32 << p;
        let err = DyadicEval::at_float(x, n).unwrap().forward_error_in_eps(eval_doubling(x, p));
        prop_assert!(err <= bound_alg2(n).unwrap() * (1.0 + 1e-8));
    }

    #[test]
    fn condition_is_even(x in unit(), n in 1u32..60) {
        let a = DyadicEval::at_float(x, n).unwrap().condition();
        let b = DyadicEval::at_float(-x, n).unwrap().condition();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exact_matches_expansion(x in unit(), n in 0u32..40) {
        let xr = rational_of_float(x).unwrap();
        let c = expanded_coefficients(n);
        let xd = Dyadic::from_f64(x).unwrap();
        let mut acc = Dyadic::zero();
        for a in c.coeffs().iter().rev() {
            acc = &(&acc * &xd) + &Dyadic::from_integer(a.clone());
        }
        prop_assert_eq!(acc.to_rational(), exact_t(&xr, n));
    }
}

#[test]
fn even_degree_condition_at_zero_is_one() {
    for m in 1..=40u32 {
        let c = DyadicEval::at_float(0.0, 2 * m).unwrap().condition();
        assert_eq!(c, Dyadic::one());
    }
}

#[test]
fn condition_is_one_at_extrema() {
    // The extrema are irrational, so only their float approximations are
    // checked. |x T_n'| grows like n² |x| / (1 - x²) per unit of x away from an
    // extremum, which dominates 100·n·ε near ±1.
    for n in [2u32, 5, 16, 33, 64] {
        let tol = 100.0 * n as f64 * f64::EPSILON;
        for (i, u) in cheb_core::chebyshev::extrema_points(n)
            .into_iter()
            .enumerate()
        {
            let sensitivity = (n * n) as f64 * u.abs() / (1.0 - u * u);
            let c_tol = tol.max(100.0 * sensitivity * f64::EPSILON);
            let c = DyadicEval::at_float(u, n).unwrap().condition().to_f64();
            assert!((c - 1.0).abs() <= c_tol, "n = {n}, i = {}: C = {c}", i + 1);
            let t = eval_recurrence(u, n);
            let expected = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((t - expected).abs() <= tol);
        }
    }
}

#[test]
fn e_n_ignores_grid_order_and_is_deterministic() {
    let fwd = GridSpec::with_step(-1.0, 1.0, 0.01).unwrap();
    let pts = fwd.points();
    let mut rev = pts.clone();
    rev.reverse();
    for alg in [Algorithm::Recurrence, Algorithm::Trig] {
        let a = cheb_core::stability::certify(alg, 37, &pts).unwrap();
        let b = cheb_core::stability::certify(alg, 37, &rev).unwrap();
        assert_eq!(a.l_observed, b.l_observed);
        let s1 = sweep(alg, 37, &fwd).unwrap();
        let s2 = sweep(alg, 37, &fwd).unwrap();
        assert_eq!(s1, s2);
        let e_rev = rev
            .iter()
            .map(|&x| {
                let v = alg.evaluate(x, 37).unwrap();
                DyadicEval::at_float(x, 37).unwrap().forward_error_in_eps(v)
            })
            .fold(0.0, f64::max);
        assert_eq!(s1.e_n, e_rev);
    }
}

#[test]
fn exact_eval_satisfies_pell_for_all_degrees() {
    let x = rational_of_float(std::f64::consts::FRAC_1_PI).unwrap();
    for n in 1..=200 {
        let e = cheb_core::exact::exact_t_and_u(&x, n);
        assert!(num_traits_one(&e.pell_residual()), "n = {n}");
    }
}

fn num_traits_one(v: &num_rational::BigRational) -> bool {
    *v.numer() == *v.denom()
}
