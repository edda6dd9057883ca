use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use proptest::prelude::*;
use tauber_core::tauberian::{
    abs_polar, bound_check, e1_at_optimal_t, error_terms, finite_difference, gh_helpers,
    leading_coefficient, optimal_t, optimal_t_raw, polar_sum, riesz_mean, sandwich,
    smoothing_order, theta_exponent, theta_from_optimal_t, BoundMode, PolarTerm, SymbolicParams,
    TauberParams, MIN_T,
};
use tauber_core::ExactSandwich;

fn params(sigma_a: f64, delta: f64, eta: f64, beta: f64, b: u32) -> TauberParams {
    TauberParams {
        sigma_a,
        delta,
        t0: E,
        eta,
        eta_tilde: eta,
        beta,
        q: 1.0,
        b,
        sup_gamma: 0.0,
    }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn polar_examples() {
    let x = 1234.5;
    let c = 0.7;
    assert!(close(
        polar_sum(&[PolarTerm::real(1.0, &[c])], x).unwrap().re,
        c * x,
        1e-14
    ));
    assert_eq!(polar_sum(&[], x).unwrap(), Complex64::new(0.0, 0.0));
    let (c2, c3) = (0.25, 0.125);
    let c4 = [
        PolarTerm::real(0.5, &[c2]),
        PolarTerm::real(1.0 / 3.0, &[c3]),
    ];
    let v = polar_sum(&c4, x).unwrap().re;
    assert!(close(v, c2 * x.sqrt() + c3 * x.cbrt(), 1e-14));
    assert!(close(
        abs_polar(&[PolarTerm::real(0.5, &[-3.0])], x).unwrap(),
        3.0 * x.sqrt(),
        1e-14
    ));
    assert!(close(
        abs_polar(&c4, 1e12).unwrap(),
        polar_sum(&c4, 1e12).unwrap().norm(),
        1e-14
    ));
    let linear = [PolarTerm::real(1.0, &[-2.0, 1.0])];
    assert!(close(
        abs_polar(&linear, x).unwrap(),
        x * (x.ln() + 2.0),
        1e-14
    ));
    assert!(polar_sum(&c4, 0.5).is_err());
}

#[test]
fn leading_coefficient_examples() {
    assert_eq!(leading_coefficient(&[]), Complex64::new(1.0, 0.0));
    assert_eq!(leading_coefficient(&[PolarTerm::real(0.5, &[0.3])]).re, 0.3);
    let two = [
        PolarTerm::real(0.5, &[5.0]),
        PolarTerm::real(1.0 / 3.0, &[99.0]),
    ];
    assert_eq!(leading_coefficient(&two).re, 5.0);
}

#[test]
fn riesz_examples() {
    assert_eq!(
        riesz_mean(&[(rat(1, 1), rat(1, 1))], 2, &rat(3, 1)),
        rat(2, 1)
    );
    let jumps = [
        (rat(1, 1), rat(1, 1)),
        (rat(2, 1), rat(1, 1)),
        (rat(7, 2), rat(3, 1)),
    ];
    assert_eq!(riesz_mean(&jumps, 0, &rat(3, 1)), rat(2, 1));
    assert_eq!(riesz_mean(&jumps, 0, &rat(4, 1)), rat(5, 1));
    let two = [(rat(1, 1), rat(1, 1)), (rat(2, 1), rat(1, 1))];
    assert_eq!(riesz_mean(&two, 1, &rat(4, 1)), rat(5, 1));
}

#[test]
fn difference_examples() {
    let (x, y) = (rat(7, 3), rat(2, 5));
    let sq = |t: &BigRational| t * t;
    assert_eq!(
        finite_difference(sq, &y, 1, &x),
        rat(2, 1) * &x * &y + &y * &y
    );
    assert_eq!(finite_difference(sq, &y, 2, &x), rat(2, 1) * &y * &y);
    let cubic = |t: &BigRational| t * t * t - rat(4, 1) * t + rat(1, 1);
    assert_eq!(finite_difference(cubic, &y, 4, &x), rat(0, 1));
}

#[test]
fn smoothing_order_examples() {
    assert_eq!(smoothing_order(1.0, 1.0), 2);
    assert_eq!(smoothing_order(1.0, 5.0), 3);
    assert_eq!(smoothing_order(2.0, 2.0), 3);
}

#[test]
fn gh_examples() {
    assert_eq!(gh_helpers(1.0, 0.0, E).unwrap(), (1.0, 1.0));
    let (g, h) = gh_helpers(2.0, 0.0, E).unwrap();
    assert!(close(g, 1.0, 1e-15) && close(h, E, 1e-15));
    let (g, h) = gh_helpers(0.5, 0.0, E * E).unwrap();
    assert!(close(g, 2.0, 1e-15) && close(h, 2.0 / E, 1e-15));
    assert!(gh_helpers(1.0, 0.0, 1.0).is_err());
}

/// Error terms re-derived from the case tables.
fn e1_oracle(p: &TauberParams, x: f64, t: f64, r: f64) -> f64 {
    let k = [2.0, p.eta_tilde - 2.0, 3.0 * p.eta - 3.0]
        .iter()
        .cloned()
        .fold(f64::MIN, f64::max)
        .ceil();
    let kk = k.powf(k);
    let lt = t.ln();
    let d = p.delta;
    if p.eta < 1.0 {
        0.0
    } else if p.eta == 1.0 {
        x.powf(d) / t * r / x.powf(p.sigma_a)
            + (kk / lt + 2f64.powf(d + 1.0) * p.q) * lt.powf(p.beta + 1.0)
    } else {
        let xe = x.powf(d / p.eta);
        xe / t * r / x.powf(p.sigma_a)
            + (kk + 2f64.powf(d) * p.eta / (p.eta - 1.0) * p.q)
                * (t / xe).powf(p.eta - 1.0)
                * lt.powf(p.beta)
    }
}

#[test]
fn error_term_cases() {
    let mut below = params(1.0, 0.5, 0.5, 2.0, 1);
    below.sup_gamma = 0.375;
    assert_eq!(error_terms(&below, 100.0, 10.0, 3.0).unwrap(), (0.0, 0.375));

    let one = params(1.0, 0.5, 1.0, 0.0, 1);
    let (e1, e2) = error_terms(&one, E, 10.0, 2.0).unwrap();
    let lt = 10f64.ln();
    let direct = E.sqrt() / 10.0 * 2.0 / E + (4.0 / lt + 2f64.powf(1.5)) * lt;
    assert!(close(e1, direct, 1e-14));
    assert!(close(e1, e1_oracle(&one, E, 10.0, 2.0), 1e-14));
    assert!(close(e2, 1.0, 1e-14));

    let two = params(1.0, 0.5, 2.0, 0.0, 1);
    let (x, t, r) = (1e4, 50.0, 7.0);
    let (e1, e2) = error_terms(&two, x, t, r).unwrap();
    assert!(close(e1, e1_oracle(&two, x, t, r), 1e-14));
    let second = (27.0 + 2f64.sqrt() * 2.0) * (t / x.powf(0.25));
    assert!(close(e1 - x.powf(0.25) / t * r / x, second, 1e-13));
    assert!(close(e2, E, 1e-14));

    assert!(error_terms(&one, 2.0, 10.0, 1.0).is_err());
    assert!(error_terms(&one, 10.0, 5.0, 1.0).is_err());
}

#[test]
fn optimal_height_examples() {
    let x = E.powi(4);
    assert!(close(
        optimal_t_raw(&params(1.0, 0.5, 1.0, 0.0, 1), x).unwrap(),
        E * E,
        1e-14
    ));
    assert!(close(
        optimal_t(&params(1.0, 0.5, 1.0, 0.0, 1), x).unwrap(),
        E * E,
        1e-14
    ));
    let two = params(1.0, 0.5, 2.0, 0.0, 1);
    assert!(close(optimal_t_raw(&two, x).unwrap(), E, 1e-14));
    assert_eq!(optimal_t(&two, x).unwrap(), MIN_T);
    assert_eq!(
        optimal_t(&params(1.0, 0.1, 1.0, 0.0, 1), 10.0).unwrap(),
        MIN_T
    );
}

#[test]
fn theta_examples() {
    assert_eq!(theta_exponent(0.5, 3.0, 2), 0.0);
    assert_eq!(theta_exponent(1.0, 3.0, 1), 4.0);
    assert!(close(theta_exponent(2.0, 0.0, 2), 0.5, 1e-15));
}

fn symbolic(
    sigma_a: Ratio<i64>,
    delta: Ratio<i64>,
    eta: Ratio<i64>,
    beta: Ratio<i64>,
    b: i64,
) -> SymbolicParams {
    SymbolicParams {
        sigma_a,
        delta,
        eta,
        beta,
        b,
        q: 1.0,
        k: 2,
        rho: 1.0,
    }
}

#[test]
fn theta_matches_substitution() {
    let r = Ratio::new;
    for (s, d, beta, b) in [
        (r(1, 1), r(1, 2), r(0, 1), 1),
        (r(1, 2), r(1, 4), r(3, 1), 1),
        (r(1, 1), r(1, 3), r(5, 2), 2),
    ] {
        let p = symbolic(s, d, r(1, 1), beta, b);
        let theta = theta_from_optimal_t(&p).unwrap();
        assert_eq!(theta, beta + r(1, 1));
        let lead = e1_at_optimal_t(&p).unwrap().dominant().unwrap();
        assert_eq!(lead.x_power, r(0, 1));
    }
    for (beta, b) in [(r(0, 1), 2), (r(3, 1), 1), (r(1, 2), 3)] {
        let p = symbolic(r(1, 1), r(1, 2), r(2, 1), beta, b);
        let theta = theta_from_optimal_t(&p).unwrap();
        let numeric = theta_exponent(2.0, *beta.numer() as f64 / *beta.denom() as f64, b as u32);
        assert!(close(
            *theta.numer() as f64 / *theta.denom() as f64,
            numeric,
            1e-15
        ));
    }
}

#[test]
fn stationary_point_and_monotone_pieces() {
    let p = params(1.0, 0.5, 2.0, 1.0, 1);
    let (x, r) = (1e6f64, 1e9f64);
    let first = |t: f64| x.powf(p.delta / p.eta) / t * r / x.powf(p.sigma_a);
    let mut prev = (f64::INFINITY, 0.0);
    for i in 0..200 {
        let t = 6.0 * 1.05f64.powi(i);
        let (e1, _) = error_terms(&p, x, t, r).unwrap();
        let second = e1 - first(t);
        assert!(first(t) < prev.0);
        assert!(second > prev.1);
        prev = (first(t), second);
    }
    let samples: Vec<f64> = (0..400).map(|i| 6.0 * 1.02f64.powi(i)).collect();
    let values: Vec<f64> = samples
        .iter()
        .map(|&t| error_terms(&p, x, t, r).unwrap().0)
        .collect();
    let argmin = (0..values.len())
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap();
    assert!(argmin > 0 && argmin < values.len() - 1);
    for w in values[argmin..].windows(2) {
        assert!(w[1] >= w[0]);
    }
}

/// Squarefree counts below `n` from a sieve over square divisors.
fn squarefree_counts(n: usize) -> Vec<u32> {
    let mut sf = vec![true; n + 1];
    let mut d = 2;
    while d * d <= n {
        for m in (d * d..=n).step_by(d * d) {
            sf[m] = false;
        }
        d += 1;
    }
    let mut out = vec![0u32; n + 1];
    for m in 1..=n {
        out[m] = out[m - 1] + sf[m] as u32;
    }
    out
}

#[test]
fn squarefree_error_grows_like_square_root() {
    let counts = squarefree_counts(10_000_000);
    let xs: Vec<usize> = (0..=16)
        .map(|i| (1000.0 * 10f64.powf(i as f64 / 4.0)).round() as usize)
        .collect();
    let samples: Vec<(f64, f64)> = xs.iter().map(|&x| (x as f64, counts[x] as f64)).collect();
    let terms = [PolarTerm::real(1.0, &[6.0 / (PI * PI)])];
    let p = params(1.0, 0.5, 1.0, 1.0, 1);
    let report = bound_check(&samples, &terms, &p, BoundMode::Optimized, None).unwrap();
    assert!(report.slope <= 0.55, "{report:?}");
    assert!(report.c.is_finite() && report.c > 0.0);
    let un = bound_check(&samples, &terms, &p, BoundMode::Unoptimized, None).unwrap();
    assert!(un.c.is_finite() && un.slope == report.slope);
}

#[test]
fn exact_model_has_zero_constant() {
    let terms = [
        PolarTerm::real(0.5, &[0.8]),
        PolarTerm::real(1.0 / 3.0, &[-0.2]),
    ];
    let samples: Vec<(f64, f64)> = [1e3, 1e4, 1e5, 1e6]
        .iter()
        .map(|&x| (x, polar_sum(&terms, x).unwrap().re))
        .collect();
    let p = params(0.5, 0.25, 1.0, 3.0, 1);
    let report = bound_check(&samples, &terms, &p, BoundMode::Optimized, None).unwrap();
    assert!(report.c < 1e-12);
    assert!(bound_check(&samples[..2], &terms, &p, BoundMode::Optimized, None).is_err());
    assert!(bound_check(&[], &terms, &p, BoundMode::Optimized, None).is_err());
    assert!(bound_check(
        &[(2.0, 1.0), (1e3, 1.0)],
        &terms,
        &p,
        BoundMode::Optimized,
        None
    )
    .is_err());
}

fn jumps() -> impl Strategy<Value = Vec<(BigRational, BigRational)>> {
    prop::collection::vec((1i64..400, 1i64..8, 0i64..6), 0..12).prop_map(|v| {
        let mut out: Vec<(BigRational, BigRational)> = v
            .into_iter()
            .map(|(n, d, a)| (rat(n, d), rat(a, 1)))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.dedup_by(|a, b| a.0 == b.0);
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_sandwich(j in jumps(), k in 1u32..6, yn in 1i64..30, yd in 1i64..10, xn in 1i64..500) {
        let s: ExactSandwich = sandwich(&j, k, &rat(yn, yd), &rat(xn, 3)).unwrap();
        prop_assert!(s.holds(), "{s:?}");
    }

    #[test]
    fn binomial_identity(coeffs in prop::collection::vec(-5.0f64..5.0, 1..7), k in 1u32..6, x in -3.0f64..3.0, y in 0.05f64..2.0) {
        let f = |t: &f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
        // Iterate Delta_y by nesting closures over shifted evaluations.
        fn iterate(f: &dyn Fn(f64) -> f64, k: u32, y: f64, x: f64) -> f64 {
            if k == 0 { f(x) } else { iterate(f, k - 1, y, x + y) - iterate(f, k - 1, y, x) }
        }
        let nested = iterate(&|t| f(&t), k, y, x);
        let direct = finite_difference(f, &y, k, &x);
        let scale = coeffs.iter().map(|c| c.abs()).sum::<f64>() * (x.abs() + k as f64 * y + 1.0).powi(coeffs.len() as i32) * 2f64.powi(k as i32);
        prop_assert!((nested - direct).abs() <= 1e-10 * scale);
    }

    #[test]
    fn derivative_bridge(j in jumps(), yn in 1i64..30, xn in 1i64..500) {
        let (y, x) = (rat(yn, 4), rat(xn, 3));
        let bridge = finite_difference(|t| riesz_mean(&j, 1, t), &y, 1, &x) / &y;
        // Sliding average of A^0 over [x, x + y]: each jump counts for the
        // fraction of the window lying to its right.
        let end = &x + &y;
        let avg: BigRational = j.iter().map(|(l, a)| {
            if l <= &x { a.clone() } else if l < &end { a * (&end - l) / &y } else { rat(0, 1) }
        }).sum();
        prop_assert_eq!(bridge, avg);
    }
}
