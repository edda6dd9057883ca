use std::collections::BTreeMap;

use proptest::prelude::*;
use tauber_core::arith::{divisors, euler_phi, integer_root, is_prime, TruncPoly};
use tauber_core::fields::{count_fields, hom_count};
use tauber_core::series::{
    coefficient_sieve, etale_field_decomposition, hom_weights, summatory, tame_local_factor,
    wild_local_factor, zeta_factorization_check, LocalFactorSystem, WildSource, WildTable,
};

fn poly(c: &[i64]) -> Vec<i64> {
    c.to_vec()
}

fn derived(n: u64, p: u64) -> Vec<i64> {
    wild_local_factor(n, p, &WildSource::Derived)
        .unwrap()
        .to_i64_vec()
        .unwrap()
}

fn sieve(n: u64, x: u64) -> tauber_core::series::CoeffArray {
    coefficient_sieve(&LocalFactorSystem::new(n, &WildSource::Derived).unwrap(), x).unwrap()
}

/// Homomorphisms unramified outside `p` with discriminant exactly `p^k`.
fn homs_with_disc(n: u64, p: u64, k: u32) -> i64 {
    let x = p.pow(k);
    (hom_count(n, x).unwrap() - hom_count(n, x - 1).unwrap()) as i64
}

#[test]
fn tame_factor_examples() {
    assert_eq!(
        tame_local_factor(4, 5).unwrap().to_i64_vec().unwrap(),
        poly(&[1, 0, 1, 2])
    );
    assert_eq!(
        tame_local_factor(4, 13).unwrap().to_i64_vec().unwrap(),
        poly(&[1, 0, 1, 2])
    );
    assert_eq!(
        tame_local_factor(4, 3).unwrap().to_i64_vec().unwrap(),
        poly(&[1, 0, 1])
    );
    assert_eq!(
        tame_local_factor(4, 7).unwrap().to_i64_vec().unwrap(),
        poly(&[1, 0, 1])
    );
    assert_eq!(
        tame_local_factor(3, 5).unwrap().to_i64_vec().unwrap(),
        poly(&[1])
    );
    assert!(tame_local_factor(4, 2).is_err());
}

#[test]
fn published_c4_dyadic_factor() {
    let t = WildTable::published_c4();
    let f = t.get(4, 2).unwrap().to_i64_vec().unwrap();
    assert_eq!(f, poly(&[1, 0, 1, 0, 0, 0, 2, 0, 0, 0, 0, 4]));
}

#[test]
fn derived_wild_factors_are_frozen() {
    assert_eq!(derived(2, 2), poly(&[1, 0, 1, 2]));
    assert_eq!(derived(3, 3), poly(&[1, 0, 0, 0, 2]));
    assert_eq!(derived(4, 2), poly(&[1, 0, 0, 0, 1, 0, 2, 0, 0, 0, 0, 4]));
    assert_eq!(derived(5, 5), poly(&[1, 0, 0, 0, 0, 0, 0, 0, 4]));
    assert_eq!(derived(6, 2), poly(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 2]));
    assert_eq!(derived(6, 3), poly(&[1, 0, 0, 1, 0, 0, 0, 0, 2, 2]));
    let mut f9 = vec![0i64; 23];
    f9[0] = 1;
    f9[12] = 2;
    f9[22] = 6;
    assert_eq!(derived(9, 3), f9);
}

#[test]
fn wild_factors_match_enumerated_fields() {
    for (n, p) in [(2u64, 2u64), (3, 3), (4, 2), (5, 5), (6, 2), (6, 3), (8, 2)] {
        let f = derived(n, p);
        for k in 1..f.len() as u32 {
            assert_eq!(
                f[k as usize],
                homs_with_disc(n, p, k),
                "n = {n}, p = {p}, k = {k}"
            );
        }
    }
}

#[test]
fn table_parsing_and_missing_entries() {
    let t = WildTable::parse("# degree prime coefficients\n4 2 1 0 1 0 0 0 2 0 0 0 0 4\n").unwrap();
    assert_eq!(t, WildTable::published_c4());
    assert!(WildTable::parse("4 2 x").is_err());
    let strict = WildSource::Table {
        table: WildTable::new(),
        fallback: false,
    };
    assert!(matches!(
        wild_local_factor(4, 2, &strict),
        Err(tauber_core::Error::MissingWildFactor { .. })
    ));
    let lenient = WildSource::Table {
        table: WildTable::new(),
        fallback: true,
    };
    assert_eq!(
        wild_local_factor(4, 2, &lenient)
            .unwrap()
            .to_i64_vec()
            .unwrap(),
        derived(4, 2)
    );
}

#[test]
fn sieve_examples() {
    assert_eq!(sieve(3, 1).get(1), 1);
    let c = sieve(3, 49);
    assert_eq!(c.get(49), 2);
    assert!((2..49).all(|m| c.get(m) == 0));
    for p in [5u64, 13, 17, 29] {
        let c = sieve(4, p * p * p);
        assert_eq!(c.get(p * p), 1);
        assert_eq!(c.get(p * p * p), 2);
    }
}

#[test]
fn summatory_examples() {
    for n in [2u64, 3, 4, 6] {
        assert_eq!(summatory(&sieve(n, 1), 1).unwrap(), 1);
    }
    let c = sieve(3, 49);
    assert_eq!(summatory(&c, 48).unwrap(), 1);
    assert_eq!(summatory(&c, 49).unwrap(), 3);
}

#[test]
fn etale_decomposition_examples() {
    let ones = |n: u64| -> BTreeMap<u64, u64> { divisors(n).into_iter().map(|d| (d, 1)).collect() };
    for p in [2u64, 3, 5, 7] {
        let counts = BTreeMap::from([(p, 4u64)]);
        assert_eq!(
            etale_field_decomposition(p, &counts, &ones(p)).unwrap(),
            1 + 4
        );
        assert_eq!(
            etale_field_decomposition(p, &counts, &hom_weights(p)).unwrap(),
            1 + 4 * (p - 1)
        );
    }
    let c4 = BTreeMap::from([(2u64, 3u64), (4, 5)]);
    assert_eq!(
        etale_field_decomposition(4, &c4, &ones(4)).unwrap(),
        1 + 3 + 5
    );
    let c6 = BTreeMap::from([(2u64, 2u64), (3, 3), (6, 7)]);
    assert_eq!(
        etale_field_decomposition(6, &c6, &ones(6)).unwrap(),
        1 + 2 + 3 + 7
    );
    assert!(etale_field_decomposition(6, &c4, &ones(6)).is_err());
}

#[test]
fn factorization_residuals_vanish() {
    for n in [2u64, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16] {
        let r = zeta_factorization_check(n, 4 * n as usize + 8).unwrap();
        assert!(r.passed(), "n = {n}");
    }
}

#[test]
fn quadratic_factorization_by_hand() {
    // At an odd prime the n = 2 factor equals the local factor (1 - u^2)/(1 - u)
    // of zeta(s)/zeta(2s).
    let d = tame_local_factor(2, 7).unwrap();
    let zeta_ratio = TruncPoly::from_i64(&[1, 0, -1], 8)
        .mul(&TruncPoly::from_i64(&[1, 1, 1, 1, 1, 1, 1, 1, 1], 8));
    assert_eq!(d.with_trunc(8), zeta_ratio);
}

fn oracle_summatory(n: u64, x: u64) -> i64 {
    let mut counts = BTreeMap::new();
    for d in divisors(n).into_iter().filter(|&d| d > 1) {
        counts.insert(
            d,
            count_fields(d, integer_root(x, (n / d) as u32))
                .unwrap()
                .len() as u64,
        );
    }
    etale_field_decomposition(n, &counts, &hom_weights(n)).unwrap() as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coefficients_are_multiplicative(n in prop::sample::select(vec![2u64, 3, 4, 5, 6, 8, 12]), m1 in 1u64..300, m2 in 1u64..300) {
        prop_assume!(num_integer::gcd(m1, m2) == 1);
        let c = sieve(n, m1 * m2);
        prop_assert_eq!(c.get(1), 1);
        prop_assert_eq!(c.get(m1 * m2), c.get(m1) * c.get(m2));
    }

    #[test]
    fn summatory_matches_enumeration(n in prop::sample::select(vec![2u64, 3, 4, 5, 6, 7, 8]), x in 1u64..30_000) {
        let c = sieve(n, x);
        prop_assert_eq!(summatory(&c, x).unwrap(), oracle_summatory(n, x));
        prop_assert_eq!(summatory(&c, x).unwrap(), hom_count(n, x).unwrap() as i64);
    }

    #[test]
    fn tame_factors_have_unit_constant_term(n in 2u64..40, p in 2u64..500) {
        prop_assume!(is_prime(p) && n % p != 0);
        let f = tame_local_factor(n, p).unwrap().to_i64_vec().unwrap();
        prop_assert_eq!(f[0], 1);
        // Each tame homomorphism is determined by the image of inertia, of order d | gcd(n, p - 1).
        let g = num_integer::gcd(n, p - 1);
        let total: i64 = f.iter().sum();
        let expected: u64 = divisors(g).into_iter().map(euler_phi).sum();
        prop_assert_eq!(total as u64, expected);
    }
}
