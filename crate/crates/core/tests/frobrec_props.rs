use dmod_core::frobrec::{
    classify_frobenius_bivariate, monomial_exponent_algebraic, monomial_exponent_sampled,
    recover_monomial_exponent, BivarPoly, FrobClassification,
};
use dmod_core::{ff_make, UPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn classification_round_trips() {
    for p in [2u64, 3, 5] {
        for k in 0..=4u32 {
            let xy = BivarPoly::x_frob_minus_y(p, k);
            let yx = BivarPoly::y_frob_minus_x(p, k);
            let got_xy = classify_frobenius_bivariate(&xy).unwrap();
            let got_yx = classify_frobenius_bivariate(&yx).unwrap();
            assert_eq!(got_xy, FrobClassification::XtoY(k), "p={p} k={k}");
            if p == 2 && k == 0 {
                // X − Y and Y − X coincide in characteristic 2.
                assert_eq!(got_yx.signed_exponent(), Some(0));
            } else {
                assert_eq!(got_yx, FrobClassification::YtoX(k), "p={p} k={k}");
            }
        }
    }
}

/// A random polynomial of bidegree ≤ (3, 3) over F_p.
fn random_bivar(rng: &mut ChaCha8Rng, p: u64) -> BivarPoly {
    let mut terms = Vec::new();
    for i in 0..=3u64 {
        for j in 0..=3u64 {
            if rng.gen_bool(0.4) {
                terms.push((rng.gen_range(1..p) as i64, i, j));
            }
        }
    }
    BivarPoly::from_terms(p, &terms)
}

#[test]
fn classification_is_sound_and_witnesses_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    while seen < 60 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let poly = random_bivar(&mut rng, p);
        if poly.deg_y().unwrap_or(0) == 0 || !poly.y_content().is_constant() {
            continue;
        }
        if !poly.is_irreducible().unwrap() {
            continue;
        }
        seen += 1;
        match classify_frobenius_bivariate(&poly).unwrap() {
            FrobClassification::NotFrobenius(w) => assert!(w.verify(&poly), "{poly:?}"),
            c => {
                let normal = c.polynomial(p).unwrap();
                assert_eq!(normal.normalized(), poly.normalized());
            }
        }
    }
}

#[test]
fn frobenius_digits_are_distinct() {
    // For Q = Y − X^{p^k} the constant-term exponent is n = p^k, a single base-p digit.
    for p in [2u64, 3, 5] {
        for k in 0..=3u32 {
            let q = BivarPoly::from_terms(p, &[(1, 0, 1), (-1, p.pow(k), 0)]);
            let cols = q.y_coeffs();
            let q0 = -&cols[0];
            let n = recover_monomial_exponent(&q0, &cols[1]).unwrap().unwrap();
            assert_eq!(n, p.pow(k) as i64);
            let digits: Vec<u64> = std::iter::successors(Some(n as u64), |&v| (v >= p).then(|| v / p))
                .map(|v| v % p)
                .collect();
            assert_eq!(digits.iter().sum::<u64>(), 1, "single digit for p={p} k={k}");
        }
    }
}

fn upoly(p: u64, coeffs: &[u64]) -> UPoly {
    UPoly::from_ints(&ff_make(p, 1, 0).unwrap(), coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn strip_round_trip(p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>(), n in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = random_bivar(&mut rng, p);
        prop_assume!(base.deg_y().unwrap_or(0) > 0);
        let poly = base.inflate_y(n);
        let (q, big_n) = poly.strip_p_powers().unwrap();
        prop_assert_eq!(q.inflate_y(big_n), poly);
        prop_assert!(!q.d_y().is_zero());
        prop_assert!(big_n >= n);
    }

    #[test]
    fn sampling_agrees_on_monomials(p in prop::sample::select(vec![2u64, 3, 5]), n in -10i64..=10, c in 1u64..5) {
        let c = c % p;
        prop_assume!(c != 0);
        let mono = |e: usize| {
            let mut v = vec![0; e + 1];
            v[e] = c;
            upoly(p, &v)
        };
        let (r1, r2) = if n >= 0 { (mono(n as usize), mono(0)) } else { (mono(0), mono((-n) as usize)) };
        prop_assert_eq!(monomial_exponent_algebraic(&r1, &r2).unwrap(), Some(n));
        prop_assert_eq!(monomial_exponent_sampled(&r1, &r2).unwrap(), Some(n));
        prop_assert_eq!(recover_monomial_exponent(&r1, &r2).unwrap(), Some(n));
    }

    #[test]
    fn sampling_agrees_on_non_monomials(
        p in prop::sample::select(vec![2u64, 3, 5]),
        a in prop::collection::vec(0u64..5, 1..6),
        b in prop::collection::vec(0u64..5, 1..6),
    ) {
        let (r1, r2) = (upoly(p, &a), upoly(p, &b));
        prop_assume!(!r2.is_zero() && !r1.is_zero());
        let g = r1.gcd(&r2);
        let (r1, r2) = (r1.div_exact(&g).unwrap(), r2.div_exact(&g).unwrap());
        let alg = monomial_exponent_algebraic(&r1, &r2).unwrap();
        prop_assume!(alg.is_none());
        prop_assert_eq!(monomial_exponent_sampled(&r1, &r2).unwrap(), None);
        prop_assert_eq!(recover_monomial_exponent(&r1, &r2).unwrap(), None);
    }
}
