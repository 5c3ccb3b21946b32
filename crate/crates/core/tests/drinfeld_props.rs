use dmod_core::drinfeld::{
    dm_char_torsion_dim, dm_frobenius_matrix, dm_frobenius_norm_auto, dm_torsion, DrinfeldModule,
};
use dmod_core::upoly::monic_irreducibles;
use dmod_core::{ff_make, ore_splitting, Error, FField, UPoly};
use proptest::prelude::*;

/// (p, [L:F_p], [F_q:F_p]).
const SHAPES: [(u64, usize, usize); 6] =
    [(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 4, 2), (5, 1, 1), (3, 1, 1)];

fn module(shape: usize, theta: u64, coeffs: &[u64]) -> DrinfeldModule {
    let (p, n, e) = SHAPES[shape];
    let l = ff_make(p, n, 0).unwrap();
    let fq = ff_make(p, e, 0).unwrap();
    let mut a: Vec<_> = coeffs.iter().map(|&c| l.from_index(c % l.order())).collect();
    if a.last().unwrap().is_zero() {
        *a.last_mut().unwrap() = l.one();
    }
    DrinfeldModule::new(&l, &fq, l.from_index(theta % l.order()), a, 0).unwrap()
}

fn apoly(fq: &FField, idxs: &[u64]) -> UPoly {
    UPoly::new(fq, idxs.iter().map(|&i| fq.from_index(i % fq.order())).collect())
}

fn module_strategy() -> impl Strategy<Value = DrinfeldModule> {
    (0usize..5, any::<u64>(), prop::collection::vec(any::<u64>(), 1..3))
        .prop_map(|(s, t, c)| module(s, t, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn phi_is_a_ring_map(
        m in module_strategy(),
        a in prop::collection::vec(any::<u64>(), 0..4),
        b in prop::collection::vec(any::<u64>(), 0..4),
    ) {
        let (a, b) = (apoly(m.fq(), &a), apoly(m.fq(), &b));
        prop_assert_eq!(m.phi(&(&a + &b)), &m.phi(&a) + &m.phi(&b));
        let ab = m.phi(&(&a * &b));
        prop_assert_eq!(&ab, &(&m.phi(&a) * &m.phi(&b)));
        prop_assert_eq!(&ab, &(&m.phi(&b) * &m.phi(&a)));
    }

    #[test]
    fn constant_term_degree_and_constants(
        m in module_strategy(),
        a in prop::collection::vec(any::<u64>(), 1..4),
        c in any::<u64>(),
    ) {
        let a = apoly(m.fq(), &a);
        let phi_a = m.phi(&a);
        prop_assert_eq!(phi_a.coeff(0), m.delta(&a));
        if let Some(d) = a.degree() {
            prop_assert_eq!(phi_a.degree(), Some(m.rank() * m.e() * d));
        }
        let c = m.fq().from_index(c % m.fq().order());
        let phi_c = m.phi(&UPoly::constant(c.clone()));
        prop_assert_eq!(phi_c.degree().unwrap_or(0), 0);
        prop_assert_eq!(phi_c.coeff(0), m.const_image(&c));
        prop_assert_eq!(m.const_image(&c), dmod_core::ff_embed(m.fq(), m.field()).unwrap().apply(&c).frob(m.twist_index() as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn torsion_has_q_to_the_r_deg_points(m in module_strategy(), a in prop::collection::vec(any::<u64>(), 2..4)) {
        let a = apoly(m.fq(), &a);
        prop_assume!(a.degree().unwrap_or(0) >= 1 && a.gcd(&m.characteristic()).is_one());
        let f = m.phi(&a);
        let split = match ore_splitting(&f, 12, 0) {
            Ok(s) => s,
            Err(Error::NotFound(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let expected = (m.q() as u128).pow((m.rank() * a.degree().unwrap()) as u32);
        prop_assert_eq!(split.kernel.cardinality(), expected);
    }
}

fn fixed_modules() -> Vec<DrinfeldModule> {
    vec![
        module(0, 2, &[1]),
        module(0, 2, &[1, 2]),
        module(1, 3, &[1, 1]),
        module(2, 2, &[1]),
        module(4, 2, &[1, 3]),
        module(0, 3, &[2, 1, 1]),
        module(5, 1, &[1, 1]),
    ]
}

#[test]
fn torsion_is_free_and_frobenius_commutes_with_t() {
    for m in fixed_modules() {
        let p_char = m.characteristic();
        let r = m.rank();
        let mut checked = 0;
        for k in 1..=2 {
            for ell in monic_irreducibles(m.fq(), k) {
                if ell == p_char {
                    continue;
                }
                for n in 1..=2u32 {
                    let tm = match dm_torsion(&m, &ell, n, 12, 0) {
                        Ok(t) => t,
                        Err(Error::CapExceeded(_)) => continue,
                        Err(e) => panic!("{e}"),
                    };
                    checked += 1;
                    assert_eq!(tm.basis().len(), r);
                    let deg = ell.degree().unwrap() * n as usize;
                    assert_eq!(tm.cardinality(), (m.q() as u128).pow((r * deg) as u32));
                    // The basis generates everything: each point has coordinates.
                    for x in tm.points().take(64) {
                        assert!(tm.coordinates(&x).is_some());
                    }
                    let frob = dm_frobenius_matrix(&tm);
                    let t_cols: Vec<Vec<UPoly>> = tm
                        .basis()
                        .iter()
                        .map(|b| tm.coordinates(&tm.t_action(b)).unwrap())
                        .collect();
                    let t_mat: Vec<Vec<UPoly>> =
                        (0..r).map(|i| (0..r).map(|j| t_cols[j][i].clone()).collect()).collect();
                    let modulus = tm.modulus();
                    let mul = |a: &[Vec<UPoly>], b: &[Vec<UPoly>]| -> Vec<Vec<UPoly>> {
                        (0..r)
                            .map(|i| {
                                (0..r)
                                    .map(|j| {
                                        (0..r)
                                            .fold(UPoly::zero(m.fq()), |acc, k| &acc + &(&a[i][k] * &b[k][j]))
                                            .rem(modulus)
                                            .unwrap()
                                    })
                                    .collect()
                            })
                            .collect()
                    };
                    assert_eq!(mul(&frob, &t_mat), mul(&t_mat, &frob));
                }
            }
        }
        assert!(checked > 0);
        // At the characteristic the torsion is strictly smaller.
        for n in 1..=2u32 {
            let pn = p_char.pow(n as u64);
            let dim = dm_char_torsion_dim(&m, &pn).unwrap() as u32;
            let full = (m.q() as u128).pow((r * pn.degree().unwrap()) as u32);
            assert!((m.field().p() as u128).pow(dim) < full);
        }
    }
}

#[test]
fn frobenius_norm_is_independent_of_the_prime_set() {
    // Rank 2 over F_9 with d = 2 and rank 3 need splitting fields beyond the size bound.
    let modules = fixed_modules();
    for m in [0, 1, 3, 4, 6].map(|i| &modules[i]) {
        let (rep, plan) = dm_frobenius_norm_auto(m, None, 16, 0).unwrap_or_else(|e| panic!("{m:?}: {e}"));
        let [a, b] = plan.set_values().unwrap();
        assert_eq!(a, b);
        assert_eq!(rep.s, a);
        assert!(rep.independent && rep.degree_ok && rep.char_divides, "{m:?}");
        assert_eq!(rep.s.degree(), Some(m.base_degree()));
        assert!(m.delta(&rep.s).is_zero());
    }
}
