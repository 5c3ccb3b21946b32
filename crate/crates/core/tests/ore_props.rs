use dmod_core::{ff_embed, ff_make, ore_kernel, FFElem, FField, OrePoly};
use proptest::prelude::*;

fn base(which: usize) -> FField {
    let (p, n) = [(2, 2), (3, 2), (5, 1), (2, 3)][which];
    ff_make(p, n, 0).unwrap()
}

fn ore(f: &FField, idxs: &[u64]) -> OrePoly {
    OrePoly::new(f, idxs.iter().map(|&i| f.from_index(i % f.order())).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associative_and_distributive(which in 0usize..4, a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = base(which);
        let (a, b, c) = (ore(&f, &a), ore(&f, &b), ore(&f, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn division_round_trips(which in 0usize..4, a in coeffs(), b in coeffs()) {
        let f = base(which);
        let (a, b) = (ore(&f, &a), ore(&f, &b));
        prop_assume!(!b.is_zero());
        let db = b.degree().unwrap();
        let (q, r) = a.divmod_left(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.degree().map_or(true, |d| d < db));
        let (q, r) = a.divmod_right(&b).unwrap();
        prop_assert_eq!(&(&b * &q) + &r, a);
        prop_assert!(r.degree().map_or(true, |d| d < db));
    }

    #[test]
    fn evaluation_is_linear_and_multiplicative(
        which in 0usize..4,
        a in coeffs(),
        b in coeffs(),
        x in any::<u64>(),
        y in any::<u64>(),
        c in any::<u64>(),
    ) {
        let f = base(which);
        let ext = ff_make(f.p(), f.degree() * 2, 0).unwrap();
        let emb = ff_embed(&f, &ext).unwrap();
        let (a, b) = (ore(&f, &a), ore(&f, &b));
        let x: FFElem = ext.from_index(x % ext.order());
        let y: FFElem = ext.from_index(y % ext.order());
        let c = ext.from_int(c % f.p());
        let ev = |g: &OrePoly, z: &FFElem| g.eval_via(&emb, z).unwrap();
        prop_assert_eq!(ev(&a, &(&x + &y)), &ev(&a, &x) + &ev(&a, &y));
        prop_assert_eq!(ev(&a, &(&c * &x)), &c * &ev(&a, &x));
        prop_assert_eq!(ev(&(&a * &b), &x), ev(&a, &ev(&b, &x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn kernel_size_divides_full_size(which in 0usize..4, a in prop::collection::vec(any::<u64>(), 1..4), m in 1usize..4) {
        let f = base(which);
        let g = ore(&f, &a);
        prop_assume!(!g.is_zero());
        let ext = ff_make(f.p(), f.degree() * m, 0).unwrap();
        let k = ore_kernel(&g, &ext).unwrap();
        // Brute-force oracle over the whole extension.
        let emb = ff_embed(&f, &ext).unwrap();
        let count = ext.elements().filter(|x| g.eval_via(&emb, x).unwrap().is_zero()).count() as u128;
        prop_assert_eq!(k.cardinality(), count);
        let full = (f.p() as u128).pow(g.degree().unwrap() as u32);
        prop_assert_eq!(full % k.cardinality(), 0);
    }
}

#[test]
fn separable_kernel_is_full_in_splitting_field() {
    let f = ff_make(2, 2, 0).unwrap();
    let w = f.gen();
    let g = OrePoly::new(&f, vec![w.clone(), f.one(), w]);
    let s = dmod_core::ore_splitting(&g, 12, 0).unwrap();
    assert_eq!(s.kernel.cardinality(), 1 << 2);
}
