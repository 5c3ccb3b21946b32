//! Deciding whether a map given on generators of a subring of F_p(u) is a Frobenius power.

use super::bivar::BivarPoly;
use super::classify::{classify_frobenius_bivariate, FrobClassification};
use super::ratfunc::RatFunc;
use crate::arith::{gcd_u64, lcm_u64};
use crate::error::{Error, Result};
use crate::upoly::UPoly;

/// Intersection of the exponent sets K_b = {k : b^{p^k} = b^{p^{k_b}}}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consistency {
    Exact(i64),
    /// Only constants were given: k ≡ residue (mod modulus).
    Congruence { residue: u64, modulus: u64 },
    Fail,
}

pub fn consistency_exponents(pairs: &[(RatFunc, i64)]) -> Result<Consistency> {
    let mut exact: Option<i64> = None;
    let mut congruences: Vec<(u64, u64)> = Vec::new();
    let mut fail = false;
    for (b, k) in pairs {
        if b.is_zero() {
            return Err(Error::Precondition("generators must be nonzero".into()));
        }
        match b.as_constant() {
            Some(c) => {
                let s = c.subfield_degree() as u64;
                congruences.push((k.rem_euclid(s as i64) as u64, s));
            }
            None => {
                if *k < 0 && b.root((-k) as u32).is_none() {
                    return Err(Error::RootDoesNotExist);
                }
                match exact {
                    Some(e) if e != *k => fail = true,
                    _ => exact = Some(*k),
                }
            }
        }
    }
    if fail {
        return Ok(Consistency::Fail);
    }
    let (mut r, mut m) = (0u64, 1u64);
    for (r2, m2) in congruences {
        match crt_pair(r, m, r2, m2) {
            Some(x) => (r, m) = x,
            None => return Ok(Consistency::Fail),
        }
    }
    Ok(match exact {
        Some(k) if k.rem_euclid(m as i64) as u64 == r => Consistency::Exact(k),
        Some(_) => Consistency::Fail,
        None => Consistency::Congruence { residue: r, modulus: m },
    })
}

/// x ≡ r1 (m1), x ≡ r2 (m2) for moduli that need not be coprime.
fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<(u64, u64)> {
    let g = gcd_u64(m1, m2);
    if (r1 % g) != (r2 % g) {
        return None;
    }
    let l = lcm_u64(m1, m2);
    // Moduli are subfield degrees, so a scan over l is cheap.
    (0..l).map(|i| r1 + i * m1).find(|x| x % m2 == r2).map(|x| (x % l, l))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobVerdict {
    Frobenius { k: i64 },
    Fail { reason: String },
}

/// Per-generator data for a transcendental generator.
#[derive(Clone, Debug)]
pub struct GeneratorReport {
    /// Eliminant of u, content removed.
    pub annihilator: BivarPoly,
    /// Its irreducible factor vanishing on (b, f(b)).
    pub factor: BivarPoly,
    pub classification: FrobClassification,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub verdict: FrobVerdict,
    pub generators: Vec<Option<GeneratorReport>>,
    pub consistency: Option<Consistency>,
}

/// Σ c_ij n1^i d1^{a−i} n2^j d2^{b−j}: F(x, y) with denominators cleared.
fn vanishes_on(f: &BivarPoly, x: &RatFunc, y: &RatFunc) -> bool {
    let base = x.base();
    let (a, b) = (f.deg_x().unwrap_or(0), f.deg_y().unwrap_or(0));
    let powers = |g: &UPoly, n: u64| {
        let mut v = vec![UPoly::one(base)];
        for i in 0..n as usize {
            let next = &v[i] * g;
            v.push(next);
        }
        v
    };
    let (n1, d1) = (powers(x.num(), a), powers(x.den(), a));
    let (n2, d2) = (powers(y.num(), b), powers(y.den(), b));
    let mut acc = UPoly::zero(base);
    for (c, i, j) in f.terms() {
        let (i, j) = (i as usize, j as usize);
        let t = &(&(&n1[i] * &d1[a as usize - i]) * &n2[j]) * &d2[b as usize - j];
        acc = &acc + &t.scale(&base.from_int(c));
    }
    acc.is_zero()
}

/// Bivariate image of a univariate polynomial in X (or Y when `in_y`).
fn lift(g: &UPoly, in_y: bool) -> BivarPoly {
    let p = g.base().p();
    let b = BivarPoly::from_y_coeffs(p, std::slice::from_ref(g));
    if in_y {
        b.swap()
    } else {
        b
    }
}

/// Determinant by fraction-free elimination over F_p[X, Y].
fn bareiss(mut m: Vec<Vec<BivarPoly>>, p: u64) -> BivarPoly {
    let n = m.len();
    if n == 0 {
        return BivarPoly::constant(p, 1);
    }
    let mut sign = false;
    let mut prev = BivarPoly::constant(p, 1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return BivarPoly::zero(p),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Res_u(X·d1 − n1, Y·d2 − n2) via the Sylvester matrix.
fn resultant_annihilator(x: &RatFunc, y: &RatFunc) -> BivarPoly {
    let p = x.base().p();
    let coeffs = |f: &RatFunc, in_y: bool| -> Vec<BivarPoly> {
        let deg = f.degree();
        let var = if in_y { BivarPoly::y(p) } else { BivarPoly::x(p) };
        (0..=deg)
            .map(|i| {
                let d = lift(&UPoly::constant(f.den().coeff(i)), false);
                let n = lift(&UPoly::constant(f.num().coeff(i)), false);
                &(&var * &d) - &n
            })
            .collect()
    };
    let a = coeffs(x, false);
    let b = coeffs(y, true);
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    let mut rows = vec![vec![BivarPoly::zero(p); size]; size];
    for r in 0..db {
        for (i, c) in a.iter().rev().enumerate() {
            rows[r][r + i] = c.clone();
        }
    }
    for r in 0..da {
        for (i, c) in b.iter().rev().enumerate() {
            rows[db + r][r + i] = c.clone();
        }
    }
    bareiss(rows, p)
}

/// For x = (αu+β)/(γu+δ): u = (δX − β)/(α − γX), substituted into y and cleared.
fn mobius_annihilator(x: &RatFunc, y: &RatFunc) -> BivarPoly {
    let base = x.base();
    let (alpha, beta) = (x.num().coeff(1), x.num().coeff(0));
    let (gamma, delta) = (x.den().coeff(1), x.den().coeff(0));
    let top = UPoly::new(base, vec![-&beta, delta]);
    let bot = UPoly::new(base, vec![alpha, -&gamma]);
    let deg = y.degree();
    let clear = |f: &UPoly| -> UPoly {
        let mut acc = UPoly::zero(base);
        for (i, c) in f.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&top.pow(i as u64) * &bot.pow((deg - i) as u64)).scale(c);
            }
        }
        acc
    };
    let (ny, dy) = (clear(y.num()), clear(y.den()));
    &(&BivarPoly::y(base.p()) * &lift(&dy, false)) - &lift(&ny, false)
}

/// Annihilator of (x, y) with both X- and Y-content removed.
pub fn annihilator(x: &RatFunc, y: &RatFunc) -> Result<BivarPoly> {
    if x.is_constant() {
        return Err(Error::Precondition("first argument must be transcendental".into()));
    }
    let raw = if x.degree() == 1 {
        mobius_annihilator(x, y)
    } else {
        resultant_annihilator(x, y)
    };
    let cy = lift(&raw.y_content(), false);
    let raw = raw.div_exact(&cy).expect("content divides");
    let cx = lift(&raw.x_content(), true);
    Ok(raw.div_exact(&cx).expect("content divides").normalized())
}

fn check_morphism(gens: &[RatFunc], images: &[RatFunc]) -> Result<()> {
    for (i, (b, fb)) in gens.iter().zip(images).enumerate() {
        if let Some(c) = b.as_constant() {
            if fb.as_constant().as_ref() != Some(&c) {
                return Err(Error::NotAMorphism(format!(
                    "generator {i} is the constant {c} but its image is {fb}"
                )));
            }
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if gens[i].is_constant() || gens[j].is_constant() {
                continue;
            }
            let rel = annihilator(&gens[i], &gens[j])?;
            if !vanishes_on(&rel, &images[i], &images[j]) {
                return Err(Error::NotAMorphism(format!(
                    "relation {rel} between generators {i} and {j} fails on the images"
                )));
            }
        }
    }
    Ok(())
}

pub fn theorem_frob_res(gens: &[RatFunc], images: &[RatFunc]) -> Result<TheoremReport> {
    if gens.len() != images.len() || gens.is_empty() {
        return Err(Error::Malformed("need equally many generators and images".into()));
    }
    let base = gens[0].base();
    if !base.is_prime_field()
        || gens.iter().chain(images).any(|g| !g.base().same(base))
    {
        return Err(Error::FieldMismatch);
    }
    check_morphism(gens, images)?;
    let mut reports = Vec::with_capacity(gens.len());
    let mut pairs = Vec::with_capacity(gens.len());
    let mut failure = None;
    for (b, fb) in gens.iter().zip(images) {
        if b.is_constant() {
            pairs.push((b.clone(), 0));
            reports.push(None);
            continue;
        }
        let ann = annihilator(b, fb)?;
        let factor = ann
            .factor()?
            .into_iter()
            .find(|f| vanishes_on(f, b, fb))
            .ok_or_else(|| Error::Precondition("no factor vanishes on the graph".into()))?;
        let cls = classify_frobenius_bivariate(&factor)?;
        match cls.signed_exponent() {
            Some(k) => pairs.push((b.clone(), k)),
            None if failure.is_none() => {
                failure = Some(format!("annihilator {factor} of ({b}, {fb}) is not a Frobenius graph"));
            }
            None => {}
        }
        reports.push(Some(GeneratorReport {
            annihilator: ann,
            factor,
            classification: cls,
        }));
    }
    if let Some(reason) = failure {
        return Ok(TheoremReport {
            verdict: FrobVerdict::Fail { reason },
            generators: reports,
            consistency: None,
        });
    }
    let cons = consistency_exponents(&pairs)?;
    let verdict = match cons {
        Consistency::Exact(k) => FrobVerdict::Frobenius { k },
        Consistency::Congruence { .. } => FrobVerdict::Fail {
            reason: "no transcendental generator; the exponent is not determined".into(),
        },
        Consistency::Fail => FrobVerdict::Fail {
            reason: "generators force different exponents".into(),
        },
    };
    Ok(TheoremReport {
        verdict,
        generators: reports,
        consistency: Some(cons),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ff_make, FField};

    fn rf(f: &FField, s: &str) -> RatFunc {
        RatFunc::parse(f, s).unwrap()
    }

    #[test]
    fn consistency_examples() {
        let f2 = ff_make(2, 1, 0).unwrap();
        let pairs = vec![(rf(&f2, "u"), 1), (rf(&f2, "u+1"), 1)];
        assert_eq!(consistency_exponents(&pairs), Ok(Consistency::Exact(1)));
        let pairs = vec![(rf(&f2, "u"), 1), (rf(&f2, "u"), 2)];
        assert_eq!(consistency_exponents(&pairs), Ok(Consistency::Fail));
        let f4 = ff_make(2, 2, 0).unwrap();
        let c = RatFunc::constant(f4.gen());
        let pairs = vec![(c.clone(), 0), (RatFunc::u(&f4), 2)];
        assert_eq!(consistency_exponents(&pairs), Ok(Consistency::Exact(2)));
        let pairs = vec![(c.clone(), 0), (RatFunc::u(&f4), 1)];
        assert_eq!(consistency_exponents(&pairs), Ok(Consistency::Fail));
        assert_eq!(
            consistency_exponents(&[(c, 1)]),
            Ok(Consistency::Congruence { residue: 1, modulus: 2 })
        );
        assert_eq!(
            consistency_exponents(&[(rf(&f2, "u+1"), -1)]),
            Err(Error::RootDoesNotExist)
        );
    }

    #[test]
    fn theorem_examples() {
        let f2 = ff_make(2, 1, 0).unwrap();
        let r = theorem_frob_res(&[rf(&f2, "u")], &[rf(&f2, "u^4")]).unwrap();
        assert_eq!(r.verdict, FrobVerdict::Frobenius { k: 2 });
        let r = theorem_frob_res(&[rf(&f2, "u")], &[rf(&f2, "u+1")]).unwrap();
        assert!(matches!(r.verdict, FrobVerdict::Fail { .. }));
        let r = theorem_frob_res(
            &[rf(&f2, "u^2"), rf(&f2, "u^3")],
            &[rf(&f2, "u^4"), rf(&f2, "u^6")],
        )
        .unwrap();
        assert_eq!(r.verdict, FrobVerdict::Frobenius { k: 1 });
        let r = theorem_frob_res(&[rf(&f2, "u^4")], &[rf(&f2, "u")]).unwrap();
        assert_eq!(r.verdict, FrobVerdict::Frobenius { k: -2 });
    }

    #[test]
    fn non_morphisms_rejected() {
        let f3 = ff_make(3, 1, 0).unwrap();
        let res = theorem_frob_res(
            &[rf(&f3, "u^2"), rf(&f3, "u^3")],
            &[rf(&f3, "u^3"), rf(&f3, "u^2")],
        );
        assert!(matches!(res, Err(Error::NotAMorphism(_))));
        let res = theorem_frob_res(&[rf(&f3, "2")], &[rf(&f3, "1")]);
        assert!(matches!(res, Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn resultant_of_squares() {
        let f2 = ff_make(2, 1, 0).unwrap();
        let a = annihilator(&rf(&f2, "u^2"), &rf(&f2, "u^3")).unwrap();
        assert_eq!(a, BivarPoly::parse(2, "Y^2 + X^3").unwrap());
        let m = annihilator(&rf(&f2, "u/(u+1)"), &rf(&f2, "u^2")).unwrap();
        assert!(vanishes_on(&m, &rf(&f2, "u/(u+1)"), &rf(&f2, "u^2")));
    }
}
