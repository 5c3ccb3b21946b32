//! Deciding whether R1/R2 = X^n, algebraically and by sampling at Kummer points.

use crate::arith::{checked_pow, factorize, FIELD_BOUND};
use crate::error::{Error, Result};
use crate::field::{ff_generator, ff_make, FFElem, FField};
use crate::upoly::UPoly;

/// Sampling field F_{p^m} with two odd primes ℓ dividing p^m − 1.
#[derive(Clone, Debug)]
pub struct KummerSetup {
    pub m: usize,
    pub ells: [u64; 2],
}

/// Smallest m with p^m − 1 divisible by two distinct odd primes > `bound`.
pub fn kummer_setup(p: u64, bound: u64) -> Option<KummerSetup> {
    (1..)
        .map_while(|m| {
            let order = checked_pow(p, m).filter(|&o| o <= FIELD_BOUND)?;
            Some((m, order as u64))
        })
        .find_map(|(m, order)| {
            let big: Vec<u64> = factorize(order - 1)
                .into_iter()
                .map(|(r, _)| r)
                .filter(|&r| r != 2 && r > bound)
                .take(2)
                .collect();
            (big.len() == 2).then(|| KummerSetup {
                m,
                ells: [big[0], big[1]],
            })
        })
}

/// Algebraic test: both sides are monomials with the same coefficient.
pub fn monomial_exponent_algebraic(r1: &UPoly, r2: &UPoly) -> Result<Option<i64>> {
    if r2.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let single = |f: &UPoly| -> Option<(usize, FFElem)> {
        let mut nz = f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero());
        let first = nz.next()?;
        nz.next().is_none().then(|| (first.0, first.1.clone()))
    };
    Ok(match (single(r1), single(r2)) {
        (Some((a, ca)), Some((b, cb))) if ca == cb => Some(a as i64 - b as i64),
        _ => None,
    })
}

/// One Kummer sample: x = Z in F[Z]/(Z^ℓ − ζ), ζ of ℓ-power order not an ℓ-th power.
fn kummer_sample(r1: &UPoly, r2: &UPoly, f: &FField, g: &FFElem, ell: u64) -> Option<i64> {
    let group = f.order() - 1;
    let mut ell_v = ell;
    while (group / ell_v) % ell == 0 {
        ell_v *= ell;
    }
    let zeta = g.pow((group / ell_v) as u128);
    let mut modulus = vec![f.zero(); ell as usize + 1];
    modulus[0] = -&zeta;
    modulus[ell as usize] = f.one();
    let modulus = UPoly::new(f, modulus);
    let lift = |r: &UPoly| -> UPoly {
        let c = r.coeffs().iter().map(|c| f.from_int(c.as_prime().unwrap())).collect();
        UPoly::new(f, c).rem(&modulus).unwrap()
    };
    let (a, b) = (lift(r1), lift(r2));
    let value = a.mul_mod(&b.inv_mod(&modulus)?, &modulus);
    // Some(s) if v = c·Z^s with c = 1 and s < ℓ/2.
    let read = |v: &UPoly| -> Option<usize> {
        let mut nz = v.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (s, c) = nz.next()?;
        (nz.next().is_none() && 2 * (s as u64) < ell && c.is_one()).then_some(s)
    };
    if let Some(s) = read(&value) {
        return Some(s as i64);
    }
    let inv = value.inv_mod(&modulus)?;
    read(&inv).map(|s| -(s as i64))
}

/// Sampling route: `Ok(None)` when R1/R2 is not X^n. Requires the inputs over F_p.
pub fn monomial_exponent_sampled(r1: &UPoly, r2: &UPoly) -> Result<Option<i64>> {
    if r2.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let p = r2.base().p();
    let maxdeg = r1.degree().unwrap_or(0).max(r2.degree().unwrap_or(0)) as u64;
    let setup = kummer_setup(p, 2 * maxdeg).ok_or_else(|| {
        Error::Precondition(format!("no Kummer sampling field for degree {maxdeg} below 2^40"))
    })?;
    let f = ff_make(p, setup.m, 0)?;
    let g = ff_generator(&f);
    let a = kummer_sample(r1, r2, &f, &g, setup.ells[0]);
    let b = kummer_sample(r1, r2, &f, &g, setup.ells[1]);
    Ok(if a == b { a } else { None })
}

/// n with R1/R2 = X^n, or `None`. Both routes run; a mismatch is an error.
pub fn recover_monomial_exponent(r1: &UPoly, r2: &UPoly) -> Result<Option<i64>> {
    if r2.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if !r1.base().is_prime_field() || !r2.base().same(r1.base()) {
        return Err(Error::FieldMismatch);
    }
    if !r1.gcd(r2).is_one() {
        return Err(Error::Precondition("R1 and R2 must be coprime".into()));
    }
    let algebraic = monomial_exponent_algebraic(r1, r2)?;
    let sampled = monomial_exponent_sampled(r1, r2)?;
    if algebraic != sampled {
        return Err(Error::SamplingDisagreement { algebraic, sampled });
    }
    Ok(algebraic)
}
