//! Univariate polynomials over a finite field.
//!
//! The same type serves as an element of A = F_q[t], of F_q[θ], of L[t] in the
//! motive, and as the working polynomial for root finding in extensions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Embedding, FFElem, FField};

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    base: FField,
    /// Low-to-high; the last entry is nonzero.
    coeffs: Vec<FFElem>,
}

impl UPoly {
    pub fn new(base: &FField, coeffs: Vec<FFElem>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field().same(base)));
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly {
            base: base.clone(),
            coeffs,
        }
    }

    pub fn zero(base: &FField) -> Self {
        UPoly {
            base: base.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(base: &FField) -> Self {
        Self::constant(base.one())
    }

    pub fn constant(c: FFElem) -> Self {
        let base = c.field().clone();
        Self::new(&base, vec![c])
    }

    /// The variable itself.
    pub fn x(base: &FField) -> Self {
        Self::new(base, vec![base.zero(), base.one()])
    }

    pub fn monomial(c: FFElem, k: usize) -> Self {
        let base = c.field().clone();
        let mut v = vec![base.zero(); k];
        v.push(c);
        Self::new(&base, v)
    }

    /// Coefficients given as prime-field integers, low-to-high.
    pub fn from_ints(base: &FField, ints: &[u64]) -> Self {
        Self::new(base, ints.iter().map(|&i| base.from_int(i)).collect())
    }

    /// Coefficients given as coordinate vectors in `base`, low-to-high.
    pub fn from_coords(base: &FField, coords: &[Vec<u64>]) -> Result<Self> {
        let coeffs = coords
            .iter()
            .map(|c| base.element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(base, coeffs))
    }

    pub fn base(&self) -> &FField {
        &self.base
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// `None` stands for deg 0 = −∞ and orders below every `Some(d)`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&FFElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().unwrap()),
        }
    }

    pub fn scale(&self, c: &FFElem) -> Self {
        Self::new(&self.base, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(&self.base, v)
    }

    pub fn eval(&self, x: &FFElem) -> FFElem {
        assert!(x.field().same(&self.base), "evaluation point in a different field");
        self.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Evaluate at a point of an extension, mapping coefficients through `emb`.
    pub fn eval_via(&self, emb: &Embedding, x: &FFElem) -> FFElem {
        let sup = emb.sup();
        self.coeffs
            .iter()
            .rev()
            .fold(sup.zero(), |acc, c| &(&acc * x) + &emb.apply(c))
    }

    /// Push coefficients through an embedding.
    pub fn map(&self, emb: &Embedding) -> Self {
        Self::new(emb.sup(), self.coeffs.iter().map(|c| emb.apply(c)).collect())
    }

    /// Apply x ↦ x^{p^k} to every coefficient.
    pub fn frob_coeffs(&self, k: i64) -> Self {
        Self::new(&self.base, self.coeffs.iter().map(|c| c.frob(k)).collect())
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.base.from_int(i as u64))
            .collect();
        Self::new(&self.base, v)
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        if !self.base.same(&d.base) {
            return Err(Error::FieldMismatch);
        }
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lc().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return Ok((UPoly::zero(&self.base), self.clone()));
        }
        let mut q = vec![self.base.zero(); n - dd];
        for k in (dd..n).rev() {
            let c = &r[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = &r[idx] - &(&c * di);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((UPoly::new(&self.base, q), UPoly::new(&self.base, r)))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &UPoly) -> Result<UPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Precondition("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with g = s·self + t·other, g monic.
    pub fn xgcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let base = &self.base;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(base), UPoly::zero(base));
        let (mut t0, mut t1) = (UPoly::zero(base), UPoly::one(base));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &UPoly) -> Option<UPoly> {
        let (g, s, _) = self.xgcd(m);
        if g.is_one() {
            Some(s.rem(m).ok()?)
        } else {
            None
        }
    }

    pub fn mul_mod(&self, other: &UPoly, m: &UPoly) -> UPoly {
        (self * other).rem(m).expect("nonzero modulus")
    }

    pub fn pow(&self, mut e: u64) -> UPoly {
        let mut acc = UPoly::one(&self.base);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u128, m: &UPoly) -> UPoly {
        let mut acc = UPoly::one(&self.base).rem(m).expect("nonzero modulus");
        let mut b = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&b, m);
            }
            b = b.mul_mod(&b, m);
            e >>= 1;
        }
        acc
    }

    /// g with g(x)^p = self(x), if self is a polynomial in x^p.
    pub fn pth_root(&self) -> Option<UPoly> {
        let p = self.base.p() as usize;
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % p != 0 && !c.is_zero())
        {
            return None;
        }
        let v = self.coeffs.iter().step_by(p).map(|c| c.frob(-1)).collect();
        Some(UPoly::new(&self.base, v))
    }

    /// Rabin's test over F_q, q = |base|.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.base.order() as u128;
        let x = UPoly::x(&self.base);
        let frob_iter = |k: usize| {
            let mut cur = x.rem(&f).unwrap();
            for _ in 0..k {
                cur = cur.pow_mod(q, &f);
            }
            cur
        };
        if frob_iter(n) != x.rem(&f).unwrap() {
            return false;
        }
        arith::factorize(n as u64)
            .into_iter()
            .all(|(r, _)| (&frob_iter(n / r as usize) - &x).gcd(&f).is_one())
    }

    /// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
    pub fn factor(&self) -> Result<Vec<(UPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for (sq, mult) in squarefree(&self.monic()) {
            for (g, d) in distinct_degree(&sq) {
                for h in equal_degree(&g, d) {
                    out.push((h, mult));
                }
            }
        }
        out.sort_by(|a, b| poly_key(&a.0).cmp(&poly_key(&b.0)));
        Ok(out)
    }

    /// Distinct roots in the base field, in index order.
    pub fn roots(&self) -> Result<Vec<FFElem>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let f = self.monic();
        let q = self.base.order() as u128;
        let x = UPoly::x(&self.base);
        let xq = x.pow_mod(q, &f);
        let lin = (&xq - &x.rem(&f).unwrap()).gcd(&f);
        if lin.is_constant() {
            return Ok(Vec::new());
        }
        let mut roots: Vec<FFElem> = equal_degree(&lin, 1)
            .into_iter()
            .map(|l| -&l.coeff(0))
            .collect();
        roots.sort();
        Ok(roots)
    }

    /// Roots in the target of `emb`.
    pub fn roots_in(&self, emb: &Embedding) -> Result<Vec<FFElem>> {
        self.map(emb).roots()
    }

    /// Human-readable form in the variable `var`.
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let prime = self.base.is_prime_field();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let cs = if prime {
                    c.to_string()
                } else {
                    format!("({c})")
                };
                match i {
                    0 => cs,
                    _ => {
                        let m = if i == 1 {
                            var.to_string()
                        } else {
                            format!("{var}^{i}")
                        };
                        if c.is_one() {
                            m
                        } else {
                            format!("{cs}*{m}")
                        }
                    }
                }
            })
            .collect();
        terms.join(" + ")
    }

    /// Coefficients as coordinate vectors (for serialization).
    pub fn to_coords(&self) -> Vec<Vec<u64>> {
        self.coeffs.iter().map(|c| c.coeffs().to_vec()).collect()
    }

    /// Coefficients as prime-field integers, when the base is a prime field.
    pub fn to_ints(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| c.as_prime()).collect()
    }
}

fn poly_key(f: &UPoly) -> (usize, Vec<u64>) {
    (
        f.coeffs.len(),
        f.coeffs.iter().rev().map(|c| c.to_index()).collect(),
    )
}

/// Square-free decomposition of a monic polynomial in characteristic p.
fn squarefree(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.base.p() as u32;
    let mut i = 1;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).unwrap();
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = c.div_exact(&y).unwrap();
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining part is a p-th power").monic();
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of equal-degree irreducibles.
fn distinct_degree(f: &UPoly) -> Vec<(UPoly, usize)> {
    let q = f.base.order() as u128;
    let x = UPoly::x(&f.base);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest).unwrap();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a monic product of distinct degree-d irreducibles.
fn equal_degree(f: &UPoly, d: usize) -> Vec<UPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let base = &f.base;
    let q = base.order() as u128;
    let p = base.p();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    loop {
        let a = UPoly::new(base, (0..n).map(|_| base.random(&mut rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace to F_2 of a in F_{q^d}: Σ_{i < k·d} a^{2^i}.
            let k = base.degree();
            let mut acc = a.rem(f).unwrap();
            let mut cur = acc.clone();
            for _ in 1..k * d {
                cur = cur.mul_mod(&cur, f);
                acc = &acc + &cur;
            }
            acc
        } else {
            // a^{(q^d - 1)/2} = (Π_{i<d} a^{q^i})^{(q-1)/2}
            let mut norm = a.rem(f).unwrap();
            let mut cur = norm.clone();
            for _ in 1..d {
                cur = cur.pow_mod(q, f);
                norm = norm.mul_mod(&cur, f);
            }
            &norm.pow_mod((q - 1) / 2, f) - &UPoly::one(base)
        };
        let g = b.gcd(f);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let h = f.div_exact(&g).unwrap();
                let mut out = equal_degree(&g, d);
                out.extend(equal_degree(&h, d));
                return out;
            }
        }
    }
}

/// Unique x of degree < Σ deg m_i with x ≡ v_i (mod m_i).
pub fn upoly_crt(residues: &[(UPoly, UPoly)]) -> Result<UPoly> {
    let Some((v0, m0)) = residues.first() else {
        return Err(Error::Precondition("empty CRT system".into()));
    };
    let mut acc = v0.rem(m0)?;
    let mut modulus = m0.clone();
    for (v, m) in &residues[1..] {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = modulus.rem(m)?.inv_mod(m).ok_or(Error::NonCoprimeModuli)?;
        let diff = (v - &acc).rem(m)?;
        let k = diff.mul_mod(&inv, m);
        acc = &acc + &(&modulus * &k);
        modulus = &modulus * m;
        acc = acc.rem(&modulus)?;
    }
    Ok(acc)
}

/// Determinant by cofactor expansion, reducing modulo `modulus` when given.
/// Meant for the small matrices (r ≤ 4) of this crate.
pub fn upoly_det(m: &[Vec<UPoly>], base: &FField, modulus: Option<&UPoly>) -> UPoly {
    let reduce = |x: UPoly| match modulus {
        Some(md) => x.rem(md).expect("nonzero modulus"),
        None => x,
    };
    match m.len() {
        0 => reduce(UPoly::one(base)),
        1 => reduce(m[0][0].clone()),
        n => {
            let mut acc = UPoly::zero(base);
            for i in 0..n {
                if m[i][0].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<UPoly>> = (0..n)
                    .filter(|&k| k != i)
                    .map(|k| m[k][1..].to_vec())
                    .collect();
                let term = reduce(&m[i][0] * &upoly_det(&minor, base, modulus));
                acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            reduce(acc)
        }
    }
}

/// All monic irreducible polynomials of exactly degree `d` over `base`, in
/// (coefficient index) order. Enumerates q^d candidates.
pub fn monic_irreducibles(base: &FField, d: usize) -> Vec<UPoly> {
    let q = base.order();
    let total = q.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut v: Vec<FFElem> = (0..d)
                .map(|_| {
                    let c = base.from_index(idx % q);
                    idx /= q;
                    c
                })
                .collect();
            v.push(base.one());
            UPoly::new(base, v)
        })
        .filter(|f| f.is_irreducible())
        .collect()
}

/// All monic polynomials of exactly degree `d`.
pub fn monic_polys(base: &FField, d: usize) -> Vec<UPoly> {
    let q = base.order();
    (0..q.pow(d as u32))
        .map(|mut idx| {
            let mut v: Vec<FFElem> = (0..d)
                .map(|_| {
                    let c = base.from_index(idx % q);
                    idx /= q;
                    c
                })
                .collect();
            v.push(base.one());
            UPoly::new(base, v)
        })
        .collect()
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("t"))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        assert!(self.base.same(&rhs.base), "polynomials over different fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        UPoly::new(&self.base, v)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        assert!(self.base.same(&rhs.base), "polynomials over different fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        UPoly::new(&self.base, v)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        assert!(self.base.same(&rhs.base), "polynomials over different fields");
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(&self.base);
        }
        let mut v = vec![self.base.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        UPoly::new(&self.base, v)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(&self.base, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
