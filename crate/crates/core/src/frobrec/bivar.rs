//! Bivariate polynomials over F_p, sparse in (X, Y).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::parse::parse_sparse;
use crate::arith::{add_mod, inv_mod, is_prime, mul_mod, sub_mod};
use crate::error::{Error, Result};
use crate::field::{ff_make, FFElem, FField};
use crate::upoly::UPoly;

/// Above this many univariate factors the Kronecker recombination is not attempted.
const MAX_RECOMBINATION_FACTORS: usize = 18;

#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    p: u64,
    /// (i, j) ↦ coefficient of X^i Y^j, nonzero entries only.
    terms: BTreeMap<(u64, u64), u64>,
}

impl BivarPoly {
    pub fn zero(p: u64) -> Self {
        BivarPoly {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(p: u64, terms: &[(i64, u64, u64)]) -> Self {
        let mut out = Self::zero(p);
        for &(c, i, j) in terms {
            out.add_term(c.rem_euclid(p as i64) as u64, i, j);
        }
        out
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_terms(p, &[(c as i64, 0, 0)])
    }

    pub fn x(p: u64) -> Self {
        Self::from_terms(p, &[(1, 1, 0)])
    }

    pub fn y(p: u64) -> Self {
        Self::from_terms(p, &[(1, 0, 1)])
    }

    /// X^{p^k} − Y.
    pub fn x_frob_minus_y(p: u64, k: u32) -> Self {
        Self::from_terms(p, &[(1, p.pow(k), 0), (-1, 0, 1)])
    }

    /// Y^{p^k} − X.
    pub fn y_frob_minus_x(p: u64, k: u32) -> Self {
        Self::from_terms(p, &[(1, 0, p.pow(k)), (-1, 1, 0)])
    }

    pub fn parse(p: u64, s: &str) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let sparse = parse_sparse(s, &['X', 'Y'], p)?;
        let mut out = Self::zero(p);
        for (e, c) in sparse {
            out.add_term(c, e[0], e[1]);
        }
        Ok(out)
    }

    fn add_term(&mut self, c: u64, i: u64, j: u64) {
        let p = self.p;
        let slot = self.terms.entry((i, j)).or_insert(0);
        *slot = add_mod(*slot, c % p, p);
        if *slot == 0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (c, i, j))
    }

    pub fn coeff(&self, i: u64, j: u64) -> u64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> Option<u64> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u64> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.p);
        for (&(i, j), &v) in &self.terms {
            out.add_term(mul_mod(v, c, self.p), i, j);
        }
        out
    }

    /// P(Y, X).
    pub fn swap(&self) -> Self {
        BivarPoly {
            p: self.p,
            terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect(),
        }
    }

    /// Leading term in the order (deg_Y, deg_X).
    fn leading(&self) -> Option<(u64, u64, u64)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (j, i))
            .map(|(&(i, j), &c)| (c, i, j))
    }

    /// Scalar multiple whose leading term (in (deg_Y, deg_X) order) has coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((c, _, _)) => self.scale(inv_mod(c, self.p)),
        }
    }

    /// The prime field F_p, presented with seed 0.
    pub fn prime_field(&self) -> FField {
        ff_make(self.p, 1, 0).expect("p is prime")
    }

    /// Coefficients of Y^j as polynomials in X.
    pub fn y_coeffs(&self) -> Vec<UPoly> {
        let fp = self.prime_field();
        let Some(dy) = self.deg_y() else {
            return Vec::new();
        };
        let mut cols: Vec<Vec<FFElem>> = vec![Vec::new(); dy as usize + 1];
        for (&(i, j), &c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, fp.zero());
            }
            col[i as usize] = fp.from_int(c);
        }
        cols.into_iter().map(|c| UPoly::new(&fp, c)).collect()
    }

    pub fn from_y_coeffs(p: u64, cols: &[UPoly]) -> Self {
        let mut out = Self::zero(p);
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.coeffs().iter().enumerate() {
                out.add_term(c.as_prime().expect("prime-field coefficient"), i as u64, j as u64);
            }
        }
        out
    }

    /// gcd of the Y-coefficients (monic polynomial in X).
    pub fn y_content(&self) -> UPoly {
        let fp = self.prime_field();
        self.y_coeffs()
            .iter()
            .fold(UPoly::zero(&fp), |acc, c| acc.gcd(c))
    }

    /// gcd of the X-coefficients (monic polynomial in Y).
    pub fn x_content(&self) -> UPoly {
        self.swap().y_content()
    }

    /// (Q, N) with P(X, Y) = Q(X, Y^{p^N}) and N maximal.
    pub fn strip_p_powers(&self) -> Result<(BivarPoly, u32)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut n = 0u32;
        let mut cur = self.clone();
        while cur.deg_y().unwrap() > 0 && cur.terms.keys().all(|&(_, j)| j % self.p == 0) {
            cur = BivarPoly {
                p: self.p,
                terms: cur.terms.iter().map(|(&(i, j), &c)| ((i, j / self.p), c)).collect(),
            };
            n += 1;
        }
        Ok((cur, n))
    }

    /// Q(X, Y^{p^N}).
    pub fn inflate_y(&self, n: u32) -> BivarPoly {
        let f = self.p.pow(n);
        BivarPoly {
            p: self.p,
            terms: self.terms.iter().map(|(&(i, j), &c)| ((i, j * f), c)).collect(),
        }
    }

    /// ∂/∂Y.
    pub fn d_y(&self) -> BivarPoly {
        let mut out = Self::zero(self.p);
        for (&(i, j), &c) in &self.terms {
            if j > 0 {
                out.add_term(mul_mod(c, j % self.p, self.p), i, j - 1);
            }
        }
        out
    }

    /// P(x, y) in a common field.
    pub fn eval(&self, x: &FFElem, y: &FFElem) -> FFElem {
        let f = x.field();
        self.terms.iter().fold(f.zero(), |acc, (&(i, j), &c)| {
            &acc + &(&(&f.from_int(c) * &x.pow(i as u128)) * &y.pow(j as u128))
        })
    }

    /// P(x, Y) as a polynomial in Y over the field of x.
    pub fn specialize_x(&self, x: &FFElem) -> UPoly {
        let f = x.field();
        let coeffs = self
            .y_coeffs()
            .iter()
            .map(|col| {
                col.coeffs().iter().rev().fold(f.zero(), |acc, c| {
                    &(&acc * x) + &f.from_int(c.as_prime().unwrap())
                })
            })
            .collect();
        UPoly::new(f, coeffs)
    }

    /// Exact quotient self / d, or `None` if d does not divide self.
    pub fn div_exact(&self, d: &BivarPoly) -> Option<BivarPoly> {
        if d.is_zero() {
            return None;
        }
        let fp = self.prime_field();
        let dc = d.y_coeffs();
        let dy = dc.len() - 1;
        let lc = dc[dy].clone();
        let mut rem = self.y_coeffs();
        if rem.len() < dc.len() {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let mut quot = vec![UPoly::zero(&fp); rem.len() - dy];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dy].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.divrem(&lc).ok()?;
            if !r.is_zero() {
                return None;
            }
            for (i, c) in dc.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&q * c);
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_y_coeffs(self.p, &quot))
    }

    /// Kronecker image P(z, z^D) with D = deg_X + 1.
    fn kronecker(&self, big_d: u64) -> UPoly {
        let fp = self.prime_field();
        let deg = self.terms.keys().map(|&(i, j)| i + big_d * j).max().unwrap_or(0);
        let mut v = vec![fp.zero(); deg as usize + 1];
        for (&(i, j), &c) in &self.terms {
            let k = (i + big_d * j) as usize;
            v[k] = &v[k] + &fp.from_int(c);
        }
        UPoly::new(&fp, v)
    }

    fn from_kronecker(p: u64, g: &UPoly, big_d: u64) -> BivarPoly {
        let mut out = Self::zero(p);
        for (k, c) in g.coeffs().iter().enumerate() {
            let k = k as u64;
            out.add_term(c.as_prime().unwrap(), k % big_d, k / big_d);
        }
        out
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// A proper factorization self = a·b with both factors nonconstant, if any.
    pub fn split(&self) -> Result<Option<(BivarPoly, BivarPoly)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(None);
        }
        let fp = self.prime_field();
        let p = self.p;
        // Contents.
        let cy = self.y_content();
        if !cy.is_constant() && self.deg_y() > Some(0) {
            let c = Self::from_y_coeffs(p, &[cy]);
            return Ok(Some((c.clone(), self.div_exact(&c).unwrap())));
        }
        let cx = self.x_content();
        if !cx.is_constant() && self.deg_x() > Some(0) {
            let c = Self::from_y_coeffs(p, &[cx]).swap();
            return Ok(Some((c.clone(), self.div_exact(&c).unwrap())));
        }
        // Univariate cases.
        if self.deg_y() == Some(0) || self.deg_x() == Some(0) {
            let swapped = self.deg_y() != Some(0);
            let base = if swapped { self.swap() } else { self.clone() };
            let u = base.y_coeffs()[0].clone();
            let fac = u.factor()?;
            if fac.len() == 1 && fac[0].1 == 1 {
                return Ok(None);
            }
            let g = fac[0].0.clone();
            let h = u.div_exact(&g)?;
            let (g, h) = (Self::from_y_coeffs(p, &[g]), Self::from_y_coeffs(p, &[h]));
            return Ok(Some(if swapped { (g.swap(), h.swap()) } else { (g, h) }));
        }
        // Primitive and of degree 1 in one variable: irreducible.
        if self.deg_y() == Some(1) || self.deg_x() == Some(1) {
            return Ok(None);
        }
        let big_d = self.deg_x().unwrap() + 1;
        let f = self.kronecker(big_d);
        let mut pieces: Vec<UPoly> = Vec::new();
        for (g, m) in f.factor()? {
            for _ in 0..m {
                pieces.push(g.clone());
            }
        }
        let k = pieces.len();
        if k > MAX_RECOMBINATION_FACTORS {
            return Err(Error::Precondition(format!(
                "Kronecker image has {k} factors; recombination not attempted"
            )));
        }
        for mask in 1u32..(1 << k) - 1 {
            // Each split is seen twice; keep the half containing the first factor out.
            if mask & 1 == 1 {
                continue;
            }
            let g = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .fold(UPoly::one(&fp), |acc, i| &acc * &pieces[i]);
            let cand = Self::from_kronecker(p, &g, big_d);
            if cand.is_constant() {
                continue;
            }
            if let Some(q) = self.div_exact(&cand) {
                if !q.is_constant() {
                    return Ok(Some((cand, q)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_constant() {
            return Ok(false);
        }
        Ok(self.split()?.is_none())
    }

    /// Irreducible factors (normalized, with repetition), sorted.
    pub fn factor(&self) -> Result<Vec<BivarPoly>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut stack = vec![self.clone()];
        let mut out = Vec::new();
        while let Some(f) = stack.pop() {
            if f.is_constant() {
                continue;
            }
            match f.split()? {
                Some((a, b)) => {
                    stack.push(a);
                    stack.push(b);
                }
                None => out.push(f.normalized()),
            }
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(out)
    }

    fn sort_key(&self) -> (u64, u64, Vec<((u64, u64), u64)>) {
        (
            self.deg_y().unwrap_or(0),
            self.deg_x().unwrap_or(0),
            self.terms.iter().map(|(&k, &v)| (k, v)).collect(),
        )
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if c != 1 || (i == 0 && j == 0) {
                parts.push(c.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("X".into()),
                _ => parts.push(format!("X^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("Y".into()),
                _ => parts.push(format!("Y^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        assert_eq!(self.p, rhs.p);
        let mut out = self.clone();
        for (&(i, j), &c) in &rhs.terms {
            out.add_term(c, i, j);
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        assert_eq!(self.p, rhs.p);
        let mut out = self.clone();
        for (&(i, j), &c) in &rhs.terms {
            out.add_term(sub_mod(0, c, self.p), i, j);
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(self.p - 1)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        assert_eq!(self.p, rhs.p);
        let mut out = BivarPoly::zero(self.p);
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &rhs.terms {
                out.add_term(mul_mod(a, b, self.p), i + k, j + l);
            }
        }
        out
    }
}
