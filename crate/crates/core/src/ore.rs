//! The twisted polynomial ring L{τ} with τ·c = c^p·τ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{ff_embed, ff_make, Embedding, FFElem, FField};
use crate::linalg;

#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly {
    base: FField,
    /// Index i is the coefficient of τ^i; the last entry is nonzero.
    coeffs: Vec<FFElem>,
}

impl OrePoly {
    pub fn new(base: &FField, coeffs: Vec<FFElem>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OrePoly {
            base: base.clone(),
            coeffs,
        }
    }

    pub fn zero(base: &FField) -> Self {
        Self::new(base, Vec::new())
    }

    pub fn one(base: &FField) -> Self {
        Self::constant(base.one())
    }

    pub fn constant(c: FFElem) -> Self {
        let base = c.field().clone();
        Self::new(&base, vec![c])
    }

    /// c·τ^k.
    pub fn monomial(c: FFElem, k: usize) -> Self {
        let base = c.field().clone();
        let mut v = vec![base.zero(); k];
        v.push(c);
        Self::new(&base, v)
    }

    pub fn tau(base: &FField) -> Self {
        Self::monomial(base.one(), 1)
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

    /// deg_τ; `None` is −∞.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient ε.
    pub fn lc(&self) -> Option<&FFElem> {
        self.coeffs.last()
    }

    /// Product in L{τ}: (Σ a_i τ^i)(Σ b_j τ^j) = Σ a_i b_j^{p^i} τ^{i+j}.
    pub fn try_mul(&self, other: &OrePoly) -> Result<OrePoly> {
        if !self.base.same(&other.base) {
            return Err(Error::FieldMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(OrePoly::zero(&self.base));
        }
        let mut out = vec![self.base.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        let mut twisted: Vec<FFElem> = other.coeffs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                for b in twisted.iter_mut() {
                    *b = b.frob(1);
                }
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in twisted.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(OrePoly::new(&self.base, out))
    }

    /// a = q·b + r with deg r < deg b.
    pub fn divmod_left(&self, b: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        if !self.base.same(&b.base) {
            return Err(Error::FieldMismatch);
        }
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lb = b.lc().unwrap().clone();
        let mut r = self.clone();
        let mut q = vec![self.base.zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree().filter(|&d| d >= db) {
            let k = dr - db;
            let qk = r.lc().unwrap() * &lb.frob(k as i64).inv().unwrap();
            r = &r - &(&OrePoly::monomial(qk.clone(), k) * b);
            q[k] = qk;
        }
        Ok((OrePoly::new(&self.base, q), r))
    }

    /// a = b·q + r with deg r < deg b.
    pub fn divmod_right(&self, b: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        if !self.base.same(&b.base) {
            return Err(Error::FieldMismatch);
        }
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lb_inv = b.lc().unwrap().inv().unwrap();
        let mut r = self.clone();
        let mut q = vec![self.base.zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree().filter(|&d| d >= db) {
            let k = dr - db;
            let qk = (r.lc().unwrap() * &lb_inv).frob(-(db as i64));
            r = &r - &(b * &OrePoly::monomial(qk.clone(), k));
            q[k] = qk;
        }
        Ok((OrePoly::new(&self.base, q), r))
    }

    /// Σ c_i x^{p^i} for x in L itself.
    pub fn eval(&self, x: &FFElem) -> FFElem {
        assert!(x.field().same(&self.base), "point is not in the base field");
        let mut acc = self.base.zero();
        let mut cur = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = cur.frob(1);
            }
            acc = &acc + &(c * &cur);
        }
        acc
    }

    /// Σ c_i x^{p^i} for x in the target of `emb`.
    pub fn eval_via(&self, emb: &Embedding, x: &FFElem) -> Result<FFElem> {
        if !emb.sub().same(&self.base) || !x.field().same(emb.sup()) {
            return Err(Error::NoEmbedding {
                sub: self.base.degree(),
                sup: x.field().degree(),
                p_sub: self.base.p(),
                p_sup: x.field().p(),
            });
        }
        let mut acc = emb.sup().zero();
        let mut cur = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = cur.frob(1);
            }
            if !c.is_zero() {
                acc = &acc + &(&emb.apply(c) * &cur);
            }
        }
        Ok(acc)
    }

    /// Image under the coefficient embedding L → L'.
    pub fn map(&self, emb: &Embedding) -> OrePoly {
        OrePoly::new(emb.sup(), self.coeffs.iter().map(|c| emb.apply(c)).collect())
    }

    /// Kernel of x ↦ f(x) on the target of `emb`, as an F_p-subspace.
    pub fn kernel(&self, emb: &Embedding) -> Result<Kernel> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ext = emb.sup();
        let cols = ext
            .basis()
            .iter()
            .map(|b| self.eval_via(emb, b).map(|v| v.coeffs().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let basis = linalg::nullspace(ext.p(), ext.degree(), &cols)
            .into_iter()
            .map(|v| ext.element(&v).expect("coordinates reduced mod p"))
            .collect();
        Ok(Kernel {
            field: ext.clone(),
            basis,
        })
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let prime = self.base.is_prime_field();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let cs = if prime {
                    c.to_string()
                } else {
                    format!("({c})")
                };
                let m = match i {
                    0 => return cs,
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                if c.is_one() {
                    m
                } else {
                    format!("{cs}*{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// F_p-subspace of roots of an additive polynomial inside a finite field.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub field: FField,
    pub basis: Vec<FFElem>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// p^dim.
    pub fn cardinality(&self) -> u128 {
        (self.field.p() as u128).pow(self.basis.len() as u32)
    }

    /// All points, in the order of F_p-coordinates with respect to `basis`.
    pub fn points(&self) -> impl Iterator<Item = FFElem> + '_ {
        let p = self.field.p();
        let total = self.cardinality() as u64;
        (0..total).map(move |mut idx| {
            let mut acc = self.field.zero();
            for b in &self.basis {
                let d = idx % p;
                idx /= p;
                if d != 0 {
                    acc = &acc + &(b * &self.field.from_int(d));
                }
            }
            acc
        })
    }
}

/// A splitting extension of an additive polynomial.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// Degree over L.
    pub degree: usize,
    pub embedding: Embedding,
    pub kernel: Kernel,
}

/// Smallest m ≤ cap with |ker f| = p^{deg_τ f} inside L_m = F_{p^{n·m}} built with `seed`.
pub fn ore_splitting(f: &OrePoly, cap: usize, seed: u64) -> Result<Splitting> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if f.coeff(0).is_zero() {
        return Err(Error::Inseparable);
    }
    let base = f.base();
    for m in 1..=cap {
        let ext = match ff_make(base.p(), base.degree() * m, seed) {
            Ok(e) => e,
            Err(Error::BoundExceeded { .. }) => break,
            Err(e) => return Err(e),
        };
        let emb = ff_embed(base, &ext)?;
        let kernel = f.kernel(&emb)?;
        if kernel.dim() == deg {
            return Ok(Splitting {
                degree: m,
                embedding: emb,
                kernel,
            });
        }
    }
    Err(Error::NotFound(cap))
}

pub fn ore_splitting_degree(f: &OrePoly, cap: usize) -> Result<usize> {
    ore_splitting(f, cap, 0).map(|s| s.degree)
}

pub fn ore_mul(a: &OrePoly, b: &OrePoly) -> Result<OrePoly> {
    a.try_mul(b)
}

pub fn ore_divmod_left(a: &OrePoly, b: &OrePoly) -> Result<(OrePoly, OrePoly)> {
    a.divmod_left(b)
}

pub fn ore_divmod_right(a: &OrePoly, b: &OrePoly) -> Result<(OrePoly, OrePoly)> {
    a.divmod_right(b)
}

pub fn ore_eval(f: &OrePoly, emb: &Embedding, x: &FFElem) -> Result<FFElem> {
    f.eval_via(emb, x)
}

pub fn ore_kernel(f: &OrePoly, ext: &FField) -> Result<Kernel> {
    f.kernel(&ff_embed(f.base(), ext)?)
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("τ"))
    }
}

impl Add for &OrePoly {
    type Output = OrePoly;
    fn add(self, rhs: &OrePoly) -> OrePoly {
        assert!(self.base.same(&rhs.base), "Ore polynomials over different fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OrePoly::new(&self.base, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &OrePoly {
    type Output = OrePoly;
    fn sub(self, rhs: &OrePoly) -> OrePoly {
        assert!(self.base.same(&rhs.base), "Ore polynomials over different fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OrePoly::new(&self.base, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        OrePoly::new(&self.base, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &OrePoly {
    type Output = OrePoly;
    fn mul(self, rhs: &OrePoly) -> OrePoly {
        self.try_mul(rhs).expect("Ore polynomials over different fields")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for OrePoly {
            type Output = OrePoly;
            fn $m(self, rhs: OrePoly) -> OrePoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> (FField, FFElem) {
        let f = ff_make(2, 2, 0).unwrap();
        let w = f.gen();
        (f, w)
    }

    #[test]
    fn twist_relation() {
        let (f, w) = f4();
        let tau = OrePoly::tau(&f);
        let lhs = &tau * &OrePoly::constant(w.clone());
        assert_eq!(lhs, OrePoly::monomial(&w * &w, 1));
    }

    #[test]
    fn square_of_carlitz_generator() {
        let (f, w) = f4();
        let a = OrePoly::new(&f, vec![w.clone(), f.one()]);
        let sq = &a * &a;
        assert_eq!(sq, OrePoly::new(&f, vec![&w * &w, f.one(), f.one()]));
    }

    #[test]
    fn division_examples() {
        let f2 = ff_make(2, 1, 0).unwrap();
        let a = OrePoly::new(&f2, vec![f2.one(), f2.zero(), f2.one()]);
        let b = OrePoly::new(&f2, vec![f2.one(), f2.one()]);
        let (q, r) = a.divmod_left(&b).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        let (f, w) = f4();
        let tau = OrePoly::tau(&f);
        let wt = OrePoly::monomial(w.clone(), 1);
        let (q, r) = tau.divmod_left(&wt).unwrap();
        assert!(r.is_zero());
        assert_eq!(&(&q * &wt) + &r, tau);
        assert_eq!(q, OrePoly::constant(w.inv().unwrap()));
        assert_eq!(tau.divmod_left(&OrePoly::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn kernel_examples_against_scan() {
        let (f, w) = f4();
        let carlitz = OrePoly::new(&f, vec![w.clone(), f.one()]);
        let k = ore_kernel(&carlitz, &f).unwrap();
        let mut pts: Vec<_> = k.points().collect();
        pts.sort();
        let scan: Vec<_> = f.elements().filter(|x| carlitz.eval(x).is_zero()).collect();
        assert_eq!(pts, scan);
        assert_eq!(pts, vec![f.zero(), w.clone()]);
        assert_eq!(ore_kernel(&OrePoly::tau(&f), &f).unwrap().dim(), 0);
        let f2 = ff_make(2, 1, 0).unwrap();
        let g = OrePoly::new(&f2, vec![f2.zero(), f2.one(), f2.one()]);
        assert_eq!(ore_kernel(&g, &f2).unwrap().dim(), 1);
    }

    #[test]
    fn splitting_degree_examples() {
        let (f, w) = f4();
        let carlitz = OrePoly::new(&f, vec![w.clone(), f.one()]);
        assert_eq!(ore_splitting_degree(&carlitz, 12), Ok(1));
        let f2 = ff_make(2, 1, 0).unwrap();
        let g = OrePoly::new(&f2, vec![f2.one(), f2.one()]);
        assert_eq!(ore_splitting_degree(&g, 12), Ok(1));
        // ω + τ²: scan successive extensions for the first with 4 roots.
        let h = OrePoly::new(&f, vec![w.clone(), f.zero(), f.one()]);
        let scan = (1..=6)
            .find(|&m| {
                let ext = ff_make(2, 2 * m, 0).unwrap();
                let emb = ff_embed(&f, &ext).unwrap();
                ext.elements()
                    .filter(|x| h.eval_via(&emb, x).unwrap().is_zero())
                    .count()
                    == 4
            })
            .unwrap();
        assert_eq!(ore_splitting_degree(&h, 12), Ok(scan));
        assert_eq!(
            ore_splitting_degree(&OrePoly::tau(&f), 12),
            Err(Error::Inseparable)
        );
    }
}
