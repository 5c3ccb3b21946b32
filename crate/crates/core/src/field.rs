//! Finite fields F_{p^n} presented as F_p[x]/(modulus), and embeddings between them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{self, add_mod, inv_mod, mul_mod, sub_mod, FIELD_BOUND};
use crate::error::{Error, Result};
use crate::fpoly;
use crate::linalg::EchelonBasis;
use crate::upoly::UPoly;

struct FieldData {
    p: u64,
    n: usize,
    /// Monic, length n + 1, low-to-high.
    modulus: Vec<u64>,
    order: u64,
    /// Column j holds the coordinates of (x^j)^p.
    frob: Vec<Vec<u64>>,
}

/// A finite field F_{p^n}. Cheap to clone; all clones share one presentation.
#[derive(Clone)]
pub struct FField(Arc<FieldData>);

/// JSON shape of a field: `{"p":int,"n":int,"modulus":[int]}`, modulus low-to-high.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
}

impl FField {
    /// Builds a field from an explicit monic irreducible modulus over F_p.
    pub fn from_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = fpoly::trim(modulus.into_iter().map(|c| c % p).collect());
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Malformed("modulus must be monic of degree >= 1".into()));
        }
        let n = modulus.len() - 1;
        let order = match arith::checked_pow(p, n) {
            Some(o) if o <= FIELD_BOUND => o as u64,
            _ => return Err(Error::BoundExceeded { p, n }),
        };
        if !fpoly::is_irreducible(&modulus, p) {
            return Err(Error::Malformed("modulus is not irreducible".into()));
        }
        let frob = (0..n)
            .map(|j| {
                let mut mono = vec![0u64; j + 1];
                mono[j] = 1;
                let r = fpoly::pow_mod_poly(&mono, p, &modulus, p);
                let mut col = r;
                col.resize(n, 0);
                col
            })
            .collect();
        Ok(FField(Arc::new(FieldData {
            p,
            n,
            modulus,
            order,
            frob,
        })))
    }

    pub fn from_desc(d: &FieldDesc) -> Result<Self> {
        let f = Self::from_modulus(d.p, d.modulus.clone())?;
        if f.degree() != d.n {
            return Err(Error::Malformed(format!(
                "declared degree {} but modulus has degree {}",
                d.n,
                f.degree()
            )));
        }
        Ok(f)
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.p(),
            n: self.degree(),
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    /// Same presentation (pointer-equal or equal (p, modulus)).
    pub fn same(&self, other: &FField) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    pub fn zero(&self) -> FFElem {
        FFElem {
            field: self.clone(),
            c: vec![0; self.0.n],
        }
    }

    pub fn one(&self) -> FFElem {
        self.from_int(1)
    }

    /// Image of an integer under Z → F_p ⊂ F.
    pub fn from_int(&self, v: u64) -> FFElem {
        let mut c = vec![0; self.0.n];
        c[0] = v % self.0.p;
        FFElem {
            field: self.clone(),
            c,
        }
    }

    pub fn from_i64(&self, v: i64) -> FFElem {
        let p = self.0.p as i64;
        self.from_int(v.rem_euclid(p) as u64)
    }

    /// The class of x in F_p[x]/(modulus).
    pub fn gen(&self) -> FFElem {
        if self.0.n == 1 {
            // x ≡ -m_0 in a prime field presented by x + m_0.
            return self.from_int(sub_mod(0, self.0.modulus[0], self.0.p));
        }
        let mut c = vec![0; self.0.n];
        c[1] = 1;
        FFElem {
            field: self.clone(),
            c,
        }
    }

    /// Element from coordinates (shorter inputs are zero-padded, entries reduced mod p).
    pub fn element(&self, coeffs: &[u64]) -> Result<FFElem> {
        if coeffs.len() > self.0.n {
            return Err(Error::Malformed(format!(
                "element has {} coordinates, field degree is {}",
                coeffs.len(),
                self.0.n
            )));
        }
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.0.p).collect();
        c.resize(self.0.n, 0);
        Ok(FFElem {
            field: self.clone(),
            c,
        })
    }

    /// Element whose coordinates are the base-p digits of `idx`.
    pub fn from_index(&self, mut idx: u64) -> FFElem {
        let p = self.0.p;
        let c = (0..self.0.n)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                d
            })
            .collect();
        FFElem {
            field: self.clone(),
            c,
        }
    }

    /// All elements in index order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.0.order).map(move |i| self.from_index(i))
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> FFElem {
        let p = self.0.p;
        let c = (0..self.0.n).map(|_| rng.gen_range(0..p)).collect();
        FFElem {
            field: self.clone(),
            c,
        }
    }

    /// F_p-basis x^0, .., x^{n-1}.
    pub fn basis(&self) -> Vec<FFElem> {
        (0..self.0.n)
            .map(|i| {
                let mut c = vec![0; self.0.n];
                c[i] = 1;
                FFElem {
                    field: self.clone(),
                    c,
                }
            })
            .collect()
    }

    fn frob_once(&self, c: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        let n = self.0.n;
        let mut out = vec![0u64; n];
        for (j, &cj) in c.iter().enumerate() {
            if cj == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(&self.0.frob[j]) {
                *o = add_mod(*o, mul_mod(cj, m, p), p);
            }
        }
        out
    }

    fn mul_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        let n = self.0.n;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
                }
            }
        }
        let m = &self.0.modulus;
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                prod[k - n + i] = sub_mod(prod[k - n + i], mul_mod(c, m[i], p), p);
            }
        }
        prod.truncate(n);
        prod
    }
}

impl fmt::Debug for FField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}[{:?}]", self.0.p, self.0.n, self.0.modulus)
    }
}

impl PartialEq for FField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FField {}

/// Deterministically builds F_{p^n}.
///
/// With seed 0 the modulus is the first monic irreducible polynomial when
/// polynomials are ordered by the base-p integer of their lower coefficients;
/// other seeds draw candidates from a ChaCha stream.
pub fn ff_make(p: u64, n: usize, seed: u64) -> Result<FField> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Malformed("extension degree must be >= 1".into()));
    }
    match arith::checked_pow(p, n) {
        Some(o) if o <= FIELD_BOUND => {}
        _ => return Err(Error::BoundExceeded { p, n }),
    }
    let candidate = |mut idx: u64| -> Vec<u64> {
        let mut v: Vec<u64> = (0..n)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                d
            })
            .collect();
        v.push(1);
        v
    };
    let total = arith::checked_pow(p, n).unwrap() as u64;
    if seed == 0 {
        for idx in 0..total {
            let m = candidate(idx);
            if fpoly::is_irreducible(&m, p) {
                return FField::from_modulus(p, m);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let m = candidate(rng.gen_range(0..total));
            if fpoly::is_irreducible(&m, p) {
                return FField::from_modulus(p, m);
            }
        }
    }
    unreachable!("every finite degree has an irreducible polynomial")
}

/// Element of a finite field, stored as coordinates in the power basis.
#[derive(Clone)]
pub struct FFElem {
    field: FField,
    c: Vec<u64>,
}

impl FFElem {
    pub fn field(&self) -> &FField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Base-p integer of the coordinates; a bijection F → [0, |F|).
    pub fn to_index(&self) -> u64 {
        let p = self.field.p();
        self.c.iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    /// Some(v) if the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u64> {
        if self.field.is_prime_field() {
            return Some(self.c[0]);
        }
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u128) -> FFElem {
        let mut acc = self.field.one();
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

    /// Signed power; negative exponents invert first. `None` for 0^{negative}.
    pub fn pow_i(&self, e: i64) -> Option<FFElem> {
        if e >= 0 {
            Some(self.pow(e as u128))
        } else {
            self.inv().map(|i| i.pow(e.unsigned_abs() as u128))
        }
    }

    pub fn inv(&self) -> Option<FFElem> {
        if self.is_zero() {
            return None;
        }
        if self.field.is_prime_field() {
            let p = self.field.p();
            return Some(self.field.from_int(inv_mod(self.c[0], p)));
        }
        Some(self.pow(self.field.order() as u128 - 2))
    }

    /// x ↦ x^{p^k}; negative k is the inverse Frobenius.
    pub fn frob(&self, k: i64) -> FFElem {
        let n = self.field.degree() as i64;
        let k = k.rem_euclid(n) as usize;
        let mut c = self.c.clone();
        for _ in 0..k {
            c = self.field.frob_once(&c);
        }
        FFElem {
            field: self.field.clone(),
            c,
        }
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let group = self.field.order() - 1;
        let mut ord = group;
        for (r, _) in arith::factorize(group) {
            while ord % r == 0 && self.pow((ord / r) as u128).is_one() {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// Degree over F_p of the smallest subfield containing the element.
    pub fn subfield_degree(&self) -> usize {
        let n = self.field.degree();
        (1..=n)
            .filter(|k| n % k == 0)
            .find(|&k| self.frob(k as i64) == *self)
            .unwrap_or(n)
    }
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.c == other.c
    }
}

impl Eq for FFElem {}

impl Hash for FFElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for FFElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Index order: coordinates compared from the top degree down.
impl Ord for FFElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.iter().rev().cmp(other.c.iter().rev())
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_prime_field() {
            return write!(f, "{}", self.c[0]);
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .rev()
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

fn check_same(a: &FFElem, b: &FFElem) {
    assert!(
        a.field.same(&b.field),
        "arithmetic between elements of different fields"
    );
}

impl Add for &FFElem {
    type Output = FFElem;
    fn add(self, rhs: &FFElem) -> FFElem {
        check_same(self, rhs);
        let p = self.field.p();
        let c = self
            .c
            .iter()
            .zip(&rhs.c)
            .map(|(&a, &b)| add_mod(a, b, p))
            .collect();
        FFElem {
            field: self.field.clone(),
            c,
        }
    }
}

impl Sub for &FFElem {
    type Output = FFElem;
    fn sub(self, rhs: &FFElem) -> FFElem {
        check_same(self, rhs);
        let p = self.field.p();
        let c = self
            .c
            .iter()
            .zip(&rhs.c)
            .map(|(&a, &b)| sub_mod(a, b, p))
            .collect();
        FFElem {
            field: self.field.clone(),
            c,
        }
    }
}

impl Mul for &FFElem {
    type Output = FFElem;
    fn mul(self, rhs: &FFElem) -> FFElem {
        check_same(self, rhs);
        let c = self.field.mul_coords(&self.c, &rhs.c);
        FFElem {
            field: self.field.clone(),
            c,
        }
    }
}

impl Neg for &FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        let p = self.field.p();
        let c = self.c.iter().map(|&a| sub_mod(0, a, p)).collect();
        FFElem {
            field: self.field.clone(),
            c,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FFElem {
            type Output = FFElem;
            fn $m(self, rhs: FFElem) -> FFElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FFElem> for FFElem {
            type Output = FFElem;
            fn $m(self, rhs: &FFElem) -> FFElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        -&self
    }
}

/// An element of multiplicative order |F| − 1: the first one in index order.
pub fn ff_generator(field: &FField) -> FFElem {
    let group = field.order() - 1;
    if group == 1 {
        return field.one();
    }
    let primes: Vec<u64> = arith::factorize(group).into_iter().map(|(r, _)| r).collect();
    (1..field.order())
        .map(|i| field.from_index(i))
        .find(|x| primes.iter().all(|&r| !x.pow((group / r) as u128).is_one()))
        .expect("the multiplicative group of a finite field is cyclic")
}

/// A ring embedding `sub → sup`, fixed by the image of the generator of `sub`.
#[derive(Clone)]
pub struct Embedding {
    sub: FField,
    sup: FField,
    gen_image: FFElem,
    /// Column i: coordinates in `sup` of the image of x^i.
    cols: Vec<Vec<u64>>,
    solver: EchelonBasis,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?}, x ↦ {:?})", self.sub, self.sup, self.gen_image)
    }
}

impl Embedding {
    fn from_gen_image(sub: FField, sup: FField, gen_image: FFElem) -> Self {
        let m = sub.degree();
        let mut cols = Vec::with_capacity(m);
        let mut cur = sup.one();
        for _ in 0..m {
            cols.push(cur.c.clone());
            cur = &cur * &gen_image;
        }
        let mut solver = EchelonBasis::new(sup.p(), sup.degree());
        for c in &cols {
            solver.insert(c);
        }
        Embedding {
            sub,
            sup,
            gen_image,
            cols,
            solver,
        }
    }

    pub fn identity(field: &FField) -> Self {
        Self::from_gen_image(field.clone(), field.clone(), field.gen())
    }

    pub fn sub(&self) -> &FField {
        &self.sub
    }

    pub fn sup(&self) -> &FField {
        &self.sup
    }

    pub fn gen_image(&self) -> &FFElem {
        &self.gen_image
    }

    pub fn apply(&self, x: &FFElem) -> FFElem {
        assert!(x.field.same(&self.sub), "element is not in the embedding's source");
        let p = self.sup.p();
        let mut out = vec![0u64; self.sup.degree()];
        for (&xi, col) in x.c.iter().zip(&self.cols) {
            if xi == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(col) {
                *o = add_mod(*o, mul_mod(xi, v, p), p);
            }
        }
        FFElem {
            field: self.sup.clone(),
            c: out,
        }
    }

    /// Inverse image, if `y` lies in the image.
    pub fn preimage(&self, y: &FFElem) -> Option<FFElem> {
        assert!(y.field.same(&self.sup));
        let c = self.solver.solve(&y.c)?;
        Some(FFElem {
            field: self.sub.clone(),
            c,
        })
    }

    /// `other ∘ self`: first self, then other.
    pub fn then(&self, other: &Embedding) -> Result<Embedding> {
        if !self.sup.same(&other.sub) {
            return Err(Error::FieldMismatch);
        }
        let g = other.apply(&self.gen_image);
        Ok(Self::from_gen_image(self.sub.clone(), other.sup.clone(), g))
    }
}

/// Embedding `sub → sup`, sending the generator of `sub` to the smallest (index
/// order) root of `sub.modulus` in `sup`.
pub fn ff_embed(sub: &FField, sup: &FField) -> Result<Embedding> {
    let (m, n) = (sub.degree(), sup.degree());
    if sub.p() != sup.p() || n % m != 0 {
        return Err(Error::NoEmbedding {
            sub: m,
            sup: n,
            p_sub: sub.p(),
            p_sup: sup.p(),
        });
    }
    if sub.same(sup) {
        return Ok(Embedding::identity(sub));
    }
    let f = UPoly::new(
        sup,
        sub.modulus().iter().map(|&c| sup.from_int(c)).collect(),
    );
    let roots = f.roots()?;
    let root = roots.into_iter().min().ok_or(Error::NoEmbedding {
        sub: m,
        sup: n,
        p_sub: sub.p(),
        p_sup: sup.p(),
    })?;
    Ok(Embedding::from_gen_image(sub.clone(), sup.clone(), root))
}
