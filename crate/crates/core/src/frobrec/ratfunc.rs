//! Elements of the rational function field F(u) over a finite field F.

use std::fmt;

use super::parse::{parse_sparse, split_fraction};
use crate::error::{Error, Result};
use crate::field::{FFElem, FField};
use crate::upoly::UPoly;

/// num/den with gcd 1 and den monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !num.base().same(den.base()) {
            return Err(Error::FieldMismatch);
        }
        let g = num.gcd(&den);
        let (num, den) = if num.is_zero() {
            (num, UPoly::one(den.base()))
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lc = den.lc().unwrap().inv().unwrap();
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(f: UPoly) -> Self {
        let one = UPoly::one(f.base());
        RatFunc { num: f, den: one }
    }

    pub fn constant(c: FFElem) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn u(base: &FField) -> Self {
        Self::from_poly(UPoly::x(base))
    }

    /// Parses `num` or `num/den` in the variable `u`, integer coefficients.
    pub fn parse(base: &FField, s: &str) -> Result<Self> {
        let (n, d) = split_fraction(s);
        let poly = |t: &str| -> Result<UPoly> {
            let sparse = parse_sparse(t, &['u'], base.p())?;
            let deg = sparse.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
            let mut v = vec![base.zero(); deg + 1];
            for (e, c) in sparse {
                v[e[0] as usize] = base.from_int(c);
            }
            Ok(UPoly::new(base, v))
        };
        let num = poly(&n)?;
        let den = match d {
            Some(d) => poly(&d)?,
            None => UPoly::one(base),
        };
        Self::new(num, den)
    }

    pub fn base(&self) -> &FField {
        self.num.base()
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if constant.
    pub fn as_constant(&self) -> Option<FFElem> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// self^{p^k}, k ≥ 0.
    pub fn frob(&self, k: u32) -> Self {
        let pk = self.base().p().pow(k) as usize;
        let lift = |f: &UPoly| -> UPoly {
            let base = f.base();
            let mut v = vec![base.zero(); f.degree().unwrap_or(0) * pk + 1];
            for (i, c) in f.coeffs().iter().enumerate() {
                v[i * pk] = c.frob(k as i64);
            }
            UPoly::new(base, v)
        };
        RatFunc {
            num: lift(&self.num),
            den: lift(&self.den),
        }
    }

    /// The p^k-th root, when every exponent of num and den is divisible by p^k.
    pub fn root(&self, k: u32) -> Option<Self> {
        let pk = self.base().p().pow(k) as usize;
        let drop = |f: &UPoly| -> Option<UPoly> {
            let base = f.base();
            if f.coeffs().iter().enumerate().any(|(i, c)| i % pk != 0 && !c.is_zero()) {
                return None;
            }
            let v = f.coeffs().iter().step_by(pk).map(|c| c.frob(-(k as i64))).collect();
            Some(UPoly::new(base, v))
        };
        Some(RatFunc {
            num: drop(&self.num)?,
            den: drop(&self.den)?,
        })
    }

    /// self^{p^k} for any integer k.
    pub fn frob_signed(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.frob(k as u32))
        } else {
            self.root((-k) as u32).ok_or(Error::RootDoesNotExist)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.display_var("u"))
        } else {
            write!(f, "({})/({})", self.num.display_var("u"), self.den.display_var("u"))
        }
    }
}
