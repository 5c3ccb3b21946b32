//! One-parameter families over F_q[θ] and their reductions at places P.

use super::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::{ff_embed, ff_make, Embedding, FFElem, FField};
use crate::upoly::UPoly;

/// Φ_t = g(θ) + a_1(θ)τ^e + … + a_r(θ)τ^{re} with g, a_i ∈ F_q[θ].
#[derive(Clone, Debug)]
pub struct DrinfeldFamily {
    fq: FField,
    delta: UPoly,
    coeffs: Vec<UPoly>,
}

impl DrinfeldFamily {
    pub fn new(fq: &FField, delta: UPoly, coeffs: Vec<UPoly>) -> Result<Self> {
        if !delta.base().same(fq) || coeffs.iter().any(|c| !c.base().same(fq)) {
            return Err(Error::FieldMismatch);
        }
        match coeffs.last() {
            None => return Err(Error::Precondition("rank must be at least 1".into())),
            Some(c) if c.is_zero() => {
                return Err(Error::Precondition("leading coefficient a_r is zero".into()))
            }
            _ => {}
        }
        Ok(DrinfeldFamily {
            fq: fq.clone(),
            delta,
            coeffs,
        })
    }

    /// g = θ, a_1 = 1.
    pub fn carlitz(fq: &FField) -> Self {
        Self::new(fq, UPoly::x(fq), vec![UPoly::one(fq)]).expect("valid family")
    }

    pub fn fq(&self) -> &FField {
        &self.fq
    }

    pub fn p(&self) -> u64 {
        self.fq.p()
    }

    pub fn e(&self) -> usize {
        self.fq.degree()
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn delta(&self) -> &UPoly {
        &self.delta
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    /// S_D: monic irreducible divisors of a_r.
    pub fn bad_primes(&self) -> Vec<UPoly> {
        let ar = self.coeffs.last().unwrap();
        if ar.is_constant() {
            return Vec::new();
        }
        ar.factor()
            .expect("a_r is nonzero")
            .into_iter()
            .map(|(f, _)| f)
            .collect()
    }

    pub fn is_good(&self, place: &UPoly) -> bool {
        !self
            .coeffs
            .last()
            .unwrap()
            .rem(place)
            .expect("nonzero place")
            .is_zero()
    }
}

/// The residue field F_P = F_q[θ]/(P) with θ̄ and F_q → F_P.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub field: FField,
    pub fq_emb: Embedding,
    pub theta_bar: FFElem,
}

impl Reduction {
    pub fn reduce(&self, a: &UPoly) -> FFElem {
        a.eval_via(&self.fq_emb, &self.theta_bar)
    }
}

fn check_place(family: &DrinfeldFamily, place: &UPoly) -> Result<()> {
    if !place.base().same(family.fq()) {
        return Err(Error::FieldMismatch);
    }
    if !place.is_monic() || !place.is_irreducible() {
        return Err(Error::Precondition("place must be monic irreducible".into()));
    }
    Ok(())
}

/// Residue field at P. Over F_p the field is F_p[x]/(P) itself; otherwise θ̄ is the
/// smallest root of P in F_{p^{e·deg P}} built with `seed`.
pub fn family_reduce(family: &DrinfeldFamily, place: &UPoly, seed: u64) -> Result<Reduction> {
    check_place(family, place)?;
    let fq = family.fq();
    if fq.is_prime_field() {
        let ints = place.to_ints().expect("prime-field coefficients");
        let field = FField::from_modulus(fq.p(), ints)?;
        let fq_emb = ff_embed(fq, &field)?;
        let theta_bar = field.gen();
        return Ok(Reduction {
            field,
            fq_emb,
            theta_bar,
        });
    }
    let d = place.degree().unwrap();
    let field = ff_make(fq.p(), fq.degree() * d, seed)?;
    let fq_emb = ff_embed(fq, &field)?;
    let theta_bar = place
        .roots_in(&fq_emb)?
        .into_iter()
        .next()
        .expect("an irreducible of degree d splits over F_{q^d}");
    Ok(Reduction {
        field,
        fq_emb,
        theta_bar,
    })
}

/// The reduction of the family at a good place P.
pub fn family_specialize(family: &DrinfeldFamily, place: &UPoly, seed: u64) -> Result<DrinfeldModule> {
    check_place(family, place)?;
    if !family.is_good(place) {
        return Err(Error::BadReduction);
    }
    let red = family_reduce(family, place, seed)?;
    let theta = red.reduce(family.delta());
    let coeffs = family.coeffs().iter().map(|a| red.reduce(a)).collect();
    DrinfeldModule::new(&red.field, family.fq(), theta, coeffs, 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    /// Least k with g(θ̄) = θ̄^{p^k}.
    Frobenius(usize),
    Fail,
}

/// Least k ∈ [0, e·deg P) with g(θ̄) = θ̄^{p^k} in F_P.
pub fn dm_residual_frobenius_check(
    family: &DrinfeldFamily,
    place: &UPoly,
    seed: u64,
) -> Result<Residual> {
    check_place(family, place)?;
    if !family.is_good(place) {
        return Err(Error::BadReduction);
    }
    let red = family_reduce(family, place, seed)?;
    let g = red.reduce(family.delta());
    let bound = family.e() * place.degree().unwrap();
    Ok((0..bound)
        .find(|&k| red.theta_bar.frob(k as i64) == g)
        .map_or(Residual::Fail, Residual::Frobenius))
}

/// δ(ℓ) ≢ 0 mod P, for deg ℓ > deg P.
pub fn dm_unit_valuation_check(
    family: &DrinfeldFamily,
    place: &UPoly,
    ell: &UPoly,
    seed: u64,
) -> Result<bool> {
    check_place(family, place)?;
    if ell.degree() <= place.degree() {
        return Err(Error::Precondition("requires deg ℓ > deg P".into()));
    }
    if !family.is_good(place) {
        return Err(Error::BadReduction);
    }
    let red = family_reduce(family, place, seed)?;
    let g = red.reduce(family.delta());
    Ok(!ell.eval_via(&red.fq_emb, &g).is_zero())
}
