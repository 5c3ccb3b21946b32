//! Drinfeld modules for A = F_q[t] over finite fields.

mod family;
mod norm;
mod torsion;

pub use family::{
    dm_residual_frobenius_check, dm_unit_valuation_check, family_reduce, family_specialize,
    DrinfeldFamily, Reduction, Residual,
};
pub use norm::{
    dm_frobenius_norm, dm_frobenius_norm_auto, family_norm_table, plan_prime_sets,
    report_from_residues, subsets_agree, FrobeniusReport, PrimeSetPlan, ReportSummary, Residue,
};
pub use torsion::{dm_char_torsion_dim, dm_frobenius_matrix, dm_torsion, TorsionModule};

use crate::error::{Error, Result};
use crate::field::{ff_embed, Embedding, FFElem, FField};
use crate::ore::OrePoly;
use crate::upoly::UPoly;

/// Φ_t = θ + a_1 τ^e + … + a_r τ^{re} over L, with constants c ∈ F_q acting as c^{p^t}.
#[derive(Clone, Debug)]
pub struct DrinfeldModule {
    l: FField,
    fq: FField,
    fq_emb: Embedding,
    e: usize,
    theta: FFElem,
    coeffs: Vec<FFElem>,
    twist_index: usize,
    phi_t: OrePoly,
}

impl DrinfeldModule {
    /// `fq` must be a subfield of `l` (its degree e divides [L:F_p]); a_r ≠ 0; t < e.
    pub fn new(
        l: &FField,
        fq: &FField,
        theta: FFElem,
        coeffs: Vec<FFElem>,
        twist_index: usize,
    ) -> Result<Self> {
        let e = fq.degree();
        let fq_emb = ff_embed(fq, l)?;
        if !theta.field().same(l) || coeffs.iter().any(|c| !c.field().same(l)) {
            return Err(Error::FieldMismatch);
        }
        match coeffs.last() {
            None => return Err(Error::Precondition("rank must be at least 1".into())),
            Some(c) if c.is_zero() => {
                return Err(Error::Precondition("leading coefficient a_r is zero".into()))
            }
            _ => {}
        }
        if twist_index >= e {
            return Err(Error::Precondition(format!(
                "twist index {twist_index} outside [0, {e})"
            )));
        }
        let mut v = vec![l.zero(); coeffs.len() * e + 1];
        v[0] = theta.clone();
        for (i, a) in coeffs.iter().enumerate() {
            v[(i + 1) * e] = a.clone();
        }
        let phi_t = OrePoly::new(l, v);
        Ok(DrinfeldModule {
            l: l.clone(),
            fq: fq.clone(),
            fq_emb,
            e,
            theta,
            coeffs,
            twist_index,
            phi_t,
        })
    }

    /// Carlitz module Φ_t = θ + τ^e.
    pub fn carlitz(l: &FField, fq: &FField, theta: FFElem) -> Result<Self> {
        Self::new(l, fq, theta, vec![l.one()], 0)
    }

    pub fn field(&self) -> &FField {
        &self.l
    }

    pub fn fq(&self) -> &FField {
        &self.fq
    }

    pub fn fq_embedding(&self) -> &Embedding {
        &self.fq_emb
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// q = p^e.
    pub fn q(&self) -> u64 {
        self.fq.order()
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn theta(&self) -> &FFElem {
        &self.theta
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn twist_index(&self) -> usize {
        self.twist_index
    }

    /// d = [L : F_q].
    pub fn base_degree(&self) -> usize {
        self.l.degree() / self.e
    }

    pub fn phi_t(&self) -> &OrePoly {
        &self.phi_t
    }

    /// Image of a constant c ∈ F_q in L under c ↦ c^{p^t}.
    pub fn const_image(&self, c: &FFElem) -> FFElem {
        self.fq_emb.apply(c).frob(self.twist_index as i64)
    }

    /// Φ_a, by Horner's rule in Φ_t.
    pub fn phi(&self, a: &UPoly) -> OrePoly {
        assert!(a.base().same(&self.fq), "a must lie in F_q[t]");
        a.coeffs()
            .iter()
            .rev()
            .fold(OrePoly::zero(&self.l), |acc, c| {
                &(&acc * &self.phi_t) + &OrePoly::constant(self.const_image(c))
            })
    }

    /// δ(a) = Σ c_i^{p^t} θ^i.
    pub fn delta(&self, a: &UPoly) -> FFElem {
        a.coeffs()
            .iter()
            .rev()
            .fold(self.l.zero(), |acc, c| &(&acc * &self.theta) + &self.const_image(c))
    }

    /// Generator 𝔭 of ker δ: the minimal polynomial over F_q of θ^{p^{-t}}.
    pub fn characteristic(&self) -> UPoly {
        minimal_polynomial(&self.theta.frob(-(self.twist_index as i64)), &self.fq_emb)
    }
}

/// Minimal polynomial over the source of `emb` of y in its target.
pub fn minimal_polynomial(y: &FFElem, emb: &Embedding) -> UPoly {
    let e = emb.sub().degree() as i64;
    let l = emb.sup();
    let mut conj = vec![y.clone()];
    loop {
        let next = conj.last().unwrap().frob(e);
        if &next == y {
            break;
        }
        conj.push(next);
    }
    let prod = conj.iter().fold(UPoly::one(l), |acc, c| {
        &acc * &UPoly::new(l, vec![-c, l.one()])
    });
    let coeffs = prod
        .coeffs()
        .iter()
        .map(|c| emb.preimage(c).expect("Galois-stable coefficients lie in F_q"))
        .collect();
    UPoly::new(emb.sub(), coeffs)
}

pub fn dm_phi(m: &DrinfeldModule, a: &UPoly) -> OrePoly {
    m.phi(a)
}

/// (δ(t), 𝔭).
pub fn dm_characteristic(m: &DrinfeldModule) -> (FFElem, UPoly) {
    (m.theta.clone(), m.characteristic())
}
