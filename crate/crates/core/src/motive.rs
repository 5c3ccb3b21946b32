//! The motive M(E) = L{τ} with τ_M given by left multiplication by T = τ^e, its
//! companion matrix over L[t], and the rank-1 determinant module.
//!
//! Coordinates are taken in the basis 1, T, …, T^{r−1}; t acts by right
//! multiplication by Φ_t and L acts on the left. σ raises L-coefficients to the
//! q-th power and fixes t.

use crate::drinfeld::{DrinfeldModule, Residue};
use crate::error::{Error, Result};
use crate::field::FFElem;
use crate::ore::OrePoly;
use crate::upoly::{upoly_det, UPoly};

#[derive(Clone, Debug)]
pub struct MotiveMatrix {
    module: DrinfeldModule,
    /// entries[i][j] over L[t]; column j is τ_M of the j-th basis vector.
    entries: Vec<Vec<UPoly>>,
}

impl MotiveMatrix {
    pub fn module(&self) -> &DrinfeldModule {
        &self.module
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<UPoly>] {
        &self.entries
    }

    /// τ_M(v) = C·σ(v).
    pub fn apply(&self, v: &[UPoly]) -> Vec<UPoly> {
        let l = self.module.field();
        let e = self.module.e() as i64;
        let sv: Vec<UPoly> = v.iter().map(|f| f.frob_coeffs(e)).collect();
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&sv)
                    .fold(UPoly::zero(l), |acc, (c, x)| &acc + &(c * x))
            })
            .collect()
    }

    /// det C over L[t].
    pub fn det(&self) -> UPoly {
        upoly_det(&self.entries, self.module.field(), None)
    }
}

/// Companion matrix: ones on the subdiagonal, last column
/// (a_r^{-1}(t−θ), −a_r^{-1}a_1, …, −a_r^{-1}a_{r−1}).
pub fn motive_matrix(m: &DrinfeldModule) -> MotiveMatrix {
    let l = m.field();
    let r = m.rank();
    let a = m.coeffs();
    let ar_inv = a[r - 1].inv().expect("a_r is nonzero");
    let mut entries = vec![vec![UPoly::zero(l); r]; r];
    for j in 0..r - 1 {
        entries[j + 1][j] = UPoly::one(l);
    }
    entries[0][r - 1] = UPoly::new(l, vec![-&(&ar_inv * m.theta()), ar_inv.clone()]);
    for i in 1..r {
        entries[i][r - 1] = UPoly::constant(-&(&ar_inv * &a[i - 1]));
    }
    MotiveMatrix {
        module: m.clone(),
        entries,
    }
}

/// Coordinates over L[t] of an element of L{τ^e}, by repeated division on the right
/// by Φ_t: g = Σ_k r_k·Φ_t^k with deg_τ r_k < re.
pub fn motive_coordinates(m: &DrinfeldModule, g: &OrePoly) -> Result<Vec<UPoly>> {
    let l = m.field();
    let e = m.e();
    let r = m.rank();
    if !g.base().same(l) {
        return Err(Error::FieldMismatch);
    }
    if g.coeffs().iter().enumerate().any(|(i, c)| i % e != 0 && !c.is_zero()) {
        return Err(Error::Precondition("element does not lie in L{τ^e}".into()));
    }
    let mut coords: Vec<Vec<FFElem>> = vec![Vec::new(); r];
    let mut cur = g.clone();
    while !cur.is_zero() {
        let (q, rem) = cur.divmod_left(m.phi_t())?;
        for (i, c) in coords.iter_mut().enumerate() {
            c.push(rem.coeff(i * e));
        }
        cur = q;
    }
    Ok(coords.into_iter().map(|c| UPoly::new(l, c)).collect())
}

/// Checks τ_M(T^j) = T^{j+1} and t·T^j = T^j·Φ_t in coordinates, for every j.
pub fn motive_relation_check(mm: &MotiveMatrix) -> Result<bool> {
    let m = &mm.module;
    let l = m.field();
    let r = m.rank();
    let e = m.e();
    let unit = |j: usize, f: UPoly| -> Vec<UPoly> {
        (0..r)
            .map(|i| if i == j { f.clone() } else { UPoly::zero(l) })
            .collect()
    };
    for j in 0..r {
        let tj = OrePoly::monomial(l.one(), j * e);
        let image = motive_coordinates(m, &OrePoly::monomial(l.one(), (j + 1) * e))?;
        if image != mm.apply(&unit(j, UPoly::one(l))) {
            return Ok(false);
        }
        let t_action = motive_coordinates(m, &(&tj * m.phi_t()))?;
        if t_action != unit(j, UPoly::x(l)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// τ_D = c·(t − θ)·σ on the rank-1 module ⋀^r M(E).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetMotive {
    pub c: FFElem,
    /// t − θ over L.
    pub factor: UPoly,
}

pub fn motive_det(m: &DrinfeldModule) -> Result<DetMotive> {
    let l = m.field();
    let det = motive_matrix(m).det();
    let factor = UPoly::new(l, vec![-m.theta(), l.one()]);
    if det.degree() != Some(1) {
        return Err(Error::Precondition("motive determinant is not of degree 1".into()));
    }
    let c = det.lc().unwrap().clone();
    if det != factor.scale(&c) {
        return Err(Error::Precondition("motive determinant does not vanish at θ".into()));
    }
    Ok(DetMotive { c, factor })
}

/// ψ_t = θ + c^{-1}τ^e.
pub fn det_drinfeld(m: &DrinfeldModule) -> Result<DrinfeldModule> {
    let dm = motive_det(m)?;
    DrinfeldModule::new(
        m.field(),
        m.fq(),
        m.theta().clone(),
        vec![dm.c.inv().expect("nonzero unit")],
        m.twist_index(),
    )
}

/// Whether c^{-1} equals the closed form (−1)^{r−1}a_r.
pub fn det_closed_form_holds(m: &DrinfeldModule) -> Result<bool> {
    let c = motive_det(m)?.c;
    let ar = m.coeffs().last().unwrap().clone();
    let expected = if m.rank() % 2 == 1 { ar } else { -&ar };
    Ok(c.inv().unwrap() == expected)
}

#[derive(Clone, Debug)]
pub struct TateDetCheck {
    pub ell: UPoly,
    pub n: u32,
    /// det of Frobenius on E[ℓⁿ].
    pub lhs: UPoly,
    /// Frobenius scalar on (det E)[ℓⁿ].
    pub rhs: UPoly,
    pub ok: bool,
}

pub fn verify_tate_det(
    m: &DrinfeldModule,
    ell: &UPoly,
    n: u32,
    cap: usize,
    seed: u64,
) -> Result<TateDetCheck> {
    let lhs = Residue::compute(m, ell, n, cap, seed)?.det;
    let psi = det_drinfeld(m)?;
    let rhs = Residue::compute(&psi, ell, n, cap, seed)?.det;
    Ok(TateDetCheck {
        ell: ell.clone(),
        n,
        ok: lhs == rhs,
        lhs,
        rhs,
    })
}
