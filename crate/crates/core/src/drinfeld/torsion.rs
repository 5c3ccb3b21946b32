//! Finite torsion modules E[ℓⁿ] and their Frobenius matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::{Embedding, FFElem, FField};
use crate::linalg::EchelonBasis;
use crate::ore::{ore_splitting, Kernel, OrePoly};
use crate::upoly::{upoly_det, UPoly};

const BASIS_RETRIES: usize = 100;

/// E[ℓⁿ] inside its splitting extension, with a certified A/ℓⁿ-basis.
#[derive(Clone, Debug)]
pub struct TorsionModule {
    module: DrinfeldModule,
    ell: UPoly,
    n: u32,
    ell_n: UPoly,
    /// Degree of the splitting extension over L.
    ext_degree: usize,
    emb: Embedding,
    kernel: Kernel,
    basis: Vec<FFElem>,
    phi_t_ext: OrePoly,
    /// F_p-basis c_k^{p^t}·Φ_{t^j}(b_i), inserted in (i, j, k) order.
    solver: EchelonBasis,
}

impl TorsionModule {
    pub fn module(&self) -> &DrinfeldModule {
        &self.module
    }

    pub fn ell(&self) -> &UPoly {
        &self.ell
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// ℓⁿ.
    pub fn modulus(&self) -> &UPoly {
        &self.ell_n
    }

    pub fn ext(&self) -> &FField {
        self.emb.sup()
    }

    pub fn ext_degree(&self) -> usize {
        self.ext_degree
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn basis(&self) -> &[FFElem] {
        &self.basis
    }

    /// F_p-basis of the point set.
    pub fn fp_basis(&self) -> &[FFElem] {
        &self.kernel.basis
    }

    pub fn cardinality(&self) -> u128 {
        self.kernel.cardinality()
    }

    pub fn points(&self) -> impl Iterator<Item = FFElem> + '_ {
        self.kernel.points()
    }

    /// x ↦ Φ_t(x).
    pub fn t_action(&self, x: &FFElem) -> FFElem {
        self.phi_t_ext.eval(x)
    }

    /// x ↦ Φ_a(x).
    pub fn act(&self, a: &UPoly, x: &FFElem) -> FFElem {
        // Horner in Φ_t; valid because Φ_t is additive.
        a.coeffs().iter().rev().fold(self.ext().zero(), |acc, c| {
            let cx = &self.emb.apply(&self.module.const_image(c)) * x;
            &self.t_action(&acc) + &cx
        })
    }

    /// Coordinates of a point with respect to `basis`, as elements of A/ℓⁿ.
    pub fn coordinates(&self, x: &FFElem) -> Option<Vec<UPoly>> {
        let fq = self.module.fq();
        let e = self.module.e();
        let len = self.ell_n.degree().unwrap();
        let lam = self.solver.solve(x.coeffs())?;
        let coords = (0..self.basis.len())
            .map(|i| {
                let coeffs = (0..len)
                    .map(|j| {
                        let off = (i * len + j) * e;
                        fq.element(&lam[off..off + e]).expect("reduced coordinates")
                    })
                    .collect();
                UPoly::new(fq, coeffs)
            })
            .collect();
        Some(coords)
    }
}

fn submodule_generators(
    b: &FFElem,
    phi_t: &OrePoly,
    consts: &[FFElem],
    len: usize,
) -> Vec<FFElem> {
    let mut out = Vec::with_capacity(len * consts.len());
    let mut cur = b.clone();
    for j in 0..len {
        if j > 0 {
            cur = phi_t.eval(&cur);
        }
        for c in consts {
            out.push(c * &cur);
        }
    }
    out
}

/// E[ℓⁿ] for ℓ ≠ 𝔭, searching splitting extensions up to degree `cap` over L.
pub fn dm_torsion(
    module: &DrinfeldModule,
    ell: &UPoly,
    n: u32,
    cap: usize,
    seed: u64,
) -> Result<TorsionModule> {
    if !ell.base().same(module.fq()) {
        return Err(Error::FieldMismatch);
    }
    if !ell.is_monic() || !ell.is_irreducible() {
        return Err(Error::Precondition("ℓ must be monic irreducible".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if *ell == module.characteristic() {
        return Err(Error::CharacteristicIdeal);
    }
    let ell_n = ell.pow(n as u64);
    let f = module.phi(&ell_n);
    let split = match ore_splitting(&f, cap, seed) {
        Ok(s) => s,
        Err(Error::NotFound(c)) => return Err(Error::CapExceeded(c)),
        Err(e) => return Err(e),
    };
    let ext = split.embedding.sup().clone();
    let emb = split.embedding;
    let phi_t_ext = module.phi_t().map(&emb);
    let consts: Vec<FFElem> = module
        .fq()
        .basis()
        .iter()
        .map(|c| emb.apply(&module.const_image(c)))
        .collect();
    let len = ell_n.degree().unwrap();
    let block = len * module.e();
    let p = ext.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solver = EchelonBasis::new(p, ext.degree());
    let mut basis = Vec::new();
    for i in 0..module.rank() {
        let mut found = false;
        for _ in 0..BASIS_RETRIES {
            let mut cand = ext.zero();
            for b in &split.kernel.basis {
                cand = &cand + &(b * &ext.from_int(rng.gen_range(0..p)));
            }
            let gens = submodule_generators(&cand, &phi_t_ext, &consts, len);
            let mut trial = solver.clone();
            let grew = gens.iter().filter(|g| trial.insert(g.coeffs())).count();
            if grew == block && trial.rank() == (i + 1) * block {
                solver = trial;
                basis.push(cand);
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::BasisNotFound(BASIS_RETRIES));
        }
    }
    Ok(TorsionModule {
        module: module.clone(),
        ell: ell.clone(),
        n,
        ell_n,
        ext_degree: split.degree,
        emb,
        kernel: split.kernel,
        basis,
        phi_t_ext,
        solver,
    })
}

/// Matrix of x ↦ x^{|L|} on the basis: column j holds the coordinates of Frob(b_j).
pub fn dm_frobenius_matrix(tm: &TorsionModule) -> Vec<Vec<UPoly>> {
    let nl = tm.module.field().degree() as i64;
    let r = tm.basis.len();
    let cols: Vec<Vec<UPoly>> = tm
        .basis
        .iter()
        .map(|b| {
            tm.coordinates(&b.frob(nl))
                .expect("Frobenius preserves the torsion module")
        })
        .collect();
    (0..r)
        .map(|i| (0..r).map(|j| cols[j][i].clone()).collect())
        .collect()
}

impl TorsionModule {
    /// det of the Frobenius matrix in A/ℓⁿ.
    pub fn frobenius_det(&self) -> UPoly {
        let m = dm_frobenius_matrix(self);
        upoly_det(&m, self.module.fq(), Some(&self.ell_n))
    }
}

/// F_p-dimension of the geometric kernel of Φ_a: deg_τ − ord_τ.
pub fn dm_char_torsion_dim(module: &DrinfeldModule, a: &UPoly) -> Result<usize> {
    let f = module.phi(a);
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    Ok(deg - f.order().unwrap())
}
