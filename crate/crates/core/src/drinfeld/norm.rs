//! Frobenius norms s(𝔓) reconstructed from ℓ-adic residues by CRT.

use serde::Serialize;

use super::family::DrinfeldFamily;
use super::torsion::{dm_frobenius_matrix, dm_torsion};
use super::DrinfeldModule;
use crate::error::{Error, Result};
use crate::upoly::{monic_irreducibles, upoly_crt, upoly_det, UPoly};

/// Frobenius data on one E[ℓⁿ].
#[derive(Clone, Debug)]
pub struct Residue {
    pub ell: UPoly,
    pub n: u32,
    pub modulus: UPoly,
    pub ext_degree: usize,
    pub matrix: Vec<Vec<UPoly>>,
    pub det: UPoly,
}

impl Residue {
    pub fn compute(module: &DrinfeldModule, ell: &UPoly, n: u32, cap: usize, seed: u64) -> Result<Self> {
        let tm = dm_torsion(module, ell, n, cap, seed)?;
        let matrix = dm_frobenius_matrix(&tm);
        let det = upoly_det(&matrix, module.fq(), Some(tm.modulus()));
        Ok(Residue {
            ell: ell.clone(),
            n,
            modulus: tm.modulus().clone(),
            ext_degree: tm.ext_degree(),
            matrix,
            det,
        })
    }

    fn weight(&self) -> usize {
        self.modulus.degree().unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct FrobeniusReport {
    /// The place, when the module is a reduction of a family.
    pub place: Option<UPoly>,
    pub d: usize,
    pub char_ideal: UPoly,
    pub residues: Vec<Residue>,
    /// Exact CRT lift of the determinants.
    pub s: UPoly,
    pub s_monic: UPoly,
    pub independent: bool,
    pub degree_ok: bool,
    pub char_divides: bool,
}

impl FrobeniusReport {
    pub fn all_pass(&self) -> bool {
        self.independent && self.degree_ok && self.char_divides
    }
}

/// True iff every sub-family of total degree ≥ d+1 reconstructs `s`.
pub fn subsets_agree(residues: &[Residue], d: usize, s: &UPoly) -> bool {
    let k = residues.len();
    assert!(k < 20, "too many residues for subset enumeration");
    (1u32..(1 << k)).all(|mask| {
        let chosen: Vec<&Residue> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &residues[i])
            .collect();
        if chosen.iter().map(|r| r.weight()).sum::<usize>() < d + 1 {
            return true;
        }
        let sys: Vec<(UPoly, UPoly)> = chosen
            .iter()
            .map(|r| (r.det.clone(), r.modulus.clone()))
            .collect();
        upoly_crt(&sys).is_ok_and(|v| &v == s)
    })
}

/// Assembles the report from already computed residues.
pub fn report_from_residues(
    module: &DrinfeldModule,
    residues: Vec<Residue>,
    place: Option<UPoly>,
) -> Result<FrobeniusReport> {
    let d = module.base_degree();
    let have: usize = residues.iter().map(|r| r.weight()).sum();
    if have < d + 1 {
        return Err(Error::InsufficientModulus { have, need: d + 1 });
    }
    let sys: Vec<(UPoly, UPoly)> = residues
        .iter()
        .map(|r| (r.det.clone(), r.modulus.clone()))
        .collect();
    let s = upoly_crt(&sys)?;
    Ok(FrobeniusReport {
        place,
        d,
        char_ideal: module.characteristic(),
        independent: subsets_agree(&residues, d, &s),
        degree_ok: s.degree() == Some(d),
        char_divides: module.delta(&s).is_zero(),
        s_monic: s.monic(),
        s,
        residues,
    })
}

/// s(𝔓) from the given (ℓ, n), which must satisfy Σ n·deg ℓ ≥ d+1.
pub fn dm_frobenius_norm(
    module: &DrinfeldModule,
    primes: &[(UPoly, u32)],
    cap: usize,
    seed: u64,
) -> Result<FrobeniusReport> {
    let d = module.base_degree();
    let have: usize = primes.iter().map(|(l, n)| l.degree().unwrap_or(0) * *n as usize).sum();
    if have < d + 1 {
        return Err(Error::InsufficientModulus { have, need: d + 1 });
    }
    let residues = primes
        .iter()
        .map(|(l, n)| Residue::compute(module, l, *n, cap, seed))
        .collect::<Result<Vec<_>>>()?;
    report_from_residues(module, residues, None)
}

/// Two disjoint families of prime powers, each of total degree ≥ d+1.
#[derive(Clone, Debug)]
pub struct PrimeSetPlan {
    pub sets: [Vec<(UPoly, u32)>; 2],
    /// Residues of both sets, first set first.
    pub residues: Vec<Residue>,
}

impl PrimeSetPlan {
    /// CRT value of each set on its own.
    pub fn set_values(&self) -> Result<[UPoly; 2]> {
        let k0 = self.sets[0].len();
        let crt = |rs: &[Residue]| {
            let sys: Vec<(UPoly, UPoly)> =
                rs.iter().map(|r| (r.det.clone(), r.modulus.clone())).collect();
            upoly_crt(&sys)
        };
        Ok([crt(&self.residues[..k0])?, crt(&self.residues[k0..])?])
    }
}

/// Chooses ℓ ≠ 𝔭 by increasing degree. For each ℓ, n starts at the smallest value
/// closing the gap of the lighter set, capped (in rank 1) by the largest n whose unit
/// group (A/ℓⁿ)^× has order ≤ cap; n is lowered when the splitting extension
/// exceeds the cap.
pub fn plan_prime_sets(module: &DrinfeldModule, cap: usize, seed: u64) -> Result<PrimeSetPlan> {
    let need = module.base_degree() + 1;
    let p_char = module.characteristic();
    let q = module.q() as u128;
    let mut sets: [Vec<(UPoly, u32)>; 2] = [Vec::new(), Vec::new()];
    let mut res: [Vec<Residue>; 2] = [Vec::new(), Vec::new()];
    let mut totals = [0usize; 2];
    'outer: for k in 1..=need + 2 {
        for ell in monic_irreducibles(module.fq(), k) {
            if totals[0] >= need && totals[1] >= need {
                break 'outer;
            }
            if ell == p_char {
                continue;
            }
            let target = if totals[0] <= totals[1] { 0 } else { 1 };
            let gap = need.saturating_sub(totals[target]);
            let mut n_start = gap.div_ceil(k).max(1) as u32;
            if module.rank() == 1 {
                let big_q = q.pow(k as u32);
                let mut n_max = 0u32;
                while (big_q - 1) * big_q.pow(n_max) <= cap as u128 {
                    n_max += 1;
                }
                n_start = n_start.min(n_max.max(1));
            }
            for n in (1..=n_start).rev() {
                match Residue::compute(module, &ell, n, cap, seed) {
                    Ok(r) => {
                        totals[target] += k * n as usize;
                        sets[target].push((ell.clone(), n));
                        res[target].push(r);
                        break;
                    }
                    Err(Error::CapExceeded(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    if totals[0] < need || totals[1] < need {
        return Err(Error::InsufficientModulus {
            have: totals[0].min(totals[1]),
            need,
        });
    }
    let [r0, r1] = res;
    Ok(PrimeSetPlan {
        sets,
        residues: r0.into_iter().chain(r1).collect(),
    })
}

/// s(𝔓) with an automatically planned pair of disjoint prime sets.
pub fn dm_frobenius_norm_auto(
    module: &DrinfeldModule,
    place: Option<UPoly>,
    cap: usize,
    seed: u64,
) -> Result<(FrobeniusReport, PrimeSetPlan)> {
    let plan = plan_prime_sets(module, cap, seed)?;
    let report = report_from_residues(module, plan.residues.clone(), place)?;
    Ok((report, plan))
}

/// One row per monic irreducible P of degree ≤ `max_deg`, sorted by (deg P, P).
pub fn family_norm_table(
    family: &DrinfeldFamily,
    max_deg: usize,
    cap: usize,
    seed: u64,
) -> Vec<(UPoly, Result<(FrobeniusReport, PrimeSetPlan)>)> {
    (1..=max_deg)
        .flat_map(|k| monic_irreducibles(family.fq(), k))
        .map(|pl| {
            let row = super::family::family_specialize(family, &pl, seed)
                .and_then(|m| dm_frobenius_norm_auto(&m, Some(pl.clone()), cap, seed));
            (pl, row)
        })
        .collect()
}

/// Serializable projection of a report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportSummary {
    pub place: Option<Vec<Vec<u64>>>,
    pub d: usize,
    pub ell_n: Vec<(Vec<Vec<u64>>, u32)>,
    pub dets: Vec<Vec<Vec<u64>>>,
    pub s: Vec<Vec<u64>>,
    pub s_monic: Vec<Vec<u64>>,
    pub independence: bool,
    pub deg_check: bool,
    pub char_divides_check: bool,
}

impl From<&FrobeniusReport> for ReportSummary {
    fn from(r: &FrobeniusReport) -> Self {
        ReportSummary {
            place: r.place.as_ref().map(|p| p.to_coords()),
            d: r.d,
            ell_n: r.residues.iter().map(|x| (x.ell.to_coords(), x.n)).collect(),
            dets: r.residues.iter().map(|x| x.det.to_coords()).collect(),
            s: r.s.to_coords(),
            s_monic: r.s_monic.to_coords(),
            independence: r.independent,
            deg_check: r.degree_ok,
            char_divides_check: r.char_divides,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ff_make;

    #[test]
    fn carlitz_f4_norm() {
        let l = ff_make(2, 2, 0).unwrap();
        let fq = ff_make(2, 1, 0).unwrap();
        let m = DrinfeldModule::carlitz(&l, &fq, l.gen()).unwrap();
        let primes = vec![
            (UPoly::from_ints(&fq, &[0, 1]), 1),
            (UPoly::from_ints(&fq, &[1, 1]), 1),
        ];
        // Two degree-1 residues only reach total 2 < d + 1 = 3.
        assert!(matches!(
            dm_frobenius_norm(&m, &primes, 12, 0),
            Err(Error::InsufficientModulus { have: 2, need: 3 })
        ));
        let primes = vec![
            (UPoly::from_ints(&fq, &[0, 1]), 2),
            (UPoly::from_ints(&fq, &[1, 1]), 1),
        ];
        let rep = dm_frobenius_norm(&m, &primes, 12, 0).unwrap();
        assert_eq!(rep.s.to_ints().unwrap(), vec![1, 1, 1]);
        assert!(rep.all_pass());
        for r in &rep.residues {
            assert_eq!(rep.s.rem(&r.modulus).unwrap(), r.det);
        }
    }

    #[test]
    fn rank_two_over_f2_has_degree_one_norm() {
        let f2 = ff_make(2, 1, 0).unwrap();
        let m = DrinfeldModule::new(&f2, &f2, f2.one(), vec![f2.one(), f2.one()], 0).unwrap();
        let (rep, plan) = dm_frobenius_norm_auto(&m, None, 16, 0).unwrap();
        assert_eq!(rep.s.degree(), Some(1));
        assert!(rep.all_pass());
        let [a, b] = plan.set_values().unwrap();
        assert_eq!(a, b);
    }
}
