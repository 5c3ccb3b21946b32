//! `ore`, `drinfeld` and `motive` subcommands.

use anyhow::{bail, Result};
use clap::{Subcommand, ValueEnum};
use dmod_core::drinfeld::{
    dm_frobenius_matrix, dm_frobenius_norm, dm_frobenius_norm_auto, dm_torsion, FrobeniusReport, ReportSummary,
};
use dmod_core::motive::{det_closed_form_holds, det_drinfeld, motive_det, motive_matrix, motive_relation_check, verify_tate_det};
use dmod_core::upoly::monic_irreducibles;
use dmod_core::{ff_embed, ff_make, ore_splitting, upoly_det, Error};
use serde_json::{json, Value};

use crate::enc::{self, check};
use crate::input::{self, Inputs};
use crate::output::{Output, Table};
use crate::Config;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Side {
    /// a = q·b + r.
    Left,
    /// a = b·q + r.
    Right,
}

#[derive(Subcommand)]
pub enum OreCmd {
    /// Product a·b.
    Mul {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Euclidean division with deg r < deg b.
    Divmod {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
    },
    /// f(x) for x in the degree-m extension of the base field.
    Eval {
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = 1)]
        ext_degree: usize,
    },
    /// Roots of f in a given extension, or in the smallest splitting extension within --cap.
    Kernel {
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        ext_degree: Option<usize>,
    },
}

pub fn ore(cmd: &OreCmd, cfg: &Config, inp: &mut Inputs) -> Result<Output> {
    match cmd {
        OreCmd::Mul { a, b } => {
            let a = input::ore(&inp.get(a, "a")?)?;
            let b = input::ore(&inp.get(b, "b")?)?;
            let c = a.try_mul(&b)?;
            Ok(Output::ok(json!({"product": enc::ore(&c)}), enc::ore_text(&c)))
        }
        OreCmd::Divmod { a, b, side } => {
            let a = input::ore(&inp.get(a, "a")?)?;
            let b = input::ore(&inp.get(b, "b")?)?;
            let (q, r) = match side {
                Side::Left => a.divmod_left(&b)?,
                Side::Right => a.divmod_right(&b)?,
            };
            let side = format!("{side:?}").to_lowercase();
            let text = format!("q = {}\nr = {}", enc::ore_text(&q), enc::ore_text(&r));
            Ok(Output::ok(json!({"side": side, "q": enc::ore(&q), "r": enc::ore(&r)}), text))
        }
        OreCmd::Eval { f, x, ext_degree } => {
            let f = input::ore(&inp.get(f, "f")?)?;
            let base = f.base();
            let ext = ff_make(base.p(), base.degree() * ext_degree, cfg.seed)?;
            let emb = ff_embed(base, &ext)?;
            let x = input::element(&ext, &inp.get(x, "x")?)?;
            let v = f.eval_via(&emb, &x)?;
            Ok(Output::ok(json!({"field": enc::field(&ext), "value": enc::elem(&v)}), v.to_string()))
        }
        OreCmd::Kernel { f, ext_degree } => {
            let f = input::ore(&inp.get(f, "f")?)?;
            let base = f.base();
            let (degree, kernel) = match ext_degree {
                Some(m) => {
                    let ext = ff_make(base.p(), base.degree() * m, cfg.seed)?;
                    (*m, f.kernel(&ff_embed(base, &ext)?)?)
                }
                None => {
                    let s = ore_splitting(&f, cfg.cap, cfg.seed)?;
                    (s.degree, s.kernel)
                }
            };
            let text = format!(
                "kernel of dimension {} over F_{} in F_{}^{}",
                kernel.dim(),
                base.p(),
                base.p(),
                kernel.field.degree()
            );
            Ok(Output::ok(
                json!({
                    "field": enc::field(&kernel.field),
                    "ext_degree": degree,
                    "dim": kernel.dim(),
                    "basis": enc::elems(&kernel.basis),
                }),
                text,
            ))
        }
    }
}

#[derive(Subcommand)]
pub enum DrinfeldCmd {
    /// Φ_a and δ(a).
    Phi {
        #[arg(long)]
        module: Option<String>,
        /// Polynomial in t, e.g. "t^2+1" or a JSON list of F_q elements.
        #[arg(long)]
        a: Option<String>,
    },
    /// Certified A/ℓⁿ-basis of E[ℓⁿ] and the Frobenius matrix on it.
    Torsion {
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        ell: Option<String>,
        #[arg(long)]
        n: Option<String>,
    },
    /// Frobenius norm s(𝔓) reconstructed from ℓ-adic determinants.
    Frobnorm {
        #[arg(long)]
        module: Option<String>,
        /// Prime powers "ell:n,ell:n"; planned automatically when absent.
        #[arg(long)]
        primes: Option<String>,
    },
}

fn parse_n(s: &str) -> Result<u32> {
    let n: u32 = s.trim().parse()?;
    if n == 0 {
        bail!("n must be positive");
    }
    Ok(n)
}

pub fn drinfeld(cmd: &DrinfeldCmd, cfg: &Config, inp: &mut Inputs) -> Result<Output> {
    match cmd {
        DrinfeldCmd::Phi { module, a } => {
            let m = input::module(&inp.get(module, "module")?)?;
            let a = input::upoly(m.fq(), &inp.get(a, "a")?, 't')?;
            let phi = m.phi(&a);
            let delta = m.delta(&a);
            Ok(Output::ok(
                json!({"phi_a": enc::ore(&phi), "delta_a": enc::elem(&delta)}),
                format!("Φ_a = {}\nδ(a) = {delta}", enc::ore_text(&phi)),
            ))
        }
        DrinfeldCmd::Torsion { module, ell, n } => {
            let m = input::module(&inp.get(module, "module")?)?;
            let ell = input::upoly(m.fq(), &inp.get(ell, "ell")?, 't')?;
            let n = parse_n(&inp.get_or(n, "n", "1"))?;
            let tm = dm_torsion(&m, &ell, n, cfg.cap, cfg.seed)?;
            let frob = dm_frobenius_matrix(&tm);
            let det = upoly_det(&frob, m.fq(), Some(tm.modulus()));
            let deg = ell.degree().unwrap_or(0) * n as usize;
            let expected = (m.q() as u128).pow((m.rank() * deg) as u32);
            let rank_ok = tm.basis().len() == m.rank();
            let card_ok = tm.cardinality() == expected;
            let text = format!(
                "E[({})^{n}] in F_{}^{}: {} points, basis size {} (rank {}): {}\ndet Frob = {}",
                enc::poly_text(&ell),
                m.field().p(),
                tm.ext().degree(),
                tm.cardinality(),
                tm.basis().len(),
                m.rank(),
                check(rank_ok && card_ok),
                enc::poly_text(&det),
            );
            Ok(Output {
                value: json!({
                    "ell": enc::poly(&ell),
                    "n": n,
                    "field": enc::field(tm.ext()),
                    "ext_degree": tm.ext_degree(),
                    "cardinality": tm.cardinality() as u64,
                    "basis": enc::elems(tm.basis()),
                    "frobenius_matrix": enc::matrix(&frob),
                    "frobenius_det": enc::poly(&det),
                    "basis_size_check": rank_ok,
                    "cardinality_check": card_ok,
                }),
                table: None,
                text,
                ok: rank_ok && card_ok,
            })
        }
        DrinfeldCmd::Frobnorm { module, primes } => {
            let m = input::module(&inp.get(module, "module")?)?;
            let (report, plan) = match inp.opt(primes, "primes") {
                Some(s) => (dm_frobenius_norm(&m, &input::prime_powers(m.fq(), &s)?, cfg.cap, cfg.seed)?, None),
                None => {
                    let (r, p) = dm_frobenius_norm_auto(&m, None, cfg.cap, cfg.seed)?;
                    (r, Some(p))
                }
            };
            let mut value = serde_json::to_value(ReportSummary::from(&report))?;
            if let Some(plan) = plan {
                let sets: Vec<Value> = plan
                    .sets
                    .iter()
                    .map(|s| json!(s.iter().map(|(l, n)| (l.to_coords(), n)).collect::<Vec<_>>()))
                    .collect();
                value["prime_sets"] = json!(sets);
            }
            Ok(Output {
                value,
                table: Some(norm_table(std::slice::from_ref(&report).iter().map(|r| norm_row(None, Ok(r))))),
                text: norm_text(None, Ok(&report)),
                ok: report.all_pass(),
            })
        }
    }
}

pub const NORM_HEADER: [&str; 8] = ["P", "d", "ell_n", "s", "independence", "deg_check", "char_divides_check", "status"];

pub fn norm_table(rows: impl Iterator<Item = Vec<String>>) -> Table {
    Table {
        header: NORM_HEADER.to_vec(),
        rows: rows.collect(),
    }
}

fn ell_n_text(r: &FrobeniusReport) -> String {
    r.residues
        .iter()
        .map(|x| format!("({})^{}", enc::poly_text(&x.ell), x.n))
        .collect::<Vec<_>>()
        .join(";")
}

/// One CSV row; `place` overrides the report's own place for error rows.
pub fn norm_row(place: Option<&dmod_core::UPoly>, r: std::result::Result<&FrobeniusReport, &Error>) -> Vec<String> {
    let p = place.map(enc::poly_text).unwrap_or_default();
    match r {
        Ok(r) => vec![
            p,
            r.d.to_string(),
            ell_n_text(r),
            enc::poly_text(&r.s),
            r.independent.to_string(),
            r.degree_ok.to_string(),
            r.char_divides.to_string(),
            if r.all_pass() { "ok" } else { "fail" }.into(),
        ],
        Err(Error::BadReduction) => vec![p, String::new(), String::new(), String::new(), String::new(), String::new(), String::new(), "bad_reduction".into()],
        Err(e) => vec![p, String::new(), String::new(), String::new(), String::new(), String::new(), String::new(), format!("error: {e}")],
    }
}

pub fn norm_text(place: Option<&dmod_core::UPoly>, r: std::result::Result<&FrobeniusReport, &Error>) -> String {
    let p = place.map(|p| format!("P = {}: ", enc::poly_text(p))).unwrap_or_default();
    match r {
        Ok(r) => format!(
            "{p}s = {} (monic {}) from {}; independence {}, degree {}, characteristic {}\n",
            enc::poly_text(&r.s),
            enc::poly_text(&r.s_monic),
            ell_n_text(r),
            check(r.independent),
            check(r.degree_ok),
            check(r.char_divides),
        ),
        Err(Error::BadReduction) => format!("{p}bad reduction\n"),
        Err(e) => format!("{p}error: {e}\n"),
    }
}

#[derive(Subcommand)]
pub enum MotiveCmd {
    /// The rank-one determinant motive τ_D = c(t − θ)σ and its Drinfeld module ψ.
    Det {
        #[arg(long)]
        module: Option<String>,
    },
    /// Frobenius determinant on E[ℓⁿ] against the Frobenius scalar of det E.
    VerifyTateDet {
        #[arg(long)]
        module: Option<String>,
        /// Single ℓ; by default every monic irreducible ℓ ≠ 𝔭 of degree ≤ 2.
        #[arg(long)]
        ell: Option<String>,
        /// Single n; by default n ∈ {1, 2}.
        #[arg(long)]
        n: Option<String>,
    },
}

pub fn motive(cmd: &MotiveCmd, cfg: &Config, inp: &mut Inputs) -> Result<Output> {
    match cmd {
        MotiveCmd::Det { module } => {
            let m = input::module(&inp.get(module, "module")?)?;
            let relations = motive_relation_check(&motive_matrix(&m))?;
            let dm = motive_det(&m)?;
            let psi = det_drinfeld(&m)?;
            let closed = det_closed_form_holds(&m)?;
            let text = format!(
                "det τ = ({}) * ({})\nψ_t = {}\nrelations {}, closed form {}",
                dm.c,
                dm.factor.display_var("t"),
                enc::ore_text(psi.phi_t()),
                check(relations),
                check(closed),
            );
            Ok(Output {
                value: json!({
                    "c": enc::elem(&dm.c),
                    "factor": enc::poly(&dm.factor),
                    "psi_t": enc::ore(psi.phi_t()),
                    "relation_check": relations,
                    "closed_form_check": closed,
                }),
                table: None,
                text,
                ok: relations && closed,
            })
        }
        MotiveCmd::VerifyTateDet { module, ell, n } => {
            let m = input::module(&inp.get(module, "module")?)?;
            let p_char = m.characteristic();
            let ells = match inp.opt(ell, "ell") {
                Some(s) => vec![input::upoly(m.fq(), &s, 't')?],
                None => (1..=2)
                    .flat_map(|k| monic_irreducibles(m.fq(), k))
                    .filter(|l| *l != p_char)
                    .collect(),
            };
            let ns = match inp.opt(n, "n") {
                Some(s) => vec![parse_n(&s)?],
                None => vec![1, 2],
            };
            let mut rows = Vec::new();
            let mut values = Vec::new();
            let mut text = String::new();
            let mut ok = true;
            for l in &ells {
                for &n in &ns {
                    let lt = enc::poly_text(l);
                    match verify_tate_det(&m, l, n, cfg.cap, cfg.seed) {
                        Ok(c) => {
                            ok &= c.ok;
                            values.push(json!({"ell": enc::poly(l), "n": n, "lhs": enc::poly(&c.lhs), "rhs": enc::poly(&c.rhs), "ok": c.ok}));
                            rows.push(vec![lt.clone(), n.to_string(), enc::poly_text(&c.lhs), enc::poly_text(&c.rhs), c.ok.to_string()]);
                            text += &format!("ℓ = {lt}, n = {n}: {} vs {} {}\n", enc::poly_text(&c.lhs), enc::poly_text(&c.rhs), check(c.ok));
                        }
                        // Rows beyond the extension cap are reported, not failed.
                        Err(Error::CapExceeded(cap)) => {
                            values.push(json!({"ell": enc::poly(l), "n": n, "skipped": format!("extension cap {cap} exceeded")}));
                            rows.push(vec![lt.clone(), n.to_string(), String::new(), String::new(), "skipped".into()]);
                            text += &format!("ℓ = {lt}, n = {n}: skipped (cap {cap})\n");
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            Ok(Output {
                value: json!({"checks": values, "all_ok": ok}),
                table: Some(Table {
                    header: vec!["ell", "n", "lhs", "rhs", "ok"],
                    rows,
                }),
                text,
                ok,
            })
        }
    }
}
