//! `frobrec` subcommands. Exit status 0 iff the answer is positive.

use anyhow::{bail, Result};
use clap::Subcommand;
use dmod_core::frobrec::parse::{parse_sparse, split_fraction};
use dmod_core::frobrec::{
    classify_frobenius_bivariate, recover_monomial_exponent, theorem_frob_res, BivarPoly, Consistency,
    FrobClassification, FrobVerdict, RatFunc,
};
use dmod_core::{ff_make, UPoly};
use serde_json::{json, Value};

use crate::enc;
use crate::input::{self, Inputs};
use crate::output::Output;

#[derive(Subcommand)]
pub enum FrobrecCmd {
    /// Whether an irreducible P ∈ F_p[X,Y] is X^{p^k} − Y or Y^{p^k} − X up to a scalar.
    Classify {
        #[arg(long)]
        p: Option<String>,
        /// Sparse text such as "Y^2+X" or "3*X^2*Y - 1".
        #[arg(long)]
        poly: Option<String>,
    },
    /// The n with R = X^n, for R = num/den in F_p(X).
    RecoverMonomial {
        #[arg(long)]
        p: Option<String>,
        /// "X^3", "1/X" or "X^2/(X+1)".
        #[arg(long)]
        r: Option<String>,
    },
    /// Whether generator images f(b_i) in F_p(u) come from one Frobenius power.
    Theorem {
        #[arg(long)]
        p: Option<String>,
        /// Comma-separated rational functions in u.
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        images: Option<String>,
    },
}

fn prime(inp: &mut Inputs, p: &Option<String>) -> Result<u64> {
    Ok(inp.get(p, "p")?.trim().parse()?)
}

fn witness_json(c: &FrobClassification) -> Value {
    match c {
        FrobClassification::NotFrobenius(w) => {
            json!({"field": enc::field(&w.field), "x": enc::elem(&w.x), "y": enc::elem(&w.y)})
        }
        _ => Value::Null,
    }
}

pub fn classification_json(c: &FrobClassification) -> Value {
    match c {
        FrobClassification::XtoY(k) => json!({"variant": "XtoY", "k": k}),
        FrobClassification::YtoX(k) => json!({"variant": "YtoX", "k": k}),
        FrobClassification::NotFrobenius(_) => json!({"variant": "NotFrobenius", "witness": witness_json(c)}),
    }
}

fn classification_text(c: &FrobClassification, p: u64) -> String {
    match c {
        FrobClassification::XtoY(k) => format!("XtoY k={k}: X^{} - Y", p.pow(*k)),
        FrobClassification::YtoX(k) => format!("YtoX k={k}: Y^{} - X", p.pow(*k)),
        FrobClassification::NotFrobenius(w) => format!(
            "NotFrobenius: witness x = {}, y = {} in F_{}^{}",
            w.x,
            w.y,
            w.field.p(),
            w.field.degree()
        ),
    }
}

fn xpoly(p: u64, s: &str) -> Result<UPoly> {
    let fp = ff_make(p, 1, 0)?;
    let sparse = parse_sparse(s, &['X'], p)?;
    let deg = sparse.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
    let mut v = vec![fp.zero(); deg + 1];
    for (e, c) in sparse {
        v[e[0] as usize] = fp.from_int(c);
    }
    Ok(UPoly::new(&fp, v))
}

fn consistency_json(c: &Option<Consistency>) -> Value {
    match c {
        None => Value::Null,
        Some(Consistency::Exact(k)) => json!({"exact": k}),
        Some(Consistency::Congruence { residue, modulus }) => json!({"residue": residue, "modulus": modulus}),
        Some(Consistency::Fail) => json!("fail"),
    }
}

pub fn frobrec(cmd: &FrobrecCmd, inp: &mut Inputs) -> Result<Output> {
    match cmd {
        FrobrecCmd::Classify { p, poly } => {
            let p = prime(inp, p)?;
            let poly = BivarPoly::parse(p, &inp.get(poly, "poly")?)?;
            let c = classify_frobenius_bivariate(&poly)?;
            let mut value = classification_json(&c);
            value["poly"] = json!(poly.to_string());
            Ok(Output {
                value,
                table: None,
                text: classification_text(&c, p),
                ok: c.signed_exponent().is_some(),
            })
        }
        FrobrecCmd::RecoverMonomial { p, r } => {
            let p = prime(inp, p)?;
            let s = inp.get(r, "r")?;
            let (num, den) = split_fraction(&s);
            let num = xpoly(p, &num)?;
            let den = xpoly(p, den.as_deref().unwrap_or("1"))?;
            if den.is_zero() {
                bail!("zero denominator");
            }
            // The library expects coprime input; a fraction is reduced first.
            let g = num.gcd(&den);
            let (num, den) = (num.div_exact(&g)?, den.div_exact(&g)?);
            let n = recover_monomial_exponent(&num, &den)?;
            Ok(Output {
                value: json!({"n": n}),
                table: None,
                text: match n {
                    Some(n) => format!("R = X^{n}"),
                    None => "R is not a monomial".into(),
                },
                ok: n.is_some(),
            })
        }
        FrobrecCmd::Theorem { p, gens, images } => {
            let p = prime(inp, p)?;
            let fp = ff_make(p, 1, 0)?;
            let parse = |s: String| -> Result<Vec<RatFunc>> {
                input::list(&s).iter().map(|g| Ok(RatFunc::parse(&fp, g)?)).collect()
            };
            let gens = parse(inp.get(gens, "gens")?)?;
            let images = parse(inp.get(images, "images")?)?;
            if gens.len() != images.len() {
                bail!("{} generators but {} images", gens.len(), images.len());
            }
            let rep = theorem_frob_res(&gens, &images)?;
            let per_gen: Vec<Value> = gens
                .iter()
                .zip(&images)
                .zip(&rep.generators)
                .map(|((g, f), r)| {
                    let mut v = json!({"gen": g.to_string(), "image": f.to_string()});
                    if let Some(r) = r {
                        v["annihilator"] = json!(r.annihilator.to_string());
                        v["factor"] = json!(r.factor.to_string());
                        v["classification"] = classification_json(&r.classification);
                    }
                    v
                })
                .collect();
            let (verdict, text, ok) = match &rep.verdict {
                FrobVerdict::Frobenius { k } => (json!({"frobenius": k}), format!("Frobenius power k = {k}"), true),
                FrobVerdict::Fail { reason } => (json!({"fail": reason}), format!("FAIL: {reason}"), false),
            };
            Ok(Output {
                value: json!({
                    "verdict": verdict,
                    "generators": per_gen,
                    "consistency": consistency_json(&rep.consistency),
                }),
                table: None,
                text,
                ok,
            })
        }
    }
}
