//! Per-prime tables over a family: `carlitz table`, `type2 report`, `residual check`.

use anyhow::Result;
use clap::Subcommand;
use dmod_core::drinfeld::{
    dm_residual_frobenius_check, family_norm_table, family_reduce, DrinfeldFamily, Residual, ReportSummary,
};
use dmod_core::upoly::monic_irreducibles;
use dmod_core::{ff_make, Error};
use serde_json::{json, Value};

use crate::algebra::{norm_row, norm_table, norm_text};
use crate::enc;
use crate::input::{self, Inputs};
use crate::output::{Output, Table};
use crate::Config;

#[derive(Subcommand)]
pub enum CarlitzCmd {
    /// Frobenius norms of the Carlitz module at every prime of degree ≤ max-deg.
    Table {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        e: Option<String>,
        #[arg(long)]
        max_deg: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum Type2Cmd {
    /// Frobenius norms of a family at every prime of degree ≤ max-deg.
    Report {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        max_deg: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum ResidualCmd {
    /// Least k with δ(t) ≡ θ^{p^k} at every good prime of degree ≤ max-deg.
    Check {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        max_deg: Option<String>,
    },
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    s.trim().parse().map_err(|e| anyhow::anyhow!("{what}: {e}"))
}

pub fn carlitz(cmd: &CarlitzCmd, cfg: &Config, inp: &mut Inputs) -> Result<Output> {
    let CarlitzCmd::Table { p, e, max_deg } = cmd;
    let p: u64 = num(&inp.get(p, "p")?, "p")?;
    let e: usize = num(&inp.get_or(e, "e", "1"), "e")?;
    let max_deg: usize = num(&inp.get_or(max_deg, "max_deg", "2"), "max-deg")?;
    let fq = ff_make(p, e, 0)?;
    let fam = DrinfeldFamily::carlitz(&fq);
    Ok(norm_report(&fam, max_deg, cfg))
}

pub fn type2(cmd: &Type2Cmd, cfg: &Config, inp: &mut Inputs) -> Result<Output> {
    let Type2Cmd::Report { family, max_deg } = cmd;
    let fam = input::family(&inp.get(family, "family")?)?;
    let max_deg: usize = num(&inp.get_or(max_deg, "max_deg", "2"), "max-deg")?;
    Ok(norm_report(&fam, max_deg, cfg))
}

/// Rows sorted by (deg P, P); bad reduction is reported but does not fail the run.
fn norm_report(fam: &DrinfeldFamily, max_deg: usize, cfg: &Config) -> Output {
    let rows = family_norm_table(fam, max_deg, cfg.cap, cfg.seed);
    let mut ok = true;
    let mut values = Vec::new();
    let mut text = String::new();
    let mut table = Vec::new();
    for (place, row) in &rows {
        let r = row.as_ref().map(|(r, _)| r);
        table.push(norm_row(Some(place), r));
        text += &norm_text(Some(place), r);
        values.push(match row {
            Ok((r, _)) => {
                ok &= r.all_pass();
                let mut v = serde_json::to_value(ReportSummary::from(r)).expect("summaries serialize");
                v["status"] = json!(if r.all_pass() { "ok" } else { "fail" });
                v
            }
            Err(Error::BadReduction) => json!({"place": enc::poly(place), "status": "bad_reduction"}),
            Err(e) => {
                ok = false;
                json!({"place": enc::poly(place), "status": "error", "error": e.to_string()})
            }
        });
    }
    Output {
        value: json!({"rows": values, "all_pass": ok}),
        table: Some(norm_table(table.into_iter())),
        text,
        ok,
    }
}

/// Smallest k ≥ 0 with k ≡ k_P (mod n_P) for all rows, if one exists.
pub fn global_exponent(congruences: &[(usize, usize)]) -> Option<usize> {
    let period = congruences.iter().fold(1usize, |l, &(_, m)| l / gcd(l, m) * m);
    (0..period).find(|k| congruences.iter().all(|&(r, m)| k % m == r % m))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn residual(cmd: &ResidualCmd, cfg: &Config, inp: &mut Inputs) -> Result<Output> {
    let ResidualCmd::Check { family, max_deg } = cmd;
    let fam = input::family(&inp.get(family, "family")?)?;
    let max_deg: usize = num(&inp.get_or(max_deg, "max_deg", "3"), "max-deg")?;
    let mut ok = true;
    let mut values: Vec<Value> = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut congruences = Vec::new();
    for place in (1..=max_deg).flat_map(|d| monic_irreducibles(fam.fq(), d)) {
        let pt = enc::poly_text(&place);
        let deg = place.degree().unwrap();
        match dm_residual_frobenius_check(&fam, &place, cfg.seed) {
            Ok(Residual::Frobenius(k)) => {
                // k is determined modulo the degree of F_p(θ̄) over F_p.
                let period = family_reduce(&fam, &place, cfg.seed)?.theta_bar.subfield_degree();
                congruences.push((k, period));
                values.push(json!({"place": enc::poly(&place), "status": "frobenius", "k": k, "period": period}));
                rows.push(vec![pt.clone(), deg.to_string(), "frobenius".into(), k.to_string(), period.to_string()]);
                text += &format!("P = {pt}: k = {k} (mod {period})\n");
            }
            Ok(Residual::Fail) => {
                ok = false;
                values.push(json!({"place": enc::poly(&place), "status": "fail"}));
                rows.push(vec![pt.clone(), deg.to_string(), "fail".into(), String::new(), String::new()]);
                text += &format!("P = {pt}: FAIL, δ(t) is no Frobenius power of θ\n");
            }
            Err(Error::BadReduction) => {
                values.push(json!({"place": enc::poly(&place), "status": "bad_reduction"}));
                rows.push(vec![pt.clone(), deg.to_string(), "bad_reduction".into(), String::new(), String::new()]);
                text += &format!("P = {pt}: bad reduction\n");
            }
            Err(e) => return Err(e.into()),
        }
    }
    let k = if ok { global_exponent(&congruences) } else { None };
    ok &= k.is_some();
    text += &match k {
        Some(k) => format!("global k = {k}\n"),
        None => "no global k\n".into(),
    };
    Ok(Output {
        value: json!({"rows": values, "k": k, "all_pass": ok}),
        table: Some(Table {
            header: vec!["P", "deg", "status", "k", "period"],
            rows,
        }),
        text,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::global_exponent;

    #[test]
    fn global_exponent_scan() {
        assert_eq!(global_exponent(&[(0, 1), (1, 2), (1, 3)]), Some(1));
        assert_eq!(global_exponent(&[(0, 2), (1, 4)]), None);
        assert_eq!(global_exponent(&[]), Some(0));
    }
}
