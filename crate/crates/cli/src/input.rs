//! JSON and plain-text input shapes.
//!
//! Field: `{"p","n","modulus"}`. Element: an int (prime field) or a coefficient list.
//! OrePoly: `{"field","coeffs":[elem]}`. Module: `{"field","e","theta","coeffs",
//! "twist_index"?,"fq"?}`. Family: `{"p","e","r","delta","coeffs","fq"?}` with
//! polynomials in θ given as lists of F_q elements.

use std::io::{IsTerminal, Read};

use anyhow::{anyhow, bail, Context, Result};
use dmod_core::drinfeld::{DrinfeldFamily, DrinfeldModule};
use dmod_core::frobrec::parse::parse_sparse;
use dmod_core::{ff_make, FFElem, FField, FieldDesc, OrePoly, UPoly};
use serde::Deserialize;
use serde_json::Value;

/// Flag values, falling back to keys of a JSON object read from stdin.
pub struct Inputs {
    stdin: Option<Value>,
}

impl Inputs {
    pub fn new() -> Self {
        Inputs { stdin: None }
    }

    fn stdin(&mut self) -> Result<&Value> {
        if self.stdin.is_none() {
            let mut s = String::new();
            if !std::io::stdin().is_terminal() {
                std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            }
            let v = if s.trim().is_empty() {
                Value::Null
            } else {
                serde_json::from_str(&s).context("stdin must be a JSON object")?
            };
            self.stdin = Some(v);
        }
        Ok(self.stdin.as_ref().unwrap())
    }

    /// The flag's value, or stdin's `key` rendered as a string.
    pub fn get(&mut self, flag: &Option<String>, key: &str) -> Result<String> {
        if let Some(v) = flag {
            return Ok(v.clone());
        }
        match self.stdin()?.get(key) {
            Some(Value::String(s)) => Ok(s.clone()),
            Some(v) => Ok(v.to_string()),
            None => bail!("missing --{key} (not given as a flag nor on stdin)"),
        }
    }

    /// An optional value. Stdin is consulted only if a required key already loaded it,
    /// so optional keys never block on an open but silent stdin.
    pub fn opt(&self, flag: &Option<String>, key: &str) -> Option<String> {
        if let Some(v) = flag {
            return Some(v.clone());
        }
        match self.stdin.as_ref()?.get(key)? {
            Value::String(s) => Some(s.clone()),
            v => Some(v.to_string()),
        }
    }

    pub fn get_or(&self, flag: &Option<String>, key: &str, default: &str) -> String {
        self.opt(flag, key).unwrap_or_else(|| default.to_string())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElemRepr {
    Int(i64),
    Coords(Vec<i64>),
}

fn elem(f: &FField, v: &Value) -> Result<FFElem> {
    let r: ElemRepr = serde_json::from_value(v.clone()).context("field element")?;
    let mut coords: Vec<u64> = match r {
        ElemRepr::Int(i) => vec![i.rem_euclid(f.p() as i64) as u64],
        ElemRepr::Coords(c) => c.iter().map(|x| x.rem_euclid(f.p() as i64) as u64).collect(),
    };
    if coords.len() > f.degree() {
        bail!("element has more coordinates than the field degree {}", f.degree());
    }
    coords.resize(f.degree(), 0);
    Ok(f.element(&coords)?)
}

fn elems(f: &FField, v: &Value) -> Result<Vec<FFElem>> {
    v.as_array()
        .ok_or_else(|| anyhow!("expected a list of field elements"))?
        .iter()
        .map(|x| elem(f, x))
        .collect()
}

pub fn json(s: &str) -> Result<Value> {
    serde_json::from_str(s).with_context(|| format!("invalid JSON: {s}"))
}

pub fn field(v: &Value) -> Result<FField> {
    let d: FieldDesc = serde_json::from_value(v.clone()).context("field description")?;
    Ok(FField::from_desc(&d)?)
}

pub fn element(f: &FField, s: &str) -> Result<FFElem> {
    elem(f, &json(s)?)
}

pub fn ore(s: &str) -> Result<OrePoly> {
    let v = json(s)?;
    let f = field(v.get("field").ok_or_else(|| anyhow!("OrePoly needs \"field\""))?)?;
    let c = elems(&f, v.get("coeffs").ok_or_else(|| anyhow!("OrePoly needs \"coeffs\""))?)?;
    Ok(OrePoly::new(&f, c))
}

pub fn module(s: &str) -> Result<DrinfeldModule> {
    let v = json(s)?;
    let l = field(v.get("field").ok_or_else(|| anyhow!("module needs \"field\""))?)?;
    let e = v.get("e").and_then(Value::as_u64).unwrap_or(1) as usize;
    let fq = match v.get("fq") {
        Some(d) => field(d)?,
        None => ff_make(l.p(), e, 0)?,
    };
    if fq.degree() != e {
        bail!("\"fq\" has degree {} but \"e\" is {e}", fq.degree());
    }
    let theta = elem(&l, v.get("theta").ok_or_else(|| anyhow!("module needs \"theta\""))?)?;
    let coeffs = elems(&l, v.get("coeffs").ok_or_else(|| anyhow!("module needs \"coeffs\""))?)?;
    let t = v.get("twist_index").and_then(Value::as_u64).unwrap_or(0) as usize;
    Ok(DrinfeldModule::new(&l, &fq, theta, coeffs, t)?)
}

fn poly_from_value(fq: &FField, v: &Value) -> Result<UPoly> {
    Ok(UPoly::new(fq, elems(fq, v)?))
}

pub fn family(s: &str) -> Result<DrinfeldFamily> {
    let v = json(s)?;
    let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| anyhow!("family needs \"p\""))?;
    let e = v.get("e").and_then(Value::as_u64).unwrap_or(1) as usize;
    let fq = match v.get("fq") {
        Some(d) => field(d)?,
        None => ff_make(p, e, 0)?,
    };
    let delta = poly_from_value(&fq, v.get("delta").ok_or_else(|| anyhow!("family needs \"delta\""))?)?;
    let coeffs: Vec<UPoly> = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("family needs \"coeffs\""))?
        .iter()
        .map(|c| poly_from_value(&fq, c))
        .collect::<Result<_>>()?;
    if let Some(r) = v.get("r").and_then(Value::as_u64) {
        if r as usize != coeffs.len() {
            bail!("\"r\" is {r} but {} coefficients were given", coeffs.len());
        }
    }
    Ok(DrinfeldFamily::new(&fq, delta, coeffs)?)
}

/// A polynomial over `base`: a JSON coefficient list, or text such as `t^2+t+1`.
pub fn upoly(base: &FField, s: &str, var: char) -> Result<UPoly> {
    let t = s.trim();
    if t.starts_with('[') {
        return poly_from_value(base, &json(t)?);
    }
    let sparse = parse_sparse(t, &[var], base.p())?;
    let deg = sparse.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
    let mut v = vec![base.zero(); deg + 1];
    for (e, c) in sparse {
        v[e[0] as usize] = base.from_int(c);
    }
    Ok(UPoly::new(base, v))
}

/// `ell:n,ell:n,…` with ℓ in text syntax.
pub fn prime_powers(base: &FField, s: &str) -> Result<Vec<(UPoly, u32)>> {
    s.split(',')
        .map(|item| {
            let (l, n) = item.rsplit_once(':').unwrap_or((item, "1"));
            Ok((upoly(base, l, 't')?, n.trim().parse().context("exponent")?))
        })
        .collect()
}

/// Comma-separated list.
pub fn list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}
