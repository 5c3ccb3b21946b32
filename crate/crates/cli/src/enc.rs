//! JSON encodings of library values. Elements are coordinate lists, low degree first.

use dmod_core::{FFElem, FField, OrePoly, UPoly};
use serde_json::{json, Value};

pub fn field(f: &FField) -> Value {
    serde_json::to_value(f.desc()).expect("field descriptions serialize")
}

pub fn elem(x: &FFElem) -> Value {
    json!(x.coeffs())
}

pub fn elems(xs: &[FFElem]) -> Value {
    Value::Array(xs.iter().map(elem).collect())
}

pub fn poly(f: &UPoly) -> Value {
    json!(f.to_coords())
}

/// `t`-polynomial in text form.
pub fn poly_text(f: &UPoly) -> String {
    f.display_var("t")
}

pub fn ore(f: &OrePoly) -> Value {
    json!({"field": field(f.base()), "coeffs": elems(f.coeffs())})
}

pub fn ore_text(f: &OrePoly) -> String {
    f.display_var("τ")
}

pub fn matrix(m: &[Vec<UPoly>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(poly).collect())).collect())
}

pub fn check(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}
