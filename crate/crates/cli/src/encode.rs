//! Exact values as JSON.
//!
//! Rationals become `{"num", "den", "decimal"}`; other cyclotomics become
//! `{"zeta_order", "coeffs", "decimal"}` with the coefficients of
//! `1, ζ, ζ², ...` as rationals. Integers are written as strings so that
//! arbitrarily large values survive.

use fingeom::calculus::GroupFunction;
use fingeom::{Cyclotomic, ExactMatrix};
use num_rational::BigRational;
use serde_json::{json, Value};

pub fn rational(r: &BigRational) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "decimal": Cyclotomic::from_rational(r.clone()).to_decimal_string(),
    })
}

fn bare_rational(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn exact(c: &Cyclotomic) -> Value {
    match c.to_rational() {
        Some(r) => rational(&r),
        None => json!({
            "zeta_order": c.order(),
            "coeffs": c.coeffs().iter().map(bare_rational).collect::<Vec<_>>(),
            "decimal": c.to_decimal_string(),
        }),
    }
}

pub fn vector(values: &[Cyclotomic]) -> Value {
    Value::Array(values.iter().map(exact).collect())
}

pub fn matrix(m: &ExactMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

/// A constant function collapses to its value; anything else is listed per
/// group element.
pub fn function(f: &GroupFunction) -> Value {
    match f.as_constant() {
        Some(c) => exact(c),
        None => json!({ "values": vector(f.values()) }),
    }
}

pub fn functions(fs: &[GroupFunction]) -> Value {
    Value::Array(fs.iter().map(function).collect())
}

/// Short key for maps such as spectra: `3`, `-21/4`, or the cyclotomic display.
pub fn key(c: &Cyclotomic) -> String {
    match c.to_rational() {
        Some(r) => r.to_string(),
        None => c.to_string(),
    }
}
