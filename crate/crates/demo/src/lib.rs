//! wasm-bindgen entry points for the static page in `www/`. Every export
//! returns a JSON string; failures come back as `{"error", "detail"}`.

use hecke_core::algebra::{coset_product, element_json};
use hecke_core::catalog::{self, CatalogEntry};
use hecke_core::certify::{certificate_json, l1_certificate, CertificateJson};
use hecke_core::graph::{closure as run_closure, closure_json, ClosureJson};
use hecke_core::group::{GroupOracle, HeckePair};
use hecke_core::{with_pair, HeckeError};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Closures drawn in the browser stay small.
const MAX_BUDGET: usize = 128;

fn error_json(e: &HeckeError) -> String {
    serde_json::json!({ "error": e.code(), "detail": e.to_string() }).to_string()
}

fn finish<T: Serialize>(r: hecke_core::Result<T>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => error_json(&e),
    }
}

fn with_entry<T>(
    pair: &str,
    p: u32,
    f: impl FnOnce(&catalog::AnyPair, &CatalogEntry) -> hecke_core::Result<T>,
) -> hecke_core::Result<T> {
    let p = if p == 0 { None } else { Some(p as u64) };
    let (any, entry) = catalog::build(pair, p)?;
    f(&any, &entry)
}

#[derive(Serialize)]
struct CertifyOutput {
    closure: ClosureJson,
    certificate: Option<CertificateJson>,
    error: Option<String>,
}

fn closure_of<O: GroupOracle>(pair: &HeckePair<O>, elem: &str, budget: usize) -> hecke_core::Result<ClosureJson> {
    let root = pair.double_coset(&pair.parse(elem)?)?;
    let report = run_closure(pair, &root, budget.clamp(1, MAX_BUDGET))?;
    Ok(closure_json(pair, &report))
}

fn certify_of<O: GroupOracle>(pair: &HeckePair<O>, elem: &str, budget: usize) -> hecke_core::Result<CertifyOutput> {
    let root = pair.double_coset(&pair.parse(elem)?)?;
    let report = run_closure(pair, &root, budget.clamp(1, MAX_BUDGET))?;
    let (certificate, error) = match l1_certificate(pair, &report) {
        Ok(c) => (Some(certificate_json(pair, &c)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(CertifyOutput { closure: closure_json(pair, &report), certificate, error })
}

fn product_of<O: GroupOracle>(pair: &HeckePair<O>, a: &str, b: &str) -> hecke_core::Result<serde_json::Value> {
    let a = pair.double_coset(&pair.parse(a)?)?;
    let b = pair.double_coset(&pair.parse(b)?)?;
    let f = coset_product(pair, &a, &b)?;
    Ok(serde_json::to_value(element_json(pair, &f)).expect("serializable"))
}

/// Catalog listing with element syntax and seed cosets.
#[wasm_bindgen]
pub fn catalog() -> String {
    serde_json::to_string(&catalog::listing()).expect("serializable")
}

/// Co-hereditary closure of `ΓelemΓ`. `p = 0` selects the default prime.
#[wasm_bindgen]
pub fn closure(pair: &str, p: u32, elem: &str, budget: usize) -> String {
    finish(with_entry(pair, p, |any, _| with_pair!(any, q => closure_of(q, elem, budget))))
}

/// Closure plus L¹ certificate when the closure is finite.
#[wasm_bindgen]
pub fn certify(pair: &str, p: u32, elem: &str, budget: usize) -> String {
    finish(with_entry(pair, p, |any, _| with_pair!(any, q => certify_of(q, elem, budget))))
}

/// Expansion of `ΓaΓ * ΓbΓ` in the double-coset basis.
#[wasm_bindgen]
pub fn product(pair: &str, p: u32, a: &str, b: &str) -> String {
    finish(with_entry(pair, p, |any, _| with_pair!(any, q => product_of(q, a, b))))
}
