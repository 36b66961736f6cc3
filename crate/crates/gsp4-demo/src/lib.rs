//! WebAssembly bindings for three interactive checks. Every export returns a
//! JSON document so the page can render it without further glue.

use gsp4_local::branching::{build_rep, branch_decompose_rep, check_size, dimension_formula, dual_character_check_rep};
use gsp4_local::gl2local::{
    eq_at_prime, intertwine, phi_t, support_check, IntertwineMode, SiegelSection, UnramChar,
};
use gsp4_local::gsp4local::{hecke_poly_check, PrincipalSeriesG};
use gsp4_local::padic::{gl2_w, lower_unipotent, ppow, QMat};
use gsp4_local::symcore::q;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const PRIMES: [u32; 3] = [2, 3, 5];

fn to_json(r: Result<Value, String>) -> Result<String, String> {
    r.map(|v| v.to_string())
}

/// Hecke polynomial at `ell` evaluated on the spherical eigenvalues against
/// the product of the spin factors.
#[wasm_bindgen]
pub fn hecke_polynomial(ell: u32) -> Result<String, String> {
    if !PRIMES.contains(&ell) {
        return Err(format!("ell must be one of {PRIMES:?}"));
    }
    to_json(
        hecke_poly_check(&PrincipalSeriesG::formal(), ell as u64, &q(0))
            .map(|c| json!({ "ell": ell, "ok": c.ok, "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string() }))
            .map_err(|e| e.to_string()),
    )
}

/// Dimension and restriction to `GL2 x GL2` of the representation with highest weight `(a, b)`.
#[wasm_bindgen]
pub fn branching(a: i32, b: i32) -> Result<String, String> {
    let (a, b) = (a as i64, b as i64);
    check_size(a, b).map_err(|e| e.to_string())?;
    let rep = build_rep(a, b).map_err(|e| e.to_string())?;
    let pieces = branch_decompose_rep(&rep).map_err(|e| e.to_string())?;
    to_json(Ok(json!({
        "a": a,
        "b": b,
        "dimension": rep.dim(),
        "formula": dimension_formula(a, b),
        "self_dual_character": dual_character_check_rep(&rep),
        "constituents": pieces.iter().map(|&(c, d, qq)| json!({ "c": c, "d": d, "q": qq })).collect::<Vec<_>>(),
    })))
}

/// Value at the identity, support and intertwining operator of the Siegel
/// section attached to `phi_t` at `ell`.
#[wasm_bindgen]
pub fn gl2_section(ell: u32, t: u32) -> Result<String, String> {
    if !PRIMES[..2].contains(&ell) || t > 3 {
        return Err("need ell in {2, 3} and t <= 3".into());
    }
    let p = ell as u64;
    let f = SiegelSection::new(phi_t(p, t as i64), UnramChar::formal("alpha"), UnramChar::formal("beta"));
    let err = |e: gsp4_local::gl2local::Gl2Error| e.to_string();
    let points = [
        ("1", QMat::identity(2)),
        ("w", gl2_w()),
        ("diag(l,1)", QMat::diag(&[q(p as i64), q(1)])),
        ("n-(1/l)", lower_unipotent(ppow(p, -1))),
    ];
    let mut rows = Vec::new();
    for (name, g) in &points {
        let closed = intertwine(&f, g, IntertwineMode::ClosedForm).map_err(err)?;
        let direct = intertwine(&f, g, IntertwineMode::Direct { shell_bound: 8 }).map_err(err)?;
        rows.push(json!({
            "g": name,
            "f": f.eval(g).map_err(err)?.specialize_prime(p).map_err(|e| e.to_string())?.to_string(),
            "intertwined": closed.to_string(),
            "closed_equals_direct": eq_at_prime(&closed, &direct, p),
        }));
    }
    to_json(Ok(json!({
        "ell": ell,
        "t": t,
        "supported_on_b_k0": support_check(&f, t).map_err(err)?,
        "points": rows,
    })))
}
