use gsp4_demo::{branching, gl2_section, hecke_polynomial};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn hecke_polynomial_holds() {
    for ell in [2, 3] {
        let v = parse(hecke_polynomial(ell).unwrap());
        assert_eq!(v["ok"], true);
        assert_eq!(v["lhs"], v["rhs"]);
    }
    assert!(hecke_polynomial(7).is_err());
}

#[test]
fn branching_reports_dimension_and_constituents() {
    let v = parse(branching(1, 0).unwrap());
    assert_eq!(v["dimension"], 5);
    let v = parse(branching(0, 1).unwrap());
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["formula"], 4);
    assert_eq!(v["constituents"].as_array().unwrap().len(), 2);
    let v = parse(branching(1, 1).unwrap());
    assert_eq!(v["dimension"], 16);
    assert!(branching(4, 0).is_err());
}

#[test]
fn gl2_section_matches_closed_form() {
    let v = parse(gl2_section(2, 1).unwrap());
    assert_eq!(v["supported_on_b_k0"], true);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 4);
    assert!(pts.iter().all(|p| p["closed_equals_direct"] == true));
    assert_eq!(pts[1]["f"], "0");
    assert!(gl2_section(5, 1).is_err());
}
