//! Machine-readable output: versioned JSON documents and CSV tables.

use effham_core::rigidity::{Verdict, Witness};
use effham_core::verify::VerifyReport;
use effham_core::{ExpansionResult, HbarSample};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_row(values: &[f64]) -> String {
    values.iter().map(|x| sci(*x)).collect::<Vec<_>>().join(",")
}

pub fn eval(x: &[f64], value: f64) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "x": x, "value": value })
}

pub fn expansion(e: &ExpansionResult) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "Q": e.q,
        "order": e.order,
        "a": e.a,
        "min_denominator": e.min_denominator,
        "imaginary_residue": e.imaginary_residue,
    })
}

pub fn hbar_csv(samples: &[HbarSample]) -> String {
    let dim = samples.first().map_or(0, |s| s.p.len());
    let mut header: Vec<String> = (1..=dim).map(|i| format!("p{i}")).collect();
    header.push("hbar".into());
    header.push("error_estimate".into());
    let mut out = header.join(",");
    out.push('\n');
    for s in samples {
        let mut row = s.p.clone();
        row.push(s.value);
        row.push(s.error_estimate);
        out.push_str(&csv_row(&row));
        out.push('\n');
    }
    out
}

fn witness(w: Option<Witness>) -> Value {
    w.map_or(Value::Null, |w| Value::from(w.as_str()))
}

pub fn verdict(v: &Verdict) -> Value {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "tag": v.tag(),
        "c": Value::Null,
        "x0": Value::Null,
        "orientation": Value::Null,
        "scalings": Value::Null,
        "witness": witness(v.witness()),
        "detail": Value::Null,
        "mode_pairing": Value::Null,
    });
    match v {
        Verdict::TransformEquivalent { transform, mode_pairing } => {
            doc["c"] = Value::from(transform.c.to_string());
            doc["x0"] = json!(transform.x0);
            doc["orientation"] = Value::from(transform.orientation.sign());
            doc["mode_pairing"] = json!(mode_pairing);
        }
        Verdict::EffectivelyEqual { scalings, mode_pairing } => {
            doc["scalings"] = json!(scalings.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            doc["mode_pairing"] = json!(mode_pairing);
        }
        Verdict::NotEquivalent { detail, .. } => doc["detail"] = Value::from(detail.as_str()),
        Verdict::OutOfScope { reason } => doc["detail"] = Value::from(reason.as_str()),
    }
    doc
}

pub fn verify(r: &VerifyReport) -> Value {
    let mut verdict = verdict(&r.verdict);
    verdict.as_object_mut().expect("verdict is an object").remove("schema_version");
    json!({
        "schema_version": SCHEMA_VERSION,
        "verdict": verdict,
        "torus_max": [r.torus_max.0, r.torus_max.1],
        "hbar": r.hbar.iter().map(|h| json!({
            "p": h.p, "first": h.first, "second": h.second, "error_estimate": h.error_estimate,
        })).collect::<Vec<_>>(),
        "max_hbar_discrepancy": r.max_hbar_discrepancy,
        "coefficients": r.coefficients.iter().map(|c| json!({
            "Q": c.q,
            "first": { "a1": c.first[0], "a2": c.first[1], "a4": c.first[2] },
            "second": { "a1": c.second[0], "a2": c.second[1], "a4": c.second[2] },
        })).collect::<Vec<_>>(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name, "passed": c.passed, "detail": c.detail,
        })).collect::<Vec<_>>(),
        "consistent": r.consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            let s = sci(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(csv_row(&[1.0, -0.5]), "1.0000000000000000e0,-5.0000000000000000e-1");
    }

    #[test]
    fn verdict_documents() {
        let v = Verdict::NotEquivalent {
            witness: Witness::PhaseConditionFailed,
            detail: "x".into(),
        };
        let doc = verdict(&v);
        assert_eq!(doc["tag"], "NotEquivalent");
        assert_eq!(doc["witness"], "phase-condition-failed");
        assert_eq!(doc["schema_version"], 1);
        assert!(doc["c"].is_null());
    }
}
