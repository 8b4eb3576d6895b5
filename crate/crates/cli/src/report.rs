//! JSON reports. Objects serialize with sorted keys and integers only, so a
//! report is byte-identical across runs. Element sets are sorted index arrays
//! and isomorphism types are certificate digests.

use std::sync::Arc;

use ogroup_core::decomposition::simple_normal_certificates;
use ogroup_core::{
    certificate, decompose, is_semisimple, join_normal, normal_omega_subgroups, sdr_report_in, simple_normal_subgroups,
    Error, Limits, OmegaGroup, SdrReport, Subgroup,
};
use serde_json::{json, Map, Value};

pub const FORMAT: &str = "ogroup-report/1";

pub fn members(h: &Subgroup) -> Value {
    json!(h.members().to_vec())
}

pub fn subgroup(h: &Subgroup) -> Value {
    json!({ "members": members(h), "order": h.order() })
}

pub fn sdr(report: &SdrReport) -> Value {
    json!({
        "cc": report.cc_holds,
        "mi": report.mi_holds,
        "injective": report.injective,
        "surjective": report.surjective,
        "bijective": report.bijective,
    })
}

/// Join of the minimal nontrivial normal Ω-subgroups, reported next to the
/// socle for comparison.
fn classical_socle(group: &OmegaGroup, limits: &Limits) -> Result<Subgroup, Error> {
    let normals = normal_omega_subgroups(group, limits)?;
    let minimal: Vec<Subgroup> = normals
        .iter()
        .filter(|n| {
            !n.is_trivial()
                && !normals
                    .iter()
                    .any(|m| !m.is_trivial() && m != *n && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    join_normal(group, &minimal)
}

/// Everything `analyze` computes about one group; independent of how the
/// group was described, so it can be cached by table digest.
pub fn analysis(group: &Arc<OmegaGroup>, limits: &Limits) -> Result<Value, Error> {
    let normals = normal_omega_subgroups(group, limits)?;
    let sz = simple_normal_subgroups(group, limits)?;
    let certs = simple_normal_certificates(group, limits)?;
    let d = decompose(group, limits)?;
    let semi = is_semisimple(group, limits)?;
    let check = sdr_report_in(
        group,
        &d.socle,
        &d.components.values().cloned().collect::<Vec<_>>(),
        limits,
    )?;
    let whole_certificate = match certificate(group, limits) {
        Ok(c) => Value::String(c.digest()),
        Err(Error::CapExceeded { .. }) => Value::Null,
        Err(e) => return Err(e),
    };

    let mut components = Map::new();
    for (cert, h) in &d.components {
        components.insert(cert.digest(), subgroup(h));
    }
    let simple: Vec<Value> = sz
        .iter()
        .zip(certs)
        .map(|(h, c)| json!({ "members": members(h), "order": h.order(), "certificate": c.digest() }))
        .collect();
    let mut labels: Vec<&str> = group.labels().into_iter().collect();
    labels.sort_unstable();

    Ok(json!({
        "order": group.order(),
        "operators": labels,
        "abelian": group.is_abelian(),
        "certificate": whole_certificate,
        "normal_subgroup_count": normals.len(),
        "normal_subgroups": normals.iter().map(members).collect::<Vec<_>>(),
        "simple_normal_subgroups": simple,
        "socle": subgroup(&d.socle),
        "components": components,
        "support": d.support.iter().map(|c| c.digest()).collect::<Vec<_>>(),
        "socle_decomposition": sdr(&check),
        "semisimple": {
            "verdict": semi.holds(),
            "criteria": {
                "equals_socle": semi.equals_socle,
                "simple_sum": semi.simple_sum,
                "all_summands": semi.all_summands,
            },
            "simple_family": semi.simple_family.iter().map(members).collect::<Vec<_>>(),
        },
        "classical_socle": subgroup(&classical_socle(group, limits)?),
    }))
}

/// Full `analyze` report: input echo plus the analysis.
pub fn analyze_report(group_name: &str, spec_text: &str, analysis: Value) -> Value {
    json!({
        "format": FORMAT,
        "input": { "group": group_name, "spec": spec_text },
        "analysis": analysis,
    })
}

pub fn error_report(kind: &str, message: &str, exit_code: i32, location: Option<(usize, usize)>) -> Value {
    let mut err = json!({ "kind": kind, "message": message, "exit_code": exit_code });
    if let Some((line, column)) = location {
        err["line"] = json!(line);
        err["column"] = json!(column);
    }
    json!({ "error": err })
}

/// Canonical text: pretty-printed with sorted keys and a trailing newline.
pub fn to_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use ogroup_core::{build_named, GroupKind};

    fn named(kind: GroupKind, n: usize) -> Arc<OmegaGroup> {
        Arc::new(build_named(kind, n, &Limits::default()).unwrap())
    }

    #[test]
    fn s3_analysis() {
        let a = analysis(&named(GroupKind::Symmetric, 3), &Limits::default()).unwrap();
        assert_eq!(a["socle"]["members"], json!([0, 3, 4]));
        assert_eq!(a["normal_subgroup_count"], json!(3));
        assert_eq!(a["semisimple"]["verdict"], json!(false));
        assert_eq!(a["support"].as_array().unwrap().len(), 1);
        assert_eq!(a["operators"], json!([]));
    }

    #[test]
    fn a4_classical_socle_differs() {
        let a = analysis(&named(GroupKind::Alternating, 4), &Limits::default()).unwrap();
        assert_eq!(a["socle"]["order"], json!(1));
        assert_eq!(a["classical_socle"]["order"], json!(4));
    }

    #[test]
    fn trivial_group_is_semisimple() {
        let a = analysis(&named(GroupKind::Cyclic, 1), &Limits::default()).unwrap();
        assert_eq!(a["support"], json!([]));
        assert_eq!(a["semisimple"]["verdict"], json!(true));
    }

    #[test]
    fn text_is_stable() {
        let g = named(GroupKind::Dihedral, 4);
        let a = to_text(&analysis(&g, &Limits::default()).unwrap());
        let b = to_text(&analysis(&g, &Limits::default()).unwrap());
        assert_eq!(a, b);
        assert!(a.find("\"abelian\"").unwrap() < a.find("\"certificate\"").unwrap());
    }
}
