mod common;

use common::{corpus, path, qsalg, qsalg_env};

fn file(name: &str) -> String {
    corpus(name).to_str().unwrap().to_string()
}

#[test]
fn validate_boolean_quantale_exits_zero() {
    let r = qsalg(&["--json", "validate", &file("boolean.json"), "--kind", "quantale"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json()["status"], "PASS");
}

#[test]
fn broken_associativity_names_the_triple() {
    let r = qsalg(&["--json", "validate", &file("broken-assoc.json"), "--kind", "quantale"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.witnesses(), vec!["multiplication is not associative: (a·b)·b ≠ a·(b·b)".to_string()]);
}

#[test]
fn garbage_exits_two() {
    let r = qsalg(&["--json", "validate", &file("garbage.json"), "--kind", "quantale"]);
    assert_eq!(r.code, 2);
    assert!(r.json()["error"].as_str().unwrap().contains("line 2"));
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(qsalg(&["validate", "/nonexistent.json", "--kind", "poset"]).code, 2);
}

#[test]
fn missing_declaration_kind_exits_two() {
    assert_eq!(qsalg(&["validate", &file("boolean.json"), "--kind", "nucleus"]).code, 2);
}

#[test]
fn partial_table_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(include_str!("../corpus/boolean.json")).unwrap();
    doc["quantales"][0]["mult"].as_array_mut().unwrap().remove(1);
    let p = dir.path().join("partial.json");
    std::fs::write(&p, doc.to_string()).unwrap();
    let r = qsalg(&["--json", "validate", path(&p), "--kind", "quantale"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"], "partial table `two`: no entry for (0, 1)");
}

#[test]
fn representation_of_boolean_meet_passes() {
    let r = qsalg(&["--json", "check", &file("boolean-meet.json"), "--theorem", "representation"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let cert = &r.json()["certificate"];
    assert_eq!(cert["verdict"], "PASS");
    assert_eq!(cert["fixed_points"].as_array().unwrap().len(), 2);
}

#[test]
fn solovyov_roundtrip_on_lukasiewicz_3() {
    let r = qsalg(&["--json", "check", &file("lukasiewicz-3-self.json"), "--theorem", "solovyov-roundtrip"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let names: Vec<String> =
        r.json()["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap().to_string()).collect();
    assert!(names.contains(&"G∘F = id".to_string()) && names.contains(&"F∘G = id".to_string()));
}

#[test]
fn non_unital_action_fails_representation_in_lax_mode() {
    let strict = qsalg(&["--json", "validate", &file("non-unital-action.json"), "--kind", "q-module"]);
    assert_eq!(strict.code, 1);
    assert_eq!(strict.witnesses(), vec!["1*y ≠ y".to_string()]);
    let lax =
        qsalg(&["--json", "check", &file("non-unital-action.json"), "--theorem", "representation", "--lax-modules"]);
    assert_eq!(lax.code, 1);
    assert!(lax.witnesses().contains(&"ρ(x) = ρ(y) = {x↦1, y↦1}".to_string()), "{:?}", lax.witnesses());
}

#[test]
fn non_monotone_nucleus_is_rejected() {
    let r = qsalg(&["--json", "validate", &file("non-monotone-nucleus.json"), "--kind", "nucleus"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.witnesses(), vec!["axiom (i) monotone fails at a=0, b=1".to_string()]);
}

#[test]
fn free_universal_property_on_z2() {
    let r = qsalg(&["--json", "check", &file("free-z2.json"), "--theorem", "free-universal-property"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    // constant maps are the only Ω-homs Z₂ → (𝟚, ∧)
    assert_eq!(r.json()["details"]["omega_homs"], 2);
}

#[test]
fn declared_nuclei_satisfy_derived_laws() {
    let r = qsalg(&["--json", "check", &file("godel-3-chain.json"), "--theorem", "nucleus-derived-laws"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json()["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn crisp_needs_the_boolean_base() {
    let ok = qsalg(&["check", &file("boolean-meet.json"), "--theorem", "crisp-specialization"]);
    assert_eq!(ok.code, 0);
    let not = qsalg(&["check", &file("lukasiewicz-3-self.json"), "--theorem", "crisp-specialization"]);
    assert_eq!(not.code, 2);
}

#[test]
fn threshold_and_seed_are_echoed() {
    let r = qsalg_env(
        &["--json", "check", &file("boolean-meet.json"), "--theorem", "representation", "--seed", "7"],
        &[("QSALG_THRESHOLD", "5")],
    );
    let v = r.json();
    assert_eq!((v["threshold"].as_u64(), v["seed"].as_u64()), (Some(5), Some(7)));
    assert_eq!(qsalg_env(&["corpus", "list"], &[("QSALG_THRESHOLD", "lots")]).code, 2);
}

#[test]
fn enumerate_quantales_on_the_two_chain() {
    let dir = tempfile::tempdir().unwrap();
    let r = qsalg(&["--json", "enumerate", "--kind", "quantales", "--max-size", "2", "--out", path(dir.path())]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let sizes = &r.json()["details"]["sizes"];
    assert_eq!(sizes[1]["tables_scanned"], 16);
    // unit ⊤ forces every entry but 0·0 = 0
    assert_eq!(sizes[1]["quantales"], 1);
    let written = std::fs::read_dir(dir.path().join("quantales")).unwrap().count();
    assert_eq!(written, 3, "two quantale documents and the summary");
}

#[test]
fn enumerate_nuclei_on_the_boolean_host() {
    let dir = tempfile::tempdir().unwrap();
    let r = qsalg(&["enumerate", "--kind", "nuclei", "--max-size", "2", "--out", path(dir.path())]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let host = dir.path().join("nuclei").join("boolean_chain-2_m0_a0.json");
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&host).unwrap()).unwrap();
    let tables: Vec<String> = doc["nuclei"].as_array().unwrap().iter().map(|j| j["table"].to_string()).collect();
    assert_eq!(tables, vec![r#"[["x0","x0"],["x1","x1"]]"#, r#"[["x0","x1"],["x1","x1"]]"#]);
    assert_eq!(qsalg(&["validate", path(&host), "--kind", "nucleus"]).code, 0);
}

#[test]
fn enumerate_homs_matches_the_full_scan() {
    let dir = tempfile::tempdir().unwrap();
    let r = qsalg(&["--json", "enumerate", "--kind", "homs", "--max-size", "2", "--out", path(dir.path())]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let pairs = r.json()["details"]["pairs"].as_array().unwrap().clone();
    let meet = pairs
        .iter()
        .find(|p| p["generators"] == "z2" && p["target"] == "boolean/chain-2/m0/a2")
        .expect("(𝟚, ∧) target");
    assert_eq!((meet["homs"].as_u64(), meet["scan"].as_u64()), (Some(2), Some(2)));
    assert!(pairs.iter().all(|p| p["scan"].is_null() || p["scan"] == p["homs"]));
}

#[test]
fn enumerate_beyond_the_bound_is_too_large() {
    let dir = tempfile::tempdir().unwrap();
    let r = qsalg(&["--json", "enumerate", "--kind", "quantales", "--max-size", "4", "--out", path(dir.path())]);
    assert_eq!(r.code, 2);
    assert!(r.json()["error"].as_str().unwrap().starts_with("too large"));
}

#[test]
fn recheck_fresh_tampered_and_truncated() {
    let dir = tempfile::tempdir().unwrap();
    let r = qsalg(&["--json", "check", &file("lukasiewicz-3-self.json"), "--theorem", "representation"]);
    assert_eq!(r.code, 0);
    let fresh = dir.path().join("fresh.json");
    std::fs::write(&fresh, &r.stdout).unwrap();
    assert_eq!(qsalg(&["recheck", path(&fresh)]).code, 0);

    let mut report = r.json();
    let cell = &mut report["certificate"]["nucleus"][0];
    *cell = serde_json::json!(cell.as_u64().unwrap() + 1);
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, report.to_string()).unwrap();
    let t = qsalg(&["--json", "recheck", path(&tampered)]);
    assert_eq!(t.code, 1);
    let failed: Vec<String> = t.json()["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["check"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failed.first().map(String::as_str), Some("nucleus-table"));

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &r.stdout[..r.stdout.len() / 2]).unwrap();
    assert_eq!(qsalg(&["recheck", path(&truncated)]).code, 2);
}

#[test]
fn corpus_list_ingests_every_shipped_document() {
    let r = qsalg(&["--json", "corpus", "list"]);
    assert_eq!(r.code, 0);
    let files = r.json()["details"]["files"].as_array().unwrap().clone();
    for f in files {
        assert_eq!(f["ingests"].as_bool(), Some(f["name"] != "garbage.json"), "{f}");
    }
}
