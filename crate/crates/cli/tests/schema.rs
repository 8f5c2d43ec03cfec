//! The shipped JSON schema against the documents the tool reads and writes.

mod common;

use std::collections::BTreeSet;

use common::{corpus, path, qsalg};
use serde_json::Value;

fn schema() -> Value {
    serde_json::from_str(include_str!("../schema/structure.schema.json")).unwrap()
}

fn keys(v: &Value) -> BTreeSet<String> {
    v.as_object().map(|o| o.keys().cloned().collect()).unwrap_or_default()
}

/// Every key a document uses is declared by the schema, section by section.
fn assert_covered(doc: &Value, origin: &str) {
    let s = schema();
    let top = keys(&s["properties"]);
    for k in keys(doc) {
        assert!(top.contains(&k), "{origin}: top-level `{k}`");
        let Some(items) = doc[&k].as_array() else { continue };
        let def = s["properties"][&k]["items"]["$ref"].as_str().unwrap().rsplit('/').next().unwrap().to_string();
        let allowed = keys(&s["$defs"][&def]["properties"]);
        for item in items {
            for field in keys(item) {
                assert!(allowed.contains(&field), "{origin}: `{k}` entry field `{field}`");
            }
            if def == "algebra" {
                let op_fields = keys(&s["$defs"]["operation"]["properties"]);
                for op in item["operations"].as_array().into_iter().flatten() {
                    assert!(keys(op).is_subset(&op_fields), "{origin}: operation fields");
                }
            }
        }
    }
}

#[test]
fn schema_version_matches_the_reader() {
    assert_eq!(schema()["properties"]["schema_version"]["const"], 1);
}

#[test]
fn shipped_documents_use_only_schema_fields() {
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let p = entry.unwrap().path();
        let Ok(doc) = serde_json::from_str::<Value>(&std::fs::read_to_string(&p).unwrap()) else { continue };
        assert_covered(&doc, path(&p));
    }
}

#[test]
fn enumerated_documents_use_only_schema_fields() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["quantales", "nuclei"] {
        assert_eq!(qsalg(&["enumerate", "--kind", kind, "--max-size", "2", "--out", path(dir.path())]).code, 0);
        for entry in std::fs::read_dir(dir.path().join(kind)).unwrap() {
            let p = entry.unwrap().path();
            if p.file_name().unwrap() == "summary.json" {
                continue;
            }
            let doc: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
            assert_covered(&doc, path(&p));
        }
    }
}
