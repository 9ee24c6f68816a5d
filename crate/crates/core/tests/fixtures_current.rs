//! Regression tests over the shipped fixture files: the JSON on disk must
//! match the builders exactly (run with REGEN_FIXTURES=1 to rewrite), and
//! every expectation recorded in the manifest must hold.

use catelem::elements::{double_category_of_elements, two_category_of_elements};
use catelem::fixtures;
use catelem::homology::compare_models;
use catelem::io;
use std::path::{Path, PathBuf};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn fixture_files_match_builders() {
    if std::env::var_os("REGEN_FIXTURES").is_some() {
        fixtures::write_all(&fixtures_dir()).unwrap();
    }
    for name in fixtures::NAMES {
        let path = fixtures_dir().join(format!("{name}.json"));
        let on_disk = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing fixture file {path:?}; run with REGEN_FIXTURES=1"));
        let generated = io::to_json_string(&fixtures::doc(name).unwrap());
        assert_eq!(on_disk, generated, "{name}.json is stale");
    }
    let manifest_path = fixtures_dir().join("manifest.json");
    let on_disk = std::fs::read_to_string(manifest_path).expect("manifest present");
    assert_eq!(
        on_disk,
        io::to_json_string(&fixtures::manifest()),
        "manifest.json is stale"
    );
}

#[test]
fn fixture_files_load_through_the_schemas() {
    for name in fixtures::NAMES {
        let path = fixtures_dir().join(format!("{name}.json"));
        let f = io::load_two_functor(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(f.validate().is_empty(), "{name}");
    }
}

#[test]
fn manifest_expectations_hold() {
    for entry in fixtures::manifest().fixtures {
        let f = fixtures::build(&entry.name).unwrap();
        for (key, expect) in &entry.expect {
            match key.as_str() {
                "elements_objects" => {
                    let el = two_category_of_elements(&f);
                    assert_eq!(
                        serde_json::json!(el.two_cat.object_count()),
                        expect.value,
                        "{}: {key} [{}]",
                        entry.name,
                        expect.provenance
                    );
                }
                "elements_nonidentity_two_cells" => {
                    let el = two_category_of_elements(&f);
                    let n = el
                        .two_cat
                        .two_cells()
                        .filter(|&t| !el.two_cat.is_identity_two(t))
                        .count();
                    assert_eq!(serde_json::json!(n), expect.value, "{}: {key}", entry.name);
                }
                "double_squares" => {
                    let el = double_category_of_elements(&f);
                    assert_eq!(
                        serde_json::json!(el.double_cat.square_count()),
                        expect.value,
                        "{}: {key}",
                        entry.name
                    );
                }
                "double_nonidentity_squares" => {
                    let el = double_category_of_elements(&f);
                    let n = el
                        .sq_under
                        .iter()
                        .filter(|(alpha, _)| !f.source.is_identity_two(*alpha))
                        .count();
                    assert_eq!(serde_json::json!(n), expect.value, "{}: {key}", entry.name);
                }
                "homology" => {
                    let rep = compare_models(&f, 4).unwrap();
                    assert!(rep.all_equal, "{}: {:?}", entry.name, rep.mismatches);
                    let table = &rep.models["diag_nerve_elements_2cat"];
                    let got: Vec<serde_json::Value> = table
                        .groups
                        .iter()
                        .map(|g| serde_json::json!([g.betti, g.torsion]))
                        .collect();
                    assert_eq!(
                        serde_json::Value::Array(got),
                        expect.value,
                        "{}: homology [{}]",
                        entry.name,
                        expect.provenance
                    );
                }
                other => panic!("unknown expectation key {other}"),
            }
        }
    }
}
