//! Built-in fixtures: small 2-functors exercising every corner of the
//! pipeline. Each fixture is defined as a JSON document so that the files
//! shipped under `fixtures/` and the structures used in tests are literally
//! the same data.
//!
//! * `point` — terminal base, constant point diagram.
//! * `walking_two_cell` — two parallel 1-cells with one 2-cell between them,
//!   and a diagram that separates their images; the canonical worked example.
//! * `poset_discrete` — a discrete (set-valued) diagram on the poset `a < b`.
//! * `parallel_pair_constant` — the walking parallel pair with the constant
//!   point diagram; its classifying space is a circle.
//! * `three_object_whisker` — three objects with a single nonidentity 2-cell
//!   whose whiskering collapses to an identity.
//! * `walking_arrow_coeff` — the walking 2-cell with arrow-category
//!   coefficients, giving nontrivial vertical composition in the fibers.
//! * `square_pasting` — two composable walking 2-cells with cube-shaped
//!   coefficients; rich enough to reproduce the failures of the naive
//!   nerve-level comparison maps.

use crate::io::{CatDoc, FunctorDoc, LoadError, MorDoc, TwoCatDoc, TwoFunctorDoc};
use crate::two_category::TwoFunctorToCat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const NAMES: [&str; 7] = [
    "point",
    "walking_two_cell",
    "poset_discrete",
    "parallel_pair_constant",
    "three_object_whisker",
    "walking_arrow_coeff",
    "square_pasting",
];

pub fn doc(name: &str) -> Option<TwoFunctorDoc> {
    match name {
        "point" => Some(point()),
        "walking_two_cell" => Some(walking_two_cell()),
        "poset_discrete" => Some(poset_discrete()),
        "parallel_pair_constant" => Some(parallel_pair_constant()),
        "three_object_whisker" => Some(three_object_whisker()),
        "walking_arrow_coeff" => Some(walking_arrow_coeff()),
        "square_pasting" => Some(square_pasting()),
        _ => None,
    }
}

pub fn build(name: &str) -> Result<TwoFunctorToCat, LoadError> {
    let doc = doc(name).ok_or_else(|| LoadError::Schema(format!("unknown fixture `{name}`")))?;
    crate::io::two_functor_from_doc(&doc)
}

fn mor(id: &str, src: &str, tgt: &str) -> MorDoc {
    MorDoc {
        id: id.into(),
        src: src.into(),
        tgt: tgt.into(),
    }
}

fn objs(cat: &mut CatDoc, names: &[&str]) {
    cat.objects = names.iter().map(|s| s.to_string()).collect();
}

fn point() -> TwoFunctorDoc {
    let mut fc = CatDoc::default();
    objs(&mut fc, &["pt"]);
    TwoFunctorDoc {
        name: "point".into(),
        twocat: TwoCatDoc {
            objects: vec!["*".into()],
            ..Default::default()
        },
        on_objects: BTreeMap::from([("*".to_string(), fc)]),
        on_one_cells: BTreeMap::new(),
        on_two_cells: BTreeMap::new(),
        pairs: None,
    }
}

fn walking_two_cell() -> TwoFunctorDoc {
    let twocat = TwoCatDoc {
        objects: vec!["c".into(), "c'".into()],
        one_cells: vec![mor("f", "c", "c'"), mor("g", "c", "c'")],
        two_cells: vec![mor("alpha", "f", "g")],
        ..Default::default()
    };
    let mut fc = CatDoc::default();
    objs(&mut fc, &["x", "Ffx'", "Fgx'"]);
    fc.morphisms = vec![
        mor("phi", "x", "Ffx'"),
        mor("psi", "x", "Fgx'"),
        mor("Falpha", "Ffx'", "Fgx'"),
    ];
    fc.compose = vec![["phi".into(), "Falpha".into(), "psi".into()]];
    let mut fcp = CatDoc::default();
    objs(&mut fcp, &["x'"]);
    TwoFunctorDoc {
        name: "walking_two_cell".into(),
        twocat,
        on_objects: BTreeMap::from([("c".to_string(), fc), ("c'".to_string(), fcp)]),
        on_one_cells: BTreeMap::from([
            (
                "f".to_string(),
                FunctorDoc {
                    objects: BTreeMap::from([("x'".to_string(), "Ffx'".to_string())]),
                    morphisms: BTreeMap::new(),
                },
            ),
            (
                "g".to_string(),
                FunctorDoc {
                    objects: BTreeMap::from([("x'".to_string(), "Fgx'".to_string())]),
                    morphisms: BTreeMap::new(),
                },
            ),
        ]),
        on_two_cells: BTreeMap::from([(
            "alpha".to_string(),
            BTreeMap::from([("x'".to_string(), "Falpha".to_string())]),
        )]),
        pairs: None,
    }
}

fn poset_discrete() -> TwoFunctorDoc {
    let twocat = TwoCatDoc {
        objects: vec!["a".into(), "b".into()],
        one_cells: vec![mor("u", "a", "b")],
        ..Default::default()
    };
    let mut fa = CatDoc::default();
    objs(&mut fa, &["a0"]);
    let mut fb = CatDoc::default();
    objs(&mut fb, &["b0", "b1"]);
    TwoFunctorDoc {
        name: "poset_discrete".into(),
        twocat,
        on_objects: BTreeMap::from([("a".to_string(), fa), ("b".to_string(), fb)]),
        on_one_cells: BTreeMap::from([(
            "u".to_string(),
            FunctorDoc {
                objects: BTreeMap::from([
                    ("b0".to_string(), "a0".to_string()),
                    ("b1".to_string(), "a0".to_string()),
                ]),
                morphisms: BTreeMap::new(),
            },
        )]),
        on_two_cells: BTreeMap::new(),
        pairs: None,
    }
}

fn parallel_pair_constant() -> TwoFunctorDoc {
    let twocat = TwoCatDoc {
        objects: vec!["a".into(), "b".into()],
        one_cells: vec![mor("u", "a", "b"), mor("v", "a", "b")],
        ..Default::default()
    };
    let mut pt = CatDoc::default();
    objs(&mut pt, &["pt"]);
    let konst = FunctorDoc {
        objects: BTreeMap::from([("pt".to_string(), "pt".to_string())]),
        morphisms: BTreeMap::new(),
    };
    TwoFunctorDoc {
        name: "parallel_pair_constant".into(),
        twocat,
        on_objects: BTreeMap::from([("a".to_string(), pt.clone()), ("b".to_string(), pt)]),
        on_one_cells: BTreeMap::from([("u".to_string(), konst.clone()), ("v".to_string(), konst)]),
        on_two_cells: BTreeMap::new(),
        pairs: None,
    }
}

/// Objects `a -> b -> d` with `gamma: u ⇒ u2` in `hom(a, b)` and a single
/// 1-cell `v: b -> d` along which both composites agree (`vu = vu2 = w`),
/// so the whisker `gamma | 1[v]` collapses to `1[w]`.
fn three_object_whisker() -> TwoFunctorDoc {
    let twocat = TwoCatDoc {
        objects: vec!["a".into(), "b".into(), "d".into()],
        one_cells: vec![
            mor("u", "a", "b"),
            mor("u2", "a", "b"),
            mor("v", "b", "d"),
            mor("w", "a", "d"),
        ],
        two_cells: vec![mor("gamma", "u", "u2")],
        hcomp_one: vec![
            ["u".into(), "v".into(), "w".into()],
            ["u2".into(), "v".into(), "w".into()],
        ],
        hcomp_two: vec![["gamma".into(), "1[v]".into(), "1[w]".into()]],
        ..Default::default()
    };
    let mut fa = CatDoc::default();
    objs(&mut fa, &["x0", "x1", "x2"]);
    fa.morphisms = vec![mor("t", "x1", "x2")];
    let mut fb = CatDoc::default();
    objs(&mut fb, &["y0", "y"]);
    let mut fd = CatDoc::default();
    objs(&mut fd, &["z"]);
    TwoFunctorDoc {
        name: "three_object_whisker".into(),
        twocat,
        on_objects: BTreeMap::from([
            ("a".to_string(), fa),
            ("b".to_string(), fb),
            ("d".to_string(), fd),
        ]),
        on_one_cells: BTreeMap::from([
            (
                "u".to_string(),
                FunctorDoc {
                    objects: BTreeMap::from([
                        ("y0".to_string(), "x0".to_string()),
                        ("y".to_string(), "x1".to_string()),
                    ]),
                    morphisms: BTreeMap::new(),
                },
            ),
            (
                "u2".to_string(),
                FunctorDoc {
                    objects: BTreeMap::from([
                        ("y0".to_string(), "x0".to_string()),
                        ("y".to_string(), "x2".to_string()),
                    ]),
                    morphisms: BTreeMap::new(),
                },
            ),
            (
                "v".to_string(),
                FunctorDoc {
                    objects: BTreeMap::from([("z".to_string(), "y0".to_string())]),
                    morphisms: BTreeMap::new(),
                },
            ),
        ]),
        on_two_cells: BTreeMap::from([(
            "gamma".to_string(),
            BTreeMap::from([
                ("y0".to_string(), "1[x0]".to_string()),
                ("y".to_string(), "t".to_string()),
            ]),
        )]),
        pairs: None,
    }
}

/// The walking 2-cell with arrow-category coefficients: `Fc'` is the walking
/// arrow and `Fc` the commuting square it maps to, so the fibers have
/// composable nonidentity vertical morphisms.
fn walking_arrow_coeff() -> TwoFunctorDoc {
    let twocat = TwoCatDoc {
        objects: vec!["c".into(), "c'".into()],
        one_cells: vec![mor("f", "c", "c'"), mor("g", "c", "c'")],
        two_cells: vec![mor("alpha", "f", "g")],
        ..Default::default()
    };
    let mut fcp = CatDoc::default();
    objs(&mut fcp, &["xp", "yp"]);
    fcp.morphisms = vec![mor("phip", "xp", "yp")];
    let mut fc = CatDoc::default();
    objs(&mut fc, &["Ffx", "Ffy", "Fgx", "Fgy"]);
    fc.morphisms = vec![
        mor("ff_phi", "Ffx", "Ffy"),
        mor("fg_phi", "Fgx", "Fgy"),
        mor("al_x", "Ffx", "Fgx"),
        mor("al_y", "Ffy", "Fgy"),
        mor("diag", "Ffx", "Fgy"),
    ];
    fc.compose = vec![
        ["ff_phi".into(), "al_y".into(), "diag".into()],
        ["al_x".into(), "fg_phi".into(), "diag".into()],
    ];
    TwoFunctorDoc {
        name: "walking_arrow_coeff".into(),
        twocat,
        on_objects: BTreeMap::from([("c".to_string(), fc), ("c'".to_string(), fcp)]),
        on_one_cells: BTreeMap::from([
            (
                "f".to_string(),
                FunctorDoc {
                    objects: BTreeMap::from([
                        ("xp".to_string(), "Ffx".to_string()),
                        ("yp".to_string(), "Ffy".to_string()),
                    ]),
                    morphisms: BTreeMap::from([("phip".to_string(), "ff_phi".to_string())]),
                },
            ),
            (
                "g".to_string(),
                FunctorDoc {
                    objects: BTreeMap::from([
                        ("xp".to_string(), "Fgx".to_string()),
                        ("yp".to_string(), "Fgy".to_string()),
                    ]),
                    morphisms: BTreeMap::from([("phip".to_string(), "fg_phi".to_string())]),
                },
            ),
        ]),
        on_two_cells: BTreeMap::from([(
            "alpha".to_string(),
            BTreeMap::from([
                ("xp".to_string(), "al_x".to_string()),
                ("yp".to_string(), "al_y".to_string()),
            ]),
        )]),
        pairs: None,
    }
}

/// A product of posets as a category document: objects are coordinate
/// tuples, with one morphism `u:v` whenever `u <= v` pointwise. Composites
/// of non-unit pairs are listed for all chains `u < v < w`.
fn poset_product_doc(names: &[(&str, &[u8])]) -> CatDoc {
    let mut cat = CatDoc {
        objects: names.iter().map(|(n, _)| n.to_string()).collect(),
        ..Default::default()
    };
    let le = |a: &[u8], b: &[u8]| a.iter().zip(b).all(|(x, y)| x <= y);
    for (u, uc) in names {
        for (v, vc) in names {
            if u != v && le(uc, vc) {
                cat.morphisms.push(mor(&format!("{u}:{v}"), u, v));
            }
        }
    }
    for (u, uc) in names {
        for (v, vc) in names {
            if u == v || !le(uc, vc) {
                continue;
            }
            for (w, wc) in names {
                if v == w || !le(vc, wc) {
                    continue;
                }
                cat.compose
                    .push([format!("{u}:{v}"), format!("{v}:{w}"), format!("{u}:{w}")]);
            }
        }
    }
    cat
}

/// Two composable walking 2-cells `alpha: f ⇒ f2` over `c -> d` and
/// `beta: g ⇒ g2` over `d -> e`, with `hom(c, e)` their product, and
/// coefficients: the walking arrow at `e`, the commuting square at `d`, and
/// the commuting cube at `c`.
fn square_pasting() -> TwoFunctorDoc {
    let twocat = TwoCatDoc {
        objects: vec!["c".into(), "d".into(), "e".into()],
        one_cells: vec![
            mor("f", "c", "d"),
            mor("f2", "c", "d"),
            mor("g", "d", "e"),
            mor("g2", "d", "e"),
            mor("gf", "c", "e"),
            mor("g2f", "c", "e"),
            mor("gf2", "c", "e"),
            mor("g2f2", "c", "e"),
        ],
        two_cells: vec![
            mor("alpha", "f", "f2"),
            mor("beta", "g", "g2"),
            mor("fb", "gf", "g2f"),
            mor("ag", "gf", "gf2"),
            mor("ag2", "g2f", "g2f2"),
            mor("f2b", "gf2", "g2f2"),
            mor("ab", "gf", "g2f2"),
        ],
        hcomp_one: vec![
            ["f".into(), "g".into(), "gf".into()],
            ["f".into(), "g2".into(), "g2f".into()],
            ["f2".into(), "g".into(), "gf2".into()],
            ["f2".into(), "g2".into(), "g2f2".into()],
        ],
        vcomp: vec![
            ["fb".into(), "ag2".into(), "ab".into()],
            ["ag".into(), "f2b".into(), "ab".into()],
        ],
        hcomp_two: vec![
            ["1[f]".into(), "beta".into(), "fb".into()],
            ["alpha".into(), "1[g]".into(), "ag".into()],
            ["alpha".into(), "1[g2]".into(), "ag2".into()],
            ["1[f2]".into(), "beta".into(), "f2b".into()],
            ["alpha".into(), "beta".into(), "ab".into()],
        ],
        ..Default::default()
    };

    let fe = poset_product_doc(&[("xe", &[0]), ("ye", &[1])]);
    let fd = poset_product_doc(&[
        ("gx", &[0, 0]),
        ("gy", &[0, 1]),
        ("g2x", &[1, 0]),
        ("g2y", &[1, 1]),
    ]);
    // cube coordinates: (alpha-direction, beta-direction, arrow-direction)
    let fc = poset_product_doc(&[
        ("fgx", &[0, 0, 0]),
        ("fgy", &[0, 0, 1]),
        ("fg2x", &[0, 1, 0]),
        ("fg2y", &[0, 1, 1]),
        ("f2gx", &[1, 0, 0]),
        ("f2gy", &[1, 0, 1]),
        ("f2g2x", &[1, 1, 0]),
        ("f2g2y", &[1, 1, 1]),
    ]);

    // functor docs mapping coordinate names; morphisms map edge `u:v` to
    // the edge between the image objects
    let map_functor = |obj_map: &[(&str, &str)], dom: &CatDoc| -> FunctorDoc {
        let objects: BTreeMap<String, String> = obj_map
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let morphisms = dom
            .morphisms
            .iter()
            .map(|m| {
                (
                    m.id.clone(),
                    format!("{}:{}", objects[&m.src], objects[&m.tgt]),
                )
            })
            .collect();
        FunctorDoc { objects, morphisms }
    };

    let ff = map_functor(
        &[
            ("gx", "fgx"),
            ("gy", "fgy"),
            ("g2x", "fg2x"),
            ("g2y", "fg2y"),
        ],
        &fd,
    );
    let ff2 = map_functor(
        &[
            ("gx", "f2gx"),
            ("gy", "f2gy"),
            ("g2x", "f2g2x"),
            ("g2y", "f2g2y"),
        ],
        &fd,
    );
    let fg = map_functor(&[("xe", "gx"), ("ye", "gy")], &fe);
    let fg2 = map_functor(&[("xe", "g2x"), ("ye", "g2y")], &fe);

    // component of F(alpha) at a square object w: the cube edge Ff(w) -> Ff2(w)
    let falpha: BTreeMap<String, String> = [
        ("gx", "fgx", "f2gx"),
        ("gy", "fgy", "f2gy"),
        ("g2x", "fg2x", "f2g2x"),
        ("g2y", "fg2y", "f2g2y"),
    ]
    .iter()
    .map(|&(w, a, b)| (w.to_string(), format!("{a}:{b}")))
    .collect();
    let fbeta: BTreeMap<String, String> = [("xe", "gx", "g2x"), ("ye", "gy", "g2y")]
        .iter()
        .map(|&(z, a, b)| (z.to_string(), format!("{a}:{b}")))
        .collect();

    TwoFunctorDoc {
        name: "square_pasting".into(),
        twocat,
        on_objects: BTreeMap::from([
            ("c".to_string(), fc),
            ("d".to_string(), fd),
            ("e".to_string(), fe),
        ]),
        on_one_cells: BTreeMap::from([
            ("f".to_string(), ff),
            ("f2".to_string(), ff2),
            ("g".to_string(), fg),
            ("g2".to_string(), fg2),
        ]),
        on_two_cells: BTreeMap::from([("alpha".to_string(), falpha), ("beta".to_string(), fbeta)]),
        pairs: None,
    }
}

// ---------------------------------------------------------------------------
// manifest

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Expectation {
    pub value: serde_json::Value,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub path: String,
    pub expect: BTreeMap<String, Expectation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub fixtures: Vec<FixtureEntry>,
}

fn expect(value: serde_json::Value, provenance: &str) -> Expectation {
    Expectation {
        value,
        provenance: provenance.into(),
    }
}

/// Regression expectations with provenance. Values tagged `worked-example`
/// read off the diagram the `walking_two_cell` fixture encodes; `immediate`
/// values need no computation; `derived` values carry the independent
/// computation they were frozen from.
pub fn manifest() -> Manifest {
    let mut fixtures = Vec::new();
    for name in NAMES {
        let mut expect_map = BTreeMap::new();
        match name {
            "point" => {
                expect_map.insert(
                    "elements_objects".to_string(),
                    expect(1.into(), "immediate: terminal base, terminal fiber"),
                );
                expect_map.insert(
                    "homology".to_string(),
                    expect(
                        serde_json::json!([[1, []], [0, []], [0, []], [0, []]]),
                        "immediate: a point has H_0 = Z and nothing else",
                    ),
                );
            }
            "walking_two_cell" => {
                expect_map.insert(
                    "elements_objects".to_string(),
                    expect(
                        4.into(),
                        "worked-example: the four displayed objects of the element constructions",
                    ),
                );
                expect_map.insert(
                    "elements_nonidentity_two_cells".to_string(),
                    expect(
                        2.into(),
                        "worked-example: the 2-cell gives rise to exactly two 2-cells of elements",
                    ),
                );
                expect_map.insert(
                    "double_squares".to_string(),
                    expect(
                        10.into(),
                        "derived: brute-force count of (2-cell, right vertical) pairs",
                    ),
                );
                expect_map.insert(
                    "double_nonidentity_squares".to_string(),
                    expect(
                        1.into(),
                        "worked-example: a unique square is labeled by the nonidentity 2-cell",
                    ),
                );
            }
            "poset_discrete" => {
                expect_map.insert(
                    "elements_objects".to_string(),
                    expect(
                        3.into(),
                        "derived: classical category-of-elements enumeration",
                    ),
                );
                expect_map.insert(
                    "homology".to_string(),
                    expect(
                        serde_json::json!([[1, []], [0, []], [0, []], [0, []]]),
                        "derived: the classical category of elements has an initial object",
                    ),
                );
            }
            "parallel_pair_constant" => {
                expect_map.insert(
                    "homology".to_string(),
                    expect(
                        serde_json::json!([[1, []], [1, []], [0, []], [0, []]]),
                        "derived: circle; rank of the 2x2 boundary matrix is 1 by hand",
                    ),
                );
            }
            _ => {}
        }
        fixtures.push(FixtureEntry {
            name: name.to_string(),
            path: format!("{name}.json"),
            expect: expect_map,
        });
    }
    Manifest { fixtures }
}

/// Write every fixture document and the manifest into `dir`.
pub fn write_all(dir: &std::path::Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for name in NAMES {
        let d = doc(name).expect("known fixture");
        std::fs::write(
            dir.join(format!("{name}.json")),
            crate::io::to_json_string(&d),
        )?;
    }
    std::fs::write(
        dir.join("manifest.json"),
        crate::io::to_json_string(&manifest()),
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_build_and_validate() {
        for name in NAMES {
            let f = build(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            let rep = f.validate();
            assert!(rep.is_empty(), "{name}: {rep}");
        }
    }

    #[test]
    fn square_pasting_has_expected_shape() {
        let f = build("square_pasting").unwrap();
        let c = &f.source;
        assert_eq!(c.object_count(), 3);
        // 3 identities + 8 listed
        assert_eq!(c.one_cell_count(), 11);
        let ab = c.find_two_cell("ab").unwrap();
        let alpha = c.find_two_cell("alpha").unwrap();
        let beta = c.find_two_cell("beta").unwrap();
        assert_eq!(c.horizontal_paste(alpha, beta), Some(ab));
        // F on the composite gf is derived
        let gf = c.find_one_cell("gf").unwrap();
        let fe = f.fc(c.find_object("e").unwrap());
        let xe = fe.find_object("xe").unwrap();
        let fc = f.fc(c.find_object("c").unwrap());
        assert_eq!(fc.object_label(f.ff(gf).apply_obj(xe)), "fgx");
    }
}
