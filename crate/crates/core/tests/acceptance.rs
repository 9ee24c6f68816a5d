//! Acceptance suite. Each test checks one exit criterion end to end at
//! truncation dimension 4 and prints a single pass line; a failing
//! assertion fails the criterion.

use catelem::bar::bar_construction;
use catelem::double_category::DoubleCategory;
use catelem::elements::{double_category_of_elements, two_category_of_elements};
use catelem::fixtures;
use catelem::hocolim::hocolim_bisimplicial;
use catelem::homology::compare_models;
use catelem::nerve::{nerve_double_category, nerve_two_category};
use catelem::pipeline::{run_pipeline, Command};
use catelem::simplicial::{diagonal, TruncatedBisimplicialSet, TruncatedSimplicialSet};
use catelem::thomason::{
    naive_diag_control, naive_phi_control, naive_theta_control, verify_thomason_iso, ThetaChoice,
    ThomasonContext,
};
use catelem::two_category::FiniteTwoCategory;
use std::path::{Path, PathBuf};
use std::time::Instant;

const DIM: usize = 4;

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn ensure_fixture_files() {
    if !fixtures_dir().join("manifest.json").exists() {
        fixtures::write_all(&fixtures_dir()).unwrap();
    }
}

/// Criterion 1: `iso-verify` succeeds exhaustively at p <= 4 on the worked
/// example plus six more fixtures, each within the time budget.
#[test]
fn criterion_1_isomorphism_check() {
    for name in fixtures::NAMES {
        let f = fixtures::build(name).unwrap();
        let start = Instant::now();
        let report = verify_thomason_iso(&f, DIM).unwrap();
        let elapsed = start.elapsed();
        assert!(report.ok(), "{name}: {}", report.report);
        for lvl in &report.levels {
            assert_eq!(lvl.two_side, lvl.double_side, "{name} level {}", lvl.p);
            assert_eq!(
                lvl.two_side_nondegenerate, lvl.double_side_nondegenerate,
                "{name} normalized basis at level {}",
                lvl.p
            );
        }
        assert!(
            elapsed.as_secs_f64() < 10.0,
            "{name}: iso-verify took {elapsed:?}"
        );
    }
    println!("criterion 1 (levelwise isomorphism, D={DIM}, 7 fixtures): PASS");
}

/// Criterion 2: the naive comparison maps fail exactly as documented, with
/// concrete witnesses.
#[test]
fn criterion_2_negative_controls() {
    // the naive Φ on the worked example: the face from (1,1) into the
    // vertical-morphism simplices sends the square built from the α 2-cell
    // to its left edge (Fα)_{x'}, while mapping the face gives an identity
    let f = fixtures::build("walking_two_cell").unwrap();
    let ctx = ThomasonContext::build(&f, 2).unwrap();
    let phi_violations = naive_phi_control(&ctx);
    let w = phi_violations
        .iter()
        .find(|w| {
            w.from == (1, 1)
                && w.to == (0, 1)
                && w.operator == "d^h_1"
                && w.simplex.contains("alpha")
        })
        .expect("naive Phi witness at (1,1)");
    assert!(w.map_then_face.contains("Falpha"));
    assert!(w.face_then_map.contains("1[x]"));

    // both naive Θ_{01} choices fail at a vertical face of the
    // vertical-morphism simplices; the source choice at d^v_0 with the
    // displayed witness, the target choice at d^v_1
    let src_violations = naive_theta_control(&ctx, ThetaChoice::Source);
    let w = src_violations
        .iter()
        .find(|w| w.from == (0, 1) && w.operator == "d^v_0" && w.simplex.contains("phi"))
        .expect("naive Theta (source) witness at d^v_0");
    assert!(w.face_then_map.contains("Ffx'"), "{w:?}");
    assert!(w.map_then_face.contains("(c,x)"), "{w:?}");
    let tgt_violations = naive_theta_control(&ctx, ThetaChoice::Target);
    assert!(tgt_violations
        .iter()
        .any(|w| w.from == (0, 1) && w.operator == "d^v_1"));

    // the diagonal-level Θ has no extension to the displayed 2-simplex:
    // on the square-pasting fixture a 2-by-2 grid with nonidentity top row
    // and identity bottom row admits no compatible image
    let f2 = fixtures::build("square_pasting").unwrap();
    let ctx2 = ThomasonContext::build(&f2, 2).unwrap();
    let diag = naive_diag_control(&ctx2);
    assert!(diag.sigmas_without_image > 0);
    let w = diag
        .paper_shaped_witness
        .as_ref()
        .expect("paper-shaped diagonal witness");
    assert!(w.sigma.contains("alpha") && w.sigma.contains("beta"));
    assert_eq!(w.matching_images, 0);

    // the CLI surface reports the same and exits nonzero
    ensure_fixture_files();
    let out = run_pipeline(&Command::IsoVerify {
        input: fixtures_dir().join("square_pasting.json"),
        max_dim: 2,
        report: None,
        negative_control: true,
    });
    assert_eq!(out.exit_code, 1, "{}", out.report);

    println!("criterion 2 (negative controls with witnesses): PASS");
}

/// Criterion 3: structural counts on the worked example.
#[test]
fn criterion_3_structural_counts() {
    let f = fixtures::build("walking_two_cell").unwrap();
    let el2 = two_category_of_elements(&f);
    let eld = double_category_of_elements(&f);
    assert_eq!(el2.two_cat.object_count(), 4);
    assert_eq!(eld.double_cat.object_count(), 4);

    // exactly one square is labeled by the nonidentity 2-cell, with an
    // identity right edge
    let c = &f.source;
    let alpha = c.find_two_cell("alpha").unwrap();
    let alpha_squares: Vec<_> = eld
        .double_cat
        .squares()
        .filter(|&q| eld.sq_under[q.0 as usize].0 == alpha)
        .collect();
    assert_eq!(alpha_squares.len(), 1);
    let sq = eld.double_cat.square(alpha_squares[0]);
    assert!(eld.double_cat.is_identity_v(sq.right));
    assert_eq!(eld.double_cat.h_label(sq.top), "f@x'");
    assert_eq!(eld.double_cat.h_label(sq.bottom), "g@x'");

    // brute-force oracle: squares are pairs (2-cell, right vertical)
    let oracle: usize = c
        .two_cells()
        .map(|a| f.fc(c.one_tgt(c.two_src(a))).morphism_count())
        .sum();
    assert_eq!(eld.double_cat.square_count(), oracle);
    assert_eq!(oracle, 10);

    println!("criterion 3 (structural counts on the worked example): PASS");
}

/// Criterion 4: homology in degrees <= 3 agrees across all five models on
/// every fixture, with the two hand-checked answers pinned.
#[test]
fn criterion_4_homology_cross_model_agreement() {
    for name in fixtures::NAMES {
        let f = fixtures::build(name).unwrap();
        let rep = compare_models(&f, DIM).unwrap();
        assert!(rep.all_equal, "{name}: {:?}", rep.mismatches);
        assert_eq!(rep.trusted_up_to, 3);
        let table = &rep.models["diag_nerve_elements_2cat"];
        match name {
            "point" => {
                let betti: Vec<usize> = table.groups.iter().map(|g| g.betti).collect();
                assert_eq!(betti, vec![1, 0, 0, 0]);
            }
            "parallel_pair_constant" => {
                let betti: Vec<usize> = table.groups.iter().map(|g| g.betti).collect();
                assert_eq!(betti, vec![1, 1, 0, 0]);
                assert!(table.groups.iter().all(|g| g.torsion.is_empty()));
            }
            _ => {}
        }
    }
    println!("criterion 4 (five-model homology agreement, degrees <= 3): PASS");
}

fn validate_all_models(name: &str) {
    let f = fixtures::build(name).unwrap();
    assert!(f.validate().is_empty(), "{name}: functor");
    let el2 = two_category_of_elements(&f);
    assert!(el2.two_cat.validate().is_empty(), "{name}: elements 2-cat");
    let eld = double_category_of_elements(&f);
    assert!(eld.double_cat.validate().is_empty(), "{name}: elements dbl");
    let n2 = nerve_two_category(&el2.two_cat, DIM).unwrap();
    assert!(n2.validate().is_empty(), "{name}: 2-cat nerve");
    let nd = nerve_double_category(&eld.double_cat, DIM).unwrap();
    assert!(nd.validate().is_empty(), "{name}: double nerve");
    let (y, data) = hocolim_bisimplicial(&f, DIM).unwrap();
    assert!(data.validate().is_empty(), "{name}: hocolim functors");
    assert!(y.validate().is_empty(), "{name}: hocolim bisimplicial");
    for s in [
        diagonal(&n2),
        diagonal(&nd),
        diagonal(&y),
        bar_construction(&n2, DIM).unwrap(),
        bar_construction(&nd, DIM).unwrap(),
    ] {
        let rep = s.validate();
        assert!(rep.is_empty(), "{name}: {} fails: {rep}", s.name);
    }
}

fn two_category_mutants() -> Vec<(&'static str, FiniteTwoCategory)> {
    let f = fixtures::build("walking_two_cell").unwrap();
    let base = f.source;
    let c = base.find_object("c").unwrap();
    let cp = base.find_object("c'").unwrap();
    let fo = base.find_one_cell("f").unwrap();
    let go = base.find_one_cell("g").unwrap();
    let idc = base.one_identity_of(c);
    let idcp = base.one_identity_of(cp);
    let alpha = base.find_two_cell("alpha").unwrap();
    let idf = base.two_identity_of(fo);
    let idg = base.two_identity_of(go);
    let id_idc = base.two_identity_of(idc);
    let id_idcp = base.two_identity_of(idcp);

    let mut mutants = Vec::new();
    let mut with = |name: &'static str, f: &dyn Fn(&mut FiniteTwoCategory)| {
        let mut m = base.clone();
        f(&mut m);
        mutants.push((name, m));
    };
    with("retarget f∘1 to 1", &|m| m.set_hcomp_one(fo, idc, idc));
    with("retarget f∘1 to g", &|m| m.set_hcomp_one(fo, idc, go));
    with("retarget 1∘g to f", &|m| m.set_hcomp_one(idcp, go, fo));
    with("retarget α∘1 to 1[f]", &|m| m.set_vcomp(alpha, idf, idf));
    with("retarget 1∘α to 1[g]", &|m| m.set_vcomp(idg, alpha, idg));
    with("retarget α|1 to 1[f]", &|m| {
        m.set_hcomp_two(alpha, id_idcp, idf)
    });
    with("retarget 1|α to 1[g]", &|m| {
        m.set_hcomp_two(id_idc, alpha, idg)
    });
    with("identity 1-cell not an endocell", &|m| {
        m.set_one_identity(c, fo)
    });
    with("identity 2-cell not parallel", &|m| {
        m.set_two_identity(fo, alpha)
    });
    with("retarget g∘1 to f", &|m| m.set_hcomp_one(go, idc, fo));
    with("non-parallel 2-cell", &|m| {
        m.add_two_cell(fo, idcp, "broken");
    });
    with("retarget 1[f]|1[1[c']] to α", &|m| {
        m.set_hcomp_two(idf, id_idcp, alpha)
    });
    mutants
}

fn double_category_mutants() -> Vec<(&'static str, DoubleCategory)> {
    let f = fixtures::build("walking_two_cell").unwrap();
    let base = double_category_of_elements(&f).double_cat;
    let some_h = base
        .h_morphisms()
        .find(|&h| base.h_src(h) != base.h_tgt(h))
        .unwrap();
    let some_v = base
        .v_morphisms()
        .find(|&v| !base.is_identity_v(v))
        .unwrap();
    let idh = base.h_identity_of(base.h_src(some_h));
    let idv = base.v_identity_of(base.v_src(some_v));
    let e_sq = base.v_id_square_of(some_h);
    let id_sq = base.h_id_square_of(some_v);
    let other_sq = base.squares().find(|&q| q != e_sq && q != id_sq).unwrap();

    let mut mutants = Vec::new();
    let mut with = |name: &'static str, f: &dyn Fn(&mut DoubleCategory)| {
        let mut m = base.clone();
        f(&mut m);
        mutants.push((name, m));
    };
    with("retarget h∘1 to 1", &|m| {
        m.set_h_compose(some_h, idh, idh)
    });
    with("retarget 1∘v to 1", &|m| {
        m.set_v_compose(some_v, idv, idv)
    });
    with("h identity not an endocell", &|m| {
        m.set_h_identity(base.h_src(some_h), some_h)
    });
    with("v identity not an endocell", &|m| {
        m.set_v_identity(base.v_src(some_v), some_v)
    });
    with("e_f square replaced", &|m| {
        m.set_v_id_square(some_h, other_sq)
    });
    with("id_φ square replaced", &|m| {
        m.set_h_id_square(some_v, other_sq)
    });
    with("square with mixed boundary", &|m| {
        let s = base.square(other_sq);
        m.add_square(s.top, s.bottom, s.left, idv, "broken");
    });
    with("retarget square unit pasting", &|m| {
        m.set_sq_h_compose(e_sq, m.h_id_square_of(base.square(e_sq).right), id_sq)
    });
    with("retarget square unit stack", &|m| {
        m.set_sq_v_compose(id_sq, m.v_id_square_of(base.square(id_sq).bottom), e_sq)
    });
    with("retarget h unit to flipped", &|m| {
        m.set_h_compose(base.h_identity_of(base.h_tgt(some_h)), some_h, idh)
    });
    with("retarget v composite boundary", &|m| {
        m.set_v_compose(idv, some_v, idv)
    });
    mutants
}

fn simplicial_mutants() -> Vec<(&'static str, TruncatedSimplicialSet)> {
    let f = fixtures::build("walking_two_cell").unwrap();
    let el = two_category_of_elements(&f);
    let base = diagonal(&nerve_two_category(&el.two_cat, 3).unwrap());
    assert!(base.validate().is_empty());

    let mut mutants = Vec::new();
    let mut with = |name: &'static str, f: &dyn Fn(&mut TruncatedSimplicialSet)| {
        let mut m = base.clone();
        f(&mut m);
        mutants.push((name, m));
    };
    // single-entry corruptions across the table families
    with("face out of range", &|m| {
        m.levels[1].faces[0][0] = usize::MAX
    });
    with("degeneracy out of range", &|m| {
        m.levels[0].degens[0][0] = usize::MAX
    });
    with("collapse d_0 at level 1", &|m| {
        let other = (m.levels[0].len() > 1) as usize;
        let cur = m.levels[1].faces[0][0];
        m.levels[1].faces[0][0] = if cur == other { 0 } else { other };
    });
    with("collapse d_1 at level 1", &|m| {
        let cur = m.levels[1].faces[1][1];
        m.levels[1].faces[1][1] = usize::from(cur == 0);
    });
    with("redirect s_0 at level 0", &|m| {
        let cur = m.levels[0].degens[0][0];
        m.levels[0].degens[0][0] = usize::from(cur == 0);
    });
    with("redirect s_0 at level 1", &|m| {
        let cur = m.levels[1].degens[0][0];
        m.levels[1].degens[0][0] = usize::from(cur == 0);
    });
    with("redirect s_1 at level 1", &|m| {
        let cur = m.levels[1].degens[1][2];
        m.levels[1].degens[1][2] = usize::from(cur == 0);
    });
    with("swap d_0 and d_1 columns at level 2", &|m| {
        let d0 = m.levels[2].faces[0][0];
        let d1 = m.levels[2].faces[1][0];
        if d0 == d1 {
            m.levels[2].faces[0][0] = usize::from(d0 == 0);
        } else {
            m.levels[2].faces[0][0] = d1;
            m.levels[2].faces[1][0] = d0;
        }
    });
    with("redirect d_2 at level 2", &|m| {
        let cur = m.levels[2].faces[2][1];
        m.levels[2].faces[2][1] = usize::from(cur == 0);
    });
    with("truncate a face table", &|m| {
        m.levels[2].faces[0].pop();
    });
    with("drop a degeneracy table", &|m| {
        m.levels[1].degens.pop();
    });
    mutants
}

fn bisimplicial_mutants() -> Vec<(&'static str, TruncatedBisimplicialSet)> {
    let f = fixtures::build("walking_two_cell").unwrap();
    let el = double_category_of_elements(&f);
    let base = nerve_double_category(&el.double_cat, 2).unwrap();
    assert!(base.validate().is_empty());

    let mut mutants = Vec::new();
    let mut with = |name: &'static str, f: &dyn Fn(&mut TruncatedBisimplicialSet)| {
        let mut m = base.clone();
        f(&mut m);
        mutants.push((name, m));
    };
    let flip = |cur: usize| usize::from(cur == 0);
    with("h-face out of range", &|m| {
        m.level_mut(1, 0).h_faces[0][0] = usize::MAX
    });
    with("v-face out of range", &|m| {
        m.level_mut(0, 1).v_faces[0][0] = usize::MAX
    });
    with("redirect d^h_0 at (1,0)", &|m| {
        let cur = m.level_mut(1, 0).h_faces[0][0];
        m.level_mut(1, 0).h_faces[0][0] = flip(cur);
    });
    with("redirect d^v_1 at (0,1)", &|m| {
        let cur = m.level_mut(0, 1).v_faces[1][0];
        m.level_mut(0, 1).v_faces[1][0] = flip(cur);
    });
    with("redirect d^h_1 at (1,1)", &|m| {
        let cur = m.level_mut(1, 1).h_faces[1][0];
        m.level_mut(1, 1).h_faces[1][0] = flip(cur);
    });
    with("redirect d^v_0 at (1,1)", &|m| {
        let cur = m.level_mut(1, 1).v_faces[0][0];
        m.level_mut(1, 1).v_faces[0][0] = flip(cur);
    });
    with("redirect s^h_0 at (0,0)", &|m| {
        let cur = m.level_mut(0, 0).h_degens[0][0];
        m.level_mut(0, 0).h_degens[0][0] = flip(cur);
    });
    with("redirect s^v_0 at (0,0)", &|m| {
        let cur = m.level_mut(0, 0).v_degens[0][0];
        m.level_mut(0, 0).v_degens[0][0] = flip(cur);
    });
    with("redirect s^v_0 at (1,0)", &|m| {
        let cur = m.level_mut(1, 0).v_degens[0][0];
        m.level_mut(1, 0).v_degens[0][0] = flip(cur);
    });
    with("redirect s^h_1 at (1,0)", &|m| {
        let cur = m.level_mut(1, 0).h_degens[1][0];
        m.level_mut(1, 0).h_degens[1][0] = flip(cur);
    });
    with("truncate an h-face table", &|m| {
        m.level_mut(2, 0).h_faces[0].pop();
    });
    mutants
}

/// Criterion 5: exhaustive validators are clean on everything the pipeline
/// builds at D = 4, and injected single-entry corruptions are detected.
#[test]
fn criterion_5_validator_suites_and_mutants() {
    for name in fixtures::NAMES {
        validate_all_models(name);
    }

    let two_cat = two_category_mutants();
    assert!(two_cat.len() >= 10);
    for (name, m) in &two_cat {
        assert!(
            !m.validate().is_empty(),
            "2-category mutant not detected: {name}"
        );
    }
    let dbl = double_category_mutants();
    assert!(dbl.len() >= 10);
    for (name, m) in &dbl {
        assert!(
            !m.validate().is_empty(),
            "double-category mutant not detected: {name}"
        );
    }
    let simp = simplicial_mutants();
    assert!(simp.len() >= 10);
    for (name, m) in &simp {
        assert!(
            !m.validate().is_empty(),
            "simplicial mutant not detected: {name}"
        );
    }
    let bisimp = bisimplicial_mutants();
    assert!(bisimp.len() >= 10);
    for (name, m) in &bisimp {
        assert!(
            !m.validate().is_empty(),
            "bisimplicial mutant not detected: {name}"
        );
    }

    println!(
        "criterion 5 (validators clean at D={DIM}; {} mutants, 100% detected): PASS",
        two_cat.len() + dbl.len() + simp.len() + bisimp.len()
    );
}

/// Criterion 6: the reduction equations reproduce the stored data on every
/// enumerated simplex of every fixture, p <= 4. (These checks run inside
/// `verify_thomason_iso`; this criterion re-runs them standalone and counts
/// the simplices examined.)
#[test]
fn criterion_6_redundancy_equations() {
    use catelem::thomason::{
        check_double_side, check_two_side, encode_double_side, encode_two_side,
    };
    for name in fixtures::NAMES {
        let f = fixtures::build(name).unwrap();
        let ctx = ThomasonContext::build(&f, DIM).unwrap();
        let mut examined = 0usize;
        for p in 0..=DIM {
            for s in 0..ctx.bar2.level_size(p) {
                let data = encode_two_side(&ctx, p, s);
                let rep = check_two_side(&ctx, &data);
                assert!(rep.is_empty(), "{name}: {rep}");
                examined += 1;
            }
            for s in 0..ctx.bard.level_size(p) {
                let data = encode_double_side(&ctx, p, s);
                let rep = check_double_side(&ctx, &data);
                assert!(rep.is_empty(), "{name}: {rep}");
                examined += 1;
            }
        }
        assert!(examined > 0);
    }
    println!("criterion 6 (reduction equations on 100% of simplices, p <= {DIM}): PASS");
}

/// Criterion 7: two runs of `compare` produce byte-identical reports, both
/// through the library surface and through the installed binary.
#[test]
fn criterion_7_determinism() {
    ensure_fixture_files();
    let input = fixtures_dir().join("walking_two_cell.json");
    let cmd = || Command::Compare {
        input: input.clone(),
        max_dim: DIM,
        out: None,
    };
    let a = run_pipeline(&cmd());
    let b = run_pipeline(&cmd());
    assert_eq!(a.exit_code, 0);
    assert_eq!(a.report, b.report);

    let bin = env!("CARGO_BIN_EXE_catelem");
    let run = || {
        std::process::Command::new(bin)
            .args(["compare", "--in", input.to_str().unwrap(), "--max-dim", "4"])
            .output()
            .expect("binary runs")
    };
    let out1 = run();
    let out2 = run();
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout);
    assert_eq!(out1.stdout, a.report.as_bytes());

    println!("criterion 7 (byte-identical compare reports): PASS");
}
