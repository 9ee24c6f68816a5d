//! JSON document formats and loaders.
//!
//! Documents name cells by string IDs. Identity cells are never listed among
//! the ordinary cells: the loader creates one per object (and per 1-cell),
//! named `1[<label>]` unless an identity map supplies a nicer name. Table
//! entries forced by strict unitality are filled in automatically, as are
//! the values of a 2-functor on identity cells, on composite 1-cells, and on
//! pasted or vertically composed 2-cells. Everything the loader fills in is
//! afterwards re-checked by the exhaustive validators, so a derivation can
//! never mask a genuinely inconsistent document.
//!
//! Table entry order is always application order:
//!
//! * `compose`/`hcomp_one`/`h_compose`: `[first, then, result]`
//! * `vcomp`/`v_compose`: `[earlier, later, result]` (result = later ∘ earlier)
//! * `hcomp_two`/`sq_h_compose`: `[left, right, result]` (result = left|right)
//! * `sq_v_compose`: `[upper, lower, result]`

use crate::category::{FiniteCategory, FiniteFunctor, FiniteNatTrans};
use crate::double_category::DoubleCategory;
use crate::elements::{ElementsDoubleCategory, ElementsTwoCategory};
use crate::report::ValidationReport;
use crate::simplicial::{BLevel, SLevel, TruncatedBisimplicialSet, TruncatedSimplicialSet};
use crate::two_category::{FiniteTwoCategory, TwoFunctorToCat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum LoadError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("id collision: {0}")]
    IdCollision(String),
    #[error("validation failed:\n{0}")]
    Validation(Box<ValidationReport>),
}

fn schema(msg: impl Into<String>) -> LoadError {
    LoadError::Schema(msg.into())
}

// ---------------------------------------------------------------------------
// documents

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A finite category document (`cat.schema`, also embedded in
/// `twofunctor.schema` under `on_objects`).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CatDoc {
    pub objects: Vec<String>,
    /// Optional names for the identity morphisms; default `1[<object>]`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    /// Non-identity morphisms.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorDoc>,
    /// `[first, then, result]` entries for non-unit composites.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<[String; 3]>,
}

/// A finite 2-category document (`twocat.schema`).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TwoCatDoc {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identity_one_cells: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub one_cells: Vec<MorDoc>,
    /// Non-identity 2-cells; `src`/`tgt` are parallel 1-cells.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub two_cells: Vec<MorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identity_two_cells: BTreeMap<String, String>,
    /// `[first, then, result]` composites of 1-cells.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hcomp_one: Vec<[String; 3]>,
    /// `[earlier, later, result]` vertical composites of 2-cells.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vcomp: Vec<[String; 3]>,
    /// `[left, right, result]` horizontal pastings of 2-cells.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hcomp_two: Vec<[String; 3]>,
}

/// Object and morphism maps of a functor between named categories.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub objects: BTreeMap<String, String>,
    /// Images of non-identity morphisms; identities are forced.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, String>,
}

/// A strict 2-functor document (`twofunctor.schema`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoFunctorDoc {
    pub name: String,
    pub twocat: TwoCatDoc,
    /// `Fc` per object of the base.
    pub on_objects: BTreeMap<String, CatDoc>,
    /// `Ff: F(tgt f) -> F(src f)` per non-identity 1-cell; values on
    /// composite 1-cells may be omitted and are derived by functoriality.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub on_one_cells: BTreeMap<String, FunctorDoc>,
    /// Components of `Fα` per non-identity 2-cell, keyed by objects of
    /// `F(tgt f)` with values in `F(src f)`. Values on composite 2-cells
    /// may be omitted and are derived.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub on_two_cells: BTreeMap<String, BTreeMap<String, String>>,
    /// Free-form provenance block, preserved verbatim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SquareDoc {
    pub id: String,
    pub top: String,
    pub bottom: String,
    pub left: String,
    pub right: String,
}

/// A double category document (`dblcat.schema`), fully explicit; used for
/// the output of `elements --mode double` and the input of
/// `nerve --kind double`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DblCatDoc {
    pub objects: Vec<String>,
    pub h_morphisms: Vec<MorDoc>,
    pub v_morphisms: Vec<MorDoc>,
    pub squares: Vec<SquareDoc>,
    pub h_identities: BTreeMap<String, String>,
    pub v_identities: BTreeMap<String, String>,
    /// `e_f` per horizontal morphism.
    pub v_id_squares: BTreeMap<String, String>,
    /// `id_φ` per vertical morphism.
    pub h_id_squares: BTreeMap<String, String>,
    pub h_compose: Vec<[String; 3]>,
    pub v_compose: Vec<[String; 3]>,
    pub sq_h_compose: Vec<[String; 3]>,
    pub sq_v_compose: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<serde_json::Value>,
}

/// One level of a serialized simplicial set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SLevelDoc {
    pub level: usize,
    pub keys: Vec<Vec<u32>>,
    pub labels: Vec<String>,
    pub faces: Vec<Vec<usize>>,
    pub degeneracies: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BLevelDoc {
    pub m: usize,
    pub n: usize,
    pub keys: Vec<Vec<u32>>,
    pub labels: Vec<String>,
    pub h_faces: Vec<Vec<usize>>,
    pub v_faces: Vec<Vec<usize>>,
    pub h_degeneracies: Vec<Vec<usize>>,
    pub v_degeneracies: Vec<Vec<usize>>,
}

/// A truncated (bi)simplicial set document (`sset.schema`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SsetDoc {
    Simplicial {
        name: String,
        dim: usize,
        levels: Vec<SLevelDoc>,
    },
    Bisimplicial {
        name: String,
        dim: usize,
        levels: Vec<BLevelDoc>,
    },
}

// ---------------------------------------------------------------------------
// categories

struct NameTable<T: Copy> {
    map: BTreeMap<String, T>,
}

impl<T: Copy> NameTable<T> {
    fn new() -> Self {
        NameTable {
            map: BTreeMap::new(),
        }
    }

    fn insert(&mut self, name: &str, id: T) -> Result<(), LoadError> {
        if self.map.insert(name.to_string(), id).is_some() {
            return Err(LoadError::IdCollision(name.to_string()));
        }
        Ok(())
    }

    fn get(&self, name: &str, what: &str) -> Result<T, LoadError> {
        self.map
            .get(name)
            .copied()
            .ok_or_else(|| schema(format!("{what} references unknown id `{name}`")))
    }
}

pub fn category_from_doc(name: &str, doc: &CatDoc) -> Result<FiniteCategory, LoadError> {
    let mut cat = FiniteCategory::new(name);
    let mut objs = NameTable::new();
    let mut mors = NameTable::new();
    for label in &doc.objects {
        let o = cat.add_object(label);
        objs.insert(label, o)?;
    }
    for label in &doc.objects {
        let o = objs.get(label, "identities")?;
        let id_name = doc
            .identities
            .get(label)
            .cloned()
            .unwrap_or_else(|| format!("1[{label}]"));
        let m = cat.add_morphism(o, o, &id_name);
        cat.set_identity(o, m);
        mors.insert(&id_name, m)?;
    }
    for m in &doc.morphisms {
        let src = objs.get(&m.src, "morphisms")?;
        let tgt = objs.get(&m.tgt, "morphisms")?;
        let id = cat.add_morphism(src, tgt, &m.id);
        mors.insert(&m.id, id)?;
    }
    for [first, then, result] in &doc.compose {
        let f = mors.get(first, "compose")?;
        let g = mors.get(then, "compose")?;
        let r = mors.get(result, "compose")?;
        cat.set_compose(g, f, r);
    }
    cat.fill_unit_composites();
    Ok(cat)
}

pub fn category_to_doc(cat: &FiniteCategory) -> CatDoc {
    let mut doc = CatDoc {
        objects: cat
            .objects()
            .map(|o| cat.object_label(o).to_string())
            .collect(),
        ..Default::default()
    };
    for o in cat.objects() {
        doc.identities.insert(
            cat.object_label(o).to_string(),
            cat.morphism_label(cat.identity_of(o)).to_string(),
        );
    }
    for m in cat.morphisms() {
        if cat.is_identity(m) {
            continue;
        }
        doc.morphisms.push(MorDoc {
            id: cat.morphism_label(m).to_string(),
            src: cat.object_label(cat.src(m)).to_string(),
            tgt: cat.object_label(cat.tgt(m)).to_string(),
        });
    }
    for g in cat.morphisms() {
        for f in cat.morphisms() {
            if let Some(r) = cat.compose(g, f) {
                if cat.is_identity(g) || cat.is_identity(f) {
                    continue; // forced by unit laws
                }
                doc.compose.push([
                    cat.morphism_label(f).to_string(),
                    cat.morphism_label(g).to_string(),
                    cat.morphism_label(r).to_string(),
                ]);
            }
        }
    }
    doc
}

// ---------------------------------------------------------------------------
// 2-categories

struct TwoCatNames {
    objs: NameTable<crate::two_category::TObjId>,
    ones: NameTable<crate::two_category::OneId>,
    twos: NameTable<crate::two_category::TwoId>,
}

pub fn two_category_from_doc(name: &str, doc: &TwoCatDoc) -> Result<FiniteTwoCategory, LoadError> {
    let mut c = FiniteTwoCategory::new(name);
    let mut names = TwoCatNames {
        objs: NameTable::new(),
        ones: NameTable::new(),
        twos: NameTable::new(),
    };
    for label in &doc.objects {
        let o = c.add_object(label);
        names.objs.insert(label, o)?;
    }
    for label in &doc.objects {
        let o = names.objs.get(label, "identity_one_cells")?;
        let id_name = doc
            .identity_one_cells
            .get(label)
            .cloned()
            .unwrap_or_else(|| format!("1[{label}]"));
        let f = c.add_one_cell(o, o, &id_name);
        c.set_one_identity(o, f);
        names.ones.insert(&id_name, f)?;
    }
    for m in &doc.one_cells {
        let src = names.objs.get(&m.src, "one_cells")?;
        let tgt = names.objs.get(&m.tgt, "one_cells")?;
        let f = c.add_one_cell(src, tgt, &m.id);
        names.ones.insert(&m.id, f)?;
    }
    // identity 2-cells for every 1-cell, in 1-cell order
    let all_ones: Vec<(String, crate::two_category::OneId)> = names
        .ones
        .map
        .iter()
        .map(|(k, &v)| (k.clone(), v))
        .collect();
    let mut ordered = all_ones;
    ordered.sort_by_key(|&(_, f)| f);
    for (label, f) in &ordered {
        let id_name = doc
            .identity_two_cells
            .get(label)
            .cloned()
            .unwrap_or_else(|| format!("1[{label}]"));
        let a = c.add_two_cell(*f, *f, &id_name);
        c.set_two_identity(*f, a);
        names.twos.insert(&id_name, a)?;
    }
    for m in &doc.two_cells {
        let src = names.ones.get(&m.src, "two_cells")?;
        let tgt = names.ones.get(&m.tgt, "two_cells")?;
        let a = c.add_two_cell(src, tgt, &m.id);
        names.twos.insert(&m.id, a)?;
    }
    for [first, then, result] in &doc.hcomp_one {
        let f = names.ones.get(first, "hcomp_one")?;
        let g = names.ones.get(then, "hcomp_one")?;
        let r = names.ones.get(result, "hcomp_one")?;
        c.set_hcomp_one(g, f, r);
    }
    for [earlier, later, result] in &doc.vcomp {
        let a = names.twos.get(earlier, "vcomp")?;
        let b = names.twos.get(later, "vcomp")?;
        let r = names.twos.get(result, "vcomp")?;
        c.set_vcomp(b, a, r);
    }
    for [left, right, result] in &doc.hcomp_two {
        let a = names.twos.get(left, "hcomp_two")?;
        let b = names.twos.get(right, "hcomp_two")?;
        let r = names.twos.get(result, "hcomp_two")?;
        c.set_hcomp_two(a, b, r);
    }
    c.fill_forced_entries();
    Ok(c)
}

pub fn two_category_to_doc(c: &FiniteTwoCategory) -> TwoCatDoc {
    let mut doc = TwoCatDoc {
        objects: c.objects().map(|o| c.object_label(o).to_string()).collect(),
        ..Default::default()
    };
    for o in c.objects() {
        doc.identity_one_cells.insert(
            c.object_label(o).to_string(),
            c.one_label(c.one_identity_of(o)).to_string(),
        );
    }
    for f in c.one_cells() {
        doc.identity_two_cells.insert(
            c.one_label(f).to_string(),
            c.two_label(c.two_identity_of(f)).to_string(),
        );
        if c.is_identity_one(f) {
            continue;
        }
        doc.one_cells.push(MorDoc {
            id: c.one_label(f).to_string(),
            src: c.object_label(c.one_src(f)).to_string(),
            tgt: c.object_label(c.one_tgt(f)).to_string(),
        });
    }
    for a in c.two_cells() {
        if c.is_identity_two(a) {
            continue;
        }
        doc.two_cells.push(MorDoc {
            id: c.two_label(a).to_string(),
            src: c.one_label(c.two_src(a)).to_string(),
            tgt: c.one_label(c.two_tgt(a)).to_string(),
        });
    }
    for g in c.one_cells() {
        for f in c.one_cells() {
            if c.is_identity_one(g) || c.is_identity_one(f) {
                continue;
            }
            if let Some(r) = c.compose_one(g, f) {
                doc.hcomp_one.push([
                    c.one_label(f).to_string(),
                    c.one_label(g).to_string(),
                    c.one_label(r).to_string(),
                ]);
            }
        }
    }
    for b in c.two_cells() {
        for a in c.two_cells() {
            if c.is_identity_two(b) || c.is_identity_two(a) {
                continue;
            }
            if let Some(r) = c.vertical_compose(b, a) {
                doc.vcomp.push([
                    c.two_label(a).to_string(),
                    c.two_label(b).to_string(),
                    c.two_label(r).to_string(),
                ]);
            }
        }
    }
    for a in c.two_cells() {
        for b in c.two_cells() {
            if c.is_identity_two(a) && c.is_identity_two(b) {
                continue;
            }
            if let Some(r) = c.horizontal_paste(a, b) {
                doc.hcomp_two.push([
                    c.two_label(a).to_string(),
                    c.two_label(b).to_string(),
                    c.two_label(r).to_string(),
                ]);
            }
        }
    }
    doc
}

// ---------------------------------------------------------------------------
// 2-functors

pub fn two_functor_from_doc(doc: &TwoFunctorDoc) -> Result<TwoFunctorToCat, LoadError> {
    let source = two_category_from_doc(&format!("{}-base", doc.name), &doc.twocat)?;

    let mut on_objects = Vec::with_capacity(source.object_count());
    for o in source.objects() {
        let label = source.object_label(o);
        let cat_doc = doc
            .on_objects
            .get(label)
            .ok_or_else(|| schema(format!("on_objects misses base object `{label}`")))?;
        on_objects.push(category_from_doc(&format!("F({label})"), cat_doc)?);
    }

    // functors on 1-cells: identities forced, explicit otherwise, composites
    // derived from any recorded factorization
    let mut on_one_cells: Vec<Option<FiniteFunctor>> = vec![None; source.one_cell_count()];
    for f in source.one_cells() {
        if source.is_identity_one(f) {
            let cat = &on_objects[source.one_src(f).0 as usize];
            on_one_cells[f.0 as usize] = Some(FiniteFunctor::identity(cat));
        } else if let Some(fd) = doc.on_one_cells.get(source.one_label(f)) {
            let dom = &on_objects[source.one_tgt(f).0 as usize];
            let cod = &on_objects[source.one_src(f).0 as usize];
            on_one_cells[f.0 as usize] = Some(functor_from_doc(
                format!("F({})", source.one_label(f)),
                fd,
                dom,
                cod,
            )?);
        }
    }
    loop {
        let mut progress = false;
        for g in source.one_cells() {
            for f in source.one_cells() {
                let Some(gf) = source.compose_one(g, f) else {
                    continue;
                };
                if on_one_cells[gf.0 as usize].is_some() {
                    continue;
                }
                if let (Some(ff), Some(fg)) =
                    (&on_one_cells[f.0 as usize], &on_one_cells[g.0 as usize])
                {
                    let mut derived = ff.after(fg);
                    derived.name = format!("F({})", source.one_label(gf));
                    on_one_cells[gf.0 as usize] = Some(derived);
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }
    let on_one_cells = on_one_cells
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            f.ok_or_else(|| {
                schema(format!(
                    "no value for F on 1-cell `{}` (explicit or derivable)",
                    source.one_label(crate::two_category::OneId(i as u32))
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    // transformations on 2-cells
    let mut on_two_cells: Vec<Option<FiniteNatTrans>> = vec![None; source.two_cell_count()];
    for a in source.two_cells() {
        if source.is_identity_two(a) {
            let f = source.two_src(a);
            let dom = &on_objects[source.one_tgt(f).0 as usize];
            let cod = &on_objects[source.one_src(f).0 as usize];
            on_two_cells[a.0 as usize] = Some(FiniteNatTrans::identity(
                &on_one_cells[f.0 as usize],
                dom,
                cod,
            ));
        } else if let Some(components) = doc.on_two_cells.get(source.two_label(a)) {
            let f = source.two_src(a);
            let dom = &on_objects[source.one_tgt(f).0 as usize];
            let cod = &on_objects[source.one_src(f).0 as usize];
            let mut comp = Vec::with_capacity(dom.object_count());
            for z in dom.objects() {
                let zl = dom.object_label(z);
                let target = components.get(zl).ok_or_else(|| {
                    schema(format!(
                        "component of F({}) missing at object `{zl}`",
                        source.two_label(a)
                    ))
                })?;
                let m = cod.find_morphism(target).ok_or_else(|| {
                    schema(format!(
                        "component of F({}) at `{zl}` references unknown morphism `{target}`",
                        source.two_label(a)
                    ))
                })?;
                comp.push(m);
            }
            on_two_cells[a.0 as usize] = Some(FiniteNatTrans::new(
                format!("F({})", source.two_label(a)),
                comp,
            ));
        }
    }
    loop {
        let mut progress = false;
        // vertical composites: F(β∘α) = Fβ ∘ Fα
        for b in source.two_cells() {
            for a in source.two_cells() {
                let Some(ba) = source.vertical_compose(b, a) else {
                    continue;
                };
                if on_two_cells[ba.0 as usize].is_some() {
                    continue;
                }
                let cod = &on_objects[source.one_src(source.two_src(a)).0 as usize];
                if let (Some(fa), Some(fb)) =
                    (&on_two_cells[a.0 as usize], &on_two_cells[b.0 as usize])
                {
                    if let Some(mut derived) = fb.after(fa, cod) {
                        derived.name = format!("F({})", source.two_label(ba));
                        on_two_cells[ba.0 as usize] = Some(derived);
                        progress = true;
                    }
                }
            }
        }
        // pastings: F(α|β)_z = F(tgt α)((Fβ)_z) ∘ (Fα)_{F(src β)(z)}
        for a in source.two_cells() {
            for b in source.two_cells() {
                let Some(ab) = source.horizontal_paste(a, b) else {
                    continue;
                };
                if on_two_cells[ab.0 as usize].is_some() {
                    continue;
                }
                let (Some(fa), Some(fb)) =
                    (&on_two_cells[a.0 as usize], &on_two_cells[b.0 as usize])
                else {
                    continue;
                };
                let g = source.two_tgt(a);
                let u = source.two_src(b);
                let outer = &on_objects[source.one_tgt(u).0 as usize];
                let inner = &on_objects[source.one_src(source.two_src(a)).0 as usize];
                let fg = &on_one_cells[g.0 as usize];
                let fu = &on_one_cells[u.0 as usize];
                let comp = outer
                    .objects()
                    .map(|z| {
                        inner.compose(fg.apply_mor(fb.component(z)), fa.component(fu.apply_obj(z)))
                    })
                    .collect::<Option<Vec<_>>>();
                if let Some(comp) = comp {
                    on_two_cells[ab.0 as usize] = Some(FiniteNatTrans::new(
                        format!("F({})", source.two_label(ab)),
                        comp,
                    ));
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }
    let on_two_cells = on_two_cells
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| {
                schema(format!(
                    "no value for F on 2-cell `{}` (explicit or derivable)",
                    source.two_label(crate::two_category::TwoId(i as u32))
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let f = TwoFunctorToCat {
        name: doc.name.clone(),
        source,
        on_objects,
        on_one_cells,
        on_two_cells,
    };
    let report = f.validate();
    if !report.is_empty() {
        return Err(LoadError::Validation(Box::new(report)));
    }
    Ok(f)
}

fn functor_from_doc(
    name: String,
    doc: &FunctorDoc,
    dom: &FiniteCategory,
    cod: &FiniteCategory,
) -> Result<FiniteFunctor, LoadError> {
    let mut obj_map = Vec::with_capacity(dom.object_count());
    for o in dom.objects() {
        let ol = dom.object_label(o);
        let target = doc
            .objects
            .get(ol)
            .ok_or_else(|| schema(format!("{name}: object map missing at `{ol}`")))?;
        obj_map.push(
            cod.find_object(target)
                .ok_or_else(|| schema(format!("{name}: unknown object `{target}`")))?,
        );
    }
    let mut mor_map = Vec::with_capacity(dom.morphism_count());
    for m in dom.morphisms() {
        let ml = dom.morphism_label(m);
        let image = if dom.is_identity(m) {
            cod.identity_of(obj_map[dom.src(m).0 as usize])
        } else {
            let target = doc
                .morphisms
                .get(ml)
                .ok_or_else(|| schema(format!("{name}: morphism map missing at `{ml}`")))?;
            cod.find_morphism(target)
                .ok_or_else(|| schema(format!("{name}: unknown morphism `{target}`")))?
        };
        mor_map.push(image);
    }
    Ok(FiniteFunctor::new(name, obj_map, mor_map))
}

pub fn load_two_functor(path: impl AsRef<Path>) -> Result<TwoFunctorToCat, LoadError> {
    let text = std::fs::read_to_string(path)?;
    let doc: TwoFunctorDoc = serde_json::from_str(&text)?;
    two_functor_from_doc(&doc)
}

// ---------------------------------------------------------------------------
// elements output documents

pub fn elements_two_to_doc(el: &ElementsTwoCategory) -> TwoCatDoc {
    two_category_to_doc(&el.two_cat)
}

/// Provenance block for `∫F`: which `(c, x)` / `(f, φ)` each cell came from.
pub fn elements_two_pairs(el: &ElementsTwoCategory, f: &TwoFunctorToCat) -> serde_json::Value {
    let c = &f.source;
    let objects: BTreeMap<String, serde_json::Value> = el
        .object_pair
        .iter()
        .enumerate()
        .map(|(i, &(co, x))| {
            (
                el.two_cat
                    .object_label(crate::two_category::TObjId(i as u32))
                    .to_string(),
                serde_json::json!({
                    "c": c.object_label(co),
                    "x": f.fc(co).object_label(x),
                }),
            )
        })
        .collect();
    let one_cells: BTreeMap<String, serde_json::Value> = el
        .one_pair
        .iter()
        .enumerate()
        .map(|(i, &(fc, phi))| {
            let a = c.one_src(fc);
            (
                el.two_cat
                    .one_label(crate::two_category::OneId(i as u32))
                    .to_string(),
                serde_json::json!({
                    "f": c.one_label(fc),
                    "phi": f.fc(a).morphism_label(phi),
                }),
            )
        })
        .collect();
    let two_cells: BTreeMap<String, serde_json::Value> = el
        .two_under
        .iter()
        .enumerate()
        .map(|(i, &al)| {
            (
                el.two_cat
                    .two_label(crate::two_category::TwoId(i as u32))
                    .to_string(),
                serde_json::json!({ "alpha": c.two_label(al) }),
            )
        })
        .collect();
    serde_json::json!({
        "objects": objects,
        "one_cells": one_cells,
        "two_cells": two_cells,
    })
}

pub fn double_category_to_doc(d: &DoubleCategory) -> DblCatDoc {
    let mut doc = DblCatDoc {
        objects: d.objects().map(|o| d.object_label(o).to_string()).collect(),
        ..Default::default()
    };
    for o in d.objects() {
        doc.h_identities.insert(
            d.object_label(o).to_string(),
            d.h_label(d.h_identity_of(o)).to_string(),
        );
        doc.v_identities.insert(
            d.object_label(o).to_string(),
            d.v_label(d.v_identity_of(o)).to_string(),
        );
    }
    for h in d.h_morphisms() {
        doc.v_id_squares.insert(
            d.h_label(h).to_string(),
            d.square_label(d.v_id_square_of(h)).to_string(),
        );
        doc.h_morphisms.push(MorDoc {
            id: d.h_label(h).to_string(),
            src: d.object_label(d.h_src(h)).to_string(),
            tgt: d.object_label(d.h_tgt(h)).to_string(),
        });
    }
    for v in d.v_morphisms() {
        doc.h_id_squares.insert(
            d.v_label(v).to_string(),
            d.square_label(d.h_id_square_of(v)).to_string(),
        );
        doc.v_morphisms.push(MorDoc {
            id: d.v_label(v).to_string(),
            src: d.object_label(d.v_src(v)).to_string(),
            tgt: d.object_label(d.v_tgt(v)).to_string(),
        });
    }
    for q in d.squares() {
        let s = d.square(q);
        doc.squares.push(SquareDoc {
            id: d.square_label(q).to_string(),
            top: d.h_label(s.top).to_string(),
            bottom: d.h_label(s.bottom).to_string(),
            left: d.v_label(s.left).to_string(),
            right: d.v_label(s.right).to_string(),
        });
    }
    for g in d.h_morphisms() {
        for f in d.h_morphisms() {
            if let Some(r) = d.compose_h(g, f) {
                doc.h_compose.push([
                    d.h_label(f).to_string(),
                    d.h_label(g).to_string(),
                    d.h_label(r).to_string(),
                ]);
            }
        }
    }
    for later in d.v_morphisms() {
        for earlier in d.v_morphisms() {
            if let Some(r) = d.compose_v(later, earlier) {
                doc.v_compose.push([
                    d.v_label(earlier).to_string(),
                    d.v_label(later).to_string(),
                    d.v_label(r).to_string(),
                ]);
            }
        }
    }
    for a in d.squares() {
        for b in d.squares() {
            if let Some(r) = d.compose_squares_h(a, b) {
                doc.sq_h_compose.push([
                    d.square_label(a).to_string(),
                    d.square_label(b).to_string(),
                    d.square_label(r).to_string(),
                ]);
            }
            if let Some(r) = d.compose_squares_v(a, b) {
                doc.sq_v_compose.push([
                    d.square_label(a).to_string(),
                    d.square_label(b).to_string(),
                    d.square_label(r).to_string(),
                ]);
            }
        }
    }
    doc
}

pub fn elements_double_pairs(
    el: &ElementsDoubleCategory,
    f: &TwoFunctorToCat,
) -> serde_json::Value {
    let c = &f.source;
    let d = &el.double_cat;
    let squares: BTreeMap<String, serde_json::Value> = el
        .sq_under
        .iter()
        .enumerate()
        .map(|(i, &(al, right))| {
            (
                d.square_label(crate::double_category::SqId(i as u32))
                    .to_string(),
                serde_json::json!({
                    "alpha": c.two_label(al),
                    "right": d.v_label(right),
                }),
            )
        })
        .collect();
    serde_json::json!({ "squares": squares })
}

pub fn double_category_from_doc(name: &str, doc: &DblCatDoc) -> Result<DoubleCategory, LoadError> {
    let mut d = DoubleCategory::new(name);
    let mut objs = NameTable::new();
    let mut hs = NameTable::new();
    let mut vs = NameTable::new();
    let mut sqs = NameTable::new();
    for label in &doc.objects {
        let o = d.add_object(label);
        objs.insert(label, o)?;
    }
    for m in &doc.h_morphisms {
        let h = d.add_h_morphism(
            objs.get(&m.src, "h_morphisms")?,
            objs.get(&m.tgt, "h_morphisms")?,
            &m.id,
        );
        hs.insert(&m.id, h)?;
    }
    for m in &doc.v_morphisms {
        let v = d.add_v_morphism(
            objs.get(&m.src, "v_morphisms")?,
            objs.get(&m.tgt, "v_morphisms")?,
            &m.id,
        );
        vs.insert(&m.id, v)?;
    }
    for s in &doc.squares {
        let q = d.add_square(
            hs.get(&s.top, "squares")?,
            hs.get(&s.bottom, "squares")?,
            vs.get(&s.left, "squares")?,
            vs.get(&s.right, "squares")?,
            &s.id,
        );
        sqs.insert(&s.id, q)?;
    }
    for (o, h) in &doc.h_identities {
        d.set_h_identity(objs.get(o, "h_identities")?, hs.get(h, "h_identities")?);
    }
    for (o, v) in &doc.v_identities {
        d.set_v_identity(objs.get(o, "v_identities")?, vs.get(v, "v_identities")?);
    }
    for (h, q) in &doc.v_id_squares {
        d.set_v_id_square(hs.get(h, "v_id_squares")?, sqs.get(q, "v_id_squares")?);
    }
    for (v, q) in &doc.h_id_squares {
        d.set_h_id_square(vs.get(v, "h_id_squares")?, sqs.get(q, "h_id_squares")?);
    }
    for [first, then, result] in &doc.h_compose {
        d.set_h_compose(
            hs.get(then, "h_compose")?,
            hs.get(first, "h_compose")?,
            hs.get(result, "h_compose")?,
        );
    }
    for [earlier, later, result] in &doc.v_compose {
        d.set_v_compose(
            vs.get(later, "v_compose")?,
            vs.get(earlier, "v_compose")?,
            vs.get(result, "v_compose")?,
        );
    }
    for [left, right, result] in &doc.sq_h_compose {
        d.set_sq_h_compose(
            sqs.get(left, "sq_h_compose")?,
            sqs.get(right, "sq_h_compose")?,
            sqs.get(result, "sq_h_compose")?,
        );
    }
    for [upper, lower, result] in &doc.sq_v_compose {
        d.set_sq_v_compose(
            sqs.get(upper, "sq_v_compose")?,
            sqs.get(lower, "sq_v_compose")?,
            sqs.get(result, "sq_v_compose")?,
        );
    }
    Ok(d)
}

// ---------------------------------------------------------------------------
// simplicial sets

pub fn simplicial_to_doc(s: &TruncatedSimplicialSet) -> SsetDoc {
    SsetDoc::Simplicial {
        name: s.name.clone(),
        dim: s.dim,
        levels: (0..=s.dim)
            .map(|k| SLevelDoc {
                level: k,
                keys: s.levels[k].keys.clone(),
                labels: s.levels[k].labels.clone(),
                faces: s.levels[k].faces.clone(),
                degeneracies: s.levels[k].degens.clone(),
            })
            .collect(),
    }
}

pub fn bisimplicial_to_doc(x: &TruncatedBisimplicialSet) -> SsetDoc {
    let mut levels = Vec::new();
    for m in 0..=x.dim {
        for n in 0..=x.dim {
            let lvl = &x.levels[m][n];
            levels.push(BLevelDoc {
                m,
                n,
                keys: lvl.keys.clone(),
                labels: lvl.labels.clone(),
                h_faces: lvl.h_faces.clone(),
                v_faces: lvl.v_faces.clone(),
                h_degeneracies: lvl.h_degens.clone(),
                v_degeneracies: lvl.v_degens.clone(),
            });
        }
    }
    SsetDoc::Bisimplicial {
        name: x.name.clone(),
        dim: x.dim,
        levels,
    }
}

pub fn simplicial_from_doc(doc: &SsetDoc) -> Result<TruncatedSimplicialSet, LoadError> {
    let SsetDoc::Simplicial { name, dim, levels } = doc else {
        return Err(schema("expected a document with kind = simplicial"));
    };
    let mut s = TruncatedSimplicialSet::new(name.clone(), *dim);
    for lvl in levels {
        if lvl.level > *dim {
            return Err(schema(format!("level {} exceeds dim {dim}", lvl.level)));
        }
        let mut level = SLevel::default();
        for (i, key) in lvl.keys.iter().enumerate() {
            let label = lvl.labels.get(i).cloned().unwrap_or_default();
            if level.intern(key.clone(), label) != i {
                return Err(LoadError::IdCollision(format!(
                    "duplicate simplex key at level {}",
                    lvl.level
                )));
            }
        }
        level.faces = lvl.faces.clone();
        level.degens = lvl.degeneracies.clone();
        s.levels[lvl.level] = level;
    }
    Ok(s)
}

pub fn bisimplicial_from_doc(doc: &SsetDoc) -> Result<TruncatedBisimplicialSet, LoadError> {
    let SsetDoc::Bisimplicial { name, dim, levels } = doc else {
        return Err(schema("expected a document with kind = bisimplicial"));
    };
    let mut x = TruncatedBisimplicialSet::new(name.clone(), *dim);
    for lvl in levels {
        if lvl.m > *dim || lvl.n > *dim {
            return Err(schema(format!(
                "level ({},{}) exceeds dim {dim}",
                lvl.m, lvl.n
            )));
        }
        let mut level = BLevel::default();
        for (i, key) in lvl.keys.iter().enumerate() {
            let label = lvl.labels.get(i).cloned().unwrap_or_default();
            if level.intern(key.clone(), label) != i {
                return Err(LoadError::IdCollision(format!(
                    "duplicate simplex key at level ({},{})",
                    lvl.m, lvl.n
                )));
            }
        }
        level.h_faces = lvl.h_faces.clone();
        level.v_faces = lvl.v_faces.clone();
        level.h_degens = lvl.h_degeneracies.clone();
        level.v_degens = lvl.v_degeneracies.clone();
        *x.level_mut(lvl.m, lvl.n) = level;
    }
    Ok(x)
}

/// Deterministic pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_docs_load_and_validate() {
        for name in fixtures::NAMES {
            let f = fixtures::build(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(f.validate().is_empty(), "{name}");
        }
    }

    #[test]
    fn two_cat_doc_round_trips() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let doc = two_category_to_doc(&f.source);
        let c2 = two_category_from_doc("roundtrip", &doc).unwrap();
        assert_eq!(c2.object_count(), f.source.object_count());
        assert_eq!(c2.one_cell_count(), f.source.one_cell_count());
        assert_eq!(c2.two_cell_count(), f.source.two_cell_count());
        assert!(c2.validate().is_empty());
    }

    #[test]
    fn unknown_reference_is_schema_error() {
        let mut doc = fixtures::doc("point").unwrap();
        doc.twocat.one_cells.push(MorDoc {
            id: "bad".into(),
            src: "nowhere".into(),
            tgt: "pt".into(),
        });
        match two_functor_from_doc(&doc) {
            Err(LoadError::Schema(msg)) => assert!(msg.contains("nowhere"), "{msg}"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_is_collision() {
        let mut doc = fixtures::doc("walking_two_cell").unwrap();
        let dup = doc.twocat.one_cells[0].clone();
        doc.twocat.one_cells.push(dup);
        match two_functor_from_doc(&doc) {
            Err(LoadError::IdCollision(_)) => {}
            other => panic!("expected id collision, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_functoriality_is_validation_error() {
        let mut doc = fixtures::doc("walking_two_cell").unwrap();
        // retarget the single α component so the triangle ψ = (Fα)∘φ breaks
        doc.on_two_cells
            .get_mut("alpha")
            .unwrap()
            .insert("x'".into(), "phi".into());
        match two_functor_from_doc(&doc) {
            Err(LoadError::Validation(rep)) => assert!(!rep.is_empty()),
            other => panic!("expected validation error, got {other:?}"),
        }
    }
}
