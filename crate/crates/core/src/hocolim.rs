//! The homotopy colimit of a strict 2-functor `F: C^op -> Cat` as a
//! simplicial category, its bisimplicial set `Y_{m,n} = N_m((hocolim F)_n)`,
//! and the diagonal of that.
//!
//! The category of `n`-simplices has objects `(x; f_1, ..., f_n)` with `x`
//! in `Fc_0` and `f_i: c_i -> c_{i-1}` a composable chain of 1-cells of `C`,
//! and morphisms `(φ; α_1, ..., α_n)` with `φ` a morphism of `Fc_0` and
//! `α_i: f_i ⇒ g_i` parallel 2-cells, composing componentwise.
//!
//! The face functor `d_0` discards `(c_0, f_1)` and pushes the fiber data
//! along `F`: on objects `x ↦ Ff_1(x)`, on morphisms
//! `(φ, α_1) ↦ Fg_1(φ) ∘ (Fα_1)_x`. Every other face and degeneracy acts
//! only on the chain part: an inner `d_i` composes `f_i ∘ f_{i+1}` and
//! pastes `α_{i+1} | α_i`, `d_n` drops the last leg, and `s_i` inserts an
//! identity 1-cell with its identity 2-cell.
//!
//! All faces and degeneracies are materialized as functors between the
//! level categories and checked to satisfy the simplicial identities as
//! functors before any nerve is taken; the bisimplicial set then inherits
//! its commutation relations, which are validated once more on the nerve
//! level.

use crate::category::{FiniteCategory, FiniteFunctor, MorId, ObjId};
use crate::nerve::{nerve_category, Guard, SizeError};
use crate::report::{ValidationReport, ViolationKind};
use crate::simplicial::{TruncatedBisimplicialSet, TruncatedSimplicialSet};
use crate::two_category::{OneId, TObjId, TwoFunctorToCat, TwoId};
use std::collections::BTreeMap;

/// An object `(x; f_1, ..., f_n)` of a hocolim level, with its base object
/// `c_0` made explicit (for `n = 0` the chain does not determine it).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HocolimObject {
    pub base: TObjId,
    pub x: ObjId,
    pub chain: Vec<OneId>,
}

/// A morphism `(φ; α_1, ..., α_n)`; `φ` lives in the fiber of the source's
/// base object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HocolimMorphism {
    pub base: TObjId,
    pub phi: MorId,
    pub alphas: Vec<TwoId>,
}

/// One level of the simplicial category, with provenance for every object
/// and morphism.
pub struct HocolimLevel {
    pub cat: FiniteCategory,
    pub objects: Vec<HocolimObject>,
    pub morphisms: Vec<HocolimMorphism>,
    obj_ix: BTreeMap<HocolimObject, ObjId>,
    mor_ix: BTreeMap<HocolimMorphism, MorId>,
}

impl HocolimLevel {
    pub fn object_of(&self, o: &HocolimObject) -> ObjId {
        self.obj_ix[o]
    }

    pub fn morphism_of(&self, m: &HocolimMorphism) -> MorId {
        self.mor_ix[m]
    }
}

/// The category of `n`-simplices of `hocolim F`.
pub fn hocolim_level(f: &TwoFunctorToCat, n: usize) -> HocolimLevel {
    let c = &f.source;
    let mut cat = FiniteCategory::new(format!("hocolim({})_{n}", f.name));

    // chains f_1, ..., f_n with src(f_i) = tgt(f_{i+1}), tracked by base c_0
    let mut chains: Vec<(Option<TObjId>, Vec<OneId>)> = vec![(None, vec![])];
    for _ in 0..n {
        let mut next = Vec::new();
        for (base, chain) in &chains {
            for g in c.one_cells() {
                let ok = match chain.last() {
                    None => true,
                    Some(&last) => c.one_src(last) == c.one_tgt(g),
                };
                if ok {
                    let mut c2 = chain.clone();
                    c2.push(g);
                    next.push((base.or(Some(c.one_tgt(g))), c2));
                }
            }
        }
        chains = next;
    }

    let mut objects = Vec::new();
    let mut obj_ix = BTreeMap::new();
    for (base, chain) in &chains {
        for co in c.objects() {
            if let Some(b) = base {
                if co != *b {
                    continue;
                }
            }
            for x in f.fc(co).objects() {
                let label = format!(
                    "({};{})",
                    f.fc(co).object_label(x),
                    chain
                        .iter()
                        .map(|&g| c.one_label(g))
                        .collect::<Vec<_>>()
                        .join(",")
                );
                let ho = HocolimObject {
                    base: co,
                    x,
                    chain: chain.clone(),
                };
                let o = cat.add_object(label);
                obj_ix.insert(ho.clone(), o);
                objects.push(ho);
            }
        }
    }

    // morphisms: φ out of x in the fiber, with a parallel 2-cell per leg
    let mut morphisms = Vec::new();
    let mut mor_ix = BTreeMap::new();
    for (src_ix, ho) in objects.iter().enumerate() {
        let fc0 = f.fc(ho.base);
        let mut alpha_tuples: Vec<Vec<TwoId>> = vec![vec![]];
        for &leg in &ho.chain {
            let mut next = Vec::new();
            for tup in &alpha_tuples {
                for t in c.two_cells() {
                    if c.two_src(t) == leg {
                        let mut t2 = tup.clone();
                        t2.push(t);
                        next.push(t2);
                    }
                }
            }
            alpha_tuples = next;
        }
        for phi in fc0.morphisms() {
            if fc0.src(phi) != ho.x {
                continue;
            }
            for tup in &alpha_tuples {
                let g_chain: Vec<OneId> = tup.iter().map(|&t| c.two_tgt(t)).collect();
                let tgt = HocolimObject {
                    base: ho.base,
                    x: fc0.tgt(phi),
                    chain: g_chain,
                };
                let label = format!(
                    "({};{})",
                    fc0.morphism_label(phi),
                    tup.iter()
                        .map(|&t| c.two_label(t))
                        .collect::<Vec<_>>()
                        .join(",")
                );
                let hm = HocolimMorphism {
                    base: ho.base,
                    phi,
                    alphas: tup.clone(),
                };
                let m = cat.add_morphism(ObjId(src_ix as u32), obj_ix[&tgt], label);
                mor_ix.insert(hm.clone(), m);
                morphisms.push(hm);
            }
        }
    }

    for (i, ho) in objects.iter().enumerate() {
        let id = HocolimMorphism {
            base: ho.base,
            phi: f.fc(ho.base).identity_of(ho.x),
            alphas: ho.chain.iter().map(|&g| c.two_identity_of(g)).collect(),
        };
        cat.set_identity(ObjId(i as u32), mor_ix[&id]);
    }
    for (s_ix, hm1) in morphisms.iter().enumerate() {
        for (t_ix, hm2) in morphisms.iter().enumerate() {
            let (s_m, t_m) = (MorId(s_ix as u32), MorId(t_ix as u32));
            if cat.tgt(s_m) != cat.src(t_m) {
                continue;
            }
            let fc0 = f.fc(hm1.base);
            let composite = HocolimMorphism {
                base: hm1.base,
                phi: fc0
                    .compose(hm2.phi, hm1.phi)
                    .expect("fiber morphisms compose"),
                alphas: hm1
                    .alphas
                    .iter()
                    .zip(&hm2.alphas)
                    .map(|(&a, &b)| c.vertical_compose(b, a).expect("2-cells compose"))
                    .collect(),
            };
            cat.set_compose(t_m, s_m, mor_ix[&composite]);
        }
    }

    HocolimLevel {
        cat,
        objects,
        morphisms,
        obj_ix,
        mor_ix,
    }
}

fn face_object(f: &TwoFunctorToCat, ho: &HocolimObject, i: usize) -> HocolimObject {
    let c = &f.source;
    let n = ho.chain.len();
    if i == 0 {
        let f1 = ho.chain[0];
        HocolimObject {
            base: c.one_src(f1),
            x: f.ff(f1).apply_obj(ho.x),
            chain: ho.chain[1..].to_vec(),
        }
    } else if i == n {
        HocolimObject {
            base: ho.base,
            x: ho.x,
            chain: ho.chain[..n - 1].to_vec(),
        }
    } else {
        let merged = c
            .compose_one(ho.chain[i - 1], ho.chain[i])
            .expect("chain legs compose");
        let mut c2 = ho.chain.clone();
        c2.remove(i);
        c2[i - 1] = merged;
        HocolimObject {
            base: ho.base,
            x: ho.x,
            chain: c2,
        }
    }
}

fn face_morphism(
    f: &TwoFunctorToCat,
    hm: &HocolimMorphism,
    src: &HocolimObject,
    i: usize,
) -> HocolimMorphism {
    let c = &f.source;
    let n = hm.alphas.len();
    if i == 0 {
        // first component Fg_1(φ) ∘ (Fα_1)_x
        let alpha1 = hm.alphas[0];
        let g1 = c.two_tgt(alpha1);
        let f1 = src.chain[0];
        let new_base = c.one_src(f1);
        let phi = f
            .fc(new_base)
            .compose(f.ff(g1).apply_mor(hm.phi), f.fa(alpha1).component(src.x))
            .expect("face image composes");
        HocolimMorphism {
            base: new_base,
            phi,
            alphas: hm.alphas[1..].to_vec(),
        }
    } else if i == n {
        HocolimMorphism {
            base: hm.base,
            phi: hm.phi,
            alphas: hm.alphas[..n - 1].to_vec(),
        }
    } else {
        let merged = c
            .horizontal_paste(hm.alphas[i], hm.alphas[i - 1])
            .expect("2-cells paste");
        let mut a2 = hm.alphas.clone();
        a2.remove(i);
        a2[i - 1] = merged;
        HocolimMorphism {
            base: hm.base,
            phi: hm.phi,
            alphas: a2,
        }
    }
}

/// The face functor `d_i: (hocolim F)_n -> (hocolim F)_{n-1}`. The `d_0`
/// case is the only one touching the fibers.
pub fn hocolim_face(
    f: &TwoFunctorToCat,
    levels: &[HocolimLevel],
    n: usize,
    i: usize,
) -> FiniteFunctor {
    let src = &levels[n];
    let tgt = &levels[n - 1];
    let obj_map = src
        .objects
        .iter()
        .map(|ho| tgt.object_of(&face_object(f, ho, i)))
        .collect();
    let mor_map = src
        .morphisms
        .iter()
        .enumerate()
        .map(|(ix, hm)| {
            let src_obj = &src.objects[src.cat.src(MorId(ix as u32)).0 as usize];
            tgt.morphism_of(&face_morphism(f, hm, src_obj, i))
        })
        .collect();
    FiniteFunctor::new(format!("d_{i}@{}", src.cat.name), obj_map, mor_map)
}

/// The degeneracy functor `s_i: (hocolim F)_n -> (hocolim F)_{n+1}`,
/// inserting an identity 1-cell after chain position `i`.
pub fn hocolim_degeneracy(
    f: &TwoFunctorToCat,
    levels: &[HocolimLevel],
    n: usize,
    i: usize,
) -> FiniteFunctor {
    let c = &f.source;
    let src = &levels[n];
    let tgt = &levels[n + 1];
    let vertex = |ho: &HocolimObject| -> TObjId {
        if i == 0 {
            ho.base
        } else {
            c.one_src(ho.chain[i - 1])
        }
    };
    let obj_map = src
        .objects
        .iter()
        .map(|ho| {
            let mut c2 = ho.chain.clone();
            c2.insert(i, c.one_identity_of(vertex(ho)));
            tgt.object_of(&HocolimObject {
                base: ho.base,
                x: ho.x,
                chain: c2,
            })
        })
        .collect();
    let mor_map = src
        .morphisms
        .iter()
        .enumerate()
        .map(|(ix, hm)| {
            let src_obj = &src.objects[src.cat.src(MorId(ix as u32)).0 as usize];
            let mut a2 = hm.alphas.clone();
            a2.insert(i, c.two_identity_of(c.one_identity_of(vertex(src_obj))));
            tgt.morphism_of(&HocolimMorphism {
                base: hm.base,
                phi: hm.phi,
                alphas: a2,
            })
        })
        .collect();
    FiniteFunctor::new(format!("s_{i}@{}", src.cat.name), obj_map, mor_map)
}

/// All levels and all operator functors of the simplicial category.
pub struct HocolimData {
    pub levels: Vec<HocolimLevel>,
    /// `faces[n][i]`: level `n` to `n-1` (`faces[0]` is empty).
    pub faces: Vec<Vec<FiniteFunctor>>,
    /// `degeneracies[n][i]`: level `n` to `n+1` (empty at the truncation).
    pub degeneracies: Vec<Vec<FiniteFunctor>>,
}

pub fn hocolim_data(f: &TwoFunctorToCat, dim: usize) -> HocolimData {
    let levels: Vec<HocolimLevel> = (0..=dim).map(|n| hocolim_level(f, n)).collect();
    let faces = (0..=dim)
        .map(|n| {
            if n == 0 {
                vec![]
            } else {
                (0..=n).map(|i| hocolim_face(f, &levels, n, i)).collect()
            }
        })
        .collect();
    let degeneracies = (0..=dim)
        .map(|n| {
            if n == dim {
                vec![]
            } else {
                (0..=n)
                    .map(|i| hocolim_degeneracy(f, &levels, n, i))
                    .collect()
            }
        })
        .collect();
    HocolimData {
        levels,
        faces,
        degeneracies,
    }
}

impl HocolimData {
    /// Validate every level category, every operator as a functor, and the
    /// simplicial identities at the level of functors (before nerves).
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new("hocolim simplicial category");
        let dim = self.levels.len() - 1;
        for lvl in &self.levels {
            rep.absorb(lvl.cat.validate());
        }
        for n in 0..=dim {
            for (i, face) in self.faces[n].iter().enumerate() {
                let mut sub = face.validate(&self.levels[n].cat, &self.levels[n - 1].cat);
                sub.subject = format!("hocolim d_{i} at level {n}");
                rep.absorb(sub);
            }
            for (i, degen) in self.degeneracies[n].iter().enumerate() {
                let mut sub = degen.validate(&self.levels[n].cat, &self.levels[n + 1].cat);
                sub.subject = format!("hocolim s_{i} at level {n}");
                rep.absorb(sub);
            }
        }
        let eq = |a: &FiniteFunctor, b: &FiniteFunctor| a.same_maps(b);
        for n in 2..=dim {
            for j in 0..=n {
                for i in 0..j {
                    rep.tick();
                    let lhs = self.faces[n - 1][i].after(&self.faces[n][j]);
                    let rhs = self.faces[n - 1][j - 1].after(&self.faces[n][i]);
                    if !eq(&lhs, &rhs) {
                        rep.push(
                            ViolationKind::SimplicialIdentity,
                            format!(
                                "hocolim functors: d_{i} d_{j} ≠ d_{} d_{i} at level {n}",
                                j - 1
                            ),
                        );
                    }
                }
            }
        }
        for n in 0..dim {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    rep.tick();
                    let lhs = self.faces[n + 1][i].after(&self.degeneracies[n][j]);
                    let ok = if i == j || i == j + 1 {
                        lhs.same_maps(&FiniteFunctor::identity(&self.levels[n].cat))
                    } else if i < j {
                        eq(
                            &lhs,
                            &self.degeneracies[n - 1][j - 1].after(&self.faces[n][i]),
                        )
                    } else {
                        eq(
                            &lhs,
                            &self.degeneracies[n - 1][j].after(&self.faces[n][i - 1]),
                        )
                    };
                    if !ok {
                        rep.push(
                            ViolationKind::SimplicialIdentity,
                            format!("hocolim functors: d_{i} s_{j} identity fails at level {n}"),
                        );
                    }
                }
                if n + 2 <= dim {
                    for i in 0..=j {
                        rep.tick();
                        let lhs = self.degeneracies[n + 1][i].after(&self.degeneracies[n][j]);
                        let rhs = self.degeneracies[n + 1][j + 1].after(&self.degeneracies[n][i]);
                        if !eq(&lhs, &rhs) {
                            rep.push(
                                ViolationKind::SimplicialIdentity,
                                format!(
                                    "hocolim functors: s_{i} s_{j} identity fails at level {n}"
                                ),
                            );
                        }
                    }
                } else {
                    rep.skip();
                }
            }
        }
        rep
    }
}

/// `Y_{m,n} = N_m((hocolim F)_n)`: horizontal operators are nerve operators
/// of the level categories, vertical ones are induced by the face and
/// degeneracy functors.
pub fn hocolim_bisimplicial(
    f: &TwoFunctorToCat,
    dim: usize,
) -> Result<(TruncatedBisimplicialSet, HocolimData), SizeError> {
    let data = hocolim_data(f, dim);
    let mut x = TruncatedBisimplicialSet::new(format!("Nhocolim({})", f.name), dim);
    let mut guard = Guard::new(x.name.clone());

    let nerves: Vec<TruncatedSimplicialSet> = data
        .levels
        .iter()
        .map(|lvl| nerve_category(&lvl.cat, dim))
        .collect();
    for n in 0..=dim {
        for m in 0..=dim {
            guard.take(nerves[n].level_size(m))?;
            let lvl = x.level_mut(m, n);
            lvl.keys = nerves[n].levels[m].keys.clone();
            lvl.index = nerves[n].levels[m].index.clone();
            lvl.labels = nerves[n].levels[m].labels.clone();
            lvl.h_faces = nerves[n].levels[m].faces.clone();
            lvl.h_degens = nerves[n].levels[m].degens.clone();
        }
    }

    let apply = |func: &FiniteFunctor,
                 m: usize,
                 key: &crate::simplicial::Key,
                 target: &TruncatedSimplicialSet|
     -> usize {
        let mapped: crate::simplicial::Key = if m == 0 {
            vec![func.apply_obj(ObjId(key[0])).0]
        } else {
            key.iter().map(|&mm| func.apply_mor(MorId(mm)).0).collect()
        };
        target.levels[m]
            .id_of(&mapped)
            .expect("functor image interned")
    };
    for n in 0..=dim {
        for m in 0..=dim {
            let v_faces: Vec<Vec<usize>> = if n == 0 {
                vec![]
            } else {
                (0..=n)
                    .map(|i| {
                        (0..x.level(m, n).len())
                            .map(|s| {
                                apply(&data.faces[n][i], m, &x.level(m, n).keys[s], &nerves[n - 1])
                            })
                            .collect()
                    })
                    .collect()
            };
            let v_degens: Vec<Vec<usize>> = if n == dim {
                vec![]
            } else {
                (0..=n)
                    .map(|i| {
                        (0..x.level(m, n).len())
                            .map(|s| {
                                apply(
                                    &data.degeneracies[n][i],
                                    m,
                                    &x.level(m, n).keys[s],
                                    &nerves[n + 1],
                                )
                            })
                            .collect()
                    })
                    .collect()
            };
            let lvl = x.level_mut(m, n);
            lvl.v_faces = v_faces;
            lvl.v_degens = v_degens;
        }
    }
    Ok((x, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simplicial::diagonal;

    #[test]
    fn level_zero_is_disjoint_union_of_fibers() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let lvl = hocolim_level(&f, 0);
        let expected: usize = f.source.objects().map(|c| f.fc(c).object_count()).sum();
        assert_eq!(lvl.cat.object_count(), expected);
        assert!(lvl.cat.validate().is_empty());
    }

    #[test]
    fn level_one_contains_chain_objects() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let lvl = hocolim_level(&f, 1);
        let c = &f.source;
        let cp = c.find_object("c'").unwrap();
        let fcp = f.fc(cp);
        let xp = fcp.find_object("x'").unwrap();
        let f1 = c.find_one_cell("f").unwrap();
        let g1 = c.find_one_cell("g").unwrap();
        for leg in [f1, g1] {
            let ho = HocolimObject {
                base: cp,
                x: xp,
                chain: vec![leg],
            };
            assert!(lvl.obj_ix.contains_key(&ho));
        }
        assert!(lvl.cat.validate().is_empty());
    }

    #[test]
    fn constant_point_level_counts_chains() {
        let f = fixtures::build("parallel_pair_constant").unwrap();
        let lvl = hocolim_level(&f, 1);
        // one object per 1-cell of the base: 1[a], 1[b], u, v
        assert_eq!(lvl.cat.object_count(), 4);
    }

    #[test]
    fn face_zero_on_identities_is_identity() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let levels: Vec<HocolimLevel> = (0..=1).map(|n| hocolim_level(&f, n)).collect();
        let d0 = hocolim_face(&f, &levels, 1, 0);
        let c = &f.source;
        let cp = c.find_object("c'").unwrap();
        let f1 = c.find_one_cell("f").unwrap();
        let xp = f.fc(cp).find_object("x'").unwrap();
        let src_obj = levels[1].object_of(&HocolimObject {
            base: cp,
            x: xp,
            chain: vec![f1],
        });
        let image = d0.apply_mor(levels[1].cat.identity_of(src_obj));
        assert!(levels[0].cat.is_identity(image));
    }

    #[test]
    fn face_zero_produces_the_alpha_component() {
        // (1[x']; alpha) ↦ (Fα)_{x'}, the morphism Falpha of the fiber at c
        let f = fixtures::build("walking_two_cell").unwrap();
        let levels: Vec<HocolimLevel> = (0..=1).map(|n| hocolim_level(&f, n)).collect();
        let d0 = hocolim_face(&f, &levels, 1, 0);
        let c = &f.source;
        let cp = c.find_object("c'").unwrap();
        let cc = c.find_object("c").unwrap();
        let fcp = f.fc(cp);
        let xp = fcp.find_object("x'").unwrap();
        let alpha = c.find_two_cell("alpha").unwrap();
        let src_mor = levels[1].morphism_of(&HocolimMorphism {
            base: cp,
            phi: fcp.identity_of(xp),
            alphas: vec![alpha],
        });
        let image = d0.apply_mor(src_mor);
        let hm = &levels[0].morphisms[image.0 as usize];
        assert!(hm.alphas.is_empty());
        assert_eq!(f.fc(cc).morphism_label(hm.phi), "Falpha");
    }

    #[test]
    fn discrete_face_zero_reindexes_only() {
        let f = fixtures::build("poset_discrete").unwrap();
        let levels: Vec<HocolimLevel> = (0..=1).map(|n| hocolim_level(&f, n)).collect();
        let d0 = hocolim_face(&f, &levels, 1, 0);
        for m in levels[1].cat.morphisms() {
            let image = d0.apply_mor(m);
            assert_eq!(
                levels[0].cat.is_identity(image),
                levels[1].cat.is_identity(m)
            );
        }
    }

    #[test]
    fn functor_level_validation_passes() {
        for name in ["point", "walking_two_cell", "poset_discrete"] {
            let f = fixtures::build(name).unwrap();
            let data = hocolim_data(&f, 3);
            let rep = data.validate();
            assert!(rep.is_empty(), "{name}: {rep}");
        }
    }

    #[test]
    fn bisimplicial_validates_and_point_is_point() {
        let f = fixtures::build("point").unwrap();
        let (x, _) = hocolim_bisimplicial(&f, 3).unwrap();
        assert!(x.validate().is_empty());
        for m in 0..=3 {
            for n in 0..=3 {
                assert_eq!(x.level(m, n).len(), 1);
            }
        }
        let d = diagonal(&x);
        assert_eq!(d.nondegenerate_count(0), 1);
        assert_eq!(d.nondegenerate_count(1), 0);
    }

    #[test]
    fn walking_two_cell_bisimplicial_validates() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let (x, data) = hocolim_bisimplicial(&f, 3).unwrap();
        let drep = data.validate();
        assert!(drep.is_empty(), "{drep}");
        let rep = x.validate();
        assert!(rep.is_empty(), "{rep}");
        assert!(diagonal(&x).validate().is_empty());
    }
}
