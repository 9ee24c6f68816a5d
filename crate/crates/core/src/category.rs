//! Finite categories, functors, and natural transformations as explicit
//! validated tables.
//!
//! Objects and morphisms are opaque integer IDs with string labels attached
//! for reporting. Equality is always by ID. Composition is stored densely as
//! a map keyed by ID pairs; a missing key means the pair is not composable,
//! never that the entry was elided.

use crate::report::{ValidationReport, ViolationKind};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub u32);

#[derive(Clone, Debug)]
struct MorInfo {
    src: ObjId,
    tgt: ObjId,
    label: String,
}

/// A finite category given by tables.
///
/// `compose` is keyed `(g, f) -> g∘f`, defined exactly when
/// `target(f) = source(g)`.
#[derive(Clone, Debug, Default)]
pub struct FiniteCategory {
    pub name: String,
    objects: Vec<String>,
    morphisms: Vec<MorInfo>,
    identity: Vec<Option<MorId>>,
    compose: BTreeMap<(MorId, MorId), MorId>,
}

impl FiniteCategory {
    pub fn new(name: impl Into<String>) -> Self {
        FiniteCategory {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> ObjId {
        self.objects.push(label.into());
        self.identity.push(None);
        ObjId(self.objects.len() as u32 - 1)
    }

    pub fn add_morphism(&mut self, src: ObjId, tgt: ObjId, label: impl Into<String>) -> MorId {
        self.morphisms.push(MorInfo {
            src,
            tgt,
            label: label.into(),
        });
        MorId(self.morphisms.len() as u32 - 1)
    }

    /// Add an object together with its identity morphism.
    pub fn add_object_with_identity(&mut self, label: &str) -> ObjId {
        let o = self.add_object(label);
        let id = self.add_morphism(o, o, format!("1[{label}]"));
        self.set_identity(o, id);
        o
    }

    pub fn set_identity(&mut self, o: ObjId, m: MorId) {
        self.identity[o.0 as usize] = Some(m);
    }

    pub fn set_compose(&mut self, g: MorId, f: MorId, gf: MorId) {
        self.compose.insert((g, f), gf);
    }

    /// Fill in every composite forced by the unit laws.
    pub fn fill_unit_composites(&mut self) {
        for m in self.morphisms() {
            if let Some(i) = self.identity[self.src(m).0 as usize] {
                self.compose.entry((m, i)).or_insert(m);
            }
            if let Some(i) = self.identity[self.tgt(m).0 as usize] {
                self.compose.entry((i, m)).or_insert(m);
            }
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m.0 as usize].src
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.morphisms[m.0 as usize].tgt
    }

    pub fn object_label(&self, o: ObjId) -> &str {
        &self.objects[o.0 as usize]
    }

    pub fn morphism_label(&self, m: MorId) -> &str {
        &self.morphisms[m.0 as usize].label
    }

    pub fn identity_of(&self, o: ObjId) -> MorId {
        self.identity[o.0 as usize].expect("identity assigned for every object")
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        let s = self.src(m);
        self.identity[s.0 as usize] == Some(m)
    }

    /// `g∘f`, if the pair is composable and the table has the entry.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn compose_expect(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "{}: missing composite {} ∘ {}",
                self.name,
                self.morphism_label(g),
                self.morphism_label(f)
            )
        })
    }

    /// Compose a chain listed in application order: `chain[0]` first.
    pub fn compose_chain(&self, chain: &[MorId]) -> Option<MorId> {
        let mut it = chain.iter();
        let mut acc = *it.next()?;
        for &m in it {
            acc = self.compose(m, acc)?;
        }
        Some(acc)
    }

    pub fn find_object(&self, label: &str) -> Option<ObjId> {
        self.objects
            .iter()
            .position(|l| l == label)
            .map(|i| ObjId(i as u32))
    }

    pub fn find_morphism(&self, label: &str) -> Option<MorId> {
        self.morphisms
            .iter()
            .position(|m| m.label == label)
            .map(|i| MorId(i as u32))
    }

    fn obj_ok(&self, o: ObjId) -> bool {
        (o.0 as usize) < self.objects.len()
    }

    fn mor_ok(&self, m: MorId) -> bool {
        (m.0 as usize) < self.morphisms.len()
    }

    /// Exhaustive check of the category axioms.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("category {}", self.name));

        for m in self.morphisms() {
            rep.tick();
            let info = &self.morphisms[m.0 as usize];
            if !self.obj_ok(info.src) || !self.obj_ok(info.tgt) {
                rep.push(
                    ViolationKind::Structural,
                    format!("morphism {} has a dangling endpoint ID", info.label),
                );
            }
        }
        for o in self.objects() {
            rep.tick();
            match self.identity[o.0 as usize] {
                None => rep.push(
                    ViolationKind::Structural,
                    format!("object {} has no identity assigned", self.object_label(o)),
                ),
                Some(i) if !self.mor_ok(i) => rep.push(
                    ViolationKind::Structural,
                    format!("identity of {} is a dangling ID", self.object_label(o)),
                ),
                Some(i) => {
                    if self.src(i) != o || self.tgt(i) != o {
                        rep.push(
                            ViolationKind::Structural,
                            format!(
                                "identity of {} is not an endomorphism of it",
                                self.object_label(o)
                            ),
                        );
                    }
                }
            }
        }
        if !rep.is_empty() {
            return rep; // axiom checks below assume well-formed tables
        }

        for (&(g, f), &gf) in &self.compose {
            rep.tick();
            if !self.mor_ok(g) || !self.mor_ok(f) || !self.mor_ok(gf) {
                rep.push(
                    ViolationKind::Structural,
                    "compose entry with dangling ID".to_string(),
                );
                continue;
            }
            if self.tgt(f) != self.src(g) {
                rep.push(
                    ViolationKind::Structural,
                    format!(
                        "compose table defined on non-composable pair ({}, {})",
                        self.morphism_label(g),
                        self.morphism_label(f)
                    ),
                );
            }
            if self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g) {
                rep.push(
                    ViolationKind::Boundary,
                    format!(
                        "{} ∘ {} = {} has wrong endpoints",
                        self.morphism_label(g),
                        self.morphism_label(f),
                        self.morphism_label(gf)
                    ),
                );
            }
        }

        // totality on composable pairs
        for g in self.morphisms() {
            for f in self.morphisms() {
                if self.tgt(f) == self.src(g) {
                    rep.tick();
                    if self.compose(g, f).is_none() {
                        rep.push(
                            ViolationKind::Structural,
                            format!(
                                "missing composite {} ∘ {}",
                                self.morphism_label(g),
                                self.morphism_label(f)
                            ),
                        );
                    }
                }
            }
        }
        if !rep.is_empty() {
            return rep;
        }

        // unit laws
        for m in self.morphisms() {
            rep.tick();
            let i_src = self.identity_of(self.src(m));
            let i_tgt = self.identity_of(self.tgt(m));
            if self.compose(m, i_src) != Some(m) {
                rep.push(
                    ViolationKind::Unitality,
                    format!("{} ∘ id ≠ {0}", self.morphism_label(m)),
                );
            }
            if self.compose(i_tgt, m) != Some(m) {
                rep.push(
                    ViolationKind::Unitality,
                    format!("id ∘ {} ≠ {0}", self.morphism_label(m)),
                );
            }
        }

        // associativity over all composable triples
        for h in self.morphisms() {
            for g in self.morphisms() {
                if self.src(h) != self.tgt(g) {
                    continue;
                }
                for f in self.morphisms() {
                    if self.src(g) != self.tgt(f) {
                        continue;
                    }
                    rep.tick();
                    let left = self.compose(self.compose_expect(h, g), f);
                    let right = self.compose(h, self.compose_expect(g, f));
                    if left != right || left.is_none() {
                        rep.push(
                            ViolationKind::Associativity,
                            format!(
                                "({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {})",
                                self.morphism_label(h),
                                self.morphism_label(g),
                                self.morphism_label(f),
                                self.morphism_label(h),
                                self.morphism_label(g),
                                self.morphism_label(f)
                            ),
                        );
                    }
                }
            }
        }
        rep
    }
}

/// A functor between finite categories, stored as object and morphism maps
/// indexed by the source category's IDs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteFunctor {
    pub name: String,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl FiniteFunctor {
    pub fn new(name: impl Into<String>, obj_map: Vec<ObjId>, mor_map: Vec<MorId>) -> Self {
        FiniteFunctor {
            name: name.into(),
            obj_map,
            mor_map,
        }
    }

    pub fn identity(cat: &FiniteCategory) -> Self {
        FiniteFunctor {
            name: format!("1[{}]", cat.name),
            obj_map: cat.objects().collect(),
            mor_map: cat.morphisms().collect(),
        }
    }

    pub fn apply_obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.0 as usize]
    }

    pub fn apply_mor(&self, m: MorId) -> MorId {
        self.mor_map[m.0 as usize]
    }

    /// Composite `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &FiniteFunctor) -> FiniteFunctor {
        FiniteFunctor {
            name: format!("{} ∘ {}", self.name, other.name),
            obj_map: other.obj_map.iter().map(|&o| self.apply_obj(o)).collect(),
            mor_map: other.mor_map.iter().map(|&m| self.apply_mor(m)).collect(),
        }
    }

    /// Pointwise equality of the underlying maps, ignoring names.
    pub fn same_maps(&self, other: &FiniteFunctor) -> bool {
        self.obj_map == other.obj_map && self.mor_map == other.mor_map
    }

    pub fn validate(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("functor {}", self.name));
        if self.obj_map.len() != src.object_count() || self.mor_map.len() != src.morphism_count() {
            rep.push(
                ViolationKind::Structural,
                format!(
                    "functor {} does not cover the source category ({} objects / {} morphisms mapped)",
                    self.name,
                    self.obj_map.len(),
                    self.mor_map.len()
                ),
            );
            return rep;
        }
        for m in src.morphisms() {
            rep.tick();
            let fm = self.apply_mor(m);
            if tgt.src(fm) != self.apply_obj(src.src(m))
                || tgt.tgt(fm) != self.apply_obj(src.tgt(m))
            {
                rep.push(
                    ViolationKind::Functoriality,
                    format!("image of {} has wrong endpoints", src.morphism_label(m)),
                );
            }
        }
        for o in src.objects() {
            rep.tick();
            if self.apply_mor(src.identity_of(o)) != tgt.identity_of(self.apply_obj(o)) {
                rep.push(
                    ViolationKind::Functoriality,
                    format!("identity of {} not preserved", src.object_label(o)),
                );
            }
        }
        for g in src.morphisms() {
            for f in src.morphisms() {
                if src.tgt(f) != src.src(g) {
                    continue;
                }
                rep.tick();
                let lhs = self.apply_mor(src.compose_expect(g, f));
                let rhs = tgt.compose(self.apply_mor(g), self.apply_mor(f));
                if Some(lhs) != rhs {
                    rep.push(
                        ViolationKind::Functoriality,
                        format!(
                            "F({} ∘ {}) ≠ F{} ∘ F{}",
                            src.morphism_label(g),
                            src.morphism_label(f),
                            src.morphism_label(g),
                            src.morphism_label(f)
                        ),
                    );
                }
            }
        }
        rep
    }
}

/// A natural transformation between two functors `S, T: A -> B`, stored as
/// one component morphism of `B` per object of `A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteNatTrans {
    pub name: String,
    components: Vec<MorId>,
}

impl FiniteNatTrans {
    pub fn new(name: impl Into<String>, components: Vec<MorId>) -> Self {
        FiniteNatTrans {
            name: name.into(),
            components,
        }
    }

    pub fn identity(of: &FiniteFunctor, src: &FiniteCategory, tgt: &FiniteCategory) -> Self {
        FiniteNatTrans {
            name: format!("1[{}]", of.name),
            components: src
                .objects()
                .map(|o| tgt.identity_of(of.apply_obj(o)))
                .collect(),
        }
    }

    pub fn component(&self, o: ObjId) -> MorId {
        self.components[o.0 as usize]
    }

    /// Vertical composite `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &FiniteNatTrans, tgt: &FiniteCategory) -> Option<FiniteNatTrans> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(&s, &o)| tgt.compose(s, o))
            .collect::<Option<Vec<_>>>()?;
        Some(FiniteNatTrans {
            name: format!("{} ∘ {}", self.name, other.name),
            components,
        })
    }

    pub fn same_components(&self, other: &FiniteNatTrans) -> bool {
        self.components == other.components
    }

    pub fn validate(
        &self,
        from: &FiniteFunctor,
        to: &FiniteFunctor,
        src: &FiniteCategory,
        tgt: &FiniteCategory,
    ) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("transformation {}", self.name));
        if self.components.len() != src.object_count() {
            rep.push(
                ViolationKind::Structural,
                format!(
                    "component map of {} misses objects of {}",
                    self.name, src.name
                ),
            );
            return rep;
        }
        for o in src.objects() {
            rep.tick();
            let c = self.component(o);
            if tgt.src(c) != from.apply_obj(o) || tgt.tgt(c) != to.apply_obj(o) {
                rep.push(
                    ViolationKind::Structural,
                    format!("component at {} has wrong endpoints", src.object_label(o)),
                );
            }
        }
        if !rep.is_empty() {
            return rep;
        }
        for m in src.morphisms() {
            rep.tick();
            let lhs = tgt.compose(self.component(src.tgt(m)), from.apply_mor(m));
            let rhs = tgt.compose(to.apply_mor(m), self.component(src.src(m)));
            if lhs != rhs || lhs.is_none() {
                rep.push(
                    ViolationKind::Naturality,
                    format!("naturality square at {} fails", src.morphism_label(m)),
                );
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walking_arrow() -> (FiniteCategory, ObjId, ObjId, MorId) {
        let mut c = FiniteCategory::new("arrow");
        let a = c.add_object_with_identity("a");
        let b = c.add_object_with_identity("b");
        let u = c.add_morphism(a, b, "u");
        c.fill_unit_composites();
        (c, a, b, u)
    }

    #[test]
    fn walking_arrow_validates() {
        let (c, ..) = walking_arrow();
        let rep = c.validate();
        assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut c = FiniteCategory::new("bad");
        let a = c.add_object_with_identity("a");
        let b = c.add_object_with_identity("b");
        let x = c.add_object_with_identity("x");
        let u = c.add_morphism(a, b, "u");
        let v = c.add_morphism(b, x, "v");
        c.add_morphism(a, x, "vu");
        c.fill_unit_composites();
        // deliberately omit v ∘ u
        let rep = c.validate();
        assert_eq!(rep.count_of(ViolationKind::Structural), 1, "{rep}");
        let _ = (u, v);
    }

    #[test]
    fn retargeted_composite_is_one_boundary_error() {
        let mut c = FiniteCategory::new("bad");
        let a = c.add_object_with_identity("a");
        let b = c.add_object_with_identity("b");
        let x = c.add_object_with_identity("x");
        let u = c.add_morphism(a, b, "u");
        let v = c.add_morphism(b, x, "v");
        let w = c.add_morphism(a, x, "vu");
        c.fill_unit_composites();
        c.set_compose(v, u, w);
        assert!(c.validate().is_empty());
        // retarget the composite to a morphism with the wrong endpoints
        c.set_compose(v, u, c.identity_of(b));
        let rep = c.validate();
        assert_eq!(rep.count_of(ViolationKind::Boundary), 1, "{rep}");
    }

    #[test]
    fn broken_associativity_is_detected() {
        // two parallel loops with a composition table that forgets order
        let mut c = FiniteCategory::new("loops");
        let a = c.add_object_with_identity("a");
        let s = c.add_morphism(a, a, "s");
        let t = c.add_morphism(a, a, "t");
        c.fill_unit_composites();
        // s∘s = t, everything else collapses to s: (s∘s)∘s = t∘s = s but
        // s∘(s∘s) = s∘t = t
        c.set_compose(s, s, t);
        c.set_compose(s, t, t);
        c.set_compose(t, s, s);
        c.set_compose(t, t, s);
        let rep = c.validate();
        assert!(rep.count_of(ViolationKind::Associativity) > 0, "{rep}");
    }

    #[test]
    fn identity_functor_validates() {
        let (c, ..) = walking_arrow();
        let f = FiniteFunctor::identity(&c);
        assert!(f.validate(&c, &c).is_empty());
    }

    #[test]
    fn nat_trans_naturality_checked() {
        // two functors arrow -> arrow: identity and constant at b
        let (c, _a, b, u) = walking_arrow();
        let id = FiniteFunctor::identity(&c);
        let konst = FiniteFunctor::new(
            "const_b",
            vec![b, b],
            c.morphisms().map(|_| c.identity_of(b)).collect(),
        );
        assert!(konst.validate(&c, &c).is_empty());
        let eta = FiniteNatTrans::new("eta", vec![u, c.identity_of(b)]);
        assert!(eta.validate(&id, &konst, &c, &c).is_empty());
        // breaking a component breaks naturality or typing
        let bad = FiniteNatTrans::new("bad", vec![c.identity_of(b), c.identity_of(b)]);
        assert!(!bad.validate(&id, &konst, &c, &c).is_empty());
    }
}
