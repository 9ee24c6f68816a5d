//! Finite strict 2-categories and strict 2-functors `C^op -> Cat`, as
//! explicit validated tables.
//!
//! Conventions, fixed here once and reused by every construction downstream:
//!
//! * `vertical_compose(later, earlier)` is the vertical composite `β∘α` of
//!   2-cells `α: f ⇒ g` and `β: g ⇒ h`.
//! * `horizontal_paste(left, right)` is the horizontal pasting `α|β` where
//!   `α` sits over `a -> b` and `β` over `b -> c`; its underlying 1-cells
//!   compose as `b->c` after `a->b`.
//! * Whiskering is horizontal pasting with an identity 2-cell.
//!
//! A 2-functor `F` is contravariant on 1-cells and covariant on 2-cells:
//! `f: c -> c'` goes to `Ff: Fc' -> Fc`, and `α: f ⇒ g` goes to a natural
//! transformation `Fα: Ff ⇒ Fg` with one component per object of `Fc'`.

use crate::category::{FiniteCategory, FiniteFunctor, FiniteNatTrans, MorId, ObjId};
use crate::report::{ValidationReport, ViolationKind};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoId(pub u32);

#[derive(Clone, Debug)]
struct OneInfo {
    src: TObjId,
    tgt: TObjId,
    label: String,
}

#[derive(Clone, Debug)]
struct TwoInfo {
    src: OneId,
    tgt: OneId,
    label: String,
}

#[derive(Clone, Debug, Default)]
pub struct FiniteTwoCategory {
    pub name: String,
    objects: Vec<String>,
    one_cells: Vec<OneInfo>,
    two_cells: Vec<TwoInfo>,
    one_id: Vec<Option<OneId>>,
    two_id: Vec<Option<TwoId>>,
    /// `(β, α) -> β∘α` for 2-cells with `tgt α = src β`.
    vcomp: BTreeMap<(TwoId, TwoId), TwoId>,
    /// `(g, f) -> g∘f` for 1-cells with `tgt f = src g`.
    hcomp_one: BTreeMap<(OneId, OneId), OneId>,
    /// `(α, β) -> α|β` for horizontally adjacent 2-cells, `α` on the left.
    hcomp_two: BTreeMap<(TwoId, TwoId), TwoId>,
}

impl FiniteTwoCategory {
    pub fn new(name: impl Into<String>) -> Self {
        FiniteTwoCategory {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> TObjId {
        self.objects.push(label.into());
        self.one_id.push(None);
        TObjId(self.objects.len() as u32 - 1)
    }

    pub fn add_one_cell(&mut self, src: TObjId, tgt: TObjId, label: impl Into<String>) -> OneId {
        self.one_cells.push(OneInfo {
            src,
            tgt,
            label: label.into(),
        });
        self.two_id.push(None);
        OneId(self.one_cells.len() as u32 - 1)
    }

    pub fn add_two_cell(&mut self, src: OneId, tgt: OneId, label: impl Into<String>) -> TwoId {
        self.two_cells.push(TwoInfo {
            src,
            tgt,
            label: label.into(),
        });
        TwoId(self.two_cells.len() as u32 - 1)
    }

    pub fn set_one_identity(&mut self, o: TObjId, f: OneId) {
        self.one_id[o.0 as usize] = Some(f);
    }

    pub fn set_two_identity(&mut self, f: OneId, a: TwoId) {
        self.two_id[f.0 as usize] = Some(a);
    }

    pub fn set_vcomp(&mut self, later: TwoId, earlier: TwoId, result: TwoId) {
        self.vcomp.insert((later, earlier), result);
    }

    pub fn set_hcomp_one(&mut self, g: OneId, f: OneId, result: OneId) {
        self.hcomp_one.insert((g, f), result);
    }

    pub fn set_hcomp_two(&mut self, left: TwoId, right: TwoId, result: TwoId) {
        self.hcomp_two.insert((left, right), result);
    }

    /// Create identity 2-cells for every 1-cell that lacks one, and fill all
    /// table entries forced by strict unitality and by functoriality of
    /// horizontal composition on identity 2-cells.
    pub fn fill_forced_entries(&mut self) {
        let ones: Vec<OneId> = self.one_cells().collect();
        for &f in &ones {
            if self.two_id[f.0 as usize].is_none() {
                let label = format!("1[{}]", self.one_label(f));
                let a = self.add_two_cell(f, f, label);
                self.two_id[f.0 as usize] = Some(a);
            }
        }
        // vertical unit laws
        let twos: Vec<TwoId> = self.two_cells().collect();
        for &a in &twos {
            let src_id = self.two_id[self.two_src(a).0 as usize];
            let tgt_id = self.two_id[self.two_tgt(a).0 as usize];
            if let Some(i) = src_id {
                self.vcomp.entry((a, i)).or_insert(a);
            }
            if let Some(i) = tgt_id {
                self.vcomp.entry((i, a)).or_insert(a);
            }
        }
        // horizontal unit laws on 1-cells
        for &f in &ones {
            let src_id = self.one_id[self.one_src(f).0 as usize];
            let tgt_id = self.one_id[self.one_tgt(f).0 as usize];
            if let Some(i) = src_id {
                self.hcomp_one.entry((f, i)).or_insert(f);
            }
            if let Some(i) = tgt_id {
                self.hcomp_one.entry((i, f)).or_insert(f);
            }
        }
        // pasting of identity 2-cells is the identity 2-cell of the composite
        for &f in &ones {
            for &g in &ones {
                if self.one_tgt(f) != self.one_src(g) {
                    continue;
                }
                if let Some(&gf) = self.hcomp_one.get(&(g, f)) {
                    let (idf, idg, idgf) = (
                        self.two_identity_of(f),
                        self.two_identity_of(g),
                        self.two_identity_of(gf),
                    );
                    self.hcomp_two.entry((idf, idg)).or_insert(idgf);
                }
            }
        }
        // pasting with the identity 2-cell on a unit 1-cell is a no-op
        for &a in &twos {
            let (sa, ta) = (self.two_src(a), self.two_tgt(a));
            let left_unit = self.one_id[self.one_src(sa).0 as usize];
            let right_unit = self.one_id[self.one_tgt(ta).0 as usize];
            if let Some(u) = left_unit {
                let idu = self.two_identity_of(u);
                self.hcomp_two.entry((idu, a)).or_insert(a);
            }
            if let Some(u) = right_unit {
                let idu = self.two_identity_of(u);
                self.hcomp_two.entry((a, idu)).or_insert(a);
            }
        }
        // derive remaining pastings from whiskers via interchange:
        // α|β = (α|1_{g'}) ∘ (1_f|β)
        let all_twos: Vec<TwoId> = self.two_cells().collect();
        let mut progress = true;
        while progress {
            progress = false;
            for &a in &all_twos {
                for &b in &all_twos {
                    if self.one_tgt(self.two_src(a)) != self.one_src(self.two_src(b))
                        || self.hcomp_two.contains_key(&(a, b))
                    {
                        continue;
                    }
                    let idf = self.two_identity_of(self.two_src(a));
                    let idg2 = self.two_identity_of(self.two_tgt(b));
                    let (first, second) = match (
                        self.hcomp_two.get(&(idf, b)).copied(),
                        self.hcomp_two.get(&(a, idg2)).copied(),
                    ) {
                        (Some(x), Some(y)) => (x, y),
                        _ => continue,
                    };
                    if let Some(&r) = self.vcomp.get(&(second, first)) {
                        self.hcomp_two.insert((a, b), r);
                        progress = true;
                    }
                }
            }
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn one_cell_count(&self) -> usize {
        self.one_cells.len()
    }

    pub fn two_cell_count(&self) -> usize {
        self.two_cells.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = TObjId> {
        (0..self.objects.len() as u32).map(TObjId)
    }

    pub fn one_cells(&self) -> impl Iterator<Item = OneId> {
        (0..self.one_cells.len() as u32).map(OneId)
    }

    pub fn two_cells(&self) -> impl Iterator<Item = TwoId> {
        (0..self.two_cells.len() as u32).map(TwoId)
    }

    pub fn object_label(&self, o: TObjId) -> &str {
        &self.objects[o.0 as usize]
    }

    pub fn one_label(&self, f: OneId) -> &str {
        &self.one_cells[f.0 as usize].label
    }

    pub fn two_label(&self, a: TwoId) -> &str {
        &self.two_cells[a.0 as usize].label
    }

    pub fn one_src(&self, f: OneId) -> TObjId {
        self.one_cells[f.0 as usize].src
    }

    pub fn one_tgt(&self, f: OneId) -> TObjId {
        self.one_cells[f.0 as usize].tgt
    }

    pub fn two_src(&self, a: TwoId) -> OneId {
        self.two_cells[a.0 as usize].src
    }

    pub fn two_tgt(&self, a: TwoId) -> OneId {
        self.two_cells[a.0 as usize].tgt
    }

    pub fn one_identity_of(&self, o: TObjId) -> OneId {
        self.one_id[o.0 as usize].expect("identity 1-cell assigned")
    }

    pub fn two_identity_of(&self, f: OneId) -> TwoId {
        self.two_id[f.0 as usize].expect("identity 2-cell assigned")
    }

    pub fn is_identity_one(&self, f: OneId) -> bool {
        self.one_id[self.one_src(f).0 as usize] == Some(f)
    }

    pub fn is_identity_two(&self, a: TwoId) -> bool {
        self.two_id[self.two_src(a).0 as usize] == Some(a)
    }

    /// `g∘f` of 1-cells, `f` first.
    pub fn compose_one(&self, g: OneId, f: OneId) -> Option<OneId> {
        self.hcomp_one.get(&(g, f)).copied()
    }

    /// `β∘α` of 2-cells, `earlier` = α first.
    pub fn vertical_compose(&self, later: TwoId, earlier: TwoId) -> Option<TwoId> {
        self.vcomp.get(&(later, earlier)).copied()
    }

    /// `α|β`, with `left` = α over the first leg.
    pub fn horizontal_paste(&self, left: TwoId, right: TwoId) -> Option<TwoId> {
        self.hcomp_two.get(&(left, right)).copied()
    }

    pub fn find_object(&self, label: &str) -> Option<TObjId> {
        self.objects
            .iter()
            .position(|l| l == label)
            .map(|i| TObjId(i as u32))
    }

    pub fn find_one_cell(&self, label: &str) -> Option<OneId> {
        self.one_cells
            .iter()
            .position(|c| c.label == label)
            .map(|i| OneId(i as u32))
    }

    pub fn find_two_cell(&self, label: &str) -> Option<TwoId> {
        self.two_cells
            .iter()
            .position(|c| c.label == label)
            .map(|i| TwoId(i as u32))
    }

    /// The hom-category `hom(a, b)`: objects are the 1-cells `a -> b`,
    /// morphisms the 2-cells between them. Returned together with the maps
    /// back to global IDs.
    pub fn hom_category(&self, a: TObjId, b: TObjId) -> HomView {
        let mut cat = FiniteCategory::new(format!(
            "hom({}, {})",
            self.object_label(a),
            self.object_label(b)
        ));
        let mut one_of_obj = Vec::new();
        let mut obj_of_one = BTreeMap::new();
        for f in self.one_cells() {
            if self.one_src(f) == a && self.one_tgt(f) == b {
                let o = cat.add_object(self.one_label(f));
                one_of_obj.push(f);
                obj_of_one.insert(f, o);
            }
        }
        let mut two_of_mor = Vec::new();
        let mut mor_of_two = BTreeMap::new();
        for t in self.two_cells() {
            let (s, g) = (self.two_src(t), self.two_tgt(t));
            if let (Some(&so), Some(&to)) = (obj_of_one.get(&s), obj_of_one.get(&g)) {
                let m = cat.add_morphism(so, to, self.two_label(t));
                two_of_mor.push(t);
                mor_of_two.insert(t, m);
            }
        }
        for (&f, &o) in &obj_of_one {
            if let Some(i) = self.two_id[f.0 as usize] {
                cat.set_identity(o, mor_of_two[&i]);
            }
        }
        for (&(later, earlier), &result) in &self.vcomp {
            if let (Some(&lm), Some(&em), Some(&rm)) = (
                mor_of_two.get(&later),
                mor_of_two.get(&earlier),
                mor_of_two.get(&result),
            ) {
                cat.set_compose(lm, em, rm);
            }
        }
        HomView {
            cat,
            one_of_obj,
            two_of_mor,
            obj_of_one,
            mor_of_two,
        }
    }

    /// The underlying 1-category: same objects, the 1-cells as morphisms.
    pub fn underlying_category(&self) -> FiniteCategory {
        let mut cat = FiniteCategory::new(format!("{}₁", self.name));
        for o in self.objects() {
            cat.add_object(self.object_label(o));
        }
        for f in self.one_cells() {
            cat.add_morphism(
                ObjId(self.one_src(f).0),
                ObjId(self.one_tgt(f).0),
                self.one_label(f),
            );
        }
        for o in self.objects() {
            if let Some(i) = self.one_id[o.0 as usize] {
                cat.set_identity(ObjId(o.0), MorId(i.0));
            }
        }
        for (&(g, f), &gf) in &self.hcomp_one {
            cat.set_compose(MorId(g.0), MorId(f.0), MorId(gf.0));
        }
        cat
    }

    /// Exhaustive strictness check.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("2-category {}", self.name));

        // structural layer
        for f in self.one_cells() {
            rep.tick();
            let info = &self.one_cells[f.0 as usize];
            if info.src.0 as usize >= self.objects.len()
                || info.tgt.0 as usize >= self.objects.len()
            {
                rep.push(
                    ViolationKind::Structural,
                    format!("1-cell {} has a dangling endpoint", info.label),
                );
            }
        }
        for a in self.two_cells() {
            rep.tick();
            let info = &self.two_cells[a.0 as usize];
            if info.src.0 as usize >= self.one_cells.len()
                || info.tgt.0 as usize >= self.one_cells.len()
            {
                rep.push(
                    ViolationKind::Structural,
                    format!("2-cell {} has a dangling boundary", info.label),
                );
                continue;
            }
            let (s, t) = (info.src, info.tgt);
            if self.one_src(s) != self.one_src(t) || self.one_tgt(s) != self.one_tgt(t) {
                rep.push(
                    ViolationKind::Structural,
                    format!("2-cell {} is not between parallel 1-cells", info.label),
                );
            }
        }
        for o in self.objects() {
            rep.tick();
            match self.one_id[o.0 as usize] {
                Some(f) if self.one_src(f) == o && self.one_tgt(f) == o => {}
                _ => rep.push(
                    ViolationKind::Structural,
                    format!(
                        "object {} lacks a well-typed identity 1-cell",
                        self.object_label(o)
                    ),
                ),
            }
        }
        for f in self.one_cells() {
            rep.tick();
            match self.two_id[f.0 as usize] {
                Some(a) if self.two_src(a) == f && self.two_tgt(a) == f => {}
                _ => rep.push(
                    ViolationKind::Structural,
                    format!(
                        "1-cell {} lacks a well-typed identity 2-cell",
                        self.one_label(f)
                    ),
                ),
            }
        }
        if !rep.is_empty() {
            return rep;
        }

        // each hom is a category
        for a in self.objects() {
            for b in self.objects() {
                let hom = self.hom_category(a, b);
                rep.absorb(hom.cat.validate());
            }
        }

        // hcomp_one: totality, boundaries, unit, associativity
        for g in self.one_cells() {
            for f in self.one_cells() {
                if self.one_tgt(f) != self.one_src(g) {
                    continue;
                }
                rep.tick();
                match self.compose_one(g, f) {
                    None => rep.push(
                        ViolationKind::Structural,
                        format!(
                            "missing 1-cell composite {} ∘ {}",
                            self.one_label(g),
                            self.one_label(f)
                        ),
                    ),
                    Some(gf) => {
                        if self.one_src(gf) != self.one_src(f)
                            || self.one_tgt(gf) != self.one_tgt(g)
                        {
                            rep.push(
                                ViolationKind::Boundary,
                                format!(
                                    "{} ∘ {} = {} has wrong endpoints",
                                    self.one_label(g),
                                    self.one_label(f),
                                    self.one_label(gf)
                                ),
                            );
                        }
                    }
                }
            }
        }
        if !rep.is_empty() {
            return rep;
        }
        for f in self.one_cells() {
            rep.tick();
            let (i_s, i_t) = (
                self.one_identity_of(self.one_src(f)),
                self.one_identity_of(self.one_tgt(f)),
            );
            if self.compose_one(f, i_s) != Some(f) || self.compose_one(i_t, f) != Some(f) {
                rep.push(
                    ViolationKind::Unitality,
                    format!("unit law fails for 1-cell {}", self.one_label(f)),
                );
            }
        }
        for h in self.one_cells() {
            for g in self.one_cells() {
                if self.one_src(h) != self.one_tgt(g) {
                    continue;
                }
                for f in self.one_cells() {
                    if self.one_src(g) != self.one_tgt(f) {
                        continue;
                    }
                    rep.tick();
                    let left = self.compose_one(self.compose_one(h, g).unwrap(), f);
                    let right = self.compose_one(h, self.compose_one(g, f).unwrap());
                    if left != right || left.is_none() {
                        rep.push(
                            ViolationKind::Associativity,
                            format!(
                                "1-cell associativity fails at ({}, {}, {})",
                                self.one_label(h),
                                self.one_label(g),
                                self.one_label(f)
                            ),
                        );
                    }
                }
            }
        }

        // hcomp_two: totality, boundaries
        for a in self.two_cells() {
            for b in self.two_cells() {
                if self.one_tgt(self.two_src(a)) != self.one_src(self.two_src(b)) {
                    continue;
                }
                rep.tick();
                match self.horizontal_paste(a, b) {
                    None => rep.push(
                        ViolationKind::Structural,
                        format!(
                            "missing pasting {} | {}",
                            self.two_label(a),
                            self.two_label(b)
                        ),
                    ),
                    Some(ab) => {
                        let want_src = self.compose_one(self.two_src(b), self.two_src(a));
                        let want_tgt = self.compose_one(self.two_tgt(b), self.two_tgt(a));
                        if Some(self.two_src(ab)) != want_src || Some(self.two_tgt(ab)) != want_tgt
                        {
                            rep.push(
                                ViolationKind::Boundary,
                                format!(
                                    "pasting {} | {} has wrong boundary",
                                    self.two_label(a),
                                    self.two_label(b)
                                ),
                            );
                        }
                    }
                }
            }
        }
        if !rep.is_empty() {
            return rep;
        }

        // pasting is functorial: identities and interchange
        for f in self.one_cells() {
            for g in self.one_cells() {
                if self.one_tgt(f) != self.one_src(g) {
                    continue;
                }
                rep.tick();
                let gf = self.compose_one(g, f).unwrap();
                let lhs = self
                    .horizontal_paste(self.two_identity_of(f), self.two_identity_of(g))
                    .unwrap();
                if lhs != self.two_identity_of(gf) {
                    rep.push(
                        ViolationKind::Unitality,
                        format!(
                            "1[{}] | 1[{}] is not 1[{}]",
                            self.one_label(f),
                            self.one_label(g),
                            self.one_label(gf)
                        ),
                    );
                }
            }
        }
        for a in self.two_cells() {
            rep.tick();
            let left_unit =
                self.two_identity_of(self.one_identity_of(self.one_src(self.two_src(a))));
            let right_unit =
                self.two_identity_of(self.one_identity_of(self.one_tgt(self.two_src(a))));
            if self.horizontal_paste(left_unit, a) != Some(a)
                || self.horizontal_paste(a, right_unit) != Some(a)
            {
                rep.push(
                    ViolationKind::Unitality,
                    format!("pasting unit law fails at {}", self.two_label(a)),
                );
            }
        }
        // interchange: (α'∘α)|(β'∘β) = (α'|β') ∘ (α|β)
        for a in self.two_cells() {
            for a2 in self.two_cells() {
                if self.two_src(a2) != self.two_tgt(a) {
                    continue;
                }
                for b in self.two_cells() {
                    if self.one_src(self.two_src(b)) != self.one_tgt(self.two_src(a)) {
                        continue;
                    }
                    for b2 in self.two_cells() {
                        if self.two_src(b2) != self.two_tgt(b) {
                            continue;
                        }
                        rep.tick();
                        let va = self.vertical_compose(a2, a).unwrap();
                        let vb = self.vertical_compose(b2, b).unwrap();
                        let lhs = self.horizontal_paste(va, vb);
                        let ab = self.horizontal_paste(a, b).unwrap();
                        let ab2 = self.horizontal_paste(a2, b2).unwrap();
                        let rhs = self.vertical_compose(ab2, ab);
                        if lhs != rhs || lhs.is_none() {
                            rep.push(
                                ViolationKind::Interchange,
                                format!(
                                    "interchange fails at ({}, {}; {}, {})",
                                    self.two_label(a),
                                    self.two_label(a2),
                                    self.two_label(b),
                                    self.two_label(b2)
                                ),
                            );
                        }
                    }
                }
            }
        }
        // pasting associativity
        for a in self.two_cells() {
            for b in self.two_cells() {
                if self.one_tgt(self.two_src(a)) != self.one_src(self.two_src(b)) {
                    continue;
                }
                for c in self.two_cells() {
                    if self.one_tgt(self.two_src(b)) != self.one_src(self.two_src(c)) {
                        continue;
                    }
                    rep.tick();
                    let left = self.horizontal_paste(self.horizontal_paste(a, b).unwrap(), c);
                    let right = self.horizontal_paste(a, self.horizontal_paste(b, c).unwrap());
                    if left != right || left.is_none() {
                        rep.push(
                            ViolationKind::Associativity,
                            format!(
                                "pasting associativity fails at ({}, {}, {})",
                                self.two_label(a),
                                self.two_label(b),
                                self.two_label(c)
                            ),
                        );
                    }
                }
            }
        }
        rep
    }
}

/// A hom-category of a 2-category together with translation tables back to
/// the ambient 1-cell and 2-cell IDs.
pub struct HomView {
    pub cat: FiniteCategory,
    pub one_of_obj: Vec<OneId>,
    pub two_of_mor: Vec<TwoId>,
    pub obj_of_one: BTreeMap<OneId, ObjId>,
    pub mor_of_two: BTreeMap<TwoId, MorId>,
}

/// A strict 2-functor `F: C^op -> Cat` on a finite 2-category, stored as one
/// finite category per object, one functor per 1-cell, and one natural
/// transformation per 2-cell.
#[derive(Clone, Debug)]
pub struct TwoFunctorToCat {
    pub name: String,
    pub source: FiniteTwoCategory,
    /// `Fc`, indexed by object ID of the source.
    pub on_objects: Vec<FiniteCategory>,
    /// `Ff: F(tgt f) -> F(src f)`, indexed by 1-cell ID.
    pub on_one_cells: Vec<FiniteFunctor>,
    /// `Fα: Ff ⇒ Fg` for `α: f ⇒ g`, components indexed by objects of
    /// `F(tgt f)` with values in `F(src f)`. Indexed by 2-cell ID.
    pub on_two_cells: Vec<FiniteNatTrans>,
}

impl TwoFunctorToCat {
    pub fn fc(&self, c: TObjId) -> &FiniteCategory {
        &self.on_objects[c.0 as usize]
    }

    pub fn ff(&self, f: OneId) -> &FiniteFunctor {
        &self.on_one_cells[f.0 as usize]
    }

    pub fn fa(&self, a: TwoId) -> &FiniteNatTrans {
        &self.on_two_cells[a.0 as usize]
    }

    /// Exhaustive strict contravariant 2-functor check. Failures of pasting
    /// preservation are reported under their own kind, separately from the
    /// remaining functoriality axioms.
    pub fn validate(&self) -> ValidationReport {
        let c = &self.source;
        let mut rep = ValidationReport::new(format!("2-functor {}", self.name));
        if self.on_objects.len() != c.object_count()
            || self.on_one_cells.len() != c.one_cell_count()
            || self.on_two_cells.len() != c.two_cell_count()
        {
            rep.push(
                ViolationKind::Structural,
                "component map does not cover every cell of the source".to_string(),
            );
            return rep;
        }
        for o in c.objects() {
            rep.absorb(self.fc(o).validate());
        }
        for f in c.one_cells() {
            let dom = self.fc(c.one_tgt(f));
            let cod = self.fc(c.one_src(f));
            rep.absorb(self.ff(f).validate(dom, cod));
        }
        if !rep.is_empty() {
            return rep;
        }
        // F(id_c) is the identity functor
        for o in c.objects() {
            rep.tick();
            if !self
                .ff(c.one_identity_of(o))
                .same_maps(&FiniteFunctor::identity(self.fc(o)))
            {
                rep.push(
                    ViolationKind::Functoriality,
                    format!("F(1[{}]) is not the identity functor", c.object_label(o)),
                );
            }
        }
        // F(g∘f) = Ff ∘ Fg
        for g in c.one_cells() {
            for f in c.one_cells() {
                if c.one_tgt(f) != c.one_src(g) {
                    continue;
                }
                rep.tick();
                let gf = c.compose_one(g, f).unwrap();
                if !self.ff(gf).same_maps(&self.ff(f).after(self.ff(g))) {
                    rep.push(
                        ViolationKind::Functoriality,
                        format!(
                            "F({} ∘ {}) ≠ F{} ∘ F{}",
                            c.one_label(g),
                            c.one_label(f),
                            c.one_label(f),
                            c.one_label(g)
                        ),
                    );
                }
            }
        }
        // Fα is natural and well-typed
        for a in c.two_cells() {
            let (f, g) = (c.two_src(a), c.two_tgt(a));
            let dom = self.fc(c.one_tgt(f));
            let cod = self.fc(c.one_src(f));
            rep.absorb(self.fa(a).validate(self.ff(f), self.ff(g), dom, cod));
        }
        if !rep.is_empty() {
            return rep;
        }
        // F(1[f]) is the identity transformation
        for f in c.one_cells() {
            rep.tick();
            let dom = self.fc(c.one_tgt(f));
            let cod = self.fc(c.one_src(f));
            if !self
                .fa(c.two_identity_of(f))
                .same_components(&FiniteNatTrans::identity(self.ff(f), dom, cod))
            {
                rep.push(
                    ViolationKind::Functoriality,
                    format!(
                        "F(1[{}]) is not the identity transformation",
                        c.one_label(f)
                    ),
                );
            }
        }
        // F preserves vertical composites
        for b in c.two_cells() {
            for a in c.two_cells() {
                if c.two_src(b) != c.two_tgt(a) {
                    continue;
                }
                rep.tick();
                let ba = c.vertical_compose(b, a).unwrap();
                let cod = self.fc(c.one_src(c.two_src(a)));
                let composite = self.fa(b).after(self.fa(a), cod);
                if composite.as_ref().map(|n| n.same_components(self.fa(ba))) != Some(true) {
                    rep.push(
                        ViolationKind::Functoriality,
                        format!(
                            "F({} ∘ {}) ≠ F{} ∘ F{}",
                            c.two_label(b),
                            c.two_label(a),
                            c.two_label(b),
                            c.two_label(a)
                        ),
                    );
                }
            }
        }
        // F preserves horizontal pastings: for α: f⇒g over a->b and
        // β: u⇒v over b->x, F(α|β)_z = F g((Fβ)_z) ∘ (Fα)_{F u(z)}
        // for every object z of F(x). Reported separately.
        for a in c.two_cells() {
            for b in c.two_cells() {
                if c.one_tgt(c.two_src(a)) != c.one_src(c.two_src(b)) {
                    continue;
                }
                let ab = c.horizontal_paste(a, b).unwrap();
                let g = c.two_tgt(a);
                let u = c.two_src(b);
                let outer = self.fc(c.one_tgt(u));
                let inner = self.fc(c.one_src(c.two_src(a)));
                for z in outer.objects() {
                    rep.tick();
                    let expected = inner.compose(
                        self.ff(g).apply_mor(self.fa(b).component(z)),
                        self.fa(a).component(self.ff(u).apply_obj(z)),
                    );
                    if expected != Some(self.fa(ab).component(z)) {
                        rep.push(
                            ViolationKind::PastingPreservation,
                            format!(
                                "F({} | {}) has a wrong component at {}",
                                c.two_label(a),
                                c.two_label(b),
                                outer.object_label(z)
                            ),
                        );
                    }
                }
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn terminal_two_category_validates() {
        let mut c = FiniteTwoCategory::new("pt");
        let o = c.add_object("*");
        let i = c.add_one_cell(o, o, "1");
        c.set_one_identity(o, i);
        c.set_hcomp_one(i, i, i);
        c.fill_forced_entries();
        let rep = c.validate();
        assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn walking_two_cell_validates() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let rep = f.source.validate();
        assert!(rep.is_empty(), "{rep}");
        let rep = f.validate();
        assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn unit_pastings_collapse() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let c = &f.source;
        let alpha = c.find_two_cell("alpha").unwrap();
        let cp = c.find_object("c'").unwrap();
        let unit = c.two_identity_of(c.one_identity_of(cp));
        assert_eq!(c.horizontal_paste(alpha, unit), Some(alpha));
        let g = c.find_one_cell("g").unwrap();
        let idg = c.two_identity_of(g);
        assert_eq!(c.vertical_compose(idg, idg), Some(idg));
        // read off the vertical-composition table of the walking 2-cell
        assert_eq!(c.vertical_compose(idg, alpha), Some(alpha));
    }

    #[test]
    fn retargeted_one_cell_composite_is_reported() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let mut c = f.source.clone();
        let g = c.find_one_cell("g").unwrap();
        let cc = c.find_object("c").unwrap();
        let idc = c.one_identity_of(cc);
        // g ∘ id_c retargeted to id_c, whose endpoints are wrong
        c.set_hcomp_one(g, idc, idc);
        let rep = c.validate();
        assert_eq!(rep.count_of(ViolationKind::Boundary), 1, "{rep}");
    }

    #[test]
    fn broken_functoriality_on_composite_is_reported() {
        let mut f = fixtures::build("three_object_whisker").unwrap();
        let c = &f.source;
        let w = c.find_one_cell("w").unwrap();
        // corrupt F on the composite 1-cell w = v∘u by swapping its object map
        let fc_of_src = f.fc(c.one_src(w)).clone();
        let bad = FiniteFunctor::new(
            "bad",
            f.fc(c.one_tgt(w))
                .objects()
                .map(|_| fc_of_src.objects().nth(1).unwrap())
                .collect(),
            f.fc(c.one_tgt(w))
                .morphisms()
                .map(|_| fc_of_src.identity_of(fc_of_src.objects().nth(1).unwrap()))
                .collect(),
        );
        f.on_one_cells[w.0 as usize] = bad;
        let rep = f.validate();
        assert!(
            rep.count_of(ViolationKind::Functoriality) >= 1,
            "expected a functoriality error: {rep}"
        );
    }
}
