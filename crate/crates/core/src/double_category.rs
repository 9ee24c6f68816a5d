//! Finite double categories as explicit validated tables.
//!
//! A square is bounded by a top and bottom horizontal morphism and a left
//! and right vertical morphism:
//!
//! ```text
//!       top
//!    x -----> y
//!    |        |
//!  left      right
//!    v        v
//!    z -----> w
//!      bottom
//! ```
//!
//! `compose_squares_h(q, r)` pastes `q|r` with `q` on the left (shared edge:
//! `right(q) = left(r)`); `compose_squares_v(q, r)` stacks `q` on top of `r`
//! (shared edge: `bottom(q) = top(r)`).

use crate::report::{ValidationReport, ViolationKind};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SqId(pub u32);

#[derive(Clone, Debug)]
struct EdgeInfo {
    src: DObjId,
    tgt: DObjId,
    label: String,
}

#[derive(Clone, Debug)]
pub struct SquareInfo {
    pub top: HId,
    pub bottom: HId,
    pub left: VId,
    pub right: VId,
    pub label: String,
}

#[derive(Clone, Debug, Default)]
pub struct DoubleCategory {
    pub name: String,
    objects: Vec<String>,
    h_mors: Vec<EdgeInfo>,
    v_mors: Vec<EdgeInfo>,
    squares: Vec<SquareInfo>,
    h_id: Vec<Option<HId>>,
    v_id: Vec<Option<VId>>,
    /// `e_f` per horizontal morphism (vertical identity square on `f`).
    v_id_square: Vec<Option<SqId>>,
    /// `id_φ` per vertical morphism (horizontal identity square on `φ`).
    h_id_square: Vec<Option<SqId>>,
    h_compose: BTreeMap<(HId, HId), HId>,
    v_compose: BTreeMap<(VId, VId), VId>,
    /// `(left, right) -> left|right`.
    sq_h_compose: BTreeMap<(SqId, SqId), SqId>,
    /// `(upper, lower) -> stack`.
    sq_v_compose: BTreeMap<(SqId, SqId), SqId>,
}

impl DoubleCategory {
    pub fn new(name: impl Into<String>) -> Self {
        DoubleCategory {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> DObjId {
        self.objects.push(label.into());
        self.h_id.push(None);
        self.v_id.push(None);
        DObjId(self.objects.len() as u32 - 1)
    }

    pub fn add_h_morphism(&mut self, src: DObjId, tgt: DObjId, label: impl Into<String>) -> HId {
        self.h_mors.push(EdgeInfo {
            src,
            tgt,
            label: label.into(),
        });
        self.v_id_square.push(None);
        HId(self.h_mors.len() as u32 - 1)
    }

    pub fn add_v_morphism(&mut self, src: DObjId, tgt: DObjId, label: impl Into<String>) -> VId {
        self.v_mors.push(EdgeInfo {
            src,
            tgt,
            label: label.into(),
        });
        self.h_id_square.push(None);
        VId(self.v_mors.len() as u32 - 1)
    }

    pub fn add_square(
        &mut self,
        top: HId,
        bottom: HId,
        left: VId,
        right: VId,
        label: impl Into<String>,
    ) -> SqId {
        self.squares.push(SquareInfo {
            top,
            bottom,
            left,
            right,
            label: label.into(),
        });
        SqId(self.squares.len() as u32 - 1)
    }

    pub fn set_h_identity(&mut self, o: DObjId, f: HId) {
        self.h_id[o.0 as usize] = Some(f);
    }

    pub fn set_v_identity(&mut self, o: DObjId, v: VId) {
        self.v_id[o.0 as usize] = Some(v);
    }

    pub fn set_v_id_square(&mut self, f: HId, q: SqId) {
        self.v_id_square[f.0 as usize] = Some(q);
    }

    pub fn set_h_id_square(&mut self, v: VId, q: SqId) {
        self.h_id_square[v.0 as usize] = Some(q);
    }

    pub fn set_h_compose(&mut self, g: HId, f: HId, gf: HId) {
        self.h_compose.insert((g, f), gf);
    }

    pub fn set_v_compose(&mut self, later: VId, earlier: VId, result: VId) {
        self.v_compose.insert((later, earlier), result);
    }

    pub fn set_sq_h_compose(&mut self, left: SqId, right: SqId, result: SqId) {
        self.sq_h_compose.insert((left, right), result);
    }

    pub fn set_sq_v_compose(&mut self, upper: SqId, lower: SqId, result: SqId) {
        self.sq_v_compose.insert((upper, lower), result);
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn h_count(&self) -> usize {
        self.h_mors.len()
    }

    pub fn v_count(&self) -> usize {
        self.v_mors.len()
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = DObjId> {
        (0..self.objects.len() as u32).map(DObjId)
    }

    pub fn h_morphisms(&self) -> impl Iterator<Item = HId> {
        (0..self.h_mors.len() as u32).map(HId)
    }

    pub fn v_morphisms(&self) -> impl Iterator<Item = VId> {
        (0..self.v_mors.len() as u32).map(VId)
    }

    pub fn squares(&self) -> impl Iterator<Item = SqId> {
        (0..self.squares.len() as u32).map(SqId)
    }

    pub fn object_label(&self, o: DObjId) -> &str {
        &self.objects[o.0 as usize]
    }

    pub fn h_label(&self, f: HId) -> &str {
        &self.h_mors[f.0 as usize].label
    }

    pub fn v_label(&self, v: VId) -> &str {
        &self.v_mors[v.0 as usize].label
    }

    pub fn square_label(&self, q: SqId) -> &str {
        &self.squares[q.0 as usize].label
    }

    pub fn h_src(&self, f: HId) -> DObjId {
        self.h_mors[f.0 as usize].src
    }

    pub fn h_tgt(&self, f: HId) -> DObjId {
        self.h_mors[f.0 as usize].tgt
    }

    pub fn v_src(&self, v: VId) -> DObjId {
        self.v_mors[v.0 as usize].src
    }

    pub fn v_tgt(&self, v: VId) -> DObjId {
        self.v_mors[v.0 as usize].tgt
    }

    pub fn square(&self, q: SqId) -> &SquareInfo {
        &self.squares[q.0 as usize]
    }

    pub fn h_identity_of(&self, o: DObjId) -> HId {
        self.h_id[o.0 as usize].expect("horizontal identity assigned")
    }

    pub fn v_identity_of(&self, o: DObjId) -> VId {
        self.v_id[o.0 as usize].expect("vertical identity assigned")
    }

    /// `e_f`, the vertical identity square on a horizontal morphism.
    pub fn v_id_square_of(&self, f: HId) -> SqId {
        self.v_id_square[f.0 as usize].expect("vertical identity square assigned")
    }

    /// `id_φ`, the horizontal identity square on a vertical morphism.
    pub fn h_id_square_of(&self, v: VId) -> SqId {
        self.h_id_square[v.0 as usize].expect("horizontal identity square assigned")
    }

    pub fn is_identity_v(&self, v: VId) -> bool {
        self.v_id[self.v_src(v).0 as usize] == Some(v)
    }

    pub fn compose_h(&self, g: HId, f: HId) -> Option<HId> {
        self.h_compose.get(&(g, f)).copied()
    }

    pub fn compose_v(&self, later: VId, earlier: VId) -> Option<VId> {
        self.v_compose.get(&(later, earlier)).copied()
    }

    pub fn compose_squares_h(&self, left: SqId, right: SqId) -> Option<SqId> {
        self.sq_h_compose.get(&(left, right)).copied()
    }

    pub fn compose_squares_v(&self, upper: SqId, lower: SqId) -> Option<SqId> {
        self.sq_v_compose.get(&(upper, lower)).copied()
    }

    fn boundary_ok(&self, q: &SquareInfo) -> bool {
        self.v_src(q.left) == self.h_src(q.top)
            && self.v_tgt(q.left) == self.h_src(q.bottom)
            && self.v_src(q.right) == self.h_tgt(q.top)
            && self.v_tgt(q.right) == self.h_tgt(q.bottom)
    }

    /// Exhaustive double-category axiom check.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("double category {}", self.name));

        // the horizontal and vertical edge categories
        rep.absorb(self.edge_category_report(true));
        rep.absorb(self.edge_category_report(false));

        for q in self.squares() {
            rep.tick();
            if !self.boundary_ok(self.square(q)) {
                rep.push(
                    ViolationKind::Structural,
                    format!("square {} has inconsistent boundary", self.square_label(q)),
                );
            }
        }
        for f in self.h_morphisms() {
            rep.tick();
            match self.v_id_square[f.0 as usize] {
                Some(q) => {
                    let s = self.square(q);
                    if s.top != f
                        || s.bottom != f
                        || !self.is_identity_v(s.left)
                        || !self.is_identity_v(s.right)
                    {
                        rep.push(
                            ViolationKind::Structural,
                            format!("e[{}] is not an identity-shaped square", self.h_label(f)),
                        );
                    }
                }
                None => rep.push(
                    ViolationKind::Structural,
                    format!("missing vertical identity square on {}", self.h_label(f)),
                ),
            }
        }
        for v in self.v_morphisms() {
            rep.tick();
            match self.h_id_square[v.0 as usize] {
                Some(q) => {
                    let s = self.square(q);
                    let ok = s.left == v
                        && s.right == v
                        && s.top == self.h_identity_of(self.v_src(v))
                        && s.bottom == self.h_identity_of(self.v_tgt(v));
                    if !ok {
                        rep.push(
                            ViolationKind::Structural,
                            format!("id[{}] is not an identity-shaped square", self.v_label(v)),
                        );
                    }
                }
                None => rep.push(
                    ViolationKind::Structural,
                    format!("missing horizontal identity square on {}", self.v_label(v)),
                ),
            }
        }
        if !rep.is_empty() {
            return rep;
        }

        // square compositions: totality and boundary consistency
        for q in self.squares() {
            for r in self.squares() {
                if self.square(q).right == self.square(r).left {
                    rep.tick();
                    match self.compose_squares_h(q, r) {
                        None => rep.push(
                            ViolationKind::Structural,
                            format!(
                                "missing horizontal square composite {} | {}",
                                self.square_label(q),
                                self.square_label(r)
                            ),
                        ),
                        Some(qr) => {
                            let s = self.square(qr);
                            let want_top = self.compose_h(self.square(r).top, self.square(q).top);
                            let want_bot =
                                self.compose_h(self.square(r).bottom, self.square(q).bottom);
                            if Some(s.top) != want_top
                                || Some(s.bottom) != want_bot
                                || s.left != self.square(q).left
                                || s.right != self.square(r).right
                            {
                                rep.push(
                                    ViolationKind::Boundary,
                                    format!(
                                        "{} | {} has the wrong boundary",
                                        self.square_label(q),
                                        self.square_label(r)
                                    ),
                                );
                            }
                        }
                    }
                }
                if self.square(q).bottom == self.square(r).top {
                    rep.tick();
                    match self.compose_squares_v(q, r) {
                        None => rep.push(
                            ViolationKind::Structural,
                            format!(
                                "missing vertical square composite of {} over {}",
                                self.square_label(q),
                                self.square_label(r)
                            ),
                        ),
                        Some(qr) => {
                            let s = self.square(qr);
                            let want_left =
                                self.compose_v(self.square(r).left, self.square(q).left);
                            let want_right =
                                self.compose_v(self.square(r).right, self.square(q).right);
                            if s.top != self.square(q).top
                                || s.bottom != self.square(r).bottom
                                || Some(s.left) != want_left
                                || Some(s.right) != want_right
                            {
                                rep.push(
                                    ViolationKind::Boundary,
                                    format!(
                                        "vertical composite of {} over {} has the wrong boundary",
                                        self.square_label(q),
                                        self.square_label(r)
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
        if !rep.is_empty() {
            return rep;
        }

        // unit laws for squares
        for q in self.squares() {
            rep.tick();
            let s = self.square(q);
            let le = self.h_id_square_of(s.left);
            let re = self.h_id_square_of(s.right);
            if self.compose_squares_h(le, q) != Some(q) || self.compose_squares_h(q, re) != Some(q)
            {
                rep.push(
                    ViolationKind::Unitality,
                    format!(
                        "horizontal unit law fails at square {}",
                        self.square_label(q)
                    ),
                );
            }
            let te = self.v_id_square_of(s.top);
            let be = self.v_id_square_of(s.bottom);
            if self.compose_squares_v(te, q) != Some(q) || self.compose_squares_v(q, be) != Some(q)
            {
                rep.push(
                    ViolationKind::Unitality,
                    format!("vertical unit law fails at square {}", self.square_label(q)),
                );
            }
        }

        // associativity of both square compositions
        for a in self.squares() {
            for b in self.squares() {
                if self.square(a).right == self.square(b).left {
                    for c in self.squares() {
                        if self.square(b).right != self.square(c).left {
                            continue;
                        }
                        rep.tick();
                        let l = self.compose_squares_h(self.compose_squares_h(a, b).unwrap(), c);
                        let r = self.compose_squares_h(a, self.compose_squares_h(b, c).unwrap());
                        if l != r || l.is_none() {
                            rep.push(
                                ViolationKind::Associativity,
                                format!(
                                    "horizontal square associativity fails at ({}, {}, {})",
                                    self.square_label(a),
                                    self.square_label(b),
                                    self.square_label(c)
                                ),
                            );
                        }
                    }
                }
                if self.square(a).bottom == self.square(b).top {
                    for c in self.squares() {
                        if self.square(b).bottom != self.square(c).top {
                            continue;
                        }
                        rep.tick();
                        let l = self.compose_squares_v(self.compose_squares_v(a, b).unwrap(), c);
                        let r = self.compose_squares_v(a, self.compose_squares_v(b, c).unwrap());
                        if l != r || l.is_none() {
                            rep.push(
                                ViolationKind::Associativity,
                                format!(
                                    "vertical square associativity fails at ({}, {}, {})",
                                    self.square_label(a),
                                    self.square_label(b),
                                    self.square_label(c)
                                ),
                            );
                        }
                    }
                }
            }
        }

        // interchange over 2x2 grids
        for a in self.squares() {
            for b in self.squares() {
                if self.square(a).right != self.square(b).left {
                    continue;
                }
                for c in self.squares() {
                    if self.square(a).bottom != self.square(c).top {
                        continue;
                    }
                    for d in self.squares() {
                        if self.square(b).bottom != self.square(d).top
                            || self.square(c).right != self.square(d).left
                        {
                            continue;
                        }
                        rep.tick();
                        let rows = self.compose_squares_v(
                            self.compose_squares_h(a, b).unwrap(),
                            self.compose_squares_h(c, d).unwrap(),
                        );
                        let cols = self.compose_squares_h(
                            self.compose_squares_v(a, c).unwrap(),
                            self.compose_squares_v(b, d).unwrap(),
                        );
                        if rows != cols || rows.is_none() {
                            rep.push(
                                ViolationKind::Interchange,
                                format!(
                                    "interchange fails on grid ({}, {}; {}, {})",
                                    self.square_label(a),
                                    self.square_label(b),
                                    self.square_label(c),
                                    self.square_label(d)
                                ),
                            );
                        }
                    }
                }
            }
        }

        // identity squares compose like their edges
        for (&(g, f), &gf) in &self.h_compose {
            rep.tick();
            let l = self.compose_squares_h(self.v_id_square_of(f), self.v_id_square_of(g));
            if l != Some(self.v_id_square_of(gf)) {
                rep.push(
                    ViolationKind::Unitality,
                    format!(
                        "e[{}] | e[{}] is not e[{}]",
                        self.h_label(f),
                        self.h_label(g),
                        self.h_label(gf)
                    ),
                );
            }
        }
        for (&(later, earlier), &result) in &self.v_compose {
            rep.tick();
            let l =
                self.compose_squares_v(self.h_id_square_of(earlier), self.h_id_square_of(later));
            if l != Some(self.h_id_square_of(result)) {
                rep.push(
                    ViolationKind::Unitality,
                    format!(
                        "id[{}] over id[{}] is not id[{}]",
                        self.v_label(earlier),
                        self.v_label(later),
                        self.v_label(result)
                    ),
                );
            }
        }
        rep
    }

    fn edge_category_report(&self, horizontal: bool) -> ValidationReport {
        let cat = self.edge_category(horizontal);
        let mut rep = cat.validate();
        rep.subject = format!(
            "{} {} category",
            self.name,
            if horizontal { "horizontal" } else { "vertical" }
        );
        rep
    }

    /// The horizontal (or vertical) edge category on the same objects.
    pub fn edge_category(&self, horizontal: bool) -> crate::category::FiniteCategory {
        let mut cat = crate::category::FiniteCategory::new(format!(
            "{}-{}",
            self.name,
            if horizontal { "h" } else { "v" }
        ));
        for o in self.objects() {
            cat.add_object(self.object_label(o));
        }
        let obj = |o: DObjId| crate::category::ObjId(o.0);
        if horizontal {
            for f in self.h_morphisms() {
                cat.add_morphism(obj(self.h_src(f)), obj(self.h_tgt(f)), self.h_label(f));
            }
            for o in self.objects() {
                if let Some(i) = self.h_id[o.0 as usize] {
                    cat.set_identity(obj(o), crate::category::MorId(i.0));
                }
            }
            for (&(g, f), &gf) in &self.h_compose {
                cat.set_compose(
                    crate::category::MorId(g.0),
                    crate::category::MorId(f.0),
                    crate::category::MorId(gf.0),
                );
            }
        } else {
            for v in self.v_morphisms() {
                cat.add_morphism(obj(self.v_src(v)), obj(self.v_tgt(v)), self.v_label(v));
            }
            for o in self.objects() {
                if let Some(i) = self.v_id[o.0 as usize] {
                    cat.set_identity(obj(o), crate::category::MorId(i.0));
                }
            }
            for (&(later, earlier), &r) in &self.v_compose {
                cat.set_compose(
                    crate::category::MorId(later.0),
                    crate::category::MorId(earlier.0),
                    crate::category::MorId(r.0),
                );
            }
        }
        cat
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The double category with one object and only identities.
    pub(crate) fn point() -> DoubleCategory {
        let mut d = DoubleCategory::new("pt");
        let o = d.add_object("*");
        let h = d.add_h_morphism(o, o, "1");
        let v = d.add_v_morphism(o, o, "e");
        d.set_h_identity(o, h);
        d.set_v_identity(o, v);
        let q = d.add_square(h, h, v, v, "sq");
        d.set_v_id_square(h, q);
        d.set_h_id_square(v, q);
        d.set_h_compose(h, h, h);
        d.set_v_compose(v, v, v);
        d.set_sq_h_compose(q, q, q);
        d.set_sq_v_compose(q, q, q);
        d
    }

    #[test]
    fn point_validates() {
        let rep = point().validate();
        assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn corrupted_square_boundary_is_reported() {
        let mut d = point();
        let o = d.add_object("x");
        let h = d.add_h_morphism(o, o, "1x");
        let v = d.add_v_morphism(o, o, "ex");
        d.set_h_identity(o, h);
        d.set_v_identity(o, v);
        // square claims to close a boundary that mixes the two objects
        d.add_square(h, h, VId(0), v, "broken");
        let rep = d.validate();
        assert!(rep.count_of(ViolationKind::Structural) >= 1, "{rep}");
    }
}
