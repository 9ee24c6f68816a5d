//! The 2-category of elements and the double category of elements of a
//! strict 2-functor `F: C^op -> Cat`.
//!
//! Both constructions share their object set: pairs `(c, x)` with `c` an
//! object of `C` and `x` an object of `Fc`.
//!
//! In the 2-category of elements, a morphism `(c, x) -> (c', x')` is a pair
//! `(f, φ)` with `f: c -> c'` and `φ: x -> Ff(x')`, composing as
//! `(g, ψ) ∘ (f, φ) = (gf, Ff(ψ) ∘ φ)`; a 2-cell `(f, φ) ⇒ (g, ψ)` is a
//! 2-cell `α: f ⇒ g` of `C` with `ψ = (Fα)_{x'} ∘ φ`.
//!
//! In the double category of elements, horizontal morphisms
//! `(c, Ff(x')) -> (c', x')` are 1-cells `f` of `C`, vertical morphisms live
//! inside a single `Fc`, and a square with top `f`, bottom `g`, right `φ`
//! is a 2-cell `α: f ⇒ g` with left edge forced to `(Fα)_{y'} ∘ Ff(φ)`.
//! The pair (2-cell, right vertical) is a complete invariant of a square
//! and is used as its interning key.

use crate::category::{MorId, ObjId};
use crate::double_category::{DObjId, DoubleCategory, HId, SqId, VId};
use crate::two_category::{FiniteTwoCategory, OneId, TObjId, TwoFunctorToCat, TwoId};
use std::collections::BTreeMap;

/// The 2-category of elements together with provenance for every cell.
pub struct ElementsTwoCategory {
    pub two_cat: FiniteTwoCategory,
    /// Per object of the result: `(c, x)`.
    pub object_pair: Vec<(TObjId, ObjId)>,
    /// Per 1-cell of the result: `(f, φ)`. The pair alone does not pin the
    /// morphism down when `Ff` is not injective on objects, so the interning
    /// key in `one_ix` also carries the target fiber object `x'`.
    pub one_pair: Vec<(OneId, MorId)>,
    /// Per 2-cell of the result: the underlying 2-cell of `C`.
    pub two_under: Vec<TwoId>,
    pub obj_ix: BTreeMap<(TObjId, ObjId), TObjId>,
    /// Keyed by `(f, x', φ)`.
    pub one_ix: BTreeMap<(OneId, ObjId, MorId), OneId>,
    /// Keyed by (source 1-cell of the result, underlying 2-cell of `C`);
    /// the target is determined by the triangle condition.
    pub two_ix: BTreeMap<(OneId, TwoId), TwoId>,
}

impl ElementsTwoCategory {
    pub fn object_of(&self, c: TObjId, x: ObjId) -> TObjId {
        self.obj_ix[&(c, x)]
    }

    pub fn one_cell_of(&self, f: OneId, xp: ObjId, phi: MorId) -> OneId {
        self.one_ix[&(f, xp, phi)]
    }
}

/// `∫F`.
pub fn two_category_of_elements(f: &TwoFunctorToCat) -> ElementsTwoCategory {
    let c = &f.source;
    let mut el = FiniteTwoCategory::new(format!("Elt2({})", f.name));

    let mut object_pair = Vec::new();
    let mut obj_ix = BTreeMap::new();
    for co in c.objects() {
        for x in f.fc(co).objects() {
            let label = format!("({},{})", c.object_label(co), f.fc(co).object_label(x));
            let o = el.add_object(label);
            object_pair.push((co, x));
            obj_ix.insert((co, x), o);
        }
    }

    // morphisms (f, φ) with φ: x -> Ff(x') in F(src f)
    let mut one_pair = Vec::new();
    let mut one_ix = BTreeMap::new();
    for fc in c.one_cells() {
        let (a, b) = (c.one_src(fc), c.one_tgt(fc));
        let fa = f.fc(a);
        for xp in f.fc(b).objects() {
            let ffxp = f.ff(fc).apply_obj(xp);
            for phi in fa.morphisms() {
                if fa.tgt(phi) != ffxp {
                    continue;
                }
                let src = obj_ix[&(a, fa.src(phi))];
                let tgt = obj_ix[&(b, xp)];
                let label = format!("({},{})", c.one_label(fc), fa.morphism_label(phi));
                let m = el.add_one_cell(src, tgt, label);
                one_pair.push((fc, phi));
                one_ix.insert((fc, xp, phi), m);
            }
        }
    }

    // identities: (id_c, id_x)
    for (i, &(co, x)) in object_pair.iter().enumerate() {
        let idc = c.one_identity_of(co);
        let idx = f.fc(co).identity_of(x);
        el.set_one_identity(TObjId(i as u32), one_ix[&(idc, x, idx)]);
    }

    // 2-cells: pairs (source 1-cell, α with src α = its underlying 1-cell)
    let mut two_under = Vec::new();
    let mut two_ix = BTreeMap::new();
    let n_ones = one_pair.len();
    for s_ix in 0..n_ones {
        let s = OneId(s_ix as u32);
        let (fc, phi) = one_pair[s_ix];
        let a = c.one_src(fc);
        // x' is the second component of the target object of s
        let xp = object_pair[el.one_tgt(s).0 as usize].1;
        for alpha in c.two_cells() {
            if c.two_src(alpha) != fc {
                continue;
            }
            let g = c.two_tgt(alpha);
            // ψ = (Fα)_{x'} ∘ φ
            let comp = f.fa(alpha).component(xp);
            let psi = f
                .fc(a)
                .compose(comp, phi)
                .expect("component composes with φ");
            let t_cell = one_ix[&(g, xp, psi)];
            let label = format!(
                "[{}:{}⇒{}]",
                c.two_label(alpha),
                el.one_label(s),
                el.one_label(t_cell)
            );
            let cell = el.add_two_cell(s, t_cell, label);
            two_under.push(alpha);
            two_ix.insert((s, alpha), cell);
        }
    }

    for (i, &(fc, _)) in one_pair.iter().enumerate() {
        let s = OneId(i as u32);
        el.set_two_identity(s, two_ix[&(s, c.two_identity_of(fc))]);
    }

    // 1-cell composition: (g, ψ) ∘ (f, φ) = (gf, Ff(ψ) ∘ φ)
    let el_ones: Vec<OneId> = (0..n_ones as u32).map(OneId).collect();
    for &s in &el_ones {
        for &t in &el_ones {
            if el.one_tgt(s) != el.one_src(t) {
                continue;
            }
            let (fc, phi) = one_pair[s.0 as usize];
            let (gc, psi) = one_pair[t.0 as usize];
            let gf = c.compose_one(gc, fc).expect("1-cells compose in C");
            let a = c.one_src(fc);
            let f_psi = f.ff(fc).apply_mor(psi);
            let second = f
                .fc(a)
                .compose(f_psi, phi)
                .expect("second components compose");
            let xpp = object_pair[el.one_tgt(t).0 as usize].1;
            el.set_hcomp_one(t, s, one_ix[&(gf, xpp, second)]);
        }
    }

    // vertical composition of 2-cells works as in C
    let n_twos = two_under.len();
    for a_ix in 0..n_twos {
        for b_ix in 0..n_twos {
            let (a2, b2) = (TwoId(a_ix as u32), TwoId(b_ix as u32));
            if el.two_tgt(a2) != el.two_src(b2) {
                continue;
            }
            let under = c
                .vertical_compose(two_under[b_ix], two_under[a_ix])
                .expect("2-cells compose vertically in C");
            let result = two_ix[&(el.two_src(a2), under)];
            el.set_vcomp(b2, a2, result);
        }
    }

    // horizontal pasting of 2-cells works as in C
    for a_ix in 0..n_twos {
        for b_ix in 0..n_twos {
            let (a2, b2) = (TwoId(a_ix as u32), TwoId(b_ix as u32));
            if el.one_tgt(el.two_src(a2)) != el.one_src(el.two_src(b2)) {
                continue;
            }
            let under = c
                .horizontal_paste(two_under[a_ix], two_under[b_ix])
                .expect("2-cells paste in C");
            let src = el
                .compose_one(el.two_src(b2), el.two_src(a2))
                .expect("source 1-cells compose");
            let result = two_ix[&(src, under)];
            el.set_hcomp_two(a2, b2, result);
        }
    }

    ElementsTwoCategory {
        two_cat: el,
        object_pair,
        one_pair,
        two_under,
        obj_ix,
        one_ix,
        two_ix,
    }
}

/// The double category of elements together with provenance for every cell.
pub struct ElementsDoubleCategory {
    pub double_cat: DoubleCategory,
    /// Per object: `(c, x)`.
    pub object_pair: Vec<(TObjId, ObjId)>,
    /// Per horizontal morphism: `(f, x')` with target `(c', x')`.
    pub h_under: Vec<(OneId, ObjId)>,
    /// Per vertical morphism: `(c, φ)`.
    pub v_under: Vec<(TObjId, MorId)>,
    /// Per square: `(α, right vertical)`.
    pub sq_under: Vec<(TwoId, VId)>,
    pub obj_ix: BTreeMap<(TObjId, ObjId), DObjId>,
    pub h_ix: BTreeMap<(OneId, ObjId), HId>,
    pub v_ix: BTreeMap<(TObjId, MorId), VId>,
    pub sq_ix: BTreeMap<(TwoId, VId), SqId>,
}

/// `∬F`.
pub fn double_category_of_elements(f: &TwoFunctorToCat) -> ElementsDoubleCategory {
    let c = &f.source;
    let mut d = DoubleCategory::new(format!("EltDbl({})", f.name));

    let mut object_pair = Vec::new();
    let mut obj_ix = BTreeMap::new();
    for co in c.objects() {
        for x in f.fc(co).objects() {
            let label = format!("({},{})", c.object_label(co), f.fc(co).object_label(x));
            let o = d.add_object(label);
            object_pair.push((co, x));
            obj_ix.insert((co, x), o);
        }
    }

    // horizontal morphisms: f: (c, Ff(x')) -> (c', x')
    let mut h_under = Vec::new();
    let mut h_ix = BTreeMap::new();
    for fc in c.one_cells() {
        let (a, b) = (c.one_src(fc), c.one_tgt(fc));
        for xp in f.fc(b).objects() {
            let src = obj_ix[&(a, f.ff(fc).apply_obj(xp))];
            let tgt = obj_ix[&(b, xp)];
            let label = format!("{}@{}", c.one_label(fc), f.fc(b).object_label(xp));
            let h = d.add_h_morphism(src, tgt, label);
            h_under.push((fc, xp));
            h_ix.insert((fc, xp), h);
        }
    }

    // vertical morphisms: φ in Fc
    let mut v_under = Vec::new();
    let mut v_ix = BTreeMap::new();
    for co in c.objects() {
        let fc = f.fc(co);
        for phi in fc.morphisms() {
            let src = obj_ix[&(co, fc.src(phi))];
            let tgt = obj_ix[&(co, fc.tgt(phi))];
            let label = format!("{}@{}", fc.morphism_label(phi), c.object_label(co));
            let v = d.add_v_morphism(src, tgt, label);
            v_under.push((co, phi));
            v_ix.insert((co, phi), v);
        }
    }

    for (i, &(co, x)) in object_pair.iter().enumerate() {
        let o = DObjId(i as u32);
        d.set_h_identity(o, h_ix[&(c.one_identity_of(co), x)]);
        d.set_v_identity(o, v_ix[&(co, f.fc(co).identity_of(x))]);
    }

    // squares: (α: f ⇒ g, right vertical φ: x' -> y' in F(c'));
    // the left edge is forced to (Fα)_{y'} ∘ Ff(φ)
    let mut sq_under = Vec::new();
    let mut sq_ix = BTreeMap::new();
    for alpha in c.two_cells() {
        let fc = c.two_src(alpha);
        let gc = c.two_tgt(alpha);
        let (a, b) = (c.one_src(fc), c.one_tgt(fc));
        let fb = f.fc(b);
        for phi in fb.morphisms() {
            let xp = fb.src(phi);
            let yp = fb.tgt(phi);
            let top = h_ix[&(fc, xp)];
            let bottom = h_ix[&(gc, yp)];
            let right = v_ix[&(b, phi)];
            let left_mor = f
                .fc(a)
                .compose(f.fa(alpha).component(yp), f.ff(fc).apply_mor(phi))
                .expect("left edge composes");
            let left = v_ix[&(a, left_mor)];
            let label = format!("[{},{}]", c.two_label(alpha), d.v_label(right));
            let q = d.add_square(top, bottom, left, right, label);
            sq_under.push((alpha, right));
            sq_ix.insert((alpha, right), q);
        }
    }

    for (i, &(fc, xp)) in h_under.iter().enumerate() {
        let h = HId(i as u32);
        let b = c.one_tgt(fc);
        let e_xp = v_ix[&(b, f.fc(b).identity_of(xp))];
        d.set_v_id_square(h, sq_ix[&(c.two_identity_of(fc), e_xp)]);
    }
    for (i, &(co, _)) in v_under.iter().enumerate() {
        let v = VId(i as u32);
        let id_idc = c.two_identity_of(c.one_identity_of(co));
        d.set_h_id_square(v, sq_ix[&(id_idc, v)]);
    }

    // horizontal composition of horizontal morphisms
    let hs: Vec<HId> = (0..h_under.len() as u32).map(HId).collect();
    for &p in &hs {
        for &q in &hs {
            if d.h_tgt(p) != d.h_src(q) {
                continue;
            }
            let (fc, _) = h_under[p.0 as usize];
            let (gc, xpp) = h_under[q.0 as usize];
            let gf = c.compose_one(gc, fc).expect("1-cells compose");
            d.set_h_compose(q, p, h_ix[&(gf, xpp)]);
        }
    }

    // vertical composition inside each Fc
    let vs: Vec<VId> = (0..v_under.len() as u32).map(VId).collect();
    for &p in &vs {
        for &q in &vs {
            if d.v_tgt(p) != d.v_src(q) {
                continue;
            }
            let (co, phi) = v_under[p.0 as usize];
            let (_, psi) = v_under[q.0 as usize];
            let comp = f.fc(co).compose(psi, phi).expect("verticals compose");
            d.set_v_compose(q, p, v_ix[&(co, comp)]);
        }
    }

    // square compositions work as in C (horizontal pasting) and as in the
    // vertical categories (stacking)
    let sqs: Vec<SqId> = (0..sq_under.len() as u32).map(SqId).collect();
    for &p in &sqs {
        for &q in &sqs {
            let (alpha, r_p) = sq_under[p.0 as usize];
            let (beta, r_q) = sq_under[q.0 as usize];
            // side by side
            if d.square(p).right == d.square(q).left {
                let under = c.horizontal_paste(alpha, beta).expect("2-cells paste");
                d.set_sq_h_compose(p, q, sq_ix[&(under, r_q)]);
            }
            // stacked
            if d.square(p).bottom == d.square(q).top {
                let under = c.vertical_compose(beta, alpha).expect("2-cells compose");
                let (co, phi) = v_under[r_p.0 as usize];
                let (_, chi) = v_under[r_q.0 as usize];
                let right = v_ix[&(co, f.fc(co).compose(chi, phi).expect("rights compose"))];
                d.set_sq_v_compose(p, q, sq_ix[&(under, right)]);
            }
        }
    }

    ElementsDoubleCategory {
        double_cat: d,
        object_pair,
        h_under,
        v_under,
        sq_under,
        obj_ix,
        h_ix,
        v_ix,
        sq_ix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn walking_two_cell_elements_counts() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let el = two_category_of_elements(&f);
        assert_eq!(el.two_cat.object_count(), 4);
        let c = &f.source;
        let nonid = el
            .two_cat
            .two_cells()
            .filter(|&t| !el.two_cat.is_identity_two(t))
            .count();
        assert_eq!(nonid, 2, "α induces exactly two 2-cells");
        for t in el.two_cat.two_cells() {
            if !el.two_cat.is_identity_two(t) {
                assert_eq!(
                    el.two_under[t.0 as usize],
                    c.find_two_cell("alpha").unwrap()
                );
            }
        }
        let rep = el.two_cat.validate();
        assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn walking_two_cell_double_elements() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let el = double_category_of_elements(&f);
        let d = &el.double_cat;
        assert_eq!(d.object_count(), 4);

        // brute-force oracle: squares are pairs (2-cell of C, morphism of
        // F(target of its underlying hom))
        let c = &f.source;
        let expected: usize = c
            .two_cells()
            .map(|a| f.fc(c.one_tgt(c.two_src(a))).morphism_count())
            .sum();
        assert_eq!(d.square_count(), expected);
        assert_eq!(d.square_count(), 10);

        // exactly one square is labeled by the nonidentity 2-cell α, and it
        // has top f, bottom g, left (Fα)_{x'}, right an identity
        let alpha = c.find_two_cell("alpha").unwrap();
        let alpha_squares: Vec<_> = d
            .squares()
            .filter(|&q| el.sq_under[q.0 as usize].0 == alpha)
            .collect();
        assert_eq!(alpha_squares.len(), 1);
        let q = d.square(alpha_squares[0]);
        assert_eq!(d.h_label(q.top), "f@x'");
        assert_eq!(d.h_label(q.bottom), "g@x'");
        assert!(d.is_identity_v(q.right));
        let cc = c.find_object("c").unwrap();
        let falpha = f.fc(cc).find_morphism("Falpha").unwrap();
        assert_eq!(el.v_under[q.left.0 as usize], (cc, falpha));

        let rep = d.validate();
        assert!(rep.is_empty(), "{rep}");
    }

    #[test]
    fn point_elements_are_trivial() {
        let f = fixtures::build("point").unwrap();
        let el = two_category_of_elements(&f);
        assert_eq!(el.two_cat.object_count(), 1);
        assert_eq!(el.two_cat.one_cell_count(), 1);
        assert_eq!(el.two_cat.two_cell_count(), 1);
        let dl = double_category_of_elements(&f);
        assert_eq!(dl.double_cat.object_count(), 1);
        assert_eq!(dl.double_cat.square_count(), 1);
    }

    #[test]
    fn object_counts_agree_across_fixtures() {
        for name in fixtures::NAMES {
            let f = fixtures::build(name).unwrap();
            let a = two_category_of_elements(&f).two_cat.object_count();
            let b = double_category_of_elements(&f).double_cat.object_count();
            assert_eq!(a, b, "fixture {name}");
        }
    }

    #[test]
    fn discrete_fixture_matches_classical_elements() {
        let f = fixtures::build("poset_discrete").unwrap();
        let el = two_category_of_elements(&f);
        let dl = double_category_of_elements(&f);

        // classical category of elements of the object-level functor,
        // enumerated independently
        let c = &f.source;
        let mut objects = Vec::new();
        for co in c.objects() {
            for x in f.fc(co).objects() {
                objects.push((co, x));
            }
        }
        let mut morphisms = Vec::new();
        for fc in c.one_cells() {
            for xp in f.fc(c.one_tgt(fc)).objects() {
                morphisms.push(((c.one_src(fc), f.ff(fc).apply_obj(xp)), (c.one_tgt(fc), xp)));
            }
        }
        assert_eq!(el.two_cat.object_count(), objects.len());
        assert_eq!(el.two_cat.one_cell_count(), morphisms.len());
        assert_eq!(dl.double_cat.h_count(), morphisms.len());

        // double category of a discrete diagram over a locally discrete base:
        // every vertical morphism and every square is an identity
        for v in dl.double_cat.v_morphisms() {
            assert!(dl.double_cat.is_identity_v(v));
        }
        for q in dl.double_cat.squares() {
            let (alpha, _) = dl.sq_under[q.0 as usize];
            assert!(c.is_identity_two(alpha));
        }
    }
}
