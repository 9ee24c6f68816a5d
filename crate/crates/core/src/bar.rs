//! The bar construction on a truncated bisimplicial set.
//!
//! A `k`-simplex of `W̄X` is a tuple `(t_0, ..., t_k)` with
//! `t_j ∈ X_{j, k-j}` satisfying the matching condition
//! `d_0^v t_j = d_{j+1}^h t_{j+1}` for all `0 <= j < k`. Faces and
//! degeneracies are
//!
//! ```text
//! d_i(t_0, ..., t_k) = (d_i^v t_0, d_{i-1}^v t_1, ..., d_1^v t_{i-1},
//!                       d_i^h t_{i+1}, ..., d_i^h t_k)
//! s_i(t_0, ..., t_k) = (s_i^v t_0, s_{i-1}^v t_1, ..., s_0^v t_i,
//!                       s_i^h t_i, ..., s_i^h t_k)
//! ```
//!
//! so `d_0` uses only horizontal faces and `d_k` only vertical ones.
//! Level `k` is enumerated by extending matching-compatible prefixes, never
//! by filtering the full product.

use crate::nerve::{Guard, SizeError};
use crate::simplicial::{Key, SimplexId, TruncatedBisimplicialSet, TruncatedSimplicialSet};
use serde::Serialize;
use std::collections::BTreeMap;

/// `W̄X`, truncated at `dim <= X.dim`. Level `k` keys are the component IDs
/// `t_0, ..., t_k` (with `t_j` interned in `X_{j, k-j}`).
pub fn bar_construction(
    x: &TruncatedBisimplicialSet,
    dim: usize,
) -> Result<TruncatedSimplicialSet, SizeError> {
    assert!(dim <= x.dim, "bar truncation exceeds the bisimplicial one");
    let mut w = TruncatedSimplicialSet::new(format!("Wbar({})", x.name), dim);
    let mut guard = Guard::new(w.name.clone());

    for k in 0..=dim {
        // bucket the candidates for t_{j+1} by their d_{j+1}^h value
        let mut tuples: Vec<Vec<SimplexId>> = (0..x.level(0, k).len()).map(|t0| vec![t0]).collect();
        for j in 0..k {
            let mut buckets: BTreeMap<SimplexId, Vec<SimplexId>> = BTreeMap::new();
            for t in 0..x.level(j + 1, k - j - 1).len() {
                buckets
                    .entry(x.h_face(j + 1, k - j - 1, j + 1, t))
                    .or_default()
                    .push(t);
            }
            let mut next = Vec::new();
            for tuple in &tuples {
                let need = x.v_face(j, k - j, 0, tuple[j]);
                if let Some(matches) = buckets.get(&need) {
                    for &t in matches {
                        let mut t2 = tuple.clone();
                        t2.push(t);
                        next.push(t2);
                    }
                }
            }
            tuples = next;
            guard.take(tuples.len())?;
        }
        guard.take(tuples.len())?;
        let lvl = &mut w.levels[k];
        for tuple in tuples {
            let key: Key = tuple.iter().map(|&t| t as u32).collect();
            lvl.intern(key, String::new());
        }
    }

    // operators per the displayed formulas
    for k in 1..=dim {
        let mut faces = vec![Vec::with_capacity(w.level_size(k)); k + 1];
        for id in 0..w.level_size(k) {
            let tuple: Vec<SimplexId> = w.levels[k].keys[id].iter().map(|&t| t as usize).collect();
            for (i, table) in faces.iter_mut().enumerate() {
                let mut out: Key = Vec::with_capacity(k);
                for j in 0..i {
                    out.push(x.v_face(j, k - j, i - j, tuple[j]) as u32);
                }
                for j in i..k {
                    out.push(x.h_face(j + 1, k - j - 1, i, tuple[j + 1]) as u32);
                }
                table.push(
                    w.levels[k - 1]
                        .id_of(&out)
                        .expect("bar face satisfies matching"),
                );
            }
        }
        w.levels[k].faces = faces;
    }
    for k in 0..dim {
        let mut degens = vec![Vec::with_capacity(w.level_size(k)); k + 1];
        for id in 0..w.level_size(k) {
            let tuple: Vec<SimplexId> = w.levels[k].keys[id].iter().map(|&t| t as usize).collect();
            for (i, table) in degens.iter_mut().enumerate() {
                let mut out: Key = Vec::with_capacity(k + 2);
                for j in 0..=i {
                    out.push(x.v_degen(j, k - j, i - j, tuple[j]) as u32);
                }
                for j in i + 1..=k + 1 {
                    out.push(x.h_degen(j - 1, k + 1 - j, i, tuple[j - 1]) as u32);
                }
                table.push(
                    w.levels[k + 1]
                        .id_of(&out)
                        .expect("bar degeneracy satisfies matching"),
                );
            }
        }
        w.levels[k].degens = degens;
    }
    Ok(w)
}

/// Level sizes and nondegenerate counts, for regression fixtures.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BarCountReport {
    pub name: String,
    pub levels: Vec<LevelCount>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LevelCount {
    pub level: usize,
    pub total: usize,
    pub nondegenerate: usize,
}

pub fn bar_count_report(w: &TruncatedSimplicialSet) -> BarCountReport {
    BarCountReport {
        name: w.name.clone(),
        levels: (0..=w.dim)
            .map(|k| LevelCount {
                level: k,
                total: w.level_size(k),
                nondegenerate: w.nondegenerate_count(k),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::{double_category_of_elements, two_category_of_elements};
    use crate::fixtures;
    use crate::nerve::{nerve_double_category, nerve_two_category};

    #[test]
    fn bar_of_point_is_point() {
        let f = fixtures::build("point").unwrap();
        let el = double_category_of_elements(&f);
        let x = nerve_double_category(&el.double_cat, 4).unwrap();
        let w = bar_construction(&x, 4).unwrap();
        let rep = w.validate();
        assert!(rep.is_empty(), "{rep}");
        let counts = bar_count_report(&w);
        for lc in &counts.levels {
            assert_eq!(lc.total, 1);
            assert_eq!(lc.nondegenerate, usize::from(lc.level == 0));
        }
    }

    #[test]
    fn bar_level_one_of_double_nerve_is_corners() {
        // 1-simplices of W̄N∬F are corners: a vertical morphism followed by
        // a horizontal one, matched at the middle object
        let f = fixtures::build("walking_two_cell").unwrap();
        let el = double_category_of_elements(&f);
        let d = &el.double_cat;
        let x = nerve_double_category(d, 2).unwrap();
        let w = bar_construction(&x, 2).unwrap();
        let rep = w.validate();
        assert!(rep.is_empty(), "{rep}");

        let corners = d
            .v_morphisms()
            .flat_map(|v| d.h_morphisms().filter(move |&h| d.h_src(h) == d.v_tgt(v)))
            .count();
        assert_eq!(w.level_size(1), corners);
    }

    #[test]
    fn bar_levels_of_both_nerves_agree_on_the_walking_two_cell() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let el2 = two_category_of_elements(&f);
        let eld = double_category_of_elements(&f);
        let x2 = nerve_two_category(&el2.two_cat, 3).unwrap();
        let xd = nerve_double_category(&eld.double_cat, 3).unwrap();
        let w2 = bar_construction(&x2, 3).unwrap();
        let wd = bar_construction(&xd, 3).unwrap();
        assert!(w2.validate().is_empty());
        assert!(wd.validate().is_empty());
        for k in 0..=3 {
            assert_eq!(w2.level_size(k), wd.level_size(k), "level {k}");
        }
    }

    #[test]
    fn bar_level_two_of_two_cat_nerve_shape() {
        // a 2-simplex of W̄N∫F is (object; morphism; 2-cell over a morphism):
        // t_0 an object, t_1 a 1-cell, t_2 a (2,0)-simplex, with matching
        let f = fixtures::build("walking_two_cell").unwrap();
        let el = two_category_of_elements(&f);
        let x = nerve_two_category(&el.two_cat, 2).unwrap();
        let w = bar_construction(&x, 2).unwrap();
        // independent count: pairs (t_1 ∈ X_{1,1}, t_2 ∈ X_{2,0}) with
        // d_0^v t_1 = d_2^h t_2, t_0 forced by d_1^h t_1 = d_0^v t_0 = t_0
        let mut expected = 0usize;
        for t1 in 0..x.level(1, 1).len() {
            for t2 in 0..x.level(2, 0).len() {
                if x.v_face(1, 1, 0, t1) == x.h_face(2, 0, 2, t2) {
                    expected += 1;
                }
            }
        }
        assert_eq!(w.level_size(2), expected);
    }
}
