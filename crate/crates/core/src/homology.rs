//! Integer simplicial homology of truncated simplicial sets, via normalized
//! chains and Smith normal form, plus the cross-model comparison report.
//!
//! Chains are taken on nondegenerate simplices only; a degenerate face
//! contributes zero to the boundary. The Smith normal form runs over
//! arbitrary-precision integers with pivoting by smallest nonzero absolute
//! value. Homology is reported only up to `dim - 1`: the rank of the next
//! boundary matrix is needed at each degree, so the top level of a
//! truncated complex cannot be trusted and is never reported.

use crate::bar::bar_construction;
use crate::elements::{double_category_of_elements, two_category_of_elements};
use crate::hocolim::hocolim_bisimplicial;
use crate::nerve::{nerve_double_category, nerve_two_category, SizeError};
use crate::simplicial::{diagonal, TruncatedSimplicialSet};
use crate::two_category::TwoFunctorToCat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("boundary squared is nonzero at degree {0}; upstream construction is inconsistent")]
    BoundarySquared(usize),
    #[error("homology requested up to degree {requested}, but only degrees <= {trusted} are trustworthy at this truncation")]
    OutOfRange { requested: usize, trusted: usize },
    #[error(transparent)]
    TooLarge(#[from] SizeError),
}

/// Normalized chain complex of a truncated simplicial set.
pub struct ChainComplex {
    pub name: String,
    /// Basis size (nondegenerate simplices) per degree `0..=dim`.
    pub dims: Vec<usize>,
    /// `boundaries[k-1]` is the matrix of `∂_k: C_k -> C_{k-1}` for
    /// `k = 1..=dim`, stored row-major with `dims[k-1]` rows.
    pub boundaries: Vec<Matrix>,
}

pub type Matrix = Vec<Vec<BigInt>>;

fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![vec![BigInt::zero(); cols]; rows]
}

/// Build the normalized chain complex and assert `∂∂ = 0`.
pub fn chain_complex(s: &TruncatedSimplicialSet) -> Result<ChainComplex, HomologyError> {
    let mut basis: Vec<Vec<usize>> = Vec::with_capacity(s.dim + 1);
    let mut position: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(s.dim + 1);
    for k in 0..=s.dim {
        let b: Vec<usize> = (0..s.level_size(k))
            .filter(|&t| !s.is_degenerate(k, t))
            .collect();
        let pos = b.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        basis.push(b);
        position.push(pos);
    }

    let mut boundaries = Vec::with_capacity(s.dim);
    for k in 1..=s.dim {
        let mut m = zero_matrix(basis[k - 1].len(), basis[k].len());
        for (col, &t) in basis[k].iter().enumerate() {
            for i in 0..=k {
                let face = s.face(k, i, t);
                if let Some(&row) = position[k - 1].get(&face) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m[row][col] += BigInt::from(sign);
                }
            }
        }
        boundaries.push(m);
    }

    for k in 2..=s.dim {
        let a = &boundaries[k - 2];
        let b = &boundaries[k - 1];
        if !matrix_product_is_zero(a, b) {
            return Err(HomologyError::BoundarySquared(k));
        }
    }

    Ok(ChainComplex {
        name: s.name.clone(),
        dims: basis.iter().map(|b| b.len()).collect(),
        boundaries,
    })
}

fn matrix_product_is_zero(a: &Matrix, b: &Matrix) -> bool {
    let rows = a.len();
    if rows == 0 || b.is_empty() {
        return true;
    }
    let mid = b.len();
    let cols = b[0].len();
    for r in 0..rows {
        for c in 0..cols {
            let mut acc = BigInt::zero();
            for j in 0..mid {
                if !a[r][j].is_zero() && !b[j][c].is_zero() {
                    acc += &a[r][j] * &b[j][c];
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Invariant factors of an integer matrix (nonnegative, each dividing the
/// next), by row/column reduction with smallest-nonzero-absolute-value
/// pivoting.
pub fn smith_invariant_factors(m: &Matrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut factors = Vec::new();
    let mut k = 0usize;
    while k < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for r in k..rows {
            for c in k..cols {
                if !a[r][c].is_zero()
                    && pivot
                        .map(|(pr, pc)| a[r][c].abs() < a[pr][pc].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap(k, pr);
        for row in a.iter_mut() {
            row.swap(k, pc);
        }
        // clear the pivot row and column; a nonzero remainder is strictly
        // smaller than the pivot, so swapping it in terminates
        loop {
            let mut dirty = false;
            for r in k + 1..rows {
                if a[r][k].is_zero() {
                    continue;
                }
                let q = &a[r][k] / &a[k][k];
                for c in k..cols {
                    let sub = &q * &a[k][c];
                    a[r][c] -= sub;
                }
                if !a[r][k].is_zero() {
                    a.swap(k, r);
                    dirty = true;
                }
            }
            for c in k + 1..cols {
                if a[k][c].is_zero() {
                    continue;
                }
                let q = &a[k][c] / &a[k][k];
                for r in k..rows {
                    let sub = &q * &a[r][k];
                    a[r][c] -= sub;
                }
                if !a[k][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(k, c);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        // divisibility: fold a row containing an entry the pivot does not
        // divide into the pivot row and redo the elimination
        let mut fixed = true;
        'outer: for r in k + 1..rows {
            for c in k + 1..cols {
                if (&a[r][c] % &a[k][k]) != BigInt::zero() {
                    for cc in k..cols {
                        let add = a[r][cc].clone();
                        a[k][cc] += add;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        factors.push(a[k][k].abs());
        k += 1;
    }
    factors.retain(|f| !f.is_zero());
    factors
}

/// Betti number and torsion coefficients of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    /// Nontrivial invariant factors (> 1), each dividing the next, in
    /// decimal.
    pub torsion: Vec<String>,
}

/// Integer homology per degree, trusted only up to `trusted_up_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub name: String,
    pub trusted_up_to: usize,
    pub groups: Vec<HomologyGroup>,
}

/// Exact integer homology of `S` in degrees `0..=up_to`, requiring
/// `up_to <= S.dim - 1`.
pub fn homology(s: &TruncatedSimplicialSet, up_to: usize) -> Result<HomologyTable, HomologyError> {
    if s.dim == 0 || up_to > s.dim - 1 {
        return Err(HomologyError::OutOfRange {
            requested: up_to,
            trusted: s.dim.saturating_sub(1),
        });
    }
    let complex = chain_complex(s)?;
    let mut factors: Vec<Vec<BigInt>> = Vec::with_capacity(up_to + 2);
    for k in 0..=up_to + 1 {
        if k == 0 {
            factors.push(Vec::new());
        } else {
            factors.push(smith_invariant_factors(&complex.boundaries[k - 1]));
        }
    }
    let mut groups = Vec::with_capacity(up_to + 1);
    for k in 0..=up_to {
        let betti = complex.dims[k] - factors[k].len() - factors[k + 1].len();
        let torsion: Vec<String> = factors[k + 1]
            .iter()
            .filter(|f| f.abs() > BigInt::from(1))
            .map(|f| f.to_string())
            .collect();
        groups.push(HomologyGroup {
            degree: k,
            betti,
            torsion,
        });
    }
    Ok(HomologyTable {
        name: complex.name,
        trusted_up_to: up_to,
        groups,
    })
}

/// The five homotopy-type models compared by integer homology.
pub const MODEL_NAMES: [&str; 5] = [
    "diag_nerve_elements_2cat",
    "bar_nerve_elements_2cat",
    "bar_nerve_elements_double",
    "diag_nerve_elements_double",
    "diag_nerve_hocolim",
];

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub report_version: u32,
    pub functor: String,
    pub max_dim: usize,
    pub trusted_up_to: usize,
    pub models: BTreeMap<String, HomologyTable>,
    pub all_equal: bool,
    pub mismatches: Vec<String>,
}

/// Build all five models of the homotopy type of `F`, compute homology up
/// to `dim - 1`, and compare pairwise. Disagreement is report content, not
/// an error.
pub fn compare_models(f: &TwoFunctorToCat, dim: usize) -> Result<ComparisonReport, HomologyError> {
    assert!(dim >= 1, "need at least dimension 1 to report homology");
    let el2 = two_category_of_elements(f);
    let eld = double_category_of_elements(f);
    let n2 = nerve_two_category(&el2.two_cat, dim)?;
    let nd = nerve_double_category(&eld.double_cat, dim)?;
    let (nh, _) = hocolim_bisimplicial(f, dim)?;

    let up_to = dim - 1;
    let sets: Vec<(&str, TruncatedSimplicialSet)> = vec![
        (MODEL_NAMES[0], diagonal(&n2)),
        (MODEL_NAMES[1], bar_construction(&n2, dim)?),
        (MODEL_NAMES[2], bar_construction(&nd, dim)?),
        (MODEL_NAMES[3], diagonal(&nd)),
        (MODEL_NAMES[4], diagonal(&nh)),
    ];
    let mut models = BTreeMap::new();
    for (name, s) in &sets {
        models.insert(name.to_string(), homology(s, up_to)?);
    }

    let reference = &models[MODEL_NAMES[0]];
    let mut mismatches = Vec::new();
    for name in MODEL_NAMES.iter().skip(1) {
        let table = &models[*name];
        for (a, b) in reference.groups.iter().zip(&table.groups) {
            if a.betti != b.betti || a.torsion != b.torsion {
                mismatches.push(format!(
                    "H_{} differs between {} and {}: ({}, [{}]) vs ({}, [{}])",
                    a.degree,
                    MODEL_NAMES[0],
                    name,
                    a.betti,
                    a.torsion.join(","),
                    b.betti,
                    b.torsion.join(","),
                ));
            }
        }
    }
    Ok(ComparisonReport {
        report_version: 1,
        functor: f.name.clone(),
        max_dim: dim,
        trusted_up_to: up_to,
        all_equal: mismatches.is_empty(),
        mismatches,
        models,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::nerve::nerve_category;

    fn big(vals: &[&[i64]]) -> Matrix {
        vals.iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn smith_normal_form_known_matrices() {
        assert_eq!(
            smith_invariant_factors(&big(&[&[2]])),
            vec![BigInt::from(2)]
        );
        assert_eq!(
            smith_invariant_factors(&big(&[&[2, 4], &[6, 8]])),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        assert_eq!(
            smith_invariant_factors(&big(&[&[1, 1], &[1, 1]])),
            vec![BigInt::from(1)]
        );
        assert_eq!(
            smith_invariant_factors(&big(&[&[1, 0], &[0, 2]])),
            vec![BigInt::from(1), BigInt::from(2)]
        );
        assert_eq!(
            smith_invariant_factors(&big(&[&[0, 0], &[0, 0]])),
            Vec::<BigInt>::new()
        );
        // needs a divisibility fix-up: diag(2, 3) has factors 1, 6
        assert_eq!(
            smith_invariant_factors(&big(&[&[2, 0], &[0, 3]])),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn point_homology() {
        let s = crate::simplicial::point(4);
        let h = homology(&s, 3).unwrap();
        assert_eq!(h.groups[0].betti, 1);
        for g in &h.groups[1..] {
            assert_eq!(g.betti, 0);
            assert!(g.torsion.is_empty());
        }
    }

    #[test]
    fn parallel_pair_nerve_is_a_circle() {
        let mut cat = crate::category::FiniteCategory::new("pair");
        let a = cat.add_object_with_identity("a");
        let b = cat.add_object_with_identity("b");
        cat.add_morphism(a, b, "u");
        cat.add_morphism(a, b, "v");
        cat.fill_unit_composites();
        let s = nerve_category(&cat, 3);
        let h = homology(&s, 2).unwrap();
        assert_eq!(h.groups[0].betti, 1);
        assert_eq!(h.groups[1].betti, 1);
        assert_eq!(h.groups[2].betti, 0);
        assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn boundary_squared_is_zero_on_fixtures() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let el = two_category_of_elements(&f);
        let x = nerve_two_category(&el.two_cat, 3).unwrap();
        let d = diagonal(&x);
        assert!(chain_complex(&d).is_ok());
    }

    #[test]
    fn out_of_range_request_is_an_error() {
        let s = crate::simplicial::point(2);
        assert!(matches!(
            homology(&s, 2),
            Err(HomologyError::OutOfRange { .. })
        ));
    }

    #[test]
    fn compare_models_point() {
        let f = fixtures::build("point").unwrap();
        let rep = compare_models(&f, 3).unwrap();
        assert!(rep.all_equal, "{:?}", rep.mismatches);
        for table in rep.models.values() {
            assert_eq!(table.groups[0].betti, 1);
            for g in &table.groups[1..] {
                assert_eq!(g.betti, 0);
            }
        }
    }

    #[test]
    fn compare_models_parallel_pair_is_a_circle() {
        let f = fixtures::build("parallel_pair_constant").unwrap();
        let rep = compare_models(&f, 3).unwrap();
        assert!(rep.all_equal, "{:?}", rep.mismatches);
        let t = &rep.models[MODEL_NAMES[0]];
        assert_eq!(t.groups[0].betti, 1);
        assert_eq!(t.groups[1].betti, 1);
        assert_eq!(t.groups[2].betti, 0);
    }

    #[test]
    fn constant_point_hocolim_matches_the_base_nerve() {
        // with constant point coefficients the diagonal of the hocolim has
        // the homology of the base category's nerve
        let f = fixtures::build("parallel_pair_constant").unwrap();
        let (y, _) = crate::hocolim::hocolim_bisimplicial(&f, 3).unwrap();
        let hoco = homology(&diagonal(&y), 2).unwrap();

        let c = &f.source;
        let mut base = crate::category::FiniteCategory::new("base");
        for o in c.objects() {
            base.add_object(c.object_label(o));
        }
        for one in c.one_cells() {
            base.add_morphism(
                crate::category::ObjId(c.one_src(one).0),
                crate::category::ObjId(c.one_tgt(one).0),
                c.one_label(one),
            );
        }
        for o in c.objects() {
            base.set_identity(
                crate::category::ObjId(o.0),
                crate::category::MorId(c.one_identity_of(o).0),
            );
        }
        for g in c.one_cells() {
            for h in c.one_cells() {
                if let Some(r) = c.compose_one(g, h) {
                    base.set_compose(
                        crate::category::MorId(g.0),
                        crate::category::MorId(h.0),
                        crate::category::MorId(r.0),
                    );
                }
            }
        }
        assert!(base.validate().is_empty());
        let nerve_h = homology(&nerve_category(&base, 3), 2).unwrap();
        assert_eq!(hoco.groups, nerve_h.groups);
    }
}
