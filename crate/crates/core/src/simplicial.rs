//! Truncated simplicial and bisimplicial sets as levelwise finite interned
//! sets with total face/degeneracy tables.
//!
//! Every simplex is interned by a canonical encoding: a tuple of constituent
//! IDs in a fixed order documented by each producer. Operator tables map
//! interned indices to interned indices, so validation is pure table lookup.
//!
//! Index conventions, used crate-wide: a `k`-simplex of a nerve is a chain
//! `a_0 -> a_1 -> ... -> a_k`; `d_0` drops `a_0`, `d_k` drops `a_k`, an inner
//! `d_i` composes the two morphisms at `a_i`, and `s_i` duplicates `a_i` by
//! inserting an identity. For bisimplicial sets the first index `m` is the
//! horizontal direction (`d^h`, `s^h`) and the second `n` the vertical one.
//!
//! All constructions are truncated at a dimension `D`; identities that would
//! need a level above `D` are skipped and counted in the report, so silence
//! is never ambiguous.

use crate::report::{ValidationReport, ViolationKind};
use std::collections::BTreeMap;

pub type SimplexId = usize;
pub type Key = Vec<u32>;

/// One level of a truncated simplicial set.
#[derive(Clone, Debug, Default)]
pub struct SLevel {
    pub keys: Vec<Key>,
    pub index: BTreeMap<Key, SimplexId>,
    /// `faces[i][s]` = `d_i(s)`, for `0 <= i <= k`.
    pub faces: Vec<Vec<SimplexId>>,
    /// `degens[i][s]` = `s_i(s)`, for `0 <= i <= k`, absent at level `D`.
    pub degens: Vec<Vec<SimplexId>>,
    pub labels: Vec<String>,
}

impl SLevel {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn intern(&mut self, key: Key, label: String) -> SimplexId {
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.keys.len();
        self.index.insert(key.clone(), id);
        self.keys.push(key);
        self.labels.push(label);
        id
    }

    pub fn id_of(&self, key: &Key) -> Option<SimplexId> {
        self.index.get(key).copied()
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedSimplicialSet {
    pub name: String,
    pub dim: usize,
    pub levels: Vec<SLevel>,
}

impl TruncatedSimplicialSet {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        TruncatedSimplicialSet {
            name: name.into(),
            dim,
            levels: (0..=dim).map(|_| SLevel::default()).collect(),
        }
    }

    pub fn face(&self, k: usize, i: usize, s: SimplexId) -> SimplexId {
        self.levels[k].faces[i][s]
    }

    pub fn degeneracy(&self, k: usize, i: usize, s: SimplexId) -> SimplexId {
        self.levels[k].degens[i][s]
    }

    pub fn level_size(&self, k: usize) -> usize {
        self.levels[k].len()
    }

    /// A `k`-simplex is degenerate iff it equals `s_i(d_i(x))` for some `i`.
    pub fn is_degenerate(&self, k: usize, s: SimplexId) -> bool {
        if k == 0 || k > self.dim {
            return false;
        }
        (0..k).any(|i| {
            let d = self.face(k, i, s);
            self.degeneracy(k - 1, i, d) == s
        })
    }

    pub fn nondegenerate_count(&self, k: usize) -> usize {
        (0..self.level_size(k))
            .filter(|&s| !self.is_degenerate(k, s))
            .count()
    }

    /// Check the five families of simplicial identities within truncation.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("simplicial set {}", self.name));
        self.validate_into(&mut rep);
        rep
    }

    fn validate_into(&self, rep: &mut ValidationReport) {
        // structural: table shapes and index ranges
        for k in 0..=self.dim {
            let lvl = &self.levels[k];
            if lvl.faces.len() != if k == 0 { 0 } else { k + 1 } {
                rep.push(
                    ViolationKind::Structural,
                    format!(
                        "level {k} has {} face tables, expected {}",
                        lvl.faces.len(),
                        if k == 0 { 0 } else { k + 1 }
                    ),
                );
                return;
            }
            let want_deg = if k == self.dim { 0 } else { k + 1 };
            if lvl.degens.len() != want_deg {
                rep.push(
                    ViolationKind::Structural,
                    format!(
                        "level {k} has {} degeneracy tables, expected {want_deg}",
                        lvl.degens.len()
                    ),
                );
                return;
            }
            for (i, t) in lvl.faces.iter().enumerate() {
                if t.len() != lvl.len() || t.iter().any(|&x| x >= self.levels[k - 1].len()) {
                    rep.push(
                        ViolationKind::Structural,
                        format!("face table d_{i} at level {k} is not total or out of range"),
                    );
                    return;
                }
            }
            for (i, t) in lvl.degens.iter().enumerate() {
                if t.len() != lvl.len() || t.iter().any(|&x| x >= self.levels[k + 1].len()) {
                    rep.push(
                        ViolationKind::Structural,
                        format!("degeneracy table s_{i} at level {k} is not total or out of range"),
                    );
                    return;
                }
            }
        }

        for k in 0..=self.dim {
            for s in 0..self.level_size(k) {
                // d_i d_j = d_{j-1} d_i for i < j
                if k >= 2 {
                    for j in 0..=k {
                        for i in 0..j {
                            rep.tick();
                            let a = self.face(k - 1, i, self.face(k, j, s));
                            let b = self.face(k - 1, j - 1, self.face(k, i, s));
                            if a != b {
                                rep.push(
                                    ViolationKind::SimplicialIdentity,
                                    format!(
                                        "{}: d_{i} d_{j} ≠ d_{} d_{i} at level {k} simplex {s}",
                                        self.name,
                                        j - 1
                                    ),
                                );
                            }
                        }
                    }
                }
                // identities involving degeneracies from this level; the
                // i < j and i > j+1 cases read faces of s, which exist for
                // every k where those cases are reachable (k >= 1)
                if k < self.dim {
                    for j in 0..=k {
                        let sj = self.degeneracy(k, j, s);
                        for i in 0..=k + 1 {
                            rep.tick();
                            let lhs = self.face(k + 1, i, sj);
                            let want = if i < j {
                                self.degeneracy(k - 1, j - 1, self.face(k, i, s))
                            } else if i == j || i == j + 1 {
                                s
                            } else {
                                self.degeneracy(k - 1, j, self.face(k, i - 1, s))
                            };
                            if lhs != want {
                                rep.push(
                                    ViolationKind::SimplicialIdentity,
                                    format!(
                                        "{}: d_{i} s_{j} mismatch at level {k} simplex {s}",
                                        self.name
                                    ),
                                );
                            }
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i for i <= j
                if k + 2 <= self.dim {
                    for j in 0..=k {
                        for i in 0..=j {
                            rep.tick();
                            let a = self.degeneracy(k + 1, i, self.degeneracy(k, j, s));
                            let b = self.degeneracy(k + 1, j + 1, self.degeneracy(k, i, s));
                            if a != b {
                                rep.push(
                                    ViolationKind::SimplicialIdentity,
                                    format!(
                                        "{}: s_{i} s_{j} ≠ s_{} s_{i} at level {k} simplex {s}",
                                        self.name,
                                        j + 1
                                    ),
                                );
                            }
                        }
                    }
                } else if k <= self.dim {
                    // the s s-identities out of this level are not checkable
                    for j in 0..=k {
                        for _ in 0..=j {
                            rep.skip();
                        }
                    }
                }
            }
        }
    }
}

/// One level of a truncated bisimplicial set.
#[derive(Clone, Debug, Default)]
pub struct BLevel {
    pub keys: Vec<Key>,
    pub index: BTreeMap<Key, SimplexId>,
    pub h_faces: Vec<Vec<SimplexId>>,
    pub v_faces: Vec<Vec<SimplexId>>,
    pub h_degens: Vec<Vec<SimplexId>>,
    pub v_degens: Vec<Vec<SimplexId>>,
    pub labels: Vec<String>,
}

impl BLevel {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn intern(&mut self, key: Key, label: String) -> SimplexId {
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.keys.len();
        self.index.insert(key.clone(), id);
        self.keys.push(key);
        self.labels.push(label);
        id
    }

    pub fn id_of(&self, key: &Key) -> Option<SimplexId> {
        self.index.get(key).copied()
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedBisimplicialSet {
    pub name: String,
    pub dim: usize,
    /// `levels[m][n]` for `0 <= m, n <= dim`.
    pub levels: Vec<Vec<BLevel>>,
}

impl TruncatedBisimplicialSet {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        TruncatedBisimplicialSet {
            name: name.into(),
            dim,
            levels: (0..=dim)
                .map(|_| (0..=dim).map(|_| BLevel::default()).collect())
                .collect(),
        }
    }

    pub fn level(&self, m: usize, n: usize) -> &BLevel {
        &self.levels[m][n]
    }

    pub fn level_mut(&mut self, m: usize, n: usize) -> &mut BLevel {
        &mut self.levels[m][n]
    }

    pub fn h_face(&self, m: usize, n: usize, i: usize, s: SimplexId) -> SimplexId {
        self.levels[m][n].h_faces[i][s]
    }

    pub fn v_face(&self, m: usize, n: usize, i: usize, s: SimplexId) -> SimplexId {
        self.levels[m][n].v_faces[i][s]
    }

    pub fn h_degen(&self, m: usize, n: usize, i: usize, s: SimplexId) -> SimplexId {
        self.levels[m][n].h_degens[i][s]
    }

    pub fn v_degen(&self, m: usize, n: usize, i: usize, s: SimplexId) -> SimplexId {
        self.levels[m][n].v_degens[i][s]
    }

    /// Validate both simplicial directions and every horizontal/vertical
    /// commutation within truncation.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("bisimplicial set {}", self.name));

        // structural shapes
        for m in 0..=self.dim {
            for n in 0..=self.dim {
                let lvl = &self.levels[m][n];
                let shape_ok = lvl.h_faces.len() == if m == 0 { 0 } else { m + 1 }
                    && lvl.v_faces.len() == if n == 0 { 0 } else { n + 1 }
                    && lvl.h_degens.len() == if m == self.dim { 0 } else { m + 1 }
                    && lvl.v_degens.len() == if n == self.dim { 0 } else { n + 1 };
                if !shape_ok {
                    rep.push(
                        ViolationKind::Structural,
                        format!("level ({m},{n}) has malformed operator tables"),
                    );
                    return rep;
                }
                let total = |tables: &Vec<Vec<SimplexId>>, bound: usize| {
                    tables
                        .iter()
                        .all(|t| t.len() == lvl.len() && t.iter().all(|&x| x < bound))
                };
                let ok = total(
                    &lvl.h_faces,
                    if m == 0 {
                        usize::MAX
                    } else {
                        self.levels[m - 1][n].len()
                    },
                ) && total(
                    &lvl.v_faces,
                    if n == 0 {
                        usize::MAX
                    } else {
                        self.levels[m][n - 1].len()
                    },
                ) && total(
                    &lvl.h_degens,
                    if m == self.dim {
                        usize::MAX
                    } else {
                        self.levels[m + 1][n].len()
                    },
                ) && total(
                    &lvl.v_degens,
                    if n == self.dim {
                        usize::MAX
                    } else {
                        self.levels[m][n + 1].len()
                    },
                );
                if !ok {
                    rep.push(
                        ViolationKind::Structural,
                        format!("level ({m},{n}) has a non-total or out-of-range operator"),
                    );
                    return rep;
                }
            }
        }

        // each row and column is a simplicial set
        for n in 0..=self.dim {
            let row = self.row(n);
            let mut sub = ValidationReport::new(String::new());
            row.validate_into(&mut sub);
            for v in sub.violations.iter() {
                rep.push(v.kind, format!("row n={n}: {}", v.detail));
            }
            rep.checks += sub.checks;
            rep.skipped += sub.skipped;
        }
        for m in 0..=self.dim {
            let col = self.column(m);
            let mut sub = ValidationReport::new(String::new());
            col.validate_into(&mut sub);
            for v in sub.violations.iter() {
                rep.push(v.kind, format!("column m={m}: {}", v.detail));
            }
            rep.checks += sub.checks;
            rep.skipped += sub.skipped;
        }

        // horizontal operators commute with vertical operators
        for m in 0..=self.dim {
            for n in 0..=self.dim {
                for s in 0..self.levels[m][n].len() {
                    for i in 0..=m {
                        if m == 0 {
                            continue;
                        }
                        for j in 0..=n {
                            if n > 0 {
                                rep.tick();
                                let a = self.v_face(m - 1, n, j, self.h_face(m, n, i, s));
                                let b = self.h_face(m, n - 1, i, self.v_face(m, n, j, s));
                                if a != b {
                                    rep.push(
                                        ViolationKind::SimplicialIdentity,
                                        format!("d^h_{i} d^v_{j} ≠ d^v_{j} d^h_{i} at ({m},{n}) simplex {s}"),
                                    );
                                }
                            }
                            if n < self.dim {
                                rep.tick();
                                let a = self.v_degen(m - 1, n, j, self.h_face(m, n, i, s));
                                let b = self.h_face(m, n + 1, i, self.v_degen(m, n, j, s));
                                if a != b {
                                    rep.push(
                                        ViolationKind::SimplicialIdentity,
                                        format!("d^h_{i} s^v_{j} ≠ s^v_{j} d^h_{i} at ({m},{n}) simplex {s}"),
                                    );
                                }
                            }
                        }
                    }
                    if m < self.dim {
                        for i in 0..=m {
                            for j in 0..=n {
                                if n > 0 {
                                    rep.tick();
                                    let a = self.v_face(m + 1, n, j, self.h_degen(m, n, i, s));
                                    let b = self.h_degen(m, n - 1, i, self.v_face(m, n, j, s));
                                    if a != b {
                                        rep.push(
                                            ViolationKind::SimplicialIdentity,
                                            format!(
                                                "s^h_{i} d^v_{j} mismatch at ({m},{n}) simplex {s}"
                                            ),
                                        );
                                    }
                                }
                                if n < self.dim {
                                    rep.tick();
                                    let a = self.v_degen(m + 1, n, j, self.h_degen(m, n, i, s));
                                    let b = self.h_degen(m, n + 1, i, self.v_degen(m, n, j, s));
                                    if a != b {
                                        rep.push(
                                            ViolationKind::SimplicialIdentity,
                                            format!(
                                                "s^h_{i} s^v_{j} mismatch at ({m},{n}) simplex {s}"
                                            ),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }

    /// The row `n` as a simplicial set in the horizontal direction.
    pub fn row(&self, n: usize) -> TruncatedSimplicialSet {
        let mut s = TruncatedSimplicialSet::new(format!("{}[-,{n}]", self.name), self.dim);
        for m in 0..=self.dim {
            let lvl = &self.levels[m][n];
            s.levels[m] = SLevel {
                keys: lvl.keys.clone(),
                index: lvl.index.clone(),
                faces: lvl.h_faces.clone(),
                degens: lvl.h_degens.clone(),
                labels: lvl.labels.clone(),
            };
        }
        s
    }

    /// The column `m` as a simplicial set in the vertical direction.
    pub fn column(&self, m: usize) -> TruncatedSimplicialSet {
        let mut s = TruncatedSimplicialSet::new(format!("{}[{m},-]", self.name), self.dim);
        for n in 0..=self.dim {
            let lvl = &self.levels[m][n];
            s.levels[n] = SLevel {
                keys: lvl.keys.clone(),
                index: lvl.index.clone(),
                faces: lvl.v_faces.clone(),
                degens: lvl.v_degens.clone(),
                labels: lvl.labels.clone(),
            };
        }
        s
    }
}

/// Diagonal simplicial set `k ↦ X_{k,k}` with `d_i = d^h_i ∘ d^v_i` and
/// `s_i = s^h_i ∘ s^v_i`. Levels share the interned IDs of `X`.
pub fn diagonal(x: &TruncatedBisimplicialSet) -> TruncatedSimplicialSet {
    let mut s = TruncatedSimplicialSet::new(format!("diag({})", x.name), x.dim);
    for k in 0..=x.dim {
        let lvl = &x.levels[k][k];
        let faces = if k == 0 {
            Vec::new()
        } else {
            (0..=k)
                .map(|i| {
                    (0..lvl.len())
                        .map(|t| x.h_face(k, k - 1, i, x.v_face(k, k, i, t)))
                        .collect()
                })
                .collect()
        };
        let degens = if k == x.dim {
            Vec::new()
        } else {
            (0..=k)
                .map(|i| {
                    (0..lvl.len())
                        .map(|t| x.h_degen(k, k + 1, i, x.v_degen(k, k, i, t)))
                        .collect()
                })
                .collect()
        };
        s.levels[k] = SLevel {
            keys: lvl.keys.clone(),
            index: lvl.index.clone(),
            faces,
            degens,
            labels: lvl.labels.clone(),
        };
    }
    s
}

/// A map of truncated simplicial sets given by one level function per level.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub name: String,
    pub levels: Vec<Vec<SimplexId>>,
}

impl SimplicialMap {
    /// Check totality and commutation with every face and degeneracy within
    /// truncation. On failure the report lists each (operator, level,
    /// simplex) witness in enumeration order, so the first entry is the
    /// first witness.
    pub fn validate(
        &self,
        src: &TruncatedSimplicialSet,
        tgt: &TruncatedSimplicialSet,
    ) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("simplicial map {}", self.name));
        let dim = src.dim.min(tgt.dim);
        if self.levels.len() < dim + 1 {
            rep.push(
                ViolationKind::Structural,
                format!(
                    "map defines {} levels, needs {}",
                    self.levels.len(),
                    dim + 1
                ),
            );
            return rep;
        }
        for k in 0..=dim {
            if self.levels[k].len() != src.level_size(k)
                || self.levels[k].iter().any(|&s| s >= tgt.level_size(k))
            {
                rep.push(
                    ViolationKind::Structural,
                    format!("level function at {k} is not total into the target"),
                );
                return rep;
            }
        }
        for k in 1..=dim {
            for s in 0..src.level_size(k) {
                for i in 0..=k {
                    rep.tick();
                    let a = self.levels[k - 1][src.face(k, i, s)];
                    let b = tgt.face(k, i, self.levels[k][s]);
                    if a != b {
                        rep.push(
                            ViolationKind::Commutation,
                            format!(
                                "d_{i} at level {k}, simplex {s}: map(d x) = {a} ≠ d(map x) = {b}"
                            ),
                        );
                    }
                }
            }
        }
        for k in 0..dim {
            for s in 0..src.level_size(k) {
                for i in 0..=k {
                    rep.tick();
                    let a = self.levels[k + 1][src.degeneracy(k, i, s)];
                    let b = tgt.degeneracy(k, i, self.levels[k][s]);
                    if a != b {
                        rep.push(
                            ViolationKind::Commutation,
                            format!(
                                "s_{i} at level {k}, simplex {s}: map(s x) = {a} ≠ s(map x) = {b}"
                            ),
                        );
                    }
                }
            }
        }
        rep
    }
}

/// The one-point simplicial set, all levels singletons.
pub fn point(dim: usize) -> TruncatedSimplicialSet {
    let mut s = TruncatedSimplicialSet::new("pt", dim);
    for k in 0..=dim {
        let lvl = &mut s.levels[k];
        lvl.intern(vec![0], "*".into());
        lvl.faces = if k == 0 { vec![] } else { vec![vec![0]; k + 1] };
        lvl.degens = if k == dim {
            vec![]
        } else {
            vec![vec![0]; k + 1]
        };
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_validates() {
        let s = point(3);
        let rep = s.validate();
        assert!(rep.is_empty(), "{rep}");
        assert_eq!(s.nondegenerate_count(0), 1);
        assert_eq!(s.nondegenerate_count(1), 0);
    }

    #[test]
    fn identity_map_is_simplicial() {
        let s = point(3);
        let map = SimplicialMap {
            name: "id".into(),
            levels: (0..=3).map(|k| (0..s.level_size(k)).collect()).collect(),
        };
        assert!(map.validate(&s, &s).is_empty());
    }

    /// The truncated nerve of the walking arrow, built by hand.
    fn arrow_nerve_by_hand() -> TruncatedSimplicialSet {
        let mut s = TruncatedSimplicialSet::new("arrow", 2);
        // level 0: a = 0, b = 1
        s.levels[0].intern(vec![0], "a".into());
        s.levels[0].intern(vec![1], "b".into());
        // level 1: e = 0 (a->b), sa = 1, sb = 2
        s.levels[1].intern(vec![0, 1], "e".into());
        s.levels[1].intern(vec![0, 0], "sa".into());
        s.levels[1].intern(vec![1, 1], "sb".into());
        s.levels[0].degens = vec![vec![1, 2]];
        s.levels[1].faces = vec![vec![1, 0, 1], vec![0, 0, 1]];
        // level 2: ssa = 0, ssb = 1, s0e = 2 (a,a,b), s1e = 3 (a,b,b)
        s.levels[2].intern(vec![0, 0, 0], "ssa".into());
        s.levels[2].intern(vec![1, 1, 1], "ssb".into());
        s.levels[2].intern(vec![0, 0, 1], "s0e".into());
        s.levels[2].intern(vec![0, 1, 1], "s1e".into());
        s.levels[1].degens = vec![vec![2, 0, 1], vec![3, 0, 1]];
        s.levels[2].faces = vec![vec![1, 2, 0, 2], vec![1, 2, 0, 0], vec![1, 2, 1, 0]];
        s
    }

    #[test]
    fn vertically_constant_diagonal_matches_the_horizontal_row() {
        // discrete fibers over a poset force identity verticals, so the
        // double nerve is constant in the vertical direction and its
        // diagonal agrees with the horizontal row levelwise
        let f = crate::fixtures::build("poset_discrete").unwrap();
        let el = crate::elements::double_category_of_elements(&f);
        let x = crate::nerve::nerve_double_category(&el.double_cat, 3).unwrap();
        for m in 0..=3 {
            for n in 1..=3 {
                assert_eq!(x.level(m, n).len(), x.level(m, 0).len());
            }
        }
        let d = diagonal(&x);
        let row = x.row(0);
        for k in 0..=3 {
            assert_eq!(d.level_size(k), row.level_size(k));
            assert_eq!(d.nondegenerate_count(k), row.nondegenerate_count(k));
        }
    }

    #[test]
    fn corrupted_face_detected() {
        let s = arrow_nerve_by_hand();
        let rep = s.validate();
        assert!(rep.is_empty(), "sanity: {rep}");
        assert_eq!(s.nondegenerate_count(1), 1);
        assert_eq!(s.nondegenerate_count(2), 0);

        let mut bad = s.clone();
        bad.levels[2].faces[0][2] = 2; // d_0(s0e) retargeted to sb
        let rep = bad.validate();
        assert!(
            rep.count_of(ViolationKind::SimplicialIdentity) >= 1,
            "{rep}"
        );
    }
}
