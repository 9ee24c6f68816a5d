//! Nerves: of a category (simplicial), of a 2-category and of a double
//! category (bisimplicial).
//!
//! An `(m,n)`-simplex of the 2-category nerve is an object chain
//! `a_0 -> ... -> a_m` together with, for each column `j = 1..m`, an
//! `n`-chain of vertically composable 2-cells in `hom(a_{j-1}, a_j)`.
//! Its canonical encoding is the object chain followed by each column's
//! `n+1` one-cells and `n` two-cells.
//!
//! An `(m,n)`-simplex of the double nerve is an `m`-by-`n` grid of squares;
//! its encoding lists, row-major, all `(m+1)(n+1)` corner objects, the
//! `m(n+1)` horizontal edges, the `(m+1)n` vertical edges and the `mn`
//! squares. The redundancy keeps every face map table-driven and
//! independently checkable.
//!
//! Horizontal faces act on the `m` direction: an inner `d_i^h` pastes
//! columns `i` and `i+1` (via `α|β` for the 2-category nerve, via the
//! horizontal square composition for the double nerve); vertical faces act
//! columnwise (vertical composition of 2-cells, or vertical stacking of
//! squares).

use crate::category::FiniteCategory;
use crate::double_category::{DObjId, DoubleCategory, HId, SqId, VId};
use crate::simplicial::{Key, TruncatedBisimplicialSet, TruncatedSimplicialSet};
use crate::two_category::{FiniteTwoCategory, OneId, TObjId, TwoId};
use thiserror::Error;

/// Total number of simplices a single construction may intern before it
/// aborts with an explicit error instead of exhausting memory.
pub const SIZE_GUARD: usize = 4_000_000;

#[derive(Debug, Error)]
#[error("size guard exceeded while building {0}: more than {SIZE_GUARD} simplices")]
pub struct SizeError(pub String);

pub(crate) struct Guard {
    used: usize,
    what: String,
}

impl Guard {
    pub(crate) fn new(what: impl Into<String>) -> Self {
        Guard {
            used: 0,
            what: what.into(),
        }
    }

    pub(crate) fn take(&mut self, n: usize) -> Result<(), SizeError> {
        self.used += n;
        if self.used > SIZE_GUARD {
            return Err(SizeError(self.what.clone()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// nerve of a category

/// Composable chains with the standard face and degeneracy maps. Level `k`
/// keys are the `k` morphism IDs of the chain (the object ID at level 0).
pub fn nerve_category(cat: &FiniteCategory, dim: usize) -> TruncatedSimplicialSet {
    let mut s = TruncatedSimplicialSet::new(format!("N({})", cat.name), dim);

    for o in cat.objects() {
        s.levels[0].intern(vec![o.0], cat.object_label(o).to_string());
    }
    let mut chains: Vec<Vec<crate::category::MorId>> = cat.morphisms().map(|m| vec![m]).collect();
    for k in 1..=dim {
        for chain in &chains {
            let key: Key = chain.iter().map(|m| m.0).collect();
            let label = chain
                .iter()
                .map(|&m| cat.morphism_label(m))
                .collect::<Vec<_>>()
                .join("·");
            s.levels[k].intern(key, label);
        }
        if k < dim {
            let mut next = Vec::new();
            for chain in &chains {
                let last_tgt = cat.tgt(*chain.last().unwrap());
                for m in cat.morphisms() {
                    if cat.src(m) == last_tgt {
                        let mut c2 = chain.clone();
                        c2.push(m);
                        next.push(c2);
                    }
                }
            }
            chains = next;
        }
    }

    // operator tables
    for k in 1..=dim {
        let mut faces = vec![Vec::with_capacity(s.level_size(k)); k + 1];
        for id in 0..s.level_size(k) {
            let chain: Vec<crate::category::MorId> = s.levels[k].keys[id]
                .iter()
                .map(|&m| crate::category::MorId(m))
                .collect();
            for (i, table) in faces.iter_mut().enumerate() {
                let target: Key = if k == 1 {
                    let m = chain[0];
                    if i == 0 {
                        vec![cat.tgt(m).0]
                    } else {
                        vec![cat.src(m).0]
                    }
                } else if i == 0 {
                    chain[1..].iter().map(|m| m.0).collect()
                } else if i == k {
                    chain[..k - 1].iter().map(|m| m.0).collect()
                } else {
                    let mut c2: Vec<u32> = Vec::with_capacity(k - 1);
                    for (j, m) in chain.iter().enumerate() {
                        if j == i - 1 {
                            c2.push(cat.compose_expect(chain[i], chain[i - 1]).0);
                        } else if j != i {
                            c2.push(m.0);
                        }
                    }
                    c2
                };
                table.push(s.levels[k - 1].id_of(&target).expect("face chain interned"));
            }
        }
        s.levels[k].faces = faces;
    }
    for k in 0..dim {
        let mut degens = vec![Vec::with_capacity(s.level_size(k)); k + 1];
        for id in 0..s.level_size(k) {
            for (i, table) in degens.iter_mut().enumerate() {
                let target: Key = if k == 0 {
                    let o = crate::category::ObjId(s.levels[0].keys[id][0]);
                    vec![cat.identity_of(o).0]
                } else {
                    let chain = &s.levels[k].keys[id];
                    let vertex = if i < k {
                        cat.src(crate::category::MorId(chain[i]))
                    } else {
                        cat.tgt(crate::category::MorId(chain[k - 1]))
                    };
                    let mut c2 = chain.clone();
                    c2.insert(i, cat.identity_of(vertex).0);
                    c2
                };
                table.push(
                    s.levels[k + 1]
                        .id_of(&target)
                        .expect("degenerate chain interned"),
                );
            }
        }
        s.levels[k].degens = degens;
    }
    s
}

// ---------------------------------------------------------------------------
// nerve of a 2-category

/// One column of a 2-category nerve simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Column {
    /// `n+1` parallel 1-cells.
    pub cells: Vec<OneId>,
    /// `n` vertically composable 2-cells, `steps[r]: cells[r] ⇒ cells[r+1]`.
    pub steps: Vec<TwoId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TwoCatSimplex {
    pub objects: Vec<TObjId>,
    pub columns: Vec<Column>,
}

impl TwoCatSimplex {
    pub(crate) fn key(&self) -> Key {
        let mut k: Key = self.objects.iter().map(|o| o.0).collect();
        for col in &self.columns {
            k.extend(col.cells.iter().map(|c| c.0));
            k.extend(col.steps.iter().map(|s| s.0));
        }
        k
    }

    pub(crate) fn from_key(key: &Key, m: usize, n: usize) -> Self {
        let objects = key[..=m].iter().map(|&o| TObjId(o)).collect();
        let mut columns = Vec::with_capacity(m);
        let mut at = m + 1;
        for _ in 0..m {
            let cells = key[at..at + n + 1].iter().map(|&c| OneId(c)).collect();
            at += n + 1;
            let steps = key[at..at + n].iter().map(|&s| TwoId(s)).collect();
            at += n;
            columns.push(Column { cells, steps });
        }
        TwoCatSimplex { objects, columns }
    }
}

fn column_v_face(c: &FiniteTwoCategory, col: &Column, r: usize) -> Column {
    let n = col.steps.len();
    let mut cells = col.cells.clone();
    let mut steps = col.steps.clone();
    if r == 0 {
        cells.remove(0);
        steps.remove(0);
    } else if r == n {
        cells.pop();
        steps.pop();
    } else {
        let merged = c
            .vertical_compose(col.steps[r], col.steps[r - 1])
            .expect("vertical steps compose");
        cells.remove(r);
        steps.remove(r);
        steps[r - 1] = merged;
    }
    Column { cells, steps }
}

fn column_v_degen(c: &FiniteTwoCategory, col: &Column, r: usize) -> Column {
    let mut cells = col.cells.clone();
    let mut steps = col.steps.clone();
    cells.insert(r, col.cells[r]);
    steps.insert(r, c.two_identity_of(col.cells[r]));
    Column { cells, steps }
}

fn column_paste(c: &FiniteTwoCategory, left: &Column, right: &Column) -> Column {
    let cells = left
        .cells
        .iter()
        .zip(&right.cells)
        .map(|(&l, &r)| c.compose_one(r, l).expect("1-cells compose"))
        .collect();
    let steps = left
        .steps
        .iter()
        .zip(&right.steps)
        .map(|(&l, &r)| c.horizontal_paste(l, r).expect("2-cells paste"))
        .collect();
    Column { cells, steps }
}

fn identity_column(c: &FiniteTwoCategory, o: TObjId, n: usize) -> Column {
    let id = c.one_identity_of(o);
    Column {
        cells: vec![id; n + 1],
        steps: vec![c.two_identity_of(id); n],
    }
}

/// Bisimplicial nerve of a 2-category (truncated at `dim` in both
/// directions).
pub fn nerve_two_category(
    c: &FiniteTwoCategory,
    dim: usize,
) -> Result<TruncatedBisimplicialSet, SizeError> {
    let mut x = TruncatedBisimplicialSet::new(format!("N2({})", c.name), dim);
    let mut guard = Guard::new(x.name.clone());

    // hom-chains per ordered object pair and chain length
    let mut hom_chains: Vec<Vec<Vec<Vec<Column>>>> =
        vec![vec![Vec::new(); c.object_count()]; c.object_count()];
    for a in c.objects() {
        for b in c.objects() {
            let mut by_n: Vec<Vec<Column>> = Vec::with_capacity(dim + 1);
            let base: Vec<Column> = c
                .one_cells()
                .filter(|&f| c.one_src(f) == a && c.one_tgt(f) == b)
                .map(|f| Column {
                    cells: vec![f],
                    steps: vec![],
                })
                .collect();
            by_n.push(base);
            for n in 1..=dim {
                let mut next = Vec::new();
                for col in &by_n[n - 1] {
                    let last = *col.cells.last().unwrap();
                    for t in c.two_cells() {
                        if c.two_src(t) == last {
                            let mut c2 = col.clone();
                            c2.cells.push(c.two_tgt(t));
                            c2.steps.push(t);
                            next.push(c2);
                        }
                    }
                }
                by_n.push(next);
            }
            hom_chains[a.0 as usize][b.0 as usize] = by_n;
        }
    }

    // enumerate levels
    for m in 0..=dim {
        for n in 0..=dim {
            let simplices: Vec<TwoCatSimplex> = if m == 0 {
                c.objects()
                    .map(|o| TwoCatSimplex {
                        objects: vec![o],
                        columns: vec![],
                    })
                    .collect()
            } else {
                let mut partial: Vec<TwoCatSimplex> = c
                    .objects()
                    .map(|o| TwoCatSimplex {
                        objects: vec![o],
                        columns: vec![],
                    })
                    .collect();
                for _ in 0..m {
                    let mut next = Vec::new();
                    for p in &partial {
                        let a = *p.objects.last().unwrap();
                        for b in c.objects() {
                            for col in &hom_chains[a.0 as usize][b.0 as usize][n] {
                                let mut q = p.clone();
                                q.objects.push(b);
                                q.columns.push(col.clone());
                                next.push(q);
                            }
                        }
                    }
                    partial = next;
                }
                partial
            };
            guard.take(simplices.len())?;
            let lvl = x.level_mut(m, n);
            for sp in &simplices {
                lvl.intern(sp.key(), String::new());
            }
        }
    }

    // operator tables
    for m in 0..=dim {
        for n in 0..=dim {
            let count = x.level(m, n).len();
            let mut h_faces = if m == 0 {
                vec![]
            } else {
                vec![Vec::with_capacity(count); m + 1]
            };
            let mut v_faces = if n == 0 {
                vec![]
            } else {
                vec![Vec::with_capacity(count); n + 1]
            };
            let mut h_degens = if m == dim {
                vec![]
            } else {
                vec![Vec::with_capacity(count); m + 1]
            };
            let mut v_degens = if n == dim {
                vec![]
            } else {
                vec![Vec::with_capacity(count); n + 1]
            };
            for id in 0..count {
                let sp = TwoCatSimplex::from_key(&x.level(m, n).keys[id], m, n);
                for (i, table) in h_faces.iter_mut().enumerate() {
                    let mut q = sp.clone();
                    if i == 0 {
                        q.objects.remove(0);
                        q.columns.remove(0);
                    } else if i == m {
                        q.objects.pop();
                        q.columns.pop();
                    } else {
                        q.objects.remove(i);
                        let merged = column_paste(c, &sp.columns[i - 1], &sp.columns[i]);
                        q.columns.remove(i);
                        q.columns[i - 1] = merged;
                    }
                    table.push(x.level(m - 1, n).id_of(&q.key()).expect("h-face interned"));
                }
                for (r, table) in v_faces.iter_mut().enumerate() {
                    let q = TwoCatSimplex {
                        objects: sp.objects.clone(),
                        columns: sp
                            .columns
                            .iter()
                            .map(|col| column_v_face(c, col, r))
                            .collect(),
                    };
                    table.push(x.level(m, n - 1).id_of(&q.key()).expect("v-face interned"));
                }
                for (i, table) in h_degens.iter_mut().enumerate() {
                    let mut q = sp.clone();
                    q.objects.insert(i, sp.objects[i]);
                    q.columns.insert(i, identity_column(c, sp.objects[i], n));
                    table.push(
                        x.level(m + 1, n)
                            .id_of(&q.key())
                            .expect("h-degeneracy interned"),
                    );
                }
                for (r, table) in v_degens.iter_mut().enumerate() {
                    let q = TwoCatSimplex {
                        objects: sp.objects.clone(),
                        columns: sp
                            .columns
                            .iter()
                            .map(|col| column_v_degen(c, col, r))
                            .collect(),
                    };
                    table.push(
                        x.level(m, n + 1)
                            .id_of(&q.key())
                            .expect("v-degeneracy interned"),
                    );
                }
            }
            let lvl = x.level_mut(m, n);
            lvl.h_faces = h_faces;
            lvl.v_faces = v_faces;
            lvl.h_degens = h_degens;
            lvl.v_degens = v_degens;
        }
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// nerve of a double category

/// A grid simplex of the double nerve, with fully redundant boundary data.
#[derive(Clone, Debug)]
pub(crate) struct GridSimplex {
    pub m: usize,
    pub n: usize,
    /// `(m+1)(n+1)` corners, row-major (row r, then column i).
    pub corners: Vec<DObjId>,
    /// `m(n+1)` horizontal edges: `h(i, r): corner(i-1, r) -> corner(i, r)`.
    pub h_edges: Vec<HId>,
    /// `(m+1)n` vertical edges: `v(i, r): corner(i, r-1) -> corner(i, r)`.
    pub v_edges: Vec<VId>,
    /// `mn` squares, row-major.
    pub squares: Vec<SqId>,
}

impl GridSimplex {
    pub(crate) fn corner(&self, i: usize, r: usize) -> DObjId {
        self.corners[r * (self.m + 1) + i]
    }

    pub(crate) fn h(&self, i: usize, r: usize) -> HId {
        self.h_edges[r * self.m + (i - 1)]
    }

    pub(crate) fn v(&self, i: usize, r: usize) -> VId {
        self.v_edges[(r - 1) * (self.m + 1) + i]
    }

    pub(crate) fn sq(&self, i: usize, r: usize) -> SqId {
        self.squares[(r - 1) * self.m + (i - 1)]
    }

    pub(crate) fn key(&self) -> Key {
        let mut k: Key = self.corners.iter().map(|o| o.0).collect();
        k.extend(self.h_edges.iter().map(|e| e.0));
        k.extend(self.v_edges.iter().map(|e| e.0));
        k.extend(self.squares.iter().map(|q| q.0));
        k
    }

    pub(crate) fn from_key(key: &Key, m: usize, n: usize) -> Self {
        let nc = (m + 1) * (n + 1);
        let nh = m * (n + 1);
        let nv = (m + 1) * n;
        GridSimplex {
            m,
            n,
            corners: key[..nc].iter().map(|&o| DObjId(o)).collect(),
            h_edges: key[nc..nc + nh].iter().map(|&e| HId(e)).collect(),
            v_edges: key[nc + nh..nc + nh + nv].iter().map(|&e| VId(e)).collect(),
            squares: key[nc + nh + nv..].iter().map(|&q| SqId(q)).collect(),
        }
    }

    /// Assemble a grid from its cells, reading corner objects off `d`.
    pub(crate) fn rebuild(
        d: &DoubleCategory,
        m: usize,
        n: usize,
        h_edges: Vec<HId>,
        v_edges: Vec<VId>,
        squares: Vec<SqId>,
        seed: DObjId,
    ) -> Self {
        let mut g = GridSimplex {
            m,
            n,
            corners: vec![seed; (m + 1) * (n + 1)],
            h_edges,
            v_edges,
            squares,
        };
        for r in 0..=n {
            for i in 0..=m {
                let o = if i > 0 {
                    d.h_tgt(g.h(i, r))
                } else if r > 0 {
                    d.v_tgt(g.v(0, r))
                } else {
                    seed
                };
                g.corners[r * (m + 1) + i] = o;
            }
        }
        g
    }
}

/// Drop one column from a `cols`-wide row-major matrix.
fn drop_col<T: Copy>(data: &[T], cols: usize, pos: usize) -> Vec<T> {
    data.iter()
        .enumerate()
        .filter(|(ix, _)| ix % cols != pos)
        .map(|(_, &t)| t)
        .collect()
}

fn drop_row<T: Copy>(data: &[T], cols: usize, pos: usize) -> Vec<T> {
    data.iter()
        .enumerate()
        .filter(|(ix, _)| ix / cols != pos)
        .map(|(_, &t)| t)
        .collect()
}

/// Bisimplicial nerve of a double category: `(m,n)`-simplices are `m`-by-`n`
/// grids of squares; `X_{m,0}` is the horizontal nerve, `X_{0,n}` the
/// vertical one.
pub fn nerve_double_category(
    d: &DoubleCategory,
    dim: usize,
) -> Result<TruncatedBisimplicialSet, SizeError> {
    let mut x = TruncatedBisimplicialSet::new(format!("Nd({})", d.name), dim);
    let mut guard = Guard::new(x.name.clone());

    // strips of width w: horizontally composable squares
    let mut strips_by_width: Vec<Vec<Vec<SqId>>> = vec![vec![]];
    strips_by_width.push(d.squares().map(|q| vec![q]).collect());
    for w in 2..=dim.max(1) {
        let mut next = Vec::new();
        for strip in &strips_by_width[w - 1] {
            let last = *strip.last().unwrap();
            for q in d.squares() {
                if d.square(last).right == d.square(q).left {
                    let mut s2 = strip.clone();
                    s2.push(q);
                    next.push(s2);
                }
            }
        }
        strips_by_width.push(next);
    }

    let grid_from_rows = |m: usize, rows: &[&Vec<SqId>]| -> GridSimplex {
        let n = rows.len();
        let mut h_edges = Vec::with_capacity(m * (n + 1));
        for &q in rows[0].iter() {
            h_edges.push(d.square(q).top);
        }
        for row in rows {
            for &q in row.iter() {
                h_edges.push(d.square(q).bottom);
            }
        }
        let mut v_edges = Vec::with_capacity((m + 1) * n);
        for row in rows {
            v_edges.push(d.square(row[0]).left);
            for &q in row.iter() {
                v_edges.push(d.square(q).right);
            }
        }
        let squares: Vec<SqId> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        let seed = d.h_src(d.square(rows[0][0]).top);
        GridSimplex::rebuild(d, m, n, h_edges, v_edges, squares, seed)
    };

    for m in 0..=dim {
        for n in 0..=dim {
            let mut keys: Vec<Key> = Vec::new();
            match (m, n) {
                (0, 0) => {
                    for o in d.objects() {
                        keys.push(vec![o.0]);
                    }
                }
                (_, 0) => {
                    let mut chains: Vec<Vec<HId>> = d.h_morphisms().map(|h| vec![h]).collect();
                    for _ in 1..m {
                        let mut next = Vec::new();
                        for chain in &chains {
                            let last = *chain.last().unwrap();
                            for h in d.h_morphisms() {
                                if d.h_src(h) == d.h_tgt(last) {
                                    let mut c2 = chain.clone();
                                    c2.push(h);
                                    next.push(c2);
                                }
                            }
                        }
                        chains = next;
                    }
                    for chain in chains {
                        let seed = d.h_src(chain[0]);
                        keys.push(GridSimplex::rebuild(d, m, 0, chain, vec![], vec![], seed).key());
                    }
                }
                (0, _) => {
                    let mut chains: Vec<Vec<VId>> = d.v_morphisms().map(|v| vec![v]).collect();
                    for _ in 1..n {
                        let mut next = Vec::new();
                        for chain in &chains {
                            let last = *chain.last().unwrap();
                            for v in d.v_morphisms() {
                                if d.v_src(v) == d.v_tgt(last) {
                                    let mut c2 = chain.clone();
                                    c2.push(v);
                                    next.push(c2);
                                }
                            }
                        }
                        chains = next;
                    }
                    for chain in chains {
                        let seed = d.v_src(chain[0]);
                        keys.push(GridSimplex::rebuild(d, 0, n, vec![], chain, vec![], seed).key());
                    }
                }
                (_, _) => {
                    let strips = &strips_by_width[m];
                    let mut stacks: Vec<Vec<&Vec<SqId>>> = strips.iter().map(|s| vec![s]).collect();
                    for _ in 1..n {
                        let mut next = Vec::new();
                        for stack in &stacks {
                            let last = stack.last().unwrap();
                            for s in strips.iter() {
                                let joins = last.iter().zip(s.iter()).all(|(&above, &below)| {
                                    d.square(above).bottom == d.square(below).top
                                });
                                if joins {
                                    let mut st = stack.clone();
                                    st.push(s);
                                    next.push(st);
                                }
                            }
                        }
                        stacks = next;
                    }
                    for stack in stacks {
                        keys.push(grid_from_rows(m, &stack).key());
                    }
                }
            }
            guard.take(keys.len())?;
            let lvl = x.level_mut(m, n);
            for k in keys {
                lvl.intern(k, String::new());
            }
        }
    }

    // operators
    for m in 0..=dim {
        for n in 0..=dim {
            let count = x.level(m, n).len();
            let mut h_faces = if m == 0 {
                vec![]
            } else {
                vec![Vec::with_capacity(count); m + 1]
            };
            let mut v_faces = if n == 0 {
                vec![]
            } else {
                vec![Vec::with_capacity(count); n + 1]
            };
            let mut h_degens = if m == dim {
                vec![]
            } else {
                vec![Vec::with_capacity(count); m + 1]
            };
            let mut v_degens = if n == dim {
                vec![]
            } else {
                vec![Vec::with_capacity(count); n + 1]
            };
            for id in 0..count {
                let g = GridSimplex::from_key(&x.level(m, n).keys[id], m, n);
                for (i, table) in h_faces.iter_mut().enumerate() {
                    let q = h_face_grid(d, &g, i);
                    table.push(x.level(m - 1, n).id_of(&q.key()).expect("h-face interned"));
                }
                for (r, table) in v_faces.iter_mut().enumerate() {
                    let q = v_face_grid(d, &g, r);
                    table.push(x.level(m, n - 1).id_of(&q.key()).expect("v-face interned"));
                }
                for (i, table) in h_degens.iter_mut().enumerate() {
                    let q = h_degen_grid(d, &g, i);
                    table.push(
                        x.level(m + 1, n)
                            .id_of(&q.key())
                            .expect("h-degeneracy interned"),
                    );
                }
                for (r, table) in v_degens.iter_mut().enumerate() {
                    let q = v_degen_grid(d, &g, r);
                    table.push(
                        x.level(m, n + 1)
                            .id_of(&q.key())
                            .expect("v-degeneracy interned"),
                    );
                }
            }
            let lvl = x.level_mut(m, n);
            lvl.h_faces = h_faces;
            lvl.v_faces = v_faces;
            lvl.h_degens = h_degens;
            lvl.v_degens = v_degens;
        }
    }
    Ok(x)
}

pub(crate) fn h_face_grid(d: &DoubleCategory, g: &GridSimplex, i: usize) -> GridSimplex {
    let (m, n) = (g.m, g.n);
    if i == 0 || i == m {
        let (vcol, hcol) = if i == 0 { (0, 0) } else { (m, m - 1) };
        GridSimplex {
            m: m - 1,
            n,
            corners: drop_col(&g.corners, m + 1, vcol),
            h_edges: if m == 1 {
                vec![]
            } else {
                drop_col(&g.h_edges, m, hcol)
            },
            v_edges: drop_col(&g.v_edges, m + 1, vcol),
            squares: if m == 1 {
                vec![]
            } else {
                drop_col(&g.squares, m, hcol)
            },
        }
    } else {
        let mut h_edges = Vec::with_capacity((m - 1) * (n + 1));
        for r in 0..=n {
            for col in 1..=m - 1 {
                let e = if col == i {
                    d.compose_h(g.h(i + 1, r), g.h(i, r))
                        .expect("h-edges compose")
                } else if col < i {
                    g.h(col, r)
                } else {
                    g.h(col + 1, r)
                };
                h_edges.push(e);
            }
        }
        let mut squares = Vec::with_capacity((m - 1) * n);
        for r in 1..=n {
            for col in 1..=m - 1 {
                let q = if col == i {
                    d.compose_squares_h(g.sq(i, r), g.sq(i + 1, r))
                        .expect("squares paste")
                } else if col < i {
                    g.sq(col, r)
                } else {
                    g.sq(col + 1, r)
                };
                squares.push(q);
            }
        }
        GridSimplex {
            m: m - 1,
            n,
            corners: drop_col(&g.corners, m + 1, i),
            h_edges,
            v_edges: drop_col(&g.v_edges, m + 1, i),
            squares,
        }
    }
}

pub(crate) fn v_face_grid(d: &DoubleCategory, g: &GridSimplex, r: usize) -> GridSimplex {
    let (m, n) = (g.m, g.n);
    if r == 0 || r == n {
        let (vrow, srow) = if r == 0 { (0, 0) } else { (n, n - 1) };
        GridSimplex {
            m,
            n: n - 1,
            corners: drop_row(&g.corners, m + 1, vrow),
            h_edges: if m == 0 {
                vec![]
            } else {
                drop_row(&g.h_edges, m, vrow)
            },
            v_edges: if n == 1 {
                vec![]
            } else {
                drop_row(&g.v_edges, m + 1, srow)
            },
            squares: if n == 1 || m == 0 {
                vec![]
            } else {
                drop_row(&g.squares, m, srow)
            },
        }
    } else {
        let mut v_edges = Vec::with_capacity((m + 1) * (n - 1));
        for row in 1..=n - 1 {
            for i in 0..=m {
                let e = if row == r {
                    d.compose_v(g.v(i, r + 1), g.v(i, r))
                        .expect("v-edges compose")
                } else if row < r {
                    g.v(i, row)
                } else {
                    g.v(i, row + 1)
                };
                v_edges.push(e);
            }
        }
        let mut squares = Vec::with_capacity(m * (n - 1));
        for row in 1..=n - 1 {
            for i in 1..=m {
                let q = if row == r {
                    d.compose_squares_v(g.sq(i, r), g.sq(i, r + 1))
                        .expect("squares stack")
                } else if row < r {
                    g.sq(i, row)
                } else {
                    g.sq(i, row + 1)
                };
                squares.push(q);
            }
        }
        GridSimplex {
            m,
            n: n - 1,
            corners: drop_row(&g.corners, m + 1, r),
            h_edges: if m == 0 {
                vec![]
            } else {
                drop_row(&g.h_edges, m, r)
            },
            v_edges,
            squares,
        }
    }
}

pub(crate) fn h_degen_grid(d: &DoubleCategory, g: &GridSimplex, i: usize) -> GridSimplex {
    let (m, n) = (g.m, g.n);
    let mut corners = Vec::with_capacity((m + 2) * (n + 1));
    let mut h_edges = Vec::with_capacity((m + 1) * (n + 1));
    for r in 0..=n {
        for col in 0..=m + 1 {
            let src = if col <= i { col } else { col - 1 };
            corners.push(g.corner(src, r));
        }
    }
    for r in 0..=n {
        for col in 1..=m + 1 {
            let e = if col == i + 1 {
                d.h_identity_of(g.corner(i, r))
            } else if col <= i {
                g.h(col, r)
            } else {
                g.h(col - 1, r)
            };
            h_edges.push(e);
        }
    }
    let mut v_edges = Vec::with_capacity((m + 2) * n);
    let mut squares = Vec::with_capacity((m + 1) * n);
    for r in 1..=n {
        for col in 0..=m + 1 {
            let src = if col <= i { col } else { col - 1 };
            v_edges.push(g.v(src, r));
        }
    }
    for r in 1..=n {
        for col in 1..=m + 1 {
            let q = if col == i + 1 {
                d.h_id_square_of(g.v(i, r))
            } else if col <= i {
                g.sq(col, r)
            } else {
                g.sq(col - 1, r)
            };
            squares.push(q);
        }
    }
    GridSimplex {
        m: m + 1,
        n,
        corners,
        h_edges,
        v_edges,
        squares,
    }
}

pub(crate) fn v_degen_grid(d: &DoubleCategory, g: &GridSimplex, r: usize) -> GridSimplex {
    let (m, n) = (g.m, g.n);
    let mut corners = Vec::with_capacity((m + 1) * (n + 2));
    let mut h_edges = Vec::with_capacity(m * (n + 2));
    for row in 0..=n + 1 {
        let src = if row <= r { row } else { row - 1 };
        for i in 0..=m {
            corners.push(g.corner(i, src));
        }
    }
    for row in 0..=n + 1 {
        let src = if row <= r { row } else { row - 1 };
        for i in 1..=m {
            h_edges.push(g.h(i, src));
        }
    }
    let mut v_edges = Vec::with_capacity((m + 1) * (n + 1));
    let mut squares = Vec::with_capacity(m * (n + 1));
    for row in 1..=n + 1 {
        for i in 0..=m {
            let e = if row == r + 1 {
                d.v_identity_of(g.corner(i, r))
            } else if row <= r {
                g.v(i, row)
            } else {
                g.v(i, row - 1)
            };
            v_edges.push(e);
        }
    }
    for row in 1..=n + 1 {
        for i in 1..=m {
            let q = if row == r + 1 {
                d.v_id_square_of(g.h(i, r))
            } else if row <= r {
                g.sq(i, row)
            } else {
                g.sq(i, row - 1)
            };
            squares.push(q);
        }
    }
    GridSimplex {
        m,
        n: n + 1,
        corners,
        h_edges,
        v_edges,
        squares,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::{double_category_of_elements, two_category_of_elements};
    use crate::fixtures;

    #[test]
    fn terminal_category_nerve_is_a_point() {
        let mut cat = FiniteCategory::new("pt");
        cat.add_object_with_identity("*");
        cat.fill_unit_composites();
        let s = nerve_category(&cat, 4);
        assert!(s.validate().is_empty());
        for k in 0..=4 {
            assert_eq!(s.level_size(k), 1);
        }
        assert_eq!(s.nondegenerate_count(0), 1);
        for k in 1..=4 {
            assert_eq!(s.nondegenerate_count(k), 0);
        }
    }

    #[test]
    fn parallel_pair_nerve_counts() {
        let mut cat = FiniteCategory::new("pair");
        let a = cat.add_object_with_identity("a");
        let b = cat.add_object_with_identity("b");
        cat.add_morphism(a, b, "u");
        cat.add_morphism(a, b, "v");
        cat.fill_unit_composites();
        let s = nerve_category(&cat, 3);
        let rep = s.validate();
        assert!(rep.is_empty(), "{rep}");
        assert_eq!(s.nondegenerate_count(0), 2);
        assert_eq!(s.nondegenerate_count(1), 2);
        assert_eq!(s.nondegenerate_count(2), 0);
        assert_eq!(s.nondegenerate_count(3), 0);
    }

    #[test]
    fn example_fiber_nerve_has_three_nondegenerate_edges() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let fc = f.fc(f.source.find_object("c").unwrap());
        let s = nerve_category(fc, 3);
        assert_eq!(s.nondegenerate_count(0), 3);
        assert_eq!(
            s.nondegenerate_count(1),
            3,
            "phi, psi, and the alpha component"
        );
    }

    #[test]
    fn two_cat_nerve_of_elements_validates() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let el = two_category_of_elements(&f);
        let x = nerve_two_category(&el.two_cat, 3).unwrap();
        let rep = x.validate();
        assert!(rep.is_empty(), "{rep}");

        // (1,1)-simplices are the 2-cells; (2,0) the composable 1-cell pairs
        assert_eq!(x.level(1, 1).len(), el.two_cat.two_cell_count());
        let composable = el
            .two_cat
            .one_cells()
            .flat_map(|f1| {
                let tc = &el.two_cat;
                tc.one_cells()
                    .filter(move |&f2| tc.one_tgt(f1) == tc.one_src(f2))
            })
            .count();
        assert_eq!(x.level(2, 0).len(), composable);

        // row n = 0 agrees with the nerve of the underlying 1-category
        let row = x.row(0);
        let underlying = nerve_category(&el.two_cat.underlying_category(), 3);
        for k in 0..=3 {
            assert_eq!(row.level_size(k), underlying.level_size(k), "level {k}");
            assert_eq!(
                row.nondegenerate_count(k),
                underlying.nondegenerate_count(k),
                "nondegenerate at level {k}"
            );
        }
    }

    #[test]
    fn double_nerve_of_elements_validates() {
        let f = fixtures::build("walking_two_cell").unwrap();
        let el = double_category_of_elements(&f);
        let x = nerve_double_category(&el.double_cat, 3).unwrap();
        let rep = x.validate();
        assert!(rep.is_empty(), "{rep}");

        // (1,0): horizontal morphisms; (0,1): vertical morphisms; (1,1): squares
        assert_eq!(x.level(1, 0).len(), el.double_cat.h_count());
        assert_eq!(x.level(0, 1).len(), el.double_cat.v_count());
        assert_eq!(x.level(1, 1).len(), el.double_cat.square_count());

        // boundary rows/columns agree with the edge-category nerves
        let h_nerve = nerve_category(&el.double_cat.edge_category(true), 3);
        let v_nerve = nerve_category(&el.double_cat.edge_category(false), 3);
        for k in 0..=3 {
            assert_eq!(x.row(0).level_size(k), h_nerve.level_size(k));
            assert_eq!(x.column(0).level_size(k), v_nerve.level_size(k));
        }
    }

    #[test]
    fn point_double_nerve_is_a_point() {
        let f = fixtures::build("point").unwrap();
        let el = double_category_of_elements(&f);
        let x = nerve_double_category(&el.double_cat, 3).unwrap();
        for m in 0..=3 {
            for n in 0..=3 {
                assert_eq!(x.level(m, n).len(), 1);
            }
        }
        let diag = crate::simplicial::diagonal(&x);
        assert!(diag.validate().is_empty());
        assert_eq!(diag.nondegenerate_count(0), 1);
        assert_eq!(diag.nondegenerate_count(1), 0);
    }

    #[test]
    fn discrete_fixture_diagonals_agree_levelwise() {
        let f = fixtures::build("poset_discrete").unwrap();
        let el2 = two_category_of_elements(&f);
        let eld = double_category_of_elements(&f);
        let x2 = nerve_two_category(&el2.two_cat, 3).unwrap();
        let xd = nerve_double_category(&eld.double_cat, 3).unwrap();
        let d2 = crate::simplicial::diagonal(&x2);
        let dd = crate::simplicial::diagonal(&xd);
        // for a discrete diagram both diagonals are the nerve of the
        // classical category of elements, up to renaming of simplices
        for k in 0..=3 {
            assert_eq!(d2.level_size(k), dd.level_size(k), "level {k}");
            assert_eq!(
                d2.nondegenerate_count(k),
                dd.nondegenerate_count(k),
                "nondegenerate at level {k}"
            );
        }
    }
}
