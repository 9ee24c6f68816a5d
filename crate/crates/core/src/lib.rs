//! Categories of elements for strict 2-functors `F: C^op -> Cat`, the
//! homotopy-type models built from them, and machine checks tying the models
//! together.
//!
//! The pipeline:
//!
//! 1. [`category`] / [`two_category`] / [`double_category`] — finite strict
//!    (2-/double) categories as validated tables, and strict 2-functors.
//! 2. [`elements`] — the 2-category of elements and the double category of
//!    elements of a 2-functor.
//! 3. [`simplicial`] / [`nerve`] — truncated (bi)simplicial sets; nerves of
//!    categories, 2-categories, and double categories.
//! 4. [`hocolim`] — the homotopy colimit simplicial category and its
//!    bisimplicial set.
//! 5. [`bar`] — the bar construction on a bisimplicial set.
//! 6. [`thomason`] — the explicit levelwise isomorphism between the two bar
//!    constructions, verified exhaustively, plus the naive comparison maps
//!    that fail (as negative controls).
//! 7. [`homology`] — integer homology of every model via normalized chains
//!    and Smith normal form, and the cross-model comparison report.
//! 8. [`io`] / [`pipeline`] — JSON schemas, fixtures, and the CLI surface.

pub mod bar;
pub mod category;
pub mod double_category;
pub mod elements;
pub mod fixtures;
pub mod hocolim;
pub mod homology;
pub mod io;
pub mod nerve;
pub mod pipeline;
pub mod report;
pub mod simplicial;
pub mod thomason;
pub mod two_category;
