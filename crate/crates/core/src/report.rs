//! Validation reports shared by every structure validator in the crate.
//!
//! A report is a flat list of violations plus counters for how many checks
//! ran and how many were skipped because they fell outside the truncation
//! dimension. Silence is never ambiguous: a report with zero violations and
//! a nonzero skip count says exactly which guarantees were not examined.

use serde::Serialize;
use std::fmt;

/// What kind of axiom or consistency condition a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// Dangling IDs, missing table entries, ill-typed boundaries.
    Structural,
    Associativity,
    Unitality,
    /// Source/target bookkeeping of a composite is wrong.
    Boundary,
    Interchange,
    /// A functor fails to preserve identities or composition.
    Functoriality,
    /// A naturality square of a transformation fails to commute.
    Naturality,
    /// A 2-functor fails to preserve horizontal pastings of 2-cells.
    /// Kept separate from `Functoriality` so callers can see that the
    /// remaining strictness axioms hold even when this one does not.
    PastingPreservation,
    /// One of the five families of simplicial identities fails.
    SimplicialIdentity,
    /// A level map fails to commute with a face or degeneracy operator.
    Commutation,
    /// A matching condition between glued simplices fails.
    Matching,
    /// A level map is not a bijection where one is required.
    Bijection,
    /// Two maps that must be mutually inverse are not.
    Inverse,
    /// Stored data disagrees with its recomputation from reduced data.
    Redundancy,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

/// Outcome of an exhaustive validator run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    /// Human-readable name of the structure that was validated.
    pub subject: String,
    pub violations: Vec<Violation>,
    /// Number of individual axiom instances examined.
    pub checks: u64,
    /// Number of instances skipped because they exceed the truncation.
    pub skipped: u64,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            ..Default::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            detail: detail.into(),
        });
    }

    /// Record one executed check.
    pub fn tick(&mut self) {
        self.checks += 1;
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    /// Fold another report into this one, keeping its violations verbatim.
    pub fn absorb(&mut self, other: ValidationReport) {
        self.checks += other.checks;
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
    }

    pub fn count_of(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(
                f,
                "{}: ok ({} checks, {} skipped by truncation)",
                self.subject, self.checks, self.skipped
            )
        } else {
            writeln!(
                f,
                "{}: {} violation(s) ({} checks, {} skipped)",
                self.subject,
                self.violations.len(),
                self.checks,
                self.skipped
            )?;
            for v in &self.violations {
                writeln!(f, "  [{}] {}", v.kind, v.detail)?;
            }
            Ok(())
        }
    }
}
