//! Grid-diagram knot Floer homology over the two-element field, with the
//! canonical Legendrian cycles and the concordance obstructions built on them.
//!
//! The pipeline: [`grid`] validates and manipulates grid diagrams and reads
//! off classical Legendrian invariants from the associated front; [`state`]
//! enumerates generators with their bigradings; [`complex`] builds the
//! rectangle differential (fully or restricted to an Alexander window) and
//! computes bigraded homology; [`pages`] runs the weight filtration to
//! produce page-by-page dimensions and the refined differentials; and
//! [`invariant`] locates the canonical cycles, decides whether they vanish,
//! and compares two diagrams for concordance obstructions. [`script`] checks
//! move scripts that certify a concordance exists, and [`catalog`] ships
//! reference entries with recorded expectations.
//!
//! All homological algebra is over F2 ([`f2`]); Alexander gradings are kept
//! doubled internally so every grading is an integer, and halved at the
//! serialization boundary.

pub mod catalog;
pub mod complex;
pub mod f2;
pub mod grid;
pub mod invariant;
pub mod pages;
pub mod script;
pub mod state;

pub use complex::{BigradedComplex, Flavor};
pub use grid::{ClassicalInvariants, GridDiagram, GridError, Slope, StabType};
pub use invariant::{
    concordance_obstruction, invariant_class, legendrian_profile, DeltaStatus, InvariantClass,
    InvariantError, LegendrianProfile, Tri, Verdict, VerdictKind, Which,
};
pub use script::{
    check_concordance, compose, parse_script, ConcordanceReport, MoveScript, ScriptError,
};
pub use state::ComplexError;
