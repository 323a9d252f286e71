//! Rational homotopy of complements of complex subspace arrangements.
//!
//! Given a central arrangement of linear subspaces of ℂ^l (each of complex
//! codimension ≥ 2) whose intersection lattice is geometric, this crate
//! decides whether the complement is rationally elliptic or hyperbolic, and
//! produces exact certificates either way:
//!
//! * elliptic — the cohomology is an exterior algebra on odd-sphere classes,
//!   cross-checked against the Poincaré polynomial, and the minimal model has
//!   one generator per sphere;
//! * hyperbolic — a kernel element of the canonical map from the exterior
//!   algebra on atom classes is exhibited, a finite witness algebra with a
//!   verified algebra retraction is built, and homotopy-rank growth is
//!   certified against a free graded Lie algebra lower bound.
//!
//! All computation is exact rational arithmetic; identical inputs produce
//! byte-identical reports.
//!
//! The crate is organised as a library with one thin command-line binary.
//! Start with the runnable examples (`cargo run --example classify`) or the
//! pipeline entry point [`report::analyze_file`].

pub mod cohomology;
pub mod dga;
pub mod exterior;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod sullivan;
pub mod witness;



pub use cohomology::{analyze_phi, classify, Classification, CohomologyRing, PhiAnalysis};
pub use dga::AtomicAlgebra;
pub use lattice::{build_lattice, is_geometric, normalize, Arrangement, IntersectionLattice};
pub use linalg::{QMat, Rat};
pub use sullivan::{
    certify_growth, free_lie_ranks, minimal_model, verify, GradedAlgebra, GrowthCertificate,
    MinimalModel, ModelLimits,
};
pub use witness::{build_witness, Witness};


