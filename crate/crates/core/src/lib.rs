//! Exact computations in the quantum cohomology of the moduli space of
//! rank-2 stable bundles of odd degree over a Riemann surface.
//!
//! The crate covers the graded-commutative algebra layer, Jacobian
//! characteristic classes, the recursive relation triples of the classical,
//! Floer and quantum rings, ideal computations in ℚ(i)[α, β, γ], the quantum
//! ring of the line space N with two Gromov–Witten evaluators, and the
//! verification suites tying them together.

pub mod algebra;
pub mod cache;
pub mod error;
pub mod ideal;
pub mod iso;
pub mod jacobian;
pub mod linalg;
pub mod presentation;
pub mod quantum_n;
pub mod report;
pub mod scalar;
pub mod suites;

pub use algebra::{AlgebraElement, Monomial, Signature};
pub use error::{Error, Result};
pub use ideal::GradedIdeal;
pub use presentation::{PresentationKind, PresentationTriple};
pub use report::Report;
pub use scalar::Scalar;
