//! Numerical realization of the generic quantum superintegrable system on the
//! 2-sphere and the Racah/Wilson polynomials and Wilson functions it
//! generates as interbasis expansion coefficients.
//!
//! Modules:
//! - [`specialfn`]: gamma/Pochhammer machinery, ₚFq sums, Jacobi polynomials;
//! - [`sphere`]: the Ψ and Λ eigenbases, norms, differential operators
//!   H, L₁, L₂, L₃ and the first-order ladder operators T, T*, U, V;
//! - [`quadalg`]: matrix representations and the quadratic-algebra checks;
//! - [`racah`]: Wilson/Racah polynomials, the (k, N) dictionary, discrete
//!   orthogonality, and the τ, τ*, μ difference operators;
//! - [`expansion`]: Gauss–Jacobi quadrature on the octant, expansion
//!   coefficients two ways, the orthogonal-matrix identities;
//! - [`wilsonfn`]: the second solution and Wilson functions at non-integer
//!   degree;
//! - [`panel`]: seeded reproducible parameter panels (ChaCha8);
//! - [`report`]: the JSON report model used by the CLI.

pub mod error;
pub mod expansion;
pub mod fields;
pub mod panel;
pub mod parallel;
pub mod quadalg;
pub mod racah;
pub mod report;
pub mod specialfn;
pub mod sphere;
pub mod wilsonfn;

pub use error::{Error, Result};
