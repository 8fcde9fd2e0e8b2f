//! Exact computations with graded Artinian Gorenstein and level algebras
//! presented by Macaulay inverse systems.
//!
//! The entry point for most computations is [`InverseSystem`], which turns one
//! or more dual generators into per-degree catalecticant data for the quotient
//! algebra `Q/Ann(G_1..G_m)`.  On top of that sit Thom classes and Gysin maps
//! ([`surjection`]), fibered products and connected sums by both the
//! dual-generator and the structural route ([`connected_sum`], [`structural`]),
//! and weak/strong Lefschetz and Jordan-type analysis ([`lefschetz`]).
//!
//! All arithmetic is exact: arbitrary-precision rationals by default, prime
//! fields `F_p` opt-in.

pub mod algebra;
pub mod error;
pub mod hilbert;
pub mod inverse_system;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod scalars;

pub mod connected_sum;
pub mod structural;
pub mod surjection;

pub use algebra::GradedArtinian;
pub use error::AlgebraError;
pub use hilbert::HilbertFunction;
pub use inverse_system::{AlgebraElement, InverseSystem};
pub use linalg::ExactMatrix;
pub use poly::{Monomial, Side, SparsePoly, WeightedGrading};
pub use scalars::{Field, FieldElem};
pub use structural::{ConnectedSum, FiberedProduct};
pub use surjection::OrientedSurjection;
