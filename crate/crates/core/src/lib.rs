//! Basis-dependent channel-state duality for quantum channels and super-maps.
//!
//! The Choi matrix of a linear map `Φ: B(H1) → B(H2)` is usually built from
//! the matrix units `e_ij`, and then `Φ` is completely positive exactly when
//! its Choi matrix is positive semidefinite. Built from a different operator
//! basis, that equivalence can fail. This crate computes Choi matrices in
//! arbitrary bases and decides, for a given basis, whether the equivalence
//! still holds. It does the same one level up for super-maps
//! `Θ: L(B(H1),B(H2)) → L(B(H3),B(H4))`, where "completely CP-preserving"
//! plays the role of "completely positive".
//!
//! Module map:
//!
//! * [`matrix`]: dense complex matrices, Kronecker products, partial traces,
//!   Hermitian eigensolves and ranks.
//! * [`basis`]: operator bases of `B(H)` and the basis-validity test.
//! * [`channel`]: linear maps stored as natural matrices, Choi matrices,
//!   CP and complete-order-isomorphism tests.
//! * [`supermap`]: super-maps, Choi-type representations, representing maps,
//!   the bilinear pairing, adjoints and the super-map correspondence test.
//! * [`random`]: seeded generators for unitaries, bases, maps and super-maps.
//! * [`harness`]: worked-example demos, randomized audits and JSON I/O used by
//!   the `choi-duality` binary.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

#![forbid(unsafe_code)]

pub mod basis;
pub mod channel;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod random;
pub mod regroup;
pub mod supermap;
pub mod tolerance;
pub mod verdict;

pub use basis::{BasisVerdict, OperatorBasis};
pub use channel::LinearMap;
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Factor, C64};
pub use supermap::{ChoiType, SuperMap, SuperMapBasis};
pub use tolerance::Tolerances;
pub use verdict::{CoiVerdict, Reason, Verdict};
