//! Exact-arithmetic total positivity for skew-symmetric matrices, viewed
//! as the affine chart of the even orthogonal Grassmannian: positivity and
//! nonnegativity tests from a minimal family of signed minors, boundary
//! cell identification from matroids, cell sampling through the type-D
//! Weyl group, Pfaffian sign patterns, and an independent path-diagram
//! route to every minor.

pub mod cells;
pub mod error;
pub mod exact;
pub mod group;
pub mod lgv;
pub mod pfaffian;
pub mod positivity;
pub mod rng;
pub mod weyl;
