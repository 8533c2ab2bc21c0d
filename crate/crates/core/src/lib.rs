//! Exact computations with formal Poisson structures near a submanifold.
//!
//! Multivector fields are truncated power series in the normal coordinates
//! with rational coefficients ([`exactpoly`], [`multivec`]). The gauge group
//! of vector fields vanishing to second order acts through [`glagroup`].
//! [`cohomology`] builds the graded quotient complexes of `[γ, ·]`, and
//! [`solver`] uses them to find a gauge between two structures or to certify
//! that none exists at a given level.

pub mod exactpoly;
pub mod multivec;
pub mod glagroup;
pub mod linalg;
pub mod cohomology;
pub mod solver;
