//! The guide's Rust listings, compiled and run as doc-tests.
//!
//! Each chapter gets its own module so a failing listing is easy to locate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/multivectors.md")]
pub mod multivectors {}
#[doc = include_str!("../../../book/src/gauge-group.md")]
pub mod gauge_group {}
#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod cohomology {}
#[doc = include_str!("../../../book/src/solver.md")]
pub mod solver {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
