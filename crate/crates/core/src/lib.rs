//! Pseudoholomorphic disks in almost complex coordinate charts.
//!
//! The crate computes J-holomorphic disks with prescribed center and
//! direction by a fixed-point iteration built on the Cauchy-Green transform,
//! and uses them to bound the Kobayashi-Royden pseudonorm, the induced
//! pseudodistance, hyperbolicity evidence and reduced distances between the
//! leaves of fibered charts.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`acs`] | charts, coefficient fields `a(z)`, `J(z)` matrix fields and conversions |
//! | [`transform`] | polar disk grids, the transform `T`, Wirtinger derivatives, Hölder norms |
//! | [`solver`] | the `θ`/`Θ` operators and the disk iteration |
//! | [`pseudonorm`] | radius search for `F_M(v)` and exact model values |
//! | [`distance`] | path-integral and disk-chain distance estimates |
//! | [`hyperbolic`] | hyperbolicity scans and reduced distances on fibrations |
//! | [`cli`] | the `jdisk` command line |

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod acs;
pub mod cli;
pub mod distance;
pub mod error;
pub mod hyperbolic;
pub mod pseudonorm;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
