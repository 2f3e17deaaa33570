//! Polar disk grids, the Cauchy–Green transform `T`, Wirtinger derivatives and the
//! Hölder norms `‖·‖` and `‖·‖′`.

pub mod cauchy;
pub mod deriv;
pub mod grid;
pub mod holder;

pub use cauchy::apply_t;
pub use deriv::{dbar, dz};
pub use grid::DiskGrid;
pub use holder::{holder_norm, holder_norm_points, holder_prime_norm};
