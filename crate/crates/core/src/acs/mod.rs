//! Almost complex structures on coordinate charts.

pub mod chart;
pub mod gallery;
pub mod poly;
pub mod structure;

pub use chart::{euclidean_norm, ChartSpec, CoeffField, ModelId, TangentVector};
pub use structure::{
    coeffs_from_j, frame_normalize, standard_j, validate_structure, CoeffFit, JMatrixField, ValidationReport, TOL_J,
};
