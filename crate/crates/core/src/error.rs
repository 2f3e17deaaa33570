use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("J(z)^2 + I deviates by {deviation:.3e} (tolerance {tol:.3e}) at sample {point}")]
    NotAlmostComplex { deviation: f64, tol: f64, point: usize },

    #[error(
        "structure too far from standard at sample {point}: J0 + J(z) is singular; \
         frame-normalize the chart before extracting coefficients"
    )]
    TooFarFromStandard { point: usize },

    #[error("grid too coarse: n_r = {n_r}, n_theta = {n_theta} (both must be at least 4)")]
    GridTooCoarse { n_r: usize, n_theta: usize },

    #[error("empty grid")]
    EmptyGrid,

    #[error(
        "iterate left the chart at node {node} (component {component}: |z| = {modulus:.6} >= {bound:.6}); \
         try a smaller radius"
    )]
    DomainEscape {
        node: usize,
        component: usize,
        modulus: f64,
        bound: f64,
    },

    #[error(
        "no convergence after {iterations} iterations \
         (last difference {last_difference:.3e}, last contraction ratio {last_ratio:.3})"
    )]
    NotConverged {
        iterations: usize,
        last_difference: f64,
        last_ratio: f64,
    },

    #[error("iteration diverged at step {iteration} (difference {difference:.3e})")]
    Diverged { iteration: usize, difference: f64 },

    #[error("iteration settled but residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ResidualAboveTolerance { residual: f64, tol: f64 },

    #[error("no solvable radius >= {r_min}: {detail}; try a smaller minimum radius")]
    UnsolvableAtScale { r_min: f64, detail: String },

    #[error("unknown model id `{0}`")]
    UnknownModel(String),

    #[error("segment {segment}: {source}; try a denser partition")]
    Segment {
        segment: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn in_segment(self, segment: usize) -> Error {
        Error::Segment {
            segment,
            source: Box::new(self),
        }
    }
}
