use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("bosonic approximation violated: single-atom excitation probability {probability:.3e} >= 0.1")]
    BosonicApproximation { probability: f64 },

    #[error("no real non-negative intracavity intensity solves the steady-state equation")]
    NoAdmissibleRoot,

    #[error("no stable working point: every steady-state root has an unstable drift matrix (max Re λ = {max_real_part:.6e} rad/s)")]
    UnstableWorkingPoint { max_real_part: f64 },

    #[error("drift matrix is not Hurwitz stable (max Re λ = {max_real_part:.6e})")]
    Unstable { max_real_part: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unphysical covariance matrix: smallest symplectic eigenvalue {nu_min:.12} < 1/2")]
    Unphysical { nu_min: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
