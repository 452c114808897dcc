use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Evaluation point outside the profile's domain.
    #[error("radius {rho} outside domain [0, {radius})")]
    Domain { rho: f64, radius: f64 },

    #[error("invalid {field}: {message}")]
    Config { field: &'static str, message: String },

    /// Adaptive quadrature could not meet its tolerance; usually a tail
    /// that decays too slowly or a non-integrable singularity.
    #[error("quadrature did not converge on [{lo}, {hi}]: value {value}, error estimate {error}")]
    Divergent { lo: f64, hi: f64, value: f64, error: f64 },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("R = {radius} too small: glued profile value {value} at R + 1 is not positive")]
    RadiusTooSmall { radius: f64, value: f64 },

    #[error("shooting failed: {0}")]
    Shooting(String),

    #[error("potential is not in the Orlicz class: {0}")]
    NotInClass(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn config(field: &'static str, message: impl Into<String>) -> Self {
        Error::Config {
            field,
            message: message.into(),
        }
    }
}
