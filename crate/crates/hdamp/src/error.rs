use num_complex::Complex64;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("magnitude overflow at l = {l}, use gegenbauer_eval_scaled")]
    MagnitudeOverflow { l: usize },
    #[error("x = {x} lies in the oscillatory region x <= 1; use gegenbauer_eval")]
    OscillatoryRegion { x: f64 },
    #[error("amplitude overflow in log domain, offending l = {l}")]
    AmplitudeOverflow { l: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("suspected zero on contour near t = {location} (|f| = {modulus:.3e})")]
    ZeroOnContour { location: Complex64, modulus: f64 },
    #[error("winding number did not stabilize after {samples} contour samples")]
    WindingNonConvergence { samples: usize },
    #[error("config error: {0}")]
    Config(String),
    #[error("unknown series '{name}'; available: {available:?}")]
    UnknownSeries {
        name: String,
        available: Vec<String>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
