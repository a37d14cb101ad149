use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value lies outside the domain the operation accepts.
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("scheduling error: {0}")]
    Scheduling(String),

    #[error("transform error: {0}")]
    Transform(String),

    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("qubit {0} has no calibrated pulse")]
    CalibrationMissing(usize),

    #[error("channel error: {0}")]
    Channel(String),

    /// The request exceeds what the dense test-scale routines support.
    #[error("capability error: {0}")]
    Capability(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("noise tuning failed: {0}")]
    Tuning(String),

    #[error("invalid device description: {0}")]
    Device(String),

    #[error("invalid Hamiltonian: {0}")]
    Hamiltonian(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input or configuration rather than by a
    /// failure while running a computation.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::Parameter(_)
                | Error::Scheduling(_)
                | Error::Channel(_)
                | Error::Device(_)
                | Error::Hamiltonian(_)
                | Error::Json(_)
                | Error::CalibrationMissing(_)
        )
    }
}
