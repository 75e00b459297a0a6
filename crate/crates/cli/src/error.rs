use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("accuracy not reached: {0}")]
    Accuracy(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Accuracy(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<mobimc::Error> for CliError {
    fn from(e: mobimc::Error) -> Self {
        match e {
            mobimc::Error::AccuracyNotReached { .. } | mobimc::Error::NonFiniteIntegrand { .. } => {
                CliError::Accuracy(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
