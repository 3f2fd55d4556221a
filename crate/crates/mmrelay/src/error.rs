use crate::rates::RateSolution;

/// Library-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A scalar argument is outside its admissible domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A link geometry cannot support the two-ray construction.
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// A numerical routine failed to reach its accuracy target. For the rate
    /// optimizer, `best` carries the best solution found before giving up.
    #[error("numerical failure in {context}: {reason}")]
    Numerical {
        context: &'static str,
        reason: String,
        best: Option<Box<RateSolution>>,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn numerical(context: &'static str, reason: impl Into<String>) -> Self {
        Error::Numerical {
            context,
            reason: reason.into(),
            best: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
