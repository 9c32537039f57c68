use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
  /// Malformed or inconsistent input data.
  #[error("invalid input: {0}")]
  Invalid(String),
  /// A truncation or size bound was reached before an answer was found.
  #[error("inconclusive at bound {bound}: {reason}")]
  Inconclusive { reason: String, bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> { Err(Error::Invalid(msg.into())) }
