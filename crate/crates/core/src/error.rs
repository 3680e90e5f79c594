use thiserror::Error;

/// Errors raised by the field kernel and the scans built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{what}: size {size} exceeds the limit {limit}")]
    Size { what: String, size: u128, limit: u128 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("operands belong to different fields: {left} and {right}")]
    MixedOwners { left: String, right: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_size(&self) -> bool {
        matches!(self, Error::Size { .. })
    }
}

/// Upper bound on the number of items an exhaustive scan may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 28);

    pub fn check(&self, what: &str, size: u128) -> Result<()> {
        if size > self.0 {
            return Err(Error::Size {
                what: what.to_string(),
                size,
                limit: self.0,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
