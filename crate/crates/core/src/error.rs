use thiserror::Error;

use crate::element::Element;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("{element} is not a member of {set}")]
    NotMember { element: Element, set: String },
    #[error("malformed term {term}: {reason}")]
    Malformed { term: Element, reason: String },
    #[error("enumeration guard tripped: {what} exceeded the cap of {cap}")]
    Explosion { what: String, cap: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("law violated: {0}")]
    Law(String),
}

impl Error {
    pub(crate) fn malformed(term: &Element, reason: impl Into<String>) -> Self {
        Error::Malformed { term: term.clone(), reason: reason.into() }
    }

    pub(crate) fn not_member(element: &Element, set: impl Into<String>) -> Self {
        Error::NotMember { element: element.clone(), set: set.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Default cap on the size of any enumerated set.
pub const DEFAULT_CAP: usize = 100_000;

pub(crate) fn guard(what: &str, len: usize, cap: usize) -> Result<()> {
    if len > cap {
        Err(Error::Explosion { what: what.to_string(), cap })
    } else {
        Ok(())
    }
}
