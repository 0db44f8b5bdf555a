use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input is outside the domain of the operation (bad residue, bad index,
    /// mismatched ambient space, non-prime modulus).
    #[error("domain error: {0}")]
    Domain(String),

    /// A desk-scale cap would be exceeded.
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    /// `z` lies in the subspace the extension must vanish on, so no linear
    /// form with `l(z) = 1` exists.
    #[error("no linear extension: target lies in the vanishing subspace")]
    NoExtension,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
