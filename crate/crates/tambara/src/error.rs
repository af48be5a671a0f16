use alloc::string::String;
use core::fmt;

/// Errors shared across the workbench.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A multiplication table, action table, or similar input fails its axioms.
    Structure(String),
    /// A set claimed to be a subgroup is not one.
    NotASubgroup(String),
    /// Two objects that must coincide (codomain/domain, level, group) do not.
    Mismatch(String),
    /// An operation was asked of a ring that cannot enumerate its elements.
    NotEnumerable(String),
    /// A norm map that is not available (e.g. Burnside virtual norms when the
    /// ghost formula failed its oracle validation).
    UnsupportedNorm(String),
    /// A computed result contradicts an internal invariant.
    Inconsistency(String),
    /// A size guard or search cap was exceeded.
    CapExceeded(String),
    /// A precondition on the inputs does not hold.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Structure(m) => write!(f, "structural error: {m}"),
            Error::NotASubgroup(m) => write!(f, "not a subgroup: {m}"),
            Error::Mismatch(m) => write!(f, "mismatch: {m}"),
            Error::NotEnumerable(m) => write!(f, "not enumerable: {m}"),
            Error::UnsupportedNorm(m) => write!(f, "unsupported norm: {m}"),
            Error::Inconsistency(m) => write!(f, "internal inconsistency: {m}"),
            Error::CapExceeded(m) => write!(f, "cap exceeded: {m}"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
