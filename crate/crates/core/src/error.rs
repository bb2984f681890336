use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("assignment has no value for atom p{0}")]
    MissingAtom(u32),

    #[error("capacity exceeded: {what} is {requested}, limit {limit}")]
    Capacity {
        what: &'static str,
        requested: String,
        limit: String,
    },

    #[error("{what} out of range: {value} not in {range}")]
    OutOfRange {
        what: &'static str,
        value: String,
        range: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A construction has run out of room: a saturated tower or a heuristic
    /// that already explores every row.
    #[error("exhausted: {0}")]
    Exhausted(String),
}

impl Error {
    pub(crate) fn capacity(
        what: &'static str,
        requested: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::Capacity {
            what,
            requested: requested.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn out_of_range(
        what: &'static str,
        value: impl ToString,
        range: impl ToString,
    ) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
            range: range.to_string(),
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
