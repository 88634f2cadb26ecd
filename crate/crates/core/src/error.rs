use thiserror::Error;

/// Errors raised by bound evaluations and the channel simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("objective is non-finite on every grid point (last evaluated at {at})")]
    Evaluation { at: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("decoder failed: every codeword has zero likelihood")]
    Decode,

    #[error("gamma draws underflowed to zero twice in a row")]
    DegenerateSample,

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks `ok` and otherwise reports `value` as a domain violation.
pub(crate) fn ensure(
    ok: bool,
    name: &'static str,
    value: f64,
    domain: &'static str,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            domain,
        })
    }
}
