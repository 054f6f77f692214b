use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid interval: lo {lo} > hi {hi}")]
    InvalidInterval { lo: u64, hi: u64 },

    #[error("range of {len} integers exceeds the sieve budget of {budget}")]
    RangeTooLarge { len: u64, budget: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} must be even, got {value}")]
    ExpectedEven { what: &'static str, value: u64 },

    #[error("{what} must be odd, got {value}")]
    ExpectedOdd { what: &'static str, value: u64 },

    #[error("{what} must be at least {min}, got {value}")]
    BelowMinimum {
        what: &'static str,
        value: u64,
        min: u64,
    },

    #[error("{what} = {value} violates bound {bound}")]
    OutOfBound {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("form {form} = {value} is not prime")]
    FormNotPrime { form: &'static str, value: u64 },
}

pub(crate) fn ensure_even(what: &'static str, value: u64) -> Result<()> {
    if value.is_multiple_of(2) {
        Ok(())
    } else {
        Err(Error::ExpectedEven { what, value })
    }
}

pub(crate) fn ensure_odd(what: &'static str, value: u64) -> Result<()> {
    if value % 2 == 1 {
        Ok(())
    } else {
        Err(Error::ExpectedOdd { what, value })
    }
}

pub(crate) fn ensure_at_least(what: &'static str, value: u64, min: u64) -> Result<()> {
    if value >= min {
        Ok(())
    } else {
        Err(Error::BelowMinimum { what, value, min })
    }
}
