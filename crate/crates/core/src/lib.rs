//! Desk-scale verification machinery for Goldbach-type statements.
//!
//! The crate is organised bottom-up:
//!
//! * [`prime`] builds segmented bit-array prime tables and answers primality
//!   queries, falling back to a deterministic Miller–Rabin test outside the
//!   sieved range. It also classifies primes mod 4 and takes residue censuses.
//! * [`partition`] enumerates Goldbach partitions of an even number and the
//!   equivalent midpoint decompositions `n = (P + I) + (P - I)`.
//! * [`conjecture`] searches witnesses built from primes of the form `4m ± 1`.
//! * [`progression`] checks prime occurrences in progressions `2tn ± I`.
//!
//! Searches that are expected to succeed return an [`Outcome`]; a failed
//! search is never a silent empty value but an [`Anomaly`] record.

pub mod anomaly;
pub mod conjecture;
pub mod error;
pub mod partition;
pub mod prime;
pub mod progression;

pub use anomaly::{Anomaly, AnomalyKind, Outcome};
pub use error::{Error, Result};
pub use prime::{
    classify_mod4, is_prime, residue_census, sieve_range, CensusRow, PrimeTable, ResidueClass,
    SieveConfig,
};
