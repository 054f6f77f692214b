//! Prime generation, primality queries and residue-class bookkeeping.

mod miller_rabin;
mod sieve;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_at_least, Error, Result};

pub use miller_rabin::is_prime;
pub use sieve::{
    sieve_range, MirrorHits, PrimeTable, SieveConfig, DEFAULT_MAX_SEGMENTS, DEFAULT_SEGMENT_SIZE,
};

/// Class of a prime modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ResidueClass {
    Two,
    OneMod4,
    ThreeMod4,
}

impl ResidueClass {
    /// Class of a number already known to be prime.
    pub(crate) fn of_prime(p: u64) -> Self {
        match p % 4 {
            1 => ResidueClass::OneMod4,
            3 => ResidueClass::ThreeMod4,
            _ => ResidueClass::Two,
        }
    }
}

pub fn classify_mod4(p: u64) -> Result<ResidueClass> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(ResidueClass::of_prime(p))
}

/// Prime counts up to `limit`, split by residue mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub limit: u64,
    pub count_one: u64,
    pub count_three: u64,
    pub total: u64,
}

impl CensusRow {
    /// `count_one + count_three + 1 == total`, the `1` being the prime 2.
    pub fn is_consistent(&self) -> bool {
        self.limit >= 2 && self.count_one + self.count_three + 1 == self.total
    }

    /// `|count_one - count_three| / total`.
    pub fn imbalance(&self) -> f64 {
        self.count_one.abs_diff(self.count_three) as f64 / self.total as f64
    }
}

/// Per-class prime counts over an arbitrary interval.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub two: u64,
    pub one_mod_4: u64,
    pub three_mod_4: u64,
}

impl ClassCounts {
    pub fn total(&self) -> u64 {
        self.two + self.one_mod_4 + self.three_mod_4
    }

    pub fn add(&mut self, other: &ClassCounts) {
        self.two += other.two;
        self.one_mod_4 += other.one_mod_4;
        self.three_mod_4 += other.three_mod_4;
    }
}

impl PrimeTable {
    /// Class counts of the table primes in `[a, b]`.
    pub fn class_counts(&self, a: u64, b: u64) -> ClassCounts {
        ClassCounts {
            two: self.count_residue(a, b, 2),
            one_mod_4: self.count_residue(a, b, 1),
            three_mod_4: self.count_residue(a, b, 3),
        }
    }

    /// Census up to `limit`; the table must cover `[0, limit]`.
    pub fn census(&self, limit: u64) -> Result<CensusRow> {
        ensure_at_least("census limit", limit, 2)?;
        if !self.covers(0, limit) {
            return Err(Error::OutOfBound {
                what: "census limit",
                value: limit,
                bound: self.hi(),
            });
        }
        let c = self.class_counts(0, limit);
        Ok(CensusRow {
            limit,
            count_one: c.one_mod_4,
            count_three: c.three_mod_4,
            total: c.total(),
        })
    }
}

/// Exact counts of primes `<= limit` in each odd class mod 4.
pub fn residue_census(limit: u64) -> Result<CensusRow> {
    ensure_at_least("census limit", limit, 2)?;
    let hi = limit.checked_add(1).ok_or(Error::RangeTooLarge {
        len: limit,
        budget: SieveConfig::default().budget(),
    })?;
    sieve_range(0, hi)?.census(limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(classify_mod4(2), Ok(ResidueClass::Two));
        assert_eq!(classify_mod4(13), Ok(ResidueClass::OneMod4));
        assert_eq!(classify_mod4(19), Ok(ResidueClass::ThreeMod4));
        assert_eq!(classify_mod4(15), Err(Error::NotPrime(15)));
        assert_eq!(classify_mod4(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn small_censuses() {
        let row = residue_census(10).unwrap();
        assert_eq!((row.count_one, row.count_three, row.total), (1, 2, 4));
        let row = residue_census(2).unwrap();
        assert_eq!((row.count_one, row.count_three, row.total), (0, 0, 1));
        assert!(row.is_consistent());
        assert!(matches!(
            residue_census(1),
            Err(Error::BelowMinimum { min: 2, .. })
        ));
    }

    #[test]
    fn census_needs_covering_table() {
        let t = sieve_range(0, 50).unwrap();
        assert!(t.census(49).is_ok());
        assert!(t.census(50).is_err());
    }
}
