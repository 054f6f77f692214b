//! Goldbach partitions and midpoint decompositions of even numbers.
//!
//! An even `n >= 4` with midpoint `P = n / 2` splits as
//! `n = (P + I) + (P - I)`; a midpoint witness is an offset `I` for which
//! both parts are prime. Witnesses and partitions are in bijection through
//! `I = p2 - P` where `p2` is the larger prime.

use serde::{Deserialize, Serialize};

use crate::anomaly::{Anomaly, AnomalyKind, Outcome};
use crate::error::{ensure_at_least, ensure_even, ensure_odd, Error, Result};
use crate::prime::PrimeTable;

/// `n = p1 + p2` with `p1 <= p2`, both prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoldbachPartition {
    pub n: u64,
    pub p1: u64,
    pub p2: u64,
}

/// `n = (midpoint + offset) + (midpoint - offset)` with both parts prime.
///
/// `p1` is the upper part and `p2` the lower one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MidpointWitness {
    pub n: u64,
    pub midpoint: u64,
    pub offset: u64,
    pub p1: u64,
    pub p2: u64,
}

impl MidpointWitness {
    /// Builds the witness for `offset`, or `None` if either part is not prime
    /// or the offset leaves `[0, midpoint)`.
    pub fn at_offset(table: &PrimeTable, n: u64, offset: u64) -> Option<Self> {
        let midpoint = n / 2;
        if !n.is_multiple_of(2) || offset >= midpoint.max(1) {
            return None;
        }
        let (p1, p2) = (midpoint + offset, midpoint - offset);
        (table.is_prime(p1) && table.is_prime(p2)).then_some(Self {
            n,
            midpoint,
            offset,
            p1,
            p2,
        })
    }

    /// Re-checks every invariant of the decomposition.
    pub fn is_valid(&self, table: &PrimeTable) -> bool {
        let m = self.midpoint;
        let i = self.offset;
        let mut ok = self.n == 2 * m
            && i < m
            && self.p1 == m + i
            && self.p2 == m - i
            && self.p1 + self.p2 == self.n
            && table.is_prime(self.p1)
            && table.is_prime(self.p2)
            && ((i == 0) == (self.p1 == self.p2));
        if i > 0 {
            ok &= i % 2 != m % 2 && gcd(m, i) == 1;
        }
        ok
    }
}

impl From<MidpointWitness> for GoldbachPartition {
    fn from(w: MidpointWitness) -> Self {
        GoldbachPartition {
            n: w.n,
            p1: w.p2,
            p2: w.p1,
        }
    }
}

impl From<GoldbachPartition> for MidpointWitness {
    fn from(p: GoldbachPartition) -> Self {
        let midpoint = p.n / 2;
        MidpointWitness {
            n: p.n,
            midpoint,
            offset: p.p2 - midpoint,
            p1: p.p2,
            p2: p.p1,
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_target(n: u64) -> Result<()> {
    ensure_even("n", n)?;
    ensure_at_least("n", n, 4)
}

/// Ascending primes `p <= n/2` with `n - p` prime.
fn lower_parts(table: &PrimeTable, n: u64) -> Box<dyn Iterator<Item = u64> + '_> {
    let half = n / 2;
    match table.mirror(2, n - 2, half - 1) {
        Some(hits) => Box::new(hits.map(|k| 2 + k)),
        None => Box::new((2..=half).filter(move |&p| table.is_prime(p) && table.is_prime(n - p))),
    }
}

/// Ascending offsets `I < n/2` with `n/2 ± I` both prime.
fn offsets(table: &PrimeTable, n: u64) -> Box<dyn Iterator<Item = u64> + '_> {
    let mid = n / 2;
    match table.mirror(mid, mid, mid - 1) {
        Some(hits) => Box::new(hits),
        None => {
            // Past I = 0 only offsets of the opposite parity can give two odd parts.
            let rest = (1 + mid % 2..mid - 1).step_by(2);
            Box::new(
                std::iter::once(0)
                    .chain(rest)
                    .filter(move |&i| table.is_prime(mid + i) && table.is_prime(mid - i)),
            )
        }
    }
}

/// All Goldbach partitions of `n`, ascending by the smaller prime.
///
/// An empty list is a counterexample; [`verify_goldbach`] turns it into an
/// anomaly record.
pub fn partitions(table: &PrimeTable, n: u64) -> Result<Vec<GoldbachPartition>> {
    check_target(n)?;
    Ok(lower_parts(table, n)
        .map(|p1| GoldbachPartition { n, p1, p2: n - p1 })
        .collect())
}

/// All midpoint witnesses of `n`, ascending by offset.
pub fn midpoint_witnesses(table: &PrimeTable, n: u64) -> Result<Vec<MidpointWitness>> {
    check_target(n)?;
    let midpoint = n / 2;
    Ok(offsets(table, n)
        .map(|offset| MidpointWitness {
            n,
            midpoint,
            offset,
            p1: midpoint + offset,
            p2: midpoint - offset,
        })
        .collect())
}

pub fn is_goldbach(table: &PrimeTable, n: u64) -> Result<bool> {
    check_target(n)?;
    Ok(lower_parts(table, n).next().is_some())
}

/// The partition with the smallest `p1`, or a counterexample anomaly.
pub fn verify_goldbach(table: &PrimeTable, n: u64) -> Result<Outcome<GoldbachPartition>> {
    check_target(n)?;
    Ok(match lower_parts(table, n).next() {
        Some(p1) => Outcome::Witness(GoldbachPartition { n, p1, p2: n - p1 }),
        None => Outcome::anomaly(
            Anomaly::new(
                AnomalyKind::GoldbachCounterexample,
                [2, (n / 2) as i128],
                format!("no prime p <= {} with {n} - p prime", n / 2),
            )
            .with_input("n", n),
        ),
    })
}

/// The most balanced midpoint witness (smallest offset), or an anomaly.
pub fn closest_midpoint(table: &PrimeTable, n: u64) -> Result<Outcome<MidpointWitness>> {
    check_target(n)?;
    let midpoint = n / 2;
    Ok(match offsets(table, n).next() {
        Some(offset) => Outcome::Witness(MidpointWitness {
            n,
            midpoint,
            offset,
            p1: midpoint + offset,
            p2: midpoint - offset,
        }),
        None => Outcome::anomaly(
            Anomaly::new(
                AnomalyKind::GoldbachCounterexample,
                [0, midpoint as i128 - 2],
                format!("no offset I < {midpoint} with {midpoint} ± I both prime"),
            )
            .with_input("n", n),
        ),
    })
}

/// Half-sum and half-difference of two odd numbers `a >= c`.
pub fn parity_split(a: u64, c: u64) -> Result<(u64, u64)> {
    ensure_odd("a", a)?;
    ensure_odd("c", c)?;
    if a < c {
        return Err(Error::OutOfBound {
            what: "c",
            value: c,
            bound: a,
        });
    }
    let half_diff = (a - c) / 2;
    Ok((c + half_diff, half_diff))
}
