//! Primes in progressions `2tn ± I` and the offset searches built on them.

use serde::{Deserialize, Serialize};

use crate::anomaly::{Anomaly, AnomalyKind, Outcome};
use crate::conjecture::Sign;
use crate::error::{ensure_at_least, ensure_even, ensure_odd, Error, Result};
use crate::partition::gcd;
use crate::prime::PrimeTable;

/// The progression `n ↦ 2tn + direction·offset` with odd `offset < 2t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProgressionSpec {
    pub t: u64,
    pub offset: u64,
    pub direction: Sign,
}

impl ProgressionSpec {
    pub fn new(t: u64, offset: u64, direction: Sign) -> Result<Self> {
        ensure_at_least("t", t, 1)?;
        ensure_odd("offset", offset)?;
        if offset >= 2 * t {
            return Err(Error::OutOfBound {
                what: "offset",
                value: offset,
                bound: 2 * t,
            });
        }
        Ok(Self {
            t,
            offset,
            direction,
        })
    }

    pub fn modulus(&self) -> u64 {
        2 * self.t
    }

    /// Term at `n`; `None` on overflow or when the term would be negative.
    pub fn value(&self, n: u64) -> Option<u64> {
        let base = self.modulus().checked_mul(n)?;
        match self.direction {
            Sign::Plus => base.checked_add(self.offset),
            Sign::Minus => base.checked_sub(self.offset),
        }
    }

    /// Every term shares the factor `gcd(2t, offset) > 1`, so at most one
    /// term can be prime.
    pub fn is_degenerate(&self) -> bool {
        gcd(self.modulus(), self.offset) != 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionReport {
    pub spec: ProgressionSpec,
    pub n_max: u64,
    /// `(n, value)` pairs with `value` prime, ascending in `n`.
    pub hits: Vec<(u64, u64)>,
    pub degenerate: bool,
}

/// Prime terms of the progression for `n` in `[1, n_max]`.
pub fn progression_primes(
    table: &PrimeTable,
    spec: ProgressionSpec,
    n_max: u64,
) -> Result<ProgressionReport> {
    ensure_at_least("n_max", n_max, 1)?;
    let hits = (1..=n_max)
        .map_while(|n| spec.value(n).map(|v| (n, v)))
        .filter(|&(_, v)| table.is_prime(v))
        .collect();
    Ok(ProgressionReport {
        spec,
        n_max,
        hits,
        degenerate: spec.is_degenerate(),
    })
}

/// `value = 2tn + direction·offset` is prime, with odd `offset < 2tn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OffsetWitness {
    pub t: u64,
    pub n: u64,
    pub offset: u64,
    pub direction: Sign,
    pub value: u64,
}

fn offset_candidates(
    table: &PrimeTable,
    t: u64,
    n: u64,
    direction: Sign,
) -> impl Iterator<Item = OffsetWitness> + '_ {
    let base = 2 * t * n;
    (1..base).step_by(2).filter_map(move |offset| {
        let value = match direction {
            Sign::Plus => base + offset,
            Sign::Minus => base - offset,
        };
        table.is_prime(value).then_some(OffsetWitness {
            t,
            n,
            offset,
            direction,
            value,
        })
    })
}

fn check_offset_args(t: u64, n: u64) -> Result<()> {
    ensure_at_least("t", t, 1)?;
    ensure_at_least("n", n, 2)
}

/// All odd offsets `I < 2tn` with `2tn ± I` prime, ascending.
pub fn offset_witnesses(
    table: &PrimeTable,
    t: u64,
    n: u64,
    direction: Sign,
) -> Result<Vec<OffsetWitness>> {
    check_offset_args(t, n)?;
    Ok(offset_candidates(table, t, n, direction).collect())
}

/// Smallest offset witness, plus whether it already lies in `[1, 2t - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetSearch {
    pub first: OffsetWitness,
    pub within_modulus: bool,
}

pub fn first_offset_witness(
    table: &PrimeTable,
    t: u64,
    n: u64,
    direction: Sign,
) -> Result<Outcome<OffsetSearch>> {
    check_offset_args(t, n)?;
    Ok(match offset_candidates(table, t, n, direction).next() {
        Some(first) => Outcome::Witness(OffsetSearch {
            within_modulus: first.offset < 2 * t,
            first,
        }),
        None => Outcome::anomaly(
            Anomaly::new(
                AnomalyKind::OffsetWitnessMissing,
                [1, 2 * t as i128 * n as i128 - 1],
                format!(
                    "no odd I < {} with 2tn {} I prime",
                    2 * t * n,
                    match direction {
                        Sign::Plus => "+",
                        Sign::Minus => "-",
                    }
                ),
            )
            .with_input("t", t)
            .with_input("n", n)
            .with_input("direction", direction.value()),
        ),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CollapseVerdict {
    /// `gcd(2n, I) = 1` or `2n - I` is composite.
    Vacuous,
    /// `gcd(2n, I) = g > 1` and the prime `2n - I` equals `g`.
    Confirmed { g: u64, value: u64 },
    /// `gcd(2n, I) = g > 1` and `2n - I` is a prime other than `g`.
    Violation { g: u64, value: u64 },
}

/// If `gcd(2n, I) = g > 1` and `2n - I` is prime, then `2n - I = g`.
pub fn gcd_collapse_check(table: &PrimeTable, n: u64, offset: u64) -> Result<CollapseVerdict> {
    ensure_at_least("n", n, 1)?;
    ensure_odd("offset", offset)?;
    if offset >= 2 * n {
        return Err(Error::OutOfBound {
            what: "offset",
            value: offset,
            bound: 2 * n,
        });
    }
    let g = gcd(2 * n, offset);
    let value = 2 * n - offset;
    Ok(if g == 1 || !table.is_prime(value) {
        CollapseVerdict::Vacuous
    } else if value == g {
        CollapseVerdict::Confirmed { g, value }
    } else {
        CollapseVerdict::Violation { g, value }
    })
}

/// [`gcd_collapse_check`] with a violation turned into an anomaly record.
pub fn audit_collapse(table: &PrimeTable, n: u64, offset: u64) -> Result<Outcome<CollapseVerdict>> {
    let verdict = gcd_collapse_check(table, n, offset)?;
    Ok(match verdict {
        CollapseVerdict::Violation { g, value } => Outcome::anomaly(
            Anomaly::new(
                AnomalyKind::CollapseViolation,
                [offset as i128, offset as i128],
                format!("gcd(2n, I) = {g} but prime 2n - I = {value}"),
            )
            .with_input("n", n)
            .with_input("offset", offset),
        ),
        v => Outcome::Witness(v),
    })
}

/// Smallest odd `I < 2n` coprime to `2n` with `2n - I` prime.
pub fn coprime_witness(table: &PrimeTable, n: u64) -> Result<Outcome<OffsetWitness>> {
    ensure_at_least("n", n, 2)?;
    let base = 2 * n;
    let found = (1..base)
        .step_by(2)
        .find(|&i| gcd(base, i) == 1 && table.is_prime(base - i));
    Ok(match found {
        Some(offset) => Outcome::Witness(OffsetWitness {
            t: 1,
            n,
            offset,
            direction: Sign::Minus,
            value: base - offset,
        }),
        None => Outcome::anomaly(
            Anomaly::new(
                AnomalyKind::CoprimeWitnessMissing,
                [1, base as i128 - 1],
                format!("no odd I < {base} coprime to {base} with {base} - I prime"),
            )
            .with_input("n", n),
        ),
    })
}

/// Rewrites `I·n + direction·P` over odd `n = 2m + 1` as `2I·m + (I ± P)`.
///
/// The result always runs in the `+` direction with modulus `2I` and offset
/// `I ± P`, which is odd and below `2I` because `P < I`.
pub fn reduce_odd_progression(i: u64, p: u64, direction: Sign) -> Result<ProgressionSpec> {
    ensure_odd("I", i)?;
    ensure_even("P", p)?;
    if p >= i {
        return Err(Error::OutOfBound {
            what: "P",
            value: p,
            bound: i,
        });
    }
    let offset = match direction {
        Sign::Plus => i + p,
        Sign::Minus => i - p,
    };
    let spec = ProgressionSpec::new(i, offset, Sign::Plus)?;
    debug_assert!(spec.offset % 2 == 1 && spec.offset < spec.modulus());
    Ok(spec)
}

/// `In ± P` both prime, `P` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddPair {
    pub i: u64,
    pub n: u64,
    pub p: u64,
    pub p1: u64,
    pub p2: u64,
}

fn check_odd_pair_args(table: &PrimeTable, i: u64, n: u64) -> Result<u64> {
    ensure_odd("I", i)?;
    ensure_odd("n", n)?;
    let product = i.checked_mul(n).ok_or(Error::OutOfBound {
        what: "I·n",
        value: i,
        bound: u64::MAX / n,
    })?;
    if product < 5 && !table.is_prime(product) {
        return Err(Error::BelowMinimum {
            what: "I·n",
            value: product,
            min: 5,
        });
    }
    Ok(product)
}

fn odd_pair_candidates(
    table: &PrimeTable,
    i: u64,
    n: u64,
    product: u64,
) -> impl Iterator<Item = OddPair> + '_ {
    let zero = table.is_prime(product).then_some(OddPair {
        i,
        n,
        p: 0,
        p1: product,
        p2: product,
    });
    let positive = (2..product.saturating_sub(1))
        .step_by(2)
        .filter(move |&p| {
            gcd(product, p) == 1 && table.is_prime(product - p) && table.is_prime(product + p)
        })
        .map(move |p| OddPair {
            i,
            n,
            p,
            p1: product + p,
            p2: product - p,
        });
    zero.into_iter().chain(positive)
}

/// Every even `P < In` with `In ± P` prime (and `gcd(In, P) = 1` for `P > 0`).
pub fn odd_pair_witnesses(table: &PrimeTable, i: u64, n: u64) -> Result<Vec<OddPair>> {
    let product = check_odd_pair_args(table, i, n)?;
    Ok(odd_pair_candidates(table, i, n, product).collect())
}

/// Smallest even `P` for [`odd_pair_witnesses`], or an anomaly.
pub fn odd_pair_witness(table: &PrimeTable, i: u64, n: u64) -> Result<Outcome<OddPair>> {
    let product = check_odd_pair_args(table, i, n)?;
    Ok(match odd_pair_candidates(table, i, n, product).next() {
        Some(w) => Outcome::Witness(w),
        None => Outcome::anomaly(
            Anomaly::new(
                AnomalyKind::OddPairMissing,
                [0, product as i128 - 2],
                format!("no even P < {product} with {product} ± P both prime"),
            )
            .with_input("I", i)
            .with_input("n", n),
        ),
    })
}
