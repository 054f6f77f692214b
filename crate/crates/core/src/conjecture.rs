//! Witness searches over primes of the form `4m ± 1`.
//!
//! A *mixed* witness pairs `4m + 1` with `4n - 1` and sums to `4(m + n)`, an
//! even-midpoint target. A *matched* witness uses the same sign twice and sums
//! to `2(2(m + n) ± 1)`, an odd-midpoint target. Both indices are strictly
//! positive, so 3 only ever enters as `4·1 - 1` and 5 as `4·1 + 1`.

use serde::{Deserialize, Serialize};

use crate::anomaly::{Anomaly, AnomalyKind, Outcome};
use crate::error::{ensure_at_least, ensure_odd, Error, Result};
use crate::partition::{gcd, MidpointWitness};
use crate::prime::PrimeTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `4k + 1` or `4k - 1`; `k` must be positive.
    pub fn form(self, k: u64) -> u64 {
        match self {
            Sign::Plus => 4 * k + 1,
            Sign::Minus => 4 * k - 1,
        }
    }

    fn label(self, var: char) -> &'static str {
        match (self, var) {
            (Sign::Plus, 'm') => "4m+1",
            (Sign::Minus, 'm') => "4m-1",
            (Sign::Plus, _) => "4n+1",
            (Sign::Minus, _) => "4n-1",
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("sign must be +1 or -1, got {v}")),
        }
    }
}

/// Primes `p1 = 4m + sign1` and `p2 = 4n + sign2` with `m + n = level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormWitness {
    pub level: u64,
    pub m: u64,
    pub n: u64,
    pub sign1: Sign,
    pub sign2: Sign,
    pub p1: u64,
    pub p2: u64,
}

impl FormWitness {
    fn new(m: u64, n: u64, sign1: Sign, sign2: Sign) -> Self {
        Self {
            level: m + n,
            m,
            n,
            sign1,
            sign2,
            p1: sign1.form(m),
            p2: sign2.form(n),
        }
    }

    pub fn target(&self) -> u64 {
        self.p1 + self.p2
    }

    pub fn midpoint(&self) -> u64 {
        self.target() / 2
    }

    pub fn is_mixed(&self) -> bool {
        self.sign1 == Sign::Plus && self.sign2 == Sign::Minus
    }

    pub fn is_matched(&self) -> bool {
        self.sign1 == self.sign2
    }

    /// Re-validates the witness from scratch.
    pub fn is_valid(&self, table: &PrimeTable) -> bool {
        self.m >= 1
            && self.n >= 1
            && self.m + self.n == self.level
            && self.p1 == self.sign1.form(self.m)
            && self.p2 == self.sign2.form(self.n)
            && table.is_prime(self.p1)
            && table.is_prime(self.p2)
            && (self.is_mixed() || self.is_matched())
    }

    /// The same decomposition seen from the midpoint of its target.
    pub fn to_midpoint(&self) -> MidpointWitness {
        let midpoint = self.midpoint();
        let (hi, lo) = if self.p1 >= self.p2 {
            (self.p1, self.p2)
        } else {
            (self.p2, self.p1)
        };
        MidpointWitness {
            n: self.target(),
            midpoint,
            offset: hi - midpoint,
            p1: hi,
            p2: lo,
        }
    }
}

fn check_form(table: &PrimeTable, sign: Sign, var: char, k: u64) -> Result<u64> {
    ensure_at_least(if var == 'm' { "m" } else { "n" }, k, 1)?;
    let value = sign.form(k);
    if table.is_prime(value) {
        Ok(value)
    } else {
        Err(Error::FormNotPrime {
            form: sign.label(var),
            value,
        })
    }
}

/// `(4m + 1) + (4n - 1) = 4(m + n)`, whose midpoint `2(m + n)` is even.
pub fn construct_even_target(table: &PrimeTable, m: u64, n: u64) -> Result<(u64, FormWitness)> {
    check_form(table, Sign::Plus, 'm', m)?;
    check_form(table, Sign::Minus, 'n', n)?;
    let w = FormWitness::new(m, n, Sign::Plus, Sign::Minus);
    Ok((w.target(), w))
}

/// `(4m ± 1) + (4n ± 1) = 2(2(m + n) ± 1)`, whose midpoint is odd.
pub fn construct_odd_target(
    table: &PrimeTable,
    m: u64,
    n: u64,
    sign: Sign,
) -> Result<(u64, FormWitness)> {
    check_form(table, sign, 'm', m)?;
    check_form(table, sign, 'n', n)?;
    let w = FormWitness::new(m, n, sign, sign);
    Ok((w.target(), w))
}

fn search(
    table: &PrimeTable,
    level: u64,
    sign1: Sign,
    sign2: Sign,
) -> impl Iterator<Item = FormWitness> + '_ {
    (1..level)
        .map(move |m| FormWitness::new(m, level - m, sign1, sign2))
        .filter(|w| table.is_prime(w.p1) && table.is_prime(w.p2))
}

/// Every mixed witness at `level`, ascending by `m`.
pub fn mixed_witnesses(table: &PrimeTable, level: u64) -> Vec<FormWitness> {
    search(table, level, Sign::Plus, Sign::Minus).collect()
}

/// Every matched witness with the given sign at `level`, ascending by `m`.
pub fn matched_witnesses(table: &PrimeTable, level: u64, sign: Sign) -> Vec<FormWitness> {
    search(table, level, sign, sign).collect()
}

/// Mixed witness with the smallest `m` such that `m + n = l`.
pub fn conjecture2_witness(table: &PrimeTable, l: u64) -> Result<Outcome<FormWitness>> {
    ensure_at_least("l", l, 2)?;
    Ok(match search(table, l, Sign::Plus, Sign::Minus).next() {
        Some(w) => Outcome::Witness(w),
        None => Outcome::anomaly(
            Anomaly::new(
                AnomalyKind::MixedFormMissing,
                [1, l as i128 - 1],
                format!("no m in [1, {}] with 4m+1 and 4(l-m)-1 prime", l - 1),
            )
            .with_input("l", l),
        ),
    })
}

/// Matched witness whose target is `2 * target_i`.
///
/// The plus branch runs at level `(I - 1) / 2` and is tried first; the minus
/// branch runs at level `(I + 1) / 2`. Within a branch the smallest `m` wins.
pub fn conjecture3_witness(table: &PrimeTable, target_i: u64) -> Result<Outcome<FormWitness>> {
    ensure_odd("target_i", target_i)?;
    ensure_at_least("target_i", target_i, 5)?;
    let plus_level = (target_i - 1) / 2;
    let minus_level = target_i.div_ceil(2);
    let found = search(table, plus_level, Sign::Plus, Sign::Plus)
        .next()
        .or_else(|| search(table, minus_level, Sign::Minus, Sign::Minus).next());
    Ok(match found {
        Some(w) => Outcome::Witness(w),
        None => Outcome::anomaly(
            Anomaly::new(
                AnomalyKind::MatchedTargetMissing,
                [1, minus_level as i128 - 1],
                format!("no matched pair at plus level {plus_level} or minus level {minus_level}"),
            )
            .with_input("target_i", target_i),
        ),
    })
}

/// Matched witness at `level` itself: plus sign first, then minus.
pub fn matched_at_level(table: &PrimeTable, level: u64) -> Option<FormWitness> {
    search(table, level, Sign::Plus, Sign::Plus)
        .next()
        .or_else(|| search(table, level, Sign::Minus, Sign::Minus).next())
}

/// Both halves required at a level: one mixed and one matched witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelPair {
    pub mixed: FormWitness,
    pub matched: FormWitness,
}

pub fn conjecture4_verify(table: &PrimeTable, l: u64) -> Result<Outcome<LevelPair>> {
    ensure_at_least("l", l, 2)?;
    let mixed = search(table, l, Sign::Plus, Sign::Minus).next();
    let matched = matched_at_level(table, l);
    Ok(match (mixed, matched) {
        (Some(mixed), Some(matched)) => Outcome::Witness(LevelPair { mixed, matched }),
        (mixed, matched) => {
            let (kind, detail) = match (mixed.is_some(), matched.is_some()) {
                (false, false) => (
                    AnomalyKind::MixedFormMissing,
                    "mixed and matched halves both missing",
                ),
                (false, true) => (AnomalyKind::MixedFormMissing, "mixed half missing"),
                _ => (AnomalyKind::MatchedLevelMissing, "matched half missing"),
            };
            Outcome::anomaly(
                Anomaly::new(kind, [1, l as i128 - 1], detail)
                    .with_input("l", l)
                    .with_input("mixed_found", mixed.is_some() as i64)
                    .with_input("matched_found", matched.is_some() as i64),
            )
        }
    })
}

/// Outcome of one of the eight algebraic properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub property: u8,
    pub tuples: u64,
    pub violations: u64,
    /// First few violating tuples, in the order `(m, n, l|I|P, k)`.
    pub examples: Vec<[i64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub bound: u64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violations == 0)
    }

    pub fn violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }
}

const MAX_EXAMPLES: usize = 8;

struct Tally {
    check: IdentityCheck,
}

impl Tally {
    fn new(property: u8) -> Self {
        Self {
            check: IdentityCheck {
                property,
                tuples: 0,
                violations: 0,
                examples: Vec::new(),
            },
        }
    }

    fn record(&mut self, holds: bool, tuple: [i64; 4]) {
        self.check.tuples += 1;
        if !holds {
            self.check.violations += 1;
            if self.check.examples.len() < MAX_EXAMPLES {
                self.check.examples.push(tuple);
            }
        }
    }
}

/// Checks the eight sum/form identities for every positive index up to `bound`.
///
/// Properties 1–3 range over all `(m, n, l, k)`. Properties 4 and 5 range
/// over `(m, n)` and a free `I` or `P` in `[1, 4·bound + 2]`. Properties 6–8
/// take `m >= n`; property 8 needs both forms prime and asserts the midpoint
/// and offset are coprime.
pub fn identity_suite(table: &PrimeTable, bound: u64) -> IdentityReport {
    let b = bound as i64;
    let free = 4 * b + 2;
    let mut tallies: Vec<Tally> = (1..=8).map(Tally::new).collect();

    for m in 1..=b {
        for n in 1..=b {
            for l in 1..=b {
                for k in 1..=b {
                    let t = [m, n, l, k];
                    tallies[0].record(
                        (l + k == m + n + 1)
                            == ((4 * m + 1) + (4 * n + 1) == (4 * l - 1) + (4 * k - 1)),
                        t,
                    );
                    let mixed = (4 * m + 1) + (4 * n - 1);
                    tallies[1].record(
                        (l + k == m + n)
                            == (mixed == (4 * l + 1) + (4 * k - 1)
                                && mixed == (4 * l - 1) + (4 * k + 1)),
                        t,
                    );
                    tallies[2].record(
                        (l + k == m + n)
                            == ((4 * m + 1) + (4 * n + 1) == (4 * l + 1) + (4 * k + 1)),
                        t,
                    );
                }
            }
            for x in 1..=free {
                tallies[3].record(
                    (2 * x == 4 * (m + n) + 2) == (x == 2 * (m + n) + 1),
                    [m, n, x, 0],
                );
                tallies[4].record((2 * x == 4 * (m + n)) == (x == 2 * (m + n)), [m, n, x, 0]);
            }
            if m < n {
                continue;
            }
            let even_p = 2 * (m - n);
            let odd_i = 2 * (m - n) + 1;
            for x in 1..=free {
                tallies[5].record(
                    (x == 2 * (m + n) + 1) == (x + even_p == 4 * m + 1 && x - even_p == 4 * n + 1),
                    [m, n, x, even_p],
                );
                tallies[6].record(
                    (x == 2 * (m + n)) == (x + odd_i == 4 * m + 1 && x - odd_i == 4 * n - 1),
                    [m, n, x, odd_i],
                );
            }
            let (um, un) = (m as u64, n as u64);
            let p1 = 4 * um + 1;
            if m > n && table.is_prime(p1) && table.is_prime(4 * un + 1) {
                let (p, i) = (2 * (um - un), 2 * (um + un) + 1);
                tallies[7].record(gcd(p, i) == 1, [m, n, i as i64, p as i64]);
            }
            if table.is_prime(p1) && table.is_prime(4 * un - 1) {
                let (p, i) = (2 * (um + un), 2 * (um - un) + 1);
                tallies[7].record(gcd(p, i) == 1, [m, n, p as i64, i as i64]);
            }
        }
    }
    IdentityReport {
        bound,
        checks: tallies.into_iter().map(|t| t.check).collect(),
    }
}
