//! Structured records for searches that came back empty.
//!
//! Every operation whose success is predicted by a conjecture or theorem
//! returns an [`Outcome`]. A failed search carries the inputs, the range that
//! was scanned and the wall-clock time of detection so that downstream tools
//! can consume it without parsing log lines.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnomalyKind {
    /// An even number with no Goldbach partition.
    GoldbachCounterexample,
    /// A level with no mixed `4m+1`, `4n-1` witness.
    MixedFormMissing,
    /// An odd target with no matched witness in either sign branch.
    MatchedTargetMissing,
    /// A level with no matched witness (both signs equal, `a + b = l`).
    MatchedLevelMissing,
    /// No odd offset `I < 2tn` makes `2tn ± I` prime.
    OffsetWitnessMissing,
    /// `gcd(2n, I) = g > 1`, `2n - I` prime, but `2n - I != g`.
    CollapseViolation,
    /// No odd `I < 2n` coprime to `2n` with `2n - I` prime.
    CoprimeWitnessMissing,
    /// No even `P < In` with `In ± P` both prime.
    OddPairMissing,
    /// Residue class counts do not add up to the prime count.
    CensusMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnomalyInput {
    pub name: String,
    pub value: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub kind: AnomalyKind,
    pub inputs: Vec<AnomalyInput>,
    /// Inclusive bounds of the candidate range that was exhausted.
    pub scanned: [i128; 2],
    pub detail: String,
    /// Milliseconds since the Unix epoch; zero when timing is suppressed.
    pub detected_at_ms: u64,
}

impl Anomaly {
    pub fn new(kind: AnomalyKind, scanned: [i128; 2], detail: impl Into<String>) -> Self {
        let detected_at_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        Self {
            kind,
            inputs: Vec::new(),
            scanned,
            detail: detail.into(),
            detected_at_ms,
        }
    }

    pub fn with_input(mut self, name: &str, value: impl Into<i128>) -> Self {
        self.inputs.push(AnomalyInput {
            name: name.to_string(),
            value: value.into(),
        });
        self
    }

    pub fn input(&self, name: &str) -> Option<i128> {
        self.inputs.iter().find(|i| i.name == name).map(|i| i.value)
    }

    /// Drops the detection timestamp, for byte-stable serialisation.
    pub fn without_timing(mut self) -> Self {
        self.detected_at_ms = 0;
        self
    }
}

/// Result of a search that is expected to succeed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Witness(T),
    Anomaly(Box<Anomaly>),
}

impl<T> Outcome<T> {
    pub fn anomaly(a: Anomaly) -> Self {
        Outcome::Anomaly(Box::new(a))
    }

    pub fn witness(self) -> Option<T> {
        match self {
            Outcome::Witness(w) => Some(w),
            Outcome::Anomaly(_) => None,
        }
    }

    pub fn as_witness(&self) -> Option<&T> {
        match self {
            Outcome::Witness(w) => Some(w),
            Outcome::Anomaly(_) => None,
        }
    }

    pub fn as_anomaly(&self) -> Option<&Anomaly> {
        match self {
            Outcome::Witness(_) => None,
            Outcome::Anomaly(a) => Some(a),
        }
    }

    pub fn is_witness(&self) -> bool {
        matches!(self, Outcome::Witness(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Witness(w) => Outcome::Witness(f(w)),
            Outcome::Anomaly(a) => Outcome::Anomaly(a),
        }
    }

    /// Unwraps the witness, panicking with the anomaly detail otherwise.
    #[track_caller]
    pub fn expect_witness(self, msg: &str) -> T {
        match self {
            Outcome::Witness(w) => w,
            Outcome::Anomaly(a) => panic!("{msg}: {:?}: {}", a.kind, a.detail),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_kept_in_insertion_order() {
        let a = Anomaly::new(AnomalyKind::GoldbachCounterexample, [2, 50], "no partition")
            .with_input("n", 100u64)
            .with_input("direction", -1i64);
        assert_eq!(a.input("n"), Some(100));
        assert_eq!(a.input("direction"), Some(-1));
        assert_eq!(a.inputs[0].name, "n");
        assert!(a.detected_at_ms > 0);
        assert_eq!(a.without_timing().detected_at_ms, 0);
    }

    #[test]
    fn outcome_accessors() {
        let w: Outcome<u32> = Outcome::Witness(3);
        assert_eq!(w.as_witness(), Some(&3));
        assert!(w.as_anomaly().is_none());
        let a: Outcome<u32> =
            Outcome::anomaly(Anomaly::new(AnomalyKind::OddPairMissing, [0, 0], ""));
        assert!(!a.is_witness());
        assert_eq!(a.map(|x| x + 1).witness(), None);
    }
}
