use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const DEFAULT_CHUNK: u64 = 1 << 16;
pub const DEFAULT_T_MAX: u64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    /// Even `n`: at least one Goldbach partition.
    Goldbach,
    /// Even `n`: at least one midpoint witness.
    Midpoint,
    /// Level `l`: a mixed `4m+1`, `4n-1` witness.
    C2,
    /// Odd target `I`: a matched witness summing to `2I`.
    C3,
    /// Level `l`: both a mixed and a matched witness.
    C4,
    /// `n`: offset witnesses for every `t <= t_max`, both directions.
    T5,
    /// `n`: no gcd-collapse violation for any odd offset below `2n`.
    T6,
    /// `n`: a coprime offset `I` with `2n - I` prime.
    T7,
    /// Each prime in range: table and deterministic test agree on its class.
    Census,
}

impl Task {
    pub const ALL: [Task; 9] = [
        Task::Goldbach,
        Task::Midpoint,
        Task::C2,
        Task::C3,
        Task::C4,
        Task::T5,
        Task::T6,
        Task::T7,
        Task::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Goldbach => "goldbach",
            Task::Midpoint => "midpoint",
            Task::C2 => "c2",
            Task::C3 => "c3",
            Task::C4 => "c4",
            Task::T5 => "t5",
            Task::T6 => "t6",
            Task::T7 => "t7",
            Task::Census => "census",
        }
    }

    /// Smallest admissible instance.
    pub fn floor(self) -> u64 {
        match self {
            Task::Goldbach | Task::Midpoint => 4,
            Task::C2 | Task::C4 | Task::T5 | Task::T7 => 2,
            Task::C3 => 5,
            Task::T6 => 1,
            Task::Census => 0,
        }
    }

    /// Instance parity step: evens for goldbach/midpoint, odds for c3.
    pub(crate) fn stride(self) -> u64 {
        match self {
            Task::Goldbach | Task::Midpoint | Task::C3 => 2,
            _ => 1,
        }
    }

    /// Instances of `[a, b]` for the stepped tasks; census counts primes instead.
    pub(crate) fn instances(self, a: u64, b: u64) -> impl Iterator<Item = u64> {
        let stride = self.stride();
        let start = if stride == 2 && a % 2 != self.floor() % 2 {
            a + 1
        } else {
            a
        };
        (start..=b).step_by(stride as usize)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown task {s:?}"))
    }
}

fn one() -> usize {
    1
}

fn default_t_max() -> u64 {
    DEFAULT_T_MAX
}

/// A range verification request over the inclusive range `[lo, hi]`.
///
/// `workers` only affects scheduling and is left out of serialised reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJob {
    pub task: Task,
    pub lo: u64,
    pub hi: u64,
    pub chunk: u64,
    #[serde(skip, default = "one")]
    pub workers: usize,
    /// Largest `t` checked per instance by the `t5` task.
    #[serde(default = "default_t_max")]
    pub t_max: u64,
}

impl VerifyJob {
    pub fn new(task: Task, lo: u64, hi: u64) -> Self {
        Self {
            task,
            lo,
            hi,
            chunk: DEFAULT_CHUNK,
            workers: 1,
            t_max: DEFAULT_T_MAX,
        }
    }

    pub fn with_chunk(mut self, chunk: u64) -> Self {
        self.chunk = chunk;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_t_max(mut self, t_max: u64) -> Self {
        self.t_max = t_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::InvalidJob(msg));
        if self.lo > self.hi {
            return bad(format!("lo {} > hi {}", self.lo, self.hi));
        }
        if self.chunk == 0 {
            return bad("chunk must be at least 1".into());
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        let floor = self.task.floor();
        if self.lo < floor {
            return bad(format!(
                "{} requires lo >= {floor}, got {}",
                self.task, self.lo
            ));
        }
        match self.task {
            Task::Goldbach | Task::Midpoint if !self.lo.is_multiple_of(2) => bad(format!(
                "{} requires an even lo, got {}",
                self.task, self.lo
            )),
            Task::C3 if self.lo % 2 != 1 => bad(format!("c3 requires an odd lo, got {}", self.lo)),
            Task::T5 if self.t_max == 0 => bad("t5 requires t_max >= 1".into()),
            _ => Ok(()),
        }
    }

    /// Same task, range, chunking and `t_max`.
    pub fn same_work(&self, other: &VerifyJob) -> bool {
        self.task == other.task
            && self.lo == other.lo
            && self.hi == other.hi
            && self.chunk == other.chunk
            && self.t_max == other.t_max
    }

    pub fn chunk_count(&self) -> u64 {
        (self.hi - self.lo) / self.chunk + 1
    }

    /// Inclusive bounds of chunk `index`.
    pub fn chunk_bounds(&self, index: u64) -> (u64, u64) {
        let a = self.lo + index * self.chunk;
        let b = a.saturating_add(self.chunk - 1).min(self.hi);
        (a, b)
    }

    /// Exclusive upper bound of the integers the task may test for primality.
    pub(crate) fn table_bound(&self) -> Option<u64> {
        let hi = self.hi;
        match self.task {
            Task::Goldbach | Task::Midpoint | Task::Census => hi.checked_add(1),
            Task::C2 | Task::C4 => hi.checked_mul(4)?.checked_add(2),
            Task::C3 | Task::T6 | Task::T7 => hi.checked_mul(2)?.checked_add(2),
            Task::T5 => hi.checked_mul(self.t_max)?.checked_mul(4)?.checked_add(1),
        }
    }
}
