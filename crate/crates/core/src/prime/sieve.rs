use rayon::prelude::*;

use super::miller_rabin;
use crate::error::{Error, Result};

/// Default number of integers covered by one sieve segment.
pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 20;
/// Default cap on the number of segments in a single table (2^32 integers).
pub const DEFAULT_MAX_SEGMENTS: u64 = 1 << 12;

// Windows shorter than sqrt(hi) / RATIO are filled by Miller–Rabin instead.
const DIRECT_FILL_MIN_ROOT: u64 = 1 << 20;
const DIRECT_FILL_RATIO: u64 = 16;

/// Segment geometry and memory budget for [`SieveConfig::sieve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Integers per segment; must be a positive multiple of 64.
    pub segment_size: u64,
    pub max_segments: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            segment_size: DEFAULT_SEGMENT_SIZE,
            max_segments: DEFAULT_MAX_SEGMENTS,
        }
    }
}

impl SieveConfig {
    pub fn with_segment_size(segment_size: u64) -> Self {
        Self {
            segment_size,
            ..Self::default()
        }
    }

    /// Largest `hi - lo` this configuration accepts.
    pub fn budget(&self) -> u64 {
        self.segment_size.saturating_mul(self.max_segments)
    }

    /// Sieves `[lo, hi)` segment by segment.
    ///
    /// Base primes up to `sqrt(hi - 1)` are generated once (themselves by a
    /// segmented sieve) and shared read-only by the segment workers. Each
    /// segment owns a disjoint run of words in the output table.
    pub fn sieve(&self, lo: u64, hi: u64) -> Result<PrimeTable> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        assert!(
            self.segment_size > 0 && self.segment_size.is_multiple_of(64),
            "segment size must be a positive multiple of 64"
        );
        let len = hi - lo;
        if len > self.budget() {
            return Err(Error::RangeTooLarge {
                len,
                budget: self.budget(),
            });
        }
        let root = hi.saturating_sub(1).isqrt();
        let mut words = vec![0u64; len.div_ceil(64) as usize];
        let seg_words = (self.segment_size / 64) as usize;
        let segments = words.par_chunks_mut(seg_words).enumerate();
        if root > DIRECT_FILL_MIN_ROOT && root / DIRECT_FILL_RATIO > len {
            // A short window far out: base primes up to sqrt(hi) would dwarf it.
            segments.for_each(|(k, chunk)| {
                let seg_lo = lo + k as u64 * self.segment_size;
                let seg_len = self.segment_size.min(hi - seg_lo);
                fill_direct(chunk, seg_lo, seg_len);
            });
        } else {
            let base = base_primes(root);
            segments.for_each(|(k, chunk)| {
                let seg_lo = lo + k as u64 * self.segment_size;
                let seg_len = self.segment_size.min(hi - seg_lo);
                sieve_segment(chunk, seg_lo, seg_len, &base);
            });
        }
        Ok(PrimeTable { lo, hi, words })
    }
}

/// Sieves `[lo, hi)` with the default configuration.
pub fn sieve_range(lo: u64, hi: u64) -> Result<PrimeTable> {
    SieveConfig::default().sieve(lo, hi)
}

/// Marks the primes of `[seg_lo, seg_lo + seg_len)` into `words`.
///
/// `base` must hold, in ascending order, every prime up to
/// `sqrt(seg_lo + seg_len - 1)`.
fn sieve_segment(words: &mut [u64], seg_lo: u64, seg_len: u64, base: &[u32]) {
    words.fill(!0);
    let full = (seg_len / 64) as usize;
    let rem = seg_len % 64;
    let mut tail = full;
    if rem > 0 {
        words[full] = (1u64 << rem) - 1;
        tail += 1;
    }
    words[tail..].fill(0);

    let seg_end = seg_lo + seg_len;
    for &p in base {
        let p = p as u64;
        let sq = p * p;
        if sq >= seg_end {
            break;
        }
        let first = if sq >= seg_lo {
            Some(sq)
        } else {
            seg_lo.div_ceil(p).checked_mul(p)
        };
        let Some(mut m) = first else { continue };
        while m < seg_end {
            let off = m - seg_lo;
            words[(off / 64) as usize] &= !(1u64 << (off % 64));
            match m.checked_add(p) {
                Some(next) => m = next,
                None => break,
            }
        }
    }
    for n in seg_lo..seg_end.min(2) {
        let off = n - seg_lo;
        words[(off / 64) as usize] &= !(1u64 << (off % 64));
    }
}

/// Marks `[seg_lo, seg_lo + seg_len)` by testing each odd candidate.
fn fill_direct(words: &mut [u64], seg_lo: u64, seg_len: u64) {
    words.fill(0);
    for off in 0..seg_len {
        let n = seg_lo + off;
        if (n % 2 == 1 || n == 2) && miller_rabin::is_prime(n) {
            words[(off / 64) as usize] |= 1 << (off % 64);
        }
    }
}

/// All primes `<= limit`, ascending. `limit` must fit in `u32`.
pub(crate) fn base_primes(limit: u64) -> Vec<u32> {
    debug_assert!(limit <= u32::MAX as u64);
    if limit < 2 {
        return Vec::new();
    }
    let sub = base_primes(limit.isqrt());
    const SEG: u64 = 1 << 18;
    let end = limit + 1;
    let mut buf = vec![0u64; (SEG / 64) as usize];
    let mut out = Vec::new();
    let mut lo = 0;
    while lo < end {
        let len = SEG.min(end - lo);
        sieve_segment(&mut buf, lo, len, &sub);
        for (w, &word) in buf.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let i = bits.trailing_zeros() as u64;
                out.push((lo + w as u64 * 64 + i) as u32);
                bits &= bits - 1;
            }
        }
        lo += len;
    }
    out
}

/// Immutable set of primes over `[lo, hi)`, one bit per integer.
///
/// Queries outside the sieved interval fall through to a deterministic
/// Miller–Rabin test, so an empty table is still a complete primality oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    lo: u64,
    hi: u64,
    words: Vec<u64>,
}

impl PrimeTable {
    /// A table that sieves nothing and answers every query by Miller–Rabin.
    pub fn empty() -> Self {
        Self {
            lo: 0,
            hi: 0,
            words: Vec::new(),
        }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    /// Whether `n` lies in the sieved interval.
    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n < self.hi
    }

    /// Whether every integer of `[a, b]` lies in the sieved interval.
    pub fn covers(&self, a: u64, b: u64) -> bool {
        a <= b && self.lo <= a && b < self.hi
    }

    #[inline]
    fn bit(&self, off: u64) -> bool {
        self.words[(off / 64) as usize] >> (off % 64) & 1 == 1
    }

    /// Table answer for `n`, or `None` outside the sieved interval.
    pub fn lookup(&self, n: u64) -> Option<bool> {
        self.contains(n).then(|| self.bit(n - self.lo))
    }

    pub fn is_prime(&self, n: u64) -> bool {
        match self.lookup(n) {
            Some(p) => p,
            None => miller_rabin::is_prime(n),
        }
    }

    /// Copy of the table with the given integers marked composite.
    ///
    /// Fault injection for exercising anomaly paths; the result is no longer
    /// a truthful table.
    #[doc(hidden)]
    pub fn masking(mut self, values: &[u64]) -> Self {
        for &v in values {
            if self.contains(v) {
                let off = v - self.lo;
                self.words[(off / 64) as usize] &= !(1u64 << (off % 64));
            }
        }
        self
    }

    /// Ascending iterator over the primes of the table.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let lo = self.lo;
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            let base = lo + w as u64 * 64;
            SetBits(word).map(move |i| base + i)
        })
    }

    /// Primes of the table inside `[a, b]`, ascending.
    pub fn primes_between(&self, a: u64, b: u64) -> impl Iterator<Item = u64> + '_ {
        self.primes()
            .skip_while(move |&p| p < a)
            .take_while(move |&p| p <= b)
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Counts table primes in `[a, b]` whose residue mod 4 is `residue`.
    pub(crate) fn count_residue(&self, a: u64, b: u64, residue: u64) -> u64 {
        let a = a.max(self.lo);
        if self.hi == 0 || a > b || a >= self.hi {
            return 0;
        }
        let b = b.min(self.hi - 1);
        // 64 is a multiple of 4, so every word starts on the same residue.
        let r0 = self.lo % 4;
        let mut pattern = 0u64;
        for i in 0..64 {
            if (r0 + i) % 4 == residue {
                pattern |= 1 << i;
            }
        }
        let (oa, ob) = (a - self.lo, b - self.lo);
        let (wa, wb) = ((oa / 64) as usize, (ob / 64) as usize);
        let mut total = 0u64;
        for w in wa..=wb {
            let mut word = self.words[w] & pattern;
            if w == wa {
                word &= !0u64 << (oa % 64);
            }
            if w == wb && ob % 64 != 63 {
                word &= (1u64 << (ob % 64 + 1)) - 1;
            }
            total += word.count_ones() as u64;
        }
        total
    }

    /// 64 table bits starting at integer `start`; bit `i` is set iff
    /// `start + i` is a table prime. Positions outside the table read as 0.
    pub fn window(&self, start: i128) -> u64 {
        let rel = start - self.lo as i128;
        if rel <= -64 || rel >= self.len() as i128 {
            return 0;
        }
        if rel < 0 {
            return self.window_at(0) << (-rel) as u32;
        }
        self.window_at(rel as u64)
    }

    /// 64 table bits running downwards from `end`; bit `j` is set iff
    /// `end - j` is a table prime.
    pub fn window_rev(&self, end: i128) -> u64 {
        self.window(end - 63).reverse_bits()
    }

    #[inline]
    fn window_at(&self, off: u64) -> u64 {
        let w = (off / 64) as usize;
        let s = off % 64;
        let low = self.words.get(w).copied().unwrap_or(0);
        if s == 0 {
            return low;
        }
        let high = self.words.get(w + 1).copied().unwrap_or(0);
        (low >> s) | (high << (64 - s))
    }

    /// Offsets `k < len` such that both `fwd + k` and `rev - k` are prime,
    /// ascending, computed 64 candidates at a time.
    ///
    /// Returns `None` unless the table covers every probed integer.
    pub fn mirror(&self, fwd: u64, rev: u64, len: u64) -> Option<MirrorHits<'_>> {
        if len == 0 {
            return Some(MirrorHits::new(self, fwd, rev, 0));
        }
        let fwd_last = fwd.checked_add(len - 1)?;
        let rev_first = rev.checked_sub(len - 1)?;
        (self.covers(fwd, fwd_last) && self.covers(rev_first, rev))
            .then(|| MirrorHits::new(self, fwd, rev, len))
    }
}

struct SetBits(u64);

impl Iterator for SetBits {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as u64;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Iterator returned by [`PrimeTable::mirror`].
pub struct MirrorHits<'a> {
    table: &'a PrimeTable,
    fwd: u64,
    rev: u64,
    len: u64,
    next_block: u64,
    block: u64,
    pending: SetBits,
}

impl<'a> MirrorHits<'a> {
    fn new(table: &'a PrimeTable, fwd: u64, rev: u64, len: u64) -> Self {
        Self {
            table,
            fwd,
            rev,
            len,
            next_block: 0,
            block: 0,
            pending: SetBits(0),
        }
    }
}

impl Iterator for MirrorHits<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(i) = self.pending.next() {
                return Some(self.block + i);
            }
            if self.next_block >= self.len {
                return None;
            }
            let k = self.next_block;
            let up = self.table.window(self.fwd as i128 + k as i128);
            let down = self.table.window_rev(self.rev as i128 - k as i128);
            let mut both = up & down;
            let remaining = self.len - k;
            if remaining < 64 {
                both &= (1u64 << remaining) - 1;
            }
            self.block = k;
            self.pending = SetBits(both);
            self.next_block += 64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn below_two_is_empty() {
        let t = sieve_range(0, 2).unwrap();
        assert_eq!(t.count(), 0);
        assert!(!t.is_prime(0));
        assert!(!t.is_prime(1));
        assert_eq!(sieve_range(5, 5).unwrap().count(), 0);
    }

    #[test]
    fn interval_errors() {
        assert_eq!(
            sieve_range(10, 3).unwrap_err(),
            Error::InvalidInterval { lo: 10, hi: 3 }
        );
        let tiny = SieveConfig {
            segment_size: 64,
            max_segments: 2,
        };
        assert!(tiny.sieve(0, 128).is_ok());
        assert_eq!(
            tiny.sieve(0, 129).unwrap_err(),
            Error::RangeTooLarge {
                len: 129,
                budget: 128
            }
        );
    }

    #[test]
    fn small_listed_primes() {
        let t = sieve_range(0, 9000).unwrap();
        for p in [2, 3, 5, 7, 13, 43, 73, 8887, 8893] {
            assert!(t.is_prime(p), "{p}");
        }
        assert!(!t.is_prime(8891));
    }

    #[test]
    fn base_primes_small() {
        assert_eq!(base_primes(1), Vec::<u32>::new());
        assert_eq!(base_primes(2), vec![2]);
        assert_eq!(base_primes(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(base_primes(1 << 20).len(), 82025);
    }

    #[test]
    fn offset_table_matches_naive() {
        let cfg = SieveConfig::with_segment_size(128);
        let t = cfg.sieve(1_000_003, 1_002_000).unwrap();
        for n in t.lo()..t.hi() {
            assert_eq!(t.lookup(n), Some(naive(n)), "{n}");
        }
        assert_eq!(t.lookup(t.hi()), None);
    }

    #[test]
    fn near_top_of_u64() {
        let hi = u64::MAX;
        let t = sieve_range(hi - 1000, hi).unwrap();
        for n in t.lo()..t.hi() {
            assert_eq!(t.lookup(n).unwrap(), miller_rabin::is_prime(n), "{n}");
        }
        assert!(t.is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn direct_fill_agrees_with_sieving() {
        let lo = 1u64 << 44;
        let sieved = SieveConfig::with_segment_size(256)
            .sieve(lo, lo + 1000)
            .unwrap();
        let mut direct = vec![0u64; 1000usize.div_ceil(64)];
        fill_direct(&mut direct, lo, 1000);
        assert_eq!(sieved.words, direct);
    }

    #[test]
    fn outside_table_uses_deterministic_test() {
        let t = sieve_range(0, 100).unwrap();
        assert!(t.is_prime(8893));
        assert!(t.is_prime((1 << 61) - 1));
        assert!(!PrimeTable::empty().is_prime(1));
    }

    #[test]
    fn windows() {
        let t = sieve_range(0, 200).unwrap();
        let w = t.window(0);
        assert_eq!(w & 0xff, 0b1010_1100);
        // Bits below the table read as zero.
        assert_eq!(t.window(-3) & 0b111, 0);
        assert_eq!(t.window(-3) >> 3, t.window(0) & (!0 >> 3));
        let r = t.window_rev(13);
        let downs: Vec<u64> = (0..14)
            .filter(|j| r >> j & 1 == 1)
            .map(|j| 13 - j)
            .collect();
        assert_eq!(downs, [13, 11, 7, 5, 3, 2]);
        assert_eq!(t.window(200), 0);
    }

    #[test]
    fn mirror_finds_symmetric_pairs() {
        let t = sieve_range(0, 1000).unwrap();
        // 2 + k and 98 - k both prime, k <= 48.
        let hits: Vec<u64> = t.mirror(2, 98, 49).unwrap().collect();
        let expect: Vec<u64> = (0..49).filter(|&k| naive(2 + k) && naive(98 - k)).collect();
        assert_eq!(hits, expect);
        assert!(t.mirror(900, 999, 200).is_none());
        assert!(t.mirror(2, 3, 5).is_none());
        assert_eq!(t.mirror(5, 5, 0).unwrap().count(), 0);
    }

    #[test]
    fn residue_counts() {
        let t = sieve_range(3, 101).unwrap();
        assert_eq!(t.count_residue(0, 100, 1), 11);
        assert_eq!(t.count_residue(0, 100, 3), 13);
        assert_eq!(t.count_residue(0, 100, 2), 0);
        assert_eq!(t.count_residue(10, 20, 1), 2);
        assert_eq!(t.count_residue(500, 600, 1), 0);
    }
}
