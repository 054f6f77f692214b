//! Independent oracles checked against the sieve and the deterministic test.

use goldbach_core::prime::{is_prime, residue_census, sieve_range, SieveConfig};
use goldbach_core::{classify_mod4, ResidueClass};

fn trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Lucas–Lehmer test for the Mersenne number `2^p - 1`, `p` an odd prime.
fn lucas_lehmer(p: u32) -> bool {
    let m: u128 = (1u128 << p) - 1;
    let mut s: u128 = 4;
    for _ in 0..p - 2 {
        s = (s * s + m - 2) % m;
    }
    s == 0
}

#[test]
fn sieve_matches_trial_division_below_1e5() {
    let t = sieve_range(0, 100_000).unwrap();
    for n in 0..100_000 {
        assert_eq!(t.lookup(n), Some(trial_division(n)), "{n}");
    }
}

#[test]
fn prime_count_and_census_at_1e6() {
    let mut oracle = (0u64, 0u64, 0u64);
    for n in 0..=1_000_000u64 {
        if trial_division(n) {
            oracle.0 += 1;
            match n % 4 {
                1 => oracle.1 += 1,
                3 => oracle.2 += 1,
                _ => {}
            }
        }
    }
    assert_eq!(oracle, (78_498, 39_175, 39_322));

    let t = sieve_range(0, 1_000_000).unwrap();
    assert_eq!(t.count(), oracle.0);
    let row = residue_census(1_000_000).unwrap();
    assert_eq!((row.total, row.count_one, row.count_three), oracle);
    assert!(row.is_consistent());
}

#[test]
fn deterministic_test_agrees_with_sieve_below_1e6() {
    let t = sieve_range(0, 1_000_000).unwrap();
    for n in 0..1_000_000 {
        assert_eq!(is_prime(n), t.lookup(n).unwrap(), "{n}");
    }
}

#[test]
fn mersenne_61() {
    assert!(lucas_lehmer(61));
    assert!(is_prime((1 << 61) - 1));
    assert!(!lucas_lehmer(59));
    assert!(!is_prime((1 << 59) - 1));
    assert!(lucas_lehmer(31) && is_prime((1 << 31) - 1));
}

#[test]
fn classification_partitions_primes_below_1e6() {
    let t = sieve_range(0, 1_000_001).unwrap();
    let mut seen = [0u64; 3];
    for p in t.primes() {
        let class = classify_mod4(p).unwrap();
        let expected = match p {
            2 => ResidueClass::Two,
            _ if p % 4 == 1 => ResidueClass::OneMod4,
            _ => ResidueClass::ThreeMod4,
        };
        assert_eq!(class, expected, "{p}");
        seen[class as usize] += 1;
    }
    assert_eq!(seen, [1, 39_175, 39_322]);
}

#[test]
fn census_consistency_for_every_small_limit() {
    let t = sieve_range(0, 5_001).unwrap();
    for limit in 2..=5_000 {
        assert!(t.census(limit).unwrap().is_consistent(), "{limit}");
    }
}

#[test]
fn segment_size_does_not_change_the_table() {
    let reference = sieve_range(0, 300_000).unwrap();
    for seg in [64, 128, 4096, 1 << 16] {
        let cfg = SieveConfig {
            segment_size: seg,
            max_segments: u64::MAX,
        };
        let t = cfg.sieve(0, 300_000).unwrap();
        assert_eq!(t, reference, "segment size {seg}");
    }
}
