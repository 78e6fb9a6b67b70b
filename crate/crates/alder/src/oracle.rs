//! Independent brute-force partition counting.
//!
//! Counts by walking the tree of partitions directly, one partition per
//! leaf, so it shares no recurrence with the dynamic-programming builders
//! in [`crate::exact`]. Exponential in n; guarded by a cap.

use crate::error::{Error, Result};
use crate::family::{allowed_parts, FamilyConfig, FamilyKind};

pub const DEFAULT_ORACLE_CAP: u64 = 300;

/// Count partitions of n in the given family by exhaustive enumeration.
pub fn brute_force_count(n: u64, config: &FamilyConfig) -> Result<u128> {
    brute_force_count_capped(n, config, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_count_capped(n: u64, config: &FamilyConfig, cap: u64) -> Result<u128> {
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    Ok(match config.kind {
        FamilyKind::Congruence => {
            let parts = allowed_parts(config.d, config.a, config.minus, n.max(1)).parts;
            let mut acc = 0u128;
            count_from_set(n, parts.len(), &parts, &mut acc);
            acc
        }
        FamilyKind::Distinct => {
            let mut acc = 0u128;
            count_gapped(n, u64::from(config.a), u64::from(config.d), &mut acc);
            acc
        }
    })
}

/// Nonincreasing enumeration over an ascending part set: pick the largest
/// part among the first `max_len` entries, recurse on the remainder.
fn count_from_set(remaining: u64, max_len: usize, parts: &[u64], acc: &mut u128) {
    if remaining == 0 {
        *acc += 1;
        return;
    }
    for i in 0..max_len {
        let p = parts[i];
        if p > remaining {
            break;
        }
        count_from_set(remaining - p, i + 1, parts, acc);
    }
}

/// Ascending enumeration of partitions with parts >= min_part and
/// consecutive gaps >= gap.
fn count_gapped(remaining: u64, min_part: u64, gap: u64, acc: &mut u128) {
    if remaining == 0 {
        *acc += 1;
        return;
    }
    let mut p = min_part;
    while p <= remaining {
        count_gapped(remaining - p, p + gap, gap, acc);
        p += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_partition() {
        for config in [
            FamilyConfig::congruence(5, 1, false).unwrap(),
            FamilyConfig::distinct(5, 2).unwrap(),
        ] {
            assert_eq!(brute_force_count(0, &config).unwrap(), 1);
        }
    }

    #[test]
    fn congruence_examples() {
        // 6 = 2+2+2 = 4+2 with parts == +-2 mod 6.
        let c = FamilyConfig::congruence(3, 2, false).unwrap();
        assert_eq!(brute_force_count(6, &c).unwrap(), 2);
        // Part 4 excluded leaves only 2+2+2.
        let cm = FamilyConfig::congruence(3, 2, true).unwrap();
        assert_eq!(brute_force_count(6, &cm).unwrap(), 1);
        // 8 = 8 = 2+2+2+2 with parts == +-2 mod 10.
        let c7 = FamilyConfig::congruence(7, 2, false).unwrap();
        assert_eq!(brute_force_count(8, &c7).unwrap(), 2);
    }

    #[test]
    fn distinct_examples() {
        // Partitions of 5 into distinct parts >= 2: {5}, {3,2}.
        let c = FamilyConfig::distinct(1, 2).unwrap();
        assert_eq!(brute_force_count(5, &c).unwrap(), 2);
        // 7-distinct parts >= 2: only {8}.
        let c7 = FamilyConfig::distinct(7, 2).unwrap();
        assert_eq!(brute_force_count(8, &c7).unwrap(), 1);
        // 2-distinct parts >= 1: {4}, {3,1}.
        let c21 = FamilyConfig::distinct(2, 1).unwrap();
        assert_eq!(brute_force_count(4, &c21).unwrap(), 2);
    }

    #[test]
    fn cap_enforced() {
        let c = FamilyConfig::distinct(1, 1).unwrap();
        assert!(matches!(
            brute_force_count(301, &c),
            Err(Error::OracleCap { n: 301, cap: 300 })
        ));
        assert!(brute_force_count_capped(301, &FamilyConfig::distinct(50, 2).unwrap(), 400).is_ok());
    }
}
