//! Partition families and their allowed parts.
//!
//! Two kinds of family are counted:
//!
//! - `Distinct`: partitions whose parts are >= a and pairwise differ by at
//!   least d ("d-distinct" partitions).
//! - `Congruence`: partitions into parts congruent to +-a mod (d+3), with an
//!   optional `minus` flag that removes the single part value d+3-a.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Distinct,
    Congruence,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Distinct => write!(f, "distinct"),
            FamilyKind::Congruence => write!(f, "congruence"),
        }
    }
}

/// Which counting family a series belongs to.
///
/// Invariants enforced by [`FamilyConfig::new`]: d >= 1, a in {1, 2}, and
/// `minus` is only meaningful for congruence families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub d: u32,
    pub a: u32,
    pub minus: bool,
    pub kind: FamilyKind,
}

impl FamilyConfig {
    pub fn new(d: u32, a: u32, minus: bool, kind: FamilyKind) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidFamily("d must be >= 1".into()));
        }
        if a < 1 {
            return Err(Error::InvalidFamily("a must be >= 1".into()));
        }
        if a > 2 {
            return Err(Error::InvalidFamily(format!("a={a} out of supported range {{1, 2}}")));
        }
        if minus && kind == FamilyKind::Distinct {
            return Err(Error::InvalidFamily("minus flag applies only to congruence families".into()));
        }
        Ok(FamilyConfig { d, a, minus, kind })
    }

    pub fn distinct(d: u32, a: u32) -> Result<Self> {
        Self::new(d, a, false, FamilyKind::Distinct)
    }

    pub fn congruence(d: u32, a: u32, minus: bool) -> Result<Self> {
        Self::new(d, a, minus, FamilyKind::Congruence)
    }

    /// Modulus of the congruence condition.
    pub fn modulus(&self) -> u64 {
        u64::from(self.d) + 3
    }

    /// The single part value removed by the minus flag: d + 3 - a.
    pub fn excluded_part(&self) -> u64 {
        self.modulus() - u64::from(self.a)
    }
}

impl fmt::Display for FamilyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} d={} a={}{}", self.kind, self.d, self.a, if self.minus { " minus" } else { "" })
    }
}

/// The ascending list of part values allowed in a congruence family,
/// truncated at `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowedParts {
    pub d: u32,
    pub a: u32,
    pub minus: bool,
    pub parts: Vec<u64>,
}

/// All parts m <= limit with m ≡ +-a (mod d+3), strictly ascending and
/// deduplicated (the two residue classes coincide when d+3 divides 2a).
/// When `minus` is set the single value d+3-a is omitted.
pub fn allowed_parts(d: u32, a: u32, minus: bool, limit: u64) -> AllowedParts {
    let modulus = u64::from(d) + 3;
    let a = u64::from(a);
    let r1 = a % modulus;
    let r2 = (modulus - r1) % modulus;
    let excluded = modulus - a;
    let mut parts = Vec::new();
    let mut base = 0u64;
    loop {
        let mut block = [r1, r2];
        block.sort_unstable();
        let mut prev = None;
        for r in block {
            let m = base + r;
            if m == 0 || Some(m) == prev {
                continue;
            }
            prev = Some(m);
            if m > limit {
                return AllowedParts { d, a: a as u32, minus, parts };
            }
            if !(minus && m == excluded) {
                parts.push(m);
            }
        }
        base += modulus;
        if base > limit {
            return AllowedParts { d, a: a as u32, minus, parts };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_mod_six() {
        assert_eq!(allowed_parts(3, 2, false, 12).parts, vec![2, 4, 8, 10]);
    }

    #[test]
    fn minus_drops_single_value() {
        assert_eq!(allowed_parts(3, 2, true, 12).parts, vec![2, 8, 10]);
        // Only the value d+3-a is dropped, not its whole residue class.
        assert_eq!(allowed_parts(3, 2, true, 16).parts, vec![2, 8, 10, 14, 16]);
    }

    #[test]
    fn coinciding_residues_dedup() {
        // d=1, a=2: both residue classes are 2 mod 4.
        assert_eq!(allowed_parts(1, 2, false, 9).parts, vec![2, 6]);
        assert_eq!(allowed_parts(1, 2, true, 20).parts, vec![6, 10, 14, 18]);
    }

    #[test]
    fn strictly_ascending() {
        for d in 1..=12 {
            for a in 1..=2 {
                let parts = allowed_parts(d, a, false, 200).parts;
                assert!(parts.windows(2).all(|w| w[0] < w[1]), "d={d} a={a}");
                assert!(parts.iter().all(|&m| {
                    let md = m % (u64::from(d) + 3);
                    md == u64::from(a) || md == (u64::from(d) + 3 - u64::from(a)) % (u64::from(d) + 3)
                }));
            }
        }
    }

    #[test]
    fn empty_is_valid() {
        assert!(allowed_parts(60, 2, false, 1).parts.is_empty());
    }

    #[test]
    fn config_invariants() {
        assert!(FamilyConfig::new(0, 1, false, FamilyKind::Distinct).is_err());
        assert!(FamilyConfig::new(1, 0, false, FamilyKind::Distinct).is_err());
        assert!(FamilyConfig::new(1, 3, false, FamilyKind::Congruence).is_err());
        assert!(FamilyConfig::new(1, 2, true, FamilyKind::Distinct).is_err());
        let c = FamilyConfig::congruence(3, 2, true).unwrap();
        assert_eq!(c.excluded_part(), 4);
    }
}
