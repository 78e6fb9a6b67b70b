//! Exact big-integer counting of the partition families.
//!
//! Congruence families use the largest-part recursion in its cumulative
//! form: after processing allowed parts up to p, `values[n]` counts the
//! partitions of n whose parts all come from the processed prefix. Each
//! part costs one in-place addition per index, so a series to n_max takes
//! O(n_max * #parts) big-integer additions and one array of memory.
//!
//! Distinct families go through the part-count bijection: a d-distinct
//! partition of N into exactly k parts >= a corresponds to an ordinary
//! partition of N - d*k*(k-1)/2 - a*k into at most k parts. Summing over k
//! needs only two rows of the exact-part-count table at a time, plus the
//! accumulator.
//!
//! Both builders expose single-step drivers so long runs can be
//! checkpointed between steps; the batch functions drive them to
//! completion.

use crate::error::{Error, Result};
use crate::family::{allowed_parts, FamilyConfig, FamilyKind};
use crate::series::CountSeries;
use rug::Integer;

/// Default table budget: 8 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 8 << 30;

/// Upper estimate of log2 of the unrestricted partition count p(n).
fn partition_bits(n: u64) -> u64 {
    // pi * sqrt(2/3) / ln 2 = 3.702, plus slack for small n.
    (3.71 * (n as f64).sqrt()) as u64 + 32
}

/// Upper estimate of log2 of a congruence-family count at n.
fn congruence_bits(d: u32, n: u64) -> u64 {
    let m = (d as f64) + 3.0;
    (9.07 * ((n as f64) / m).sqrt()) as u64 + 32
}

/// Approximate bytes for a table of `cells` integers of at most `bits` bits.
fn table_bytes(cells: u64, bits: u64) -> u64 {
    cells.saturating_mul(40 + bits / 8)
}

fn check_budget(needed: u64, budget: u64, context: &str, per_n: impl Fn(u64) -> u64, n_max: u64) -> Result<()> {
    if needed <= budget {
        return Ok(());
    }
    // Largest n_cap that would fit, for the error report.
    let mut lo = 0u64;
    let mut hi = n_max;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if per_n(mid) <= budget {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Err(Error::Capacity {
        needed_bytes: needed,
        budget_bytes: budget,
        max_feasible_n: if lo > 0 { Some(lo) } else { None },
        context: context.to_string(),
    })
}

/// Incremental builder for congruence-family series. One step applies one
/// allowed part to the whole table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSeriesBuilder {
    pub(crate) config: FamilyConfig,
    pub(crate) parts: Vec<u64>,
    pub(crate) next_part: usize,
    pub(crate) values: Vec<Integer>,
}

impl CongruenceSeriesBuilder {
    pub fn new(config: FamilyConfig, n_max: u64, budget_bytes: u64) -> Result<Self> {
        if config.kind != FamilyKind::Congruence {
            return Err(Error::InvalidFamily("congruence builder needs a congruence family".into()));
        }
        let per_n = |n: u64| table_bytes(n + 1, congruence_bits(config.d, n));
        check_budget(per_n(n_max), budget_bytes, "congruence series", per_n, n_max)?;
        let mut values = vec![Integer::new(); n_max as usize + 1];
        values[0] = Integer::from(1);
        Ok(CongruenceSeriesBuilder {
            config,
            parts: allowed_parts(config.d, config.a, config.minus, n_max).parts,
            next_part: 0,
            values,
        })
    }

    pub fn parts_total(&self) -> usize {
        self.parts.len()
    }

    pub fn parts_done(&self) -> usize {
        self.next_part
    }

    pub fn is_done(&self) -> bool {
        self.next_part == self.parts.len()
    }

    /// Cost of the next step in table-cell updates (used for checkpoint
    /// pacing). Zero when done.
    pub fn next_step_cost(&self) -> u64 {
        match self.parts.get(self.next_part) {
            Some(&p) => self.values.len() as u64 - p,
            None => 0,
        }
    }

    pub fn step_part(&mut self) -> bool {
        let Some(&p) = self.parts.get(self.next_part) else {
            return false;
        };
        let p = p as usize;
        for n in p..self.values.len() {
            let (lo, hi) = self.values.split_at_mut(n);
            hi[0] += &lo[n - p];
        }
        self.next_part += 1;
        true
    }

    pub fn finish(mut self) -> CountSeries {
        while self.step_part() {}
        CountSeries { config: self.config, values: self.values }
    }
}

/// Incremental builder for d-distinct series via the part-count bijection.
/// One step processes one value of k (one row of the p_k table).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctSeriesBuilder {
    pub(crate) d: u32,
    pub(crate) a: u32,
    /// Row index of `row`: p_row_k(m) currently held.
    pub(crate) row_k: u64,
    pub(crate) row: Vec<Integer>,
    pub(crate) acc: Vec<Integer>,
}

/// Offset of the bijection at k parts: d*k*(k-1)/2 + a*k.
fn bijection_offset(d: u32, a: u32, k: u64) -> u64 {
    u64::from(d) * (k * (k - 1) / 2) + u64::from(a) * k
}

impl DistinctSeriesBuilder {
    pub fn new(d: u32, a: u32, n_max: u64, budget_bytes: u64) -> Result<Self> {
        FamilyConfig::distinct(d, a)?;
        let per_n = |n: u64| table_bytes(3 * (n + 1), partition_bits(n));
        check_budget(per_n(n_max), budget_bytes, "distinct series", per_n, n_max)?;
        let mut row = vec![Integer::new(); n_max as usize + 1];
        row[0] = Integer::from(1);
        let mut acc = vec![Integer::new(); n_max as usize + 1];
        // k = 0 contributes the empty partition at N = 0.
        acc[0] = Integer::from(1);
        Ok(DistinctSeriesBuilder { d, a, row_k: 0, row, acc })
    }

    fn n_max(&self) -> u64 {
        self.acc.len() as u64 - 1
    }

    pub fn rows_done(&self) -> u64 {
        self.row_k
    }

    pub fn is_done(&self) -> bool {
        bijection_offset(self.d, self.a, self.row_k + 1) > self.n_max()
    }

    pub fn next_step_cost(&self) -> u64 {
        if self.is_done() {
            0
        } else {
            self.acc.len() as u64
        }
    }

    /// Advance from row k to row k+1 of p_k and fold its bijection
    /// contribution into the accumulator.
    pub fn step_row(&mut self) -> bool {
        let k = self.row_k + 1;
        let off = bijection_offset(self.d, self.a, k);
        let n_max = self.n_max();
        if off > n_max {
            return false;
        }
        let len = self.row.len();
        // p_k(m) = p_{k-1}(m-1) + p_k(m-k), with p_k(0) = 0 for k >= 1.
        let mut cur = vec![Integer::new(); len];
        for m in 1..len {
            let mut v = self.row[m - 1].clone();
            if m as u64 >= k {
                v += &cur[m - k as usize];
            }
            cur[m] = v;
        }
        // Partitions of N with exactly k parts in the bijection image:
        // p_{<=k}(N - off) = p_k(N - off + k).
        for n in off..=n_max {
            let idx = (n - off + k) as usize;
            self.acc[n as usize] += &cur[idx];
        }
        self.row = cur;
        self.row_k = k;
        true
    }

    pub fn finish(mut self) -> Result<CountSeries> {
        while self.step_row() {}
        Ok(CountSeries {
            config: FamilyConfig::distinct(self.d, self.a)?,
            values: self.acc,
        })
    }
}

/// Number of partitions of n into parts allowed by a congruence family,
/// for 0 <= n <= n_max.
pub fn count_congruence(config: FamilyConfig, n_max: u64, budget_bytes: u64) -> Result<CountSeries> {
    Ok(CongruenceSeriesBuilder::new(config, n_max, budget_bytes)?.finish())
}

/// Number of d-distinct partitions with parts >= a, for 0 <= n <= n_max.
pub fn count_distinct(d: u32, a: u32, n_max: u64, budget_bytes: u64) -> Result<CountSeries> {
    DistinctSeriesBuilder::new(d, a, n_max, budget_bytes)?.finish()
}

/// Table of p_k(n) = partitions of n into exactly k positive parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartCountTable {
    pub n_max: u64,
    pub k_max: u64,
    rows: Vec<Vec<Integer>>,
}

impl PartCountTable {
    pub fn get(&self, k: u64, n: u64) -> &Integer {
        &self.rows[k as usize][n as usize]
    }
}

/// Build the p_k(n) table for 0 <= k <= k_max, 0 <= n <= n_max.
/// p_0(0) = 1 by convention; p_k(n) = 0 for n < k.
pub fn count_exact_parts(n_max: u64, k_max: u64, budget_bytes: u64) -> Result<PartCountTable> {
    let per_n = |n: u64| table_bytes((k_max + 1) * (n + 1), partition_bits(n));
    check_budget(per_n(n_max), budget_bytes, "exact-part-count table", per_n, n_max)?;
    let width = n_max as usize + 1;
    let mut rows = Vec::with_capacity(k_max as usize + 1);
    let mut row0 = vec![Integer::new(); width];
    row0[0] = Integer::from(1);
    rows.push(row0);
    for k in 1..=k_max as usize {
        let mut cur = vec![Integer::new(); width];
        for m in 1..width {
            let mut v = rows[k - 1][m - 1].clone();
            if m >= k {
                v += &cur[m - k];
            }
            cur[m] = v;
        }
        rows.push(cur);
    }
    Ok(PartCountTable { n_max, k_max, rows })
}

/// Signed difference between a distinct-family count and a congruence-family
/// count with the same (d, a): values[n] = q_d^(a)(n) - Q-family(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSeries {
    pub d: u32,
    pub a: u32,
    pub minus: bool,
    pub values: Vec<Integer>,
}

impl DeltaSeries {
    pub fn n_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// Indices with a strictly negative difference, ascending.
    pub fn negative_indices(&self) -> Vec<u64> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.cmp0() == std::cmp::Ordering::Less)
            .map(|(n, _)| n as u64)
            .collect()
    }
}

/// Exact big-integer subtraction of the two family counts; no sign
/// shortcuts anywhere.
pub fn delta(d: u32, a: u32, minus: bool, n_max: u64, budget_bytes: u64) -> Result<DeltaSeries> {
    let q = count_distinct(d, a, n_max, budget_bytes)?;
    let big_q = count_congruence(FamilyConfig::congruence(d, a, minus)?, n_max, budget_bytes)?;
    let values = q
        .values
        .into_iter()
        .zip(big_q.values.iter())
        .map(|(qa, qb)| qa - qb)
        .collect();
    Ok(DeltaSeries { d, a, minus, values })
}
