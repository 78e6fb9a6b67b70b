//! Count series storage, CSV export, and the binary cache format.

use crate::error::{Error, Result};
use crate::family::{FamilyConfig, FamilyKind};
use crate::hash::Fnv64;
use rug::integer::Order;
use rug::Integer;
use std::io::Write;

/// Exact counts for one family, indexed by n from 0 to n_max.
/// Index 0 always holds the empty-partition count 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSeries {
    pub config: FamilyConfig,
    pub values: Vec<Integer>,
}

impl CountSeries {
    pub fn n_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> &Integer {
        &self.values[n as usize]
    }

    /// CSV export with header `d,a,minus,kind,n,count`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "d,a,minus,kind,n,count")?;
        for (n, v) in self.values.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                self.config.d, self.config.a, self.config.minus, self.config.kind, n, v
            )?;
        }
        Ok(())
    }
}

const CACHE_MAGIC: &[u8; 6] = b"ALDSER";
const CACHE_VERSION: u32 = 1;

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn push_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

/// Append one nonnegative integer: u32 length prefix, then little-endian
/// magnitude bytes.
pub(crate) fn push_uint(out: &mut Vec<u8>, v: &Integer) {
    debug_assert!(*v >= 0);
    let digits = v.to_digits::<u8>(Order::Lsf);
    push_u32(out, digits.len() as u32);
    out.extend_from_slice(&digits);
}

/// Append one signed integer: sign byte then magnitude as in `push_uint`.
pub(crate) fn push_int(out: &mut Vec<u8>, v: &Integer) {
    out.push(match v.cmp0() {
        std::cmp::Ordering::Less => 1,
        _ => 0,
    });
    let digits = v.as_abs().to_digits::<u8>(Order::Lsf);
    push_u32(out, digits.len() as u32);
    out.extend_from_slice(&digits);
}

pub(crate) struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(Error::Corrupt(format!(
                "truncated: wanted {n} bytes at offset {}, have {}",
                self.pos,
                self.buf.len() - self.pos
            )));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn uint(&mut self) -> Result<Integer> {
        let len = self.u32()? as usize;
        // A magnitude longer than the remaining buffer is corruption, and
        // this check also stops hostile length prefixes from allocating.
        let digits = self.take(len)?;
        // Canonical form only: the most significant byte must be nonzero,
        // so every value has exactly one accepted encoding.
        if digits.last() == Some(&0) {
            return Err(Error::Corrupt("non-canonical magnitude padding".into()));
        }
        Ok(Integer::from_digits(digits, Order::Lsf))
    }

    pub fn int(&mut self) -> Result<Integer> {
        let neg = self.u8()?;
        if neg > 1 {
            return Err(Error::Corrupt(format!("bad sign byte {neg}")));
        }
        let mag = self.uint()?;
        if neg == 1 && mag.cmp0() == std::cmp::Ordering::Equal {
            return Err(Error::Corrupt("negative zero".into()));
        }
        Ok(if neg == 1 { -mag } else { mag })
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }
}

pub(crate) fn push_config(out: &mut Vec<u8>, c: &FamilyConfig) {
    push_u32(out, c.d);
    push_u32(out, c.a);
    out.push(u8::from(c.minus));
    out.push(match c.kind {
        FamilyKind::Distinct => 0,
        FamilyKind::Congruence => 1,
    });
}

pub(crate) fn read_config(r: &mut Reader) -> Result<FamilyConfig> {
    let d = r.u32()?;
    let a = r.u32()?;
    let minus = match r.u8()? {
        0 => false,
        1 => true,
        b => return Err(Error::Corrupt(format!("bad minus byte {b}"))),
    };
    let kind = match r.u8()? {
        0 => FamilyKind::Distinct,
        1 => FamilyKind::Congruence,
        b => return Err(Error::Corrupt(format!("bad kind byte {b}"))),
    };
    FamilyConfig::new(d, a, minus, kind)
}

/// Serialize a series to the versioned binary cache format: magic, version,
/// family config, n_max, length-prefixed little-endian magnitudes, and a
/// trailing FNV-1a integrity word over everything before it.
pub fn encode_series(series: &CountSeries) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(CACHE_MAGIC);
    push_u32(&mut out, CACHE_VERSION);
    push_config(&mut out, &series.config);
    push_u64(&mut out, series.n_max());
    for v in &series.values {
        push_uint(&mut out, v);
    }
    let mut h = Fnv64::new();
    h.update(&out);
    push_u64(&mut out, h.value());
    out
}

/// Decode and validate a binary series cache. Any structural anomaly
/// (bad magic, version, truncation, integrity word, or a series violating
/// the values[0] = 1 invariant) is an error; no partial data is returned.
pub fn decode_series(buf: &[u8]) -> Result<CountSeries> {
    if buf.len() < CACHE_MAGIC.len() + 4 + 8 {
        return Err(Error::Corrupt("shorter than fixed header".into()));
    }
    let (body, tail) = buf.split_at(buf.len() - 8);
    let stored = u64::from_le_bytes(tail.try_into().unwrap());
    let mut h = Fnv64::new();
    h.update(body);
    if h.value() != stored {
        return Err(Error::Corrupt("integrity word mismatch".into()));
    }
    let mut r = Reader::new(body);
    if r.take(CACHE_MAGIC.len())? != CACHE_MAGIC {
        return Err(Error::Corrupt("bad magic".into()));
    }
    let version = r.u32()?;
    if version != CACHE_VERSION {
        return Err(Error::VersionMismatch { found: version, expected: CACHE_VERSION });
    }
    let config = read_config(&mut r)?;
    let n_max = r.u64()?;
    if n_max >= u64::MAX - 1 || n_max as usize >= usize::MAX / 8 {
        return Err(Error::Corrupt(format!("implausible n_max {n_max}")));
    }
    let mut values = Vec::new();
    for _ in 0..=n_max {
        values.push(r.uint()?);
    }
    if r.remaining() != 0 {
        return Err(Error::Corrupt(format!("{} trailing bytes", r.remaining())));
    }
    if values[0] != 1 {
        return Err(Error::Corrupt("values[0] must be 1".into()));
    }
    Ok(CountSeries { config, values })
}
