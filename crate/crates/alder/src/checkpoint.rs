//! Checkpoint file format for verification sweeps.
//!
//! Layout: magic, format version, job config hash, sequence number,
//! progress counters, the running hash of all emitted difference signs,
//! negatives found so far, the chain of previously emitted checkpoint
//! hashes, the phase payload, and a trailing FNV integrity word over the
//! whole preceding byte stream. Decoding validates everything before any
//! state is returned; a truncated or bit-flipped file never yields partial
//! state. Writes go through a temp file and an atomic rename.

use crate::error::{Error, Result};
use crate::series::{push_int, push_uint, Reader};
use rug::Integer;
use std::fs;
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 7] = b"ALDCKPT";
pub const FORMAT_VERSION: u32 = 1;

/// Phase-specific working state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhaseState {
    /// Building the distinct-family series: current row index of the
    /// exact-part-count recursion, the row itself, and the accumulator.
    DistinctBuild { row_k: u64, row: Vec<Integer>, acc: Vec<Integer> },
    /// Building the congruence-family series on top of the finished
    /// distinct series.
    CongruenceBuild { distinct: Vec<Integer>, next_part: u64, values: Vec<Integer> },
    /// Scanning differences; `next_n` is the first unevaluated index.
    Scan { distinct: Vec<Integer>, congruence: Vec<Integer>, next_n: u64 },
}

impl PhaseState {
    fn tag(&self) -> u8 {
        match self {
            PhaseState::DistinctBuild { .. } => 1,
            PhaseState::CongruenceBuild { .. } => 2,
            PhaseState::Scan { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub job_hash: u64,
    pub seq: u32,
    /// Work units completed (table-cell updates plus scan steps).
    pub work_done: u64,
    /// FNV state over all difference signs emitted so far.
    pub sign_hash: u64,
    pub negatives: Vec<(u64, Integer)>,
    /// Content hashes of the checkpoints emitted before this one.
    pub chain: Vec<u64>,
    pub phase: PhaseState,
}

fn push_int_array(out: &mut Vec<u8>, values: &[Integer]) {
    out.extend_from_slice(&(values.len() as u64).to_le_bytes());
    for v in values {
        push_uint(out, v);
    }
}

fn read_uint_array(r: &mut Reader) -> Result<Vec<Integer>> {
    let len = r.u64()?;
    if len > (1 << 34) {
        return Err(Error::Corrupt(format!("implausible array length {len}")));
    }
    let mut out = Vec::new();
    for _ in 0..len {
        out.push(r.uint()?);
    }
    Ok(out)
}

impl Checkpoint {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&self.job_hash.to_le_bytes());
        out.extend_from_slice(&self.seq.to_le_bytes());
        out.extend_from_slice(&self.work_done.to_le_bytes());
        out.extend_from_slice(&self.sign_hash.to_le_bytes());
        out.extend_from_slice(&(self.negatives.len() as u64).to_le_bytes());
        for (n, v) in &self.negatives {
            out.extend_from_slice(&n.to_le_bytes());
            push_int(&mut out, v);
        }
        out.extend_from_slice(&(self.chain.len() as u64).to_le_bytes());
        for h in &self.chain {
            out.extend_from_slice(&h.to_le_bytes());
        }
        out.push(self.phase.tag());
        match &self.phase {
            PhaseState::DistinctBuild { row_k, row, acc } => {
                out.extend_from_slice(&row_k.to_le_bytes());
                push_int_array(&mut out, row);
                push_int_array(&mut out, acc);
            }
            PhaseState::CongruenceBuild { distinct, next_part, values } => {
                push_int_array(&mut out, distinct);
                out.extend_from_slice(&next_part.to_le_bytes());
                push_int_array(&mut out, values);
            }
            PhaseState::Scan { distinct, congruence, next_n } => {
                push_int_array(&mut out, distinct);
                push_int_array(&mut out, congruence);
                out.extend_from_slice(&next_n.to_le_bytes());
            }
        }
        let mut h = crate::hash::Fnv64::new();
        h.update(&out);
        out.extend_from_slice(&h.value().to_le_bytes());
        out
    }

    pub fn decode(buf: &[u8]) -> Result<Checkpoint> {
        if buf.len() < MAGIC.len() + 4 + 8 {
            return Err(Error::Corrupt("checkpoint shorter than fixed header".into()));
        }
        let (body, tail) = buf.split_at(buf.len() - 8);
        let stored = u64::from_le_bytes(tail.try_into().unwrap());
        let mut h = crate::hash::Fnv64::new();
        h.update(body);
        if h.value() != stored {
            return Err(Error::Corrupt("checkpoint integrity word mismatch".into()));
        }
        let mut r = Reader::new(body);
        if r.take(MAGIC.len())? != MAGIC {
            return Err(Error::Corrupt("bad checkpoint magic".into()));
        }
        let version = r.u32()?;
        if version != FORMAT_VERSION {
            return Err(Error::VersionMismatch { found: version, expected: FORMAT_VERSION });
        }
        let job_hash = r.u64()?;
        let seq = r.u32()?;
        let work_done = r.u64()?;
        let sign_hash = r.u64()?;
        let neg_len = r.u64()?;
        if neg_len > (1 << 34) {
            return Err(Error::Corrupt(format!("implausible negatives length {neg_len}")));
        }
        let mut negatives = Vec::new();
        for _ in 0..neg_len {
            let n = r.u64()?;
            let v = r.int()?;
            negatives.push((n, v));
        }
        let chain_len = r.u64()?;
        if chain_len > (1 << 32) {
            return Err(Error::Corrupt(format!("implausible chain length {chain_len}")));
        }
        let mut chain = Vec::new();
        for _ in 0..chain_len {
            chain.push(r.u64()?);
        }
        let phase = match r.u8()? {
            1 => {
                let row_k = r.u64()?;
                let row = read_uint_array(&mut r)?;
                let acc = read_uint_array(&mut r)?;
                PhaseState::DistinctBuild { row_k, row, acc }
            }
            2 => {
                let distinct = read_uint_array(&mut r)?;
                let next_part = r.u64()?;
                let values = read_uint_array(&mut r)?;
                PhaseState::CongruenceBuild { distinct, next_part, values }
            }
            3 => {
                let distinct = read_uint_array(&mut r)?;
                let congruence = read_uint_array(&mut r)?;
                let next_n = r.u64()?;
                PhaseState::Scan { distinct, congruence, next_n }
            }
            t => return Err(Error::Corrupt(format!("unknown phase tag {t}"))),
        };
        if r.remaining() != 0 {
            return Err(Error::Corrupt(format!("{} trailing bytes", r.remaining())));
        }
        Ok(Checkpoint { job_hash, seq, work_done, sign_hash, negatives, chain, phase })
    }

    /// Write atomically: temp file in the same directory, then rename.
    /// Returns the bytes' content hash (the value appended to the chain).
    pub fn save(&self, path: &Path) -> Result<u64> {
        let bytes = self.encode();
        let hash = crate::hash::fnv64(&bytes);
        let mut tmp = PathBuf::from(path);
        tmp.set_extension("tmp");
        fs::write(&tmp, &bytes)?;
        fs::rename(&tmp, path)?;
        Ok(hash)
    }

    pub fn load(path: &Path) -> Result<(Checkpoint, u64)> {
        let bytes = fs::read(path)?;
        let ck = Checkpoint::decode(&bytes)?;
        Ok((ck, crate::hash::fnv64(&bytes)))
    }
}
