//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// A family configuration violates an invariant (`d < 1`, distinct with
    /// minus, unsupported residue parameter, ...).
    InvalidFamily(String),
    /// A table or series would exceed the configured memory budget.
    Capacity {
        needed_bytes: u64,
        budget_bytes: u64,
        /// Largest n that fits the budget, when meaningful.
        max_feasible_n: Option<u64>,
        context: String,
    },
    /// Brute-force enumeration requested above the oracle cap.
    OracleCap { n: u64, cap: u64 },
    /// A stated hypothesis of one of the bound derivations fails.
    Hypothesis { constraint: &'static str, detail: String },
    /// Input outside the domain of a formula (e.g. odd d where an even-d
    /// constant is required).
    Domain(String),
    /// A certified search (y_max, root bracket) could not produce a
    /// positive witness.
    Certification(String),
    /// Root bracketing failed; carries the scanned interval.
    Bracket { lo: f64, hi: f64, detail: String },
    /// A value is unavailable because an optional input is missing.
    Unavailable(&'static str),
    /// Checkpoint or cache file is structurally invalid.
    Corrupt(String),
    /// Checkpoint format version does not match.
    VersionMismatch { found: u32, expected: u32 },
    /// Checkpoint belongs to a different job configuration.
    JobHashMismatch { found: u64, expected: u64 },
    /// Config file parse failure with 1-based line number.
    Config { line: usize, message: String },
    /// Command line usage error; names the offending flag.
    Usage(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidFamily(m) => write!(f, "invalid family: {m}"),
            Error::Capacity { needed_bytes, budget_bytes, max_feasible_n, context } => {
                write!(
                    f,
                    "capacity error in {context}: needs ~{needed_bytes} bytes, budget {budget_bytes}"
                )?;
                if let Some(n) = max_feasible_n {
                    write!(f, " (largest feasible n under this budget: {n})")?;
                }
                Ok(())
            }
            Error::OracleCap { n, cap } => {
                write!(f, "brute-force oracle refuses n={n} above cap {cap}")
            }
            Error::Hypothesis { constraint, detail } => {
                write!(f, "hypothesis violation [{constraint}]: {detail}")
            }
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Certification(m) => write!(f, "certification failure: {m}"),
            Error::Bracket { lo, hi, detail } => {
                write!(f, "root bracketing failed on [{lo}, {hi}]: {detail}")
            }
            Error::Unavailable(what) => write!(f, "unavailable: {what}"),
            Error::Corrupt(m) => write!(f, "corrupt file: {m}"),
            Error::VersionMismatch { found, expected } => {
                write!(f, "format version mismatch: found {found}, expected {expected}")
            }
            Error::JobHashMismatch { found, expected } => {
                write!(f, "job config hash mismatch: found {found:016x}, expected {expected:016x}")
            }
            Error::Config { line, message } => write!(f, "config line {line}: {message}"),
            Error::Usage(m) => write!(f, "usage error: {m}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl Error {
    /// Process exit code mandated for this error class: 2 for usage/config
    /// problems, 3 for capacity and certification problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Config { .. } => 2,
            _ => 3,
        }
    }
}
