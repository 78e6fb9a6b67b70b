//! Run configuration: a single text file of `key = value` lines.
//!
//! All real-valued parameters are written as exact decimals or fractions
//! (`0.224`, `1/800`) and parsed into exact rationals, so a config file
//! reproduces the same computation on any platform. Parse errors cite the
//! 1-based line number.

use crate::error::{Error, Result};
use crate::hash::fnv64;
use crate::params::BoundParams;
use rug::{Integer, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub precision_bits: u32,
    pub memory_budget_bytes: u64,
    /// 0 means one worker per available core.
    pub worker_count: usize,
    pub f_err_max: Option<Rational>,
    pub strict_hypotheses: bool,
    pub epsilon: Rational,
    pub epsilon2: Rational,
    pub xi: Rational,
    pub c: Rational,
    pub delta_even: Rational,
    pub delta_odd: Rational,
    /// Default to delta/4 when absent.
    pub epsilon1_even: Option<Rational>,
    pub epsilon1_odd: Option<Rational>,
    pub k_even: [Rational; 7],
    pub k_odd: [Rational; 7],
}

fn r(num: i64, den: u64) -> Rational {
    Rational::from((num, den))
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_bits: 256,
            memory_budget_bytes: 8 << 30,
            worker_count: 0,
            f_err_max: None,
            strict_hypotheses: false,
            epsilon: r(11, 100),
            epsilon2: r(1, 1),
            xi: r(224, 1000),
            c: r(37501, 100000),
            delta_even: r(1, 3),
            delta_odd: r(1, 80),
            epsilon1_even: None,
            epsilon1_odd: None,
            k_even: [r(1, 800), r(1, 800), r(1, 2), r(1, 800), r(1, 800), r(1, 800), r(1, 800)],
            k_odd: [r(1, 800), r(1, 8), r(1, 8), r(1, 800), r(1, 800), r(1, 800), r(1, 800)],
        }
    }
}

/// Parse an exact rational from `p/q`, a decimal string, or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: Integer = num.trim().parse().ok()?;
        let d: Integer = den.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational::from((n, d)));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.trim_start().starts_with('-');
        let int: Integer = if int_part.is_empty() || int_part == "-" {
            Integer::new()
        } else {
            int_part.parse().ok()?
        };
        let frac: Integer = frac_part.parse().ok()?;
        let scale = rug::ops::Pow::pow(Integer::from(10u32), frac_part.len() as u32);
        let mag = Rational::from((int.clone().abs() * &scale + frac, scale));
        return Some(if negative { -mag } else { mag });
    }
    let n: Integer = s.parse().ok()?;
    Some(Rational::from(n))
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut config = Config::default();
        let mut seen = std::collections::BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config {
                    line: line_no,
                    message: format!("expected 'key = value', got '{line}'"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(Error::Config {
                    line: line_no,
                    message: format!("duplicate key '{key}'"),
                });
            }
            let bad = |field: &str| Error::Config {
                line: line_no,
                message: format!("invalid {field} value '{value}'"),
            };
            let ratio = |field: &str| parse_rational(value).ok_or_else(|| bad(field));
            match key {
                "precision_bits" => {
                    config.precision_bits = value.parse().map_err(|_| bad(key))?
                }
                "memory_budget_bytes" => {
                    config.memory_budget_bytes = value.parse().map_err(|_| bad(key))?
                }
                "worker_count" => config.worker_count = value.parse().map_err(|_| bad(key))?,
                "strict_hypotheses" => {
                    config.strict_hypotheses = match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(bad(key)),
                    }
                }
                "f_err_max" => config.f_err_max = Some(ratio(key)?),
                "epsilon" => config.epsilon = ratio(key)?,
                "epsilon2" => config.epsilon2 = ratio(key)?,
                "xi" => config.xi = ratio(key)?,
                "c" => config.c = ratio(key)?,
                "delta_even" => config.delta_even = ratio(key)?,
                "delta_odd" => config.delta_odd = ratio(key)?,
                "epsilon1_even" => config.epsilon1_even = Some(ratio(key)?),
                "epsilon1_odd" => config.epsilon1_odd = Some(ratio(key)?),
                _ => {
                    let weight = key
                        .strip_prefix('k')
                        .and_then(|rest| rest.split_once('_'))
                        .and_then(|(i, parity)| {
                            let i: usize = i.parse().ok()?;
                            if !(1..=7).contains(&i) {
                                return None;
                            }
                            match parity {
                                "even" => Some((i, true)),
                                "odd" => Some((i, false)),
                                _ => None,
                            }
                        });
                    match weight {
                        Some((i, true)) => config.k_even[i - 1] = ratio(key)?,
                        Some((i, false)) => config.k_odd[i - 1] = ratio(key)?,
                        None => {
                            return Err(Error::Config {
                                line: line_no,
                                message: format!("unknown key '{key}'"),
                            })
                        }
                    }
                }
            }
        }
        // Surface invalid parameter combinations at parse time.
        config.params_for(4)?;
        config.params_for(5)?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Config> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    /// Resolved parameter set for one d (parity applied).
    pub fn params_for(&self, d: u32) -> Result<BoundParams> {
        let even = d % 2 == 0;
        let delta = if even { self.delta_even.clone() } else { self.delta_odd.clone() };
        let epsilon1 =
            if even { self.epsilon1_even.clone() } else { self.epsilon1_odd.clone() };
        let k = if even { self.k_even.clone() } else { self.k_odd.clone() };
        let mut p = BoundParams::from_first_seven(
            self.epsilon.clone(),
            self.epsilon2.clone(),
            delta,
            self.xi.clone(),
            self.c.clone(),
            epsilon1,
            k,
            self.f_err_max.clone(),
            self.precision_bits,
        )?;
        p.strict_hypotheses = self.strict_hypotheses;
        Ok(p)
    }

    /// Canonical text rendering; `parse(to_text())` reproduces the config.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# alder configuration\n");
        out.push_str(&format!("precision_bits = {}\n", self.precision_bits));
        out.push_str(&format!("memory_budget_bytes = {}\n", self.memory_budget_bytes));
        out.push_str(&format!("worker_count = {}\n", self.worker_count));
        out.push_str(&format!("strict_hypotheses = {}\n", self.strict_hypotheses));
        if let Some(fe) = &self.f_err_max {
            out.push_str(&format!("f_err_max = {fe}\n"));
        }
        out.push_str(&format!("epsilon = {}\n", self.epsilon));
        out.push_str(&format!("epsilon2 = {}\n", self.epsilon2));
        out.push_str(&format!("xi = {}\n", self.xi));
        out.push_str(&format!("c = {}\n", self.c));
        out.push_str(&format!("delta_even = {}\n", self.delta_even));
        out.push_str(&format!("delta_odd = {}\n", self.delta_odd));
        if let Some(e1) = &self.epsilon1_even {
            out.push_str(&format!("epsilon1_even = {e1}\n"));
        }
        if let Some(e1) = &self.epsilon1_odd {
            out.push_str(&format!("epsilon1_odd = {e1}\n"));
        }
        for (i, k) in self.k_even.iter().enumerate() {
            out.push_str(&format!("k{}_even = {}\n", i + 1, k));
        }
        for (i, k) in self.k_odd.iter().enumerate() {
            out.push_str(&format!("k{}_odd = {}\n", i + 1, k));
        }
        out
    }

    /// Stable fingerprint of the effective parameters.
    pub fn fingerprint(&self) -> u64 {
        fnv64(self.to_text().as_bytes())
    }

    pub fn effective_workers(&self) -> usize {
        if self.worker_count == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            self.worker_count
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_reproduce_table_values() {
        let c = Config::default();
        assert_eq!(c.c, Rational::from((37501u64, 100000u64)));
        assert_eq!(c.epsilon, Rational::from((11u64, 100u64)));
        assert_eq!(c.epsilon2, 1);
        assert_eq!(c.xi, Rational::from((28u64, 125u64))); // 0.224 reduced
        assert_eq!(c.delta_even, Rational::from((1u64, 3u64)));
        assert_eq!(c.delta_odd, Rational::from((1u64, 80u64)));
        let even = c.params_for(8).unwrap();
        assert_eq!(*even.weight(3), Rational::from((1u64, 2u64)));
        assert_eq!(*even.weight(8), Rational::from((394u64, 800u64)));
        let odd = c.params_for(9).unwrap();
        assert_eq!(*odd.weight(2), Rational::from((1u64, 8u64)));
        assert_eq!(*odd.weight(8), Rational::from((595u64, 800u64)));
    }

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("1/800").unwrap(), Rational::from((1u64, 800u64)));
        assert_eq!(parse_rational("0.224").unwrap(), Rational::from((224u64, 1000u64)));
        assert_eq!(parse_rational("-0.5").unwrap(), Rational::from((-1, 2)));
        assert_eq!(parse_rational("3").unwrap(), 3);
        assert!(parse_rational("0x12").is_none());
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("1.2e3").is_none());
    }

    #[test]
    fn roundtrip_and_fingerprint() {
        let mut c = Config::default();
        c.f_err_max = Some(Rational::from((1u64, 10000u64)));
        c.precision_bits = 320;
        let text = c.to_text();
        let parsed = Config::parse(&text).unwrap();
        assert_eq!(parsed, c);
        assert_eq!(parsed.fingerprint(), c.fingerprint());
        assert_ne!(Config::default().fingerprint(), c.fingerprint());
    }

    #[test]
    fn errors_cite_line_numbers() {
        let text = "precision_bits = 256\nnot a line\n";
        match Config::parse(text) {
            Err(Error::Config { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected config error, got {other:?}"),
        }
        match Config::parse("zeta = 3\n") {
            Err(Error::Config { line, message }) => {
                assert_eq!(line, 1);
                assert!(message.contains("unknown key 'zeta'"));
            }
            other => panic!("{other:?}"),
        }
        match Config::parse("epsilon = 0.9\n") {
            Err(Error::Domain(m)) => assert!(m.contains("epsilon")),
            other => panic!("{other:?}"),
        }
        match Config::parse("precision_bits = 1\nprecision_bits = 2\n") {
            Err(Error::Config { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let c = Config::parse("# comment\n\nprecision_bits = 128 # trailing\n").unwrap();
        assert_eq!(c.precision_bits, 128);
    }

    #[test]
    fn weight_overrides_apply() {
        let c = Config::parse("k3_even = 1/4\nk8? = ...").unwrap_err();
        let _ = c; // k8? is invalid
        let c = Config::parse("k3_even = 1/4\n").unwrap();
        let p = c.params_for(8).unwrap();
        assert_eq!(*p.weight(3), Rational::from((1u64, 4u64)));
        // K8 absorbs the change to keep the sum at 1.
        assert_eq!(*p.weight(8), Rational::from((1u64, 1u64)) - p.weights[..7].iter().fold(Rational::new(), |a, k| a + k));
    }
}
