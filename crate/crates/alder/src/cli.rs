//! Command line interface: `count`, `bounds`, `asymptotics`, `verify`.
//!
//! Exit codes: 0 success or expected outcome, 1 violation findings,
//! 2 usage or config errors, 3 capacity/certification errors.
//!
//! Primary output files are deterministic for fixed config and flags;
//! wall-clock timing goes to a `.meta.json` sidecar next to the report.

use crate::bounds::{thresholds_for, ThresholdReport};
use crate::config::Config;
use crate::constants::ConstantBundle;
use crate::envelope::{evaluate, EnvelopeEvaluation};
use crate::error::{Error, Result};
use crate::exact::{count_congruence, count_distinct};
use crate::family::{FamilyConfig, FamilyKind};
use crate::series::encode_series;
use crate::sweep::{
    run_sweep_with_options, RunOptions, SweepJob, SweepMode, SweepOutcome,
    DEFAULT_CHECKPOINT_EVERY,
};
use std::io::Write;
use std::path::PathBuf;

pub fn dispatch<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    dispatch_io(args, &mut out, &mut err)
}

pub fn dispatch_io<I: IntoIterator<Item = String>>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match run(args.into_iter().collect(), out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

const USAGE: &str = "usage: alder <count|bounds|asymptotics|verify> [flags]
  count        --d N --a N [--minus] [--kind congruence|distinct] --n-max N
               [--out FILE.csv] [--cache FILE.bin]
  bounds       [--d N]...  (default: all 4..=61)  [--out FILE.json] [--csv FILE.csv]
  asymptotics  [--d N]... [--n N]...  (defaults: d in {6,8,10}, n in {1e3,1e4,1e5})
               [--out FILE.csv]
  verify       --d N --mode delta|delta-minus --n-cap N
               [--checkpoint-every N] [--checkpoint-dir DIR] [--resume FILE.bin]
               [--out FILE.json] [--negatives-csv FILE.csv]
  global       [--config FILE] [--version]";

struct Parsed {
    subcommand: String,
    config: Config,
    flags: Vec<(String, Option<String>)>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(format!("{}\n{USAGE}", msg.into()))
}

/// Flags that never take a value.
const BARE_FLAGS: &[&str] = &["--minus", "--version"];

fn parse_args(args: Vec<String>) -> Result<Parsed> {
    let mut it = args.into_iter().peekable();
    let Some(subcommand) = it.next() else {
        return Err(usage("missing subcommand"));
    };
    if subcommand == "--version" {
        return Ok(Parsed { subcommand, config: Config::default(), flags: vec![] });
    }
    if !["count", "bounds", "asymptotics", "verify"].contains(&subcommand.as_str()) {
        return Err(usage(format!("unknown subcommand '{subcommand}'")));
    }
    let mut flags = Vec::new();
    let mut config_path: Option<PathBuf> = None;
    while let Some(tok) = it.next() {
        if !tok.starts_with("--") {
            return Err(usage(format!("unexpected argument '{tok}'")));
        }
        if BARE_FLAGS.contains(&tok.as_str()) {
            flags.push((tok, None));
            continue;
        }
        let Some(value) = it.next() else {
            return Err(usage(format!("flag '{tok}' expects a value")));
        };
        if tok == "--config" {
            config_path = Some(PathBuf::from(value));
        } else {
            flags.push((tok, Some(value)));
        }
    }
    let config = match config_path {
        Some(p) => Config::load(&p)?,
        None => Config::default(),
    };
    Ok(Parsed { subcommand, config, flags })
}

struct FlagReader {
    flags: Vec<(String, Option<String>)>,
    used: Vec<bool>,
}

impl FlagReader {
    fn new(flags: Vec<(String, Option<String>)>) -> Self {
        let used = vec![false; flags.len()];
        FlagReader { flags, used }
    }

    fn take_all(&mut self, name: &str) -> Vec<String> {
        let mut out = Vec::new();
        for (i, (flag, value)) in self.flags.iter().enumerate() {
            if flag == name {
                self.used[i] = true;
                if let Some(v) = value {
                    out.push(v.clone());
                }
            }
        }
        out
    }

    fn take(&mut self, name: &str) -> Result<Option<String>> {
        let all = self.take_all(name);
        if all.len() > 1 {
            return Err(usage(format!("flag '{name}' given more than once")));
        }
        Ok(all.into_iter().next())
    }

    fn take_bare(&mut self, name: &str) -> bool {
        let mut present = false;
        for (i, (flag, _)) in self.flags.iter().enumerate() {
            if flag == name {
                self.used[i] = true;
                present = true;
            }
        }
        present
    }

    fn finish(&self, subcommand: &str) -> Result<()> {
        for (i, (flag, _)) in self.flags.iter().enumerate() {
            if !self.used[i] {
                return Err(usage(format!("unknown flag '{flag}' for subcommand '{subcommand}'")));
            }
        }
        Ok(())
    }
}

fn parse_u64(name: &str, s: &str) -> Result<u64> {
    s.parse().map_err(|_| usage(format!("flag '{name}' expects an integer, got '{s}'")))
}

fn parse_u32(name: &str, s: &str) -> Result<u32> {
    s.parse().map_err(|_| usage(format!("flag '{name}' expects an integer, got '{s}'")))
}

fn required(name: &str, v: Option<String>) -> Result<String> {
    v.ok_or_else(|| usage(format!("missing required flag '{name}'")))
}

fn write_output(path: Option<&str>, content: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => out.write_all(content.as_bytes())?,
    }
    Ok(())
}

fn run(args: Vec<String>, out: &mut dyn Write) -> Result<i32> {
    let parsed = parse_args(args)?;
    if parsed.subcommand == "--version" || parsed.flags.iter().any(|(f, _)| f == "--version") {
        writeln!(
            out,
            "alder {} (parameter fingerprint {:016x})",
            crate::VERSION,
            parsed.config.fingerprint()
        )?;
        return Ok(0);
    }
    let mut flags = FlagReader::new(parsed.flags);
    match parsed.subcommand.as_str() {
        "count" => cmd_count(&parsed.config, &mut flags, out),
        "bounds" => cmd_bounds(&parsed.config, &mut flags, out),
        "asymptotics" => cmd_asymptotics(&parsed.config, &mut flags, out),
        "verify" => cmd_verify(&parsed.config, &mut flags, out),
        _ => unreachable!("validated in parse_args"),
    }
}

fn cmd_count(config: &Config, flags: &mut FlagReader, out: &mut dyn Write) -> Result<i32> {
    let d = parse_u32("--d", &required("--d", flags.take("--d")?)?)?;
    let a = parse_u32("--a", &required("--a", flags.take("--a")?)?)?;
    let n_max = parse_u64("--n-max", &required("--n-max", flags.take("--n-max")?)?)?;
    let minus = flags.take_bare("--minus");
    let kind = match flags.take("--kind")?.as_deref() {
        None | Some("congruence") => FamilyKind::Congruence,
        Some("distinct") => FamilyKind::Distinct,
        Some(other) => {
            return Err(usage(format!("flag '--kind' expects congruence|distinct, got '{other}'")))
        }
    };
    let out_path = flags.take("--out")?;
    let cache_path = flags.take("--cache")?;
    flags.finish("count")?;

    let family = FamilyConfig::new(d, a, minus, kind)
        .map_err(|e| usage(format!("invalid family flags: {e}")))?;
    let series = match kind {
        FamilyKind::Congruence => count_congruence(family, n_max, config.memory_budget_bytes)?,
        FamilyKind::Distinct => count_distinct(d, a, n_max, config.memory_budget_bytes)?,
    };
    let mut csv = Vec::new();
    series.write_csv(&mut csv)?;
    write_output(out_path.as_deref(), std::str::from_utf8(&csv).unwrap(), out)?;
    if let Some(p) = cache_path {
        std::fs::write(p, encode_series(&series))?;
    }
    Ok(0)
}

fn d_list(flags: &mut FlagReader, default: Vec<u32>) -> Result<Vec<u32>> {
    let ds = flags.take_all("--d");
    if ds.is_empty() {
        return Ok(default);
    }
    ds.iter().map(|s| parse_u32("--d", s)).collect()
}

fn cmd_bounds(config: &Config, flags: &mut FlagReader, out: &mut dyn Write) -> Result<i32> {
    let ds = d_list(flags, (4..=61).collect())?;
    let out_path = flags.take("--out")?;
    let csv_path = flags.take("--csv")?;
    let bundles_path = flags.take("--bundles")?;
    flags.finish("bounds")?;

    let mut reports: Vec<ThresholdReport> = Vec::new();
    let mut json_items = Vec::new();
    let mut bundle_items = Vec::new();
    for d in ds {
        let params = config.params_for(d)?;
        let (bundle, report) = thresholds_for(d, &params)?;
        let mut item = report.to_json();
        item["constant_bundle_fingerprint"] =
            serde_json::Value::String(format!("{:016x}", bundle.fingerprint()));
        if !bundle.notes.is_empty() {
            item["notes"] = serde_json::json!(bundle.notes);
        }
        json_items.push(item);
        if bundles_path.is_some() {
            bundle_items.push(bundle.to_json());
        }
        reports.push(report);
    }
    let json = serde_json::Value::Array(json_items);
    write_output(out_path.as_deref(), &format!("{:#}\n", json), out)?;
    if let Some(p) = bundles_path {
        std::fs::write(p, format!("{:#}\n", serde_json::Value::Array(bundle_items)))?;
    }
    if let Some(p) = csv_path {
        let mut csv = String::from(ThresholdReport::CSV_HEADER);
        csv.push('\n');
        for r in &reports {
            csv.push_str(&r.csv_row());
            csv.push('\n');
        }
        std::fs::write(p, csv)?;
    }
    Ok(0)
}

fn cmd_asymptotics(config: &Config, flags: &mut FlagReader, out: &mut dyn Write) -> Result<i32> {
    let ds = d_list(flags, vec![6, 8, 10])?;
    let ns: Vec<u64> = {
        let raw = flags.take_all("--n");
        if raw.is_empty() {
            vec![1_000, 10_000, 100_000]
        } else {
            raw.iter().map(|s| parse_u64("--n", s)).collect::<Result<_>>()?
        }
    };
    let out_path = flags.take("--out")?;
    flags.finish("asymptotics")?;

    let mut csv = String::from(EnvelopeEvaluation::CSV_HEADER);
    csv.push('\n');
    for &d in &ds {
        let params = config.params_for(d)?;
        let bundle = ConstantBundle::compute(d, &params)?;
        for &n in &ns {
            let ev = evaluate(&bundle, &params, n, config.precision_bits)?;
            csv.push_str(&ev.csv_row());
            csv.push('\n');
        }
    }
    write_output(out_path.as_deref(), &csv, out)?;
    Ok(0)
}

fn cmd_verify(config: &Config, flags: &mut FlagReader, out: &mut dyn Write) -> Result<i32> {
    let d = parse_u32("--d", &required("--d", flags.take("--d")?)?)?;
    let mode = SweepMode::parse(&required("--mode", flags.take("--mode")?)?)?;
    let n_cap = parse_u64("--n-cap", &required("--n-cap", flags.take("--n-cap")?)?)?;
    let every = match flags.take("--checkpoint-every")? {
        Some(s) => parse_u64("--checkpoint-every", &s)?,
        None => DEFAULT_CHECKPOINT_EVERY,
    };
    let ckpt_dir = flags.take("--checkpoint-dir")?.map(PathBuf::from);
    let resume = flags.take("--resume")?.map(PathBuf::from);
    let out_path = flags.take("--out")?;
    let negatives_csv = flags.take("--negatives-csv")?;
    flags.finish("verify")?;
    if n_cap < 1 {
        return Err(usage("flag '--n-cap' must be >= 1"));
    }
    if every < 1 {
        return Err(usage("flag '--checkpoint-every' must be >= 1"));
    }

    let job = SweepJob { d, mode, n_cap, checkpoint_every: every, resume_from: resume };
    let opts = RunOptions {
        budget_bytes: config.memory_budget_bytes,
        checkpoint_dir: ckpt_dir,
        stop_after_seq: None,
    };
    let report = match run_sweep_with_options(&job, &opts)? {
        SweepOutcome::Completed(r) => r,
        SweepOutcome::Stopped { .. } => unreachable!("no stop hook from the CLI"),
    };
    let json = format!("{:#}\n", report.to_json());
    match &out_path {
        Some(p) => {
            std::fs::write(p, &json)?;
            let meta = PathBuf::from(format!("{p}.meta.json"));
            std::fs::write(meta, format!("{:#}\n", report.meta_json()))?;
        }
        None => out.write_all(json.as_bytes())?,
    }
    if let Some(p) = negatives_csv {
        std::fs::write(p, report.negatives_csv())?;
    }
    Ok(report.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = dispatch_io(
            args.iter().map(|s| s.to_string()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_example_from_contract() {
        let (code, out, _) = run_capture(&["count", "--d", "3", "--a", "2", "--minus", "--n-max", "6"]);
        assert_eq!(code, 0);
        let last = out.lines().last().unwrap();
        assert!(last.ends_with(",6,1"), "got '{last}'");
        assert!(out.starts_with("d,a,minus,kind,n,count"));
    }

    #[test]
    fn verify_exit_codes() {
        let (code9, out9, _) = run_capture(&["verify", "--d", "9", "--mode", "delta", "--n-cap", "300"]);
        assert_eq!(code9, 0, "{out9}");
        assert!(out9.contains("\"matches_prediction\": true"));
        // d=7 carries negatives beyond the predicted triple.
        let (code7, out7, _) = run_capture(&["verify", "--d", "7", "--mode", "delta", "--n-cap", "300"]);
        assert_eq!(code7, 1);
        assert!(out7.contains("\"matches_prediction\": false"));
        let (code1, _, _) =
            run_capture(&["verify", "--d", "1", "--mode", "delta-minus", "--n-cap", "500"]);
        assert_eq!(code1, 0);
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let (code, _, err) = run_capture(&["count", "--d", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("--a"), "{err}");
        let (code, _, err) = run_capture(&["count", "--d", "3", "--a", "1", "--n-max", "5", "--frob", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("'--frob'"));
        let (code, _, err) = run_capture(&["verify", "--d", "7", "--mode", "sideways", "--n-cap", "10"]);
        assert_eq!(code, 2);
        assert!(err.contains("sideways"));
        let (code, _, err) = run_capture(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("frobnicate"));
    }

    #[test]
    fn version_prints_fingerprint() {
        let (code, out, _) = run_capture(&["--version"]);
        assert_eq!(code, 0);
        assert!(out.contains(crate::VERSION));
        assert!(out.contains("fingerprint"));
    }

    #[test]
    fn config_errors_exit_2() {
        let dir = std::env::temp_dir().join(format!("alder_cli_cfg_{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.conf");
        std::fs::write(&path, "precision_bits = x\n").unwrap();
        let (code, _, err) = run_capture(&[
            "count", "--d", "1", "--a", "1", "--n-max", "3", "--config", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("line 1"));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn outputs_are_deterministic() {
        let dir = std::env::temp_dir().join(format!("alder_cli_det_{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let report = dir.join("r.json");
        let mut bytes = Vec::new();
        for _ in 0..2 {
            let (code, _, _) = run_capture(&[
                "verify", "--d", "8", "--mode", "delta", "--n-cap", "200",
                "--out", report.to_str().unwrap(),
            ]);
            assert_eq!(code, 0);
            bytes.push(std::fs::read(&report).unwrap());
        }
        assert_eq!(bytes[0], bytes[1]);
        assert!(report.with_extension("json.meta.json").exists() || {
            // sidecar name is <out>.meta.json
            PathBuf::from(format!("{}.meta.json", report.display())).exists()
        });
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn bounds_subcommand_single_d() {
        let (code, out, _) = run_capture(&["bounds", "--d", "8"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["d"], 8);
        assert!(v[0]["N_d"].as_u64().unwrap() > 1000);
        assert_eq!(v[0]["conditional"], true);
    }

    #[test]
    fn asymptotics_subcommand_shape() {
        let (code, out, _) = run_capture(&["asymptotics", "--d", "6", "--n", "1000", "--n", "10000"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), EnvelopeEvaluation::CSV_HEADER);
        assert_eq!(out.lines().count(), 3);
    }
}
