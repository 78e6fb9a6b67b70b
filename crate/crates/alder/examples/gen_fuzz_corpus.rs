//! Regenerates the seed corpus under fuzz/corpus/. Run from the repository
//! root: `cargo run -p alder --example gen_fuzz_corpus`.

use alder::checkpoint::{Checkpoint, PhaseState};
use alder::config::Config;
use alder::exact::{count_congruence, DEFAULT_MEMORY_BUDGET};
use alder::family::FamilyConfig;
use alder::series::encode_series;
use rug::{Integer, Rational};
use std::fs;
use std::path::Path;

fn main() -> std::io::Result<()> {
    let root = Path::new("fuzz/corpus");

    let series = count_congruence(
        FamilyConfig::congruence(3, 2, true).unwrap(),
        24,
        DEFAULT_MEMORY_BUDGET,
    )
    .unwrap();
    fs::create_dir_all(root.join("fuzz_series_cache"))?;
    fs::write(root.join("fuzz_series_cache/series_d3.bin"), encode_series(&series))?;

    let ck = Checkpoint {
        job_hash: 0x1234_5678_9abc_def0,
        seq: 1,
        work_done: 4096,
        sign_hash: alder::hash::FNV_OFFSET,
        negatives: vec![(8, Integer::from(-1))],
        chain: vec![0xfeed_f00d],
        phase: PhaseState::Scan {
            distinct: vec![Integer::from(1), Integer::from(0), Integer::from(1)],
            congruence: vec![Integer::from(1), Integer::from(0), Integer::from(1)],
            next_n: 1,
        },
    };
    fs::create_dir_all(root.join("fuzz_checkpoint"))?;
    fs::write(root.join("fuzz_checkpoint/scan_phase.bin"), ck.encode())?;

    fs::create_dir_all(root.join("fuzz_config"))?;
    fs::write(root.join("fuzz_config/default.conf"), Config::default().to_text())?;
    let mut custom = Config::default();
    custom.f_err_max = Some(Rational::from((1u64, 10_000u64)));
    custom.precision_bits = 512;
    fs::write(root.join("fuzz_config/custom.conf"), custom.to_text())?;

    println!("seed corpus written under {}", root.display());
    Ok(())
}
