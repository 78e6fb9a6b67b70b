//! Cross-module invariants of the counting families and the bound chain.

use alder::constants::ConstantBundle;
use alder::envelope::{
    ln_of, log_congruence_upper, log_distinct_error, log_main_distinct,
};
use alder::exact::{count_congruence, count_distinct, DEFAULT_MEMORY_BUDGET};
use alder::family::FamilyConfig;
use alder::params::BoundParams;
use alder::real::{f_int, log_diff_exp};
use alder::bounds::thresholds_for;
use rug::Rational;

const BUDGET: u64 = DEFAULT_MEMORY_BUDGET;
const PREC: u32 = 256;

#[test]
fn minus_family_dominated_and_nonnegative() {
    // Q_d^(a)(n) >= Q_d^(a,-)(n) >= 0.
    for d in [1u32, 3, 7, 12] {
        for a in 1..=2 {
            let full =
                count_congruence(FamilyConfig::congruence(d, a, false).unwrap(), 200, BUDGET)
                    .unwrap();
            let minus =
                count_congruence(FamilyConfig::congruence(d, a, true).unwrap(), 200, BUDGET)
                    .unwrap();
            for n in 0..=200u64 {
                assert!(minus.get(n).cmp0() != std::cmp::Ordering::Less);
                assert!(full.get(n) >= minus.get(n), "d={d} a={a} n={n}");
            }
        }
    }
}

#[test]
fn andrews_dominance() {
    // Q_d^(1)(n) >= Q_d^(2,-)(n).
    for d in 1..=12u32 {
        let one = count_congruence(FamilyConfig::congruence(d, 1, false).unwrap(), 150, BUDGET)
            .unwrap();
        let two_minus =
            count_congruence(FamilyConfig::congruence(d, 2, true).unwrap(), 150, BUDGET).unwrap();
        for n in 1..=150u64 {
            assert!(one.get(n) >= two_minus.get(n), "d={d} n={n}");
        }
    }
}

#[test]
fn shift_inequality() {
    // q_d^(a)(n) >= q_ceil(d/a)^(1)(ceil(n/a)) for n >= d + 2a.
    for a in 1..=2u32 {
        for d in 1..=8u32 {
            let shifted_d = d.div_ceil(a);
            let lhs = count_distinct(d, a, 150, BUDGET).unwrap();
            let rhs = count_distinct(shifted_d, 1, 150, BUDGET).unwrap();
            for n in u64::from(d + 2 * a)..=150 {
                let shifted_n = n.div_ceil(u64::from(a));
                assert!(
                    lhs.get(n) >= rhs.get(shifted_n),
                    "a={a} d={d} n={n}: {} < {}",
                    lhs.get(n),
                    rhs.get(shifted_n)
                );
            }
        }
    }
}

#[test]
fn doubling_bijection_mod_four() {
    // Q_1^(1)(n/2) = Q_1^(2)(n) for even n.
    let odd_parts =
        count_congruence(FamilyConfig::congruence(1, 1, false).unwrap(), 200, BUDGET).unwrap();
    let even_two =
        count_congruence(FamilyConfig::congruence(1, 2, false).unwrap(), 400, BUDGET).unwrap();
    for half in 0..=200u64 {
        assert_eq!(odd_parts.get(half), even_two.get(2 * half), "n={}", 2 * half);
    }
}

#[test]
fn odd_n_vanishing_for_minus_family_d1() {
    // Q_1^(2,-) has only even parts, so odd n count zero.
    let series =
        count_congruence(FamilyConfig::congruence(1, 2, true).unwrap(), 501, BUDGET).unwrap();
    for n in (1..=501u64).step_by(2) {
        assert_eq!(*series.get(n), 0, "n={n}");
    }
}

#[test]
fn certification_transfer_chain() {
    // m_d(n) - r_d_bound(n) >= combined_Q_upper(n) for n >= N(d): the
    // inequality chain that certifies q >= Q past the threshold.
    for d in [6u32, 8, 10] {
        let params = BoundParams::defaults_for(d, PREC)
            .with_f_err_max(Some(Rational::from((1u64, 10_000u64))));
        let (bundle, report) = thresholds_for(d, &params).unwrap();
        for mult in [1u64, 2, 10] {
            let n = report.n_d * mult;
            let ln_n = ln_of(n, PREC);
            let main = log_main_distinct(&bundle, &ln_n, PREC);
            let err = log_distinct_error(&bundle, &params, &ln_n, PREC);
            let lower = log_diff_exp(&main, &err, PREC).unwrap();
            let upper = log_congruence_upper(&bundle, &params, &ln_n, PREC);
            assert!(lower >= upper, "chain fails at d={d} n={n}");
        }
    }
}

#[test]
fn delta_minus_d8_clean_to_full_desk_cap() {
    use alder::sweep::{run_sweep, SweepJob, SweepMode};
    let report = run_sweep(&SweepJob::new(8, SweepMode::DeltaMinus, 50_000), BUDGET).unwrap();
    assert!(report.negatives.is_empty());
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn distinct_count_within_envelope_at_desk_scale() {
    // Exact q_d^(2)(n) >= m_d(n) - r_d_bound(n).
    for d in [6u32, 8] {
        let params = BoundParams::defaults_for(d, PREC)
            .with_f_err_max(Some(Rational::from((1u64, 10_000u64))));
        let bundle = ConstantBundle::compute(d, &params).unwrap();
        let series = count_distinct(d, 2, 10_000, BUDGET).unwrap();
        for n in [1_000u64, 10_000] {
            let ln_n = ln_of(n, PREC);
            let exact = f_int(PREC, series.get(n));
            let lower = log_main_distinct(&bundle, &ln_n, PREC).exp()
                - log_distinct_error(&bundle, &params, &ln_n, PREC).exp();
            assert!(exact >= lower, "q below envelope floor at d={d} n={n}");
        }
    }
}
