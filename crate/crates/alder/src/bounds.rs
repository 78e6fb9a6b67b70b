//! Threshold engine: the eight per-summand thresholds N_1..N_8, their
//! maxima N_Q (congruence side), N_q (distinct side), and N(d).
//!
//! N_1, N_2, N_4, N_5, N_6, N_7 are closed-form ceilings. N_3 and N_8 are
//! the upper crossings of a power law against an exponential; written in
//! the right variable (u = sqrt(n), x = ln n) the log-difference is
//! strictly convex, so its minimum separates the two crossings and the
//! upper one is bisection-bracketed on [argmin, doubled upper]. Final
//! ceilings go through `ceil_certified`, the round-up step of the directed
//! rounding discipline.

use crate::constants::ConstantBundle;
use crate::error::{Error, Result};
use crate::params::BoundParams;
use crate::real::{ceil_certified, f_ratio, f_u64, pi, powf};
use rug::Float;
use serde_json::{json, Value};

/// Per-d threshold report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub d: u32,
    /// 2 for even d (method through Q_d^(2)), 1 for odd d (through Q_d^(1)).
    pub b: u32,
    /// N_1..N_8; None marks a threshold unavailable (N_7 without f_err_max).
    pub n: [Option<u64>; 8],
    /// max(N_1..N_3).
    pub n_congruence: u64,
    /// max over the available of N_4..N_8.
    pub n_distinct: u64,
    /// max(n_congruence, n_distinct).
    pub n_d: u64,
    /// True when any threshold is unavailable or depends on a configured
    /// external constant (N_7 does in both cases).
    pub conditional: bool,
}

impl ThresholdReport {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "b": self.b,
            "N": self.n,
            "N_Q": self.n_congruence,
            "N_q": self.n_distinct,
            "N_d": self.n_d,
            "conditional": self.conditional,
        })
    }

    pub const CSV_HEADER: &'static str = "d,N1,N2,N3,N4,N5,N6,N7,N8,NQ,Nq,Nd,conditional";

    pub fn csv_row(&self) -> String {
        let mut fields = vec![self.d.to_string()];
        for v in &self.n {
            fields.push(v.map(|x| x.to_string()).unwrap_or_default());
        }
        fields.push(self.n_congruence.to_string());
        fields.push(self.n_distinct.to_string());
        fields.push(self.n_d.to_string());
        fields.push(self.conditional.to_string());
        fields.join(",")
    }
}

/// 2 sqrt(A_d) - 2 pi / sqrt(3(d+3)), the growth-rate gap between the two
/// main terms. The whole method needs it positive.
fn growth_gap(bundle: &ConstantBundle, prec: u32) -> Result<Float> {
    let gap: Float = bundle.a_d.clone().sqrt() * 2u32
        - pi(prec) * 2u32 / f_u64(prec, 3 * (u64::from(bundle.d) + 3)).sqrt();
    if !gap.is_sign_positive() {
        return Err(Error::Hypothesis {
            constraint: "2 sqrt(A_d) > 2 pi / sqrt(3(d+3))",
            detail: format!("growth gap {:.3e} at d={}", gap.to_f64(), bundle.d),
        });
    }
    Ok(gap)
}

/// sqrt(pi alpha^(d-3) (d alpha^(d-1) + 1)), the main-term radical.
fn main_radical(bundle: &ConstantBundle, prec: u32) -> Float {
    // gamma = 1/(2 pi sqrt(X)) => sqrt(pi X) = sqrt(pi) / (2 pi gamma).
    let g = Float::with_val(prec, &bundle.distinct.gamma);
    pi(prec).sqrt() / (pi(prec) * 2u32 * g)
}

/// Ceiling of (L / gap)^2, or 1 when the log L is already nonpositive.
fn squared_log_threshold(log_arg: Float, gap: &Float) -> Result<u64> {
    let l = log_arg.ln();
    if !l.is_sign_positive() {
        return Ok(1);
    }
    let v: Float = (l / gap).square();
    Ok(ceil_certified(&v)?.max(1))
}

/// N_1: ceil((ln(sqrt(pi X) / (2 K1 sin(b pi/(d+3)) (3(d+3) A_d)^(1/4))))^2 / gap^2).
pub fn threshold_n1(bundle: &ConstantBundle, params: &BoundParams, prec: u32) -> Result<u64> {
    let gap = growth_gap(bundle, prec)?;
    let k1 = f_ratio(prec, params.weight(1));
    let quarter: Float = (f_u64(prec, 3 * (u64::from(bundle.d) + 3)) * &bundle.a_d)
        .sqrt()
        .sqrt();
    let arg: Float = main_radical(bundle, prec) / (k1 * 2u32 * bundle.sin_b(prec) * quarter);
    squared_log_threshold(arg, &gap)
}

/// N_2: as N_1 with 2 c7 pi^(1+delta/2) sqrt(pi X) / (K2 A^(1/4) (3(d+3))^2 sin).
pub fn threshold_n2(bundle: &ConstantBundle, params: &BoundParams, prec: u32) -> Result<u64> {
    let gap = growth_gap(bundle, prec)?;
    let k2 = f_ratio(prec, params.weight(2));
    let delta = f_ratio(prec, &params.delta);
    let c7 = Float::with_val(prec, &bundle.congruence.c7);
    let a_quarter = powf(&bundle.a_d, &Float::with_val(prec, 0.25));
    let d3sq = f_u64(prec, 3 * (u64::from(bundle.d) + 3)).square();
    let pi_pow = powf(&pi(prec), &(delta / 2u32 + 1u32));
    let arg: Float = c7 * 2u32 * pi_pow * main_radical(bundle, prec)
        / (k2 * a_quarter * d3sq * bundle.sin_b(prec));
    squared_log_threshold(arg, &gap)
}

/// Upper crossing of the convex log-difference h on [argmin, inf), mapped
/// to n-space by `to_n` and rounded up. Returns 1 when h has no zero
/// (the inequality holds everywhere).
fn upper_crossing(
    h: impl Fn(&Float) -> Float,
    argmin: Float,
    to_n: impl Fn(&Float) -> Float,
    prec: u32,
) -> Result<u64> {
    if h(&argmin).is_sign_positive() {
        return Ok(1);
    }
    let mut lo = argmin;
    let mut hi = lo.clone();
    let mut expanded = false;
    for _ in 0..1024 {
        hi *= 2u32;
        if hi.is_sign_positive() && h(&hi).is_sign_positive() {
            expanded = true;
            break;
        }
        if hi.is_zero() || hi.is_sign_negative() {
            hi = Float::with_val(prec, 1u32);
        }
    }
    if !expanded {
        return Err(Error::Bracket {
            lo: lo.to_f64(),
            hi: hi.to_f64(),
            detail: "exponential side never overtook the algebraic side".into(),
        });
    }
    // Bisect until the ceiling in n-space is pinned down.
    for _ in 0..(4 * prec) {
        let n_lo = to_n(&lo).ceil();
        let n_hi = to_n(&hi).ceil();
        if n_lo == n_hi {
            return Ok(n_hi.to_integer().and_then(|i| i.to_u64()).ok_or_else(|| {
                Error::Domain("threshold does not fit in u64".into())
            })?.max(1));
        }
        let mid: Float = (lo.clone() + &hi) / 2u32;
        if h(&mid).is_sign_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ceil_certified(&to_n(&hi))?.max(1))
}

/// N_3: upper root sigma_1 of P n^(3/4) = exp(gap sqrt(n)) with
/// P = 2 sqrt(pi X) / (K3 A^(1/4)); in u = sqrt(n) the log-difference
/// h(u) = gap u - (3/2) ln u - ln P is convex with argmin (3/2)/gap.
pub fn threshold_n3(bundle: &ConstantBundle, params: &BoundParams, prec: u32) -> Result<u64> {
    let gap = growth_gap(bundle, prec)?;
    let k3 = f_ratio(prec, params.weight(3));
    let a_quarter = powf(&bundle.a_d, &Float::with_val(prec, 0.25));
    let ln_p = (main_radical(bundle, prec) * 2u32 / (k3 * a_quarter)).ln();
    let h = |u: &Float| -> Float {
        gap.clone() * u - u.clone().ln() * 3u32 / 2u32 - &ln_p
    };
    let argmin: Float = Float::with_val(prec, 1.5) / &gap;
    upper_crossing(h, argmin, |u| u.clone().square(), prec)
}

/// N_4: ceil((A^-(1/2+eps) ln(1/(K4 sqrt(2 pi) A^(eps/2+1/4))))^(2/(1-2 eps))).
pub fn threshold_n4(bundle: &ConstantBundle, params: &BoundParams, prec: u32) -> Result<u64> {
    let eps = f_ratio(prec, &params.epsilon);
    let k4 = f_ratio(prec, params.weight(4));
    let a = &bundle.a_d;
    let arg: Float = 1u32
        / (k4 * (pi(prec) * 2u32).sqrt() * powf(a, &(eps.clone() / 2u32 + 0.25f32)));
    let l = arg.ln();
    if !l.is_sign_positive() {
        return Ok(1);
    }
    let base: Float = powf(a, &(-(eps.clone()) - 0.5f32)) * l;
    let expo: Float = 2u32 / (Float::with_val(prec, 1u32) - eps * 2u32);
    Ok(ceil_certified(&powf(&base, &expo))?.max(1))
}

/// N_5: ceil((A^((1+3 eps2)/2) / ln(K5 + 1))^(2/(3 eps2 - 1))).
pub fn threshold_n5(bundle: &ConstantBundle, params: &BoundParams, prec: u32) -> Result<u64> {
    let eps2 = f_ratio(prec, &params.epsilon2);
    let k5 = f_ratio(prec, params.weight(5));
    let num = powf(&bundle.a_d, &((eps2.clone() * 3u32 + 1u32) / 2u32));
    let base: Float = num / k5.ln_1p();
    if base <= 1u32 {
        return Ok(1);
    }
    let expo: Float = 2u32 / (eps2 * 3u32 - 1u32);
    Ok(ceil_certified(&powf(&base, &expo))?.max(1))
}

/// N_6: ceil(((A^(5/4)(1 + A^eps) + A^(1/4)) / (sqrt(pi) K6))^(4/3)).
pub fn threshold_n6(bundle: &ConstantBundle, params: &BoundParams, prec: u32) -> Result<u64> {
    let eps = f_ratio(prec, &params.epsilon);
    let k6 = f_ratio(prec, params.weight(6));
    let a = &bundle.a_d;
    let num: Float = powf(a, &Float::with_val(prec, 1.25)) * (powf(a, &eps) + 1u32)
        + powf(a, &Float::with_val(prec, 0.25));
    let base: Float = num / (pi(prec).sqrt() * k6);
    if base <= 1u32 {
        return Ok(1);
    }
    let expo: Float = Float::with_val(prec, 4u32) / 3u32;
    Ok(ceil_certified(&powf(&base, &expo))?.max(1))
}

/// N_7: ceil(A^(1+1/eps) f^(2/eps) / (K7^2 - f^2 A)^(1/eps)); unavailable
/// without a configured f_err_max, 1 when the constant is zero, domain
/// error when K7^2 <= f^2 A (the denominator degenerates).
pub fn threshold_n7(
    bundle: &ConstantBundle,
    params: &BoundParams,
    prec: u32,
) -> Result<Option<u64>> {
    let Some(fe) = &params.f_err_max else {
        return Ok(None);
    };
    if *fe == 0 {
        // A zero quadrature-error constant kills the S7 summand outright.
        return Ok(Some(1));
    }
    let eps = f_ratio(prec, &params.epsilon);
    let k7 = f_ratio(prec, params.weight(7));
    let f = f_ratio(prec, fe);
    let a = &bundle.a_d;
    let margin: Float = k7.square() - f.clone().square() * a;
    if !margin.is_sign_positive() {
        return Err(Error::Domain(format!(
            "f_err_max too large: K7^2 - f_err_max^2 A_d = {:.3e} <= 0 at d={}",
            margin.to_f64(),
            bundle.d
        )));
    }
    let inv_eps: Float = 1u32 / eps.clone();
    let v: Float = powf(a, &(inv_eps.clone() + 1u32)) * powf(&f, &(inv_eps.clone() * 2u32))
        / powf(&margin, &inv_eps);
    Ok(Some(ceil_certified(&v)?.max(1)))
}

/// N_8: upper root sigma_1 of C n = exp(eta rho A^(eps-1/2) n^(1/2-eps))
/// with C = sqrt(2) (1+F2) exp((3-d)/2 ln alpha + F1) / (K8 gamma sqrt(d) sqrt(A));
/// in x = ln n the log-difference h(x) = k e^(cx) - x - ln C is convex
/// with argmin at x = ln(1/(k c)) / c.
pub fn threshold_n8(bundle: &ConstantBundle, params: &BoundParams, prec: u32) -> Result<u64> {
    let eps = f_ratio(prec, &params.epsilon);
    let k8 = f_ratio(prec, params.weight(8));
    let a = &bundle.a_d;
    let k: Float = bundle.distinct.eta.clone()
        * &bundle.distinct.rho
        * powf(a, &(eps.clone() - 0.5f32));
    if !k.is_sign_positive() {
        return Err(Error::Hypothesis {
            constraint: "eta rho A^(eps-1/2) > 0",
            detail: format!("decay coefficient {:.3e} at d={}", k.to_f64(), bundle.d),
        });
    }
    let d = bundle.d;
    let exp_shift: Float = bundle.alpha.clone().ln()
        * (Float::with_val(prec, 3u32) - f_u64(prec, u64::from(d)))
        / 2u32
        + &bundle.distinct.f1_bound;
    let c: Float = Float::with_val(prec, 2u32).sqrt()
        * (bundle.distinct.f2_bound.clone() + 1u32)
        * exp_shift.exp()
        / (k8 * &bundle.distinct.gamma * f_u64(prec, u64::from(d)).sqrt() * a.clone().sqrt());
    let ln_c = c.ln();
    let cc: Float = Float::with_val(prec, 0.5) - &eps;
    let h = |x: &Float| -> Float { k.clone() * (cc.clone() * x).exp() - x - &ln_c };
    // argmin of h: x = ln(1/(k c)) / c; clamp to x >= 0 (n >= 1).
    let mut argmin: Float = (1u32 / (k.clone() * &cc)).ln() / &cc;
    if argmin.is_sign_negative() {
        argmin = Float::new(prec);
    }
    upper_crossing(h, argmin, |x| x.clone().exp(), prec)
}

/// All eight thresholds and their maxima for one d.
pub fn compute_thresholds(
    bundle: &ConstantBundle,
    params: &BoundParams,
) -> Result<ThresholdReport> {
    let prec = params.precision_bits;
    let n1 = threshold_n1(bundle, params, prec)?;
    let n2 = threshold_n2(bundle, params, prec)?;
    let n3 = threshold_n3(bundle, params, prec)?;
    let n4 = threshold_n4(bundle, params, prec)?;
    let n5 = threshold_n5(bundle, params, prec)?;
    let n6 = threshold_n6(bundle, params, prec)?;
    let n7 = threshold_n7(bundle, params, prec)?;
    let n8 = threshold_n8(bundle, params, prec)?;
    let n = [Some(n1), Some(n2), Some(n3), Some(n4), Some(n5), Some(n6), n7, Some(n8)];
    let n_congruence = n1.max(n2).max(n3);
    let n_distinct = n4.max(n5).max(n6).max(n7.unwrap_or(0)).max(n8).max(1);
    Ok(ThresholdReport {
        d: bundle.d,
        b: bundle.b,
        n,
        n_congruence,
        n_distinct,
        n_d: n_congruence.max(n_distinct),
        // N_7 either rests on the externally supplied constant or is
        // missing entirely.
        conditional: true,
    })
}

/// Bundle + thresholds in one call, with the parity defaults applied.
pub fn thresholds_for(d: u32, params: &BoundParams) -> Result<(ConstantBundle, ThresholdReport)> {
    let bundle = ConstantBundle::compute(d, params)?;
    let report = compute_thresholds(&bundle, params)?;
    Ok((bundle, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{log_main_distinct, log_summands, ln_of};
    use rug::Rational;

    const PREC: u32 = 256;

    fn setup(d: u32) -> (ConstantBundle, BoundParams) {
        let params = BoundParams::defaults_for(d, PREC)
            .with_f_err_max(Some(Rational::from((1, 10_000))));
        let bundle = ConstantBundle::compute(d, &params).unwrap();
        (bundle, params)
    }

    #[test]
    fn n1_monotone_in_weight() {
        let (bundle, params) = setup(8);
        let mut last = u64::MAX;
        for den in [1600u64, 800, 400] {
            let mut p = params.clone();
            p.weights[0] = Rational::from((1, den));
            // Weight sum no longer 1; bypass full validation since only
            // N_1's formula is exercised.
            let n1 = threshold_n1(&bundle, &p, PREC).unwrap();
            assert!(n1 <= last, "N1 must not increase as K1 grows");
            last = n1;
        }
    }

    #[test]
    fn n2_and_n8_monotone_in_weight() {
        let (bundle, params) = setup(8);
        let mut last2 = u64::MAX;
        let mut last8 = u64::MAX;
        for den in [3200u64, 800, 200] {
            let mut p = params.clone();
            p.weights[1] = Rational::from((1, den));
            let n2 = threshold_n2(&bundle, &p, PREC).unwrap();
            assert!(n2 <= last2, "N2 must not increase as K2 grows");
            last2 = n2;
            let mut p = params.clone();
            p.weights[7] = Rational::from((1, den));
            let n8 = threshold_n8(&bundle, &p, PREC).unwrap();
            assert!(n8 <= last8, "N8 must not increase as K8 grows");
            last8 = n8;
        }
        assert!(last8 < u64::MAX);
    }

    #[test]
    fn n5_simplifies_at_eps2_one() {
        let (bundle, params) = setup(8);
        // With eps2 = 1 the exponent 2/(3 eps2 - 1) is 1, so
        // N5 = ceil(A^2 / ln(K5 + 1)).
        let n5 = threshold_n5(&bundle, &params, PREC).unwrap();
        let k5 = f_ratio(PREC, params.weight(5));
        let direct: Float = bundle.a_d.clone().square() / k5.ln_1p();
        assert_eq!(n5, ceil_certified(&direct).unwrap());
    }

    #[test]
    fn n3_substitution_reduction() {
        // P u^3/2... the u = sqrt(n) substitution: verify P n^(3/4) and
        // P u^(3/2) e^... agree at sampled points for d=6.
        let (bundle, params) = setup(6);
        let gap = growth_gap(&bundle, PREC).unwrap();
        let k3 = f_ratio(PREC, params.weight(3));
        let a_quarter = powf(&bundle.a_d, &Float::with_val(PREC, 0.25));
        let p = main_radical(&bundle, PREC) * 2u32 / (k3 * a_quarter);
        for n in [10u64, 100, 1000, 50_000, 1_000_000] {
            let nf = f_u64(PREC, n);
            let u = nf.clone().sqrt();
            // algebraic side in n vs in u
            let lhs: Float = p.clone() * powf(&nf, &Float::with_val(PREC, 0.75));
            let rhs: Float = p.clone() * powf(&u, &Float::with_val(PREC, 1.5));
            let rel: Float = (lhs.clone() / rhs - 1u32).abs();
            assert!(rel < Float::with_val(PREC, 1e-40));
            // exponential side: e^(gap sqrt(n)) = e^(gap u)
            let e1: Float = (gap.clone() * nf.sqrt()).exp();
            let e2: Float = (gap.clone() * u).exp();
            let rel2: Float = (e1 / e2 - 1u32).abs();
            assert!(rel2 < Float::with_val(PREC, 1e-40));
        }
    }

    #[test]
    fn n7_edge_cases() {
        let (bundle, params) = setup(8);
        // Unavailable without the constant.
        let p_none = params.clone().with_f_err_max(None);
        assert_eq!(threshold_n7(&bundle, &p_none, PREC).unwrap(), None);
        // Zero constant: summand vanishes identically.
        let p_zero = params.clone().with_f_err_max(Some(Rational::new()));
        assert_eq!(threshold_n7(&bundle, &p_zero, PREC).unwrap(), Some(1));
        // Degenerate denominator: f_err_max at K7 / sqrt(A).
        let p_big = params.clone().with_f_err_max(Some(Rational::from((1, 100))));
        assert!(matches!(threshold_n7(&bundle, &p_big, PREC), Err(Error::Domain(_))));
        // N7 grows as f_err_max approaches the degeneracy point.
        let n_small = threshold_n7(&bundle, &params, PREC).unwrap().unwrap();
        let p_near = params.clone().with_f_err_max(Some(Rational::from((2, 1000))));
        let n_near = threshold_n7(&bundle, &p_near, PREC).unwrap().unwrap();
        assert!(n_near > n_small);
    }

    #[test]
    fn defining_inequalities_hold_at_thresholds() {
        // S_i(n) <= K_i m_d(n) at n = N_i and at geometrically larger n.
        for d in [6u32, 9] {
            let (bundle, params) = setup(d);
            let report = compute_thresholds(&bundle, &params).unwrap();
            for (i, n_i) in report.n.iter().enumerate() {
                let n_i = n_i.expect("all thresholds available with f_err_max set");
                for mult in [1u64, 2, 4, 16, 256] {
                    let n = n_i.saturating_mul(mult);
                    let ln_n = ln_of(n, PREC);
                    let s = log_summands(&bundle, &params, &ln_n, PREC);
                    let cap: Float = f_ratio(PREC, params.weight(i + 1)).ln()
                        + log_main_distinct(&bundle, &ln_n, PREC);
                    let s_i = s[i].clone().unwrap();
                    assert!(
                        s_i <= cap,
                        "S{}({n}) > K{} m_d at d={d}: excess {:.3e}",
                        i + 1,
                        i + 1,
                        (s_i - &cap).to_f64()
                    );
                }
            }
        }
    }

    #[test]
    fn thresholds_below_are_violated() {
        // N_1 and N_3 are exact crossings of their defining inequalities
        // (no sufficient-condition slack), so one step below them the
        // inequality must fail. N_2, N_4, N_6 embed deliberate relaxations
        // and are conservative, so no such claim is made for them.
        let (bundle, params) = setup(8);
        let report = compute_thresholds(&bundle, &params).unwrap();
        for (idx, n_i) in [(0usize, report.n[0].unwrap()), (2, report.n[2].unwrap())] {
            assert!(n_i > 2, "expected a nontrivial threshold for this check");
            let ln_n = ln_of(n_i - 1, PREC);
            let s = log_summands(&bundle, &params, &ln_n, PREC);
            let cap: Float = f_ratio(PREC, params.weight(idx + 1)).ln()
                + log_main_distinct(&bundle, &ln_n, PREC);
            assert!(
                s[idx].clone().unwrap() > cap,
                "S{} should exceed its cap just below N{}",
                idx + 1,
                idx + 1
            );
        }
    }

    #[test]
    fn certification_inequality_at_and_beyond_threshold() {
        use crate::real::log_sum_exp;
        for d in [6u32, 7, 8, 11] {
            let (bundle, params) = setup(d);
            let report = compute_thresholds(&bundle, &params).unwrap();
            for mult in [1u64, 2, 10] {
                let n = report.n_d.saturating_mul(mult);
                let ln_n = ln_of(n, PREC);
                let s = log_summands(&bundle, &params, &ln_n, PREC);
                let terms: Vec<Float> = s.into_iter().flatten().collect();
                assert_eq!(terms.len(), 8);
                let total = log_sum_exp(&terms, PREC);
                let m = log_main_distinct(&bundle, &ln_n, PREC);
                assert!(
                    total <= m,
                    "sum S_i > m_d at d={d} n={n}: excess {:.3e}",
                    (total - &m).to_f64()
                );
            }
        }
    }

    #[test]
    fn stability_under_doubled_precision() {
        for d in [6u32, 9] {
            let p256 = BoundParams::defaults_for(d, 256)
                .with_f_err_max(Some(Rational::from((1, 10_000))));
            let p512 = p256.clone().with_precision(512);
            let r256 = thresholds_for(d, &p256).unwrap().1;
            let r512 = thresholds_for(d, &p512).unwrap().1;
            assert_eq!(r256.n, r512.n, "thresholds differ across precision at d={d}");
        }
    }

    #[test]
    fn report_shapes() {
        let (bundle, params) = setup(8);
        let report = compute_thresholds(&bundle, &params).unwrap();
        assert_eq!(report.n_d, report.n_congruence.max(report.n_distinct));
        let json = report.to_json();
        assert_eq!(json["d"], 8);
        let row = report.csv_row();
        assert_eq!(row.split(',').count(), ThresholdReport::CSV_HEADER.split(',').count());
        // Without f_err_max N7 is empty in the CSV and the report is
        // conditional.
        let p_none = params.with_f_err_max(None);
        let r = compute_thresholds(&bundle, &p_none).unwrap();
        assert!(r.conditional);
        assert_eq!(r.n[6], None);
        assert_eq!(r.csv_row().split(',').nth(7).unwrap(), "");
    }
}
