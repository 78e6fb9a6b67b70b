//! Asymptotic main terms, the eight error summands S1..S8, and the explicit
//! error envelopes.
//!
//! Everything is evaluated in log space: at the n where these formulas
//! matter the linear magnitudes reach exp(10^4) and beyond, and the
//! asymptotic property tests probe n as large as e^2000. Functions take
//! ln(n) as a float so non-integer and astronomically large n are valid
//! evaluation points; u64 convenience wrappers cover the common case.
//!
//! Summand map (b = 2 for even d, 1 for odd):
//! S1..S3 bound the congruence-family count Q_d^(b)(n); S4..S8 bound the
//! error r_d(n) of the distinct-family main term. The certification
//! inequality sum(S_i) <= m_d(n) is what makes q_d^(2)(n) >= Q_d^(b)(n)
//! past the threshold.

use crate::constants::ConstantBundle;
use crate::error::{Error, Result};
use crate::params::BoundParams;
use crate::real::{decimal, f_ratio, f_u64, log_sum_exp, pi, powf};
use rug::Float;
use serde_json::{json, Value};

pub fn ln_of(n: u64, prec: u32) -> Float {
    f_u64(prec, n).ln()
}

/// M(n) = 2 pi sqrt(n) / sqrt(3(d+3)), the congruence-side exponent.
fn congruence_exponent(d: u32, ln_n: &Float, prec: u32) -> Float {
    let sqrt_n = (ln_n.clone() / 2u32).exp();
    let three_d3 = f_u64(prec, 3 * (u64::from(d) + 3));
    pi(prec) * 2u32 * sqrt_n / three_d3.sqrt()
}

/// G(n) = 2 sqrt(A_d n), the distinct-side exponent.
fn distinct_exponent(a_d: &Float, ln_n: &Float, _prec: u32) -> Float {
    let sqrt_n = (ln_n.clone() / 2u32).exp();
    a_d.clone().sqrt() * 2u32 * sqrt_n
}

/// n^e as exp(e ln n).
fn npow(ln_n: &Float, e: &Float) -> Float {
    (e.clone() * ln_n).exp()
}

/// ln of the distinct-family main term
/// m_d(n) = A^(1/4) / (2 sqrt(pi alpha^(d-3)(d alpha^(d-1)+1))) n^(-3/4) e^(2 sqrt(A n)).
pub fn log_main_distinct(bundle: &ConstantBundle, ln_n: &Float, prec: u32) -> Float {
    // gamma sqrt(pi) A^(1/4) is exactly the prefactor.
    bundle.distinct.gamma.clone().ln()
        + pi(prec).ln() / 2u32
        + bundle.a_d.clone().ln() / 4u32
        - ln_n.clone() * 3u32 / 4u32
        + distinct_exponent(&bundle.a_d, ln_n, prec)
}

pub fn main_distinct_at(bundle: &ConstantBundle, n: u64, prec: u32) -> Float {
    log_main_distinct(bundle, &ln_of(n, prec), prec)
}

/// ln of the congruence-family main term
/// n^(-3/4) exp(2 pi sqrt(n) / sqrt(3(d+3))) / (4 (3(d+3))^(1/4) sin(b pi/(d+3))).
pub fn log_main_congruence(d: u32, b: u32, ln_n: &Float, prec: u32) -> Float {
    let three_d3 = f_u64(prec, 3 * (u64::from(d) + 3));
    let sin_b = sin_b_of(d, b, prec);
    congruence_exponent(d, ln_n, prec)
        - ln_n.clone() * 3u32 / 4u32
        - f_u64(prec, 4).ln()
        - three_d3.ln() / 4u32
        - sin_b.ln()
}

pub fn main_congruence_at(d: u32, b: u32, n: u64, prec: u32) -> Float {
    log_main_congruence(d, b, &ln_of(n, prec), prec)
}

fn sin_b_of(d: u32, b: u32, prec: u32) -> Float {
    let ang: Float = f_u64(prec, u64::from(b)) * pi(prec) / f_u64(prec, u64::from(d) + 3);
    ang.sin()
}

/// ln S_1 .. ln S_8 at ln(n). S_7 is None when no f_err_max is configured.
pub fn log_summands(
    bundle: &ConstantBundle,
    params: &BoundParams,
    ln_n: &Float,
    prec: u32,
) -> [Option<Float>; 8] {
    let d = bundle.d;
    let b = bundle.b;
    let a = &bundle.a_d;
    let ln_a = a.clone().ln();
    let ln_gamma = bundle.distinct.gamma.clone().ln();
    let ln_pi = pi(prec).ln();
    let ln_sin = sin_b_of(d, b, prec).ln();
    let three_d3 = f_u64(prec, 3 * (u64::from(d) + 3));
    let eps = f_ratio(prec, &params.epsilon);
    let eps2 = f_ratio(prec, &params.epsilon2);
    let delta = f_ratio(prec, &params.delta);
    let m_exp = congruence_exponent(d, ln_n, prec);
    let g_exp = distinct_exponent(a, ln_n, prec);

    // S1: main congruence term.
    let s1 = log_main_congruence(d, b, ln_n, prec);

    // S2: n^(delta/2 - 1) c7 pi^(1+delta/2) / ((3(d+3))^2 sin) e^M
    let s2 = (delta.clone() / 2u32 - 1u32) * ln_n.clone()
        + bundle.congruence.c7.clone().ln()
        + (delta.clone() / 2u32 + 1u32) * &ln_pi
        - three_d3.clone().ln() * 2u32
        - ln_sin.clone()
        + m_exp.clone();

    // S3: bare e^M.
    let s3 = m_exp;

    // S4: gamma / sqrt(2 A^eps) n^(eps/2 - 1) e^(G - n^(1/2-eps) A^(1/2+eps))
    let half_minus_eps: Float = Float::with_val(prec, 0.5) - &eps;
    let half_plus_eps: Float = Float::with_val(prec, 0.5) + &eps;
    let s4 = ln_gamma.clone()
        - (f_u64(prec, 2).ln() + eps.clone() * &ln_a) / 2u32
        + (eps.clone() / 2u32 - 1u32) * ln_n.clone()
        + g_exp.clone()
        - npow(ln_n, &half_minus_eps) * powf(a, &half_plus_eps);

    // S5: gamma e^G expm1(A^((1+3eps2)/2) n^((1-3eps2)/2)) sqrt(pi) A^(1/4) n^(-3/4)
    let e_a: Float = (eps2.clone() * 3u32 + 1u32) / 2u32;
    let e_n: Float = (eps2.clone() * (-3i32) + 1u32) / 2u32;
    let inner: Float = powf(a, &e_a) * npow(ln_n, &e_n);
    let s5 = ln_gamma.clone()
        + g_exp.clone()
        + inner.exp_m1().ln()
        + ln_pi.clone() / 2u32
        + ln_a.clone() / 4u32
        - ln_n.clone() * 3u32 / 4u32;

    // S6 has two summands; combine with log-sum-exp.
    // t1 = gamma e^(G - A^(eps2/2) n^(1-eps2/2) / (1 + A^eps n^-eps))
    //      A^(3/2) n^(-3/2) (1 + A^eps n^-eps)
    // t2 = gamma A^(1/2) n^(-3/2) e^(G - A^(eps2/2) n^(1-eps2/2))
    let a_eps_n: Float = powf(a, &eps) * npow(ln_n, &(-eps.clone()));
    let one_plus: Float = a_eps_n + 1u32;
    let suppress: Float = powf(a, &(eps2.clone() / 2u32)) * npow(ln_n, &(-(eps2.clone()) / 2u32 + 1u32));
    let t1 = ln_gamma.clone()
        + g_exp.clone()
        - suppress.clone() / &one_plus
        + ln_a.clone() * 3u32 / 2u32
        - ln_n.clone() * 3u32 / 2u32
        + one_plus.clone().ln();
    let t2 = ln_gamma.clone()
        + ln_a.clone() / 2u32
        - ln_n.clone() * 3u32 / 2u32
        + g_exp.clone()
        - suppress;
    let s6 = log_sum_exp(&[t1, t2], prec);

    // S7: gamma e^G f_err (pi A^(3/2) n^(-3/2) (1 + A^eps n^-eps))^(1/2)
    let s7 = params.f_err_max.as_ref().map(|fe| {
        let ln_fe = f_ratio(prec, fe).ln();
        ln_gamma.clone()
            + g_exp.clone()
            + ln_fe
            + (ln_pi.clone() + ln_a.clone() * 3u32 / 2u32 - ln_n.clone() * 3u32 / 2u32
                + one_plus.clone().ln())
                / 2u32
    });

    // S8: sqrt(2 pi / (d sqrt(A))) n^(1/4) e^(-eta rho A^(eps-1/2) n^(1/2-eps))
    //     (1 + F2) e^(G + (3-d)/2 ln(alpha) + F1)
    let decay: Float = bundle.distinct.eta.clone()
        * &bundle.distinct.rho
        * powf(a, &(eps.clone() - 0.5f32))
        * npow(ln_n, &half_minus_eps);
    let one_plus_f2: Float = bundle.distinct.f2_bound.clone() + 1u32;
    let s8 = (f_u64(prec, 2).ln() + ln_pi.clone()
        - f_u64(prec, u64::from(d)).ln()
        - ln_a.clone() / 2u32)
        / 2u32
        + ln_n.clone() / 4u32
        - decay
        + one_plus_f2.ln()
        + g_exp
        + bundle.alpha.clone().ln() * (Float::with_val(prec, 3u32) - f_u64(prec, u64::from(d)))
            / 2u32
        + bundle.distinct.f1_bound.clone();

    [Some(s1), Some(s2), Some(s3), Some(s4), Some(s5), Some(s6), s7, Some(s8)]
}

/// ln of the combined congruence upper bound S1 + S2 + S3.
pub fn log_congruence_upper(
    bundle: &ConstantBundle,
    params: &BoundParams,
    ln_n: &Float,
    prec: u32,
) -> Float {
    let s = log_summands(bundle, params, ln_n, prec);
    let three: Vec<Float> = s.iter().take(3).map(|v| v.clone().unwrap()).collect();
    log_sum_exp(&three, prec)
}

/// ln of the distinct-side error bound S4 + ... + S8 (S7 skipped when
/// unavailable).
pub fn log_distinct_error(
    bundle: &ConstantBundle,
    params: &BoundParams,
    ln_n: &Float,
    prec: u32,
) -> Float {
    let s = log_summands(bundle, params, ln_n, prec);
    let tail: Vec<Float> = s.into_iter().skip(3).flatten().collect();
    log_sum_exp(&tail, prec)
}

/// ln of the three-summand envelope |R_d(n)| around the congruence main
/// term; even d only (the c3 pipeline requires it).
pub fn log_r_bound(
    bundle: &ConstantBundle,
    params: &BoundParams,
    ln_n: &Float,
    prec: u32,
) -> Result<Float> {
    let d = bundle.d;
    let even = bundle.congruence.even_case.as_ref().ok_or_else(|| {
        Error::Domain(format!("R_d envelope requires even d, got d={d}"))
    })?;
    let delta = f_ratio(prec, &params.delta);
    let eps1 = f_ratio(prec, &params.epsilon1);
    let ln_pi = pi(prec).ln();
    let three_d3 = f_u64(prec, 3 * (u64::from(d) + 3));
    let sin2 = sin_b_of(d, 2, prec);
    let m_exp = congruence_exponent(d, ln_n, prec);

    // First summand: n^(-1/4) sqrt(pi) (3(d+3))^(-3/4) / (2 sin(2pi/(d+3)))
    //   exp(M - n^(delta/8) 2 pi^(2-delta/4) (3(d+3))^(-2+3delta/8)).
    let supp1: Float = npow(ln_n, &(delta.clone() / 8u32))
        * 2u32
        * powf(&pi(prec), &(-delta.clone() / 4u32 + 2u32))
        * powf(&three_d3, &(delta.clone() * 3u32 / 8u32 - 2u32));
    let r1 = -ln_n.clone() / 4u32 + ln_pi.clone() / 2u32 - three_d3.clone().ln() * 3u32 / 4u32
        - (sin2.clone() * 2u32).ln()
        + m_exp.clone()
        - supp1;

    // Second summand: n^(delta/2 - 1) c7 pi^(1+delta/2) / ((3(d+3))^2 sin) e^M.
    let r2 = (delta.clone() / 2u32 - 1u32) * ln_n.clone()
        + bundle.congruence.c7.clone().ln()
        + (delta.clone() / 2u32 + 1u32) * &ln_pi
        - three_d3.clone().ln() * 2u32
        - sin2.ln()
        + m_exp.clone();

    // Third summand: exp(M - c3 n^(eps1/2) (pi^2/(3(d+3)))^(-3 eps1/2)).
    let window: Float = pi(prec).square() / three_d3;
    let supp3: Float = even.c3.clone()
        * npow(ln_n, &(eps1.clone() / 2u32))
        * powf(&window, &(eps1 * (-3i32) / 2u32));
    let r3 = m_exp - supp3;

    Ok(log_sum_exp(&[r1, r2, r3], prec))
}

/// Evaluation of all envelope quantities at one integer n.
#[derive(Debug, Clone)]
pub struct EnvelopeEvaluation {
    pub d: u32,
    pub b: u32,
    pub n: u64,
    pub log_main_distinct: Float,
    pub log_main_congruence: Float,
    pub log_s: [Option<Float>; 8],
    pub log_congruence_upper: Float,
    pub log_distinct_error: Float,
    /// None for odd d.
    pub log_r_bound: Option<Float>,
}

pub fn evaluate(
    bundle: &ConstantBundle,
    params: &BoundParams,
    n: u64,
    prec: u32,
) -> Result<EnvelopeEvaluation> {
    if n < 1 {
        return Err(Error::Domain("envelope evaluation needs n >= 1".into()));
    }
    let ln_n = ln_of(n, prec);
    let log_s = log_summands(bundle, params, &ln_n, prec);
    let log_r = if bundle.d % 2 == 0 {
        Some(log_r_bound(bundle, params, &ln_n, prec)?)
    } else {
        None
    };
    Ok(EnvelopeEvaluation {
        d: bundle.d,
        b: bundle.b,
        n,
        log_main_distinct: log_main_distinct(bundle, &ln_n, prec),
        log_main_congruence: log_main_congruence(bundle.d, bundle.b, &ln_n, prec),
        log_congruence_upper: log_congruence_upper(bundle, params, &ln_n, prec),
        log_distinct_error: log_distinct_error(bundle, params, &ln_n, prec),
        log_s,
        log_r_bound: log_r,
    })
}

impl EnvelopeEvaluation {
    /// Linear-scale decimal string of a log-scale magnitude.
    fn lin(v: &Float) -> String {
        decimal(&v.clone().exp())
    }

    /// CSV row `d,b,n,main_q,main_Q,S1..S8,R_bound`; unavailable fields
    /// are left empty.
    pub fn csv_row(&self) -> String {
        let mut fields = vec![
            self.d.to_string(),
            self.b.to_string(),
            self.n.to_string(),
            Self::lin(&self.log_main_distinct),
            Self::lin(&self.log_main_congruence),
        ];
        for s in &self.log_s {
            fields.push(s.as_ref().map(|v| Self::lin(v)).unwrap_or_default());
        }
        fields.push(self.log_r_bound.as_ref().map(|v| Self::lin(v)).unwrap_or_default());
        fields.join(",")
    }

    pub const CSV_HEADER: &'static str = "d,b,n,main_q,main_Q,S1,S2,S3,S4,S5,S6,S7,S8,R_bound";

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "b": self.b,
            "n": self.n,
            "main_q": Self::lin(&self.log_main_distinct),
            "main_Q": Self::lin(&self.log_main_congruence),
            "S": self.log_s.iter().map(|s| s.as_ref().map(Self::lin)).collect::<Vec<_>>(),
            "combined_Q_upper": Self::lin(&self.log_congruence_upper),
            "r_d_bound": Self::lin(&self.log_distinct_error),
            "R_d_bound": self.log_r_bound.as_ref().map(Self::lin),
        })
    }
}
