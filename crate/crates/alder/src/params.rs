//! Free parameters of the bound pipeline.
//!
//! Parameters are held as exact rationals so that config files written with
//! decimal or fraction literals reproduce bit-identically across platforms;
//! they are converted to floats at the working precision on use.

use crate::error::{Error, Result};
use rug::Rational;

/// Parameter set used when bounding one d (parity already applied).
///
/// Range requirements, checked by [`BoundParams::validate`]:
/// epsilon in (0, 1/2); epsilon2 > 1/3 and epsilon2 > epsilon;
/// delta in (0, 1/2); xi in (0, 1); c in (3/8, 1/2);
/// epsilon1 in (0, delta/2); all weights positive with sum exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundParams {
    pub epsilon: Rational,
    pub epsilon2: Rational,
    pub delta: Rational,
    pub xi: Rational,
    pub c: Rational,
    pub epsilon1: Rational,
    /// K_1..K_8. K_8 is derived as 1 - sum(K_1..K_7) by the constructors,
    /// which keeps the sum exactly 1.
    pub weights: [Rational; 8],
    /// Externally supplied bound for the saddle-point quadrature error
    /// constant. `None` marks the N_7 threshold unavailable.
    pub f_err_max: Option<Rational>,
    pub precision_bits: u32,
    /// When set, a failed bound hypothesis aborts constant computation
    /// instead of being recorded on the bundle.
    pub strict_hypotheses: bool,
}

fn r(num: i64, den: u64) -> Rational {
    Rational::from((num, den))
}

impl BoundParams {
    /// Default parameter row for even d: delta = 1/3, K_3 = 1/2,
    /// K_8 = 394/800, every other weight 1/800.
    pub fn even_defaults(precision_bits: u32) -> Self {
        Self::from_first_seven(
            r(11, 100),
            r(1, 1),
            r(1, 3),
            r(224, 1000),
            r(37501, 100000),
            None,
            [r(1, 800), r(1, 800), r(1, 2), r(1, 800), r(1, 800), r(1, 800), r(1, 800)],
            None,
            precision_bits,
        )
        .expect("built-in even defaults are valid")
    }

    /// Default parameter row for odd d: delta = 1/80, K_2 = K_3 = 1/8,
    /// K_8 = 595/800, every other weight 1/800.
    pub fn odd_defaults(precision_bits: u32) -> Self {
        Self::from_first_seven(
            r(11, 100),
            r(1, 1),
            r(1, 80),
            r(224, 1000),
            r(37501, 100000),
            None,
            [r(1, 800), r(1, 8), r(1, 8), r(1, 800), r(1, 800), r(1, 800), r(1, 800)],
            None,
            precision_bits,
        )
        .expect("built-in odd defaults are valid")
    }

    pub fn defaults_for(d: u32, precision_bits: u32) -> Self {
        if d % 2 == 0 {
            Self::even_defaults(precision_bits)
        } else {
            Self::odd_defaults(precision_bits)
        }
    }

    /// Build a parameter set from K_1..K_7, deriving K_8 = 1 - sum.
    /// `epsilon1` defaults to delta/4, the midpoint of its open interval.
    #[allow(clippy::too_many_arguments)]
    pub fn from_first_seven(
        epsilon: Rational,
        epsilon2: Rational,
        delta: Rational,
        xi: Rational,
        c: Rational,
        epsilon1: Option<Rational>,
        first_seven: [Rational; 7],
        f_err_max: Option<Rational>,
        precision_bits: u32,
    ) -> Result<Self> {
        let sum: Rational = first_seven.iter().fold(Rational::new(), |acc, k| acc + k);
        let k8 = Rational::from(1) - sum;
        let [k1, k2, k3, k4, k5, k6, k7] = first_seven;
        let epsilon1 = epsilon1.unwrap_or_else(|| delta.clone() / Rational::from(4));
        let p = BoundParams {
            epsilon,
            epsilon2,
            delta,
            xi,
            c,
            epsilon1,
            weights: [k1, k2, k3, k4, k5, k6, k7, k8],
            f_err_max,
            precision_bits,
            strict_hypotheses: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let half = r(1, 2);
        let third = r(1, 3);
        let check = |ok: bool, msg: &str| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Domain(format!("parameter constraint violated: {msg}")))
            }
        };
        check(self.epsilon > 0 && self.epsilon < half, "0 < epsilon < 1/2")?;
        check(self.epsilon2 > third, "epsilon2 > 1/3")?;
        check(self.epsilon2 > self.epsilon, "epsilon2 > epsilon")?;
        check(self.delta > 0 && self.delta < half, "0 < delta < 1/2")?;
        check(self.xi > 0 && self.xi < 1, "0 < xi < 1")?;
        check(self.c > r(3, 8) && self.c < half, "3/8 < c < 1/2")?;
        let half_delta = self.delta.clone() / Rational::from(2);
        check(self.epsilon1 > 0 && self.epsilon1 < half_delta, "0 < epsilon1 < delta/2")?;
        for (i, k) in self.weights.iter().enumerate() {
            check(*k > 0, &format!("K{} > 0", i + 1))?;
        }
        let sum: Rational = self.weights.iter().fold(Rational::new(), |acc, k| acc + k);
        check(sum == 1, "sum of K_i equals 1")?;
        if let Some(fe) = &self.f_err_max {
            check(*fe > 0, "f_err_max > 0")?;
        }
        check(self.precision_bits >= 64, "precision_bits >= 64")?;
        Ok(())
    }

    pub fn with_precision(mut self, precision_bits: u32) -> Self {
        self.precision_bits = precision_bits;
        self
    }

    pub fn with_f_err_max(mut self, f_err_max: Option<Rational>) -> Self {
        self.f_err_max = f_err_max;
        self
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_rows_sum_to_one() {
        for p in [BoundParams::even_defaults(256), BoundParams::odd_defaults(256)] {
            let sum: Rational = p.weights.iter().fold(Rational::new(), |a, k| a + k);
            assert_eq!(sum, 1);
            p.validate().unwrap();
        }
        assert_eq!(*BoundParams::even_defaults(256).weight(8), Rational::from((394, 800)));
        assert_eq!(*BoundParams::odd_defaults(256).weight(8), Rational::from((595, 800)));
    }

    #[test]
    fn parity_selection() {
        assert_eq!(BoundParams::defaults_for(8, 256).delta, Rational::from((1, 3)));
        assert_eq!(BoundParams::defaults_for(9, 256).delta, Rational::from((1, 80)));
    }

    #[test]
    fn validation_rejects_bad_ranges() {
        let mut p = BoundParams::even_defaults(256);
        p.epsilon = Rational::from((3, 4));
        assert!(p.validate().is_err());
        let mut p = BoundParams::even_defaults(256);
        p.weights[0] = Rational::from(2);
        assert!(p.validate().is_err());
        let mut p = BoundParams::even_defaults(256);
        p.epsilon1 = p.delta.clone();
        assert!(p.validate().is_err());
    }
}
