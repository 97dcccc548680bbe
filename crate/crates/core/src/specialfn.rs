//! Exact Bernoulli numbers, zeta at non-positive integers and Gamma at
//! positive integers.
//!
//! Values are kept as exact rationals wherever they are rational, and only
//! converted to `f64` by the caller at the last step.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest index served by [`bernoulli`].
pub const DEFAULT_MAX_BERNOULLI: usize = 12;

/// `zeta(-1/2)`. Needed by the Mellin engine's Gamma pole at `t = -1`.
pub const ZETA_MINUS_HALF: f64 = -0.207_886_224_977_354_57;
/// `zeta(-3/2)`. Needed by the Mellin engine's Gamma pole at `t = -3`.
pub const ZETA_MINUS_THREE_HALVES: f64 = -0.025_485_201_889_833_036;

/// Bernoulli numbers `B_0 ..= B_max` (with `B_1 = -1/2`) as exact rationals.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Builds the table from `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
    pub fn with_max(max_index: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        values.push(BigRational::one());
        for m in 1..=max_index {
            // binomials C(m+1, j) for j = 0..m, built incrementally
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            values.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        BernoulliTable { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// Any stored index, odd ones included.
    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.values.get(k)
    }

    /// Even-index Bernoulli number `B_k`, `2 <= k <= max_index`.
    pub fn even(&self, k: usize) -> Result<&BigRational> {
        if k < 2 || !k.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "Bernoulli index must be even and at least 2, got {k}"
            )));
        }
        self.values.get(k).ok_or_else(|| {
            Error::Domain(format!(
                "Bernoulli index {k} exceeds table maximum {}",
                self.max_index()
            ))
        })
    }
}

fn default_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::with_max(DEFAULT_MAX_BERNOULLI))
}

/// Exact `B_k` for even `k` in `2..=12`.
pub fn bernoulli(k: usize) -> Result<BigRational> {
    default_table().even(k).cloned()
}

/// Exact `zeta(s)` for integer `s <= 0`.
pub fn zeta_at_exact(s: i64) -> Result<BigRational> {
    if s == 1 {
        return Err(Error::Domain("zeta has a pole at s = 1".into()));
    }
    if s > 1 {
        return Err(Error::Domain(format!(
            "zeta is only tabulated at non-positive integers, got {s}"
        )));
    }
    if s == 0 {
        return Ok(BigRational::new((-1).into(), 2.into()));
    }
    let m = s.unsigned_abs() as usize;
    if m.is_multiple_of(2) {
        return Ok(BigRational::zero());
    }
    // zeta(1 - 2k) = -B_2k / (2k)
    let two_k = m + 1;
    let table = if two_k <= DEFAULT_MAX_BERNOULLI {
        std::borrow::Cow::Borrowed(default_table())
    } else {
        std::borrow::Cow::Owned(BernoulliTable::with_max(two_k))
    };
    let b = table.even(two_k)?;
    Ok(-b / BigRational::from_integer(BigInt::from(two_k)))
}

/// `zeta(s)` for integer `s <= 0`.
pub fn zeta_at(s: i64) -> Result<f64> {
    zeta_at_exact(s).map(|z| to_f64(&z))
}

/// `Gamma(n) = (n - 1)!` for `1 <= n <= 171` (larger values overflow `f64`).
pub fn gamma_int(n: i64) -> Result<f64> {
    if n <= 0 {
        return Err(Error::Domain(format!(
            "Gamma at non-positive integer {n} is a pole"
        )));
    }
    if n > 171 {
        return Err(Error::Domain(format!("Gamma({n}) overflows f64")));
    }
    Ok((1..n).fold(1.0, |acc, k| acc * k as f64))
}

/// Exact `n!`.
pub fn factorial_exact(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Nearest `f64` to an exact rational. Falls back to a scaled division when
/// numerator or denominator alone overflow.
pub fn to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn known_bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), q(1, 42));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
    }

    #[test]
    fn bernoulli_domain() {
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(0).is_err());
        assert!(bernoulli(14).is_err());
        assert_eq!(
            BernoulliTable::with_max(20).even(20).unwrap(),
            &q(-174_611, 330)
        );
    }

    #[test]
    fn odd_bernoulli_vanish() {
        let t = BernoulliTable::with_max(15);
        assert_eq!(t.get(1).unwrap(), &q(-1, 2));
        for k in (3..=15).step_by(2) {
            assert!(t.get(k).unwrap().is_zero());
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_at(0).unwrap(), -0.5);
        assert_eq!(zeta_at(-1).unwrap(), -1.0 / 12.0);
        assert_eq!(zeta_at(-2).unwrap(), 0.0);
        assert_eq!(zeta_at_exact(-3).unwrap(), q(1, 120));
        assert!(zeta_at(1).is_err());
        assert!(zeta_at(2).is_err());
        // beyond the default table
        assert_eq!(zeta_at_exact(-13).unwrap(), q(-1, 12));
    }

    #[test]
    fn zeta_bernoulli_link() {
        for m in 1..=5i64 {
            assert_eq!(zeta_at(-2 * m).unwrap(), 0.0);
            let lhs =
                zeta_at_exact(-(2 * m - 1)).unwrap() * BigRational::from_integer((2 * m).into());
            assert_eq!(lhs, -bernoulli(2 * m as usize).unwrap());
        }
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_int(1).unwrap(), 1.0);
        assert_eq!(gamma_int(2).unwrap(), 1.0);
        assert_eq!(gamma_int(5).unwrap(), 24.0);
        assert!(gamma_int(0).is_err());
        assert!(gamma_int(-3).is_err());
        assert!(gamma_int(171).unwrap().is_finite());
        assert!(gamma_int(172).is_err());
    }

    #[test]
    fn rational_conversion_handles_huge_parts() {
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(big.clone() * 3, big);
        assert_eq!(to_f64(&r), 3.0);
    }
}
