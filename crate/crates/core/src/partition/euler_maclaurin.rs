//! Euler-MacLaurin closed form for the Klein-Gordon linear-potential spectrum.
//!
//! With `a = 0` and `r = 1` the ground-shifted Boltzmann factor is
//! `f(n) = exp(-(sqrt(2n + 1) - 1) x)` with `x = 1/mubar`, and
//!
//! ```text
//! sum_{n>=0} f(n) ≈ f(0)/2 + ∫_0^∞ f - sum_i B_2i/(2i)! f^(2i-1)(0)
//!                 = 1/2 + mubar + mubar² - sum_i B_2i/(2i)! f^(2i-1)(0).
//! ```
//!
//! The derivatives `f^(k)(0)` are polynomials in `x` with rational
//! coefficients; they are generated exactly from the Taylor series of
//! `sqrt(1 + 2n)` and the exponential recurrence, so no symbolic algebra
//! happens by hand. A general `(a, r)` reduces to this case through the
//! effective temperature `mubar / sqrt((1 - a²) r)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::specialfn::{factorial_exact, to_f64, BernoulliTable};
use crate::spectra::{ReducedTemperature, SpectrumModel};

use super::{EngineSpec, FormulaVariant, PartitionResult, ShiftPolicy};

type Poly = Vec<BigRational>;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// `½ f0 + integral - sum_i B_2i/(2i)! odd_derivs[i-1]`.
pub fn euler_maclaurin_sum(f0: f64, integral: f64, odd_derivs: &[f64]) -> Result<f64> {
    if odd_derivs.is_empty() {
        return Err(Error::Domain(
            "Euler-MacLaurin sum needs at least one odd derivative".into(),
        ));
    }
    let order = odd_derivs.len();
    let table = BernoulliTable::with_max(2 * order);
    let mut acc = 0.5 * f0 + integral;
    for (i, d) in (1..=order).zip(odd_derivs) {
        let b = table.even(2 * i)?;
        let weight = b / BigRational::from_integer(factorial_exact(2 * i));
        acc -= to_f64(&weight) * d;
    }
    Ok(acc)
}

/// Taylor coefficients `f_k(x)`, `k = 0..=max_k`, of
/// `f(n) = exp(-(sqrt(1 + 2n) - 1) x)` about `n = 0`, each a polynomial in `x`.
fn kg_boltzmann_taylor(max_k: usize) -> Vec<Poly> {
    // sqrt(1 + 2n) = sum_k s_k n^k, s_k = C(1/2, k) 2^k
    let mut s = vec![BigRational::one()];
    for k in 1..=max_k {
        let prev = s[k - 1].clone();
        s.push(prev * ratio(3 - 2 * k as i64, k as i64));
    }
    // exponent h(n) = -x (s(n) - 1): h_k = -s_k x for k >= 1
    // exp recurrence: k f_k = sum_{j=1}^k j h_j f_{k-j}
    let mut f: Vec<Poly> = vec![vec![BigRational::one()]];
    for k in 1..=max_k {
        let mut fk: Poly = vec![BigRational::zero(); k + 1];
        for j in 1..=k {
            let w = -&s[j] * BigRational::from_integer(BigInt::from(j));
            for (deg, c) in f[k - j].iter().enumerate() {
                fk[deg + 1] += &w * c;
            }
        }
        let inv_k = ratio(1, k as i64);
        for c in fk.iter_mut() {
            *c *= &inv_k;
        }
        f.push(fk);
    }
    f
}

/// Exact `f^(2i-1)(0)` for `i = 1..=order`, as polynomials in `x = 1/mubar`
/// (coefficient of `x^d` at index `d`).
pub fn kg_boltzmann_odd_derivatives(order: usize) -> Vec<Vec<BigRational>> {
    let taylor = kg_boltzmann_taylor(2 * order);
    (1..=order)
        .map(|i| {
            let k = 2 * i - 1;
            let kf = BigRational::from_integer(factorial_exact(k));
            taylor[k].iter().map(|c| c * &kf).collect()
        })
        .collect()
}

/// Exact correction `-sum_{i<=order} B_2i/(2i)! f^(2i-1)(0)` as a polynomial
/// in `x = 1/mubar`. For `order = 2` this is
/// `19/240 x - 1/240 x² - 1/720 x³`.
pub fn euler_maclaurin_correction(order: usize) -> Vec<BigRational> {
    let table = BernoulliTable::with_max(2 * order);
    let derivs = kg_boltzmann_odd_derivatives(order);
    let mut out: Poly = vec![BigRational::zero(); 2 * order];
    for (i, d) in (1..=order).zip(&derivs) {
        let b = table.even(2 * i).expect("table covers 2*order");
        let w = b / BigRational::from_integer(factorial_exact(2 * i));
        for (deg, c) in d.iter().enumerate() {
            out[deg] -= &w * c;
        }
    }
    out
}

fn published_kg(mubar: f64) -> f64 {
    0.5 + mubar * (mubar + 1.0)
        + (19.0 * mubar * mubar - mubar - 1.0) / (240.0 * mubar * mubar * mubar)
}

fn rederived_kg(mubar: f64, order: usize) -> Result<f64> {
    let x = 1.0 / mubar;
    let derivs: Vec<f64> = kg_boltzmann_odd_derivatives(order)
        .iter()
        .map(|p| {
            let coeffs: Vec<f64> = p.iter().map(to_f64).collect();
            poly_eval(&coeffs, x)
        })
        .collect();
    euler_maclaurin_sum(1.0, mubar + mubar * mubar, &derivs)
}

fn em_notes(variant: FormulaVariant, order: usize) -> String {
    match variant {
        FormulaVariant::Published => "Euler-MacLaurin, printed i<=2 polynomial (c3 = 1)".into(),
        FormulaVariant::Rederived => {
            format!("Euler-MacLaurin, exact derivatives up to i={order}")
        }
    }
}

/// Ground-shifted `Z` of the Klein-Gordon spectrum with `a = 0`, `r = 1`,
/// Euler-MacLaurin truncated at `i = 2`.
///
/// `Published` evaluates `½ + μ(μ+1) + (19μ² - μ - 1)/(240μ³)`; `Rederived`
/// uses the exact derivatives, which replace the trailing `1` by `1/3`.
pub fn kg_closed_partition(
    mubar: ReducedTemperature,
    variant: FormulaVariant,
) -> Result<PartitionResult> {
    kg_euler_maclaurin(
        &SpectrumModel::KgLinear { a: 0.0, r: 1.0 },
        mubar,
        ShiftPolicy::GroundShifted,
        2,
        variant,
    )
}

/// Euler-MacLaurin `Z` for any valid Klein-Gordon model.
///
/// The `Published` variant only exists at order 2 and ignores `order`.
pub fn kg_euler_maclaurin(
    model: &SpectrumModel,
    mubar: ReducedTemperature,
    shift: ShiftPolicy,
    order: usize,
    variant: FormulaVariant,
) -> Result<PartitionResult> {
    let engine = EngineSpec::EulerMaclaurin { order, variant };
    engine.validate()?;
    model.validate().into_result()?;
    let SpectrumModel::KgLinear { a, r } = *model else {
        return Err(Error::Unsupported(format!(
            "the Euler-MacLaurin engine needs the Klein-Gordon spectrum, got {}",
            model.name()
        )));
    };
    let g = ((1.0 - a * a) * r).sqrt();
    let effective = mubar.get() / g;
    let shifted = match variant {
        FormulaVariant::Published => published_kg(effective),
        FormulaVariant::Rederived => rederived_kg(effective, order)?,
    };
    let z = match shift {
        ShiftPolicy::GroundShifted => shifted,
        ShiftPolicy::Absolute => shifted * (-model.ground_energy() * mubar.beta()).exp(),
    };
    Ok(PartitionResult {
        z,
        engine,
        terms_summed: None,
        tail_bound: None,
        notes: em_notes(variant, order),
    })
}
