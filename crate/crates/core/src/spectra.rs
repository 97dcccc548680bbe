//! Positive-branch energy levels in units of the rest energy.

use std::fmt;

use crate::error::{Error, Result};

/// One of the three analytic level formulas, with its couplings.
///
/// Levels are indexed from `n = 0` in every model, and only the
/// positive-energy branch is represented.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumModel {
    /// Klein-Gordon particle in a linear potential with vector/scalar ratio
    /// `a = a2/a1` and frequency ratio `r = ħω/(mc²)`:
    /// `E_n = a + sqrt((1 - a²) r (2n + 1))`.
    KgLinear { a: f64, r: f64 },
    /// Dirac particle in an inverse-linear Lorentz scalar potential with
    /// dimensionless coupling `A`: `E_n = sqrt(1 - A²/(n + A)²)`.
    DiracInverseLinear { coupling: f64 },
    /// Strong-coupling limit of [`SpectrumModel::DiracInverseLinear`]:
    /// `E_n = sqrt(2n / A)`.
    DiracStrongField { coupling: f64 },
}

/// Levels of the form `offset + sqrt(slope * n + intercept)`.
///
/// The tail bound of the direct summation engine relies on this shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtForm {
    pub offset: f64,
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// `a² = 1`: equal vector and scalar couplings, the Coulomb problem.
    CoulombExcluded,
    /// `a² > 1`: the square root in the level formula turns imaginary.
    CouplingRatioTooLarge,
    NonPositiveFrequency,
    NonPositiveCoupling,
    /// The positive branch starts below zero (possible for `a < 0`).
    NegativeGroundLevel,
    NonFinite,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Violation::CoulombExcluded => "a² = 1 is the excluded Coulomb case",
            Violation::CouplingRatioTooLarge => "a² > 1 gives a complex spectrum",
            Violation::NonPositiveFrequency => "frequency ratio r must be positive",
            Violation::NonPositiveCoupling => "coupling must be positive",
            Violation::NegativeGroundLevel => "ground level of the positive branch is negative",
            Violation::NonFinite => "parameters must be finite",
        };
        f.write_str(msg)
    }
}

/// Outcome of [`SpectrumModel::validate`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidModel(self.to_string()))
        }
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl SpectrumModel {
    pub fn validate(&self) -> ValidityReport {
        let mut violations = Vec::new();
        match *self {
            SpectrumModel::KgLinear { a, r } => {
                if !a.is_finite() || !r.is_finite() {
                    violations.push(Violation::NonFinite);
                } else {
                    let a2 = a * a;
                    if a2 == 1.0 {
                        violations.push(Violation::CoulombExcluded);
                    } else if a2 > 1.0 {
                        violations.push(Violation::CouplingRatioTooLarge);
                    }
                    if r <= 0.0 {
                        violations.push(Violation::NonPositiveFrequency);
                    }
                    if violations.is_empty() && a + ((1.0 - a2) * r).sqrt() < 0.0 {
                        violations.push(Violation::NegativeGroundLevel);
                    }
                }
            }
            SpectrumModel::DiracInverseLinear { coupling }
            | SpectrumModel::DiracStrongField { coupling } => {
                if !coupling.is_finite() {
                    violations.push(Violation::NonFinite);
                } else if coupling <= 0.0 {
                    violations.push(Violation::NonPositiveCoupling);
                }
            }
        }
        ValidityReport { violations }
    }

    /// Reduced energy `E_n / (mc²)` of level `n`.
    pub fn reduced_energy(&self, n: u64) -> Result<f64> {
        self.validate().into_result()?;
        Ok(self.level(n as f64))
    }

    /// Level formula without validation, for hot loops on a model that has
    /// already been checked. `n` may be any non-negative real.
    pub(crate) fn level(&self, n: f64) -> f64 {
        match *self {
            SpectrumModel::KgLinear { a, r } => a + ((1.0 - a * a) * r * (2.0 * n + 1.0)).sqrt(),
            SpectrumModel::DiracInverseLinear { coupling } => {
                // 1 - A²/(n+A)² = n(n + 2A)/(n + A)², without the cancellation
                (n * (n + 2.0 * coupling)).sqrt() / (n + coupling)
            }
            SpectrumModel::DiracStrongField { coupling } => (2.0 * n / coupling).sqrt(),
        }
    }

    /// The `offset + sqrt(slope n + intercept)` decomposition, when one exists.
    pub fn sqrt_form(&self) -> Option<SqrtForm> {
        match *self {
            SpectrumModel::KgLinear { a, r } => {
                let g2 = (1.0 - a * a) * r;
                Some(SqrtForm {
                    offset: a,
                    slope: 2.0 * g2,
                    intercept: g2,
                })
            }
            SpectrumModel::DiracStrongField { coupling } => Some(SqrtForm {
                offset: 0.0,
                slope: 2.0 / coupling,
                intercept: 0.0,
            }),
            SpectrumModel::DiracInverseLinear { .. } => None,
        }
    }

    pub fn ground_energy(&self) -> f64 {
        self.level(0.0)
    }

    /// Short machine-friendly name, as used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumModel::KgLinear { .. } => "kg-linear",
            SpectrumModel::DiracInverseLinear { .. } => "dirac-exact",
            SpectrumModel::DiracStrongField { .. } => "dirac-strong",
        }
    }
}

/// `mubar = k_B T / (mc²)`, positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ReducedTemperature(f64);

impl ReducedTemperature {
    pub fn new(mubar: f64) -> Result<Self> {
        if mubar.is_finite() && mubar > 0.0 {
            Ok(ReducedTemperature(mubar))
        } else {
            Err(Error::Domain(format!(
                "reduced temperature must be positive and finite, got {mubar}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `beta * mc² = 1 / mubar`.
    pub fn beta(self) -> f64 {
        1.0 / self.0
    }
}
