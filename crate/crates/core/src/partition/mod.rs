//! Canonical partition function `Z(mubar)` of a level spectrum.
//!
//! Three engines are available:
//!
//! * [`direct_sum`]: term-by-term summation, stopped once a closed-form
//!   integral bound on the discarded tail drops below the requested relative
//!   tolerance. This is the reference every closed form is judged against.
//! * [`euler_maclaurin`]: the Euler-MacLaurin closed form for the
//!   Klein-Gordon linear-potential spectrum.
//! * [`mellin`]: the residue sum of the Mellin/zeta representation for the
//!   strong-coupling Dirac spectrum.
//!
//! Closed forms come in two [`FormulaVariant`]s: the `Published` expression
//! and a `Rederived` one computed here from scratch, so that the two can be
//! compared against the direct sum.

mod direct;
mod euler_maclaurin;
mod mellin;

use std::fmt;

use crate::error::{Error, Result};
use crate::spectra::{ReducedTemperature, SpectrumModel};

pub use direct::{direct_sum, tail_integral, MAX_TERMS};
pub use euler_maclaurin::{
    euler_maclaurin_correction, euler_maclaurin_sum, kg_boltzmann_odd_derivatives,
    kg_closed_partition, kg_euler_maclaurin,
};
pub use mellin::mellin_residue_partition;

/// Default relative tail tolerance of the direct summation engine.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Energy reference of the Boltzmann factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftPolicy {
    /// Sum of `exp(-(E_n - E_0)/mubar)`; the first summand is exactly 1.
    GroundShifted,
    /// Sum of `exp(-E_n/mubar)`.
    Absolute,
}

impl ShiftPolicy {
    /// Ground-shifted for Klein-Gordon, absolute for both Dirac models.
    pub fn default_for(model: &SpectrumModel) -> Self {
        match model {
            SpectrumModel::KgLinear { .. } => ShiftPolicy::GroundShifted,
            _ => ShiftPolicy::Absolute,
        }
    }

    pub(crate) fn reference_energy(self, model: &SpectrumModel) -> f64 {
        match self {
            ShiftPolicy::GroundShifted => model.ground_energy(),
            ShiftPolicy::Absolute => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaVariant {
    /// The closed form exactly as printed in the literature.
    Published,
    /// The closed form re-derived here.
    Rederived,
}

impl fmt::Display for FormulaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaVariant::Published => "published",
            FormulaVariant::Rederived => "rederived",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineKind {
    DirectSum,
    EulerMaclaurin,
    MellinResidue,
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::DirectSum => "direct",
            EngineKind::EulerMaclaurin => "em",
            EngineKind::MellinResidue => "mellin",
        })
    }
}

/// Evaluation method plus its knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EngineSpec {
    DirectSum {
        tail_tol: f64,
    },
    EulerMaclaurin {
        /// Highest Bernoulli correction index `i` (`B_2i`).
        order: usize,
        variant: FormulaVariant,
    },
    MellinResidue {
        variant: FormulaVariant,
        /// Add the Gamma poles at `t = -1 ..= -4` to the two leading poles.
        extended_poles: bool,
    },
}

impl EngineSpec {
    pub fn direct() -> Self {
        EngineSpec::DirectSum {
            tail_tol: DEFAULT_TAIL_TOL,
        }
    }

    /// Euler-MacLaurin (rederived, order 2) for Klein-Gordon, Mellin residue
    /// (rederived, leading poles) for Dirac.
    pub fn default_for(model: &SpectrumModel) -> Self {
        match model {
            SpectrumModel::KgLinear { .. } => EngineSpec::EulerMaclaurin {
                order: 2,
                variant: FormulaVariant::Rederived,
            },
            _ => EngineSpec::MellinResidue {
                variant: FormulaVariant::Rederived,
                extended_poles: false,
            },
        }
    }

    pub fn kind(&self) -> EngineKind {
        match self {
            EngineSpec::DirectSum { .. } => EngineKind::DirectSum,
            EngineSpec::EulerMaclaurin { .. } => EngineKind::EulerMaclaurin,
            EngineSpec::MellinResidue { .. } => EngineKind::MellinResidue,
        }
    }

    pub fn variant(&self) -> Option<FormulaVariant> {
        match *self {
            EngineSpec::DirectSum { .. } => None,
            EngineSpec::EulerMaclaurin { variant, .. }
            | EngineSpec::MellinResidue { variant, .. } => Some(variant),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EngineSpec::DirectSum { tail_tol } if !(tail_tol > 0.0 && tail_tol.is_finite()) => Err(
                Error::Domain(format!("tail tolerance must be positive, got {tail_tol}")),
            ),
            EngineSpec::EulerMaclaurin { order: 0, .. } => Err(Error::Domain(
                "Euler-MacLaurin order must be at least 1".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// A partition-function value and how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub z: f64,
    pub engine: EngineSpec,
    /// Number of summed levels (direct summation only).
    pub terms_summed: Option<u64>,
    /// Upper bound on the discarded tail (direct summation only).
    pub tail_bound: Option<f64>,
    pub notes: String,
}

impl PartitionResult {
    pub fn ln_z(&self) -> f64 {
        self.z.ln()
    }
}

/// Evaluates `Z` for `model` at `mubar` with the chosen engine.
pub fn partition(
    model: &SpectrumModel,
    mubar: ReducedTemperature,
    shift: ShiftPolicy,
    engine: EngineSpec,
) -> Result<PartitionResult> {
    engine.validate()?;
    model.validate().into_result()?;
    match engine {
        EngineSpec::DirectSum { tail_tol } => direct_sum(model, mubar, shift, tail_tol),
        EngineSpec::EulerMaclaurin { order, variant } => {
            kg_euler_maclaurin(model, mubar, shift, order, variant)
        }
        EngineSpec::MellinResidue {
            variant,
            extended_poles,
        } => match *model {
            // E_0 = 0, so both shift policies coincide
            SpectrumModel::DiracStrongField { coupling } => {
                mellin_residue_partition(1.0 / coupling, mubar, variant, extended_poles)
            }
            _ => Err(Error::Unsupported(format!(
                "the Mellin residue engine needs the strong-field Dirac spectrum, got {}",
                model.name()
            ))),
        },
    }
}
