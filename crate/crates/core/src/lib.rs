//! Bound-state spectra of two relativistic problems and their canonical
//! thermodynamics.
//!
//! Everything is expressed in reduced units: energies are divided by the
//! rest energy `mc²` and the temperature enters only through
//! `mubar = k_B T / (mc²)`.
//!
//! * [`spectra`]: Klein-Gordon levels for a linear vector + scalar potential,
//!   Dirac levels for an inverse-linear scalar potential, and the
//!   strong-coupling limit of the latter.
//! * [`specialfn`]: exact Bernoulli numbers, zeta at non-positive integers,
//!   Gamma at positive integers.
//! * [`partition`]: three ways of evaluating `Z(mubar)`: certified direct
//!   summation, Euler-MacLaurin closed forms and the Mellin/zeta residue sum.
//! * [`thermo`]: free energy, mean energy, entropy and specific heat, either
//!   composed from any partition function or from the closed forms.

pub mod error;
pub mod partition;
pub mod specialfn;
pub mod spectra;
pub mod thermo;

pub use error::{Error, Result};
pub use partition::{
    partition, EngineKind, EngineSpec, FormulaVariant, PartitionResult, ShiftPolicy,
};
pub use spectra::{ReducedTemperature, SpectrumModel, ValidityReport, Violation};
pub use thermo::ThermoPoint;
