//! Residue evaluation of the Mellin/zeta representation for the
//! strong-coupling Dirac spectrum `E_n = sqrt(2 a n)`, `a = 1/A`.
//!
//! Writing `exp(-y)` as the inverse Mellin transform of `Gamma(t)` gives
//!
//! ```text
//! sum_{n>=1} exp(-sqrt(2an)/mubar) = 1/(2πi) ∮ mubar^t (2a)^(-t/2) zeta(t/2) Gamma(t) dt
//! ```
//!
//! Here zeta is the standard series starting at `n = 1`, so the `n = 0`
//! level (Boltzmann factor 1) is added separately. The residues are:
//!
//! * `t = 2` (pole of `zeta(t/2)`, residue 2 in `t`): `mubar²/a`;
//! * `t = 0` (pole of `Gamma`): `zeta(0) = -1/2`;
//! * `t = -k` (poles of `Gamma`, residue `(-1)^k/k!`):
//!   `(-1)^k/k! zeta(-k/2) c^k` with `c = sqrt(2a)/mubar`.

use crate::error::{Error, Result};
use crate::specialfn::{gamma_int, zeta_at, ZETA_MINUS_HALF, ZETA_MINUS_THREE_HALVES};
use crate::spectra::ReducedTemperature;

use super::{EngineSpec, FormulaVariant, PartitionResult};

/// Residue of `zeta(t/2)` at `t = 2`.
const ZETA_HALF_ARG_POLE_RESIDUE: f64 = 2.0;

/// Deepest Gamma pole included when `extended_poles` is set.
const DEEPEST_POLE: u32 = 4;

fn zeta_at_half_integer(k: u32) -> f64 {
    match k {
        1 => ZETA_MINUS_HALF,
        3 => ZETA_MINUS_THREE_HALVES,
        _ if k.is_multiple_of(2) => {
            zeta_at(-(k as i64) / 2).expect("non-positive integer argument")
        }
        _ => unreachable!("only poles down to t = -{DEEPEST_POLE} are tabulated"),
    }
}

/// Sum of the residues at `t = -1 ..= -DEEPEST_POLE`.
fn gamma_pole_tail(c: f64) -> f64 {
    let mut total = 0.0;
    let mut factorial = 1.0;
    let mut power = 1.0;
    for k in 1..=DEEPEST_POLE {
        factorial *= k as f64;
        power *= -c;
        total += power / factorial * zeta_at_half_integer(k);
    }
    total
}

/// Partition function of the strong-field Dirac spectrum with inverse
/// coupling `a`.
///
/// `Published` returns `mubar²/(2a) + 1/2` verbatim (the `extended_poles`
/// flag does not apply to it). `Rederived` returns
/// `1 + mubar²/a + zeta(0)`, plus the deeper Gamma poles when
/// `extended_poles` is set.
pub fn mellin_residue_partition(
    a: f64,
    mubar: ReducedTemperature,
    variant: FormulaVariant,
    extended_poles: bool,
) -> Result<PartitionResult> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!(
            "inverse coupling a must be positive, got {a}"
        )));
    }
    let mu = mubar.get();
    let engine = EngineSpec::MellinResidue {
        variant,
        extended_poles,
    };
    let (z, notes) = match variant {
        FormulaVariant::Published => (
            mu * mu / (2.0 * a) + 0.5,
            "Mellin residue, printed form mubar^2/(2a) + 1/2".to_string(),
        ),
        FormulaVariant::Rederived => {
            let leading = ZETA_HALF_ARG_POLE_RESIDUE * gamma_int(2)? * mu * mu / (2.0 * a);
            let origin = gamma_int(1)? * zeta_at(0)?;
            let mut z = 1.0 + leading + origin;
            let mut notes = "Mellin residue, poles t = 2, 0 plus n = 0 level".to_string();
            if extended_poles {
                z += gamma_pole_tail((2.0 * a).sqrt() / mu);
                notes.push_str(&format!(", Gamma poles t = -1..-{DEEPEST_POLE}"));
            }
            (z, notes)
        }
    };
    Ok(PartitionResult {
        z,
        engine,
        terms_summed: None,
        tail_bound: None,
        notes,
    })
}
