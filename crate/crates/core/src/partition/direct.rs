use crate::error::{Error, Result};
use crate::spectra::{ReducedTemperature, SpectrumModel};

use super::{EngineSpec, PartitionResult, ShiftPolicy};

/// Hard cap on the number of summed levels.
pub const MAX_TERMS: u64 = 10_000_000;

/// `∫_0^∞ exp(-beta sqrt(bprime n + bdprime)) dn
///     = 2/(bprime beta²) (1 + beta sqrt(bdprime)) exp(-beta sqrt(bdprime))`.
///
/// Evaluated at `bdprime + bprime N` it bounds the sum of a square-root
/// spectrum's Boltzmann factors beyond level `N`.
pub fn tail_integral(beta: f64, bprime: f64, bdprime: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    if !(bprime > 0.0 && bprime.is_finite()) {
        return Err(Error::Domain(format!(
            "bprime must be positive, got {bprime}"
        )));
    }
    if !(bdprime >= 0.0 && bdprime.is_finite()) {
        return Err(Error::Domain(format!(
            "bdprime must be non-negative, got {bdprime}"
        )));
    }
    let x = beta * bdprime.sqrt();
    Ok(2.0 / (bprime * beta * beta) * (1.0 + x) * (-x).exp())
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sums Boltzmann factors level by level until the integral bound on the
/// remaining tail is at most `tail_tol` times the running sum.
///
/// The returned `tail_bound` is that absolute bound, so the exact infinite
/// sum lies in `[z, z + tail_bound]` up to rounding.
pub fn direct_sum(
    model: &SpectrumModel,
    mubar: ReducedTemperature,
    shift: ShiftPolicy,
    tail_tol: f64,
) -> Result<PartitionResult> {
    let engine = EngineSpec::DirectSum { tail_tol };
    engine.validate()?;
    model.validate().into_result()?;
    let form = model.sqrt_form().ok_or_else(|| {
        Error::Divergent(format!(
            "{} levels accumulate below the rest energy, so the Boltzmann sum grows without bound",
            model.name()
        ))
    })?;

    let beta = mubar.beta();
    let e_ref = shift.reference_energy(model);
    // tail factor 2/(b' beta²) (1 + beta sqrt(b' n + b'')), see tail_integral
    let scale = 2.0 / (form.slope * beta * beta);

    let mut sum = CompensatedSum::default();
    let mut bound = f64::INFINITY;
    for n in 0..MAX_TERMS {
        let root = (form.slope * n as f64 + form.intercept).sqrt();
        let term = (-beta * (form.offset + root - e_ref)).exp();
        sum.add(term);
        let z = sum.value();
        if term <= tail_tol * z || n % 1024 == 0 {
            bound = term * scale * (1.0 + beta * root);
            if bound <= tail_tol * z {
                return Ok(PartitionResult {
                    z,
                    engine,
                    terms_summed: Some(n + 1),
                    tail_bound: Some(bound),
                    notes: format!("direct sum over {} levels", n + 1),
                });
            }
        }
    }
    Err(Error::Truncation {
        achieved: bound / sum.value(),
        terms: MAX_TERMS,
    })
}
