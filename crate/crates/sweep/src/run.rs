use rayon::prelude::*;
use relthermo::thermo::{compose, ThermoPoint};
use relthermo::{
    partition, EngineKind, EngineSpec, Error, ReducedTemperature, ShiftPolicy, SpectrumModel,
};

use crate::config::SweepConfig;

/// One output row: a thermal state point for one coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coupling: f64,
    pub point: ThermoPoint,
    pub engine: EngineKind,
    /// `published`, `rederived`, or `oracle` for the direct sum.
    pub variant: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowFailure {
    pub coupling: f64,
    pub mubar: f64,
    pub error: Error,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutcome {
    /// Successful rows in (coupling, mubar) order.
    pub rows: Vec<Row>,
    pub failures: Vec<RowFailure>,
}

fn variant_label(engine: &EngineSpec) -> &'static str {
    match engine.variant() {
        None => "oracle",
        Some(relthermo::FormulaVariant::Published) => "published",
        Some(relthermo::FormulaVariant::Rederived) => "rederived",
    }
}

/// `ln Z` through a partition engine, rejecting non-positive `Z`.
pub fn ln_z(
    model: &SpectrumModel,
    shift: ShiftPolicy,
    engine: EngineSpec,
    mubar: f64,
) -> relthermo::Result<f64> {
    let z = partition(model, ReducedTemperature::new(mubar)?, shift, engine)?.z;
    if z > 0.0 {
        Ok(z.ln())
    } else {
        Err(Error::NonPhysical {
            mubar,
            what: format!("partition function {z:e} is not positive"),
        })
    }
}

/// Thermal point at `mubar` composed from the configured engine.
pub fn evaluate_point(
    model: &SpectrumModel,
    shift: ShiftPolicy,
    engine: EngineSpec,
    mubar: f64,
) -> relthermo::Result<ThermoPoint> {
    compose(|m| ln_z(model, shift, engine, m), mubar)
}

/// Evaluates every (coupling, mubar) pair. Points are computed in parallel
/// on the current rayon pool; the output order does not depend on it.
pub fn run_sweep(config: &SweepConfig) -> SweepOutcome {
    let Some(grid) = config.grid else {
        return SweepOutcome::default();
    };
    let points = grid.points();
    let jobs: Vec<(f64, SpectrumModel, f64)> = config
        .models()
        .into_iter()
        .flat_map(|(c, m)| points.iter().map(move |&mu| (c, m, mu)))
        .collect();
    let engine = config.engine;
    let shift = config.shift;
    let results: Vec<Result<Row, RowFailure>> = jobs
        .par_iter()
        .map(|&(coupling, model, mubar)| {
            evaluate_point(&model, shift, engine, mubar)
                .map(|point| Row {
                    coupling,
                    point,
                    engine: engine.kind(),
                    variant: variant_label(&engine),
                })
                .map_err(|error| RowFailure {
                    coupling,
                    mubar,
                    error,
                })
        })
        .collect();

    let mut outcome = SweepOutcome::default();
    for r in results {
        match r {
            Ok(row) => outcome.rows.push(row),
            Err(f) => outcome.failures.push(f),
        }
    }
    outcome
}
