//! Published-vs-rederived adjudication against the direct-sum oracle.

use std::fmt;

use relthermo::partition::{kg_closed_partition, mellin_residue_partition, DEFAULT_TAIL_TOL};
use relthermo::thermo::{self, dirac_closed_thermo, kg_closed_thermo};
use relthermo::{
    partition, EngineSpec, Error, FormulaVariant, ReducedTemperature, Result, ShiftPolicy,
    SpectrumModel,
};

use crate::run::ln_z;

/// Lowest mubar at which the Euler-MacLaurin forms are compared.
pub const MIN_EM_PROBE: f64 = 1.0;
/// Lowest mubar at which the Mellin forms are compared.
pub const MIN_MELLIN_PROBE: f64 = 5.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportProbe {
    pub kg_mubar: Vec<f64>,
    pub dirac_mubar: Vec<f64>,
    /// Inverse couplings `a`.
    pub couplings: Vec<f64>,
    pub high_t_mubar: f64,
    /// `(start, stop, count)` of the grid searched for the entropy inflection.
    pub entropy_grid: (f64, f64, usize),
}

impl Default for ReportProbe {
    fn default() -> Self {
        ReportProbe {
            kg_mubar: vec![1.0, 2.0, 5.0, 10.0],
            dirac_mubar: vec![5.0, 10.0, 20.0],
            couplings: vec![1.0, 0.5, 0.1],
            high_t_mubar: 100.0,
            entropy_grid: (0.1, 2.0, 191),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KgVerdict {
    pub probe: Vec<f64>,
    pub published_max_rel: f64,
    pub rederived_max_rel: f64,
    pub winner: FormulaVariant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiracVerdict {
    pub a: f64,
    pub probe: Vec<f64>,
    /// Least-squares `k` in `Z_direct - 1/2 ≈ k mubar²`.
    pub fitted_coefficient: f64,
    /// `1/(2a)`.
    pub printed_candidate: f64,
    /// `1/a`.
    pub residue_candidate: f64,
    pub coefficient_winner: FormulaVariant,
    pub published_max_rel: f64,
    pub rederived_max_rel: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HighTempVerdict {
    pub mubar: f64,
    pub kg_u_over_mubar: f64,
    pub kg_z_over_mubar2: f64,
    pub kg_c: f64,
    /// `(a, U/mubar, C)` from the published Dirac closed forms.
    pub dirac: Vec<(f64, f64, f64)>,
    pub printed_slope: f64,
    pub derived_slope: f64,
    pub slope_winner: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub kg: KgVerdict,
    pub dirac: Vec<DiracVerdict>,
    pub high_t: HighTempVerdict,
    /// Where d²S/dmubar² of the Klein-Gordon entropy (direct sum) first
    /// changes sign, if it does on the probe grid.
    pub entropy_inflection: Option<f64>,
}

fn t(x: f64) -> Result<ReducedTemperature> {
    ReducedTemperature::new(x)
}

fn rel(x: f64, reference: f64) -> f64 {
    ((x - reference) / reference).abs()
}

fn direct(model: &SpectrumModel, mubar: f64) -> Result<f64> {
    let shift = ShiftPolicy::default_for(model);
    Ok(partition(
        model,
        t(mubar)?,
        shift,
        EngineSpec::DirectSum {
            tail_tol: DEFAULT_TAIL_TOL,
        },
    )?
    .z)
}

fn check_probe(points: &[f64], min: f64, what: &str) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Domain(format!("{what} probe grid is empty")));
    }
    if let Some(bad) = points.iter().find(|&&m| !(m >= min && m.is_finite())) {
        return Err(Error::Domain(format!(
            "{what} probe point {bad} lies below the comparison threshold {min}"
        )));
    }
    Ok(())
}

pub fn kg_verdict(probe: &[f64]) -> Result<KgVerdict> {
    check_probe(probe, MIN_EM_PROBE, "Euler-MacLaurin")?;
    let model = SpectrumModel::KgLinear { a: 0.0, r: 1.0 };
    let (mut published, mut rederived) = (0.0f64, 0.0f64);
    for &mu in probe {
        let z = direct(&model, mu)?;
        published = published.max(rel(
            kg_closed_partition(t(mu)?, FormulaVariant::Published)?.z,
            z,
        ));
        rederived = rederived.max(rel(
            kg_closed_partition(t(mu)?, FormulaVariant::Rederived)?.z,
            z,
        ));
    }
    Ok(KgVerdict {
        probe: probe.to_vec(),
        published_max_rel: published,
        rederived_max_rel: rederived,
        winner: if rederived < published {
            FormulaVariant::Rederived
        } else {
            FormulaVariant::Published
        },
    })
}

pub fn dirac_verdict(a: f64, probe: &[f64]) -> Result<DiracVerdict> {
    check_probe(probe, MIN_MELLIN_PROBE, "Mellin")?;
    let model = SpectrumModel::DiracStrongField { coupling: 1.0 / a };
    let (mut sxy, mut sxx) = (0.0, 0.0);
    let (mut published, mut rederived) = (0.0f64, 0.0f64);
    for &mu in probe {
        let z = direct(&model, mu)?;
        let x = mu * mu;
        sxy += (z - 0.5) * x;
        sxx += x * x;
        published = published.max(rel(
            mellin_residue_partition(a, t(mu)?, FormulaVariant::Published, false)?.z,
            z,
        ));
        rederived = rederived.max(rel(
            mellin_residue_partition(a, t(mu)?, FormulaVariant::Rederived, false)?.z,
            z,
        ));
    }
    // a single probe point reduces to the pointwise ratio (Z - 1/2)/mubar²
    let fitted = sxy / sxx;
    let printed = 1.0 / (2.0 * a);
    let residue = 1.0 / a;
    Ok(DiracVerdict {
        a,
        probe: probe.to_vec(),
        fitted_coefficient: fitted,
        printed_candidate: printed,
        residue_candidate: residue,
        coefficient_winner: if (fitted - residue).abs() < (fitted - printed).abs() {
            FormulaVariant::Rederived
        } else {
            FormulaVariant::Published
        },
        published_max_rel: published,
        rederived_max_rel: rederived,
    })
}

pub fn high_t_verdict(mubar: f64, couplings: &[f64]) -> Result<HighTempVerdict> {
    let kg = kg_closed_thermo(mubar)?.point;
    let kg_z = kg_closed_partition(t(mubar)?, FormulaVariant::Rederived)?.z;
    let dirac = couplings
        .iter()
        .map(|&a| {
            let p = dirac_closed_thermo(mubar, a)?;
            Ok((a, p.ubar / mubar, p.cbar))
        })
        .collect::<Result<Vec<_>>>()?;
    let (printed, derived) = (4.0, 2.0);
    let worst = |target: f64| {
        dirac
            .iter()
            .map(|&(_, s, _)| (s - target).abs())
            .fold(0.0f64, f64::max)
    };
    let slope_winner = if worst(derived) < worst(printed) {
        "derived"
    } else {
        "printed"
    };
    Ok(HighTempVerdict {
        mubar,
        kg_u_over_mubar: kg.ubar / mubar,
        kg_z_over_mubar2: kg_z / (mubar * mubar),
        kg_c: kg.cbar,
        dirac,
        printed_slope: printed,
        derived_slope: derived,
        slope_winner,
    })
}

/// Entropy of the Klein-Gordon spectrum (direct sum) on a linear grid and
/// the first sign change of its discrete second difference.
pub fn entropy_inflection(start: f64, stop: f64, count: usize) -> Result<Option<f64>> {
    if count < 3 || !(stop > start && start > 0.0) {
        return Err(Error::Domain(
            "entropy grid needs 3+ increasing positive points".into(),
        ));
    }
    let model = SpectrumModel::KgLinear { a: 0.0, r: 1.0 };
    let engine = EngineSpec::direct();
    let shift = ShiftPolicy::GroundShifted;
    let step = (stop - start) / (count - 1) as f64;
    let s: Vec<f64> = (0..count)
        .map(|i| {
            let mu = start + i as f64 * step;
            let f = |m: f64| ln_z(&model, shift, engine, m);
            let u = thermo::mean_energy_numeric(f, mu, thermo::default_step(mu))?;
            Ok(thermo::entropy(f(mu)?, u, mu))
        })
        .collect::<Result<_>>()?;
    let d2: Vec<f64> = s.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect();
    for (i, w) in d2.windows(2).enumerate() {
        if w[0].signum() != w[1].signum() {
            // d2[i] sits at grid index i + 1; interpolate the zero
            let frac = w[0] / (w[0] - w[1]);
            return Ok(Some(start + (i as f64 + 1.0 + frac) * step));
        }
    }
    Ok(None)
}

pub fn discrepancy_report(probe: &ReportProbe) -> Result<DiscrepancyReport> {
    let kg = kg_verdict(&probe.kg_mubar)?;
    let dirac = probe
        .couplings
        .iter()
        .map(|&a| dirac_verdict(a, &probe.dirac_mubar))
        .collect::<Result<Vec<_>>>()?;
    let high_t = high_t_verdict(probe.high_t_mubar, &probe.couplings)?;
    let (s0, s1, n) = probe.entropy_grid;
    Ok(DiscrepancyReport {
        kg,
        dirac,
        high_t,
        entropy_inflection: entropy_inflection(s0, s1, n)?,
    })
}

fn list(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kg = &self.kg;
        writeln!(f, "== Klein-Gordon Euler-MacLaurin constant (a = 0, r = 1)")?;
        writeln!(f, "probe mubar: {}", list(&kg.probe))?;
        writeln!(
            f,
            "published (c3 = 1)   max rel error vs direct sum: {:.6e}",
            kg.published_max_rel
        )?;
        writeln!(
            f,
            "rederived (c3 = 1/3) max rel error vs direct sum: {:.6e}",
            kg.rederived_max_rel
        )?;
        writeln!(f, "winner: {}", kg.winner)?;
        writeln!(f)?;
        writeln!(f, "== Dirac strong-field Mellin leading coefficient")?;
        for d in &self.dirac {
            writeln!(f, "a = {}  probe mubar: {}", d.a, list(&d.probe))?;
            writeln!(
                f,
                "  fitted k in Z - 1/2 = k mubar^2: {:.6}  (normalized k a = {:.6})",
                d.fitted_coefficient,
                d.fitted_coefficient * d.a
            )?;
            writeln!(
                f,
                "  printed 1/(2a) = {:.6}   residue 1/a = {:.6}   winner: {}",
                d.printed_candidate, d.residue_candidate, d.coefficient_winner
            )?;
            writeln!(
                f,
                "  max rel error vs direct sum: published {:.6e}, rederived {:.6e}",
                d.published_max_rel, d.rederived_max_rel
            )?;
        }
        writeln!(f)?;
        let h = &self.high_t;
        writeln!(f, "== High-temperature behaviour at mubar = {}", h.mubar)?;
        writeln!(
            f,
            "Klein-Gordon: U/mubar = {:.6}  Z/mubar^2 = {:.6}  C = {:.6}",
            h.kg_u_over_mubar, h.kg_z_over_mubar2, h.kg_c
        )?;
        for (a, slope, c) in &h.dirac {
            writeln!(f, "Dirac a = {a}: U/mubar = {slope:.6}  C = {c:.6}")?;
        }
        writeln!(
            f,
            "Dirac U/mubar: printed {} vs derived {}; closer: {}",
            h.printed_slope, h.derived_slope, h.slope_winner
        )?;
        writeln!(f)?;
        match self.entropy_inflection {
            Some(x) => writeln!(
                f,
                "Klein-Gordon entropy inflection (direct sum): mubar ~ {x:.4}"
            ),
            None => writeln!(f, "Klein-Gordon entropy inflection: none on the probe grid"),
        }
    }
}
