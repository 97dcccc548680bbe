//! Reduced thermal functions.
//!
//! With `mubar = k_B T/(mc²)` the canonical relations become
//!
//! ```text
//! F/mc² = -mubar ln Z
//! U/mc² = mubar² d(ln Z)/d(mubar)
//! S/k_B = ln Z + U/(mc² mubar) = -dF/d(mubar)
//! C/k_B = dU/d(mubar)
//! ```
//!
//! The derivative routes use central differences. Closed forms for the two
//! spectra are provided alongside, evaluated exactly as published.

use crate::error::{Error, Result};

/// Relative finite-difference step used when none is given.
pub const DEFAULT_RELATIVE_STEP: f64 = 1e-4;

/// Where a point's entropy came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropySource {
    /// A published closed-form entropy expression.
    Printed,
    /// `ln Z + U/mubar`, no closed form being available.
    Identity,
}

/// One state point in reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub mubar: f64,
    pub ln_z: f64,
    pub fbar: f64,
    pub ubar: f64,
    pub sbar: f64,
    pub cbar: f64,
    pub sbar_source: EntropySource,
}

pub fn default_step(mubar: f64) -> f64 {
    DEFAULT_RELATIVE_STEP * mubar
}

pub fn free_energy(ln_z: f64, mubar: f64) -> f64 {
    -mubar * ln_z
}

pub fn entropy(ln_z: f64, ubar: f64, mubar: f64) -> f64 {
    ln_z + ubar / mubar
}

fn check_step(mubar: f64, h: f64) -> Result<()> {
    if h > 0.0 && mubar > h && mubar.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "finite difference needs mubar > h > 0, got mubar = {mubar}, h = {h}"
        )))
    }
}

fn central_difference<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let plus = f(x + h)?;
    let minus = f(x - h)?;
    Ok((plus - minus) / (2.0 * h))
}

/// `U/mc² = mubar² d(ln Z)/d(mubar)` by central difference, `O(h²)`.
pub fn mean_energy_numeric<F>(ln_z_fn: F, mubar: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    check_step(mubar, h)?;
    Ok(mubar * mubar * central_difference(ln_z_fn, mubar, h)?)
}

/// `C/k_B = dU/d(mubar)` by central difference, `O(h²)`.
pub fn specific_heat_numeric<F>(ubar_fn: F, mubar: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    check_step(mubar, h)?;
    central_difference(ubar_fn, mubar, h)
}

/// `S/k_B = -dF/d(mubar)`, the derivative route to the entropy.
pub fn entropy_numeric<F>(fbar_fn: F, mubar: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    check_step(mubar, h)?;
    Ok(-central_difference(fbar_fn, mubar, h)?)
}

/// Builds a full [`ThermoPoint`] from any `ln Z(mubar)`.
///
/// `U` is a central difference of `ln Z` and `C` a central difference of
/// that, both with relative step [`DEFAULT_RELATIVE_STEP`].
pub fn compose<F>(ln_z_fn: F, mubar: f64) -> Result<ThermoPoint>
where
    F: Fn(f64) -> Result<f64>,
{
    let ln_z = ln_z_fn(mubar)?;
    let u_at = |m: f64| mean_energy_numeric(&ln_z_fn, m, default_step(m));
    let ubar = u_at(mubar)?;
    let cbar = specific_heat_numeric(u_at, mubar, default_step(mubar))?;
    Ok(ThermoPoint {
        mubar,
        ln_z,
        fbar: free_energy(ln_z, mubar),
        ubar,
        sbar: entropy(ln_z, ubar, mubar),
        cbar,
        sbar_source: EntropySource::Identity,
    })
}

/// Thermal point from `Z` and its first two derivatives in `mubar`.
pub fn from_partition_derivatives(mubar: f64, z: f64, dz: f64, d2z: f64) -> Result<ThermoPoint> {
    if !(mubar > 0.0 && mubar.is_finite()) {
        return Err(Error::Domain(format!(
            "mubar must be positive, got {mubar}"
        )));
    }
    if z.is_nan() || z <= 0.0 {
        return Err(Error::NonPhysical {
            mubar,
            what: format!("partition function {z:e} is not positive"),
        });
    }
    let ln_z = z.ln();
    let g = dz / z;
    let ubar = mubar * mubar * g;
    let cbar = 2.0 * mubar * g + mubar * mubar * (d2z / z - g * g);
    Ok(ThermoPoint {
        mubar,
        ln_z,
        fbar: free_energy(ln_z, mubar),
        ubar,
        sbar: entropy(ln_z, ubar, mubar),
        cbar,
        sbar_source: EntropySource::Identity,
    })
}

/// Shared denominator `-1 - 3μ + 57μ² + 360μ³ + 720μ⁴(1 + μ)` of the
/// Klein-Gordon closed forms; equals `720 μ³ Z` for the `c3 = 1/3`
/// partition function.
pub fn kg_denominator(mu: f64) -> f64 {
    -1.0 + mu * (-3.0 + mu * (57.0 + mu * (360.0 + mu * (720.0 + 720.0 * mu))))
}

/// The single positive real root of [`kg_denominator`] (about 0.1117).
pub fn kg_denominator_root() -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kg_denominator(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn kg_u_numerator(mu: f64) -> f64 {
    // 1 + 2μ - 19μ² + 240μ⁴ + 480μ⁵
    1.0 + mu * (2.0 + mu * (-19.0 + mu * mu * (240.0 + 480.0 * mu)))
}

fn kg_c_numerator(mu: f64) -> f64 {
    let m = mu;
    let m2 = m * m;
    let m4 = m2 * m2;
    let m8 = m4 * m4;
    3.0 * (-1.0 - 4.0 * m - 6.0 * m2 - 606.0 * m2 * m - 5163.0 * m4 - 11520.0 * m4 * m
        + 43200.0 * m4 * m2
        + 309600.0 * m4 * m2 * m
        + 691200.0 * m8 * (1.0 + m)
        + 345600.0 * m8 * m2)
}

/// Closed-form Klein-Gordon point plus the value of the shared denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgClosedThermo {
    pub point: ThermoPoint,
    pub denominator: f64,
}

/// The published Klein-Gordon thermal functions (`a = 0`, `r = 1`).
///
/// `U`, `S` and `C` are the printed rational expressions. `ln Z` uses
/// `Z = D/(720 μ³)`, the partition function these expressions are the exact
/// derivatives of. Below the denominator root that `Z` is negative and the
/// point is rejected.
pub fn kg_closed_thermo(mubar: f64) -> Result<KgClosedThermo> {
    if !(mubar > 0.0 && mubar.is_finite()) {
        return Err(Error::Domain(format!(
            "mubar must be positive, got {mubar}"
        )));
    }
    let d = kg_denominator(mubar);
    if d.abs() < 1e-12 {
        return Err(Error::Singular {
            mubar,
            denominator: d,
            root: kg_denominator_root(),
        });
    }
    if d < 0.0 {
        return Err(Error::NonPhysical {
            mubar,
            what: format!(
                "closed-form Z = {:e} is negative below the denominator root {:.6}",
                d / (720.0 * mubar.powi(3)),
                kg_denominator_root()
            ),
        });
    }
    let ln_z = (d / (720.0 * mubar.powi(3))).ln();
    let ratio = 3.0 * kg_u_numerator(mubar) / d;
    let ubar = mubar * ratio;
    let sbar = ratio + ln_z;
    let cbar = kg_c_numerator(mubar) / (d * d);
    Ok(KgClosedThermo {
        point: ThermoPoint {
            mubar,
            ln_z,
            fbar: free_energy(ln_z, mubar),
            ubar,
            sbar,
            cbar,
            sbar_source: EntropySource::Printed,
        },
        denominator: d,
    })
}

/// The published strong-field Dirac thermal functions for inverse coupling
/// `a`, built on `Z = (mubar² + a)/(2a)`. No entropy was published; it is
/// filled from the identity and tagged as such.
pub fn dirac_closed_thermo(mubar: f64, a: f64) -> Result<ThermoPoint> {
    if !(mubar > 0.0 && mubar.is_finite()) {
        return Err(Error::Domain(format!(
            "mubar must be positive, got {mubar}"
        )));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!(
            "inverse coupling a must be positive, got {a}"
        )));
    }
    let m2 = mubar * mubar;
    let s = m2 + a;
    let ln_z = (s / (2.0 * a)).ln();
    let ubar = 2.0 * m2 * mubar / s;
    let cbar = 2.0 * m2 * (m2 + 3.0 * a) / (s * s);
    Ok(ThermoPoint {
        mubar,
        ln_z,
        fbar: free_energy(ln_z, mubar),
        ubar,
        sbar: entropy(ln_z, ubar, mubar),
        cbar,
        sbar_source: EntropySource::Identity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HighTempModel {
    /// Klein-Gordon, `a = 0`, `r = 1`.
    KgLinear,
    /// Strong-field Dirac with inverse coupling `a`.
    DiracStrong { a: f64 },
}

/// `Z ~ z_coefficient mubar²`, `U ~ u_slope mubar`, `C -> c_limit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticLaw {
    pub z_coefficient: f64,
    pub u_slope: f64,
    pub c_limit: f64,
}

/// High-temperature laws as printed and as implied by the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighTemperatureLimits {
    pub printed: AsymptoticLaw,
    pub derived: AsymptoticLaw,
}

pub fn high_temperature_limits(model: HighTempModel) -> HighTemperatureLimits {
    match model {
        HighTempModel::KgLinear => {
            // Z = D/(720 μ³) ~ μ², U ~ 3·480/720 μ, C ~ 3·345600/720²
            let law = AsymptoticLaw {
                z_coefficient: 1.0,
                u_slope: 2.0,
                c_limit: 2.0,
            };
            HighTemperatureLimits {
                printed: law,
                derived: law,
            }
        }
        HighTempModel::DiracStrong { a } => HighTemperatureLimits {
            printed: AsymptoticLaw {
                z_coefficient: 1.0 / (2.0 * a),
                u_slope: 4.0,
                c_limit: 2.0,
            },
            // limits of 2μ³/(μ² + a) and 2μ²(μ² + 3a)/(μ² + a)²
            derived: AsymptoticLaw {
                z_coefficient: 1.0 / (2.0 * a),
                u_slope: 2.0,
                c_limit: 2.0,
            },
        },
    }
}
