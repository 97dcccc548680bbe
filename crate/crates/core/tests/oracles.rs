//! Cross-checks of the library against independent reference computations.

use approx::assert_relative_eq;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use relthermo::partition::{
    direct_sum, euler_maclaurin_correction, kg_boltzmann_odd_derivatives, kg_closed_partition,
    mellin_residue_partition, tail_integral,
};
use relthermo::specialfn::{
    bernoulli, to_f64, zeta_at, BernoulliTable, ZETA_MINUS_HALF, ZETA_MINUS_THREE_HALVES,
};
use relthermo::{FormulaVariant, ReducedTemperature, ShiftPolicy, SpectrumModel};

fn t(x: f64) -> ReducedTemperature {
    ReducedTemperature::new(x).unwrap()
}

/// Composite Simpson rule on [lo, hi] with `n` (even) panels.
fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * h / 3.0
}

/// ∫_0^∞ exp(-beta sqrt(b' n + b'')) dn by quadrature in s = sqrt(n),
/// truncated where the integrand is below e^-60.
fn tail_quadrature(beta: f64, bp: f64, bpp: f64) -> f64 {
    let u_max = 60.0 / beta + bpp.sqrt();
    let s_max = ((u_max * u_max - bpp).max(0.0) / bp).sqrt();
    simpson(
        |s| 2.0 * s * (-beta * (bp * s * s + bpp).sqrt()).exp(),
        0.0,
        s_max,
        200_000,
    )
}

#[test]
fn tail_integral_matches_quadrature_on_grid() {
    for beta in [0.5, 1.0, 3.0] {
        for bp in [0.2, 1.0, 4.0] {
            for bpp in [0.0, 1.0, 9.0] {
                let closed = tail_integral(beta, bp, bpp).unwrap();
                let quad = tail_quadrature(beta, bp, bpp);
                assert_relative_eq!(closed, quad, max_relative = 1e-8);
            }
        }
    }
}

/// Akiyama-Tanigawa algorithm, yielding B_n with B_1 = +1/2.
fn akiyama_tanigawa(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = Vec::new();
    for m in 0..=n {
        a.push(BigRational::new(1.into(), ((m + 1) as i64).into()));
        for j in (1..=m).rev() {
            let jj = BigRational::from_integer((j as i64).into());
            a[j - 1] = jj * (&a[j - 1] - &a[j]);
        }
    }
    a[0].clone()
}

#[test]
fn bernoulli_matches_akiyama_tanigawa() {
    let table = BernoulliTable::with_max(30);
    for k in (2..=30).step_by(2) {
        assert_eq!(table.even(k).unwrap(), &akiyama_tanigawa(k), "B_{k}");
    }
    for k in (2..=12).step_by(2) {
        assert_eq!(bernoulli(k).unwrap(), akiyama_tanigawa(k));
    }
}

/// zeta(s) for real s > 1: partial sum plus Euler-MacLaurin tail.
fn zeta_real(s: f64) -> f64 {
    let n = 10_000usize;
    let partial: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    let nn = n as f64;
    partial + nn.powf(1.0 - s) / (s - 1.0) + 0.5 * nn.powf(-s) + s / 12.0 * nn.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * nn.powf(-s - 3.0)
}

/// zeta(1 - s) = 2 (2π)^-s cos(πs/2) Gamma(s) zeta(s)
fn zeta_reflected(s: f64, gamma_s: f64) -> f64 {
    use std::f64::consts::PI;
    2.0 * (2.0 * PI).powf(-s) * (PI * s / 2.0).cos() * gamma_s * zeta_real(s)
}

#[test]
fn half_integer_zeta_constants() {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    assert_relative_eq!(
        ZETA_MINUS_HALF,
        zeta_reflected(1.5, sqrt_pi / 2.0),
        max_relative = 1e-12
    );
    assert_relative_eq!(
        ZETA_MINUS_THREE_HALVES,
        zeta_reflected(2.5, 0.75 * sqrt_pi),
        max_relative = 1e-12
    );
}

#[test]
fn integer_zeta_matches_functional_equation() {
    // zeta(-1) from s = 2, zeta(-3) from s = 4
    assert_relative_eq!(
        zeta_at(-1).unwrap(),
        zeta_reflected(2.0, 1.0),
        max_relative = 1e-12
    );
    assert_relative_eq!(
        zeta_at(-3).unwrap(),
        zeta_reflected(4.0, 6.0),
        max_relative = 1e-12
    );
    assert_relative_eq!(
        zeta_at(-5).unwrap(),
        zeta_reflected(6.0, 120.0),
        max_relative = 1e-12
    );
    assert_eq!(zeta_at(-4).unwrap(), 0.0);
    // zeta(0) from the alternating eta series: eta(0) = 1/2 (Abel sum), zeta(0) = eta(0)/(1 - 2)
    assert_eq!(zeta_at(0).unwrap(), 0.5 / (1.0 - 2.0));
}

/// Richardson-extrapolated central difference of order `k` (1 or 3) at 0 for
/// a function analytic on (-1/2, ∞).
fn fd_derivative<F: Fn(f64) -> f64>(f: F, k: u32, h: f64) -> f64 {
    let d = |h: f64| match k {
        1 => (f(h) - f(-h)) / (2.0 * h),
        3 => (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h),
        _ => unreachable!(),
    };
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

#[test]
fn symbolic_derivatives_match_finite_differences() {
    let derivs = kg_boltzmann_odd_derivatives(2);
    for mu in [0.5, 1.0, 3.0] {
        let f = |n: f64| (-((2.0 * n + 1.0).sqrt() - 1.0) / mu).exp();
        let x = 1.0 / mu;
        let eval = |p: &Vec<BigRational>| -> f64 {
            p.iter()
                .rev()
                .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
        };
        assert_relative_eq!(
            eval(&derivs[0]),
            fd_derivative(f, 1, 1e-3),
            max_relative = 1e-8
        );
        assert_relative_eq!(
            eval(&derivs[1]),
            fd_derivative(f, 3, 1e-2),
            max_relative = 1e-5
        );
        // hand-derived: f' = -x, f''' = -3x - 3x² - x³
        assert_relative_eq!(
            eval(&derivs[1]),
            -3.0 * x - 3.0 * x * x - x * x * x,
            max_relative = 1e-14
        );
    }
}

#[test]
fn rederived_constant_is_one_third() {
    // correction = (19 mu² - mu - c3)/(240 mu³) => c3 = -240 * coeff of x³
    let c = euler_maclaurin_correction(2);
    let c3 = -BigRational::from_integer(240.into()) * &c[3];
    assert_eq!(c3, BigRational::new(1.into(), 3.into()));
    assert!(c[0].is_zero());
    assert_eq!(to_f64(&c[1]), 19.0 / 240.0);
}

/// Plain summation of the first `n` Boltzmann factors.
fn brute(model: &SpectrumModel, mu: f64, shift: f64, n: u64) -> f64 {
    let mut terms: Vec<f64> = (0..n)
        .map(|k| (-(model.reduced_energy(k).unwrap() - shift) / mu).exp())
        .collect();
    terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
    terms.iter().sum()
}

#[test]
fn direct_sum_matches_brute_force() {
    let kg = SpectrumModel::KgLinear { a: 0.0, r: 1.0 };
    for (mu, n) in [(0.1, 2_000u64), (1.0, 20_000), (2.0, 60_000)] {
        let reference = brute(&kg, mu, 1.0, n);
        let z = direct_sum(&kg, t(mu), ShiftPolicy::GroundShifted, 1e-12)
            .unwrap()
            .z;
        assert_relative_eq!(z, reference, max_relative = 1e-12);
    }
    let dirac = SpectrumModel::DiracStrongField { coupling: 1.0 };
    for (mu, n) in [(0.1, 100u64), (1.0, 5_000), (5.0, 100_000)] {
        let reference = brute(&dirac, mu, 0.0, n);
        let z = direct_sum(&dirac, t(mu), ShiftPolicy::Absolute, 1e-12)
            .unwrap()
            .z;
        assert_relative_eq!(z, reference, max_relative = 1e-12);
    }
}

// Frozen from compensated (fsum) brute summation over >= 2e6 levels.
const KG_DIRECT: [(f64, f64); 5] = [
    (0.1, 1.000_666_182_998_420_7),
    (1.0, 2.577_065_730_310_333),
    (2.0, 6.539_488_649_837_983),
    (5.0, 30.515_994_036_166_97),
    (10.0, 110.508_027_167_186_14),
];

#[test]
fn direct_sum_frozen_values() {
    let kg = SpectrumModel::KgLinear { a: 0.0, r: 1.0 };
    for (mu, expected) in KG_DIRECT {
        let z = direct_sum(&kg, t(mu), ShiftPolicy::GroundShifted, 1e-12)
            .unwrap()
            .z;
        assert_relative_eq!(z, expected, max_relative = 1e-11);
    }
    let dirac = SpectrumModel::DiracStrongField { coupling: 1.0 };
    let z = direct_sum(&dirac, t(5.0), ShiftPolicy::Absolute, 1e-12)
        .unwrap()
        .z;
    assert_relative_eq!(z, 25.555_561_758_461_46, max_relative = 1e-11);
}

#[test]
fn closed_form_dispute_settled_by_oracle() {
    let kg = SpectrumModel::KgLinear { a: 0.0, r: 1.0 };
    for mu in [1.0, 2.0, 5.0, 10.0] {
        let z = direct_sum(&kg, t(mu), ShiftPolicy::GroundShifted, 1e-12)
            .unwrap()
            .z;
        let p = kg_closed_partition(t(mu), FormulaVariant::Published)
            .unwrap()
            .z;
        let r = kg_closed_partition(t(mu), FormulaVariant::Rederived)
            .unwrap()
            .z;
        assert!((r - z).abs() < (p - z).abs(), "mu = {mu}");
    }
}

#[test]
fn extended_poles_improve_mellin_form() {
    let dirac = SpectrumModel::DiracStrongField { coupling: 1.0 };
    for mu in [2.0, 5.0, 10.0] {
        let z = direct_sum(&dirac, t(mu), ShiftPolicy::Absolute, 1e-13)
            .unwrap()
            .z;
        let base = mellin_residue_partition(1.0, t(mu), FormulaVariant::Rederived, false)
            .unwrap()
            .z;
        let ext = mellin_residue_partition(1.0, t(mu), FormulaVariant::Rederived, true)
            .unwrap()
            .z;
        let c = 2f64.sqrt() / mu;
        // remaining error starts at the t = -5 pole, O(c^5)
        assert!((ext - z).abs() < c.powi(5), "mu = {mu}: {}", ext - z);
        assert!((ext - z).abs() < 1e-2 * (base - z).abs());
    }
}

#[test]
fn strong_field_approximates_exact_dirac() {
    let coupling = 1e3;
    let exact = SpectrumModel::DiracInverseLinear { coupling };
    let strong = SpectrumModel::DiracStrongField { coupling };
    for n in 1..=10u64 {
        let e = exact.reduced_energy(n).unwrap();
        let s = strong.reduced_energy(n).unwrap();
        let rel = (e - s).abs() / s;
        // first order: e/s = 1 - 3n/(4A) + O((n/A)²)
        assert_relative_eq!(rel, 0.75 * n as f64 / coupling, max_relative = 0.02);
        assert!(rel <= 2.0 * n as f64 / coupling + 1e-6);
    }
}

#[test]
fn exact_dirac_levels_approach_rest_energy() {
    let m = SpectrumModel::DiracInverseLinear { coupling: 2.5 };
    let mut prev = m.reduced_energy(0).unwrap();
    for n in 1..20_000u64 {
        let e = m.reduced_energy(n).unwrap();
        assert!(e > prev && e < 1.0);
        prev = e;
    }
    assert!(1.0 - prev < 1e-7);
}

#[test]
fn mellin_high_temperature_law() {
    for a in [0.1, 0.5, 1.0] {
        let model = SpectrumModel::DiracStrongField { coupling: 1.0 / a };
        for mu in [10.0, 20.0] {
            let z = direct_sum(&model, t(mu), ShiftPolicy::Absolute, 1e-12)
                .unwrap()
                .z;
            let normalized = (z - 0.5) * a / (mu * mu);
            assert_relative_eq!(normalized, 1.0, max_relative = 1e-2);
        }
    }
}
