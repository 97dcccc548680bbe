use proptest::prelude::*;
use relthermo::partition::{direct_sum, kg_closed_partition};
use relthermo::thermo::{self, compose, dirac_closed_thermo, kg_closed_thermo};
use relthermo::{FormulaVariant, ReducedTemperature, ShiftPolicy, SpectrumModel};

fn t(x: f64) -> ReducedTemperature {
    ReducedTemperature::new(x).unwrap()
}

fn any_model() -> impl Strategy<Value = SpectrumModel> {
    prop_oneof![
        (0.0..0.95f64, 0.05..20.0f64).prop_map(|(a, r)| SpectrumModel::KgLinear { a, r }),
        (-0.7..0.0f64, 1.0..20.0f64).prop_map(|(a, r)| SpectrumModel::KgLinear { a, r }),
        // below A ~ 0.1 consecutive levels near n = 1e4 differ by less than one ulp
        (0.1..1e4f64).prop_map(|coupling| SpectrumModel::DiracInverseLinear { coupling }),
        (0.01..1e4f64).prop_map(|coupling| SpectrumModel::DiracStrongField { coupling }),
    ]
}

fn summable_model() -> impl Strategy<Value = SpectrumModel> {
    prop_oneof![
        (0.0..0.9f64, 0.2..5.0f64).prop_map(|(a, r)| SpectrumModel::KgLinear { a, r }),
        (0.2..10.0f64).prop_map(|coupling| SpectrumModel::DiracStrongField { coupling }),
    ]
}

proptest! {
    #[test]
    fn levels_are_non_negative_and_increasing(model in any_model(), n in 0u64..10_000) {
        prop_assert!(model.validate().is_valid());
        let e0 = model.reduced_energy(n).unwrap();
        let e1 = model.reduced_energy(n + 1).unwrap();
        prop_assert!(e0 >= 0.0);
        prop_assert!(e1 > e0);
    }

    #[test]
    fn kg_unit_model_is_sqrt_odd(n in 0u64..100_000) {
        let m = SpectrumModel::KgLinear { a: 0.0, r: 1.0 };
        prop_assert_eq!(m.reduced_energy(n).unwrap(), ((2 * n + 1) as f64).sqrt());
    }

    #[test]
    fn direct_sum_increases_with_temperature(model in summable_model(), mu in 0.05..3.0f64, step in 0.01..0.5f64) {
        let shift = ShiftPolicy::default_for(&model);
        let lo = direct_sum(&model, t(mu), shift, 1e-12).unwrap().z;
        let hi = direct_sum(&model, t(mu + step), shift, 1e-12).unwrap().z;
        prop_assert!(hi > lo);
    }

    #[test]
    fn ground_shifted_sum_is_at_least_one(model in summable_model(), mu in 0.01..5.0f64) {
        let r = direct_sum(&model, t(mu), ShiftPolicy::GroundShifted, 1e-12).unwrap();
        prop_assert!(r.z >= 1.0);
        prop_assert!(r.tail_bound.unwrap() >= 0.0);
    }

    #[test]
    fn halving_tolerance_stays_within_bound(model in summable_model(), mu in 0.05..5.0f64, tol in 1e-12..1e-4f64) {
        let shift = ShiftPolicy::default_for(&model);
        let coarse = direct_sum(&model, t(mu), shift, tol).unwrap();
        let fine = direct_sum(&model, t(mu), shift, tol / 2.0).unwrap();
        let slack = 4.0 * f64::EPSILON * fine.z;
        prop_assert!((fine.z - coarse.z).abs() <= coarse.tail_bound.unwrap() + slack);
        prop_assert!(fine.terms_summed.unwrap() >= coarse.terms_summed.unwrap());
    }

    #[test]
    fn identity_chain_on_closed_forms(mu in 0.3..100.0f64, a in 0.05..2.0f64) {
        for p in [kg_closed_thermo(mu).unwrap().point, dirac_closed_thermo(mu, a).unwrap()] {
            let resid = p.sbar - p.ln_z - p.ubar / p.mubar;
            prop_assert!(resid.abs() <= 1e-10 * p.sbar.abs().max(1.0));
            prop_assert_eq!(p.fbar, -p.mubar * p.ln_z);
        }
    }

    #[test]
    fn composed_points_satisfy_identity(mu in 0.5..20.0f64) {
        let p = compose(|m| Ok(kg_closed_partition(t(m), FormulaVariant::Rederived)?.ln_z()), mu).unwrap();
        let resid = p.sbar - p.ln_z - p.ubar / p.mubar;
        prop_assert!(resid.abs() <= 1e-10 * p.sbar.abs().max(1.0));
    }
}

#[test]
fn entropy_routes_agree() {
    // S = ln Z + U/mubar and S = -dF/dmubar
    for mu in [0.5, 1.0, 3.0, 10.0] {
        let closed = dirac_closed_thermo(mu, 0.5).unwrap();
        let s = thermo::entropy_numeric(|m| Ok(dirac_closed_thermo(m, 0.5)?.fbar), mu, 1e-4 * mu)
            .unwrap();
        approx::assert_relative_eq!(s, closed.sbar, max_relative = 1e-8);

        let kg = kg_closed_thermo(mu).unwrap().point;
        let s = thermo::entropy_numeric(|m| Ok(kg_closed_thermo(m)?.point.fbar), mu, 1e-4 * mu)
            .unwrap();
        approx::assert_relative_eq!(s, kg.sbar, max_relative = 1e-8);
    }
}

#[test]
fn positivity_of_specific_heat() {
    let grid = (0..200).map(|i| 0.05 * (100.0f64 / 0.05).powf(i as f64 / 199.0));
    for mu in grid {
        for a in [1.0, 0.5, 0.1] {
            assert!(dirac_closed_thermo(mu, a).unwrap().cbar > 0.0);
        }
        if mu >= 0.3 {
            assert!(kg_closed_thermo(mu).unwrap().point.cbar > 0.0, "mu = {mu}");
        }
    }
    // composed from the direct sum, where the closed form is unusable
    let kg = SpectrumModel::KgLinear { a: 0.0, r: 1.0 };
    for mu in [0.05, 0.1, 0.2, 0.3] {
        let p = compose(
            |m| Ok(direct_sum(&kg, t(m), ShiftPolicy::GroundShifted, 1e-12)?.ln_z()),
            mu,
        )
        .unwrap();
        assert!(p.cbar > 0.0, "mu = {mu}");
    }
}

#[test]
fn printed_kg_specific_heat_turns_negative_at_low_temperature() {
    assert!(kg_closed_thermo(0.2).unwrap().point.cbar < 0.0);
}
