use collgate::dynamics::{ermakov_evolve, excitation_probability, RampSchedule, RampShape};
use collgate::medium::effective_interactions;
use collgate::protocol::{simulate_gate, GateConfig, HoldSpec};
use collgate::quantities::hz;
use collgate::twobody::shift_at;
use collgate::{Constants, Quantity, ScatteringSet, Unit};
use proptest::prelude::*;

const C: Constants = Constants::RB87;

fn shape() -> impl Strategy<Value = RampShape> {
    prop_oneof![Just(RampShape::Linear), Just(RampShape::Exponential), Just(RampShape::Smoothstep)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shift_scales_as_three_halves(f in 1.0..5.0f64, w in 1.0..500.0f64, k in 1.1..20.0f64) {
        let med = effective_interactions(&ScatteringSet::rb87().with_feshbach(f), &C).unwrap();
        let ratio = shift_at(&med, hz(k * w), &C) / shift_at(&med, hz(w), &C);
        prop_assert!((ratio / k.powf(1.5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn excitation_is_a_probability(w0 in 2.0..50.0f64, w1 in 2.0..200.0f64, ta in 0.0..0.3f64, s in shape()) {
        let r = RampSchedule::new(hz(w0), hz(w1), ta, s).unwrap();
        let p = excitation_probability(&ermakov_evolve(&r, 2).unwrap(), r.omega_end);
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn gate_identities_hold(ta in 0.0..0.3f64, tf in 0.0..2.0f64, f in 1.0..4.0f64) {
        let mut cfg = GateConfig::paper();
        cfg.ramp_time = ta;
        cfg.hold = HoldSpec::Time(tf);
        cfg.scattering.feshbach_factor = f;
        let r = simulate_gate(&cfg, &C).unwrap();
        prop_assert_eq!(r.t_total, 2.0 * r.t_a + r.t_f);
        prop_assert_eq!(r.phi_total, 2.0 * r.phi_a + r.phi_f);
        prop_assert!(r.phi_a >= 0.0 && r.phi_f >= 0.0);
    }

    #[test]
    fn hold_frequency_in_any_unit(hzv in 1.0..500.0f64) {
        let mut a = GateConfig::paper();
        a.omega_tilde_1 = Quantity::new(hzv, Unit::Hertz).to_si();
        let mut b = GateConfig::paper();
        b.omega_tilde_1 = Quantity::new(hzv / 1000.0, Unit::Kilohertz).to_si();
        a.ramp_time = 0.0;
        b.ramp_time = 0.0;
        if hzv < 10.0 {
            a.omega_tilde_0 = a.omega_tilde_1;
            b.omega_tilde_0 = b.omega_tilde_1;
        }
        let ra = simulate_gate(&a, &C).unwrap();
        let rb = simulate_gate(&b, &C).unwrap();
        prop_assert!(((ra.t_f - rb.t_f) / ra.t_f).abs() < 1e-12);
    }
}
