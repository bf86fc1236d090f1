use std::hint::black_box;

use collgate::dynamics::{
    ermakov_evolve, phase_accumulate, tdse_oracle, PhaseSegment, RampSchedule, RampShape, TdseSettings,
};
use collgate::medium::effective_interactions;
use collgate::protocol::{design_ramp, simulate_gate, GateConfig};
use collgate::quantities::hz;
use collgate::twobody::{energy_shift, exact_pair_energy, trap_state_from_effective};
use collgate::{Constants, ScatteringSet};
use criterion::{criterion_group, criterion_main, Criterion};

const C: Constants = Constants::RB87;

fn static_chain(c: &mut Criterion) {
    let s = ScatteringSet::rb87().with_feshbach(3.0);
    c.bench_function("shift_at_hold", |b| {
        b.iter(|| {
            let med = effective_interactions(black_box(&s), &C).unwrap();
            let t = trap_state_from_effective(hz(80.0), &s, &C).unwrap();
            energy_shift(&med, &t, &C)
        })
    });
    let med = effective_interactions(&s, &C).unwrap();
    let t = trap_state_from_effective(hz(80.0), &s, &C).unwrap();
    c.bench_function("exact_pair_energy", |b| b.iter(|| exact_pair_energy(black_box(&med), &t, &C).unwrap()));
}

fn ramps(c: &mut Criterion) {
    let r = RampSchedule::new(hz(10.0), hz(80.0), 0.14, RampShape::Smoothstep).unwrap();
    let med = effective_interactions(&ScatteringSet::rb87().with_feshbach(3.0), &C).unwrap();
    c.bench_function("ermakov_0.14s", |b| b.iter(|| ermakov_evolve(black_box(&r), 2).unwrap()));
    c.bench_function("ramp_phase_0.14s", |b| {
        b.iter(|| phase_accumulate(&med, black_box(&PhaseSegment::Ramp(r)), &C).unwrap())
    });
    c.bench_function("simulate_gate_paper", |b| b.iter(|| simulate_gate(black_box(&GateConfig::paper()), &C).unwrap()));

    let mut slow = c.benchmark_group("slow");
    slow.sample_size(10);
    slow.bench_function("tdse_oracle_0.14s", |b| {
        b.iter(|| tdse_oracle(black_box(&r), &TdseSettings::default()).unwrap())
    });
    slow.bench_function("design_ramp_smoothstep", |b| {
        b.iter(|| design_ramp(hz(10.0), hz(80.0), black_box(0.002), RampShape::Smoothstep).unwrap())
    });
    slow.finish();
}

criterion_group!(benches, static_chain, ramps);
criterion_main!(benches);
