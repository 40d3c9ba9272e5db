use angles_bench::sweep::{evaluate, run_sweep, to_csv_string, Quantity, SweepOptions, Value};
use angles_bench::PinKind;
use angles_core::constructions::{ConstructionKind, ConstructionParams};
use angles_core::counters::{self, ChainPolicy, PinSpec};
use angles_core::DEFAULT_EPS;
use num_bigint::BigUint;

fn quiet() -> SweepOptions {
    SweepOptions {
        timing: false,
        ..SweepOptions::default()
    }
}

fn count(v: usize) -> Value {
    Value::Count(BigUint::from(v))
}

#[test]
fn helix_rows_respect_the_cap() {
    let out = run_sweep(
        ConstructionKind::Helix,
        &ConstructionParams::default(),
        &[30, 10, 20],
        &[Quantity::DistinctAngles],
        &quiet(),
    );
    assert_eq!(out.rows.len(), 3);
    let ns: Vec<usize> = out.rows.iter().map(|r| r.n).collect();
    assert_eq!(ns, [10, 20, 30]);
    for r in &out.rows {
        let cap = 3 * (r.n - 1) * (r.n - 2) / 2;
        assert!(r.value.to_f64() <= cap as f64, "n = {}: {}", r.n, r.value);
    }
}

#[test]
fn cones_pair_counts() {
    let out = run_sweep(
        ConstructionKind::Cones,
        &ConstructionParams::default(),
        &[29, 77],
        &[Quantity::Pinned(PinKind::PairAllRoles)],
        &quiet(),
    );
    let values: Vec<Value> = out.rows.iter().map(|r| r.value.clone()).collect();
    assert_eq!(values, [count(5), count(9)]);
    assert!(out.skipped.is_empty());
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let run = || {
        let out = run_sweep(
            ConstructionKind::Random,
            &ConstructionParams { seed: 7, ..ConstructionParams::default() },
            &[6, 8],
            &[
                Quantity::DistinctAngles,
                Quantity::Pinned(PinKind::Center),
                Quantity::Chains(2),
                Quantity::Energy,
                Quantity::Bound,
            ],
            &quiet(),
        );
        to_csv_string(&out.rows)
    };
    assert_eq!(run(), run());
}

#[test]
fn rows_match_direct_counters() {
    let params = ConstructionParams { seed: 3, ..ConstructionParams::default() };
    let out = run_sweep(
        ConstructionKind::LogSpiral,
        &params,
        &[8, 11],
        &[
            Quantity::DistinctAngles,
            Quantity::Pinned(PinKind::Endpoints),
            Quantity::Chains(2),
            Quantity::Energy,
        ],
        &quiet(),
    );
    assert_eq!(out.rows.len(), 8);
    for n in [8, 11] {
        let built = ConstructionKind::LogSpiral
            .build(&ConstructionParams { n, ..params.clone() })
            .unwrap();
        let c = &built.config;
        let hist = counters::angle_histogram(c, DEFAULT_EPS);
        let expected = [
            count(counters::count_distinct_angles(c, DEFAULT_EPS)),
            count(counters::count_pinned(c, PinSpec::Endpoints(0, 1), DEFAULT_EPS).unwrap()),
            count(counters::count_chains(c, 2, DEFAULT_EPS, ChainPolicy::WindowDistinct).unwrap()),
            Value::Count(counters::energy(&hist)),
        ];
        let got: Vec<Value> = out.rows.iter().filter(|r| r.n == n).map(|r| r.value.clone()).collect();
        assert_eq!(got, expected);
        assert_eq!(evaluate(&built, Quantity::DistinctAngles, &quiet()).unwrap().0, expected[0]);
    }
}

#[test]
fn sunshine_sizes_are_total_point_counts() {
    let out = run_sweep(
        ConstructionKind::Sunshine,
        &ConstructionParams::default(),
        &[10, 11, 17],
        &[Quantity::Pinned(PinKind::Endpoint)],
        &quiet(),
    );
    let ns: Vec<usize> = out.rows.iter().map(|r| r.n).collect();
    assert_eq!(ns, [10, 17]);
    assert_eq!(out.skipped.len(), 1);
}
