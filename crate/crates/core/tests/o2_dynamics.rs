use spinanneal::chimera::{build_chimera, ChimeraSpec, Graph};
use spinanneal::o2::{self, potential, run_o2_scheduled, sample_initial_angles, RotorState};
use spinanneal::{energy, gen_instance, AnnealParamsO2, Gauge, Instance, O2Annealer, Solver};

fn total_energy(inst: &Instance, st: &RotorState, s: f64, h: f64) -> f64 {
    st.kinetic_energy() + potential(inst, &st.theta, s, h)
}

fn cell(seed: u64) -> Instance {
    gen_instance(&build_chimera(&ChimeraSpec::new(1, 1, 4)).unwrap(), seed)
}

#[test]
fn ferromagnetic_pair_aligns() {
    let pair = Instance::uniform("pair", Graph::from_edges(2, vec![(0, 1)]).unwrap(), -1).unwrap();
    let solver = O2Annealer::new(AnnealParamsO2::default());
    let aligned = (0..100)
        .filter(|&seed| energy(&pair, &solver.solve(&pair, seed).unwrap()).unwrap() == -1)
        .count();
    assert!(aligned >= 99, "{aligned}/100");
}

#[test]
fn gauge_covariance_of_angles() {
    let inst = gen_instance(&build_chimera(&ChimeraSpec::new(2, 2, 4)).unwrap(), 4);
    let params = AnnealParamsO2 {
        t_f: 30.0,
        ..Default::default()
    };
    for g in 0..5 {
        let gauge = Gauge::random(32, 90 + g);
        let mirrored = gauge.apply_instance(&inst).unwrap();
        let start = sample_initial_angles(32, 0.1, g);
        let a = o2::run_o2_from(&inst, &params, start.clone()).unwrap();
        let b = o2::run_o2_from(&mirrored, &params, start.gauged(&gauge)).unwrap();
        let expect = a.gauged(&gauge);
        for (x, y) in expect.theta.iter().zip(&b.theta) {
            assert!((x - y).abs() <= 1e-9);
        }
        assert_eq!(gauge.apply_config(&o2::rotor_readout(&a)), o2::rotor_readout(&b));

        let plain = O2Annealer::new(params);
        let twisted = O2Annealer::new(params).with_angle_gauge(gauge.clone());
        for seed in 0..5 {
            let x = plain.solve(&inst, seed).unwrap();
            let y = twisted.solve(&mirrored, seed).unwrap();
            assert_eq!(gauge.apply_config(&x), y);
        }
    }
}

#[test]
fn undamped_energy_drift_is_small() {
    let inst = cell(6);
    let params = AnnealParamsO2 {
        gamma: 0.0,
        ..Default::default()
    };
    let (s, h) = (0.6, params.h);
    let start = sample_initial_angles(8, 0.9, 2);
    let e0 = total_energy(&inst, &start, s, h);
    let steps = 100_000;
    let mut samples = Vec::new();
    run_o2_scheduled(&inst, &params, start, steps, |_| s, |k, st| {
        if k % 100 == 99 {
            samples.push(((k + 1) as f64 * params.dt, total_energy(&inst, st, s, h)));
        }
    })
    .unwrap();
    // least-squares slope of E(t): the secular drift, separated from the bounded oscillation
    let n = samples.len() as f64;
    let mt = samples.iter().map(|p| p.0).sum::<f64>() / n;
    let me = samples.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = samples.iter().map(|p| (p.0 - mt) * (p.1 - me)).sum();
    let var: f64 = samples.iter().map(|p| (p.0 - mt) * (p.0 - mt)).sum();
    let slope = cov / var;
    let t_end = steps as f64 * params.dt;
    let end_drift = (samples.last().unwrap().1 - e0).abs() / t_end;
    assert!(slope.abs() <= 1e-6, "slope {slope:e}");
    assert!(end_drift <= 1e-6, "end drift {end_drift:e}");
}

#[test]
fn damped_energy_never_rises() {
    let inst = cell(8);
    let params = AnnealParamsO2 {
        gamma: 0.1,
        ..Default::default()
    };
    for (seed, s) in [(1, 0.3), (2, 0.8), (3, 1.0)] {
        let h = params.h;
        let start = sample_initial_angles(8, 0.9, seed);
        let mut last = total_energy(&inst, &start, s, h);
        let mut worst = f64::NEG_INFINITY;
        run_o2_scheduled(&inst, &params, start, 20_000, |_| s, |_, st| {
            let e = total_energy(&inst, st, s, h);
            worst = worst.max(e - last);
            last = e;
        })
        .unwrap();
        assert!(worst <= 1e-9, "seed {seed}, s {s}: rise {worst:e}");
    }
}

#[test]
fn angles_stay_wrapped() {
    let inst = cell(2);
    let params = AnnealParamsO2 {
        t_f: 20.0,
        kappa: 0.9,
        gamma: 0.0,
        ..Default::default()
    };
    run_o2_scheduled(&inst, &params, sample_initial_angles(8, 0.9, 1), 2000, |_| 1.0, |_, st| {
        assert!(st
            .theta
            .iter()
            .all(|&t| t > -std::f64::consts::PI && t <= std::f64::consts::PI));
    })
    .unwrap();
}
