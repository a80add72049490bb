use sawtooth_core::diagnostics::{
    fwhm, linear_fit, localization_estimates, second_moment, DistanceMetric, FwhmMethod,
};
use sawtooth_core::sawtooth::{
    apply_iterations, build_sawtooth, classical_ensemble, sawtooth_circuit, SawtoothParams,
};
use sawtooth_core::tensor::DensityState;

#[test]
fn classical_ensemble_diffuses_then_saturates() {
    let p = SawtoothParams::<f64>::reference();
    let h = classical_ensemble(&p, 20_000, 40, 2024, true).unwrap();
    let ts: Vec<f64> = (1..=10).map(f64::from).collect();
    let m2: Vec<f64> = (1..=10)
        .map(|t| second_moment(&h.distribution::<f64>(t).unwrap(), 0, DistanceMetric::Torus))
        .collect();
    let (slope, _) = linear_fit(&ts, &m2).unwrap();
    assert!((slope - p.diffusion()).abs() < 0.25 * p.diffusion(), "slope {slope}");
    let late = second_moment(&h.distribution::<f64>(40).unwrap(), 0, DistanceMetric::Torus);
    assert!(late >= 0.8 * 5.5);
    assert_eq!(classical_ensemble(&p, 20_000, 40, 2024, false).unwrap().counts, h.counts);
}

#[test]
fn quantum_map_localizes() {
    let p = SawtoothParams::<f64>::reference();
    let w = apply_iterations(&DensityState::basis(8, 4).unwrap(), &p, 40).unwrap();
    let f1 = fwhm(&w[1], FwhmMethod::Binned);
    for wt in &w[1..] {
        assert!((fwhm(wt, FwhmMethod::Binned) - f1).abs() < 1e-9);
        let peak = wt.values().iter().copied().fold(0.0, f64::max);
        assert_eq!(wt.get(0), peak);
    }
    let m = |t: usize| second_moment(&w[t], 0, DistanceMetric::Torus);
    assert!(m(40) <= 3.0 * m(1));
}

#[test]
fn circuit_reproduces_the_matrix_for_several_registers() {
    for (k, l, n) in [(1.5, 7, 3), (0.4, 3, 4), (-2.0, 1, 2), (1.0, 11, 5)] {
        let p = SawtoothParams::<f64>::new(k, l, n).unwrap();
        for include in [true, false] {
            let a = sawtooth_circuit(&p, include).to_matrix();
            let b = build_sawtooth(&p, include);
            assert!(a.max_abs_diff(&b) < 1e-9, "K={k} L={l} n={n}");
        }
    }
}

#[test]
fn reference_estimates() {
    let e = localization_estimates(&SawtoothParams::<f64>::reference());
    assert!((0.235..=0.245).contains(&e.diffusion));
    assert!(e.perturbative);
}
