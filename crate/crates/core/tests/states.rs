#![allow(clippy::needless_range_loop)]

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use std::f64::consts::PI;
use swpst::phase_space::PhaseSpaceFrame;
use swpst::qmat::{tensor, DensityMatrix};
use swpst::states::{
    harmonic_state, pseudopure, randomized_harmonic, spin_coherent, two_qubit_scs,
    RandomizedHarmonicSpec,
};
use swpst::tomography::sparsity;

#[test]
fn harmonic_state_is_a_momentum_basis_vector() {
    for n in [2, 4, 8, 16] {
        let frame = PhaseSpaceFrame::build(n).unwrap();
        for j in 0..n {
            let psi = harmonic_state(j, n).unwrap();
            let overlap: C64 = (0..n)
                .map(|m| frame.qft()[(m, j)].conj() * psi.amplitudes()[m])
                .sum();
            assert!((overlap.norm() - 1.0).abs() < 1e-12, "N={n} j={j}");
            let boosted = frame.shift().apply(psi.amplitudes()).unwrap();
            let ratio = boosted[0] / psi.amplitudes()[0];
            for m in 0..n {
                assert!((boosted[m] - ratio * psi.amplitudes()[m]).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn randomized_harmonic_sparsity_decreases_with_eta() {
    let n = 8;
    let frame = PhaseSpaceFrame::build(n).unwrap();
    let etas = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
    for threshold in [0.1, 0.01] {
        let means: Vec<f64> = etas
            .iter()
            .map(|&eta| {
                (0..120u64)
                    .map(|seed| {
                        let psi =
                            randomized_harmonic(RandomizedHarmonicSpec { j: 0, eta, seed }, n)
                                .unwrap();
                        sparsity(&frame.wigner_transform(&psi.density()).unwrap(), threshold)
                            .unwrap()
                    })
                    .sum::<f64>()
                    / 120.0
            })
            .collect();
        let inversions = means.windows(2).filter(|w| w[1] > w[0]).count();
        assert!(inversions <= 1, "threshold {threshold}: {means:?}");
    }
}

#[test]
fn pseudopure_is_linear_in_wigner_space() {
    let frame = PhaseSpaceFrame::build(4).unwrap();
    let rho = two_qubit_scs(1.0, 2.5);
    let w_rho = frame.wigner_transform(&rho).unwrap();
    let w_mixed = frame
        .wigner_transform(&DensityMatrix::maximally_mixed(4))
        .unwrap();
    for eps in [0.0, 0.3, 1.0] {
        let w = frame
            .wigner_transform(&pseudopure(&rho, eps).unwrap())
            .unwrap();
        for i in 0..16 {
            let expect = (1.0 - eps) * w_mixed.values()[i] + eps * w_rho.values()[i];
            assert!((w.values()[i] - expect).abs() < 1e-12);
        }
    }
    assert!(
        pseudopure(&rho, 1.0)
            .unwrap()
            .matrix()
            .max_abs_diff(rho.matrix())
            < 1e-15
    );
}

#[test]
fn pseudopure_rejects_out_of_range_epsilon() {
    let rho = two_qubit_scs(0.0, 0.0);
    assert!(pseudopure(&rho, -0.1).is_err());
    assert!(pseudopure(&rho, 1.5).is_err());
}

#[test]
fn coherent_state_at_r() {
    let psi = spin_coherent(PI / 2.0, PI);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((psi.amplitudes()[0] - C64::new(h, 0.0)).norm() < 1e-15);
    assert!((psi.amplitudes()[1] - C64::new(-h, 0.0)).norm() < 1e-15);
    let proj = two_qubit_scs(PI / 2.0, PI);
    let v = psi.tensor(&psi);
    let expect = [0.5, -0.5, -0.5, 0.5];
    for i in 0..4 {
        assert!((v.amplitudes()[i].re - expect[i]).abs() < 1e-15);
    }
    assert!(proj.matrix().max_abs_diff(v.density().matrix()) < 1e-15);
}

proptest! {
    #[test]
    fn coherent_states_are_pure(theta in -10.0..10.0f64, phi in -10.0..10.0f64) {
        let rho = two_qubit_scs(theta, phi);
        prop_assert!((rho.purity() - 1.0).abs() < 1e-12);
        let single = spin_coherent(theta, phi).density();
        let square = tensor(single.matrix(), single.matrix());
        prop_assert!(square.max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn coherent_angles_are_periodic(theta in 0.0..PI, phi in 0.0..6.0f64) {
        let a = spin_coherent(theta, phi);
        let b = spin_coherent(theta + 2.0 * PI, phi + 2.0 * PI);
        prop_assert!(a.inner(&b).norm() > 1.0 - 1e-12);
    }

    #[test]
    fn randomized_harmonic_is_normalized_and_seeded(
        j in 0usize..8, eta in 0.0..=1.0f64, seed in any::<u64>()
    ) {
        let spec = RandomizedHarmonicSpec { j, eta, seed };
        let a = randomized_harmonic(spec, 8).unwrap();
        let b = randomized_harmonic(spec, 8).unwrap();
        prop_assert_eq!(a.amplitudes(), b.amplitudes());
        let norm: f64 = a.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        // Magnitudes lie in [(1-η), (1+η)] before normalization.
        let mags: Vec<f64> = a.amplitudes().iter().map(|z| z.norm()).collect();
        let (lo, hi) = mags.iter().fold((f64::MAX, 0.0f64), |(l, h), &m| (l.min(m), h.max(m)));
        if eta < 1.0 {
            prop_assert!(hi / lo <= (1.0 + eta) / (1.0 - eta) + 1e-12);
        }
    }

    #[test]
    fn zero_eta_reproduces_harmonic_state(j in 0usize..16, seed in any::<u64>()) {
        let a = randomized_harmonic(RandomizedHarmonicSpec { j, eta: 0.0, seed }, 16).unwrap();
        let b = harmonic_state(j, 16).unwrap();
        prop_assert_eq!(a.amplitudes(), b.amplitudes());
    }
}
