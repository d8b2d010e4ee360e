//! Cross-checks of the coherent-state algebra against the number-basis
//! oracle.

mod common;

use catbreed::{
    apply_loss, best_cat_fidelity, breed, breed_with, cat_fidelity, inner_product, BreedConfig,
    CatSpec, KetSuperposition, ModeIndex, Parity,
};
use catbreed_oracle::{
    breed_pipeline, cat_to_fock, coherent_to_fock, cutoff_for_amplitude, loss_pipeline, FockVector,
};
use common::{dyads_to_fock, random_ket};
use num_complex::Complex64;
use rand::{rngs::StdRng, SeedableRng};

fn ket_to_fock(u: &KetSuperposition, cutoff: usize) -> FockVector {
    let d = cutoff + 1;
    let mut acc = FockVector::from_amplitudes(vec![d; 4], vec![Complex64::new(0.0, 0.0); d.pow(4)])
        .unwrap();
    for t in u.terms() {
        let v = ModeIndex::ALL
            .iter()
            .map(|m| coherent_to_fock(t.label.get(*m), cutoff).unwrap())
            .reduce(|a, b| a.tensor(&b))
            .unwrap();
        acc = acc.plus(&v.scaled(t.weight)).unwrap();
    }
    acc
}

#[test]
fn inner_products_match_number_basis() {
    let mut rng = StdRng::seed_from_u64(7);
    let cutoff = cutoff_for_amplitude(2.0);
    for case in 0..12 {
        let nu = 1 + case % 4;
        let nv = 1 + (case / 4) % 4;
        let u = random_ket(&mut rng, nu, 2.0, &ModeIndex::ALL);
        let v = random_ket(&mut rng, nv, 2.0, &ModeIndex::ALL);
        let exact = inner_product(&u, &v);
        let oracle = ket_to_fock(&u, cutoff).inner(&ket_to_fock(&v, cutoff)).unwrap();
        assert!(
            (exact - oracle).norm() < 1e-8,
            "case {case}: {exact} vs {oracle}"
        );
    }
}

fn oracle_breed(alpha: f64, eta: f64) -> catbreed_oracle::OracleBreed {
    breed_pipeline(alpha, alpha / eta.sqrt(), eta).unwrap()
}

#[test]
fn effective_state_matches_number_basis() {
    for (alpha, eta) in [(1.0, 0.9), (1.5, 0.9), (0.5, 0.8)] {
        let exact = breed(alpha, eta).unwrap();
        let oracle = oracle_breed(alpha, eta);
        let converted = dyads_to_fock(&exact.effective_state, oracle.cutoff_psi);
        let distance = converted.trace_distance(&oracle.effective_state).unwrap();
        assert!(distance < 1e-7, "alpha={alpha} eta={eta}: trace distance {distance}");
        assert!((exact.success_probability - oracle.success_probability).abs() < 1e-8);
    }
}

#[test]
fn fidelity_matches_number_basis() {
    let (alpha, eta) = (1.0, 0.9);
    let exact = breed(alpha, eta).unwrap();
    let f = cat_fidelity(&exact.effective_state, 2f64.sqrt(), Parity::Odd).unwrap();
    let oracle = oracle_breed(alpha, eta);
    let target = cat_to_fock(2f64.sqrt(), -1.0, oracle.cutoff_psi).unwrap();
    let g = oracle.effective_state.fidelity(&target).unwrap();
    assert!((f - g).abs() < 1e-8, "{f} vs {g}");
}

#[test]
fn ideal_success_probability_matches_number_basis() {
    let exact = breed(1.0, 1.0).unwrap();
    let oracle = oracle_breed(1.0, 1.0);
    assert!((exact.success_probability - oracle.success_probability).abs() < 1e-8);
}

#[test]
fn unmatched_best_magnitude_is_a_fidelity_maximum_in_number_basis() {
    let unmatched = BreedConfig {
        matched: false,
        swap_inputs: false,
    };
    let (alpha, eta) = (2.0, 0.95);
    let exact = breed_with(alpha, eta, unmatched).unwrap();
    let best = best_cat_fidelity(&exact.effective_state, Parity::Odd).unwrap();
    assert!(best.magnitude < 2f64.sqrt() * alpha);

    let oracle = breed_pipeline(alpha, alpha, eta).unwrap();
    let at = |m: f64| {
        let target = cat_to_fock(m, -1.0, oracle.cutoff_psi).unwrap();
        oracle.effective_state.fidelity(&target).unwrap()
    };
    let peak = at(best.magnitude);
    assert!((peak - best.fidelity).abs() < 1e-8);
    assert!(at(best.magnitude - 1e-3) < peak);
    assert!(at(best.magnitude + 1e-3) < peak);
}

#[test]
fn loss_states_match_number_basis() {
    for parity in [Parity::Even, Parity::Odd] {
        for alpha in [0.7, 1.5, 2.0] {
            for eta in [0.05, 0.2, 0.6] {
                let exact = apply_loss(CatSpec::new(alpha, parity).unwrap(), eta).unwrap();
                let oracle = loss_pipeline(alpha, parity.sign(), eta).unwrap();
                let converted = dyads_to_fock(&exact.state, cutoff_for_amplitude(alpha));
                let distance = converted.trace_distance(&oracle).unwrap();
                assert!(distance < 1e-8, "{parity:?} alpha={alpha} eta={eta}: {distance}");
                assert!((converted.trace() - oracle.trace()).norm() < 1e-8);
            }
        }
    }
}
