#![allow(dead_code)]

use catbreed::{CoherentLabel, DyadMixture, KetSuperposition, ModeIndex};
use catbreed_oracle::{coherent_dyads_to_fock, FockOperator};
use num_complex::Complex64;
use rand::Rng;

/// Number-basis matrix of a single-mode dyad mixture living on `(A,psi)`.
pub fn dyads_to_fock(rho: &DyadMixture, cutoff: usize) -> FockOperator {
    let dyads: Vec<_> = rho
        .terms()
        .iter()
        .map(|d| {
            for m in [ModeIndex::B_PSI, ModeIndex::A_PSI_BAR, ModeIndex::B_PSI_BAR] {
                assert_eq!(d.ket.get(m), Complex64::new(0.0, 0.0));
                assert_eq!(d.bra.get(m), Complex64::new(0.0, 0.0));
            }
            (d.weight, d.ket.get(ModeIndex::A_PSI), d.bra.get(ModeIndex::A_PSI))
        })
        .collect();
    coherent_dyads_to_fock(&dyads, cutoff).expect("cutoff large enough")
}

pub fn random_complex(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let phi = rng.gen::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, phi)
}

pub fn random_label(rng: &mut impl Rng, radius: f64, modes: &[ModeIndex]) -> CoherentLabel {
    modes.iter().fold(CoherentLabel::vacuum(), |l, &m| {
        l.with(m, random_complex(rng, radius))
    })
}

pub fn random_ket(rng: &mut impl Rng, terms: usize, radius: f64, modes: &[ModeIndex]) -> KetSuperposition {
    KetSuperposition::from_terms(
        (0..terms).map(|_| (random_complex(rng, 1.0), random_label(rng, radius, modes))),
    )
}

/// Random physical operator: a positive mixture of random pure states.
pub fn random_mixture(rng: &mut impl Rng, components: usize, terms: usize, radius: f64) -> DyadMixture {
    (0..components).fold(DyadMixture::new(), |acc, _| {
        let u = random_ket(rng, terms, radius, &ModeIndex::ALL);
        acc.plus(&DyadMixture::from_pure(&u).scaled(Complex64::new(rng.gen_range(0.1..1.0), 0.0)))
    })
}
