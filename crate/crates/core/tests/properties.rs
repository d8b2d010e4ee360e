mod common;

use catbreed::{
    beamsplitter_5050, breed, breed_with, fidelity, inner_product, loss_fidelity_exact,
    loss_fidelity_paper, make_cat, multimode_overlap, BreedConfig, CatSpec, CoherentLabel,
    DyadMixture, KetSuperposition, ModeIndex, Parity,
};
use common::{random_ket, random_mixture};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn amplitude() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn label() -> impl Strategy<Value = CoherentLabel> {
    proptest::array::uniform4(amplitude()).prop_map(|a| {
        ModeIndex::ALL
            .iter()
            .zip(a)
            .fold(CoherentLabel::vacuum(), |l, (m, z)| l.with(*m, z))
    })
}

fn ket(max_terms: usize) -> impl Strategy<Value = KetSuperposition> {
    proptest::collection::vec((amplitude(), label()), 1..=max_terms)
        .prop_map(KetSuperposition::from_terms)
}

fn mode_subset() -> impl Strategy<Value = Vec<ModeIndex>> {
    proptest::sample::subsequence(ModeIndex::ALL.to_vec(), 0..=4)
}

proptest! {
    #[test]
    fn overlap_is_bounded(x in label(), y in label()) {
        let o = multimode_overlap(&x, &y).unwrap();
        prop_assert!(o.norm() <= 1.0 + 1e-15);
        prop_assert!((multimode_overlap(&x, &x).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn overlap_below_one_for_distinct_labels(x in label(), mode in 0usize..4, shift in amplitude()) {
        prop_assume!(shift.norm() > 1e-3);
        let m = ModeIndex::ALL[mode];
        let y = x.with(m, x.get(m) + shift);
        prop_assert!(!x.is_mergeable(&y));
        prop_assert!(multimode_overlap(&x, &y).unwrap().norm() < 1.0);
    }

    #[test]
    fn inner_product_is_conjugate_symmetric(u in ket(5), v in ket(5)) {
        let uv = inner_product(&u, &v);
        let vu = inner_product(&v, &u);
        prop_assert!((uv - vu.conj()).norm() < 1e-12 * (1.0 + uv.norm()));
        let uu = inner_product(&u, &u);
        prop_assert!(uu.re >= -1e-12);
        prop_assert!(uu.im.abs() < 1e-12 * (1.0 + uu.re));
    }

    #[test]
    fn partial_trace_preserves_trace_and_hermiticity(u in ket(4), traced in mode_subset()) {
        let rho = DyadMixture::from_pure(&u);
        let reduced = rho.partial_trace(&traced);
        let (a, b) = (rho.trace(), reduced.trace());
        prop_assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
        prop_assert!(rho.is_hermitian(1e-12));
        prop_assert!(reduced.is_hermitian(1e-10));
    }

    #[test]
    fn dyad_from_pure_trace_is_norm(u in ket(6)) {
        let rho = DyadMixture::from_pure(&u);
        let n = u.norm_sqr();
        prop_assert!((rho.trace().re - n).abs() < 1e-12 * (1.0 + n));
    }

    #[test]
    fn beamsplitter_preserves_inner_products(u in ket(4), v in ket(4), pair in 0usize..6) {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let (i, j) = pairs[pair];
        let modes = (ModeIndex::ALL[i], ModeIndex::ALL[j]);
        let before = inner_product(&u, &v);
        let after = inner_product(
            &beamsplitter_5050(&u, modes).unwrap(),
            &beamsplitter_5050(&v, modes).unwrap(),
        );
        prop_assert!((before - after).norm() < 1e-12 * (1.0 + before.norm()));
    }

    #[test]
    fn fidelity_is_scale_invariant_and_bounded(
        seed in any::<u64>(),
        c in 0.01..100.0f64,
        d in 0.01..100.0f64,
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rho = random_mixture(&mut rng, 3, 3, 1.5)
            .partial_trace(&[ModeIndex::B_PSI, ModeIndex::A_PSI_BAR, ModeIndex::B_PSI_BAR]);
        let t = random_ket(&mut rng, 3, 1.5, &[ModeIndex::A_PSI]);
        let f = fidelity(&rho, &t).unwrap();
        let g = fidelity(&rho.scaled(Complex64::new(c, 0.0)), &t.scaled(Complex64::new(d, 0.0))).unwrap();
        prop_assert!((f - g).abs() < 1e-12);
        prop_assert!(f <= 1.0 + 1e-10);
        prop_assert!(f >= -1e-10);
    }

    #[test]
    fn bred_state_is_physical(alpha in 0.01..8.0f64, eta in 0.01..=1.0f64) {
        let r = breed(alpha, eta).unwrap();
        prop_assert!(r.effective_state.is_hermitian(1e-10));
        prop_assert!(r.effective_state.trace().re > 0.0);
        prop_assert!(r.success_probability >= -1e-12 && r.success_probability <= 1.0 + 1e-12);
    }

    #[test]
    fn unmatched_bred_state_is_physical(alpha in 0.01..8.0f64, eta in 0.0..=1.0f64) {
        let config = BreedConfig { matched: false, swap_inputs: false };
        let r = breed_with(alpha, eta, config).unwrap();
        prop_assert!(r.effective_state.is_hermitian(1e-10));
        prop_assert!(r.effective_state.trace().re > 0.0);
        prop_assert!(r.success_probability >= -1e-12 && r.success_probability <= 1.0 + 1e-12);
    }

    #[test]
    fn ideal_breeding_is_pure(alpha in 0.05..6.0f64) {
        let rho = breed(alpha, 1.0).unwrap().effective_state;
        let tr = rho.trace().re;
        let purity = rho.trace_of_square().re / (tr * tr);
        prop_assert!((purity - 1.0).abs() < 1e-10);
    }

    #[test]
    fn exact_loss_fidelity_tracks_closed_form(alpha in 0.05..5.0f64, eta in 0.0..0.99f64, odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let exact = loss_fidelity_exact(CatSpec::new(alpha, parity).unwrap(), eta).unwrap();
        let paper = loss_fidelity_paper(alpha, eta).unwrap();
        let s = (-2.0 * (1.0 - eta) * alpha * alpha).exp();
        prop_assert!((exact - paper).abs() <= 3.0 * s + 1e-12);
    }
}

#[test]
fn simplify_preserves_norm_on_random_ten_term_inputs() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..500 {
        // Draw labels from a small pool so that merges actually happen.
        let pool: Vec<CoherentLabel> = (0..4)
            .map(|_| common::random_label(&mut rng, 2.0, &ModeIndex::ALL))
            .collect();
        let u = KetSuperposition::from_terms((0..10).map(|_| {
            (
                common::random_complex(&mut rng, 1.0),
                pool[rng.gen_range(0..pool.len())],
            )
        }));
        let s = u.simplify();
        assert!(s.len() <= pool.len());
        let (a, b) = (u.norm_sqr(), s.norm_sqr());
        assert!((a - b).abs() < 1e-12 * (1.0 + a), "{a} vs {b}");
        for (i, x) in s.terms().iter().enumerate() {
            for y in &s.terms()[i + 1..] {
                assert!(!x.label.is_mergeable(&y.label));
            }
        }
    }
}

#[test]
fn breeding_fidelity_falls_with_alpha() {
    let config = BreedConfig::default();
    for eta in [0.9, 0.95, 0.99] {
        let values: Vec<f64> = (1..=12)
            .map(|i| catbreed::breeding_fidelity(0.5 * i as f64, eta, config).unwrap().fidelity)
            .collect();
        for w in values.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "eta={eta}: {values:?}");
        }
    }
}

#[test]
fn success_probability_does_not_grow_with_alpha_at_perfect_overlap() {
    let p: Vec<f64> = (1..=8)
        .map(|i| breed(0.5 * i as f64, 1.0).unwrap().success_probability)
        .collect();
    for w in p.windows(2) {
        assert!(w[1] <= w[0] + 1e-12);
    }
}

#[test]
fn even_cat_target_for_breeding_is_poor() {
    // Bred states are odd; an even target of the same size overlaps weakly.
    let rho = breed(1.5, 1.0).unwrap().effective_state;
    let even = make_cat(CatSpec::even(1.5 * 2f64.sqrt()).unwrap(), ModeIndex::A_PSI);
    assert!(fidelity(&rho, &even).unwrap() < 1e-12);
}
