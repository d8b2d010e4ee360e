//! Cat construction and the breeding pipeline: mode-mismatch split, 50/50
//! beamsplitter, vacuum heralding on port B and the trace over the
//! unmatched spectral mode.

use num_complex::Complex64;

use crate::coherent::{CoherentLabel, DyadMixture, KetSuperposition, ModeIndex};
use crate::error::{check_unit_interval, degenerate, domain, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Relative sign between `|a>` and `|-a>`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Recipe for `|a> + |-a>` (even) or `|a> - |-a>` (odd).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatSpec {
    magnitude: f64,
    parity: Parity,
}

impl CatSpec {
    pub fn new(magnitude: f64, parity: Parity) -> Result<Self> {
        if !magnitude.is_finite() || magnitude < 0.0 {
            return Err(domain(format!(
                "cat magnitude must be finite and non-negative, got {magnitude}"
            )));
        }
        Ok(CatSpec { magnitude, parity })
    }

    pub fn even(magnitude: f64) -> Result<Self> {
        Self::new(magnitude, Parity::Even)
    }

    pub fn odd(magnitude: f64) -> Result<Self> {
        Self::new(magnitude, Parity::Odd)
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }
}

/// Unnormalized cat state in `mode`. The two terms merge (even) or cancel
/// (odd) when the magnitude is zero.
pub fn make_cat(spec: CatSpec, mode: ModeIndex) -> KetSuperposition {
    let a = Complex64::new(spec.magnitude, 0.0);
    KetSuperposition::from_terms([
        (Complex64::new(1.0, 0.0), CoherentLabel::single(mode, a)),
        (
            Complex64::new(spec.parity.sign(), 0.0),
            CoherentLabel::single(mode, -a),
        ),
    ])
    .simplify()
}

/// Splits the spatial-B amplitude into the analyser-matched mode and its
/// orthogonal complement: `a -> (sqrt(eta) a, sqrt(1 - eta) a)`.
pub fn mismatch_split(state: &KetSuperposition, eta: f64) -> Result<KetSuperposition> {
    check_unit_interval("mode overlap", eta)?;
    if state.support().contains(&ModeIndex::B_PSI_BAR) {
        return Err(domain("mismatch split expects vacuum in (B,psi_bar)"));
    }
    let (t, r) = (eta.sqrt(), (1.0 - eta).sqrt());
    Ok(state.map_labels(|l| {
        let a = l.get(ModeIndex::B_PSI);
        l.with(ModeIndex::B_PSI, a * t)
            .with(ModeIndex::B_PSI_BAR, a * r)
    }))
}

/// Balanced beamsplitter on `(first, second)`:
/// `(a, b) -> ((a + b)/sqrt 2, (a - b)/sqrt 2)`.
pub fn beamsplitter_5050(
    state: &KetSuperposition,
    pair: (ModeIndex, ModeIndex),
) -> Result<KetSuperposition> {
    let (first, second) = pair;
    if first == second {
        return Err(domain(format!("beamsplitter needs two distinct modes, got {first} twice")));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok(state.map_labels(|l| {
        let (a, b) = (l.get(first), l.get(second));
        l.with(first, (a + b) * h).with(second, (a - b) * h)
    }))
}

/// Projects `modes` onto vacuum and removes them from every label.
///
/// Each term picks up `prod_m <0|a_m>`. The returned state is rescaled by a
/// positive constant so that its largest conditioning factor is one, which
/// keeps exponentially small heralding amplitudes from underflowing; the
/// returned probability accounts for that scale.
pub fn condition_vacuum(
    state: &KetSuperposition,
    modes: &[ModeIndex],
) -> Result<(KetSuperposition, f64)> {
    if modes.is_empty() {
        return Err(domain("vacuum conditioning needs at least one mode"));
    }
    let before = state.norm_sqr();
    if !(before > 0.0) {
        return Err(degenerate("cannot condition a zero-norm state"));
    }
    let log_factors: Vec<f64> = state
        .terms()
        .iter()
        .map(|t| modes.iter().map(|m| -0.5 * t.label.get(*m).norm_sqr()).sum())
        .collect();
    let max_log = log_factors.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut out = KetSuperposition::new();
    for (t, lf) in state.terms().iter().zip(&log_factors) {
        let mut label = t.label;
        for &m in modes {
            label.set(m, ZERO);
        }
        out.push(t.weight * (lf - max_log).exp(), label);
    }
    let out = out.simplify();
    let probability = (2.0 * max_log).exp() * out.norm_sqr() / before;
    Ok((out, probability))
}

/// Options for [`breed_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BreedConfig {
    /// Scale the B-side input so its analyser-matched component has the same
    /// magnitude as the A-side cat. When false both inputs have magnitude
    /// `alpha`.
    pub matched: bool,
    /// Put the even cat on port A and the odd cat on port B.
    pub swap_inputs: bool,
}

impl Default for BreedConfig {
    fn default() -> Self {
        BreedConfig {
            matched: true,
            swap_inputs: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BreedResult {
    /// Heralded state on `(A,psi)` after tracing out `(A,psi_bar)`.
    pub effective_state: DyadMixture,
    /// Probability of detecting no photons on port B.
    pub success_probability: f64,
    pub input_magnitude: f64,
    pub mode_overlap: f64,
}

/// Breeds two cats of matched analyser-mode magnitude `alpha` at mode
/// overlap `eta`, using [`BreedConfig::default`].
pub fn breed(alpha: f64, eta: f64) -> Result<BreedResult> {
    breed_with(alpha, eta, BreedConfig::default())
}

pub fn breed_with(alpha: f64, eta: f64, config: BreedConfig) -> Result<BreedResult> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(domain(format!("alpha must be finite and non-negative, got {alpha}")));
    }
    check_unit_interval("mode overlap", eta)?;
    let b_magnitude = if config.matched {
        if eta == 0.0 {
            return Err(domain("amplitude matching needs a nonzero mode overlap"));
        }
        alpha / eta.sqrt()
    } else {
        alpha
    };
    let (a_parity, b_parity) = if config.swap_inputs {
        (Parity::Even, Parity::Odd)
    } else {
        (Parity::Odd, Parity::Even)
    };
    let cat_a = make_cat(CatSpec::new(alpha, a_parity)?, ModeIndex::A_PSI);
    let cat_b = make_cat(CatSpec::new(b_magnitude, b_parity)?, ModeIndex::B_PSI);
    if cat_a.is_empty() || cat_b.is_empty() {
        return Err(degenerate("odd cat of zero magnitude is the zero vector"));
    }

    let input = cat_a.tensor(&mismatch_split(&cat_b, eta)?)?;
    let mixed = beamsplitter_5050(&input, (ModeIndex::A_PSI, ModeIndex::B_PSI))?;
    let mixed = beamsplitter_5050(&mixed, (ModeIndex::A_PSI_BAR, ModeIndex::B_PSI_BAR))?;
    let (heralded, success_probability) =
        condition_vacuum(&mixed, &[ModeIndex::B_PSI, ModeIndex::B_PSI_BAR])?;
    if heralded.is_empty() {
        return Err(degenerate("heralded state vanished"));
    }
    let effective_state = DyadMixture::from_pure(&heralded)
        .partial_trace(&[ModeIndex::A_PSI_BAR])
        .simplify();

    Ok(BreedResult {
        effective_state,
        success_probability,
        input_magnitude: alpha,
        mode_overlap: eta,
    })
}

/// Magnitude the bred cat would have if only the analyser-matched
/// amplitudes interfered: `sqrt(2 eta) alpha`.
pub fn naive_output_magnitude(alpha: f64, eta: f64) -> f64 {
    (2.0 * eta).sqrt() * alpha
}
