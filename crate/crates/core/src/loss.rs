//! Photon loss on a prepared cat: a beamsplitter of reflectivity `eta` into
//! an environment mode that is then traced out.
//!
//! The surviving state is
//!
//! ```text
//! |a><a| + |-a><-a| +/- gamma (|a><-a| + |-a><a|),   a = sqrt(1 - eta) alpha
//! ```
//!
//! with `gamma = exp(-2 eta alpha^2)` the overlap of the two environment
//! states. The cross-term sign follows the input parity.

use num_complex::Complex64;

use crate::breeding::{make_cat, CatSpec, Parity};
use crate::coherent::{DyadMixture, ModeIndex};
use crate::error::{check_unit_interval, degenerate, domain, Result};
use crate::metrics::{best_cat_fidelity_in, fidelity, BestCat, MIN_TARGET_MAGNITUDE};

/// Mode that stands in for the loss environment before it is traced out.
const ENVIRONMENT: ModeIndex = ModeIndex::B_PSI;

#[derive(Debug, Clone, PartialEq)]
pub struct LossResult {
    /// Single-mode state on `(A,psi)`.
    pub state: DyadMixture,
    /// Coherence factor `exp(-2 eta alpha^2)`.
    pub gamma: f64,
    /// `sqrt(1 - eta) alpha`.
    pub surviving_magnitude: f64,
    pub loss_rate: f64,
}

pub fn apply_loss(cat: CatSpec, eta: f64) -> Result<LossResult> {
    check_unit_interval("loss rate", eta)?;
    let alpha = cat.magnitude();
    let input = make_cat(cat, ModeIndex::A_PSI);
    if input.is_empty() {
        return Err(degenerate("odd cat of zero magnitude is the zero vector"));
    }
    let (t, r) = ((1.0 - eta).sqrt(), eta.sqrt());
    let coupled = input.map_labels(|l| {
        let a = l.get(ModeIndex::A_PSI);
        l.with(ModeIndex::A_PSI, a * t).with(ENVIRONMENT, a * r)
    });
    let state = DyadMixture::from_pure(&coupled)
        .partial_trace(&[ENVIRONMENT])
        .simplify();
    Ok(LossResult {
        state,
        gamma: (-2.0 * eta * alpha * alpha).exp(),
        surviving_magnitude: t * alpha,
        loss_rate: eta,
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("alpha must be finite and non-negative, got {alpha}")))
    }
}

/// `(1 + exp(-2 alpha^2 eta)) / 2`, the large-magnitude fidelity of a lossy
/// cat against the cat of magnitude `sqrt(1 - eta) alpha`.
pub fn loss_fidelity_paper(alpha: f64, eta: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_unit_interval("loss rate", eta)?;
    Ok(0.5 * (1.0 + (-2.0 * alpha * alpha * eta).exp()))
}

/// Exact normalized fidelity of the lossy state against the same-parity cat
/// of magnitude `sqrt(1 - eta) alpha`.
pub fn loss_fidelity_exact(cat: CatSpec, eta: f64) -> Result<f64> {
    let lossy = apply_loss(cat, eta)?;
    let target = make_cat(
        CatSpec::new(lossy.surviving_magnitude, cat.parity())?,
        ModeIndex::A_PSI,
    );
    fidelity(&lossy.state, &target)
}

/// Numerically re-optimized target magnitude for the lossy state.
pub fn loss_best_target(cat: CatSpec, eta: f64) -> Result<BestCat> {
    let lossy = apply_loss(cat, eta)?;
    let hi = (2.0 * cat.magnitude()).max(1.0);
    best_cat_fidelity_in(&lossy.state, cat.parity(), MIN_TARGET_MAGNITUDE, hi)
}

/// Magnitude at which [`loss_fidelity_paper`] falls to `target_fidelity`:
/// `sqrt(-ln(2F - 1) / (2 eta))`.
pub fn max_alpha_for_fidelity(eta: f64, target_fidelity: f64) -> Result<f64> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(domain(format!("loss rate must lie in (0, 1], got {eta}")));
    }
    if !(target_fidelity > 0.5 && target_fidelity < 1.0) {
        return Err(domain(format!(
            "target fidelity must lie in (1/2, 1), got {target_fidelity}"
        )));
    }
    Ok((-(2.0 * target_fidelity - 1.0).ln() / (2.0 * eta)).sqrt())
}

/// Cross-term weight of [`LossResult::state`] relative to the diagonal
/// weight, as implied by the input parity.
pub fn signed_coherence(parity: Parity, gamma: f64) -> Complex64 {
    Complex64::new(parity.sign() * gamma, 0.0)
}
