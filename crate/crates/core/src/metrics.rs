//! Fidelity of a mixed state against a pure cat target, the best-cat
//! magnitude search, and threshold extraction along `alpha`.

use crate::breeding::{breed_with, make_cat, BreedConfig, CatSpec, Parity};
use crate::coherent::{DyadMixture, KetSuperposition, ModeIndex};
use crate::error::{degenerate, domain, Error, Result};

/// `<t|rho|t> / (Tr(rho) <t|t>)`.
pub fn fidelity(rho: &DyadMixture, target: &KetSuperposition) -> Result<f64> {
    let trace = rho.trace().re;
    if !(trace > 0.0) {
        return Err(degenerate(format!("state trace must be positive, got {trace}")));
    }
    let norm = target.norm_sqr();
    if !(norm > 0.0) {
        return Err(degenerate("target has zero norm"));
    }
    Ok(rho.expectation(target).re / (trace * norm))
}

/// Fidelity against the cat of magnitude `m` and `parity` in `(A,psi)`.
pub fn cat_fidelity(rho: &DyadMixture, magnitude: f64, parity: Parity) -> Result<f64> {
    let target = make_cat(CatSpec::new(magnitude, parity)?, ModeIndex::A_PSI);
    fidelity(rho, &target)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestCat {
    pub magnitude: f64,
    pub fidelity: f64,
    /// Set when a bracket endpoint scored at least as well as the interior
    /// optimum, i.e. the fidelity curve did not look unimodal.
    pub boundary_warning: bool,
}

/// Lower end of the magnitude bracket; odd cats vanish at zero.
pub const MIN_TARGET_MAGNITUDE: f64 = 1e-3;

/// Magnitude tolerance of the golden-section refinement.
pub const MAGNITUDE_TOLERANCE: f64 = 1e-6;

const COARSE_POINTS: usize = 64;

/// Finds the cat magnitude of the given parity that maximizes the fidelity
/// with `rho`, searching `[MIN_TARGET_MAGNITUDE, 2 max|amplitude|]`.
pub fn best_cat_fidelity(rho: &DyadMixture, parity: Parity) -> Result<BestCat> {
    let max_amplitude = rho
        .terms()
        .iter()
        .flat_map(|d| [d.ket.get(ModeIndex::A_PSI), d.bra.get(ModeIndex::A_PSI)])
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    let hi = (2.0 * max_amplitude).max(1.0);
    best_cat_fidelity_in(rho, parity, MIN_TARGET_MAGNITUDE, hi)
}

pub fn best_cat_fidelity_in(rho: &DyadMixture, parity: Parity, lo: f64, hi: f64) -> Result<BestCat> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(domain(format!("invalid magnitude bracket [{lo}, {hi}]")));
    }
    // Validate once so the objective below can stay infallible.
    let trace = rho.trace().re;
    if !(trace > 0.0) {
        return Err(degenerate(format!("state trace must be positive, got {trace}")));
    }
    let objective = |m: f64| cat_fidelity(rho, m, parity).unwrap_or(f64::NEG_INFINITY);

    // Coarse scan picks the basin, golden section refines inside it.
    let step = (hi - lo) / (COARSE_POINTS - 1) as f64;
    let grid: Vec<(f64, f64)> = (0..COARSE_POINTS)
        .map(|i| {
            let m = lo + step * i as f64;
            (m, objective(m))
        })
        .collect();
    let best = grid
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let a = grid[best.saturating_sub(1)].0;
    let b = grid[(best + 1).min(COARSE_POINTS - 1)].0;
    let (magnitude, value) = golden_section_max(objective, a, b, MAGNITUDE_TOLERANCE);

    let (f_lo, f_hi) = (grid[0].1, grid[COARSE_POINTS - 1].1);
    let boundary_warning = f_lo >= value || f_hi >= value;
    Ok(BestCat {
        magnitude,
        fidelity: value,
        boundary_warning,
    })
}

/// Golden-section search for a maximum of `f` on `[a, b]`; stops when the
/// bracket is narrower than `tol`. Returns the best point seen and its value.
pub fn golden_section_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    let f_mid = f(mid);
    [(x1, f1), (x2, f2), (mid, f_mid)]
        .into_iter()
        .max_by(|p, q| p.1.total_cmp(&q.1))
        .unwrap()
}

/// Search range for [`threshold_alpha`].
pub const THRESHOLD_RANGE: (f64, f64) = (0.1, 10.0);

/// Bisection tolerance on `alpha` for [`threshold_alpha`].
pub const THRESHOLD_TOLERANCE: f64 = 1e-3;

/// Fidelity of the bred state against its best odd cat.
pub fn breeding_fidelity(alpha: f64, eta: f64, config: BreedConfig) -> Result<BestCat> {
    let bred = breed_with(alpha, eta, config)?;
    best_cat_fidelity(&bred.effective_state, Parity::Odd)
}

/// Largest input magnitude whose bred state still reaches `target_fidelity`
/// against the best odd cat at mode overlap `eta`.
pub fn threshold_alpha(eta: f64, target_fidelity: f64) -> Result<f64> {
    threshold_alpha_with(eta, target_fidelity, BreedConfig::default())
}

pub fn threshold_alpha_with(eta: f64, target_fidelity: f64, config: BreedConfig) -> Result<f64> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(domain(format!("mode overlap must lie in (0, 1], got {eta}")));
    }
    if !(target_fidelity > 0.0 && target_fidelity < 1.0) {
        return Err(domain(format!(
            "target fidelity must lie in (0, 1), got {target_fidelity}"
        )));
    }
    let excess = |alpha: f64| -> Result<f64> {
        Ok(breeding_fidelity(alpha, eta, config)?.fidelity - target_fidelity)
    };
    let (mut lo, mut hi) = THRESHOLD_RANGE;
    if excess(lo)? < 0.0 || excess(hi)? >= 0.0 {
        return Err(Error::NotFound(format!(
            "fidelity does not cross {target_fidelity} for alpha in [{lo}, {hi}] at eta = {eta}"
        )));
    }
    while hi - lo > THRESHOLD_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
