//! Finite superpositions and dyad mixtures of multimode coherent states.
//!
//! Every state in this crate is a weighted sum of coherent labels, and every
//! operator is a weighted sum of dyads `|k><b|` between such labels. Inner
//! products, traces and partial traces reduce to products of the closed-form
//! single-mode overlap
//!
//! ```text
//! <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
//! ```
//!
//! so all computations are exact up to floating point. States and operators
//! are carried unnormalized.

use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Two labels merge when every per-mode amplitude differs by less than this.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Terms whose weight magnitude falls below this are dropped by `simplify`.
pub const DROP_TOLERANCE: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spatial {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spectral {
    Psi,
    PsiBar,
}

/// One of the four optical modes: a spatial port crossed with a spectral
/// mode function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub spatial: Spatial,
    pub spectral: Spectral,
}

impl ModeIndex {
    pub const A_PSI: ModeIndex = ModeIndex::new(Spatial::A, Spectral::Psi);
    pub const B_PSI: ModeIndex = ModeIndex::new(Spatial::B, Spectral::Psi);
    pub const A_PSI_BAR: ModeIndex = ModeIndex::new(Spatial::A, Spectral::PsiBar);
    pub const B_PSI_BAR: ModeIndex = ModeIndex::new(Spatial::B, Spectral::PsiBar);

    /// All modes in tensor order `(A,psi), (B,psi), (A,psi_bar), (B,psi_bar)`.
    pub const ALL: [ModeIndex; 4] = [
        ModeIndex::A_PSI,
        ModeIndex::B_PSI,
        ModeIndex::A_PSI_BAR,
        ModeIndex::B_PSI_BAR,
    ];

    pub const fn new(spatial: Spatial, spectral: Spectral) -> Self {
        ModeIndex { spatial, spectral }
    }

    /// Position of this mode in [`ModeIndex::ALL`].
    pub const fn slot(self) -> usize {
        let s = match self.spatial {
            Spatial::A => 0,
            Spatial::B => 1,
        };
        match self.spectral {
            Spectral::Psi => s,
            Spectral::PsiBar => 2 + s,
        }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spectral = match self.spectral {
            Spectral::Psi => "psi",
            Spectral::PsiBar => "psi_bar",
        };
        write!(f, "{:?},{}", self.spatial, spectral)
    }
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("non-finite coherent amplitude {z}")))
    }
}

#[inline]
pub(crate) fn overlap_raw(a: Complex64, b: Complex64) -> Complex64 {
    (-0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + a.conj() * b).exp()
}

/// Single-mode coherent overlap `<a|b>`.
pub fn coherent_overlap(a: Complex64, b: Complex64) -> Result<Complex64> {
    check_finite(a)?;
    check_finite(b)?;
    Ok(overlap_raw(a, b))
}

/// Multimode coherent state label. Modes that were never set carry
/// amplitude zero, i.e. vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoherentLabel {
    amplitudes: [Complex64; 4],
}

impl CoherentLabel {
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn single(mode: ModeIndex, amplitude: Complex64) -> Self {
        Self::vacuum().with(mode, amplitude)
    }

    pub fn with(mut self, mode: ModeIndex, amplitude: Complex64) -> Self {
        self.amplitudes[mode.slot()] = amplitude;
        self
    }

    pub fn get(&self, mode: ModeIndex) -> Complex64 {
        self.amplitudes[mode.slot()]
    }

    pub fn set(&mut self, mode: ModeIndex, amplitude: Complex64) {
        self.amplitudes[mode.slot()] = amplitude;
    }

    /// Amplitudes in the order of [`ModeIndex::ALL`].
    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    /// Modes with nonzero amplitude.
    pub fn support(&self) -> impl Iterator<Item = ModeIndex> + '_ {
        ModeIndex::ALL
            .into_iter()
            .filter(move |m| self.get(*m) != ZERO)
    }

    pub fn is_mergeable(&self, other: &CoherentLabel) -> bool {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .all(|(a, b)| (a - b).norm() < MERGE_TOLERANCE)
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn overlap_raw(&self, other: &CoherentLabel) -> Complex64 {
        // A single exponential keeps tiny factors from underflowing early.
        let mut exponent = ZERO;
        for (a, b) in self.amplitudes.iter().zip(other.amplitudes.iter()) {
            exponent += -0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + a.conj() * b;
        }
        exponent.exp()
    }
}

/// Product of single-mode overlaps over all four modes.
pub fn multimode_overlap(x: &CoherentLabel, y: &CoherentLabel) -> Result<Complex64> {
    for z in x.amplitudes.iter().chain(y.amplitudes.iter()) {
        check_finite(*z)?;
    }
    Ok(x.overlap_raw(y))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KetTerm {
    pub weight: Complex64,
    pub label: CoherentLabel,
}

/// Unnormalized pure state: a finite weighted sum of coherent labels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KetSuperposition {
    terms: Vec<KetTerm>,
}

impl KetSuperposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Complex64, CoherentLabel)>) -> Self {
        KetSuperposition {
            terms: terms
                .into_iter()
                .map(|(weight, label)| KetTerm { weight, label })
                .collect(),
        }
    }

    /// A single coherent state with unit weight.
    pub fn coherent(label: CoherentLabel) -> Self {
        Self::from_terms([(Complex64::new(1.0, 0.0), label)])
    }

    pub fn push(&mut self, weight: Complex64, label: CoherentLabel) {
        self.terms.push(KetTerm { weight, label });
    }

    pub fn terms(&self) -> &[KetTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        KetSuperposition {
            terms: self
                .terms
                .iter()
                .map(|t| KetTerm {
                    weight: t.weight * factor,
                    label: t.label,
                })
                .collect(),
        }
    }

    /// Applies `f` to every label, keeping weights.
    pub fn map_labels(&self, mut f: impl FnMut(&CoherentLabel) -> CoherentLabel) -> Self {
        KetSuperposition {
            terms: self
                .terms
                .iter()
                .map(|t| KetTerm {
                    weight: t.weight,
                    label: f(&t.label),
                })
                .collect(),
        }
    }

    /// Modes carrying nonzero amplitude in at least one term.
    pub fn support(&self) -> Vec<ModeIndex> {
        ModeIndex::ALL
            .into_iter()
            .filter(|m| self.terms.iter().any(|t| t.label.get(*m) != ZERO))
            .collect()
    }

    /// Tensor product of two states living on disjoint modes.
    pub fn tensor(&self, other: &KetSuperposition) -> Result<Self> {
        let mine = self.support();
        if let Some(m) = other.support().into_iter().find(|m| mine.contains(m)) {
            return Err(domain(format!("tensor factors share mode ({m})")));
        }
        let mut out = KetSuperposition::new();
        for s in &self.terms {
            for o in &other.terms {
                let mut label = s.label;
                for m in ModeIndex::ALL {
                    let z = o.label.get(m);
                    if z != ZERO {
                        label.set(m, z);
                    }
                }
                out.push(s.weight * o.weight, label);
            }
        }
        Ok(out)
    }

    pub fn norm_sqr(&self) -> f64 {
        inner_product(self, self).re
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| {
            t.weight.re.is_finite() && t.weight.im.is_finite() && t.label.is_finite()
        })
    }

    /// Merges terms with mergeable labels and drops negligible weights.
    pub fn simplify(&self) -> Self {
        let mut merged: Vec<KetTerm> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            match merged.iter_mut().find(|m| m.label.is_mergeable(&t.label)) {
                Some(m) => m.weight += t.weight,
                None => merged.push(*t),
            }
        }
        merged.retain(|t| t.weight.norm() >= DROP_TOLERANCE);
        KetSuperposition { terms: merged }
    }
}

/// `<u|v>`, antilinear in the first argument.
pub fn inner_product(u: &KetSuperposition, v: &KetSuperposition) -> Complex64 {
    let mut acc = ZERO;
    for a in &u.terms {
        for b in &v.terms {
            acc += a.weight.conj() * b.weight * a.label.overlap_raw(&b.label);
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dyad {
    pub weight: Complex64,
    pub ket: CoherentLabel,
    pub bra: CoherentLabel,
}

/// Unnormalized operator: a finite weighted sum of dyads `|ket><bra|`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DyadMixture {
    terms: Vec<Dyad>,
}

impl DyadMixture {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Complex64, CoherentLabel, CoherentLabel)>,
    ) -> Self {
        DyadMixture {
            terms: terms
                .into_iter()
                .map(|(weight, ket, bra)| Dyad { weight, ket, bra })
                .collect(),
        }
    }

    /// `|u><u|`.
    pub fn from_pure(u: &KetSuperposition) -> Self {
        let mut terms = Vec::with_capacity(u.len() * u.len());
        for k in u.terms() {
            for b in u.terms() {
                terms.push(Dyad {
                    weight: k.weight * b.weight.conj(),
                    ket: k.label,
                    bra: b.label,
                });
            }
        }
        DyadMixture { terms }
    }

    pub fn push(&mut self, weight: Complex64, ket: CoherentLabel, bra: CoherentLabel) {
        self.terms.push(Dyad { weight, ket, bra });
    }

    pub fn terms(&self) -> &[Dyad] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        DyadMixture {
            terms: self
                .terms
                .iter()
                .map(|d| Dyad {
                    weight: d.weight * factor,
                    ..*d
                })
                .collect(),
        }
    }

    /// Sum of two operators.
    pub fn plus(&self, other: &DyadMixture) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        DyadMixture { terms }
    }

    pub fn trace(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|d| d.weight * d.bra.overlap_raw(&d.ket))
            .sum()
    }

    /// `Tr(rho^2)`.
    pub fn trace_of_square(&self) -> Complex64 {
        let mut acc = ZERO;
        for x in &self.terms {
            for y in &self.terms {
                acc += x.weight * y.weight * x.bra.overlap_raw(&y.ket) * y.bra.overlap_raw(&x.ket);
            }
        }
        acc
    }

    /// `<t|rho|t>`.
    pub fn expectation(&self, t: &KetSuperposition) -> Complex64 {
        let mut acc = ZERO;
        for d in &self.terms {
            let left: Complex64 = t
                .terms()
                .iter()
                .map(|s| s.weight.conj() * s.label.overlap_raw(&d.ket))
                .sum();
            let right: Complex64 = t
                .terms()
                .iter()
                .map(|s| s.weight * d.bra.overlap_raw(&s.label))
                .sum();
            acc += d.weight * left * right;
        }
        acc
    }

    /// Traces out `traced`. Each dyad picks up `prod <b_m|k_m>` over the
    /// traced modes, which are then reset to vacuum in both labels.
    pub fn partial_trace(&self, traced: &[ModeIndex]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|d| {
                let mut ket = d.ket;
                let mut bra = d.bra;
                let mut exponent = ZERO;
                for &m in traced {
                    let (k, b) = (d.ket.get(m), d.bra.get(m));
                    exponent += -0.5 * k.norm_sqr() - 0.5 * b.norm_sqr() + b.conj() * k;
                    ket.set(m, ZERO);
                    bra.set(m, ZERO);
                }
                Dyad {
                    weight: d.weight * exponent.exp(),
                    ket,
                    bra,
                }
            })
            .collect();
        DyadMixture { terms }
    }

    /// Merges dyads whose ket and bra labels are both mergeable, then drops
    /// negligible weights.
    pub fn simplify(&self) -> Self {
        let mut merged: Vec<Dyad> = Vec::with_capacity(self.terms.len());
        for d in &self.terms {
            match merged
                .iter_mut()
                .find(|m| m.ket.is_mergeable(&d.ket) && m.bra.is_mergeable(&d.bra))
            {
                Some(m) => m.weight += d.weight,
                None => merged.push(*d),
            }
        }
        merged.retain(|d| d.weight.norm() >= DROP_TOLERANCE);
        DyadMixture { terms: merged }
    }

    /// True when every dyad `(w, k, b)` is matched by `(conj w, b, k)` after
    /// simplification. `tol` is relative to the largest weight.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let s = self.simplify();
        let scale = s
            .terms
            .iter()
            .map(|d| d.weight.norm())
            .fold(0.0_f64, f64::max)
            .max(f64::MIN_POSITIVE);
        s.terms.iter().all(|d| {
            let partner: Complex64 = s
                .terms
                .iter()
                .filter(|e| e.ket.is_mergeable(&d.bra) && e.bra.is_mergeable(&d.ket))
                .map(|e| e.weight)
                .sum();
            (partner - d.weight.conj()).norm() <= tol * scale
        })
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|d| {
            d.weight.re.is_finite() && d.weight.im.is_finite() && d.ket.is_finite() && d.bra.is_finite()
        })
    }
}
