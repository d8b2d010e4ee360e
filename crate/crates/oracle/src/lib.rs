//! Brute-force photon-number-basis reference for the coherent-state
//! algebra in `catbreed`.
//!
//! Nothing here uses closed-form coherent overlaps or coherent-state
//! beamsplitter identities. States are dense tensors over truncated number
//! bases, beamsplitters are block unitaries built from transformed creation
//! operators, and every projection or trace is plain linear algebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest tail mass tolerated when encoding a coherent state.
pub const TAIL_MASS_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("cutoff {cutoff} too small for amplitude {amplitude}; need at least {required}")]
    InsufficientCutoff {
        amplitude: f64,
        cutoff: usize,
        required: usize,
    },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Cutoff `ceil(mu + 8 sqrt(mu) + 12)` for mean photon number `mu = |a|^2`.
pub fn cutoff_for_amplitude(amplitude: f64) -> usize {
    let mu = amplitude * amplitude;
    (mu + 8.0 * mu.sqrt() + 12.0).ceil() as usize
}

/// Dense state over a tensor product of truncated number bases. Mode 0 is
/// the slowest-varying index.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl FockVector {
    pub fn from_amplitudes(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        let len: usize = dims.iter().product();
        if len != amps.len() {
            return Err(OracleError::Shape(format!(
                "dims {dims:?} need {len} amplitudes, got {}",
                amps.len()
            )));
        }
        Ok(FockVector { dims, amps })
    }

    pub fn vacuum(dims: Vec<usize>) -> Self {
        let len = dims.iter().product();
        let mut amps = vec![ZERO; len];
        amps[0] = ONE;
        FockVector { dims, amps }
    }

    /// Single-mode number state `|n>` truncated at `cutoff`.
    pub fn number(n: usize, cutoff: usize) -> Self {
        let mut amps = vec![ZERO; cutoff + 1];
        amps[n] = ONE;
        FockVector {
            dims: vec![cutoff + 1],
            amps,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn tensor(&self, other: &FockVector) -> FockVector {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        FockVector { dims, amps }
    }

    pub fn scaled(&self, factor: Complex64) -> FockVector {
        FockVector {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn plus(&self, other: &FockVector) -> Result<FockVector> {
        if self.dims != other.dims {
            return Err(OracleError::Shape(format!(
                "cannot add {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        Ok(FockVector {
            dims: self.dims.clone(),
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(OracleError::Shape(format!(
                "cannot contract {:?} with {:?}",
                self.dims, other.dims
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Flat offsets of every index with the given modes fixed at zero.
    fn base_offsets(&self, fixed: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut bases = vec![0usize];
        for (k, &d) in self.dims.iter().enumerate() {
            if fixed.contains(&k) {
                continue;
            }
            let stride = strides[k];
            bases = bases
                .iter()
                .flat_map(|b| (0..d).map(move |i| b + i * stride))
                .collect();
        }
        bases
    }

    /// Applies a two-mode beamsplitter to modes `(first, second)`.
    pub fn apply_beamsplitter(
        &self,
        bs: &Beamsplitter,
        first: usize,
        second: usize,
    ) -> Result<FockVector> {
        if first == second || first >= self.dims.len() || second >= self.dims.len() {
            return Err(OracleError::Shape(format!(
                "invalid beamsplitter modes ({first}, {second}) for {} modes",
                self.dims.len()
            )));
        }
        let (d1, d2) = (self.dims[first], self.dims[second]);
        if bs.max_total() < d1 + d2 - 2 {
            return Err(OracleError::Shape(format!(
                "beamsplitter table covers {} photons, need {}",
                bs.max_total(),
                d1 + d2 - 2
            )));
        }
        let strides = self.strides();
        let (s1, s2) = (strides[first], strides[second]);
        let mut out = vec![ZERO; self.amps.len()];
        let mut slice = vec![ZERO; d1 * d2];
        for base in self.base_offsets(&[first, second]) {
            for p in 0..d1 {
                for q in 0..d2 {
                    slice[p * d2 + q] = self.amps[base + p * s1 + q * s2];
                }
            }
            for total in 0..=(d1 + d2 - 2) {
                let block = &bs.blocks[total];
                let n_lo = total.saturating_sub(d2 - 1);
                let n_hi = total.min(d1 - 1);
                for p in n_lo..=n_hi {
                    let mut acc = ZERO;
                    for n in n_lo..=n_hi {
                        acc += slice[n * d2 + (total - n)] * block[p * (total + 1) + n];
                    }
                    out[base + p * s1 + (total - p) * s2] = acc;
                }
            }
        }
        Ok(FockVector {
            dims: self.dims.clone(),
            amps: out,
        })
    }

    /// Projects `modes` onto vacuum and drops them. Returns the conditional
    /// (unnormalized) state and the projection probability.
    pub fn vacuum_project(&self, modes: &[usize]) -> Result<(FockVector, f64)> {
        let before = self.norm_sqr();
        if !(before > 0.0) {
            return Err(OracleError::Degenerate("zero-norm state".into()));
        }
        if modes.iter().any(|&m| m >= self.dims.len()) {
            return Err(OracleError::Shape(format!("modes {modes:?} out of range")));
        }
        let amps: Vec<Complex64> = self
            .base_offsets(modes)
            .into_iter()
            .map(|i| self.amps[i])
            .collect();
        let dims = self
            .dims
            .iter()
            .enumerate()
            .filter(|(k, _)| !modes.contains(k))
            .map(|(_, d)| *d)
            .collect();
        let out = FockVector { dims, amps };
        let p = out.norm_sqr() / before;
        Ok((out, p))
    }

    pub fn density(&self) -> FockOperator {
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        FockOperator {
            dims: self.dims.clone(),
            matrix: &v * v.adjoint(),
        }
    }

    /// Reduced density operator on the modes not listed in `traced`.
    pub fn reduced_density(&self, traced: &[usize]) -> FockOperator {
        self.density().partial_trace(traced)
    }
}

/// Unnormalized coherent state `|a>` truncated at `cutoff`.
pub fn coherent_to_fock(a: Complex64, cutoff: usize) -> Result<FockVector> {
    let mut amps = Vec::with_capacity(cutoff + 1);
    let mut c = Complex64::new((-0.5 * a.norm_sqr()).exp(), 0.0);
    for n in 0..=cutoff {
        if n > 0 {
            c = c * a / (n as f64).sqrt();
        }
        amps.push(c);
    }
    let kept: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if (1.0 - kept).abs() > TAIL_MASS_LIMIT {
        return Err(OracleError::InsufficientCutoff {
            amplitude: a.norm(),
            cutoff,
            required: cutoff_for_amplitude(a.norm()),
        });
    }
    Ok(FockVector {
        dims: vec![cutoff + 1],
        amps,
    })
}

/// `|a> + sign |-a>` in the number basis.
pub fn cat_to_fock(magnitude: f64, sign: f64, cutoff: usize) -> Result<FockVector> {
    let a = Complex64::new(magnitude, 0.0);
    coherent_to_fock(a, cutoff)?.plus(&coherent_to_fock(-a, cutoff)?.scaled(Complex64::new(sign, 0.0)))
}

/// Two-mode beamsplitter acting on amplitudes as
/// `(a, b) -> (t a + r b, r a - t b)` with `t^2 + r^2 = 1`.
///
/// Stored per total photon number `N` as an `(N+1) x (N+1)` real block with
/// entry `[p][n] = <p, N-p| U |n, N-n>`.
#[derive(Debug, Clone)]
pub struct Beamsplitter {
    blocks: Vec<Vec<f64>>,
}

impl Beamsplitter {
    /// Builds blocks for total photon numbers `0..=max_total`.
    ///
    /// Uses `(n + m)|n,m> = sqrt(n) a1^+ |n-1,m> + sqrt(m) a2^+ |n,m-1>` with
    /// `a1^+ -> t a1^+ + r a2^+` and `a2^+ -> r a1^+ - t a2^+`, so each column
    /// of block `N` is a bounded combination of two columns of block `N - 1`.
    /// This is the binomial expansion of the transformed creation operators
    /// evaluated one factor at a time, and keeps rounding from growing with `N`.
    pub fn new(transmissivity: f64, max_total: usize) -> Self {
        let t = transmissivity;
        let r = (1.0 - t * t).max(0.0).sqrt();
        let mut blocks: Vec<Vec<f64>> = vec![vec![1.0]];
        for total in 1..=max_total {
            let prev = &blocks[total - 1];
            let dim = total + 1;
            let sq = |k: usize| (k as f64).sqrt();
            // Previous block entry <p, N-1-p| U |col, N-1-col>, zero outside.
            let at = |p: usize, col: usize| prev[p * total + col];
            let mut block = vec![0.0; dim * dim];
            for n in 0..=total {
                let m = total - n;
                for p in 0..=total {
                    let mut v = 0.0;
                    if n > 0 {
                        let src = n - 1;
                        if p > 0 {
                            v += sq(n) * t * sq(p) * at(p - 1, src);
                        }
                        if p < total {
                            v += sq(n) * r * sq(total - p) * at(p, src);
                        }
                    }
                    if m > 0 {
                        let src = n;
                        if p > 0 {
                            v += sq(m) * r * sq(p) * at(p - 1, src);
                        }
                        if p < total {
                            v -= sq(m) * t * sq(total - p) * at(p, src);
                        }
                    }
                    block[p * dim + n] = v / total as f64;
                }
            }
            blocks.push(block);
        }
        Beamsplitter { blocks }
    }

    pub fn balanced(max_total: usize) -> Self {
        Self::new(std::f64::consts::FRAC_1_SQRT_2, max_total)
    }

    pub fn max_total(&self) -> usize {
        self.blocks.len() - 1
    }

    /// `<p, N-p| U |n, N-n>`.
    pub fn element(&self, total: usize, p: usize, n: usize) -> f64 {
        self.blocks[total][p * (total + 1) + n]
    }

    /// Largest entry of `U^T U - I` within the block of `total` photons.
    pub fn unitarity_defect(&self, total: usize) -> f64 {
        let dim = total + 1;
        let b = &self.blocks[total];
        let mut worst = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                let dot: f64 = (0..dim).map(|k| b[k * dim + i] * b[k * dim + j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Dense operator over a tensor product of truncated number bases.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    dims: Vec<usize>,
    matrix: DMatrix<Complex64>,
}

impl FockOperator {
    pub fn from_matrix(dims: Vec<usize>, matrix: DMatrix<Complex64>) -> Result<Self> {
        let len: usize = dims.iter().product();
        if matrix.nrows() != len || matrix.ncols() != len {
            return Err(OracleError::Shape(format!(
                "dims {dims:?} need a {len}x{len} matrix"
            )));
        }
        Ok(FockOperator { dims, matrix })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).camax()
    }

    /// Traces out the listed modes.
    pub fn partial_trace(&self, traced: &[usize]) -> FockOperator {
        let n = self.dims.len();
        let keep: Vec<usize> = (0..n).filter(|k| !traced.contains(k)).collect();
        let keep_dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
        let trace_dims: Vec<usize> = traced.iter().map(|&k| self.dims[k]).collect();
        let keep_len: usize = keep_dims.iter().product();
        let trace_len: usize = trace_dims.iter().product();
        let mut strides = vec![1; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        let offset = |idx: usize, modes: &[usize], dims: &[usize]| -> usize {
            let mut rem = idx;
            let mut off = 0;
            for (pos, &m) in modes.iter().enumerate().rev() {
                off += (rem % dims[pos]) * strides[m];
                rem /= dims[pos];
            }
            off
        };
        let keep_off: Vec<usize> = (0..keep_len).map(|i| offset(i, &keep, &keep_dims)).collect();
        let trace_off: Vec<usize> = (0..trace_len).map(|i| offset(i, traced, &trace_dims)).collect();
        let matrix = DMatrix::from_fn(keep_len, keep_len, |i, j| {
            trace_off
                .iter()
                .map(|t| self.matrix[(keep_off[i] + t, keep_off[j] + t)])
                .sum()
        });
        FockOperator {
            dims: keep_dims,
            matrix,
        }
    }

    /// `<t|rho|t> / (Tr(rho) <t|t>)`.
    pub fn fidelity(&self, target: &FockVector) -> Result<f64> {
        if target.dims != self.dims {
            return Err(OracleError::Shape(format!(
                "target dims {:?} differ from operator dims {:?}",
                target.dims, self.dims
            )));
        }
        let tr = self.trace().re;
        let norm = target.norm_sqr();
        if !(tr > 0.0) || !(norm > 0.0) {
            return Err(OracleError::Degenerate("zero trace or zero-norm target".into()));
        }
        let v = nalgebra::DVector::from_column_slice(&target.amps);
        let value = (v.adjoint() * &self.matrix * &v)[(0, 0)];
        Ok(value.re / (tr * norm))
    }

    /// Trace distance between `self / Tr(self)` and `other / Tr(other)`.
    pub fn trace_distance(&self, other: &FockOperator) -> Result<f64> {
        if self.dims != other.dims {
            return Err(OracleError::Shape(format!(
                "cannot compare {:?} with {:?}",
                self.dims, other.dims
            )));
        }
        let (ta, tb) = (self.trace().re, other.trace().re);
        if !(ta > 0.0) || !(tb > 0.0) {
            return Err(OracleError::Degenerate("zero-trace operator".into()));
        }
        let diff = &self.matrix / Complex64::new(ta, 0.0) - &other.matrix / Complex64::new(tb, 0.0);
        let hermitian = (&diff + diff.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = hermitian.symmetric_eigenvalues();
        Ok(0.5 * eig.iter().map(|l| l.abs()).sum::<f64>())
    }
}

/// Builds `sum_i w_i |k_i><b_i|` on one mode from coherent amplitudes.
pub fn coherent_dyads_to_fock(
    dyads: &[(Complex64, Complex64, Complex64)],
    cutoff: usize,
) -> Result<FockOperator> {
    let dim = cutoff + 1;
    let mut matrix = DMatrix::from_element(dim, dim, ZERO);
    for &(w, k, b) in dyads {
        let kv = coherent_to_fock(k, cutoff)?;
        let bv = coherent_to_fock(b, cutoff)?;
        for i in 0..dim {
            for j in 0..dim {
                matrix[(i, j)] += w * kv.amps[i] * bv.amps[j].conj();
            }
        }
    }
    Ok(FockOperator {
        dims: vec![dim],
        matrix,
    })
}

/// Output of [`breed_pipeline`].
#[derive(Debug, Clone)]
pub struct OracleBreed {
    /// Heralded state on `(A,psi)`.
    pub effective_state: FockOperator,
    pub success_probability: f64,
    pub cutoff_psi: usize,
    pub cutoff_psi_bar: usize,
}

// Tensor positions of the four modes.
const A_PSI: usize = 0;
const B_PSI: usize = 1;
const A_PSI_BAR: usize = 2;
const B_PSI_BAR: usize = 3;

/// Runs the breeding protocol in the number basis: an odd cat of magnitude
/// `alpha_a` on port A, an even cat of magnitude `alpha_b` on port B whose
/// spectral mode overlaps the analyser mode by `eta`, a balanced
/// beamsplitter per spectral mode, vacuum projection of both B modes and a
/// trace over the unmatched A mode.
pub fn breed_pipeline(alpha_a: f64, alpha_b: f64, eta: f64) -> Result<OracleBreed> {
    let largest = alpha_a.max(alpha_b);
    let cutoff_psi = cutoff_for_amplitude(2f64.sqrt() * largest);
    let cutoff_psi_bar = cutoff_for_amplitude((1.0 - eta).max(0.0).sqrt() * alpha_b);
    let (dp, db) = (cutoff_psi + 1, cutoff_psi_bar + 1);

    let odd = cat_to_fock(alpha_a, -1.0, cutoff_psi)?;
    let even = cat_to_fock(alpha_b, 1.0, cutoff_psi)?;
    let input = odd
        .tensor(&even)
        .tensor(&FockVector::vacuum(vec![db, db]));

    let split = Beamsplitter::new(eta.sqrt(), dp + db - 2);
    let state = input.apply_beamsplitter(&split, B_PSI, B_PSI_BAR)?;
    let balanced = Beamsplitter::balanced(2 * dp.max(db) - 2);
    let state = state.apply_beamsplitter(&balanced, A_PSI, B_PSI)?;
    let state = state.apply_beamsplitter(&balanced, A_PSI_BAR, B_PSI_BAR)?;

    let (heralded, success_probability) = state.vacuum_project(&[B_PSI, B_PSI_BAR])?;
    // Remaining modes: (A,psi) then (A,psi_bar).
    let effective_state = heralded.reduced_density(&[1]);
    Ok(OracleBreed {
        effective_state,
        success_probability,
        cutoff_psi,
        cutoff_psi_bar,
    })
}

/// Loss of fraction `eta` on the cat `|alpha> + sign |-alpha>`: a
/// beamsplitter of transmissivity `sqrt(1 - eta)` into a vacuum environment
/// that is traced out.
pub fn loss_pipeline(alpha: f64, sign: f64, eta: f64) -> Result<FockOperator> {
    let cutoff = cutoff_for_amplitude(alpha);
    let d = cutoff + 1;
    let input = cat_to_fock(alpha, sign, cutoff)?.tensor(&FockVector::vacuum(vec![d]));
    let bs = Beamsplitter::new((1.0 - eta).sqrt(), 2 * d - 2);
    let out = input.apply_beamsplitter(&bs, 0, 1)?;
    Ok(out.reduced_density(&[1]))
}
