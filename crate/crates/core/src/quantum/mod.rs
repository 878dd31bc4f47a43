//! Exact finite-dimensional quantum substrate: density matrices, pure
//! states, Kraus channels, POVMs.
//!
//! Everything is dense `Complex<f64>`; dimensions stay small (≤ 6 qubits)
//! so exactness beats speed everywhere. Qubit 0 is the most significant
//! bit of a computational-basis index, and all modules inherit that
//! convention.
//!
//! Tolerances: `1e-12` for exact algebraic identities, `1e-10` for
//! accumulated-roundoff checks (channel and POVM completeness, PSD slack).

pub mod basis;

pub use basis::{epr_invariance_defect, random_orthogonal, wiesner_family, BasisFamily};

use crate::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;
pub type RMat = DMatrix<f64>;

/// Tolerance for exact algebraic identities.
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance for completeness sums and PSD slack (accumulated roundoff).
pub const TOL_SUM: f64 = 1e-10;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues (real, ascending) and eigenvectors (columns) of a Hermitian
/// matrix.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let se = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vectors = CMat::from_columns(
        &order.iter().map(|&i| se.eigenvectors.column(i).into_owned()).collect::<Vec<_>>(),
    );
    (values, vectors)
}

fn min_eigenvalue(m: &CMat) -> f64 {
    hermitian_eigen(m).0.first().copied().unwrap_or(0.0)
}

/// Kronecker product; the left factor owns the high-order index bits.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

// ---------------------------------------------------------------------------
// PureState

/// A unit-norm state vector.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: CVec,
}

impl PureState {
    pub fn new(amplitudes: CVec) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > TOL_EXACT {
            return Err(Error::Invariant(format!("state norm {norm} is not 1")));
        }
        Ok(PureState { amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut v = CVec::zeros(dim);
        v[index] = c(1.0, 0.0);
        PureState { amplitudes: v }
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(CVec::from_iterator(amplitudes.len(), amplitudes.iter().map(|&x| c(x, 0.0))))
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amplitudes
    }

    /// Rank-one density matrix `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::from_matrix_unchecked(m)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut v = CVec::zeros(self.dim() * other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                v[i * other.dim() + j] = self.amplitudes[i] * other.amplitudes[j];
            }
        }
        PureState { amplitudes: v }
    }
}

// ---------------------------------------------------------------------------
// DensityMatrix

/// A Hermitian, positive-semidefinite, unit-trace operator.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: CMat,
}

impl DensityMatrix {
    /// Validating constructor for untrusted input.
    pub fn from_matrix(mat: CMat) -> Result<Self> {
        let rho = DensityMatrix { mat };
        rho.validate()?;
        Ok(rho)
    }

    /// Constructor for outputs of operations that preserve the invariants;
    /// still checked in debug builds.
    pub(crate) fn from_matrix_unchecked(mat: CMat) -> Self {
        let rho = DensityMatrix { mat };
        debug_assert!(rho.validate().is_ok(), "density matrix invariant violated");
        rho
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix::from_matrix_unchecked(CMat::identity(dim, dim) / c(dim as f64, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Tr ρ²`; 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.mat.nrows() != self.mat.ncols() || self.mat.nrows() == 0 {
            return Err(Error::Invariant("density matrix must be square and nonempty".into()));
        }
        let herm_defect = max_abs(&(&self.mat - self.mat.adjoint()));
        if herm_defect > TOL_EXACT {
            return Err(Error::Invariant(format!("not Hermitian (defect {herm_defect:.3e})")));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TOL_EXACT {
            return Err(Error::Invariant(format!("trace {tr} is not 1")));
        }
        let min_ev = min_eigenvalue(&self.mat);
        if min_ev < -TOL_SUM {
            return Err(Error::Invariant(format!("not PSD (min eigenvalue {min_ev:.3e})")));
        }
        Ok(())
    }

    pub fn max_entry_distance(&self, other: &DensityMatrix) -> f64 {
        max_abs(&(&self.mat - &other.mat))
    }
}

/// Kronecker product of states; trace 1 is preserved.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::from_matrix_unchecked(kron(&a.mat, &b.mat))
}

/// Reduced state on the subsystems listed in `keep` (ascending order kept).
///
/// `dims` are the subsystem dimensions, most significant first; their
/// product must equal `rho.dim()`.
pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    if total != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims {dims:?} do not multiply to {}",
            rho.dim()
        )));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::InvalidArgument("keep must be ascending valid subsystem indices".into()));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let keep_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let trace_dim: usize = traced.iter().map(|&k| dims[k]).product();

    // Strides of each subsystem in the flattened index.
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let offset = |subsys: &[usize], mut flat: usize| -> usize {
        let mut off = 0;
        for &s in subsys.iter().rev() {
            off += (flat % dims[s]) * strides[s];
            flat /= dims[s];
        }
        off
    };

    let mut out = CMat::zeros(keep_dim, keep_dim);
    for i in 0..keep_dim {
        let oi = offset(keep, i);
        for j in 0..keep_dim {
            let oj = offset(keep, j);
            let mut sum = c(0.0, 0.0);
            for t in 0..trace_dim {
                let ot = offset(&traced, t);
                sum += rho.mat[(oi + ot, oj + ot)];
            }
            out[(i, j)] = sum;
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

// ---------------------------------------------------------------------------
// KrausChannel

/// A CPTP map given by Kraus operators with `Σ K†K = I`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    in_dim: usize,
    out_dim: usize,
    ops: Vec<CMat>,
}

impl KrausChannel {
    pub fn new(in_dim: usize, out_dim: usize, ops: Vec<CMat>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidArgument("a channel needs at least one Kraus operator".into()));
        }
        for k in &ops {
            if k.nrows() != out_dim || k.ncols() != in_dim {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator is {}x{}, expected {out_dim}x{in_dim}",
                    k.nrows(),
                    k.ncols()
                )));
            }
        }
        let mut sum = CMat::zeros(in_dim, in_dim);
        for k in &ops {
            sum += k.adjoint() * k;
        }
        let defect = max_abs(&(sum - CMat::identity(in_dim, in_dim)));
        if defect > TOL_SUM {
            return Err(Error::Invariant(format!("channel completeness defect {defect:.3e}")));
        }
        Ok(KrausChannel { in_dim, out_dim, ops })
    }

    pub fn identity(dim: usize) -> Self {
        KrausChannel { in_dim: dim, out_dim: dim, ops: vec![CMat::identity(dim, dim)] }
    }

    pub fn from_unitary(u: CMat) -> Result<Self> {
        let dim = u.ncols();
        Self::new(dim, u.nrows(), vec![u])
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus_ops(&self) -> &[CMat] {
        &self.ops
    }

    /// `Σ K ρ K†`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.in_dim {
            return Err(Error::DimensionMismatch(format!(
                "channel input dim {} vs state dim {}",
                self.in_dim,
                rho.dim()
            )));
        }
        let mut out = CMat::zeros(self.out_dim, self.out_dim);
        for k in &self.ops {
            out += k * &rho.mat * k.adjoint();
        }
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }

    /// Unnormalized branch vectors `K|ψ⟩`; their outer products sum to the
    /// channel output on `|ψ⟩⟨ψ|`.
    pub fn apply_to_pure(&self, psi: &PureState) -> Result<Vec<CVec>> {
        if psi.dim() != self.in_dim {
            return Err(Error::DimensionMismatch(format!(
                "channel input dim {} vs state dim {}",
                self.in_dim,
                psi.dim()
            )));
        }
        Ok(self.ops.iter().map(|k| k * psi.amplitudes()).collect())
    }
}

// ---------------------------------------------------------------------------
// Povm

/// A positive operator-valued measure; element `x` answers outcome `x`.
#[derive(Debug, Clone)]
pub struct Povm {
    dim: usize,
    elements: Vec<CMat>,
}

impl Povm {
    pub fn new(dim: usize, elements: Vec<CMat>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidArgument("a POVM needs at least one element".into()));
        }
        let mut sum = CMat::zeros(dim, dim);
        for e in &elements {
            if e.nrows() != dim || e.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "POVM element is {}x{}, expected {dim}x{dim}",
                    e.nrows(),
                    e.ncols()
                )));
            }
            let min_ev = min_eigenvalue(e);
            if min_ev < -TOL_SUM {
                return Err(Error::Invariant(format!("POVM element not PSD (min {min_ev:.3e})")));
            }
            sum += e;
        }
        let defect = max_abs(&(sum - CMat::identity(dim, dim)));
        if defect > TOL_SUM {
            return Err(Error::Invariant(format!("POVM completeness defect {defect:.3e}")));
        }
        Ok(Povm { dim, elements })
    }

    /// Projective measurement onto the columns of a unitary.
    pub fn from_basis_columns(basis: &CMat) -> Result<Self> {
        let dim = basis.nrows();
        let elements = (0..basis.ncols())
            .map(|x| {
                let col = basis.column(x);
                &col * col.adjoint()
            })
            .collect();
        Self::new(dim, elements)
    }

    /// Ignores the state and always answers `guess`.
    pub fn fixed_guess(dim: usize, outcomes: usize, guess: usize) -> Self {
        let elements = (0..outcomes)
            .map(|x| if x == guess { CMat::identity(dim, dim) } else { CMat::zeros(dim, dim) })
            .collect();
        Povm { dim, elements }
    }

    /// Ignores the state and answers uniformly.
    pub fn uniform_guess(dim: usize, outcomes: usize) -> Self {
        let w = c(1.0 / outcomes as f64, 0.0);
        Povm { dim, elements: (0..outcomes).map(|_| CMat::identity(dim, dim) * w).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, x: usize) -> &CMat {
        &self.elements[x]
    }

    /// Outcome probabilities `Tr(F_x ρ)`, clipped to `[0, 1]`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "POVM dim {} vs state dim {}",
                self.dim,
                rho.dim()
            )));
        }
        let probs: Vec<f64> = self
            .elements
            .iter()
            .map(|e| {
                let tr: C64 = e
                    .row_iter()
                    .enumerate()
                    .map(|(i, row)| row.iter().zip(rho.mat.column(i).iter()).map(|(a, b)| a * b).sum::<C64>())
                    .sum();
                tr.re.clamp(0.0, 1.0)
            })
            .collect();
        let total: f64 = probs.iter().sum();
        debug_assert!((total - 1.0).abs() <= TOL_SUM, "POVM probabilities sum to {total}");
        Ok(probs)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rho: &DensityMatrix, rng: &mut R) -> Result<usize> {
        let probs = self.probabilities(rho)?;
        Ok(sample_from_weights(&probs, rng))
    }
}

/// Draws an index proportionally to nonnegative `weights`.
pub(crate) fn sample_from_weights<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        u -= w;
        if u <= 0.0 {
            return i;
        }
    }
    weights.len() - 1
}

/// `⟨ψ|ρ|ψ⟩`: the probability that `rho` passes the projective test onto
/// `target`.
pub fn fidelity_to_pure(target: &PureState, rho: &DensityMatrix) -> Result<f64> {
    if target.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} vs density dim {}",
            target.dim(),
            rho.dim()
        )));
    }
    let v = target.amplitudes();
    let f = (v.adjoint() * &rho.mat * v)[(0, 0)];
    debug_assert!(f.im.abs() <= TOL_EXACT, "fidelity has imaginary part {}", f.im);
    Ok(f.re.clamp(0.0, 1.0))
}

// ---------------------------------------------------------------------------
// Debug serialization of matrices

/// Row-major matrix dump with `[re, im]` pairs; the debug wire form of
/// quantum states.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDump {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixDump {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let dim = rho.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let z = rho.matrix()[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        MatrixDump { dim, entries }
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::Decode(format!(
                "matrix dump has {} entries, expected {}",
                self.entries.len(),
                self.dim * self.dim
            )));
        }
        let mat = CMat::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = self.entries[i * self.dim + j];
            c(re, im)
        });
        DensityMatrix::from_matrix(mat)
    }
}
