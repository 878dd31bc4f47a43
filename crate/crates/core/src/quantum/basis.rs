//! Real-orthogonal basis families.
//!
//! A family holds one real orthogonal matrix per basis index θ; the columns
//! are the basis states. The Wiesner family (computational/Hadamard per
//! qubit, indexed by θ ∈ {0,1}ⁿ) is the default instantiation; Haar-random
//! orthogonal families exercise the generalization.
//!
//! Real orthogonality is what keeps the unnormalized EPR vector `Σ|xx⟩`
//! basis-independent; [`epr_invariance_defect`] measures exactly that.

use super::{c, CMat, PureState, RMat, TOL_EXACT, TOL_SUM};
use crate::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// An indexed collection of real orthogonal bases on n qubits.
#[derive(Debug, Clone)]
pub struct BasisFamily {
    n: usize,
    id: String,
    matrices: Vec<RMat>,
}

impl BasisFamily {
    /// Builds a family from explicit real matrices, checking `OᵀO = I` on
    /// each.
    pub fn from_matrices(n: usize, id: impl Into<String>, matrices: Vec<RMat>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("qubit count must be at least 1".into()));
        }
        if matrices.is_empty() {
            return Err(Error::InvalidArgument("a basis family needs at least one basis".into()));
        }
        let dim = 1usize << n;
        for m in &matrices {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "basis matrix is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let defect = (m.transpose() * m - RMat::identity(dim, dim))
                .iter()
                .map(|x| x.abs())
                .fold(0.0, f64::max);
            if defect > TOL_EXACT {
                return Err(Error::Invariant(format!("basis not orthogonal (defect {defect:.3e})")));
            }
        }
        Ok(BasisFamily { n, id: id.into(), matrices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Size of the index set Θ.
    pub fn num_bases(&self) -> usize {
        self.matrices.len()
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn matrix(&self, theta: usize) -> &RMat {
        &self.matrices[theta]
    }

    /// Column `index` of basis θ as a complex state vector.
    pub fn column_state(&self, theta: usize, index: usize) -> PureState {
        let col = self.matrices[theta].column(index);
        PureState::from_real(col.as_slice()).expect("orthogonal columns are unit norm")
    }
}

/// The Wiesner family: θ ∈ {0,1}ⁿ, qubit i measured in the computational
/// basis when θᵢ = 0 and the Hadamard basis when θᵢ = 1.
pub fn wiesner_family(n: usize) -> Result<BasisFamily> {
    if n == 0 {
        return Err(Error::InvalidArgument("qubit count must be at least 1".into()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ident = RMat::identity(2, 2);
    let hadamard = RMat::from_row_slice(2, 2, &[s, s, s, -s]);
    let mut matrices = Vec::with_capacity(1 << n);
    for theta in 0..1u64 << n {
        let mut m = RMat::identity(1, 1);
        for qubit in 0..n {
            let single = if (theta >> (n - 1 - qubit)) & 1 == 1 { &hadamard } else { &ident };
            m = m.kronecker(single);
        }
        matrices.push(m);
    }
    BasisFamily::from_matrices(n, format!("wiesner-{n}"), matrices)
}

/// Haar-uniform random orthogonal matrix: QR of an i.i.d. Gaussian matrix
/// with the R diagonal signs folded into Q.
pub fn random_orthogonal<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> RMat {
    let g = RMat::from_fn(dim, dim, |_, _| StandardNormal.sample(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            for i in 0..dim {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// A family of `num_bases` independent Haar-random orthogonal bases.
pub fn random_orthogonal_family<R: Rng + ?Sized>(
    n: usize,
    num_bases: usize,
    rng: &mut R,
) -> Result<BasisFamily> {
    if n == 0 {
        return Err(Error::InvalidArgument("qubit count must be at least 1".into()));
    }
    let dim = 1usize << n;
    let matrices = (0..num_bases).map(|_| random_orthogonal(dim, rng)).collect();
    BasisFamily::from_matrices(n, format!("random-orthogonal-{n}x{num_bases}"), matrices)
}

/// `‖Σ_x |xx⟩ − Σ_x |ψ_x ψ_x⟩‖₂` for the columns `ψ_x` of a matrix with
/// orthonormal columns.
///
/// Zero (up to roundoff) exactly when the matrix is real orthogonal; a
/// complex unitary with genuinely complex entries leaves a macroscopic
/// defect. Errors if the columns are not orthonormal.
pub fn epr_invariance_defect(basis: &CMat) -> Result<f64> {
    let dim = basis.nrows();
    if basis.ncols() != dim {
        return Err(Error::DimensionMismatch("basis matrix must be square".into()));
    }
    let ortho_defect = (basis.adjoint() * basis - CMat::identity(dim, dim))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if ortho_defect > TOL_SUM {
        return Err(Error::Invariant(format!(
            "columns not orthonormal (defect {ortho_defect:.3e})"
        )));
    }
    // Σ_x ψ_x ⊗ ψ_x, no conjugation anywhere: component (a, b) is (O Oᵀ)_{ab}.
    let mut norm_sq = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            let mut entry = c(0.0, 0.0);
            for x in 0..dim {
                entry += basis[(a, x)] * basis[(b, x)];
            }
            if a == b {
                entry -= c(1.0, 0.0);
            }
            norm_sq += entry.norm_sqr();
        }
    }
    Ok(norm_sq.sqrt())
}
