//! One-time conjugate encryption.
//!
//! The key is a basis index θ and an n-bit one-time pad r; the ciphertext
//! for message m is the pure state at column `m ⊕ r` of basis θ. Decryption
//! measures in basis θ and strips the pad. With the Wiesner family this is
//! BB84 conjugate coding; any real-orthogonal family plugs in.

use crate::bits::Bits;
use crate::quantum::{BasisFamily, CMat, DensityMatrix, Povm, PureState, C64};
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Key of the one-time scheme: basis index plus one-time pad.
///
/// Keys keep a handle to their family so decryption measurements can be
/// rebuilt from the key alone.
#[derive(Debug, Clone)]
pub struct OtueKey {
    pub theta: usize,
    pub r: Bits,
    family: Arc<BasisFamily>,
}

impl OtueKey {
    pub fn new(theta: usize, r: Bits, family: Arc<BasisFamily>) -> Result<Self> {
        if theta >= family.num_bases() {
            return Err(Error::InvalidArgument(format!(
                "theta {theta} out of range for {} bases",
                family.num_bases()
            )));
        }
        if r.len() != family.n() {
            return Err(Error::LengthMismatch(format!(
                "pad has {} bits, family has {} qubits",
                r.len(),
                family.n()
            )));
        }
        Ok(OtueKey { theta, r, family })
    }

    pub fn family(&self) -> &Arc<BasisFamily> {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn serialized(&self) -> OtueKeyData {
        OtueKeyData {
            theta: self.theta,
            r: self.r.to_hex(),
            n: self.n(),
            family_id: self.family.id().to_string(),
        }
    }

    pub fn from_serialized(data: &OtueKeyData, family: Arc<BasisFamily>) -> Result<Self> {
        if data.family_id != family.id() {
            return Err(Error::Decode(format!(
                "key belongs to family {:?}, not {:?}",
                data.family_id,
                family.id()
            )));
        }
        if data.n != family.n() {
            return Err(Error::Decode("key length does not match family".into()));
        }
        let r = Bits::from_hex(&data.r, data.n)?;
        OtueKey::new(data.theta, r, family)
    }

    /// The honest decryption measurement: outcome m′ is the projector onto
    /// column `m′ ⊕ r` of basis θ.
    pub fn decryption_povm(&self) -> Povm {
        let dim = self.family.dim();
        let basis = self.family.matrix(self.theta);
        let elements: Vec<CMat> = (0..dim)
            .map(|m_prime| {
                let col_index = (m_prime as u64 ^ self.r.to_index()) as usize;
                let col = basis.column(col_index);
                CMat::from_fn(dim, dim, |i, j| C64::new(col[i] * col[j], 0.0))
            })
            .collect();
        Povm::new(dim, elements).expect("projective decryption measurement is a POVM")
    }
}

/// Wire form of a key: `{theta, r, n, family_id}` with `r` in hex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OtueKeyData {
    pub theta: usize,
    pub r: String,
    pub n: usize,
    pub family_id: String,
}

/// Quantum ciphertext: a 2ⁿ-dimensional state. Honest encryptions are pure.
#[derive(Debug, Clone)]
pub struct QuantumCiphertext {
    pub state: DensityMatrix,
    pub n: usize,
}

/// The scheme instance: a basis family shared by all keys.
#[derive(Debug, Clone)]
pub struct ConjugateUe {
    family: Arc<BasisFamily>,
}

impl ConjugateUe {
    pub fn new(family: Arc<BasisFamily>) -> Self {
        ConjugateUe { family }
    }

    /// Wiesner instantiation on n qubits.
    pub fn wiesner(n: usize) -> Result<Self> {
        Ok(ConjugateUe { family: Arc::new(crate::quantum::wiesner_family(n)?) })
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn family(&self) -> &Arc<BasisFamily> {
        &self.family
    }

    /// Uniform key: θ over Θ, r over {0,1}ⁿ.
    pub fn setup<R: Rng + ?Sized>(&self, rng: &mut R) -> OtueKey {
        let theta = rng.random_range(0..self.family.num_bases());
        let r = Bits::random(self.n(), rng);
        OtueKey { theta, r, family: Arc::clone(&self.family) }
    }

    /// The ciphertext state vector: column `m ⊕ r` of basis θ.
    pub fn encrypt_pure(&self, key: &OtueKey, m: &Bits) -> Result<PureState> {
        if m.len() != self.n() {
            return Err(Error::LengthMismatch(format!(
                "message has {} bits, scheme encrypts {}",
                m.len(),
                self.n()
            )));
        }
        let index = m.xor(&key.r).to_index() as usize;
        Ok(self.family.column_state(key.theta, index))
    }

    pub fn encrypt(&self, key: &OtueKey, m: &Bits) -> Result<QuantumCiphertext> {
        Ok(QuantumCiphertext { state: self.encrypt_pure(key, m)?.density(), n: self.n() })
    }

    /// Probability of each decrypted message: entry m′ is
    /// `Tr(|ψ_{m′⊕r}⟩⟨ψ_{m′⊕r}| ρ)`.
    pub fn decrypt_distribution(&self, key: &OtueKey, ct: &QuantumCiphertext) -> Result<Vec<f64>> {
        if ct.state.dim() != self.family.dim() {
            return Err(Error::DimensionMismatch(format!(
                "ciphertext dim {} vs scheme dim {}",
                ct.state.dim(),
                self.family.dim()
            )));
        }
        key.decryption_povm().probabilities(&ct.state)
    }

    /// Samples one decryption outcome.
    pub fn decrypt_sample<R: Rng + ?Sized>(
        &self,
        key: &OtueKey,
        ct: &QuantumCiphertext,
        rng: &mut R,
    ) -> Result<Bits> {
        let outcome = key.decryption_povm().sample(&ct.state, rng)?;
        Ok(Bits::from_index(outcome as u64, self.n()))
    }

    /// Ciphertext averaged over the whole key space for a fixed message:
    /// `(1/(2ⁿ|Θ|)) Σ_{θ,r} Enc((θ,r), m)`. Equals the maximally mixed
    /// state for every orthonormal family.
    pub fn average_ciphertext(&self, m: &Bits) -> Result<DensityMatrix> {
        if m.len() != self.n() {
            return Err(Error::LengthMismatch("message length".into()));
        }
        let dim = self.family.dim();
        let mut acc = CMat::zeros(dim, dim);
        for theta in 0..self.family.num_bases() {
            for r in 0..dim as u64 {
                let key =
                    OtueKey { theta, r: Bits::from_index(r, self.n()), family: Arc::clone(&self.family) };
                let psi = self.encrypt_pure(&key, m)?;
                acc += psi.amplitudes() * psi.amplitudes().adjoint();
            }
        }
        let weight = 1.0 / (dim as f64 * self.family.num_bases() as f64);
        Ok(DensityMatrix::from_matrix_unchecked(acc * C64::new(weight, 0.0)))
    }

    /// Enumerates the full key space (test and experiment helper).
    pub fn all_keys(&self) -> impl Iterator<Item = OtueKey> + '_ {
        let n = self.n();
        (0..self.family.num_bases()).flat_map(move |theta| {
            (0..1u64 << n).map(move |r| OtueKey {
                theta,
                r: Bits::from_index(r, n),
                family: Arc::clone(&self.family),
            })
        })
    }
}
