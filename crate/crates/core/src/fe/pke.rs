//! Toy LWE public-key encryption.
//!
//! Textbook Regev with a bounded ±1 error, sized so decryption never fails
//! at the default parameters: `|Σ xᵢeᵢ| ≤ samples < q/4`. Correctness is
//! the point; the parameters are far too small for real security and the
//! scheme is pluggable precisely so a vetted one can replace it.

use crate::bits::Bits;
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkeParams {
    /// LWE secret dimension.
    pub dim: usize,
    /// Rows of the public matrix; also the subset-sum width.
    pub samples: usize,
    /// Odd modulus with `samples < q/4`.
    pub modulus: u32,
}

impl Default for PkeParams {
    fn default() -> Self {
        PkeParams { dim: 32, samples: 64, modulus: 4093 }
    }
}

impl PkeParams {
    fn check(&self) -> Result<()> {
        if self.samples as u32 >= self.modulus / 4 {
            return Err(Error::InvalidArgument(
                "samples must stay below q/4 for error-free decryption".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PkePublicKey {
    pub params: PkeParams,
    /// samples × dim, row major.
    pub a: Vec<u32>,
    /// `b = A s + e` with e ∈ {−1, 0, 1}.
    pub b: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkeSecretKey {
    pub params: PkeParams,
    pub s: Vec<u32>,
}

/// One encrypted bit: `(a, c) = (Aᵀx, ⟨b, x⟩ + bit·⌊q/2⌋)` for a random
/// subset x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkeCiphertext {
    pub bits: Vec<PkeCtBit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkeCtBit {
    pub a: Vec<u32>,
    pub c: u32,
}

pub fn pke_keygen<R: Rng + ?Sized>(params: PkeParams, rng: &mut R) -> Result<(PkePublicKey, PkeSecretKey)> {
    params.check()?;
    let q = params.modulus;
    let s: Vec<u32> = (0..params.dim).map(|_| rng.random_range(0..q)).collect();
    let mut a = Vec::with_capacity(params.samples * params.dim);
    let mut b = Vec::with_capacity(params.samples);
    for _ in 0..params.samples {
        let row: Vec<u32> = (0..params.dim).map(|_| rng.random_range(0..q)).collect();
        let mut acc: u64 = 0;
        for (x, y) in row.iter().zip(&s) {
            acc = (acc + *x as u64 * *y as u64) % q as u64;
        }
        // e ∈ {−1, 0, 1}.
        let e: i64 = rng.random_range(-1..=1);
        b.push(((acc as i64 + e).rem_euclid(q as i64)) as u32);
        a.extend(row);
    }
    Ok((PkePublicKey { params, a, b }, PkeSecretKey { params, s }))
}

pub fn pke_encrypt<R: Rng + ?Sized>(pk: &PkePublicKey, m: &Bits, rng: &mut R) -> PkeCiphertext {
    let p = pk.params;
    let q = p.modulus as u64;
    let bits = m
        .iter()
        .map(|bit| {
            let x: Vec<bool> = (0..p.samples).map(|_| rng.random::<bool>()).collect();
            let mut a = vec![0u64; p.dim];
            let mut c: u64 = 0;
            for (row, &selected) in x.iter().enumerate() {
                if selected {
                    for (j, slot) in a.iter_mut().enumerate() {
                        *slot = (*slot + pk.a[row * p.dim + j] as u64) % q;
                    }
                    c = (c + pk.b[row] as u64) % q;
                }
            }
            if bit {
                c = (c + q / 2) % q;
            }
            PkeCtBit { a: a.into_iter().map(|v| v as u32).collect(), c }
        })
        .map(|mut ct| {
            ct.c %= p.modulus as u64 as u32 as u32 as u32;
            ct
        })
        .collect();
    PkeCiphertext { bits }
}

pub fn pke_decrypt(sk: &PkeSecretKey, ct: &PkeCiphertext) -> Result<Bits> {
    let p = sk.params;
    let q = p.modulus as u64;
    let mut out = Vec::with_capacity(ct.bits.len());
    for bit_ct in &ct.bits {
        if bit_ct.a.len() != p.dim {
            return Err(Error::Decode("malformed ciphertext: wrong vector length".into()));
        }
        let mut inner: u64 = 0;
        for (x, y) in bit_ct.a.iter().zip(&sk.s) {
            inner = (inner + *x as u64 * *y as u64) % q;
        }
        let diff = (bit_ct.c as u64 + q - inner) % q;
        // Distance to 0 vs distance to q/2.
        let dist_zero = diff.min(q - diff);
        let dist_half = diff.abs_diff(q / 2);
        out.push(dist_half < dist_zero);
    }
    Ok(Bits::from_bools(out))
}
