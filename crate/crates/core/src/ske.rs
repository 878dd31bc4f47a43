//! PRF-based symmetric encryption with the fake-key property.
//!
//! The key is `(k, otp)`; encrypting m draws a fresh r and outputs
//! `(r, PRF_k(r) ⊕ m ⊕ otp)`. Given an encryption of zero and a target
//! message, [`fake_gen`] produces a key that decrypts it to the target —
//! and because `otp` is a uniform mask, the joint distribution of
//! (ciphertext, key) is *identical* for the real and fake worlds. The
//! brute-force oracle [`fakekey_tvd_bruteforce`] verifies that equality by
//! exhaustive integer counting.
//!
//! Two PRF backends: an explicit truth table (enumerable, the oracle's
//! domain) and a keyed hash for λ-scale use. The hash backend is a
//! stand-in for a post-quantum PRF, not an argued one.

use crate::bits::Bits;
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Truth-table budget: 2^(λ+ℓ) entries.
const TABLE_BUDGET: u32 = 20;
/// Brute-force budget: 2^(2λ+ℓ+n) enumerated randomness points.
const TVD_BUDGET: u32 = 24;

#[derive(Debug, Clone)]
enum PrfBackend {
    /// Entry `(k << ℓ) | x` holds `PRF_k(x)`.
    Table(Arc<Vec<Bits>>),
    KeyedHash,
}

/// A concrete PRF family `PRF_k : {0,1}^ℓ → {0,1}^n` with λ-bit keys.
#[derive(Debug, Clone)]
pub struct PrfSpec {
    pub lambda: usize,
    pub ell: usize,
    pub n_out: usize,
    backend: PrfBackend,
}

impl PrfSpec {
    /// Uniformly random truth table over the whole family.
    pub fn table_random<R: Rng + ?Sized>(
        lambda: usize,
        ell: usize,
        n_out: usize,
        rng: &mut R,
    ) -> Result<Self> {
        Self::check_table(lambda, ell)?;
        let entries = (0..1u64 << (lambda + ell)).map(|_| Bits::random(n_out, rng)).collect();
        Ok(PrfSpec { lambda, ell, n_out, backend: PrfBackend::Table(Arc::new(entries)) })
    }

    /// Adversarially structured table: every key and input maps to `value`.
    pub fn table_constant(lambda: usize, ell: usize, value: Bits) -> Result<Self> {
        Self::check_table(lambda, ell)?;
        let n_out = value.len();
        let entries = vec![value; 1 << (lambda + ell)];
        Ok(PrfSpec { lambda, ell, n_out, backend: PrfBackend::Table(Arc::new(entries)) })
    }

    /// Table from explicit entries, indexed by `(k << ℓ) | x`.
    pub fn table_from_entries(lambda: usize, ell: usize, n_out: usize, entries: Vec<Bits>) -> Result<Self> {
        Self::check_table(lambda, ell)?;
        if entries.len() != 1 << (lambda + ell) || entries.iter().any(|e| e.len() != n_out) {
            return Err(Error::InvalidArgument("table shape does not match parameters".into()));
        }
        Ok(PrfSpec { lambda, ell, n_out, backend: PrfBackend::Table(Arc::new(entries)) })
    }

    /// Keyed-hash backend for λ-scale operation.
    pub fn keyed_hash(lambda: usize, ell: usize, n_out: usize) -> Self {
        PrfSpec { lambda, ell, n_out, backend: PrfBackend::KeyedHash }
    }

    fn check_table(lambda: usize, ell: usize) -> Result<()> {
        if lambda as u32 + ell as u32 > TABLE_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "truth table with 2^{} entries exceeds 2^{TABLE_BUDGET}",
                lambda + ell
            )));
        }
        Ok(())
    }

    pub fn is_table(&self) -> bool {
        matches!(self.backend, PrfBackend::Table(_))
    }

    /// Raw table entry lookup (circuit construction wants the table itself).
    pub fn table_entry(&self, k: u64, x: u64) -> Result<&Bits> {
        match &self.backend {
            PrfBackend::Table(entries) => Ok(&entries[((k << self.ell) | x) as usize]),
            PrfBackend::KeyedHash => {
                Err(Error::InvalidArgument("keyed-hash PRF has no table".into()))
            }
        }
    }

    pub fn eval(&self, k: &Bits, x: &Bits) -> Bits {
        assert_eq!(k.len(), self.lambda, "PRF key width");
        assert_eq!(x.len(), self.ell, "PRF input width");
        match &self.backend {
            PrfBackend::Table(entries) => {
                entries[((k.to_index() << self.ell) | x.to_index()) as usize].clone()
            }
            PrfBackend::KeyedHash => {
                let mut hasher = Sha256::new();
                hasher.update((self.lambda as u64).to_le_bytes());
                hasher.update((self.ell as u64).to_le_bytes());
                hasher.update(k.to_bytes());
                hasher.update(x.to_bytes());
                let mut out = Vec::with_capacity(self.n_out);
                let mut counter = 0u64;
                'outer: loop {
                    let mut block = hasher.clone();
                    block.update(counter.to_le_bytes());
                    for byte in block.finalize() {
                        for bit in 0..8 {
                            out.push(byte & (0x80 >> bit) != 0);
                            if out.len() == self.n_out {
                                break 'outer;
                            }
                        }
                    }
                    counter += 1;
                }
                Bits::from_bools(out)
            }
        }
    }
}

/// Where a key came from; test-only metadata, never serialized and never
/// part of a distribution comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyProvenance {
    Real,
    Fake,
}

/// SKE key `(k, otp)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkeKey {
    pub k: Bits,
    pub otp: Bits,
}

impl SkeKey {
    /// Wire form `{k, otp, lambda, ell, n}` with hex fields.
    pub fn serialized(&self, prf: &PrfSpec) -> SkeKeyData {
        SkeKeyData {
            k: self.k.to_hex(),
            otp: self.otp.to_hex(),
            lambda: prf.lambda,
            ell: prf.ell,
            n: prf.n_out,
        }
    }

    pub fn from_serialized(data: &SkeKeyData) -> Result<Self> {
        Ok(SkeKey {
            k: Bits::from_hex(&data.k, data.lambda)?,
            otp: Bits::from_hex(&data.otp, data.n)?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkeKeyData {
    pub k: String,
    pub otp: String,
    pub lambda: usize,
    pub ell: usize,
    pub n: usize,
}

/// Ciphertext `(r, c₂)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicalCiphertext {
    pub r: Bits,
    pub c2: Bits,
}

impl Serialize for Bits {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            hex: &'a str,
            len: usize,
        }
        Wire { hex: &self.to_hex(), len: self.len() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            hex: String,
            len: usize,
        }
        let w = Wire::deserialize(deserializer)?;
        Bits::from_hex(&w.hex, w.len).map_err(serde::de::Error::custom)
    }
}

/// Uniform key: `(k, otp)` independent uniform.
pub fn ske_setup<R: Rng + ?Sized>(prf: &PrfSpec, rng: &mut R) -> (SkeKey, KeyProvenance) {
    (
        SkeKey { k: Bits::random(prf.lambda, rng), otp: Bits::random(prf.n_out, rng) },
        KeyProvenance::Real,
    )
}

/// `ct = (r, PRF_k(r) ⊕ m ⊕ otp)` for a fresh uniform r.
pub fn ske_encrypt<R: Rng + ?Sized>(
    prf: &PrfSpec,
    key: &SkeKey,
    m: &Bits,
    rng: &mut R,
) -> Result<ClassicalCiphertext> {
    ske_encrypt_with_r(prf, key, m, Bits::random(prf.ell, rng))
}

/// Encryption with the randomness pinned; the reduction wrappers need the
/// same r on both sides.
pub fn ske_encrypt_with_r(
    prf: &PrfSpec,
    key: &SkeKey,
    m: &Bits,
    r: Bits,
) -> Result<ClassicalCiphertext> {
    if m.len() != prf.n_out {
        return Err(Error::LengthMismatch(format!(
            "plaintext has {} bits, scheme encrypts {}",
            m.len(),
            prf.n_out
        )));
    }
    if r.len() != prf.ell {
        return Err(Error::LengthMismatch("encryption randomness width".into()));
    }
    let c2 = prf.eval(&key.k, &r).xor(m).xor(&key.otp);
    Ok(ClassicalCiphertext { r, c2 })
}

/// `μ = c₂ ⊕ PRF_k(r) ⊕ otp`.
pub fn ske_decrypt(prf: &PrfSpec, key: &SkeKey, ct: &ClassicalCiphertext) -> Result<Bits> {
    if ct.r.len() != prf.ell || ct.c2.len() != prf.n_out {
        return Err(Error::LengthMismatch("ciphertext widths".into()));
    }
    Ok(ct.c2.xor(&prf.eval(&key.k, &ct.r)).xor(&key.otp))
}

/// Fake key for `(ct⁰, m)`: uniform k′ and `otp′ = c₂⁰ ⊕ PRF_{k′}(r⁰) ⊕ m`,
/// so the fake key decrypts ct⁰ to m by construction.
pub fn fake_gen<R: Rng + ?Sized>(
    prf: &PrfSpec,
    ct0: &ClassicalCiphertext,
    m: &Bits,
    rng: &mut R,
) -> Result<(SkeKey, KeyProvenance)> {
    fake_gen_with_key(prf, ct0, m, Bits::random(prf.lambda, rng))
}

/// Deterministic core of [`fake_gen`]; the reductions feed both parties the
/// same k′ as shared randomness.
pub fn fake_gen_with_key(
    prf: &PrfSpec,
    ct0: &ClassicalCiphertext,
    m: &Bits,
    k_prime: Bits,
) -> Result<(SkeKey, KeyProvenance)> {
    if m.len() != prf.n_out {
        return Err(Error::LengthMismatch("target message width".into()));
    }
    if k_prime.len() != prf.lambda {
        return Err(Error::LengthMismatch("fake key width".into()));
    }
    let otp = ct0.c2.xor(&prf.eval(&k_prime, &ct0.r)).xor(m);
    Ok((SkeKey { k: k_prime, otp }, KeyProvenance::Fake))
}

/// Which fake-key generator the brute-force oracle should test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FakeGenVariant {
    /// The construction above.
    Standard,
    /// Negative control: otp′ drawn uniformly instead of matched.
    UniformOtp,
}

/// Exact total-variation distance between the joint distributions
/// `(Enc(key, m), key)` and `(Enc(key, 0), FakeGen(·, m))`, enumerated over
/// all randomness with integer counting. Zero — exactly — for every fixed
/// function table.
pub fn fakekey_tvd_bruteforce(prf: &PrfSpec, m: &Bits) -> Result<f64> {
    fakekey_tvd_bruteforce_variant(prf, m, FakeGenVariant::Standard)
}

pub fn fakekey_tvd_bruteforce_variant(
    prf: &PrfSpec,
    m: &Bits,
    variant: FakeGenVariant,
) -> Result<f64> {
    if !prf.is_table() {
        return Err(Error::InvalidArgument("brute-force oracle needs a table PRF".into()));
    }
    if m.len() != prf.n_out {
        return Err(Error::LengthMismatch("message width".into()));
    }
    let (lambda, ell, n) = (prf.lambda as u32, prf.ell as u32, prf.n_out as u32);
    // Fake-world randomness beyond the real world's (k, otp, r): the fresh
    // k′, plus a fresh otp′ in the negative control.
    let fake_extra_bits = match variant {
        FakeGenVariant::Standard => lambda,
        FakeGenVariant::UniformOtp => lambda + n,
    };
    let total_bits = lambda + n + ell + fake_extra_bits;
    if total_bits > TVD_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "2^{total_bits} randomness points exceed 2^{TVD_BUDGET}"
        )));
    }

    // Outcome tuples (r, c2, key_k, key_otp) packed into a u64. Real counts
    // are scaled so both worlds carry the same total integer mass.
    let pack = |ct: &ClassicalCiphertext, key: &SkeKey| -> u64 {
        let mut v = ct.r.to_index();
        v = (v << n) | ct.c2.to_index();
        v = (v << lambda) | key.k.to_index();
        (v << key.otp.len()) | key.otp.to_index()
    };
    let real_scale = 1u64 << fake_extra_bits;
    let mut counts: BTreeMap<u64, (u64, u64)> = BTreeMap::new();

    for k in 0..1u64 << lambda {
        let k = Bits::from_index(k, prf.lambda);
        for otp in 0..1u64 << n {
            let key = SkeKey { k: k.clone(), otp: Bits::from_index(otp, prf.n_out) };
            for r in 0..1u64 << ell {
                let ct = ske_encrypt_with_r(prf, &key, m, Bits::from_index(r, prf.ell))?;
                counts.entry(pack(&ct, &key)).or_default().0 += real_scale;
            }
        }
    }

    let zeros = Bits::zeros(prf.n_out);
    for k in 0..1u64 << lambda {
        let k = Bits::from_index(k, prf.lambda);
        for otp in 0..1u64 << n {
            let key = SkeKey { k: k.clone(), otp: Bits::from_index(otp, prf.n_out) };
            for r in 0..1u64 << ell {
                let ct0 = ske_encrypt_with_r(prf, &key, &zeros, Bits::from_index(r, prf.ell))?;
                for k_prime in 0..1u64 << lambda {
                    let k_prime = Bits::from_index(k_prime, prf.lambda);
                    match variant {
                        FakeGenVariant::Standard => {
                            let (fk, _) = fake_gen_with_key(prf, &ct0, m, k_prime)?;
                            counts.entry(pack(&ct0, &fk)).or_default().1 += 1;
                        }
                        FakeGenVariant::UniformOtp => {
                            for otp_prime in 0..1u64 << n {
                                let fk = SkeKey {
                                    k: k_prime.clone(),
                                    otp: Bits::from_index(otp_prime, prf.n_out),
                                };
                                counts.entry(pack(&ct0, &fk)).or_default().1 += 1;
                            }
                        }
                    }
                }
            }
        }
    }

    let numerator: u128 =
        counts.values().map(|&(real, fake)| real.abs_diff(fake) as u128).sum();
    let per_world = 1u128 << total_bits;
    Ok(numerator as f64 / (2 * per_world) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn tiny(rng: &mut ChaCha12Rng) -> PrfSpec {
        PrfSpec::table_random(2, 2, 2, rng).unwrap()
    }

    #[test]
    fn setup_is_seed_deterministic() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let prf = tiny(&mut rng);
        let (a, _) = ske_setup(&prf, &mut ChaCha12Rng::seed_from_u64(2));
        let (b, _) = ske_setup(&prf, &mut ChaCha12Rng::seed_from_u64(2));
        assert_eq!(a, b);
    }

    #[test]
    fn setup_hits_all_keys_at_tiny_parameters() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let prf = tiny(&mut rng);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..512 {
            let (key, _) = ske_setup(&prf, &mut rng);
            seen.insert(key);
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn setup_bits_are_unbiased() {
        let prf = PrfSpec::keyed_hash(16, 8, 16);
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let trials = 100_000;
        let mut ones = vec![0u64; prf.lambda + prf.n_out];
        for _ in 0..trials {
            let (key, _) = ske_setup(&prf, &mut rng);
            for (i, b) in key.k.iter().chain(key.otp.iter()).enumerate() {
                ones[i] += b as u64;
            }
        }
        for (i, &count) in ones.iter().enumerate() {
            let bias = (count as f64 / trials as f64 - 0.5).abs();
            assert!(bias <= 0.01, "bit {i} bias {bias}");
        }
    }

    #[test]
    fn round_trip_exhaustive_at_tiny_parameters() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let prf = tiny(&mut rng);
        for k in 0..4u64 {
            for otp in 0..4u64 {
                let key = SkeKey { k: Bits::from_index(k, 2), otp: Bits::from_index(otp, 2) };
                for m in 0..4u64 {
                    let m = Bits::from_index(m, 2);
                    for r in 0..4u64 {
                        let ct = ske_encrypt_with_r(&prf, &key, &m, Bits::from_index(r, 2)).unwrap();
                        assert_eq!(ske_decrypt(&prf, &key, &ct).unwrap(), m);
                    }
                }
            }
        }
    }

    #[test]
    fn matched_otp_cancels_ciphertext() {
        // With otp = PRF_k(r) ⊕ m for the r actually used, c₂ = 0.
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let prf = tiny(&mut rng);
        let k = Bits::from_index(1, 2);
        let m = Bits::from_index(3, 2);
        let r = Bits::from_index(2, 2);
        let key = SkeKey { k: k.clone(), otp: prf.eval(&k, &r).xor(&m) };
        let ct = ske_encrypt_with_r(&prf, &key, &m, r).unwrap();
        assert!(ct.c2.is_zero());
    }

    #[test]
    fn one_time_pad_hides_the_message_exactly() {
        // Over a uniform key, the ciphertext distribution of any two
        // messages is identical (otp is a one-time pad); exact enumeration.
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let prf = tiny(&mut rng);
        let dist = |m: &Bits| {
            let mut counts: BTreeMap<(u64, u64), u64> = BTreeMap::new();
            for k in 0..4u64 {
                for otp in 0..4u64 {
                    let key =
                        SkeKey { k: Bits::from_index(k, 2), otp: Bits::from_index(otp, 2) };
                    for r in 0..4u64 {
                        let ct =
                            ske_encrypt_with_r(&prf, &key, m, Bits::from_index(r, 2)).unwrap();
                        *counts.entry((ct.r.to_index(), ct.c2.to_index())).or_default() += 1;
                    }
                }
            }
            counts
        };
        assert_eq!(dist(&Bits::from_index(1, 2)), dist(&Bits::from_index(2, 2)));
    }

    #[test]
    fn wrong_key_decrypts_wrong_for_most_ciphertexts() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        let prf = tiny(&mut rng);
        let (key, _) = ske_setup(&prf, &mut rng);
        let mut collisions = 0;
        let mut total = 0;
        for _ in 0..200 {
            let m = Bits::random(2, &mut rng);
            let ct = ske_encrypt(&prf, &key, &m, &mut rng).unwrap();
            let (other, _) = ske_setup(&prf, &mut rng);
            if other == key {
                continue;
            }
            total += 1;
            if ske_decrypt(&prf, &other, &ct).unwrap() == m {
                collisions += 1;
            }
        }
        // A wrong key recovers a 2-bit message with probability ~1/4.
        assert!((collisions as f64 / total as f64) < 0.5);
    }

    #[test]
    fn fake_key_decrypts_to_target_exhaustively() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let prf = tiny(&mut rng);
        let zeros = Bits::zeros(2);
        for k in 0..4u64 {
            for otp in 0..4u64 {
                let key = SkeKey { k: Bits::from_index(k, 2), otp: Bits::from_index(otp, 2) };
                for r in 0..4u64 {
                    let ct0 = ske_encrypt_with_r(&prf, &key, &zeros, Bits::from_index(r, 2)).unwrap();
                    for m in 0..4u64 {
                        let m = Bits::from_index(m, 2);
                        for kp in 0..4u64 {
                            let (fk, prov) =
                                fake_gen_with_key(&prf, &ct0, &m, Bits::from_index(kp, 2)).unwrap();
                            assert_eq!(prov, KeyProvenance::Fake);
                            assert_eq!(ske_decrypt(&prf, &fk, &ct0).unwrap(), m);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fake_key_decrypts_to_target_at_scale() {
        let prf = PrfSpec::keyed_hash(128, 128, 32);
        let mut rng = ChaCha12Rng::seed_from_u64(10);
        for _ in 0..10_000 {
            let (key, _) = ske_setup(&prf, &mut rng);
            let ct0 = ske_encrypt(&prf, &key, &Bits::zeros(32), &mut rng).unwrap();
            let m = Bits::random(32, &mut rng);
            let (fk, _) = fake_gen(&prf, &ct0, &m, &mut rng).unwrap();
            assert_eq!(ske_decrypt(&prf, &fk, &ct0).unwrap(), m);
        }
    }

    #[test]
    fn fake_gen_is_deterministic_given_shared_randomness() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let prf = tiny(&mut rng);
        let (key, _) = ske_setup(&prf, &mut rng);
        let ct0 = ske_encrypt(&prf, &key, &Bits::zeros(2), &mut rng).unwrap();
        let m = Bits::from_index(2, 2);
        let (a, _) = fake_gen(&prf, &ct0, &m, &mut ChaCha12Rng::seed_from_u64(12)).unwrap();
        let (b, _) = fake_gen(&prf, &ct0, &m, &mut ChaCha12Rng::seed_from_u64(12)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tvd_is_exactly_zero_for_random_and_adversarial_tables() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for trial in 0..3 {
            let prf = tiny(&mut rng);
            for m in 0..4u64 {
                let tvd = fakekey_tvd_bruteforce(&prf, &Bits::from_index(m, 2)).unwrap();
                assert_eq!(tvd, 0.0, "trial {trial} m {m}");
            }
        }
        let constant = PrfSpec::table_constant(2, 2, Bits::from_index(3, 2)).unwrap();
        assert_eq!(fakekey_tvd_bruteforce(&constant, &Bits::from_index(1, 2)).unwrap(), 0.0);
        let one_bit = PrfSpec::table_random(1, 1, 1, &mut rng).unwrap();
        assert_eq!(fakekey_tvd_bruteforce(&one_bit, &Bits::from_index(1, 1)).unwrap(), 0.0);
    }

    #[test]
    fn uniform_otp_control_has_positive_tvd() {
        let mut rng = ChaCha12Rng::seed_from_u64(14);
        let prf = tiny(&mut rng);
        let tvd = fakekey_tvd_bruteforce_variant(
            &prf,
            &Bits::from_index(1, 2),
            FakeGenVariant::UniformOtp,
        )
        .unwrap();
        assert!(tvd > 0.0, "negative control failed to separate");
    }

    #[test]
    fn tvd_budget_is_enforced() {
        let prf = PrfSpec::keyed_hash(128, 128, 32);
        assert!(fakekey_tvd_bruteforce(&prf, &Bits::zeros(32)).is_err());
        let mut rng = ChaCha12Rng::seed_from_u64(15);
        let big = PrfSpec::table_random(10, 5, 10, &mut rng).unwrap();
        assert!(matches!(
            fakekey_tvd_bruteforce(&big, &Bits::zeros(10)),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn key_serialization_round_trip() {
        let prf = PrfSpec::keyed_hash(16, 8, 4);
        let (key, _) = ske_setup(&prf, &mut ChaCha12Rng::seed_from_u64(16));
        let json = serde_json::to_string(&key.serialized(&prf)).unwrap();
        let data: SkeKeyData = serde_json::from_str(&json).unwrap();
        assert_eq!(SkeKey::from_serialized(&data).unwrap(), key);
    }
}
