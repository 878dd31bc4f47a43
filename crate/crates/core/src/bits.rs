//! Length-tagged bit strings.
//!
//! Bit 0 is the most significant bit: a string indexes computational-basis
//! states big-endian, so `Bits::from_index(1, 2)` is `01`. XOR between
//! strings of different lengths is a hard error, never truncation.

use crate::{Error, Result};
use rand::Rng;
use std::fmt;

/// A fixed-length string of bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits(vec![false; len])
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    /// Big-endian: bit 0 of the string is the most significant bit of `index`.
    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(len <= 63, "index form supports at most 63 bits");
        assert!(index < (1u64 << len), "index {index} out of range for {len} bits");
        Bits((0..len).map(|i| (index >> (len - 1 - i)) & 1 == 1).collect())
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Bits((0..len).map(|_| rng.random::<bool>()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }

    pub fn to_index(&self) -> u64 {
        assert!(self.len() <= 63, "index form supports at most 63 bits");
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    /// Panics if the lengths differ; mismatched XOR is a bug, not data.
    pub fn xor(&self, other: &Bits) -> Bits {
        assert_eq!(
            self.len(),
            other.len(),
            "xor of bit strings with different lengths ({} vs {})",
            self.len(),
            other.len()
        );
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    pub fn concat(&self, other: &Bits) -> Bits {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Bits(v)
    }

    pub fn slice(&self, start: usize, len: usize) -> Bits {
        Bits(self.0[start..start + len].to_vec())
    }

    /// Zero-pads on the right up to `len`.
    pub fn pad_to(&self, len: usize) -> Bits {
        assert!(len >= self.len());
        let mut v = self.0.clone();
        v.resize(len, false);
        Bits(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// MSB-first packing into bytes, left-aligned; the last byte is
    /// zero-padded on the right.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len().div_ceil(8)];
        for (i, &b) in self.0.iter().enumerate() {
            if b {
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    /// Inverse of [`Bits::to_hex`]; the padding bits must be zero.
    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Decode(format!("bad hex: {e}")))?;
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Decode(format!(
                "hex encodes {} bytes, expected {} for {len} bits",
                bytes.len(),
                len.div_ceil(8)
            )));
        }
        let mut bits = Vec::with_capacity(len);
        for i in 0..bytes.len() * 8 {
            let b = bytes[i / 8] & (0x80 >> (i % 8)) != 0;
            if i < len {
                bits.push(b);
            } else if b {
                return Err(Error::Decode("nonzero padding bits".into()));
            }
        }
        Ok(Bits(bits))
    }

    /// Parses a literal like "0110".
    pub fn from_binary_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Decode(format!("invalid bit character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn index_round_trip_is_big_endian() {
        let b = Bits::from_index(1, 2);
        assert_eq!(b.to_string(), "01");
        assert_eq!(b.to_index(), 1);
        let b = Bits::from_index(2, 2);
        assert_eq!(b.to_string(), "10");
    }

    #[test]
    fn xor_matches_index_xor() {
        for a in 0..8u64 {
            for b in 0..8u64 {
                let x = Bits::from_index(a, 3).xor(&Bits::from_index(b, 3));
                assert_eq!(x.to_index(), a ^ b);
            }
        }
    }

    #[test]
    #[should_panic(expected = "different lengths")]
    fn xor_length_mismatch_panics() {
        let _ = Bits::zeros(2).xor(&Bits::zeros(3));
    }

    #[test]
    fn hex_rejects_nonzero_padding() {
        // "c0" has bit 1 set in the padding region of a 1-bit string.
        assert!(Bits::from_hex("c0", 1).is_err());
        assert!(Bits::from_hex("80", 1).is_ok());
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a = Bits::random(64, &mut ChaCha12Rng::seed_from_u64(9));
        let b = Bits::random(64, &mut ChaCha12Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn hex_round_trip(len in 1usize..80, seed in 0u64..1000) {
            let b = Bits::random(len, &mut ChaCha12Rng::seed_from_u64(seed));
            let back = Bits::from_hex(&b.to_hex(), len).unwrap();
            prop_assert_eq!(b, back);
        }
    }
}
