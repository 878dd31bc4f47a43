//! Order-independent exact accumulation of probability terms.
//!
//! Experiment values are averages `Σ wᵢ qᵢ` whose weights are (at dyadic
//! cell counts) exact powers of two, so every term is an exactly
//! representable f64. Summing them through a big-integer fixed-point
//! accumulator and rounding once at the end makes the result independent of
//! enumeration order and grouping: two experiments that are algebraically
//! equal return bit-identical floats. The hybrid-equality and
//! reduction-fidelity checks rely on this.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Fixed-point scale: terms as small as 2^-SHIFT are representable exactly,
/// which covers every nonzero f64 product arising here.
const SHIFT: i64 = 1280;

/// Exact sum of nonnegative f64 terms.
#[derive(Debug, Clone, Default)]
pub struct ExactSum {
    acc: BigUint,
}

impl ExactSum {
    pub fn new() -> Self {
        ExactSum { acc: BigUint::zero() }
    }

    pub fn add(&mut self, term: f64) {
        assert!(term >= 0.0 && term.is_finite(), "terms must be finite and nonnegative");
        if term == 0.0 {
            return;
        }
        let bits = term.to_bits();
        let exponent_field = (bits >> 52) & 0x7ff;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mantissa, exponent) = if exponent_field == 0 {
            (fraction, 1i64 - 1075)
        } else {
            (fraction | (1 << 52), exponent_field as i64 - 1075)
        };
        let shift = exponent + SHIFT;
        assert!(shift >= 0, "term {term:e} below accumulator resolution");
        self.acc += BigUint::from(mantissa) << shift as u64;
    }

    pub fn merge(&mut self, other: ExactSum) {
        self.acc += other.acc;
    }

    /// The exact total, rounded once to the nearest f64 (ties to even).
    pub fn value(&self) -> f64 {
        if self.acc.is_zero() {
            return 0.0;
        }
        let bits = self.acc.bits() as i64;
        // Keep 54 bits: 53 mantissa bits plus one round bit.
        let drop = bits - 54;
        let (top, sticky) = if drop > 0 {
            let top = (&self.acc >> drop as u64).to_u64().expect("54 bits fit");
            let sticky = self.acc.trailing_zeros().unwrap_or(0) < drop as u64;
            (top, sticky)
        } else {
            let top = self.acc.to_u64().expect("54 bits fit") << (-drop) as u64;
            (top, false)
        };
        let round = top & 1 == 1;
        let mut mantissa = top >> 1;
        if round && (sticky || mantissa & 1 == 1) {
            mantissa += 1;
        }
        let exponent = drop + 1 - SHIFT;
        mantissa as f64 * 2f64.powi(exponent as i32)
    }
}
