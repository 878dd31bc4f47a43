//! Boolean circuits over {AND, XOR, NOT} with two input groups.
//!
//! Wires `0..desc_bits` carry the function description d, the next
//! `data_bits` wires carry the data x, and gate i drives wire
//! `desc_bits + data_bits + i`. Gates may only read earlier wires, so the
//! list is topologically ordered and every wire is driven exactly once by
//! construction.

use crate::bits::Bits;
use crate::ske::PrfSpec;
use crate::{Error, Result};

/// Hard cap on constructed circuit size.
pub const GATE_BUDGET: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    And(usize, usize),
    Xor(usize, usize),
    Not(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanCircuit {
    pub desc_bits: usize,
    pub data_bits: usize,
    pub gates: Vec<Gate>,
    pub outputs: Vec<usize>,
}

impl BooleanCircuit {
    pub fn inputs(&self) -> usize {
        self.desc_bits + self.data_bits
    }

    pub fn num_wires(&self) -> usize {
        self.inputs() + self.gates.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.gates.len() > GATE_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "{} gates exceed the {GATE_BUDGET} gate budget",
                self.gates.len()
            )));
        }
        for (i, gate) in self.gates.iter().enumerate() {
            let own = self.inputs() + i;
            let fan_in: &[usize] = match gate {
                Gate::And(a, b) | Gate::Xor(a, b) => &[*a, *b],
                Gate::Not(a) => &[*a],
            };
            if fan_in.iter().any(|&w| w >= own) {
                return Err(Error::InvalidArgument(format!(
                    "gate {i} reads wire at or after its own output"
                )));
            }
        }
        if self.outputs.iter().any(|&w| w >= self.num_wires()) {
            return Err(Error::InvalidArgument("output wire out of range".into()));
        }
        Ok(())
    }

    /// Plain evaluation: the reference the garbled path is checked against.
    pub fn eval(&self, d: &Bits, x: &Bits) -> Result<Bits> {
        if d.len() != self.desc_bits || x.len() != self.data_bits {
            return Err(Error::LengthMismatch(format!(
                "inputs ({}, {}) vs circuit ({}, {})",
                d.len(),
                x.len(),
                self.desc_bits,
                self.data_bits
            )));
        }
        let mut wires = Vec::with_capacity(self.num_wires());
        wires.extend(d.iter());
        wires.extend(x.iter());
        for gate in &self.gates {
            let v = match *gate {
                Gate::And(a, b) => wires[a] && wires[b],
                Gate::Xor(a, b) => wires[a] ^ wires[b],
                Gate::Not(a) => !wires[a],
            };
            wires.push(v);
        }
        Ok(Bits::from_bools(self.outputs.iter().map(|&w| wires[w]).collect()))
    }
}

/// Incremental circuit builder.
struct Builder {
    circuit: BooleanCircuit,
}

impl Builder {
    fn new(desc_bits: usize, data_bits: usize) -> Self {
        Builder {
            circuit: BooleanCircuit { desc_bits, data_bits, gates: Vec::new(), outputs: Vec::new() },
        }
    }

    fn push(&mut self, gate: Gate) -> usize {
        self.circuit.gates.push(gate);
        self.circuit.num_wires() - 1
    }

    fn and(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::And(a, b))
    }

    fn xor(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::Xor(a, b))
    }

    fn xnor(&mut self, a: usize, b: usize) -> usize {
        let x = self.xor(a, b);
        self.push(Gate::Not(x))
    }

    /// XOR fold of one or more wires.
    fn xor_all(&mut self, wires: &[usize]) -> usize {
        let mut acc = wires[0];
        for &w in &wires[1..] {
            acc = self.xor(acc, w);
        }
        acc
    }

    /// AND fold of one or more wires.
    fn and_all(&mut self, wires: &[usize]) -> usize {
        let mut acc = wires[0];
        for &w in &wires[1..] {
            acc = self.and(acc, w);
        }
        acc
    }
}

/// Input layout of the Trojan selector circuit built by [`build_f_circuit`].
///
/// Description input: the bits of an SKE ciphertext `ct = (r, c2)`.
/// Data input: `(b, vK, K = (k, otp), vm, m)` where `vK` and `vm` are
/// validity bits for the two ⊥-able slots. The circuit never reads the
/// validity bits; they only make the ⊥ encoding explicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FInputLayout {
    pub lambda: usize,
    pub ell: usize,
    pub n_out: usize,
}

impl FInputLayout {
    pub fn new(prf: &PrfSpec) -> Self {
        FInputLayout { lambda: prf.lambda, ell: prf.ell, n_out: prf.n_out }
    }

    /// Description width: |ct| = ℓ + n.
    pub fn desc_bits(&self) -> usize {
        self.ell + self.n_out
    }

    /// Data width: b, vK, k, otp, vm, m.
    pub fn data_bits(&self) -> usize {
        1 + 1 + self.lambda + self.n_out + 1 + self.n_out
    }

    /// Encodes the branch-select input `(1, ⊥, m)`.
    pub fn encode_message_branch(&self, m: &Bits) -> Bits {
        assert_eq!(m.len(), self.n_out);
        let mut bits = vec![true, false];
        bits.extend(std::iter::repeat(false).take(self.lambda + self.n_out));
        bits.push(true);
        bits.extend(m.iter());
        Bits::from_bools(bits)
    }

    /// Encodes the decrypt-branch input `(0, K, ⊥)`.
    pub fn encode_key_branch(&self, key_k: &Bits, key_otp: &Bits) -> Bits {
        assert_eq!(key_k.len(), self.lambda);
        assert_eq!(key_otp.len(), self.n_out);
        let mut bits = vec![false, true];
        bits.extend(key_k.iter());
        bits.extend(key_otp.iter());
        bits.push(false);
        bits.extend(std::iter::repeat(false).take(self.n_out));
        Bits::from_bools(bits)
    }

    /// Direct software evaluation of the selector: `b ? m : Dec(K, ct)`.
    pub fn reference_eval(&self, prf: &PrfSpec, ct_bits: &Bits, data: &Bits) -> Bits {
        assert_eq!(ct_bits.len(), self.desc_bits());
        assert_eq!(data.len(), self.data_bits());
        let b = data.get(0);
        if b {
            data.slice(2 + self.lambda + self.n_out + 1, self.n_out)
        } else {
            let k = data.slice(2, self.lambda);
            let otp = data.slice(2 + self.lambda, self.n_out);
            let r = ct_bits.slice(0, self.ell);
            let c2 = ct_bits.slice(self.ell, self.n_out);
            c2.xor(&prf.eval(&k, &r)).xor(&otp)
        }
    }
}

/// Builds the selector circuit `F(ct; b, K, m) = b ? m : SKE.Dec(K, ct)`
/// with the PRF realized as a (k, r)-indexed multiplexer over its truth
/// table. The ciphertext rides on the description input, so one circuit
/// serves every `ct`.
pub fn build_f_circuit(prf: &PrfSpec) -> Result<BooleanCircuit> {
    if !prf.is_table() {
        return Err(Error::InvalidArgument("circuit construction needs a table PRF".into()));
    }
    let layout = FInputLayout::new(prf);
    let est_gates = (1usize << (prf.lambda + prf.ell)) * (2 * (prf.lambda + prf.ell) + prf.n_out);
    if est_gates > GATE_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "selector circuit would need ~{est_gates} gates, budget {GATE_BUDGET}"
        )));
    }

    let mut b = Builder::new(layout.desc_bits(), layout.data_bits());
    let d_r: Vec<usize> = (0..prf.ell).collect();
    let d_c2: Vec<usize> = (prf.ell..prf.ell + prf.n_out).collect();
    let base = layout.desc_bits();
    let w_b = base;
    let w_k: Vec<usize> = (0..prf.lambda).map(|i| base + 2 + i).collect();
    let w_otp: Vec<usize> = (0..prf.n_out).map(|i| base + 2 + prf.lambda + i).collect();
    let w_m: Vec<usize> =
        (0..prf.n_out).map(|i| base + 2 + prf.lambda + prf.n_out + 1 + i).collect();

    // One selector per (κ, ρ): fires iff k = κ and d_r = ρ. Selectors are
    // mutually exclusive, so the multiplexer folds with XOR.
    let mut mux_terms: Vec<Vec<usize>> = vec![Vec::new(); prf.n_out];
    for kappa in 0..1u64 << prf.lambda {
        for rho in 0..1u64 << prf.ell {
            let entry = prf.table_entry(kappa, rho)?.clone();
            if entry.is_zero() {
                continue;
            }
            let mut matches = Vec::with_capacity(prf.lambda + prf.ell);
            for (i, &wire) in w_k.iter().enumerate() {
                matches.push(match_bit(&mut b, wire, (kappa >> (prf.lambda - 1 - i)) & 1 == 1));
            }
            for (i, &wire) in d_r.iter().enumerate() {
                matches.push(match_bit(&mut b, wire, (rho >> (prf.ell - 1 - i)) & 1 == 1));
            }
            let selector = b.and_all(&matches);
            for (j, bit) in entry.iter().enumerate() {
                if bit {
                    mux_terms[j].push(selector);
                }
            }
        }
    }

    // out_j = dec_j ⊕ (b ∧ (m_j ⊕ dec_j)) with dec_j = c2_j ⊕ PRF_j ⊕ otp_j.
    let mut outputs = Vec::with_capacity(prf.n_out);
    for j in 0..prf.n_out {
        let mut dec_terms = vec![d_c2[j], w_otp[j]];
        dec_terms.extend(&mux_terms[j]);
        let dec = b.xor_all(&dec_terms);
        let diff = b.xor(dec, w_m[j]);
        let gated = b.and(w_b, diff);
        outputs.push(b.xor(dec, gated));
    }
    b.circuit.outputs = outputs;
    b.circuit.validate()?;
    Ok(b.circuit)
}

/// Wire that is true iff `wire` equals the constant `value`.
fn match_bit(b: &mut Builder, wire: usize, value: bool) -> usize {
    if value {
        wire
    } else {
        b.push(Gate::Not(wire))
    }
}
