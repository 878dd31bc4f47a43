//! The cloning experiment, run exactly or by Monte Carlo.
//!
//! Phase 1: the adversary splits the ciphertext register with a CPTP map
//! into registers for Bob and Charlie. Phase 2: the key is revealed to both
//! (as identical classical data), each measures a key-indexed POVM, and the
//! adversary wins iff both outputs equal the message.
//!
//! Exact mode averages over every key, message, and adversary coin;
//! Monte Carlo mode samples cells and reports a Wilson 95% half-width.
//! Exact averages accumulate through [`accum::ExactSum`], so algebraically
//! equal experiments (hybrids and their reduction rewrites) produce
//! bit-identical values.

pub mod accum;
pub mod moe;

pub use moe::{moe_value, MoeGame, MoeStrategy, SeesawResult};

use crate::bits::Bits;
use crate::conjugate::{ConjugateUe, OtueKey};
use crate::quantum::{CMat, CVec, KrausChannel, Povm, PureState};
use crate::{Error, Result};
use accum::ExactSum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exact enumeration refuses beyond this many (key, message) pairs.
pub const EXACT_PAIR_BUDGET: u64 = 1 << 20;
/// Overall cell cap once adversary coins are included.
pub const EXACT_CELL_BUDGET: u64 = 1 << 24;

/// z for a 95% interval.
const WILSON_Z: f64 = 1.959_963_984_540_054;

/// How an experiment was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentMode {
    Exact,
    MonteCarlo,
}

impl std::fmt::Display for ExperimentMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExperimentMode::Exact => write!(f, "exact"),
            ExperimentMode::MonteCarlo => write!(f, "monte_carlo"),
        }
    }
}

/// Outcome of one experiment evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub success_probability: f64,
    pub n: usize,
    pub mode: ExperimentMode,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub half_width: Option<f64>,
}

impl ExperimentReport {
    pub const CSV_HEADER: &'static str = "n,mode,success,halfwidth,implied_t,seed";

    /// CSV row `n,mode,success,halfwidth,implied_t,seed` with 9 significant
    /// digits.
    pub fn to_csv_row(&self) -> String {
        let implied = implied_t(self.success_probability, self.n).map(sig9).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.mode,
            sig9(self.success_probability),
            self.half_width.map(sig9).unwrap_or_default(),
            implied,
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
        )
    }
}

/// 9 significant digits, scientific.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// The t for which success probability p equals `2^(−n+t)`.
pub fn implied_t(p: f64, n: usize) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::InvalidArgument(format!("success probability {p} must be positive")));
    }
    if p > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!("success probability {p} exceeds 1")));
    }
    Ok(n as f64 + p.log2())
}

/// Wilson 95% half-width for `successes` out of `trials`.
pub fn wilson_half_width(successes: u64, trials: u64) -> f64 {
    assert!(trials > 0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n)
}

pub type SplitFn<C> = Box<dyn Fn(u64, &C) -> KrausChannel + Send + Sync>;
pub type PovmFn<C, K> = Box<dyn Fn(u64, &C, &K) -> Povm + Send + Sync>;

/// A splitting adversary: a CPTP map from the ciphertext register to
/// Bob ⊗ Charlie, plus POVM families indexed by the revealed key.
///
/// `C` is the classical part of the ciphertext handed to the adversary in
/// phase 1 (`()` for the bare one-time scheme) and `K` the revealed key.
/// `rand_bits` is the width of a shared classical coin ω given to all three
/// parties; exact evaluation averages over it, Monte Carlo samples it.
pub struct CloningAdversary<C, K> {
    pub input_dim: usize,
    pub bob_dim: usize,
    pub charlie_dim: usize,
    pub rand_bits: u32,
    pub split: SplitFn<C>,
    pub bob: PovmFn<C, K>,
    pub charlie: PovmFn<C, K>,
}

/// Adversary against the bare one-time scheme.
pub type OtueAdversary = CloningAdversary<(), OtueKey>;

impl<C, K> CloningAdversary<C, K> {
    pub fn coin_space(&self) -> u64 {
        1u64 << self.rand_bits
    }

    /// Probability that both parties output `target` in the cell
    /// (ω, classical ciphertext, key, quantum ciphertext).
    pub fn cell_success(&self, omega: u64, classical: &C, key: &K, ct: &PureState, target: usize) -> f64 {
        let split = (self.split)(omega, classical);
        debug_assert_eq!(split.in_dim(), self.input_dim);
        debug_assert_eq!(split.out_dim(), self.bob_dim * self.charlie_dim);
        let branches = self.branch_matrices(&split, ct);
        let bob = (self.bob)(omega, classical, key);
        let charlie = (self.charlie)(omega, classical, key);
        let q: f64 = branches
            .iter()
            .map(|w| joint_outcome_weight(w, bob.element(target), charlie.element(target)))
            .sum();
        q.clamp(0.0, 1.0)
    }

    /// Samples the pair of outputs (m_B, m_C) for one cell.
    pub fn sample_outputs<R: Rng + ?Sized>(
        &self,
        omega: u64,
        classical: &C,
        key: &K,
        ct: &PureState,
        rng: &mut R,
    ) -> (usize, usize) {
        let split = (self.split)(omega, classical);
        let branches = self.branch_matrices(&split, ct);
        let bob = (self.bob)(omega, classical, key);
        let charlie = (self.charlie)(omega, classical, key);

        // Bob's marginal: p(b) = Tr(B_b Σ_j W_j W_j†).
        let mut reduced_b = CMat::zeros(self.bob_dim, self.bob_dim);
        for w in &branches {
            reduced_b += w * w.adjoint();
        }
        let probs_b: Vec<f64> = (0..bob.outcomes())
            .map(|b| trace_product_re(bob.element(b), &reduced_b).max(0.0))
            .collect();
        let b = crate::quantum::sample_from_weights(&probs_b, rng);

        // Charlie conditioned on Bob's outcome: p(c|b) ∝ Σ_{i,k} N[i,k] C_c[i,k]
        // with N = Σ_j W_j† B_b W_j.
        let mut conditional = CMat::zeros(self.charlie_dim, self.charlie_dim);
        for w in &branches {
            conditional += w.adjoint() * bob.element(b) * w;
        }
        let probs_c: Vec<f64> = (0..charlie.outcomes())
            .map(|c| {
                let el = charlie.element(c);
                el.iter().zip(conditional.iter()).map(|(x, y)| (x * y).re).sum::<f64>().max(0.0)
            })
            .collect();
        let c = crate::quantum::sample_from_weights(&probs_c, rng);
        (b, c)
    }

    fn branch_matrices(&self, split: &KrausChannel, ct: &PureState) -> Vec<CMat> {
        split
            .apply_to_pure(ct)
            .expect("split channel dimension checked against ciphertext")
            .into_iter()
            .map(|w| reshape_branch(&w, self.bob_dim, self.charlie_dim))
            .collect()
    }
}

/// `Re Tr(A B)` for same-size square matrices.
pub(crate) fn trace_product_re(a: &CMat, b: &CMat) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for k in 0..n {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}

/// Reshapes a B⊗C vector into the dB×dC matrix W with `W[b, c] = w[b·dC + c]`.
fn reshape_branch(w: &CVec, dim_b: usize, dim_c: usize) -> CMat {
    CMat::from_fn(dim_b, dim_c, |b, c| w[b * dim_c + c])
}

/// `Re ⟨w|(B ⊗ C)|w⟩ = Re Tr(B · W Cᵀ W†)` for one branch.
fn joint_outcome_weight(w: &CMat, b_el: &CMat, c_el: &CMat) -> f64 {
    let m = w * c_el.transpose() * w.adjoint();
    trace_product_re(b_el, &m)
}

/// Exact cloning-experiment success: the average over every key, every
/// uniform message, and every adversary coin of the probability that both
/// parties output the message.
pub fn cloning_success_exact(ue: &ConjugateUe, adv: &OtueAdversary) -> Result<ExperimentReport> {
    let n = ue.n();
    let family = ue.family();
    let messages = 1u64 << n;
    let pairs = family.num_bases() as u64 * messages * messages;
    if pairs > EXACT_PAIR_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{pairs} (key, message) pairs exceed {EXACT_PAIR_BUDGET}; use Monte Carlo mode"
        )));
    }
    let cells = pairs * adv.coin_space();
    if cells > EXACT_CELL_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{cells} cells including adversary coins exceed {EXACT_CELL_BUDGET}; use Monte Carlo mode"
        )));
    }
    if adv.input_dim != family.dim() {
        return Err(Error::DimensionMismatch(format!(
            "adversary expects input dim {}, scheme produces {}",
            adv.input_dim,
            family.dim()
        )));
    }

    let weight = 1.0 / cells as f64;
    let keys: Vec<OtueKey> = ue.all_keys().collect();
    let sum = (0..cells)
        .into_par_iter()
        .fold(ExactSum::new, |mut acc, cell| {
            let omega = cell % adv.coin_space();
            let rest = cell / adv.coin_space();
            let m_index = rest % messages;
            let key = &keys[(rest / messages) as usize];
            let m = Bits::from_index(m_index, n);
            let ct = ue.encrypt_pure(key, &m).expect("message width matches scheme");
            let q = adv.cell_success(omega, &(), key, &ct, m_index as usize);
            acc.add(q * weight);
            acc
        })
        .reduce(ExactSum::new, |mut a, b| {
            a.merge(b);
            a
        });

    Ok(ExperimentReport {
        success_probability: sum.value().clamp(0.0, 1.0),
        n,
        mode: ExperimentMode::Exact,
        trials: None,
        seed: None,
        half_width: None,
    })
}

/// Monte Carlo cloning-experiment success with one independently seeded RNG
/// per trial (stream = trial index), so reports are reproducible and
/// independent of thread count.
pub fn cloning_success_mc(
    ue: &ConjugateUe,
    adv: &OtueAdversary,
    trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if adv.input_dim != ue.family().dim() {
        return Err(Error::DimensionMismatch("adversary input dim vs scheme dim".into()));
    }
    let n = ue.n();
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let key = ue.setup(&mut rng);
            let m_index = rng.random_range(0..1u64 << n);
            let omega = rng.random_range(0..adv.coin_space());
            let m = Bits::from_index(m_index, n);
            let ct = ue.encrypt_pure(&key, &m).expect("message width matches scheme");
            let (b, c) = adv.sample_outputs(omega, &(), &key, &ct, &mut rng);
            (b as u64 == m_index && c as u64 == m_index) as u64
        })
        .sum();

    Ok(ExperimentReport {
        success_probability: successes as f64 / trials as f64,
        n,
        mode: ExperimentMode::MonteCarlo,
        trials: Some(trials),
        seed: Some(seed),
        half_width: Some(wilson_half_width(successes, trials)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attacks::{build_cloner_adversary, trivial_adversary};

    #[test]
    fn trivial_adversary_success_is_two_to_minus_n() {
        for n in 1..=3usize {
            let ue = ConjugateUe::wiesner(n).unwrap();
            let adv = trivial_adversary(n);
            let report = cloning_success_exact(&ue, &adv).unwrap();
            assert_eq!(report.success_probability, 0.5f64.powi(n as i32), "n = {n}");
            assert_eq!(implied_t(report.success_probability, n).unwrap(), 0.0);
        }
    }

    #[test]
    fn fixed_outputs_adversary_success_is_two_to_minus_n() {
        // Both parties ignore their registers and answer 0.
        let n = 2;
        let ue = ConjugateUe::wiesner(n).unwrap();
        let dim = 1 << n;
        let adv = OtueAdversary {
            input_dim: dim,
            bob_dim: dim,
            charlie_dim: 1,
            rand_bits: 0,
            split: Box::new(move |_, _| KrausChannel::identity(dim)),
            bob: Box::new(move |_, _, _| Povm::fixed_guess(dim, dim, 0)),
            charlie: Box::new(move |_, _, _| Povm::fixed_guess(1, dim, 0)),
        };
        let report = cloning_success_exact(&ue, &adv).unwrap();
        assert_eq!(report.success_probability, 0.25);
    }

    #[test]
    fn exact_budget_is_enforced() {
        let ue = ConjugateUe::wiesner(1).unwrap();
        let mut adv = trivial_adversary(1);
        adv.rand_bits = 30;
        assert!(matches!(cloning_success_exact(&ue, &adv), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn mc_matches_exact_for_trivial_adversary() {
        let ue = ConjugateUe::wiesner(1).unwrap();
        let adv = trivial_adversary(1);
        let report = cloning_success_mc(&ue, &adv, 100_000, 21).unwrap();
        assert!((report.success_probability - 0.5).abs() < 0.01);
        assert!(report.half_width.unwrap() < 0.005);
    }

    #[test]
    fn mc_is_reproducible_per_seed() {
        let ue = ConjugateUe::wiesner(1).unwrap();
        let adv = build_cloner_adversary(1);
        let a = cloning_success_mc(&ue, &adv, 2000, 77).unwrap();
        let b = cloning_success_mc(&ue, &adv, 2000, 77).unwrap();
        assert_eq!(a.success_probability.to_bits(), b.success_probability.to_bits());
        assert_eq!(a.half_width, b.half_width);
    }

    #[test]
    fn mc_covers_exact_value_for_most_seeds() {
        let ue = ConjugateUe::wiesner(1).unwrap();
        let adv = build_cloner_adversary(1);
        let exact = cloning_success_exact(&ue, &adv).unwrap().success_probability;
        let mut covered = 0;
        for seed in 0..20u64 {
            let mc = cloning_success_mc(&ue, &adv, 20_000, seed).unwrap();
            if (mc.success_probability - exact).abs() <= mc.half_width.unwrap() {
                covered += 1;
            }
        }
        assert!(covered >= 19, "only {covered}/20 seeds covered the exact value");
    }

    #[test]
    fn implied_t_reference_points() {
        assert_eq!(implied_t(0.5, 1).unwrap(), 0.0);
        let half_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((implied_t(half_sqrt2, 1).unwrap() - 0.5).abs() <= 1e-12);
        let f = 0.5 + 0.5 * half_sqrt2;
        for n in 1..=4usize {
            let t = implied_t(f.powi(n as i32), n).unwrap();
            let expect = n as f64 * (1.0 + half_sqrt2).log2();
            assert!((t - expect).abs() <= 1e-9, "n = {n}");
        }
        assert!(implied_t(0.0, 1).is_err());
    }

    #[test]
    fn csv_row_shape() {
        let report = ExperimentReport {
            success_probability: 0.5,
            n: 1,
            mode: ExperimentMode::Exact,
            trials: None,
            seed: None,
            half_width: None,
        };
        assert_eq!(report.to_csv_row(), "1,exact,5.00000000e-1,,0.00000000e0,");
    }

    #[test]
    fn report_json_round_trip() {
        let report = ExperimentReport {
            success_probability: 0.25,
            n: 2,
            mode: ExperimentMode::MonteCarlo,
            trials: Some(1000),
            seed: Some(7),
            half_width: Some(0.01),
        };
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"mode\":\"monte_carlo\""));
        let back: ExperimentReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.success_probability, report.success_probability);
        assert_eq!(back.trials, report.trials);
    }
}
