//! Monogamy-of-entanglement games over real-orthogonal basis families.
//!
//! A strategy is a tripartite state ρ_ABC plus POVM families (B_x^θ),
//! (C_x^θ). The game value is the probability that Bob and Charlie both
//! guess the outcome of measuring A in a uniformly random basis θ:
//! `(1/|Θ|) Σ_θ Tr(Π^θ ρ)` with `Π^θ = Σ_x ψ_x^θ ⊗ B_x^θ ⊗ C_x^θ`.
//!
//! [`moe_seesaw`] is a block-coordinate ascent: each POVM update is the
//! exact linear maximization against its score operators (projector onto
//! the nonnegative eigenspace of the score difference for two outcomes,
//! realized pairwise for more), and the state update takes the top
//! eigenvector of the POVM-contracted average operator. The value never
//! decreases.

use crate::quantum::{hermitian_eigen, kron, BasisFamily, CMat, DensityMatrix, Povm, C64};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use std::sync::Arc;

/// A real-orthogonal monogamy game: the basis family fixes both the order
/// n and the index set Θ.
#[derive(Debug, Clone)]
pub struct MoeGame {
    family: Arc<BasisFamily>,
}

impl MoeGame {
    pub fn new(family: Arc<BasisFamily>) -> Self {
        MoeGame { family }
    }

    pub fn wiesner(n: usize) -> Result<Self> {
        Ok(MoeGame { family: Arc::new(crate::quantum::wiesner_family(n)?) })
    }

    pub fn family(&self) -> &Arc<BasisFamily> {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    /// Projector onto basis state x of basis θ, lifted to complex.
    fn projector(&self, theta: usize, x: usize) -> CMat {
        let col = self.family.matrix(theta).column(x);
        CMat::from_fn(col.len(), col.len(), |i, j| C64::new(col[i] * col[j], 0.0))
    }
}

/// A strategy: tripartite state plus per-θ POVM families over outcomes.
#[derive(Debug, Clone)]
pub struct MoeStrategy {
    pub rho: DensityMatrix,
    pub dim_b: usize,
    pub dim_c: usize,
    pub bob: Vec<Povm>,
    pub charlie: Vec<Povm>,
}

impl MoeStrategy {
    pub fn validate(&self, game: &MoeGame) -> Result<()> {
        let da = game.family.dim();
        let thetas = game.family.num_bases();
        if self.rho.dim() != da * self.dim_b * self.dim_c {
            return Err(Error::DimensionMismatch(format!(
                "strategy state dim {} vs {}·{}·{}",
                self.rho.dim(),
                da,
                self.dim_b,
                self.dim_c
            )));
        }
        if self.bob.len() != thetas || self.charlie.len() != thetas {
            return Err(Error::DimensionMismatch("one POVM per basis index required".into()));
        }
        for povm in self.bob.iter().chain(&self.charlie) {
            if povm.outcomes() != da {
                return Err(Error::DimensionMismatch("POVM outcomes must cover the message space".into()));
            }
        }
        Ok(())
    }

    /// Random strategy: a normalized Ginibre state and Gram-normalized
    /// random POVMs. Used both for seesaw starts and falsification sweeps.
    pub fn random<R: Rng + ?Sized>(game: &MoeGame, dim_b: usize, dim_c: usize, rng: &mut R) -> Self {
        let da = game.family.dim();
        let dim = da * dim_b * dim_c;
        let g = CMat::from_fn(dim, dim, |_, _| {
            C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
        });
        let m = &g * g.adjoint();
        let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
        let rho = DensityMatrix::from_matrix(m / C64::new(tr, 0.0)).expect("Ginibre state is valid");

        let thetas = game.family.num_bases();
        let bob = (0..thetas).map(|_| random_povm(dim_b, da, rng)).collect();
        let charlie = (0..thetas).map(|_| random_povm(dim_c, da, rng)).collect();
        MoeStrategy { rho, dim_b, dim_c, bob, charlie }
    }
}

fn random_povm<R: Rng + ?Sized>(dim: usize, outcomes: usize, rng: &mut R) -> Povm {
    let gram: Vec<CMat> = (0..outcomes)
        .map(|_| {
            let g = CMat::from_fn(dim, dim, |_, _| {
                C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
            });
            &g * g.adjoint() + CMat::identity(dim, dim) * C64::new(1e-9, 0.0)
        })
        .collect();
    let mut total = CMat::zeros(dim, dim);
    for a in &gram {
        total += a;
    }
    let inv_sqrt = hermitian_power(&total, -0.5);
    let elements = gram.iter().map(|a| &inv_sqrt * a * &inv_sqrt).collect();
    Povm::new(dim, elements).expect("Gram normalization yields a POVM")
}

/// Exact game value for a strategy.
pub fn moe_value(game: &MoeGame, strategy: &MoeStrategy) -> Result<f64> {
    strategy.validate(game)?;
    let thetas = game.family.num_bases();
    let mut total = 0.0;
    for theta in 0..thetas {
        let pi = game_projector(game, strategy, theta);
        total += super::trace_product_re(&pi, strategy.rho.matrix());
    }
    Ok((total / thetas as f64).clamp(0.0, 1.0))
}

fn game_projector(game: &MoeGame, strategy: &MoeStrategy, theta: usize) -> CMat {
    let dim = game.family.dim() * strategy.dim_b * strategy.dim_c;
    let mut pi = CMat::zeros(dim, dim);
    for x in 0..game.family.dim() {
        let p = game.projector(theta, x);
        pi += kron(&kron(&p, strategy.bob[theta].element(x)), strategy.charlie[theta].element(x));
    }
    pi
}

/// Result of a seesaw run; `history` is the value after each iteration,
/// starting with the initial random strategy.
#[derive(Debug, Clone)]
pub struct SeesawResult {
    pub strategy: MoeStrategy,
    pub value: f64,
    pub history: Vec<f64>,
}

/// Block-coordinate ascent on (Bob POVMs, Charlie POVMs, state).
pub fn moe_seesaw(
    game: &MoeGame,
    dim_b: usize,
    dim_c: usize,
    iterations: usize,
    seed: u64,
) -> Result<SeesawResult> {
    if dim_b == 0 || dim_c == 0 {
        return Err(Error::InvalidArgument("register dimensions must be at least 1".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut strategy = MoeStrategy::random(game, dim_b, dim_c, &mut rng);
    let mut history = vec![moe_value(game, &strategy)?];

    let da = game.family.dim();
    let thetas = game.family.num_bases();
    for _ in 0..iterations {
        // Bob block: for each θ maximize Σ_x Tr(B_x S_x) with
        // S_x = Tr_{A,C}[(ψ_x ⊗ I ⊗ C_x) ρ].
        for theta in 0..thetas {
            let scores: Vec<CMat> = (0..da)
                .map(|x| {
                    conditional_on_b(
                        strategy.rho.matrix(),
                        (da, dim_b, dim_c),
                        &game.projector(theta, x),
                        strategy.charlie[theta].element(x),
                    )
                })
                .collect();
            strategy.bob[theta] = optimal_povm(&strategy.bob[theta], &scores);
        }
        // Charlie block.
        for theta in 0..thetas {
            let scores: Vec<CMat> = (0..da)
                .map(|x| {
                    conditional_on_c(
                        strategy.rho.matrix(),
                        (da, dim_b, dim_c),
                        &game.projector(theta, x),
                        strategy.bob[theta].element(x),
                    )
                })
                .collect();
            strategy.charlie[theta] = optimal_povm(&strategy.charlie[theta], &scores);
        }
        // State block: top eigenvector of the averaged projector.
        let dim = da * dim_b * dim_c;
        let mut avg = CMat::zeros(dim, dim);
        for theta in 0..thetas {
            avg += game_projector(game, &strategy, theta);
        }
        avg /= C64::new(thetas as f64, 0.0);
        let (_, vectors) = hermitian_eigen(&hermitize(&avg));
        let top = vectors.column(dim - 1).into_owned();
        strategy.rho = DensityMatrix::from_matrix_unchecked(&top * top.adjoint());

        history.push(moe_value(game, &strategy)?);
    }

    let value = *history.last().expect("history is nonempty");
    Ok(SeesawResult { strategy, value, history })
}

/// Score operator on B: `T[b', b] = Σ P[a,a'] Q[c,c'] ρ[(a',b',c'),(a,b,c)]`,
/// so that `Tr(B T) = Tr[(P ⊗ B ⊗ Q) ρ]`.
fn conditional_on_b(rho: &CMat, dims: (usize, usize, usize), p: &CMat, q: &CMat) -> CMat {
    let (da, db, dc) = dims;
    let idx = |a: usize, b: usize, c: usize| (a * db + b) * dc + c;
    CMat::from_fn(db, db, |b_row, b_col| {
        // T[b_row, b_col] sums over a, a', c, c' with b' = b_row, b = b_col.
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..da {
            for a2 in 0..da {
                for c_idx in 0..dc {
                    for c2 in 0..dc {
                        acc += p[(a, a2)] * q[(c_idx, c2)] * rho[(idx(a2, b_row, c2), idx(a, b_col, c_idx))];
                    }
                }
            }
        }
        acc
    })
}

/// Score operator on C, mirroring [`conditional_on_b`].
fn conditional_on_c(rho: &CMat, dims: (usize, usize, usize), p: &CMat, b: &CMat) -> CMat {
    let (da, db, dc) = dims;
    let idx = |a: usize, bq: usize, c: usize| (a * db + bq) * dc + c;
    CMat::from_fn(dc, dc, |c_row, c_col| {
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..da {
            for a2 in 0..da {
                for b_idx in 0..db {
                    for b2 in 0..db {
                        acc += p[(a, a2)] * b[(b_idx, b2)] * rho[(idx(a2, b2, c_row), idx(a, b_idx, c_col))];
                    }
                }
            }
        }
        acc
    })
}

fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Projector onto the nonnegative eigenspace of a Hermitian matrix.
fn nonnegative_projector(m: &CMat) -> CMat {
    let (values, vectors) = hermitian_eigen(&hermitize(m));
    let dim = m.nrows();
    let mut proj = CMat::zeros(dim, dim);
    for (i, &v) in values.iter().enumerate() {
        if v >= 0.0 {
            let col = vectors.column(i);
            proj += col * col.adjoint();
        }
    }
    proj
}

/// Hermitian PSD matrix power via eigendecomposition; negative eigenvalues
/// from roundoff are clipped to zero.
fn hermitian_power(m: &CMat, exponent: f64) -> CMat {
    let (values, vectors) = hermitian_eigen(&hermitize(m));
    let dim = m.nrows();
    let mut out = CMat::zeros(dim, dim);
    for (i, &v) in values.iter().enumerate() {
        let scaled = if v <= 0.0 {
            0.0
        } else {
            v.powf(exponent)
        };
        let col = vectors.column(i);
        out += col * col.adjoint() * C64::new(scaled, 0.0);
    }
    out
}

/// Maximizes `Σ_x Tr(B_x S_x)` over POVMs. Two outcomes: the exact winner
/// projector onto the nonnegative eigenspace of `S_0 − S_1`. More outcomes:
/// monotone pairwise rebalancing with the same projector rule inside each
/// pair.
fn optimal_povm(current: &Povm, scores: &[CMat]) -> Povm {
    let dim = current.dim();
    if scores.len() == 2 {
        let winner = nonnegative_projector(&(&scores[0] - &scores[1]));
        let complement = CMat::identity(dim, dim) - &winner;
        return Povm::new(dim, vec![winner, complement]).expect("projector pair is a POVM");
    }
    let mut elements: Vec<CMat> = (0..scores.len()).map(|x| current.element(x).clone()).collect();
    for _sweep in 0..2 {
        for x in 0..scores.len() {
            for y in (x + 1)..scores.len() {
                let mass = &elements[x] + &elements[y];
                let sqrt = hermitian_power(&mass, 0.5);
                let pivot = &sqrt * (&scores[x] - &scores[y]) * &sqrt;
                let winner = nonnegative_projector(&pivot);
                let new_x = &sqrt * winner * &sqrt;
                elements[y] = &mass - &new_x;
                elements[x] = new_x;
            }
        }
    }
    Povm::new(dim, elements).expect("pairwise rebalancing preserves the POVM constraints")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attacks::midway_moe_strategy;
    use crate::quantum::{PureState, TOL_EXACT};

    const BOUND: f64 = 0.853_553_390_593_273_7; // 1/2 + 1/(2√2)

    #[test]
    fn fixed_zero_state_and_guesses() {
        // ρ_A = |0⟩⟨0|, both always answer 0: (1 + 1/2) / 2.
        let game = MoeGame::wiesner(1).unwrap();
        let strategy = MoeStrategy {
            rho: PureState::basis_state(2, 0).density(),
            dim_b: 1,
            dim_c: 1,
            bob: vec![Povm::fixed_guess(1, 2, 0), Povm::fixed_guess(1, 2, 0)],
            charlie: vec![Povm::fixed_guess(1, 2, 0), Povm::fixed_guess(1, 2, 0)],
        };
        let v = moe_value(&game, &strategy).unwrap();
        assert!((v - 0.75).abs() <= TOL_EXACT);
    }

    #[test]
    fn midway_strategy_saturates_the_bound() {
        let game = MoeGame::wiesner(1).unwrap();
        let strategy = midway_moe_strategy(1).unwrap();
        let v = moe_value(&game, &strategy).unwrap();
        assert!((v - BOUND).abs() <= 1e-9, "value {v}");
    }

    #[test]
    fn random_strategies_respect_the_bound() {
        let game = MoeGame::wiesner(1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for trial in 0..500 {
            let dim_b = 1 + (trial % 2);
            let dim_c = 1 + (trial / 2 % 2);
            let s = MoeStrategy::random(&game, dim_b, dim_c, &mut rng);
            let v = moe_value(&game, &s).unwrap();
            assert!(v <= BOUND + 1e-6, "trial {trial} value {v}");
        }
    }

    #[test]
    fn tensor_power_of_midway_squares_the_value() {
        let game = MoeGame::wiesner(2).unwrap();
        let single = midway_moe_strategy(1).unwrap();
        let rho = crate::quantum::tensor(&single.rho, &single.rho);
        let strategy = MoeStrategy {
            rho,
            dim_b: 1,
            dim_c: 1,
            bob: (0..4).map(|_| Povm::fixed_guess(1, 4, 0)).collect(),
            charlie: (0..4).map(|_| Povm::fixed_guess(1, 4, 0)).collect(),
        };
        let v = moe_value(&game, &strategy).unwrap();
        assert!((v - BOUND * BOUND).abs() <= 1e-9, "value {v}");
    }

    #[test]
    fn seesaw_reaches_the_single_qubit_optimum() {
        let game = MoeGame::wiesner(1).unwrap();
        let result = moe_seesaw(&game, 1, 1, 200, 5).unwrap();
        assert!(result.value >= 0.8535, "value {}", result.value);
    }

    #[test]
    fn seesaw_history_is_monotone() {
        let game = MoeGame::wiesner(1).unwrap();
        let result = moe_seesaw(&game, 2, 2, 30, 6).unwrap();
        for w in result.history.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "history decreased: {} -> {}", w[0], w[1]);
        }
    }

    #[test]
    fn seesaw_value_matches_returned_strategy() {
        let game = MoeGame::wiesner(1).unwrap();
        let result = moe_seesaw(&game, 2, 1, 50, 7).unwrap();
        let recomputed = moe_value(&game, &result.strategy).unwrap();
        assert!((result.value - recomputed).abs() <= 1e-12);
    }

    #[test]
    fn seesaw_restarts_agree() {
        let game = MoeGame::wiesner(1).unwrap();
        let values: Vec<f64> =
            (0..5).map(|seed| moe_seesaw(&game, 1, 1, 200, seed).unwrap().value).collect();
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max - min <= 1e-4, "spread {} too wide: {values:?}", max - min);
    }
}
