//! Independent numerical oracles.
//!
//! Everything here recomputes a quantity through a route different from
//! the production code so the two can be checked against each other: the
//! matrix exponential by plain series summation instead of the closed
//! form, ν̃ through the eigenvalues of iΩσ̃ or through the explicit
//! quadratic roots instead of the invariant formula, the determinant by
//! cofactor expansion instead of LU, and the scenario fidelities through
//! their factorised closed forms instead of the block determinant.

use nalgebra::Matrix4;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::gaussian::{apply_channel, beam_splitter, CovMat4, PtInvariants};
use crate::memory::MemoryChannel;
use crate::scenarios::InputStateParams;

/// Matrix exponential by direct Taylor-series summation.
///
/// Converges for any matrix; `terms` around 40 is ample for the rotation
/// generators used here (‖θJ‖ ≤ 2π).
pub fn expm_series(m: &Matrix4<f64>, terms: usize) -> Matrix4<f64> {
    let mut sum = Matrix4::identity();
    let mut term = Matrix4::identity();
    for k in 1..=terms {
        term = (term * m) / k as f64;
        sum += term;
    }
    sum
}

/// The canonical symplectic form Ω = ⊕ᵢ [[0, 1], [−1, 0]].
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// Smallest symplectic eigenvalue of the partially transposed CM through
/// an eigenvalue route: with σ̃ = ΛσΛ (Λ = diag(1,1,1,−1) reversing time
/// in mode 2), the moduli of the eigenvalues of iΩσ̃ equal the square
/// roots of the eigenvalues of `BᵀB` where `B = σ̃^{1/2}·Ω·σ̃^{1/2}`.
/// Only symmetric eigendecompositions are involved, so the computation is
/// robust; it shares no code with the invariant-based formula.
pub fn nu_tilde_eigen(sigma: &CovMat4) -> f64 {
    let lambda = Matrix4::from_diagonal(&[1.0, 1.0, 1.0, -1.0].into());
    let pt = lambda * sigma.matrix() * lambda;
    let root = symmetric_sqrt(&pt);
    let b = root * symplectic_form() * root;
    let t = b.transpose() * b;
    let sym = (t + t.transpose()) * 0.5;
    let eigs = nalgebra::SymmetricEigen::new(sym).eigenvalues;
    eigs.iter()
        .map(|v| v.max(0.0).sqrt())
        .fold(f64::INFINITY, f64::min)
}

/// Principal square root of a symmetric positive-definite 4×4 matrix.
fn symmetric_sqrt(m: &Matrix4<f64>) -> Matrix4<f64> {
    let eig = nalgebra::SymmetricEigen::new(*m);
    let mut d = Matrix4::zeros();
    for i in 0..4 {
        d[(i, i)] = eig.eigenvalues[i].max(0.0).sqrt();
    }
    eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// ν̃ as the square root of the smaller root of `x² − Δ̃x + det σ = 0`,
/// solved with the explicit quadratic formula.
pub fn nu_tilde_quadratic(inv: &PtInvariants) -> f64 {
    let disc = (inv.delta_tilde * inv.delta_tilde - 4.0 * inv.det_sigma).max(0.0);
    let root = 0.5 * (inv.delta_tilde - disc.sqrt());
    root.max(0.0).sqrt()
}

/// 4×4 determinant by Laplace expansion along the first row.
pub fn det4_cofactor(m: &Matrix4<f64>) -> f64 {
    let minor = |col: usize| -> f64 {
        let mut sub = [[0.0; 3]; 3];
        for (r, row) in (1..4).enumerate() {
            let mut cc = 0;
            for c in 0..4 {
                if c == col {
                    continue;
                }
                sub[r][cc] = m[(row, c)];
                cc += 1;
            }
        }
        sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
            - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
            + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0])
    };
    m[(0, 0)] * minor(0) - m[(0, 1)] * minor(1) + m[(0, 2)] * minor(2) - m[(0, 3)] * minor(3)
}

/// Closed-form fidelity of the store-entanglement state:
/// `1/F_a² = [1 + (y_p1+y_p2)/2 + (N₁/s)(ξ₁+ξ₂)²/4 + N₂s(ξ₁−ξ₂)²/4]
///          ·[1 + (y_q1+y_q2)/2 + (N₂/s)(ξ₁+ξ₂)²/4 + N₁s(ξ₁−ξ₂)²/4]`.
pub fn fidelity_a_closed_form(params: &InputStateParams, ch: &MemoryChannel) -> f64 {
    let (s, n1, n2) = (params.s, params.n1, params.n2);
    let sum_sq = (ch.xi1() + ch.xi2()).powi(2) / 4.0;
    let diff_sq = (ch.xi1() - ch.xi2()).powi(2) / 4.0;
    let p_factor = 1.0 + 0.5 * (ch.y_p1() + ch.y_p2()) + n1 / s * sum_sq + n2 * s * diff_sq;
    let q_factor = 1.0 + 0.5 * (ch.y_q1() + ch.y_q2()) + n2 / s * sum_sq + n1 * s * diff_sq;
    1.0 / (p_factor * q_factor).sqrt()
}

/// Closed-form fidelity of the store-squeezing state:
/// `1/F_b² = [1 + y_p1 + (N₁/s)ξ₁²]·[1 + y_q2 + (N₂/s)ξ₂²]`.
pub fn fidelity_b_closed_form(params: &InputStateParams, ch: &MemoryChannel) -> f64 {
    let (s, n1, n2) = (params.s, params.n1, params.n2);
    let p_factor = 1.0 + ch.y_p1() + n1 / s * ch.xi1() * ch.xi1();
    let q_factor = 1.0 + ch.y_q2() + n2 / s * ch.xi2() * ch.xi2();
    1.0 / (p_factor * q_factor).sqrt()
}

/// Random physical two-mode CM: a squeezed-thermal input rotated by a
/// random passive mixing angle and sent through a random physical
/// channel.
pub fn random_physical_cm(rng: &mut ChaCha8Rng) -> CovMat4 {
    let s: f64 = rng.gen_range(1.0..=6.0);
    let n1: f64 = rng.gen_range(1.0..=2.0);
    let n2: f64 = rng.gen_range(1.0..=2.0);
    let s0 = Matrix4::from_diagonal(&[s * n1, n1 / s, n2 / s, n2 * s].into());
    let r = beam_splitter(rng.gen_range(0.0..std::f64::consts::TAU));
    let mixed = CovMat4::new(r * s0 * r.transpose()).expect("rotation preserves CM validity");

    let xi1: f64 = rng.gen_range(0.6..=1.1);
    let xi2: f64 = rng.gen_range(0.6..=1.1);
    let floor = |xi: f64| (1.0 - xi * xi).max(0.0);
    let channel = MemoryChannel::new(
        xi1,
        xi2,
        floor(xi1) + rng.gen_range(0.0..=1.0),
        floor(xi1) + rng.gen_range(0.0..=1.0),
        floor(xi2) + rng.gen_range(0.0..=1.0),
        floor(xi2) + rng.gen_range(0.0..=1.0),
    )
    .expect("noise floors are non-negative");
    apply_channel(&mixed, &channel)
}
