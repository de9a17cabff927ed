//! Covariance-matrix algebra for two bosonic modes.
//!
//! Mode ordering is `(q₁, p₁, q₂, p₂)` and all variances are in units of
//! vacuum noise, so the vacuum state has covariance matrix (CM) equal to
//! the identity. Entanglement of a two-mode Gaussian state is decided by
//! the smallest symplectic eigenvalue ν̃ of the partially transposed CM:
//! the state is entangled iff ν̃ < 1, and the logarithmic negativity is
//! `E_N = max(0, −log₂ ν̃)` ebits.
//!
//! ν̃ is computed from the two partial-transpose invariants `det σ` and
//! `Δ̃(σ) = det α + det β − 2 det γ` (α, β, γ the 2×2 blocks of σ) through
//! `2ν̃² = Δ̃ − √(Δ̃² − 4 det σ)`, i.e. ν̃² is the smaller root of
//! `x² − Δ̃x + det σ = 0`.

use nalgebra::{Matrix2, Matrix4};

use crate::memory::MemoryChannel;
use crate::{Error, Result};

/// Symmetry tolerance for accepting a matrix as a CM.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Discriminants in `[-DISC_CLAMP, 0)` are clamped to zero; anything below
/// is rejected as a non-CM input.
pub const DISC_CLAMP: f64 = 1e-9;

/// 4×4 real symmetric covariance matrix of a two-mode Gaussian state.
///
/// Construction checks symmetry (entrywise to 1e-12) and strictly positive
/// diagonal entries, nothing more. In particular physicality (the
/// Robertson–Schrödinger inequality) is *not* enforced: some intermediate
/// matrices handled by the analysis deliberately fail it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMat4 {
    m: Matrix4<f64>,
}

impl CovMat4 {
    /// Validate and wrap a 4×4 matrix.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        for j in 0..4 {
            let d = m[(j, j)];
            if !d.is_finite() || d <= 0.0 {
                return Err(Error::NonPositiveDiagonal { index: j, value: d });
            }
            for k in (j + 1)..4 {
                let diff = (m[(j, k)] - m[(k, j)]).abs();
                if diff.is_nan() || diff > SYMMETRY_TOL {
                    return Err(Error::Asymmetric {
                        row: j,
                        col: k,
                        diff,
                    });
                }
            }
        }
        Ok(Self { m })
    }

    /// Wrap a matrix known to be symmetric with positive diagonal.
    pub(crate) fn from_symmetric_unchecked(m: Matrix4<f64>) -> Self {
        debug_assert!(Self::new(m).is_ok(), "internal CM construction violated invariants");
        Self { m }
    }

    /// CM with the given main diagonal (all correlations zero).
    pub fn from_diagonal(d: [f64; 4]) -> Result<Self> {
        Self::new(Matrix4::from_diagonal(&d.into()))
    }

    /// The vacuum state: identity matrix.
    pub fn vacuum() -> Self {
        Self {
            m: Matrix4::identity(),
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.m[(row, col)]
    }

    /// 2×2 block decomposition (α, β, γ).
    pub fn blocks(&self) -> BlockDecomposition {
        BlockDecomposition {
            alpha: self.m.fixed_view::<2, 2>(0, 0).into_owned(),
            beta: self.m.fixed_view::<2, 2>(2, 2).into_owned(),
            gamma: self.m.fixed_view::<2, 2>(0, 2).into_owned(),
        }
    }

    /// Partially transposed symplectic invariants (det σ, Δ̃).
    pub fn pt_invariants(&self) -> PtInvariants {
        let b = self.blocks();
        PtInvariants {
            det_sigma: self.m.determinant(),
            delta_tilde: det2(&b.alpha) + det2(&b.beta) - 2.0 * det2(&b.gamma),
        }
    }

    /// Largest absolute entrywise difference to another CM.
    pub fn max_abs_diff(&self, other: &CovMat4) -> f64 {
        (self.m - other.m).abs().max()
    }

    /// Full figure-of-merit triple (ν̃, E_N, F) for this state.
    pub fn metrics(&self) -> Result<ScenarioMetrics> {
        let nu = nu_tilde(&self.pt_invariants())?;
        Ok(ScenarioMetrics {
            nu_tilde: nu,
            log_neg: log_negativity(nu)?,
            fidelity: teleportation_fidelity(self)?,
        })
    }
}

impl std::ops::Index<(usize, usize)> for CovMat4 {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.m[idx]
    }
}

/// 2×2 blocks of a two-mode CM: σ = [[α, γ], [γᵀ, β]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockDecomposition {
    /// Mode-1 block.
    pub alpha: Matrix2<f64>,
    /// Mode-2 block.
    pub beta: Matrix2<f64>,
    /// Upper-right cross block.
    pub gamma: Matrix2<f64>,
}

impl BlockDecomposition {
    /// Reassemble the source CM from the blocks.
    pub fn assemble(&self) -> CovMat4 {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.alpha);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.beta);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.gamma);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&self.gamma.transpose());
        CovMat4::from_symmetric_unchecked(m)
    }
}

/// Partially transposed symplectic invariants of a two-mode CM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtInvariants {
    /// det σ.
    pub det_sigma: f64,
    /// Δ̃ = det α + det β − 2 det γ.
    pub delta_tilde: f64,
}

/// The three figures of merit of one final state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioMetrics {
    /// Smallest PT symplectic eigenvalue; the state is entangled iff < 1.
    pub nu_tilde: f64,
    /// Logarithmic negativity in ebits, `max(0, −log₂ ν̃)`.
    pub log_neg: f64,
    /// Coherent-state teleportation fidelity of the state as a shared
    /// resource; 1/2 is the classical threshold.
    pub fidelity: f64,
}

fn det2(m: &Matrix2<f64>) -> f64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// Phase-space rotation `e^{θJ}` generated by the antisymmetric
/// `J = [[0, I₂], [−I₂, 0]]` (entries `J_jk = δ_{j+2,k} − δ_{j,k+2}`).
///
/// Since J² = −1 the exponential closes to
/// `[[cosθ·I₂, sinθ·I₂], [−sinθ·I₂, cosθ·I₂]]`; θ = ±π/4 is the 50:50
/// beam-splitter. The result is orthogonal and symplectic.
pub fn beam_splitter(theta: f64) -> Matrix4<f64> {
    assert!(theta.is_finite(), "beam-splitter angle must be finite");
    let (c, s) = (theta.cos(), theta.sin());
    Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, s, //
        -s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    )
}

/// Apply the Gaussian memory channel: `σ → XσXᵀ + Y` with
/// `X = diag(ξ₁,ξ₁,ξ₂,ξ₂)`, `Y = diag(y_q1,y_p1,y_q2,y_p2)`.
///
/// Computed entrywise so that a symmetric input yields a bitwise
/// symmetric output.
pub fn apply_channel(sigma: &CovMat4, channel: &MemoryChannel) -> CovMat4 {
    let x = channel.x_diagonal();
    let y = channel.y_diagonal();
    let mut out = Matrix4::zeros();
    for j in 0..4 {
        for k in 0..4 {
            out[(j, k)] = x[j] * x[k] * sigma.entry(j, k);
        }
        out[(j, j)] += y[j];
    }
    CovMat4::from_symmetric_unchecked(out)
}

/// Smallest PT symplectic eigenvalue from the invariants:
/// ν̃² is the smaller root of `x² − Δ̃x + det σ = 0`.
///
/// Small negative discriminants (≥ −1e−9, floating-point noise near
/// balanced states) are clamped to zero; anything more negative signals a
/// non-CM input and is an error.
pub fn nu_tilde(inv: &PtInvariants) -> Result<f64> {
    let disc = inv.delta_tilde * inv.delta_tilde - 4.0 * inv.det_sigma;
    if disc < -DISC_CLAMP {
        return Err(Error::InvariantViolation {
            discriminant: disc,
        });
    }
    let root = disc.max(0.0).sqrt();
    let denom = inv.delta_tilde + root;
    if denom.is_nan() || denom <= 0.0 {
        return Err(Error::InvariantViolation {
            discriminant: disc,
        });
    }
    // smaller root in the cancellation-free form 2·det/(Δ̃ + √disc)
    let nu_sq = 2.0 * inv.det_sigma / denom;
    if nu_sq < 0.0 {
        if nu_sq > -1e-12 {
            return Ok(0.0);
        }
        return Err(Error::InvariantViolation {
            discriminant: disc,
        });
    }
    Ok(nu_sq.sqrt())
}

/// Logarithmic negativity in ebits: `max(0, −log₂ ν̃)`.
pub fn log_negativity(nu: f64) -> Result<f64> {
    if nu.is_nan() || nu <= 0.0 {
        return Err(Error::NonPositiveNu { nu });
    }
    Ok((-nu.log2()).max(0.0))
}

/// Optimal coherent-state teleportation fidelity of a two-mode resource:
/// `F = 2 / √det(2·I₂ + α + β − 2σ_z γ)` with σ_z = diag(1, −1).
///
/// The formula assumes the state's cross correlations in the orientation
/// with `cov(q₁,q₂) ≥ 0` and `cov(p₁,p₂) ≤ 0`; the scenario builders in
/// this crate produce that orientation. A non-positive determinant
/// signals an invalid CM and is an error.
pub fn teleportation_fidelity(sigma: &CovMat4) -> Result<f64> {
    let b = sigma.blocks();
    // σ_z γ flips the sign of γ's second row
    let sz_gamma = Matrix2::new(
        b.gamma[(0, 0)],
        b.gamma[(0, 1)],
        -b.gamma[(1, 0)],
        -b.gamma[(1, 1)],
    );
    let arg = Matrix2::identity() * 2.0 + b.alpha + b.beta - sz_gamma * 2.0;
    let det = det2(&arg);
    if det.is_nan() || det <= 0.0 {
        return Err(Error::NonPositiveFidelityDet { det });
    }
    Ok(2.0 / det.sqrt())
}
