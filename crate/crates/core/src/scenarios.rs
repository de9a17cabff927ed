//! The input state and the two storage orders.
//!
//! The input is a product of two single-mode squeezed thermal states,
//! `σ₀ = diag(sN₁, N₁/s, N₂/s, N₂s)`: for s > 1 mode 1 is squeezed in p
//! and mode 2 in q, the orientation that maximises the entanglement
//! produced by a 50:50 beam-splitter. The two final states are
//!
//! ```text
//! σ_a = X·R·σ₀·Rᵀ·Xᵀ + Y        (mix first, then store: "store entanglement")
//! σ_b = R·(X·σ₀·Xᵀ + Y)·Rᵀ      (store first, then mix: "store squeezing")
//! ```
//!
//! with identical per-mode channels the two orders commute and
//! σ_a = σ_b.
//!
//! The 50:50 rotation `R` is taken in the orientation that yields
//! `cov(q₁,q₂) ≥ 0` and `cov(p₁,p₂) ≤ 0` for s ≥ 1 inputs. Entanglement
//! quantities are independent of that sign choice (the partial-transpose
//! invariants are even in the cross block), but the teleportation-fidelity
//! formula in [`crate::gaussian`] is written for this orientation.

use std::f64::consts::FRAC_PI_4;

use nalgebra::Matrix4;

use crate::gaussian::{apply_channel, beam_splitter, CovMat4, ScenarioMetrics};
use crate::memory::MemoryChannel;
use crate::{Error, Result};

/// Parameters of the two-mode squeezed-thermal input state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputStateParams {
    /// Squeezing parameter s (> 0; the criteria assume s ≥ 1).
    pub s: f64,
    /// Thermal broadening N₁ of mode 1 (≥ 1).
    pub n1: f64,
    /// Thermal broadening N₂ of mode 2 (≥ 1).
    pub n2: f64,
}

impl InputStateParams {
    pub fn new(s: f64, n1: f64, n2: f64) -> Result<Self> {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::ParameterRange {
                name: "s",
                value: s,
                constraint: "s > 0",
            });
        }
        for (name, v) in [("n1", n1), ("n2", n2)] {
            if !v.is_finite() || v < 1.0 {
                return Err(Error::ParameterRange {
                    name,
                    value: v,
                    constraint: "n >= 1",
                });
            }
        }
        Ok(Self { s, n1, n2 })
    }

    /// Pure squeezed inputs (N₁ = N₂ = 1).
    pub fn pure(s: f64) -> Result<Self> {
        Self::new(s, 1.0, 1.0)
    }

    /// Mild-thermal-asymmetry assumption `1/s² ≤ N₂/N₁ ≤ s²` under which
    /// the ideal-memory criteria apply. Always false for s < 1.
    pub fn assumption_holds(&self) -> bool {
        let ratio = self.n2 / self.n1;
        let s_sq = self.s * self.s;
        1.0 / s_sq <= ratio && ratio <= s_sq
    }
}

/// Mixing rotation used by both scenarios (see module docs for the sign
/// choice).
pub(crate) fn mixing_rotation() -> Matrix4<f64> {
    beam_splitter(-FRAC_PI_4)
}

/// Conjugate a symmetric matrix by a rotation: `R·M·Rᵀ`, with the lower
/// triangle mirrored from the upper so the result is bitwise symmetric
/// (the raw product is symmetric only up to rounding).
fn rotate(r: &Matrix4<f64>, m: &Matrix4<f64>) -> Matrix4<f64> {
    let mut out = r * m * r.transpose();
    for j in 0..4 {
        for k in (j + 1)..4 {
            out[(k, j)] = out[(j, k)];
        }
    }
    out
}

/// The input CM `σ₀ = diag(sN₁, N₁/s, N₂/s, N₂s)`.
pub fn input_cm(params: &InputStateParams) -> CovMat4 {
    let InputStateParams { s, n1, n2 } = *params;
    CovMat4::from_diagonal([s * n1, n1 / s, n2 / s, n2 * s])
        .expect("valid input parameters give a positive diagonal")
}

/// Final state when the memories act *after* the beam-splitter
/// (entanglement is stored).
pub fn sigma_a(params: &InputStateParams, channel: &MemoryChannel) -> CovMat4 {
    let mixed = rotate(&mixing_rotation(), input_cm(params).matrix());
    apply_channel(&CovMat4::from_symmetric_unchecked(mixed), channel)
}

/// Final state when the memories act *before* the beam-splitter
/// (single-mode squeezing is stored).
pub fn sigma_b(params: &InputStateParams, channel: &MemoryChannel) -> CovMat4 {
    let stored = apply_channel(&input_cm(params), channel);
    CovMat4::from_symmetric_unchecked(rotate(&mixing_rotation(), stored.matrix()))
}

/// Interpolating family between the two storage orders for equal losses:
/// `σ(θ) = R·σ₀′·Rᵀ + R_θ·Y·R_θᵀ` where σ₀′ absorbs the common loss into
/// the thermal parameters (Nᵢ → Nᵢξ²) and `R_θ` rotates only the additive
/// noise. θ = 0 gives σ_a and θ = π/4 gives σ_b.
///
/// The family is defined only for ξ₁ = ξ₂; unequal losses are an error.
pub fn sigma_theta(
    params: &InputStateParams,
    channel: &MemoryChannel,
    theta: f64,
) -> Result<CovMat4> {
    if (channel.xi1() - channel.xi2()).abs() > 1e-12 {
        return Err(Error::UnsupportedConfiguration(format!(
            "the interpolating family requires equal losses, got xi1 = {}, xi2 = {}",
            channel.xi1(),
            channel.xi2()
        )));
    }
    let xi_sq = channel.xi1() * channel.xi1();
    let InputStateParams { s, n1, n2 } = *params;
    let reduced = Matrix4::from_diagonal(
        &[
            s * n1 * xi_sq,
            n1 * xi_sq / s,
            n2 * xi_sq / s,
            n2 * xi_sq * s,
        ]
        .into(),
    );
    let y = Matrix4::from_diagonal(
        &[
            channel.y_q1(),
            channel.y_p1(),
            channel.y_q2(),
            channel.y_p2(),
        ]
        .into(),
    );
    let r_theta = beam_splitter(-theta);
    let m = rotate(&mixing_rotation(), &reduced) + rotate(&r_theta, &y);
    CovMat4::new(m)
}

/// Side-by-side comparison of the two storage orders for one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioPair {
    pub sigma_a: CovMat4,
    pub sigma_b: CovMat4,
    pub metrics_a: ScenarioMetrics,
    pub metrics_b: ScenarioMetrics,
    /// δE_N = E_N(ρ_b) − E_N(ρ_a), in ebits.
    pub delta_logneg: f64,
    /// δF̄ = max(F_b, 1/2) − max(F_a, 1/2); fidelities below the classical
    /// threshold count as 1/2.
    pub delta_fidelity: f64,
}

/// Build both final states and their figures of merit.
pub fn compare(params: &InputStateParams, channel: &MemoryChannel) -> Result<ScenarioPair> {
    let sa = sigma_a(params, channel);
    let sb = sigma_b(params, channel);
    let ma = sa.metrics()?;
    let mb = sb.metrics()?;
    Ok(ScenarioPair {
        sigma_a: sa,
        sigma_b: sb,
        metrics_a: ma,
        metrics_b: mb,
        delta_logneg: mb.log_neg - ma.log_neg,
        delta_fidelity: mb.fidelity.max(0.5) - ma.fidelity.max(0.5),
    })
}
