//! Memory-cell parameters and their mapping to the Gaussian channel.
//!
//! A QND-feedback memory cell is described by a loss factor `G`, the
//! detuning parameter `Z²` of the swap interaction, the initial atomic
//! pseudo-spin variance `Δ_At` and spurious additive noises `Δ_q`, `Δ_p`.
//! A pair of cells maps to the channel `(X, Y)` via `ξᵢ = Gᵢ` and
//!
//! ```text
//! y_qi = (1 − 1/Zᵢ²)·Δ_Ati + L(Gᵢ) + Δ_qi
//! y_pi =                     L(Gᵢ) + Δ_pi
//! ```
//!
//! where `L(G)` is the loss-induced noise term. The literal form
//! `1 − 1/G²` is negative for `G < 1` while `Y` must be non-negative, so
//! the mapping takes a [`LossNoiseConvention`]: either the literal term
//! floored at zero, or the standard attenuation noise `1 − G²` (the
//! minimal added noise that keeps a loss-`G` channel physical in vacuum
//! units). Reports should state which convention they used.

use crate::{Error, Result};

/// How the loss-induced additive noise term is computed from `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LossNoiseConvention {
    /// `max(0, 1 − 1/G²)`: the literal mapping floored at zero, which
    /// makes the loss term vanish for all G ≤ 1.
    #[default]
    LiteralFloorZero,
    /// `1 − G²`: the attenuation-channel noise that exactly saturates the
    /// physicality bound `ξ² ≥ 1 − √(y_q·y_p)`.
    AttenuationStandard,
}

impl LossNoiseConvention {
    /// Loss-induced additive noise for loss factor `g`.
    pub fn loss_noise(self, g: f64) -> f64 {
        match self {
            Self::LiteralFloorZero => (1.0 - 1.0 / (g * g)).max(0.0),
            Self::AttenuationStandard => 1.0 - g * g,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::LiteralFloorZero => "literal",
            Self::AttenuationStandard => "attenuation",
        }
    }
}

/// Experimental parameters of one memory cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryCellParams {
    /// Loss factor G, in (0, 1].
    pub g: f64,
    /// Detuning parameter Z², ≥ 1.
    pub z_sq: f64,
    /// Initial atomic pseudo-spin variance Δ_At (vacuum units, ≥ 0).
    pub delta_at: f64,
    /// Spurious q-quadrature noise Δ_q (vacuum units, ≥ 0).
    pub delta_q: f64,
    /// Spurious p-quadrature noise Δ_p (vacuum units, ≥ 0).
    pub delta_p: f64,
}

impl MemoryCellParams {
    pub fn new(g: f64, z_sq: f64, delta_at: f64, delta_q: f64, delta_p: f64) -> Result<Self> {
        check_range("g", g, g > 0.0 && g <= 1.0, "0 < g <= 1")?;
        check_range("z_sq", z_sq, z_sq >= 1.0, "z_sq >= 1")?;
        check_range("delta_at", delta_at, delta_at >= 0.0, "delta_at >= 0")?;
        check_range("delta_q", delta_q, delta_q >= 0.0, "delta_q >= 0")?;
        check_range("delta_p", delta_p, delta_p >= 0.0, "delta_p >= 0")?;
        Ok(Self {
            g,
            z_sq,
            delta_at,
            delta_q,
            delta_p,
        })
    }

    /// Lossless cell whose only noise source is the initial pseudo-spin
    /// variance.
    pub fn ideal(z_sq: f64, delta_at: f64) -> Result<Self> {
        Self::new(1.0, z_sq, delta_at, 0.0, 0.0)
    }

    /// Additive noise pair (y_q, y_p) contributed by this cell.
    pub fn y_entries(&self, convention: LossNoiseConvention) -> (f64, f64) {
        let loss = convention.loss_noise(self.g);
        let y_q = (1.0 - 1.0 / self.z_sq) * self.delta_at + loss + self.delta_q;
        let y_p = loss + self.delta_p;
        (y_q, y_p)
    }
}

fn check_range(name: &'static str, value: f64, ok: bool, constraint: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterRange {
            name,
            value,
            constraint,
        })
    }
}

/// The diagonal Gaussian channel of a memory pair:
/// `X = diag(ξ₁,ξ₁,ξ₂,ξ₂)`, `Y = diag(y_q1,y_p1,y_q2,y_p2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryChannel {
    xi1: f64,
    xi2: f64,
    y_q1: f64,
    y_p1: f64,
    y_q2: f64,
    y_p2: f64,
}

impl MemoryChannel {
    pub fn new(xi1: f64, xi2: f64, y_q1: f64, y_p1: f64, y_q2: f64, y_p2: f64) -> Result<Self> {
        check_range("xi1", xi1, xi1 > 0.0, "xi > 0")?;
        check_range("xi2", xi2, xi2 > 0.0, "xi > 0")?;
        check_range("y_q1", y_q1, y_q1 >= 0.0, "y >= 0")?;
        check_range("y_p1", y_p1, y_p1 >= 0.0, "y >= 0")?;
        check_range("y_q2", y_q2, y_q2 >= 0.0, "y >= 0")?;
        check_range("y_p2", y_p2, y_p2 >= 0.0, "y >= 0")?;
        Ok(Self {
            xi1,
            xi2,
            y_q1,
            y_p1,
            y_q2,
            y_p2,
        })
    }

    /// The identity channel (ξ = 1, Y = 0).
    pub fn identity() -> Self {
        Self {
            xi1: 1.0,
            xi2: 1.0,
            y_q1: 0.0,
            y_p1: 0.0,
            y_q2: 0.0,
            y_p2: 0.0,
        }
    }

    pub fn xi1(&self) -> f64 {
        self.xi1
    }
    pub fn xi2(&self) -> f64 {
        self.xi2
    }
    pub fn y_q1(&self) -> f64 {
        self.y_q1
    }
    pub fn y_p1(&self) -> f64 {
        self.y_p1
    }
    pub fn y_q2(&self) -> f64 {
        self.y_q2
    }
    pub fn y_p2(&self) -> f64 {
        self.y_p2
    }

    /// δ_q = y_q2 − y_q1.
    pub fn delta_q(&self) -> f64 {
        self.y_q2 - self.y_q1
    }

    /// δ_p = y_p2 − y_p1.
    pub fn delta_p(&self) -> f64 {
        self.y_p2 - self.y_p1
    }

    pub(crate) fn x_diagonal(&self) -> [f64; 4] {
        [self.xi1, self.xi1, self.xi2, self.xi2]
    }

    pub(crate) fn y_diagonal(&self) -> [f64; 4] {
        [self.y_q1, self.y_p1, self.y_q2, self.y_p2]
    }

    /// True iff the channel is a physical map: `ξᵢ² ≥ 1 − √(y_qi·y_pi)`
    /// for both modes, within tolerance 1e−12.
    pub fn is_physical(&self) -> bool {
        let ok = |xi: f64, yq: f64, yp: f64| xi * xi >= 1.0 - (yq * yp).sqrt() - 1e-12;
        ok(self.xi1, self.y_q1, self.y_p1) && ok(self.xi2, self.y_q2, self.y_p2)
    }
}

/// Map a pair of memory cells to the abstract channel under the given
/// loss-noise convention.
pub fn channel_from_cells(
    cell1: &MemoryCellParams,
    cell2: &MemoryCellParams,
    convention: LossNoiseConvention,
) -> MemoryChannel {
    let (y_q1, y_p1) = cell1.y_entries(convention);
    let (y_q2, y_p2) = cell2.y_entries(convention);
    MemoryChannel::new(cell1.g, cell2.g, y_q1, y_p1, y_q2, y_p2)
        .expect("cell parameters always map to non-negative noise")
}

/// Lossless channel with q-quadrature noise only: ξ₁ = ξ₂ = 1,
/// y_p1 = y_p2 = 0.
pub fn ideal_channel(y_q1: f64, y_q2: f64) -> Result<MemoryChannel> {
    MemoryChannel::new(1.0, 1.0, y_q1, 0.0, y_q2, 0.0)
}
