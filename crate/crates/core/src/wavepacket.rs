//! Stored spin-wave envelopes and the storage kinematics that select their
//! carrier momentum from the beam geometry.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::freefermion::SingleExcitationState;
use crate::model::{fold_phase, ChainSpec};

/// Tail mass above which a packet is flagged as touching the chain edges or
/// the midpoint. Diagnostic: a set flag annotates reports, it never aborts.
pub const TAIL_MASS_LIMIT: f64 = 1e-6;

/// A Gaussian packet: amps(j) ∝ exp(−(j−j₀)²/(4σ²)) e^{i k₀ j}, so that
/// |amps|² has rms width σ and the momentum distribution has rms width
/// 1/(2σ) (Fourier-transform limited).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketSpec {
    pub chain: ChainSpec,
    /// Center j₀ in sites; real-valued positions are allowed.
    pub center: f64,
    /// RMS width σ ≥ 1 in sites.
    pub sigma: f64,
    /// Carrier momentum k₀ ∈ [−π, π] in rad/site.
    pub carrier: f64,
}

impl PacketSpec {
    pub fn new(chain: ChainSpec, center: f64, sigma: f64, carrier: f64) -> Result<Self> {
        if center < 1.0 || center > chain.n as f64 || !center.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "packet center {center} outside chain 1..={}",
                chain.n
            )));
        }
        if sigma < 1.0 || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("packet width sigma {sigma} must be >= 1")));
        }
        if carrier.abs() > PI || carrier.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "carrier momentum {carrier} outside [-pi, pi]"
            )));
        }
        Ok(Self { chain, center, sigma, carrier })
    }

    /// The protocol's standard pair: a right-mover at N/4 with carrier +π/2
    /// and a left-mover at 3N/4 with carrier −π/2, both of width σ.
    pub fn standard_pair(chain: ChainSpec, sigma: f64) -> Result<(Self, Self)> {
        let n = chain.n as f64;
        let r = Self::new(chain, n / 4.0, sigma, PI / 2.0)?;
        let l = Self::new(chain, 3.0 * n / 4.0, sigma, -PI / 2.0)?;
        Ok((r, l))
    }

    /// Tail diagnostics of the built packet.
    pub fn validity(&self) -> PacketValidity {
        packet_validity(&make_packet(self))
    }
}

/// Tail mass of a packet in the windows that must stay empty for clean
/// transport: within 2 sites of either edge and within 2 sites of N/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketValidity {
    pub edge_mass: f64,
    pub middle_mass: f64,
}

impl PacketValidity {
    /// True when the combined tail mass is at or below [`TAIL_MASS_LIMIT`].
    pub fn is_clear(&self) -> bool {
        self.edge_mass + self.middle_mass <= TAIL_MASS_LIMIT
    }
}

/// Build the normalized Gaussian packet described by `spec`.
pub fn make_packet(spec: &PacketSpec) -> SingleExcitationState {
    let n = spec.chain.n;
    let amps: Vec<Complex64> = (1..=n)
        .map(|j| {
            let x = j as f64 - spec.center;
            let envelope = (-x * x / (4.0 * spec.sigma * spec.sigma)).exp();
            Complex64::from_polar(envelope, spec.carrier * j as f64)
        })
        .collect();
    SingleExcitationState::normalized(spec.chain, amps)
        .expect("gaussian envelope is nonzero on every site")
}

/// Tail diagnostics of an arbitrary single-excitation state.
pub fn packet_validity(state: &SingleExcitationState) -> PacketValidity {
    let n = state.chain().n;
    let mass = |sites: &mut dyn Iterator<Item = usize>| -> f64 {
        sites.map(|j| state.amp(j).norm_sqr()).sum()
    };
    let edge_mass = mass(&mut (1..=n).filter(|&j| j <= 3 || j >= n - 2));
    let mid = n / 2;
    let lo = mid.saturating_sub(2).max(1);
    let hi = (mid + 2).min(n);
    let middle_mass = mass(&mut (lo..=hi).filter(|&j| j > 3 && j < n - 2));
    PacketValidity { edge_mass, middle_mass }
}

/// Which way the stored photon travels along the chain axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhotonDirection {
    /// Photon momentum along +x̂ (the right-moving R mode).
    Plus,
    /// Photon momentum along −x̂ (the left-moving L mode).
    Minus,
}

impl PhotonDirection {
    fn sign(self) -> f64 {
        match self {
            PhotonDirection::Plus => 1.0,
            PhotonDirection::Minus => -1.0,
        }
    }
}

/// Beam geometry of the storage step.
///
/// Sign convention: the spin-wave wavevector is the projection of
/// k_photon − k_control on the chain axis. The control beam for the
/// counter-propagating (−) photon is the mirror image of the (+) one, so
/// both the photon term and the control projection flip sign together:
///
///   k_spin = dir · (|k_i| − |k_c| cos θ_c)
///
/// with θ_c ∈ [0, π] measured between the control beam and the chain axis
/// on the photon's side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StorageGeometry {
    /// Photon wavenumber magnitude |k_i| in rad/m.
    pub k_photon: f64,
    /// Control wavenumber magnitude |k_c| in rad/m.
    pub k_control: f64,
    /// Angle between control beam and chain axis, radians in [0, π].
    pub control_angle: f64,
    pub photon_direction: PhotonDirection,
}

impl StorageGeometry {
    pub fn new(
        k_photon: f64,
        k_control: f64,
        control_angle: f64,
        photon_direction: PhotonDirection,
    ) -> Result<Self> {
        if k_photon <= 0.0 || k_control <= 0.0 || !k_photon.is_finite() || !k_control.is_finite() {
            return Err(Error::InvalidParameter(
                "wavenumber magnitudes must be positive".into(),
            ));
        }
        if !(0.0..=PI).contains(&control_angle) {
            return Err(Error::InvalidParameter(format!(
                "control angle {control_angle} outside [0, pi]"
            )));
        }
        Ok(Self { k_photon, k_control, control_angle, photon_direction })
    }
}

/// Carrier momentum imprinted on the spin wave by storage, in rad/site,
/// folded into (−π, π].
pub fn storage_momentum(geom: &StorageGeometry, spacing: f64) -> f64 {
    let k_spin =
        geom.photon_direction.sign() * (geom.k_photon - geom.k_control * geom.control_angle.cos());
    fold_phase(k_spin * spacing)
}

/// Inverse of [`storage_momentum`]: the control angle that imprints the
/// target carrier momentum (rad/site). Fails when the projection required
/// of the control beam exceeds its wavenumber.
pub fn solve_storage_angle(
    target_k0: f64,
    k_photon: f64,
    k_control: f64,
    spacing: f64,
    photon_direction: PhotonDirection,
) -> Result<f64> {
    let cos_theta = (k_photon - photon_direction.sign() * target_k0 / spacing) / k_control;
    if !(-1.0..=1.0).contains(&cos_theta) {
        return Err(Error::NoSolution(format!(
            "target carrier {target_k0} rad/site needs |cos theta| = {} > 1",
            cos_theta.abs()
        )));
    }
    Ok(cos_theta.acos())
}
