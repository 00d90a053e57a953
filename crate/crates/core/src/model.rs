//! Microscopic Hubbard parameters, the derived chain couplings, and the
//! single-magnon dispersion.
//!
//! All energies are angular frequencies (rad/s) and all times are seconds.
//! Callers holding ordinary frequencies in Hz must multiply by 2π before
//! entering this layer; the CLI does that conversion at its boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ratio max(t)/min(U) above which the superexchange picture becomes
/// questionable and a diagnostic warning is raised.
pub const WEAK_TUNNELING_WARN_RATIO: f64 = 0.2;

/// Two-species Bose-Hubbard inputs: tunneling amplitudes and on-site
/// interaction energies, all in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HubbardParams {
    /// Tunneling amplitude of species g.
    pub t_g: f64,
    /// Tunneling amplitude of species s.
    pub t_s: f64,
    /// On-site interaction of two g atoms.
    pub u_gg: f64,
    /// On-site interaction of two s atoms.
    pub u_ss: f64,
    /// On-site interaction of an s atom with a g atom.
    pub u_sg: f64,
}

impl HubbardParams {
    pub fn new(t_g: f64, t_s: f64, u_gg: f64, u_ss: f64, u_sg: f64) -> Result<Self> {
        let p = Self { t_g, t_s, u_gg, u_ss, u_sg };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, u) in [("u_gg", self.u_gg), ("u_ss", self.u_ss), ("u_sg", self.u_sg)] {
            if u <= 0.0 || !u.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {u}"
                )));
            }
        }
        for (name, t) in [("t_g", self.t_g), ("t_s", self.t_s)] {
            if t < 0.0 || !t.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be nonnegative and finite, got {t}"
                )));
            }
        }
        Ok(())
    }

    /// max(t_g, t_s) / min(U_gg, U_ss, U_sg), the small parameter of the
    /// superexchange expansion.
    pub fn weak_tunneling_ratio(&self) -> f64 {
        let t = self.t_g.max(self.t_s);
        let u = self.u_gg.min(self.u_ss).min(self.u_sg);
        t / u
    }

    /// True when the tunneling is too large for the superexchange picture
    /// to be trusted. Diagnostic only; nothing refuses to run.
    pub fn weak_tunneling_warning(&self) -> bool {
        self.weak_tunneling_ratio() > WEAK_TUNNELING_WARN_RATIO
    }
}

/// Effective chain couplings: the exchange (hopping) amplitude J and the
/// nearest-neighbor Ising coupling V, both in rad/s.
///
/// Either derived from [`HubbardParams`] via [`derive_couplings`] or
/// constructed directly for phenomenological sweeps where V varies freely.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinCouplings {
    /// Exchange coupling J ≥ 0.
    pub j: f64,
    /// Ising coupling V (any sign).
    pub v: f64,
}

impl SpinCouplings {
    pub fn new(j: f64, v: f64) -> Result<Self> {
        if j < 0.0 || !j.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "exchange coupling j must be nonnegative and finite, got {j}"
            )));
        }
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "ising coupling v must be finite, got {v}"
            )));
        }
        Ok(Self { j, v })
    }

    /// XX point: hopping only.
    pub fn xx(j: f64) -> Result<Self> {
        Self::new(j, 0.0)
    }
}

/// Boundary condition of the physical chain.
///
/// `Open` is the default for physics runs; `Periodic` exists to reproduce
/// boundary-free analytics (plane-wave eigenstates, translation rules).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// Geometry of the chain: N sites at spacing `a` (meters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    /// Number of sites, N ≥ 4. Sites are labeled 1..=N.
    pub n: usize,
    /// Lattice spacing in meters.
    pub spacing: f64,
    pub boundary: Boundary,
}

impl ChainSpec {
    pub fn new(n: usize, spacing: f64, boundary: Boundary) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParameter(format!("chain needs n >= 4 sites, got {n}")));
        }
        if spacing <= 0.0 || !spacing.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "lattice spacing must be positive, got {spacing}"
            )));
        }
        Ok(Self { n, spacing, boundary })
    }

    /// Open chain with N sites and a placeholder 0.5 µm spacing.
    pub fn open(n: usize) -> Result<Self> {
        Self::new(n, 0.5e-6, Boundary::Open)
    }

    /// Periodic chain (diagnostic mode).
    pub fn periodic(n: usize) -> Result<Self> {
        Self::new(n, 0.5e-6, Boundary::Periodic)
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }
}

/// Superexchange couplings of the two-species Hubbard chain at unit filling:
///
///   J = 2 t_g t_s / U_sg
///   V = 2 (t_g² + t_s²)/U_sg − 4 t_g²/U_gg − 4 t_s²/U_ss
///
/// Exact arithmetic on the inputs; no unit conversion.
pub fn derive_couplings(p: &HubbardParams) -> Result<SpinCouplings> {
    p.validate()?;
    let j = 2.0 * p.t_g * p.t_s / p.u_sg;
    let v = 2.0 * (p.t_g * p.t_g + p.t_s * p.t_s) / p.u_sg
        - 4.0 * p.t_g * p.t_g / p.u_gg
        - 4.0 * p.t_s * p.t_s / p.u_ss;
    SpinCouplings::new(j, v)
}

/// Single-magnon dispersion ε(k) = −2J cos k, with k in rad/site.
pub fn dispersion(couplings: &SpinCouplings, k: f64) -> f64 {
    -2.0 * couplings.j * k.cos()
}

/// Fold an angle (phase or crystal momentum) into the principal interval
/// (−π, π].
pub fn fold_phase(x: f64) -> f64 {
    use std::f64::consts::PI;
    let mut y = x.rem_euclid(2.0 * PI); // [0, 2π)
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}
