//! Analytic error-budget and experimental-parameter calculators.
//!
//! Every "∼" scaling is implemented with coefficient exactly 1 and labeled
//! as an order-of-magnitude estimate in the report; inventing prefactors
//! would fabricate precision the formulas do not have. The budget assumes
//! the symmetric coupling point (J = 4t²/U, V = 0), where the packet
//! velocity is v = 8t²/U sites per second.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ChainSpec;

/// Natural linewidth of the ⁸⁷Rb D₁ line, Γ = 2π × 5.75 MHz, in rad/s.
/// Implementation constant for the worked example; override via
/// [`ExperimentParams::gamma`] for other transitions.
pub const RB87_D1_LINEWIDTH: f64 = 2.0 * std::f64::consts::PI * 5.75e6;

/// Experimental inputs. Rates are angular frequencies (rad/s), times are
/// seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    /// Single-atom cooperativity η (dimensionless); ηN is the resonant
    /// optical depth.
    pub eta: f64,
    /// Atom count N (one atom per site).
    pub n_atoms: usize,
    /// Excited-state linewidth Γ.
    pub gamma: f64,
    /// s–g coherence decay rate γ₀.
    pub gamma0: f64,
    /// Photon duration T_p.
    pub t_photon: f64,
    /// On-site interaction U.
    pub u: f64,
    /// Tunneling ratio squared, (t/U)².
    pub tu_ratio_sq: f64,
}

impl ExperimentParams {
    pub fn new(
        eta: f64,
        n_atoms: usize,
        gamma: f64,
        gamma0: f64,
        t_photon: f64,
        u: f64,
        tu_ratio_sq: f64,
    ) -> Result<Self> {
        let p = Self { eta, n_atoms, gamma, gamma0, t_photon, u, tu_ratio_sq };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, x) in [
            ("eta", self.eta),
            ("gamma", self.gamma),
            ("gamma0", self.gamma0),
            ("t_photon", self.t_photon),
            ("u", self.u),
            ("tu_ratio_sq", self.tu_ratio_sq),
        ] {
            if x <= 0.0 || !x.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {x}"
                )));
            }
        }
        if self.n_atoms == 0 {
            return Err(Error::InvalidParameter("n_atoms must be positive".into()));
        }
        Ok(())
    }

    /// Sanity flag: a cooperativity above one is almost certainly a typo.
    pub fn eta_warning(&self) -> bool {
        self.eta > 1.0
    }
}

/// Order-of-magnitude error estimates and derived protocol scales.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BudgetReport {
    /// Residual lattice corrections: p1 = (t/U)⁴.
    pub p1: f64,
    /// Photon storage/retrieval: p2 = 1/(ηN).
    pub p2: f64,
    /// Coherence decay over the gate: p3 = γ₀·T.
    pub p3: f64,
    /// Packet velocity v = 8 (t/U)² U, sites per second.
    pub velocity: f64,
    /// Gate (exchange) time T = N/(2v), seconds.
    pub gate_time: f64,
    /// Storable pulse bandwidth limit ηNΓ, rad/s.
    pub bandwidth: f64,
    /// Peak control Rabi frequency Ω = √(ηNΓ/T_p), rad/s.
    pub omega: f64,
    /// True when η > 1 (see [`ExperimentParams::eta_warning`]).
    pub eta_warning: bool,
    /// Convention note carried into serialized output.
    pub note: String,
}

const NOTE: &str = "order-of-magnitude estimates; every scaling uses coefficient 1";

/// Evaluate the error budget for `params` on `chain`. The chain supplies
/// the site count; `params.n_atoms` must agree with it (one atom per site).
pub fn error_budget(params: &ExperimentParams, chain: &ChainSpec) -> Result<BudgetReport> {
    params.validate()?;
    if params.n_atoms != chain.n {
        return Err(Error::DimensionMismatch(format!(
            "budget assumes one atom per site: {} atoms vs {} sites",
            params.n_atoms, chain.n
        )));
    }
    let n = chain.n as f64;
    let velocity = 8.0 * params.tu_ratio_sq * params.u;
    let gate_time = n / (2.0 * velocity);
    Ok(BudgetReport {
        p1: params.tu_ratio_sq * params.tu_ratio_sq,
        p2: 1.0 / (params.eta * n),
        p3: params.gamma0 * gate_time,
        velocity,
        gate_time,
        bandwidth: params.eta * n * params.gamma,
        omega: control_rabi(params)?,
        eta_warning: params.eta_warning(),
        note: NOTE.to_string(),
    })
}

/// Peak control Rabi frequency Ω = √(ηNΓ/T_p) needed to store a photon of
/// duration T_p, in rad/s.
pub fn control_rabi(params: &ExperimentParams) -> Result<f64> {
    params.validate()?;
    Ok((params.eta * params.n_atoms as f64 * params.gamma / params.t_photon).sqrt())
}

impl BudgetReport {
    /// Human-readable table, one quantity per line.
    pub fn table(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("{:<26} {:>14}\n", "quantity", "value"));
        let mut row = |name: &str, value: String| {
            s.push_str(&format!("{name:<26} {value:>14}\n"));
        };
        row("p1 = (t/U)^4", format!("{:.3e}", self.p1));
        row("p2 = 1/(eta N)", format!("{:.3e}", self.p2));
        row("p3 = gamma0 T", format!("{:.3e}", self.p3));
        row("velocity [sites/s]", format!("{:.6e}", self.velocity));
        row("gate time T [s]", format!("{:.6e}", self.gate_time));
        row("bandwidth eta N Gamma", format!("{:.6e} rad/s", self.bandwidth));
        row(
            "control Rabi Omega",
            format!("{:.6e} rad/s = 2pi x {:.4e} Hz", self.omega, self.omega / (2.0 * std::f64::consts::PI)),
        );
        if self.eta_warning {
            s.push_str("warning: eta > 1\n");
        }
        s.push_str(&format!("note: {}\n", self.note));
        s
    }
}
