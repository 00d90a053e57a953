//! Configuration schema: a single JSON document with explicit defaults.
//!
//! Frequencies enter in Hz and are converted to angular frequencies at
//! this boundary; the echoed canonical config records the resolved rad/s
//! values in its `derived` block. Unknown keys are rejected with the path
//! to the offending field.

use std::f64::consts::PI;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use spinwave_gate::{
    derive_couplings, Boundary, ChainSpec, ExperimentParams, GateRunSpec, HubbardParams,
    PacketSpec, PropagationMethod, SpinCouplings,
};

use crate::CmdError;

pub const HZ_TO_RAD_PER_S: f64 = 2.0 * PI;

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub chain: ChainConfig,
    /// Direct chain couplings in Hz. Mutually exclusive with `hubbard`.
    pub couplings: Option<CouplingsConfig>,
    /// Microscopic Hubbard parameters in Hz; J and V are derived.
    pub hubbard: Option<HubbardConfig>,
    pub packets: PacketsConfig,
    pub gate: GateConfig,
    pub sweep: SweepConfig,
    pub budget: BudgetConfig,
    pub output: OutputConfig,
    /// Resolved values recorded on echo; informational and ignored on
    /// input.
    pub derived: Option<DerivedEcho>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChainConfig {
    pub n: usize,
    pub spacing_m: f64,
    pub boundary: Boundary,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self { n: 100, spacing_m: 0.5e-6, boundary: Boundary::Open }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CouplingsConfig {
    pub j_hz: f64,
    pub v_hz: f64,
}

impl Default for CouplingsConfig {
    fn default() -> Self {
        Self { j_hz: 100.0, v_hz: 0.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HubbardConfig {
    pub t_g_hz: f64,
    pub t_s_hz: f64,
    pub u_gg_hz: f64,
    pub u_ss_hz: f64,
    pub u_sg_hz: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PacketsConfig {
    /// RMS width in sites; defaults to N/10.
    pub sigma: Option<f64>,
    /// Right-mover center; defaults to N/4.
    pub r_center: Option<f64>,
    /// Left-mover center; defaults to 3N/4.
    pub l_center: Option<f64>,
    /// Carrier momenta in rad/site.
    pub r_carrier: f64,
    pub l_carrier: f64,
}

impl Default for PacketsConfig {
    fn default() -> Self {
        Self {
            sigma: None,
            r_center: None,
            l_center: None,
            r_carrier: PI / 2.0,
            l_carrier: -PI / 2.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GateConfig {
    /// Evolution time in units of the exchange time T = N/(2v).
    pub tau_scale: Option<f64>,
    /// Dimensionless evolution time τ·J.
    pub tau_j: Option<f64>,
    /// Absolute evolution time in seconds.
    pub tau_s: Option<f64>,
    pub tol: f64,
    pub propagator: PropagationMethod,
    /// Uniform sector-diagonal shift in units of J (diagnostic).
    pub diagonal_shift_j: f64,
}

impl Default for GateConfig {
    fn default() -> Self {
        Self {
            tau_scale: None,
            tau_j: None,
            tau_s: None,
            tol: 1e-10,
            propagator: PropagationMethod::Auto,
            diagonal_shift_j: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    /// Ising coupling points in units of 2J.
    pub v_over_2j: Vec<f64>,
    /// Chain lengths.
    pub n: Vec<usize>,
    /// Packet widths in sites.
    pub sigma: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BudgetConfig {
    pub eta: f64,
    pub gamma_hz: f64,
    pub gamma0_hz: f64,
    pub t_p_s: f64,
    pub u_hz: f64,
    pub tu_ratio_sq: f64,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        Self {
            eta: 0.01,
            gamma_hz: 5.75e6,            // Rb D1 linewidth / 2π
            gamma0_hz: 1.0 / (2.0 * PI), // γ₀ = 1 rad/s, a 1 s coherence time
            t_p_s: 1e-7,
            u_hz: 4000.0,
            tu_ratio_sq: 0.01,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// Also write wavefunction snapshots: initial and final envelopes as
    /// site,re,im tables and the final pair amplitude as j,j_prime,re,im.
    pub write_states: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: PathBuf::from("out"), write_states: false }
    }
}

/// Resolved values the echo reports alongside the canonical config.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DerivedEcho {
    pub hz_to_rad_per_s: f64,
    pub j_rad_per_s: f64,
    pub v_rad_per_s: f64,
    pub sigma_sites: f64,
    pub r_center: f64,
    pub l_center: f64,
    pub tau_s: f64,
    pub exchange_time_s: f64,
}

impl Default for DerivedEcho {
    fn default() -> Self {
        Self {
            hz_to_rad_per_s: HZ_TO_RAD_PER_S,
            j_rad_per_s: 0.0,
            v_rad_per_s: 0.0,
            sigma_sites: 0.0,
            r_center: 0.0,
            l_center: 0.0,
            tau_s: 0.0,
            exchange_time_s: 0.0,
        }
    }
}

impl RunConfig {
    pub fn from_path(path: &std::path::Path) -> Result<Self, CmdError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CmdError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            CmdError::config(format!("config error at `{}`: {}", e.path(), e.inner()))
        })
    }

    pub fn chain(&self) -> Result<ChainSpec, CmdError> {
        ChainSpec::new(self.chain.n, self.chain.spacing_m, self.chain.boundary)
            .map_err(CmdError::from_config_error)
    }

    /// Chain couplings in rad/s, derived from the Hubbard block when given.
    pub fn couplings(&self) -> Result<SpinCouplings, CmdError> {
        match (&self.couplings, &self.hubbard) {
            (Some(_), Some(_)) => Err(CmdError::config(
                "give either `couplings` or `hubbard`, not both".into(),
            )),
            (_, Some(h)) => {
                let params = HubbardParams::new(
                    h.t_g_hz * HZ_TO_RAD_PER_S,
                    h.t_s_hz * HZ_TO_RAD_PER_S,
                    h.u_gg_hz * HZ_TO_RAD_PER_S,
                    h.u_ss_hz * HZ_TO_RAD_PER_S,
                    h.u_sg_hz * HZ_TO_RAD_PER_S,
                )
                .map_err(CmdError::from_config_error)?;
                derive_couplings(&params).map_err(CmdError::from_config_error)
            }
            (c, None) => {
                let c = c.clone().unwrap_or_default();
                SpinCouplings::new(c.j_hz * HZ_TO_RAD_PER_S, c.v_hz * HZ_TO_RAD_PER_S)
                    .map_err(CmdError::from_config_error)
            }
        }
    }

    fn resolved_packets(&self, chain: ChainSpec) -> Result<(PacketSpec, PacketSpec), CmdError> {
        let n = chain.n as f64;
        let sigma = self.packets.sigma.unwrap_or(n / 10.0);
        let r_center = self.packets.r_center.unwrap_or(n / 4.0);
        let l_center = self.packets.l_center.unwrap_or(3.0 * n / 4.0);
        let r = PacketSpec::new(chain, r_center, sigma, self.packets.r_carrier)
            .map_err(CmdError::from_config_error)?;
        let l = PacketSpec::new(chain, l_center, sigma, self.packets.l_carrier)
            .map_err(CmdError::from_config_error)?;
        Ok((r, l))
    }

    fn resolve_tau(&self, exchange_time: f64, j: f64) -> Result<f64, CmdError> {
        let given = [
            self.gate.tau_scale.is_some(),
            self.gate.tau_j.is_some(),
            self.gate.tau_s.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if given > 1 {
            return Err(CmdError::config(
                "give at most one of gate.tau_scale, gate.tau_j, gate.tau_s".into(),
            ));
        }
        Ok(if let Some(s) = self.gate.tau_s {
            s
        } else if let Some(tj) = self.gate.tau_j {
            tj / j
        } else {
            self.gate.tau_scale.unwrap_or(1.0) * exchange_time
        })
    }

    /// Assemble the gate run this config describes, with optional
    /// command-line tolerance override.
    pub fn gate_run(&self, tol_override: Option<f64>) -> Result<GateRunSpec, CmdError> {
        let chain = self.chain()?;
        let couplings = self.couplings()?;
        if couplings.j <= 0.0 {
            return Err(CmdError::config("gate runs need a positive J".into()));
        }
        let (r, l) = self.resolved_packets(chain)?;
        let mut spec = GateRunSpec::with_sigma(chain, couplings, r.sigma)
            .map_err(CmdError::from_config_error)?;
        spec.r = r;
        spec.l = l;
        spec.tau = self.resolve_tau(spec.exchange_time(), couplings.j)?;
        spec.tol = tol_override.unwrap_or(self.gate.tol);
        spec.method = self.gate.propagator;
        spec.diagonal_shift = self.gate.diagonal_shift_j * couplings.j;
        Ok(spec)
    }

    /// Like [`Self::gate_run`] but for one sweep point.
    pub fn gate_run_at(
        &self,
        n: usize,
        sigma: Option<f64>,
        v_over_2j: Option<f64>,
        tol_override: Option<f64>,
    ) -> Result<GateRunSpec, CmdError> {
        let mut point = self.clone();
        point.chain.n = n;
        if sigma.is_some() {
            point.packets.sigma = sigma;
        }
        if let Some(x) = v_over_2j {
            let base = self.couplings()?;
            point.hubbard = None;
            point.couplings = Some(CouplingsConfig {
                j_hz: base.j / HZ_TO_RAD_PER_S,
                v_hz: x * 2.0 * base.j / HZ_TO_RAD_PER_S,
            });
        }
        point.gate_run(tol_override)
    }

    /// Experimental parameter block in rad/s, tied to the chain size.
    pub fn experiment_params(&self) -> Result<ExperimentParams, CmdError> {
        ExperimentParams::new(
            self.budget.eta,
            self.chain.n,
            self.budget.gamma_hz * HZ_TO_RAD_PER_S,
            self.budget.gamma0_hz * HZ_TO_RAD_PER_S,
            self.budget.t_p_s,
            self.budget.u_hz * HZ_TO_RAD_PER_S,
            self.budget.tu_ratio_sq,
        )
        .map_err(CmdError::from_config_error)
    }

    /// Canonical form: every default made explicit, plus the resolved
    /// `derived` block. Parsing the result reproduces the same run.
    pub fn canonical(&self) -> Result<Self, CmdError> {
        let chain = self.chain()?;
        let couplings = self.couplings()?;
        let spec = self.gate_run(None)?;
        let mut out = self.clone();
        if out.hubbard.is_none() && out.couplings.is_none() {
            out.couplings = Some(CouplingsConfig::default());
        }
        out.packets.sigma = Some(spec.r.sigma);
        out.packets.r_center = Some(spec.r.center);
        out.packets.l_center = Some(spec.l.center);
        if out.gate.tau_j.is_none() && out.gate.tau_s.is_none() {
            out.gate.tau_scale = Some(out.gate.tau_scale.unwrap_or(1.0));
        }
        out.derived = Some(DerivedEcho {
            hz_to_rad_per_s: HZ_TO_RAD_PER_S,
            j_rad_per_s: couplings.j,
            v_rad_per_s: couplings.v,
            sigma_sites: spec.r.sigma,
            r_center: spec.r.center,
            l_center: spec.l.center,
            tau_s: spec.tau,
            exchange_time_s: chain.n as f64 / (4.0 * couplings.j),
        });
        Ok(out)
    }
}
