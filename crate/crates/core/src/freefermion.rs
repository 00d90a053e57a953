//! Single-excitation (one spin flip) engine.
//!
//! One flip on the chain is a free particle with dispersion ε(k) = −2J cos k.
//! Everything here is exact diagonalization in the mode basis of the chosen
//! boundary condition: expand, phase-rotate, transform back. Transforms are
//! dense O(N²), which is negligible at the N ≤ a-few-thousand scale this
//! crate targets and keeps the arithmetic bit-reproducible.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::model::{Boundary, ChainSpec, SpinCouplings};

/// Amplitudes of a single spin flip over the chain sites.
///
/// Storage is 0-based; site labels are 1-based, so `amps()[j-1]` is the
/// amplitude on site `j`. States are values: every operation returns a new
/// state and leaves its input untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleExcitationState {
    chain: ChainSpec,
    amps: Vec<Complex64>,
}

impl SingleExcitationState {
    /// Wrap an amplitude vector that is already normalized (2-norm within
    /// 1e-8 of one).
    pub fn new(chain: ChainSpec, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != chain.n {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector has {} entries for a chain of {} sites",
                amps.len(),
                chain.n
            )));
        }
        let s = Self { chain, amps };
        let norm = s.norm();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidParameter(format!(
                "state norm {norm} is not 1; use `normalized` to rescale"
            )));
        }
        Ok(s)
    }

    /// Wrap an arbitrary nonzero amplitude vector, rescaling it to unit norm.
    pub fn normalized(chain: ChainSpec, mut amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != chain.n {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector has {} entries for a chain of {} sites",
                amps.len(),
                chain.n
            )));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::InvalidParameter("cannot normalize the zero vector".into()));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(Self { chain, amps })
    }

    pub fn chain(&self) -> &ChainSpec {
        &self.chain
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude on site `j` (1-based).
    pub fn amp(&self, site: usize) -> Complex64 {
        self.amps[site - 1]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Packet position observable: ∑_j j |amps(j)|² with 1-based sites.
    pub fn centroid(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| (i + 1) as f64 * a.norm_sqr())
            .sum()
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Overlap of the magnitude envelopes ∑_j |self_j||other_j| ∈ [0, 1].
    /// Phase-blind; used for positional (swap) checks.
    pub fn envelope_overlap(&self, other: &Self) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.norm() * b.norm()).sum()
    }
}

/// The N periodic-grid momenta 2πm/N folded into (−π, π], ascending.
pub fn periodic_momenta(n: usize) -> Vec<f64> {
    let half = (n as i64 - 1) / 2;
    (-half..=(n as i64 / 2)).map(|m| 2.0 * PI * m as f64 / n as f64).collect()
}

/// Eigenmodes of the one-flip sector for a given boundary condition.
///
/// Periodic: plane waves e^{ikj}/√N on the 2π/N grid with ε(k) = −2J cos k.
/// Open: standing waves √(2/(N+1)) sin(k_m j) with k_m = πm/(N+1), m = 1..N,
/// and the same dispersion evaluated on those momenta.
#[derive(Debug, Clone)]
pub struct ModeBasis {
    boundary: Boundary,
    n: usize,
    momenta: Vec<f64>,
    energies: Vec<f64>,
}

impl ModeBasis {
    pub fn periodic(n: usize, couplings: &SpinCouplings) -> Self {
        let momenta = periodic_momenta(n);
        let energies = momenta.iter().map(|&k| -2.0 * couplings.j * k.cos()).collect();
        Self { boundary: Boundary::Periodic, n, momenta, energies }
    }

    pub fn open(n: usize, couplings: &SpinCouplings) -> Self {
        let momenta: Vec<f64> = (1..=n).map(|m| PI * m as f64 / (n as f64 + 1.0)).collect();
        let energies = momenta.iter().map(|&k| -2.0 * couplings.j * k.cos()).collect();
        Self { boundary: Boundary::Open, n, momenta, energies }
    }

    pub fn for_chain(chain: &ChainSpec, couplings: &SpinCouplings) -> Self {
        match chain.boundary {
            Boundary::Open => Self::open(chain.n, couplings),
            Boundary::Periodic => Self::periodic(chain.n, couplings),
        }
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Mode function φ_m(j) on 1-based site j.
    fn mode_amp(&self, m: usize, site: usize) -> Complex64 {
        let j = site as f64;
        match self.boundary {
            Boundary::Periodic => {
                Complex64::from_polar(1.0 / (self.n as f64).sqrt(), self.momenta[m] * j)
            }
            Boundary::Open => Complex64::new(
                (2.0 / (self.n as f64 + 1.0)).sqrt() * (self.momenta[m] * j).sin(),
                0.0,
            ),
        }
    }

    /// Mode coefficients c_m = ∑_j φ_m(j)* ψ(j).
    pub fn to_modes(&self, state: &SingleExcitationState) -> Vec<Complex64> {
        assert_eq!(state.chain.n, self.n, "state and basis live on different chains");
        (0..self.n)
            .map(|m| {
                (1..=self.n).map(|j| self.mode_amp(m, j).conj() * state.amps[j - 1]).sum()
            })
            .collect()
    }

    /// Reassemble ψ(j) = ∑_m φ_m(j) c_m on the given chain.
    pub fn from_modes(&self, coeffs: &[Complex64], chain: ChainSpec) -> Result<SingleExcitationState> {
        if coeffs.len() != self.n || chain.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "basis of {} modes, {} coefficients, chain of {} sites",
                self.n,
                coeffs.len(),
                chain.n
            )));
        }
        let amps: Vec<Complex64> = (1..=self.n)
            .map(|j| (0..self.n).map(|m| self.mode_amp(m, j) * coeffs[m]).sum())
            .collect();
        Ok(SingleExcitationState { chain, amps })
    }

    /// ⟨ψ|H|ψ⟩ = ∑_m ε_m |c_m|², the conserved energy of the state.
    pub fn energy_expectation(&self, state: &SingleExcitationState) -> f64 {
        self.to_modes(state)
            .iter()
            .zip(&self.energies)
            .map(|(c, &e)| e * c.norm_sqr())
            .sum()
    }
}

/// Fourier transform q̃(k) = (1/√N) ∑_j q(j) e^{−ikj} on the periodic grid,
/// regardless of the state's own boundary condition. The inverse relation is
/// q(j) = (1/√N) ∑_k q̃(k) e^{ikj}; see [`inverse_fourier`].
///
/// Entries are aligned with [`periodic_momenta`] of the state's chain.
pub fn fourier(state: &SingleExcitationState) -> Vec<Complex64> {
    let n = state.chain.n;
    let root = (n as f64).sqrt();
    periodic_momenta(n)
        .iter()
        .map(|&k| {
            (1..=n)
                .map(|j| state.amps[j - 1] * Complex64::from_polar(1.0, -k * j as f64))
                .sum::<Complex64>()
                / root
        })
        .collect()
}

/// Inverse of [`fourier`].
pub fn inverse_fourier(chain: ChainSpec, kamps: &[Complex64]) -> Result<SingleExcitationState> {
    let n = chain.n;
    if kamps.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} momentum amplitudes for a chain of {} sites",
            kamps.len(),
            n
        )));
    }
    let root = (n as f64).sqrt();
    let momenta = periodic_momenta(n);
    let amps: Vec<Complex64> = (1..=n)
        .map(|j| {
            momenta
                .iter()
                .zip(kamps)
                .map(|(&k, q)| q * Complex64::from_polar(1.0, k * j as f64))
                .sum::<Complex64>()
                / root
        })
        .collect();
    Ok(SingleExcitationState { chain, amps })
}

/// Exact time evolution in the mode basis of the state's boundary:
/// expand, multiply each coefficient by e^{−iτε}, transform back.
pub fn evolve_single(
    state: &SingleExcitationState,
    couplings: &SpinCouplings,
    tau: f64,
) -> SingleExcitationState {
    let basis = ModeBasis::for_chain(&state.chain, couplings);
    let mut coeffs = basis.to_modes(state);
    for (c, &e) in coeffs.iter_mut().zip(basis.energies()) {
        *c *= Complex64::from_polar(1.0, -tau * e);
    }
    basis.from_modes(&coeffs, state.chain).expect("basis and chain sizes agree")
}

/// Evolve in the periodic mode basis under an arbitrary dispersion closure.
/// This is the code path shared by [`evolve_single`] (periodic case, cosine
/// band) and [`linear_transport_reference`] (tangent line at the carrier).
pub fn evolve_periodic_with(
    state: &SingleExcitationState,
    energy_of: impl Fn(f64) -> f64,
) -> SingleExcitationState {
    let n = state.chain.n;
    let momenta = periodic_momenta(n);
    let mut kamps = fourier(state);
    for (q, &k) in kamps.iter_mut().zip(&momenta) {
        *q *= Complex64::from_polar(1.0, -energy_of(k));
    }
    inverse_fourier(state.chain, &kamps).expect("grid sizes agree")
}

/// Carrier momentum of a moving packet, restricted to the two protocol
/// values ±π/2 where the dispersion curvature vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// k₀ = +π/2, right-mover with group velocity +2J.
    PlusHalfPi,
    /// k₀ = −π/2, left-mover with group velocity −2J.
    MinusHalfPi,
}

impl Carrier {
    pub fn momentum(self) -> f64 {
        match self {
            Carrier::PlusHalfPi => FRAC_PI_2,
            Carrier::MinusHalfPi => -FRAC_PI_2,
        }
    }

    /// Signed group velocity 2J sin k₀ in sites per second.
    pub fn velocity(self, couplings: &SpinCouplings) -> f64 {
        group_velocity(couplings, self.momentum())
    }

    /// Classify a packet's declared carrier momentum. Anything that is not
    /// ±π/2 (to 1e-9 rad/site) is rejected: the linear-transport reference
    /// is only defined at the band's inflection points.
    pub fn from_momentum(k0: f64) -> Result<Self> {
        if (k0 - FRAC_PI_2).abs() <= 1e-9 {
            Ok(Carrier::PlusHalfPi)
        } else if (k0 + FRAC_PI_2).abs() <= 1e-9 {
            Ok(Carrier::MinusHalfPi)
        } else {
            Err(Error::InvalidParameter(format!(
                "carrier momentum must be ±π/2, got {k0}"
            )))
        }
    }
}

/// Group velocity dε/dk = 2J sin k in sites per second.
pub fn group_velocity(couplings: &SpinCouplings, k: f64) -> f64 {
    2.0 * couplings.j * k.sin()
}

/// Distortion-free transport reference: evolution under the exactly
/// linearized dispersion ε_lin(k) = (k − k₀)·v(k₀) in the periodic mode
/// basis. For a packet carried at k₀ = ±π/2 this translates the envelope
/// rigidly by vτ sites (circularly) and multiplies it by the global phase
/// e^{iτJπ}.
pub fn linear_transport_reference(
    state: &SingleExcitationState,
    couplings: &SpinCouplings,
    tau: f64,
    carrier: Carrier,
) -> SingleExcitationState {
    let k0 = carrier.momentum();
    let v = carrier.velocity(couplings);
    evolve_periodic_with(state, |k| tau * (k - k0) * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fold_phase;

    fn delta_state(chain: ChainSpec, site: usize) -> SingleExcitationState {
        let mut amps = vec![Complex64::new(0.0, 0.0); chain.n];
        amps[site - 1] = Complex64::new(1.0, 0.0);
        SingleExcitationState::new(chain, amps).unwrap()
    }

    fn gaussian(chain: ChainSpec, center: f64, sigma: f64, k0: f64) -> SingleExcitationState {
        let amps: Vec<Complex64> = (1..=chain.n)
            .map(|j| {
                let x = j as f64 - center;
                Complex64::from_polar((-x * x / (4.0 * sigma * sigma)).exp(), k0 * j as f64)
            })
            .collect();
        SingleExcitationState::normalized(chain, amps).unwrap()
    }

    /// Independent double-sum DFT used as the oracle for `fourier`.
    fn dft_oracle(state: &SingleExcitationState) -> Vec<Complex64> {
        let n = state.chain().n;
        periodic_momenta(n)
            .iter()
            .map(|&k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 1..=n {
                    let ph = -k * j as f64;
                    acc += state.amps()[j - 1] * Complex64::new(ph.cos(), ph.sin());
                }
                acc / (n as f64).sqrt()
            })
            .collect()
    }

    #[test]
    fn fourier_of_delta_is_flat_phase() {
        let chain = ChainSpec::periodic(16).unwrap();
        let j0 = 5;
        let q = fourier(&delta_state(chain, j0));
        for (qt, k) in q.iter().zip(periodic_momenta(16)) {
            let expected = Complex64::from_polar(1.0 / 4.0, -k * j0 as f64);
            assert!((qt - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn fourier_of_plane_wave_is_delta() {
        let n = 12;
        let chain = ChainSpec::periodic(n).unwrap();
        let momenta = periodic_momenta(n);
        let k0 = momenta[8];
        let amps: Vec<Complex64> = (1..=n)
            .map(|j| Complex64::from_polar(1.0 / (n as f64).sqrt(), k0 * j as f64))
            .collect();
        let state = SingleExcitationState::new(chain, amps).unwrap();
        let q = fourier(&state);
        for (i, qt) in q.iter().enumerate() {
            if i == 8 {
                assert!((qt - Complex64::new(1.0, 0.0)).norm() < 1e-13);
            } else {
                assert!(qt.norm() < 1e-13, "leakage {} at mode {}", qt.norm(), i);
            }
        }
    }

    #[test]
    fn fourier_round_trip_matches_oracle() {
        // Deterministic pseudo-random state, N ≤ 64.
        let n = 48;
        let chain = ChainSpec::periodic(n).unwrap();
        let amps: Vec<Complex64> = (0..n)
            .map(|i| {
                let x = ((i * 2654435761 + 12345) % 1000) as f64 / 1000.0 - 0.5;
                let y = ((i * 40503 + 977) % 1000) as f64 / 1000.0 - 0.5;
                Complex64::new(x, y)
            })
            .collect();
        let state = SingleExcitationState::normalized(chain, amps).unwrap();
        let q = fourier(&state);
        let oracle = dft_oracle(&state);
        for (a, b) in q.iter().zip(&oracle) {
            assert!((a - b).norm() < 1e-13);
        }
        let back = inverse_fourier(chain, &q).unwrap();
        for (a, b) in back.amps().iter().zip(state.amps()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn eigenmode_is_stationary_up_to_phase() {
        let couplings = SpinCouplings::xx(3.0).unwrap();
        for chain in [ChainSpec::periodic(10).unwrap(), ChainSpec::open(10).unwrap()] {
            let basis = ModeBasis::for_chain(&chain, &couplings);
            let mut coeffs = vec![Complex64::new(0.0, 0.0); chain.n];
            coeffs[3] = Complex64::new(1.0, 0.0);
            let mode = basis.from_modes(&coeffs, chain).unwrap();
            let tau = 0.7;
            let evolved = evolve_single(&mode, &couplings, tau);
            let phase = Complex64::from_polar(1.0, -tau * basis.energies()[3]);
            for (a, b) in evolved.amps().iter().zip(mode.amps()) {
                assert!((a - b * phase).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn gaussian_packet_reaches_midpoint_at_half_exchange_time() {
        let n = 100;
        let j = 2.0;
        let couplings = SpinCouplings::xx(j).unwrap();
        let chain = ChainSpec::periodic(n).unwrap();
        let state = gaussian(chain, n as f64 / 4.0, n as f64 / 10.0, FRAC_PI_2);
        let v = 2.0 * j;
        let t_exchange = n as f64 / (2.0 * v);
        let evolved = evolve_single(&state, &couplings, t_exchange / 2.0);
        assert!((evolved.centroid() - n as f64 / 2.0).abs() < 0.5);
        assert!((evolved.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn evolution_composes_additively() {
        let couplings = SpinCouplings::xx(1.3).unwrap();
        for chain in [ChainSpec::periodic(30).unwrap(), ChainSpec::open(30).unwrap()] {
            let state = gaussian(chain, 10.0, 3.0, FRAC_PI_2);
            let a = evolve_single(&evolve_single(&state, &couplings, 0.8), &couplings, 1.7);
            let b = evolve_single(&state, &couplings, 2.5);
            let diff: f64 = a
                .amps()
                .iter()
                .zip(b.amps())
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(diff < 1e-12, "group property violated by {diff}");
        }
    }

    #[test]
    fn linear_transport_is_identity_at_zero_time() {
        let chain = ChainSpec::periodic(40).unwrap();
        let couplings = SpinCouplings::xx(2.0).unwrap();
        let state = gaussian(chain, 10.0, 4.0, FRAC_PI_2);
        let out = linear_transport_reference(&state, &couplings, 0.0, Carrier::PlusHalfPi);
        for (a, b) in out.amps().iter().zip(state.amps()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn linear_transport_translates_envelope_with_protocol_phase() {
        let n = 100usize;
        let j = 1.7;
        let couplings = SpinCouplings::xx(j).unwrap();
        let chain = ChainSpec::periodic(n).unwrap();
        let state = gaussian(chain, n as f64 / 4.0, n as f64 / 10.0, FRAC_PI_2);
        let v = 2.0 * j;
        let t_exchange = n as f64 / (2.0 * v);
        let out = linear_transport_reference(&state, &couplings, t_exchange, Carrier::PlusHalfPi);
        // Expected: circular shift by N/2 sites, global phase e^{iTJπ}.
        let phase = Complex64::from_polar(1.0, t_exchange * j * PI);
        let shift = n / 2;
        for site in 1..=n {
            let src = ((site + n - 1 - shift) % n) + 1;
            let expected = state.amp(src) * phase;
            assert!(
                (out.amp(site) - expected).norm() < 1e-10,
                "site {site}: {} vs {}",
                out.amp(site),
                expected
            );
        }
    }

    #[test]
    fn left_mover_translates_leftward() {
        let n = 64usize;
        let couplings = SpinCouplings::xx(1.0).unwrap();
        let chain = ChainSpec::periodic(n).unwrap();
        let state = gaussian(chain, 40.0, 4.0, -FRAC_PI_2);
        let tau = 4.0; // v = 2 sites/s leftward → displacement −8
        let out = linear_transport_reference(&state, &couplings, tau, Carrier::MinusHalfPi);
        assert!((out.centroid() - 32.0).abs() < 0.01, "centroid {}", out.centroid());
    }

    #[test]
    fn cosine_vs_linear_transport_overlap_for_headline_packet() {
        // σ = 10 packet carried for the N = 100 exchange time, placed on a
        // ring with clean tails so only the band curvature contributes.
        let ring = 160usize;
        let j = 1.0;
        let couplings = SpinCouplings::xx(j).unwrap();
        let chain = ChainSpec::periodic(ring).unwrap();
        let t_exchange = 100.0 / (4.0 * j);
        let state = gaussian(chain, (ring as f64 - 50.0) / 2.0, 10.0, FRAC_PI_2);
        let full = evolve_single(&state, &couplings, t_exchange);
        let lin = linear_transport_reference(&state, &couplings, t_exchange, Carrier::PlusHalfPi);
        let overlap_sq = lin.overlap(&full).norm_sqr();
        // 1 − O(1e-4): the cubic term of the band at σ_k = 1/(2σ).
        assert!(
            overlap_sq > 1.0 - 1e-3 && overlap_sq < 1.0 - 1e-6,
            "overlap^2 = {overlap_sq}"
        );
    }

    #[test]
    fn unitarity_and_energy_conservation() {
        let n = 60;
        let j = 1.1;
        let couplings = SpinCouplings::xx(j).unwrap();
        for chain in [ChainSpec::periodic(n).unwrap(), ChainSpec::open(n).unwrap()] {
            let basis = ModeBasis::for_chain(&chain, &couplings);
            let state = gaussian(chain, 20.0, 5.0, FRAC_PI_2);
            let e0 = basis.energy_expectation(&state);
            let t_exchange = n as f64 / (4.0 * j);
            for steps in [1, 3, 10] {
                let evolved = evolve_single(&state, &couplings, steps as f64 * t_exchange);
                assert!((evolved.norm() - 1.0).abs() < 1e-10);
                let e = basis.energy_expectation(&evolved);
                assert!((e - e0).abs() <= 1e-9 * e0.abs().max(2.0 * j));
            }
        }
    }

    #[test]
    fn open_and_periodic_agree_for_interior_packets() {
        let n = 200usize;
        let j = 1.0;
        let couplings = SpinCouplings::xx(j).unwrap();
        let open = gaussian(ChainSpec::open(n).unwrap(), 50.0, 8.0, FRAC_PI_2);
        let per = gaussian(ChainSpec::periodic(n).unwrap(), 50.0, 8.0, FRAC_PI_2);
        // Edge tail mass below 1e-8 at start and end of the run.
        let edge_mass: f64 = open.amps()[..4].iter().chain(open.amps()[n - 4..].iter())
            .map(|a| a.norm_sqr())
            .sum();
        assert!(edge_mass < 1e-8);
        let t_exchange = n as f64 / (4.0 * j);
        let a = evolve_single(&open, &couplings, t_exchange);
        let b = evolve_single(&per, &couplings, t_exchange);
        let fidelity = a
            .amps()
            .iter()
            .zip(b.amps())
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            .norm_sqr();
        assert!(fidelity >= 1.0 - 1e-6, "open/periodic fidelity {fidelity}");
    }

    #[test]
    fn group_velocity_reference_points() {
        let couplings = SpinCouplings::xx(5.0).unwrap();
        assert!((group_velocity(&couplings, FRAC_PI_2) - 10.0).abs() < 1e-12);
        assert!(group_velocity(&couplings, 0.0).abs() < 1e-12);
        assert!((group_velocity(&couplings, -FRAC_PI_2) + 10.0).abs() < 1e-12);
    }

    #[test]
    fn carrier_classification() {
        assert_eq!(Carrier::from_momentum(FRAC_PI_2).unwrap(), Carrier::PlusHalfPi);
        assert_eq!(Carrier::from_momentum(-FRAC_PI_2).unwrap(), Carrier::MinusHalfPi);
        assert!(Carrier::from_momentum(0.3).is_err());
        assert_eq!(fold_phase(Carrier::PlusHalfPi.momentum()), FRAC_PI_2);
    }

    #[test]
    fn periodic_momentum_grid_spans_the_zone() {
        let ks = periodic_momenta(100);
        assert_eq!(ks.len(), 100);
        assert!(ks.windows(2).all(|w| w[1] > w[0]));
        assert!((ks.last().unwrap() - PI).abs() < 1e-12);
        assert!(ks[0] > -PI);
        assert!(ks.iter().any(|&k| (k - FRAC_PI_2).abs() < 1e-12));
    }
}
