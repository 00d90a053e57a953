//! Exact two-excitation (two spin flips) sector engine.
//!
//! Everything lives in the ordered-pair occupation basis |j, j′⟩ with
//! 1 ≤ j < j′ ≤ N, dimension M = N(N−1)/2. On an open chain the two-flip
//! sector of the spin Hamiltonian and the two-particle sector of the
//! fermionized Hamiltonian have identical matrix elements in this basis,
//! so no string bookkeeping is needed. The periodic variant is a
//! diagnostic mode for plane-wave eigenstate checks: its wrap-around hop
//! carries the fermionic reordering sign, which makes the antisymmetric
//! plane waves on the 2π/N momentum grid exact eigenstates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::freefermion::{periodic_momenta, SingleExcitationState};
use crate::model::{dispersion, Boundary, ChainSpec, SpinCouplings};
use crate::propagator::{self, PropagationMethod};

/// Sector size above which the automatic method selection switches from
/// dense eigendecomposition to the Chebyshev propagator. N ≤ 200 stays
/// dense. The dense path needs roughly 24·M² bytes of workspace; on
/// memory-constrained machines pick [`PropagationMethod::Chebyshev`]
/// explicitly for large chains.
pub const DENSE_DIM_LIMIT: usize = 20_000;

/// Bijective map between ordered site pairs (j, j′), 1 ≤ j < j′ ≤ N, and
/// linear indices 0..M in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairBasis {
    n: usize,
    /// offsets[j-1] = linear index of pair (j, j+1); offsets[n-1] = M.
    offsets: Vec<usize>,
}

impl PairBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("pair basis needs n >= 2, got {n}")));
        }
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0usize;
        for j in 1..n {
            offsets.push(acc);
            acc += n - j;
        }
        offsets.push(acc);
        Ok(Self { n, offsets })
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    /// M = N(N−1)/2.
    pub fn dim(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Linear index of the ordered pair (j, j′), 1-based sites, j < j′.
    pub fn index(&self, j: usize, jp: usize) -> usize {
        assert!(1 <= j && j < jp && jp <= self.n, "pair ({j}, {jp}) out of range");
        self.offsets[j - 1] + (jp - j - 1)
    }

    /// Ordered pair of the linear index.
    pub fn pair(&self, idx: usize) -> (usize, usize) {
        assert!(idx < self.dim(), "index {idx} out of range");
        let j = self.offsets.partition_point(|&o| o <= idx);
        (j, idx - self.offsets[j - 1] + j + 1)
    }

    /// All pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |j| ((j + 1)..=self.n).map(move |jp| (j, jp)))
    }
}

/// Amplitudes of two spin flips over the ordered pair basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoExcitationState {
    chain: ChainSpec,
    amps: Vec<Complex64>,
}

impl TwoExcitationState {
    pub fn new(chain: ChainSpec, amps: Vec<Complex64>) -> Result<Self> {
        let m = chain.n * (chain.n - 1) / 2;
        if amps.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector has {} entries for a sector of dimension {m}",
                amps.len()
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

    pub fn normalized(chain: ChainSpec, mut amps: Vec<Complex64>) -> Result<Self> {
        let m = chain.n * (chain.n - 1) / 2;
        if amps.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector has {} entries for a sector of dimension {m}",
                amps.len()
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

    pub fn basis(&self) -> PairBasis {
        PairBasis::new(self.chain.n).expect("chain has >= 4 sites")
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude on the ordered pair (j, j′), 1-based sites.
    pub fn amp(&self, j: usize, jp: usize) -> Complex64 {
        self.amps[self.basis().index(j, jp)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }
}

/// Sparse symmetric Hamiltonian on the pair basis:
///
///   off-diagonal −J between pairs related by one flip hopping one site
///   onto an empty site (+J on the periodic wrap hop, which reorders the
///   pair and picks up the fermionic sign); diagonal V on nearest-neighbor
///   pairs, 0 elsewhere.
#[derive(Debug, Clone)]
pub struct SectorHamiltonian {
    chain: ChainSpec,
    couplings: SpinCouplings,
    basis: PairBasis,
    diag: Vec<f64>,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SectorHamiltonian {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn chain(&self) -> &ChainSpec {
        &self.chain
    }

    pub fn couplings(&self) -> &SpinCouplings {
        &self.couplings
    }

    pub fn basis(&self) -> &PairBasis {
        &self.basis
    }

    pub fn boundary(&self) -> Boundary {
        self.chain.boundary
    }

    /// Matrix element ⟨row|H|col⟩ by direct lookup.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        if row == col {
            return self.diag[row];
        }
        let lo = self.row_ptr[row];
        let hi = self.row_ptr[row + 1];
        match self.cols[lo..hi].binary_search(&(col as u32)) {
            Ok(k) => self.vals[lo + k],
            Err(_) => 0.0,
        }
    }

    /// y = H x.
    pub fn apply_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        let m = self.dim();
        assert_eq!(x.len(), m);
        assert_eq!(y.len(), m);
        for i in 0..m {
            let mut acc = x[i] * self.diag[i];
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += x[self.cols[k] as usize] * self.vals[k];
            }
            y[i] = acc;
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.dim()];
        self.apply_into(x, &mut y);
        y
    }

    /// ⟨x|H|x⟩ (real for Hermitian H; the real part is returned).
    pub fn expectation(&self, x: &[Complex64]) -> f64 {
        let hx = self.apply(x);
        x.iter().zip(&hx).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// Rigorous spectral enclosure [lo, hi] from Gershgorin disks.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.dim() {
            let r: f64 = (self.row_ptr[i]..self.row_ptr[i + 1]).map(|k| self.vals[k].abs()).sum();
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Add c·Identity. Shifts every eigenvalue by c and multiplies evolved
    /// states by the uniform phase e^{−icτ}; physical (nonlinear) phases
    /// are insensitive to it.
    pub fn add_uniform_shift(&mut self, c: f64) {
        for d in &mut self.diag {
            *d += c;
        }
    }

    /// Dense spectrum, ascending. Memory O(M²); intended for diagnostics
    /// at modest N.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        propagator::dense_eigenvalues(self)
    }

    pub(crate) fn to_dense_col_major(&self) -> Vec<f64> {
        let m = self.dim();
        let mut a = vec![0.0f64; m * m];
        for i in 0..m {
            a[i + i * m] = self.diag[i];
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                a[i + self.cols[k] as usize * m] = self.vals[k];
            }
        }
        a
    }

    /// Flip the sign of one hopping element (and its transpose partner).
    /// Produces a Hermitian but physically wrong operator; used as the
    /// negative control of the self-check suite.
    #[doc(hidden)]
    pub fn corrupt_one_hop_for_selfcheck(&mut self) {
        if self.vals.is_empty() {
            return;
        }
        let row = 0usize;
        let k0 = self.row_ptr[row];
        let col = self.cols[k0] as usize;
        self.vals[k0] = -self.vals[k0];
        let lo = self.row_ptr[col];
        let hi = self.row_ptr[col + 1];
        if let Ok(k) = self.cols[lo..hi].binary_search(&(row as u32)) {
            self.vals[lo + k] = -self.vals[lo + k];
        }
    }
}

/// Assemble the two-flip sector Hamiltonian for the given chain.
pub fn build_hamiltonian(chain: &ChainSpec, couplings: &SpinCouplings) -> Result<SectorHamiltonian> {
    if chain.n < 4 {
        return Err(Error::InvalidParameter(format!(
            "two-excitation sector needs n >= 4 sites, got {}",
            chain.n
        )));
    }
    let n = chain.n;
    let basis = PairBasis::new(n)?;
    let m = basis.dim();
    assert!(m <= u32::MAX as usize, "sector too large for 32-bit column indices");
    let periodic = chain.boundary == Boundary::Periodic;
    let j_amp = couplings.j;
    let v_amp = couplings.v;

    let mut diag = vec![0.0f64; m];
    let mut row_ptr = Vec::with_capacity(m + 1);
    let mut cols: Vec<u32> = Vec::with_capacity(4 * m);
    let mut vals: Vec<f64> = Vec::with_capacity(4 * m);
    row_ptr.push(0);

    let mut row_entries: Vec<(u32, f64)> = Vec::with_capacity(4);
    for (idx, (j, jp)) in basis.iter().enumerate() {
        // Ising diagonal: V on nearest-neighbor pairs (ring-adjacent ones
        // included in the periodic diagnostic mode).
        let adjacent = jp == j + 1 || (periodic && j == 1 && jp == n);
        if adjacent {
            diag[idx] = v_amp;
        }

        row_entries.clear();
        // One hop of either flip to an empty neighboring site.
        for (site, other) in [(j, jp), (jp, j)] {
            for step in [-1isize, 1] {
                let raw = site as isize + step;
                let (target, wrapped) = if (1..=n as isize).contains(&raw) {
                    (raw as usize, false)
                } else if periodic {
                    ((raw - 1).rem_euclid(n as isize) as usize + 1, true)
                } else {
                    continue;
                };
                if target == other {
                    continue; // hard-core: target occupied
                }
                let (a, b) = if target < other { (target, other) } else { (other, target) };
                // Bulk hops keep the pair ordered: element −J. A wrap hop
                // carries the mover past its partner, so the fermionic
                // reordering sign flips it to +J.
                let element = if wrapped { j_amp } else { -j_amp };
                row_entries.push((basis.index(a, b) as u32, element));
            }
        }
        row_entries.sort_unstable_by_key(|e| e.0);
        for &(c, v) in &row_entries {
            cols.push(c);
            vals.push(v);
        }
        row_ptr.push(cols.len());
    }

    Ok(SectorHamiltonian {
        chain: *chain,
        couplings: *couplings,
        basis,
        diag,
        row_ptr,
        cols,
        vals,
    })
}

/// Evolve ψ(τ) = e^{−iHτ} ψ(0) with 2-norm error at most `tol`.
///
/// Method selection: dense eigendecomposition for sectors of dimension at
/// most [`DENSE_DIM_LIMIT`], otherwise a Chebyshev polynomial propagator
/// with per-step truncation control summing to ≤ `tol`.
pub fn evolve_two(
    state: &TwoExcitationState,
    h: &SectorHamiltonian,
    tau: f64,
    tol: f64,
) -> Result<TwoExcitationState> {
    evolve_two_with(state, h, tau, tol, PropagationMethod::Auto)
}

/// [`evolve_two`] with an explicit method override.
pub fn evolve_two_with(
    state: &TwoExcitationState,
    h: &SectorHamiltonian,
    tau: f64,
    tol: f64,
    method: PropagationMethod,
) -> Result<TwoExcitationState> {
    if state.chain != h.chain {
        return Err(Error::DimensionMismatch(
            "state and Hamiltonian live on different chains".into(),
        ));
    }
    if !(1e-14..=1e-6).contains(&tol) {
        return Err(Error::InvalidParameter(format!(
            "propagation tolerance {tol} outside [1e-14, 1e-6]"
        )));
    }
    if !tau.is_finite() {
        return Err(Error::InvalidParameter(format!("evolution time {tau} must be finite")));
    }
    if tau == 0.0 {
        return Ok(state.clone());
    }
    let amps = match method.resolve(h.dim()) {
        PropagationMethod::Dense => propagator::dense_evolve(h, state.amps(), tau)?,
        PropagationMethod::Chebyshev => propagator::chebyshev_evolve(h, state.amps(), tau, tol)?,
        PropagationMethod::Auto => unreachable!("resolve returns a concrete method"),
    };
    Ok(TwoExcitationState { chain: state.chain, amps })
}

/// Hard-core product of two single-flip envelopes:
///
///   amps(j, j′) ∝ R(j)L(j′) + R(j′)L(j)   for j < j′,
///
/// renormalized to one. The returned factor is the 2-norm of the raw
/// symmetrized vector: √2·√(1 − ∑|R|⁴) for identical envelopes (the
/// double-count convention above), and 1 minus the hard-core overlap
/// deficit for well-separated packets.
pub fn product_state(
    r: &SingleExcitationState,
    l: &SingleExcitationState,
) -> Result<(TwoExcitationState, f64)> {
    if r.chain() != l.chain() {
        return Err(Error::DimensionMismatch(
            "product state needs both envelopes on the same chain".into(),
        ));
    }
    let chain = *r.chain();
    let basis = PairBasis::new(chain.n)?;
    let ra = r.amps();
    let la = l.amps();
    let mut amps = Vec::with_capacity(basis.dim());
    for (j, jp) in basis.iter() {
        amps.push(ra[j - 1] * la[jp - 1] + ra[jp - 1] * la[j - 1]);
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::InvalidParameter(
            "product state vanishes (envelopes occupy a single common site)".into(),
        ));
    }
    for a in &mut amps {
        *a /= norm;
    }
    Ok((TwoExcitationState { chain, amps }, norm))
}

/// Antisymmetric two-magnon plane wave on a periodic chain:
///
///   amps(j, j′) ∝ e^{ikj} e^{ipj′} − e^{ipj} e^{ikj′},
///
/// normalized. For V = 0 this is an exact eigenstate with energy
/// ε(k) + ε(p). Both momenta must lie on the 2π/N grid and differ;
/// swapping k ↔ p negates the state.
pub fn antisymmetric_plane_wave(
    chain: &ChainSpec,
    k: f64,
    p: f64,
) -> Result<TwoExcitationState> {
    if chain.boundary != Boundary::Periodic {
        return Err(Error::InvalidParameter(
            "antisymmetric plane waves are defined on the periodic chain".into(),
        ));
    }
    let grid = periodic_momenta(chain.n);
    let snap = |q: f64| -> Result<f64> {
        let nearest = grid
            .iter()
            .copied()
            .min_by(|a, b| (a - q).abs().partial_cmp(&(b - q).abs()).unwrap())
            .unwrap();
        if (nearest - q).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "momentum {q} is not on the 2π/N grid"
            )));
        }
        Ok(nearest)
    };
    let k = snap(k)?;
    let p = snap(p)?;
    if k == p {
        return Err(Error::InvalidParameter(
            "k = p annihilates the antisymmetric state (Pauli exclusion)".into(),
        ));
    }
    let basis = PairBasis::new(chain.n)?;
    let mut amps = Vec::with_capacity(basis.dim());
    for (j, jp) in basis.iter() {
        let (j, jp) = (j as f64, jp as f64);
        let direct = Complex64::from_polar(1.0, k * j + p * jp);
        let exchanged = Complex64::from_polar(1.0, p * j + k * jp);
        amps.push(direct - exchanged);
    }
    TwoExcitationState::normalized(*chain, amps)
}

/// Energy ε(k) + ε(p) of the antisymmetric plane wave at V = 0.
pub fn pair_energy(couplings: &SpinCouplings, k: f64, p: f64) -> f64 {
    dispersion(couplings, k) + dispersion(couplings, p)
}
