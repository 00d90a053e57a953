//! Built-in oracle suite: fast end-to-end checks of the numerical core,
//! with a hidden fault-injection mode as the negative control.

use num_complex::Complex64;
use serde::Serialize;
use spinwave_gate::freefermion::periodic_momenta;
use spinwave_gate::*;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub checks: Vec<Check>,
}

fn check(name: &'static str, residual: f64, threshold: f64) -> Check {
    Check { name, residual, threshold, pass: residual.abs() <= threshold }
}

fn seeded_state(chain: ChainSpec, seed: u64) -> TwoExcitationState {
    let m = chain.n * (chain.n - 1) / 2;
    let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let amps: Vec<Complex64> = (0..m).map(|_| Complex64::new(next(), next())).collect();
    TwoExcitationState::normalized(chain, amps).unwrap()
}

/// Run the oracle suite. `inject_fault` flips the sign of one hopping
/// element in every sector Hamiltonian before checking; a healthy build
/// must then fail.
pub fn run(inject_fault: bool) -> CheckReport {
    let mut checks = Vec::new();
    let build = |chain: &ChainSpec, couplings: &SpinCouplings| {
        let mut h = build_hamiltonian(chain, couplings).expect("valid chain");
        if inject_fault {
            h.corrupt_one_hop_for_selfcheck();
        }
        h
    };

    // Hermiticity on random vectors, open and periodic.
    let mut herm: f64 = 0.0;
    for chain in [ChainSpec::open(16).unwrap(), ChainSpec::periodic(16).unwrap()] {
        let h = build(&chain, &SpinCouplings::new(1.1, 0.7).unwrap());
        let x = seeded_state(chain, 11);
        let y = seeded_state(chain, 23);
        let hy = h.apply(y.amps());
        let hx = h.apply(x.amps());
        let lhs: Complex64 = x.amps().iter().zip(&hy).map(|(a, b)| a.conj() * b).sum();
        let rhs: Complex64 = hx.iter().zip(y.amps()).map(|(a, b)| a.conj() * b).sum();
        herm = herm.max((lhs - rhs).norm());
    }
    checks.push(check("hermiticity", herm, 1e-12));

    // Single-excitation unitarity out to ten exchange times.
    let couplings = SpinCouplings::xx(1.0).unwrap();
    let chain = ChainSpec::open(64).unwrap();
    let packet =
        make_packet(&PacketSpec::new(chain, 16.0, 4.0, FRAC_PI_2).unwrap());
    let drift = (evolve_single(&packet, &couplings, 10.0 * 16.0).norm() - 1.0).abs();
    checks.push(check("single_unitarity", drift, 1e-10));

    // Two-body unitarity through both propagators.
    let chain16 = ChainSpec::open(16).unwrap();
    let h16 = build(&chain16, &SpinCouplings::new(1.0, 0.4).unwrap());
    let psi = seeded_state(chain16, 5);
    let mut two_drift: f64 = 0.0;
    for method in [PropagationMethod::Dense, PropagationMethod::Chebyshev] {
        let out = evolve_two_with(&psi, &h16, 5.0, 1e-12, method).unwrap();
        two_drift = two_drift.max((out.norm() - 1.0).abs());
    }
    checks.push(check("two_body_unitarity", two_drift, 1e-10));

    // Periodic plane waves are eigenvectors with energy ε(k) + ε(p).
    let chain24 = ChainSpec::periodic(24).unwrap();
    let h24 = build(&chain24, &couplings);
    let ks = periodic_momenta(24);
    let mut resid: f64 = 0.0;
    for (a, b) in [(0usize, 12usize), (5, 17), (11, 12)] {
        let psi = antisymmetric_plane_wave(&chain24, ks[b], ks[a]).unwrap();
        let e = pair_energy(&couplings, ks[a], ks[b]);
        let hpsi = h24.apply(psi.amps());
        let r: f64 = hpsi
            .iter()
            .zip(psi.amps())
            .map(|(hp, p)| (hp - p * e).norm_sqr())
            .sum::<f64>()
            .sqrt();
        resid = resid.max(r);
    }
    checks.push(check("eigenstate_residual", resid, 1e-10));

    // Sector spectrum is the free pair-energy multiset.
    let chain16p = ChainSpec::periodic(16).unwrap();
    let h16p = build(&chain16p, &couplings);
    let mut eigs = h16p.eigenvalues().unwrap();
    let ks16 = periodic_momenta(16);
    let mut expected: Vec<f64> = (0..16)
        .flat_map(|a| ((a + 1)..16).map(move |b| (a, b)))
        .map(|(a, b)| pair_energy(&couplings, ks16[a], ks16[b]))
        .collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let spec_err = eigs
        .iter()
        .zip(&expected)
        .map(|(e, x)| (e - x).abs())
        .fold(0.0f64, f64::max);
    checks.push(check("spectrum_multiset", spec_err, 1e-9));

    // Free-fermion factorization: sector evolution of a stored pair
    // matches the determinant of single-particle evolutions.
    let n = 40usize;
    let chain40 = ChainSpec::open(n).unwrap();
    let h40 = build(&chain40, &couplings);
    let r = make_packet(&PacketSpec::new(chain40, 10.0, 2.0, FRAC_PI_2).unwrap());
    let l = make_packet(&PacketSpec::new(chain40, 30.0, 2.0, -FRAC_PI_2).unwrap());
    let tau = n as f64 / 4.0;
    let (psi0, _) = product_state(&r, &l).unwrap();
    let psi_t = evolve_two(&psi0, &h40, tau, 1e-12).unwrap();
    let r_t = evolve_single(&r, &couplings, tau);
    let l_t = evolve_single(&l, &couplings, tau);
    let basis = PairBasis::new(n).unwrap();
    let mut det: Vec<Complex64> = Vec::with_capacity(basis.dim());
    for (j, jp) in basis.iter() {
        det.push(r_t.amps()[j - 1] * l_t.amps()[jp - 1] - r_t.amps()[jp - 1] * l_t.amps()[j - 1]);
    }
    let dn = det.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let overlap: Complex64 =
        det.iter().zip(psi_t.amps()).map(|(d, p)| d.conj() * p).sum::<Complex64>() / dn;
    checks.push(check("jw_factorization", 1.0 - overlap.norm_sqr(), 1e-9));

    // Chebyshev against the dense eigendecomposition.
    let chain12 = ChainSpec::open(12).unwrap();
    let h12 = build(&chain12, &couplings);
    let psi12 = seeded_state(chain12, 42);
    let dense = evolve_two_with(&psi12, &h12, 3.0, 1e-12, PropagationMethod::Dense).unwrap();
    let cheb = evolve_two_with(&psi12, &h12, 3.0, 1e-12, PropagationMethod::Chebyshev).unwrap();
    let diff: f64 = dense
        .amps()
        .iter()
        .zip(cheb.amps())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    checks.push(check("dense_vs_chebyshev", diff, 1e-9));

    let pass = checks.iter().all(|c| c.pass);
    CheckReport { pass, checks }
}
