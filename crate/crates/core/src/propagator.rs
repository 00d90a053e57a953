//! Time propagation backends for the two-excitation sector.
//!
//! Dense path: full symmetric eigendecomposition (LAPACK `dsyevd`), the
//! gold-standard oracle, accurate to rounding. Iterative path: Chebyshev
//! expansion of e^{−iHτ} on the Gershgorin enclosure of the spectrum,
//!
//!   e^{−ixH̃} = ∑_n (2 − δ_{n0}) (−i)^n J_n(x) T_n(H̃),
//!
//! truncated where the Bessel tail ∑_{n>K} 2|J_n(x)| drops below the step
//! tolerance. |T_n| ≤ 1 on [−1, 1] makes that tail a rigorous truncation
//! bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::twobody::SectorHamiltonian;

/// How [`crate::twobody::evolve_two_with`] propagates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropagationMethod {
    /// Dense below [`crate::twobody::DENSE_DIM_LIMIT`], Chebyshev above.
    #[default]
    Auto,
    Dense,
    Chebyshev,
}

impl PropagationMethod {
    pub(crate) fn resolve(self, dim: usize) -> Self {
        match self {
            PropagationMethod::Auto => {
                if dim <= crate::twobody::DENSE_DIM_LIMIT {
                    PropagationMethod::Dense
                } else {
                    PropagationMethod::Chebyshev
                }
            }
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PropagationMethod::Auto => "auto",
            PropagationMethod::Dense => "dense",
            PropagationMethod::Chebyshev => "chebyshev",
        }
    }
}

/// Hard ceiling on sparse matrix-vector products per evolve call.
const MATVEC_BUDGET: usize = 5_000_000;
/// Largest scaled time per Chebyshev step; longer evolutions are split so
/// each step's truncation error can be budgeted as tol/steps.
const MAX_X_PER_STEP: f64 = 5000.0;

/// ψ(τ) = Z e^{−iΛτ} Zᵀ ψ(0) via full eigendecomposition.
pub(crate) fn dense_evolve(
    h: &SectorHamiltonian,
    psi: &[Complex64],
    tau: f64,
) -> Result<Vec<Complex64>> {
    let m = h.dim();
    let mut a = h.to_dense_col_major();
    let w = dsyevd(m, &mut a, true)?;
    // Mode coefficients c = Zᵀψ, rotated by the eigenphases.
    let mut c = vec![Complex64::new(0.0, 0.0); m];
    for (col, cc) in c.iter_mut().enumerate() {
        let z = &a[col * m..(col + 1) * m];
        let mut acc = Complex64::new(0.0, 0.0);
        for (zi, pi) in z.iter().zip(psi) {
            acc += pi * *zi;
        }
        *cc = acc * Complex64::from_polar(1.0, -w[col] * tau);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    for (col, cc) in c.iter().enumerate() {
        let z = &a[col * m..(col + 1) * m];
        for (oi, zi) in out.iter_mut().zip(z) {
            *oi += cc * *zi;
        }
    }
    Ok(out)
}

/// Ascending spectrum of the sector Hamiltonian.
pub(crate) fn dense_eigenvalues(h: &SectorHamiltonian) -> Result<Vec<f64>> {
    let m = h.dim();
    let mut a = h.to_dense_col_major();
    dsyevd(m, &mut a, false)
}

/// LAPACK divide-and-conquer symmetric eigensolver. `a` is col-major n×n;
/// with `vectors` it is overwritten by the eigenvectors (one per column).
fn dsyevd(n: usize, a: &mut [f64], vectors: bool) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let jobz = if vectors { b'V' } else { b'N' } as std::ffi::c_char;
    let uplo = b'L' as std::ffi::c_char;
    let ni = n as i32;
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;
    // Workspace query.
    let (mut work_q, mut iwork_q) = (0.0f64, 0i32);
    unsafe {
        lapack_sys::dsyevd_(
            &jobz,
            &uplo,
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            &mut work_q,
            &-1i32,
            &mut iwork_q,
            &-1i32,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Backend(format!("dsyevd workspace query failed, info = {info}")));
    }
    let lwork = work_q as i32;
    let liwork = iwork_q;
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        lapack_sys::dsyevd_(
            &jobz,
            &uplo,
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Backend(format!("dsyevd failed to converge, info = {info}")));
    }
    Ok(w)
}

/// Chebyshev propagation with truncation error ≤ tol in 2-norm.
pub(crate) fn chebyshev_evolve(
    h: &SectorHamiltonian,
    psi: &[Complex64],
    tau: f64,
    tol: f64,
) -> Result<Vec<Complex64>> {
    let m = h.dim();
    assert_eq!(psi.len(), m);
    let (emin, emax) = h.gershgorin_bounds();
    let alpha = 0.5 * (emax - emin);
    let beta = 0.5 * (emax + emin);
    if alpha < 1e-300 {
        // H is a multiple of the identity on the enclosure: pure phase.
        let phase = Complex64::from_polar(1.0, -beta * tau);
        return Ok(psi.iter().map(|p| p * phase).collect());
    }

    let x_total = alpha * tau;
    let steps = (x_total.abs() / MAX_X_PER_STEP).ceil().max(1.0);
    let n_steps = steps as usize;
    let tol_step = tol / steps;
    let x_step = x_total / steps;
    let tau_step = tau / steps;

    let coeffs = chebyshev_coefficients(x_step, tol_step)?;
    if n_steps.saturating_mul(coeffs.len()) > MATVEC_BUDGET {
        return Err(Error::NonConvergence(format!(
            "step budget exceeded: {n_steps} steps x {} terms",
            coeffs.len()
        )));
    }

    let inv_alpha = 1.0 / alpha;
    let step_phase = Complex64::from_polar(1.0, -beta * tau_step);
    // y = (H x − βx)/α
    let apply_scaled = |x: &[Complex64], y: &mut [Complex64]| {
        h.apply_into(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = (*yi - xi * beta) * inv_alpha;
        }
    };

    let mut state = psi.to_vec();
    let mut t_prev = vec![Complex64::new(0.0, 0.0); m];
    let mut t_cur = vec![Complex64::new(0.0, 0.0); m];
    let mut t_next = vec![Complex64::new(0.0, 0.0); m];
    let mut acc = vec![Complex64::new(0.0, 0.0); m];
    for _ in 0..n_steps {
        t_prev.copy_from_slice(&state);
        for (a, tp) in acc.iter_mut().zip(&t_prev) {
            *a = coeffs[0] * tp;
        }
        if coeffs.len() > 1 {
            apply_scaled(&t_prev, &mut t_cur);
            for (a, tc) in acc.iter_mut().zip(&t_cur) {
                *a += coeffs[1] * tc;
            }
        }
        for c in coeffs.iter().skip(2) {
            // T_{n+1} = 2 H̃ T_n − T_{n−1}
            apply_scaled(&t_cur, &mut t_next);
            for ((tn, tp), a) in t_next.iter_mut().zip(&t_prev).zip(acc.iter_mut()) {
                *tn = 2.0 * *tn - tp;
                *a += *c * *tn;
            }
            std::mem::swap(&mut t_prev, &mut t_cur);
            std::mem::swap(&mut t_cur, &mut t_next);
        }
        for (s, a) in state.iter_mut().zip(&acc) {
            *s = a * step_phase;
        }
    }
    Ok(state)
}

/// Coefficients (2 − δ_{n0}) (∓i)^n J_n(|x|) of the Chebyshev expansion of
/// e^{−ix cosθ}, truncated where the remaining tail is below tol.
fn chebyshev_coefficients(x: f64, tol: f64) -> Result<Vec<Complex64>> {
    let ax = x.abs();
    // J_n(|x|) dies off over a margin of O(|x|^{1/3}) orders past n = |x|;
    // 25·|x|^{1/3} + 80 pushes the tail below 1e-30 for any step size.
    let n_max = (ax.ceil() as usize) + 80 + (25.0 * ax.cbrt()).ceil() as usize;
    let bessel = bessel_j_sequence(ax, n_max);
    if bessel.last().unwrap().abs() > 1e-30 {
        return Err(Error::NonConvergence(format!(
            "Bessel tail still {:.3e} at order {n_max}",
            bessel.last().unwrap()
        )));
    }
    // Smallest K with ∑_{n>K} 2|J_n| ≤ tol.
    let mut tail = 0.0;
    let mut k_cut = n_max;
    for n in (1..=n_max).rev() {
        tail += 2.0 * bessel[n].abs();
        if tail > tol {
            k_cut = n;
            break;
        }
        k_cut = n - 1;
    }
    if k_cut >= n_max {
        return Err(Error::NonConvergence(format!(
            "requested tolerance {tol:.3e} unreachable at order {n_max}"
        )));
    }
    // (−i)^n for x > 0; J_n(−x) = (−1)^n J_n(x) turns it into (+i)^n.
    let unit = if x >= 0.0 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    let mut coeffs = Vec::with_capacity(k_cut + 1);
    let mut phase = Complex64::new(1.0, 0.0);
    for (n, &jn) in bessel.iter().take(k_cut + 1).enumerate() {
        let weight = if n == 0 { 1.0 } else { 2.0 };
        coeffs.push(phase * (weight * jn));
        phase *= unit;
    }
    Ok(coeffs)
}

/// J_0(x)..J_{n_max}(x) for x ≥ 0 by Miller's downward recurrence with the
/// normalization J_0 + 2∑_{k≥1} J_{2k} = 1.
fn bessel_j_sequence(x: f64, n_max: usize) -> Vec<f64> {
    assert!(x >= 0.0);
    let mut out = vec![0.0f64; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let start = n_max.max(x.ceil() as usize) + 50 + (2.0 * (n_max as f64).sqrt()) as usize;
    let mut j_hi = 0.0f64;
    let mut j_cur = 1e-280f64;
    let mut norm = 0.0f64;
    for m in (0..=start).rev() {
        if m <= n_max {
            out[m] = j_cur;
        }
        if m % 2 == 0 {
            norm += if m == 0 { j_cur } else { 2.0 * j_cur };
        }
        if m > 0 {
            let j_lo = (2.0 * m as f64 / x) * j_cur - j_hi;
            j_hi = j_cur;
            j_cur = j_lo;
            if j_cur.abs() > 1e250 {
                let s = 1e-250;
                j_cur *= s;
                j_hi *= s;
                norm *= s;
                for v in out.iter_mut() {
                    *v *= s;
                }
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}
