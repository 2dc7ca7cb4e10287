//! Eigenvalue solvers for small dense complex matrices.
//!
//! Hermitian matrices go through a cyclic complex Jacobi iteration, which is
//! simple, unconditionally stable, and plenty fast at the orders this crate
//! targets. General matrices go through a Householder reduction to upper
//! Hessenberg form followed by a shifted QR iteration with Givens rotations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Admission tolerance for the Hermitian solver: the input must satisfy
/// `max_ij |A_ij - conj(A_ji)| <= HERMITIAN_ADMIT_TOL * ||A||_F`.
pub const HERMITIAN_ADMIT_TOL: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius mass drops below this
/// multiple of the input norm; the eigenpair residual is of the same order,
/// comfortably inside the 1e-10 * ||A|| residual contract.
const JACOBI_OFF_TOL: f64 = 1e-13;

/// Jacobi converges quadratically; double digits of sweeps would already be
/// pathological for the orders involved.
const MAX_JACOBI_SWEEPS: usize = 64;

/// Total QR iteration budget, as a multiple of the matrix order.
const QR_ITER_FACTOR: usize = 100;

/// A stalled window gets an exceptional shift after this many sweeps.
const QR_STALL_LIMIT: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigenvalues (ascending) and matching orthonormal eigenvector columns of a
/// Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `j` is a unit eigenvector for `values[j]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Eigenvector column as an owned vector.
    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        (0..self.vectors.rows())
            .map(|i| self.vectors.get(i, j))
            .collect()
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(
            "Hermitian eigensolver needs a square matrix".into(),
        ));
    }
    let n = h.n();
    let scale = h.norm_frobenius();

    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((h.get(i, j) - h.get(j, i).conj()).norm());
        }
    }
    if dev > HERMITIAN_ADMIT_TOL * scale {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: HERMITIAN_ADMIT_TOL * scale,
        });
    }

    // Work on the exactly Hermitian average so roundoff in the input cannot
    // drift the iteration; keep the diagonal real.
    let mut a = h.hermitian_part();
    for i in 0..n {
        let d = a.get(i, i);
        a.set(i, i, Complex64::new(d.re, 0.0));
    }
    let mut v = ComplexMatrix::identity(n);

    if scale == 0.0 || n == 1 {
        let values = (0..n).map(|i| a.get(i, i).re).collect();
        return Ok(sorted(values, v));
    }

    let thresh = JACOBI_OFF_TOL * scale;
    let mut converged = false;
    let mut sweeps = 0;
    for sweep in 1..=MAX_JACOBI_SWEEPS {
        sweeps = sweep;
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += 2.0 * a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= thresh {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate_pair(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        // One final check: the last sweep may have finished the job.
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += 2.0 * a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() > thresh {
            return Err(Error::ConvergenceFailure { iterations: sweeps });
        }
    }

    let values = (0..n).map(|i| a.get(i, i).re).collect();
    Ok(sorted(values, v))
}

/// Applies one Jacobi rotation annihilating `a[p][q]`.
fn rotate_pair(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a.get(p, q);
    let babs = b.norm();
    if babs == 0.0 {
        return;
    }
    let alpha = a.get(p, p).re;
    let delta = a.get(q, q).re;
    let beta = b / babs; // unit phase of the off-diagonal entry

    // Choose the rotation angle: t solves t^2 - 2*zeta*t - 1 = 0 with the
    // smaller-magnitude root for stability.
    let zeta = (alpha - delta) / (2.0 * babs);
    let t = if zeta == 0.0 {
        1.0
    } else {
        -zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let sigma = t * c;
    let s = beta * sigma; // complex sine carrying the phase of b

    let n = a.rows();
    // A <- U* A U with U acting on coordinates (p, q).
    // Columns first: col_p' = c col_p - conj(s) col_q ; col_q' = s col_p + c col_q.
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c - aiq * s.conj());
        a.set(i, q, aip * s + aiq * c);
    }
    // Rows: row_p' = c row_p - s row_q ; row_q' = conj(s) row_p + c row_q.
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * s);
        a.set(q, j, apj * s.conj() + aqj * c);
    }
    // Enforce the exact invariants of the rotation. The cancellation-free
    // form of the new diagonal entries (equivalent to the quadratic form
    // through t^2 - 2 zeta t - 1 = 0) keeps tiny eigenvalues from drowning
    // in roundoff from the large ones.
    let app = alpha - t * babs;
    let aqq = delta + t * babs;
    a.set(p, p, Complex64::new(app, 0.0));
    a.set(q, q, Complex64::new(aqq, 0.0));
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);

    // Accumulate V <- V U.
    for i in 0..v.rows() {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c - viq * s.conj());
        v.set(i, q, vip * s + viq * c);
    }
}

fn sorted(values: Vec<f64>, vectors: ComplexMatrix) -> HermitianEigen {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut sv = Vec::with_capacity(n);
    let mut sm = ComplexMatrix::zeros(n);
    for (new_j, &old_j) in order.iter().enumerate() {
        sv.push(values[old_j]);
        for i in 0..n {
            sm.set(i, new_j, vectors.get(i, old_j));
        }
    }
    HermitianEigen {
        values: sv,
        vectors: sm,
    }
}

/// Positive semidefiniteness check: Hermitian (within the admission
/// tolerance) with smallest eigenvalue at least `-tol * ||A||_F`.
pub fn is_psd(h: &ComplexMatrix, tol: f64) -> Result<bool> {
    let e = eig_hermitian(h)?;
    let scale = h.norm_frobenius();
    Ok(e.values.first().is_none_or(|&lo| lo >= -tol * scale))
}

/// Eigenvalues of a general square complex matrix.
///
/// Householder reduction to Hessenberg form, then shifted QR with complex
/// Givens rotations, deflating negligible subdiagonals. The iteration
/// budget is `100 n` sweeps; exhausting it is reported as a failure rather
/// than returning unconverged values.
pub fn eig_general(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "eigensolver needs a square matrix".into(),
        ));
    }
    let n = a.n();
    if n == 1 {
        return Ok(vec![a.get(0, 0)]);
    }
    let mut h = hessenberg(a.clone());
    qr_eigenvalues(&mut h)
}

/// Householder similarity reduction to upper Hessenberg form.
fn hessenberg(mut a: ComplexMatrix) -> ComplexMatrix {
    let n = a.n();
    for k in 0..n.saturating_sub(2) {
        // Reflector annihilating column k below the subdiagonal.
        let mut xnorm_sqr = 0.0;
        for i in k + 1..n {
            xnorm_sqr += a.get(i, k).norm_sqr();
        }
        let xnorm = xnorm_sqr.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a.get(k + 1, k);
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let mut v = vec![ZERO; n];
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = a.get(i, k);
        }
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // A <- P A with P = I - tau v v*.
        for j in 0..n {
            let mut dot = ZERO;
            for i in k + 1..n {
                dot += v[i].conj() * a.get(i, j);
            }
            dot *= tau;
            for i in k + 1..n {
                let val = a.get(i, j) - v[i] * dot;
                a.set(i, j, val);
            }
        }
        // A <- A P.
        for i in 0..n {
            let mut dot = ZERO;
            for j in k + 1..n {
                dot += a.get(i, j) * v[j];
            }
            dot *= tau;
            for j in k + 1..n {
                let val = a.get(i, j) - dot * v[j].conj();
                a.set(i, j, val);
            }
        }
        // The column is now exactly representable as (alpha, 0, ..., 0).
        a.set(k + 1, k, alpha);
        for i in k + 2..n {
            a.set(i, k, ZERO);
        }
    }
    // Clear anything below the first subdiagonal.
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            a.set(i, j, ZERO);
        }
    }
    a
}

/// Complex Givens rotation mapping `(a, b)` to `(r, 0)`; returns `(c, s)`
/// with `c` real so that `[c s; -conj(s) c] [a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = (an * an + bn * bn).sqrt();
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// Eigenvalues of the trailing/leading 2x2 block `[[a, b], [c, d]]`.
fn eig_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    // Pick the root of larger magnitude first to avoid cancellation.
    let l1 = if (tr + disc).norm() >= (tr - disc).norm() {
        (tr + disc) * 0.5
    } else {
        (tr - disc) * 0.5
    };
    let l2 = if l1.norm() > 0.0 { det / l1 } else { tr - l1 };
    (l1, l2)
}

fn qr_eigenvalues(h: &mut ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.n();
    let scale = h.norm_frobenius();
    let eps = f64::EPSILON;
    let mut eigs = vec![ZERO; n];
    let mut hi = n - 1;
    let mut total_iters = 0usize;
    let mut stall = 0usize;
    let budget = QR_ITER_FACTOR * n;

    let negligible = |h: &ComplexMatrix, i: usize| -> bool {
        let local = h.get(i - 1, i - 1).norm() + h.get(i, i).norm();
        let thresh = if local > 0.0 { eps * local } else { eps * scale };
        h.get(i, i - 1).norm() <= thresh
    };

    loop {
        // Zero out negligible subdiagonals in the active range.
        for i in 1..=hi {
            if h.get(i, i - 1).norm() > 0.0 && negligible(h, i) {
                h.set(i, i - 1, ZERO);
            }
        }
        // Find the bottom-most unreduced window [lo, hi].
        let mut lo = hi;
        while lo > 0 && h.get(lo, lo - 1) != ZERO {
            lo -= 1;
        }

        if lo == hi {
            eigs[hi] = h.get(hi, hi);
            stall = 0;
            if hi == 0 {
                return Ok(eigs);
            }
            hi -= 1;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig_2x2(
                h.get(lo, lo),
                h.get(lo, hi),
                h.get(hi, lo),
                h.get(hi, hi),
            );
            eigs[lo] = l1;
            eigs[hi] = l2;
            stall = 0;
            if lo == 0 {
                return Ok(eigs);
            }
            hi = lo - 1;
            continue;
        }

        total_iters += 1;
        if total_iters > budget {
            return Err(Error::ConvergenceFailure {
                iterations: total_iters,
            });
        }
        stall += 1;

        // Shift: Wilkinson (trailing 2x2 eigenvalue nearest h[hi][hi]), with
        // a deterministic exceptional shift on stalled windows.
        let shift = if stall.is_multiple_of(QR_STALL_LIMIT) {
            h.get(hi, hi) + Complex64::new(0.75 * h.get(hi, hi - 1).norm(), 0.0)
        } else {
            let (l1, l2) = eig_2x2(
                h.get(hi - 1, hi - 1),
                h.get(hi - 1, hi),
                h.get(hi, hi - 1),
                h.get(hi, hi),
            );
            let hh = h.get(hi, hi);
            if (l1 - hh).norm() <= (l2 - hh).norm() {
                l1
            } else {
                l2
            }
        };

        // Explicit shifted QR sweep on the window: H - mu I = QR, H <- RQ + mu I.
        for i in lo..=hi {
            let d = h.get(i, i) - shift;
            h.set(i, i, d);
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let (c, s) = givens(h.get(i, i), h.get(i + 1, i));
            rots.push((c, s));
            for j in i..=hi {
                let top = h.get(i, j);
                let bot = h.get(i + 1, j);
                h.set(i, j, top * c + bot * s);
                h.set(i + 1, j, -top * s.conj() + bot * c);
            }
        }
        for (idx, (c, s)) in rots.iter().enumerate() {
            let i = lo + idx;
            for r in lo..=hi {
                let left = h.get(r, i);
                let right = h.get(r, i + 1);
                h.set(r, i, left * *c + right * s.conj());
                h.set(r, i + 1, -left * *s + right * *c);
            }
        }
        for i in lo..=hi {
            let d = h.get(i, i) + shift;
            h.set(i, i, d);
        }
    }
}
