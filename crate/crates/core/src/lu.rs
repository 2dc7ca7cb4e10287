//! LU factorization with partial pivoting, log-scale determinants, linear
//! solves, inversion, and a one-norm reciprocal condition estimate.
//!
//! Determinants are carried as `log|det|` plus a phase so that products and
//! quotients of determinants stay meaningful far outside the representable
//! floating-point range.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

/// `log|det|` beyond which `exp` overflows/underflows an `f64`.
const LOG_REPRESENTABLE: f64 = 708.0;

/// Multiplies by `2^k` exactly, in steps small enough that no intermediate
/// over- or underflows when the final result is representable.
fn scale_by_exp2(mut z: Complex64, mut k: i64) -> Complex64 {
    while k != 0 {
        let step = k.clamp(-512, 512);
        z *= f64::exp2(step as f64);
        k -= step;
    }
    z
}

/// Complex division by Smith's algorithm. The textbook formula divides by
/// `|den|^2`, which underflows to zero for magnitudes below about `1e-154`
/// and turns well-posed quotients into NaN; scaling by the larger component
/// keeps every intermediate on the order of the result.
fn robust_div(num: Complex64, den: Complex64) -> Complex64 {
    if den.re.abs() >= den.im.abs() {
        let r = den.im / den.re;
        let d = den.re + den.im * r;
        Complex64::new((num.re + num.im * r) / d, (num.im - num.re * r) / d)
    } else {
        let r = den.re / den.im;
        let d = den.im + den.re * r;
        Complex64::new((num.re * r + num.im) / d, (num.im * r - num.re) / d)
    }
}

/// Determinant in log scale.
///
/// `value` is the determinant itself when its magnitude fits the normal
/// floating-point range (`None` when it would overflow or underflow), and
/// exactly zero, with `log_abs = -inf`, for a singular matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDeterminant {
    /// Natural log of the determinant magnitude; `-inf` for singular input.
    pub log_abs: f64,
    /// Argument of the determinant in `(-pi, pi]`; `0` for singular input.
    pub phase: f64,
    /// The determinant when representable.
    pub value: Option<Complex64>,
}

impl LogDeterminant {
    /// The determinant of a singular matrix: `log|det| = -inf`, zero value.
    fn zero() -> Self {
        Self {
            log_abs: f64::NEG_INFINITY,
            phase: 0.0,
            value: Some(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }
}

/// Packed LU factorization `PA = LU` with row pivoting.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    n: usize,
    /// L (unit lower, implicit diagonal) and U packed in one matrix.
    lu: ComplexMatrix,
    /// Row permutation applied to the input: pivot row chosen for column k.
    perm: Vec<usize>,
    /// Number of row exchanges, for the determinant sign.
    swaps: usize,
    /// True if some pivot was exactly zero.
    singular: bool,
}

/// Factors a square matrix. Singularity is not an error: it is recorded in
/// the factorization and surfaces as a zero determinant / `None` solves.
pub fn lu_factor(a: &ComplexMatrix) -> LuFactorization {
    let n = a.n();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    let mut singular = false;

    for k in 0..n {
        // Partial pivoting: largest magnitude in column k at or below row k.
        let mut piv = k;
        let mut best = lu.get(k, k).norm();
        for i in k + 1..n {
            let v = lu.get(i, k).norm();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == 0.0 {
            singular = true;
            continue;
        }
        if piv != k {
            for j in 0..n {
                let tmp = lu.get(k, j);
                lu.set(k, j, lu.get(piv, j));
                lu.set(piv, j, tmp);
            }
            perm.swap(k, piv);
            swaps += 1;
        }
        let pivot = lu.get(k, k);
        for i in k + 1..n {
            let factor = robust_div(lu.get(i, k), pivot);
            lu.set(i, k, factor);
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k + 1..n {
                let v = lu.get(i, j) - factor * lu.get(k, j);
                lu.set(i, j, v);
            }
        }
    }

    LuFactorization {
        n,
        lu,
        perm,
        swaps,
        singular,
    }
}

impl LuFactorization {
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Determinant of the factored matrix in log scale.
    pub fn determinant(&self) -> LogDeterminant {
        if self.singular {
            return LogDeterminant::zero();
        }
        let mut log_abs = 0.0;
        let even_swaps = self.swaps.is_multiple_of(2);
        let mut phase = if even_swaps { 0.0 } else { std::f64::consts::PI };
        // Direct product of the pivots, renormalized by exact powers of two
        // so it never over- or underflows; this preserves exact values
        // (real matrices get real determinants) where a polar
        // reconstruction from the logs would smear them.
        let mut acc = if even_swaps {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        };
        let mut exp2 = 0i64;
        for k in 0..self.n {
            let u = self.lu.get(k, k);
            let mag = u.norm();
            if mag == 0.0 {
                return LogDeterminant::zero();
            }
            log_abs += mag.ln();
            phase += u.arg();
            let eu = mag.log2().round() as i64;
            let u_scaled = if eu.abs() > 512 {
                exp2 += eu;
                scale_by_exp2(u, -eu)
            } else {
                u
            };
            acc *= u_scaled;
            let ea = acc.norm().log2().round() as i64;
            if ea.abs() > 64 {
                exp2 += ea;
                acc = scale_by_exp2(acc, -ea);
            }
        }
        // Wrap the accumulated phase into (-pi, pi].
        let tau = 2.0 * std::f64::consts::PI;
        let mut w = phase.rem_euclid(tau);
        if w > std::f64::consts::PI {
            w -= tau;
        }
        let value = if log_abs.abs() <= LOG_REPRESENTABLE {
            Some(scale_by_exp2(acc, exp2))
        } else {
            None
        };
        LogDeterminant {
            log_abs,
            phase: w,
            value,
        }
    }

    /// Solves `A x = b`. Returns `None` for singular factorizations.
    pub fn solve(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        if self.singular {
            return None;
        }
        assert_eq!(b.len(), self.n);
        // Apply the permutation, then forward/back substitution.
        let mut x: Vec<Complex64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 1..self.n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu.get(i, j) * x[j];
            }
            x[i] = s;
        }
        for i in (0..self.n).rev() {
            let mut s = x[i];
            for j in i + 1..self.n {
                s -= self.lu.get(i, j) * x[j];
            }
            x[i] = robust_div(s, self.lu.get(i, i));
        }
        Some(x)
    }

    /// Solves `A X = B` column by column. `B` may be rectangular.
    pub fn solve_matrix(&self, b: &ComplexMatrix) -> Option<ComplexMatrix> {
        if self.singular {
            return None;
        }
        assert_eq!(b.rows(), self.n);
        let mut out = ComplexMatrix::zeros_shape(self.n, b.cols());
        let mut col = vec![Complex64::new(0.0, 0.0); self.n];
        for j in 0..b.cols() {
            for i in 0..self.n {
                col[i] = b.get(i, j);
            }
            let x = self.solve(&col)?;
            for i in 0..self.n {
                out.set(i, j, x[i]);
            }
        }
        Some(out)
    }

    /// Explicit inverse. Returns `None` for singular factorizations.
    pub fn inverse(&self) -> Option<ComplexMatrix> {
        self.solve_matrix(&ComplexMatrix::identity(self.n))
    }
}

/// Log-scale determinant of a square matrix.
pub fn determinant(a: &ComplexMatrix) -> LogDeterminant {
    lu_factor(a).determinant()
}

/// Reciprocal one-norm condition number `1 / (||A||_1 ||A^-1||_1)`,
/// computed from the explicit inverse. Returns `0` when a pivot is exactly
/// zero. Suitable for the small dense orders this crate targets.
pub fn rcond_one_norm(a: &ComplexMatrix) -> f64 {
    let f = lu_factor(a);
    match f.inverse() {
        None => 0.0,
        Some(inv) => {
            let denom = a.norm_one() * inv.norm_one();
            if denom.is_finite() && denom > 0.0 {
                1.0 / denom
            } else {
                0.0
            }
        }
    }
}
