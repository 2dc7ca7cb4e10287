//! Numerical range sampling and minimal-sector fitting.
//!
//! The numerical range `W(A) = { x* A x : ||x|| = 1 }` is compact and
//! convex. Its support function in direction `t` is the top eigenvalue of
//! the Hermitian part of `e^{-it} A`, and the maximizing eigenvector's
//! quadratic form is a boundary point attaining that support value. A sweep
//! over directions therefore yields an inscribed polygon of `W(A)`, from
//! which a minimal enclosing sector anchored at the origin is fitted.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Default number of sweep directions.
pub const DEFAULT_SAMPLES: usize = 720;

/// Default relative tolerance for sector fitting: near-zero boundary points
/// are discarded below `tol * ||A||_F` and the spread guard fires at
/// `pi - tol`.
pub const DEFAULT_FIT_TOL: f64 = 1e-8;

/// Minimum admissible sweep size; fewer directions cannot bracket extremes.
pub const MIN_SAMPLES: usize = 8;

/// The extreme-argument refinement stops once the half-angle estimate is
/// resolved below this.
const REFINE_TOL: f64 = 1e-10;

/// A sector `{ z : |arg(z e^{-i phi})| <= alpha }` anchored at the origin,
/// with axis direction `phi` in `[0, 2 pi)` and half-angle
/// `alpha` in `[0, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    phi: f64,
    alpha: f64,
}

impl Sector {
    /// Validates the half-angle and normalizes the axis to `[0, 2 pi)`.
    pub fn new(phi: f64, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..std::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::Domain(format!(
                "sector half-angle must lie in [0, pi/2), got {alpha}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::Domain("sector axis must be finite".into()));
        }
        Ok(Self {
            phi: phi.rem_euclid(2.0 * std::f64::consts::PI),
            alpha,
        })
    }

    /// Axis direction in `[0, 2 pi)`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Half-angle in `[0, pi/2)`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// One support-sweep sample.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SupportSample {
    /// Sweep direction `t`.
    pub angle: f64,
    /// Support value `h(t) = max Re(e^{-it} W(A))`.
    pub support_value: f64,
    /// A boundary point attaining the support value.
    pub boundary_point: Complex64,
}

/// Support value and attaining boundary point in direction `t`.
///
/// The returned point satisfies `Re(e^{-it} point) = support_value` up to
/// the eigensolver residual.
pub fn support_point(a: &ComplexMatrix, t: f64) -> Result<SupportSample> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "numerical range needs a square matrix".into(),
        ));
    }
    let rotated = a.rotate(-t);
    let h = rotated.hermitian_part();
    let e = eig_hermitian(&h)?;
    let top = e.values.len() - 1;
    let x = e.vector(top);
    Ok(SupportSample {
        angle: t,
        support_value: e.values[top],
        boundary_point: a.quadratic_form(&x),
    })
}

/// Sweeps `samples` equispaced directions `t_k = 2 pi k / samples`.
pub fn boundary(a: &ComplexMatrix, samples: usize) -> Result<Vec<SupportSample>> {
    if samples < MIN_SAMPLES {
        return Err(Error::BadSampleCount {
            got: samples,
            min: MIN_SAMPLES,
        });
    }
    let tau = 2.0 * std::f64::consts::PI;
    (0..samples)
        .map(|k| support_point(a, tau * (k as f64) / (samples as f64)))
        .collect()
}

/// Sector membership with absolute slack `tol`: after rotating by
/// `-phi`, requires `Re w >= -tol` and `|Im w| <= Re w * tan(alpha) + tol`.
/// The origin always belongs.
pub fn in_sector(z: Complex64, sector: &Sector, tol: f64) -> bool {
    let w = z * Complex64::from_polar(1.0, -sector.phi());
    w.re >= -tol && w.im.abs() <= w.re.max(0.0) * sector.alpha().tan() + tol
}

/// How far `z` violates the sector constraints (0 when inside with slack 0).
pub fn sector_violation(z: Complex64, sector: &Sector) -> f64 {
    let w = z * Complex64::from_polar(1.0, -sector.phi());
    (-w.re).max(w.im.abs() - w.re.max(0.0) * sector.alpha().tan()).max(0.0)
}

/// Fits the minimal sector containing the sampled numerical range.
///
/// Boundary points with magnitude at most `tol * ||A||_F` are treated as
/// the apex and excluded from the argument spread. Fails with
/// `OriginInterior` when the origin lies strictly inside the sampled hull,
/// and with `SpreadTooWide` when the argument spread reaches `pi - tol`.
/// The two extreme arguments are refined by golden-section search between
/// the neighboring sweep directions, so vertex arguments are located well
/// below the sweep resolution. The zero matrix fits `(phi, alpha) = (0, 0)`
/// by convention.
pub fn sector_fit(a: &ComplexMatrix, samples: usize, tol: f64) -> Result<Sector> {
    let sweep = boundary(a, samples)?;
    let scale = a.norm_frobenius();
    if scale == 0.0 {
        return Sector::new(0.0, 0.0);
    }
    let cutoff = tol * scale;

    // A sector anchored at the origin exists only if the origin is not
    // interior to the range.
    let pts: Vec<Complex64> = sweep.iter().map(|s| s.boundary_point).collect();
    let hull = convex_hull(&pts);
    if hull.len() >= 3 && hull_signed_distance(Complex64::new(0.0, 0.0), &hull) < -1e-12 * scale {
        return Err(Error::OriginInterior);
    }

    let nonzero: Vec<usize> = (0..pts.len())
        .filter(|&k| pts[k].norm() > cutoff)
        .collect();
    if nonzero.is_empty() {
        return Sector::new(0.0, 0.0);
    }

    // Anchor the argument window at the mean direction so that ranges
    // straddling the branch cut unwrap consistently.
    let mean = a.trace() / Complex64::new(a.n() as f64, 0.0);
    let center = if mean.norm() > cutoff {
        mean.arg()
    } else {
        pts[nonzero[0]].arg()
    };
    let wrap = |ang: f64| -> f64 {
        let tau = 2.0 * std::f64::consts::PI;
        ang + tau * ((center + std::f64::consts::PI - ang) / tau).floor()
    };

    let (mut kmin, mut kmax) = (nonzero[0], nonzero[0]);
    let (mut amin, mut amax) = (wrap(pts[nonzero[0]].arg()), wrap(pts[nonzero[0]].arg()));
    for &k in &nonzero {
        let ang = wrap(pts[k].arg());
        if ang < amin {
            amin = ang;
            kmin = k;
        }
        if ang > amax {
            amax = ang;
            kmax = k;
        }
    }
    let spread = amax - amin;
    if spread >= std::f64::consts::PI - tol {
        return Err(Error::SpreadTooWide { spread });
    }

    // Inscribed-polygon vertices can sit strictly between sweep directions;
    // refine each extreme argument over the bracket of adjacent directions.
    let step = 2.0 * std::f64::consts::PI / (samples as f64);
    let eval = |t: f64| -> Result<Option<f64>> {
        let s = support_point(a, t)?;
        if s.boundary_point.norm() <= cutoff {
            Ok(None)
        } else {
            Ok(Some(wrap(s.boundary_point.arg())))
        }
    };
    let tmax = sweep[kmax].angle;
    let tmin = sweep[kmin].angle;
    amax = amax.max(golden_extreme(&eval, tmax - step, tmax + step, true)?);
    amin = amin.min(golden_extreme(&eval, tmin - step, tmin + step, false)?);

    let spread = amax - amin;
    if spread >= std::f64::consts::PI - tol {
        return Err(Error::SpreadTooWide { spread });
    }
    Sector::new(0.5 * (amax + amin), 0.5 * spread)
}

/// Golden-section search for the extreme wrapped argument over a sweep
/// bracket. Directions whose boundary point collapses to the apex score as
/// no improvement. The bracket shrinks until the argument estimate is
/// stable to `REFINE_TOL`.
fn golden_extreme(
    eval: &dyn Fn(f64) -> Result<Option<f64>>,
    mut lo: f64,
    mut hi: f64,
    maximize: bool,
) -> Result<f64> {
    const INV_GOLD: f64 = 0.618_033_988_749_894_9;
    let score = |v: Option<f64>| -> f64 {
        match (v, maximize) {
            (Some(x), true) => x,
            (Some(x), false) => -x,
            (None, _) => f64::NEG_INFINITY,
        }
    };
    let mut x1 = hi - INV_GOLD * (hi - lo);
    let mut x2 = lo + INV_GOLD * (hi - lo);
    let mut f1 = score(eval(x1)?);
    let mut f2 = score(eval(x2)?);
    let mut best = f1.max(f2);
    // The interval after k steps spans (hi-lo) * INV_GOLD^k; the argument
    // function is Lipschitz on the bracket, so interval width controls the
    // estimate. A small fixed floor avoids endless loops on flat stretches.
    while hi - lo > REFINE_TOL * 0.1 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_GOLD * (hi - lo);
            f2 = score(eval(x2)?);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_GOLD * (hi - lo);
            f1 = score(eval(x1)?);
        }
        best = best.max(f1.max(f2));
    }
    Ok(if maximize { best } else { -best })
}

/// Convex hull (monotone chain) of a planar point set, counter-clockwise,
/// collinear points dropped. Degenerate sets return fewer than three
/// vertices.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Complex64, a: Complex64, b: Complex64| -> f64 {
        (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
    };
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Signed distance from `z` to a convex hull: negative inside, positive
/// outside. For non-degenerate hulls this is the largest outward excess
/// over the edges (a lower bound on the true distance outside corners);
/// degenerate hulls fall back to point/segment distance.
pub fn hull_signed_distance(z: Complex64, hull: &[Complex64]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        2 => segment_distance(z, hull[0], hull[1]),
        _ => {
            let mut inner = f64::INFINITY;
            for i in 0..hull.len() {
                let p = hull[i];
                let q = hull[(i + 1) % hull.len()];
                let len = (q - p).norm();
                if len == 0.0 {
                    continue;
                }
                let cross =
                    (q.re - p.re) * (z.im - p.im) - (q.im - p.im) * (z.re - p.re);
                inner = inner.min(cross / len);
            }
            -inner
        }
    }
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len_sqr = ab.norm_sqr();
    if len_sqr == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len_sqr).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn support_of_identity_is_cosine() {
        // W(I) = {1}: h(t) = cos t and the boundary point is always 1.
        let a = ComplexMatrix::identity(3);
        for &t in &[0.0, 0.4, 1.3, 2.0, 4.5] {
            let s = support_point(&a, t).unwrap();
            assert!((s.support_value - t.cos()).abs() < 1e-12);
            assert!((s.boundary_point - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn support_identity_links_value_and_point() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.5), c(0.3, -0.2), c(0.0, 0.9)],
            vec![c(-0.4, 0.1), c(2.0, -1.0), c(0.7, 0.0)],
            vec![c(0.2, 0.2), c(-0.1, 0.6), c(0.5, 1.5)],
        ])
        .unwrap();
        let scale = a.norm_frobenius();
        for k in 0..17 {
            let t = 2.0 * PI * (k as f64) / 17.0;
            let s = support_point(&a, t).unwrap();
            let re = (s.boundary_point * Complex64::from_polar(1.0, -t)).re;
            assert!(
                (re - s.support_value).abs() <= 1e-10 * scale,
                "support identity broken at t={t}"
            );
        }
    }

    #[test]
    fn segment_range_of_the_all_ones_matrix() {
        // W([[1,1],[1,1]]) = [0, 2].
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        for s in boundary(&a, 64).unwrap() {
            assert!(s.boundary_point.im.abs() < 1e-8);
            assert!(s.boundary_point.re > -1e-8 && s.boundary_point.re < 2.0 + 1e-8);
        }
    }

    #[test]
    fn boundary_of_normal_matrix_stays_in_eigenvalue_hull() {
        let eigs = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let a = ComplexMatrix::diagonal(&eigs);
        let hull = convex_hull(&eigs);
        let scale = a.norm_frobenius();
        for s in boundary(&a, 360).unwrap() {
            assert!(
                hull_signed_distance(s.boundary_point, &hull) <= 1e-8 * scale,
                "sample {} outside the eigenvalue hull",
                s.boundary_point
            );
        }
    }

    #[test]
    fn sweep_needs_enough_directions() {
        let a = ComplexMatrix::identity(2);
        assert!(matches!(
            boundary(&a, 4),
            Err(Error::BadSampleCount { got: 4, min: 8 })
        ));
    }

    #[test]
    fn sector_membership_basics() {
        let s = Sector::new(0.0, PI / 4.0).unwrap();
        assert!(in_sector(c(0.0, 0.0), &s, 0.0));
        assert!(in_sector(c(1.0, 1.0), &s, 1e-12));
        assert!(!in_sector(c(1.0, 1.1), &s, 1e-9));
        assert!(!in_sector(c(-0.1, 0.0), &s, 1e-9));
        // Rotated sector accepts the rotated point.
        let s2 = Sector::new(PI / 2.0, PI / 4.0).unwrap();
        assert!(in_sector(c(-1.0, 1.0), &s2, 1e-12));
        assert!(!in_sector(c(1.0, 0.0), &s2, 1e-9));
    }

    #[test]
    fn fitting_a_rotated_hermitian_pair_recovers_the_angle() {
        // [[1, i tan(a0)], [i tan(a0), 1]] is normal with eigenvalues
        // sec(a0) e^{+-i a0}; the fitted sector is (0, a0).
        let a0 = 0.7f64;
        let t = a0.tan();
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, t)],
            vec![c(0.0, t), c(1.0, 0.0)],
        ])
        .unwrap();
        let s = sector_fit(&a, DEFAULT_SAMPLES, DEFAULT_FIT_TOL).unwrap();
        assert!((s.alpha() - a0).abs() < 1e-9, "alpha = {}", s.alpha());
        let phi = if s.phi() > PI { s.phi() - 2.0 * PI } else { s.phi() };
        assert!(phi.abs() < 1e-9, "phi = {phi}");
    }

    #[test]
    fn fitting_positive_definite_diagonal_gives_zero_angle() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let s = sector_fit(&a, DEFAULT_SAMPLES, DEFAULT_FIT_TOL).unwrap();
        assert!(s.alpha() < 1e-9);
        assert!(s.phi().min(2.0 * PI - s.phi()) < 1e-9);
    }

    #[test]
    fn fitting_the_zero_matrix_uses_the_degenerate_convention() {
        let s = sector_fit(&ComplexMatrix::zeros(3), DEFAULT_SAMPLES, DEFAULT_FIT_TOL).unwrap();
        assert_eq!((s.phi(), s.alpha()), (0.0, 0.0));
    }

    #[test]
    fn indefinite_hermitian_has_no_sector() {
        // W(diag(1, -1)) = [-1, 1]: arguments spread by pi.
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(matches!(
            sector_fit(&a, DEFAULT_SAMPLES, DEFAULT_FIT_TOL),
            Err(Error::SpreadTooWide { .. })
        ));
    }

    #[test]
    fn origin_strictly_inside_is_detected() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
        assert!(matches!(
            sector_fit(&a, DEFAULT_SAMPLES, DEFAULT_FIT_TOL),
            Err(Error::OriginInterior)
        ));
    }

    #[test]
    fn fit_straddles_the_branch_cut() {
        // Eigenvalues around arg = pi: the window unwraps via the trace
        // direction and the fit recovers (phi, alpha) = (pi, 0.3).
        let a = ComplexMatrix::diagonal(&[
            Complex64::from_polar(1.0, PI - 0.3),
            Complex64::from_polar(1.0, -PI + 0.3),
            Complex64::from_polar(2.0, PI),
        ]);
        let s = sector_fit(&a, DEFAULT_SAMPLES, DEFAULT_FIT_TOL).unwrap();
        assert!((s.phi() - PI).abs() < 1e-9);
        assert!((s.alpha() - 0.3).abs() < 1e-9);
    }

    #[test]
    fn fitted_sector_contains_all_samples() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(3.0, 0.2), c(0.5, -0.1), c(0.0, 0.4)],
            vec![c(0.1, 0.3), c(2.5, -0.5), c(0.3, 0.0)],
            vec![c(0.0, -0.2), c(0.2, 0.1), c(4.0, 0.6)],
        ])
        .unwrap();
        let s = sector_fit(&a, DEFAULT_SAMPLES, DEFAULT_FIT_TOL).unwrap();
        let tol = 1e-7 * a.norm_frobenius();
        for sample in boundary(&a, DEFAULT_SAMPLES).unwrap() {
            assert!(
                in_sector(sample.boundary_point, &s, tol),
                "sample {} escapes the fitted sector",
                sample.boundary_point
            );
        }
    }

    #[test]
    fn hull_of_collinear_points_is_a_segment() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0)];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 2);
        // Points on the segment are at distance ~0 but never "inside".
        assert!(hull_signed_distance(c(1.0, 0.0), &hull) >= 0.0);
    }

    #[test]
    fn hull_distance_signs() {
        let square = [c(1.0, 1.0), c(-1.0, 1.0), c(-1.0, -1.0), c(1.0, -1.0)];
        let hull = convex_hull(&square);
        assert_eq!(hull.len(), 4);
        assert!(hull_signed_distance(c(0.0, 0.0), &hull) < -0.9);
        assert!(hull_signed_distance(c(2.0, 0.0), &hull) > 0.9);
        assert!(hull_signed_distance(c(1.0, 0.0), &hull).abs() < 1e-12);
    }
}
