//! Planar regions that confine the pencil spectrum of a matrix whose
//! numerical range sits in a sector of half-angle `alpha`.
//!
//! The primitive is the chord-product ratio
//! `chord_ratio(theta, phi) = (cos 2phi - cos 2theta) / sin^2 2theta`,
//! which is nonnegative and increasing in `theta` for `|phi| <= theta`.
//! Doubling it at `theta = alpha` gives the radial profile
//! `max_radius(phi, alpha) = 2 (cos 2phi - cos 2alpha) / sin^2 2alpha`
//! of the region
//! `Rtilde(alpha) = { r e^{2 i phi} : 0 <= r <= max_radius(phi, alpha), |phi| <= alpha }`,
//! and `R(alpha) = { 1 - w : w in Rtilde(alpha) }` is its reflection
//! through the point `1/2`. Squares of pencil eigenvalues land in `R`,
//! eigenvalues of the determinant-ratio block land in `Rtilde`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute slack used by the region membership examples and tests.
pub const DEFAULT_REGION_TOL: f64 = 1e-9;

/// Which of the two dual regions a query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    /// The region containing squares of pencil eigenvalues.
    R,
    /// The region containing eigenvalues of the determinant-ratio block.
    #[serde(rename = "Rtilde")]
    RTilde,
}

impl std::fmt::Display for RegionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionKind::R => write!(f, "R"),
            RegionKind::RTilde => write!(f, "Rtilde"),
        }
    }
}

impl std::str::FromStr for RegionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(RegionKind::R),
            "Rtilde" | "rtilde" | "RTilde" => Ok(RegionKind::RTilde),
            other => Err(Error::Domain(format!(
                "unknown region kind '{other}' (expected R or Rtilde)"
            ))),
        }
    }
}

/// A region instance: the half-angle and which dual region is meant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub alpha: f64,
    pub kind: RegionKind,
}

impl RegionSpec {
    /// Validates `alpha` in `[0, pi/2)`.
    pub fn new(alpha: f64, kind: RegionKind) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..std::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::Domain(format!(
                "region half-angle must lie in [0, pi/2), got {alpha}"
            )));
        }
        Ok(Self { alpha, kind })
    }
}

/// Chord-product ratio `(cos 2phi - cos 2theta) / sin^2 2theta`.
///
/// Defined for `theta` in `(0, pi/2)` and `phi` in `[-pi/2, pi/2]`;
/// nonnegative when `|phi| <= theta` and strictly increasing in `theta` on
/// that range. At `phi = 0` it collapses to `1 / (2 cos^2 theta)`.
pub fn chord_ratio(theta: f64, phi: f64) -> Result<f64> {
    if !theta.is_finite() || theta <= 0.0 || theta >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "chord ratio needs theta in (0, pi/2), got {theta}"
        )));
    }
    if !phi.is_finite() || phi.abs() > std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "chord ratio needs |phi| <= pi/2, got {phi}"
        )));
    }
    let s = (2.0 * theta).sin();
    Ok(((2.0 * phi).cos() - (2.0 * theta).cos()) / (s * s))
}

/// Radial profile of `Rtilde(alpha)` along direction `2 phi`:
/// `2 (cos 2phi - cos 2alpha) / sin^2 2alpha`, clamped at zero.
///
/// Requires `|phi| <= alpha < pi/2`. For the degenerate half-angle
/// `alpha = 0` (where only `phi = 0` is admissible) the region collapses to
/// the segment `[0, 1]`, and the profile is `1` by convention.
pub fn max_radius(phi: f64, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || !(0.0..std::f64::consts::FRAC_PI_2).contains(&alpha) {
        return Err(Error::Domain(format!(
            "radial profile needs alpha in [0, pi/2), got {alpha}"
        )));
    }
    if !phi.is_finite() || phi.abs() > alpha {
        return Err(Error::Domain(format!(
            "radial profile needs |phi| <= alpha, got phi {phi}, alpha {alpha}"
        )));
    }
    if alpha == 0.0 {
        return Ok(1.0);
    }
    let s = (2.0 * alpha).sin();
    // The numerator is nonnegative in exact arithmetic; clamp roundoff.
    Ok((2.0 * ((2.0 * phi).cos() - (2.0 * alpha).cos()) / (s * s)).max(0.0))
}

/// Signed membership margin: the minimum slack over the defining
/// constraints, positive inside, negative outside. `in_region` is exactly
/// `region_margin >= -tol`.
///
/// For `Rtilde` with `alpha > 0`, writing `z = r e^{2 i phi}` with
/// `phi` in `(-pi/2, pi/2]`, the slacks are `alpha - |phi|` (angular, in
/// radians) and `max_radius(phi, alpha) - r` (radial). For `R` the margin is
/// evaluated at `1 - z`. For `alpha = 0` both regions degenerate to the
/// segment `[0, 1]` and the slacks are `-|Im z|`, `Re z`, and `1 - Re z`.
pub fn region_margin(z: Complex64, spec: &RegionSpec) -> f64 {
    let w = match spec.kind {
        RegionKind::RTilde => z,
        RegionKind::R => Complex64::new(1.0, 0.0) - z,
    };
    if spec.alpha == 0.0 {
        return (-w.im.abs()).min(w.re).min(1.0 - w.re);
    }
    let r = w.norm();
    if r == 0.0 {
        // The apex belongs to the region for every half-angle.
        return spec.alpha;
    }
    let phi = 0.5 * w.arg();
    let angular = spec.alpha - phi.abs();
    let clamped = phi.clamp(-spec.alpha, spec.alpha);
    let radial = max_radius(clamped, spec.alpha).expect("clamped phi is admissible") - r;
    angular.min(radial)
}

/// Membership with absolute slack `tol` on each defining constraint.
pub fn in_region(z: Complex64, spec: &RegionSpec, tol: f64) -> bool {
    region_margin(z, spec) >= -tol
}

/// `samples` points `(phi, z)` tracing the outer boundary curve, sweeping
/// `phi` from `-alpha` to `alpha` uniformly. For `R` the trace is reflected
/// through `1/2`. Needs `alpha > 0` (the segment case has no curve to
/// trace; its endpoints `{0, 1}` are emitted by the CLI instead) and at
/// least two samples.
pub fn boundary_samples(spec: &RegionSpec, samples: usize) -> Result<Vec<(f64, Complex64)>> {
    if spec.alpha == 0.0 {
        return Err(Error::Domain(
            "boundary sampling needs alpha > 0; the region degenerates to [0, 1]".into(),
        ));
    }
    if samples < 2 {
        return Err(Error::BadSampleCount {
            got: samples,
            min: 2,
        });
    }
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let phi = -spec.alpha + 2.0 * spec.alpha * (k as f64) / ((samples - 1) as f64);
        let r = max_radius(phi.clamp(-spec.alpha, spec.alpha), spec.alpha)?;
        let w = Complex64::from_polar(r, 2.0 * phi);
        let z = match spec.kind {
            RegionKind::RTilde => w,
            RegionKind::R => Complex64::new(1.0, 0.0) - w,
        };
        out.push((phi, z));
    }
    Ok(out)
}

/// Product of the endpoint radii of a chord with unit-circle midpoint,
/// returned along with the closed-form prediction
/// `2 (cos 2phi - cos 2theta) / sin^2 2theta` where `2 theta` is the
/// argument gap of the endpoints and `2 phi = theta1 + theta2 - 2 psi`.
///
/// The endpoints are `r1 e^{i theta1}` and `r2 e^{i theta2}` with
/// `pi/2 > theta1 > theta2 > -pi/2`, `r1, r2 > 0`, and
/// `(z1 + z2) / 2 = e^{i psi}` enforced to within `1e-10`.
pub fn triangle_product(
    r1: f64,
    theta1: f64,
    r2: f64,
    theta2: f64,
    psi: f64,
) -> Result<(f64, f64)> {
    const MIDPOINT_TOL: f64 = 1e-10;
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(r1 > 0.0 && r2 > 0.0) || !r1.is_finite() || !r2.is_finite() {
        return Err(Error::Domain("endpoint radii must be positive".into()));
    }
    if !(theta1 < half_pi && theta1 > -half_pi && theta2 < half_pi && theta2 > -half_pi) {
        return Err(Error::Domain(
            "endpoint arguments must lie in (-pi/2, pi/2)".into(),
        ));
    }
    if theta1 == theta2 {
        return Err(Error::DegenerateTriangle);
    }
    if theta1 < theta2 {
        return Err(Error::Domain(
            "endpoint arguments must be ordered theta1 > theta2".into(),
        ));
    }
    let z1 = Complex64::from_polar(r1, theta1);
    let z2 = Complex64::from_polar(r2, theta2);
    let mid = (z1 + z2) * 0.5;
    let target = Complex64::from_polar(1.0, psi);
    let dev = (mid - target).norm();
    if dev > MIDPOINT_TOL {
        return Err(Error::MidpointViolation(dev));
    }
    let theta = 0.5 * (theta1 - theta2);
    let phi = 0.5 * (theta1 + theta2) - psi;
    let s = (2.0 * theta).sin();
    let predicted = 2.0 * ((2.0 * phi).cos() - (2.0 * theta).cos()) / (s * s);
    Ok((r1 * r2, predicted))
}

/// Log of the determinant bound factor: `2 m * ln sec(alpha)`.
pub fn log_sec_bound(alpha: f64, m: usize) -> Result<f64> {
    if !alpha.is_finite() || !(0.0..std::f64::consts::FRAC_PI_2).contains(&alpha) {
        return Err(Error::Domain(format!(
            "bound factor needs alpha in [0, pi/2), got {alpha}"
        )));
    }
    if m == 0 {
        return Err(Error::Domain("block order must be positive".into()));
    }
    Ok(-2.0 * (m as f64) * alpha.cos().ln())
}
