//! Matrix generators: boundary-attaining normal constructions and seeded
//! random families with prescribed numerical-range geometry.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eig::eig_hermitian;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::region::{chord_ratio, max_radius};
use crate::rng::SplitMix64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Parameters of the boundary-attaining normal construction.
///
/// Given a sector half-angle `alpha`, a direction parameter `phi` with
/// `|phi| <= alpha`, and a target radius `r` with `r <= max_radius(phi,
/// alpha)`, the construction produces an `n x n` normal matrix, partitioned
/// with leading block `m`, whose pencil eigenvalues `lambda` satisfy
/// `1 - lambda^2 = r e^{2 i phi}` while the numerical range stays inside
/// the sector of half-angle `alpha`.
///
/// The derived fields are the vertex angle `theta` solving
/// `2 chord_ratio(theta, phi) = r` and the coupling coefficients
/// `a = -cot(theta) sin(phi)`, `b = tan(theta) cos(phi)`. Two boundary
/// cases use fixed values: `r = 0` stores `(theta, a, b) = (0, 1, 0)`
/// (an all-ones coupling with no phase), and exact `r = 1` at `phi = 0`
/// stores `(0, 0, 0)` (the identity matrix as the limiting construction).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalParams {
    pub alpha: f64,
    pub phi: f64,
    pub r: f64,
    pub m: usize,
    pub n: usize,
    pub theta: f64,
    pub a: f64,
    pub b: f64,
}

impl ExtremalParams {
    /// Validates the inputs and derives `(theta, a, b)`.
    pub fn new(alpha: f64, phi: f64, r: f64, m: usize, n: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::Domain(format!(
                "half-angle must lie in (0, pi/2), got {alpha}"
            )));
        }
        if !phi.is_finite() || phi.abs() > alpha {
            return Err(Error::Domain(format!(
                "direction parameter needs |phi| <= alpha, got phi {phi}, alpha {alpha}"
            )));
        }
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Domain(format!("radius must be nonnegative, got {r}")));
        }
        if m == 0 || n < 2 * m {
            return Err(Error::DimensionMismatch(format!(
                "need 1 <= m and 2m <= n, got m {m}, n {n}"
            )));
        }
        let (theta, a, b) = if r == 0.0 {
            (0.0, 1.0, 0.0)
        } else {
            let theta = solve_theta(alpha, phi, r)?;
            if theta == 0.0 {
                // Exact r = 1 on the axis: the limiting construction is the
                // identity coupling-free matrix.
                (0.0, 0.0, 0.0)
            } else {
                (theta, -phi.sin() / theta.tan(), theta.tan() * phi.cos())
            }
        };
        Ok(Self {
            alpha,
            phi,
            r,
            m,
            n,
            theta,
            a,
            b,
        })
    }
}

/// Solves `2 chord_ratio(theta, phi) = r` for `theta` in `(|phi|, alpha]`.
///
/// The map is strictly increasing in `theta`, so bisection applies; the
/// bracket is shrunk to machine resolution. Radii above the profile value
/// at `alpha` (with a relative admission slack) are unreachable, as are
/// radii below the limiting value at `theta -> |phi|` (which is `0` for
/// `phi != 0` and `1` on the axis, where only exact `r = 1` is accepted and
/// maps to the degenerate solution `theta = 0`).
pub fn solve_theta(alpha: f64, phi: f64, r: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "half-angle must lie in (0, pi/2), got {alpha}"
        )));
    }
    if !phi.is_finite() || phi.abs() > alpha {
        return Err(Error::Domain(format!(
            "direction parameter needs |phi| <= alpha, got phi {phi}, alpha {alpha}"
        )));
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let unreachable = || Error::Unreachable { r, phi, alpha };
    let rmax = max_radius(phi, alpha)?;
    // Admit boundary targets computed through the same profile formula.
    if r > rmax * (1.0 + 1e-12) {
        return Err(unreachable());
    }
    if r >= rmax {
        return Ok(alpha);
    }
    if phi == 0.0 {
        // On the axis the profile has infimum 1 (at theta -> 0), so radii
        // below 1 are unreachable; exact 1 is served by the identity limit.
        if r == 1.0 {
            return Ok(0.0);
        }
        if r < 1.0 {
            return Err(unreachable());
        }
    }
    let target = |theta: f64| -> f64 {
        2.0 * chord_ratio(theta, phi).expect("bisection stays inside the domain") - r
    };
    // target < 0 at the lower bracket end, >= 0 at alpha.
    let mut lo = phi.abs();
    let mut hi = alpha;
    if lo == 0.0 {
        // Start strictly inside the domain; the profile at this point is
        // essentially 1 < r.
        lo = 1e-300;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if target(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Builds the boundary-attaining normal matrix for the given parameters.
///
/// The matrix is `w I_n + c E` where `w = e^{-i phi}` (`1` in the `r = 0`
/// case), `c = a + i b`, and `E` couples coordinate `j` with coordinate
/// `m + j` for `j < m`. It is normal, its partition with leading block `m`
/// has `A11 = w I_m`, and its eigenvalues are `w + c`, `w - c` (each with
/// multiplicity `m`) and `w` (multiplicity `n - 2m`).
pub fn extremal_matrix(params: &ExtremalParams) -> ComplexMatrix {
    let phi_axis = if params.r == 0.0 { 0.0 } else { params.phi };
    let w = Complex64::from_polar(1.0, -phi_axis);
    let c = Complex64::new(params.a, params.b);
    let mut out = ComplexMatrix::identity(params.n).scale(w);
    for j in 0..params.m {
        out.set(j, params.m + j, c);
        out.set(params.m + j, j, c);
    }
    out
}

/// Random families with prescribed numerical-range geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomKind {
    /// `e^{i phi} (t I + X)` with Gaussian `X` and the diagonal shift
    /// `t = ||X||_2 / sin(alpha)` placing the numerical range inside the
    /// sector `(phi, alpha)`.
    ShiftedGaussian,
    /// Normal matrix `e^{i phi} U D U*` with Haar `U` and spectrum drawn
    /// with log-uniform moduli in `[0.1, 10]` and arguments uniform in
    /// `[-alpha, alpha]`.
    NormalSpectrum,
    /// `G1 G1* + i G2 G2*` with Gaussian factors: Hermitian and skew parts
    /// both positive semidefinite.
    AccretiveDissipative,
}

impl std::fmt::Display for RandomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RandomKind::ShiftedGaussian => "shifted_gaussian",
            RandomKind::NormalSpectrum => "normal_spectrum",
            RandomKind::AccretiveDissipative => "accretive_dissipative",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for RandomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shifted_gaussian" => Ok(RandomKind::ShiftedGaussian),
            "normal_spectrum" => Ok(RandomKind::NormalSpectrum),
            "accretive_dissipative" => Ok(RandomKind::AccretiveDissipative),
            other => Err(Error::Domain(format!(
                "unknown generator kind {other:?}; expected shifted_gaussian, \
                 normal_spectrum, or accretive_dissipative"
            ))),
        }
    }
}

/// Seeded request for one random matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    pub seed: u64,
    pub kind: RandomKind,
    /// Target sector axis; ignored by the accretive-dissipative family.
    pub phi: f64,
    /// Target sector half-angle; ignored by the accretive-dissipative
    /// family.
    pub alpha: f64,
}

impl RandomSpec {
    pub fn new(n: usize, seed: u64, kind: RandomKind, phi: f64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("matrix order must be positive".into()));
        }
        if !phi.is_finite() || !alpha.is_finite() {
            return Err(Error::Domain("sector target must be finite".into()));
        }
        let max_alpha = std::f64::consts::FRAC_PI_2;
        let ok = match kind {
            RandomKind::ShiftedGaussian => alpha > 0.0 && alpha < max_alpha,
            RandomKind::NormalSpectrum => (0.0..max_alpha).contains(&alpha),
            RandomKind::AccretiveDissipative => true,
        };
        if !ok {
            return Err(Error::Domain(format!(
                "half-angle {alpha} is not admissible for kind {kind}"
            )));
        }
        Ok(Self {
            n,
            seed,
            kind,
            phi,
            alpha,
        })
    }

    /// Draws the matrix described by this spec.
    pub fn generate(&self) -> Result<ComplexMatrix> {
        match self.kind {
            RandomKind::ShiftedGaussian => random_sector_matrix(self),
            RandomKind::NormalSpectrum => random_normal_sector_matrix(self),
            RandomKind::AccretiveDissipative => random_accretive_dissipative(self),
        }
    }
}

/// Square matrix of independent standard complex Gaussian entries.
pub fn gaussian_matrix(n: usize, rng: &mut SplitMix64) -> ComplexMatrix {
    let data: Vec<Complex64> = (0..n * n).map(|_| rng.complex_gaussian()).collect();
    ComplexMatrix::new(n, data).expect("gaussian draws are finite")
}

/// Spectral norm via the Hermitian eigenproblem of `X* X`.
fn spectral_norm(x: &ComplexMatrix) -> Result<f64> {
    let gram = x.adjoint().mul(x);
    let e = eig_hermitian(&gram)?;
    Ok(e.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Shifted Gaussian family: `e^{i phi} (t I + X)` with
/// `t = ||X||_2 / sin(alpha)`.
///
/// The Hermitian part of `e^{-i(phi +- alpha) } A`-type rotations stays
/// positive semidefinite because the shift dominates the spectral norm of
/// the fluctuation, so the numerical range lands inside the target sector.
pub fn random_sector_matrix(spec: &RandomSpec) -> Result<ComplexMatrix> {
    if !(spec.alpha > 0.0 && spec.alpha < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "shifted Gaussian family needs alpha in (0, pi/2), got {}",
            spec.alpha
        )));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let x = gaussian_matrix(spec.n, &mut rng);
    let s = spectral_norm(&x)?;
    let phase = Complex64::from_polar(1.0, spec.phi);
    if s == 0.0 {
        return Ok(ComplexMatrix::identity(spec.n).scale(phase));
    }
    let t = s / spec.alpha.sin();
    let shifted = ComplexMatrix::identity(spec.n).scale(Complex64::new(t, 0.0)).add(&x);
    Ok(shifted.scale(phase))
}

/// Normal family with prescribed spectral arguments: `e^{i phi} U D U*`.
///
/// Stream order: the `n^2` Gaussian draws for the Haar factor come first,
/// then `n` log-uniform moduli in `[0.1, 10]`, then `n` uniform arguments
/// in `[-alpha, alpha]`.
pub fn random_normal_sector_matrix(spec: &RandomSpec) -> Result<ComplexMatrix> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&spec.alpha) {
        return Err(Error::Domain(format!(
            "normal-spectrum family needs alpha in [0, pi/2), got {}",
            spec.alpha
        )));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let u = haar_unitary(spec.n, &mut rng);
    let ln_lo = 0.1f64.ln();
    let ln_hi = 10f64.ln();
    let radii: Vec<f64> = (0..spec.n)
        .map(|_| rng.uniform_in(ln_lo, ln_hi).exp())
        .collect();
    let args: Vec<f64> = (0..spec.n)
        .map(|_| rng.uniform_in(-spec.alpha, spec.alpha))
        .collect();
    let d = ComplexMatrix::diagonal(
        &radii
            .iter()
            .zip(&args)
            .map(|(&r, &t)| Complex64::from_polar(r, t))
            .collect::<Vec<_>>(),
    );
    Ok(u.mul(&d).mul(&u.adjoint()).rotate(spec.phi))
}

/// Accretive-dissipative family: `G1 G1* + i G2 G2*` with independent
/// Gaussian factors, so both Cartesian parts are positive semidefinite and
/// the numerical range sits in the closed first quadrant.
pub fn random_accretive_dissipative(spec: &RandomSpec) -> Result<ComplexMatrix> {
    let mut rng = SplitMix64::new(spec.seed);
    let g1 = gaussian_matrix(spec.n, &mut rng);
    let g2 = gaussian_matrix(spec.n, &mut rng);
    let h = g1.mul(&g1.adjoint());
    let k = g2.mul(&g2.adjoint());
    Ok(h.add(&k.scale(Complex64::new(0.0, 1.0))))
}

/// Haar-distributed unitary: Householder QR of a Gaussian matrix with the
/// phases of R's diagonal divided out of Q's columns.
pub fn haar_unitary(n: usize, rng: &mut SplitMix64) -> ComplexMatrix {
    let x = gaussian_matrix(n, rng);
    let mut r = x;
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n {
        let mut xnorm_sqr = 0.0;
        for i in k..n {
            xnorm_sqr += r.get(i, k).norm_sqr();
        }
        let xnorm = xnorm_sqr.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = r.get(k, k);
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v = vec![ZERO; n];
        v[k] = x0 - alpha;
        for i in k + 1..n {
            v[i] = r.get(i, k);
        }
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;
        // R <- P R.
        for j in k..n {
            let mut dot = ZERO;
            for i in k..n {
                dot += v[i].conj() * r.get(i, j);
            }
            dot *= tau;
            for i in k..n {
                let val = r.get(i, j) - v[i] * dot;
                r.set(i, j, val);
            }
        }
        // Q <- Q P.
        for i in 0..n {
            let mut dot = ZERO;
            for j in k..n {
                dot += q.get(i, j) * v[j];
            }
            dot *= tau;
            for j in k..n {
                let val = q.get(i, j) - dot * v[j].conj();
                q.set(i, j, val);
            }
        }
    }
    // Divide out the diagonal phases so the distribution is exactly Haar.
    for j in 0..n {
        let d = r.get(j, j);
        let phase = if d.norm() == 0.0 { ONE } else { d / d.norm() };
        for i in 0..n {
            let val = q.get(i, j) * phase;
            q.set(i, j, val);
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{block_split, BlockPartition};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn theta_solution_on_axis_closed_form() {
        // 2 chord_ratio(theta, 0) = sec^2 theta: r = 2 gives theta = pi/4.
        let t = solve_theta(PI / 4.0, 0.0, 2.0).unwrap();
        assert!((t - PI / 4.0).abs() < 1e-12);
        let t = solve_theta(PI / 3.0, 0.0, 2.0).unwrap();
        assert!((t - PI / 4.0).abs() < 1e-12);
        // r = 4 needs theta = pi/3.
        let t = solve_theta(0.49 * PI, 0.0, 4.0).unwrap();
        assert!((t - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn theta_solution_respects_reachability() {
        assert!(matches!(
            solve_theta(PI / 4.0, 0.0, 2.5),
            Err(Error::Unreachable { .. })
        ));
        assert!(matches!(
            solve_theta(PI / 4.0, 0.0, 0.5),
            Err(Error::Unreachable { .. })
        ));
        assert_eq!(solve_theta(PI / 4.0, 0.0, 1.0).unwrap(), 0.0);
        // Off the axis small radii are reachable.
        let t = solve_theta(PI / 4.0, 0.1, 0.05).unwrap();
        assert!(t > 0.1 && t <= PI / 4.0);
    }

    #[test]
    fn solved_theta_reproduces_the_radius() {
        for &(alpha, phi, r) in &[
            (PI / 3.0, 0.2, 1.7),
            (PI / 4.0, -0.15, 0.9),
            (1.2, 0.8, 2.3),
            (PI / 6.0, 0.0, 1.3),
        ] {
            let theta = solve_theta(alpha, phi, r).unwrap();
            assert!(theta > phi.abs() && theta <= alpha);
            let back = 2.0 * chord_ratio(theta, phi).unwrap();
            assert!(
                (back - r).abs() <= 1e-10 * r.max(1.0),
                "alpha={alpha} phi={phi} r={r}: got back {back}"
            );
        }
    }

    #[test]
    fn quarter_angle_construction_is_the_classic_pair() {
        // (alpha, phi, r) = (pi/4, 0, 2): theta = pi/4, a = 0, b = 1:
        // the 2x2 block is [[1, i], [i, 1]].
        let p = ExtremalParams::new(PI / 4.0, 0.0, 2.0, 1, 2).unwrap();
        assert!((p.theta - PI / 4.0).abs() < 1e-12);
        assert!(p.a.abs() < 1e-12);
        assert!((p.b - 1.0).abs() < 1e-12);
        let a = extremal_matrix(&p);
        assert!((a.get(0, 0) - c(1.0, 0.0)).norm() < 1e-12);
        assert!((a.get(0, 1) - c(0.0, 1.0)).norm() < 1e-12);
        assert!((a.get(1, 0) - c(0.0, 1.0)).norm() < 1e-12);
        assert!((a.get(1, 1) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_radius_construction_is_the_all_ones_coupling() {
        // (pi/4, 0, 0, 1, 3) gives [[1,1,0],[1,1,0],[0,0,1]].
        let p = ExtremalParams::new(PI / 4.0, 0.0, 0.0, 1, 3).unwrap();
        let a = extremal_matrix(&p);
        let expected = [
            [1.0, 1.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!((a.get(i, j) - c(expected[i][j], 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn unit_radius_on_axis_is_the_identity() {
        let p = ExtremalParams::new(PI / 3.0, 0.0, 1.0, 2, 5).unwrap();
        let a = extremal_matrix(&p);
        assert!(a.sub(&ComplexMatrix::identity(5)).max_abs() < 1e-15);
    }

    #[test]
    fn construction_is_normal_with_predicted_spectrum() {
        let params = ExtremalParams::new(PI / 3.0, PI / 6.0, 1.0, 2, 5).unwrap();
        let a = extremal_matrix(&params);
        // Normality.
        let comm = a.mul(&a.adjoint()).sub(&a.adjoint().mul(&a));
        assert!(comm.max_abs() < 1e-12);
        // Leading block is w I_m.
        let blocks = block_split(&a, BlockPartition::new(2, 5).unwrap()).unwrap();
        let w = Complex64::from_polar(1.0, -params.phi);
        assert!(blocks.a11.sub(&ComplexMatrix::identity(2).scale(w)).max_abs() < 1e-15);
        // Eigenvalue moduli follow sin(theta -+ phi) / (sin theta cos theta).
        let th = params.theta;
        let r1 = (th - params.phi).sin() / (th.sin() * th.cos());
        let r2 = (th + params.phi).sin() / (th.sin() * th.cos());
        let eigs = crate::eig::eig_general(&a).unwrap();
        for z in eigs {
            let d1 = (z - Complex64::from_polar(r1, th)).norm();
            let d2 = (z - Complex64::from_polar(r2, -th)).norm();
            let d3 = (z - w).norm();
            assert!(
                d1.min(d2).min(d3) < 1e-10,
                "eigenvalue {z} matches no predicted value"
            );
        }
    }

    #[test]
    fn shifted_gaussian_lands_in_its_sector() {
        let spec = RandomSpec::new(6, 2024, RandomKind::ShiftedGaussian, 0.3, 0.6).unwrap();
        let a = spec.generate().unwrap();
        let fitted = crate::numrange::sector_fit(&a, 360, 1e-8).unwrap();
        // The fitted half-angle never exceeds the target (up to slack), and
        // the fitted axis is close to the requested one for the fitted cone.
        assert!(fitted.alpha() <= 0.6 + 1e-7);
        let dphi = (fitted.phi() - 0.3).abs().min(2.0 * PI - (fitted.phi() - 0.3).abs());
        assert!(dphi < 0.6, "axis drifted: {}", fitted.phi());
    }

    #[test]
    fn normal_spectrum_family_is_normal_and_sectorial() {
        let spec = RandomSpec::new(7, 99, RandomKind::NormalSpectrum, -0.4, 0.9).unwrap();
        let a = spec.generate().unwrap();
        let comm = a.mul(&a.adjoint()).sub(&a.adjoint().mul(&a));
        assert!(comm.max_abs() < 1e-10 * a.norm_frobenius());
        let eigs = crate::eig::eig_general(&a).unwrap();
        for z in eigs {
            let arg = (z * Complex64::from_polar(1.0, 0.4)).arg();
            assert!(arg.abs() <= 0.9 + 1e-8, "eigenvalue {z} outside the cone");
            let r = z.norm();
            assert!((0.1 - 1e-9..=10.0 + 1e-9).contains(&r));
        }
    }

    #[test]
    fn accretive_dissipative_parts_are_psd() {
        let spec = RandomSpec::new(8, 5, RandomKind::AccretiveDissipative, 0.0, 0.0).unwrap();
        let a = spec.generate().unwrap();
        assert!(crate::eig::is_psd(&a.hermitian_part(), 1e-12).unwrap());
        assert!(crate::eig::is_psd(&a.skew_part(), 1e-12).unwrap());
    }

    #[test]
    fn generators_are_deterministic_in_the_seed() {
        for kind in [
            RandomKind::ShiftedGaussian,
            RandomKind::NormalSpectrum,
            RandomKind::AccretiveDissipative,
        ] {
            let spec = RandomSpec::new(5, 31337, kind, 0.1, 0.7).unwrap();
            let a = spec.generate().unwrap();
            let b = spec.generate().unwrap();
            assert_eq!(a.checksum(), b.checksum(), "kind {kind} not reproducible");
            let other = RandomSpec::new(5, 31338, kind, 0.1, 0.7).unwrap();
            assert_ne!(a.checksum(), other.generate().unwrap().checksum());
        }
    }

    #[test]
    fn haar_factor_is_unitary() {
        let mut rng = SplitMix64::new(77);
        for n in [1, 3, 8] {
            let q = haar_unitary(n, &mut rng);
            let err = q.adjoint().mul(&q).sub(&ComplexMatrix::identity(n)).max_abs();
            assert!(err < 1e-12, "n={n}: unitarity defect {err}");
        }
    }

    #[test]
    fn spec_validation_rejects_bad_targets() {
        assert!(RandomSpec::new(0, 1, RandomKind::NormalSpectrum, 0.0, 0.3).is_err());
        assert!(RandomSpec::new(3, 1, RandomKind::ShiftedGaussian, 0.0, 0.0).is_err());
        assert!(RandomSpec::new(3, 1, RandomKind::NormalSpectrum, 0.0, 2.0).is_err());
        assert!(RandomSpec::new(3, 1, RandomKind::AccretiveDissipative, 0.0, 9.0).is_ok());
        // max radius at phi = 0.5 inside alpha = pi/4 is 2 cos 1 ~ 1.08.
        assert!(ExtremalParams::new(PI / 4.0, 0.5, 1.2, 1, 2).is_err());
        assert!(ExtremalParams::new(PI / 4.0, 1.0, 0.5, 1, 2).is_err());
        assert!(ExtremalParams::new(PI / 4.0, 0.0, 1.0, 2, 3).is_err());
    }
}
