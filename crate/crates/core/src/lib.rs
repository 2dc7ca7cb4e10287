//! Numerical ranges in sectors: geometry, spectra, and determinant bounds.
//!
//! A square complex matrix whose numerical range `W(A) = {x* A x : |x| = 1}`
//! lies inside a rotated sector of half-angle `alpha < pi/2` obeys strong
//! constraints tying its 2x2 block partition to the sector geometry:
//!
//! * the generalized eigenvalues of the off-diagonal/diagonal pencil come in
//!   `+/-` pairs whose squares stay inside an explicit planar region;
//! * the eigenvalues of `C = I - A11^-1 A12 A22^-1 A21` stay inside the
//!   mirrored region, giving `|det A| <= sec^{2m}(alpha) |det A11 det A22|`
//!   and a spectral radius bound `rho(C) <= sec^2(alpha)`;
//! * accretive-dissipative matrices (both Cartesian parts positive
//!   semidefinite) sharpen the factor to `2^m` and pin the eigenvalues of
//!   `C` into the disk `|z - 1| <= 1`.
//!
//! The crate provides the dense complex linear algebra to compute all of
//! this from scratch (LU with log-scale determinants, Hermitian Jacobi and
//! Hessenberg-QR eigensolvers), support-function sweeps of the numerical
//! range with minimal-sector fitting, the planar regions and their
//! boundaries, matrix generators (random families and the extremal
//! construction attaining the bounds), and a verifier that bundles every
//! check into one serializable report.
//!
//! ```
//! use wrange_core::{
//!     extremal_matrix, verify_matrix, BlockPartition, ExtremalParams, VerifyOptions,
//! };
//!
//! let params = ExtremalParams::new(std::f64::consts::FRAC_PI_4, 0.0, 2.0, 1, 2)?;
//! let a = extremal_matrix(&params);
//! let p = BlockPartition::new(1, 2)?;
//! let report = verify_matrix(&a, p, None, &VerifyOptions::default())?;
//! assert!(report.pass);
//! # Ok::<(), wrange_core::Error>(())
//! ```

// The factorization kernels walk a Householder vector and matrix entries
// with one shared index; iterator rewrites obscure the lockstep access.
#![allow(clippy::needless_range_loop)]

pub mod eig;
pub mod error;
pub mod generate;
pub mod io;
pub mod lu;
pub mod matrix;
pub mod numrange;
pub mod pencil;
pub mod region;
pub mod rng;
pub mod verify;

pub use eig::{eig_general, eig_hermitian, is_psd, HermitianEigen};
pub use error::{Error, Result};
pub use generate::{
    extremal_matrix, gaussian_matrix, haar_unitary, solve_theta, ExtremalParams, RandomKind,
    RandomSpec,
};
pub use io::MatrixDocument;
pub use lu::{determinant, lu_factor, rcond_one_norm, LogDeterminant, LuFactorization};
pub use matrix::{block_reassemble, block_split, BlockPartition, Blocks, ComplexMatrix};
pub use numrange::{
    boundary, in_sector, sector_fit, sector_violation, support_point, Sector, SupportSample,
};
pub use pencil::{
    block_conditioning, coupling_matrix, det_ratio_matrix, generalized_eigs, pencil_matrix,
    BlockConditioning, RCOND_MIN,
};
pub use region::{
    boundary_samples, chord_ratio, in_region, log_sec_bound, max_radius, region_margin,
    triangle_product, RegionKind, RegionSpec,
};
pub use rng::SplitMix64;
pub use verify::{
    verify_accretive_dissipative, verify_determinant_bound, verify_matrix, verify_spectral_radius,
    VerificationReport, VerifyOptions,
};
