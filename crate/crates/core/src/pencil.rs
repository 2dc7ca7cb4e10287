//! The block pencil attached to a partitioned matrix: eigenvalues of
//! `lambda * (A11 (+) A22) x = offdiag(A12, A21) x`, the coupling product
//! `A11^-1 A12 A22^-1 A21`, and the determinant-ratio block
//! `C = I - A11^-1 A12 A22^-1 A21`.
//!
//! The ratio block ties the three determinants together:
//! `det A = det A11 * det A22 * det C` whenever the diagonal blocks are
//! invertible, so the eigenvalues of `C` control how far `det A` can drift
//! from the product of the diagonal block determinants.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lu::{lu_factor, rcond_one_norm};
use crate::matrix::{block_split, BlockPartition, ComplexMatrix};

/// Diagonal blocks with a one-norm reciprocal condition estimate at or below
/// this threshold are treated as numerically singular; callers fall back to
/// the direct kernel argument instead of inverting.
pub const RCOND_MIN: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Reciprocal condition estimates of the two diagonal blocks.
#[derive(Debug, Clone, Copy)]
pub struct BlockConditioning {
    pub rcond_a11: f64,
    pub rcond_a22: f64,
}

impl BlockConditioning {
    pub fn min(&self) -> f64 {
        self.rcond_a11.min(self.rcond_a22)
    }

    /// True when both blocks are safely invertible.
    pub fn invertible(&self) -> bool {
        self.min() > RCOND_MIN
    }
}

/// Condition estimates for the diagonal blocks of a partitioned matrix.
pub fn block_conditioning(a: &ComplexMatrix, p: BlockPartition) -> Result<BlockConditioning> {
    let b = block_split(a, p)?;
    Ok(BlockConditioning {
        rcond_a11: rcond_one_norm(&b.a11),
        rcond_a22: rcond_one_norm(&b.a22),
    })
}

/// Eigenvalues of the pencil `lambda * (A11 (+) A22) x = offdiag(A12, A21) x`,
/// computed as the spectrum of `B = (A11 (+) A22)^-1 * offdiag(A12, A21)`.
///
/// The spectrum is symmetric under negation and contains at least `n - 2m`
/// zeros; values are returned as computed, without snapping.
pub fn generalized_eigs(a: &ComplexMatrix, p: BlockPartition) -> Result<Vec<Complex64>> {
    let b = pencil_matrix(a, p)?;
    crate::eig::eig_general(&b)
}

/// The matrix `B = [[0, A11^-1 A12], [A22^-1 A21, 0]]` whose spectrum is the
/// pencil spectrum.
pub fn pencil_matrix(a: &ComplexMatrix, p: BlockPartition) -> Result<ComplexMatrix> {
    let blocks = block_split(a, p)?;
    let cond = BlockConditioning {
        rcond_a11: rcond_one_norm(&blocks.a11),
        rcond_a22: rcond_one_norm(&blocks.a22),
    };
    if !cond.invertible() {
        return Err(Error::SingularBase { rcond: cond.min() });
    }
    let x = lu_factor(&blocks.a11)
        .solve_matrix(&blocks.a12)
        .ok_or(Error::SingularBase { rcond: cond.min() })?;
    let y = lu_factor(&blocks.a22)
        .solve_matrix(&blocks.a21)
        .ok_or(Error::SingularBase { rcond: cond.min() })?;
    let (m, n) = (p.m(), p.n());
    let mut b = ComplexMatrix::zeros(n);
    for i in 0..m {
        for j in 0..n - m {
            b.set(i, m + j, x.get(i, j));
        }
    }
    for i in 0..n - m {
        for j in 0..m {
            b.set(m + i, j, y.get(i, j));
        }
    }
    Ok(b)
}

/// Coupling product `A11^-1 A12 A22^-1 A21` (order `m`).
pub fn coupling_matrix(a: &ComplexMatrix, p: BlockPartition) -> Result<ComplexMatrix> {
    let blocks = block_split(a, p)?;
    let r11 = rcond_one_norm(&blocks.a11);
    if r11 <= RCOND_MIN {
        return Err(Error::SingularBlock {
            which: "A11",
            rcond: r11,
        });
    }
    let r22 = rcond_one_norm(&blocks.a22);
    if r22 <= RCOND_MIN {
        return Err(Error::SingularBlock {
            which: "A22",
            rcond: r22,
        });
    }
    let y = lu_factor(&blocks.a22)
        .solve_matrix(&blocks.a21)
        .expect("A22 passed the conditioning gate");
    let x = lu_factor(&blocks.a11)
        .solve_matrix(&blocks.a12.mul(&y))
        .expect("A11 passed the conditioning gate");
    Ok(x)
}

/// Determinant-ratio block `C = I_m - A11^-1 A12 A22^-1 A21`, satisfying
/// `det A = det A11 * det A22 * det C` for invertible diagonal blocks.
pub fn det_ratio_matrix(a: &ComplexMatrix, p: BlockPartition) -> Result<ComplexMatrix> {
    let k = coupling_matrix(a, p)?;
    Ok(ComplexMatrix::identity(p.m()).sub(&k))
}

/// Smallest singular value and a matching unit right singular vector of a
/// square matrix, from the Hermitian eigenproblem of `M* M`. Used to produce
/// an explicit near-kernel direction when a diagonal block is singular.
pub fn smallest_singular_direction(m: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let gram = m.adjoint().mul(m);
    let e = crate::eig::eig_hermitian(&gram)?;
    let sigma = e.values[0].max(0.0).sqrt();
    Ok((sigma, e.vector(0)))
}

/// Embeds a vector living on one diagonal block into the full space, padding
/// the other block's coordinates with zeros.
pub fn embed_block_vector(v: &[Complex64], p: BlockPartition, leading: bool) -> Vec<Complex64> {
    let n = p.n();
    let mut x = vec![ZERO; n];
    if leading {
        x[..v.len()].copy_from_slice(v);
    } else {
        x[p.m()..p.m() + v.len()].copy_from_slice(v);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn all_ones_matrix_has_unit_pair() {
        // [[1,1],[1,1]] with m = 1: B = [[0,1],[1,0]], spectrum {1,-1}.
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let p = BlockPartition::new(1, 2).unwrap();
        let mut eigs = generalized_eigs(&a, p).unwrap();
        eigs.sort_by(|x, y| x.re.total_cmp(&y.re));
        assert!((eigs[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((eigs[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn symmetric_imaginary_coupling_gives_imaginary_pair() {
        // [[1,i],[i,1]] with m = 1: pencil spectrum {i, -i}.
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 1.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let p = BlockPartition::new(1, 2).unwrap();
        let mut eigs = generalized_eigs(&a, p).unwrap();
        eigs.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((eigs[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((eigs[1] - c(0.0, 1.0)).norm() < 1e-12);

        // C = [2] and the determinant identity holds: det A = 1 * 1 * 2.
        let cm = det_ratio_matrix(&a, p).unwrap();
        assert!((cm.get(0, 0) - c(2.0, 0.0)).norm() < 1e-14);
        let d = crate::lu::determinant(&a).value.unwrap();
        assert!((d - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn spectrum_is_negation_symmetric_with_padding_zeros() {
        // Deterministic 5x5 with m = 2: spectrum = {l, -l, mu, -mu, 0}.
        let mut a = ComplexMatrix::identity(5);
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    let re = ((i * 3 + j) % 5) as f64 * 0.1;
                    let im = ((i + 2 * j) % 7) as f64 * 0.05 - 0.15;
                    a.set(i, j, c(re, im));
                }
            }
        }
        let p = BlockPartition::new(2, 5).unwrap();
        let eigs = generalized_eigs(&a, p).unwrap();
        assert_eq!(eigs.len(), 5);
        // Exactly n - 2m = 1 near-zero value.
        let zeros = eigs.iter().filter(|z| z.norm() < 1e-9).count();
        assert_eq!(zeros, 1);
        // Each nonzero value has its negation present.
        for z in eigs.iter().filter(|z| z.norm() >= 1e-9) {
            let has_mate = eigs.iter().any(|w| (w + z).norm() < 1e-8);
            assert!(has_mate, "missing -lambda mate for {z}");
        }
    }

    #[test]
    fn squares_of_pencil_eigs_match_coupling_spectrum() {
        let mut a = ComplexMatrix::identity(6);
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    a.set(i, j, c(0.07 * ((i + 3 * j) % 5) as f64, 0.04 * ((2 * i + j) % 3) as f64));
                }
            }
        }
        let p = BlockPartition::new(2, 6).unwrap();
        let lam = generalized_eigs(&a, p).unwrap();
        let mu = crate::eig::eig_general(&coupling_matrix(&a, p).unwrap()).unwrap();
        // Every coupling eigenvalue is the square of some pencil eigenvalue.
        for m in &mu {
            let best = lam
                .iter()
                .map(|l| ((l * l) - m).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-8, "mu = {m} unmatched (best {best})");
        }
    }

    #[test]
    fn singular_leading_block_is_rejected() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let p = BlockPartition::new(1, 2).unwrap();
        assert!(matches!(
            generalized_eigs(&a, p),
            Err(Error::SingularBase { .. })
        ));
        assert!(matches!(
            coupling_matrix(&a, p),
            Err(Error::SingularBlock { which: "A11", .. })
        ));
    }

    #[test]
    fn determinant_identity_on_deterministic_input() {
        let mut a = ComplexMatrix::identity(6);
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    a.set(i, j, c(0.11 * ((i * j + 1) % 4) as f64, -0.06 * ((i + j) % 5) as f64));
                }
            }
        }
        for m in 1..=3 {
            let p = BlockPartition::new(m, 6).unwrap();
            let blocks = block_split(&a, p).unwrap();
            let da = crate::lu::determinant(&a).value.unwrap();
            let d11 = crate::lu::determinant(&blocks.a11).value.unwrap();
            let d22 = crate::lu::determinant(&blocks.a22).value.unwrap();
            let dc = crate::lu::determinant(&det_ratio_matrix(&a, p).unwrap())
                .value
                .unwrap();
            let lhs = da;
            let rhs = d11 * d22 * dc;
            assert!(
                (lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0),
                "m={m}: det identity violated"
            );
        }
    }

    #[test]
    fn kernel_direction_of_singular_block_is_exact() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let (sigma, v) = smallest_singular_direction(&m).unwrap();
        assert!(sigma < 1e-12, "sigma = {sigma}, v = {v:?}");
        let mv = m.matvec(&v);
        let res: f64 = mv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(res < 1e-12);
    }

    #[test]
    fn embedding_pads_the_complementary_block() {
        let p = BlockPartition::new(2, 5).unwrap();
        let v = [c(1.0, 0.0), c(0.0, 1.0)];
        let lead = embed_block_vector(&v, p, true);
        assert_eq!(lead.len(), 5);
        assert_eq!(lead[0], v[0]);
        assert_eq!(lead[1], v[1]);
        assert!(lead[2..].iter().all(|z| *z == ZERO));
        let w = [c(2.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)];
        let trail = embed_block_vector(&w, p, false);
        assert!(trail[..2].iter().all(|z| *z == ZERO));
        assert_eq!(trail[2], w[0]);
        assert_eq!(trail[4], w[2]);
    }
}
