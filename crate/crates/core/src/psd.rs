//! Extended-value Mahalanobis geometry and PSD matrix perturbation.
//!
//! All algorithms here measure vectors against a positive semidefinite
//! matrix `A` through the extended Mahalanobis norm `|v|_A^2 = v' A^+ v`,
//! which is `+inf` when `v` leaves the column space of `A`. [`PsdMatrix`]
//! owns a cached spectral factorization so repeated norm evaluations,
//! pseudoinverses and square roots cost one factorization per matrix.

use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use nalgebra::{DMatrix, DVector};
use std::sync::OnceLock;

/// Relative symmetry tolerance; matrices further from symmetric are rejected.
pub const SYM_TOL: f64 = 1e-10;
/// Relative PSD tolerance; eigenvalues in [-PSD_TOL * lambda_max, 0] clamp to 0.
pub const PSD_TOL: f64 = 1e-10;
/// Column-space membership: residual |(I - P)v| <= COL_TOL * |v|.
pub const COL_TOL: f64 = 1e-8;
/// Margin below 1 at which a rank-one downdate is refused.
pub const DOWNDATE_TOL: f64 = 1e-9;

/// Unit roundoff of binary64.
const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Symmetric positive semidefinite matrix with a cached spectral
/// factorization (eigenvalues descending and clamped to be nonnegative).
///
/// Values are immutable after construction and safe to share across threads.
#[derive(Debug)]
pub struct PsdMatrix {
    mat: DMatrix<f64>,
    eigvals: DVector<f64>,
    eigvecs: DMatrix<f64>,
    rank: usize,
    projector: OnceLock<DMatrix<f64>>,
}

impl Clone for PsdMatrix {
    fn clone(&self) -> Self {
        PsdMatrix {
            mat: self.mat.clone(),
            eigvals: self.eigvals.clone(),
            eigvecs: self.eigvecs.clone(),
            rank: self.rank,
            projector: OnceLock::new(),
        }
    }
}

impl PsdMatrix {
    /// Validates symmetry and positive semidefiniteness, then factorizes.
    pub fn new(mat: DMatrix<f64>) -> Result<PsdMatrix> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimMismatch {
                expected: mat.nrows(),
                got: mat.ncols(),
            });
        }
        let d = mat.nrows();
        let mut max_abs = 0.0_f64;
        let mut max_asym = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                max_abs = max_abs.max(mat[(i, j)].abs());
                if j > i {
                    max_asym = max_asym.max((mat[(i, j)] - mat[(j, i)]).abs());
                }
            }
        }
        let sym_tol = SYM_TOL * max_abs.max(1.0);
        if max_asym > sym_tol {
            return Err(Error::NonSymmetric {
                max_asym,
                tol: sym_tol,
            });
        }
        // Work on the symmetrized matrix so the factorization is exact for it.
        let sym = (&mat + mat.transpose()) * 0.5;
        let eig = sym.clone().symmetric_eigen();

        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let mut eigvals = DVector::zeros(d);
        let mut eigvecs = DMatrix::zeros(d, d);
        for (slot, &src) in order.iter().enumerate() {
            eigvals[slot] = eig.eigenvalues[src];
            eigvecs.set_column(slot, &eig.eigenvectors.column(src));
        }

        let lambda_max = eigvals.get(0).copied().unwrap_or(0.0).max(0.0);
        let psd_floor = -PSD_TOL * lambda_max;
        for v in eigvals.iter_mut() {
            if *v < psd_floor {
                return Err(Error::NotPsd {
                    eigenvalue: *v,
                    tol: -psd_floor,
                });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let rank_tol = (d as f64) * UNIT_ROUNDOFF * lambda_max;
        let rank = eigvals.iter().filter(|&&v| v > rank_tol).count();

        Ok(PsdMatrix {
            mat: sym,
            eigvals,
            eigvecs,
            rank,
            projector: OnceLock::new(),
        })
    }

    pub fn zeros(dim: usize) -> PsdMatrix {
        PsdMatrix {
            mat: DMatrix::zeros(dim, dim),
            eigvals: DVector::zeros(dim),
            eigvecs: DMatrix::identity(dim, dim),
            rank: 0,
            projector: OnceLock::new(),
        }
    }

    pub fn identity(dim: usize) -> PsdMatrix {
        PsdMatrix {
            mat: DMatrix::identity(dim, dim),
            eigvals: DVector::from_element(dim, 1.0),
            eigvecs: DMatrix::identity(dim, dim),
            rank: dim,
            projector: OnceLock::new(),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<PsdMatrix> {
        PsdMatrix::new(DMatrix::from_diagonal(&DVector::from_row_slice(diag)))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Eigenvalues in descending order, clamped to be nonnegative.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigvals
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigvals.get(0).copied().unwrap_or(0.0)
    }

    /// Smallest eigenvalue (before clamping this is >= -PSD_TOL * lambda_max).
    pub fn lambda_min(&self) -> f64 {
        let d = self.dim();
        if d == 0 {
            0.0
        } else {
            self.eigvals[d - 1]
        }
    }

    /// Orthogonal projector onto the column space, cached.
    pub fn projector(&self) -> &DMatrix<f64> {
        self.projector.get_or_init(|| {
            let basis = self.eigvecs.columns(0, self.rank);
            &basis * basis.transpose()
        })
    }

    fn spectral_map(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let basis = self.eigvecs.columns(0, self.rank);
        let scaled = DMatrix::from_fn(self.dim(), self.rank, |i, j| basis[(i, j)] * f(self.eigvals[j]));
        scaled * basis.transpose()
    }

    /// Moore-Penrose pseudoinverse via spectral inversion of the
    /// eigenvalues above the rank cutoff.
    pub fn pinv(&self) -> PsdMatrix {
        let m = self.spectral_map(|v| 1.0 / v);
        PsdMatrix::new(m).expect("pseudoinverse of a PSD matrix is PSD")
    }

    /// Square root of the pseudoinverse.
    pub fn pinv_sqrt(&self) -> DMatrix<f64> {
        self.spectral_map(|v| 1.0 / v.sqrt())
    }

    /// PSD square root.
    pub fn sqrt(&self) -> DMatrix<f64> {
        self.spectral_map(|v| v.sqrt())
    }

    /// Extended squared Mahalanobis norm `v' A^+ v`, `+inf` outside Col(A).
    pub fn mahalanobis_sq(&self, v: &DVector<f64>) -> Result<ExtReal> {
        if v.len() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let norm = v.norm();
        if norm == 0.0 {
            return Ok(ExtReal::ZERO);
        }
        let basis = self.eigvecs.columns(0, self.rank);
        let coeffs = basis.transpose() * v;
        let resid = (v - &basis * &coeffs).norm();
        if resid > COL_TOL * norm {
            return Ok(ExtReal::INFINITY);
        }
        let mut acc = 0.0;
        for j in 0..self.rank {
            acc += coeffs[j] * coeffs[j] / self.eigvals[j];
        }
        Ok(ExtReal::new(acc))
    }

    /// `A - alpha * a a'`, guaranteed PSD with the same column space.
    ///
    /// Refused when `alpha * |a|_A^2` reaches 1 (including `+inf`), since the
    /// difference would pick up a negative eigenvalue.
    pub fn rank_one_downdate(&self, a: &DVector<f64>, alpha: f64) -> Result<PsdMatrix> {
        assert!(alpha >= 0.0, "downdate weight must be nonnegative");
        let nsq = self.mahalanobis_sq(a)?;
        let weighted = if nsq.is_finite() {
            alpha * nsq.value()
        } else if alpha == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if !(weighted < 1.0 - DOWNDATE_TOL) {
            return Err(Error::NotDowndatable { norm_sq: weighted });
        }
        if alpha == 0.0 {
            return Ok(self.clone());
        }
        let m = &self.mat - (a * a.transpose()) * alpha;
        PsdMatrix::new(m)
    }
}

/// Sum of singular values of a square matrix.
pub fn nuclear_norm(m: &DMatrix<f64>) -> f64 {
    assert_eq!(m.nrows(), m.ncols(), "nuclear norm expects a square matrix");
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.iter().sum()
}

/// Nuclear norm of a symmetric matrix through its eigenvalues.
fn nuclear_norm_sym(m: &DMatrix<f64>) -> f64 {
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigen().eigenvalues.iter().map(|v| v.abs()).sum()
}

/// Relative nuclear-norm distance between PSD matrices:
/// `max{ |A^{+/2} (B - A) A^{+/2}|_*, |B^{+/2} (A - B) B^{+/2}|_* }` when the
/// column spaces coincide, `+inf` otherwise.
pub fn d_psd(a: &PsdMatrix, b: &PsdMatrix) -> Result<ExtReal> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if a.rank() != b.rank() {
        return Ok(ExtReal::INFINITY);
    }
    let d = a.dim();
    if d == 0 || a.rank() == 0 {
        return Ok(ExtReal::ZERO);
    }
    // Mutual projector residuals decide column-space equality.
    let pa = a.projector();
    let pb = b.projector();
    let tol = COL_TOL * (d as f64).sqrt();
    let resid_ab = (pb - pa * pb).norm();
    let resid_ba = (pa - pb * pa).norm();
    if resid_ab > tol || resid_ba > tol {
        return Ok(ExtReal::INFINITY);
    }
    let diff = &b.mat - &a.mat;
    let wa = a.pinv_sqrt();
    let wb = b.pinv_sqrt();
    let na = nuclear_norm_sym(&(&wa * &diff * &wa));
    let nb = nuclear_norm_sym(&(&wb * (-&diff) * &wb));
    Ok(ExtReal::new(na.max(nb)))
}

/// Batch evaluator for Mahalanobis norms against a fixed matrix.
///
/// One factorization feeds a single whitening product per batch of rows,
/// which is what keeps the per-iteration cost of the pruning loops at
/// O(n d^2).
pub struct Whitener {
    white: DMatrix<f64>,
    projector: Option<DMatrix<f64>>,
}

impl Whitener {
    pub fn new(a: &PsdMatrix) -> Whitener {
        let projector = if a.rank() == a.dim() {
            None
        } else {
            Some(a.projector().clone())
        };
        Whitener {
            white: a.pinv_sqrt(),
            projector,
        }
    }

    pub fn dim(&self) -> usize {
        self.white.nrows()
    }

    /// Rows premultiplied by `A^{+/2}` (the whitening map is symmetric).
    pub fn whiten_rows(&self, rows: &DMatrix<f64>) -> DMatrix<f64> {
        rows * &self.white
    }

    /// Column-space residual rows `(I - P) x_i`, `None` for full rank.
    pub fn residual_rows(&self, rows: &DMatrix<f64>) -> Option<DMatrix<f64>> {
        self.projector.as_ref().map(|p| rows - rows * p)
    }

    /// Squared extended norms of every row of `rows`.
    pub fn norm_sq_rows(&self, rows: &DMatrix<f64>) -> Vec<ExtReal> {
        let white = self.whiten_rows(rows);
        let resid = self.residual_rows(rows);
        (0..rows.nrows())
            .map(|i| {
                let raw = rows.row(i).norm();
                if raw == 0.0 {
                    return ExtReal::ZERO;
                }
                if let Some(r) = &resid {
                    if r.row(i).norm() > COL_TOL * raw {
                        return ExtReal::INFINITY;
                    }
                }
                ExtReal::new(white.row(i).norm_squared())
            })
            .collect()
    }
}
