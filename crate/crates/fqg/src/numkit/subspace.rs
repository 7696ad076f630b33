//! Orthonormal subspaces of coordinate space and the rank/kernel calculus.


use super::{svd, CMatrix, NumError, ToleranceConfig};

/// A subspace of `C^ambient_dim` carried by an orthonormal column basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: CMatrix,
}

impl Subspace {
    /// Wraps a basis matrix, checking orthonormality within `eq_tol`.
    pub fn from_orthonormal(basis: CMatrix, tol: &ToleranceConfig) -> Result<Self, NumError> {
        let ambient_dim = basis.rows();
        if basis.cols() > ambient_dim {
            return Err(NumError::InvalidMatrix(format!(
                "{} basis columns in ambient dimension {ambient_dim}",
                basis.cols()
            )));
        }
        if basis.cols() > 0 {
            let gram = basis.adjoint().mul(&basis);
            let defect = gram.distance(&CMatrix::identity(basis.cols()));
            if defect > tol.eq_tol.max(1e-12) {
                return Err(NumError::InvalidMatrix(format!(
                    "basis not orthonormal (defect {defect:.3e})"
                )));
            }
        }
        Ok(Self { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: CMatrix::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: CMatrix::identity(ambient_dim) }
    }

    /// Orthonormalizes the column span of `m` (rank-truncated by `rank_tol`).
    pub fn from_span(m: &CMatrix, tol: &ToleranceConfig) -> Result<Self, NumError> {
        if m.cols() == 0 {
            return Ok(Self::zero(m.rows()));
        }
        range(m, tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> CMatrix {
        if self.dim() == 0 {
            return CMatrix::zeros(self.ambient_dim, self.ambient_dim);
        }
        self.basis.mul(&self.basis.adjoint())
    }

    /// Max residual of the columns of `vecs` against the subspace.
    pub fn residual(&self, vecs: &CMatrix) -> f64 {
        assert_eq!(vecs.rows(), self.ambient_dim, "ambient mismatch");
        if vecs.cols() == 0 {
            return 0.0;
        }
        let proj = self.projector().mul(vecs);
        proj.distance(vecs)
    }

    pub fn contains(&self, vecs: &CMatrix, tol: &ToleranceConfig) -> bool {
        self.residual(vecs) <= tol.eq_tol
    }

    /// Subspace equality via projector comparison.
    pub fn approx_eq(&self, other: &Subspace, tol: f64) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && self.projector().distance(&other.projector()) <= tol
    }

    /// Orthogonal complement.
    pub fn complement(&self, tol: &ToleranceConfig) -> Result<Subspace, NumError> {
        if self.dim() == 0 {
            return Ok(Subspace::full(self.ambient_dim));
        }
        kernel(&self.basis.adjoint(), tol)
    }
}

/// Numerical rank by singular-value thresholding at
/// `rank_tol * sigma_max`.
pub fn rank(m: &CMatrix, tol: &ToleranceConfig) -> Result<usize, NumError> {
    if m.cols() == 0 || m.rows() == 0 {
        return Ok(0);
    }
    let d = svd(m)?;
    Ok(count_above(&d.sigma, tol))
}

fn count_above(sigma: &[f64], tol: &ToleranceConfig) -> usize {
    let smax = sigma.first().copied().unwrap_or(0.0);
    if smax <= 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > tol.rank_tol * smax).count()
}

/// Orthonormal basis of `{v : Mv = 0}`.
pub fn kernel(m: &CMatrix, tol: &ToleranceConfig) -> Result<Subspace, NumError> {
    if m.is_empty() {
        return Err(NumError::InvalidMatrix("kernel of empty matrix".into()));
    }
    let d = svd(m)?;
    let r = count_above(&d.sigma, tol);
    let n = m.cols();
    let mut basis = CMatrix::zeros(n, n - r);
    for (out_j, j) in (r..n).enumerate() {
        for i in 0..n {
            basis[(i, out_j)] = d.v[(i, j)];
        }
    }
    Ok(Subspace { ambient_dim: n, basis })
}

/// Orthonormal basis of the column span of `m`.
pub fn range(m: &CMatrix, tol: &ToleranceConfig) -> Result<Subspace, NumError> {
    if m.is_empty() {
        return Ok(Subspace::zero(m.rows()));
    }
    let d = svd(m)?;
    let r = count_above(&d.sigma, tol);
    let mut basis = CMatrix::zeros(m.rows(), r);
    for j in 0..r {
        for i in 0..m.rows() {
            basis[(i, j)] = d.u[(i, j)];
        }
    }
    Ok(Subspace { ambient_dim: m.rows(), basis })
}

/// Returns `(U + V, U ∩ V)`.
///
/// The intersection comes from the kernel of `[U | V]`: a kernel vector
/// `(x; y)` has `Ux = -Vy`, and those common values span the intersection.
pub fn subspace_sum_and_intersection(
    u: &Subspace,
    v: &Subspace,
    tol: &ToleranceConfig,
) -> Result<(Subspace, Subspace), NumError> {
    if u.ambient_dim != v.ambient_dim {
        return Err(NumError::DimensionMismatch(format!(
            "subspaces live in dimensions {} and {}",
            u.ambient_dim, v.ambient_dim
        )));
    }
    let n = u.ambient_dim;
    if u.dim() == 0 {
        return Ok((v.clone(), Subspace::zero(n)));
    }
    if v.dim() == 0 {
        return Ok((u.clone(), Subspace::zero(n)));
    }
    let stacked = u.basis.hstack(&v.basis);
    let sum = range(&stacked, tol)?;
    let null = kernel(&stacked, tol)?;
    if null.dim() == 0 {
        return Ok((sum, Subspace::zero(n)));
    }
    let mut reps = CMatrix::zeros(n, null.dim());
    for j in 0..null.dim() {
        let coeff = null.basis.col(j);
        let mut x = CMatrix::zeros(u.dim(), 1);
        for i in 0..u.dim() {
            x[(i, 0)] = coeff[(i, 0)];
        }
        reps.set_col(j, &u.basis.mul(&x));
    }
    let intersection = range(&reps, tol)?;
    Ok((sum, intersection))
}
