//! Finite-dimensional *-algebras presented by structure constants, their
//! morphisms, two-sided ideals, and quotients.
//!
//! An algebra of dimension `n` is carried by the multiplication map
//! `mult: C^n (x) C^n -> C^n` stored as an `n x n^2` matrix (column
//! `i*n + j` holds the coordinates of `b_i * b_j`), a unit vector, and an
//! antilinear involution `x* = K . conj(x)`.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::numkit::{self, eigh, CMatrix, NumError, Subspace, ToleranceConfig};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("invalid algebra data: {0}")]
    InvalidStructure(String),
    #[error("axiom `{axiom}` violated by {violation:.3e}")]
    AxiomViolation { axiom: String, violation: f64 },
    #[error("subspace is not a two-sided *-ideal (violation {violation:.3e})")]
    IdealClosureViolation { violation: f64 },
    #[error("quotient by a non-ideal requested (violation {violation:.3e})")]
    NotAnIdeal { violation: f64 },
    #[error("GNS form is not positive definite ({0}); input is not a C*-algebra")]
    NotCStar(String),
    #[error("morphism shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// A unital *-algebra over C given by structure constants.
#[derive(Debug, Clone)]
pub struct StarAlgebra {
    dim: usize,
    mult: CMatrix,
    unit: CMatrix,
    star: CMatrix,
    labels: Option<Vec<String>>,
}

/// Per-axiom maximum violations from [`StarAlgebra::verify`].
#[derive(Debug, Clone)]
pub struct StarAlgebraReport {
    pub associativity: f64,
    pub unit_law: f64,
    pub star_involutive: f64,
    pub star_antihom: f64,
}

impl StarAlgebraReport {
    pub fn max_violation(&self) -> f64 {
        self.associativity
            .max(self.unit_law)
            .max(self.star_involutive)
            .max(self.star_antihom)
    }

    pub fn pass(&self, tol: &ToleranceConfig) -> bool {
        self.max_violation() <= tol.eq_tol
    }
}

impl StarAlgebra {
    pub fn new(
        dim: usize,
        mult: CMatrix,
        unit: CMatrix,
        star: CMatrix,
        labels: Option<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        if mult.rows() != dim || mult.cols() != dim * dim {
            return Err(AlgebraError::InvalidStructure(format!(
                "mult map must be {dim}x{}, got {}x{}",
                dim * dim,
                mult.rows(),
                mult.cols()
            )));
        }
        if unit.rows() != dim || unit.cols() != 1 {
            return Err(AlgebraError::InvalidStructure("unit must be a column vector".into()));
        }
        if star.rows() != dim || star.cols() != dim {
            return Err(AlgebraError::InvalidStructure("star matrix must be square".into()));
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(AlgebraError::InvalidStructure("label count != dim".into()));
            }
        }
        mult.check_finite()?;
        unit.check_finite()?;
        star.check_finite()?;
        Ok(Self { dim, mult, unit, star, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Multiplication as an `n x n^2` matrix.
    pub fn mult_map(&self) -> &CMatrix {
        &self.mult
    }

    pub fn unit(&self) -> &CMatrix {
        &self.unit
    }

    /// Involution data `K`, with `x* = K . conj(x)`.
    pub fn star_matrix(&self) -> &CMatrix {
        &self.star
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Product of two elements given by coordinate columns.
    pub fn mul_elems(&self, x: &CMatrix, y: &CMatrix) -> CMatrix {
        let n = self.dim;
        debug_assert_eq!(x.rows(), n);
        debug_assert_eq!(y.rows(), n);
        let mut out = CMatrix::zeros(n, 1);
        for l in 0..n {
            let xl = x[(l, 0)];
            if xl == Complex64::ZERO {
                continue;
            }
            for m in 0..n {
                let ym = y[(m, 0)];
                if ym == Complex64::ZERO {
                    continue;
                }
                let c = xl * ym;
                let col = l * n + m;
                for k in 0..n {
                    let s = self.mult[(k, col)];
                    if s != Complex64::ZERO {
                        out[(k, 0)] += c * s;
                    }
                }
            }
        }
        out
    }

    pub fn star_elem(&self, x: &CMatrix) -> CMatrix {
        self.star.mul(&x.conj())
    }

    /// Left multiplication operator `L_x: y -> x*y`.
    pub fn left_mult(&self, x: &CMatrix) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul_elems(x, &CMatrix::basis_vec(n, j));
            out.set_col(j, &col);
        }
        out
    }

    /// Right multiplication operator `R_x: y -> y*x`.
    pub fn right_mult(&self, x: &CMatrix) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul_elems(&CMatrix::basis_vec(n, j), x);
            out.set_col(j, &col);
        }
        out
    }

    /// Checks associativity, unit laws, and the involution axioms; returns
    /// per-axiom max violations.
    pub fn verify(&self, _tol: &ToleranceConfig) -> StarAlgebraReport {
        let n = self.dim;
        let mut assoc: f64 = 0.0;
        for i in 0..n {
            let ei = CMatrix::basis_vec(n, i);
            for j in 0..n {
                let ej = CMatrix::basis_vec(n, j);
                let ij = self.mul_elems(&ei, &ej);
                for k in 0..n {
                    let ek = CMatrix::basis_vec(n, k);
                    let lhs = self.mul_elems(&ij, &ek);
                    let rhs = self.mul_elems(&ei, &self.mul_elems(&ej, &ek));
                    assoc = assoc.max(lhs.distance(&rhs));
                }
            }
        }

        let mut unit_law: f64 = 0.0;
        for i in 0..n {
            let ei = CMatrix::basis_vec(n, i);
            unit_law = unit_law.max(self.mul_elems(&self.unit, &ei).distance(&ei));
            unit_law = unit_law.max(self.mul_elems(&ei, &self.unit).distance(&ei));
        }

        let star_involutive = self.star.mul(&self.star.conj()).distance(&CMatrix::identity(n));

        let mut star_antihom: f64 = 0.0;
        for i in 0..n {
            let ei = CMatrix::basis_vec(n, i);
            let si = self.star_elem(&ei);
            for j in 0..n {
                let ej = CMatrix::basis_vec(n, j);
                let lhs = self.star_elem(&self.mul_elems(&ei, &ej));
                let rhs = self.mul_elems(&self.star_elem(&ej), &si);
                star_antihom = star_antihom.max(lhs.distance(&rhs));
            }
        }

        StarAlgebraReport { associativity: assoc, unit_law, star_involutive, star_antihom }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(a1: &StarAlgebra, a2: &StarAlgebra) -> StarAlgebra {
        let (n1, n2) = (a1.dim, a2.dim);
        let n = n1 + n2;
        let mut mult = CMatrix::zeros(n, n * n);
        for i in 0..n {
            for j in 0..n {
                let col = i * n + j;
                if i < n1 && j < n1 {
                    let src = i * n1 + j;
                    for k in 0..n1 {
                        mult[(k, col)] = a1.mult[(k, src)];
                    }
                } else if i >= n1 && j >= n1 {
                    let src = (i - n1) * n2 + (j - n1);
                    for k in 0..n2 {
                        mult[(n1 + k, col)] = a2.mult[(k, src)];
                    }
                }
            }
        }
        let unit = a1.unit.vstack(&a2.unit);
        let mut star = CMatrix::zeros(n, n);
        for i in 0..n1 {
            for j in 0..n1 {
                star[(i, j)] = a1.star[(i, j)];
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                star[(n1 + i, n1 + j)] = a2.star[(i, j)];
            }
        }
        let labels = match (&a1.labels, &a2.labels) {
            (Some(l1), Some(l2)) => Some(l1.iter().chain(l2.iter()).cloned().collect()),
            _ => None,
        };
        StarAlgebra { dim: n, mult, unit, star, labels }
    }

    /// Tensor product algebra `A (x) B` with the crate flat-index convention.
    pub fn tensor(a: &StarAlgebra, b: &StarAlgebra) -> Result<StarAlgebra, AlgebraError> {
        let (n, m) = (a.dim, b.dim);
        let nm = n * m;
        if nm * nm * nm > numkit::DEFAULT_SIZE_CAP * 16 {
            return Err(AlgebraError::InvalidStructure(format!(
                "tensor algebra of dimension {nm} is beyond the supported scale"
            )));
        }
        let mut mult = CMatrix::zeros(nm, nm * nm);
        for ia in 0..n {
            for ib in 0..m {
                for ja in 0..n {
                    for jb in 0..m {
                        let col = (ia * m + ib) * nm + (ja * m + jb);
                        let ca = ia * n + ja;
                        let cb = ib * m + jb;
                        for ka in 0..n {
                            let va = a.mult[(ka, ca)];
                            if va == Complex64::ZERO {
                                continue;
                            }
                            for kb in 0..m {
                                let vb = b.mult[(kb, cb)];
                                if vb != Complex64::ZERO {
                                    mult[(ka * m + kb, col)] = va * vb;
                                }
                            }
                        }
                    }
                }
            }
        }
        let unit = a.unit.kron(&b.unit)?;
        let star = a.star.kron(&b.star)?;
        Ok(StarAlgebra { dim: nm, mult, unit, star, labels: None })
    }

    /// Product of two elements of `A (x) B` given by flat coordinate
    /// vectors, computed from the factor structure constants without
    /// materializing the tensor-algebra multiplication map.
    pub fn tensor_mul_vec(a: &StarAlgebra, b: &StarAlgebra, x: &CMatrix, y: &CMatrix) -> CMatrix {
        let (n, m) = (a.dim, b.dim);
        let nm = n * m;
        debug_assert_eq!(x.rows(), nm);
        debug_assert_eq!(y.rows(), nm);
        let mut out = CMatrix::zeros(nm, 1);
        for ia in 0..n {
            for ib in 0..m {
                let xv = x[(ia * m + ib, 0)];
                if xv == Complex64::ZERO {
                    continue;
                }
                for ja in 0..n {
                    for jb in 0..m {
                        let yv = y[(ja * m + jb, 0)];
                        if yv == Complex64::ZERO {
                            continue;
                        }
                        let c = xv * yv;
                        let ca = ia * n + ja;
                        let cb = ib * m + jb;
                        for ka in 0..n {
                            let va = a.mult[(ka, ca)];
                            if va == Complex64::ZERO {
                                continue;
                            }
                            for kb in 0..m {
                                let vb = b.mult[(kb, cb)];
                                if vb != Complex64::ZERO {
                                    out[(ka * m + kb, 0)] += c * va * vb;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Commutative algebra of functions on `n` points (delta-function basis).
    pub fn pointwise(n: usize) -> StarAlgebra {
        let mut mult = CMatrix::zeros(n, n * n);
        for i in 0..n {
            mult[(i, i * n + i)] = Complex64::ONE;
        }
        let unit = CMatrix::from_fn(n, 1, |_, _| Complex64::ONE);
        StarAlgebra { dim: n, mult, unit, star: CMatrix::identity(n), labels: None }
    }

    /// Full matrix algebra `M_n` in the matrix-unit basis `e_{ij}`
    /// (flat index `i*n + j`), with `e_{ij} e_{kl} = [j=k] e_{il}` and
    /// `(e_{ij})* = e_{ji}`.
    pub fn matrix_units(n: usize) -> StarAlgebra {
        let d = n * n;
        let mut mult = CMatrix::zeros(d, d * d);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if j == k {
                            let col = (i * n + j) * d + (k * n + l);
                            mult[(i * n + l, col)] = Complex64::ONE;
                        }
                    }
                }
            }
        }
        let mut unit = CMatrix::zeros(d, 1);
        for i in 0..n {
            unit[(i * n + i, 0)] = Complex64::ONE;
        }
        let mut star = CMatrix::zeros(d, d);
        for i in 0..n {
            for j in 0..n {
                star[(j * n + i, i * n + j)] = Complex64::ONE;
            }
        }
        StarAlgebra { dim: d, mult, unit, star, labels: None }
    }

    /// Normalized trace of the left regular representation, as a
    /// `1 x n` functional. Faithful positive and tracial on any
    /// finite-dimensional C*-algebra.
    pub fn regular_trace(&self) -> CMatrix {
        let n = self.dim;
        let mut row = CMatrix::zeros(1, n);
        for j in 0..n {
            let mut tr = Complex64::ZERO;
            for k in 0..n {
                tr += self.mult[(k, j * n + k)];
            }
            row[(0, j)] = tr / n as f64;
        }
        row
    }

    /// Gram matrix `G_{ij} = tau(b_i* b_j)` of the regular trace.
    pub fn gns_gram(&self) -> CMatrix {
        let n = self.dim;
        let tau = self.regular_trace();
        let mut g = CMatrix::zeros(n, n);
        for i in 0..n {
            let bi_star = self.star_elem(&CMatrix::basis_vec(n, i));
            for j in 0..n {
                let prod = self.mul_elems(&bi_star, &CMatrix::basis_vec(n, j));
                g[(i, j)] = tau.mul(&prod)[(0, 0)];
            }
        }
        g
    }

    /// Whether `x` is a positive element, decided in the GNS representation.
    pub fn is_positive(&self, x: &CMatrix, tol: &ToleranceConfig) -> Result<bool, AlgebraError> {
        let gns = GnsRep::new(self, tol)?;
        let m = gns.represent(self, x);
        let herm_defect = m.distance(&m.adjoint());
        if herm_defect > tol.eq_tol.max(1e-10) {
            return Ok(false);
        }
        let e = eigh(&m)?;
        let scale = e.values.iter().fold(0.0f64, |a, &v| a.max(v.abs())).max(1.0);
        Ok(e.values.iter().all(|&v| v >= -tol.eq_tol * scale))
    }
}

/// Faithful *-representation coming from the GNS construction of the
/// regular trace: `rep(x) = G^{1/2} L_x G^{-1/2}` turns algebra elements
/// into honest matrices with `* = conjugate transpose`.
#[derive(Debug, Clone)]
pub struct GnsRep {
    gamma_half: CMatrix,
    gamma_inv_half: CMatrix,
}

impl GnsRep {
    pub fn new(alg: &StarAlgebra, tol: &ToleranceConfig) -> Result<Self, AlgebraError> {
        let gram = alg.gns_gram();
        let herm_defect = gram.distance(&gram.adjoint());
        if herm_defect > tol.eq_tol.max(1e-10) {
            return Err(AlgebraError::NotCStar(format!(
                "GNS gram not Hermitian (defect {herm_defect:.3e})"
            )));
        }
        let e = eigh(&gram)?;
        let max = e.values.last().copied().unwrap_or(0.0);
        let min = e.values.first().copied().unwrap_or(0.0);
        if max <= 0.0 || min <= tol.rank_tol * max {
            return Err(AlgebraError::NotCStar(format!(
                "gram eigenvalues in [{min:.3e}, {max:.3e}]"
            )));
        }
        let n = alg.dim();
        let mut d_half = CMatrix::zeros(n, n);
        let mut d_inv_half = CMatrix::zeros(n, n);
        for (i, &v) in e.values.iter().enumerate() {
            d_half[(i, i)] = Complex64::new(v.sqrt(), 0.0);
            d_inv_half[(i, i)] = Complex64::new(1.0 / v.sqrt(), 0.0);
        }
        let q = &e.vectors;
        let qh = q.adjoint();
        Ok(Self {
            gamma_half: q.mul(&d_half).mul(&qh),
            gamma_inv_half: q.mul(&d_inv_half).mul(&qh),
        })
    }

    pub fn represent(&self, alg: &StarAlgebra, x: &CMatrix) -> CMatrix {
        self.gamma_half.mul(&alg.left_mult(x)).mul(&self.gamma_inv_half)
    }

    /// Inverse of [`GnsRep::represent`] on its image: recovers the algebra
    /// element from its GNS matrix by applying the untwisted operator to 1.
    pub fn abstract_elem(&self, alg: &StarAlgebra, m: &CMatrix) -> CMatrix {
        self.gamma_inv_half.mul(m).mul(&self.gamma_half).mul(alg.unit())
    }
}

/// A linear map between algebras, expected to be a unital *-homomorphism.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    pub source: Arc<StarAlgebra>,
    pub target: Arc<StarAlgebra>,
    pub map: CMatrix,
}

/// Violations of the unital *-homomorphism axioms.
#[derive(Debug, Clone)]
pub struct MorphismReport {
    pub unital: f64,
    pub multiplicative: f64,
    pub star: f64,
}

impl MorphismReport {
    pub fn max_violation(&self) -> f64 {
        self.unital.max(self.multiplicative).max(self.star)
    }

    pub fn pass(&self, tol: &ToleranceConfig) -> bool {
        self.max_violation() <= tol.eq_tol
    }
}

impl AlgebraMorphism {
    pub fn new(
        source: Arc<StarAlgebra>,
        target: Arc<StarAlgebra>,
        map: CMatrix,
    ) -> Result<Self, AlgebraError> {
        if map.rows() != target.dim() || map.cols() != source.dim() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "map must be {}x{}, got {}x{}",
                target.dim(),
                source.dim(),
                map.rows(),
                map.cols()
            )));
        }
        map.check_finite()?;
        Ok(Self { source, target, map })
    }

    pub fn identity(alg: &Arc<StarAlgebra>) -> Self {
        Self {
            source: Arc::clone(alg),
            target: Arc::clone(alg),
            map: CMatrix::identity(alg.dim()),
        }
    }

    pub fn verify(&self, _tol: &ToleranceConfig) -> MorphismReport {
        let n = self.source.dim();
        let unital = self.map.mul(self.source.unit()).distance(self.target.unit());

        let mut multiplicative: f64 = 0.0;
        for i in 0..n {
            let fi = self.map.col(i);
            for j in 0..n {
                let fj = self.map.col(j);
                let src = self.source.mul_elems(&CMatrix::basis_vec(n, i), &CMatrix::basis_vec(n, j));
                let lhs = self.map.mul(&src);
                let rhs = self.target.mul_elems(&fi, &fj);
                multiplicative = multiplicative.max(lhs.distance(&rhs));
            }
        }

        // f(x*) = f(x)*  <=>  f . K_src = K_tgt . conj(f)
        let lhs = self.map.mul(self.source.star_matrix());
        let rhs = self.target.star_matrix().mul(&self.map.conj());
        let star = lhs.distance(&rhs);

        MorphismReport { unital, multiplicative, star }
    }

    pub fn compose(outer: &AlgebraMorphism, inner: &AlgebraMorphism) -> Result<AlgebraMorphism, AlgebraError> {
        if inner.target.dim() != outer.source.dim() {
            return Err(AlgebraError::ShapeMismatch("composition dimension mismatch".into()));
        }
        AlgebraMorphism::new(
            Arc::clone(&inner.source),
            Arc::clone(&outer.target),
            outer.map.mul(&inner.map),
        )
    }

    pub fn is_surjective(&self, tol: &ToleranceConfig) -> Result<bool, AlgebraError> {
        Ok(numkit::rank(&self.map, tol)? == self.target.dim())
    }

    /// Kernel as a verified two-sided *-ideal.
    pub fn kernel(&self, tol: &ToleranceConfig) -> Result<Ideal, AlgebraError> {
        let space = numkit::kernel(&self.map, tol)?;
        let ideal = Ideal { parent: Arc::clone(&self.source), space };
        let report = ideal.verify(tol);
        if !report.pass(tol) {
            return Err(AlgebraError::IdealClosureViolation { violation: report.max_violation() });
        }
        Ok(ideal)
    }
}

/// A subspace of an algebra claimed to be a two-sided *-ideal.
#[derive(Debug, Clone)]
pub struct Ideal {
    pub parent: Arc<StarAlgebra>,
    pub space: Subspace,
}

#[derive(Debug, Clone)]
pub struct IdealReport {
    pub left_closure: f64,
    pub right_closure: f64,
    pub star_closure: f64,
}

impl IdealReport {
    pub fn max_violation(&self) -> f64 {
        self.left_closure.max(self.right_closure).max(self.star_closure)
    }

    pub fn pass(&self, tol: &ToleranceConfig) -> bool {
        // Closure residuals accumulate a few ulps over products; the rank
        // tolerance is the right scale for membership decisions.
        self.max_violation() <= tol.eq_tol.max(1e-12) * 10.0
    }
}

impl Ideal {
    pub fn new(parent: Arc<StarAlgebra>, space: Subspace) -> Result<Self, AlgebraError> {
        if space.ambient_dim() != parent.dim() {
            return Err(AlgebraError::ShapeMismatch("ideal ambient dimension mismatch".into()));
        }
        Ok(Self { parent, space })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Max residual of `b_i * I`, `I * b_i`, and `I*` against `I`.
    pub fn verify(&self, _tol: &ToleranceConfig) -> IdealReport {
        let n = self.parent.dim();
        let v = self.space.basis();
        if self.space.dim() == 0 {
            return IdealReport { left_closure: 0.0, right_closure: 0.0, star_closure: 0.0 };
        }
        let mut left: f64 = 0.0;
        let mut right: f64 = 0.0;
        for i in 0..n {
            let ei = CMatrix::basis_vec(n, i);
            let li = self.parent.left_mult(&ei);
            let ri = self.parent.right_mult(&ei);
            left = left.max(self.space.residual(&li.mul(v)));
            right = right.max(self.space.residual(&ri.mul(v)));
        }
        let star_cols = self.parent.star_matrix().mul(&v.conj());
        let star = self.space.residual(&star_cols);
        IdealReport { left_closure: left, right_closure: right, star_closure: star }
    }
}

/// Quotient algebra together with the projection morphism and a linear
/// section (right inverse of the projection, not multiplicative).
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub quotient: Arc<StarAlgebra>,
    pub projection: AlgebraMorphism,
    pub section: CMatrix,
}

/// Quotient of `parent` by a two-sided *-ideal.
///
/// The quotient is coordinatized on the orthogonal complement of the ideal,
/// so the section is the isometric inclusion of that complement and
/// `p . section = id` holds exactly.
pub fn quotient_algebra(
    parent: &Arc<StarAlgebra>,
    ideal: &Ideal,
    tol: &ToleranceConfig,
) -> Result<QuotientData, AlgebraError> {
    let closure = ideal.verify(tol);
    if !closure.pass(tol) {
        return Err(AlgebraError::NotAnIdeal { violation: closure.max_violation() });
    }
    let n = parent.dim();
    let w = ideal.space.complement(tol)?;
    let q = w.dim();
    let wb = w.basis();
    let wh = wb.adjoint();

    let mut mult = CMatrix::zeros(q, q * q);
    for i in 0..q {
        let wi = wb.col(i);
        for j in 0..q {
            let wj = wb.col(j);
            let prod = wh.mul(&parent.mul_elems(&wi, &wj));
            for k in 0..q {
                mult[(k, i * q + j)] = prod[(k, 0)];
            }
        }
    }
    let unit = wh.mul(parent.unit());
    let star = wh.mul(&parent.star_matrix().mul(&wb.conj()));
    let quotient = Arc::new(StarAlgebra::new(q, mult, unit, star, None)?);

    let algebra_report = quotient.verify(tol);
    if !algebra_report.pass(tol) {
        return Err(AlgebraError::AxiomViolation {
            axiom: "quotient algebra axioms".into(),
            violation: algebra_report.max_violation(),
        });
    }

    let projection = AlgebraMorphism::new(Arc::clone(parent), Arc::clone(&quotient), wh)?;
    let proj_report = projection.verify(tol);
    if !proj_report.pass(tol) {
        return Err(AlgebraError::AxiomViolation {
            axiom: "quotient projection morphism".into(),
            violation: proj_report.max_violation(),
        });
    }
    debug_assert_eq!(q, n - ideal.dim());
    Ok(QuotientData { quotient, projection, section: wb.clone() })
}
