//! Hopf *-algebra layer: comultiplication, counit, antipode, axiom checks,
//! and the Haar state.
//!
//! A finite quantum group is a finite-dimensional Hopf *-algebra whose
//! carrier is a C*-algebra. At finite dimension the counit exists, so the
//! comultiplication is automatically injective; the crate verifies this as
//! a theorem rather than assuming it.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraMorphism, MorphismReport, StarAlgebra, StarAlgebraReport};
use crate::numkit::{self, eigh, CMatrix, NumError, ToleranceConfig};

#[derive(Debug, Error)]
pub enum QGroupError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("Hopf data shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no Haar state: the bi-invariance system has no solution")]
    NoHaar,
    #[error("bi-invariance system has a {0}-dimensional solution space; input is not a finite quantum group")]
    NonUniqueHaar(usize),
    #[error("Hopf axioms fail (max violation {violation:.3e})")]
    HopfAxioms { violation: f64 },
}

/// A finite quantum group `(A, Delta)` with counit and antipode.
///
/// `comult` is `n^2 x n`, `counit` is `1 x n`, `antipode` is `n x n`, all
/// acting on coordinates with the crate's tensor flat-index convention.
#[derive(Debug, Clone)]
pub struct FiniteQuantumGroup {
    carrier: Arc<StarAlgebra>,
    comult: CMatrix,
    counit: CMatrix,
    antipode: CMatrix,
}

/// Per-axiom max violations from [`FiniteQuantumGroup::verify`].
///
/// The Kac defect (`S^2 - id`) is reported separately and does not affect
/// `pass`: non-Kac inputs are legal, they just lose the unitarity claims.
#[derive(Debug, Clone)]
pub struct HopfReport {
    pub carrier: StarAlgebraReport,
    pub comult_morphism: MorphismReport,
    pub coassociativity: f64,
    pub counit_left: f64,
    pub counit_right: f64,
    pub counit_multiplicative: f64,
    pub antipode_left: f64,
    pub antipode_right: f64,
    pub kac_defect: f64,
}

impl HopfReport {
    pub fn max_violation(&self) -> f64 {
        self.carrier
            .max_violation()
            .max(self.comult_morphism.max_violation())
            .max(self.coassociativity)
            .max(self.counit_left)
            .max(self.counit_right)
            .max(self.counit_multiplicative)
            .max(self.antipode_left)
            .max(self.antipode_right)
    }

    pub fn pass(&self, tol: &ToleranceConfig) -> bool {
        self.max_violation() <= tol.eq_tol
    }

    pub fn is_kac(&self, tol: &ToleranceConfig) -> bool {
        self.kac_defect <= tol.eq_tol
    }
}

impl FiniteQuantumGroup {
    pub fn new(
        carrier: Arc<StarAlgebra>,
        comult: CMatrix,
        counit: CMatrix,
        antipode: CMatrix,
    ) -> Result<Self, QGroupError> {
        let n = carrier.dim();
        if comult.rows() != n * n || comult.cols() != n {
            return Err(QGroupError::ShapeMismatch(format!(
                "comult must be {}x{n}, got {}x{}",
                n * n,
                comult.rows(),
                comult.cols()
            )));
        }
        if counit.rows() != 1 || counit.cols() != n {
            return Err(QGroupError::ShapeMismatch("counit must be 1 x n".into()));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(QGroupError::ShapeMismatch("antipode must be n x n".into()));
        }
        comult.check_finite().map_err(QGroupError::Num)?;
        counit.check_finite().map_err(QGroupError::Num)?;
        antipode.check_finite().map_err(QGroupError::Num)?;
        Ok(Self { carrier, comult, counit, antipode })
    }

    pub fn carrier(&self) -> &Arc<StarAlgebra> {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn comult(&self) -> &CMatrix {
        &self.comult
    }

    pub fn counit(&self) -> &CMatrix {
        &self.counit
    }

    pub fn antipode(&self) -> &CMatrix {
        &self.antipode
    }

    /// The tensor-square algebra `A (x) A`.
    pub fn tensor_square(&self) -> Result<StarAlgebra, QGroupError> {
        Ok(StarAlgebra::tensor(&self.carrier, &self.carrier)?)
    }

    /// Full Hopf *-algebra axiom check.
    pub fn verify(&self, tol: &ToleranceConfig) -> Result<HopfReport, QGroupError> {
        let n = self.dim();
        let carrier_report = self.carrier.verify(tol);

        // Delta is a unital *-morphism A -> A (x) A; checked columnwise so
        // the n^2 x n^4 tensor multiplication map never materializes.
        let a = self.carrier.as_ref();
        let unital = {
            let u2 = self.carrier.unit().kron(self.carrier.unit())?;
            self.comult.mul(self.carrier.unit()).distance(&u2)
        };
        let mut multiplicative: f64 = 0.0;
        for i in 0..n {
            let di = self.comult.col(i);
            for j in 0..n {
                let dj = self.comult.col(j);
                let prod_src = self
                    .carrier
                    .mul_elems(&CMatrix::basis_vec(n, i), &CMatrix::basis_vec(n, j));
                let lhs = self.comult.mul(&prod_src);
                let rhs = StarAlgebra::tensor_mul_vec(a, a, &di, &dj);
                multiplicative = multiplicative.max(lhs.distance(&rhs));
            }
        }
        let star = {
            let k = self.carrier.star_matrix();
            let k2 = k.kron(k)?;
            self.comult.mul(k).distance(&k2.mul(&self.comult.conj()))
        };
        let comult_morphism = MorphismReport { unital, multiplicative, star };

        let id = CMatrix::identity(n);
        // (Delta (x) id) Delta = (id (x) Delta) Delta
        let lhs = self.comult.kron(&id)?.mul(&self.comult);
        let rhs = id.kron(&self.comult)?.mul(&self.comult);
        let coassociativity = lhs.distance(&rhs);

        // (eps (x) id) Delta = id = (id (x) eps) Delta
        let counit_left = self.counit.kron(&id)?.mul(&self.comult).distance(&id);
        let counit_right = id.kron(&self.counit)?.mul(&self.comult).distance(&id);

        // eps is an algebra morphism: eps(ab) = eps(a)eps(b), eps(1) = 1
        let mut counit_multiplicative =
            (self.counit.mul(self.carrier.unit())[(0, 0)] - Complex64::ONE).norm();
        let eps_mult = self.counit.mul(self.carrier.mult_map());
        let eps_kron = self.counit.kron(&self.counit)?;
        counit_multiplicative = counit_multiplicative.max(eps_mult.distance(&eps_kron));

        // m (S (x) id) Delta = unit . eps = m (id (x) S) Delta
        let unit_eps = self.carrier.unit().mul(&self.counit);
        let m = self.carrier.mult_map();
        let antipode_left = m.mul(&self.antipode.kron(&id)?).mul(&self.comult).distance(&unit_eps);
        let antipode_right = m.mul(&id.kron(&self.antipode)?).mul(&self.comult).distance(&unit_eps);

        let kac_defect = self.antipode.mul(&self.antipode).distance(&id);

        Ok(HopfReport {
            carrier: carrier_report,
            comult_morphism,
            coassociativity,
            counit_left,
            counit_right,
            counit_multiplicative,
            antipode_left,
            antipode_right,
            kac_defect,
        })
    }

    pub fn is_kac(&self, tol: &ToleranceConfig) -> bool {
        self.antipode.mul(&self.antipode).distance(&CMatrix::identity(self.dim())) <= tol.eq_tol
    }

    /// Whether the comultiplication is cocommutative (`sigma . Delta = Delta`).
    pub fn is_cocommutative(&self, tol: &ToleranceConfig) -> bool {
        let n = self.dim();
        let mut swapped = CMatrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    swapped[(i * n + j, k)] = self.comult[(j * n + i, k)];
                }
            }
        }
        swapped.distance(&self.comult) <= tol.eq_tol
    }

    pub fn is_commutative(&self, tol: &ToleranceConfig) -> bool {
        let n = self.dim();
        let m = self.carrier.mult_map();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut d: f64 = 0.0;
                for k in 0..n {
                    d = d.max((m[(k, i * n + j)] - m[(k, j * n + i)]).norm());
                }
                worst = worst.max(d);
            }
        }
        worst <= tol.eq_tol
    }
}

/// The Haar state, solved from the bi-invariance equations.
#[derive(Debug, Clone)]
pub struct HaarState {
    h: CMatrix,
    /// Gram matrix `h(b_i* b_j)` is positive semidefinite.
    pub positive: bool,
    /// Gram matrix positive definite (faithfulness); true for every finite
    /// quantum group, recorded rather than assumed.
    pub faithful: bool,
    /// Residual of the two invariance equations at the returned solution.
    pub invariance_residual: f64,
}

impl HaarState {
    /// The state as a `1 x n` functional row.
    pub fn functional(&self) -> &CMatrix {
        &self.h
    }

    pub fn apply(&self, x: &CMatrix) -> Complex64 {
        self.h.mul(x)[(0, 0)]
    }
}

/// Solves `{(id (x) h) Delta = h(.)1, (h (x) id) Delta = h(.)1, h(1) = 1}`.
///
/// Uniqueness is checked by requiring the homogeneous part to have a
/// one-dimensional solution space.
pub fn haar_state(g: &FiniteQuantumGroup, tol: &ToleranceConfig) -> Result<HaarState, QGroupError> {
    let n = g.dim();
    let id = CMatrix::identity(n);
    let unit = g.carrier().unit();

    // Column k of the system matrix: both invariance defects at h = e_k^T.
    let mut system = CMatrix::zeros(2 * n * n, n);
    for k in 0..n {
        let ek = CMatrix::basis_vec(n, k).transpose();
        let right_slice = id.kron(&ek)?.mul(g.comult()).sub(&unit.mul(&ek));
        let left_slice = ek.kron(&id)?.mul(g.comult()).sub(&unit.mul(&ek));
        for i in 0..n {
            for j in 0..n {
                system[(i * n + j, k)] = right_slice[(i, j)];
                system[(n * n + i * n + j, k)] = left_slice[(i, j)];
            }
        }
    }

    let null = numkit::kernel(&system, tol)?;
    match null.dim() {
        0 => return Err(QGroupError::NoHaar),
        1 => {}
        d => return Err(QGroupError::NonUniqueHaar(d)),
    }
    let h0 = null.basis().col(0).transpose();
    let normalization = h0.mul(unit)[(0, 0)];
    if normalization.norm() < tol.eq_tol {
        return Err(QGroupError::NoHaar);
    }
    let h = h0.scale(Complex64::ONE / normalization);

    let invariance_residual = {
        let rhs = unit.mul(&h);
        let r1 = id.kron(&h)?.mul(g.comult()).distance(&rhs);
        let r2 = h.kron(&id)?.mul(g.comult()).distance(&rhs);
        r1.max(r2)
    };

    // Positivity diagnostics on the Gram matrix h(b_i* b_j).
    let mut gram = CMatrix::zeros(n, n);
    for i in 0..n {
        let bi_star = g.carrier().star_elem(&CMatrix::basis_vec(n, i));
        for j in 0..n {
            let prod = g.carrier().mul_elems(&bi_star, &CMatrix::basis_vec(n, j));
            gram[(i, j)] = h.mul(&prod)[(0, 0)];
        }
    }
    let e = eigh(&gram)?;
    let max_eig = e.values.last().copied().unwrap_or(0.0);
    let min_eig = e.values.first().copied().unwrap_or(0.0);
    let positive = min_eig >= -tol.eq_tol * max_eig.max(1.0);
    let faithful = max_eig > 0.0 && min_eig > tol.rank_tol * max_eig;

    Ok(HaarState { h, positive, faithful, invariance_residual })
}

/// Result of checking that `pi: A -> A2` presents `G2` as a quantum-group
/// quotient of `G` (quantum subgroup condition).
#[derive(Debug, Clone)]
pub struct QuotientCheckReport {
    pub morphism: MorphismReport,
    pub surjective: bool,
    /// Residual of `Delta_2 . pi = (pi (x) pi) . Delta`.
    pub intertwining: f64,
}

impl QuotientCheckReport {
    pub fn pass(&self, tol: &ToleranceConfig) -> bool {
        self.morphism.pass(tol) && self.surjective && self.intertwining <= tol.eq_tol
    }
}

/// Verifies surjectivity of `pi` and the comultiplication intertwining
/// `Delta_2 . pi = (pi (x) pi) . Delta`.
pub fn hopf_quotient_check(
    pi: &AlgebraMorphism,
    g: &FiniteQuantumGroup,
    g2: &FiniteQuantumGroup,
    tol: &ToleranceConfig,
) -> Result<QuotientCheckReport, QGroupError> {
    if pi.source.dim() != g.dim() || pi.target.dim() != g2.dim() {
        return Err(QGroupError::ShapeMismatch(
            "quotient morphism endpoints do not match the quantum groups".into(),
        ));
    }
    let morphism = pi.verify(tol);
    let surjective = pi.is_surjective(tol)?;
    let lhs = g2.comult().mul(&pi.map);
    let rhs = pi.map.kron(&pi.map)?.mul(g.comult());
    let intertwining = lhs.distance(&rhs);
    Ok(QuotientCheckReport { morphism, surjective, intertwining })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn z2_function_algebra_is_a_kac_quantum_group() {
        let g = instances::function_algebra(&instances::FiniteGroupPresentation::cyclic(2)).unwrap();
        let report = g.verify(&tol()).unwrap();
        assert!(report.pass(&tol()), "{report:?}");
        assert!(report.is_kac(&tol()));
    }

    #[test]
    fn group_algebra_s3_passes_axioms() {
        let g = instances::group_algebra(&instances::FiniteGroupPresentation::symmetric(3)).unwrap();
        let report = g.verify(&tol()).unwrap();
        assert!(report.pass(&tol()), "{report:?}");
        assert!(report.is_kac(&tol()));
        assert!(g.is_cocommutative(&tol()));
        assert!(!g.is_commutative(&tol()));
    }

    #[test]
    fn broken_antipode_reports_violation_of_order_one() {
        // C(Z2) with the antipode replaced by a sign flip on coordinates:
        // S(delta_e) = -delta_e breaks m(S (x) id)Delta by about 1.
        let g = instances::function_algebra(&instances::FiniteGroupPresentation::cyclic(2)).unwrap();
        let mut bad_s = CMatrix::identity(2);
        bad_s[(0, 0)] = Complex64::new(-1.0, 0.0);
        let broken = FiniteQuantumGroup::new(
            Arc::clone(g.carrier()),
            g.comult().clone(),
            g.counit().clone(),
            bad_s,
        )
        .unwrap();
        let report = broken.verify(&tol()).unwrap();
        assert!(!report.pass(&tol()));
        assert!(report.antipode_left > 0.5, "{}", report.antipode_left);
    }

    #[test]
    fn haar_on_function_algebra_is_uniform() {
        let g = instances::function_algebra(&instances::FiniteGroupPresentation::cyclic(2)).unwrap();
        let h = haar_state(&g, &tol()).unwrap();
        for k in 0..2 {
            let v = h.apply(&CMatrix::basis_vec(2, k));
            assert!((v - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        }
        assert!(h.positive && h.faithful);
        assert!(h.invariance_residual < 1e-12);

        let s3 = instances::function_algebra(&instances::FiniteGroupPresentation::symmetric(3)).unwrap();
        let h = haar_state(&s3, &tol()).unwrap();
        for k in 0..6 {
            let v = h.apply(&CMatrix::basis_vec(6, k));
            assert!((v - Complex64::new(1.0 / 6.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn haar_on_group_algebra_is_evaluation_at_identity() {
        let gp = instances::FiniteGroupPresentation::symmetric(3);
        let e = gp.identity();
        let g = instances::group_algebra(&gp).unwrap();
        let h = haar_state(&g, &tol()).unwrap();
        for k in 0..6 {
            let v = h.apply(&CMatrix::basis_vec(6, k));
            let expected = if k == e { Complex64::ONE } else { Complex64::ZERO };
            assert!((v - expected).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn haar_composed_with_antipode_is_haar() {
        for g in [
            instances::function_algebra(&instances::FiniteGroupPresentation::symmetric(3)).unwrap(),
            instances::group_algebra(&instances::FiniteGroupPresentation::dihedral(4)).unwrap(),
            instances::kac_paljutkin().unwrap(),
        ] {
            let h = haar_state(&g, &tol()).unwrap();
            let hs = h.functional().mul(g.antipode());
            assert!(hs.approx_eq(h.functional(), 1e-10));
        }
    }

    #[test]
    fn comult_kernel_is_zero_on_builtins_and_their_duals() {
        // the counit law forces injectivity of Delta at finite dimension
        for g in [
            instances::function_algebra(&instances::FiniteGroupPresentation::cyclic(2)).unwrap(),
            instances::group_algebra(&instances::FiniteGroupPresentation::symmetric(3)).unwrap(),
            instances::kac_paljutkin().unwrap(),
        ] {
            let k = numkit::kernel(g.comult(), &tol()).unwrap();
            assert_eq!(k.dim(), 0);
            let dual = crate::peterweyl::dual_quantum_group(&g, &tol()).unwrap();
            let k = numkit::kernel(dual.comult(), &tol()).unwrap();
            assert_eq!(k.dim(), 0);
        }
    }

    #[test]
    fn quotient_check_identity_passes() {
        let g = instances::function_algebra(&instances::FiniteGroupPresentation::symmetric(3)).unwrap();
        let id = AlgebraMorphism::identity(g.carrier());
        let rep = hopf_quotient_check(&id, &g, &g, &tol()).unwrap();
        assert!(rep.pass(&tol()));
    }

    #[test]
    fn quotient_check_s3_to_z2_subgroup_restriction() {
        // restriction of functions along {e, (12)} <= S3
        let (g, g2, pi) = instances::s3_to_z2_function_quotient().unwrap();
        let rep = hopf_quotient_check(&pi, &g, &g2, &tol()).unwrap();
        assert!(rep.pass(&tol()), "{rep:?}");
    }

    #[test]
    fn quotient_check_rejects_non_multiplicative_map() {
        let g = instances::function_algebra(&instances::FiniteGroupPresentation::cyclic(2)).unwrap();
        // linear, surjective, but not an algebra map
        let m = CMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let pi = AlgebraMorphism::new(Arc::clone(g.carrier()), Arc::clone(g.carrier()), m).unwrap();
        let rep = hopf_quotient_check(&pi, &g, &g, &tol()).unwrap();
        assert!(rep.surjective);
        assert!(!rep.pass(&tol()));
    }
}
