//! Coactions `delta: B -> B (x) A`, their property flags, the spectral
//! projections `E^a`, isotypical components `W_a`, the Podles core, kernels,
//! and the core/kernel decomposition.
//!
//! Density is read at finite dimension as a rank equality: the span of
//! `{delta(b)(1 (x) a)}` must be all of `B (x) A`. Coassociative maps that
//! fail density ("weak coactions") are first-class here; they are the only
//! finite-dimensional carriers of nonzero kernels.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, Ideal, StarAlgebra};
use crate::numkit::{self, CMatrix, NumError, Subspace, ToleranceConfig};
use crate::peterweyl::{PeterWeylData, PeterWeylError};
use crate::qgroup::{FiniteQuantumGroup, HaarState, QGroupError};

#[derive(Debug, Error)]
pub enum CoactionError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    QGroup(#[from] QGroupError),
    #[error(transparent)]
    PeterWeyl(#[from] PeterWeylError),
    #[error("delta is not a unital *-morphism into B (x) A (violation {violation:.3e})")]
    NotAMorphism { violation: f64 },
    #[error("operation requires a coassociative coaction (violation {violation:.3e})")]
    NotCoassociative { violation: f64 },
    #[error("Podles core failed a closure check: {0}")]
    CoreClosureFailure(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Checked status of one coaction property.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlagState {
    Unchecked,
    Pass { residual: f64 },
    Fail { violation: f64 },
}

impl FlagState {
    pub fn is_pass(&self) -> bool {
        matches!(self, FlagState::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, FlagState::Fail { .. })
    }
}

/// The classified properties of a coaction, each tri-state.
#[derive(Debug, Clone, Copy)]
pub struct ActionFlags {
    pub star_hom: FlagState,
    pub unital: FlagState,
    pub coassociative: FlagState,
    pub podles_dense: FlagState,
    pub counital: FlagState,
    pub injective: FlagState,
}

impl ActionFlags {
    fn unchecked() -> Self {
        Self {
            star_hom: FlagState::Unchecked,
            unital: FlagState::Unchecked,
            coassociative: FlagState::Unchecked,
            podles_dense: FlagState::Unchecked,
            counital: FlagState::Unchecked,
            injective: FlagState::Unchecked,
        }
    }

    /// All of the action axioms (morphism + coassociativity + density).
    pub fn is_action(&self) -> bool {
        self.star_hom.is_pass()
            && self.unital.is_pass()
            && self.coassociative.is_pass()
            && self.podles_dense.is_pass()
    }
}

/// A linear map `delta: B -> B (x) A` verified to be a unital *-morphism.
#[derive(Debug, Clone)]
pub struct Coaction {
    b: Arc<StarAlgebra>,
    g: Arc<FiniteQuantumGroup>,
    delta: CMatrix,
    flags: ActionFlags,
}

impl Coaction {
    /// Validates shapes and the unital *-morphism property; the remaining
    /// flags stay unchecked until [`check_action_axioms`].
    pub fn new(
        b: Arc<StarAlgebra>,
        g: Arc<FiniteQuantumGroup>,
        delta: CMatrix,
        tol: &ToleranceConfig,
    ) -> Result<Self, CoactionError> {
        let (nb, na) = (b.dim(), g.dim());
        if delta.rows() != nb * na || delta.cols() != nb {
            return Err(CoactionError::ShapeMismatch(format!(
                "delta must be {}x{nb}, got {}x{}",
                nb * na,
                delta.rows(),
                delta.cols()
            )));
        }
        delta.check_finite().map_err(CoactionError::Num)?;

        let a = g.carrier().as_ref();
        let unital_residual = {
            let u2 = b.unit().kron(g.carrier().unit())?;
            delta.mul(b.unit()).distance(&u2)
        };
        let mut mult_residual: f64 = 0.0;
        for i in 0..nb {
            let di = delta.col(i);
            for j in 0..nb {
                let dj = delta.col(j);
                let prod = b.mul_elems(&CMatrix::basis_vec(nb, i), &CMatrix::basis_vec(nb, j));
                let lhs = delta.mul(&prod);
                let rhs = StarAlgebra::tensor_mul_vec(b.as_ref(), a, &di, &dj);
                mult_residual = mult_residual.max(lhs.distance(&rhs));
            }
        }
        let star_residual = {
            let k2 = b.star_matrix().kron(a.star_matrix())?;
            delta.mul(b.star_matrix()).distance(&k2.mul(&delta.conj()))
        };
        let violation = unital_residual.max(mult_residual).max(star_residual);
        if violation > tol.eq_tol {
            return Err(CoactionError::NotAMorphism { violation });
        }
        let mut flags = ActionFlags::unchecked();
        flags.unital = FlagState::Pass { residual: unital_residual };
        flags.star_hom = FlagState::Pass { residual: mult_residual.max(star_residual) };
        Ok(Self { b, g, delta, flags })
    }

    pub fn algebra(&self) -> &Arc<StarAlgebra> {
        &self.b
    }

    pub fn group(&self) -> &Arc<FiniteQuantumGroup> {
        &self.g
    }

    pub fn delta(&self) -> &CMatrix {
        &self.delta
    }

    pub fn flags(&self) -> &ActionFlags {
        &self.flags
    }

    /// Residual of `(delta (x) id) delta = (id (x) Delta) delta`.
    pub fn coassociativity_residual(&self) -> Result<f64, CoactionError> {
        let na = self.g.dim();
        let nb = self.b.dim();
        let lhs = self.delta.kron(&CMatrix::identity(na))?.mul(&self.delta);
        let rhs = CMatrix::identity(nb).kron(self.g.comult())?.mul(&self.delta);
        Ok(lhs.distance(&rhs))
    }

    fn require_coassociative(&self, tol: &ToleranceConfig) -> Result<(), CoactionError> {
        let r = self.coassociativity_residual()?;
        if r > tol.eq_tol {
            return Err(CoactionError::NotCoassociative { violation: r });
        }
        Ok(())
    }

    /// The element `delta(b) . (1 (x) a)` of `B (x) A`.
    fn translate(&self, b_index: usize, a_vec: &CMatrix) -> CMatrix {
        let one_a = self.b.unit().kron(a_vec).expect("small kron");
        StarAlgebra::tensor_mul_vec(
            self.b.as_ref(),
            self.g.carrier().as_ref(),
            &self.delta.col(b_index),
            &one_a,
        )
    }
}

/// Fills all six flags of the coaction and returns the updated value.
///
/// Density is the rank of `span{delta(b)(1 (x) a)}` over all basis pairs;
/// pass iff the rank equals `dim B * dim A`.
pub fn check_action_axioms(c: &Coaction, tol: &ToleranceConfig) -> Result<Coaction, CoactionError> {
    let nb = c.b.dim();
    let na = c.g.dim();
    let mut out = c.clone();

    let coassoc = c.coassociativity_residual()?;
    out.flags.coassociative = if coassoc <= tol.eq_tol {
        FlagState::Pass { residual: coassoc }
    } else {
        FlagState::Fail { violation: coassoc }
    };

    let mut density = CMatrix::zeros(nb * na, nb * na);
    for i in 0..nb {
        for j in 0..na {
            let v = c.translate(i, &CMatrix::basis_vec(na, j));
            density.set_col(i * na + j, &v);
        }
    }
    let rank = numkit::rank(&density, tol)?;
    out.flags.podles_dense = if rank == nb * na {
        FlagState::Pass { residual: 0.0 }
    } else {
        FlagState::Fail { violation: (nb * na - rank) as f64 }
    };

    let counital = CMatrix::identity(nb)
        .kron(c.g.counit())?
        .mul(&c.delta)
        .distance(&CMatrix::identity(nb));
    out.flags.counital = if counital <= tol.eq_tol {
        FlagState::Pass { residual: counital }
    } else {
        FlagState::Fail { violation: counital }
    };

    let kernel_dim = numkit::kernel(&c.delta, tol)?.dim();
    out.flags.injective = if kernel_dim == 0 {
        FlagState::Pass { residual: 0.0 }
    } else {
        FlagState::Fail { violation: kernel_dim as f64 }
    };

    Ok(out)
}

/// The spectral projection `E^a = sum_r (id (x) phi^a_rr) . delta`
/// as a `dim B x dim B` matrix.
pub fn spectral_projection(c: &Coaction, pw: &PeterWeylData, alpha: usize) -> CMatrix {
    let nb = c.b.dim();
    let block = &pw.blocks[alpha];
    let mut e = CMatrix::zeros(nb, nb);
    let id_b = CMatrix::identity(nb);
    for r in 0..block.n_alpha {
        let phi = block.functional_row(r, r);
        let slice = id_b.kron(&phi).expect("small kron").mul(&c.delta);
        e = e.add(&slice);
    }
    e
}

/// Checks recorded while assembling the isotypical decomposition.
#[derive(Debug, Clone)]
pub struct PodlesReport {
    /// Max violation of `E^a E^b = delta_ab E^a`.
    pub projector_family_residual: f64,
    /// Sum of the `W_a` dimensions equals the dimension of their span.
    pub direct_sum_ok: bool,
    pub core_contains_unit_residual: f64,
    pub core_product_residual: f64,
    pub core_star_residual: f64,
    /// Residual of `delta(core) c core (x) A`.
    pub core_equivariance_residual: f64,
    pub kernel_core_intersection_dim: usize,
    /// `Some(true)` when density was checked and the core is all of `B`.
    pub core_is_full: Option<bool>,
}

/// Isotypical components, core, kernel, and the `E^a` family of a
/// coassociative coaction.
#[derive(Debug, Clone)]
pub struct IsotypicalDecomposition {
    /// `(alpha, W_alpha)` in Peter-Weyl block order.
    pub components: Vec<(usize, Subspace)>,
    pub core: Subspace,
    pub kernel: Ideal,
    pub projections: Vec<(usize, CMatrix)>,
    pub report: PodlesReport,
}

impl IsotypicalDecomposition {
    pub fn component_dims(&self) -> Vec<usize> {
        self.components.iter().map(|(_, w)| w.dim()).collect()
    }
}

/// Podles construction: `W_a = range(E^a)`, core = the (verified direct)
/// sum, kernel = ker delta as a *-ideal, plus the subalgebra and
/// equivariance checks on the core.
pub fn podles_core(
    c: &Coaction,
    pw: &PeterWeylData,
    tol: &ToleranceConfig,
) -> Result<IsotypicalDecomposition, CoactionError> {
    c.require_coassociative(tol)?;
    let nb = c.b.dim();
    let na = c.g.dim();

    let mut projections = Vec::new();
    let mut components = Vec::new();
    let mut family_residual: f64 = 0.0;
    for alpha in 0..pw.blocks.len() {
        let e = spectral_projection(c, pw, alpha);
        let w = numkit::range(&e, tol)?;
        projections.push((alpha, e));
        components.push((alpha, w));
    }
    for (a, ea) in &projections {
        for (b, eb) in &projections {
            let prod = ea.mul(eb);
            let expected = if a == b { ea.clone() } else { CMatrix::zeros(nb, nb) };
            family_residual = family_residual.max(prod.distance(&expected));
        }
    }

    let mut core = Subspace::zero(nb);
    for (_, w) in &components {
        let (sum, _) = numkit::subspace_sum_and_intersection(&core, w, tol)?;
        core = sum;
    }
    let dim_sum: usize = components.iter().map(|(_, w)| w.dim()).sum();
    let direct_sum_ok = dim_sum == core.dim();
    if !direct_sum_ok {
        return Err(CoactionError::CoreClosureFailure(format!(
            "isotypical components overlap: sum of dims {dim_sum} vs span {}",
            core.dim()
        )));
    }

    // Core is a unital *-subalgebra.
    let unit_residual = core.residual(c.b.unit());
    let vb = core.basis();
    let mut product_residual: f64 = 0.0;
    for i in 0..core.dim() {
        let vi = vb.col(i);
        for j in 0..core.dim() {
            let prod = c.b.mul_elems(&vi, &vb.col(j));
            product_residual = product_residual.max(core.residual(&prod));
        }
    }
    let star_residual = core.residual(&c.b.star_matrix().mul(&vb.conj()));
    let membership_tol = tol.eq_tol.max(1e-12) * 100.0;
    if unit_residual > membership_tol
        || product_residual > membership_tol
        || star_residual > membership_tol
    {
        return Err(CoactionError::CoreClosureFailure(format!(
            "core not a unital *-subalgebra (unit {unit_residual:.3e}, product {product_residual:.3e}, star {star_residual:.3e})"
        )));
    }

    // delta(core) c core (x) A.
    let core_tensor_proj = core.projector().kron(&CMatrix::identity(na))?;
    let delta_core = c.delta.mul(vb);
    let core_equivariance_residual = core_tensor_proj.mul(&delta_core).distance(&delta_core);

    // Kernel of delta as a two-sided *-ideal.
    let kernel_space = numkit::kernel(&c.delta, tol)?;
    let kernel = Ideal::new(Arc::clone(&c.b), kernel_space)?;
    let kernel_report = kernel.verify(tol);
    if !kernel_report.pass(tol) {
        return Err(CoactionError::CoreClosureFailure(format!(
            "ker delta is not an ideal (violation {:.3e})",
            kernel_report.max_violation()
        )));
    }

    let (_, meet) = numkit::subspace_sum_and_intersection(&core, &kernel.space, tol)?;
    let kernel_core_intersection_dim = meet.dim();

    // When density holds the core must be everything.
    let checked = check_action_axioms(c, tol)?;
    let core_is_full = if checked.flags.podles_dense.is_pass() {
        Some(core.dim() == nb)
    } else {
        None
    };

    Ok(IsotypicalDecomposition {
        components,
        core,
        kernel,
        projections,
        report: PodlesReport {
            projector_family_residual: family_residual,
            direct_sum_ok,
            core_contains_unit_residual: unit_residual,
            core_product_residual: product_residual,
            core_star_residual: star_residual,
            core_equivariance_residual,
            kernel_core_intersection_dim,
            core_is_full,
        },
    })
}

/// One extracted matrix coefficient of an element of `B`.
#[derive(Debug, Clone)]
pub struct Coefficient {
    pub alpha: usize,
    pub i: usize,
    pub j: usize,
    pub value: CMatrix,
}

#[derive(Debug, Clone)]
pub struct CoefficientExpansion {
    pub coefficients: Vec<Coefficient>,
    /// Residual of `delta(b) = sum b^a_ij (x) u^a_ij`.
    pub reconstruction_residual: f64,
    /// Residual of `delta(b^a_kl) = sum_i b^a_il (x) u^a_ik`.
    pub coefficient_equivariance_residual: f64,
}

/// Expands `delta(b)` in the matrix-coefficient basis:
/// `b^a_ij = (id (x) phi^a_ij)(delta b)`.
pub fn coefficient_expansion(
    c: &Coaction,
    pw: &PeterWeylData,
    b_elem: &CMatrix,
    tol: &ToleranceConfig,
) -> Result<CoefficientExpansion, CoactionError> {
    c.require_coassociative(tol)?;
    let nb = c.b.dim();
    let id_b = CMatrix::identity(nb);
    let db = c.delta.mul(b_elem);

    let mut coefficients = Vec::new();
    let mut reconstruction = CMatrix::zeros(nb * c.g.dim(), 1);
    for block in &pw.blocks {
        for i in 0..block.n_alpha {
            for j in 0..block.n_alpha {
                let slice = id_b.kron(&block.functional_row(i, j))?;
                let value = slice.mul(&db);
                reconstruction = reconstruction.add(&value.kron(block.coefficient(i, j))?);
                coefficients.push(Coefficient { alpha: block.alpha, i, j, value });
            }
        }
    }
    let reconstruction_residual = reconstruction.distance(&db);

    let mut equiv: f64 = 0.0;
    for coeff in &coefficients {
        let block = &pw.blocks[coeff.alpha];
        let (k, l) = (coeff.i, coeff.j);
        let lhs = c.delta.mul(&coeff.value);
        let mut rhs = CMatrix::zeros(nb * c.g.dim(), 1);
        for i in 0..block.n_alpha {
            let b_il = coefficients
                .iter()
                .find(|cf| cf.alpha == coeff.alpha && cf.i == i && cf.j == l)
                .expect("coefficient table is complete");
            rhs = rhs.add(&b_il.value.kron(block.coefficient(i, k))?);
        }
        equiv = equiv.max(lhs.distance(&rhs));
    }

    Ok(CoefficientExpansion {
        coefficients,
        reconstruction_residual,
        coefficient_equivariance_residual: equiv,
    })
}

/// Verdict of the core/kernel decomposition checks.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub dim_b: usize,
    pub core_dim: usize,
    pub kernel_dim: usize,
    pub intersection_dim: usize,
    pub sum_dim: usize,
    /// Residual of `range(delta) c core (x) A`.
    pub range_in_core_tensor_residual: f64,
    /// Max residual of `delta(b) = delta(b')` with `b' = sum_a sum_i b^a_ii`
    /// over all basis vectors `b`.
    pub witness_residual: f64,
    pub holds: bool,
}

/// Verifies `B = core (+) ker delta` (dimension count, zero intersection,
/// full sum), that `delta` ranges in `core (x) A`, and the diagonal-sum
/// witness from the decomposition proof.
pub fn decomposition_theorem(
    c: &Coaction,
    dec: &IsotypicalDecomposition,
    pw: &PeterWeylData,
    tol: &ToleranceConfig,
) -> Result<DecompositionReport, CoactionError> {
    c.require_coassociative(tol)?;
    let nb = c.b.dim();
    let na = c.g.dim();
    let (sum, meet) = numkit::subspace_sum_and_intersection(&dec.core, &dec.kernel.space, tol)?;

    let core_tensor_proj = dec.core.projector().kron(&CMatrix::identity(na))?;
    let range_in_core_tensor_residual = core_tensor_proj.mul(&c.delta).distance(&c.delta);

    let mut witness_residual: f64 = 0.0;
    for k in 0..nb {
        let b = CMatrix::basis_vec(nb, k);
        let expansion = coefficient_expansion(c, pw, &b, tol)?;
        let mut b_prime = CMatrix::zeros(nb, 1);
        for coeff in &expansion.coefficients {
            if coeff.i == coeff.j {
                b_prime = b_prime.add(&coeff.value);
            }
        }
        witness_residual = witness_residual.max(c.delta.mul(&b).distance(&c.delta.mul(&b_prime)));
    }

    let holds = dec.core.dim() + dec.kernel.dim() == nb
        && meet.dim() == 0
        && sum.dim() == nb
        && range_in_core_tensor_residual <= tol.eq_tol.max(1e-12) * 100.0
        && witness_residual <= tol.eq_tol.max(1e-12) * 100.0;

    Ok(DecompositionReport {
        dim_b: nb,
        core_dim: dec.core.dim(),
        kernel_dim: dec.kernel.dim(),
        intersection_dim: meet.dim(),
        sum_dim: sum.dim(),
        range_in_core_tensor_residual,
        witness_residual,
        holds,
    })
}

/// The conditional expectation `E_h = (id (x) h) . delta`.
pub fn haar_expectation(c: &Coaction, h: &HaarState) -> CMatrix {
    let nb = c.b.dim();
    CMatrix::identity(nb)
        .kron(h.functional())
        .expect("small kron")
        .mul(&c.delta)
}

/// Full-rank check of `Phi(x (x) y) = delta(x)(1 (x) y)` through the
/// antipode witness: `Psi(c (x) a) = ((id (x) S) delta(c))(1 (x) a)`
/// satisfies `Phi . Psi = id` for coassociative counital coactions.
#[derive(Debug, Clone)]
pub struct PhiWitnessReport {
    pub phi_rank: usize,
    pub full_rank: bool,
    /// Residual of `Phi . Psi = id`.
    pub witness_residual: f64,
}

pub fn phi_full_rank_via_antipode(
    c: &Coaction,
    tol: &ToleranceConfig,
) -> Result<PhiWitnessReport, CoactionError> {
    c.require_coassociative(tol)?;
    let nb = c.b.dim();
    let na = c.g.dim();
    let dim = nb * na;
    let b_alg = c.b.as_ref();
    let a_alg = c.g.carrier().as_ref();

    let embed = |x: &CMatrix, y: &CMatrix| -> Result<CMatrix, CoactionError> {
        // x in B (x) A, y in A: returns x . (1 (x) y)
        let one_y = c.b.unit().kron(y)?;
        Ok(StarAlgebra::tensor_mul_vec(b_alg, a_alg, x, &one_y))
    };

    let mut phi = CMatrix::zeros(dim, dim);
    let mut psi = CMatrix::zeros(dim, dim);
    let id_s_delta = CMatrix::identity(nb).kron(c.g.antipode())?.mul(&c.delta);
    for i in 0..nb {
        let delta_i = c.delta.col(i);
        let twisted_i = id_s_delta.col(i);
        for j in 0..na {
            let ej = CMatrix::basis_vec(na, j);
            phi.set_col(i * na + j, &embed(&delta_i, &ej)?);
            psi.set_col(i * na + j, &embed(&twisted_i, &ej)?);
        }
    }
    let phi_rank = numkit::rank(&phi, tol)?;
    let witness_residual = phi.mul(&psi).distance(&CMatrix::identity(dim));
    Ok(PhiWitnessReport { phi_rank, full_rank: phi_rank == dim, witness_residual })
}
