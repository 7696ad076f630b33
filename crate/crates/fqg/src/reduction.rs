//! Reduction procedures for coactions: minimal reduction by the kernel,
//! the Haar-form reduced action, the universal action on the core, the
//! restriction of a coaction along a quantum-group quotient, and the
//! kernel-producing inflation constructor.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    quotient_algebra, AlgebraError, AlgebraMorphism, Ideal, QuotientData, StarAlgebra,
};
use crate::coaction::{
    check_action_axioms, podles_core, Coaction, CoactionError, IsotypicalDecomposition,
};
use crate::numkit::{self, eigh, CMatrix, NumError, Subspace, ToleranceConfig};
use crate::peterweyl::{PeterWeylData, PeterWeylError};
use crate::qgroup::{hopf_quotient_check, FiniteQuantumGroup, HaarState, QGroupError};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    QGroup(#[from] QGroupError),
    #[error(transparent)]
    PeterWeyl(#[from] PeterWeylError),
    #[error(transparent)]
    Coaction(#[from] CoactionError),
    #[error("coaction is not coassociative (violation {violation:.3e})")]
    NotCoassociative { violation: f64 },
    #[error("section is not a right inverse of the quotient map (residual {residual:.3e})")]
    SectionMismatch { residual: f64 },
    #[error("morphism is not a quantum-group quotient: {0}")]
    NotAQuotient(String),
    #[error("verification of `{item}` failed with residual {residual:.3e}")]
    VerificationFailed { item: String, residual: f64 },
}

fn require_coassociative(c: &Coaction, tol: &ToleranceConfig) -> Result<(), ReductionError> {
    let r = c.coassociativity_residual()?;
    if r > tol.eq_tol {
        return Err(ReductionError::NotCoassociative { violation: r });
    }
    Ok(())
}

/// Subspace equality within a forgiving numerical margin.
fn subspaces_equal(a: &Subspace, b: &Subspace, tol: &ToleranceConfig) -> bool {
    a.approx_eq(b, tol.eq_tol.max(1e-12) * 1e3)
}

/// Items verified while constructing the minimal reduction.
#[derive(Debug, Clone)]
pub struct MinimalReductionReport {
    /// `i . p = delta`.
    pub factorization_residual: f64,
    /// `(p (x) id) . delta = rdelta . p` (equivariance of `p`).
    pub equivariance_residual: f64,
    pub factor_injective: bool,
    pub induced_coassociative: bool,
    /// Density of the induced coaction (inherited when the source is dense).
    pub induced_dense: bool,
    pub induced_kernel_dim: usize,
    /// `p` restricted to the Podles core is injective.
    pub p_injective_on_core: bool,
    /// The Podles core of the induced coaction equals `p(core)`.
    pub core_transported: bool,
    /// Per-alpha isotypical dimensions agree between source and quotient.
    pub isotypical_dims_match: bool,
}

/// Minimal reduction `rB = B / ker delta` with the factored coaction.
#[derive(Debug, Clone)]
pub struct MinimalReduction {
    pub quotient: QuotientData,
    /// The injective factor `i: rB -> B (x) A` with `delta = i . p`.
    pub factor: CMatrix,
    pub induced: Coaction,
    pub kernel: Ideal,
    pub report: MinimalReductionReport,
}

/// Builds `rB = B/ker delta`, the injective factor `i = delta . section`,
/// and the induced coaction `rdelta = (p (x) id) . i`, then verifies the
/// reduction theorem items.
pub fn minimal_reduction(
    c: &Coaction,
    pw: &PeterWeylData,
    tol: &ToleranceConfig,
) -> Result<MinimalReduction, ReductionError> {
    require_coassociative(c, tol)?;
    let b = c.algebra();
    let g = c.group();
    let na = g.dim();

    let dec = podles_core(c, pw, tol)?;
    let kernel = dec.kernel.clone();
    let quotient = quotient_algebra(b, &kernel, tol)?;
    let p = &quotient.projection.map;

    let factor = c.delta().mul(&quotient.section);
    let factorization_residual = factor.mul(p).distance(c.delta());
    let factor_injective = numkit::kernel(&factor, tol)?.dim() == 0;

    let id_a = CMatrix::identity(na);
    let rdelta = p.kron(&id_a)?.mul(&factor);
    let induced = Coaction::new(
        Arc::clone(&quotient.quotient),
        Arc::clone(g),
        rdelta.clone(),
        tol,
    )?;

    let equivariance_residual = p.kron(&id_a)?.mul(c.delta()).distance(&rdelta.mul(p));

    let induced_checked = check_action_axioms(&induced, tol)?;
    let induced_coassociative = induced_checked.flags().coassociative.is_pass();
    let induced_dense = induced_checked.flags().podles_dense.is_pass();
    let induced_kernel_dim = numkit::kernel(&rdelta, tol)?.dim();

    // p injective on the core, and the core transports onto the induced core.
    let core_image = p.mul(dec.core.basis());
    let p_injective_on_core = numkit::kernel(&core_image, tol)?.dim() == 0
        && numkit::rank(&core_image, tol)? == dec.core.dim();
    let induced_dec = podles_core(&induced, pw, tol)?;
    let transported_core = Subspace::from_span(&core_image, tol)?;
    let core_transported = subspaces_equal(&transported_core, &induced_dec.core, tol);
    let mut isotypical_dims_match = true;
    for ((alpha, w_src), (alpha2, w_ind)) in dec.components.iter().zip(&induced_dec.components) {
        debug_assert_eq!(alpha, alpha2);
        if w_src.dim() != w_ind.dim() {
            isotypical_dims_match = false;
        }
        let transported = Subspace::from_span(&p.mul(w_src.basis()), tol)?;
        if !subspaces_equal(&transported, w_ind, tol) {
            isotypical_dims_match = false;
        }
    }

    Ok(MinimalReduction {
        quotient,
        factor,
        induced,
        kernel,
        report: MinimalReductionReport {
            factorization_residual,
            equivariance_residual,
            factor_injective,
            induced_coassociative,
            induced_dense,
            induced_kernel_dim,
            p_injective_on_core,
            core_transported,
            isotypical_dims_match,
        },
    })
}

#[derive(Debug, Clone)]
pub struct ReducedActionReport {
    /// The Haar-expectation form `(b, c) -> phi(E_h(c* b))` is PSD.
    pub form_psd: bool,
    /// `(pi_r (x) id) . delta = delta_r . pi_r`.
    pub equivariance_residual: f64,
    pub induced_kernel_dim: usize,
    pub pi_injective_on_core: bool,
    pub core_transported: bool,
    /// `gamma . p = pi_r`.
    pub gamma_compat_residual: f64,
    pub gamma_surjective: bool,
    /// `delta_r . gamma = (gamma (x) id) . rdelta`.
    pub gamma_equivariance_residual: f64,
    /// `dim N = dim ker delta`, making `gamma` an isomorphism.
    pub gamma_iso: bool,
}

/// Reduced action `B_r = B / N` where `N` is the null space of the
/// positive form `(b, c) -> phi(E_h(c* b))` against the regular trace.
#[derive(Debug, Clone)]
pub struct ReducedAction {
    pub null_ideal: Ideal,
    pub quotient: QuotientData,
    pub induced: Coaction,
    /// The canonical comparison `gamma: rB -> B_r`.
    pub gamma: AlgebraMorphism,
    pub report: ReducedActionReport,
}

pub fn reduced_action(
    c: &Coaction,
    h: &HaarState,
    pw: &PeterWeylData,
    tol: &ToleranceConfig,
) -> Result<ReducedAction, ReductionError> {
    require_coassociative(c, tol)?;
    let b = c.algebra();
    let g = c.group();
    let nb = b.dim();
    let na = g.dim();

    // Form matrix Q_{ij} = phi(E_h(b_i* b_j)), phi = normalized regular trace.
    let e_h = crate::coaction::haar_expectation(c, h);
    let phi = b.regular_trace();
    let mut q = CMatrix::zeros(nb, nb);
    for i in 0..nb {
        let bi_star = b.star_elem(&CMatrix::basis_vec(nb, i));
        for j in 0..nb {
            let prod = b.mul_elems(&bi_star, &CMatrix::basis_vec(nb, j));
            q[(i, j)] = phi.mul(&e_h.mul(&prod))[(0, 0)];
        }
    }
    let eq = eigh(&q)?;
    let max_eig = eq.values.last().copied().unwrap_or(0.0);
    let form_psd = q.distance(&q.adjoint()) <= tol.eq_tol.max(1e-10) * 10.0
        && eq.values.iter().all(|&v| v >= -tol.eq_tol * max_eig.max(1.0));

    let null_space = numkit::kernel(&q, tol)?;
    let null_ideal = Ideal::new(Arc::clone(b), null_space)?;
    let closure = null_ideal.verify(tol);
    if !closure.pass(tol) {
        return Err(ReductionError::VerificationFailed {
            item: "null space of the Haar form is a two-sided *-ideal".into(),
            residual: closure.max_violation(),
        });
    }

    let quotient = quotient_algebra(b, &null_ideal, tol)?;
    let pi = &quotient.projection.map;
    let id_a = CMatrix::identity(na);

    // Well-definedness of the induced coaction: delta must kill N.
    let killed = pi.kron(&id_a)?.mul(c.delta()).mul(null_ideal.space.basis());
    if killed.max_abs() > tol.eq_tol.max(1e-12) * 100.0 {
        return Err(ReductionError::VerificationFailed {
            item: "delta descends to B/N".into(),
            residual: killed.max_abs(),
        });
    }
    let delta_r = pi.kron(&id_a)?.mul(c.delta()).mul(&quotient.section);
    let induced = Coaction::new(Arc::clone(&quotient.quotient), Arc::clone(g), delta_r.clone(), tol)?;

    let equivariance_residual = pi.kron(&id_a)?.mul(c.delta()).distance(&delta_r.mul(pi));
    let induced_kernel_dim = numkit::kernel(&delta_r, tol)?.dim();

    let dec = podles_core(c, pw, tol)?;
    let core_image = pi.mul(dec.core.basis());
    let pi_injective_on_core = numkit::rank(&core_image, tol)? == dec.core.dim();
    let induced_dec = podles_core(&induced, pw, tol)?;
    let core_transported =
        subspaces_equal(&Subspace::from_span(&core_image, tol)?, &induced_dec.core, tol);

    // gamma: rB -> B_r through the minimal reduction.
    let minimal = minimal_reduction(c, pw, tol)?;
    let ker_p = &minimal.kernel.space;
    let contained = pi.mul(ker_p.basis()).max_abs();
    if contained > tol.eq_tol.max(1e-12) * 100.0 {
        return Err(ReductionError::VerificationFailed {
            item: "ker delta c ker pi_r".into(),
            residual: contained,
        });
    }
    let gamma_map = pi.mul(&minimal.quotient.section);
    let gamma = AlgebraMorphism::new(
        Arc::clone(&minimal.quotient.quotient),
        Arc::clone(&quotient.quotient),
        gamma_map,
    )?;
    let gamma_report = gamma.verify(tol);
    if !gamma_report.pass(tol) {
        return Err(ReductionError::VerificationFailed {
            item: "gamma is a unital *-morphism".into(),
            residual: gamma_report.max_violation(),
        });
    }
    let gamma_compat_residual = gamma.map.mul(&minimal.quotient.projection.map).distance(pi);
    let gamma_surjective = gamma.is_surjective(tol)?;
    let gamma_equivariance_residual = delta_r
        .mul(&gamma.map)
        .distance(&gamma.map.kron(&id_a)?.mul(minimal.induced.delta()));
    let gamma_iso = null_ideal.dim() == minimal.kernel.dim();

    Ok(ReducedAction {
        null_ideal,
        quotient,
        induced,
        gamma,
        report: ReducedActionReport {
            form_psd,
            equivariance_residual,
            induced_kernel_dim,
            pi_injective_on_core,
            core_transported,
            gamma_compat_residual,
            gamma_surjective,
            gamma_equivariance_residual,
            gamma_iso,
        },
    })
}

#[derive(Debug, Clone)]
pub struct UniversalActionReport {
    /// `(pi_u (x) id) . delta_u = delta . pi_u`.
    pub equivariance_residual: f64,
    /// The Podles core of `delta_u` is the whole core algebra.
    pub core_is_everything: bool,
    pub induced_dense: bool,
    pub induced_kernel_dim: usize,
}

/// The universal action: at finite dimension the core is already a
/// C*-algebra, so its universal envelope is itself and `delta_u` is the
/// restriction of `delta`.
#[derive(Debug, Clone)]
pub struct UniversalAction {
    pub core_algebra: Arc<StarAlgebra>,
    pub coaction: Coaction,
    /// The inclusion `pi_u: B_u -> B`.
    pub inclusion: AlgebraMorphism,
    pub report: UniversalActionReport,
}

pub fn universal_action(
    c: &Coaction,
    dec: &IsotypicalDecomposition,
    pw: &PeterWeylData,
    tol: &ToleranceConfig,
) -> Result<UniversalAction, ReductionError> {
    require_coassociative(c, tol)?;
    let b = c.algebra();
    let g = c.group();
    let na = g.dim();
    let v = dec.core.basis();
    let vh = v.adjoint();
    let d = dec.core.dim();

    // Core with the restricted product; closure was verified by podles_core.
    let mut mult = CMatrix::zeros(d, d * d);
    for i in 0..d {
        let vi = v.col(i);
        for j in 0..d {
            let prod = vh.mul(&b.mul_elems(&vi, &v.col(j)));
            for k in 0..d {
                mult[(k, i * d + j)] = prod[(k, 0)];
            }
        }
    }
    let unit = vh.mul(b.unit());
    let star = vh.mul(&b.star_matrix().mul(&v.conj()));
    let core_algebra = Arc::new(StarAlgebra::new(d, mult, unit, star, None)?);
    let algebra_report = core_algebra.verify(tol);
    if !algebra_report.pass(tol) {
        return Err(ReductionError::VerificationFailed {
            item: "core inherits a *-algebra structure".into(),
            residual: algebra_report.max_violation(),
        });
    }

    let delta_u = vh.kron(&CMatrix::identity(na))?.mul(c.delta()).mul(v);
    let coaction = Coaction::new(Arc::clone(&core_algebra), Arc::clone(g), delta_u.clone(), tol)?;

    let inclusion = AlgebraMorphism::new(Arc::clone(&core_algebra), Arc::clone(b), v.clone())?;
    let incl_report = inclusion.verify(tol);
    if !incl_report.pass(tol) {
        return Err(ReductionError::VerificationFailed {
            item: "core inclusion is a unital *-morphism".into(),
            residual: incl_report.max_violation(),
        });
    }

    let equivariance_residual = v
        .kron(&CMatrix::identity(na))?
        .mul(&delta_u)
        .distance(&c.delta().mul(v));

    let u_dec = podles_core(&coaction, pw, tol)?;
    let core_is_everything = u_dec.core.dim() == d;
    let checked = check_action_axioms(&coaction, tol)?;
    let induced_dense = checked.flags().podles_dense.is_pass();
    let induced_kernel_dim = numkit::kernel(&delta_u, tol)?.dim();

    Ok(UniversalAction {
        core_algebra,
        coaction,
        inclusion,
        report: UniversalActionReport {
            equivariance_residual,
            core_is_everything,
            induced_dense,
            induced_kernel_dim,
        },
    })
}

#[derive(Debug, Clone)]
pub struct RestrictionReport {
    pub kernel_dim_source: usize,
    pub kernel_dim_restricted: usize,
    /// `ker delta c ker delta^r`.
    pub kernel_contained: bool,
    /// Whether the two Podles cores coincide as subspaces of `B`.
    pub cores_equal: bool,
    /// `pi` injective on the coefficient span of `delta` (when true the
    /// cores are asserted equal; otherwise equality is only reported).
    pub pi_injective_on_coefficients: bool,
    pub restricted_is_action: bool,
}

/// A coaction restricted along a quantum-group quotient `pi: A -> A'`.
#[derive(Debug, Clone)]
pub struct RestrictedAction {
    pub coaction: Coaction,
    pub report: RestrictionReport,
}

/// Restriction `delta^r = (id (x) pi) . delta` along a verified
/// quantum-group quotient.
pub fn restrict_action(
    c: &Coaction,
    g2: &Arc<FiniteQuantumGroup>,
    pi: &AlgebraMorphism,
    pw: &PeterWeylData,
    pw2: &PeterWeylData,
    tol: &ToleranceConfig,
) -> Result<RestrictedAction, ReductionError> {
    require_coassociative(c, tol)?;
    let check = hopf_quotient_check(pi, c.group(), g2, tol)?;
    if !check.pass(tol) {
        return Err(ReductionError::NotAQuotient(format!(
            "surjective={} intertwining={:.3e} morphism={:.3e}",
            check.surjective,
            check.intertwining,
            check.morphism.max_violation()
        )));
    }
    let nb = c.algebra().dim();
    let delta_r = CMatrix::identity(nb).kron(&pi.map)?.mul(c.delta());
    let restricted = Coaction::new(Arc::clone(c.algebra()), Arc::clone(g2), delta_r.clone(), tol)?;

    let source_kernel = numkit::kernel(c.delta(), tol)?;
    let restricted_kernel = numkit::kernel(&delta_r, tol)?;
    let kernel_contained = restricted_kernel.residual(source_kernel.basis()) <= tol.eq_tol.max(1e-10) * 100.0
        || source_kernel.dim() == 0;

    let dec = podles_core(c, pw, tol)?;
    let dec_r = podles_core(&restricted, pw2, tol)?;
    let cores_equal = subspaces_equal(&dec.core, &dec_r.core, tol);

    // Coefficient span of delta inside A: all A-leg slices of delta(b_j).
    let na = c.group().dim();
    let mut coeffs = CMatrix::zeros(na, nb * nb);
    for j in 0..nb {
        let col = c.delta().col(j);
        for i in 0..nb {
            for k in 0..na {
                coeffs[(k, j * nb + i)] = col[(i * na + k, 0)];
            }
        }
    }
    let span = numkit::range(&coeffs, tol)?;
    let pi_injective_on_coefficients =
        numkit::rank(&pi.map.mul(span.basis()), tol)? == span.dim();
    if pi_injective_on_coefficients && !cores_equal {
        return Err(ReductionError::VerificationFailed {
            item: "restricted core equals the source core".into(),
            residual: f64::NAN,
        });
    }

    let source_checked = check_action_axioms(c, tol)?;
    let restricted_checked = check_action_axioms(&restricted, tol)?;
    let restricted_is_action = restricted_checked.flags().is_action();
    if source_checked.flags().is_action() && !restricted_is_action {
        return Err(ReductionError::VerificationFailed {
            item: "restriction of an action is an action".into(),
            residual: f64::NAN,
        });
    }

    Ok(RestrictedAction {
        coaction: restricted,
        report: RestrictionReport {
            kernel_dim_source: source_kernel.dim(),
            kernel_dim_restricted: restricted_kernel.dim(),
            kernel_contained,
            cores_equal,
            pi_injective_on_coefficients,
            restricted_is_action,
        },
    })
}

#[derive(Debug, Clone)]
pub struct InflationReport {
    /// `theta` coassociative.
    pub coassociative: bool,
    /// `ker theta = ker q` as subspaces.
    pub kernel_matches_q: bool,
    pub kernel_dim: usize,
    pub dense: bool,
}

/// An inflated coaction together with the data that produced it.
#[derive(Debug, Clone)]
pub struct Inflation {
    pub coaction: Coaction,
    pub target: Coaction,
    pub q: AlgebraMorphism,
    pub section: AlgebraMorphism,
    pub report: InflationReport,
}

/// Inflation `theta = (s (x) id) . delta' . q` along a surjection
/// `q: B -> B'` with *-morphism section `s`; produces a coassociative
/// coaction on `B` with `ker theta = ker q` when the target is injective.
pub fn inflate(
    target: &Coaction,
    q: &AlgebraMorphism,
    s: &AlgebraMorphism,
    tol: &ToleranceConfig,
) -> Result<Inflation, ReductionError> {
    require_coassociative(target, tol)?;
    if q.target.dim() != target.algebra().dim() || s.source.dim() != target.algebra().dim() {
        return Err(ReductionError::NotAQuotient(
            "inflation legs do not match the target coaction".into(),
        ));
    }
    if q.source.dim() != s.target.dim() {
        return Err(ReductionError::NotAQuotient("q and s endpoints differ".into()));
    }
    let qs = q.map.mul(&s.map);
    let residual = qs.distance(&CMatrix::identity(q.target.dim()));
    if residual > tol.eq_tol {
        return Err(ReductionError::SectionMismatch { residual });
    }
    for (name, m) in [("q", q), ("s", s)] {
        let rep = m.verify(tol);
        if !rep.pass(tol) {
            return Err(ReductionError::VerificationFailed {
                item: format!("inflation leg {name} is a unital *-morphism"),
                residual: rep.max_violation(),
            });
        }
    }
    if !q.is_surjective(tol)? {
        return Err(ReductionError::NotAQuotient("q is not surjective".into()));
    }

    let na = target.group().dim();
    let theta = s.map.kron(&CMatrix::identity(na))?.mul(target.delta()).mul(&q.map);
    let coaction = Coaction::new(
        Arc::clone(&q.source),
        Arc::clone(target.group()),
        theta.clone(),
        tol,
    )?;

    let checked = check_action_axioms(&coaction, tol)?;
    let kernel = numkit::kernel(&theta, tol)?;
    let q_kernel = numkit::kernel(&q.map, tol)?;
    let kernel_matches_q =
        kernel.dim() == q_kernel.dim() && kernel.approx_eq(&q_kernel, tol.eq_tol.max(1e-12) * 1e3);

    Ok(Inflation {
        coaction,
        target: target.clone(),
        q: q.clone(),
        section: s.clone(),
        report: InflationReport {
            coassociative: checked.flags().coassociative.is_pass(),
            kernel_matches_q,
            kernel_dim: kernel.dim(),
            dense: checked.flags().podles_dense.is_pass(),
        },
    })
}

/// The canonical equivariant comparison from the minimal reduction of an
/// inflated coaction back to the inflation target: `phi = q . section_p`.
///
/// Verifies that `phi` is a *-isomorphism intertwining `rdelta` and the
/// target coaction, and returns it.
pub fn inflation_minimal_iso(
    infl: &Inflation,
    mr: &MinimalReduction,
    tol: &ToleranceConfig,
) -> Result<(AlgebraMorphism, f64), ReductionError> {
    let phi_map = infl.q.map.mul(&mr.quotient.section);
    let phi = AlgebraMorphism::new(
        Arc::clone(&mr.quotient.quotient),
        Arc::clone(&infl.q.target),
        phi_map,
    )?;
    let rep = phi.verify(tol);
    if !rep.pass(tol) {
        return Err(ReductionError::VerificationFailed {
            item: "comparison with the inflation target is a *-morphism".into(),
            residual: rep.max_violation(),
        });
    }
    if phi.map.rows() != phi.map.cols() {
        return Err(ReductionError::VerificationFailed {
            item: "comparison with the inflation target is square".into(),
            residual: f64::NAN,
        });
    }
    phi.map.inverse()?; // must be invertible
    let na = infl.coaction.group().dim();
    let id_a = CMatrix::identity(na);
    // delta' . phi = (phi (x) id) . rdelta
    let lhs = infl.target.delta().mul(&phi.map);
    let rhs = phi.map.kron(&id_a)?.mul(mr.induced.delta());
    let residual = lhs.distance(&rhs);
    Ok((phi, residual))
}
