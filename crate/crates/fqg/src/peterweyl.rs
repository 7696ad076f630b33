//! Irreducible unitary corepresentations of a finite quantum group: the
//! matrix-coefficient basis `u^a_ij` of the carrier and the dual functionals
//! `phi^a_ij`.
//!
//! The work happens on the dual algebra `A*` with the convolution product
//! `f * g = (f (x) g) . Delta`: its Artin-Wedderburn blocks are exactly the
//! irreducible corepresentation classes, *-compatible matrix units of the
//! blocks are the `phi^a_ij`, and the dual basis under the canonical pairing
//! gives the `u^a_ij`.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraError, GnsRep, StarAlgebra};
use crate::numkit::{self, eigh, CMatrix, NumError, SplitMix64, ToleranceConfig};
use crate::qgroup::{FiniteQuantumGroup, HaarState, QGroupError};

#[derive(Debug, Error)]
pub enum PeterWeylError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    QGroup(#[from] QGroupError),
    #[error("dual algebra fails *-algebra axioms by {violation:.3e}")]
    DualAxioms { violation: f64 },
    #[error("block separation failed after {attempts} seeded attempts")]
    BlockSeparationFailure { attempts: usize },
    #[error("no one-dimensional block carries the unit; input is not a finite quantum group")]
    TrivialBlockNotFound,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

/// The dual space `A*` as a *-algebra under convolution.
///
/// Coordinates are taken in the basis dual to the carrier basis, so the
/// functional with coordinate column `f` sends `x` to `f^T x`.
#[derive(Debug, Clone)]
pub struct DualAlgebra {
    pub algebra: Arc<StarAlgebra>,
}

/// Builds `A*`: product `f * g = (f (x) g) . Delta`, unit `eps`, involution
/// `f*(a) = conj(f(S(a)*))`.
pub fn dual_algebra(g: &FiniteQuantumGroup, tol: &ToleranceConfig) -> Result<DualAlgebra, PeterWeylError> {
    let mult = g.comult().transpose();
    let unit = g.counit().transpose();
    let star = g.carrier().star_matrix().conj().mul(g.antipode()).transpose();
    let algebra = StarAlgebra::new(g.dim(), mult, unit, star, None)?;
    let report = algebra.verify(tol);
    if !report.pass(tol) {
        return Err(PeterWeylError::DualAxioms { violation: report.max_violation() });
    }
    Ok(DualAlgebra { algebra: Arc::new(algebra) })
}

/// The dual finite quantum group: comultiplication dualizes the product,
/// counit is evaluation at 1, antipode is the transpose of `S`.
pub fn dual_quantum_group(
    g: &FiniteQuantumGroup,
    tol: &ToleranceConfig,
) -> Result<FiniteQuantumGroup, PeterWeylError> {
    let dual = dual_algebra(g, tol)?;
    let comult = g.carrier().mult_map().transpose();
    let counit = g.carrier().unit().transpose();
    let antipode = g.antipode().transpose();
    let out = FiniteQuantumGroup::new(Arc::clone(&dual.algebra), comult, counit, antipode)?;
    let report = out.verify(tol)?;
    if !report.pass(tol) {
        return Err(PeterWeylError::InternalInvariant(format!(
            "dual quantum group fails Hopf axioms by {:.3e}",
            report.max_violation()
        )));
    }
    Ok(out)
}

/// A simple block of a multimatrix algebra: *-compatible matrix units
/// `e_ij` (flat order `i*size + j`) and the block's central idempotent.
#[derive(Debug, Clone)]
pub struct MatrixUnitSystem {
    pub size: usize,
    pub units: Vec<CMatrix>,
    pub central_idempotent: CMatrix,
    /// Max violation of the matrix-unit relations among the returned units.
    pub relation_residual: f64,
}

impl MatrixUnitSystem {
    pub fn unit(&self, i: usize, j: usize) -> &CMatrix {
        &self.units[i * self.size + j]
    }
}

/// Artin-Wedderburn decomposition of a finite-dimensional C*-algebra given
/// by structure constants: minimal central self-adjoint idempotents from the
/// spectral decomposition of a seeded random self-adjoint central element,
/// then *-compatible matrix units inside each block.
pub fn artin_wedderburn(
    alg: &StarAlgebra,
    tol: &ToleranceConfig,
    seed: u64,
) -> Result<Vec<MatrixUnitSystem>, PeterWeylError> {
    const ATTEMPTS: usize = 8;
    let n = alg.dim();
    let gns = GnsRep::new(alg, tol)?;

    // Center = common kernel of the commutator operators L_i - R_i.
    let mut stacked = CMatrix::zeros(n * n, n);
    for i in 0..n {
        let ei = CMatrix::basis_vec(n, i);
        let comm = alg.left_mult(&ei).sub(&alg.right_mult(&ei));
        for r in 0..n {
            for c in 0..n {
                stacked[(i * n + r, c)] = comm[(r, c)];
            }
        }
    }
    let center = numkit::kernel(&stacked, tol)?;
    let block_count = center.dim();
    if block_count == 0 {
        return Err(PeterWeylError::InternalInvariant("unital algebra with empty center".into()));
    }

    for attempt in 0..ATTEMPTS {
        let mut rng = SplitMix64::new(seed.wrapping_add(attempt as u64));
        if let Some(systems) = attempt_decomposition(alg, &gns, &center, block_count, &mut rng)? {
            return Ok(systems);
        }
    }
    Err(PeterWeylError::BlockSeparationFailure { attempts: ATTEMPTS })
}

/// One seeded attempt; `Ok(None)` means "separation too tight, retry".
fn attempt_decomposition(
    alg: &StarAlgebra,
    gns: &GnsRep,
    center: &numkit::Subspace,
    block_count: usize,
    rng: &mut SplitMix64,
) -> Result<Option<Vec<MatrixUnitSystem>>, PeterWeylError> {
    const GAP: f64 = 1e-4;
    const RESIDUAL: f64 = 1e-8;
    let n = alg.dim();

    // Random self-adjoint central element.
    let coeffs = CMatrix::from_fn(center.dim(), 1, |_, _| rng.next_complex());
    let z_raw = center.basis().mul(&coeffs);
    let z = z_raw.add(&alg.star_elem(&z_raw)).scale(Complex64::new(0.5, 0.0));
    if z.max_abs() < 1e-6 {
        return Ok(None);
    }
    let zm = gns.represent(alg, &z);
    if zm.distance(&zm.adjoint()) > RESIDUAL {
        return Err(PeterWeylError::InternalInvariant(
            "GNS image of a self-adjoint element is not Hermitian".into(),
        ));
    }
    let ez = eigh(&zm)?;
    let clusters = cluster(&ez.values, GAP);
    if clusters.len() != block_count {
        return Ok(None);
    }

    // Central idempotents from spectral projections, pulled back to the
    // algebra; block dimension = cluster size must be a perfect square.
    struct BlockSeed {
        z_alpha: CMatrix,
        projector: CMatrix,
        size: usize,
        marker: f64,
    }
    let mut seeds = Vec::new();
    for &(start, len) in &clusters {
        let mut p = CMatrix::zeros(n, n);
        for k in start..start + len {
            let q = ez.vectors.col(k);
            p = p.add(&q.mul(&q.adjoint()));
        }
        let z_alpha = gns.abstract_elem(alg, &p);
        let size = (len as f64).sqrt().round() as usize;
        if size * size != len {
            return Ok(None);
        }
        // sanity: idempotent, self-adjoint
        let idem = alg.mul_elems(&z_alpha, &z_alpha).distance(&z_alpha);
        let sa = alg.star_elem(&z_alpha).distance(&z_alpha);
        if idem > RESIDUAL || sa > RESIDUAL {
            return Ok(None);
        }
        let marker = ez.values[start];
        seeds.push(BlockSeed { z_alpha, projector: p, size, marker });
    }
    seeds.sort_by(|a, b| a.size.cmp(&b.size).then(a.marker.partial_cmp(&b.marker).unwrap()));

    // Random self-adjoint element for splitting inside blocks, and a generic
    // mixing element for the partial isometries.
    let y_raw = CMatrix::from_fn(n, 1, |_, _| rng.next_complex());
    let y = y_raw.add(&alg.star_elem(&y_raw)).scale(Complex64::new(0.5, 0.0));
    let tau = alg.regular_trace();

    let mut systems = Vec::new();
    for seed_block in &seeds {
        let nb = seed_block.size;
        let z_alpha = &seed_block.z_alpha;
        if nb == 1 {
            systems.push(MatrixUnitSystem {
                size: 1,
                units: vec![z_alpha.clone()],
                central_idempotent: z_alpha.clone(),
                relation_residual: alg.mul_elems(z_alpha, z_alpha).distance(z_alpha),
            });
            continue;
        }

        // Diagonal matrix units from the spectral decomposition of
        // y_alpha = z_alpha y z_alpha inside the block.
        let y_alpha = alg.mul_elems(z_alpha, &alg.mul_elems(&y, z_alpha));
        let ym = gns.represent(alg, &y_alpha);
        let ey = eigh(&ym)?;
        let mut in_block: Vec<(f64, usize)> = Vec::new();
        for k in 0..n {
            let q = ey.vectors.col(k);
            let weight = seed_block.projector.mul(&q).frobenius_norm();
            if weight > 0.9 {
                in_block.push((ey.values[k], k));
            } else if weight > 0.1 {
                return Ok(None); // eigenspace mixes with other blocks
            }
        }
        if in_block.len() != nb * nb {
            return Ok(None);
        }
        let mut mu_values: Vec<f64> = in_block.iter().map(|&(v, _)| v).collect();
        mu_values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mu_clusters = cluster(&mu_values, GAP);
        if mu_clusters.len() != nb || mu_clusters.iter().any(|&(_, l)| l != nb) {
            return Ok(None);
        }
        let mus: Vec<f64> = mu_clusters
            .iter()
            .map(|&(s, l)| mu_values[s..s + l].iter().sum::<f64>() / l as f64)
            .collect();

        // Lagrange interpolation inside the block algebra: the idempotent
        // onto the mu_i eigenspace of y_alpha.
        let mut diagonal = Vec::with_capacity(nb);
        for i in 0..nb {
            let mut e = z_alpha.clone();
            for (j, &mu_j) in mus.iter().enumerate() {
                if j == i {
                    continue;
                }
                let factor = y_alpha.sub(&z_alpha.scale(Complex64::new(mu_j, 0.0)));
                e = alg
                    .mul_elems(&e, &factor)
                    .scale(Complex64::new(1.0 / (mus[i] - mu_j), 0.0));
            }
            diagonal.push(e);
        }
        let mut check = CMatrix::zeros(n, 1);
        let mut defect: f64 = 0.0;
        for (i, ei) in diagonal.iter().enumerate() {
            check = check.add(ei);
            defect = defect.max(alg.star_elem(ei).distance(ei));
            for (j, ej) in diagonal.iter().enumerate() {
                let prod = alg.mul_elems(ei, ej);
                let expected = if i == j { ei.clone() } else { CMatrix::zeros(n, 1) };
                defect = defect.max(prod.distance(&expected));
            }
        }
        defect = defect.max(check.distance(z_alpha));
        if defect > RESIDUAL {
            return Ok(None);
        }

        // Partial isometries e_{i0} = w / sqrt(c), w = e_ii x e_00,
        // c = tau(w* w) / tau(e_00).
        let tau_e0 = tau.mul(&diagonal[0])[(0, 0)].re;
        if tau_e0 <= 0.0 {
            return Ok(None);
        }
        let mut isometries = vec![diagonal[0].clone()];
        for de in diagonal.iter().take(nb).skip(1) {
            let mut found = None;
            for _ in 0..4 {
                let x = CMatrix::from_fn(n, 1, |_, _| rng.next_complex());
                let w = alg.mul_elems(de, &alg.mul_elems(&x, &diagonal[0]));
                let c = tau.mul(&alg.mul_elems(&alg.star_elem(&w), &w))[(0, 0)].re / tau_e0;
                if c > 1e-6 {
                    found = Some(w.scale(Complex64::new(1.0 / c.sqrt(), 0.0)));
                    break;
                }
            }
            match found {
                Some(v) => isometries.push(v),
                None => return Ok(None),
            }
        }

        // Full matrix-unit family e_ij = e_{i0} (e_{j0})*.
        let mut units = Vec::with_capacity(nb * nb);
        for i in 0..nb {
            for j in 0..nb {
                units.push(alg.mul_elems(&isometries[i], &alg.star_elem(&isometries[j])));
            }
        }
        let mut rel: f64 = 0.0;
        for i in 0..nb {
            for j in 0..nb {
                let eij = &units[i * nb + j];
                rel = rel.max(alg.star_elem(eij).distance(&units[j * nb + i]));
                for k in 0..nb {
                    for l in 0..nb {
                        let prod = alg.mul_elems(eij, &units[k * nb + l]);
                        let expected =
                            if j == k { units[i * nb + l].clone() } else { CMatrix::zeros(n, 1) };
                        rel = rel.max(prod.distance(&expected));
                    }
                }
            }
        }
        if rel > RESIDUAL {
            return Ok(None);
        }
        systems.push(MatrixUnitSystem {
            size: nb,
            units,
            central_idempotent: z_alpha.clone(),
            relation_residual: rel,
        });
    }

    let total: usize = systems.iter().map(|s| s.size * s.size).sum();
    if total != n {
        return Err(PeterWeylError::InternalInvariant(format!(
            "block dimensions {total} do not fill the algebra dimension {n}"
        )));
    }
    Ok(Some(systems))
}

/// Splits an ascending value list at gaps larger than `gap`.
fn cluster(values: &[f64], gap: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            out.push((start, i - start));
            start = i;
        }
    }
    out
}

/// Artin-Wedderburn on the convolution dual.
pub fn block_decompose(
    d: &DualAlgebra,
    tol: &ToleranceConfig,
    seed: u64,
) -> Result<Vec<MatrixUnitSystem>, PeterWeylError> {
    artin_wedderburn(&d.algebra, tol, seed)
}

/// One irreducible corepresentation class: matrix coefficients `u^a_ij` in
/// the carrier and the dual functionals `phi^a_ij` (both flat `i*N + j`).
#[derive(Debug, Clone)]
pub struct IrrepBlock {
    pub alpha: usize,
    pub n_alpha: usize,
    pub coefficients: Vec<CMatrix>,
    pub functionals: Vec<CMatrix>,
}

impl IrrepBlock {
    pub fn coefficient(&self, i: usize, j: usize) -> &CMatrix {
        &self.coefficients[i * self.n_alpha + j]
    }

    pub fn functional(&self, i: usize, j: usize) -> &CMatrix {
        &self.functionals[i * self.n_alpha + j]
    }

    /// The functional `phi^a_ij` as a `1 x n` row ready to apply.
    pub fn functional_row(&self, i: usize, j: usize) -> CMatrix {
        self.functional(i, j).transpose()
    }
}

/// Complete Peter-Weyl data of a finite quantum group.
#[derive(Debug, Clone)]
pub struct PeterWeylData {
    pub blocks: Vec<IrrepBlock>,
    pub trivial_index: usize,
    /// Columns are the `u^a_ij` in block-flat order; invertibility of this
    /// matrix is the linear-basis property of the matrix coefficients.
    pub basis_change: CMatrix,
    pub seed: u64,
    /// All `[u^a_ij]` matrices unitary (true for Kac inputs).
    pub unitary: bool,
    pub corep_residual: f64,
    pub pairing_residual: f64,
    pub basis_condition: f64,
}

impl PeterWeylData {
    /// Block sizes in crate order (ascending size, then spectral marker).
    pub fn block_profile(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.n_alpha).collect()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.n_alpha * b.n_alpha).sum()
    }

    /// Rebuilds the data from stored blocks (cache loading) and re-verifies
    /// every invariant: completeness, basis invertibility, duality pairing,
    /// the trivial block, and the corepresentation identity.
    pub fn from_parts(
        g: &FiniteQuantumGroup,
        blocks: Vec<IrrepBlock>,
        seed: u64,
        tol: &ToleranceConfig,
    ) -> Result<PeterWeylData, PeterWeylError> {
        let n = g.dim();
        let total: usize = blocks.iter().map(|b| b.n_alpha * b.n_alpha).sum();
        if total != n {
            return Err(PeterWeylError::InternalInvariant(format!(
                "stored blocks fill dimension {total}, carrier has {n}"
            )));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.alpha != i
                || b.coefficients.len() != b.n_alpha * b.n_alpha
                || b.functionals.len() != b.n_alpha * b.n_alpha
            {
                return Err(PeterWeylError::InternalInvariant(format!(
                    "stored block {i} is malformed"
                )));
            }
            for v in b.coefficients.iter().chain(b.functionals.iter()) {
                if v.rows() != n || v.cols() != 1 {
                    return Err(PeterWeylError::InternalInvariant(format!(
                        "stored block {i} has vectors of wrong shape"
                    )));
                }
            }
        }

        let mut basis_change = CMatrix::zeros(n, n);
        let mut p = CMatrix::zeros(n, n);
        let mut col = 0;
        for b in &blocks {
            for k in 0..b.n_alpha * b.n_alpha {
                basis_change.set_col(col, &b.coefficients[k]);
                for c in 0..n {
                    p[(col, c)] = b.functionals[k][(c, 0)];
                }
                col += 1;
            }
        }
        let svd = numkit::svd(&p)?;
        let smax = svd.sigma.first().copied().unwrap_or(0.0);
        let smin = svd.sigma.last().copied().unwrap_or(0.0);
        if smin <= tol.rank_tol * smax {
            return Err(PeterWeylError::InternalInvariant(
                "stored functionals are not a basis".into(),
            ));
        }
        let pairing_residual = p.mul(&basis_change).distance(&CMatrix::identity(n));
        if pairing_residual > tol.eq_tol.max(1e-10) * 100.0 {
            return Err(PeterWeylError::InternalInvariant(format!(
                "stored pairing fails by {pairing_residual:.3e}"
            )));
        }

        let locate_tol = tol.eq_tol.sqrt().max(1e-7);
        let trivial_index = blocks
            .iter()
            .find(|b| {
                b.n_alpha == 1 && b.coefficients[0].distance(g.carrier().unit()) <= locate_tol
            })
            .map(|b| b.alpha)
            .ok_or(PeterWeylError::TrivialBlockNotFound)?;

        let mut corep_residual: f64 = 0.0;
        for b in &blocks {
            let nb = b.n_alpha;
            for i in 0..nb {
                for j in 0..nb {
                    let lhs = g.comult().mul(b.coefficient(i, j));
                    let mut rhs = CMatrix::zeros(n * n, 1);
                    for s in 0..nb {
                        rhs = rhs.add(&b.coefficient(i, s).kron(b.coefficient(s, j))?);
                    }
                    corep_residual = corep_residual.max(lhs.distance(&rhs));
                }
            }
        }
        if corep_residual > tol.eq_tol.max(1e-10) * 100.0 {
            return Err(PeterWeylError::InternalInvariant(format!(
                "stored corepresentation identity fails by {corep_residual:.3e}"
            )));
        }

        let unitary = unitarity_defect(g, &blocks) <= tol.eq_tol.max(1e-10) * 100.0;
        Ok(PeterWeylData {
            blocks,
            trivial_index,
            basis_change,
            seed,
            unitary,
            corep_residual,
            pairing_residual,
            basis_condition: smax / smin,
        })
    }
}

/// Max defect of row/column unitarity of every `[u^a_ij]` in `M_N (x) A`.
fn unitarity_defect(g: &FiniteQuantumGroup, blocks: &[IrrepBlock]) -> f64 {
    let carrier = g.carrier();
    let n = g.dim();
    let mut defect: f64 = 0.0;
    for b in blocks {
        let nb = b.n_alpha;
        for i in 0..nb {
            for j in 0..nb {
                let mut s1 = CMatrix::zeros(n, 1);
                let mut s2 = CMatrix::zeros(n, 1);
                for s in 0..nb {
                    s1 = s1.add(
                        &carrier
                            .mul_elems(b.coefficient(i, s), &carrier.star_elem(b.coefficient(j, s))),
                    );
                    s2 = s2.add(
                        &carrier
                            .mul_elems(&carrier.star_elem(b.coefficient(s, i)), b.coefficient(s, j)),
                    );
                }
                let expected = if i == j { carrier.unit().clone() } else { CMatrix::zeros(n, 1) };
                defect = defect.max(s1.distance(&expected));
                defect = defect.max(s2.distance(&expected));
            }
        }
    }
    defect
}

/// Computes the Peter-Weyl data: block-decomposes the dual, takes the dual
/// basis of the matrix units as matrix coefficients, locates the trivial
/// corepresentation, and verifies the corepresentation identity
/// `Delta(u_ij) = sum_s u_is (x) u_sj` on every block.
pub fn peter_weyl(
    g: &FiniteQuantumGroup,
    tol: &ToleranceConfig,
    seed: u64,
) -> Result<PeterWeylData, PeterWeylError> {
    let n = g.dim();
    let dual = dual_algebra(g, tol)?;
    let systems = block_decompose(&dual, tol, seed)?;

    // Rows of `p` are the functionals; the dual basis is its inverse.
    let mut p = CMatrix::zeros(n, n);
    let mut row = 0;
    for sys in &systems {
        for unit in &sys.units {
            for c in 0..n {
                p[(row, c)] = unit[(c, 0)];
            }
            row += 1;
        }
    }
    let svd = numkit::svd(&p)?;
    let smin = svd.sigma.last().copied().unwrap_or(0.0);
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    if smin <= tol.rank_tol * smax {
        return Err(PeterWeylError::InternalInvariant(
            "matrix units do not form a basis of the dual".into(),
        ));
    }
    let basis_change = p.inverse()?;
    let pairing_residual = p.mul(&basis_change).distance(&CMatrix::identity(n));

    let mut blocks = Vec::with_capacity(systems.len());
    let mut col = 0;
    for (alpha, sys) in systems.iter().enumerate() {
        let nb = sys.size;
        let mut coefficients = Vec::with_capacity(nb * nb);
        for _ in 0..nb * nb {
            coefficients.push(basis_change.col(col));
            col += 1;
        }
        blocks.push(IrrepBlock { alpha, n_alpha: nb, coefficients, functionals: sys.units.clone() });
    }

    // Trivial block: the unique 1-dimensional block whose coefficient is the
    // unit of the carrier.
    let locate_tol = tol.eq_tol.sqrt().max(1e-7);
    let mut trivial_index = None;
    for b in &blocks {
        if b.n_alpha == 1 && b.coefficients[0].distance(g.carrier().unit()) <= locate_tol {
            if trivial_index.is_some() {
                return Err(PeterWeylError::TrivialBlockNotFound);
            }
            trivial_index = Some(b.alpha);
        }
    }
    let trivial_index = trivial_index.ok_or(PeterWeylError::TrivialBlockNotFound)?;

    // Corepresentation identity Delta(u_ij) = sum_s u_is (x) u_sj.
    let mut corep_residual: f64 = 0.0;
    for b in &blocks {
        let nb = b.n_alpha;
        for i in 0..nb {
            for j in 0..nb {
                let lhs = g.comult().mul(b.coefficient(i, j));
                let mut rhs = CMatrix::zeros(n * n, 1);
                for s in 0..nb {
                    rhs = rhs.add(&b.coefficient(i, s).kron(b.coefficient(s, j))?);
                }
                corep_residual = corep_residual.max(lhs.distance(&rhs));
            }
        }
    }
    if corep_residual > tol.eq_tol.max(1e-10) * 100.0 {
        return Err(PeterWeylError::InternalInvariant(format!(
            "corepresentation identity fails by {corep_residual:.3e}"
        )));
    }

    // Unitarity of each [u_ij] in M_N (x) A; guaranteed for Kac inputs.
    let unitary = unitarity_defect(g, &blocks) <= tol.eq_tol.max(1e-10) * 100.0;

    Ok(PeterWeylData {
        blocks,
        trivial_index,
        basis_change,
        seed,
        unitary,
        corep_residual,
        pairing_residual,
        basis_condition: smax / smin,
    })
}

/// Schur orthogonality `h(u^a_ij (u^b_kl)*) = delta delta delta / N_a`
/// (Kac case).
#[derive(Debug, Clone)]
pub struct OrthogonalityReport {
    pub max_violation: f64,
}

impl OrthogonalityReport {
    pub fn pass(&self, tol: &ToleranceConfig) -> bool {
        self.max_violation <= tol.eq_tol
    }
}

pub fn orthogonality_check(
    g: &FiniteQuantumGroup,
    pw: &PeterWeylData,
    h: &HaarState,
    _tol: &ToleranceConfig,
) -> OrthogonalityReport {
    let carrier = g.carrier();
    let mut worst: f64 = 0.0;
    for a in &pw.blocks {
        for b in &pw.blocks {
            for i in 0..a.n_alpha {
                for j in 0..a.n_alpha {
                    for k in 0..b.n_alpha {
                        for l in 0..b.n_alpha {
                            let prod = carrier
                                .mul_elems(a.coefficient(i, j), &carrier.star_elem(b.coefficient(k, l)));
                            let value = h.apply(&prod);
                            let expected = if a.alpha == b.alpha && i == k && j == l {
                                Complex64::new(1.0 / a.n_alpha as f64, 0.0)
                            } else {
                                Complex64::ZERO
                            };
                            worst = worst.max((value - expected).norm());
                        }
                    }
                }
            }
        }
    }
    OrthogonalityReport { max_violation: worst }
}
