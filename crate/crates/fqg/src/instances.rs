//! Builders for concrete finite quantum groups and coactions.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraMorphism, StarAlgebra};
use crate::coaction::{Coaction, CoactionError};
use crate::numkit::{CMatrix, NumError, ToleranceConfig};
use crate::qgroup::{FiniteQuantumGroup, QGroupError};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("table is not a right group action: {0}")]
    NotAnAction(String),
    #[error("assignment is not a group grading: {0}")]
    NotAGrading(String),
    #[error("builder output failed validation: {0}")]
    Construction(String),
    #[error(transparent)]
    QGroup(#[from] QGroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coaction(#[from] CoactionError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone)]
pub struct FiniteGroupPresentation {
    order: usize,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroupPresentation {
    /// Validates the table (Latin square, identity, inverses, associativity)
    /// and derives identity and inverses.
    pub fn new(cayley: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        let n = cayley.len();
        if n == 0 {
            return Err(InstanceError::InvalidGroupTable("empty table".into()));
        }
        for (i, row) in cayley.iter().enumerate() {
            if row.len() != n {
                return Err(InstanceError::InvalidGroupTable(format!(
                    "row {i} has length {} != {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(InstanceError::InvalidGroupTable(format!(
                        "entry {v} out of range in row {i}"
                    )));
                }
            }
        }
        // Latin square
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if seen_row[cayley[i][j]] {
                    return Err(InstanceError::InvalidGroupTable(format!(
                        "row {i} repeats element {}",
                        cayley[i][j]
                    )));
                }
                seen_row[cayley[i][j]] = true;
                if seen_col[cayley[j][i]] {
                    return Err(InstanceError::InvalidGroupTable(format!(
                        "column {i} repeats element {}",
                        cayley[j][i]
                    )));
                }
                seen_col[cayley[j][i]] = true;
            }
        }
        // identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| cayley[e][g] == g && cayley[g][e] == g))
            .ok_or_else(|| InstanceError::InvalidGroupTable("no identity element".into()))?;
        // inverses
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| cayley[g][h] == identity && cayley[h][g] == identity)
                .ok_or_else(|| {
                    InstanceError::InvalidGroupTable(format!("element {g} has no inverse"))
                })?;
        }
        // associativity
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(InstanceError::InvalidGroupTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(Self { order: n, cayley, identity, inverse, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn cayley_table(&self) -> &Vec<Vec<usize>> {
        &self.cayley
    }

    pub fn cyclic(n: usize) -> Self {
        let cayley = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::new(cayley).expect("cyclic group table is valid")
    }

    /// Dihedral group of order `2n`, elements `r^a s^b` at index `a + n*b`.
    pub fn dihedral(n: usize) -> Self {
        let order = 2 * n;
        let mut cayley = vec![vec![0; order]; order];
        for a in 0..n {
            for b in 0..2 {
                for c in 0..n {
                    for d in 0..2 {
                        // (r^a s^b)(r^c s^d) = r^{a + (-1)^b c} s^{b+d}
                        let shift = if b == 0 { c } else { (n - c) % n };
                        let e = (a + shift) % n;
                        let f = (b + d) % 2;
                        cayley[a + n * b][c + n * d] = e + n * f;
                    }
                }
            }
        }
        Self::new(cayley).expect("dihedral group table is valid")
    }

    /// Symmetric group S_n with permutations enumerated lexicographically;
    /// the product `p*q` acts by `x -> p(q(x))`.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n), "symmetric(n) supported for 1 <= n <= 5");
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let order = perms.len();
        let mut cayley = vec![vec![0; order]; order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                cayley[i][j] = index(&composed);
            }
        }
        Self::new(cayley).expect("symmetric group table is valid")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// `C(G)`: functions on a finite group with `Delta f(g,h) = f(gh)`.
pub fn function_algebra(gp: &FiniteGroupPresentation) -> Result<FiniteQuantumGroup, InstanceError> {
    let n = gp.order();
    let mut carrier = StarAlgebra::pointwise(n);
    if let Some(labels) = gp.labels() {
        carrier = StarAlgebra::new(
            n,
            carrier.mult_map().clone(),
            carrier.unit().clone(),
            carrier.star_matrix().clone(),
            Some(labels.to_vec()),
        )?;
    }
    let mut comult = CMatrix::zeros(n * n, n);
    for h in 0..n {
        for k in 0..n {
            comult[(h * n + k, gp.mul(h, k))] = Complex64::ONE;
        }
    }
    let mut counit = CMatrix::zeros(1, n);
    counit[(0, gp.identity())] = Complex64::ONE;
    let mut antipode = CMatrix::zeros(n, n);
    for g in 0..n {
        antipode[(gp.inv(g), g)] = Complex64::ONE;
    }
    let g = FiniteQuantumGroup::new(Arc::new(carrier), comult, counit, antipode)?;
    validate_builder_output(&g, "function_algebra")?;
    Ok(g)
}

/// `C[G]`: the group algebra with convolution product and `Delta g = g (x) g`.
pub fn group_algebra(gp: &FiniteGroupPresentation) -> Result<FiniteQuantumGroup, InstanceError> {
    let n = gp.order();
    let mut mult = CMatrix::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            mult[(gp.mul(i, j), i * n + j)] = Complex64::ONE;
        }
    }
    let unit = CMatrix::basis_vec(n, gp.identity());
    let mut star = CMatrix::zeros(n, n);
    for g in 0..n {
        star[(gp.inv(g), g)] = Complex64::ONE;
    }
    let carrier = StarAlgebra::new(n, mult, unit, star, gp.labels().map(|l| l.to_vec()))?;
    let mut comult = CMatrix::zeros(n * n, n);
    for g in 0..n {
        comult[(g * n + g, g)] = Complex64::ONE;
    }
    let counit = CMatrix::from_fn(1, n, |_, _| Complex64::ONE);
    let mut antipode = CMatrix::zeros(n, n);
    for g in 0..n {
        antipode[(gp.inv(g), g)] = Complex64::ONE;
    }
    let g = FiniteQuantumGroup::new(Arc::new(carrier), comult, counit, antipode)?;
    validate_builder_output(&g, "group_algebra")?;
    Ok(g)
}

/// The 8-dimensional Kac-Paljutkin quantum group on the carrier
/// `C^4 (+) M_2`.
///
/// Built as the bismash product `C(Z_2) # C[Z_2 x Z_2]` where the nonzero
/// grade acts on `Z_2 x Z_2` by swapping the factors, the M_2 block carries
/// the Pauli cocycle `sigma((a,b),(c,d)) = (-1)^{bc}`, and the coproduct is
/// corrected by the dual cocycle `tau(a,b) = (-1)^{ab}`; the result is then
/// transported onto the matrix-unit basis of `C^4 (+) M_2`. The axioms are
/// re-verified numerically rather than trusted.
pub fn kac_paljutkin() -> Result<FiniteQuantumGroup, InstanceError> {
    let tol = ToleranceConfig::default();
    // x-basis: index gamma*4 + (2a + b) for gamma in Z_2, f = (a,b) in Z_2^2.
    let idx = |gamma: usize, a: usize, b: usize| gamma * 4 + 2 * a + b;
    let f_of = |fi: usize| (fi / 2, fi % 2);
    let sigma = |gamma: usize, f: (usize, usize), g: (usize, usize)| -> f64 {
        if gamma == 0 {
            1.0
        } else if f.1 * g.0 % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    };
    let tau = |f: (usize, usize)| -> f64 { if f.0 * f.1 % 2 == 1 { -1.0 } else { 1.0 } };
    let swap = |f: (usize, usize)| (f.1, f.0);

    // Multiplication, unit, star in the x-basis.
    let mut mult_x = CMatrix::zeros(8, 64);
    for gamma in 0..2 {
        for fi in 0..4 {
            for gi in 0..4 {
                let f = f_of(fi);
                let g = f_of(gi);
                let sum = 2 * ((f.0 + g.0) % 2) + (f.1 + g.1) % 2;
                let row = idx(gamma, sum / 2, sum % 2);
                let col = idx(gamma, f.0, f.1) * 8 + idx(gamma, g.0, g.1);
                mult_x[(row, col)] = Complex64::new(sigma(gamma, f, g), 0.0);
            }
        }
    }
    let mut unit_x = CMatrix::zeros(8, 1);
    unit_x[(idx(0, 0, 0), 0)] = Complex64::ONE;
    unit_x[(idx(1, 0, 0), 0)] = Complex64::ONE;
    let mut star_x = CMatrix::zeros(8, 8);
    for gamma in 0..2 {
        for fi in 0..4 {
            let f = f_of(fi);
            let i = idx(gamma, f.0, f.1);
            star_x[(i, i)] = Complex64::new(sigma(gamma, f, f), 0.0);
        }
    }

    // Coproduct, counit, antipode in the x-basis.
    let mut comult_x = CMatrix::zeros(64, 8);
    for gamma in 0..2 {
        for fi in 0..4 {
            let f = f_of(fi);
            let col = idx(gamma, f.0, f.1);
            for g1 in 0..2usize {
                let g2 = (gamma + 2 - g1) % 2;
                let t = if g1 == 1 && g2 == 1 { tau(f) } else { 1.0 };
                let f_left = if g2 == 1 { swap(f) } else { f };
                let row = idx(g1, f_left.0, f_left.1) * 8 + idx(g2, f.0, f.1);
                comult_x[(row, col)] += Complex64::new(t, 0.0);
            }
        }
    }
    let mut counit_x = CMatrix::zeros(1, 8);
    for fi in 0..4 {
        let f = f_of(fi);
        counit_x[(0, idx(0, f.0, f.1))] = Complex64::ONE;
    }
    let mut antipode_x = CMatrix::zeros(8, 8);
    for gamma in 0..2 {
        for fi in 0..4 {
            let f = f_of(fi);
            let target = if gamma == 1 { swap(f) } else { f };
            antipode_x[(idx(gamma, target.0, target.1), idx(gamma, f.0, f.1))] = Complex64::ONE;
        }
    }

    // Change of basis to C^4 (+) M_2: characters on the commutative block,
    // Pauli matrices (I, X, Z, XZ) on the M_2 block.
    let chi = |u: usize, v: usize, f: (usize, usize)| -> f64 {
        if (u * f.0 + v * f.1) % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    };
    let pauli = |f: (usize, usize)| -> [f64; 4] {
        match f {
            (0, 0) => [1.0, 0.0, 0.0, 1.0],
            (1, 0) => [0.0, 1.0, 1.0, 0.0],
            (0, 1) => [1.0, 0.0, 0.0, -1.0],
            (1, 1) => [0.0, -1.0, 1.0, 0.0],
            _ => unreachable!(),
        }
    };
    let mut phi = CMatrix::zeros(8, 8);
    for fi in 0..4 {
        let f = f_of(fi);
        let characters = [(0, 0), (0, 1), (1, 0), (1, 1)];
        for (row, &(u, v)) in characters.iter().enumerate() {
            phi[(row, idx(0, f.0, f.1))] = Complex64::new(chi(u, v, f), 0.0);
        }
        let m = pauli(f);
        for (k, &val) in m.iter().enumerate() {
            phi[(4 + k, idx(1, f.0, f.1))] = Complex64::new(val, 0.0);
        }
    }
    let phi_inv = phi.inverse().map_err(InstanceError::Num)?;

    let carrier = StarAlgebra::direct_sum(&StarAlgebra::pointwise(4), &StarAlgebra::matrix_units(2));
    let labels: Vec<String> =
        ["e1", "e2", "e3", "e4", "a11", "a12", "a21", "a22"].iter().map(|s| s.to_string()).collect();
    let carrier = StarAlgebra::new(
        8,
        carrier.mult_map().clone(),
        carrier.unit().clone(),
        carrier.star_matrix().clone(),
        Some(labels),
    )?;

    // The transport must take the bismash structure constants exactly onto
    // the direct-sum carrier; a mismatch means a transcription bug.
    let phi_kron = phi.kron(&phi)?;
    let transported_mult = phi.mul(&mult_x).mul(&phi_kron.inverse().map_err(InstanceError::Num)?);
    if transported_mult.distance(carrier.mult_map()) > 1e-10 {
        return Err(InstanceError::Construction(
            "Kac-Paljutkin basis change does not match the C^4 (+) M_2 carrier".into(),
        ));
    }
    if phi.mul(&unit_x).distance(carrier.unit()) > 1e-10 {
        return Err(InstanceError::Construction("Kac-Paljutkin unit transport mismatch".into()));
    }
    let transported_star = phi.mul(&star_x).mul(&phi_inv.conj());
    if transported_star.distance(carrier.star_matrix()) > 1e-10 {
        return Err(InstanceError::Construction("Kac-Paljutkin star transport mismatch".into()));
    }

    let comult = phi_kron.mul(&comult_x).mul(&phi_inv);
    let counit = counit_x.mul(&phi_inv);
    let antipode = phi.mul(&antipode_x).mul(&phi_inv);
    let g = FiniteQuantumGroup::new(Arc::new(carrier), comult, counit, antipode)?;
    validate_builder_output(&g, "kac_paljutkin")?;
    if g.is_commutative(&tol) || g.is_cocommutative(&tol) {
        return Err(InstanceError::Construction(
            "Kac-Paljutkin must be neither commutative nor cocommutative".into(),
        ));
    }
    Ok(g)
}

fn validate_builder_output(g: &FiniteQuantumGroup, name: &str) -> Result<(), InstanceError> {
    let tol = ToleranceConfig::default();
    let report = g.verify(&tol)?;
    if !report.pass(&tol) {
        return Err(InstanceError::Construction(format!(
            "{name} output fails Hopf axioms by {:.3e}",
            report.max_violation()
        )));
    }
    Ok(())
}

/// The translation coaction `delta = Delta` of `G` on its own carrier.
pub fn translation_action(
    g: &Arc<FiniteQuantumGroup>,
    tol: &ToleranceConfig,
) -> Result<Coaction, InstanceError> {
    Ok(Coaction::new(
        Arc::clone(g.carrier()),
        Arc::clone(g),
        g.comult().clone(),
        tol,
    )?)
}

/// The trivial coaction `b -> b (x) 1`.
pub fn trivial_action(
    g: &Arc<FiniteQuantumGroup>,
    b: &Arc<StarAlgebra>,
    tol: &ToleranceConfig,
) -> Result<Coaction, InstanceError> {
    let delta = CMatrix::identity(b.dim()).kron(g.carrier().unit())?;
    Ok(Coaction::new(Arc::clone(b), Arc::clone(g), delta, tol)?)
}

/// Coaction of `C(G)` on `C(X)` from a right action table
/// (`action[x][g] = x.g`): `delta(f)(x, g) = f(x.g)`.
pub fn gset_action(
    gp: &FiniteGroupPresentation,
    action: &[Vec<usize>],
    tol: &ToleranceConfig,
) -> Result<Coaction, InstanceError> {
    let ng = gp.order();
    let nx = action.len();
    if nx == 0 {
        return Err(InstanceError::NotAnAction("empty point set".into()));
    }
    for (x, row) in action.iter().enumerate() {
        if row.len() != ng {
            return Err(InstanceError::NotAnAction(format!(
                "row {x} has length {} != group order {ng}",
                row.len()
            )));
        }
        for &y in row {
            if y >= nx {
                return Err(InstanceError::NotAnAction(format!("point {y} out of range")));
            }
        }
        if row[gp.identity()] != x {
            return Err(InstanceError::NotAnAction(format!("identity moves point {x}")));
        }
    }
    for x in 0..nx {
        for g in 0..ng {
            for h in 0..ng {
                if action[action[x][g]][h] != action[x][gp.mul(g, h)] {
                    return Err(InstanceError::NotAnAction(format!(
                        "compatibility fails at (x={x}, g={g}, h={h})"
                    )));
                }
            }
        }
    }
    let qg = Arc::new(function_algebra(gp)?);
    let b = Arc::new(StarAlgebra::pointwise(nx));
    let mut delta = CMatrix::zeros(nx * ng, nx);
    for y in 0..nx {
        for g in 0..ng {
            delta[(y * ng + g, action[y][g])] = Complex64::ONE;
        }
    }
    Ok(Coaction::new(b, qg, delta, tol)?)
}

/// Coaction of the group algebra `C[G]` on a `G`-graded algebra `B`:
/// `delta(b) = b (x) g` for `b` of grade `g`.
pub fn grading_coaction(
    gp: &FiniteGroupPresentation,
    b: &Arc<StarAlgebra>,
    grading: &[usize],
    tol: &ToleranceConfig,
) -> Result<Coaction, InstanceError> {
    let n = b.dim();
    let ng = gp.order();
    if grading.len() != n {
        return Err(InstanceError::NotAGrading(format!(
            "grading has {} entries for a dimension-{n} algebra",
            grading.len()
        )));
    }
    if grading.iter().any(|&g| g >= ng) {
        return Err(InstanceError::NotAGrading("grade out of range".into()));
    }
    let eq = tol.eq_tol;
    // products respect grades
    for i in 0..n {
        for j in 0..n {
            let target = gp.mul(grading[i], grading[j]);
            let col = b.mult_map().col(i * n + j);
            for k in 0..n {
                if grading[k] != target && col[(k, 0)].norm() > eq {
                    return Err(InstanceError::NotAGrading(format!(
                        "b_{i} b_{j} leaks into grade {} at coordinate {k}",
                        grading[k]
                    )));
                }
            }
        }
    }
    // unit sits in the identity grade
    for (k, &grade) in grading.iter().enumerate() {
        if grade != gp.identity() && b.unit()[(k, 0)].norm() > eq {
            return Err(InstanceError::NotAGrading("unit has off-identity grade components".into()));
        }
    }
    // star maps grade g to grade g^{-1}
    for i in 0..n {
        let si = b.star_elem(&CMatrix::basis_vec(n, i));
        let target = gp.inv(grading[i]);
        for k in 0..n {
            if grading[k] != target && si[(k, 0)].norm() > eq {
                return Err(InstanceError::NotAGrading(format!(
                    "star of b_{i} leaks out of grade {target}"
                )));
            }
        }
    }
    let qg = Arc::new(group_algebra(gp)?);
    let mut delta = CMatrix::zeros(n * ng, n);
    for i in 0..n {
        delta[(i * ng + grading[i], i)] = Complex64::ONE;
    }
    Ok(Coaction::new(Arc::clone(b), qg, delta, tol)?)
}

/// The canonical weak coaction `theta(x, y) = (x, x) (x) 1` on `C^2`:
/// coassociative with one-dimensional kernel, not counital, not dense.
pub fn weak_theta_on_c2(
    g: &Arc<FiniteQuantumGroup>,
    tol: &ToleranceConfig,
) -> Result<Coaction, InstanceError> {
    let b = Arc::new(StarAlgebra::pointwise(2));
    let na = g.dim();
    let mut delta = CMatrix::zeros(2 * na, 2);
    let u = g.carrier().unit();
    for k in 0..na {
        delta[(k, 0)] = u[(k, 0)];
        delta[(na + k, 0)] = u[(k, 0)];
    }
    Ok(Coaction::new(b, Arc::clone(g), delta, tol)?)
}

/// The restriction morphism `C(S3) -> C(Z2)` along the subgroup
/// `{e, (12)}`, together with both quantum groups. Test fixture for the
/// quantum-subgroup machinery.
pub fn s3_to_z2_function_quotient(
) -> Result<(FiniteQuantumGroup, FiniteQuantumGroup, AlgebraMorphism), InstanceError> {
    let s3 = FiniteGroupPresentation::symmetric(3);
    let z2 = FiniteGroupPresentation::cyclic(2);
    let g = function_algebra(&s3)?;
    let g2 = function_algebra(&z2)?;
    // lexicographic permutation order: identity [0,1,2] is 0, (12) = [1,0,2] is 2
    let subgroup = [0usize, 2usize];
    let mut map = CMatrix::zeros(2, 6);
    for (i, &h) in subgroup.iter().enumerate() {
        map[(i, h)] = Complex64::ONE;
    }
    let pi = AlgebraMorphism::new(Arc::clone(g.carrier()), Arc::clone(g2.carrier()), map)?;
    Ok((g, g2, pi))
}
