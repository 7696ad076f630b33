//! Jacobi-type decompositions: one-sided SVD and Hermitian eigensolver.
//!
//! Cyclic Jacobi is slow past a few hundred rows but unconditionally robust
//! at the dimensions this crate targets, and keeps the crate free of
//! LAPACK-style dependencies.

use num_complex::Complex64;

use super::{CMatrix, NumError};

const MAX_SWEEPS: usize = 64;
const CONV_EPS: f64 = 1e-14;

/// Thin-ish SVD: `m = u * diag(sigma) * v^H`, `sigma` sorted descending,
/// `v` unitary `n x n`, `u` is `m x n` with columns for negligible singular
/// values zeroed.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

/// One-sided Jacobi SVD.
pub fn svd(m: &CMatrix) -> Result<Svd, NumError> {
    m.check_finite()?;
    if m.is_empty() {
        return Err(NumError::InvalidMatrix("svd of empty matrix".into()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut b = m.clone();
    let mut v = CMatrix::identity(cols);

    // Columns below this squared-norm floor are numerically zero; rotating
    // them against each other only shuffles roundoff residue.
    let scale = m.max_abs().max(1e-300) * (rows as f64).sqrt();
    let floor = (1e-15 * scale) * (1e-15 * scale);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (alpha, beta, gamma) = column_gram(&b, p, q);
                if alpha <= floor || beta <= floor {
                    continue;
                }
                if gamma.norm() <= CONV_EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = jacobi_rotation(alpha, beta, gamma);
                apply_right_rotation(&mut b, p, q, c, s, phase);
                apply_right_rotation(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        // A final scan decides whether the leftover coupling matters.
        let mut worst: f64 = 0.0;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (alpha, beta, gamma) = column_gram(&b, p, q);
                if alpha > floor && beta > floor {
                    worst = worst.max(gamma.norm() / (alpha * beta).sqrt());
                }
            }
        }
        if worst > 1e-10 {
            return Err(NumError::ConvergenceFailure(format!(
                "one-sided Jacobi stalled with column coupling {worst:.3e}"
            )));
        }
    }

    // Column norms are the singular values; sort descending.
    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| b[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&a, &bj| norms[bj].partial_cmp(&norms[a]).unwrap().then(a.cmp(&bj)));

    let mut u = CMatrix::zeros(rows, cols);
    let mut v_sorted = CMatrix::zeros(cols, cols);
    let mut sigma = Vec::with_capacity(cols);
    for (new_j, &old_j) in order.iter().enumerate() {
        let s = norms[old_j];
        sigma.push(s);
        if s > 1e-300 {
            for i in 0..rows {
                u[(i, new_j)] = b[(i, old_j)] / s;
            }
        }
        for i in 0..cols {
            v_sorted[(i, new_j)] = v[(i, old_j)];
        }
    }
    Ok(Svd { u, sigma, v: v_sorted })
}

fn column_gram(b: &CMatrix, p: usize, q: usize) -> (f64, f64, Complex64) {
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut gamma = Complex64::ZERO;
    for i in 0..b.rows() {
        let bp = b[(i, p)];
        let bq = b[(i, q)];
        alpha += bp.norm_sqr();
        beta += bq.norm_sqr();
        gamma += bp.conj() * bq;
    }
    (alpha, beta, gamma)
}

/// Rotation diagonalizing the Hermitian 2x2 Gram block
/// `[[alpha, gamma], [conj(gamma), beta]]`.
fn jacobi_rotation(alpha: f64, beta: f64, gamma: Complex64) -> (f64, f64, Complex64) {
    let g = gamma.norm();
    let phase = gamma / g;
    let tau = (beta - alpha) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t, phase)
}

/// Right-multiplies columns (p, q) by
/// `J = [[c, s], [-s*conj(phase), c*conj(phase)]]`.
fn apply_right_rotation(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let pc = phase.conj();
    for i in 0..m.rows() {
        let xp = m[(i, p)];
        let xq = m[(i, q)];
        m[(i, p)] = c * xp - s * pc * xq;
        m[(i, q)] = s * xp + c * pc * xq;
    }
}

/// Hermitian eigendecomposition: `a = q * diag(values) * q^H`,
/// eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Two-sided Jacobi for Hermitian matrices. The input is symmetrized as
/// `(a + a^H)/2`; callers that care check hermiticity beforehand.
pub fn eigh(a: &CMatrix) -> Result<Eigh, NumError> {
    a.check_finite()?;
    if a.rows() != a.cols() {
        return Err(NumError::DimensionMismatch(format!(
            "eigh of non-square {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Err(NumError::InvalidMatrix("eigh of empty matrix".into()));
    }
    let mut h = a.add(&a.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut q = CMatrix::identity(n);
    let scale = h.max_abs().max(1e-300);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for qi in (p + 1)..n {
                let gamma = h[(p, qi)];
                if gamma.norm() <= CONV_EPS * scale {
                    continue;
                }
                rotated = true;
                let alpha = h[(p, p)].re;
                let beta = h[(qi, qi)].re;
                let (c, s, phase) = jacobi_rotation(alpha, beta, gamma);
                apply_right_rotation(&mut h, p, qi, c, s, phase);
                apply_left_rotation(&mut h, p, qi, c, s, phase);
                apply_right_rotation(&mut q, p, qi, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for qi in 0..n {
                if p != qi {
                    off = off.max(h[(p, qi)].norm());
                }
            }
        }
        if off > 1e-10 * scale {
            return Err(NumError::ConvergenceFailure(format!(
                "Hermitian Jacobi stalled with off-diagonal {off:.3e}"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[x].partial_cmp(&diag[y]).unwrap().then(x.cmp(&y)));
    let mut vectors = CMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (new_j, &old_j) in order.iter().enumerate() {
        values.push(diag[old_j]);
        for i in 0..n {
            vectors[(i, new_j)] = q[(i, old_j)];
        }
    }
    Ok(Eigh { values, vectors })
}

/// Left-multiplies rows (p, q) by `J^H`.
fn apply_left_rotation(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    for j in 0..m.cols() {
        let xp = m[(p, j)];
        let xq = m[(q, j)];
        m[(p, j)] = c * xp - s * phase * xq;
        m[(q, j)] = s * xp + c * phase * xq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::SplitMix64;

    fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| rng.next_complex())
    }

    fn reconstruct(svd: &Svd) -> CMatrix {
        let n = svd.sigma.len();
        let mut s = CMatrix::zeros(n, n);
        for (i, &x) in svd.sigma.iter().enumerate() {
            s[(i, i)] = Complex64::new(x, 0.0);
        }
        svd.u.mul(&s).mul(&svd.v.adjoint())
    }

    #[test]
    fn svd_identity() {
        let d = svd(&CMatrix::identity(3)).unwrap();
        assert!(d.sigma.iter().all(|&s| (s - 1.0).abs() < 1e-14));
    }

    #[test]
    fn svd_rank_one_by_hand() {
        // [[1,1],[1,1]] has singular values (2, 0)
        let m = CMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let d = svd(&m).unwrap();
        assert!((d.sigma[0] - 2.0).abs() < 1e-14);
        assert!(d.sigma[1].abs() < 1e-14);
        // null vector is (1,-1)/sqrt(2) up to phase
        let v1 = d.v.col(1);
        let ratio = v1[(0, 0)] + v1[(1, 0)];
        assert!(ratio.norm() < 1e-13);
    }

    #[test]
    fn svd_reconstructs_random_matrices() {
        let mut rng = SplitMix64::new(5);
        for (rows, cols) in [(4, 4), (6, 3), (3, 7), (1, 5), (8, 1)] {
            let m = random_matrix(&mut rng, rows, cols);
            let d = svd(&m).unwrap();
            assert!(reconstruct(&d).approx_eq(&m, 1e-12), "{}x{}", rows, cols);
            // v unitary
            let vtv = d.v.adjoint().mul(&d.v);
            assert!(vtv.approx_eq(&CMatrix::identity(cols), 1e-12));
            // sigma sorted descending
            for w in d.sigma.windows(2) {
                assert!(w[0] >= w[1] - 1e-15);
            }
        }
    }

    #[test]
    fn svd_rejects_nonfinite() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(f64::NAN, 0.0);
        assert!(svd(&m).is_err());
    }

    #[test]
    fn eigh_two_by_two_by_hand() {
        // [[2,1],[1,2]] has eigenvalues 1, 3
        let m = CMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let e = eigh(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-13);
        assert!((e.values[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn eigh_pauli_y() {
        // [[0,-i],[i,0]] has eigenvalues -1, 1
        let m = CMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::ZERO,
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::ZERO,
            ],
        )
        .unwrap();
        let e = eigh(&m).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-13);
        assert!((e.values[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = SplitMix64::new(9);
        for n in [2, 3, 5, 8] {
            let raw = random_matrix(&mut rng, n, n);
            let herm = raw.add(&raw.adjoint()).scale(Complex64::new(0.5, 0.0));
            let e = eigh(&herm).unwrap();
            let mut d = CMatrix::zeros(n, n);
            for (i, &v) in e.values.iter().enumerate() {
                d[(i, i)] = Complex64::new(v, 0.0);
            }
            let back = e.vectors.mul(&d).mul(&e.vectors.adjoint());
            assert!(back.approx_eq(&herm, 1e-12), "n={n}");
            let qtq = e.vectors.adjoint().mul(&e.vectors);
            assert!(qtq.approx_eq(&CMatrix::identity(n), 1e-12));
        }
    }
}
