//! Shared instance generators for the integration suites: the built-in
//! quantum groups, randomized dense actions, and randomized inflated weak
//! coactions with prescribed kernel dimensions.

use std::sync::Arc;

use num_complex::Complex64;

use fqg::algebra::{AlgebraMorphism, StarAlgebra};
use fqg::coaction::Coaction;
use fqg::instances::{self, FiniteGroupPresentation};
use fqg::numkit::{CMatrix, SplitMix64, ToleranceConfig};
use fqg::peterweyl::{peter_weyl, PeterWeylData};
use fqg::qgroup::FiniteQuantumGroup;
use fqg::reduction::{inflate, Inflation};

pub fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// The five built-in finite quantum groups of the acceptance suite, with
/// names.
pub fn builtin_groups() -> Vec<(&'static str, Arc<FiniteQuantumGroup>)> {
    vec![
        (
            "C(Z2)",
            Arc::new(instances::function_algebra(&FiniteGroupPresentation::cyclic(2)).unwrap()),
        ),
        (
            "C(S3)",
            Arc::new(instances::function_algebra(&FiniteGroupPresentation::symmetric(3)).unwrap()),
        ),
        (
            "C(D4)",
            Arc::new(instances::function_algebra(&FiniteGroupPresentation::dihedral(4)).unwrap()),
        ),
        (
            "C[S3]",
            Arc::new(instances::group_algebra(&FiniteGroupPresentation::symmetric(3)).unwrap()),
        ),
        ("Kac-Paljutkin", Arc::new(instances::kac_paljutkin().unwrap())),
    ]
}

/// Expected corepresentation block profiles (sorted ascending) for
/// [`builtin_groups`], in the same order.
pub fn builtin_profiles() -> Vec<Vec<usize>> {
    vec![
        vec![1, 1],
        vec![1, 1, 2],
        vec![1, 1, 1, 1, 2],
        vec![1; 6],
        vec![1, 1, 1, 1, 2],
    ]
}

/// Unital *-characters (one-dimensional representations) of the carrier of
/// each inflation-target group, as functional rows.
fn characters_of(name: &str, g: &FiniteQuantumGroup) -> Vec<CMatrix> {
    let chars: Vec<CMatrix> = match name {
        // C(S3): evaluations at the six points
        "C(S3)" => (0..6).map(|i| CMatrix::basis_vec(6, i).transpose()).collect(),
        // C[S3]: trivial and sign characters of S3 (lexicographic perms)
        "C[S3]" => {
            let ones = CMatrix::from_fn(1, 6, |_, _| Complex64::ONE);
            let signs = [1.0, -1.0, -1.0, 1.0, 1.0, -1.0];
            let sign_row = CMatrix::from_fn(1, 6, |_, j| Complex64::new(signs[j], 0.0));
            vec![ones, sign_row]
        }
        // Kac-Paljutkin: evaluations on the four one-dimensional summands
        "Kac-Paljutkin" => (0..4).map(|i| CMatrix::basis_vec(8, i).transpose()).collect(),
        _ => panic!("no character table registered for {name}"),
    };
    for row in &chars {
        assert_eq!(row.rows(), 1);
        assert_eq!(row.cols(), g.dim());
    }
    chars
}

pub struct InflationCase {
    pub label: String,
    pub group: Arc<FiniteQuantumGroup>,
    pub pw: PeterWeylData,
    pub inflation: Inflation,
    pub expected_kernel: usize,
}

/// Randomized inflated weak coactions with kernel dimensions 1 to 4 over
/// C(S3), C[S3], and Kac-Paljutkin: the target is the translation action,
/// `B = B' (+) C^k`, the section pastes `k` seeded characters of `B'`.
pub fn random_inflations(seed: u64, count: usize) -> Vec<InflationCase> {
    let tol = tol();
    let mut rng = SplitMix64::new(seed);
    let groups: Vec<(&str, Arc<FiniteQuantumGroup>)> = builtin_groups()
        .into_iter()
        .filter(|(name, _)| matches!(*name, "C(S3)" | "C[S3]" | "Kac-Paljutkin"))
        .collect();
    let pws: Vec<PeterWeylData> =
        groups.iter().map(|(_, g)| peter_weyl(g, &tol, seed).unwrap()).collect();

    let mut out = Vec::with_capacity(count);
    for case in 0..count {
        let which = case % groups.len();
        let (name, g) = &groups[which];
        let target = instances::translation_action(g, &tol).unwrap();
        let b_prime = Arc::clone(target.algebra());
        let n_prime = b_prime.dim();
        // kernel dimensions cycle through 1..=4; the section stays seeded
        let k = 1 + (case % 4);
        let chars = characters_of(name, g);

        let b = Arc::new(StarAlgebra::direct_sum(&b_prime, &StarAlgebra::pointwise(k)));
        let mut q_map = CMatrix::zeros(n_prime, n_prime + k);
        for i in 0..n_prime {
            q_map[(i, i)] = Complex64::ONE;
        }
        let mut s_map = CMatrix::zeros(n_prime + k, n_prime);
        for i in 0..n_prime {
            s_map[(i, i)] = Complex64::ONE;
        }
        for extra in 0..k {
            let chi = &chars[rng.next_index(chars.len())];
            for j in 0..n_prime {
                s_map[(n_prime + extra, j)] = chi[(0, j)];
            }
        }
        let q = AlgebraMorphism::new(Arc::clone(&b), Arc::clone(&b_prime), q_map).unwrap();
        let s = AlgebraMorphism::new(Arc::clone(&b_prime), Arc::clone(&b), s_map).unwrap();
        let inflation = inflate(&target, &q, &s, &tol).unwrap();
        out.push(InflationCase {
            label: format!("inflation #{case} over {name} (k = {k})"),
            group: Arc::clone(g),
            pw: pws[which].clone(),
            inflation,
            expected_kernel: k,
        });
    }
    out
}

/// A seeded random permutation of `0..n`.
fn random_permutation(rng: &mut SplitMix64, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_index(i + 1);
        perm.swap(i, j);
    }
    perm
}

/// Randomized dense (true) actions: translation actions of the built-ins,
/// relabeled G-set actions, and matrix-algebra gradings.
pub fn random_dense_actions(seed: u64) -> Vec<(String, Coaction)> {
    let tol = tol();
    let mut rng = SplitMix64::new(seed);
    let mut out: Vec<(String, Coaction)> = Vec::new();

    for (name, g) in builtin_groups() {
        out.push((format!("translation on {name}"), instances::translation_action(&g, &tol).unwrap()));
    }

    // G-set actions: right translation plus fixed points, with the point
    // set relabeled by a seeded permutation.
    for gp in [
        FiniteGroupPresentation::cyclic(2),
        FiniteGroupPresentation::cyclic(3),
        FiniteGroupPresentation::symmetric(3),
        FiniteGroupPresentation::dihedral(4),
    ] {
        let order = gp.order();
        for fixed in [0usize, 2usize] {
            let nx = order + fixed;
            let mut table: Vec<Vec<usize>> =
                (0..order).map(|x| (0..order).map(|g| gp.mul(x, g)).collect()).collect();
            table.extend((order..nx).map(|x| vec![x; order]));
            let perm = random_permutation(&mut rng, nx);
            let mut inv = vec![0usize; nx];
            for (i, &p) in perm.iter().enumerate() {
                inv[p] = i;
            }
            let relabeled: Vec<Vec<usize>> = (0..nx)
                .map(|x| (0..order).map(|g| perm[table[inv[x]][g]]).collect())
                .collect();
            let c = instances::gset_action(&gp, &relabeled, &tol).unwrap();
            out.push((format!("G-set of order-{order} group on {nx} points"), c));
        }
    }

    // Gradings: M_N graded by Z_N (deg e_ij = j - i), the Pauli grading of
    // M_2 by the Klein group, and C[G] graded by itself.
    for n in [2usize, 3usize] {
        let gp = FiniteGroupPresentation::cyclic(n);
        let b = Arc::new(StarAlgebra::matrix_units(n));
        let grading: Vec<usize> =
            (0..n * n).map(|idx| ((n + idx % n) - idx / n) % n).collect();
        let c = instances::grading_coaction(&gp, &b, &grading, &tol).unwrap();
        out.push((format!("Z{n}-grading of M{n}"), c));
    }
    {
        // Pauli grading: I, X, Z, XZ have Klein-group degrees; in matrix
        // units the grading is only available after a change of basis, so
        // grade M_2 (+) M_2 diagonally by Z2 instead for a non-simple B.
        let gp = FiniteGroupPresentation::cyclic(2);
        let m2 = StarAlgebra::matrix_units(2);
        let b = Arc::new(StarAlgebra::direct_sum(&m2, &m2));
        let grading = vec![0, 1, 1, 0, 0, 1, 1, 0];
        let c = instances::grading_coaction(&gp, &b, &grading, &tol).unwrap();
        out.push(("Z2-grading of M2 (+) M2".to_string(), c));
    }
    for gp in [FiniteGroupPresentation::cyclic(3), FiniteGroupPresentation::symmetric(3)] {
        let g = Arc::new(instances::group_algebra(&gp).unwrap());
        let b = Arc::clone(g.carrier());
        let grading: Vec<usize> = (0..gp.order()).collect();
        let c = instances::grading_coaction(&gp, &b, &grading, &tol).unwrap();
        out.push((format!("C[G] of order {} graded by itself", gp.order()), c));
    }

    out
}
