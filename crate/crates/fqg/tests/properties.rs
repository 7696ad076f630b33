//! Property-based invariants for the numerical core.

use fqg::algebra::StarAlgebra;
use fqg::numkit::{self, CMatrix, Subspace, ToleranceConfig};
use num_complex::Complex64;
use proptest::prelude::*;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec(complex(), rows * cols)
        .prop_map(move |data| CMatrix::from_vec(rows, cols, data).unwrap())
}

fn sized_matrix(max: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn svd_reconstructs(m in sized_matrix(5)) {
        let d = numkit::svd(&m).unwrap();
        let n = m.cols();
        let mut sigma = CMatrix::zeros(n, n);
        for (i, &s) in d.sigma.iter().enumerate() {
            sigma[(i, i)] = Complex64::new(s, 0.0);
        }
        let back = d.u.mul(&sigma).mul(&d.v.adjoint());
        prop_assert!(back.approx_eq(&m, 1e-10));
    }

    #[test]
    fn rank_plus_nullity_is_cols(m in sized_matrix(5)) {
        let r = numkit::rank(&m, &tol()).unwrap();
        let k = numkit::kernel(&m, &tol()).unwrap();
        prop_assert_eq!(r + k.dim(), m.cols());
        prop_assert!(m.mul(k.basis()).max_abs() < 1e-9);
    }

    #[test]
    fn kron_respects_vector_tensors(
        m in matrix(3, 2),
        n in matrix(2, 3),
        v in matrix(2, 1),
        w in matrix(3, 1),
    ) {
        let lhs = m.kron(&n).unwrap().mul(&v.kron(&w).unwrap());
        let rhs = m.mul(&v).kron(&n.mul(&w)).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn kron_flat_indexing_is_associative(
        a in matrix(2, 2),
        b in matrix(3, 2),
        c in matrix(2, 3),
    ) {
        let left = a.kron(&b).unwrap().kron(&c).unwrap();
        let right = a.kron(&b.kron(&c).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, 1e-12));
    }

    #[test]
    fn sum_intersection_dimension_formula(
        mu in matrix(5, 2),
        mv in matrix(5, 3),
    ) {
        let u = Subspace::from_span(&mu, &tol()).unwrap();
        let v = Subspace::from_span(&mv, &tol()).unwrap();
        let (sum, meet) = numkit::subspace_sum_and_intersection(&u, &v, &tol()).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
    }

    #[test]
    fn tensor_vector_product_matches_materialized_algebra(
        x in matrix(8, 1),
        y in matrix(8, 1),
    ) {
        // product in M_2 (x) C^2 computed streaming vs through the
        // materialized tensor-algebra multiplication map
        let a = StarAlgebra::matrix_units(2);
        let b = StarAlgebra::pointwise(2);
        let streamed = StarAlgebra::tensor_mul_vec(&a, &b, &x, &y);
        let t = StarAlgebra::tensor(&a, &b).unwrap();
        let materialized = t.mul_elems(&x, &y);
        prop_assert!(streamed.approx_eq(&materialized, 1e-11));
    }

    #[test]
    fn gns_positivity_of_squares(x in matrix(4, 1)) {
        // b* b is always positive in M_2
        let m2 = StarAlgebra::matrix_units(2);
        let sq = m2.mul_elems(&m2.star_elem(&x), &x);
        prop_assert!(m2.is_positive(&sq, &tol()).unwrap());
    }
}
