//! Property tests for the structural invariants: decomposition identities,
//! substitution checks, bilinearity, and homotopy invariance on randomized
//! inputs.

use proptest::prelude::*;
use weightkit::complex::{homotopy_equivalent, minimize, weight_range, ChainComplex};
use weightkit::contra::{delta_completion, reduce_completed};
use weightkit::fpmod::{ext1, hom_module, projective_dimension, tor1, FpModule, ProjDim};
use weightkit::matrix::{linear_solve, smith_normal_form, Matrix};
use weightkit::ring::RingSpec;

fn z() -> RingSpec {
    RingSpec::integers()
}

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Matrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(rows, cols)| {
        proptest::collection::vec(-bound..=bound, rows * cols).prop_map(move |cells| {
            let entries = cells.iter().map(|&v| z().from_i64(v)).collect();
            Matrix::new(z(), rows, cols, entries).unwrap()
        })
    })
}

fn small_module() -> impl Strategy<Value = FpModule> {
    (proptest::collection::vec(2i64..=12, 0..=2), 0usize..=1).prop_map(|(factors, free)| {
        let factors: Vec<_> = factors.iter().map(|&d| z().from_i64(d)).collect();
        FpModule::from_pieces(z(), &factors, free)
    })
}

proptest! {
    #[test]
    fn snf_reconstructs_and_chains(a in int_matrix(3, 20)) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
        prop_assert!(snf.u.determinant().is_unit());
        prop_assert!(snf.v.determinant().is_unit());
        for w in snf.invariant_factors.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
    }

    #[test]
    fn solve_verifies_by_substitution(a in int_matrix(3, 8), x in proptest::collection::vec(-5i64..=5, 0..=3)) {
        // build a guaranteed-solvable right-hand side
        prop_assume!(x.len() == a.cols());
        let x: Vec<_> = x.iter().map(|&v| z().from_i64(v)).collect();
        let b = a.mul_vec(&x);
        let sol = linear_solve(&a, &b);
        let p = sol.particular.expect("constructed system is solvable");
        prop_assert_eq!(a.mul_vec(&p), b);
        for j in 0..sol.kernel.cols() {
            prop_assert!(a.mul_vec(&sol.kernel.column(j)).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn hom_ext_tor_are_additive(m in small_module(), m2 in small_module(), n in small_module()) {
        let sum = FpModule::direct_sum(&[&m, &m2]);
        for f in [hom_module, ext1, tor1] {
            let left = f(&sum, &n);
            let right = FpModule::direct_sum(&[&f(&m, &n), &f(&m2, &n)]);
            prop_assert!(left.is_isomorphic(&right));
        }
    }

    #[test]
    fn tor_is_symmetric_and_ext_vanishes_on_projectives(m in small_module(), n in small_module()) {
        prop_assert!(tor1(&m, &n).is_isomorphic(&tor1(&n, &m)));
        if projective_dimension(&m) <= ProjDim::Zero {
            prop_assert!(ext1(&m, &n).is_zero());
        }
    }

    #[test]
    fn minimization_preserves_the_homotopy_type(f in int_matrix(3, 4), shift in -2i64..=2) {
        let c = ChainComplex::two_term(&f, 0).shift(shift);
        let min = minimize(&c);
        prop_assert!(homotopy_equivalent(&c, &min.minimal));
        for i in -4..=4 {
            prop_assert!(c.homology(i).is_isomorphic(&min.minimal.homology(i)));
        }
        // weight range is invariant under minimization and covariant in shifts
        prop_assert_eq!(weight_range(&c), weight_range(&min.minimal));
        prop_assert_eq!(
            weight_range(&c.shift(1)),
            weight_range(&c).map(|(a, b)| (a + 1, b + 1))
        );
    }

    #[test]
    fn completion_reduction_is_the_plain_quotient(m in small_module(), s in 2i64..=6, n in 1u32..=5) {
        let s = z().from_i64(s);
        let d = delta_completion(&m, &s);
        let reduced = reduce_completed(&d, n);
        let direct = m.quotient_by_scalar(&s.pow(n));
        prop_assert!(reduced.is_isomorphic(&direct));
    }
}
