//! The same structural facts, away from the integers: prime fields (where
//! every module is free and the torsion theory collapses), and the two
//! polynomial rings (where the interesting torsion is by polynomials, not
//! numbers).

use weightkit::complex::{homotopy_equivalent, minimize, weight_range, ChainComplex};
use weightkit::contra::{
    delta_completion, is_s_contramodule, reduce_completed, tower_limits, verify_flatness,
    ContraWitness,
};
use weightkit::fpmod::{ext1, hom_module, projective_dimension, tor1, FpModule, ProjDim};
use weightkit::hearts::{
    heart_membership, heart_membership_via_cone, verify_square, LocalizationSpec,
};
use weightkit::matrix::Matrix;
use weightkit::ring::{RingElement, RingSpec};

#[test]
fn over_a_field_everything_is_free() {
    let f5 = RingSpec::prime_field(5).unwrap();
    // any presentation collapses to a free module of the right rank
    let m = FpModule::new(f5, 3, Matrix::from_i64(f5, &[&[1, 2, 3], &[0, 1, 4]])).unwrap();
    assert_eq!(m.free_rank(), 1);
    assert!(m.invariant_factors().is_empty());
    assert_eq!(projective_dimension(&m), ProjDim::Zero);

    let n = FpModule::free(f5, 2);
    assert_eq!(hom_module(&m, &n).free_rank(), 2);
    assert!(ext1(&m, &n).is_zero());
    assert!(tor1(&m, &n).is_zero());

    // complexes over a field minimize to their cohomology
    let c = ChainComplex::two_term(&Matrix::from_i64(f5, &[&[2]]), 0);
    assert!(minimize(&c).minimal.is_zero()); // 2 is a unit mod 5
}

#[test]
fn polynomial_torsion_behaves_like_integer_torsion() {
    let r = RingSpec::poly_over_prime_field(2).unwrap();
    let x = r.monomial(1, 1);
    let x3 = r.monomial(1, 3);
    let x_plus_1 = x.add(&r.one());

    // R/(x³) is an x-contramodule with exponent 3, exactly like Z/8 at 2
    let m = FpModule::cyclic(r, &x3);
    let cert = is_s_contramodule(&m, &x);
    assert!(cert.holds);
    assert!(matches!(cert.witness, ContraWitness::Nilpotency { exponent: 3 }));
    assert!(cert.verify(&m));

    // x is invertible modulo x + 1 over F_2, so R/(x+1) fails through Hom
    let n = FpModule::cyclic(r, &x_plus_1);
    let cert = is_s_contramodule(&n, &x);
    assert!(!cert.holds);
    assert!(matches!(cert.witness, ContraWitness::HomSeed { .. }));
    assert!(cert.verify(&n));

    // a mixed factor x³(x+1) splits into nilpotent and invertible parts
    let mixed = FpModule::cyclic(r, &x3.mul(&x_plus_1));
    let split = weightkit::contra::split_by_s(&mixed, &x);
    assert!(split.nilpotent.is_isomorphic(&FpModule::cyclic(r, &x3)));
    assert!(split.invertible.is_isomorphic(&n));

    // tower route agrees
    for c in [&m, &n, &mixed, &FpModule::free(r, 1)] {
        let direct = is_s_contramodule(c, &x);
        let tower = tower_limits(c, &x);
        assert_eq!(direct.holds, tower.lim.is_zero() && tower.lim1_vanishes);
    }
}

#[test]
fn completion_and_square_over_a_polynomial_ring() {
    let r = RingSpec::poly_over_prime_field(3).unwrap();
    let x = r.monomial(1, 1);

    // Δ_x(R) is the formal power series line, seen through its reductions
    let line = delta_completion(&FpModule::free(r, 1), &x);
    assert_eq!(line.completed_rank(), 1);
    let shadow = reduce_completed(&line, 2);
    assert!(shadow.is_isomorphic(&FpModule::cyclic(r, &r.monomial(1, 2))));

    let tele = LocalizationSpec::telescope(vec![x.clone()]).unwrap();
    let tests = vec![FpModule::cyclic(r, &r.monomial(1, 2))];
    let report = verify_square(2, &tele, &tests, 3);
    assert!(report.passed(), "{}", report.summary());

    let flat = verify_flatness(&x, &[FpModule::cyclic(r, &x)], 4);
    assert!(flat.passed());
}

#[test]
fn hearts_over_polynomial_rings() {
    let r = RingSpec::poly_over_prime_field(2).unwrap();
    let x = r.monomial(1, 1);
    // invert the 1×1 matrix [x]: modules where x acts invertibly survive
    let fam = LocalizationSpec::matrix_family(vec![Matrix::new(
        r,
        1,
        1,
        vec![x.clone()],
    )
    .unwrap()])
    .unwrap();

    let survives = FpModule::cyclic(r, &x.add(&r.one())); // x ≡ 1 mod (x+1)
    let dies = FpModule::cyclic(r, &x.mul(&x)); // x is nilpotent mod x²
    assert!(heart_membership(&survives, &fam).member);
    assert!(!heart_membership(&dies, &fam).member);
    assert!(heart_membership_via_cone(&survives, &fam).unwrap());
    assert!(!heart_membership_via_cone(&dies, &fam).unwrap());
}

#[test]
fn rational_polynomial_complexes() {
    let r = RingSpec::poly_over_rationals();
    let half_x = RingElement::parse(r, "1/2*x").unwrap();

    // [R --x/2--> R] has cohomology R/(x) in degree 1 (monic normalization)
    let c = ChainComplex::two_term(&Matrix::new(r, 1, 1, vec![half_x]).unwrap(), 0);
    let h1 = c.homology(1);
    assert!(h1.is_isomorphic(&FpModule::cyclic(r, &r.monomial(1, 1))));
    assert_eq!(weight_range(&c), Some((-1, 0)));

    // scaling a differential by a unit does not change the homotopy type
    let c2 = ChainComplex::two_term(&Matrix::new(r, 1, 1, vec![r.monomial(3, 1)]).unwrap(), 0);
    assert!(homotopy_equivalent(&c, &c2));
}
