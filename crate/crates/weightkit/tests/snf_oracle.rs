//! Independent check of Smith normal form through determinantal divisors:
//! the k-th invariant factor equals gcd(k×k minors) / gcd((k-1)×(k-1)
//! minors). This route never performs elimination, so it cross-checks the
//! pivoting implementation from scratch.

use weightkit::matrix::{smith_normal_form, Matrix};
use weightkit::ring::{RingElement, RingSpec};

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance the rightmost index that can move
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + (k - i) < n {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn minor(a: &Matrix, rows: &[usize], cols: &[usize]) -> RingElement {
    Matrix::from_fn(a.spec(), rows.len(), cols.len(), |i, j| a.get(rows[i], cols[j]).clone())
        .determinant()
}

/// Invariant factors through gcds of minors.
fn invariant_factors_by_minors(a: &Matrix) -> Vec<RingElement> {
    let spec = a.spec();
    let mut previous = spec.one();
    let mut factors = Vec::new();
    for k in 1..=a.rows().min(a.cols()) {
        let mut gcd = spec.zero();
        for rows in combinations(a.rows(), k) {
            for cols in combinations(a.cols(), k) {
                gcd = gcd.gcd(&minor(a, &rows, &cols));
            }
        }
        if gcd.is_zero() {
            break; // all larger minors vanish as well
        }
        factors.push(gcd.div_exact(&previous).expect("divisor chain").normalize_assoc().0);
        previous = gcd;
    }
    factors
}

fn check_against_oracle(a: &Matrix) {
    let snf = smith_normal_form(a);
    let oracle = invariant_factors_by_minors(a);
    assert_eq!(
        snf.invariant_factors, oracle,
        "invariant factors disagree with the minor-gcd oracle for\n{a}"
    );
}

#[test]
fn integer_examples_match_oracle() {
    let z = RingSpec::integers();
    let a = Matrix::from_i64(z, &[&[2, 4], &[6, 8]]);
    assert_eq!(
        invariant_factors_by_minors(&a),
        vec![z.from_i64(2), z.from_i64(4)],
        "oracle value for the frozen example"
    );
    check_against_oracle(&a);
    check_against_oracle(&Matrix::identity(z, 2));
    check_against_oracle(&Matrix::zero(z, 2, 3));
    check_against_oracle(&Matrix::from_i64(z, &[&[6, 10, 15], &[10, 15, 6], &[15, 6, 10]]));
    check_against_oracle(&Matrix::from_i64(z, &[&[2, 3]]));
}

#[test]
fn polynomial_example_matches_oracle() {
    let r = RingSpec::poly_over_prime_field(2).unwrap();
    let x = r.monomial(1, 1);
    let x2 = r.monomial(1, 2);
    let a = Matrix::new(r, 2, 2, vec![x.clone(), x2, r.zero(), x.clone()]).unwrap();
    // column reduction c2 ← c2 − x·c1 gives diag(x, x); the oracle agrees
    assert_eq!(invariant_factors_by_minors(&a), vec![x.clone(), x]);
    check_against_oracle(&a);
}

#[test]
fn random_matrices_match_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    let specs = [
        RingSpec::integers(),
        RingSpec::prime_field(5).unwrap(),
        RingSpec::poly_over_prime_field(3).unwrap(),
    ];
    for _ in 0..60 {
        let spec = specs[rng.gen_range(0..specs.len())];
        let rows = rng.gen_range(1..=3usize);
        let cols = rng.gen_range(1..=3usize);
        let entries: Vec<RingElement> = (0..rows * cols)
            .map(|_| {
                if spec == RingSpec::poly_over_prime_field(3).unwrap() {
                    let c0 = rng.gen_range(0..3);
                    let c1 = rng.gen_range(0..3);
                    spec.from_i64(c0).add(&spec.monomial(c1, 1))
                } else {
                    spec.from_i64(rng.gen_range(-8..=8))
                }
            })
            .collect();
        let a = Matrix::new(spec, rows, cols, entries).unwrap();
        check_against_oracle(&a);
    }
}
