//! Exact rectangular matrices over the active ring, Smith normal form with
//! unimodular transforms, and exact linear system solving.
//!
//! Everything downstream (module normal forms, homology, truncations,
//! completions) reduces to `smith_normal_form` and `linear_solve`.

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingSpec};
use std::fmt;

/// A dense rows × cols matrix; empty shapes are allowed and represent zero
/// modules and zero maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    spec: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>, // row-major
}

impl Matrix {
    pub fn new(spec: RingSpec, rows: usize, cols: usize, entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.spec() != spec {
                return Err(Error::SpecMismatch(spec.to_string(), e.spec().to_string()));
            }
        }
        Ok(Matrix { spec, rows, cols, entries })
    }

    pub fn zero(spec: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix { spec, rows, cols, entries: vec![spec.zero(); rows * cols] }
    }

    pub fn identity(spec: RingSpec, n: usize) -> Self {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    pub fn from_fn(spec: RingSpec, rows: usize, cols: usize, f: impl Fn(usize, usize) -> RingElement) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.spec(), spec, "entry from wrong ring");
                entries.push(e);
            }
        }
        Matrix { spec, rows, cols, entries }
    }

    /// Convenience for integer-like test data.
    pub fn from_i64(spec: RingSpec, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Self::from_fn(spec, rows, cols, |i, j| spec.from_i64(data[i][j]))
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RingElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: RingElement) {
        assert_eq!(e.spec(), self.spec);
        self.entries[r * self.cols + c] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.spec, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self::from_fn(self.spec, self.rows, self.cols, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.spec, self.rows, self.cols, |i, j| self.get(i, j).neg())
    }

    pub fn scale(&self, c: &RingElement) -> Self {
        Self::from_fn(self.spec, self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        Self::from_fn(self.spec, self.rows, other.cols, |i, j| {
            let mut acc = self.spec.zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, x: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(self.cols, x.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.spec.zero();
                for (k, xk) in x.iter().enumerate() {
                    acc = acc.add(&self.get(i, k).mul(xk));
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "shape mismatch in hstack");
        Self::from_fn(self.spec, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "shape mismatch in vstack");
        Self::from_fn(self.spec, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(spec: RingSpec, blocks: &[&Matrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zero(spec, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    /// Kronecker product; `(self ⊗ other)` acts block-wise with `self`'s
    /// entries as block coefficients.
    pub fn kronecker(&self, other: &Self) -> Self {
        Self::from_fn(self.spec, self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (bi, ii) = (i / other.rows, i % other.rows);
            let (bj, jj) = (j / other.cols, j % other.cols);
            self.get(bi, bj).mul(other.get(ii, jj))
        })
    }

    pub fn delete_row(&self, r: usize) -> Self {
        Self::from_fn(self.spec, self.rows - 1, self.cols, |i, j| {
            self.get(if i < r { i } else { i + 1 }, j).clone()
        })
    }

    pub fn delete_col(&self, c: usize) -> Self {
        Self::from_fn(self.spec, self.rows, self.cols - 1, |i, j| {
            self.get(i, if j < c { j } else { j + 1 }).clone()
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a += c * row b
    fn row_axpy(&mut self, a: usize, b: usize, c: &RingElement) {
        for j in 0..self.cols {
            let v = self.get(a, j).add(&self.get(b, j).mul(c));
            self.set(a, j, v);
        }
    }

    /// col a += c * col b
    fn col_axpy(&mut self, a: usize, b: usize, c: &RingElement) {
        for i in 0..self.rows {
            let v = self.get(i, a).add(&self.get(i, b).mul(c));
            self.set(i, a, v);
        }
    }

    fn scale_row(&mut self, r: usize, c: &RingElement) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(c);
            self.set(r, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; exact over every
    /// supported ring. The determinant of the empty matrix is 1.
    pub fn determinant(&self) -> RingElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.spec.one();
        }
        let mut b = self.clone();
        let mut sign = false;
        let mut prev = self.spec.one();
        for k in 0..n - 1 {
            if b.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !b.get(r, k).is_zero()) else {
                    return self.spec.zero();
                };
                b.swap_rows(k, r);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = b.get(i, j).mul(b.get(k, k)).sub(&b.get(i, k).mul(b.get(k, j)));
                    let v = num.div_exact(&prev).expect("Bareiss division is exact");
                    b.set(i, j, v);
                }
                b.set(i, k, self.spec.zero());
            }
            prev = b.get(k, k).clone();
        }
        let det = b.get(n - 1, n - 1).clone();
        if sign {
            det.neg()
        } else {
            det
        }
    }

    /// Inverse of a matrix that is invertible over the ring itself
    /// (unit determinant); `None` otherwise.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let snf = smith_normal_form(self);
        if !snf.d.is_identity() {
            return None;
        }
        // D = U A V = I  =>  A^{-1} = V U
        Some(snf.v.mul(&snf.u))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {}]", self.rows, self.cols, self.spec)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The result of `smith_normal_form`: `d = u * a * v` with unimodular `u`, `v`,
/// `d` rectangular-diagonal with canonically normalized diagonal entries in a
/// divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub invariant_factors: Vec<RingElement>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smallest-Euclidean-norm pivot in the trailing submatrix, ties broken by
/// lowest (row, col).
fn find_pivot(d: &Matrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_norm = None;
    for i in from..d.rows() {
        for j in from..d.cols() {
            if let Some(n) = d.get(i, j).euclid_norm() {
                if best_norm.as_ref().is_none_or(|b| n < *b) {
                    best = Some((i, j));
                    best_norm = Some(n);
                }
            }
        }
    }
    best
}

/// Diagonalizes `a` over its Euclidean domain.
pub fn smith_normal_form(a: &Matrix) -> SmithDecomposition {
    let spec = a.spec();
    let mut d = a.clone();
    let mut u = Matrix::identity(spec, a.rows());
    let mut v = Matrix::identity(spec, a.cols());
    let steps = a.rows().min(a.cols());

    'stage: for t in 0..steps {
        loop {
            let Some((pr, pc)) = find_pivot(&d, t) else {
                break 'stage; // trailing submatrix is zero
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            // Clear column t; leftover remainders shrink the pivot next pass.
            let mut dirty = false;
            for i in t + 1..d.rows() {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, t).div_rem(d.get(t, t));
                let qn = q.neg();
                d.row_axpy(i, t, &qn);
                u.row_axpy(i, t, &qn);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..d.cols() {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(t, j).div_rem(d.get(t, t));
                let qn = q.neg();
                d.col_axpy(j, t, &qn);
                v.col_axpy(j, t, &qn);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Pivot must divide the whole trailing submatrix for d_i | d_{i+1}.
            let mut fixed = true;
            'scan: for i in t + 1..d.rows() {
                for j in t + 1..d.cols() {
                    if !d.get(t, t).divides(d.get(i, j)) {
                        let one = spec.one();
                        d.row_axpy(t, i, &one);
                        u.row_axpy(t, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }

        let (_, unit) = d.get(t, t).normalize_assoc();
        if !unit.is_one() {
            d.scale_row(t, &unit);
            u.scale_row(t, &unit);
        }
    }

    let invariant_factors = (0..steps)
        .map_while(|i| {
            let e = d.get(i, i).clone();
            if e.is_zero() {
                None
            } else {
                Some(e)
            }
        })
        .collect();

    SmithDecomposition { u, d, v, invariant_factors }
}

/// The outcome of solving `A x = b` over the ring: an optional particular
/// solution together with a basis of the kernel as matrix columns. The kernel
/// is free of the stated rank (submodules of free modules over a PID are
/// free); "no solution" is a value, not an error.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Option<Vec<RingElement>>,
    pub kernel: Matrix,
}

pub fn linear_solve(a: &Matrix, b: &[RingElement]) -> LinearSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let spec = a.spec();
    let snf = smith_normal_form(a);
    let rank = snf.rank();

    // A x = b  <=>  D y = U b with x = V y
    let c = snf.u.mul_vec(b);
    let mut y = vec![spec.zero(); a.cols()];
    let mut solvable = true;
    for (i, ci) in c.iter().enumerate() {
        if i < rank {
            match ci.div_exact(snf.d.get(i, i)) {
                Some(q) => y[i] = q,
                None => {
                    solvable = false;
                    break;
                }
            }
        } else if !ci.is_zero() {
            solvable = false;
            break;
        }
    }

    let particular = if solvable { Some(snf.v.mul_vec(&y)) } else { None };
    let kernel = Matrix::from_fn(spec, a.cols(), a.cols() - rank, |i, j| {
        snf.v.get(i, rank + j).clone()
    });
    LinearSolution { particular, kernel }
}

/// Whether `b` lies in the column span of `a`.
pub fn in_column_span(a: &Matrix, b: &[RingElement]) -> bool {
    linear_solve(a, b).particular.is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &Matrix) {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d, "D = U A V fails");
        assert!(snf.u.determinant().is_unit(), "U not unimodular");
        assert!(snf.v.determinant().is_unit(), "V not unimodular");
        for i in 0..snf.invariant_factors.len().saturating_sub(1) {
            assert!(
                snf.invariant_factors[i].divides(&snf.invariant_factors[i + 1]),
                "divisibility chain fails"
            );
        }
        for f in &snf.invariant_factors {
            assert!(f.is_canonical_associate(), "invariant factor not normalized");
        }
    }

    #[test]
    fn snf_identity() {
        let z = RingSpec::integers();
        let a = Matrix::identity(z, 2);
        let snf = smith_normal_form(&a);
        assert!(snf.d.is_identity());
        assert!(snf.u.is_identity());
        assert!(snf.v.is_identity());
    }

    #[test]
    fn snf_two_by_two() {
        let z = RingSpec::integers();
        let a = Matrix::from_i64(z, &[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(
            snf.invariant_factors,
            vec![z.from_i64(2), z.from_i64(4)],
            "invariant factors of [[2,4],[6,8]]"
        );
        check_snf(&a);
    }

    #[test]
    fn snf_poly_over_f2() {
        let r = RingSpec::poly_over_prime_field(2).unwrap();
        let x = r.monomial(1, 1);
        let x2 = r.monomial(1, 2);
        let a = Matrix::new(r, 2, 2, vec![x.clone(), x2, r.zero(), x.clone()]).unwrap();
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors, vec![x.clone(), x]);
        check_snf(&a);
    }

    #[test]
    fn snf_empty_and_zero() {
        let z = RingSpec::integers();
        for a in [Matrix::zero(z, 0, 0), Matrix::zero(z, 0, 3), Matrix::zero(z, 2, 2)] {
            let snf = smith_normal_form(&a);
            assert!(snf.invariant_factors.is_empty());
            check_snf(&a);
        }
    }

    #[test]
    fn snf_idempotent_on_own_output() {
        let z = RingSpec::integers();
        let a = Matrix::from_i64(z, &[&[6, 4, 2], &[2, 8, 10], &[4, 4, 4]]);
        let snf = smith_normal_form(&a);
        let again = smith_normal_form(&snf.d);
        assert_eq!(again.d, snf.d);
        check_snf(&a);
    }

    #[test]
    fn solve_examples() {
        let z = RingSpec::integers();
        // A = [2], b = [4]: x = [2], kernel rank 0
        let a = Matrix::from_i64(z, &[&[2]]);
        let sol = linear_solve(&a, &[z.from_i64(4)]);
        assert_eq!(sol.particular, Some(vec![z.from_i64(2)]));
        assert_eq!(sol.kernel.cols(), 0);

        // A = [2], b = [3]: parity obstruction
        let sol = linear_solve(&a, &[z.from_i64(3)]);
        assert!(sol.particular.is_none());

        // A = [2 3], b = [1]: Bezout, kernel spanned by (3, -2) up to sign
        let a = Matrix::from_i64(z, &[&[2, 3]]);
        let sol = linear_solve(&a, &[z.from_i64(1)]);
        let x = sol.particular.unwrap();
        assert_eq!(a.mul_vec(&x), vec![z.from_i64(1)]);
        assert_eq!(sol.kernel.cols(), 1);
        let k = sol.kernel.column(0);
        assert_eq!(a.mul_vec(&k), vec![z.zero()]);
        let three = z.from_i64(3);
        assert!(k[0] == three || k[0] == three.neg());
    }

    #[test]
    fn inverse_of_unimodular() {
        let z = RingSpec::integers();
        let a = Matrix::from_i64(z, &[&[1, 2], &[1, 3]]); // det 1
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());

        let b = Matrix::from_i64(z, &[&[2, 0], &[0, 1]]); // det 2: not a unit in Z
        assert!(b.inverse().is_none());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let z = RingSpec::integers();
        let a = Matrix::from_i64(z, &[&[1, 2, 3], &[0, -4, 1], &[2, 2, 2]]);
        // 1*(-4*2 - 1*2) - 2*(0*2 - 1*2) + 3*(0*2 + 4*2)
        assert_eq!(a.determinant(), z.from_i64(18));
        assert_eq!(Matrix::zero(z, 0, 0).determinant(), z.one());
    }
}
