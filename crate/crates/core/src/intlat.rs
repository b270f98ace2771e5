//! Exact integer-lattice algebra: Hermite and Smith normal forms, saturation,
//! rational coordinates in a lattice basis.
//!
//! Everything is arbitrary precision. Row-style Hermite normal form is the
//! canonical representative of a row lattice, so two [`Sublattice`]s are equal
//! exactly when their bases are structurally equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntLatError {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("vector length {got} does not match ambient rank {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows<R, T>(cols: usize, rows: R) -> Self
    where
        R: IntoIterator<Item = Vec<T>>,
        T: Into<BigInt>,
    {
        let mut data = Vec::new();
        let mut n = 0;
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row.into_iter().map(Into::into));
            n += 1;
        }
        IntMatrix { rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<T: Into<BigInt> + Clone>(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix column");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    /// Keeps the rows for which `keep` returns true.
    pub fn select_rows(&self, keep: impl Fn(usize) -> bool) -> IntMatrix {
        let picked: Vec<Vec<BigInt>> = (0..self.rows).filter(|&i| keep(i)).map(|i| self.row_vec(i)).collect();
        IntMatrix::from_rows(self.cols, picked)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[source * self.cols + j] * factor;
            self.data[target * self.cols + j] += v;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + source] * factor;
            self.data[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * M`, `U`
/// unimodular, nonzero rows of `H` on top with strictly increasing pivot
/// columns, positive pivots and entries above each pivot in `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let pivot = (r..m.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Rows of the returned matrix form a basis of the integer left kernel
/// `{x : x * M = 0}`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    u.select_rows(|i| h.is_zero_row(i))
}

/// Smith normal form `left * M * right = diag(diagonal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `min(rows, cols)` entries with `d_1 | d_2 | ...`; zeros trail.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `right`, maintained alongside it.
    pub right_inverse: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Product of the nonzero diagonal entries.
    pub fn torsion_order(&self) -> BigInt {
        self.diagonal.iter().filter(|d| !d.is_zero()).product()
    }
}

/// Smith normal form by elementary row/column reduction, always pivoting on the
/// entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut right_inv = IntMatrix::identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);
            right_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                // right * E with E = I + q e_t e_j^T; E^{-1} = I - q e_t e_j^T acts on rows of right_inv
                right_inv.add_row_multiple(t, j, &-&q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into the pivot row and retry
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero()));
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    left.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithForm { diagonal, left, right, right_inverse: right_inv }
}

/// A sublattice of `Z^ambient_rank`, stored by its row Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntMatrix::zeros(0, ambient_rank) }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntMatrix::identity(ambient_rank) }
    }

    /// Lattice spanned by the rows of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let (h, _) = hermite_normal_form(generators);
        let basis = h.select_rows(|i| !h.is_zero_row(i));
        Sublattice { ambient_rank: generators.cols(), basis }
    }

    pub fn from_vectors<T: Into<BigInt> + Clone>(ambient_rank: usize, vectors: &[Vec<T>]) -> Self {
        let rows = vectors.iter().map(|v| v.iter().cloned().map(Into::into).collect::<Vec<BigInt>>());
        Self::from_generators(&IntMatrix::from_rows(ambient_rank, rows))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Sum of two lattices.
    pub fn sum(&self, other: &Sublattice) -> Sublattice {
        Self::from_generators(&self.basis.vstack(&other.basis))
    }

    /// Integer membership test.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        match express_in_basis(v, self) {
            Ok(Some(coeffs)) => coeffs.iter().all(|c| c.is_integer()),
            _ => false,
        }
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(Z^{}; {:?})", self.ambient_rank, self.basis)
    }
}

/// Returns the saturation `{v : n v in L for some n > 0}` and the index
/// `[sat : L]`.
pub fn saturate(lattice: &Sublattice) -> (Sublattice, BigInt) {
    if lattice.rank() == 0 {
        return (lattice.clone(), BigInt::one());
    }
    let snf = smith_normal_form(&lattice.basis);
    let k = snf.rank();
    // basis = left^{-1} D right^{-1}; the first k rows of right^{-1} span the saturation
    let sat = Sublattice::from_generators(&snf.right_inverse.select_rows(|i| i < k));
    (sat, snf.torsion_order())
}

/// Rational coefficients `c` with `sum c_i * basis_i = v`, or `None` when `v`
/// is outside the rational span.
pub fn express_in_basis(v: &[BigInt], lattice: &Sublattice) -> Result<Option<Vec<BigRational>>, IntLatError> {
    if v.len() != lattice.ambient_rank {
        return Err(IntLatError::LengthMismatch { expected: lattice.ambient_rank, got: v.len() });
    }
    let b = &lattice.basis;
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(b.rows());
    for i in 0..b.rows() {
        let pivot_col = (0..b.cols()).find(|&j| !b[(i, j)].is_zero()).expect("Hermite basis rows are nonzero");
        let mut acc = BigRational::from_integer(v[pivot_col].clone());
        for (j, c) in coeffs.iter().enumerate() {
            acc -= c * BigRational::from_integer(b[(j, pivot_col)].clone());
        }
        coeffs.push(acc / BigRational::from_integer(b[(i, pivot_col)].clone()));
    }
    for (col, target) in v.iter().enumerate() {
        let mut sum = BigRational::zero();
        for (i, c) in coeffs.iter().enumerate() {
            sum += c * BigRational::from_integer(b[(i, col)].clone());
        }
        if sum != BigRational::from_integer(target.clone()) {
            return Ok(None);
        }
    }
    Ok(Some(coeffs))
}

/// Splits a nonzero vector as `d * v0` with `d` the gcd of its entries.
pub fn content_and_primitive(v: &[BigInt]) -> Result<(BigInt, Vec<BigInt>), IntLatError> {
    let d = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if d.is_zero() {
        return Err(IntLatError::ZeroVector);
    }
    Ok((d.clone(), v.iter().map(|x| x / &d).collect()))
}

/// Convenience conversion for small literal vectors.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
