//! Dense exact linear algebra over [`Scalar`].
//!
//! Elimination always produces the reduced row echelon form, which is unique,
//! so ranks, kernel bases and particular solutions are reproducible bit for bit.
//! Matrices whose entries are all rational are reduced over [`Rational`] directly.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

trait FieldElem: Clone {
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sub_mul(&mut self, f: &Self, x: &Self);
    fn is_one(&self) -> bool;
}

impl FieldElem for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn inv(&self) -> Self {
        self.recip().expect("pivot is nonzero")
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_mul(&mut self, f: &Self, x: &Self) {
        *self -= &(f * x);
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
}

impl FieldElem for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn inv(&self) -> Self {
        self.inverse().expect("pivot is nonzero")
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_mul(&mut self, f: &Self, x: &Self) {
        *self -= &(f * x);
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

/// In-place reduced row echelon form (plain echelon form if `!reduce`); returns pivot
/// columns. Zero rows are dropped.
fn rref_generic<F: FieldElem>(rows: &mut Vec<Vec<F>>, cols: usize, reduce: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if !rows[r][c].is_one() {
            let inv = rows[r][c].inv();
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let support: Vec<(usize, F)> = (c..cols)
            .filter(|&j| !rows[r][j].is_zero())
            .map(|j| (j, rows[r][j].clone()))
            .collect();
        let first = if reduce { 0 } else { r + 1 };
        for i in first..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            let row = &mut rows[i];
            for (j, x) in &support {
                row[*j].sub_mul(&f, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduced row echelon form of a list of rows of length `cols`.
pub fn rref_rows(rows: Vec<Vector>, cols: usize) -> (Vec<Vector>, Vec<usize>) {
    eliminate(rows, cols, true)
}

fn eliminate(mut rows: Vec<Vector>, cols: usize, reduce: bool) -> (Vec<Vector>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    if rows.iter().all(|r| r.iter().all(Scalar::is_rational)) {
        let mut q: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.as_rational().expect("rational")).collect())
            .collect();
        let piv = rref_generic(&mut q, cols, reduce);
        let back = q
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::from_rational).collect())
            .collect();
        (back, piv)
    } else {
        let piv = rref_generic(&mut rows, cols, reduce);
        (rows, piv)
    }
}

/// Rank of the span of the given rows.
pub fn rank_of_rows(rows: &[Vector], cols: usize) -> usize {
    eliminate(rows.to_vec(), cols, false).1.len()
}

/// Canonical (RREF) basis of the span of the given vectors.
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    rref_rows(vectors.to_vec(), dim).0
}

/// Basis of the null space from an RREF with the given pivots.
fn kernel_from_rref(rref: &[Vector], pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Scalar::zero(); cols];
        v[f] = Scalar::one();
        for (row, &p) in rref.iter().zip(pivots) {
            if !row[f].is_zero() {
                v[p] = -&row[f];
            }
        }
        out.push(v);
    }
    out
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `Σ c_i v_i`.
pub fn combine(coeffs: &[Scalar], vectors: &[Vector], dim: usize) -> Vector {
    let mut out = vec![Scalar::zero(); dim];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Scalar::from_int(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Commutator `[A, B] = AB − BA`.
    pub fn bracket(&self, other: &Matrix) -> Result<Matrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (Vec<Vector>, Vec<usize>) {
        rref_rows(self.row_vectors(), self.cols)
    }

    pub fn rank(&self) -> usize {
        eliminate(self.row_vectors(), self.cols, false).1.len()
    }

    /// Canonical null-space basis: one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, p) = self.rref();
        kernel_from_rref(&r, &p, self.cols)
    }

    pub fn solve_affine(&self, rhs: &[Scalar]) -> Result<AffineSpace> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let aug: Vec<Vector> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        let (rref, pivots) = rref_rows(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(AffineSpace::empty(self.cols));
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        for (row, &p) in rref.iter().zip(&pivots) {
            particular[p] = row[self.cols].clone();
        }
        let coeff_rows: Vec<Vector> = rref.iter().map(|r| r[..self.cols].to_vec()).collect();
        Ok(AffineSpace {
            ambient_dim: self.cols,
            particular: Some(particular),
            kernel_basis: kernel_from_rref(&coeff_rows, &pivots, self.cols),
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Common null space of several linear maps given by matrices with equal column counts.
///
/// Computed by successive restriction: the kernel of the first map is found,
/// the second map is applied to that basis, and so on. The result is returned
/// as a canonical RREF basis.
pub fn joint_kernel(maps: &[Matrix], cols: usize) -> Vec<Vector> {
    let mut basis: Vec<Vector> = (0..cols)
        .map(|j| {
            let mut v = vec![Scalar::zero(); cols];
            v[j] = Scalar::one();
            v
        })
        .collect();
    for m in maps {
        if basis.is_empty() {
            break;
        }
        let images: Vec<Vector> = basis
            .iter()
            .map(|b| m.mul_vec(b).expect("column count"))
            .collect();
        let restricted = Matrix::from_columns(&images, m.rows()).expect("row count");
        let coeffs = restricted.kernel();
        basis = coeffs
            .iter()
            .map(|c| combine(c, &basis, cols))
            .collect();
    }
    span_basis(&basis, cols)
}

/// Solution set `{x : Mx = b}` as a particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub ambient_dim: usize,
    pub particular: Option<Vector>,
    pub kernel_basis: Vec<Vector>,
}

impl AffineSpace {
    pub fn empty(ambient_dim: usize) -> Self {
        AffineSpace {
            ambient_dim,
            particular: None,
            kernel_basis: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Dimension, or `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.kernel_basis.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_ranks() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(4, 7).rank(), 0);
        let m = Matrix::from_ints(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_ints(2, 4, &[1, 2, 3, 4, 2, 4, 7, 1]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vector(&m.mul_vec(v).unwrap()));
        }
    }

    #[test]
    fn affine_solutions() {
        let v: Vector = [3, -1, 2].iter().map(|&x| Scalar::from_int(x)).collect();
        let s = Matrix::identity(3).solve_affine(&v).unwrap();
        assert_eq!(s.particular.as_ref(), Some(&v));
        assert!(s.kernel_basis.is_empty());
        let z = Matrix::zeros(2, 2)
            .solve_affine(&[Scalar::one(), Scalar::zero()])
            .unwrap();
        assert!(z.is_empty());
        assert_eq!(z.dim(), None);
    }

    #[test]
    fn irrational_elimination() {
        let r2 = Scalar::sqrt(2).unwrap();
        let m = Matrix::from_rows(
            vec![
                vec![Scalar::one(), r2.clone()],
                vec![r2.clone(), Scalar::from_int(2)],
            ],
            2,
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k, vec![vec![-r2, Scalar::one()]]);
    }

    #[test]
    fn joint_kernel_matches_stacked() {
        let a = Matrix::from_ints(1, 4, &[1, 1, 0, 0]);
        let b = Matrix::from_ints(1, 4, &[0, 1, 1, 0]);
        let j = joint_kernel(&[a.clone(), b.clone()], 4);
        let s = a.stack(&b).unwrap();
        assert_eq!(j, span_basis(&s.kernel(), 4));
        assert_eq!(j.len(), 2);
    }
}
