use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

use super::{FieldSpec, Scalar};

/// Dense matrix over one field. Row index is the output coordinate: the
/// matrix of a linear map `f` has `f(e_j)` as its j-th column, and
/// [`Matrix::apply`] computes `f(x)` for a column vector `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Matrix {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds from row vectors; all rows must share a length and the field.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, field: FieldSpec) -> Result<Matrix> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimMismatch(format!(
                    "row length {} does not match column count {cols}",
                    r.len()
                )));
            }
            for s in r {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry over {} in a matrix over {field}",
                        s.field()
                    )));
                }
            }
        }
        let nrows = rows.len();
        Ok(Matrix {
            rows: nrows,
            cols,
            field,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, field: FieldSpec, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zeros(rows, cols, field);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Convenience for integer test fixtures.
    pub fn from_i64_rows(rows: &[&[i64]], field: FieldSpec) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&n| field.from_i64(n)))
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| -&self[(i, j)])
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| c * &self[(i, j)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(a * b);
                }
            }
        }
        out
    }

    /// `f(x)` for a column vector `x`.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, x.len(), "vector length must match column count");
        let mut out = vec![self.field.zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] = &out[i] + &(a * xj);
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, self.field, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, self.field, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Kronecker product with row-major pair indexing: the image of
    /// `e_i (x) e_j` is column `i * other.cols + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form: pivots normalized to 1, pivot columns
    /// cleared above and below. Returns the reduced matrix and the pivot
    /// column of every nonzero row. Row space is preserved, and the result
    /// is the canonical representative of that row space.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = (r..m.rows).find(|&i| !m[(i, c)].is_zero());
            let Some(p) = pivot_row else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let delta = &factor * &m[(r, j)];
                    m[(i, j)] = &m[(i, j)] - &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// One particular solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = red[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn to_json_rows(&self) -> Vec<Vec<serde_json::Value>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_json).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_rows().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn rref_identity_is_identity() {
        let m = Matrix::identity(2, Q);
        let (r, pivots) = m.rref();
        assert!(r.is_identity());
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]], Q);
        let (r, pivots) = m.rref();
        assert_eq!(pivots.len(), 1);
        assert_eq!(r, Matrix::from_i64_rows(&[&[1, 2], &[0, 0]], Q));
    }

    #[test]
    fn rref_mod_two_full_rank() {
        // det = 1 mod 2
        let f2 = FieldSpec::prime(2).unwrap();
        let m = Matrix::from_i64_rows(&[&[1, 1], &[1, 2]], f2);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn mul_and_apply_agree() {
        let a = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]], Q);
        let b = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]], Q);
        let ab = a.mul(&b);
        assert_eq!(ab, Matrix::from_i64_rows(&[&[2, 1], &[4, 3]], Q));
        let x = vec![Q.from_i64(5), Q.from_i64(7)];
        assert_eq!(a.apply(&x), vec![Q.from_i64(19), Q.from_i64(43)]);
    }

    #[test]
    fn kron_indexing_matches_pair_convention() {
        let a = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]], Q);
        let b = Matrix::identity(2, Q);
        let k = a.kron(&b);
        // e_0 (x) e_1 is column 1, its image should be e_2...e_3 block: e_1 (x) e_1 = index 3
        let mut x = vec![Q.zero(); 4];
        x[1] = Q.one();
        let y = k.apply(&x);
        assert!(y[3].is_one() && y[0].is_zero() && y[1].is_zero() && y[2].is_zero());
    }

    #[test]
    fn solve_finds_particular_solution() {
        let a = Matrix::from_i64_rows(&[&[1, 2, 0], &[0, 0, 1]], Q);
        let b = vec![Q.from_i64(3), Q.from_i64(4)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
        assert!(a.solve(&vec![Q.zero(); 2]).is_some());
        let inconsistent = Matrix::from_i64_rows(&[&[1, 1], &[1, 1]], Q);
        assert!(inconsistent.solve(&[Q.zero(), Q.one()]).is_none());
    }
}
