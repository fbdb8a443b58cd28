use crate::error::{Error, Result};

use super::{FieldSpec, Matrix, Scalar};

/// A subspace of `F^ambient` in canonical form: the basis matrix is in
/// reduced row-echelon form with one basis vector per row, so two equal
/// subspaces have bit-identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, field: FieldSpec) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient, field),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize, field: FieldSpec) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient, field),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`, canonicalized.
    pub fn from_matrix(m: &Matrix) -> Subspace {
        let (red, pivots) = m.rref();
        let rank = pivots.len();
        let basis = Matrix::from_fn(rank, m.cols(), m.field(), |i, j| red[(i, j)].clone());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn from_vectors(vectors: &[Vec<Scalar>], ambient: usize, field: FieldSpec) -> Result<Subspace> {
        let m = Matrix::from_rows(vectors.to_vec(), ambient, field)?;
        Ok(Subspace::from_matrix(&m))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per row (RREF).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row_vec(i)).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the basis; the remainder is zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for j in 0..self.ambient {
                let delta = &c * &self.basis[(row, j)];
                out[j] = &out[j] - &delta;
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Coordinates of a contained vector with respect to the canonical
    /// basis; `None` when the vector is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        // RREF basis: the coefficient of basis row i is v at pivot column i
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions must match");
        Subspace::from_matrix(&self.basis.vstack(&other.basis))
    }

    /// Largest subspace contained in both.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch(format!(
                "intersect: ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        // x^T A = y^T B  <=>  [A^T | -B^T] (x; y) = 0
        let stacked = self.basis.transpose().hstack(&other.basis.transpose().neg());
        let null = nullspace(&stacked);
        let a = self.dim();
        let mut vectors = Vec::with_capacity(null.dim());
        for r in 0..null.dim() {
            let xy = null.basis().row(r);
            let mut v = vec![self.field().zero(); self.ambient];
            for (i, xi) in xy[..a].iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for j in 0..self.ambient {
                    let delta = xi * &self.basis[(i, j)];
                    v[j] = &v[j] + &delta;
                }
            }
            vectors.push(v);
        }
        Subspace::from_vectors(&vectors, self.ambient, self.field())
    }

    /// `{x : f(x) in self}` for a map `f` into this ambient space.
    pub fn preimage(&self, f: &Matrix) -> Result<Subspace> {
        if f.rows() != self.ambient {
            return Err(Error::DimMismatch(format!(
                "preimage: map has {} output coordinates, subspace ambient is {}",
                f.rows(),
                self.ambient
            )));
        }
        // functionals vanishing on self: rows of ann with ann * x = 0 iff x in self
        let ann = self.annihilator();
        if ann.rows() == 0 {
            return Ok(Subspace::full(f.cols(), f.field()));
        }
        Ok(nullspace(&ann.mul(f)))
    }

    /// Matrix `A` with `A x = 0` exactly on this subspace.
    pub fn annihilator(&self) -> Matrix {
        nullspace(&self.basis).basis().clone()
    }

    /// Image `f(self)` inside `F^{f.rows()}`.
    pub fn image_under(&self, f: &Matrix) -> Subspace {
        assert_eq!(f.cols(), self.ambient);
        let vectors: Vec<Vec<Scalar>> = (0..self.dim()).map(|i| f.apply(self.basis.row(i))).collect();
        Subspace::from_vectors(&vectors, f.rows(), f.field()).expect("image vectors are well-formed")
    }

    /// Projection onto the coordinates of the lexicographically-first
    /// complement of the pivot columns, together with its section. The
    /// projection kills exactly this subspace, and `proj * sect = id`.
    pub fn quotient_maps(&self) -> (Matrix, Matrix) {
        let field = self.field();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect();
        // (proj x)[out] = reduce(x)[c] = x[c] - sum_row x[p_row] * basis[row][c]
        let mut proj = Matrix::zeros(free.len(), self.ambient, field);
        for (out, &c) in free.iter().enumerate() {
            proj[(out, c)] = field.one();
            for (row, &p) in self.pivots.iter().enumerate() {
                proj[(out, p)] = -&self.basis[(row, c)];
            }
        }
        let mut sect = Matrix::zeros(self.ambient, free.len(), field);
        for (idx, &c) in free.iter().enumerate() {
            sect[(c, idx)] = field.one();
        }
        (proj, sect)
    }

    /// Largest subspace `W` with `W` inside `self` and `a(W)` inside `W`,
    /// computed as the stabilizing limit of `W_0 = self`,
    /// `W_{i+1} = self  intersect  preimage(a, W_i)`. Equivalently the set of
    /// `x` whose whole forward `a`-orbit stays inside `self`. The chain is
    /// decreasing, so it stabilizes within `ambient + 1` steps.
    pub fn greatest_backward_invariant(&self, a: &Matrix) -> Result<Subspace> {
        if a.rows() != a.cols() {
            return Err(Error::DimMismatch("backward-invariant fixpoint needs a square map".into()));
        }
        if a.rows() != self.ambient {
            return Err(Error::DimMismatch(format!(
                "backward-invariant fixpoint: map side {} vs ambient {}",
                a.rows(),
                self.ambient
            )));
        }
        let mut w = self.clone();
        for _ in 0..=self.ambient {
            let next = self.intersect(&w.preimage(a)?)?;
            if next == w {
                return Ok(w);
            }
            w = next;
        }
        Err(Error::Certificate(
            "backward-invariant fixpoint failed to stabilize".into(),
        ))
    }
}

/// Right null space `{x : m x = 0}` as a canonical subspace of the
/// column-index space.
pub fn nullspace(m: &Matrix) -> Subspace {
    let field = m.field();
    let n = m.cols();
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut vectors = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![field.zero(); n];
        v[fc] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&red[(row, fc)];
        }
        vectors.push(v);
    }
    Subspace::from_vectors(&vectors, n, field).expect("nullspace vectors are well-formed")
}

impl Subspace {
    pub fn nullspace_of(m: &Matrix) -> Subspace {
        nullspace(m)
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Subspace", 3)?;
        st.serialize_field("ambient_dim", &self.ambient)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn span(rows: &[&[i64]], ambient: usize) -> Subspace {
        Subspace::from_matrix(&Matrix::from_i64_rows(rows, Q)).assert_ambient(ambient)
    }

    impl Subspace {
        fn assert_ambient(self, ambient: usize) -> Subspace {
            assert_eq!(self.ambient_dim(), ambient);
            self
        }
    }

    #[test]
    fn nullspace_of_zero_matrix_is_full() {
        let m = Matrix::zeros(3, 3, Q);
        let ns = nullspace(&m);
        assert_eq!(ns.dim(), 3);
        assert!(ns.is_full());
    }

    #[test]
    fn nullspace_of_identity_is_zero() {
        let ns = nullspace(&Matrix::identity(4, Q));
        assert!(ns.is_zero());
    }

    #[test]
    fn nullspace_satisfies_defining_equation() {
        let m = Matrix::from_i64_rows(&[&[1, 2, 3]], Q);
        let ns = nullspace(&m);
        assert_eq!(ns.dim(), 2); // rank-nullity: 3 - 1
        for v in ns.basis_vectors() {
            assert!(m.apply(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn intersect_coordinate_planes() {
        let a = span(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let b = span(&[&[0, 1, 0], &[0, 0, 1]], 3);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, span(&[&[0, 1, 0]], 3));
    }

    #[test]
    fn intersect_is_idempotent() {
        let a = span(&[&[1, 2, 3], &[0, 1, 1]], 3);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn intersect_rejects_ambient_mismatch() {
        let a = span(&[&[1, 0]], 2);
        let b = span(&[&[1, 0, 0]], 3);
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn preimage_of_full_space_is_full() {
        let f = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]], Q);
        let t = Subspace::full(2, Q);
        assert!(t.preimage(&f).unwrap().is_full());
    }

    #[test]
    fn preimage_under_identity_is_self() {
        let t = span(&[&[1, 0, 2]], 3);
        assert_eq!(t.preimage(&Matrix::identity(3, Q)).unwrap(), t);
    }

    #[test]
    fn preimage_of_zero_under_projection() {
        // projection Q^2 -> Q^1 onto the first coordinate; preimage of 0 is span{e2}
        let f = Matrix::from_i64_rows(&[&[1, 0]], Q);
        let t = Subspace::zero(1, Q);
        assert_eq!(t.preimage(&f).unwrap(), span(&[&[0, 1]], 2));
    }

    #[test]
    fn backward_invariant_under_identity_is_t() {
        let t = span(&[&[1, 0, 0], &[0, 1, 1]], 3);
        let w = t.greatest_backward_invariant(&Matrix::identity(3, Q)).unwrap();
        assert_eq!(w, t);
    }

    #[test]
    fn backward_invariant_under_zero_is_t() {
        let t = span(&[&[1, 1]], 2);
        let w = t.greatest_backward_invariant(&Matrix::zeros(2, 2, Q)).unwrap();
        assert_eq!(w, t);
    }

    #[test]
    fn backward_invariant_nilpotent_shift_escapes() {
        // a(e1) = e2, a(e2) = 0; t = span{e1}: the orbit of e1 leaves t, so W = 0
        let a = Matrix::from_i64_rows(&[&[0, 0], &[1, 0]], Q);
        let t = span(&[&[1, 0]], 2);
        let w = t.greatest_backward_invariant(&a).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn quotient_maps_kill_exactly_the_subspace() {
        let s = span(&[&[1, 0, 2], &[0, 1, 1]], 3);
        let (proj, sect) = s.quotient_maps();
        assert_eq!(proj.rows(), 1);
        assert!(proj.mul(&sect).is_identity());
        for v in s.basis_vectors() {
            assert!(proj.apply(&v).iter().all(Scalar::is_zero));
        }
        // proj has full rank
        assert_eq!(proj.rank(), 1);
    }

    #[test]
    fn coordinates_roundtrip() {
        let s = span(&[&[1, 0, 2], &[0, 1, 1]], 3);
        let v = vec![Q.from_i64(2), Q.from_i64(-1), Q.from_i64(3)];
        let coords = s.coordinates(&v).unwrap();
        let mut rebuilt = vec![Q.zero(); 3];
        for (i, c) in coords.iter().enumerate() {
            for j in 0..3 {
                let delta = c * &s.basis()[(i, j)];
                rebuilt[j] = &rebuilt[j] + &delta;
            }
        }
        assert_eq!(rebuilt, v);
        let outside = vec![Q.from_i64(0), Q.from_i64(0), Q.one()];
        assert!(s.coordinates(&outside).is_none());
    }
}
