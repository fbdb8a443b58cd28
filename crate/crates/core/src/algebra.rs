//! Hom-Lie algebras over a chosen basis: structure constants, axiom
//! validation, centers, commutators, quotients, direct sums, and the small
//! named algebras used throughout the test corpus.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Matrix, Scalar, Subspace};

/// A finite-dimensional (multiplicative) Hom-Lie algebra: skew bracket given
/// by structure constants stored for `i < j` only (skew-symmetry is by
/// construction), and the companion endomorphism `alpha`.
///
/// The stored data promises nothing beyond skew-symmetry; [`validate`]
/// checks the Hom-Jacobi identity and multiplicativity of `alpha`.
///
/// [`validate`]: HomLieAlgebra::validate
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLieAlgebra {
    field: FieldSpec,
    dim: usize,
    basis_names: Vec<String>,
    /// `bracket[pair_index(i, j)]` = coordinates of `[e_i, e_j]` for `i < j`.
    bracket: Vec<Vec<Scalar>>,
    alpha: Matrix,
}

pub(crate) fn pair_index(i: usize, j: usize, dim: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

pub(crate) fn pair_count(dim: usize) -> usize {
    dim * dim.saturating_sub(1) / 2
}

impl HomLieAlgebra {
    /// Zero-bracket skeleton; fill brackets with [`set_bracket`] afterwards.
    ///
    /// [`set_bracket`]: HomLieAlgebra::set_bracket
    pub fn with_zero_bracket(names: Vec<String>, alpha: Matrix) -> Result<HomLieAlgebra> {
        let dim = names.len();
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(Error::DimMismatch(format!(
                "alpha is {}x{}, expected {dim}x{dim}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        let field = alpha.field();
        Ok(HomLieAlgebra {
            field,
            dim,
            basis_names: names,
            bracket: vec![vec![field.zero(); dim]; pair_count(dim)],
            alpha,
        })
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vec<Scalar>) {
        assert!(i < j && j < self.dim, "set_bracket needs i < j < dim");
        assert_eq!(value.len(), self.dim);
        let idx = pair_index(i, j, self.dim);
        self.bracket[idx] = value;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// `[e_i, e_j]` for any index order (zero on the diagonal).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => vec![self.field.zero(); self.dim],
            Ordering::Less => self.bracket[pair_index(i, j, self.dim)].clone(),
            Ordering::Greater => self.bracket[pair_index(j, i, self.dim)]
                .iter()
                .map(|s| -s)
                .collect(),
        }
    }

    /// Bilinear extension of the bracket to arbitrary vectors.
    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![self.field.zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() && y[i].is_zero() {
                continue;
            }
            for j in (i + 1)..self.dim {
                // coefficient of [e_i, e_j]: x_i y_j - x_j y_i
                let c = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
                if c.is_zero() {
                    continue;
                }
                let table = &self.bracket[pair_index(i, j, self.dim)];
                for (k, t) in table.iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &(&c * t);
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().all(|v| v.iter().all(Scalar::is_zero))
    }

    /// Matrix of `x -> [x, e_j]`.
    fn ad_right(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, self.field, |k, i| {
            self.bracket_basis(i, j)[k].clone()
        })
    }

    /// Matrix of `x -> [v, x]` for a fixed vector `v`.
    pub(crate) fn ad_left_vec(&self, v: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim, self.field);
        for b in 0..self.dim {
            for (a, va) in v.iter().enumerate() {
                if va.is_zero() {
                    continue;
                }
                let col = self.bracket_basis(a, b);
                for k in 0..self.dim {
                    if !col[k].is_zero() {
                        m[(k, b)] = &m[(k, b)] + &(va * &col[k]);
                    }
                }
            }
        }
        m
    }

    /// Checks Hom-Jacobi on all basis triples and multiplicativity on all
    /// basis pairs, reporting every violated instance.
    pub fn validate(&self) -> AxiomReport {
        let mut violations = Vec::new();
        if self.is_abelian() {
            return AxiomReport { violations };
        }
        // bracket-with-alpha(e_i) operators, shared by both axiom loops
        let ad_alpha: Vec<Matrix> = (0..self.dim)
            .map(|i| self.ad_left_vec(&self.alpha.col_vec(i)))
            .collect();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut defect = ad_alpha[i].apply(&self.bracket_basis(j, k));
                    for (t, s) in ad_alpha[j].apply(&self.bracket_basis(k, i)).into_iter().enumerate() {
                        defect[t] = &defect[t] + &s;
                    }
                    for (t, s) in ad_alpha[k].apply(&self.bracket_basis(i, j)).into_iter().enumerate() {
                        defect[t] = &defect[t] + &s;
                    }
                    if !defect.iter().all(Scalar::is_zero) {
                        violations.push(AxiomViolation::HomJacobi { i, j, k });
                    }
                }
            }
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let lhs = self.alpha.apply(&self.bracket_basis(i, j));
                let rhs = ad_alpha[i].apply(&self.alpha.col_vec(j));
                if lhs != rhs {
                    violations.push(AxiomViolation::Multiplicativity { i, j });
                }
            }
        }
        AxiomReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().violations.is_empty()
    }

    /// `Z(L) = {x : [x, y] = 0 for all y}`.
    pub fn center(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(0, self.field);
        }
        let mut stacked = self.ad_right(0);
        for j in 1..self.dim {
            stacked = stacked.vstack(&self.ad_right(j));
        }
        Subspace::nullspace_of(&stacked)
    }

    /// The largest central ideal: elements whose whole forward alpha-orbit
    /// stays central.
    pub fn alpha_center(&self) -> Subspace {
        self.center()
            .greatest_backward_invariant(&self.alpha)
            .expect("alpha is square by construction")
    }

    /// Span of `[a, b]` over basis vectors of the two subspaces.
    pub fn commutator_sub(&self, a: &Subspace, b: &Subspace) -> Subspace {
        assert_eq!(a.ambient_dim(), self.dim);
        assert_eq!(b.ambient_dim(), self.dim);
        let mut vectors = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                vectors.push(self.bracket_vec(&x, &y));
            }
        }
        Subspace::from_vectors(&vectors, self.dim, self.field).expect("bracket vectors well-formed")
    }

    /// `[L, L]`.
    pub fn derived(&self) -> Subspace {
        let full = Subspace::full(self.dim, self.field);
        self.commutator_sub(&full, &full)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().is_full()
    }

    pub fn alpha_rank(&self) -> usize {
        self.alpha.rank()
    }

    pub fn alpha_surjective(&self) -> bool {
        self.alpha_rank() == self.dim
    }

    pub fn alpha_is_zero(&self) -> bool {
        self.alpha.is_zero()
    }

    /// `[space, L] subset of space` and `alpha(space) subset of space`.
    pub fn is_ideal(&self, space: &Subspace) -> bool {
        if space.ambient_dim() != self.dim {
            return false;
        }
        let full = Subspace::full(self.dim, self.field);
        let comm = self.commutator_sub(space, &full);
        space.contains(&comm) && space.contains(&space.image_under(&self.alpha))
    }

    pub fn ideal(&self, space: Subspace) -> Result<Ideal> {
        if !self.is_ideal(&space) {
            return Err(Error::NotIdeal(
                "subspace is not bracket-absorbing and alpha-invariant".into(),
            ));
        }
        Ok(Ideal { space })
    }

    /// Quotient by an ideal, on the lexicographically-first complement of
    /// the ideal's pivot columns. Returns the quotient and the projection.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(HomLieAlgebra, Matrix)> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotIdeal("quotient requires an alpha-invariant ideal".into()));
        }
        let (proj, sect) = ideal.quotient_maps();
        let qdim = proj.rows();
        let free: Vec<usize> = (0..self.dim)
            .filter(|c| !ideal.pivots().contains(c))
            .collect();
        let names = free.iter().map(|&c| self.basis_names[c].clone()).collect();
        let alpha_q = proj.mul(&self.alpha).mul(&sect);
        let mut q = HomLieAlgebra::with_zero_bracket(names, alpha_q)?;
        for a in 0..qdim {
            for b in (a + 1)..qdim {
                let w = self.bracket_basis(free[a], free[b]);
                q.set_bracket(a, b, proj.apply(&w));
            }
        }
        Ok((q, proj))
    }

    /// The subalgebra carried by a bracket-closed, alpha-invariant subspace,
    /// in the coordinates of its canonical basis. Returns the algebra and
    /// the inclusion matrix (columns = basis vectors).
    pub fn subalgebra(&self, space: &Subspace) -> Result<(HomLieAlgebra, Matrix)> {
        let k = space.dim();
        let rows = space.basis_vectors();
        let mut alpha_sub = Matrix::zeros(k, k, self.field);
        for (c, row) in rows.iter().enumerate() {
            let img = self.alpha.apply(row);
            let coords = space
                .coordinates(&img)
                .ok_or_else(|| Error::Precondition("subspace is not alpha-invariant".into()))?;
            for r in 0..k {
                alpha_sub[(r, c)] = coords[r].clone();
            }
        }
        let mut sub = HomLieAlgebra::with_zero_bracket(
            (0..k).map(|i| format!("s{}", i + 1)).collect(),
            alpha_sub,
        )?;
        for a in 0..k {
            for b in (a + 1)..k {
                let w = self.bracket_vec(&rows[a], &rows[b]);
                let coords = space
                    .coordinates(&w)
                    .ok_or_else(|| Error::Precondition("subspace is not bracket-closed".into()))?;
                sub.set_bracket(a, b, coords);
            }
        }
        let incl = space.basis().transpose();
        Ok((sub, incl))
    }

    /// `(L / [L, L], induced alpha)` with its projection.
    pub fn abelianization(&self) -> (HomLieAlgebra, Matrix) {
        let derived = self.derived();
        self.quotient(&derived)
            .expect("the derived subalgebra is always an alpha-invariant ideal")
    }

    /// Block-diagonal brackets and alpha; the two summands commute.
    pub fn direct_sum(&self, other: &HomLieAlgebra) -> Result<HomLieAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "direct sum over {} and {}",
                self.field, other.field
            )));
        }
        let n1 = self.dim;
        let mut names: Vec<String> = self.basis_names.clone();
        for n in &other.basis_names {
            let mut candidate = n.clone();
            let mut tick = 1;
            while names.contains(&candidate) {
                tick += 1;
                candidate = format!("{n}.{tick}");
            }
            names.push(candidate);
        }
        let alpha = self.alpha.direct_sum(&other.alpha);
        let mut sum = HomLieAlgebra::with_zero_bracket(names, alpha)?;
        for i in 0..n1 {
            for j in (i + 1)..n1 {
                let mut v = self.bracket[pair_index(i, j, n1)].clone();
                v.extend(vec![self.field.zero(); other.dim]);
                sum.set_bracket(i, j, v);
            }
        }
        for i in 0..other.dim {
            for j in (i + 1)..other.dim {
                let mut v = vec![self.field.zero(); n1];
                v.extend(other.bracket[pair_index(i, j, other.dim)].clone());
                sum.set_bracket(n1 + i, n1 + j, v);
            }
        }
        Ok(sum)
    }

    /// Identical structure constants and alpha on the nose (basis names are
    /// ignored). This is the equality used after a canonical basis
    /// alignment; it is not isomorphism search.
    pub fn same_structure(&self, other: &HomLieAlgebra) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.bracket == other.bracket
            && self.alpha == other.alpha
    }

    /// Defect of `matrix` as a Hom-Lie morphism `self -> target`: checks
    /// bracket preservation on basis pairs and the intertwining relation
    /// `matrix . alpha_src = alpha_tgt . matrix`.
    pub fn morphism_defect(&self, target: &HomLieAlgebra, matrix: &Matrix) -> Option<String> {
        if matrix.rows() != target.dim || matrix.cols() != self.dim {
            return Some(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                self.dim
            ));
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let lhs = matrix.apply(&self.bracket_basis(i, j));
                let rhs = target.bracket_vec(&matrix.col_vec(i), &matrix.col_vec(j));
                if lhs != rhs {
                    return Some(format!("bracket not preserved on pair ({i}, {j})"));
                }
            }
        }
        let left = matrix.mul(&self.alpha);
        let right = target.alpha.mul(matrix);
        if left != right {
            return Some("does not intertwine the alpha maps".into());
        }
        None
    }

    pub fn is_morphism(&self, target: &HomLieAlgebra, matrix: &Matrix) -> bool {
        self.morphism_defect(target, matrix).is_none()
    }
}

/// A validated ideal: bracket-absorbing and alpha-invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn space(&self) -> &Subspace {
        &self.space
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    HomJacobi { i: usize, j: usize, k: usize },
    Multiplicativity { i: usize, j: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::HomJacobi { i, j, k } => {
                write!(f, "Hom-Jacobi fails on basis triple ({i}, {j}, {k})")
            }
            AxiomViolation::Multiplicativity { i, j } => {
                write!(f, "alpha is not multiplicative on basis pair ({i}, {j})")
            }
        }
    }
}

/// Outcome of [`HomLieAlgebra::validate`]: empty means every axiom holds.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "all Hom-Lie axioms hold")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Abelian algebra on `n` generators with the given companion map. Any
/// linear map is admissible because the bracket vanishes identically.
pub fn abelian(n: usize, alpha: Matrix) -> Result<HomLieAlgebra> {
    HomLieAlgebra::with_zero_bracket((0..n).map(|i| format!("e{}", i + 1)).collect(), alpha)
}

pub fn abelian_identity(n: usize, field: FieldSpec) -> HomLieAlgebra {
    abelian(n, Matrix::identity(n, field)).expect("square by construction")
}

/// Heisenberg algebra of dimension `2m + 1` with `[x_i, y_i] = z` and
/// `alpha = id`.
pub fn heisenberg(m: usize, field: FieldSpec) -> Result<HomLieAlgebra> {
    if m < 1 {
        return Err(Error::Precondition("heisenberg needs m >= 1".into()));
    }
    let dim = 2 * m + 1;
    let mut names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    names.extend((1..=m).map(|i| format!("y{i}")));
    names.push("z".into());
    let mut l = HomLieAlgebra::with_zero_bracket(names, Matrix::identity(dim, field))?;
    for i in 0..m {
        let mut v = vec![field.zero(); dim];
        v[dim - 1] = field.one();
        l.set_bracket(i, m + i, v);
    }
    Ok(l)
}

/// Split simple three-dimensional algebra on the basis `e, f, h` with
/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f` and `alpha = id`: a perfect,
/// centerless test subject. Needs characteristic other than 2.
pub fn sl2(field: FieldSpec) -> Result<HomLieAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::Characteristic("sl2 requires characteristic != 2".into()));
    }
    let mut l = HomLieAlgebra::with_zero_bracket(
        vec!["e".into(), "f".into(), "h".into()],
        Matrix::identity(3, field),
    )?;
    // [e, f] = h
    l.set_bracket(0, 1, vec![field.zero(), field.zero(), field.one()]);
    // [e, h] = -2e
    l.set_bracket(0, 2, vec![field.from_i64(-2), field.zero(), field.zero()]);
    // [f, h] = 2f
    l.set_bracket(1, 2, vec![field.zero(), field.from_i64(2), field.zero()]);
    Ok(l)
}

/// Three-dimensional algebra with `[e1, e2] = e3` and the non-surjective
/// twist `alpha: e1 -> e3, e2 -> e2, e3 -> 0`. Its alpha-center equals its
/// derived subalgebra `span{e3}`, and it is capable.
pub fn twisted_heisenberg(field: FieldSpec) -> HomLieAlgebra {
    let alpha = Matrix::from_i64_rows(&[&[0, 0, 0], &[0, 1, 0], &[1, 0, 0]], field);
    let mut l = HomLieAlgebra::with_zero_bracket(
        vec!["e1".into(), "e2".into(), "e3".into()],
        alpha,
    )
    .expect("square by construction");
    l.set_bracket(0, 1, vec![field.zero(), field.zero(), field.one()]);
    l
}

/// Four-dimensional cover of [`twisted_heisenberg`]: `[f1, f2] = f3`,
/// `[f3, f1] = f4`, `alpha: f1 -> f3, f2 -> f2, f3 -> 0, f4 -> 0`. Its
/// quotient by the alpha-center `span{f4}` is [`twisted_heisenberg`].
pub fn twisted_heisenberg_cover(field: FieldSpec) -> HomLieAlgebra {
    let alpha = Matrix::from_i64_rows(
        &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]],
        field,
    );
    let mut k = HomLieAlgebra::with_zero_bracket(
        vec!["f1".into(), "f2".into(), "f3".into(), "f4".into()],
        alpha,
    )
    .expect("square by construction");
    k.set_bracket(0, 1, vec![field.zero(), field.zero(), field.one(), field.zero()]);
    // [f1, f3] = -[f3, f1] = -f4
    k.set_bracket(0, 2, vec![field.zero(), field.zero(), field.zero(), field.from_i64(-1)]);
    k
}

/// Capability cover of an abelian algebra: adjoin one central generator
/// `e_jk` per basis pair `j < k` with `[e_j, e_k] = e_jk`, extending alpha
/// multiplicatively on the new generators. The quotient by the alpha-center
/// recovers the input (for inputs of dimension >= 2).
pub fn abelian_cover(l: &HomLieAlgebra) -> Result<HomLieAlgebra> {
    if !l.is_abelian() {
        return Err(Error::Precondition("abelian_cover needs an abelian input".into()));
    }
    let n = l.dim();
    let field = l.field();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| ((j + 1)..n).map(move |k| (j, k))).collect();
    let dim = n + pairs.len();
    let mut names = l.basis_names().to_vec();
    for &(j, k) in &pairs {
        names.push(format!("{}_{}", l.basis_names()[j], l.basis_names()[k]));
    }
    // alpha(e_i) as in the input; alpha(e_jk) = [alpha e_j, alpha e_k]
    // expanded over the pair generators
    let mut alpha = Matrix::zeros(dim, dim, field);
    for i in 0..n {
        for r in 0..n {
            alpha[(r, i)] = l.alpha()[(r, i)].clone();
        }
    }
    for (idx, &(j, k)) in pairs.iter().enumerate() {
        let aj = l.alpha().col_vec(j);
        let ak = l.alpha().col_vec(k);
        for (pidx, &(p, q)) in pairs.iter().enumerate() {
            // coefficient of e_pq in [alpha e_j, alpha e_k]
            alpha[(n + pidx, n + idx)] = &(&aj[p] * &ak[q]) - &(&aj[q] * &ak[p]);
        }
    }
    let mut cover = HomLieAlgebra::with_zero_bracket(names, alpha)?;
    for (idx, &(j, k)) in pairs.iter().enumerate() {
        let mut v = vec![field.zero(); dim];
        v[n + idx] = field.one();
        cover.set_bracket(j, k, v);
    }
    let report = cover.validate();
    if !report.is_valid() {
        return Err(Error::Certificate(format!(
            "abelian cover failed validation: {report}"
        )));
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn abelian_is_valid_for_any_alpha() {
        let weird = Matrix::from_i64_rows(&[&[3, 1], &[7, -2]], Q);
        let l = abelian(2, weird).unwrap();
        assert!(l.is_valid());
        assert!(l.is_abelian());
    }

    #[test]
    fn twisted_heisenberg_is_valid() {
        assert!(twisted_heisenberg(Q).is_valid());
        assert!(twisted_heisenberg_cover(Q).is_valid());
    }

    #[test]
    fn breaking_the_twist_violates_multiplicativity() {
        // alpha(e3) = e3 makes alpha([e1,e2]) = e3 but [alpha e1, alpha e2] = [e3, e2] = 0
        let base = twisted_heisenberg(Q);
        let mut alpha = base.alpha().clone();
        alpha[(2, 2)] = Q.one();
        let mut l = HomLieAlgebra::with_zero_bracket(base.basis_names().to_vec(), alpha).unwrap();
        l.set_bracket(0, 1, vec![Q.zero(), Q.zero(), Q.one()]);
        let report = l.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::Multiplicativity { i: 0, j: 1 })));
    }

    #[test]
    fn commutator_of_abelian_is_zero() {
        let l = abelian_identity(3, Q);
        assert!(l.derived().is_zero());
    }

    #[test]
    fn twisted_heisenberg_centers() {
        let l = twisted_heisenberg(Q);
        let derived = l.derived();
        assert_eq!(derived.dim(), 1);
        let z_alpha = l.alpha_center();
        assert_eq!(z_alpha, derived); // both are span{e3}
        assert!(z_alpha.contains_vector(&[Q.zero(), Q.zero(), Q.one()]));
    }

    #[test]
    fn cover_alpha_center_is_span_f4() {
        let k = twisted_heisenberg_cover(Q);
        let za = k.alpha_center();
        assert_eq!(za.dim(), 1);
        assert!(za.contains_vector(&[Q.zero(), Q.zero(), Q.zero(), Q.one()]));
    }

    #[test]
    fn cover_quotient_matches_twisted_heisenberg() {
        let k = twisted_heisenberg_cover(Q);
        let l = twisted_heisenberg(Q);
        let (q, proj) = k.quotient(&k.alpha_center()).unwrap();
        assert!(q.same_structure(&l));
        assert!(k.is_morphism(&q, &proj));
    }

    #[test]
    fn heisenberg_has_one_dimensional_center() {
        let h = heisenberg(1, Q).unwrap();
        assert!(h.is_valid());
        let c = h.center();
        assert_eq!(c.dim(), 1);
        assert_eq!(h.derived(), c);
        let (q, _) = h.quotient(&c).unwrap();
        assert!(q.is_abelian());
        assert_eq!(q.dim(), 2);
    }

    #[test]
    fn heisenberg_center_for_larger_m() {
        let h = heisenberg(3, Q).unwrap();
        assert!(h.is_valid());
        assert_eq!(h.center().dim(), 1);
        assert_eq!(h.alpha_center().dim(), 1);
    }

    #[test]
    fn sl2_is_perfect_and_centerless() {
        let l = sl2(Q).unwrap();
        assert!(l.is_valid());
        assert!(l.is_perfect());
        assert!(l.center().is_zero());
        assert!(sl2(FieldSpec::prime(2).unwrap()).is_err());
    }

    #[test]
    fn abelian_center_equals_alpha_center_for_any_alpha() {
        let nilp = Matrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]], Q);
        let l = abelian(3, nilp).unwrap();
        assert!(l.center().is_full());
        assert!(l.alpha_center().is_full());
    }

    #[test]
    fn alpha_center_equals_center_when_alpha_surjective() {
        let l = twisted_heisenberg(Q);
        assert!(!l.alpha_surjective());
        let h = heisenberg(2, Q).unwrap();
        assert!(h.alpha_surjective());
        assert_eq!(h.center(), h.alpha_center());
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let l = sl2(Q).unwrap();
        let zero = Subspace::zero(3, Q);
        let (q, proj) = l.quotient(&zero).unwrap();
        assert!(q.same_structure(&l));
        assert!(proj.is_identity());
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let l = heisenberg(1, Q).unwrap();
        // span{x1} is not an ideal: [x1, y1] = z is outside
        let s = Subspace::from_matrix(&Matrix::from_i64_rows(&[&[1, 0, 0]], Q));
        assert!(l.quotient(&s).is_err());
    }

    #[test]
    fn direct_sum_blocks_commute() {
        let l = heisenberg(1, Q).unwrap().direct_sum(&abelian_identity(1, Q)).unwrap();
        assert!(l.is_valid());
        assert_eq!(l.dim(), 4);
        assert_eq!(l.derived().dim(), 1);
        let mut x = vec![Q.zero(); 4];
        x[0] = Q.one();
        let mut w = vec![Q.zero(); 4];
        w[3] = Q.one();
        assert!(l.bracket_vec(&x, &w).iter().all(Scalar::is_zero));
    }

    #[test]
    fn direct_sum_with_zero_is_identity() {
        let l = sl2(Q).unwrap();
        let zero = abelian_identity(0, Q);
        let sum = l.direct_sum(&zero).unwrap();
        assert!(sum.same_structure(&l));
    }

    #[test]
    fn abelian_sum_of_abelians() {
        let sum = abelian_identity(1, Q).direct_sum(&abelian_identity(1, Q)).unwrap();
        assert!(sum.same_structure(&abelian_identity(2, Q)));
    }

    #[test]
    fn abelian_cover_of_plane() {
        let k = abelian_cover(&abelian_identity(2, Q)).unwrap();
        assert_eq!(k.dim(), 3);
        assert!(k.is_valid());
        let za = k.alpha_center();
        assert_eq!(za.dim(), 1);
        assert!(za.contains_vector(&[Q.zero(), Q.zero(), Q.one()]));
        let (q, _) = k.quotient(&za).unwrap();
        assert!(q.same_structure(&abelian_identity(2, Q)));
    }

    #[test]
    fn dimension_bookkeeping_through_quotients() {
        let k = twisted_heisenberg_cover(Q);
        let i = k.alpha_center();
        let (q, _) = k.quotient(&i).unwrap();
        assert_eq!(k.dim(), i.dim() + q.dim());
    }

    #[test]
    fn derived_contained_in_ideals_with_abelian_quotient() {
        let l = heisenberg(1, Q).unwrap();
        let derived = l.derived();
        let center = l.center();
        let (q, _) = l.quotient(&center).unwrap();
        assert!(q.is_abelian());
        assert!(center.contains(&derived));
    }

    #[test]
    fn subalgebra_on_ideal_coordinates() {
        let l = heisenberg(1, Q).unwrap().direct_sum(&abelian_identity(1, Q)).unwrap();
        let d = l.derived(); // span{z}
        let (sub, incl) = l.subalgebra(&d).unwrap();
        assert_eq!(sub.dim(), 1);
        assert!(sub.is_abelian());
        assert_eq!(incl.rows(), 4);
        assert_eq!(incl.cols(), 1);
    }
}
