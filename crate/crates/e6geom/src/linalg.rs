//! Exact linear algebra over the fields of [`crate::field`].
//!
//! Everything here is deterministic and canonical: subspaces are stored as
//! reduced row-echelon bases, so two subspaces are equal exactly when their
//! representations are bitwise equal, and set-level operations (kernel,
//! intersection, sum) return the same basis no matter how their inputs were
//! presented.
//!
//! Quadratic forms are handled through their polar Gram matrix (the
//! characteristic is always >= 5, so `q(v) = B(v,v)/2` loses nothing) and can
//! be split into hyperbolic planes, an anisotropic part, and a radical by
//! [`QuadraticForm::witt_decompose`].

use std::fmt;
use std::ops::{Index, IndexMut};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::field::{Field, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// Two objects that must live in the same ambient space do not.
    AmbientMismatch { left: usize, right: usize },
    /// A Gram matrix that must be symmetric is not.
    NotSymmetric,
    /// The seeded isotropic-vector sweep hit its cap and exhaustive
    /// enumeration was infeasible. Over finite fields this indicates a bug,
    /// not bad luck: every form of dimension >= 3 has an isotropic vector.
    IsotropicSearchFailed { dim: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::AmbientMismatch { left, right } => {
                write!(f, "ambient dimensions differ: {left} vs {right}")
            }
            LinalgError::NotSymmetric => write!(f, "Gram matrix is not symmetric"),
            LinalgError::IsotropicSearchFailed { dim } => {
                write!(f, "no isotropic vector found in dimension {dim}")
            }
        }
    }
}

impl std::error::Error for LinalgError {}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors, which must all have equal length.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend_from_slice(r);
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        Matrix::from_fn(self.field, self.rows, rhs.cols, |i, j| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)] * rhs[(k, j)];
            }
            acc
        })
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)] * v[k];
                }
                acc
            })
            .collect()
    }

    /// Stacks `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.cols, "column counts must agree");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    /// Reduced row-echelon form together with the pivot columns.
    ///
    /// The result is canonical: any two row-equivalent matrices produce the
    /// same output, with unit pivots and zeros above and below each pivot.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)] * inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)];
                    for j in c..m.cols {
                        let sub = factor * m[(r, j)];
                        m[(i, j)] = m[(i, j)] - sub;
                    }
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

    /// The right kernel `{x : M x = 0}` as a canonical subspace.
    pub fn kernel(&self) -> Subspace<F> {
        let (r, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![self.field.zero(); self.cols];
            x[free] = self.field.one();
            for (row, &col) in pivots.iter().enumerate() {
                x[col] = -r[(row, free)];
            }
            basis.push(x);
        }
        Subspace::from_spanning(self.field, basis, self.cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;
    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
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

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

/// A linear subspace stored as a canonical reduced row-echelon basis.
///
/// Canonicity makes equality bitwise: two subspaces are the same set of
/// vectors if and only if their `basis` matrices are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    /// The span of the given vectors inside `F^ambient`.
    pub fn from_spanning(field: F, spanning: Vec<Vec<F::Elem>>, ambient: usize) -> Self {
        let m = Matrix::from_rows(field, spanning, ambient);
        let (r, pivots) = m.rref();
        let basis = Matrix::from_rows(field, (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(), ambient);
        Subspace { basis }
    }

    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient) }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient) }
    }

    pub fn field(&self) -> F {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn basis_row(&self, i: usize) -> &[F::Elem] {
        self.basis.row(i)
    }

    /// Reduces `v` against the basis; the zero vector means membership.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient(), "vector/ambient mismatch");
        let mut v = v.to_vec();
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let pivot = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            let c = v[pivot];
            if !c.is_zero() {
                for (vj, rj) in v.iter_mut().zip(row) {
                    *vj = *vj - c * *rj;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis_row(i)))
    }

    /// The annihilator `{f : f . v = 0 for all v in self}` under the standard
    /// dot product.
    pub fn annihilator(&self) -> Subspace<F> {
        self.basis.kernel()
    }

    /// Intersection, computed as the kernel of the stacked dual conditions of
    /// both inputs. Canonical and symmetric in its arguments.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        if self.ambient() != other.ambient() {
            return Err(LinalgError::AmbientMismatch { left: self.ambient(), right: other.ambient() });
        }
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(a.basis.vstack(&b.basis).kernel())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        if self.ambient() != other.ambient() {
            return Err(LinalgError::AmbientMismatch { left: self.ambient(), right: other.ambient() });
        }
        let stacked = self.basis.vstack(&other.basis);
        Ok(Subspace::from_spanning(self.field(), stacked.row_vecs(), self.ambient()))
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) {:?}", self.dim(), self.ambient(), self.basis)
    }
}

/// If `w = c * v` for a (unique) scalar `c` and `v != 0`, returns `c`.
pub fn scalar_multiple_of<E: FieldElem>(w: &[E], v: &[E]) -> Option<E> {
    assert_eq!(w.len(), v.len());
    let i = v.iter().position(|x| !x.is_zero())?;
    let c = w[i] / v[i];
    if w.iter().zip(v).all(|(wj, vj)| *wj == c * *vj) {
        Some(c)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Quadratic forms and Witt decomposition
// ---------------------------------------------------------------------------

/// A quadratic form, stored through its polar Gram matrix `B(u, v)`, with
/// `q(v) = B(v, v) / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm<F: Field> {
    gram: Matrix<F>,
}

impl<F: Field> QuadraticForm<F> {
    pub fn new(gram: Matrix<F>) -> Result<Self, LinalgError> {
        if gram.rows() != gram.cols() {
            return Err(LinalgError::AmbientMismatch { left: gram.rows(), right: gram.cols() });
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(LinalgError::NotSymmetric);
                }
            }
        }
        Ok(QuadraticForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn field(&self) -> F {
        self.gram.field()
    }
    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn polar(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        let mut acc = self.field().zero();
        for (i, &ui) in u.iter().enumerate().take(self.dim()) {
            if ui.is_zero() {
                continue;
            }
            for (j, &vj) in v.iter().enumerate().take(self.dim()) {
                acc = acc + ui * self.gram[(i, j)] * vj;
            }
        }
        acc
    }

    pub fn eval(&self, v: &[F::Elem]) -> F::Elem {
        self.polar(v, v).div_int(2)
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn radical(&self) -> Subspace<F> {
        self.gram.kernel()
    }

    /// Splits the form into hyperbolic planes, an anisotropic remainder, and
    /// the radical. Deterministic: the isotropic-vector search below runs a
    /// fixed-seed sweep.
    pub fn witt_decompose(&self) -> Result<WittDecomposition<F>, LinalgError> {
        let field = self.field();
        let n = self.dim();
        let radical = self.radical();
        let radical_basis = radical.basis().row_vecs();

        // Greedily extend the radical by standard basis vectors; the added
        // vectors span a complement on which the form is nondegenerate.
        let mut span = radical.clone();
        let mut work: Vec<Vec<F::Elem>> = Vec::new();
        for i in 0..n {
            if span.dim() == n {
                break;
            }
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            if !span.contains(&e) {
                let mut rows = span.basis().row_vecs();
                rows.push(e.clone());
                span = Subspace::from_spanning(field, rows, n);
                work.push(e);
            }
        }

        let mut pairs: Vec<HyperbolicPair<F>> = Vec::new();
        while let Some(v) = self.find_isotropic(&work)? {
            debug_assert!(v.iter().any(|x| !x.is_zero()));
            // A partner with B(v, w) != 0 exists because the restriction of B
            // to the complement of the radical is nondegenerate.
            let w = work
                .iter()
                .find(|w| !self.polar(&v, w).is_zero())
                .expect("isotropic vector has a non-orthogonal partner")
                .clone();
            let w = scale(&w, self.polar(&v, &w).inv().unwrap());
            // h completes v to a hyperbolic pair: q(h) = 0, B(v, h) = 1.
            let h = sub(&w, &scale(&v, self.eval(&w)));
            debug_assert!(self.eval(&h).is_zero());
            debug_assert!(self.polar(&v, &h) == field.one());

            // Project the working set onto the orthogonal complement of the
            // new plane and re-extract an independent spanning set.
            let projected: Vec<Vec<F::Elem>> = work
                .iter()
                .map(|u| {
                    let u1 = sub(u, &scale(&v, self.polar(u, &h)));
                    sub(&u1, &scale(&h, self.polar(&u1, &v)))
                })
                .collect();
            let reduced = Subspace::from_spanning(field, projected, n);
            let new_work = reduced.basis().row_vecs();
            assert_eq!(new_work.len(), work.len() - 2, "hyperbolic split must shed two dimensions");
            work = new_work;
            pairs.push((v, h));
        }

        let aniso = work;
        Ok(WittDecomposition {
            index: pairs.len(),
            radical_dim: radical_basis.len(),
            anisotropic_dim: aniso.len(),
            hyperbolic_pairs: pairs,
            anisotropic_basis: aniso,
            radical_basis,
        })
    }

    /// Finds a nonzero isotropic vector in the span of `work`, or `None` if
    /// the restricted form is anisotropic. Dimensions <= 2 are decided
    /// algebraically; higher dimensions run a fixed-seed pseudorandom sweep
    /// (capped) and then exhaustive enumeration when the space is small
    /// enough to scan.
    fn find_isotropic(&self, work: &[Vec<F::Elem>]) -> Result<Option<Vec<F::Elem>>, LinalgError> {
        let field = self.field();
        let dim = work.len();
        if dim == 0 {
            return Ok(None);
        }
        for v in work {
            if self.eval(v).is_zero() {
                return Ok(Some(v.clone()));
            }
        }
        if dim == 1 {
            return Ok(None);
        }
        if dim == 2 {
            // a x^2 + b xy + c y^2 with a, c != 0 (handled above); isotropic
            // exactly when the discriminant is a square.
            let a = self.eval(&work[0]);
            let b = self.polar(&work[0], &work[1]);
            let c = self.eval(&work[1]);
            let disc = b * b - field.from_int(4) * a * c;
            return Ok(disc.sqrt().map(|s| {
                let x = (s - b).checked_div(field.from_int(2) * a).expect("a is nonzero");
                add(&scale(&work[0], x), &work[1])
            }));
        }
        // Seeded sweep: over a finite field, a nondegenerate form in
        // dimension >= 3 is always isotropic, so this terminates fast.
        let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_1507 ^ (dim as u64));
        const SWEEP_CAP: usize = 1_000_000;
        for _ in 0..SWEEP_CAP {
            let v = random_combination(field, work, &mut rng);
            if v.iter().any(|x| !x.is_zero()) && self.eval(&v).is_zero() {
                return Ok(Some(v));
            }
        }
        // Exhaustive fallback for small spaces.
        if (field.order() as f64).powi(dim as i32) <= 1e7 {
            let elems = field.elements();
            let mut coeffs = vec![0usize; dim];
            loop {
                let v = combination(field, work, &coeffs, &elems);
                if v.iter().any(|x| !x.is_zero()) && self.eval(&v).is_zero() {
                    return Ok(Some(v));
                }
                let mut k = 0;
                loop {
                    if k == dim {
                        return Ok(None);
                    }
                    coeffs[k] += 1;
                    if coeffs[k] < elems.len() {
                        break;
                    }
                    coeffs[k] = 0;
                    k += 1;
                }
            }
        }
        Err(LinalgError::IsotropicSearchFailed { dim })
    }
}

/// The result of [`QuadraticForm::witt_decompose`]: `dim = 2*index +
/// anisotropic_dim + radical_dim`, with all basis vectors expressed in the
/// form's original coordinates.
/// Two isotropic vectors `(v, h)` with polar pairing `B(v, h) = 1`.
pub type HyperbolicPair<F> = (Vec<<F as Field>::Elem>, Vec<<F as Field>::Elem>);

#[derive(Clone, Debug)]
pub struct WittDecomposition<F: Field> {
    pub index: usize,
    pub radical_dim: usize,
    pub anisotropic_dim: usize,
    pub hyperbolic_pairs: Vec<HyperbolicPair<F>>,
    pub anisotropic_basis: Vec<Vec<F::Elem>>,
    pub radical_basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> WittDecomposition<F> {
    pub fn rank(&self) -> usize {
        2 * self.index + self.anisotropic_dim
    }

    pub fn total_dim(&self) -> usize {
        self.rank() + self.radical_dim
    }

    /// Checks every structural property of the decomposition against the
    /// original form: pairs are hyperbolic, blocks are mutually orthogonal,
    /// and the radical pairs to zero with everything.
    pub fn verify_against(&self, form: &QuadraticForm<F>) -> bool {
        let one = form.field().one();
        let mut blocks: Vec<Vec<F::Elem>> = Vec::new();
        for (v, h) in &self.hyperbolic_pairs {
            if !form.eval(v).is_zero() || !form.eval(h).is_zero() || form.polar(v, h) != one {
                return false;
            }
            blocks.push(v.clone());
            blocks.push(h.clone());
        }
        // Hyperbolic planes are orthogonal to each other and to the rest.
        for (i, (v, h)) in self.hyperbolic_pairs.iter().enumerate() {
            for (w, g) in self.hyperbolic_pairs.iter().skip(i + 1) {
                for (x, y) in [(v, w), (v, g), (h, w), (h, g)] {
                    if !form.polar(x, y).is_zero() {
                        return false;
                    }
                }
            }
            for a in &self.anisotropic_basis {
                if !form.polar(v, a).is_zero() || !form.polar(h, a).is_zero() {
                    return false;
                }
            }
        }
        for r in &self.radical_basis {
            blocks.push(r.clone());
            for other in blocks.iter().chain(self.anisotropic_basis.iter()) {
                if !form.polar(r, other).is_zero() {
                    return false;
                }
            }
        }
        // All blocks together must span a space of the full dimension.
        let mut all = blocks;
        all.extend(self.anisotropic_basis.iter().cloned());
        let span = Subspace::from_spanning(form.field(), all, form.dim());
        span.dim() == self.total_dim() && self.total_dim() == form.dim()
    }
}

fn scale<E: FieldElem>(v: &[E], c: E) -> Vec<E> {
    v.iter().map(|x| *x * c).collect()
}

fn add<E: FieldElem>(u: &[E], v: &[E]) -> Vec<E> {
    u.iter().zip(v).map(|(a, b)| *a + *b).collect()
}

fn sub<E: FieldElem>(u: &[E], v: &[E]) -> Vec<E> {
    u.iter().zip(v).map(|(a, b)| *a - *b).collect()
}

fn random_combination<F: Field, R: Rng>(field: F, basis: &[Vec<F::Elem>], rng: &mut R) -> Vec<F::Elem> {
    let n = basis.first().map_or(0, |b| b.len());
    let mut v = vec![field.zero(); n];
    for b in basis {
        let c = field.sample(rng);
        if c.is_zero() {
            continue;
        }
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi = *vi + c * *bi;
        }
    }
    v
}

fn combination<F: Field>(
    field: F,
    basis: &[Vec<F::Elem>],
    coeffs: &[usize],
    elems: &[F::Elem],
) -> Vec<F::Elem> {
    let n = basis.first().map_or(0, |b| b.len());
    let mut v = vec![field.zero(); n];
    for (b, &ci) in basis.iter().zip(coeffs) {
        let c = elems[ci];
        if c.is_zero() {
            continue;
        }
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi = *vi + c * *bi;
        }
    }
    v
}
