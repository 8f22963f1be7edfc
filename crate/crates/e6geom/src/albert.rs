//! The split exceptional Jordan algebra: 3x3 Hermitian matrices over the
//! split octonions.
//!
//! An element is stored as three diagonal scalars and three octonions,
//! `(xi_1, xi_2, xi_3; x_1, x_2, x_3)`, standing for the Hermitian matrix
//!
//! ```text
//! [ xi_1      x_3       conj(x_2) ]
//! [ conj(x_3) xi_2      x_1       ]
//! [ x_2       conj(x_1) xi_3      ]
//! ```
//!
//! The structure carried here is the degree-3 norm form `N`, the trace
//! bilinear form `T`, the quadratic adjoint `#` (sharp) with its
//! bilinearization, the Freudenthal cross product, and the rank
//! stratification `0..=3` defined by the vanishing pattern of `x`, `x#`,
//! `N(x)`. The key dualities — `T(x#, y) = dN(x)(y)` and `(x#)# = N(x) x` —
//! are exercised heavily by the test suites; the directional derivative of
//! `N` is computed by exact interpolation, which keeps the two sides of each
//! identity independent of one another.
//!
//! Indices run 0..3 in code for the textbook labels 1..3; `(i, j, k)` always
//! denotes a cyclic triple.

use std::fmt;

use rand::Rng;

use crate::field::{Field, FieldElem};
use crate::linalg::{Matrix, Subspace};
use crate::octonion::Octonion;

pub const ALBERT_DIM: usize = 27;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlbertError {
    /// An operation required an element of a specific rank.
    RankError { expected: usize, found: usize },
}

impl fmt::Display for AlbertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlbertError::RankError { expected, found } => {
                write!(f, "element has rank {found}, expected {expected}")
            }
        }
    }
}

impl std::error::Error for AlbertError {}

/// An element `(xi_1, xi_2, xi_3; x_1, x_2, x_3)` of the 27-dimensional
/// exceptional Jordan algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AlbertElement<E: FieldElem> {
    pub diag: [E; 3],
    pub oct: [Octonion<E>; 3],
}

impl<E: FieldElem> AlbertElement<E> {
    pub fn zero(field: E::F) -> Self {
        AlbertElement { diag: [field.zero(); 3], oct: [Octonion::zero(field); 3] }
    }

    pub fn one(field: E::F) -> Self {
        AlbertElement { diag: [field.one(); 3], oct: [Octonion::zero(field); 3] }
    }

    /// The i-th diagonal idempotent (i in 0..3).
    pub fn diag_unit(field: E::F, i: usize) -> Self {
        let mut x = AlbertElement::zero(field);
        x.diag[i] = field.one();
        x
    }

    pub fn field(&self) -> E::F {
        self.diag[0].field()
    }

    /// Coordinates in the fixed order `(xi_1, xi_2, xi_3, x_1[8], x_2[8], x_3[8])`.
    pub fn coords(&self) -> Vec<E> {
        let mut c = Vec::with_capacity(ALBERT_DIM);
        c.extend_from_slice(&self.diag);
        for o in &self.oct {
            c.extend_from_slice(&o.coords());
        }
        c
    }

    pub fn from_coords(c: &[E]) -> Self {
        assert_eq!(c.len(), ALBERT_DIM);
        AlbertElement {
            diag: [c[0], c[1], c[2]],
            oct: [
                Octonion::from_coords(&c[3..11]),
                Octonion::from_coords(&c[11..19]),
                Octonion::from_coords(&c[19..27]),
            ],
        }
    }

    pub fn basis_elem(field: E::F, k: usize) -> Self {
        let mut c = vec![field.zero(); ALBERT_DIM];
        c[k] = field.one();
        AlbertElement::from_coords(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|x| x.is_zero()) && self.oct.iter().all(|o| o.is_zero())
    }

    pub fn map_coords(&self, mut f: impl FnMut(E) -> E) -> Self {
        AlbertElement {
            diag: [f(self.diag[0]), f(self.diag[1]), f(self.diag[2])],
            oct: [
                self.oct[0].map_coords(&mut f),
                self.oct[1].map_coords(&mut f),
                self.oct[2].map_coords(&mut f),
            ],
        }
    }

    /// Simultaneous cyclic shift of diagonal and octonion slots by `s`
    /// places; an algebra automorphism (conjugation by a permutation matrix).
    pub fn cyclic_shift(&self, s: usize) -> Self {
        let p = |i: usize| (i + s) % 3;
        AlbertElement {
            diag: [self.diag[p(0)], self.diag[p(1)], self.diag[p(2)]],
            oct: [self.oct[p(0)], self.oct[p(1)], self.oct[p(2)]],
        }
    }

    pub fn sample<R: Rng + ?Sized>(field: E::F, rng: &mut R) -> Self {
        AlbertElement {
            diag: [field.sample(rng), field.sample(rng), field.sample(rng)],
            oct: [
                Octonion::sample(field, rng),
                Octonion::sample(field, rng),
                Octonion::sample(field, rng),
            ],
        }
    }

    // -- linear structure ---------------------------------------------------

    pub fn add(&self, y: &Self) -> Self {
        AlbertElement {
            diag: [self.diag[0] + y.diag[0], self.diag[1] + y.diag[1], self.diag[2] + y.diag[2]],
            oct: [self.oct[0] + y.oct[0], self.oct[1] + y.oct[1], self.oct[2] + y.oct[2]],
        }
    }

    pub fn sub(&self, y: &Self) -> Self {
        AlbertElement {
            diag: [self.diag[0] - y.diag[0], self.diag[1] - y.diag[1], self.diag[2] - y.diag[2]],
            oct: [self.oct[0] - y.oct[0], self.oct[1] - y.oct[1], self.oct[2] - y.oct[2]],
        }
    }

    pub fn scale(&self, c: E) -> Self {
        AlbertElement {
            diag: [self.diag[0] * c, self.diag[1] * c, self.diag[2] * c],
            oct: [self.oct[0] * c, self.oct[1] * c, self.oct[2] * c],
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-self.field().one())
    }

    // -- multiplicative structure -------------------------------------------

    /// The Jordan product `x o y = (xy + yx) / 2` of the Hermitian matrices.
    pub fn jordan_mul(&self, y: &Self) -> Self {
        let f = self.field();
        let half = f.from_int(2).inv().expect("2 is a unit");
        let mut diag = [f.zero(); 3];
        let mut oct = [Octonion::zero(f); 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            diag[i] = self.diag[i] * y.diag[i]
                + (self.oct[j].polar_norm(&y.oct[j]) + self.oct[k].polar_norm(&y.oct[k])) * half;
            oct[i] = (y.oct[i] * (self.diag[j] + self.diag[k])
                + self.oct[i] * (y.diag[j] + y.diag[k])
                + (y.oct[j] * self.oct[k]).conj()
                + (self.oct[j] * y.oct[k]).conj())
                * half;
        }
        AlbertElement { diag, oct }
    }

    /// The matrix trace.
    pub fn trace(&self) -> E {
        self.diag[0] + self.diag[1] + self.diag[2]
    }

    /// The trace bilinear form `T(x, y) = trace(x o y)`, in closed form.
    pub fn trace_form(&self, y: &Self) -> E {
        let mut acc = self.diag[0] * y.diag[0] + self.diag[1] * y.diag[1] + self.diag[2] * y.diag[2];
        for i in 0..3 {
            acc = acc + self.oct[i].polar_norm(&y.oct[i]);
        }
        acc
    }

    /// The cubic norm
    /// `N(x) = xi_1 xi_2 xi_3 - sum_i xi_i n(x_i) + t((x_1 x_2) x_3)`.
    pub fn norm(&self) -> E {
        let mut acc = self.diag[0] * self.diag[1] * self.diag[2];
        for i in 0..3 {
            acc = acc - self.diag[i] * self.oct[i].norm();
        }
        acc + ((self.oct[0] * self.oct[1]) * self.oct[2]).trace()
    }

    /// The directional derivative `dN(x)(y)`: the t-coefficient of
    /// `N(x + t y)`, recovered exactly by interpolation at t in {+-1, +-2}.
    /// Divides by 12, hence the characteristic >= 5 requirement.
    pub fn dnorm(&self, y: &Self) -> E {
        let f = self.field();
        let n = |t: i64| self.add(&y.scale(f.from_int(t))).norm();
        let eight = f.from_int(8);
        let twelve_inv = f.from_int(12).inv().expect("12 is a unit");
        (eight * (n(1) - n(-1)) - (n(2) - n(-2))) * twelve_inv
    }

    /// The quadratic adjoint (sharp):
    /// diagonal `xi_j xi_k - n(x_i)`, octonion `conj(x_j x_k) - xi_i x_i`.
    /// Satisfies `T(x#, y) = dN(x)(y)` and `(x#)# = N(x) x`.
    pub fn adjoint(&self) -> Self {
        let f = self.field();
        let mut diag = [f.zero(); 3];
        let mut oct = [Octonion::zero(f); 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            diag[i] = self.diag[j] * self.diag[k] - self.oct[i].norm();
            oct[i] = (self.oct[j] * self.oct[k]).conj() - self.oct[i] * self.diag[i];
        }
        AlbertElement { diag, oct }
    }

    /// The bilinearization of the adjoint:
    /// `x cross y = (x + y)# - x# - y#`, here in closed form.
    pub fn cross(&self, y: &Self) -> Self {
        let f = self.field();
        let mut diag = [f.zero(); 3];
        let mut oct = [Octonion::zero(f); 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            diag[i] = self.diag[j] * y.diag[k] + y.diag[j] * self.diag[k]
                - self.oct[i].polar_norm(&y.oct[i]);
            oct[i] = (self.oct[j] * y.oct[k] + y.oct[j] * self.oct[k]).conj()
                - y.oct[i] * self.diag[i]
                - self.oct[i] * y.diag[i];
        }
        AlbertElement { diag, oct }
    }

    /// Rank stratification: 0 for zero, 1 while the adjoint vanishes, 2 while
    /// the norm vanishes, 3 otherwise.
    pub fn rank(&self) -> usize {
        if self.is_zero() {
            0
        } else if self.adjoint().is_zero() {
            1
        } else if self.norm().is_zero() {
            2
        } else {
            3
        }
    }
}

/// A uniform-ish random element of rank exactly 1.
///
/// On the dense cell `xi_1 != 0` a rank-1 element is determined by free
/// choices of `xi_1, x_2, x_3` (the adjoint equations then force the other
/// three coordinates), so sampling that cell and composing with a random
/// cyclic shift of the diagonal reaches every rank-1 support pattern.
pub fn sample_rank1<F, R>(field: F, rng: &mut R) -> AlbertElement<F::Elem>
where
    F: Field,
    R: Rng + ?Sized,
{
    let xi1 = field.sample_nonzero(rng);
    let x2 = Octonion::sample(field, rng);
    let x3 = Octonion::sample(field, rng);
    let inv = xi1.inv().expect("sampled nonzero");
    let e = AlbertElement {
        diag: [xi1, x3.norm() * inv, x2.norm() * inv],
        oct: [(x2 * x3).conj() * inv, x2, x3],
    };
    let e = e.cyclic_shift(rng.gen_range(0..3));
    // Verification gate: the construction is exact, so any failure here is a
    // bug, not bad luck.
    assert_eq!(e.rank(), 1, "cell construction must produce rank 1");
    e
}

/// The operator `a -> e cross a` as a 27x27 matrix (column convention:
/// `M . coords(a) = coords(e cross a)`).
pub fn cross_operator<E: FieldElem>(e: &AlbertElement<E>) -> Matrix<E::F> {
    let field = e.field();
    let images: Vec<Vec<E>> = (0..ALBERT_DIM)
        .map(|k| e.cross(&AlbertElement::basis_elem(field, k)).coords())
        .collect();
    Matrix::from_fn(field, ALBERT_DIM, ALBERT_DIM, |i, j| images[j][i])
}

/// The image `e cross A` for a rank-1 element `e`; always 10-dimensional.
pub fn cross_space<E: FieldElem>(e: &AlbertElement<E>) -> Result<Subspace<E::F>, AlbertError> {
    let r = e.rank();
    if r != 1 {
        return Err(AlbertError::RankError { expected: 1, found: r });
    }
    let field = e.field();
    let rows: Vec<Vec<E>> = (0..ALBERT_DIM)
        .map(|k| e.cross(&AlbertElement::basis_elem(field, k)).coords())
        .collect();
    let s = Subspace::from_spanning(field, rows, ALBERT_DIM);
    assert_eq!(s.dim(), 10, "the cross image of a rank-1 element is 10-dimensional");
    Ok(s)
}

/// Gram matrix of the trace form on the 27 coordinate basis vectors.
pub fn trace_gram<F: Field>(field: F) -> Matrix<F> {
    let basis: Vec<AlbertElement<F::Elem>> =
        (0..ALBERT_DIM).map(|k| AlbertElement::basis_elem(field, k)).collect();
    Matrix::from_fn(field, ALBERT_DIM, ALBERT_DIM, |i, j| basis[i].trace_form(&basis[j]))
}

/// The orthogonal complement of a subspace under the trace form.
pub fn trace_complement<F: Field>(s: &Subspace<F>) -> Subspace<F> {
    assert_eq!(s.ambient(), ALBERT_DIM);
    s.basis().mul(&trace_gram(s.field())).kernel()
}
