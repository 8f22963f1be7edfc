//! Split octonions in the vector-matrix (Zorn) model.
//!
//! An element is a 2x2 array `(a, v; w, b)` with scalar corners and
//! 3-vector off-diagonal blocks. The product couples the blocks through dot
//! and cross products; the quadratic form `n(x) = ab - v.w` is multiplicative
//! and has Witt index 4 (maximally split). The algebra is alternative but not
//! associative.

use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::field::{Field, FieldElem};

pub const OCT_DIM: usize = 8;

fn dot<E: FieldElem>(u: &[E; 3], v: &[E; 3]) -> E {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn cross<E: FieldElem>(u: &[E; 3], v: &[E; 3]) -> [E; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn vadd<E: FieldElem>(u: &[E; 3], v: &[E; 3]) -> [E; 3] {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

fn vsub<E: FieldElem>(u: &[E; 3], v: &[E; 3]) -> [E; 3] {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

fn vscale<E: FieldElem>(c: E, u: &[E; 3]) -> [E; 3] {
    [c * u[0], c * u[1], c * u[2]]
}

/// A split octonion `(a, v; w, b)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Octonion<E: FieldElem> {
    pub a: E,
    pub v: [E; 3],
    pub w: [E; 3],
    pub b: E,
}

impl<E: FieldElem> Octonion<E> {
    pub fn zero(field: E::F) -> Self {
        let z = field.zero();
        Octonion { a: z, v: [z; 3], w: [z; 3], b: z }
    }

    pub fn one(field: E::F) -> Self {
        let mut x = Octonion::zero(field);
        x.a = field.one();
        x.b = field.one();
        x
    }

    pub fn scalar(field: E::F, c: E) -> Self {
        let mut x = Octonion::zero(field);
        x.a = c;
        x.b = c;
        x
    }

    /// Coordinates in the fixed order `(a, v1, v2, v3, w1, w2, w3, b)`.
    pub fn coords(&self) -> [E; 8] {
        [self.a, self.v[0], self.v[1], self.v[2], self.w[0], self.w[1], self.w[2], self.b]
    }

    pub fn from_coords(c: &[E]) -> Self {
        assert_eq!(c.len(), 8);
        Octonion { a: c[0], v: [c[1], c[2], c[3]], w: [c[4], c[5], c[6]], b: c[7] }
    }

    pub fn basis_elem(field: E::F, i: usize) -> Self {
        let mut c = [field.zero(); 8];
        c[i] = field.one();
        Octonion::from_coords(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|x| x.is_zero())
    }

    pub fn field(&self) -> E::F {
        self.a.field()
    }

    pub fn map_coords(&self, mut f: impl FnMut(E) -> E) -> Self {
        let c = self.coords();
        let mut out = [f(c[0]); 8];
        for i in 1..8 {
            out[i] = f(c[i]);
        }
        Octonion::from_coords(&out)
    }

    /// Conjugation `x -> (b, -v; -w, a)`; an anti-automorphism with
    /// `x * conj(x) = n(x) * 1`.
    pub fn conj(&self) -> Self {
        Octonion {
            a: self.b,
            v: [-self.v[0], -self.v[1], -self.v[2]],
            w: [-self.w[0], -self.w[1], -self.w[2]],
            b: self.a,
        }
    }

    /// The norm `n(x) = ab - v.w`; multiplicative, Witt index 4.
    pub fn norm(&self) -> E {
        self.a * self.b - dot(&self.v, &self.w)
    }

    /// The trace `t(x) = a + b`.
    pub fn trace(&self) -> E {
        self.a + self.b
    }

    /// The polar form `<x, y> = n(x+y) - n(x) - n(y)`.
    pub fn polar_norm(&self, rhs: &Self) -> E {
        self.a * rhs.b + rhs.a * self.b - dot(&self.v, &rhs.w) - dot(&rhs.v, &self.w)
    }

    pub fn sample<R: Rng + ?Sized>(field: E::F, rng: &mut R) -> Self {
        let mut c = [field.zero(); 8];
        for x in &mut c {
            *x = field.sample(rng);
        }
        Octonion::from_coords(&c)
    }
}

impl<E: FieldElem> Add for Octonion<E> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Octonion {
            a: self.a + rhs.a,
            v: vadd(&self.v, &rhs.v),
            w: vadd(&self.w, &rhs.w),
            b: self.b + rhs.b,
        }
    }
}

impl<E: FieldElem> Sub for Octonion<E> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Octonion {
            a: self.a - rhs.a,
            v: vsub(&self.v, &rhs.v),
            w: vsub(&self.w, &rhs.w),
            b: self.b - rhs.b,
        }
    }
}

impl<E: FieldElem> Neg for Octonion<E> {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion::zero(self.field()) - self
    }
}

impl<E: FieldElem> Mul for Octonion<E> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // Zorn product: corners mix through dots, blocks through crosses.
        let (a1, v1, w1, b1) = (self.a, self.v, self.w, self.b);
        let (a2, v2, w2, b2) = (rhs.a, rhs.v, rhs.w, rhs.b);
        Octonion {
            a: a1 * a2 + dot(&v1, &w2),
            v: vsub(&vadd(&vscale(a1, &v2), &vscale(b2, &v1)), &cross(&w1, &w2)),
            w: vadd(&vadd(&vscale(a2, &w1), &vscale(b1, &w2)), &cross(&v1, &v2)),
            b: b1 * b2 + dot(&w1, &v2),
        }
    }
}

/// Scalar multiple.
impl<E: FieldElem> Mul<E> for Octonion<E> {
    type Output = Self;
    fn mul(self, c: E) -> Self {
        Octonion { a: self.a * c, v: vscale(c, &self.v), w: vscale(c, &self.w), b: self.b * c }
    }
}
