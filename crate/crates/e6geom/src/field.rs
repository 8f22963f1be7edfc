//! Exact arithmetic in small finite fields.
//!
//! Two fields are provided: the prime field `F_p` (p >= 5, so that 2 and 3
//! are invertible everywhere upstream) and the quadratic extension
//! `K = F_p(r)` with `r^2 = d` for a fixed non-square `d`. The extension
//! carries its Galois conjugation `a + b*r -> a - b*r`, which is exactly the
//! Frobenius `x -> x^p`.
//!
//! Elements carry their field context (modulus and, for `K`, the quadratic
//! non-residue) so that the usual operator traits work without threading a
//! context object through every algebraic formula. Mixing elements of
//! different fields is a logic error and is caught by debug assertions.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rand::Rng;

/// Largest permitted characteristic. Keeping p below 2^31 lets every product
/// of two reduced representatives fit in a u64 without overflow.
pub const MAX_P: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested characteristic is not a prime number.
    NotPrime(u64),
    /// Characteristics below 5 are rejected: the algebra layers divide by 2
    /// and by 12, so 2 and 3 must be units.
    TooSmall(u64),
    /// The requested characteristic exceeds [`MAX_P`].
    TooLarge(u64),
    /// The requested `d` is a square (or zero) mod p, so `F_p(sqrt d)` would
    /// not be a field.
    NotNonSquare(u64),
    /// Division by zero in a checked division.
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::TooSmall(p) => write!(f, "characteristic {p} is below the minimum of 5"),
            FieldError::TooLarge(p) => write!(f, "characteristic {p} exceeds the supported bound {MAX_P}"),
            FieldError::NotNonSquare(d) => write!(f, "{d} is not a non-square modulo p"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for FieldError {}

/// Deterministic primality check by trial division; fine for p < 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

fn validate_p(p: u64) -> Result<(), FieldError> {
    if p >= MAX_P {
        return Err(FieldError::TooLarge(p));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p < 5 {
        return Err(FieldError::TooSmall(p));
    }
    Ok(())
}

/// A finite field context: knows how to build constants and random elements.
pub trait Field: Copy + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    type Elem: FieldElem<F = Self>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// The image of the integer `n` in this field.
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Number of elements (p or p^2).
    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;
    /// Every element, in a fixed order. Only sensible for small fields.
    fn elements(&self) -> Vec<Self::Elem>;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.sample(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

/// An element of a finite field, carrying its own context.
pub trait FieldElem:
    Copy
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    type F: Field<Elem = Self>;

    fn field(&self) -> Self::F;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn pow(&self, e: u64) -> Self;
    /// Euler-criterion square test; zero counts as a square.
    fn is_square(&self) -> bool;
    /// A square root, if one exists.
    fn sqrt(&self) -> Option<Self>;
    /// Division that reports zero divisors instead of panicking.
    fn checked_div(&self, rhs: Self) -> Result<Self, FieldError> {
        match rhs.inv() {
            Some(r) => Ok(*self * r),
            None => Err(FieldError::DivisionByZero),
        }
    }
    /// Shorthand for `field().from_int(n)`.
    fn int(&self, n: i64) -> Self {
        self.field().from_int(n)
    }
    /// `self / n` for a small integer constant `n` (must be a unit).
    fn div_int(&self, n: i64) -> Self {
        *self * self.int(n).inv().expect("integer constant is not a unit in this field")
    }
}

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        validate_p(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }

    /// The smallest non-square in `F_p`; always exists for odd p.
    pub fn smallest_nonsquare(&self) -> u64 {
        (2..self.p)
            .find(|&x| !self.elem(x).is_square())
            .expect("every odd prime field has a non-square")
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp { v: 0, p: self.p }
    }
    fn one(&self) -> Fp {
        Fp { v: 1, p: self.p }
    }
    fn from_int(&self, n: i64) -> Fp {
        let p = self.p as i64;
        Fp { v: n.rem_euclid(p) as u64, p: self.p }
    }
    fn order(&self) -> u64 {
        self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn elements(&self) -> Vec<Fp> {
        (0..self.p).map(|v| Fp { v, p: self.p }).collect()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp { v: rng.gen_range(0..self.p), p: self.p }
    }
}

/// An element of `F_p`, stored as its reduced representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn val(&self) -> u64 {
        self.v
    }

    /// Representative in `(-p/2, p/2]`, convenient for printing witnesses.
    pub fn signed(&self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }
}

// Debug prints the value only; the field context is noise in test output.
impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

macro_rules! same_field {
    ($a:expr, $b:expr) => {
        debug_assert_eq!($a.p, $b.p, "elements of different fields mixed in one operation");
    };
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        same_field!(self, rhs);
        let mut v = self.v + rhs.v;
        if v >= self.p {
            v -= self.p;
        }
        Fp { v, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        same_field!(self, rhs);
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.p - rhs.v };
        Fp { v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        same_field!(self, rhs);
        Fp { v: (self.v * rhs.v) % self.p, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl Div for Fp {
    type Output = Fp;
    /// Panics on a zero divisor; use [`FieldElem::checked_div`] when the
    /// divisor is not known to be a unit.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero")
    }
}

impl FieldElem for Fp {
    type F = PrimeField;

    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn inv(&self) -> Option<Fp> {
        if self.v == 0 {
            None
        } else {
            // Fermat: x^(p-2) is the inverse.
            Some(self.pow(self.p - 2))
        }
    }
    fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp { v: 1, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
    fn is_square(&self) -> bool {
        self.v == 0 || self.pow((self.p - 1) / 2).v == 1
    }
    fn sqrt(&self) -> Option<Fp> {
        if self.v == 0 {
            return Some(*self);
        }
        if !self.is_square() {
            return None;
        }
        if self.p % 4 == 3 {
            return Some(self.pow((self.p + 1) / 4));
        }
        // Tonelli-Shanks for p = 1 mod 4.
        let field = self.field();
        let mut q = self.p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = field.elem(field.smallest_nonsquare());
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        while t.v != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2.v != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow(1u64 << (m - i - 1));
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        Some(r)
    }
}

// ---------------------------------------------------------------------------
// Quadratic extension
// ---------------------------------------------------------------------------

/// The quadratic extension `K = F_p(r)`, `r^2 = d`, for a non-square `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadExt {
    p: u64,
    d: u64,
}

impl QuadExt {
    pub fn new(p: u64, d: u64) -> Result<Self, FieldError> {
        validate_p(p)?;
        let base = PrimeField { p };
        let d = d % p;
        if d == 0 || base.elem(d).is_square() {
            return Err(FieldError::NotNonSquare(d));
        }
        Ok(QuadExt { p, d })
    }

    /// The extension with the smallest non-square of `F_p` adjoined.
    pub fn with_default_d(p: u64) -> Result<Self, FieldError> {
        validate_p(p)?;
        let d = PrimeField { p }.smallest_nonsquare();
        QuadExt::new(p, d)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn d(&self) -> u64 {
        self.d
    }
    pub fn base(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn elem(&self, a: u64, b: u64) -> Fq {
        Fq { a: a % self.p, b: b % self.p, p: self.p, d: self.d }
    }

    /// The adjoined square root of `d`.
    pub fn root(&self) -> Fq {
        self.elem(0, 1)
    }

    /// Embedding of the base field.
    pub fn embed(&self, x: Fp) -> Fq {
        debug_assert_eq!(x.p, self.p);
        self.elem(x.v, 0)
    }
}

impl Field for QuadExt {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        self.elem(0, 0)
    }
    fn one(&self) -> Fq {
        self.elem(1, 0)
    }
    fn from_int(&self, n: i64) -> Fq {
        let p = self.p as i64;
        self.elem(n.rem_euclid(p) as u64, 0)
    }
    fn order(&self) -> u64 {
        self.p * self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn elements(&self) -> Vec<Fq> {
        let mut out = Vec::with_capacity((self.p * self.p) as usize);
        for a in 0..self.p {
            for b in 0..self.p {
                out.push(self.elem(a, b));
            }
        }
        out
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        // Two independent draws, in a fixed order, so sequences are stable.
        let a = rng.gen_range(0..self.p);
        let b = rng.gen_range(0..self.p);
        self.elem(a, b)
    }
}

/// An element `a + b*r` of the quadratic extension.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    a: u64,
    b: u64,
    p: u64,
    d: u64,
}

impl Fq {
    /// Coefficients `(a, b)` over the base field.
    pub fn parts(&self) -> (Fp, Fp) {
        (Fp { v: self.a, p: self.p }, Fp { v: self.b, p: self.p })
    }

    /// Galois conjugation `a + b*r -> a - b*r`; coincides with Frobenius.
    pub fn conj(&self) -> Fq {
        Fq { a: self.a, b: if self.b == 0 { 0 } else { self.p - self.b }, ..*self }
    }

    /// True when the element lies in the embedded base field.
    pub fn is_in_base(&self) -> bool {
        self.b == 0
    }

    /// The norm to the base field, `x * conj(x) = a^2 - d b^2`.
    pub fn norm_to_base(&self) -> Fp {
        let prod = *self * self.conj();
        debug_assert_eq!(prod.b, 0);
        Fp { v: prod.a, p: self.p }
    }

    /// The trace to the base field, `x + conj(x) = 2a`.
    pub fn trace_to_base(&self) -> Fp {
        Fp { v: (2 * self.a) % self.p, p: self.p }
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}r"),
            (a, b) => write!(f, "{a}+{b}r"),
        }
    }
}

macro_rules! same_ext {
    ($a:expr, $b:expr) => {
        debug_assert!(
            $a.p == $b.p && $a.d == $b.d,
            "elements of different fields mixed in one operation"
        );
    };
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Fq) -> Fq {
        same_ext!(self, rhs);
        let mut a = self.a + rhs.a;
        if a >= self.p {
            a -= self.p;
        }
        let mut b = self.b + rhs.b;
        if b >= self.p {
            b -= self.p;
        }
        Fq { a, b, ..self }
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Fq) -> Fq {
        same_ext!(self, rhs);
        let a = if self.a >= rhs.a { self.a - rhs.a } else { self.a + self.p - rhs.a };
        let b = if self.b >= rhs.b { self.b - rhs.b } else { self.b + self.p - rhs.b };
        Fq { a, b, ..self }
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Fq) -> Fq {
        same_ext!(self, rhs);
        // (a1 + b1 r)(a2 + b2 r) = a1 a2 + d b1 b2 + (a1 b2 + b1 a2) r
        let p = self.p;
        let a = (self.a * rhs.a + (self.d * self.b) % p * rhs.b) % p;
        let b = (self.a * rhs.b + self.b * rhs.a) % p;
        Fq { a, b, ..self }
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        Fq {
            a: if self.a == 0 { 0 } else { self.p - self.a },
            b: if self.b == 0 { 0 } else { self.p - self.b },
            ..self
        }
    }
}

impl Div for Fq {
    type Output = Fq;
    /// Panics on a zero divisor; use [`FieldElem::checked_div`] when the
    /// divisor is not known to be a unit.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fq) -> Fq {
        self * rhs.inv().expect("division by zero")
    }
}

impl FieldElem for Fq {
    type F = QuadExt;

    fn field(&self) -> QuadExt {
        QuadExt { p: self.p, d: self.d }
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn inv(&self) -> Option<Fq> {
        // 1/x = conj(x) / N(x), with N(x) in the base field.
        let n = self.norm_to_base();
        let n_inv = n.inv()?;
        let c = self.conj();
        Some(Fq { a: (c.a * n_inv.v) % self.p, b: (c.b * n_inv.v) % self.p, ..*self })
    }
    fn pow(&self, mut e: u64) -> Fq {
        let mut base = *self;
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
    fn is_square(&self) -> bool {
        // x is a square in K exactly when its norm is a square in F_p.
        self.is_zero() || self.norm_to_base().is_square()
    }
    fn sqrt(&self) -> Option<Fq> {
        let f = self.field();
        if self.is_zero() {
            return Some(*self);
        }
        let (a, b) = self.parts();
        if b.is_zero() {
            // Either a is a square in the base field, or a/d is (a and d are
            // then both non-squares), giving (sqrt(a/d)) * r.
            if let Some(s) = a.sqrt() {
                return Some(f.embed(s));
            }
            let dd = f.base().elem(f.d);
            let s = (a / dd).sqrt().expect("quotient of two non-squares is a square");
            return Some(f.elem(0, 1) * f.embed(s));
        }
        // y = u + v r with y^2 = x forces 2u^2 = a +- sqrt(N(x)).
        let s = self.norm_to_base().sqrt()?;
        for cand in [a + s, a - s] {
            let half = cand.div_int(2);
            if let Some(u) = half.sqrt() {
                if u.is_zero() {
                    continue;
                }
                let v = b / (u.int(2) * u);
                let y = f.embed(u) + f.root() * f.embed(v);
                if y * y == *self {
                    return Some(y);
                }
            }
        }
        None
    }
}
