//! Combinatorics of the rank-6 simply-laced root system with 72 roots: the
//! Weyl group of order 51840, its parabolic quotients, and the minuscule
//! 27-element weight poset.
//!
//! This is the combinatorial shadow of the incidence geometry: the three
//! relative positions of point pairs (and of line pairs) match the three
//! double cosets of the corresponding maximal parabolics, the 27 weights
//! match the point count of the geometry over a one-element "field", and the
//! Poincare polynomials of the parabolic quotients satisfy exactly the
//! stratification identities that count pairs by relative position,
//! q-graded.
//!
//! Everything here is exact integer combinatorics: roots are vectors of
//! simple-root coordinates, group elements are permutations of the 72 roots,
//! lengths are inversion counts, and polynomials have i64 coefficients.
//! Generation orders are breadth-first and therefore deterministic.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;

pub const RANK: usize = 6;
pub const NUM_ROOTS: usize = 72;
pub const NUM_POSITIVE: usize = 36;
pub const GROUP_ORDER: usize = 51840;

/// Cartan matrix in the labeling where node 2 attaches to node 4 of the
/// chain 1-3-4-5-6.
pub const CARTAN: [[i64; RANK]; RANK] = [
    [2, 0, -1, 0, 0, 0],
    [0, 2, 0, -1, 0, 0],
    [-1, 0, 2, -1, 0, 0],
    [0, -1, -1, 2, -1, 0],
    [0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, -1, 2],
];

pub type Root = [i64; RANK];
pub type Perm = [u8; NUM_ROOTS];

fn reflect(beta: &Root, i: usize) -> Root {
    // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i, with the pairing read
    // off the Cartan matrix row.
    let pairing: i64 = (0..RANK).map(|j| beta[j] * CARTAN[i][j]).sum();
    let mut out = *beta;
    out[i] -= pairing;
    out
}

fn height(beta: &Root) -> i64 {
    beta.iter().sum()
}

/// The 72 roots in simple-root coordinates, positives first (sorted by
/// height, then lexicographically), with `roots[i + 36] = -roots[i]`.
pub struct RootSystem {
    pub roots: Vec<Root>,
    index: HashMap<Root, usize>,
    simple_index: [usize; RANK],
}

impl RootSystem {
    pub fn new() -> Self {
        let mut seen: HashMap<Root, ()> = HashMap::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..RANK {
            let mut alpha = [0i64; RANK];
            alpha[i] = 1;
            seen.insert(alpha, ());
            queue.push_back(alpha);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..RANK {
                let next = reflect(&beta, i);
                if seen.insert(next, ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
        let mut positives: Vec<Root> =
            seen.keys().filter(|r| height(r) > 0).copied().collect();
        positives.sort_by_key(|r| (height(r), *r));
        assert_eq!(positives.len(), NUM_POSITIVE, "positive root count");
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(|r| {
            let mut neg = [0i64; RANK];
            for j in 0..RANK {
                neg[j] = -r[j];
            }
            neg
        }));
        let index: HashMap<Root, usize> =
            roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut simple_index = [0usize; RANK];
        for (i, si) in simple_index.iter_mut().enumerate() {
            let mut alpha = [0i64; RANK];
            alpha[i] = 1;
            *si = index[&alpha];
        }
        RootSystem { roots, index, simple_index }
    }

    pub fn index_of(&self, r: &Root) -> usize {
        self.index[r]
    }

    /// Index of the i-th simple root in the root list.
    pub fn simple(&self, i: usize) -> usize {
        self.simple_index[i]
    }

    pub fn highest_root(&self) -> Root {
        *self.roots[..NUM_POSITIVE].iter().max_by_key(|r| height(r)).expect("nonempty")
    }

    /// The permutation of root indices induced by the simple reflection s_i.
    pub fn simple_reflection(&self, i: usize) -> Perm {
        let mut p = [0u8; NUM_ROOTS];
        for (j, r) in self.roots.iter().enumerate() {
            p[j] = self.index[&reflect(r, i)] as u8;
        }
        p
    }
}

impl Default for RootSystem {
    fn default() -> Self {
        Self::new()
    }
}

/// Composition: apply `b`, then `a`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    let mut out = [0u8; NUM_ROOTS];
    for x in 0..NUM_ROOTS {
        out[x] = a[b[x] as usize];
    }
    out
}

pub fn invert(a: &Perm) -> Perm {
    let mut out = [0u8; NUM_ROOTS];
    for x in 0..NUM_ROOTS {
        out[a[x] as usize] = x as u8;
    }
    out
}

/// The full Weyl group as permutations of the 72 roots, generated
/// breadth-first from the simple reflections (so indices are deterministic).
pub struct WeylGroup {
    pub rs: RootSystem,
    pub perms: Vec<Perm>,
    index: HashMap<Perm, u32>,
    lengths: Vec<u16>,
    gens: [Perm; RANK],
}

impl WeylGroup {
    pub fn generate() -> Self {
        let rs = RootSystem::new();
        let gens: [Perm; RANK] = std::array::from_fn(|i| rs.simple_reflection(i));
        let mut identity = [0u8; NUM_ROOTS];
        for (x, slot) in identity.iter_mut().enumerate() {
            *slot = x as u8;
        }
        let mut perms: Vec<Perm> = vec![identity];
        let mut index: HashMap<Perm, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0usize;
        while head < perms.len() {
            let w = perms[head];
            head += 1;
            for g in &gens {
                let next = compose(g, &w);
                if let Entry::Vacant(slot) = index.entry(next) {
                    slot.insert(perms.len() as u32);
                    perms.push(next);
                }
            }
        }
        let lengths: Vec<u16> = perms
            .iter()
            .map(|p| (0..NUM_POSITIVE).filter(|&j| p[j] as usize >= NUM_POSITIVE).count() as u16)
            .collect();
        WeylGroup { rs, perms, index, lengths, gens }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn index_of(&self, p: &Perm) -> u32 {
        self.index[p]
    }

    /// Number of positive roots sent negative: the Coxeter length.
    pub fn length(&self, w: u32) -> usize {
        self.lengths[w as usize] as usize
    }

    pub fn generator(&self, i: usize) -> &Perm {
        &self.gens[i]
    }

    pub fn inverse_index(&self, w: u32) -> u32 {
        self.index[&invert(&self.perms[w as usize])]
    }

    /// Order of the parabolic subgroup generated by the labels in `j`
    /// (labels 0-based), by an independent closure.
    pub fn parabolic_order(&self, j: &[usize]) -> usize {
        let mut identity = [0u8; NUM_ROOTS];
        for (x, slot) in identity.iter_mut().enumerate() {
            *slot = x as u8;
        }
        let mut elems: Vec<Perm> = vec![identity];
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(identity, ());
        let mut head = 0;
        while head < elems.len() {
            let w = elems[head];
            head += 1;
            for &i in j {
                let next = compose(&self.gens[i], &w);
                if seen.insert(next, ()).is_none() {
                    elems.push(next);
                }
            }
        }
        elems.len()
    }

    /// Indices of the minimal-length representatives of the cosets `w W_J`:
    /// the elements sending every simple root of J to a positive root.
    pub fn min_coset_reps(&self, j: &[usize]) -> Vec<u32> {
        let simple: Vec<usize> = j.iter().map(|&i| self.rs.simple(i)).collect();
        (0..self.order() as u32)
            .filter(|&w| {
                let p = &self.perms[w as usize];
                simple.iter().all(|&s| (p[s] as usize) < NUM_POSITIVE)
            })
            .collect()
    }

    /// Reduce `w` to the minimal representative of its coset `w W_J` by
    /// stripping descents in J.
    pub fn reduce_to_coset_rep(&self, w: u32, j: &[usize]) -> u32 {
        let mut cur = w;
        'outer: loop {
            for &i in j {
                let cand = self.index[&compose(&self.perms[cur as usize], &self.gens[i])];
                if self.length(cand) < self.length(cur) {
                    cur = cand;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// The length generating polynomial of a set of elements.
    pub fn length_polynomial(&self, elems: &[u32]) -> IntPolynomial {
        let mut coeffs = Vec::new();
        for &w in elems {
            let l = self.length(w);
            if coeffs.len() <= l {
                coeffs.resize(l + 1, 0);
            }
            coeffs[l] += 1;
        }
        IntPolynomial::new(coeffs)
    }

    /// Poincare polynomial of the quotient by the parabolic generated by J.
    pub fn poincare_quotient(&self, j: &[usize]) -> IntPolynomial {
        self.length_polynomial(&self.min_coset_reps(j))
    }

    /// Double cosets `W_J1 w W_J2`, sorted by their minimal length. Each
    /// class is required to have a unique minimal-length element.
    pub fn double_cosets(&self, j1: &[usize], j2: &[usize]) -> Vec<DoubleCoset> {
        let n = self.order();
        let mut uf = UnionFind::new(n);
        for w in 0..n as u32 {
            let pw = &self.perms[w as usize];
            for &i in j1 {
                let left = self.index[&compose(&self.gens[i], pw)];
                uf.union(w as usize, left as usize);
            }
            for &i in j2 {
                let right = self.index[&compose(pw, &self.gens[i])];
                uf.union(w as usize, right as usize);
            }
        }
        let mut classes: HashMap<usize, DoubleCoset> = HashMap::new();
        for w in 0..n {
            let root = uf.find(w);
            let entry = classes.entry(root).or_insert(DoubleCoset {
                min_rep: w as u32,
                min_length: usize::MAX,
                size: 0,
                min_count: 0,
            });
            entry.size += 1;
            let l = self.length(w as u32);
            match l.cmp(&entry.min_length) {
                std::cmp::Ordering::Less => {
                    entry.min_length = l;
                    entry.min_rep = w as u32;
                    entry.min_count = 1;
                }
                std::cmp::Ordering::Equal => entry.min_count += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        let mut out: Vec<DoubleCoset> = classes.into_values().collect();
        out.sort_by_key(|c| (c.min_length, c.min_rep));
        out
    }
}

/// One double coset: its minimal element, that element's length, and the
/// class size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub min_rep: u32,
    pub min_length: usize,
    pub size: usize,
    min_count: usize,
}

impl DoubleCoset {
    /// Whether exactly one element of the class attains the minimal length.
    pub fn has_unique_minimum(&self) -> bool {
        self.min_count == 1
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Deterministic: smaller root wins.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

// -- integer polynomials ----------------------------------------------------------

/// A polynomial with i64 coefficients, index = degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    /// `1 + q + ... + q^(d-1)`.
    pub fn q_integer(d: usize) -> Self {
        IntPolynomial { coeffs: vec![1; d] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.coeffs.get(i).copied().unwrap_or(0)
                + other.coeffs.get(i).copied().unwrap_or(0);
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.coeffs.get(i).copied().unwrap_or(0)
                - other.coeffs.get(i).copied().unwrap_or(0);
        }
        IntPolynomial::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; k];
        out.extend_from_slice(&self.coeffs);
        IntPolynomial::new(out)
    }

    /// Exact division; `None` when the division leaves a remainder.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.coeffs.is_empty() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dlead = *other.coeffs.last().unwrap();
        let dn = other.coeffs.len();
        if rem.len() < dn {
            return if rem.is_empty() { Some(IntPolynomial::zero()) } else { None };
        }
        let mut quot = vec![0i64; rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dn - 1];
            if lead % dlead != 0 {
                return None;
            }
            let c = lead / dlead;
            quot[k] = c;
            for (j, &dj) in other.coeffs.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            None
        } else {
            Some(IntPolynomial::new(quot))
        }
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "q")?,
                1 => write!(f, "{c}q")?,
                _ if c == 1 => write!(f, "q^{i}")?,
                _ => write!(f, "{c}q^{i}")?,
            }
        }
        Ok(())
    }
}

// -- the minuscule weight poset -----------------------------------------------------

/// The 27-element weight poset of the minuscule representation with highest
/// weight at node 6, in fundamental-weight coordinates. Edges drop one
/// simple root and carry its label.
pub struct MinusculePoset {
    pub weights: Vec<[i64; RANK]>,
    /// (from, to, label): `weights[to] = weights[from] - alpha_label`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Steps below the highest weight.
    pub levels: Vec<usize>,
}

impl MinusculePoset {
    pub fn new() -> Self {
        let top: [i64; RANK] = [0, 0, 0, 0, 0, 1];
        let mut weights = vec![top];
        let mut levels = vec![0usize];
        let mut index: HashMap<[i64; RANK], usize> = HashMap::new();
        index.insert(top, 0);
        let mut edges = Vec::new();
        let mut head = 0;
        while head < weights.len() {
            let mu = weights[head];
            let level = levels[head];
            for i in 0..RANK {
                // Minuscule: the i-string through mu has length m_i <= 1, so
                // mu - alpha_i is a weight exactly when m_i = 1.
                if mu[i] == 1 {
                    let mut nu = mu;
                    for j in 0..RANK {
                        nu[j] -= CARTAN[i][j];
                    }
                    let to = *index.entry(nu).or_insert_with(|| {
                        weights.push(nu);
                        levels.push(level + 1);
                        weights.len() - 1
                    });
                    edges.push((head, to, i));
                }
            }
            head += 1;
        }
        MinusculePoset { weights, edges, levels }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The rank generating function: coefficient of q^k counts weights at
    /// level k.
    pub fn rank_polynomial(&self) -> IntPolynomial {
        let mut coeffs = vec![0i64; self.levels.iter().max().map_or(0, |m| m + 1)];
        for &l in &self.levels {
            coeffs[l] += 1;
        }
        IntPolynomial::new(coeffs)
    }

    /// Connected components after deleting every edge with the given label;
    /// returns the sorted component sizes.
    pub fn component_sizes_without(&self, label: usize) -> Vec<usize> {
        let mut uf = UnionFind::new(self.len());
        for &(a, b, l) in &self.edges {
            if l != label {
                uf.union(a, b);
            }
        }
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for v in 0..self.len() {
            *counts.entry(uf.find(v)).or_insert(0) += 1;
        }
        let mut sizes: Vec<usize> = counts.into_values().collect();
        sizes.sort_unstable();
        sizes
    }
}

impl Default for MinusculePoset {
    fn default() -> Self {
        Self::new()
    }
}

// -- the stratification identities ---------------------------------------------------

/// The labels (0-based) of the parabolic subgroups entering the counting
/// identities: dropping node 6, dropping node 1, dropping both ends, and
/// dropping nodes 5 and 6.
pub const J_DROP6: [usize; 5] = [0, 1, 2, 3, 4];
pub const J_DROP1: [usize; 5] = [1, 2, 3, 4, 5];
pub const J_DROP16: [usize; 4] = [1, 2, 3, 4];
pub const J_DROP56: [usize; 4] = [0, 1, 2, 3];

/// The outcome of checking both q-graded counting identities
/// coefficientwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratificationCheck {
    pub point_quotient: IntPolynomial,
    pub dual_quotient: IntPolynomial,
    pub flag_quotient: IntPolynomial,
    pub mixed_quotient: IntPolynomial,
    pub pair_identity_holds: bool,
    pub flag_identity_holds: bool,
}

/// Verifies, coefficient by coefficient:
///
/// ```text
/// B(q)^2     = q^8  D(q) + q E(q) + B(q)      (pairs of points by position)
/// B(q) C(q)  = q^16 B(q) + q^5 E(q) + D(q)    (point-line pairs by position)
/// ```
///
/// where B, C, D, E are the Poincare polynomials of the quotients by the
/// parabolics dropping node 6, node 1, nodes {1,6} and nodes {5,6}.
pub fn verify_stratification(w: &WeylGroup) -> StratificationCheck {
    let b = w.poincare_quotient(&J_DROP6);
    let c = w.poincare_quotient(&J_DROP1);
    let d = w.poincare_quotient(&J_DROP16);
    let e = w.poincare_quotient(&J_DROP56);
    let pair_lhs = b.mul(&b);
    let pair_rhs = d.shift(8).add(&e.shift(1)).add(&b);
    let flag_lhs = b.mul(&c);
    let flag_rhs = b.shift(16).add(&e.shift(5)).add(&d);
    StratificationCheck {
        pair_identity_holds: pair_lhs == pair_rhs,
        flag_identity_holds: flag_lhs == flag_rhs,
        point_quotient: b,
        dual_quotient: c,
        flag_quotient: d,
        mixed_quotient: e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group() -> WeylGroup {
        WeylGroup::generate()
    }

    #[test]
    fn root_system_shape() {
        let rs = RootSystem::new();
        assert_eq!(rs.roots.len(), NUM_ROOTS);
        for i in 0..NUM_POSITIVE {
            assert!(height(&rs.roots[i]) > 0);
            for j in 0..RANK {
                assert_eq!(rs.roots[i][j], -rs.roots[i + NUM_POSITIVE][j]);
            }
        }
        assert_eq!(rs.highest_root(), [1, 2, 2, 3, 2, 1]);
        assert_eq!(height(&rs.highest_root()), 11);
        // Simple reflections permute the roots and are involutions.
        for i in 0..RANK {
            let p = rs.simple_reflection(i);
            let mut seen = [false; NUM_ROOTS];
            for &x in &p {
                seen[x as usize] = true;
            }
            assert!(seen.iter().all(|&b| b));
            assert_eq!(compose(&p, &p), {
                let mut id = [0u8; NUM_ROOTS];
                for (x, s) in id.iter_mut().enumerate() {
                    *s = x as u8;
                }
                id
            });
            // s_i negates alpha_i and permutes the remaining positives.
            assert_eq!(p[rs.simple(i)] as usize, rs.simple(i) + NUM_POSITIVE);
            let moved_to_negative =
                (0..NUM_POSITIVE).filter(|&j| p[j] as usize >= NUM_POSITIVE).count();
            assert_eq!(moved_to_negative, 1);
        }
    }

    #[test]
    fn group_order_and_lengths() {
        let w = group();
        assert_eq!(w.order(), GROUP_ORDER);
        assert_eq!(w.length(0), 0);
        // Unique longest element of length 36.
        let longest: Vec<u32> =
            (0..w.order() as u32).filter(|&x| w.length(x) == NUM_POSITIVE).collect();
        assert_eq!(longest.len(), 1);
        // The full length generating function matches the degree product
        // [2][5][6][8][9][12] — an independent oracle.
        let all: Vec<u32> = (0..w.order() as u32).collect();
        let direct = w.length_polynomial(&all);
        let product = [2usize, 5, 6, 8, 9, 12]
            .iter()
            .fold(IntPolynomial::one(), |acc, &d| acc.mul(&IntPolynomial::q_integer(d)));
        assert_eq!(direct, product);
    }

    #[test]
    fn inverses_and_length_symmetry() {
        let w = group();
        for x in (0..w.order() as u32).step_by(1777) {
            let inv = w.inverse_index(x);
            let id = w.index_of(&compose(&w.perms[x as usize], &w.perms[inv as usize]));
            assert_eq!(id, 0);
            assert_eq!(w.length(x), w.length(inv));
        }
    }

    #[test]
    fn parabolic_orders() {
        let w = group();
        assert_eq!(w.parabolic_order(&J_DROP6), 1920); // D5
        assert_eq!(w.parabolic_order(&J_DROP1), 1920); // D5
        assert_eq!(w.parabolic_order(&J_DROP16), 192); // D4
        assert_eq!(w.parabolic_order(&J_DROP56), 120); // A4
    }

    #[test]
    fn quotient_poincare_polynomials() {
        let w = group();
        let b = w.poincare_quotient(&J_DROP6);
        let c = w.poincare_quotient(&J_DROP1);
        let d = w.poincare_quotient(&J_DROP16);
        let e = w.poincare_quotient(&J_DROP56);
        assert_eq!(b.eval(1), 27);
        assert_eq!(c.eval(1), 27);
        assert_eq!(d.eval(1), 270);
        assert_eq!(e.eval(1), 432);
        assert_eq!(b.degree(), Some(16));
        assert_eq!(c.degree(), Some(16));
        assert_eq!(d.degree(), Some(24));
        assert_eq!(e.degree(), Some(26));
        assert!(b.is_palindromic());
        assert!(c.is_palindromic());
        // Independent oracle: quotient polynomial = W(q) / W_J(q), with both
        // sides from degree products where available.
        let wq = [2usize, 5, 6, 8, 9, 12]
            .iter()
            .fold(IntPolynomial::one(), |acc, &deg| acc.mul(&IntPolynomial::q_integer(deg)));
        let d5 = [2usize, 4, 5, 6, 8]
            .iter()
            .fold(IntPolynomial::one(), |acc, &deg| acc.mul(&IntPolynomial::q_integer(deg)));
        let d4 = [2usize, 4, 4, 6]
            .iter()
            .fold(IntPolynomial::one(), |acc, &deg| acc.mul(&IntPolynomial::q_integer(deg)));
        let a4 = [2usize, 3, 4, 5]
            .iter()
            .fold(IntPolynomial::one(), |acc, &deg| acc.mul(&IntPolynomial::q_integer(deg)));
        assert_eq!(wq.checked_div(&d5), Some(b.clone()));
        assert_eq!(wq.checked_div(&d4), Some(d.clone()));
        assert_eq!(wq.checked_div(&a4), Some(e.clone()));
        // Degree bookkeeping: codimension = positives minus positives of J.
        let rs = RootSystem::new();
        let pos_support = |j: &[usize]| {
            rs.roots[..NUM_POSITIVE]
                .iter()
                .filter(|r| (0..RANK).all(|i| r[i] == 0 || j.contains(&i)))
                .count()
        };
        assert_eq!(b.degree(), Some(NUM_POSITIVE - pos_support(&J_DROP6)));
        assert_eq!(d.degree(), Some(NUM_POSITIVE - pos_support(&J_DROP16)));
        assert_eq!(e.degree(), Some(NUM_POSITIVE - pos_support(&J_DROP56)));
    }

    #[test]
    fn min_coset_reps_are_minimal_and_unique() {
        let w = group();
        let reps = w.min_coset_reps(&J_DROP6);
        assert_eq!(reps.len(), 27);
        for &r in &reps {
            for &i in J_DROP6.iter() {
                let longer = w.index_of(&compose(&w.perms[r as usize], w.generator(i)));
                assert!(w.length(longer) > w.length(r));
            }
        }
        // Every element reduces into the rep set, and reduction is stable on
        // the reps themselves.
        for x in (0..w.order() as u32).step_by(997) {
            let r = w.reduce_to_coset_rep(x, &J_DROP6);
            assert!(reps.contains(&r));
        }
        for &r in &reps {
            assert_eq!(w.reduce_to_coset_rep(r, &J_DROP6), r);
        }
    }

    #[test]
    fn double_coset_trichotomies() {
        let w = group();
        let point_pairs = w.double_cosets(&J_DROP6, &J_DROP6);
        assert_eq!(point_pairs.len(), 3);
        assert_eq!(point_pairs.iter().map(|c| c.size).sum::<usize>(), GROUP_ORDER);
        assert_eq!(point_pairs[0].min_length, 0);
        assert!(point_pairs.iter().all(|c| c.has_unique_minimum()));
        let line_pairs = w.double_cosets(&J_DROP1, &J_DROP1);
        assert_eq!(line_pairs.len(), 3);
        assert_eq!(line_pairs.iter().map(|c| c.size).sum::<usize>(), GROUP_ORDER);
        assert!(line_pairs.iter().all(|c| c.has_unique_minimum()));
        // Mixed point-line double cosets also form a trichotomy.
        let mixed = w.double_cosets(&J_DROP6, &J_DROP1);
        assert_eq!(mixed.len(), 3);
        assert!(mixed.iter().all(|c| c.has_unique_minimum()));
    }

    #[test]
    fn minuscule_poset_shape() {
        let poset = MinusculePoset::new();
        assert_eq!(poset.len(), 27);
        // One top (level 0), one bottom (max level 16).
        assert_eq!(poset.levels.iter().filter(|&&l| l == 0).count(), 1);
        assert_eq!(*poset.levels.iter().max().unwrap(), 16);
        assert_eq!(poset.levels.iter().filter(|&&l| l == 16).count(), 1);
        // All weights are minuscule: fundamental coordinates in {-1, 0, 1}.
        for mu in &poset.weights {
            assert!(mu.iter().all(|&m| (-1..=1).contains(&m)));
        }
        // The rank generating function IS the point quotient polynomial.
        let w = group();
        assert_eq!(poset.rank_polynomial(), w.poincare_quotient(&J_DROP6));
    }

    #[test]
    fn poset_cuts_match_the_double_coset_counts() {
        let poset = MinusculePoset::new();
        let cut6 = poset.component_sizes_without(5); // 0-based label of node 6
        let cut1 = poset.component_sizes_without(0);
        assert_eq!(cut6.len(), 3);
        assert_eq!(cut1.len(), 3);
        assert_eq!(cut6.iter().sum::<usize>(), 27);
        assert_eq!(cut1.iter().sum::<usize>(), 27);
        assert_eq!(cut6, vec![1, 10, 16]);
        assert_eq!(cut1, vec![1, 10, 16]);
    }

    #[test]
    fn stratification_identities_hold_coefficientwise() {
        let w = group();
        let check = verify_stratification(&w);
        assert!(check.pair_identity_holds);
        assert!(check.flag_identity_holds);
        // The q = 1 shadow: 729 = 270 + 432 + 27 both ways.
        assert_eq!(check.point_quotient.eval(1), 27);
        assert_eq!(check.flag_quotient.eval(1), 270);
        assert_eq!(check.mixed_quotient.eval(1), 432);
    }

    #[test]
    fn polynomial_arithmetic() {
        let p = IntPolynomial::new(vec![1, 2, 1]);
        let q = IntPolynomial::q_integer(2);
        assert_eq!(q.mul(&q), p);
        assert_eq!(p.checked_div(&q), Some(q.clone()));
        assert_eq!(p.add(&IntPolynomial::new(vec![0, -2])), IntPolynomial::new(vec![1, 0, 1]));
        assert_eq!(p.shift(2).degree(), Some(4));
        assert_eq!(p.eval(3), 16);
        assert_eq!(IntPolynomial::new(vec![1, 1, 1]).checked_div(&q), None);
        assert_eq!(format!("{}", IntPolynomial::new(vec![1, 0, 3])), "1 + 3q^2");
    }
}
