//! The quantum exterior algebra of `C^N` and its elementary operators.
//!
//! Basis vectors of the degree-`p` part are indexed by `p`-subsets of `[N]`.
//! When `N = mn` the point `(i, j)` of the `m x n` grid is identified with
//! `(j - 1) m + i`, so subsets double as subsets of the grid.

use std::cmp::Ordering;
use std::fmt;

use crate::linalg::Vector;
use crate::qscalar::QRat;

/// Subset of `[N]` with `N <= 32`, stored as a bitmask (bit `k - 1` for element `k`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ColumnSet(pub u32);

impl ColumnSet {
    pub fn from_elems(elems: &[usize]) -> Self {
        let mut bits = 0u32;
        for &k in elems {
            assert!((1..=32).contains(&k), "element {k} out of range");
            bits |= 1 << (k - 1);
        }
        ColumnSet(bits)
    }

    pub fn empty() -> Self {
        ColumnSet(0)
    }

    pub fn contains(self, k: usize) -> bool {
        (1..=32).contains(&k) && self.0 & (1 << (k - 1)) != 0
    }

    pub fn with(self, k: usize) -> Self {
        ColumnSet(self.0 | (1 << (k - 1)))
    }

    pub fn without(self, k: usize) -> Self {
        ColumnSet(self.0 & !(1 << (k - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Elements in increasing order.
    pub fn elems(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(k + 1)
        })
    }

    /// Number of elements in the closed interval `[lo, hi]`.
    pub fn count_between(self, lo: usize, hi: usize) -> usize {
        if lo > hi {
            return 0;
        }
        let mask = if hi >= 32 { u32::MAX } else { (1u32 << hi) - 1 };
        let mask = mask & !((1u32 << (lo - 1)) - 1);
        (self.0 & mask).count_ones() as usize
    }

    /// Every `p`-subset of `[big_n]` in canonical order.
    pub fn all_of_size(big_n: usize, p: usize) -> Vec<ColumnSet> {
        let mut out: Vec<ColumnSet> = itertools::Itertools::combinations(1..=big_n, p)
            .map(|c| ColumnSet::from_elems(&c))
            .collect();
        out.sort();
        out
    }
}

impl Ord for ColumnSet {
    /// Lexicographic on the sorted element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
            let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
            if x != y {
                return x.cmp(&y);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

impl PartialOrd for ColumnSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (t, k) in self.elems().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

/// Position in `[mn]` of the grid point `(i, j)`.
pub fn grid_index(i: usize, j: usize, m: usize) -> usize {
    (j - 1) * m + i
}

/// Grid point `(i, j)` of position `r` in `[mn]`.
pub fn grid_point(r: usize, m: usize) -> (usize, usize) {
    ((r - 1) % m + 1, (r - 1) / m + 1)
}

/// A weight `alpha = sum alpha_k eps_k` of `U_q(gl_N)`, stored densely.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EWeight(pub Vec<i64>);

impl EWeight {
    pub fn zero(big_n: usize) -> Self {
        EWeight(vec![0; big_n])
    }

    pub fn eps(big_n: usize, k: usize) -> Self {
        let mut w = Self::zero(big_n);
        w.0[k - 1] = 1;
        w
    }

    /// `kappa_{k,l} = eps_k - eps_l`.
    pub fn kappa(big_n: usize, k: usize, l: usize) -> Self {
        let mut w = Self::zero(big_n);
        w.0[k - 1] += 1;
        w.0[l - 1] -= 1;
        w
    }

    /// `h_k = eps_k - eps_{k+1}`.
    pub fn h(big_n: usize, k: usize) -> Self {
        Self::kappa(big_n, k, k + 1)
    }

    pub fn add(&self, other: &EWeight) -> EWeight {
        EWeight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> EWeight {
        EWeight(self.0.iter().map(|a| -a).collect())
    }

    pub fn dot(&self, other: &EWeight) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Exponent of the eigenvalue of `q^alpha` on `v_c`.
    pub fn pair(&self, c: ColumnSet) -> i64 {
        c.elems().map(|k| self.0[k - 1]).sum()
    }

    /// Weight of the basis vector `v_c`.
    pub fn of(big_n: usize, c: ColumnSet) -> EWeight {
        let mut w = Self::zero(big_n);
        for k in c.elems() {
            w.0[k - 1] = 1;
        }
        w
    }
}

/// `e_k v_c`: replaces `k + 1` by `k`.
pub fn e(k: usize, c: ColumnSet) -> Option<ColumnSet> {
    (c.contains(k + 1) && !c.contains(k)).then(|| c.without(k + 1).with(k))
}

/// `f_k v_c`: replaces `k` by `k + 1`.
pub fn f(k: usize, c: ColumnSet) -> Option<ColumnSet> {
    (c.contains(k) && !c.contains(k + 1)).then(|| c.without(k).with(k + 1))
}

/// `E_{i,j} = [e_i, [e_{i+1}, ..., e_j]]` in closed form: replaces `j + 1` by `i`
/// with sign `(-1)^{|c cap [i+1, j]|}`.
pub fn big_e(i: usize, j: usize, c: ColumnSet) -> Option<(ColumnSet, i64)> {
    debug_assert!(i <= j);
    if !c.contains(j + 1) || c.contains(i) {
        return None;
    }
    let s = if c.count_between(i + 1, j).is_multiple_of(2) { 1 } else { -1 };
    Some((c.without(j + 1).with(i), s))
}

/// `F_{i,j} = [f_j, [f_{j-1}, ..., f_i]]` in closed form: replaces `i` by `j + 1`.
pub fn big_f(i: usize, j: usize, c: ColumnSet) -> Option<(ColumnSet, i64)> {
    debug_assert!(i <= j);
    if !c.contains(i) || c.contains(j + 1) {
        return None;
    }
    let s = if c.count_between(i + 1, j).is_multiple_of(2) { 1 } else { -1 };
    Some((c.without(i).with(j + 1), s))
}

/// An operator on `Λ(C^N)` assembled from the elementary pieces, used to
/// state identities between operator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemOp {
    E(usize),
    F(usize),
    BigE(usize, usize),
    BigF(usize, usize),
    /// `q^alpha`
    QPow(EWeight),
}

impl ElemOp {
    pub fn apply_basis(&self, c: ColumnSet) -> Vector<ColumnSet> {
        match self {
            ElemOp::E(k) => e(*k, c).map_or_else(Vector::zero, Vector::basis),
            ElemOp::F(k) => f(*k, c).map_or_else(Vector::zero, Vector::basis),
            ElemOp::BigE(i, j) => {
                big_e(*i, *j, c).map_or_else(Vector::zero, |(d, s)| Vector::term(d, QRat::from_int(s)))
            }
            ElemOp::BigF(i, j) => {
                big_f(*i, *j, c).map_or_else(Vector::zero, |(d, s)| Vector::term(d, QRat::from_int(s)))
            }
            ElemOp::QPow(a) => Vector::term(c, QRat::q_pow(a.pair(c))),
        }
    }

    pub fn apply(&self, v: &Vector<ColumnSet>) -> Vector<ColumnSet> {
        v.map_linear(|c| self.apply_basis(*c))
    }
}

/// Apply an operator word, rightmost factor first.
pub fn apply_word(word: &[ElemOp], v: &Vector<ColumnSet>) -> Vector<ColumnSet> {
    word.iter().rev().fold(v.clone(), |acc, op| op.apply(&acc))
}

/// `[A, B] v = A B v - B A v` for operator words `A`, `B`.
pub fn commutator(a: &[ElemOp], b: &[ElemOp], v: &Vector<ColumnSet>) -> Vector<ColumnSet> {
    let ab = apply_word(a, &apply_word(b, v));
    let ba = apply_word(b, &apply_word(a, v));
    ab.sub(&ba)
}

/// Recursive definition `E_{i,j} = [e_i, E_{i+1,j}]`, evaluated on a vector.
pub fn big_e_by_commutators(i: usize, j: usize, v: &Vector<ColumnSet>) -> Vector<ColumnSet> {
    if i == j {
        return ElemOp::E(i).apply(v);
    }
    let inner = big_e_by_commutators(i + 1, j, &ElemOp::E(i).apply(v));
    let outer = ElemOp::E(i).apply(&big_e_by_commutators(i + 1, j, v));
    inner.sub(&outer).scaled(&QRat::from_int(-1))
}

/// Recursive definition `F_{i,j} = [f_j, F_{i,j-1}]`, evaluated on a vector.
pub fn big_f_by_commutators(i: usize, j: usize, v: &Vector<ColumnSet>) -> Vector<ColumnSet> {
    if i == j {
        return ElemOp::F(i).apply(v);
    }
    let a = ElemOp::F(j).apply(&big_f_by_commutators(i, j - 1, v));
    let b = big_f_by_commutators(i, j - 1, &ElemOp::F(j).apply(v));
    a.sub(&b)
}
