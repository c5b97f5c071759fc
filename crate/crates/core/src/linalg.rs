//! Sparse vectors over `Q(q)` and exact linear algebra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::qscalar::{Poly, QRat, ScalarError};

/// Finite linear combination of basis indices with `Q(q)` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector<I: Ord> {
    terms: BTreeMap<I, QRat>,
}

impl<I: Ord> Default for Vector<I> {
    fn default() -> Self {
        Vector { terms: BTreeMap::new() }
    }
}

impl<I: Ord + Clone> Vector<I> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: I) -> Self {
        Self::term(i, QRat::one())
    }

    pub fn term(i: I, c: QRat) -> Self {
        let mut v = Self::zero();
        v.add_term(i, c);
        v
    }

    pub fn add_term(&mut self, i: I, c: QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector<I>, c: &QRat) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.terms {
            self.add_term(i.clone(), x * c);
        }
    }

    pub fn add_assign(&mut self, other: &Vector<I>) {
        for (i, x) in &other.terms {
            self.add_term(i.clone(), x.clone());
        }
    }

    pub fn sub(&self, other: &Vector<I>) -> Vector<I> {
        let mut out = self.clone();
        out.add_scaled(other, &QRat::from_int(-1));
        out
    }

    pub fn scaled(&self, c: &QRat) -> Vector<I> {
        if c.is_zero() {
            return Self::zero();
        }
        Vector { terms: self.terms.iter().map(|(i, x)| (i.clone(), x * c)).collect() }
    }

    pub fn coeff(&self, i: &I) -> QRat {
        self.terms.get(i).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&I, &QRat)> {
        self.terms.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = &I> {
        self.terms.keys()
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<J: Ord + Clone>(&self, mut f: impl FnMut(&I) -> Vector<J>) -> Vector<J> {
        let mut out = Vector::zero();
        for (i, c) in &self.terms {
            out.add_scaled(&f(i), c);
        }
        out
    }

    /// Evaluate every coefficient at `q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BTreeMap<I, BigRational>, ScalarError> {
        let mut out = BTreeMap::new();
        for (i, c) in &self.terms {
            let x = c.eval(q0)?;
            if !x.is_zero() {
                out.insert(i.clone(), x);
            }
        }
        Ok(out)
    }

    /// Render as `c1·x1 + c2·x2` with a caller-supplied index formatter.
    pub fn render(&self, fmt_index: impl Fn(&I) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(i, c)| format!("{c}·{}", fmt_index(i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<I: Ord + Clone> FromIterator<(I, QRat)> for Vector<I> {
    fn from_iter<T: IntoIterator<Item = (I, QRat)>>(iter: T) -> Self {
        let mut v = Vector::zero();
        for (i, c) in iter {
            v.add_term(i, c);
        }
        v
    }
}

/// Dense matrix over `Q(q)`, row-major.
pub type Matrix = Vec<Vec<QRat>>;

/// Incrementally built echelon basis of a subspace of `Q(q)^N`.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, QRat>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: BTreeMap<usize, QRat>) -> BTreeMap<usize, QRat> {
        for (p, row) in &self.rows {
            let Some(c) = v.get(p).cloned() else { continue };
            for (j, x) in row {
                let e = v.entry(*j).or_insert_with(QRat::zero);
                *e = &*e - &(&c * x);
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
        v
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &BTreeMap<usize, QRat>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Add `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: BTreeMap<usize, QRat>) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else { return false };
        let inv = lead.inv().expect("leading entry is nonzero");
        let row: BTreeMap<usize, QRat> = r.iter().map(|(j, x)| (*j, x * &inv)).collect();
        self.rows.insert(p, row);
        true
    }
}

/// Inverse of a square matrix over `Q(q)`, `None` when singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<QRat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { QRat::one() } else { QRat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let inv = a[col][col].inv().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..2 * n {
                let t = &f * &a[col][j];
                a[r][j] = &a[r][j] - &t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = QRat::zero();
                    for t in 0..k {
                        if !row[t].is_zero() && !b[t][j].is_zero() {
                            s += &(&row[t] * &b[t][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b);
    a.div_exact(&g).expect("gcd divides").mul(b)
}

/// Scale each row by the lcm of its denominators to land in `Z[q]`.
pub fn clear_denominators(rows: &[Vec<QRat>]) -> Vec<Vec<Poly>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().filter(|x| !x.is_zero()).fold(Poly::one(), |l, x| poly_lcm(&l, x.denom()));
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        Poly::zero()
                    } else {
                        x.numer().mul(&l.div_exact(x.denom()).expect("denominator divides lcm"))
                    }
                })
                .collect()
        })
        .collect()
}

/// Exact rank over `Q(q)` by fraction-free (Bareiss) elimination in `Z[q]`.
pub fn rank(rows: &[Vec<QRat>]) -> usize {
    rank_poly(clear_denominators(rows))
}

pub fn rank_poly(mut a: Vec<Vec<Poly>>) -> usize {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    if r > c {
        a = (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect();
        return rank_poly(a);
    }
    let mut prev = Poly::one();
    let mut rank = 0;
    for col in 0..c {
        if rank == r {
            break;
        }
        let pivot = (rank..r)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| (a[i][col].degree(), a[i].iter().filter(|x| !x.is_zero()).count()));
        let Some(p) = pivot else { continue };
        a.swap(p, rank);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..c {
                let t = prow[col].mul(&row[j]);
                let t = if f.is_zero() || prow[j].is_zero() { t } else { t.sub(&f.mul(&prow[j])) };
                row[j] = if t.is_zero() { t } else { t.div_exact(&prev).expect("Bareiss division is exact") };
            }
            row[col] = Poly::zero();
        }
        prev = prow[col].clone();
        rank += 1;
    }
    rank
}

/// Rank after specializing `q = q0`; a lower bound for [`rank`] whenever it succeeds.
pub fn rank_at(rows: &[Vec<QRat>], q0: &BigRational) -> Result<usize, ScalarError> {
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| x.eval(q0)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    Ok(rank_rational(&mut a))
}

fn rank_rational(a: &mut [Vec<BigRational>]) -> usize {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(p, rank);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &prow[col];
            for j in col..c {
                let t = &f * &prow[j];
                row[j] -= t;
            }
        }
        rank += 1;
        if rank == r {
            break;
        }
    }
    rank
}

/// Integer specialization used by quick rank hints.
pub fn int_point(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn rank_detects_generic_dependence() {
        // Rows 1 and 2 are proportional over Q(q) but not over Q.
        let m = vec![
            vec![qr("(1)/(1)"), qr("(q)/(1)"), QRat::zero()],
            vec![qr("(q)/(1)"), qr("(q^2)/(1)"), QRat::zero()],
            vec![QRat::zero(), qr("(1)/(q+1)"), qr("(q-1)/(1)")],
        ];
        assert_eq!(rank(&m), 2);
        // At q = 1 the third row loses its last entry but stays independent.
        assert_eq!(rank_at(&m, &int_point(1)).unwrap(), 2);
    }

    #[test]
    fn specialization_can_drop_rank() {
        let m = vec![vec![qr("(q-1)/(1)"), QRat::zero()], vec![QRat::zero(), QRat::one()]];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_at(&m, &int_point(1)).unwrap(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![qr("(q)/(1)"), QRat::one()], vec![QRat::one(), qr("(1)/(q^2+1)")]];
        let inv = invert(&m).unwrap();
        let id = mat_mul(&m, &inv);
        assert_eq!(id, vec![vec![QRat::one(), QRat::zero()], vec![QRat::zero(), QRat::one()]]);
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        let v1: BTreeMap<usize, QRat> = [(0, QRat::one()), (2, QRat::q())].into_iter().collect();
        let v2: BTreeMap<usize, QRat> = [(1, QRat::one())].into_iter().collect();
        assert!(e.insert(v1.clone()));
        assert!(e.insert(v2));
        let comb: BTreeMap<usize, QRat> =
            [(0, QRat::q()), (1, QRat::from_int(3)), (2, QRat::q_pow(2))].into_iter().collect();
        assert!(!e.insert(comb));
        assert_eq!(e.rank(), 2);
    }

    fn arb_entry() -> impl Strategy<Value = QRat> {
        (-2i64..=2, -2i64..=2, 0i64..2).prop_map(|(a, b, k)| {
            let num = Poly::from_i64s(&[a, b]);
            QRat::new(num, Poly::from_i64s(&[1, k])).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn exact_rank_bounds_specializations(
            m in prop::collection::vec(prop::collection::vec(arb_entry(), 4), 1..5)
        ) {
            let r = rank(&m);
            for k in [2i64, 3, 5] {
                if let Ok(rk) = rank_at(&m, &int_point(k)) {
                    prop_assert!(rk <= r);
                }
            }
            let rq = rank_at(&m, &BigRational::new(BigInt::from(7), BigInt::from(11))).unwrap();
            prop_assert!(rq <= r);
        }
    }
}
