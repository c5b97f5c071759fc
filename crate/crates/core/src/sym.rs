//! The quantum matrix algebra: monomials `z^d`, straightening of words into
//! column-major normal order, and the closed-form generator actions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::bimodule::{BasisTuple, BiModule, BiWeight, GenKind, GeneratorId, ModuleShape, Side};
use crate::exterior::{grid_index, grid_point, ColumnSet};
use crate::linalg::Vector;
use crate::qscalar::QRat;
use crate::report::CheckReport;
use crate::tensor::all_generators;

/// Exponent matrix of a monomial `z^d`, stored column-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DegreeMatrix {
    pub m: usize,
    pub n: usize,
    d: Vec<u32>,
}

impl DegreeMatrix {
    pub fn zero(m: usize, n: usize) -> Self {
        DegreeMatrix { m, n, d: vec![0; m * n] }
    }

    /// From row-major rows, e.g. `[[1,0],[0,2]]` for `z11 z22^2`.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let m = rows.len();
        let n = rows[0].len();
        let mut out = Self::zero(m, n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "ragged degree matrix");
            for (j, &x) in row.iter().enumerate() {
                out.set(i + 1, j + 1, x);
            }
        }
        out
    }

    /// Sorted word of variable positions in `[mn]` to a degree matrix.
    pub fn from_word(m: usize, n: usize, word: &[usize]) -> Self {
        let mut out = Self::zero(m, n);
        for &r in word {
            out.d[r - 1] += 1;
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[grid_index(i, j, self.m) - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        let r = grid_index(i, j, self.m);
        self.d[r - 1] = x;
    }

    fn geti(&self, i: usize, j: usize) -> i64 {
        self.get(i, j) as i64
    }

    pub fn degree(&self) -> usize {
        self.d.iter().map(|&x| x as usize).sum()
    }

    /// Normal-order word (positions in `[mn]`, non-decreasing).
    pub fn word(&self) -> Vec<usize> {
        self.d.iter().enumerate().flat_map(|(r, &x)| std::iter::repeat_n(r + 1, x as usize)).collect()
    }

    /// Move one unit from `(i, j)` to `(i2, j2)`.
    fn moved(&self, from: (usize, usize), to: (usize, usize)) -> DegreeMatrix {
        let mut e = self.clone();
        e.set(from.0, from.1, self.get(from.0, from.1) - 1);
        e.set(to.0, to.1, e.get(to.0, to.1) + 1);
        e
    }

    /// Every degree-`k` matrix, in canonical order.
    pub fn all_of_degree(m: usize, n: usize, k: usize) -> Vec<DegreeMatrix> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for x in 0..=left {
                cur[pos] = x;
                rec(pos + 1, left - x, cur, out);
            }
        }
        let mut out = Vec::new();
        rec(0, k as u32, &mut vec![0; m * n], &mut out);
        let mut v: Vec<DegreeMatrix> = out.into_iter().map(|d| DegreeMatrix { m, n, d }).collect();
        v.sort();
        v
    }

    pub fn biweight(&self) -> BiWeight {
        let mut w = BiWeight::zero(self.m, self.n);
        for i in 1..=self.m {
            for j in 1..=self.n {
                let x = self.geti(i, j);
                w.left[i - 1] += x;
                w.right[j - 1] += x;
            }
        }
        w
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (1..=self.m).map(|i| (1..=self.n).map(|j| self.get(i, j)).collect()).collect()
    }
}

impl fmt::Display for DegreeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for r in 1..=self.m * self.n {
            let x = self.d[r - 1];
            if x == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let (i, j) = grid_point(r, self.m);
            write!(f, "z[{i},{j}]")?;
            if x > 1 {
                write!(f, "^{x}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Which adjacent inversion to rewrite first.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// Rewrite an out-of-order adjacent pair `z_a z_b` (`a > b`) by the defining relations.
fn rewrite_pair(m: usize, a: usize, b: usize) -> Vec<((usize, usize), QRat)> {
    let (ia, ja) = grid_point(a, m);
    let (ib, jb) = grid_point(b, m);
    if ja == jb || ia == ib {
        vec![((b, a), QRat::q())]
    } else if ia < ib {
        vec![((b, a), QRat::one())]
    } else {
        let c = grid_index(ia, jb, m);
        let d = grid_index(ib, ja, m);
        vec![((b, a), QRat::one()), ((c, d), &QRat::q() - &QRat::q_pow(-1))]
    }
}

/// Normal form of a word of variable positions.
pub fn sym_straighten(m: usize, n: usize, word: &[usize], strategy: Strategy) -> Vector<DegreeMatrix> {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(rand::rngs::StdRng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: BTreeMap<Vec<usize>, QRat> = BTreeMap::new();
    pending.insert(word.to_vec(), QRat::one());
    let mut out = Vector::zero();
    let mut steps = 0usize;
    while let Some((w, c)) = pending.pop_first() {
        steps += 1;
        assert!(steps < 1_000_000, "straightening did not terminate");
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&t| w[t] > w[t + 1]).collect();
        if inversions.is_empty() {
            out.add_term(DegreeMatrix::from_word(m, n, &w), c);
            continue;
        }
        let t = match (&strategy, rng.as_mut()) {
            (Strategy::Leftmost, _) => inversions[0],
            (Strategy::Rightmost, _) => *inversions.last().unwrap(),
            (Strategy::Random(_), Some(r)) => inversions[r.gen_range(0..inversions.len())],
            _ => unreachable!(),
        };
        for ((x, y), k) in rewrite_pair(m, w[t], w[t + 1]) {
            let mut w2 = w.clone();
            w2[t] = x;
            w2[t + 1] = y;
            let e = pending.entry(w2).or_insert_with(QRat::zero);
            *e = &*e + &(&c * &k);
        }
        pending.retain(|_, v| !v.is_zero());
    }
    out
}

/// Degree-`k` part of the quantum matrix algebra with the closed-form actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymModule {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

fn q_sum(exps: impl Iterator<Item = i64>) -> QRat {
    let mut s = QRat::zero();
    for e in exps {
        s += &QRat::q_pow(e);
    }
    s
}

/// Closed-form action of a generator on `z^d`.
pub fn sym_action(g: GeneratorId, d: &DegreeMatrix) -> Vector<DegreeMatrix> {
    let (m, n) = (d.m, d.n);
    let mut out = Vector::zero();
    let x = |i, j| d.geti(i, j);
    match (g.side, g.kind) {
        (side, GenKind::QEps) => {
            let w = d.biweight();
            out.add_term(d.clone(), QRat::q_pow(w.side(side)[g.index - 1]));
        }
        (Side::Right, GenKind::E) => {
            let j = g.index;
            for i in 1..=m {
                if x(i, j + 1) == 0 {
                    continue;
                }
                let base: i64 = (1..i).map(|i2| x(i2, j + 1) - x(i2, j)).sum::<i64>() - x(i, j);
                let c = q_sum((0..x(i, j + 1)).map(|a| base + 2 * a));
                out.add_term(d.moved((i, j + 1), (i, j)), c);
            }
        }
        (Side::Left, GenKind::E) => {
            let i = g.index;
            for j in 1..=n {
                if x(i + 1, j) == 0 {
                    continue;
                }
                let base: i64 = (1..j).map(|j2| x(i + 1, j2) - x(i, j2)).sum::<i64>() - x(i, j);
                let c = q_sum((0..x(i + 1, j)).map(|a| base + 2 * a));
                out.add_term(d.moved((i + 1, j), (i, j)), c);
            }
        }
        (Side::Right, GenKind::F) => {
            let j = g.index;
            for i in 1..=m {
                if x(i, j) == 0 {
                    continue;
                }
                let base: i64 = (i + 1..=m).map(|i2| x(i2, j)).sum::<i64>() - (i..=m).map(|i2| x(i2, j + 1)).sum::<i64>();
                let c = q_sum((0..x(i, j)).map(|b| base + 2 * b));
                out.add_term(d.moved((i, j), (i, j + 1)), c);
            }
        }
        (Side::Left, GenKind::F) => {
            let i = g.index;
            for j in 1..=n {
                if x(i, j) == 0 {
                    continue;
                }
                let base: i64 = (j + 1..=n).map(|j2| x(i, j2) - x(i + 1, j2)).sum::<i64>() - x(i + 1, j);
                let c = q_sum((0..x(i, j)).map(|b| base + 2 * b));
                out.add_term(d.moved((i, j), (i + 1, j)), c);
            }
        }
    }
    out
}

impl BiModule for SymModule {
    type Index = DegreeMatrix;

    fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    fn basis(&self) -> Vec<DegreeMatrix> {
        DegreeMatrix::all_of_degree(self.m, self.n, self.k)
    }

    fn biweight(&self, x: &DegreeMatrix) -> BiWeight {
        x.biweight()
    }

    fn act_basis(&self, g: GeneratorId, x: &DegreeMatrix) -> Vector<DegreeMatrix> {
        sym_action(g, x)
    }

    fn render_index(&self, x: &DegreeMatrix) -> String {
        x.to_string()
    }
}

/// Apply a generator to the normal word of `z^d` in `(Λ^1)^{⊗k}` and straighten.
pub fn hopf_then_straighten(g: GeneratorId, d: &DegreeMatrix) -> Vector<DegreeMatrix> {
    let (m, n) = (d.m, d.n);
    let word = d.word();
    let shape = ModuleShape::new(m, n, vec![1; word.len()]);
    let tuple = BasisTuple(word.iter().map(|&r| ColumnSet::from_elems(&[r])).collect());
    let image = shape.act_basis(g, &tuple);
    let mut out = Vector::zero();
    for (t, c) in image.iter() {
        let w: Vec<usize> = t.0.iter().map(|s| s.elems().next().unwrap()).collect();
        out.add_scaled(&sym_straighten(m, n, &w, Strategy::Leftmost), c);
    }
    out
}

/// Closed-form actions agree with Hopf-then-straighten on every monomial of degree `k`.
pub fn check_action_agreement(m: usize, n: usize, k: usize) -> CheckReport {
    let mut report = CheckReport::new();
    let basis = DegreeMatrix::all_of_degree(m, n, k);
    for g in all_generators(m, n) {
        let bad = basis.par_iter().find_map_first(|d| {
            let a = sym_action(g, d);
            let b = hopf_then_straighten(g, d);
            (a != b).then(|| {
                format!("{g} on {d}: closed {} vs words {}", a.render(|x| x.to_string()), b.render(|x| x.to_string()))
            })
        });
        report.record(format!("sym-agree:{g}:k={k}"), bad.map_or(Ok(()), Err));
    }
    report
}

fn words_up_to(big_n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (1..=big_n).map(move |r| {
                    let mut w2 = w.clone();
                    w2.push(r);
                    w2
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every reduction order gives the same normal form on all words of length `<= max_len`.
pub fn check_confluence(m: usize, n: usize, max_len: usize) -> CheckReport {
    let mut report = CheckReport::new();
    let words = words_up_to(m * n, max_len);
    let bad = words.par_iter().find_map_first(|w| {
        let base = sym_straighten(m, n, w, Strategy::Leftmost);
        let others = [Strategy::Rightmost, Strategy::Random(w.len() as u64 * 7919 + w.iter().sum::<usize>() as u64)];
        others.iter().find_map(|s| {
            let other = sym_straighten(m, n, w, *s);
            (other != base).then(|| format!("word {w:?} under {s:?}"))
        })
    });
    report.record(format!("confluence:m={m},n={n},len<={max_len}"), bad.map_or(Ok(()), Err));
    report
}

pub fn binomial(a: usize, b: usize) -> usize {
    (0..b).fold(1usize, |acc, t| acc * (a - t) / (t + 1))
}

/// Dimension count and termination in standard monomials for degree `k`.
pub fn sym_dimension_check(k: usize, m: usize, n: usize) -> CheckReport {
    let mut report = CheckReport::new();
    let basis = DegreeMatrix::all_of_degree(m, n, k);
    report.expect_eq(format!("dim:S_{k}"), basis.len(), binomial(m * n + k - 1, k));
    if k <= 4 {
        let all_words = words_up_to(m * n, k);
        let words: Vec<&Vec<usize>> = all_words.iter().filter(|w| w.len() == k).collect();
        let bad = words.par_iter().find_map_first(|w| {
            let nf = sym_straighten(m, n, w, Strategy::Leftmost);
            let bad = nf.indices().find(|d| d.degree() != k).map(|d| format!("{w:?} → {d}"));
            bad
        });
        report.record(format!("normal-forms:S_{k}"), bad.map_or(Ok(()), Err));
        // Each standard monomial is its own normal form, so the span is all of S_k.
        let bad = basis.iter().find(|d| sym_straighten(m, n, &d.word(), Strategy::Leftmost) != Vector::basis((*d).clone()));
        report.record(format!("standard-fixed:S_{k}"), bad.map_or(Ok(()), |d| Err(d.to_string())));
    }
    report
}

/// At `q = 1` the actions are the classical derivations on the polynomial ring.
pub fn check_sym_q1(m: usize, n: usize, k: usize) -> CheckReport {
    let mut report = CheckReport::new();
    let one = BigRational::one();
    for g in all_generators(m, n) {
        let mut bad = None;
        for d in DegreeMatrix::all_of_degree(m, n, k) {
            let quantum = sym_action(g, &d).eval(&one).expect("no poles in sym actions");
            let mut classical: BTreeMap<DegreeMatrix, BigRational> = BTreeMap::new();
            let moves: Vec<((usize, usize), (usize, usize))> = match (g.side, g.kind) {
                (_, GenKind::QEps) => Vec::new(),
                (Side::Left, GenKind::E) => (1..=n).map(|j| ((g.index + 1, j), (g.index, j))).collect(),
                (Side::Left, GenKind::F) => (1..=n).map(|j| ((g.index, j), (g.index + 1, j))).collect(),
                (Side::Right, GenKind::E) => (1..=m).map(|i| ((i, g.index + 1), (i, g.index))).collect(),
                (Side::Right, GenKind::F) => (1..=m).map(|i| ((i, g.index), (i, g.index + 1))).collect(),
            };
            if g.kind == GenKind::QEps {
                classical.insert(d.clone(), one.clone());
            }
            for (from, to) in moves {
                let mult = d.get(from.0, from.1);
                if mult > 0 {
                    *classical.entry(d.moved(from, to)).or_insert_with(BigRational::zero) +=
                        BigRational::from_integer(mult.into());
                }
            }
            if quantum != classical {
                bad = Some(format!("{g} on {d}"));
                break;
            }
        }
        report.record(format!("sym-q1:{g}"), bad.map_or(Ok(()), Err));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{check_commutation, check_uq_relations};

    fn z(m: usize, n: usize, vars: &[(usize, usize)]) -> Vec<usize> {
        assert!(vars.iter().all(|&(i, j)| i <= m && j <= n));
        vars.iter().map(|&(i, j)| grid_index(i, j, m)).collect()
    }

    fn mono(m: usize, n: usize, vars: &[(usize, usize)]) -> DegreeMatrix {
        DegreeMatrix::from_word(m, n, &z(m, n, vars))
    }

    #[test]
    fn straightening_examples() {
        let got = sym_straighten(2, 2, &z(2, 2, &[(1, 2), (1, 1)]), Strategy::Leftmost);
        assert_eq!(got, Vector::term(mono(2, 2, &[(1, 1), (1, 2)]), QRat::q()));
        let got = sym_straighten(2, 2, &z(2, 2, &[(2, 2), (1, 1)]), Strategy::Leftmost);
        let mut want = Vector::basis(mono(2, 2, &[(1, 1), (2, 2)]));
        want.add_term(mono(2, 2, &[(2, 1), (1, 2)]), &QRat::q() - &QRat::q_pow(-1));
        assert_eq!(got, want);
        let w = z(2, 2, &[(1, 1), (2, 1), (2, 2)]);
        assert_eq!(sym_straighten(2, 2, &w, Strategy::Leftmost), Vector::basis(DegreeMatrix::from_word(2, 2, &w)));
    }

    #[test]
    fn action_examples() {
        let er = GeneratorId::e(Side::Right, 1);
        let el = GeneratorId::e(Side::Left, 1);
        assert_eq!(sym_action(er, &mono(2, 2, &[(1, 2)])), Vector::basis(mono(2, 2, &[(1, 1)])));
        assert_eq!(
            sym_action(er, &mono(2, 2, &[(1, 1), (1, 2)])),
            Vector::term(mono(2, 2, &[(1, 1), (1, 1)]), QRat::q_pow(-1))
        );
        let mut want = Vector::basis(mono(2, 2, &[(1, 1), (2, 2)]));
        want.add_term(mono(2, 2, &[(2, 1), (1, 2)]), QRat::q());
        assert_eq!(sym_action(el, &mono(2, 2, &[(2, 1), (2, 2)])), want);
        assert_eq!(hopf_then_straighten(el, &mono(2, 2, &[(2, 1), (2, 2)])), want);
    }

    #[test]
    fn rendering() {
        let d = DegreeMatrix::from_rows(&[vec![2, 0], vec![1, 0]]);
        assert_eq!(d.to_string(), "z[1,1]^2 z[2,1]");
        assert_eq!(DegreeMatrix::zero(2, 2).to_string(), "1");
    }

    #[test]
    fn closed_forms_match_word_model() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            for k in 0..=3 {
                let r = check_action_agreement(m, n, k);
                assert!(r.all_pass(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn confluence_small() {
        assert!(check_confluence(2, 2, 4).all_pass());
    }

    #[test]
    fn dimensions() {
        assert!(sym_dimension_check(2, 2, 2).all_pass());
        assert_eq!(DegreeMatrix::all_of_degree(2, 2, 3).len(), 20);
    }

    #[test]
    fn sym_is_a_bimodule() {
        for (m, n) in [(2, 2), (2, 3), (3, 3)] {
            for k in 1..=3 {
                let module = SymModule { m, n, k };
                let mut r = check_uq_relations(&module, Side::Left);
                r.extend(check_uq_relations(&module, Side::Right));
                r.extend(check_commutation(&module));
                r.extend(check_sym_q1(m, n, k));
                assert!(r.all_pass(), "m={m} n={n} k={k}: {}", r.summary());
            }
        }
    }
}
