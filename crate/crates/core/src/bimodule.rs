//! Left `U_q(gl_m)` and right `U_q(gl_n)` actions on `Λ(C^m ⊗ C^n)`, plus the
//! common interface shared by every bimodule in the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exterior::{big_e, big_f, e, f, grid_index, grid_point, ColumnSet};
use crate::linalg::Vector;
use crate::qscalar::QRat;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GenKind {
    E,
    F,
    /// `q^{eps_i}`
    QEps,
}

/// A Chevalley generator, e.g. `EL1` (= `E_1^L`) or `qepsR2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GeneratorId {
    pub side: Side,
    pub kind: GenKind,
    pub index: usize,
}

impl GeneratorId {
    pub fn new(side: Side, kind: GenKind, index: usize) -> Self {
        GeneratorId { side, kind, index }
    }

    pub fn e(side: Side, index: usize) -> Self {
        Self::new(side, GenKind::E, index)
    }

    pub fn f(side: Side, index: usize) -> Self {
        Self::new(side, GenKind::F, index)
    }

    pub fn qeps(side: Side, index: usize) -> Self {
        Self::new(side, GenKind::QEps, index)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            GenKind::E => "E",
            GenKind::F => "F",
            GenKind::QEps => "qeps",
        };
        write!(f, "{k}{}{}", self.side.letter(), self.index)
    }
}

impl FromStr for GeneratorId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = if let Some(r) = s.strip_prefix("qeps") {
            (GenKind::QEps, r)
        } else if let Some(r) = s.strip_prefix('E') {
            (GenKind::E, r)
        } else if let Some(r) = s.strip_prefix('F') {
            (GenKind::F, r)
        } else {
            return Err(format!("unknown generator `{s}`"));
        };
        let side = match rest.chars().next() {
            Some('L') => Side::Left,
            Some('R') => Side::Right,
            _ => return Err(format!("generator `{s}` needs side L or R")),
        };
        let index = rest[1..].parse().map_err(|_| format!("bad generator index in `{s}`"))?;
        if index == 0 {
            return Err(format!("generator indices start at 1 in `{s}`"));
        }
        Ok(GeneratorId { side, kind, index })
    }
}

/// Weight for the pair of Cartan subalgebras: row counts and column counts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiWeight {
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

impl BiWeight {
    pub fn zero(m: usize, n: usize) -> Self {
        BiWeight { left: vec![0; m], right: vec![0; n] }
    }

    pub fn add(&self, other: &BiWeight) -> BiWeight {
        BiWeight {
            left: self.left.iter().zip(&other.left).map(|(a, b)| a + b).collect(),
            right: self.right.iter().zip(&other.right).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn side(&self, side: Side) -> &[i64] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Key used in serialized maps, e.g. `L:(2,1)|R:(2,1)`.
    pub fn key(&self) -> String {
        let j = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        format!("L:({})|R:({})", j(&self.left), j(&self.right))
    }

    /// Shift by the root of a generator (zero for `qeps`).
    pub fn shifted(&self, g: GeneratorId) -> BiWeight {
        let mut w = self.clone();
        let v = match g.side {
            Side::Left => &mut w.left,
            Side::Right => &mut w.right,
        };
        match g.kind {
            GenKind::E => {
                v[g.index - 1] += 1;
                v[g.index] -= 1;
            }
            GenKind::F => {
                v[g.index - 1] -= 1;
                v[g.index] += 1;
            }
            GenKind::QEps => {}
        }
        w
    }
}

impl fmt::Display for BiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Shape of `Λ^{p_1} ⊗ ... ⊗ Λ^{p_r}` over the `m x n` grid.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleShape {
    pub m: usize,
    pub n: usize,
    pub degrees: Vec<usize>,
}

impl ModuleShape {
    pub fn new(m: usize, n: usize, degrees: Vec<usize>) -> Self {
        assert!(m >= 1 && n >= 1 && m * n <= 32, "grid {m}x{n} unsupported");
        assert!(degrees.iter().all(|&p| p <= m * n), "degree exceeds mn");
        ModuleShape { m, n, degrees }
    }

    pub fn wedge(m: usize, n: usize, p: usize) -> Self {
        Self::new(m, n, vec![p])
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|p| format!("Λ^{p}")).collect();
        write!(f, "{} (m={}, n={})", parts.join("⊗"), self.m, self.n)
    }
}

/// Basis element of a tensor product of exterior powers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BasisTuple(pub Vec<ColumnSet>);

impl BasisTuple {
    pub fn single(c: ColumnSet) -> Self {
        BasisTuple(vec![c])
    }

    pub fn concat(&self, other: &BasisTuple) -> BasisTuple {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BasisTuple(v)
    }
}

impl fmt::Display for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, c) in self.0.iter().enumerate() {
            if t > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Coefficient `sign * q^exp` produced by the generators on wedge basis vectors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mono {
    pub sign: i64,
    pub exp: i64,
}

impl Mono {
    pub fn to_qrat(self) -> QRat {
        QRat::laurent(self.sign, self.exp)
    }
}

/// Left and right weights of `v_c`.
pub fn biweight_of(m: usize, n: usize, c: ColumnSet) -> BiWeight {
    let mut w = BiWeight::zero(m, n);
    for r in c.elems() {
        let (i, j) = grid_point(r, m);
        w.left[i - 1] += 1;
        w.right[j - 1] += 1;
    }
    w
}

fn has(c: ColumnSet, i: usize, j: usize, m: usize) -> i64 {
    c.contains(grid_index(i, j, m)) as i64
}

/// Left generators on a single wedge factor.
pub fn left_action(m: usize, n: usize, g: GeneratorId, c: ColumnSet) -> Vec<(ColumnSet, Mono)> {
    assert_eq!(g.side, Side::Left);
    let i = g.index;
    let mut out = Vec::new();
    match g.kind {
        GenKind::QEps => {
            let exp = (1..=n).map(|j| has(c, i, j, m)).sum();
            out.push((c, Mono { sign: 1, exp }));
        }
        GenKind::E => {
            assert!(i < m, "E_{i}^L needs i < m");
            for k in 1..=n {
                if let Some(d) = e(grid_index(i, k, m), c) {
                    // q^{B_i^k}, B_i^k = -sum_{j<k} h at (i, j)
                    let exp = -(1..k).map(|j| has(d, i, j, m) - has(d, i + 1, j, m)).sum::<i64>();
                    out.push((d, Mono { sign: 1, exp }));
                }
            }
        }
        GenKind::F => {
            assert!(i < m, "F_{i}^L needs i < m");
            for k in 1..=n {
                if let Some(d) = f(grid_index(i, k, m), c) {
                    // q^{A_i^k}, A_i^k = sum_{j>k} h at (i, j)
                    let exp = (k + 1..=n).map(|j| has(d, i, j, m) - has(d, i + 1, j, m)).sum();
                    out.push((d, Mono { sign: 1, exp }));
                }
            }
        }
    }
    out
}

/// Right generators on a single wedge factor.
pub fn right_action(m: usize, n: usize, g: GeneratorId, c: ColumnSet) -> Vec<(ColumnSet, Mono)> {
    assert_eq!(g.side, Side::Right);
    let k = g.index;
    let mut out = Vec::new();
    match g.kind {
        GenKind::QEps => {
            let exp = (1..=m).map(|i| has(c, i, k, m)).sum();
            out.push((c, Mono { sign: 1, exp }));
        }
        GenKind::E => {
            assert!(k < n, "E_{k}^R needs k < n");
            for i in 1..=m {
                let (a, b) = (grid_index(i, k, m), grid_index(i, k + 1, m) - 1);
                if let Some((d, sign)) = big_e(a, b, c) {
                    let exp = (i + 1..=m).map(|j| has(d, j, k + 1, m) - has(d, j, k, m)).sum();
                    out.push((d, Mono { sign, exp }));
                }
            }
        }
        GenKind::F => {
            assert!(k < n, "F_{k}^R needs k < n");
            for i in 1..=m {
                let (a, b) = (grid_index(i, k, m), grid_index(i, k + 1, m) - 1);
                if let Some((d, sign)) = big_f(a, b, c) {
                    let exp = (1..i).map(|j| has(d, j, k, m) - has(d, j, k + 1, m)).sum();
                    out.push((d, Mono { sign, exp }));
                }
            }
        }
    }
    out
}

/// Either side's action on a single factor.
pub fn act_on_factor(m: usize, n: usize, g: GeneratorId, c: ColumnSet) -> Vec<(ColumnSet, Mono)> {
    match g.side {
        Side::Left => left_action(m, n, g, c),
        Side::Right => right_action(m, n, g, c),
    }
}

/// Number of `E`/`F` indices on a side: `m - 1` on the left, `n - 1` on the right.
pub fn rank_of_side(m: usize, n: usize, side: Side) -> usize {
    match side {
        Side::Left => m - 1,
        Side::Right => n - 1,
    }
}

/// Rank of the Cartan part (`m` or `n`).
pub fn width_of_side(m: usize, n: usize, side: Side) -> usize {
    match side {
        Side::Left => m,
        Side::Right => n,
    }
}

/// Common interface of the finite-dimensional bimodules in this crate.
pub trait BiModule: Sync {
    type Index: Clone + Ord + Send + Sync + fmt::Debug;

    fn dims(&self) -> (usize, usize);

    /// Basis in canonical order.
    fn basis(&self) -> Vec<Self::Index>;

    fn biweight(&self, x: &Self::Index) -> BiWeight;

    fn act_basis(&self, g: GeneratorId, x: &Self::Index) -> Vector<Self::Index>;

    fn render_index(&self, x: &Self::Index) -> String;

    fn act(&self, g: GeneratorId, v: &Vector<Self::Index>) -> Vector<Self::Index> {
        v.map_linear(|x| self.act_basis(g, x))
    }

    /// Apply a word of generators, rightmost first.
    fn act_word(&self, word: &[GeneratorId], v: &Vector<Self::Index>) -> Vector<Self::Index> {
        word.iter().rev().fold(v.clone(), |acc, g| self.act(*g, &acc))
    }

    /// Diagonal operator `q^{<exps, wt>}` using the weight on one side.
    fn cartan(&self, side: Side, exps: &[i64], v: &Vector<Self::Index>) -> Vector<Self::Index> {
        v.map_linear(|x| {
            let w = self.biweight(x);
            let e: i64 = w.side(side).iter().zip(exps).map(|(a, b)| a * b).sum();
            Vector::term(x.clone(), QRat::q_pow(e))
        })
    }

    fn render(&self, v: &Vector<Self::Index>) -> String {
        v.render(|x| self.render_index(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(e: &[usize]) -> ColumnSet {
        ColumnSet::from_elems(e)
    }

    fn collect(v: Vec<(ColumnSet, Mono)>) -> Vector<ColumnSet> {
        v.into_iter().map(|(c, mono)| (c, mono.to_qrat())).collect()
    }

    #[test]
    fn generator_names_round_trip() {
        for s in ["EL1", "FL2", "ER1", "qepsL1", "qepsR3"] {
            assert_eq!(s.parse::<GeneratorId>().unwrap().to_string(), s);
        }
        assert!("GL1".parse::<GeneratorId>().is_err());
        assert!("EL0".parse::<GeneratorId>().is_err());
    }

    #[test]
    fn examples_on_two_by_two() {
        let el = GeneratorId::e(Side::Left, 1);
        let fl = GeneratorId::f(Side::Left, 1);
        let er = GeneratorId::e(Side::Right, 1);
        let fr = GeneratorId::f(Side::Right, 1);
        assert_eq!(
            collect(left_action(2, 2, el, cs(&[2, 4]))),
            [(cs(&[1, 4]), QRat::one()), (cs(&[2, 3]), QRat::q())].into_iter().collect()
        );
        assert_eq!(
            collect(left_action(2, 2, fl, cs(&[1, 3]))),
            [(cs(&[2, 3]), QRat::q()), (cs(&[1, 4]), QRat::one())].into_iter().collect()
        );
        assert_eq!(collect(right_action(2, 2, er, cs(&[2, 3]))), Vector::term(cs(&[1, 2]), QRat::laurent(-1, -1)));
        assert_eq!(collect(right_action(2, 2, fr, cs(&[1]))), Vector::basis(cs(&[3])));
        assert_eq!(biweight_of(2, 2, cs(&[2, 4])).key(), "L:(0,2)|R:(1,1)");
    }

    #[test]
    fn generators_shift_weights() {
        let (m, n) = (2, 3);
        for p in 0..=6 {
            for c in ColumnSet::all_of_size(6, p) {
                let w = biweight_of(m, n, c);
                for side in [Side::Left, Side::Right] {
                    for idx in 1..=rank_of_side(m, n, side) {
                        for g in [GeneratorId::e(side, idx), GeneratorId::f(side, idx)] {
                            for (d, _) in act_on_factor(m, n, g, c) {
                                assert_eq!(biweight_of(m, n, d), w.shifted(g));
                            }
                        }
                    }
                }
            }
        }
    }
}
