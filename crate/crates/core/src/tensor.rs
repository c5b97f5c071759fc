//! Hopf-algebra action on tensor products of exterior powers, weight spaces,
//! and equivariant maps stored block by block.
//!
//! The coproduct is `Δe = e ⊗ 1 + q^{-h} ⊗ e`, `Δf = f ⊗ q^h + 1 ⊗ f`,
//! `Δq^ε = q^ε ⊗ q^ε`, iterated coassociatively over the factors.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::bimodule::{
    act_on_factor, biweight_of, rank_of_side, BasisTuple, BiModule, BiWeight, GenKind, GeneratorId, ModuleShape,
    Side,
};
use crate::exterior::ColumnSet;
use crate::linalg::{mat_mul, Matrix, Vector};
use crate::qscalar::QRat;
use crate::report::CheckReport;

fn h_of(m: usize, n: usize, side: Side, i: usize, c: ColumnSet) -> i64 {
    let w = biweight_of(m, n, c);
    let v = w.side(side);
    v[i - 1] - v[i]
}

impl BiModule for ModuleShape {
    type Index = BasisTuple;

    fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    fn basis(&self) -> Vec<BasisTuple> {
        let big_n = self.m * self.n;
        if self.degrees.is_empty() {
            return vec![BasisTuple(Vec::new())];
        }
        self.degrees
            .iter()
            .map(|&p| ColumnSet::all_of_size(big_n, p))
            .multi_cartesian_product()
            .map(BasisTuple)
            .collect()
    }

    fn biweight(&self, x: &BasisTuple) -> BiWeight {
        x.0.iter().fold(BiWeight::zero(self.m, self.n), |w, c| w.add(&biweight_of(self.m, self.n, *c)))
    }

    fn act_basis(&self, g: GeneratorId, x: &BasisTuple) -> Vector<BasisTuple> {
        let (m, n) = (self.m, self.n);
        let r = x.0.len();
        let mut out = Vector::zero();
        match g.kind {
            GenKind::QEps => {
                let w = self.biweight(x);
                out.add_term(x.clone(), QRat::q_pow(w.side(g.side)[g.index - 1]));
            }
            GenKind::E => {
                let mut prefix = 0i64;
                for j in 0..r {
                    for (d, mono) in act_on_factor(m, n, g, x.0[j]) {
                        let mut y = x.clone();
                        y.0[j] = d;
                        out.add_term(y, QRat::laurent(mono.sign, mono.exp + prefix));
                    }
                    prefix -= h_of(m, n, g.side, g.index, x.0[j]);
                }
            }
            GenKind::F => {
                let mut suffix = 0i64;
                for j in (0..r).rev() {
                    for (d, mono) in act_on_factor(m, n, g, x.0[j]) {
                        let mut y = x.clone();
                        y.0[j] = d;
                        out.add_term(y, QRat::laurent(mono.sign, mono.exp + suffix));
                    }
                    suffix += h_of(m, n, g.side, g.index, x.0[j]);
                }
            }
        }
        out
    }

    fn render_index(&self, x: &BasisTuple) -> String {
        x.to_string()
    }
}

/// Every `E`, `F` and `qeps` generator of both sides for an `m x n` grid.
pub fn all_generators(m: usize, n: usize) -> Vec<GeneratorId> {
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let r = rank_of_side(m, n, side);
        for i in 1..=r {
            out.push(GeneratorId::e(side, i));
            out.push(GeneratorId::f(side, i));
        }
        for i in 1..=crate::bimodule::width_of_side(m, n, side) {
            out.push(GeneratorId::qeps(side, i));
        }
    }
    out
}

/// Raising operators of both sides.
pub fn raising_generators(m: usize, n: usize) -> Vec<GeneratorId> {
    let mut out: Vec<GeneratorId> = (1..m).map(|i| GeneratorId::e(Side::Left, i)).collect();
    out.extend((1..n).map(|k| GeneratorId::e(Side::Right, k)));
    out
}

/// Lowering operators of both sides.
pub fn lowering_generators(m: usize, n: usize) -> Vec<GeneratorId> {
    let mut out: Vec<GeneratorId> = (1..m).map(|i| GeneratorId::f(Side::Left, i)).collect();
    out.extend((1..n).map(|k| GeneratorId::f(Side::Right, k)));
    out
}

/// Basis grouped by bi-weight, each group in canonical order.
pub fn weight_spaces<M: BiModule>(module: &M) -> BTreeMap<BiWeight, Vec<M::Index>> {
    let mut out: BTreeMap<BiWeight, Vec<M::Index>> = BTreeMap::new();
    for x in module.basis() {
        out.entry(module.biweight(&x)).or_default().push(x);
    }
    out
}

/// Basis of a single weight space.
pub fn weight_space(shape: &ModuleShape, w: &BiWeight) -> Vec<BasisTuple> {
    shape.basis().into_iter().filter(|x| &shape.biweight(x) == w).collect()
}

/// EF-lemma for the orthonormal basis: `q q^{h_i}(v_c) <E_i v_c, v_c'> = <F_i v_c', v_c>`.
pub fn verify_normal_basis(shape: &ModuleShape) -> CheckReport {
    let mut report = CheckReport::new();
    let basis = shape.basis();
    for side in [Side::Left, Side::Right] {
        for i in 1..=rank_of_side(shape.m, shape.n, side) {
            let ge = GeneratorId::e(side, i);
            let gf = GeneratorId::f(side, i);
            let bad = basis.par_iter().find_map_first(|c| {
                let w = shape.biweight(c);
                let hv = w.side(side)[i - 1] - w.side(side)[i];
                let ec = shape.act_basis(ge, c);
                for (c2, coeff) in ec.iter() {
                    let lhs = coeff.mul_q_pow(1 + hv);
                    let rhs = shape.act_basis(gf, c2).coeff(c);
                    if lhs != rhs {
                        return Some(format!("c={c}, c'={c2}: {lhs} vs {rhs}"));
                    }
                }
                // F must not reach c from c' unless E reaches c' from c.
                None
            });
            let bad = bad.or_else(|| {
                basis.par_iter().find_map_first(|c2| {
                    for (c, coeff) in shape.act_basis(gf, c2).iter() {
                        let w = shape.biweight(c);
                        let hv = w.side(side)[i - 1] - w.side(side)[i];
                        let lhs = shape.act_basis(ge, c).coeff(c2).mul_q_pow(1 + hv);
                        if &lhs != coeff {
                            return Some(format!("c={c}, c'={c2}: {lhs} vs {coeff}"));
                        }
                    }
                    None
                })
            });
            report.record(format!("ef-lemma:{ge}"), bad.map_or(Ok(()), Err));
        }
    }
    report
}

/// One weight block of an equivariant map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    /// Target weight-space basis.
    pub rows: Vec<BasisTuple>,
    /// Source weight-space basis.
    pub cols: Vec<BasisTuple>,
    pub entries: Matrix,
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct BlockDump {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct MapDump {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub note: String,
    pub blocks: BTreeMap<String, BlockDump>,
}

/// A weight-preserving linear map between tensor products of exterior powers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivariantMap {
    pub source: ModuleShape,
    pub target: ModuleShape,
    pub blocks: BTreeMap<BiWeight, Block>,
    /// Free-form provenance of the normalization, e.g. which images were prescribed.
    pub note: String,
}

impl EquivariantMap {
    /// Assemble a map from its values on source basis vectors.
    pub fn from_basis_images(
        source: &ModuleShape,
        target: &ModuleShape,
        image: impl Fn(&BasisTuple) -> Vector<BasisTuple> + Sync,
    ) -> EquivariantMap {
        let src = weight_spaces(source);
        let tgt = weight_spaces(target);
        let blocks: BTreeMap<BiWeight, Block> = src
            .into_par_iter()
            .map(|(w, cols)| {
                let rows = tgt.get(&w).cloned().unwrap_or_default();
                let mut entries = vec![vec![QRat::zero(); cols.len()]; rows.len()];
                for (j, x) in cols.iter().enumerate() {
                    for (y, c) in image(x).iter() {
                        let i = rows.binary_search(y).unwrap_or_else(|_| {
                            panic!("image of {x} leaves weight {}", w.key());
                        });
                        entries[i][j] = c.clone();
                    }
                }
                (w, Block { rows, cols, entries })
            })
            .collect();
        EquivariantMap { source: source.clone(), target: target.clone(), blocks, note: String::new() }
    }

    pub fn identity(shape: &ModuleShape) -> EquivariantMap {
        let mut map = Self::from_basis_images(shape, shape, |x| Vector::basis(x.clone()));
        map.note = "identity".into();
        map
    }

    pub fn apply_basis(&self, x: &BasisTuple) -> Vector<BasisTuple> {
        let w = self.source.biweight(x);
        let Some(b) = self.blocks.get(&w) else { return Vector::zero() };
        let j = b.cols.binary_search(x).expect("basis vector of the source");
        b.rows.iter().zip(&b.entries).map(|(y, row)| (y.clone(), row[j].clone())).collect()
    }

    pub fn apply(&self, v: &Vector<BasisTuple>) -> Vector<BasisTuple> {
        v.map_linear(|x| self.apply_basis(x))
    }

    /// Transpose with respect to the orthonormal tensor bases.
    pub fn adjoint(&self) -> EquivariantMap {
        let tgt = weight_spaces(&self.target);
        let mut blocks = BTreeMap::new();
        for (w, rows_as_cols) in tgt {
            let (cols, rows, entries) = match self.blocks.get(&w) {
                Some(b) => {
                    let t = (0..b.cols.len()).map(|j| b.entries.iter().map(|r| r[j].clone()).collect()).collect();
                    (b.rows.clone(), b.cols.clone(), t)
                }
                None => (rows_as_cols, Vec::new(), Vec::new()),
            };
            blocks.insert(w, Block { rows, cols, entries });
        }
        EquivariantMap {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
            note: format!("adjoint of [{}]", self.note),
        }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &EquivariantMap) -> EquivariantMap {
        assert_eq!(self.target, after.source, "composition shape mismatch");
        let tgt = weight_spaces(&after.target);
        let blocks = self
            .blocks
            .iter()
            .map(|(w, b)| {
                let rows = tgt.get(w).cloned().unwrap_or_default();
                let entries = match after.blocks.get(w) {
                    Some(a) if !b.rows.is_empty() => mat_mul(&a.entries, &b.entries),
                    _ => vec![vec![QRat::zero(); b.cols.len()]; rows.len()],
                };
                (w.clone(), Block { rows, cols: b.cols.clone(), entries })
            })
            .collect();
        EquivariantMap {
            source: self.source.clone(),
            target: after.target.clone(),
            blocks,
            note: format!("[{}] then [{}]", self.note, after.note),
        }
    }

    /// `self ⊗ I` (identity on the right) or `I ⊗ self` over an extra shape.
    pub fn tensor_with_identity(&self, extra: &[usize], identity_on_right: bool) -> EquivariantMap {
        let (m, n) = (self.source.m, self.source.n);
        let join = |a: &[usize], b: &[usize]| a.iter().chain(b).copied().collect::<Vec<_>>();
        let (src, tgt) = if identity_on_right {
            (
                ModuleShape::new(m, n, join(&self.source.degrees, extra)),
                ModuleShape::new(m, n, join(&self.target.degrees, extra)),
            )
        } else {
            (
                ModuleShape::new(m, n, join(extra, &self.source.degrees)),
                ModuleShape::new(m, n, join(extra, &self.target.degrees)),
            )
        };
        let r = self.source.degrees.len();
        let k = extra.len();
        let mut map = Self::from_basis_images(&src, &tgt, |x| {
            if identity_on_right {
                let (a, b) = x.0.split_at(r);
                let b = BasisTuple(b.to_vec());
                self.apply_basis(&BasisTuple(a.to_vec())).iter().map(|(y, c)| (y.concat(&b), c.clone())).collect()
            } else {
                let (a, b) = x.0.split_at(k);
                let a = BasisTuple(a.to_vec());
                self.apply_basis(&BasisTuple(b.to_vec())).iter().map(|(y, c)| (a.concat(y), c.clone())).collect()
            }
        });
        map.note = if identity_on_right { format!("[{}] ⊗ id", self.note) } else { format!("id ⊗ [{}]", self.note) };
        map
    }

    /// Serializable form with weight keys `L:(..)|R:(..)` and entries as strings;
    /// with `q0`, entries are specialized to rationals.
    pub fn dump(&self, q0: Option<&num_rational::BigRational>) -> Result<MapDump, crate::ScalarError> {
        let mut blocks = BTreeMap::new();
        for (w, b) in &self.blocks {
            let entries = b
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| match q0 {
                            Some(q0) => c.eval(q0).map(|v| v.to_string()),
                            None => Ok(c.to_string()),
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            blocks.insert(
                w.key(),
                BlockDump {
                    rows: b.rows.iter().map(|x| x.to_string()).collect(),
                    cols: b.cols.iter().map(|x| x.to_string()).collect(),
                    entries,
                },
            );
        }
        Ok(MapDump {
            source: self.source.degrees.clone(),
            target: self.target.degrees.clone(),
            note: self.note.clone(),
            blocks,
        })
    }

    /// Exact rank of the whole map (sum over weight blocks).
    pub fn rank(&self) -> usize {
        self.blocks.values().map(|b| if b.rows.is_empty() { 0 } else { crate::linalg::rank(&b.entries) }).sum()
    }

    pub fn source_dim(&self) -> usize {
        self.blocks.values().map(|b| b.cols.len()).sum()
    }

    /// Check `M Φ(g) = Φ(g) M` on every source basis vector for every generator.
    pub fn check_equivariance(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let basis = self.source.basis();
        for g in all_generators(self.source.m, self.source.n) {
            let bad = basis.par_iter().find_map_first(|x| {
                let lhs = self.apply(&self.source.act_basis(g, x));
                let rhs = self.target.act(g, &self.apply_basis(x));
                (lhs != rhs).then(|| {
                    format!("on {x}: {} vs {}", self.target.render(&lhs), self.target.render(&rhs))
                })
            });
            report.record(format!("equivariant:{g}"), bad.map_or(Ok(()), Err));
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ColumnSet;

    fn t(parts: &[&[usize]]) -> BasisTuple {
        BasisTuple(parts.iter().map(|p| ColumnSet::from_elems(p)).collect())
    }

    #[test]
    fn coproduct_example() {
        let shape = ModuleShape::new(2, 2, vec![1, 1]);
        let got = shape.act_basis(GeneratorId::e(Side::Left, 1), &t(&[&[1], &[2]]));
        assert_eq!(got, Vector::term(t(&[&[1], &[1]]), QRat::q_pow(-1)));
    }

    #[test]
    fn single_factor_agrees_with_wedge_action() {
        let shape = ModuleShape::wedge(2, 3, 3);
        for x in shape.basis() {
            for g in all_generators(2, 3) {
                let direct: Vector<BasisTuple> = act_on_factor(2, 3, g, x.0[0])
                    .into_iter()
                    .map(|(d, mono)| (BasisTuple::single(d), mono.to_qrat()))
                    .collect();
                assert_eq!(shape.act_basis(g, &x), direct);
            }
        }
    }

    #[test]
    fn ef_lemma_holds() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            for degrees in [vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 2]] {
                let r = verify_normal_basis(&ModuleShape::new(m, n, degrees));
                assert!(r.all_pass(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn adjoint_and_identity() {
        let shape = ModuleShape::new(2, 2, vec![1, 1]);
        let id = EquivariantMap::identity(&shape);
        assert_eq!(id.adjoint().blocks, id.blocks);
        assert_eq!(id.rank(), 16);
        assert!(id.check_equivariance().all_pass());
        let twice = id.then(&id);
        assert_eq!(twice.blocks, id.blocks);
    }
}
