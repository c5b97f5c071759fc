//! Operator identities checked exhaustively on basis vectors: the defining
//! relations of `U_q(gl)`, commutation of the two actions, the classical limit,
//! and a collection of identities among the elementary exterior operators.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::bimodule::{
    act_on_factor, rank_of_side, width_of_side, BiModule, GeneratorId, ModuleShape, Side,
};
use crate::exterior::{apply_word, ColumnSet, EWeight, ElemOp};
use crate::linalg::Vector;
use crate::qscalar::{quantum_int, QRat};
use crate::report::CheckReport;

/// Compare two linear operators on every basis vector; `Err` carries the first mismatch.
pub fn compare_on_basis<M, L, R>(module: &M, lhs: L, rhs: R) -> Result<(), String>
where
    M: BiModule,
    L: Fn(&Vector<M::Index>) -> Vector<M::Index> + Sync,
    R: Fn(&Vector<M::Index>) -> Vector<M::Index> + Sync,
{
    let basis = module.basis();
    let bad = basis.par_iter().find_map_first(|x| {
        let v = Vector::basis(x.clone());
        let (a, b) = (lhs(&v), rhs(&v));
        (a != b).then(|| format!("on {}: {} ≠ {}", module.render_index(x), module.render(&a), module.render(&b)))
    });
    bad.map_or(Ok(()), Err)
}

fn unit(width: usize, a: usize) -> Vec<i64> {
    let mut v = vec![0; width];
    v[a - 1] = 1;
    v
}

/// Defining relations of `U_q(gl)` for one side of a bimodule.
pub fn check_uq_relations<M: BiModule>(module: &M, side: Side) -> CheckReport {
    let (m, n) = module.dims();
    let r = rank_of_side(m, n, side);
    let w = width_of_side(m, n, side);
    let mut report = CheckReport::new();
    let e = |i| GeneratorId::e(side, i);
    let f = |i| GeneratorId::f(side, i);

    // q^{eps_a} X_b q^{-eps_a} = q^{±<eps_a, alpha_b>} X_b
    for a in 1..=w {
        let pos = unit(w, a);
        let neg: Vec<i64> = pos.iter().map(|x| -x).collect();
        for b in 1..=r {
            let s = (a == b) as i64 - (a == b + 1) as i64;
            for (g, sign) in [(e(b), 1), (f(b), -1)] {
                let out = compare_on_basis(
                    module,
                    |v| module.cartan(side, &pos, &module.act(g, &module.cartan(side, &neg, v))),
                    |v| module.act(g, v).scaled(&QRat::q_pow(sign * s)),
                );
                report.record(format!("weight:qeps{}{a}·{g}", side.letter()), out);
            }
        }
    }

    // [E_a, F_b] = δ_ab [h_a]
    for a in 1..=r {
        for b in 1..=r {
            let out = compare_on_basis(
                module,
                |v| module.act_word(&[e(a), f(b)], v).sub(&module.act_word(&[f(b), e(a)], v)),
                |v| {
                    if a != b {
                        return Vector::zero();
                    }
                    v.map_linear(|x| {
                        let wt = module.biweight(x);
                        let h = wt.side(side)[a - 1] - wt.side(side)[a];
                        Vector::term(x.clone(), quantum_int(h))
                    })
                },
            );
            report.record(format!("cartan:[{},{}]", e(a), f(b)), out);
        }
    }

    // Far commutation.
    for a in 1..=r {
        for b in a + 2..=r {
            for (x, y) in [(e(a), e(b)), (f(a), f(b))] {
                let out = compare_on_basis(module, |v| module.act_word(&[x, y], v), |v| module.act_word(&[y, x], v));
                report.record(format!("far:[{x},{y}]"), out);
            }
        }
    }

    // Serre relations for adjacent indices.
    let qq = &QRat::q() + &QRat::q_pow(-1);
    for a in 1..=r {
        for b in 1..=r {
            if a.abs_diff(b) != 1 {
                continue;
            }
            for (xa, xb) in [(e(a), e(b)), (f(a), f(b))] {
                let out = compare_on_basis(
                    module,
                    |v| {
                        let mut s = module.act_word(&[xb, xa, xa], v);
                        s.add_assign(&module.act_word(&[xa, xa, xb], v));
                        s
                    },
                    |v| module.act_word(&[xa, xb, xa], v).scaled(&qq),
                );
                report.record(format!("serre:{xa}{xa}{xb}"), out);
            }
        }
    }
    report
}

/// Every left generator commutes with every right generator.
pub fn check_commutation<M: BiModule>(module: &M) -> CheckReport {
    let (m, n) = module.dims();
    let gens = crate::tensor::all_generators(m, n);
    let mut report = CheckReport::new();
    for &gl in gens.iter().filter(|g| g.side == Side::Left) {
        for &gr in gens.iter().filter(|g| g.side == Side::Right) {
            let out =
                compare_on_basis(module, |v| module.act_word(&[gl, gr], v), |v| module.act_word(&[gr, gl], v));
            report.record(format!("commute:[{gl},{gr}]"), out);
        }
    }
    report
}

/// Classical `gl_m ⊕ gl_n` action on `Λ^p(C^m ⊗ C^n)` by derivations, with the
/// sign from re-sorting the wedge monomial.
pub fn classical_action(m: usize, n: usize, g: GeneratorId, c: ColumnSet) -> Vec<(ColumnSet, i64)> {
    use crate::bimodule::GenKind;
    let idx = |i: usize, j: usize| (j - 1) * m + i;
    // (from, to) pairs of grid points moved by the generator.
    let moves: Vec<(usize, usize)> = match (g.side, g.kind) {
        (_, GenKind::QEps) => return vec![(c, 1)],
        (Side::Left, GenKind::E) => (1..=n).map(|k| (idx(g.index + 1, k), idx(g.index, k))).collect(),
        (Side::Left, GenKind::F) => (1..=n).map(|k| (idx(g.index, k), idx(g.index + 1, k))).collect(),
        (Side::Right, GenKind::E) => (1..=m).map(|i| (idx(i, g.index + 1), idx(i, g.index))).collect(),
        (Side::Right, GenKind::F) => (1..=m).map(|i| (idx(i, g.index), idx(i, g.index + 1))).collect(),
    };
    let elems: Vec<usize> = c.elems().collect();
    let mut out = Vec::new();
    for (from, to) in moves {
        if !elems.contains(&from) || elems.contains(&to) {
            continue;
        }
        let (lo, hi) = (from.min(to), from.max(to));
        let between = elems.iter().filter(|&&x| x > lo && x < hi).count();
        let mut d: Vec<usize> = elems.iter().map(|&x| if x == from { to } else { x }).collect();
        d.sort_unstable();
        out.push((ColumnSet::from_elems(&d), if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// At `q = 1` every generator matrix agrees with the classical derivation action.
pub fn check_q1_classical(m: usize, n: usize, p: usize) -> CheckReport {
    let mut report = CheckReport::new();
    let one = BigRational::one();
    let basis = ColumnSet::all_of_size(m * n, p);
    for g in crate::tensor::all_generators(m, n) {
        let bad = basis.par_iter().find_map_first(|&c| {
            let mut quantum = Vector::zero();
            for (d, mono) in act_on_factor(m, n, g, c) {
                quantum.add_term(d, mono.to_qrat());
            }
            let quantum = match quantum.eval(&one) {
                Ok(v) => v,
                Err(e) => return Some(format!("on {c}: {e}")),
            };
            let mut classical = std::collections::BTreeMap::new();
            for (d, s) in classical_action(m, n, g, c) {
                *classical.entry(d).or_insert_with(|| BigRational::from_integer(0.into())) +=
                    BigRational::from_integer(s.into());
            }
            classical.retain(|_, v: &mut BigRational| *v != BigRational::from_integer(0.into()));
            (quantum != classical).then(|| format!("on {c}: {quantum:?} vs {classical:?}"))
        });
        report.record(format!("q1:{g}"), bad.map_or(Ok(()), Err));
    }
    report
}

/// Rearrange `e_{σ(1)} ... e_{σ(n)}` (σ a permutation of `1..=n`) into the canonical form
/// `(e_{n-k_s+1} ... e_n) ... (e_1 ... e_{k_1})` using only far commutations.
/// Returns the canonical word and the block sizes `(k_1, ..., k_s)`.
pub fn reorder_e_monomial(sigma: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = sigma.len();
    let mut pos = vec![0; n + 1];
    for (t, &s) in sigma.iter().enumerate() {
        assert!((1..=n).contains(&s) && pos[s] == 0, "not a permutation of 1..={n}");
        pos[s] = t + 1;
    }
    // i joins the block of i-1 exactly when e_i stands to the right of e_{i-1}.
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 1..=n {
        if i > 1 && pos[i] > pos[i - 1] {
            blocks.last_mut().unwrap().push(i);
        } else {
            blocks.push(vec![i]);
        }
    }
    let sizes = blocks.iter().map(Vec::len).collect();
    let word = blocks.iter().rev().flatten().copied().collect();
    (word, sizes)
}

/// Both words of raising operators act identically on `Λ^p(C^{n+1})` for all `p`.
pub fn check_reorder(sigma: &[usize]) -> CheckReport {
    let (word, sizes) = reorder_e_monomial(sigma);
    let big_n = sigma.len() + 1;
    let lhs: Vec<ElemOp> = sigma.iter().map(|&i| ElemOp::E(i)).collect();
    let rhs: Vec<ElemOp> = word.iter().map(|&i| ElemOp::E(i)).collect();
    let mut report = CheckReport::new();
    let out = (0..=big_n).find_map(|p| word_mismatch(&lhs, &rhs, big_n, p));
    report.record(format!("reorder:{sigma:?}->{word:?} blocks {sizes:?}"), out.map_or(Ok(()), Err));
    report
}

fn word_mismatch(a: &[ElemOp], b: &[ElemOp], big_n: usize, p: usize) -> Option<String> {
    ColumnSet::all_of_size(big_n, p).into_par_iter().find_map_first(|c| {
        let v = Vector::basis(c);
        let (x, y) = (apply_word(a, &v), apply_word(b, &v));
        (x != y).then(|| format!("on {c}: {} ≠ {}", x.render(|d| d.to_string()), y.render(|d| d.to_string())))
    })
}

fn is_zero_word(a: &[ElemOp], big_n: usize, p: usize) -> Option<String> {
    ColumnSet::all_of_size(big_n, p).into_par_iter().find_map_first(|c| {
        let x = apply_word(a, &Vector::basis(c));
        (!x.is_zero()).then(|| format!("on {c}: {}", x.render(|d| d.to_string())))
    })
}

fn commutes(a: &[ElemOp], b: &[ElemOp], big_n: usize, p: usize) -> Option<String> {
    let ab: Vec<ElemOp> = a.iter().chain(b).cloned().collect();
    let ba: Vec<ElemOp> = b.iter().chain(a).cloned().collect();
    word_mismatch(&ab, &ba, big_n, p)
}

/// Identities among `e_i`, `f_i`, `E_{i,j}`, `F_{i,j}` and `q^α` on `Λ^p(C^{mn})`.
pub fn check_misc_identities(m: usize, n: usize, p: usize) -> CheckReport {
    let big_n = m * n;
    let mut report = CheckReport::new();
    let mut family = |name: &str, failures: Vec<String>| {
        report.record(format!("{name}:p={p}"), failures.into_iter().next().map_or(Ok(()), Err));
    };
    use ElemOp::{BigE, BigF, E, F};

    let mut fails = Vec::new();
    for i in 1..big_n {
        fails.extend(is_zero_word(&[E(i), E(i)], big_n, p).map(|w| format!("e{i}e{i} {w}")));
        fails.extend(is_zero_word(&[F(i), F(i)], big_n, p).map(|w| format!("f{i}f{i} {w}")));
    }
    family("nilpotent", fails);

    let mut fails = Vec::new();
    for i in 1..big_n {
        for j in [i.wrapping_sub(1), i + 1] {
            if j == 0 || j >= big_n {
                continue;
            }
            fails.extend(is_zero_word(&[E(i), E(j), E(i)], big_n, p).map(|w| format!("e{i}e{j}e{i} {w}")));
        }
        if i + 1 < big_n {
            fails.extend(is_zero_word(&[E(i), F(i + 1)], big_n, p).map(|w| format!("e{i}f{} {w}", i + 1)));
            fails.extend(is_zero_word(&[E(i + 1), F(i)], big_n, p).map(|w| format!("e{}f{i} {w}", i + 1)));
        }
    }
    family("adjacent-vanishing", fails);

    let pairs: Vec<(usize, usize)> = (1..big_n).flat_map(|i| (i..big_n).map(move |j| (i, j))).collect();
    let (mut f1, mut f2, mut f3, mut f4) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            let tag = format!("({i},{j}),({k},{l})");
            if l + 1 != i && j + 1 != k {
                f1.extend(commutes(&[BigE(i, j)], &[BigE(k, l)], big_n, p).map(|w| format!("{tag} {w}")));
            }
            if l != j && k != i {
                f2.extend(commutes(&[BigF(i, j)], &[BigE(k, l)], big_n, p).map(|w| format!("{tag} {w}")));
            }
            if i == k || j == l {
                f3.extend(is_zero_word(&[BigE(i, j), BigE(k, l)], big_n, p).map(|w| format!("{tag} {w}")));
            }
            if j + 1 == k || i == l + 1 {
                f4.extend(is_zero_word(&[BigF(i, j), BigE(k, l)], big_n, p).map(|w| format!("FE {tag} {w}")));
                f4.extend(is_zero_word(&[BigE(k, l), BigF(i, j)], big_n, p).map(|w| format!("EF {tag} {w}")));
            }
        }
    }
    family("bracket-commute-EE", f1);
    family("bracket-commute-FE", f2);
    family("bracket-vanish-EE", f3);
    family("bracket-vanish-FE", f4);

    // Products over permutations of an interval.
    let mut fails = Vec::new();
    for i in 1..big_n {
        for j in i..big_n.min(i + 3) {
            for sigma in (i..=j).permutations(j - i + 1) {
                let es: Vec<ElemOp> = sigma.iter().map(|&s| E(s)).collect();
                for k in 1..big_n {
                    let tag = format!("σ={sigma:?} k={k}");
                    if k + 1 < i || k > j + 1 {
                        fails.extend(commutes(&[E(k)], &es, big_n, p).map(|w| format!("e {tag} {w}")));
                    }
                    // Only the endpoints of the interval annihilate; interior k can fail
                    // (see `interior_index_counterexample`).
                    if k == i || k == j {
                        let left: Vec<ElemOp> = std::iter::once(E(k)).chain(es.iter().cloned()).collect();
                        let right: Vec<ElemOp> = es.iter().cloned().chain(std::iter::once(E(k))).collect();
                        fails.extend(is_zero_word(&left, big_n, p).map(|w| format!("e·eσ {tag} {w}")));
                        fails.extend(is_zero_word(&right, big_n, p).map(|w| format!("eσ·e {tag} {w}")));
                    }
                    if k < i || k > j {
                        fails.extend(commutes(&[F(k)], &es, big_n, p).map(|w| format!("f {tag} {w}")));
                    }
                }
            }
        }
    }
    family("interval-permutations", fails);

    // e_j q^α = q^{<α, κ_{j+1,j}>} q^α e_j and the analogue for E_{i,j}.
    let mut fails = Vec::new();
    for a in 1..=big_n {
        let alpha = EWeight::eps(big_n, a);
        for &(i, j) in &pairs {
            let s = alpha.dot(&EWeight::kappa(big_n, j + 1, i));
            let bad = ColumnSet::all_of_size(big_n, p).into_iter().find_map(|c| {
                let v = Vector::basis(c);
                let x = apply_word(&[BigE(i, j), ElemOp::QPow(alpha.clone())], &v);
                let y = apply_word(&[ElemOp::QPow(alpha.clone()), BigE(i, j)], &v).scaled(&QRat::q_pow(s));
                (x != y).then(|| format!("eps{a} E({i},{j}) on {c}"))
            });
            fails.extend(bad);
        }
    }
    family("weight-commutation", fails);
    if p == 2 && big_n >= 4 {
        let w = interior_index_counterexample();
        report.record("interval-permutations-interior-counterexample", w);
    }
    report
}

/// `e_2 (e_1 e_3 e_2)` is nonzero on `v_{3,4}`, so an interior index of the interval
/// need not annihilate a permuted product of raising operators.
pub fn interior_index_counterexample() -> Result<(), String> {
    let c = ColumnSet::from_elems(&[3, 4]);
    let word = [ElemOp::E(2), ElemOp::E(1), ElemOp::E(3), ElemOp::E(2)];
    let got = apply_word(&word, &Vector::basis(c));
    let want = Vector::basis(ColumnSet::from_elems(&[1, 2]));
    if got == want {
        Ok(())
    } else {
        Err(format!("expected v{{1,2}}, got {}", got.render(|d| d.to_string())))
    }
}

/// The full relation battery on `Λ^p(C^m ⊗ C^n)`.
pub fn relation_suite(m: usize, n: usize, p: usize) -> CheckReport {
    let shape = ModuleShape::wedge(m, n, p);
    let mut report = CheckReport::new();
    report.extend_prefixed("uq-left", check_uq_relations(&shape, Side::Left));
    report.extend_prefixed("uq-right", check_uq_relations(&shape, Side::Right));
    report.extend_prefixed("bimodule", check_commutation(&shape));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reorder_example() {
        let (word, sizes) = reorder_e_monomial(&[2, 6, 7, 3, 5, 1, 4]);
        assert_eq!(word, vec![6, 7, 5, 2, 3, 4, 1]);
        assert_eq!(sizes, vec![1, 3, 1, 2]);
        assert_eq!(reorder_e_monomial(&[2, 1]), (vec![2, 1], vec![1, 1]));
        assert_eq!(reorder_e_monomial(&[1, 2, 3]), (vec![1, 2, 3], vec![3]));
    }

    #[test]
    fn reorder_preserves_the_operator() {
        for n in 1..=5 {
            for sigma in (1..=n).permutations(n) {
                let r = check_reorder(&sigma);
                assert!(r.all_pass(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn relations_small() {
        for p in 0..=4 {
            let r = relation_suite(2, 2, p);
            assert!(r.all_pass(), "p={p}: {}", r.summary());
        }
    }

    #[test]
    fn classical_limit_small() {
        for p in 0..=4 {
            assert!(check_q1_classical(2, 2, p).all_pass());
        }
    }

    #[test]
    fn misc_identities_small() {
        for p in 0..=4 {
            let r = check_misc_identities(2, 2, p);
            assert!(r.all_pass(), "p={p}: {}", r.summary());
        }
    }

    #[test]
    fn tensor_shapes_are_bimodules() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            for degrees in [vec![1, 1], vec![2, 1], vec![1, 2], vec![1, 1, 1]] {
                let shape = ModuleShape::new(m, n, degrees);
                let mut r = check_uq_relations(&shape, Side::Left);
                r.extend(check_uq_relations(&shape, Side::Right));
                r.extend(check_commutation(&shape));
                assert!(r.all_pass(), "{shape}: {}", r.summary());
            }
        }
    }
}
