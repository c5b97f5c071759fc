//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any is red.

use std::time::Instant;

use uqmn::crystal::{self, SignTable};
use uqmn::exterior::grid_index;
use uqmn::hw_maps::{self, coefficient, PsiFactory, Variant};
use uqmn::relations;
use uqmn::straightening;
use uqmn::sym::{self, DegreeMatrix};
use uqmn::{BasisTuple, CheckReport, ColumnSet, QRat};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn summarize(report: &CheckReport) -> Outcome {
    if report.all_pass() {
        Ok(format!("{} checks", report.passed()))
    } else {
        let ids: Vec<String> = report.failures().take(5).map(|c| c.id.clone()).collect();
        Err(format!("{} of {} checks failed, e.g. {}", report.failed(), report.checks.len(), ids.join(", ")))
    }
}

const GRID: [(usize, usize); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];

fn relations_grid() -> Outcome {
    let mut report = CheckReport::new();
    for (m, n) in GRID {
        for p in 0..=(m * n).min(5) {
            report.extend_prefixed(&format!("{m}x{n}:p={p}"), relations::relation_suite(m, n, p));
            report.extend_prefixed(&format!("{m}x{n}:p={p}:misc"), relations::check_misc_identities(m, n, p));
        }
    }
    summarize(&report)
}

fn classical_limit() -> Outcome {
    let mut report = CheckReport::new();
    for (m, n) in GRID {
        for p in 0..=(m * n).min(5) {
            report.extend_prefixed(&format!("{m}x{n}:p={p}"), relations::check_q1_classical(m, n, p));
        }
    }
    summarize(&report)
}

fn cs(e: &[usize]) -> ColumnSet {
    ColumnSet::from_elems(e)
}

fn crystal_suite() -> Outcome {
    let mut report = CheckReport::new();
    // 2-subsets of [4] in order 12, 13, 14, 23, 24, 34.
    let table = SignTable::build(2, 2, 2).map_err(|e| e.to_string())?;
    let stars: Vec<i64> = ColumnSet::all_of_size(4, 2).iter().map(|c| table.sign_star[c]).collect();
    report.expect_eq("sign-star-table", stars, vec![1, 1, 1, -1, 1, 1]);

    for m in 1..=6 {
        for n in 1..=6 / m {
            for k in 0..=4 {
                let tag = format!("{m}x{n}:K={k}");
                if k <= m * n {
                    report.extend_prefixed(&tag, crystal::check_crystal_closure_wedge(m, n, k));
                    report.extend_prefixed(&tag, crystal::verify_rsk_compatibility_wedge(m, n, k));
                }
                report.extend_prefixed(&tag, crystal::check_crystal_closure_sym(m, n, k));
                report.extend_prefixed(&tag, crystal::verify_rsk_compatibility_sym(m, n, k));
            }
        }
    }

    let cells = [(1, 1), (3, 1), (2, 2), (3, 2), (3, 3), (1, 4), (2, 4)];
    let c = ColumnSet::from_elems(&cells.map(|(i, j)| grid_index(i, j, 3)));
    let [(wl, tl), (wr, tr)] = crystal::wedge_words_and_tableaux(3, 4, c);
    report.expect_eq("wedge-words", (wl.as_str(), wr.as_str()), ("3132321", "3214241"));
    report.expect_eq("wedge-tableaux", (tl.to_string(), tr.to_string()), ("112/233/3".into(), "114/22/34".into()));
    let d = DegreeMatrix::from_rows(&[vec![1, 0, 0, 2], vec![0, 2, 0, 1], vec![3, 1, 1, 0]]);
    let [(sl, _), (sr, _)] = crystal::sym_words_and_tableaux(&d);
    report.expect_eq("sym-words", (sl.as_str(), sr.as_str()), ("13332233112", "14422411123"));
    summarize(&report)
}

fn highest_weight_maps() -> Outcome {
    let mut report = CheckReport::new();
    for (m, n) in [(2, 2), (2, 3)] {
        report.extend_prefixed(&format!("{m}x{n}"), hw_maps::hw_suite(m, n));
        let mut factory = PsiFactory::new(m, n, Variant::Generic).map_err(|e| e.to_string())?;
        for a in 1..=4 {
            for b in (1..=a.min(5 - a)).filter(|_| a < m * n) {
                let r = straightening::two_col_report(&mut factory, a, b).map_err(|e| e.to_string())?;
                report.extend_prefixed(&format!("{m}x{n}"), r);
            }
        }
    }
    // 16 - 6 = 10 = dim V_(2)(C^4).
    let shape = uqmn::Shape::new(&[2]).map_err(|e| e.to_string())?;
    report.expect_eq("cokernel-11-example", straightening::classical_dim(&shape, 4), 10);
    summarize(&report)
}

fn poly(cs: &[i64]) -> QRat {
    // cs[i] is the coefficient of q^i.
    cs.iter().enumerate().fold(QRat::zero(), |acc, (i, &c)| acc + QRat::laurent(c, i as i64))
}

fn tuple(parts: &[&[usize]]) -> BasisTuple {
    BasisTuple(parts.iter().map(|p| cs(p)).collect())
}

fn special_maps() -> Outcome {
    let maps = hw_maps::special_maps_2x2().map_err(|e| e.to_string())?;
    let mut report = CheckReport::new();
    let q = QRat::q();
    let one_q2 = poly(&[1, 0, 1]);
    let div = |x: QRat| x.checked_div(&one_q2).expect("nonzero");
    let qqm1 = poly(&[-1, 1, 1]); // q^2 + q - 1
    let x = tuple(&[&[1, 2, 3]]);
    let expected_psi3 = [
        (tuple(&[&[2, 3], &[1]]), div(poly(&[1, 1]) * qqm1.clone())),
        (tuple(&[&[1, 4], &[1]]), div(QRat::zero() - poly(&[1, -2, 0, 1]))),
        (tuple(&[&[1, 3], &[2]]), QRat::zero() - qqm1.clone() * q.clone()),
        (tuple(&[&[1, 2], &[3]]), qqm1 * q.clone()),
    ];
    for (y, want) in expected_psi3 {
        report.expect_eq(format!("psi3:{y}"), coefficient(&maps.psi3, &x, &y), want);
    }
    let q3 = QRat::q_pow(3);
    let expected_psi3p = [
        (tuple(&[&[1], &[2, 3]]), div(QRat::zero() - q3.clone() * poly(&[1, 1]))),
        (tuple(&[&[1], &[1, 4]]), div(q3 * poly(&[-1, 1]))),
        (tuple(&[&[2], &[1, 3]]), q.clone()),
        (tuple(&[&[3], &[1, 2]]), QRat::zero() - q.clone()),
    ];
    for (y, want) in expected_psi3p {
        report.expect_eq(format!("psi3p:{y}"), coefficient(&maps.psi3p, &x, &y), want);
    }
    for (lo, hi) in [(1, 2), (1, 3)] {
        let x = tuple(&[&[lo, hi]]);
        let (a, b) = (tuple(&[&[hi], &[lo]]), tuple(&[&[lo], &[hi]]));
        report.expect_eq(format!("psi2:{x}"), (coefficient(&maps.psi2, &x, &a), coefficient(&maps.psi2, &x, &b)), (QRat::laurent(-1, 1), QRat::q_pow(2)));
        report.expect_eq(format!("psi2p:{x}"), (coefficient(&maps.psi2p, &x, &a), coefficient(&maps.psi2p, &x, &b)), (QRat::one(), QRat::laurent(-1, 1)));
    }
    for (name, map) in [("psi2", &maps.psi2), ("psi2p", &maps.psi2p), ("psi3", &maps.psi3), ("psi3p", &maps.psi3p)] {
        report.extend_prefixed(name, map.check_equivariance());
    }
    report.record("commuting-square", hw_maps::commuting_square(&maps));

    let mut factory = PsiFactory::new(2, 2, Variant::Special22).map_err(|e| e.to_string())?;
    for (a, b, c) in straightening::standard_tuples() {
        let reports = straightening::three_col_quotient(&mut factory, a, b, c, 0).map_err(|e| e.to_string())?;
        for r in reports {
            let outcome = if r.pass { Ok(()) } else { Err(format!("quotient {} vs oracle {}", r.quotient, r.oracle)) };
            report.record(format!("threecol:{}", r.id()), outcome);
        }
    }
    summarize(&report)
}

fn sym_suite() -> Outcome {
    let mut report = CheckReport::new();
    for m in 1..=6 {
        for n in 1..=6 / m {
            for k in 0..=4 {
                report.extend_prefixed(&format!("{m}x{n}"), sym::sym_dimension_check(k, m, n));
            }
        }
    }
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        report.extend_prefixed(&format!("{m}x{n}"), sym::check_confluence(m, n, 4));
        for k in 0..=3 {
            report.extend_prefixed(&format!("{m}x{n}"), sym::check_action_agreement(m, n, k));
        }
    }
    summarize(&report)
}

const FULL_SUITE: &[&[&str]] = &[
    &["verify", "--m", "2", "--n", "3", "--p", "3", "--suite", "all"],
    &["commute", "--m", "3", "--n", "2", "--p", "2"],
    &["crystal", "--m", "2", "--n", "3", "--k", "3"],
    &["crystal", "--m", "2", "--n", "2", "--k", "2", "--graph"],
    &["rsk", "--m", "2", "--n", "3", "--k", "3", "--kind", "sym"],
    &["psi", "--m", "2", "--n", "2", "--a", "2", "--b", "1", "--variant", "special22"],
    &["threecol", "--m", "2", "--n", "2"],
    &["sym", "--m", "2", "--n", "2", "--k", "2"],
    &["dims", "--m", "2", "--n", "3", "--k", "3"],
];

fn full_json(threads: &str) -> Vec<u8> {
    let mut out = Vec::new();
    for args in FULL_SUITE {
        let tail = ["--format", "json", "--threads", threads];
        let argv = ["uqmn"].iter().chain(args.iter()).chain(tail.iter()).copied();
        let (body, err, code) = uqmn_cli::run_args(argv);
        assert!(code != 2, "usage error in {args:?}: {err}");
        out.extend_from_slice(body.as_bytes());
    }
    out
}

fn determinism() -> Outcome {
    let first = full_json("1");
    let second = full_json("4");
    if first == second {
        Ok(format!("{} bytes identical", first.len()))
    } else {
        Err("JSON reports differ between runs".into())
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("relation suite", relations_grid),
        ("classical specialization", classical_limit),
        ("crystal", crystal_suite),
        ("highest-weight maps", highest_weight_maps),
        ("special maps and three-column check", special_maps),
        ("sym algebra", sym_suite),
        ("determinism", determinism),
    ];
    let mut red = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                red += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} pass, {red} fail", criteria.len() - red);
    if red > 0 {
        std::process::exit(1);
    }
}
