//! Command-line driver: parses a [`RunConfig`], dispatches to the verification
//! suites in `uqmn`, and renders a deterministic report.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use uqmn::crystal::{self, CrystalGraph};
use uqmn::hw_maps::{self, PsiFactory, Variant};
use uqmn::relations;
use uqmn::straightening::{self, QuotientReport, ThreeColumn};
use uqmn::sym::{self, SymModule};
use uqmn::{CheckReport, Shape, Side, Status};

pub const THREADS_ENV: &str = "UQMN_THREADS";

#[derive(Parser, Debug, Clone)]
#[command(name = "uqmn", version, about = "Exact checks for the U_q(gl_m) x U_q(gl_n) bimodule structure")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, env = THREADS_ENV, global = true)]
    pub threads: Option<usize>,
    /// Specialize dumped map entries at this rational value of q.
    #[arg(long, global = true)]
    pub q0: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Quantum group relations, misc identities and the q = 1 limit on Λ^p.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Left and right actions commute on Λ^p.
    Commute {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Bi-crystal closure, or the crystal graph with --graph / --format dot.
    Crystal {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Kind::Wedge)]
        kind: Kind,
        #[arg(long)]
        graph: bool,
    },
    /// Kashiwara operators against the RSK tableau crystal.
    Rsk {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Kind::Wedge)]
        kind: Kind,
    },
    /// Checks on ψ_{a,b}, or its blocks with --dump.
    Psi {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Generic)]
        variant: VariantArg,
        #[arg(long)]
        dump: bool,
    },
    /// Three-column quotient dimensions against the tableau oracle.
    Threecol {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// `all` or a comma list such as `111,221`.
        #[arg(long, default_value = "all")]
        tuples: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Special22)]
        variant: VariantArg,
        /// Also compute the full quotient for tuples with at most this many boxes.
        #[arg(long, default_value_t = 6)]
        full_up_to: usize,
    },
    /// Quantum matrix algebra: dimensions, confluence, closed-form actions.
    Sym {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Decomposition of Λ^k and highest-weight vectors.
    Dims {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Misc,
    Q1,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Wedge,
    Sym,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantArg {
    Generic,
    Special22,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Generic => Variant::Generic,
            VariantArg::Special22 => Variant::Special22,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

/// Rendered output and the exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub exit: i32,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Largest grid the enumerations are sized for.
const MAX_CELLS: usize = 12;

fn check_grid(m: usize, n: usize) -> Result<(), CliError> {
    if m == 0 || n == 0 {
        return Err(usage("--m and --n must be positive"));
    }
    if m * n > MAX_CELLS {
        return Err(usage(format!("m*n must be at most {MAX_CELLS}")));
    }
    Ok(())
}

fn check_degree(name: &str, k: usize, max: usize) -> Result<(), CliError> {
    if k > max {
        return Err(usage(format!("--{name} must be at most {max}")));
    }
    Ok(())
}

/// Report body plus command-specific extras.
struct Run {
    suite: &'static str,
    params: BTreeMap<&'static str, Value>,
    report: CheckReport,
    data: Option<Value>,
    csv_rows: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Run {
    fn new(suite: &'static str, params: BTreeMap<&'static str, Value>, report: CheckReport) -> Self {
        Run { suite, params, report, data: None, csv_rows: None }
    }
}

/// Execute a parsed configuration. Usage errors come back as `Err`; check
/// failures as an `Outcome` with exit code 1.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let pool = match config.threads {
        Some(0) => return Err(usage("--threads must be positive")),
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .map_err(|e| usage(e.to_string()))?;
    pool.install(|| dispatch(config))
}

fn params(pairs: &[(&'static str, Value)]) -> BTreeMap<&'static str, Value> {
    pairs.iter().cloned().collect()
}

fn dispatch(config: &RunConfig) -> Result<Outcome, CliError> {
    if config.format == Format::Dot && !matches!(config.command, Command::Crystal { .. }) {
        return Err(usage("--format dot is only available for `crystal`"));
    }
    let q0 = match &config.q0 {
        Some(s) => Some(s.parse::<BigRational>().map_err(|e| usage(format!("--q0 {s}: {e}")))?),
        None => None,
    };
    let run = match config.command.clone() {
        Command::Verify { m, n, p, suite } => {
            check_grid(m, n)?;
            check_degree("p", p, m * n)?;
            let mut report = CheckReport::new();
            if matches!(suite, Suite::Relations | Suite::All) {
                report.extend(relations::relation_suite(m, n, p));
            }
            if matches!(suite, Suite::Misc | Suite::All) {
                report.extend_prefixed("misc", relations::check_misc_identities(m, n, p));
            }
            if matches!(suite, Suite::Q1 | Suite::All) {
                report.extend(relations::check_q1_classical(m, n, p));
            }
            let name = format!("{suite:?}").to_lowercase();
            Run::new("verify", params(&[("m", m.into()), ("n", n.into()), ("p", p.into()), ("suite", name.into())]), report)
        }
        Command::Commute { m, n, p } => {
            check_grid(m, n)?;
            check_degree("p", p, m * n)?;
            let report = relations::check_commutation(&uqmn::ModuleShape::wedge(m, n, p));
            Run::new("commute", params(&[("m", m.into()), ("n", n.into()), ("p", p.into())]), report)
        }
        Command::Crystal { m, n, k, kind, graph } => {
            check_grid(m, n)?;
            if kind == Kind::Wedge {
                check_degree("k", k, m * n)?;
            }
            if graph || config.format == Format::Dot {
                return crystal_graph(config.format, m, n, k, kind);
            }
            let report = match kind {
                Kind::Wedge => crystal::check_crystal_closure_wedge(m, n, k),
                Kind::Sym => crystal::check_crystal_closure_sym(m, n, k),
            };
            Run::new("crystal", params(&[("m", m.into()), ("n", n.into()), ("k", k.into()), ("kind", kind_name(kind).into())]), report)
        }
        Command::Rsk { m, n, k, kind } => {
            check_grid(m, n)?;
            if kind == Kind::Wedge {
                check_degree("k", k, m * n)?;
            }
            let report = match kind {
                Kind::Wedge => crystal::verify_rsk_compatibility_wedge(m, n, k),
                Kind::Sym => crystal::verify_rsk_compatibility_sym(m, n, k),
            };
            Run::new("rsk", params(&[("m", m.into()), ("n", n.into()), ("k", k.into()), ("kind", kind_name(kind).into())]), report)
        }
        Command::Psi { m, n, a, b, variant, dump } => {
            check_grid(m, n)?;
            if b < 1 || a < b || a + 1 > m * n {
                return Err(usage("need 1 ≤ b ≤ a and a + 1 ≤ m*n"));
            }
            let mut factory = PsiFactory::new(m, n, variant.into()).map_err(|e| usage(e.to_string()))?;
            let map = factory.psi_ab(a, b).map_err(|e| usage(e.to_string()))?;
            if dump {
                let d = map.dump(q0.as_ref()).map_err(|e| usage(format!("--q0: {e}")))?;
                let body = serde_json::to_string_pretty(&d).expect("serializable") + "\n";
                return Ok(Outcome { body, exit: 0 });
            }
            let report = psi_report(&mut factory, a, b, variant.into()).map_err(|e| usage(e.to_string()))?;
            let vname = format!("{variant:?}").to_lowercase();
            Run::new("psi", params(&[("m", m.into()), ("n", n.into()), ("a", a.into()), ("b", b.into()), ("variant", vname.into())]), report)
        }
        Command::Threecol { m, n, tuples, variant, full_up_to } => {
            check_grid(m, n)?;
            let tuples = parse_tuples(&tuples)?;
            threecol(m, n, &tuples, variant, full_up_to)?
        }
        Command::Sym { m, n, k } => {
            check_grid(m, n)?;
            check_degree("k", k, 6)?;
            let mut report = sym::sym_dimension_check(k, m, n);
            if k <= 3 {
                report.extend(sym::check_action_agreement(m, n, k));
            }
            report.extend(sym::check_confluence(m, n, k.min(4)));
            let module = SymModule { m, n, k };
            report.extend_prefixed("uq-left", relations::check_uq_relations(&module, Side::Left));
            report.extend_prefixed("uq-right", relations::check_uq_relations(&module, Side::Right));
            report.extend_prefixed("bimodule", relations::check_commutation(&module));
            report.extend(sym::check_sym_q1(m, n, k));
            Run::new("sym", params(&[("m", m.into()), ("n", n.into()), ("k", k.into())]), report)
        }
        Command::Dims { m, n, k } => {
            check_grid(m, n)?;
            check_degree("k", k, m * n)?;
            let report = straightening::decomposition_check(k, m, n);
            let rows: Vec<Vec<String>> = Shape::all_fitting(m, n, k)
                .iter()
                .map(|s| {
                    let (l, r) = (straightening::classical_dim(s, m), straightening::classical_dim(&s.conjugate(), n));
                    vec![s.to_string(), l.to_string(), r.to_string(), (l * r).to_string()]
                })
                .collect();
            let data = json!(rows
                .iter()
                .map(|r| json!({"shape": r[0], "dim_left": r[1], "dim_right": r[2], "product": r[3]}))
                .collect::<Vec<_>>());
            let mut run = Run::new("dims", params(&[("m", m.into()), ("n", n.into()), ("k", k.into())]), report);
            run.data = Some(data);
            run.csv_rows = Some((vec!["shape", "dim_left", "dim_right", "product"], rows));
            run
        }
    };
    Ok(render(config.format, run))
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Wedge => "wedge",
        Kind::Sym => "sym",
    }
}

fn crystal_graph(format: Format, m: usize, n: usize, k: usize, kind: Kind) -> Result<Outcome, CliError> {
    let graph = match kind {
        Kind::Wedge => CrystalGraph::wedge(m, n, k).map_err(|e| usage(e.to_string()))?,
        Kind::Sym => CrystalGraph::sym(m, n, k),
    };
    let body = match format {
        Format::Dot => graph.to_dot(),
        Format::Json => serde_json::to_string_pretty(&graph).expect("serializable") + "\n",
        _ => return Err(usage("crystal graphs render as --format dot or json")),
    };
    Ok(Outcome { body, exit: 0 })
}

fn psi_report(factory: &mut PsiFactory, a: usize, b: usize, variant: Variant) -> Result<CheckReport, hw_maps::HwError> {
    let map = factory.psi_ab(a, b)?;
    let mut report = straightening::two_col_report(factory, a, b)?;
    report.extend_prefixed(&format!("psi{a}{b}"), map.check_equivariance());
    report.record(format!("psi{a}{b}:rank-specialization"), straightening::check_rank_specializations(&map));
    report.record(format!("psi{a}{b}:q1-gl-equivariant"), hw_maps::check_q1_gl_equivariance(&map));
    if variant == Variant::Special22 {
        let maps = hw_maps::special_maps_2x2()?;
        report.record("special:commuting-square-exact", hw_maps::commuting_square(&maps));
        report.record(
            "special:commuting-square-projective",
            hw_maps::commuting_square_ratio(&maps).map(|_| ()).ok_or_else(|| "composites not proportional".into()),
        );
        report.record("special:extra-terms-vanish-at-1", hw_maps::special_extra_terms_vanish_at_1(&maps));
    }
    Ok(report)
}

fn parse_tuples(list: &str) -> Result<Vec<(usize, usize, usize)>, CliError> {
    if list == "all" {
        return Ok(straightening::standard_tuples());
    }
    list.split(',')
        .map(|t| {
            let d: Vec<usize> = t.trim().chars().filter_map(|c| c.to_digit(10).map(|x| x as usize)).collect();
            match d[..] {
                [a, b, c] if a >= b && b >= c && c >= 1 && t.trim().len() == 3 => Ok((a, b, c)),
                _ => Err(usage(format!("bad tuple `{t}`: want three digits a ≥ b ≥ c ≥ 1"))),
            }
        })
        .collect()
}

fn threecol(
    m: usize,
    n: usize,
    tuples: &[(usize, usize, usize)],
    variant: VariantArg,
    full_up_to: usize,
) -> Result<Run, CliError> {
    let mut factory = PsiFactory::new(m, n, variant.into()).map_err(|e| usage(e.to_string()))?;
    for &(a, _, _) in tuples {
        if a + 1 > m * n {
            return Err(usage(format!("column length {a} needs a + 1 ≤ m*n")));
        }
    }
    let mut report = CheckReport::new();
    let mut data = Vec::new();
    let mut rows = Vec::new();
    for &(a, b, c) in tuples {
        let tc = ThreeColumn::new(&mut factory, a, b, c).map_err(|e| usage(e.to_string()))?;
        let mut reps: Vec<QuotientReport> =
            straightening::central_weights(a + b + c, m, n).iter().map(|w| tc.quotient_at(w)).collect();
        if a + b + c <= full_up_to {
            reps.push(tc.quotient_full());
        }
        for r in &reps {
            let outcome = if r.pass { Ok(()) } else { Err(format!("quotient {} vs oracle {}", r.quotient, r.oracle)) };
            report.record(format!("threecol:{}", r.id()), outcome);
            data.push(serde_json::to_value(r).expect("serializable"));
        }
        let head = &reps[0];
        rows.push(vec![
            format!("{a}{b}{c}"),
            head.weight.clone().unwrap_or_default(),
            head.ambient.to_string(),
            head.rank.to_string(),
            head.quotient.to_string(),
            head.oracle.to_string(),
            reps.len().to_string(),
            if reps.iter().all(|r| r.pass) { "pass" } else { "fail" }.to_string(),
        ]);
    }
    let tuple_names: Vec<String> = tuples.iter().map(|(a, b, c)| format!("{a}{b}{c}")).collect();
    let vname = format!("{variant:?}").to_lowercase();
    let mut run = Run::new(
        "threecol",
        params(&[
            ("m", m.into()),
            ("n", n.into()),
            ("tuples", tuple_names.into()),
            ("variant", vname.into()),
            ("full_up_to", full_up_to.into()),
        ]),
        report,
    );
    run.data = Some(Value::Array(data));
    run.csv_rows =
        Some((vec!["tuple", "weight", "ambient", "rank", "quotient", "oracle", "reports", "status"], rows));
    Ok(run)
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

fn render(format: Format, run: Run) -> Outcome {
    let exit = if run.report.all_pass() { 0 } else { 1 };
    let body = match format {
        Format::Json => {
            let mut doc = json!({
                "suite": run.suite,
                "version": env!("CARGO_PKG_VERSION"),
                "params": run.params,
                "checks": run.report.checks,
                "summary": {"pass": run.report.passed(), "fail": run.report.failed()},
            });
            if let Some(data) = run.data {
                doc["data"] = data;
            }
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match run.csv_rows {
                Some((header, rows)) => {
                    w.write_record(&header).expect("in-memory write");
                    for r in rows {
                        w.write_record(&r).expect("in-memory write");
                    }
                }
                None => {
                    w.write_record(["id", "status", "witness"]).expect("in-memory write");
                    for c in &run.report.checks {
                        w.write_record([c.id.as_str(), status_str(c.status), c.witness.as_deref().unwrap_or("")])
                            .expect("in-memory write");
                    }
                }
            }
            String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
        }
        Format::Text | Format::Dot => {
            let mut s = String::new();
            for c in &run.report.checks {
                match &c.witness {
                    Some(wit) => s.push_str(&format!("{} {}: {wit}\n", status_str(c.status).to_uppercase(), c.id)),
                    None => s.push_str(&format!("{} {}\n", status_str(c.status).to_uppercase(), c.id)),
                }
            }
            s.push_str(&format!("{}: {} pass, {} fail\n", run.suite, run.report.passed(), run.report.failed()));
            s
        }
    };
    Outcome { body, exit }
}

/// Parse `args` (including the program name), run, and return output and exit code.
pub fn run_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (if code == 0 { e.to_string() } else { String::new() }, if code == 0 { String::new() } else { e.to_string() }, code);
        }
    };
    match run(&config) {
        Ok(out) => match &config.output {
            Some(path) => match std::fs::write(path, &out.body) {
                Ok(()) => (String::new(), String::new(), out.exit),
                Err(e) => (String::new(), format!("{}\n", CliError::Io(e)), 1),
            },
            None => (out.body, String::new(), out.exit),
        },
        Err(e) => (String::new(), format!("{e}\n"), e.exit_code()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (String, String, i32) {
        run_args(std::iter::once("uqmn").chain(args.iter().copied()))
    }

    #[test]
    fn verify_small_passes() {
        let (out, _, code) = go(&["verify", "--m", "2", "--n", "2", "--p", "2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["suite"], "verify");
        assert_eq!(v["summary"]["fail"], 0);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(go(&["verify", "--m", "0", "--n", "2", "--p", "1"]).2, 2);
        assert_eq!(go(&["verify", "--m", "2"]).2, 2);
        assert_eq!(go(&["threecol", "--m", "2", "--n", "2", "--tuples", "123"]).2, 2);
        assert_eq!(go(&["sym", "--m", "2", "--n", "2", "--k", "1", "--format", "dot"]).2, 2);
    }

    #[test]
    fn crystal_graph_outputs() {
        let (dot, _, code) = go(&["crystal", "--m", "2", "--n", "2", "--k", "2", "--format", "dot"]);
        assert_eq!(code, 0);
        assert_eq!(dot.matches("[label=\"{").count(), 6);
        assert!(dot.contains("{2,3} (-)"));
        let (js, _, _) = go(&["crystal", "--m", "2", "--n", "2", "--k", "0", "--graph", "--format", "json"]);
        let v: Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 1);
        assert!(v["edges"].as_array().unwrap().is_empty());
    }

    #[test]
    fn threecol_csv_has_a_row_per_tuple() {
        let (csv, _, code) = go(&["threecol", "--m", "2", "--n", "2", "--tuples", "111,211,311", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",pass")));
    }

    #[test]
    fn psi_dump_and_q0() {
        let (js, _, code) = go(&["psi", "--m", "2", "--n", "2", "--a", "1", "--b", "1", "--dump", "--q0", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&js).unwrap();
        assert!(v["blocks"]["L:(1,1)|R:(1,1)"]["entries"].is_array());
    }
}
