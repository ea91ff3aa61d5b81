mod input;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use semigroup_forge::classify::{diff_catalog, enumerate_value_semigroups, Catalog, MAX_GENUS};
use semigroup_forge::condcount::{ledger_for_case, node_ledger};
use semigroup_forge::gapseries::cases::{run_case, CASE_IDS};
use semigroup_forge::ramif::check_unibranch_bound;
use semigroup_forge::sgptree::{enumerate, weight_outliers, GENUS_CAP};
use semigroup_forge::valsgp::{minimal_generators, saturated_chain};
use semigroup_forge::NumericalSemigroup;

use crate::suites::Check;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser)]
#[command(name = "semigroup-forge", version, about = "Numerical and value semigroups of curve singularities")]
struct Cli {
    /// Seed for every randomized check (SEMIGROUP_FORGE_SEED overrides it).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical semigroups.
    #[command(subcommand)]
    Numsgp(NumsgpCmd),
    /// Value semigroups with several branches.
    #[command(subcommand)]
    Valsgp(ValsgpCmd),
    /// Ramification bounds.
    #[command(subcommand)]
    Ramif(RamifCmd),
    /// Coefficient conditions forced by gaps.
    #[command(subcommand)]
    Gapcond(GapcondCmd),
    /// Condition ledgers.
    #[command(subcommand)]
    Conditions(ConditionsCmd),
    /// Verification suites; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Summary of every suite.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum NumsgpCmd {
    /// One JSON line per semigroup.
    List {
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long, default_value_t = 6)]
        max_genus: u32,
        /// Only nonhyperelliptic semigroups with weight at least 2g.
        #[arg(long)]
        outliers: bool,
    },
    Show {
        #[arg(long, conflicts_with = "gaps")]
        gens: Option<String>,
        #[arg(long)]
        gaps: Option<String>,
        /// Draw the Dyck path.
        #[arg(long)]
        dyck: bool,
        /// Draw it as SVG instead of ASCII.
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct TruncationInput {
    /// Elements such as `(1,1),(2,2)`; the origin is added if missing.
    #[arg(long)]
    elements: Option<String>,
    /// JSON file `{"r":..,"conductor":..,"elements":..}`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ValsgpCmd {
    /// One JSON line per class, in canonical form.
    Enumerate {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        branches: usize,
        /// Compare with the built-in catalog instead; exit 1 on differences.
        #[arg(long)]
        diff_catalog: bool,
    },
    /// Axioms, genus, modulus and a saturated chain.
    Check(TruncationInput),
    /// A minimal generating set.
    Generators(TruncationInput),
}

#[derive(Subcommand)]
enum RamifCmd {
    /// Check `r_P − 1 ≥ (n−2)g` for every low-weight semigroup and `3 ≤ n ≤ 2g`.
    Sweep {
        #[arg(long, default_value_t = 8)]
        max_genus: u32,
    },
}

#[derive(Subcommand)]
enum GapcondCmd {
    Run {
        /// One of the built-in cases, or `all`.
        #[arg(long)]
        case: String,
    },
}

#[derive(Subcommand)]
enum ConditionsCmd {
    Ledger {
        /// 1 to 7, `node`, or `all`.
        #[arg(long, default_value = "all")]
        case: String,
        /// Ambient dimension; all of 3..=12 if omitted.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Ledgers, heuristics and exact rank checks.
    Verify {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Thm1,
    Thm2,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest genus for the unibranch suite.
    #[arg(long, default_value_t = 8)]
    max_genus: u32,
    /// Largest genus for the classification.
    #[arg(long, default_value_t = MAX_GENUS)]
    classify_genus: u32,
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 8)]
    max_genus: u32,
    #[arg(long, default_value_t = MAX_GENUS)]
    classify_genus: u32,
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

/// Buffered stdout.
struct Out(Vec<u8>);

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.0.extend_from_slice(s.as_ref().as_bytes());
        self.0.push(b'\n');
    }

    fn json<T: Serialize>(&mut self, v: &T) {
        self.line(serde_json::to_string(v).expect("serializable"));
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn numerical(gens: Option<&str>, gaps: Option<&str>) -> Result<NumericalSemigroup, CliError> {
    let s = match (gens, gaps) {
        (Some(g), None) => NumericalSemigroup::from_generators(&input::parse_list(g)?),
        (None, Some(g)) => NumericalSemigroup::from_gaps(&input::parse_list(g)?),
        _ => return Err(usage("give exactly one of --gens or --gaps")),
    };
    s.map_err(|e| usage(e.to_string()))
}

fn tree_genus(g: u32) -> Result<(), CliError> {
    if g > GENUS_CAP {
        return Err(usage(format!("genus {g} exceeds the enumeration cap {GENUS_CAP}")));
    }
    Ok(())
}

fn run_numsgp(cmd: NumsgpCmd, out: &mut Out) -> Result<(), CliError> {
    match cmd {
        NumsgpCmd::List {
            genus,
            max_genus,
            outliers,
        } => {
            let (lo, hi) = genus.map_or((0, max_genus), |g| (g, g));
            tree_genus(hi)?;
            if outliers {
                for g in lo.max(1)..=hi {
                    for s in weight_outliers(g).map_err(|e| usage(e.to_string()))? {
                        out.json(&s);
                    }
                }
            } else {
                let tree = enumerate(hi).map_err(|e| usage(e.to_string()))?;
                for g in lo..=hi {
                    for s in tree.of_genus(g) {
                        out.json(s);
                    }
                }
            }
        }
        NumsgpCmd::Show {
            gens,
            gaps,
            dyck,
            svg,
            json,
        } => {
            let s = numerical(gens.as_deref(), gaps.as_deref())?;
            if json {
                out.json(&s);
            } else {
                out.line(format!("semigroup:    {s}"));
                out.line(format!("gaps:         {:?}", s.gaps()));
                out.line(format!("genus:        {}", s.genus()));
                out.line(format!("conductor:    {}", s.conductor()));
                out.line(format!("multiplicity: {}", s.multiplicity()));
                out.line(format!("weight:       {}", s.weight()));
                out.line(format!("hyperelliptic: {}", s.is_hyperelliptic()));
            }
            if dyck || svg {
                let d = s.dyck();
                if svg {
                    out.line(d.to_svg(20));
                } else {
                    out.line(format!("Dyck path on a {g}x{g} grid, {} boxes:", d.box_count(), g = s.genus()));
                    out.line(d.to_ascii().trim_end());
                }
            }
        }
    }
    Ok(())
}

fn run_valsgp(cmd: ValsgpCmd, out: &mut Out) -> Result<(), CliError> {
    match cmd {
        ValsgpCmd::Enumerate {
            genus,
            branches,
            diff_catalog: diff,
        } => {
            let found = enumerate_value_semigroups(genus, branches).map_err(|e| usage(e.to_string()))?;
            if diff {
                let expected = Catalog::builtin()
                    .truncations(genus, branches)
                    .map_err(|e| CliError::Failed(e.to_string()))?;
                let report = diff_catalog(&found, &expected);
                let show = |v: &[semigroup_forge::valsgp::ValueTruncation]| {
                    v.iter().map(ToString::to_string).collect::<Vec<_>>()
                };
                out.json(&json!({
                    "genus": genus,
                    "branches": branches,
                    "matched": report.matched.len(),
                    "missing": show(&report.missing),
                    "extra": show(&report.extra),
                }));
                if !report.is_empty() {
                    return Err(CliError::Failed(format!(
                        "{} missing, {} extra against the catalog",
                        report.missing.len(),
                        report.extra.len()
                    )));
                }
            } else {
                for t in &found {
                    out.json(&json!({
                        "genus": genus,
                        "r": t.r(),
                        "conductor": t.conductor(),
                        "elements": t.elements(),
                        "modulus": t.modulus().minimal_generators(),
                        "mt": t.is_mt(),
                    }));
                }
            }
        }
        ValsgpCmd::Check(inp) => {
            let t = input::read_truncation(inp.elements.as_deref(), inp.file.as_deref())?;
            let report = t.validate();
            let valid = report.passed();
            let mut v = json!({
                "truncation": t.to_string(),
                "valid": valid,
                "checks": report.checks,
            });
            if valid {
                v["genus"] = json!(t.genus());
                v["modulus"] = json!(t.modulus().minimal_generators());
                v["branch_genera"] = json!(t.branch_genera());
                v["mt"] = json!(t.is_mt());
                v["chain"] = json!(saturated_chain(&t));
                v["canonical"] = json!(t.canonical_form().to_string());
            }
            out.json(&v);
            if !valid {
                return Err(CliError::Failed(format!("{t} violates the axioms")));
            }
        }
        ValsgpCmd::Generators(inp) => {
            let t = input::read_truncation(inp.elements.as_deref(), inp.file.as_deref())?;
            let gens = minimal_generators(&t).map_err(|e| CliError::Failed(e.to_string()))?;
            out.json(&json!({
                "truncation": t.to_string(),
                "m": gens.len(),
                "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }));
        }
    }
    Ok(())
}

fn run_ramif(cmd: RamifCmd, out: &mut Out) -> Result<(), CliError> {
    let RamifCmd::Sweep { max_genus } = cmd;
    tree_genus(max_genus)?;
    let tree = enumerate(max_genus).map_err(|e| usage(e.to_string()))?;
    let mut total = 0;
    for g in 1..=max_genus {
        let mut low = 0;
        let mut pairs = 0;
        let mut violations = Vec::new();
        for s in tree.of_genus(g) {
            if s.weight() > u64::from(2 * g - 1) {
                continue;
            }
            low += 1;
            for n in 3..=2 * g {
                pairs += 1;
                if !check_unibranch_bound(s, n) {
                    violations.push(json!({"semigroup": s.to_string(), "n": n}));
                }
            }
        }
        total += violations.len();
        out.json(&json!({
            "genus": g,
            "semigroups": tree.of_genus(g).count(),
            "low_weight": low,
            "pairs": pairs,
            "violations": violations,
        }));
    }
    if total > 0 {
        return Err(CliError::Failed(format!("{total} violations of the unibranch bound")));
    }
    Ok(())
}

fn run_gapcond(cmd: GapcondCmd, seed: u64, out: &mut Out) -> Result<(), CliError> {
    let GapcondCmd::Run { case } = cmd;
    let ids: Vec<&str> = if case == "all" {
        CASE_IDS.to_vec()
    } else if CASE_IDS.contains(&case.as_str()) {
        vec![case.as_str()]
    } else {
        return Err(usage(format!("unknown case {case:?}; known: {}, all", CASE_IDS.join(", "))));
    };
    let mut failed = Vec::new();
    for id in ids {
        let r = run_case(id, seed).map_err(|e| CliError::Failed(e.to_string()))?;
        if !(r.all_match() && r.certificate.independent) {
            failed.push(id);
        }
        out.json(&r.to_json());
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("cases not reproduced: {}", failed.join(", "))))
    }
}

fn run_conditions(cmd: ConditionsCmd, seed: u64, out: &mut Out) -> Result<(), CliError> {
    match cmd {
        ConditionsCmd::Ledger { case, n } => {
            let ns: Vec<u32> = n.map_or_else(|| (3..=12).collect(), |n| vec![n]);
            let cases: Vec<String> = if case == "all" {
                (1..=7).map(|k| k.to_string()).chain(["node".to_string()]).collect()
            } else {
                vec![case]
            };
            for c in &cases {
                for &n in &ns {
                    let ledger = if c == "node" {
                        if n < 3 {
                            return Err(usage(format!("ambient dimension must be at least 3, got {n}")));
                        }
                        node_ledger(n)
                    } else {
                        let k: u32 = c.parse().map_err(|_| usage(format!("unknown case {c:?}")))?;
                        ledger_for_case(k, n).map_err(|e| usage(e.to_string()))?
                    };
                    let mut v = serde_json::to_value(&ledger).expect("serializable");
                    v["certified_net"] = json!(ledger.certified_net());
                    out.json(&v);
                }
            }
        }
        ConditionsCmd::Verify { samples } => {
            let checks: Vec<Check> = suites::thm2(0, samples, seed)
                .into_iter()
                .filter(|c| !c.name.starts_with("catalog") && !c.name.starts_with("minimal"))
                .collect();
            return emit_checks(&checks, out);
        }
    }
    Ok(())
}

fn emit_checks(checks: &[Check], out: &mut Out) -> Result<(), CliError> {
    for c in checks {
        out.json(c);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    out.json(&json!({"checks": checks.len(), "failed": failed}));
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} of {} checks failed", failed.len(), checks.len())))
    }
}

fn bounds(max_genus: u32, classify_genus: u32) -> Result<(), CliError> {
    tree_genus(max_genus)?;
    if classify_genus > MAX_GENUS {
        return Err(usage(format!("classification is supported up to genus {MAX_GENUS}")));
    }
    Ok(())
}

fn run_suites(suite: Suite, max_genus: u32, classify_genus: u32, samples: usize, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Thm1 | Suite::All) {
        checks.extend(suites::thm1(max_genus, seed));
    }
    if matches!(suite, Suite::Thm2 | Suite::All) {
        checks.extend(suites::thm2(classify_genus, samples, seed));
    }
    checks
}

fn markdown(checks: &[Check], seed: u64) -> String {
    let mut s = String::from("# semigroup-forge report\n\n");
    s.push_str(&format!("Seed: {seed}\n\n"));
    let passed = checks.iter().filter(|c| c.passed).count();
    s.push_str(&format!("{passed} of {} checks passed.\n\n", checks.len()));
    s.push_str("| suite | check | result |\n|---|---|---|\n");
    for c in checks {
        s.push_str(&format!("| {} | {} | {} |\n", c.suite, c.name, if c.passed { "pass" } else { "FAIL" }));
    }
    let failures: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    if !failures.is_empty() {
        s.push_str("\n## Failures\n");
        for c in failures {
            s.push_str(&format!("\n### {}\n\n```json\n{}\n```\n", c.name, serde_json::to_string_pretty(&c.detail).expect("json")));
        }
    }
    s
}

fn run(cli: Cli, out: &mut Out) -> Result<(), CliError> {
    let seed = input::resolve_seed(cli.seed)?;
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        // Only fails if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match cli.command {
        Command::Numsgp(c) => run_numsgp(c, out),
        Command::Valsgp(c) => run_valsgp(c, out),
        Command::Ramif(c) => run_ramif(c, out),
        Command::Gapcond(c) => run_gapcond(c, seed, out),
        Command::Conditions(c) => run_conditions(c, seed, out),
        Command::Verify(a) => {
            bounds(a.max_genus, a.classify_genus)?;
            emit_checks(&run_suites(a.suite, a.max_genus, a.classify_genus, a.samples, seed), out)
        }
        Command::Report(a) => {
            bounds(a.max_genus, a.classify_genus)?;
            let checks = run_suites(Suite::All, a.max_genus, a.classify_genus, a.samples, seed);
            match a.format {
                Format::Json => {
                    let v: Value = json!({
                        "seed": seed,
                        "passed": checks.iter().filter(|c| c.passed).count(),
                        "total": checks.len(),
                        "checks": checks,
                    });
                    out.line(serde_json::to_string_pretty(&v).expect("json"));
                }
                Format::Md => out.line(markdown(&checks, seed).trim_end()),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out(Vec::new());
    let result = run(cli, &mut out);
    let flushed = std::io::stdout().lock().write_all(&out.0);
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("error: {e}");
            eprintln!("run with --help for usage");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
