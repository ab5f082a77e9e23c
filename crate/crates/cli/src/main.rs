//! Command-line front end: construction, verification, structure
//! constant export, the example suites, the partition search, and the
//! isomorphism search.
//!
//! Exit codes: 0 success / all checks pass, 1 verified mathematical
//! failure, 2 usage error.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gla_core::explore::{find_graded_isomorphism, run_partition_search, ExploreError, IsoOutcome};
use gla_core::families::{build, dims_formula, AlgebraSpec, FamilyError};
use gla_core::graded::{check_closure, check_jacobi, generate, structure_constants, Degree};
use gla_core::matrix::parse_matrix_blocks;
use gla_core::report::{Report, Status};
use gla_core::{Algebra, FieldElem, Mat};

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "gla",
    version,
    about = "Exact Z2xZ2-graded matrix Lie algebras: build, verify, export, search"
)]
struct Cli {
    /// Cap the number of parallel workers (or set GLA_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the basis of a family: labels, degrees, matrices.
    Build {
        /// Family spec, e.g. "zz-sl:1,1,1,0", "zz-so-odd:2,1", "sl:2".
        spec: String,
    },
    /// Print the closed-form per-degree dimensions of a family.
    Dims {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Build a family and run checks against it.
    Verify {
        spec: String,
        /// Comma-separated subset of dims,closure,jacobi,generation, or "all".
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        json: bool,
    },
    /// Export the structure constants of a family.
    #[command(name = "structure-constants")]
    StructureConstants {
        spec: String,
        /// "table" (human-readable) or "json" (interchange document).
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Run one of the example suites.
    Examples {
        #[command(subcommand)]
        suite: ExampleSuite,
    },
    /// Color a generator file in all ways, close, and classify.
    Search {
        /// Ambient classical family, e.g. "sl:2" or "so-odd:2".
        ambient: String,
        /// File of generator matrices in the text format, blank-line separated.
        generators_file: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for a degree-preserving signed-permutation isomorphism.
    Iso {
        spec_a: String,
        spec_b: String,
        /// Maximum number of candidate maps to test.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum ExampleSuite {
    /// The Gell-Mann anticommutator table and grading checks.
    GellMann {
        #[arg(long)]
        json: bool,
    },
    /// Two-sort parafermion triple relations at (n, p).
    Parafermion {
        n: usize,
        p: usize,
        #[arg(long)]
        json: bool,
    },
    /// A-statistics triple relations at (n, q).
    AStat {
        n: usize,
        q: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe (e.g. `gla build ... | head`)
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let jobs = cli
        .jobs
        .or_else(|| std::env::var("GLA_JOBS").ok().and_then(|s| s.parse().ok()));
    if let Some(j) = jobs {
        // silently keep the default pool if it was already initialized
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    ExitCode::from(run(cli.command))
}

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn parse_spec(text: &str) -> Result<AlgebraSpec, u8> {
    text.parse::<AlgebraSpec>().map_err(|e| usage_error(e))
}

fn build_family(spec: &AlgebraSpec) -> Result<Algebra, u8> {
    match build::<FieldElem>(spec) {
        Ok((basis, _)) => Ok(basis),
        Err(e) => Err(usage_error(e)),
    }
}

fn run(command: Command) -> u8 {
    match command {
        Command::Build { spec } => cmd_build(&spec),
        Command::Dims { spec, json } => cmd_dims(&spec, json),
        Command::Verify { spec, checks, json } => cmd_verify(&spec, &checks, json),
        Command::StructureConstants { spec, format } => cmd_structure_constants(&spec, &format),
        Command::Examples { suite } => cmd_examples(suite),
        Command::Search { ambient, generators_file, json } => {
            cmd_search(&ambient, &generators_file, json)
        }
        Command::Iso { spec_a, spec_b, budget } => cmd_iso(&spec_a, &spec_b, budget),
    }
}

fn cmd_build(spec_text: &str) -> u8 {
    let spec = match parse_spec(spec_text) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let basis = match build_family(&spec) {
        Ok(b) => b,
        Err(code) => return code,
    };
    println!(
        "# {spec}: {} basis elements, ambient {n}x{n}",
        basis.len(),
        n = basis.dim_ambient()
    );
    for (el, label) in basis.elements().iter().zip(basis.labels()) {
        println!("\n{label} @ {}", el.degree);
        println!("{}", el.matrix);
    }
    EXIT_OK
}

fn cmd_dims(spec_text: &str, json: bool) -> u8 {
    let spec = match parse_spec(spec_text) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let dims = match dims_formula(&spec) {
        Ok(d) => d,
        Err(e) => return usage_error(e),
    };
    let total: usize = dims.values().sum();
    if json {
        let entries: Vec<serde_json::Value> = Degree::ALL
            .iter()
            .map(|d| {
                serde_json::json!({ "degree": [d.a1(), d.a2()], "dim": dims[d] })
            })
            .collect();
        let doc = serde_json::json!({ "spec": spec.to_string(), "dims": entries, "total": total });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("# {spec}: per-degree dimensions");
        for d in Degree::ALL {
            println!("{d}: {}", dims[&d]);
        }
        println!("total: {total}");
    }
    EXIT_OK
}

fn dims_report(basis: &Algebra, spec: &AlgebraSpec) -> Report {
    let mut report = Report::new("dims");
    let formula = dims_formula(spec).expect("spec was validated");
    let built = basis.signature();
    let expected = Degree::ALL.map(|d| formula[&d]);
    if built == expected {
        report.pass("dims", format!("built=({},{},{},{})", built[0], built[1], built[2], built[3]));
    } else {
        report.fail(
            "dims",
            format!(
                "built=({},{},{},{}),formula=({},{},{},{})",
                built[0], built[1], built[2], built[3], expected[0], expected[1], expected[2],
                expected[3]
            ),
            None,
        );
    }
    report
}

fn generation_report(basis: &Algebra) -> Report {
    let mut report = Report::new("generation");
    let g10 = basis.component_matrices(Degree::D10);
    let g01 = basis.component_matrices(Degree::D01);
    if g10.is_empty() || g01.is_empty() {
        report.skip("generation", "empty (0,1) or (1,0) component");
        return report;
    }
    match generate(&g10, &g01) {
        Ok(gen) => {
            let mut equal = true;
            for d in Degree::ALL {
                if !gen.basis.span_of_degree(d).equal(&basis.span_of_degree(d)).unwrap() {
                    report.fail(
                        "generation",
                        format!("degree={d}"),
                        Some("generated span differs from the family".into()),
                    );
                    equal = false;
                }
            }
            if gen.rounds > 1 {
                report.fail("generation", format!("rounds={}", gen.rounds), None);
            } else if equal {
                report.pass("generation", format!("rounds={}", gen.rounds));
            }
        }
        Err(e) => report.fail("generation", "", Some(e.to_string())),
    }
    report
}

fn cmd_verify(spec_text: &str, checks: &str, json: bool) -> u8 {
    let spec = match parse_spec(spec_text) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let selected: Vec<&str> = if checks == "all" {
        vec!["dims", "closure", "jacobi", "generation"]
    } else {
        let parts: Vec<&str> = checks.split(',').map(str::trim).collect();
        for part in &parts {
            if !matches!(*part, "dims" | "closure" | "jacobi" | "generation") {
                return usage_error(format!("unknown check '{part}'"));
            }
        }
        parts
    };
    let basis = match build_family(&spec) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let reports: Vec<Report> = selected
        .iter()
        .map(|check| match *check {
            "dims" => dims_report(&basis, &spec),
            "closure" => check_closure(&basis),
            "jacobi" => check_jacobi(&basis),
            _ => generation_report(&basis),
        })
        .collect();
    let passed = reports.iter().all(|r| r.passed);
    if json {
        let doc = serde_json::json!({
            "spec": spec.to_string(),
            "reports": reports,
            "passed": passed,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("# verify {spec}");
        for report in &reports {
            print_report_summary(report);
        }
        println!("result: {}", if passed { "PASS" } else { "FAIL" });
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn print_report_summary(report: &Report) {
    let pass = report.count(Status::Pass);
    let fail = report.count(Status::Fail);
    let skipped = report.count(Status::Skipped);
    let mut line = format!(
        "{:<12} {}",
        report.title,
        if report.passed { "PASS" } else { "FAIL" }
    );
    let _ = write!(line, " ({pass} pass");
    if fail > 0 {
        let _ = write!(line, ", {fail} fail");
    }
    if skipped > 0 {
        let _ = write!(line, ", {skipped} skipped");
    }
    line.push(')');
    println!("{line}");
    for note in &report.notes {
        println!("  note: {note}");
    }
    for item in report.items.iter().filter(|i| i.status == Status::Fail) {
        println!("  FAIL {} [{}]", item.id, item.indices);
        if let Some(residual) = &item.residual {
            for l in residual.lines() {
                println!("    {l}");
            }
        }
    }
}

fn cmd_structure_constants(spec_text: &str, format: &str) -> u8 {
    if !matches!(format, "table" | "json") {
        return usage_error(format!("unknown format '{format}'"));
    }
    let spec = match parse_spec(spec_text) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let basis = match build_family(&spec) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let sc = match structure_constants(&basis) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK_FAILED;
        }
    };
    if format == "json" {
        let doc = sc.to_doc(&basis);
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!(
            "# structure constants of {spec}: {} basis elements, {} nonzero brackets",
            basis.len(),
            sc.entries.len()
        );
        for ((i, j), terms) in &sc.entries {
            let rhs: Vec<String> = terms
                .iter()
                .map(|(k, c)| format!("({})*{}", c, sc.basis_labels[*k]))
                .collect();
            println!(
                "[[{}, {}]] = {}",
                sc.basis_labels[*i],
                sc.basis_labels[*j],
                rhs.join(" + ")
            );
        }
    }
    EXIT_OK
}

fn cmd_examples(suite: ExampleSuite) -> u8 {
    let (report, json) = match suite {
        ExampleSuite::GellMann { json } => (Ok(gla_core::relations::check_gell_mann_table()), json),
        ExampleSuite::Parafermion { n, p, json } => {
            (gla_core::relations::check_parafermion(n, p), json)
        }
        ExampleSuite::AStat { n, q, json } => (gla_core::relations::check_a_statistics(n, q), json),
    };
    let report = match report {
        Ok(r) => r,
        Err(FamilyError::InvalidSpec(msg)) => return usage_error(msg),
        Err(e) => return usage_error(e),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("# {}", report.title);
        print_report_summary(&report);
        println!("result: {}", if report.passed { "PASS" } else { "FAIL" });
    }
    if report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_search(ambient_text: &str, generators_file: &str, json: bool) -> u8 {
    let ambient = match parse_spec(ambient_text) {
        Ok(s) => s,
        Err(code) => return code,
    };
    if !ambient.is_classical() {
        return usage_error(format!("ambient must be a classical family, got '{ambient}'"));
    }
    let text = match std::fs::read_to_string(generators_file) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("cannot read '{generators_file}': {e}")),
    };
    let generators: Vec<Mat> = match parse_matrix_blocks(&text) {
        Ok(g) => g,
        Err(e) => return usage_error(e),
    };
    let results = match run_partition_search(&ambient, &generators) {
        Ok(r) => r,
        Err(err @ ExploreError::InvalidGenerators(_)) => return usage_error(err),
        Err(e) => return usage_error(e),
    };
    if json {
        let doc = serde_json::json!({
            "ambient": ambient.to_string(),
            "generators": generators.len(),
            "results": results,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!(
            "# search in {ambient}: {} generators, {} colorings up to swap",
            generators.len(),
            results.len()
        );
        for r in &results {
            println!(
                "coloring={} signature=({},{},{},{}) valid={} contained={} matched={}",
                r.coloring,
                r.signature[0],
                r.signature[1],
                r.signature[2],
                r.signature[3],
                r.valid,
                r.contained_in_ambient,
                r.matched_family.map_or("-".to_owned(), |s| s.to_string()),
            );
        }
    }
    EXIT_OK
}

fn cmd_iso(spec_a_text: &str, spec_b_text: &str, budget: u64) -> u8 {
    let spec_a = match parse_spec(spec_a_text) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let spec_b = match parse_spec(spec_b_text) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let a = match build_family(&spec_a) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let b = match build_family(&spec_b) {
        Ok(b) => b,
        Err(code) => return code,
    };
    match find_graded_isomorphism(&a, &b, budget) {
        Ok(IsoOutcome::Witness(map)) => {
            println!("# witness: degree-preserving signed permutation {spec_a} -> {spec_b}");
            for (i, (&t, &neg)) in map.target.iter().zip(&map.negate).enumerate() {
                println!(
                    "{} @ {} -> {}{}",
                    a.labels()[i],
                    a.elements()[i].degree,
                    if neg { "-" } else { "+" },
                    b.labels()[t]
                );
            }
            EXIT_OK
        }
        Ok(IsoOutcome::NotFoundWithinBudget { tested, exhausted }) => {
            println!(
                "# no witness in the signed-permutation class: tested {tested} candidates{}",
                if exhausted { " (class exhausted)" } else { " (budget reached)" }
            );
            EXIT_CHECK_FAILED
        }
        Err(err @ ExploreError::NotIsomorphicSignature(_, _)) => {
            println!("# {err}");
            EXIT_CHECK_FAILED
        }
        Err(e) => usage_error(e),
    }
}
