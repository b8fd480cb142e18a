use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use toric_gale::characteristic::{compute_report, convert_convention, InvariantReport};
use toric_gale::error::{Error, Result};
use toric_gale::fixtures;
use toric_gale::gale::{a_from_gale_dual, gale_dual_from_a, GaleSystem};
use toric_gale::matrix::IntegerMatrix;
use toric_gale::oracle::{benchmark, full_pipeline_a, BenchRecord};
use toric_gale::parse::{parse_matrix, render_matrix};
use toric_gale::report;

/// Exact invariants of codimension-two projective toric varieties from the
/// Gale dual matrix B: face lattice, Euler obstructions, Chern-Mather
/// volumes, polar degrees, dual degree and ED degree.
#[derive(Parser)]
#[command(name = "toric-gale", version)]
struct Cli {
    /// Worker threads for the parallel parts (default: all cores)
    #[arg(long, global = true, env = "TORIC_GALE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Role {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Main,
    Alternate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the Gale dual B of A, or reconstruct A from B
    Gale {
        /// Matrix file, or the name of a bundled fixture
        input: String,
        /// Role of the input matrix
        #[arg(long, value_enum, default_value = "a")]
        from: Role,
    },
    /// Full invariant report (faces, Eu, V, polar degrees, ED degree)
    Invariants {
        /// Matrix file, or the name of a bundled fixture
        input: String,
        /// Role of the input matrix
        #[arg(long, value_enum, default_value = "a")]
        from: Role,
        /// Index convention for the per-face table
        #[arg(long, value_enum, default_value = "main")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Cross-validate the Gale dual pipeline against the A-matrix method
    Check {
        /// Matrix file, or the name of a bundled fixture
        input: String,
        /// Role of the input matrix
        #[arg(long, value_enum, default_value = "a")]
        from: Role,
    },
    /// Time both methods on bundled fixtures
    Bench {
        /// Comma-separated fixture names
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "a1,a2,a3,a4,a5,a6"
        )]
        fixtures: Vec<String>,
        /// Repetitions to average over
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn read_input(input: &str) -> Result<IntegerMatrix> {
    if std::path::Path::new(input).exists() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| Error::validation(format!("cannot read '{input}': {e}")))?;
        return parse_matrix(&text);
    }
    if fixtures::fixture_names().contains(&input) {
        return fixtures::fixture_matrix(input);
    }
    Err(Error::validation(format!(
        "'{input}' is neither a readable file nor a bundled fixture (available fixtures: {})",
        fixtures::fixture_names().join(", ")
    )))
}

fn system_from(input: &IntegerMatrix, role: Role) -> Result<GaleSystem> {
    match role {
        Role::A => gale_dual_from_a(input.clone()),
        Role::B => a_from_gale_dual(input.clone()),
    }
}

fn cmd_gale(input: &str, from: Role) -> Result<()> {
    let m = read_input(input)?;
    let sys = system_from(&m, from)?;
    match from {
        Role::A => {
            println!("# Gale dual B ({} x 2)", sys.n());
            print!("{}", render_matrix(sys.b()));
        }
        Role::B => {
            println!("# reconstructed A ({} x {})", sys.n() - 2, sys.n());
            print!("{}", render_matrix(sys.a()));
        }
    }
    let diags = sys.validate();
    if diags.is_empty() {
        println!("# diagnostics: none");
        Ok(())
    } else {
        for d in &diags {
            eprintln!("diagnostic: {d}");
        }
        Err(Error::validation(diags[0].clone()))
    }
}

fn cmd_invariants(input: &str, from: Role, convention: ConventionArg, format: Format) -> Result<()> {
    let m = read_input(input)?;
    let sys = system_from(&m, from)?;
    let mut rep = compute_report(&sys)?;
    if matches!(convention, ConventionArg::Alternate) {
        rep = convert_convention(&rep, &sys)?;
    }
    let role = if from == Role::A { "A" } else { "B" };
    match format {
        Format::Table => print!("{}", report::render_table(&rep, Some(&sys))),
        Format::Json => println!("{}", report::to_json(&report::document(&rep, role, &m))),
    }
    Ok(())
}

fn first_difference(x: &InvariantReport, y: &InvariantReport) -> Option<String> {
    if x.faces.len() != y.faces.len() {
        return Some(format!(
            "face counts differ: {} (B) vs {} (A)",
            x.faces.len(),
            y.faces.len()
        ));
    }
    for (fx, fy) in x.faces.iter().zip(&y.faces) {
        for (what, a, b) in [
            ("points", format!("{:?}", fx.points), format!("{:?}", fy.points)),
            ("dim", fx.dim.to_string(), fy.dim.to_string()),
            ("Vol", fx.vol.to_string(), fy.vol.to_string()),
            ("mu(P,f)", format!("{:?}", fx.mu), format!("{:?}", fy.mu)),
            ("i(P,f)", format!("{:?}", fx.index), format!("{:?}", fy.index)),
            ("Eu", fx.eu.to_string(), fy.eu.to_string()),
        ] {
            if a != b {
                return Some(format!("face {}: {what} differs: {a} (B) vs {b} (A)", fx.id));
            }
        }
    }
    if x.v != y.v {
        return Some("Chern-Mather volumes differ".to_string());
    }
    if x.delta != y.delta {
        return Some("polar degrees differ".to_string());
    }
    if x.ed_degree != y.ed_degree {
        return Some("ED degrees differ".to_string());
    }
    None
}

fn cmd_check(input: &str, from: Role) -> Result<()> {
    let m = read_input(input)?;
    let sys = system_from(&m, from)?;
    let from_b = compute_report(&sys)?;
    let from_a = full_pipeline_a(sys.a())?;
    match first_difference(&from_b, &from_a) {
        None => {
            println!(
                "PASS: both pipelines agree on {} faces (ED degree {})",
                from_b.faces.len(),
                from_b.ed_degree
            );
            Ok(())
        }
        Some(diff) => {
            println!("FAIL: {diff}");
            Err(Error::internal(diff))
        }
    }
}

fn render_bench_table(records: &[BenchRecord]) -> String {
    let mut rows = vec![vec![
        "fixture".to_string(),
        "n".to_string(),
        "method".to_string(),
        "seconds".to_string(),
        "result-hash".to_string(),
    ]];
    for r in records {
        rows.push(vec![
            r.fixture.clone(),
            r.n.to_string(),
            r.method.clone(),
            format!("{:.4}", r.seconds),
            r.result_hash[..12].to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{:<width$}", cell, width = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    // speedup of the B method (faces + invariants) over the A method
    for fixture in records.iter().map(|r| r.fixture.clone()).collect::<std::collections::BTreeSet<_>>() {
        let secs = |method: &str| {
            records
                .iter()
                .find(|r| r.fixture == fixture && r.method == method)
                .map(|r| r.seconds)
        };
        if let (Some(f), Some(b), Some(a)) = (secs("faces"), secs("B-matrix"), secs("A-matrix")) {
            out.push_str(&format!("speedup {fixture}: {:.1}x\n", a / (f + b)));
        }
    }
    out
}

fn cmd_bench(names: &[String], reps: usize, format: Format) -> Result<()> {
    let names: Vec<String> = names.iter().filter(|n| !n.is_empty()).cloned().collect();
    let records = benchmark(&names, reps)?;
    match format {
        Format::Table => print!("{}", render_bench_table(&records)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&records).expect("bench serialization")
        ),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::validation(format!("cannot configure thread pool: {e}")))?;
    }
    match cli.cmd {
        Cmd::Gale { input, from } => cmd_gale(&input, from),
        Cmd::Invariants {
            input,
            from,
            convention,
            format,
        } => cmd_invariants(&input, from, convention, format),
        Cmd::Check { input, from } => cmd_check(&input, from),
        Cmd::Bench {
            fixtures,
            reps,
            format,
        } => cmd_bench(&fixtures, reps, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
