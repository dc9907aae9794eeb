use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dgla::io::{exit_code, exit_status, parse_window, run, Command, Format, JobSpec};
use dgla::par;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Table,
}

/// Exact computations with dg Lie algebras and formal moduli problems.
#[derive(Parser, Debug)]
#[command(name = "dgla", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Input document (JSON).
    #[arg(long = "in")]
    input: PathBuf,
    /// Secondary input: representation, coefficient algebra, algebra map.
    #[arg(long)]
    rep: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Restrict reported degrees to `a:b`.
    #[arg(long, allow_hyphen_values = true)]
    degree_window: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    ExitCode::from(execute(cli) as u8)
}

fn execute(cli: Cli) -> i32 {
    let degree_window = match cli.degree_window.as_deref().map(parse_window).transpose() {
        Ok(w) => w,
        Err(e) => {
            eprintln!("dgla: {e}");
            return exit_code(&e);
        }
    };
    let format = match cli.format {
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
        OutFormat::Table => Format::Table,
    };
    let job = JobSpec {
        command: cli.command,
        input: cli.input,
        rep: cli.rep,
        max_weight: cli.max_weight,
        depth: cli.depth,
        degree_window,
        seed: cli.seed,
        format,
    };
    let outcome = match par::threads_from_env() {
        Some(n) => par::with_threads(n, || run(&job)),
        None => run(&job),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("dgla: {e}");
            return exit_code(&e);
        }
    };
    let text = report.render(job.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("dgla: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    exit_status(&report)
}
