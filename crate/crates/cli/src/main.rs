use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bt1kit::tables::golden_rows;
use bt1kit::verify::{self, Bounds, Suite};
use bt1kit::words::WordMultiset;
use bt1kit_cli::sweep::{self, SweepRow};
use bt1kit_cli::{classify, eo_report};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "bt1kit", version, about = "Ekedahl-Oort types of BT1 modules and Fermat quotient curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// EO type and invariants of y^d = x(1-x) (or the Fermat curve) in characteristic p.
    Eo {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        full_fermat: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Canonical type, permutation, EO type and invariants of a multiset such as "fv^2,ffvv".
    Classify {
        #[arg(long)]
        words: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_delimiter = ',')]
        p_list: Option<Vec<u64>>,
        /// Single prime; same as --p-list with one entry.
        #[arg(long, conflicts_with = "p_list")]
        p: Option<u64>,
        #[arg(long)]
        d_max: Option<u64>,
        #[arg(long)]
        lmax: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Invariants for every (p, d) with 3 <= d <= d-max and p not dividing d.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u64>,
        #[arg(long)]
        d_max: u64,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to BT1KIT_JOBS, then to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: SweepFormat,
    },
    /// Sequences of genus 1 to 4 with their multisets and invariants.
    Tables {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: bt1kit::Error| e.to_string())
}

fn usage(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_USAGE)
}

fn io_error(path: &std::path::Path, e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}: {e}", path.display());
    ExitCode::from(EXIT_IO)
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> ExitCode {
    let body = match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(value).expect("report serializes") + "\n",
    };
    let mut out = io::stdout().lock();
    match out.write_all(body.as_bytes()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: stdout: {e}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn cmd_eo(p: u64, d: u64, full: bool, format: Format) -> ExitCode {
    let report = match eo_report(p, d, full) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if report.genus == 0 {
        eprintln!("warning: d={d} gives a curve of genus 0");
    }
    emit(format, &report, || report.text())
}

fn cmd_classify(words: &str, format: Format) -> ExitCode {
    let m: WordMultiset = match words.parse() {
        Ok(m) => m,
        Err(e) => return usage(e),
    };
    let report = match classify(&m) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if !report.self_dual {
        eprintln!("warning: not self-dual; no elementary sequence");
    }
    if report.invariants.is_none() {
        eprintln!("warning: non-primitive word; pass the primitive roots to get invariants");
    }
    emit(format, &report, || report.text())
}

fn cmd_verify(suite: Suite, bounds: Bounds) -> ExitCode {
    let report = verify::run(suite, &bounds);
    println!("{report}");
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}

fn cmd_sweep(p_list: &[u64], d_max: u64, out: &PathBuf, jobs: Option<usize>, format: SweepFormat) -> ExitCode {
    let pairs = match sweep::pairs(p_list, d_max) {
        Ok(ps) => ps,
        Err(e) => return usage(e),
    };
    let rows: Vec<SweepRow> = match sweep::run(&pairs, jobs.or_else(sweep::jobs_from_env)) {
        Ok(rows) => rows,
        Err(e) => return usage(e),
    };
    let file = match File::create(out) {
        Ok(f) => BufWriter::new(f),
        Err(e) => return io_error(out, e),
    };
    let written = match format {
        SweepFormat::Csv => sweep::write_csv(&rows, file).map_err(|e| e.to_string()),
        SweepFormat::Json => sweep::write_json(&rows, file).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        return io_error(out, e);
    }
    eprintln!("{} rows written to {}", rows.len(), out.display());
    match sweep::bound_summary(&rows) {
        Ok(b) if b.rows > 0 => {
            if let Some((p, d, gap, bound)) = b.worst {
                eprintln!(
                    "a-number bound |4pa-(p-1)d| <= (p-1)^2: {} of {} rows exceed it; tightest p={p} d={d} ({gap} vs {bound})",
                    b.exceeding, b.rows
                );
            }
        }
        Ok(_) => {}
        Err(e) => return usage(e),
    }
    ExitCode::SUCCESS
}

fn cmd_tables(format: Format) -> ExitCode {
    let rows = golden_rows().expect("golden rows are valid");
    emit(format, &rows, || rows.iter().map(|r| format!("{r}\n")).collect())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Eo { p, d, full_fermat, format } => cmd_eo(p, d, full_fermat, format),
        Command::Classify { words, format } => cmd_classify(&words, format),
        Command::Verify { suite, p_list, p, d_max, lmax, max_len, samples, seed } => {
            let p_list = p_list.or(p.map(|p| vec![p]));
            cmd_verify(suite, Bounds { p_list, d_max, lmax, max_len, samples, seed })
        }
        Command::Sweep { p_list, d_max, out, jobs, format } => cmd_sweep(&p_list, d_max, &out, jobs, format),
        Command::Tables { format } => cmd_tables(format),
    }
}
