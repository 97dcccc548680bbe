use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use relthermo_sweep::config::{OutputFormat, SweepConfig};
use relthermo_sweep::{
    discrepancy_report, emit_csv, emit_plotdat, exit, parse_config, run_sweep, EmitError,
    ReportProbe,
};

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn write_rows(config: &SweepConfig, rows: &[relthermo_sweep::Row]) -> Result<(), EmitError> {
    let sink: Box<dyn Write> = match &config.output.path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match config.output.format {
        OutputFormat::Csv => emit_csv(rows, sink, config.precision),
        OutputFormat::Plotdat => emit_plotdat(rows, config.output.quantity, sink, config.precision),
    }
}

fn run(config: SweepConfig) -> i32 {
    let mut status = exit::SUCCESS;

    if config.grid.is_some() {
        let outcome = run_sweep(&config);
        for f in &outcome.failures {
            eprintln!(
                "row skipped: coupling {} mubar {}: {}",
                f.coupling, f.mubar, f.error
            );
        }
        match write_rows(&config, &outcome.rows) {
            Ok(()) => {}
            Err(EmitError::Empty) => eprintln!("error: no rows could be computed"),
            Err(EmitError::Io(e)) => {
                eprintln!("error: cannot write output: {e}");
                return exit::IO;
            }
        }
        if !outcome.failures.is_empty() {
            eprintln!(
                "{} of {} rows failed",
                outcome.failures.len(),
                outcome.failures.len() + outcome.rows.len()
            );
            status = exit::NUMERICAL;
        }
    }

    if config.report {
        let probe = ReportProbe {
            couplings: match config.family {
                relthermo_sweep::config::ModelFamily::KgLinear { .. } => {
                    ReportProbe::default().couplings
                }
                _ => config.couplings.clone(),
            },
            ..ReportProbe::default()
        };
        match discrepancy_report(&probe) {
            Ok(report) => {
                // keep stdout clean when it already carries the sweep
                if config.grid.is_some() && config.output.path.is_none() {
                    eprint!("{report}");
                } else {
                    print!("{report}");
                }
            }
            Err(e) => {
                eprintln!("error: report failed: {e}");
                status = if e.is_numerical() {
                    exit::NUMERICAL
                } else {
                    exit::USAGE
                };
            }
        }
    }
    status
}

fn main() -> ExitCode {
    let config = match parse_config(std::env::args_os()) {
        Ok(c) => c,
        Err(relthermo_sweep::ConfigError::Cli(e)) => {
            let c = e.exit_code();
            let _ = e.print();
            return code(c);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return code(e.exit_code());
        }
    };
    let status = match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(config)),
            Err(e) => {
                eprintln!("error: cannot start {n} worker threads: {e}");
                exit::USAGE
            }
        },
        None => run(config),
    };
    code(status)
}
