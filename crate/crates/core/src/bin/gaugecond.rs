use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use gaugecond::runner::{resolve_out_dir, run, OUT_DIR_ENV};
use gaugecond::scenario::{parse_scenario, Format, Kind};

#[derive(Parser)]
#[command(name = "gaugecond", version, about = "Run gauge-field conductivity scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its outputs.
    Run {
        scenario: PathBuf,
        /// Output directory (default: scenario setting, then $GAUGECOND_OUT_DIR/<name>).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        quiet: bool,
    },
    /// Check a scenario file without running it.
    Validate { scenario: PathBuf },
    /// List scenario kinds.
    ListKinds,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Both => Format::Both,
        }
    }
}

const EXIT_INVALID: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INVALID) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::ListKinds => {
            for k in Kind::ALL {
                println!("{:<16} {}", k.as_str(), k.describe());
            }
            ExitCode::SUCCESS
        }
        Command::Validate { scenario } => match parse_scenario(&scenario) {
            Ok(s) => {
                println!("{}: valid {} scenario \"{}\"", scenario.display(), s.kind(), s.name);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{}: invalid scenario\n{e}", scenario.display());
                ExitCode::from(EXIT_INVALID)
            }
        },
        Command::Run { scenario, out, format, quiet } => {
            let s = match parse_scenario(&scenario) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}: invalid scenario\n{e}", scenario.display());
                    return ExitCode::from(EXIT_INVALID);
                }
            };
            let env = std::env::var(OUT_DIR_ENV).ok();
            let dir = resolve_out_dir(out.as_deref(), &s, env.as_deref());
            let format = format.map_or(s.outputs.format, Format::from);
            let start = Instant::now();
            let report = match run(&s, &dir, format) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("cannot write outputs to {}: {e}", dir.display());
                    return ExitCode::from(1);
                }
            };
            let elapsed = start.elapsed();
            if !quiet {
                println!("{} ({}) -> {}", report.name, report.kind, dir.display());
                for c in &report.contracts {
                    let mark = if c.passed { "pass" } else { "FAIL" };
                    println!("  [{mark}] {}: {:e} {} {:e}", c.name, c.value, c.relation, c.limit);
                }
                println!("  files: {}", report.files.join(", "));
                eprintln!("wall time: {:.3} s", elapsed.as_secs_f64());
            }
            if let Some(e) = &report.error {
                eprintln!("run failed: {e}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
