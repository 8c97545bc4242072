//! The `tempomatch` command line: pattern loading, streaming matching with
//! online output, the gear log generator and the benchmark driver.

mod bench;
mod format;
mod gear;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use bench::{gear_series, median, time_scan, BenchRow};
pub use format::{format_number, format_zone, SEPARATOR};
pub use gear::{generate_gear_word, GearError, GearEvents, GearGenConfig, GEAR_TRE};

use crate::automata::Pattern;
use crate::matcher::{scan, Algorithm, MatchSink, MatchStats, ZoneRecord};
use crate::word::{EventStream, LineEvents};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Fjs,
    Brute,
}

#[derive(Debug, Parser)]
#[command(
    name = "tempomatch",
    version,
    about = "Report every interval of a timed log that matches a timed pattern",
    args_conflicts_with_subcommands = true
)]
struct Args {
    #[command(subcommand)]
    command: Option<Command>,

    /// Timed regular expression
    #[arg(
        short = 'e',
        long = "expression",
        value_name = "TRE",
        conflicts_with = "automaton"
    )]
    expression: Option<String>,

    /// Timed automaton in JSON
    #[arg(short = 'f', long = "automaton", value_name = "FILE")]
    automaton: Option<PathBuf>,

    /// Event log, one `<label> <time>` per line (default: standard input)
    #[arg(short = 'i', long = "input", value_name = "FILE")]
    input: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "fjs")]
    algorithm: AlgorithmArg,

    /// Print matcher statistics to standard error
    #[arg(long)]
    stats: bool,

    /// Print only the number of zones, to standard error
    #[arg(short, long)]
    quiet: bool,

    /// Stop after the first zone
    #[arg(long)]
    quit_on_first_match: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic gearbox log
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mean gap between events
        #[arg(long, default_value_t = 1.0)]
        gap: f64,
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Time both algorithms on gear logs of growing size
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10000,20000,40000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

struct PrintSink<'a> {
    out: &'a mut dyn Write,
    quiet: bool,
    first_only: bool,
    count: usize,
    failure: Option<io::Error>,
}

impl MatchSink for PrintSink<'_> {
    fn zone(&mut self, record: &ZoneRecord) -> ControlFlow<()> {
        self.count += 1;
        if !self.quiet {
            let written = self
                .out
                .write_all(format_zone(&record.zone).as_bytes())
                .and_then(|_| self.out.flush());
            if let Err(e) = written {
                self.failure = Some(e);
                return ControlFlow::Break(());
            }
        }
        if self.first_only {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}

fn stats_line(stats: &MatchStats, elapsed_ms: f64) -> String {
    format!(
        "trials={} gate_skipped={} events={} zones={} time_ms={elapsed_ms:.3}",
        stats.trials_run, stats.trials_gate_skipped, stats.events_read, stats.zones_emitted
    )
}

fn load_pattern(args: &Args) -> Result<Pattern, String> {
    if let Some(tre) = &args.expression {
        return Pattern::from_tre(tre).map_err(|e| e.to_string());
    }
    let path = args.automaton.as_ref().expect("checked by the caller");
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Pattern::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_matcher(
    args: &Args,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let pattern = match load_pattern(args) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let algorithm = match args.algorithm {
        AlgorithmArg::Fjs => Algorithm::Fjs,
        AlgorithmArg::Brute => Algorithm::Brute,
    };
    let tables = match algorithm {
        Algorithm::Brute => None,
        Algorithm::Fjs => match pattern.skip_tables() {
            Ok(t) => Some(t),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INPUT;
            }
        },
    };
    let reader: Box<dyn BufRead + '_> = match &args.input {
        None => Box::new(stdin),
        Some(path) => match File::open(path) {
            Ok(f) => Box::new(BufReader::new(f)),
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot read {}: {e}", path.display());
                return EXIT_INPUT;
            }
        },
    };

    let started = Instant::now();
    let mut sink = PrintSink {
        out: stdout,
        quiet: args.quiet,
        first_only: args.quit_on_first_match,
        count: 0,
        failure: None,
    };
    let stream = EventStream::new(LineEvents::new(reader));
    let result = scan(&pattern, tables.as_ref(), stream, &mut sink);
    let elapsed_ms = started.elapsed().as_secs_f64() * 1000.0;
    let (stats, error) = match result {
        Ok(stats) => (stats, None),
        Err(e) => (e.stats, Some(e.error)),
    };
    if args.stats {
        let _ = writeln!(stderr, "{}", stats_line(&stats, elapsed_ms));
    }
    if args.quiet {
        let _ = writeln!(stderr, "zones={}", sink.count);
    }
    match sink.failure {
        // the reader went away; nothing left to report to
        Some(e) if e.kind() == io::ErrorKind::BrokenPipe => return EXIT_OK,
        Some(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            return EXIT_INPUT;
        }
        None => {}
    }
    if let Some(e) = error {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    EXIT_OK
}

fn run_generate(
    count: u64,
    seed: u64,
    gap: f64,
    output: Option<&PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let events = match GearEvents::new(seed, gap) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut sink: Box<dyn Write + '_> = match output {
        None => Box::new(BufWriter::new(stdout)),
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", path.display());
                return EXIT_INPUT;
            }
        },
    };
    let written = events
        .take(count as usize)
        .try_for_each(|e| writeln!(sink, "{e}"))
        .and_then(|_| sink.flush());
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            EXIT_INPUT
        }
    }
}

fn run_bench(
    sizes: &[usize],
    seed: u64,
    runs: usize,
    repeats: usize,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let rows = match gear_series(sizes, seed, runs, repeats) {
        Ok(rows) => rows,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    for row in rows {
        let name = match row.algorithm {
            Algorithm::Fjs => "fjs",
            Algorithm::Brute => "brute",
        };
        let _ = writeln!(
            stdout,
            "events={} algorithm={name} time_ms={:.3} trials={} gate_skipped={} zones={} peak_buffered={}",
            row.events,
            row.time.as_secs_f64() * 1000.0,
            row.stats.trials_run,
            row.stats.trials_gate_skipped,
            row.stats.zones_emitted,
            row.stats.peak_buffered,
        );
    }
    EXIT_OK
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run_with<A, T>(
    argv: A,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    A: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    match &args.command {
        Some(Command::Generate {
            count,
            seed,
            gap,
            output,
        }) => run_generate(*count, *seed, *gap, output.as_ref(), stdout, stderr),
        Some(Command::Bench {
            sizes,
            seed,
            runs,
            repeats,
        }) => run_bench(sizes, *seed, *runs, *repeats, stdout, stderr),
        None if args.expression.is_none() && args.automaton.is_none() => {
            let _ = writeln!(
                stderr,
                "error: a pattern is required: pass -e <TRE> or -f <FILE>\n\nFor more information, try '--help'."
            );
            EXIT_USAGE
        }
        None => run_matcher(&args, stdin, stdout, stderr),
    }
}

/// Runs the command line on the process streams.
pub fn run() -> i32 {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut output = stdout.lock();
    let stderr = io::stderr();
    let mut errors = stderr.lock();
    run_with(std::env::args_os(), &mut input, &mut output, &mut errors)
}
