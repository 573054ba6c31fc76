//! The `microframe` command-line tool.
//!
//! [`run`] parses arguments, resolves settings, runs one subcommand and
//! returns the process exit code. Reports go to files and a short summary to
//! stdout; progress and diagnostics go to stderr.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};

use clap::Parser;

use crate::args::{Cli, Command, FramesCommand};
use crate::config::{RunConfig, EMBEDDINGS_ENV};
use crate::error::{CliError, CliResult};

fn init_logging(verbose: u8, quiet: bool) {
    let level = if quiet {
        log::LevelFilter::Warn
    } else {
        match verbose {
            0 => log::LevelFilter::Info,
            1 => log::LevelFilter::Debug,
            _ => log::LevelFilter::Trace,
        }
    };
    // A second call (several runs in one process) keeps the first logger.
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_env("MICROFRAME_LOG")
        .format(|buf, record| writeln!(buf, "microframe: {}", record.args()))
        .target(env_logger::Target::Stderr)
        .try_init();
}

/// Runs one resolved subcommand and returns its stdout summary.
pub fn execute(command: &Command, config: &RunConfig) -> CliResult<String> {
    match command {
        Command::Analyze { .. } => commands::cmd_analyze(config),
        Command::Shifts { .. } => commands::cmd_shifts(config),
        Command::Spectrum { .. } => commands::cmd_spectrum(config),
        Command::Map { .. } => commands::cmd_map(config),
        Command::Separation { .. } => commands::cmd_separation(config),
        Command::Relevance { .. } => commands::cmd_relevance(config),
        Command::LogOdds { .. } => commands::cmd_log_odds(config),
        Command::Frames {
            command: FramesCommand::Build,
        } => commands::cmd_frames_build(config),
    }
}

fn execute_in_pool(command: &Command, config: &RunConfig) -> CliResult<String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::internal("threads", e.to_string()))?;
    let result = panic::catch_unwind(AssertUnwindSafe(|| {
        pool.install(|| execute(command, config))
    }));
    result.unwrap_or_else(|payload| {
        let message = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(CliError::internal(command.name(), message))
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 success, 1 usage error, 2 data error, 3 internal error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    init_logging(cli.verbose, cli.quiet);
    let outcome = RunConfig::resolve(
        &cli.settings,
        &cli.command,
        std::env::var(EMBEDDINGS_ENV).ok(),
    )
    .and_then(|config| execute_in_pool(&cli.command, &config));
    match outcome {
        Ok(summary) => {
            print!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("microframe: error: {e}");
            e.kind.code()
        }
    }
}
