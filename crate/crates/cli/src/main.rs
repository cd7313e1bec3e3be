mod commands;
mod settings;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::parser::ValueSource;
use clap::{Arg, ArgMatches, Command};

use commands::{keys_of, CASES};
use settings::{CliError, Key, Settings, GLOBAL_KEYS, KNOWN_COMMANDS, THREADS_ENV};

fn about(command: &str) -> &'static str {
    match command {
        "verify-constants" => "Tabulate the normalized L1 and fractional-integral error diagnostics",
        "solve" => "Solve one case and write solution.csv on 101 uniform points",
        "convergence" => "Temporal or spatial convergence study",
        "longtime" => "Long-time run and decay of |v(probe) − U(probe)|",
        "bench" => "Single- versus multi-thread assembly timings",
        _ => "",
    }
}

fn key_arg(k: &'static Key) -> Arg {
    let help = match k.default {
        Some(d) => format!("{} [default: {d}]", k.help),
        None => k.help.to_string(),
    };
    Arg::new(k.name).long(k.name).value_name("VALUE").help(help)
}

fn cli() -> Command {
    let subcommands = KNOWN_COMMANDS.iter().map(|&name| {
        let mut cmd = Command::new(name).about(about(name)).arg(
            Arg::new("config")
                .long("config")
                .value_name("FILE")
                .value_parser(clap::value_parser!(PathBuf))
                .help("INI file: global keys first, then a section per command"),
        );
        for k in GLOBAL_KEYS.iter().chain(keys_of(name)) {
            cmd = cmd.arg(key_arg(k));
        }
        if name != "verify-constants" && name != "bench" {
            cmd = cmd.after_help(format!("Cases: {}", CASES.join(", ")));
        }
        cmd
    });
    Command::new("subdiff")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Time-fractional subdiffusion solver: L1 in time, modal Legendre Galerkin in space")
        .after_help(format!("{THREADS_ENV} overrides the thread count of config files."))
        .subcommand_required(true)
        .subcommands(subcommands)
}

fn given(m: &ArgMatches, keys: &'static [Key]) -> Vec<(&'static str, String)> {
    GLOBAL_KEYS
        .iter()
        .chain(keys)
        .filter(|k| m.value_source(k.name) == Some(ValueSource::CommandLine))
        .filter_map(|k| m.get_one::<String>(k.name).map(|v| (k.name, v.clone())))
        .collect()
}

fn run() -> Result<(), CliError> {
    let matches = match cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Ok(()),
                _ => Err(CliError::Config("invalid command line".into())),
            };
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let command = KNOWN_COMMANDS.iter().copied().find(|c| *c == name).expect("registered");
    let keys = keys_of(command);
    let mut settings = Settings::resolve(
        command,
        keys,
        sub.get_one::<PathBuf>("config").map(PathBuf::as_path),
        std::env::var(THREADS_ENV).ok(),
        given(sub, keys),
    )?;
    for path in commands::execute(&mut settings)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
