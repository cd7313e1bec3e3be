//! Effective parameters of one command: command line over environment over
//! config file over built-in defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ini::Ini;

pub const THREADS_ENV: &str = "SUBDIFF_THREADS";

/// Section written by `meta.txt` that a config loader skips.
pub const RESULT_SECTION: &str = "result";

#[derive(Debug)]
pub enum CliError {
    /// Bad or inconsistent parameters (exit code 2).
    Config(String),
    /// The solver could not produce a solution (exit code 3).
    Numerical(subdiff::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<subdiff::Error> for CliError {
    fn from(e: subdiff::Error) -> Self {
        use subdiff::Error as E;
        match e {
            E::Ellipticity { .. }
            | E::NonConvergence { .. }
            | E::NonFinite(_)
            | E::NotPositiveDefinite { .. }
            | E::QuadratureNotConverged(_)
            | E::DegenerateOrder(_) => CliError::Numerical(e),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Default,
    File,
    Env,
    CommandLine,
    Derived,
}

impl Origin {
    fn label(self) -> &'static str {
        match self {
            Origin::Default => "default",
            Origin::File => "config file",
            Origin::Env => THREADS_ENV,
            Origin::CommandLine => "command line",
            Origin::Derived => "derived",
        }
    }
}

/// One parameter a command accepts.
pub struct Key {
    pub name: &'static str,
    pub default: Option<&'static str>,
    pub help: &'static str,
}

pub const fn key(name: &'static str, default: Option<&'static str>, help: &'static str) -> Key {
    Key { name, default, help }
}

/// Keys every command accepts, also allowed outside any section of a config file.
pub const GLOBAL_KEYS: &[Key] = &[
    key("threads", Some("auto"), "worker threads: auto or a positive integer"),
    key("out", Some("subdiff-out"), "output directory"),
];

pub struct Settings {
    command: &'static str,
    values: BTreeMap<&'static str, (String, Origin)>,
    keys: Vec<&'static Key>,
}

impl Settings {
    /// Merges the layers for `command`; `cli` holds only the flags actually given.
    pub fn resolve(
        command: &'static str,
        keys: &'static [Key],
        config: Option<&Path>,
        env_threads: Option<String>,
        cli: Vec<(&'static str, String)>,
    ) -> CliResult<Self> {
        let all: Vec<&'static Key> = GLOBAL_KEYS.iter().chain(keys).collect();
        let lookup = |name: &str| all.iter().find(|k| k.name == name).map(|k| k.name);
        let mut values = BTreeMap::new();
        for k in &all {
            if let Some(d) = k.default {
                values.insert(k.name, (d.to_string(), Origin::Default));
            }
        }
        if let Some(path) = config {
            let ini = Ini::load_from_file(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            for (section, props) in ini.iter() {
                let allowed: &[&Key] = match section {
                    None => &all[..GLOBAL_KEYS.len()],
                    Some(s) if s == command => &all,
                    Some(s) if s == RESULT_SECTION || KNOWN_COMMANDS.contains(&s) => continue,
                    Some(s) => {
                        return Err(CliError::Config(format!(
                            "{}: unknown section [{s}]",
                            path.display()
                        )))
                    }
                };
                for (k, v) in props.iter() {
                    let name = allowed.iter().find(|key| key.name == k).map(|key| key.name);
                    let name = name.ok_or_else(|| {
                        let place = section.map_or("outside any section".to_string(), |s| format!("in [{s}]"));
                        CliError::Config(format!("{}: unknown key '{k}' {place}", path.display()))
                    })?;
                    values.insert(name, (v.trim().to_string(), Origin::File));
                }
            }
        }
        if let Some(t) = env_threads {
            values.insert("threads", (t, Origin::Env));
        }
        for (k, v) in cli {
            let name = lookup(k).ok_or_else(|| CliError::Config(format!("unknown option --{k}")))?;
            values.insert(name, (v, Origin::CommandLine));
        }
        Ok(Self { command, values, keys: all })
    }

    pub fn command(&self) -> &'static str {
        self.command
    }

    pub fn is_set(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn raw(&self, name: &str) -> CliResult<&str> {
        self.values
            .get(name)
            .map(|(v, _)| v.as_str())
            .ok_or_else(|| CliError::Config(format!("missing required parameter '{name}'")))
    }

    pub fn get<T: FromStr>(&self, name: &str) -> CliResult<T>
    where
        T::Err: fmt::Display,
    {
        let raw = self.raw(name)?;
        raw.parse().map_err(|e| self.bad(name, raw, e))
    }

    pub fn get_opt<T: FromStr>(&self, name: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        if self.is_set(name) {
            self.get(name).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Comma-separated list; integer lists also accept `a..b` (inclusive).
    pub fn list<T: FromStr>(&self, name: &str) -> CliResult<Vec<T>>
    where
        T::Err: fmt::Display,
    {
        let raw = self.raw(name)?;
        let items: Vec<String> = match raw.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|e| self.bad(name, raw, e))?;
                let b: usize = b.trim().parse().map_err(|e| self.bad(name, raw, e))?;
                (a..=b).map(|v| v.to_string()).collect()
            }
            None => raw.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        };
        if items.is_empty() {
            return Err(CliError::Config(format!("'{name}' must not be empty")));
        }
        items
            .iter()
            .map(|s| s.parse().map_err(|e| self.bad(name, raw, e)))
            .collect()
    }

    fn bad(&self, name: &str, raw: &str, e: impl fmt::Display) -> CliError {
        let origin = self.values.get(name).map_or("?", |(_, o)| o.label());
        CliError::Config(format!("invalid value '{raw}' for '{name}' (from {origin}): {e}"))
    }

    /// Records a value the command derived, so that the echo shows it.
    pub fn set_derived(&mut self, name: &'static str, value: String) {
        match self.values.get_mut(name) {
            Some(entry) => entry.0 = value,
            None => {
                self.values.insert(name, (value, Origin::Derived));
            }
        }
    }

    /// `key = value` lines for every effective parameter, in declaration order.
    pub fn echo(&self) -> Vec<(String, String, &'static str)> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for k in &self.keys {
            if let Some((v, o)) = self.values.get(k.name) {
                seen.push(k.name);
                out.push((k.name.to_string(), v.clone(), o.label()));
            }
        }
        for (name, (v, o)) in &self.values {
            if !seen.contains(name) {
                out.push((name.to_string(), v.clone(), o.label()));
            }
        }
        out
    }
}

pub const KNOWN_COMMANDS: &[&str] = &["verify-constants", "solve", "convergence", "longtime", "bench"];

/// `auto` or a positive count.
pub fn parse_threads(raw: &str) -> CliResult<usize> {
    if raw.eq_ignore_ascii_case("auto") {
        return Ok(std::thread::available_parallelism().map_or(1, |n| n.get()));
    }
    match raw.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(CliError::Config(format!(
            "threads must be 'auto' or a positive integer, got '{raw}'"
        ))),
    }
}
