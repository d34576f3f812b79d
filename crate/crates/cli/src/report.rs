use std::io::Write;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qbetti::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

#[derive(Clone, Debug, Serialize)]
pub struct Versions {
    pub qbetti: &'static str,
    pub cli: &'static str,
}

impl Versions {
    pub fn current() -> Self {
        Self { qbetti: qbetti::VERSION, cli: env!("CARGO_PKG_VERSION") }
    }
}

/// Top-level JSON document every command writes.
#[derive(Serialize)]
pub struct Report<'a, C: Serialize, R: Serialize> {
    pub command: &'a str,
    pub config: &'a C,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<&'a qbetti::complex::InstanceFile>,
    pub results: R,
    pub elapsed_seconds: f64,
    pub versions: Versions,
}

/// Writes pretty JSON to `path`, or to stdout.
pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(format!("serialize: {e}")))?;
    write_text(&text, path)
}

pub fn write_text(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(io_err(p)),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}").map_err(io_err(Path::new("<stdout>")))
        }
    }
}

/// Writes serializable rows as CSV to `path`, or to stdout.
pub fn write_csv<T: Serialize>(rows: &[T], path: Option<&Path>) -> CliResult<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(std::fs::File::create(p).map_err(io_err(p))?),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(io_err(path.unwrap_or(Path::new("<stdout>"))))?;
    Ok(())
}
