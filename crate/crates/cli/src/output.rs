use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

/// A failure reported as `{"error": {"code", "message"}}`.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl From<chpp_core::Error> for CliError {
    fn from(e: chpp_core::Error) -> Self {
        CliError { code: e.code(), message: e.to_string() }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub struct Output {
    pub pretty: bool,
}

impl Output {
    fn render<T: Serialize + ?Sized>(&self, value: &T) -> String {
        let text = if self.pretty {
            serde_json::to_string_pretty(value)
        } else {
            serde_json::to_string(value)
        };
        text.expect("output types serialize")
    }

    pub fn json<T: Serialize + ?Sized>(&self, value: &T) {
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = writeln!(std::io::stdout().lock(), "{}", self.render(value));
    }

    pub fn error(&self, e: &CliError) {
        eprintln!("{}", self.render(&json!({ "error": { "code": e.code, "message": e.message } })));
    }

    /// Write JSON to `path`, or to stdout when no path is given.
    pub fn json_to<T: Serialize + ?Sized>(&self, value: &T, path: Option<&Path>) -> CliResult {
        match path {
            Some(p) => write_file(p, &(self.render(value) + "\n")),
            None => {
                self.json(value);
                Ok(())
            }
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::new("io_error", format!("{}: {e}", path.display())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new("io_error", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        let err: chpp_core::Error = e.into();
        CliError { code: err.code(), message: format!("{}: {err}", path.display()) }
    })
}

/// Report a usage error the way clap does (exit status 2).
pub fn usage(message: impl std::fmt::Display) -> ! {
    clap::Error::raw(clap::error::ErrorKind::MissingRequiredArgument, format!("{message}\n")).exit()
}
