use std::fs;
use std::path::Path;

use liyau_core::format::to_json_string;
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub fn json<T: Serialize>(value: &T) -> CliResult<String> {
    to_json_string(value).map_err(|e| CliError::io(format!("serialization failed: {e}")))
}

pub fn write_file(path: &Path, body: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, body).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

/// Writes to `path` when given, otherwise prints.
pub fn emit(path: Option<&Path>, body: &str) -> CliResult<()> {
    match path {
        Some(p) => write_file(p, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
