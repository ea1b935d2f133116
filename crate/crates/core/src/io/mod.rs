//! Dataset readers and result writers. Every reader reports the file and
//! line of the first malformed input.

mod graph_file;
mod line;
mod report;
mod simplex;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

pub use graph_file::{read_decomposed_graph, read_weighted_graph, write_decomposed_graph, write_weighted_graph};
pub use line::{format_line_format, parse_line_format, read_line_format, write_line_format};
pub use report::{
    degree_tsv, round_significant, spectrum_tsv, to_json_string, write_json, write_tsv, SIGNIFICANT_DIGITS,
};
pub use simplex::{find_simplex_files, read_simplex_dir, read_simplex_format, SimplexData, SimplexFiles};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Writes through a sibling temporary file and renames it into place, so
/// readers never observe a partial file. The temporary is removed on failure.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::validation(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}
