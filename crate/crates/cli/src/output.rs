//! CSV rendering and all-or-nothing file output.

use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::CliError;

/// A CSV document: `#`-prefixed metadata lines, a header row, data rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(metadata: Vec<(String, String)>, header: &[&str]) -> Table {
        Table {
            metadata,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        for (key, value) in &self.metadata {
            writeln!(buf, "# {key}={value}").expect("writing to memory");
        }
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(buf);
        writer
            .write_record(&self.header)
            .expect("writing to memory");
        for row in &self.rows {
            writer.write_record(row).expect("writing to memory");
        }
        writer.into_inner().expect("flushing to memory")
    }
}

/// Shortest decimal text that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    x.to_string()
}

/// `dir/stem.ext` becomes `dir/stem_branch{k}.ext`.
pub fn branch_path(base: &Path, branch: usize) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_branch{branch}.{}", ext.to_string_lossy()),
        None => format!("{stem}_branch{branch}"),
    };
    base.with_file_name(name)
}

/// Writes every file or none: contents are staged in temporary files next
/// to their targets and only renamed into place once all are written.
pub fn write_files(files: &[(PathBuf, Vec<u8>)]) -> Result<(), CliError> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, bytes) in files {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let io_err = |source| CliError::Output {
            path: path.clone(),
            source,
        };
        let mut tmp = NamedTempFile::new_in(dir).map_err(io_err)?;
        tmp.write_all(bytes).map_err(io_err)?;
        tmp.flush().map_err(io_err)?;
        staged.push((tmp, path));
    }
    let mut placed: Vec<&PathBuf> = Vec::new();
    for (tmp, path) in staged {
        if let Err(e) = tmp.persist(path) {
            for done in placed {
                let _ = std::fs::remove_file(done);
            }
            return Err(CliError::Output {
                path: path.clone(),
                source: e.error,
            });
        }
        placed.push(path);
    }
    Ok(())
}
