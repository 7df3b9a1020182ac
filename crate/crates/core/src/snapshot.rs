//! Snapshot cache file format.
//!
//! One file per snapshot matrix: a single-line JSON header (row/column
//! counts, a free-form spec describing how the snapshots were produced, and
//! the spec's content hash), followed by the matrix as row-major
//! little-endian f64. Readers validate the hash and reject stale files.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::{BufRead, Read, Write};
use std::path::Path;

use crate::error::{CoreError, Result};

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    rows: usize,
    cols: usize,
    content_hash: String,
    spec: serde_json::Value,
}

/// SHA-256 hex digest of a canonical JSON value, used to key caches.
pub fn content_hash(spec: &serde_json::Value) -> String {
    let bytes = serde_json::to_vec(spec).expect("json serialization cannot fail");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes a snapshot matrix with its describing spec.
pub fn write_snapshots(path: &Path, matrix: &DMatrix<f64>, spec: &serde_json::Value) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let header = Header {
        rows: matrix.nrows(),
        cols: matrix.ncols(),
        content_hash: content_hash(spec),
        spec: spec.clone(),
    };
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer(&mut f, &header)
        .map_err(|e| CoreError::Format(format!("header serialization: {e}")))?;
    f.write_all(b"\n")?;
    for row in 0..matrix.nrows() {
        for col in 0..matrix.ncols() {
            f.write_all(&matrix[(row, col)].to_le_bytes())?;
        }
    }
    Ok(())
}

/// Reads a snapshot matrix, verifying that the stored spec hash matches the
/// expected one. A mismatch means the cache was produced by a different
/// configuration and must not be reused.
pub fn read_snapshots(path: &Path, expected_spec: &serde_json::Value) -> Result<DMatrix<f64>> {
    let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut header_line = String::new();
    f.read_line(&mut header_line)?;
    let header: Header = serde_json::from_str(header_line.trim_end())
        .map_err(|e| CoreError::Format(format!("header parse: {e}")))?;
    let expected_hash = content_hash(expected_spec);
    if header.content_hash != expected_hash {
        return Err(CoreError::Format(format!(
            "stale snapshot cache: stored hash {} != expected {expected_hash}",
            header.content_hash
        )));
    }
    let mut matrix = DMatrix::zeros(header.rows, header.cols);
    let mut buf = [0u8; 8];
    for row in 0..header.rows {
        for col in 0..header.cols {
            f.read_exact(&mut buf)?;
            matrix[(row, col)] = f64::from_le_bytes(buf);
        }
    }
    Ok(matrix)
}
