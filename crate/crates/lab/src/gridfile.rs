//! Grid-function file format: one JSON header line, then a raw little-endian
//! f64 block in row-major order. The reader validates the header field by
//! field and the block length against the shape, so a truncated or
//! mislabeled file fails with a named diagnosis instead of garbage values.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::grid::GridFunction;
use crate::LabError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    format_version: u32,
    d: usize,
    shape: Vec<usize>,
    h: f64,
    origin: Vec<f64>,
    dtype: String,
    byte_order: String,
    order: String,
}

pub fn write_gridfunction(path: &Path, f: &GridFunction) -> Result<(), LabError> {
    let header = Header {
        format_version: FORMAT_VERSION,
        d: f.d(),
        shape: f.shape().to_vec(),
        h: f.h(),
        origin: f.origin().to_vec(),
        dtype: "f64".into(),
        byte_order: "little".into(),
        order: "row-major".into(),
    };
    let mut out = serde_json::to_vec(&header).expect("header serializes");
    out.push(b'\n');
    out.reserve(8 * f.len());
    for v in f.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    let mut file = fs::File::create(path)?;
    file.write_all(&out)?;
    Ok(())
}

pub fn read_gridfunction(path: &Path) -> Result<GridFunction, LabError> {
    let bytes = fs::read(path)?;
    let newline = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| LabError::format("grid file: missing header line".to_string()))?;
    let header: Header = serde_json::from_slice(&bytes[..newline])
        .map_err(|e| LabError::format(format!("grid file header: {e}")))?;
    if header.format_version != FORMAT_VERSION {
        return Err(LabError::format(format!(
            "grid file header: format_version {} unsupported (expected {FORMAT_VERSION})",
            header.format_version
        )));
    }
    if header.dtype != "f64" {
        return Err(LabError::format(format!(
            "grid file header: dtype {:?} unsupported (expected \"f64\")",
            header.dtype
        )));
    }
    if header.byte_order != "little" {
        return Err(LabError::format(format!(
            "grid file header: byte_order {:?} unsupported (expected \"little\")",
            header.byte_order
        )));
    }
    if header.order != "row-major" {
        return Err(LabError::format(format!(
            "grid file header: order {:?} unsupported (expected \"row-major\")",
            header.order
        )));
    }
    if header.shape.len() != header.d {
        return Err(LabError::format(format!(
            "grid file header: shape has {} axes but d = {}",
            header.shape.len(),
            header.d
        )));
    }
    let count: usize = header.shape.iter().product();
    let block = &bytes[newline + 1..];
    if block.len() != 8 * count {
        return Err(LabError::format(format!(
            "grid file block: {} bytes but shape {:?} needs {}",
            block.len(),
            header.shape,
            8 * count
        )));
    }
    let values: Vec<f64> = block
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    GridFunction::new(header.shape, header.h, header.origin, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::white_noise;

    #[test]
    fn round_trip() {
        let dir = std::env::temp_dir().join("kplane_gridfile_test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f.gf");
        let f = white_noise(3, 8, 1.25, 42);
        write_gridfunction(&path, &f).unwrap();
        let g = read_gridfunction(&path).unwrap();
        assert_eq!(f.shape(), g.shape());
        assert_eq!(f.values(), g.values());
        fs::remove_file(&path).unwrap();
    }

    #[test]
    fn diagnoses_bad_header_and_truncation() {
        let dir = std::env::temp_dir().join("kplane_gridfile_test");
        fs::create_dir_all(&dir).unwrap();

        let bad_header = dir.join("bad_header.gf");
        fs::write(&bad_header, b"{\"format_version\":1}\n").unwrap();
        let err = read_gridfunction(&bad_header).unwrap_err().to_string();
        assert!(err.contains("header"), "{err}");

        let truncated = dir.join("truncated.gf");
        let f = white_noise(2, 4, 1.0, 0);
        write_gridfunction(&truncated, &f).unwrap();
        let mut bytes = fs::read(&truncated).unwrap();
        bytes.truncate(bytes.len() - 8);
        fs::write(&truncated, &bytes).unwrap();
        let err = read_gridfunction(&truncated).unwrap_err().to_string();
        assert!(err.contains("needs"), "{err}");

        let _ = fs::remove_file(bad_header);
        let _ = fs::remove_file(truncated);
    }
}
