//! Text and binary file formats.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use knotfield::vortex::VortexSet;
use serde_json::Value;

use crate::error::CliError;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub const CURVES_CSV_HEADER: &str = "component_id,vertex_index,x,y,z";

pub fn curves_csv(set: &VortexSet) -> String {
    let mut out = String::from(CURVES_CSV_HEADER);
    out.push('\n');
    for (id, curve) in set.curves.iter().enumerate() {
        for (i, v) in curve.vertices.iter().enumerate() {
            let _ = writeln!(out, "{id},{i},{},{},{}", fmt17(v[0]), fmt17(v[1]), fmt17(v[2]));
        }
    }
    out
}

/// Wavefront OBJ with one `l` polyline per component; closed curves repeat
/// their first vertex at the end.
pub fn curves_obj(set: &VortexSet) -> String {
    let mut out = String::from("# knotfield vortex curves\n");
    for curve in &set.curves {
        for v in &curve.vertices {
            let _ = writeln!(out, "v {} {} {}", fmt17(v[0]), fmt17(v[1]), fmt17(v[2]));
        }
    }
    let mut base = 1;
    for (id, curve) in set.curves.iter().enumerate() {
        let _ = writeln!(out, "o component_{id}");
        out.push('l');
        for i in 0..curve.len() {
            let _ = write!(out, " {}", base + i);
        }
        if curve.closed && !curve.is_empty() {
            let _ = write!(out, " {base}");
        }
        out.push('\n');
        base += curve.len();
    }
    out
}

/// Binary 16-bit PGM (`P5`, maxval 65535, big-endian samples).
pub fn pgm16(width: usize, height: usize, pixels: &[u16]) -> Vec<u8> {
    assert_eq!(pixels.len(), width * height);
    let mut out = format!("P5\n{width} {height}\n65535\n").into_bytes();
    out.reserve(2 * pixels.len());
    for p in pixels {
        out.extend_from_slice(&p.to_be_bytes());
    }
    out
}

/// Inverse of [`pgm16`]; returns `(width, height, pixels)`.
pub fn read_pgm16(bytes: &[u8]) -> Option<(usize, usize, Vec<u16>)> {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).ok()?.to_string());
    }
    pos += 1;
    if fields[0] != "P5" || fields[3] != "65535" {
        return None;
    }
    let w: usize = fields[1].parse().ok()?;
    let h: usize = fields[2].parse().ok()?;
    let data = bytes.get(pos..pos + 2 * w * h)?;
    let pixels = data.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect();
    Some((w, h, pixels))
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialising a JSON value cannot fail");
    s.push('\n');
    s
}

pub fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok(path)
}
