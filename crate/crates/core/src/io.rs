//! Point-cloud file formats: PLY (ascii), OBJ, and CSV.
//!
//! Coordinates are written with Rust's shortest round-trip float formatting,
//! so export followed by re-import reproduces the values exactly. All
//! formats carry normals; the readers accept clouds without them.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::{Point3, Vector3};
use thiserror::Error;

/// Supported export formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    PlyAscii,
    Obj,
    Csv,
}

impl ExportFormat {
    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ply" => Some(ExportFormat::PlyAscii),
            "obj" => Some(ExportFormat::Obj),
            "csv" => Some(ExportFormat::Csv),
            _ => None,
        }
    }

    pub fn from_path(path: &Path) -> Option<Self> {
        path.extension()
            .and_then(|e| e.to_str())
            .and_then(Self::from_name)
    }
}

#[derive(Debug, Error)]
pub enum CloudReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unrecognized cloud format for {0}")]
    UnknownFormat(String),
    #[error("file contains no points")]
    Empty,
}

/// Write a cloud with per-point normals in the chosen format.
pub fn write_cloud<W: Write>(
    mut out: W,
    points: &[Point3<f64>],
    normals: &[Vector3<f64>],
    format: ExportFormat,
) -> io::Result<()> {
    assert_eq!(points.len(), normals.len(), "one normal per point");
    match format {
        ExportFormat::PlyAscii => {
            write!(
                out,
                "ply\nformat ascii 1.0\nelement vertex {}\n\
                 property float x\nproperty float y\nproperty float z\n\
                 property float nx\nproperty float ny\nproperty float nz\n\
                 end_header\n",
                points.len()
            )?;
            for (p, n) in points.iter().zip(normals) {
                writeln!(out, "{} {} {} {} {} {}", p.x, p.y, p.z, n.x, n.y, n.z)?;
            }
        }
        ExportFormat::Obj => {
            for p in points {
                writeln!(out, "v {} {} {}", p.x, p.y, p.z)?;
            }
            for n in normals {
                writeln!(out, "vn {} {} {}", n.x, n.y, n.z)?;
            }
        }
        ExportFormat::Csv => {
            out.write_all(b"x,y,z,nx,ny,nz\n")?;
            for (p, n) in points.iter().zip(normals) {
                writeln!(out, "{},{},{},{},{},{}", p.x, p.y, p.z, n.x, n.y, n.z)?;
            }
        }
    }
    Ok(())
}

/// Write a cloud to a file, picking the format from the extension when not
/// given explicitly.
pub fn write_cloud_file(
    path: &Path,
    points: &[Point3<f64>],
    normals: &[Vector3<f64>],
    format: ExportFormat,
) -> io::Result<()> {
    let file = File::create(path)?;
    write_cloud(BufWriter::new(file), points, normals, format)
}

/// Points plus optional normals as read from a file.
pub type Cloud = (Vec<Point3<f64>>, Option<Vec<Vector3<f64>>>);

/// Read a cloud, sniffing the format from the file extension and falling
/// back to the first line of content.
pub fn read_cloud_file(path: &Path) -> Result<Cloud, CloudReadError> {
    let file = File::open(path)?;
    let mut reader = BufReader::new(file);

    let format = match ExportFormat::from_path(path) {
        Some(f) => f,
        None => {
            let mut first = String::new();
            reader.read_line(&mut first)?;
            let file = File::open(path)?;
            reader = BufReader::new(file);
            match first.trim() {
                "ply" => ExportFormat::PlyAscii,
                line if line.starts_with("v ") || line.starts_with("vn ") => ExportFormat::Obj,
                line if line.starts_with("x,") => ExportFormat::Csv,
                _ => return Err(CloudReadError::UnknownFormat(path.display().to_string())),
            }
        }
    };

    let cloud = match format {
        ExportFormat::PlyAscii => read_ply(reader)?,
        ExportFormat::Obj => read_obj(reader)?,
        ExportFormat::Csv => read_csv(reader)?,
    };
    if cloud.0.is_empty() {
        return Err(CloudReadError::Empty);
    }
    Ok(cloud)
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, CloudReadError> {
    // non-finite coordinates would poison every downstream metric
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CloudReadError::Parse {
            line,
            message: format!("bad number {tok:?}"),
        }),
    }
}

fn read_ply<R: BufRead>(reader: R) -> Result<Cloud, CloudReadError> {
    let mut lines = reader.lines().enumerate();
    let mut vertex_count = 0usize;
    let mut property_names = Vec::new();

    // header
    loop {
        let (idx, line) = match lines.next() {
            Some((i, l)) => (i + 1, l?),
            None => {
                return Err(CloudReadError::Parse {
                    line: 0,
                    message: "missing end_header".into(),
                })
            }
        };
        let line = line.trim().to_string();
        if line == "end_header" {
            break;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["element", "vertex", n] => {
                vertex_count = n.parse().map_err(|_| CloudReadError::Parse {
                    line: idx,
                    message: format!("bad vertex count {n:?}"),
                })?;
            }
            ["property", _ty, name] => property_names.push(name.to_string()),
            _ => {}
        }
    }

    let coord = |name: &str| property_names.iter().position(|p| p == name);
    let (ix, iy, iz) = match (coord("x"), coord("y"), coord("z")) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(CloudReadError::Parse {
                line: 0,
                message: "ply header lacks x/y/z properties".into(),
            })
        }
    };
    let normal_idx = match (coord("nx"), coord("ny"), coord("nz")) {
        (Some(a), Some(b), Some(c)) => Some((a, b, c)),
        _ => None,
    };

    let mut points = Vec::with_capacity(vertex_count);
    let mut normals = normal_idx.map(|_| Vec::with_capacity(vertex_count));
    for (idx, line) in lines.take(vertex_count) {
        let line = line?;
        let idx = idx + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < property_names.len() {
            return Err(CloudReadError::Parse {
                line: idx,
                message: format!("expected {} values", property_names.len()),
            });
        }
        points.push(Point3::new(
            parse_f64(toks[ix], idx)?,
            parse_f64(toks[iy], idx)?,
            parse_f64(toks[iz], idx)?,
        ));
        if let (Some(ns), Some((nx, ny, nz))) = (normals.as_mut(), normal_idx) {
            ns.push(Vector3::new(
                parse_f64(toks[nx], idx)?,
                parse_f64(toks[ny], idx)?,
                parse_f64(toks[nz], idx)?,
            ));
        }
    }
    Ok((points, normals))
}

fn read_obj<R: BufRead>(reader: R) -> Result<Cloud, CloudReadError> {
    let mut points = Vec::new();
    let mut normals = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let idx = idx + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["v", x, y, z] => points.push(Point3::new(
                parse_f64(x, idx)?,
                parse_f64(y, idx)?,
                parse_f64(z, idx)?,
            )),
            ["vn", x, y, z] => normals.push(Vector3::new(
                parse_f64(x, idx)?,
                parse_f64(y, idx)?,
                parse_f64(z, idx)?,
            )),
            _ => {}
        }
    }
    let normals = if normals.len() == points.len() && !normals.is_empty() {
        Some(normals)
    } else {
        None
    };
    Ok((points, normals))
}

fn read_csv<R: BufRead>(reader: R) -> Result<Cloud, CloudReadError> {
    let mut points = Vec::new();
    let mut normals = Vec::new();
    let mut with_normals = false;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let idx = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 1 && line.starts_with('x') {
            with_normals = line.split(',').count() >= 6;
            continue;
        }
        let toks: Vec<&str> = line.split(',').collect();
        if toks.len() < 3 {
            return Err(CloudReadError::Parse {
                line: idx,
                message: "expected at least x,y,z".into(),
            });
        }
        points.push(Point3::new(
            parse_f64(toks[0], idx)?,
            parse_f64(toks[1], idx)?,
            parse_f64(toks[2], idx)?,
        ));
        if with_normals && toks.len() >= 6 {
            normals.push(Vector3::new(
                parse_f64(toks[3], idx)?,
                parse_f64(toks[4], idx)?,
                parse_f64(toks[5], idx)?,
            ));
        }
    }
    let normals = if normals.len() == points.len() && !normals.is_empty() {
        Some(normals)
    } else {
        None
    };
    Ok((points, normals))
}
