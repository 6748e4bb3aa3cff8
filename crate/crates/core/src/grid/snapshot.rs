//! Field snapshot files.
//!
//! Layout: 32-byte header — magic "QFLD", version u32, dim u32, n[3] u32,
//! element kind u32 (0 = real, 1 = complex, 2 = spinor), 4 reserved bytes —
//! followed by little-endian f64 payload in row-major order. Complex values
//! serialize as (re, im) pairs, spinors as (up_re, up_im, down_re, down_im).

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::{ComplexField, GridSpec, ScalarField, SpinorField};
use crate::error::{QsimError, Result};

pub const MAGIC: &[u8; 4] = b"QFLD";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Real = 0,
    Complex = 1,
    Spinor = 2,
}

impl ElementKind {
    fn from_u32(v: u32) -> Result<Self> {
        match v {
            0 => Ok(ElementKind::Real),
            1 => Ok(ElementKind::Complex),
            2 => Ok(ElementKind::Spinor),
            other => Err(QsimError::SnapshotFormat(format!(
                "unknown element kind {other}"
            ))),
        }
    }

    fn doubles_per_point(self) -> usize {
        match self {
            ElementKind::Real => 1,
            ElementKind::Complex => 2,
            ElementKind::Spinor => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotHeader {
    pub version: u32,
    pub dim: u32,
    pub n: [u32; 3],
    pub kind: ElementKind,
}

/// Payload read back from a snapshot; geometry (lengths/origin) is not part
/// of the format and must be re-attached from the run configuration.
#[derive(Debug, Clone)]
pub enum SnapshotData {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
    Spinor(Vec<[Complex64; 2]>),
}

enum Payload<'a> {
    Real(&'a [f64]),
    Complex(&'a [Complex64]),
    Spinor(&'a [Complex64], &'a [Complex64]),
}

fn write_impl(path: &Path, grid: &GridSpec, payload: Payload<'_>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(grid.dim() as u32).to_le_bytes())?;
    for i in 0..3 {
        w.write_all(&(grid.n()[i] as u32).to_le_bytes())?;
    }
    let kind = match payload {
        Payload::Real(_) => ElementKind::Real,
        Payload::Complex(_) => ElementKind::Complex,
        Payload::Spinor(..) => ElementKind::Spinor,
    };
    w.write_all(&(kind as u32).to_le_bytes())?;
    w.write_all(&[0u8; 4])?; // reserved, pads header to 32 bytes
    match payload {
        Payload::Real(vals) => {
            for v in vals {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        Payload::Complex(vals) => {
            for v in vals {
                w.write_all(&v.re.to_le_bytes())?;
                w.write_all(&v.im.to_le_bytes())?;
            }
        }
        Payload::Spinor(up, down) => {
            for (u, d) in up.iter().zip(down) {
                w.write_all(&u.re.to_le_bytes())?;
                w.write_all(&u.im.to_le_bytes())?;
                w.write_all(&d.re.to_le_bytes())?;
                w.write_all(&d.im.to_le_bytes())?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub trait Snapshotable {
    fn write_snapshot_to(&self, path: &Path) -> Result<()>;
}

impl Snapshotable for ScalarField {
    fn write_snapshot_to(&self, path: &Path) -> Result<()> {
        write_impl(path, &self.grid, Payload::Real(&self.values))
    }
}

impl Snapshotable for ComplexField {
    fn write_snapshot_to(&self, path: &Path) -> Result<()> {
        write_impl(path, &self.grid, Payload::Complex(&self.values))
    }
}

impl Snapshotable for SpinorField {
    fn write_snapshot_to(&self, path: &Path) -> Result<()> {
        write_impl(path, &self.grid, Payload::Spinor(&self.up, &self.down))
    }
}

pub fn write_snapshot<T: Snapshotable>(field: &T, path: impl AsRef<Path>) -> Result<()> {
    field.write_snapshot_to(path.as_ref())
}

pub fn read_snapshot(path: impl AsRef<Path>) -> Result<(SnapshotHeader, SnapshotData)> {
    let mut r = BufReader::new(File::open(path.as_ref())?);
    let mut head = [0u8; 32];
    r.read_exact(&mut head)
        .map_err(|_| QsimError::SnapshotFormat("file shorter than 32-byte header".into()))?;
    if &head[0..4] != MAGIC {
        return Err(QsimError::SnapshotFormat("bad magic (expected QFLD)".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(head[o..o + 4].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(QsimError::SnapshotFormat(format!(
            "unsupported version {version}"
        )));
    }
    let dim = u32_at(8);
    let n = [u32_at(12), u32_at(16), u32_at(20)];
    let kind = ElementKind::from_u32(u32_at(24))?;
    let points = n.iter().map(|&v| v.max(1) as usize).product::<usize>();
    let doubles = points * kind.doubles_per_point();
    let mut buf = vec![0u8; doubles * 8];
    r.read_exact(&mut buf)
        .map_err(|_| QsimError::SnapshotFormat("truncated payload".into()))?;
    let mut vals = Vec::with_capacity(doubles);
    for chunk in buf.chunks_exact(8) {
        vals.push(f64::from_le_bytes(chunk.try_into().unwrap()));
    }
    let data = match kind {
        ElementKind::Real => SnapshotData::Real(vals),
        ElementKind::Complex => SnapshotData::Complex(
            vals.chunks_exact(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect(),
        ),
        ElementKind::Spinor => SnapshotData::Spinor(
            vals.chunks_exact(4)
                .map(|c| [Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3])])
                .collect(),
        ),
    };
    Ok((
        SnapshotHeader {
            version,
            dim,
            n,
            kind,
        },
        data,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_32_bytes_and_round_trips() {
        let dir = std::env::temp_dir().join("qsim_snapshot_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("field.qfld");

        let g = GridSpec::new(2, &[8, 16], &[1.0, 2.0], &[0.0, 0.0]).unwrap();
        let f = ScalarField::from_fn(&g, |p| p[0] + 10.0 * p[1]);
        write_snapshot(&f, &path).unwrap();

        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(bytes.len(), 32 + 8 * g.point_count());
        assert_eq!(&bytes[0..4], b"QFLD");

        let (h, data) = read_snapshot(&path).unwrap();
        assert_eq!(h.dim, 2);
        assert_eq!(h.n, [8, 16, 1]);
        assert_eq!(h.kind, ElementKind::Real);
        match data {
            SnapshotData::Real(vals) => assert_eq!(vals, f.values),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn spinor_interleaving() {
        let dir = std::env::temp_dir().join("qsim_snapshot_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("spinor.qfld");

        let g = GridSpec::new(1, &[8], &[1.0], &[0.0]).unwrap();
        let s = SpinorField::from_fn(&g, |p| {
            (
                Complex64::new(p[0], 1.0),
                Complex64::new(-p[0], 2.0),
            )
        });
        write_snapshot(&s, &path).unwrap();
        let (h, data) = read_snapshot(&path).unwrap();
        assert_eq!(h.kind, ElementKind::Spinor);
        match data {
            SnapshotData::Spinor(vals) => {
                assert_eq!(vals.len(), 8);
                for (i, v) in vals.iter().enumerate() {
                    assert_eq!(v[0], s.up[i]);
                    assert_eq!(v[1], s.down[i]);
                }
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn rejects_garbage() {
        let dir = std::env::temp_dir().join("qsim_snapshot_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.qfld");
        std::fs::write(&path, b"NOPE").unwrap();
        assert!(read_snapshot(&path).is_err());
    }
}
