//! Field snapshot files, CSV tables and trajectory export.
//!
//! Snapshot layout (little-endian): the 8-byte magic `KGZFLD01`, `R: f64`,
//! `M: u64`, `kind: u8` (0 physical, 1 spectral), `complex: u8`, six zero
//! bytes, then `M` pairs `(re: f64, im: f64)`.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use tempfile::NamedTempFile;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::radial::{PhysField, RadialGrid, SpectralField};

const MAGIC: &[u8; 8] = b"KGZFLD01";

/// Formats a float with 17 significant digits, which round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A field in either representation, as stored in a snapshot file.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldData {
    Phys(PhysField),
    Spec(SpectralField),
}

impl FieldData {
    pub fn grid(&self) -> &RadialGrid {
        match self {
            FieldData::Phys(f) => f.grid(),
            FieldData::Spec(f) => f.grid(),
        }
    }

    fn parts(&self) -> (u8, &[Complex64]) {
        match self {
            FieldData::Phys(f) => (0, f.values()),
            FieldData::Spec(f) => (1, f.coeffs()),
        }
    }

    /// Physical values, transforming if needed.
    pub fn to_physical(&self) -> PhysField {
        match self {
            FieldData::Phys(f) => f.clone(),
            FieldData::Spec(f) => f.to_physical(),
        }
    }
}

/// Writes `contents` to a temporary file next to `path`, then renames it over `path`.
fn write_atomic(path: &Path, contents: impl FnOnce(&mut BufWriter<&File>) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let tmp = NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        contents(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn write_field(path: &Path, field: &FieldData) -> Result<()> {
    let grid = field.grid();
    let (kind, data) = field.parts();
    let complex = data.iter().any(|z| z.im != 0.0) as u8;
    write_atomic(path, |w| {
        w.write_all(MAGIC)?;
        w.write_all(&grid.radius().to_le_bytes())?;
        w.write_all(&(grid.modes() as u64).to_le_bytes())?;
        w.write_all(&[kind, complex, 0, 0, 0, 0, 0, 0])?;
        for z in data {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
        Ok(())
    })
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn read_field(path: &Path) -> Result<FieldData> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("{}: not a field snapshot", path.display())));
    }
    let radius = read_f64(&mut r)?;
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    let modes = usize::try_from(u64::from_le_bytes(b)).map_err(|_| Error::Format("mode count overflows".into()))?;
    r.read_exact(&mut b)?;
    let kind = b[0];
    let grid = RadialGrid::new(radius, modes)?;
    let data = (0..modes)
        .map(|_| Ok(Complex64::new(read_f64(&mut r)?, read_f64(&mut r)?)))
        .collect::<Result<Vec<_>>>()?;
    if r.read(&mut b)? != 0 {
        return Err(Error::Format(format!("{}: trailing bytes", path.display())));
    }
    match kind {
        0 => Ok(FieldData::Phys(PhysField::new(&grid, data)?)),
        1 => Ok(FieldData::Spec(SpectralField::new(&grid, data)?)),
        k => Err(Error::Format(format!("{}: unknown field kind {k}", path.display()))),
    }
}

/// Writes `header` and `rows` as comma-separated text, atomically.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    write_atomic(path, |w| {
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(header).map_err(csv_error)?;
        for row in rows {
            csv.write_record(row).map_err(csv_error)?;
        }
        csv.flush()?;
        Ok(())
    })
}

fn csv_error(e: csv::Error) -> Error {
    Error::Format(e.to_string())
}

/// Plotting export of a field: `(r, re, im)` or `(xi, re, im)`.
pub fn write_field_csv(path: &Path, field: &FieldData) -> Result<()> {
    let grid = field.grid();
    let (kind, data) = field.parts();
    let axis = |i| if kind == 0 { grid.r(i) } else { grid.xi(i) };
    let rows: Vec<Vec<String>> = data
        .iter()
        .enumerate()
        .map(|(i, z)| vec![fmt_f64(axis(i)), fmt_f64(z.re), fmt_f64(z.im)])
        .collect();
    write_csv(path, &[if kind == 0 { "r" } else { "xi" }, "re", "im"], &rows)
}

/// Writes `key=value` lines, atomically.
pub fn write_manifest(path: &Path, entries: &[(String, String)]) -> Result<()> {
    write_atomic(path, |w| {
        for (k, v) in entries {
            writeln!(w, "{k}={v}")?;
        }
        Ok(())
    })
}

/// Writes `snapshots/{u,n}_NNNNN.bin`, `trajectory.csv` with
/// `(t, energy, u_l2, n_l2)` and `manifest.txt` under `dir`.
pub fn export_trajectory(traj: &Trajectory, dir: &Path) -> Result<()> {
    let snaps = dir.join("snapshots");
    fs::create_dir_all(&snaps)?;
    for (i, s) in traj.snapshots.iter().enumerate() {
        write_field(&snaps.join(format!("u_{i:05}.bin")), &FieldData::Phys(s.state.u.clone()))?;
        write_field(&snaps.join(format!("n_{i:05}.bin")), &FieldData::Phys(s.state.n.clone()))?;
    }
    let rows: Vec<Vec<String>> = traj
        .snapshots
        .iter()
        .map(|s| vec![fmt_f64(s.t()), fmt_f64(s.energy), fmt_f64(s.u_l2), fmt_f64(s.n_l2)])
        .collect();
    write_csv(&dir.join("trajectory.csv"), &["t", "energy", "u_l2", "n_l2"], &rows)?;
    write_manifest(&dir.join("manifest.txt"), &traj.config.manifest())
}
