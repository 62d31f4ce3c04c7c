use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::permeability::PermeabilityResult;
use super::solver::FlowField;
use crate::error::{Error, Result};

/// One CSV line per grid row, `y = 0` first.
pub fn write_raster_csv<W: Write>(mut out: W, values: &[f64], width: usize) -> Result<()> {
    for row in values.chunks(width.max(1)) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()?;
    Ok(())
}

impl FlowField {
    /// `vx.csv`, `vy.csv`, `rho.csv` and `speed_log10.csv` (NaN where the
    /// speed is zero).
    pub fn write_csv_set(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::file(dir, e))?;
        let log_speed: Vec<f64> = self
            .speed()
            .into_iter()
            .map(|s| if s > 0.0 { s.log10() } else { f64::NAN })
            .collect();
        for (name, values) in [
            ("vx.csv", &self.vx),
            ("vy.csv", &self.vy),
            ("rho.csv", &self.rho),
            ("speed_log10.csv", &log_speed),
        ] {
            let p = dir.join(name);
            let f = File::create(&p).map_err(|e| Error::file(&p, e))?;
            write_raster_csv(BufWriter::new(f), values, self.width)?;
        }
        Ok(())
    }
}

/// Append a result row, echoing `config` pairs as leading columns. The header
/// is written when the file is new or empty.
pub fn append_permeability_row(
    path: &Path,
    result: &PermeabilityResult,
    config: &[(String, String)],
) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::file(path, e))?;
    let mut w = BufWriter::new(f);
    if fresh {
        let keys: Vec<&str> = config.iter().map(|(k, _)| k.as_str()).collect();
        let sep = if keys.is_empty() { "" } else { "," };
        writeln!(w, "{}{sep}{}", keys.join(","), PermeabilityResult::CSV_HEADER)?;
    }
    let values: Vec<&str> = config.iter().map(|(_, v)| v.as_str()).collect();
    let sep = if values.is_empty() { "" } else { "," };
    writeln!(w, "{}{sep}{}", values.join(","), result.csv_row())?;
    w.flush()?;
    Ok(())
}
