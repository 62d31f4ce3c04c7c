use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::sweeps::lk_pairs;
use super::SweepResult;
use crate::advection::{ensemble_value_distribution, SteadyState, ValueBins};
use crate::error::{Error, Result};

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).map_err(|e| Error::file(path, e))?,
    ))
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// `sweep.csv`, `points.csv`, `lk_scatter.csv` (when both L and K exist), one
/// `point_<g>` directory of per-realization artifacts per grid value, and
/// `report.txt` holding `report_lines`. Returns every path written.
pub fn write_sweep_outputs(
    result: &SweepResult,
    dir: &Path,
    report_lines: &[String],
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::file(dir, e))?;
    let mut written = Vec::new();
    let name = result.spec.vary.name();

    let p = dir.join("sweep.csv");
    let mut w = create(&p)?;
    writeln!(
        w,
        "grid_index,{name},realization,seed,status,fractures,K,L,C,\
         census1,census2,census3,census4,census5,census6,ck_slope,degree_slope,\
         adv_variance,adv_excess_kurtosis,error"
    )?;
    for row in &result.rows {
        let head = format!("{},{},{},{}", row.grid_index, row.value, row.realization, row.seed);
        match &row.outcome {
            Ok(r) => {
                let census = match &r.census {
                    Some(c) => c.0.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
                    None => ",,,,,".to_string(),
                };
                let m = row.advection_moments();
                writeln!(
                    w,
                    "{head},ok,{},{},{},{},{census},{},{},{},{},",
                    r.network.len(),
                    opt(r.permeability.map(|p| p.k)),
                    opt(r.mean_path_length),
                    opt(r.clustering),
                    opt(r.ck_slope),
                    opt(r.degree_slope),
                    opt(m.map(|m| m.variance)),
                    opt(m.and_then(|m| m.excess_kurtosis)),
                )?;
            }
            Err(e) => {
                let e = e.replace([',', '\n'], ";");
                writeln!(w, "{head},failed,,,,,,,,,,,,,,,{e}")?;
            }
        }
    }
    w.flush()?;
    written.push(p);

    let p = dir.join("points.csv");
    let mut w = create(&p)?;
    writeln!(w, "{name},ok,failed,K_mean,K_sd,L_mean,L_sd,C_mean,C_sd")?;
    for pt in &result.points {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            pt.value,
            pt.ok,
            pt.failed,
            opt(pt.k_mean),
            opt(pt.k_sd),
            opt(pt.l_mean),
            opt(pt.l_sd),
            opt(pt.c_mean),
            opt(pt.c_sd)
        )?;
    }
    w.flush()?;
    written.push(p);

    let pairs = lk_pairs(result);
    if !pairs.is_empty() {
        let p = dir.join("lk_scatter.csv");
        let mut w = create(&p)?;
        writeln!(w, "L,K")?;
        for (l, k) in pairs {
            writeln!(w, "{l},{k}")?;
        }
        w.flush()?;
        written.push(p);
    }

    for g in 0..result.spec.vary.len() {
        let sub = dir.join(format!("point_{g}"));
        std::fs::create_dir_all(&sub).map_err(|e| Error::file(&sub, e))?;
        let mut states: Vec<SteadyState> = Vec::new();
        for row in result.rows_at(g) {
            let Ok(r) = &row.outcome else { continue };
            let p = sub.join(format!("r{}_network.csv", row.realization));
            r.network.save_csv(&p)?;
            written.push(p);
            if let Some(s) = &r.steady {
                let p = sub.join(format!("r{}_steady.csv", row.realization));
                s.write_csv(create(&p)?)?;
                written.push(p);
                states.push(s.clone());
            }
            if let Some(k) = &r.permeability {
                let p = sub.join("permeability.csv");
                let echo = vec![
                    ("realization".to_string(), row.realization.to_string()),
                    ("seed".to_string(), row.seed.to_string()),
                ];
                crate::lbm::append_permeability_row(&p, k, &echo)?;
                if !written.contains(&p) {
                    written.push(p);
                }
            }
        }
        if !states.is_empty() {
            let p = sub.join("node_values.csv");
            ensemble_value_distribution(&states, ValueBins::default()).write_csv(create(&p)?)?;
            written.push(p);
        }
    }

    let p = dir.join("report.txt");
    let mut w = create(&p)?;
    writeln!(
        w,
        "vary={name} points={} realizations={} failed={}",
        result.spec.vary.len(),
        result.spec.realizations,
        result.failures()
    )?;
    for line in report_lines {
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    written.push(p);
    Ok(written)
}
