use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::census::{subgraph_census4, Census4, Quad};
use super::ck::{ck_from_clustering, CkSpectrum};
use super::clustering::local_clustering_all;
use super::degree::{degree_distribution, DegreeDistribution};
use super::paths::{mean_path_length, PathStats};
use crate::error::{Error, Result};
use crate::graph::FractureGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub nodes: usize,
    pub edges: usize,
    pub clustering: f64,
    pub local_clustering: Vec<f64>,
    pub degree: DegreeDistribution,
    pub paths: PathStats,
    pub ck: CkSpectrum,
    /// Absent when skipped or when the enumeration hit its cap.
    pub census: Option<Census4>,
    pub census_note: Option<String>,
}

impl MetricsReport {
    pub fn mean_path_length(&self) -> Option<f64> {
        self.paths.mean
    }

    /// Writes `degree_hist.csv`, `ck.csv`, `census.csv`, `distances.csv` and
    /// `summary.csv` into `dir`.
    pub fn write_csv_set(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::file(dir, e))?;
        let create = |name: &str| -> Result<BufWriter<File>> {
            let p = dir.join(name);
            Ok(BufWriter::new(File::create(&p).map_err(|e| Error::file(&p, e))?))
        };

        let mut w = create("degree_hist.csv")?;
        writeln!(w, "k,count,frequency")?;
        for b in &self.degree.bins {
            writeln!(w, "{},{},{}", b.k, b.count, b.frequency)?;
        }
        w.flush()?;

        let mut w = create("ck.csv")?;
        writeln!(w, "k,mean_c,nodes")?;
        for p in &self.ck.points {
            writeln!(w, "{},{},{}", p.k, p.mean_c, p.nodes)?;
        }
        w.flush()?;

        let mut w = create("census.csv")?;
        writeln!(w, "class,index,count")?;
        if let Some(c) = &self.census {
            for q in Quad::ALL {
                writeln!(w, "{q},{},{}", q.index(), c.get(q))?;
            }
        }
        w.flush()?;

        self.paths.distances.write_csv(create("distances.csv")?)?;

        let mut w = create("summary.csv")?;
        writeln!(w, "{}", Self::SUMMARY_HEADER)?;
        writeln!(w, "{}", self.summary_row())?;
        w.flush()?;
        Ok(())
    }

    pub const SUMMARY_HEADER: &'static str =
        "nodes,edges,C,L,diameter,giant_fraction,degree_slope,degree_r2,ck_slope";

    pub fn summary_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.nodes,
            self.edges,
            self.clustering,
            opt(self.paths.mean),
            self.paths.diameter,
            self.paths.giant_fraction,
            opt(self.degree.fit.map(|f| f.slope)),
            opt(self.degree.fit.map(|f| f.r_squared)),
            opt(self.ck.slope()),
        )
    }
}

/// All statistics of one graph. `census_cap = None` skips the census.
pub fn compute_report(graph: &FractureGraph, census_cap: Option<u64>) -> MetricsReport {
    let local = local_clustering_all(graph);
    let clustering = if local.is_empty() {
        0.0
    } else {
        local.iter().sum::<f64>() / local.len() as f64
    };
    let ck = ck_from_clustering(graph, &local);
    let (census, census_note) = match census_cap.map(|cap| subgraph_census4(graph, cap)) {
        None => (None, Some("skipped".to_string())),
        Some(Ok(c)) => (Some(c), None),
        Some(Err(e)) => (None, Some(e.to_string())),
    };
    MetricsReport {
        nodes: graph.n_nodes(),
        edges: graph.edge_count(),
        clustering,
        local_clustering: local,
        degree: degree_distribution(graph),
        paths: mean_path_length(graph),
        ck,
        census,
        census_note,
    }
}
