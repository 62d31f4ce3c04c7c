use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fracnet::advection::{default_terminals, node_value_distribution, solve_steady, ValueBins};
use fracnet::config::{parse_config, RunManifest, RunOptions};
use fracnet::dfn::{generate_network, FractureNetwork, GeneratorConfig};
use fracnet::graph::build_graph;
use fracnet::harness::{
    correlate_rows, run_sweep, sweep_azimuth, sweep_gamma, sweep_hub_growth, write_sweep_outputs,
    SweepResult, SweepSpec, Vary,
};
use fracnet::lbm::{append_permeability_row, rasterize, simulate, Mask};
use fracnet::metrics::compute_report;
use fracnet::{Error, Result};

#[derive(Parser)]
#[command(name = "fracnet", version, about = "Flow complexity in 2D fracture networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// key=value configuration file; missing keys take their defaults
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the seed from the config
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for all outputs [default: runs/<timestamp>]
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// Network CSV to load instead of generating one
    #[arg(long)]
    network: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a fracture network CSV
    Generate {
        #[command(flatten)]
        common: Common,
        /// Network CSV path [default: <out-dir>/network.csv]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the intersection graph and write its edge list
    Graph {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        /// Edge list path [default: <out-dir>/edges.csv]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Topological statistics of the fracture graph
    Metrics {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
    },
    /// Steady Laplacian advection between the default terminals
    Advect {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        /// Node value path [default: <out-dir>/steady.csv]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lattice-Boltzmann flow and permeability
    Lbm {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        /// PGM mask to simulate instead of a rasterized network
        #[arg(long, conflicts_with = "network")]
        mask: Option<PathBuf>,
        /// Raster size for the network [default: grid_n or n]
        #[arg(long)]
        grid: Option<usize>,
        /// Permeability CSV to append to [default: <out-dir>/permeability.csv]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo sweep over one generator parameter
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Config key, `azimuth` or `growth`
        #[arg(long)]
        vary: String,
        /// Comma-separated grid; growth pairs are written HG:BG
        #[arg(long)]
        values: String,
        /// Realizations per grid point [default: from config]
        #[arg(long)]
        realizations: Option<usize>,
        #[arg(long)]
        lbm: bool,
        #[arg(long)]
        advect: bool,
        #[arg(long)]
        metrics: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Generate { .. } => "generate",
            Command::Graph { .. } => "graph",
            Command::Metrics { .. } => "metrics",
            Command::Advect { .. } => "advect",
            Command::Lbm { .. } => "lbm",
            Command::Sweep { .. } => "sweep",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Generate { common, .. }
            | Command::Graph { common, .. }
            | Command::Metrics { common, .. }
            | Command::Advect { common, .. }
            | Command::Lbm { common, .. }
            | Command::Sweep { common, .. } => common,
        }
    }
}

struct Run {
    config: GeneratorConfig,
    options: RunOptions,
    out_dir: PathBuf,
    outputs: Vec<PathBuf>,
}

impl Run {
    fn setup(common: &Common) -> Result<Self> {
        let (mut config, options) = match &common.config {
            Some(p) => parse_config(p)?,
            None => (GeneratorConfig::default(), RunOptions::default()),
        };
        if let Some(seed) = common.seed {
            config.seed = seed;
        }
        config.validate()?;
        let out_dir = common.out_dir.clone().unwrap_or_else(|| {
            let stamp = chrono::Utc::now().format("%Y%m%d-%H%M%S");
            PathBuf::from("runs").join(stamp.to_string())
        });
        std::fs::create_dir_all(&out_dir).map_err(|e| Error::File {
            path: out_dir.clone(),
            source: e,
        })?;
        Ok(Self {
            config,
            options,
            out_dir,
            outputs: Vec::new(),
        })
    }

    fn path(&self, explicit: &Option<PathBuf>, default: &str) -> PathBuf {
        explicit
            .clone()
            .unwrap_or_else(|| self.out_dir.join(default))
    }

    fn network(&self, input: &Input) -> Result<FractureNetwork> {
        match &input.network {
            Some(p) => FractureNetwork::load_csv(p, self.config.clone()),
            None => generate_network(&self.config),
        }
    }

    fn create(&mut self, path: PathBuf) -> Result<BufWriter<File>> {
        let f = File::create(&path).map_err(|e| Error::File {
            path: path.clone(),
            source: e,
        })?;
        self.outputs.push(path);
        Ok(BufWriter::new(f))
    }
}

fn execute(command: &Command, run: &mut Run) -> Result<()> {
    match command {
        Command::Generate { out, .. } => {
            let network = generate_network(&run.config)?;
            let p = run.path(out, "network.csv");
            network.save_csv(&p)?;
            run.outputs.push(p);
        }
        Command::Graph { input, out, .. } => {
            let graph = build_graph(&run.network(input)?);
            let p = run.path(out, "edges.csv");
            graph.save_edge_list(&p)?;
            run.outputs.push(p);
        }
        Command::Metrics { input, .. } => {
            let graph = build_graph(&run.network(input)?);
            let report = compute_report(&graph, Some(run.options.census_cap));
            let dir = run.out_dir.join("metrics");
            report.write_csv_set(&dir)?;
            if let Some(note) = &report.census_note {
                eprintln!("census: {note}");
            }
            run.outputs.push(dir);
        }
        Command::Advect { input, out, .. } => {
            let graph = build_graph(&run.network(input)?);
            let (sources, sinks) = default_terminals(graph.n_nodes())?;
            let state = solve_steady(&graph, &sources, &sinks, &run.options.advect)?;
            let w = run.create(run.path(out, "steady.csv"))?;
            state.write_csv(w)?;
            let w = run.create(run.out_dir.join("node_values.csv"))?;
            node_value_distribution(&state, ValueBins::default()).write_csv(w)?;
            let w = run.create(run.out_dir.join("edge_flux.csv"))?;
            state.write_flux_csv(w, &graph, run.options.advect.epsilon)?;
        }
        Command::Lbm {
            input,
            mask,
            grid,
            out,
            ..
        } => {
            let mask = match mask {
                Some(p) => Mask::load_pgm(p)?,
                None => {
                    let network = run.network(input)?;
                    rasterize(&network, grid.unwrap_or(run.options.grid_for(&run.config)))?
                }
            };
            let pgm = run.out_dir.join("mask.pgm");
            mask.save_pgm(&pgm, false)?;
            run.outputs.push(pgm);
            let lbm = simulate(mask, &run.options.lbm)?;
            let fields = run.out_dir.join("fields");
            lbm.flow.write_csv_set(&fields)?;
            run.outputs.push(fields);
            let p = run.path(out, "permeability.csv");
            append_permeability_row(&p, &lbm.result, &run.options.lbm.to_kv())?;
            run.outputs.push(p);
            if !lbm.result.converged {
                // outputs are kept; the run still reports failure
                return Err(Error::NonConvergence {
                    steps: lbm.result.iterations,
                    residual: lbm.flow.residual,
                });
            }
        }
        Command::Sweep {
            vary,
            values,
            realizations,
            lbm,
            advect,
            metrics,
            ..
        } => {
            let mut spec = SweepSpec::new(run.config.clone(), Vary::parse(vary, values)?);
            spec.options = run.options.clone();
            spec.realizations = realizations.unwrap_or(run.options.realizations);
            spec.lbm = *lbm;
            spec.advect = *advect;
            spec.metrics = *metrics;
            let (result, mut lines) = sweep(&spec)?;
            match correlate_rows(&result) {
                Ok(c) => lines.push(format!(
                    "l_vs_k pairs={} spearman={} pearson={}",
                    c.n,
                    fmt(c.spearman),
                    fmt(c.pearson)
                )),
                Err(e) => lines.push(format!("l_vs_k {e}")),
            }
            let written = write_sweep_outputs(&result, &run.out_dir, &lines)?;
            run.outputs.extend(written);
        }
    }
    Ok(())
}

fn fmt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| format!("{x:.4}"))
}

/// Routes the grid to the specialised sweep it matches.
fn sweep(spec: &SweepSpec) -> Result<(SweepResult, Vec<String>)> {
    Ok(match &spec.vary {
        Vary::Key { name, .. } if name == "gamma" && spec.lbm => {
            let r = sweep_gamma(spec)?;
            let line = format!(
                "k_vs_gamma spearman={} non_increasing={}",
                fmt(r.verdict.spearman),
                r.verdict.non_increasing
            );
            (r.result, vec![line])
        }
        Vary::Azimuth(_) if spec.lbm => {
            let r = sweep_azimuth(spec)?;
            (r.result, vec![format!("k_vs_azimuth spread={}", r.spread)])
        }
        Vary::Growth(_) => {
            let r = sweep_hub_growth(spec, ValueBins::default())?;
            let lines = r
                .distributions
                .iter()
                .zip(&r.result.points)
                .map(|(d, p)| {
                    let kurt = d.moments.and_then(|m| m.excess_kurtosis);
                    format!("growth={} excess_kurtosis={}", p.value, fmt(kurt))
                })
                .collect();
            (r.result, lines)
        }
        _ => (run_sweep(spec)?, Vec::new()),
    })
}

fn write_manifest(command: &str, run: &Run, start: Instant) -> Result<()> {
    let mut m = RunManifest::new(command, &run.config, &run.options);
    m.outputs = run.outputs.clone();
    m.wall_clock_secs = start.elapsed().as_secs_f64();
    m.save(&run.out_dir.join("manifest.txt"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let status = Run::setup(cli.command.common()).and_then(|mut run| {
        let result = execute(&cli.command, &mut run);
        write_manifest(cli.command.name(), &run, start)?;
        result.map(|()| run.out_dir)
    });
    match status {
        Ok(dir) => {
            println!("outputs in {}", dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
