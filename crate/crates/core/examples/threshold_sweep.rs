// Count cliques, dense complete sets and complete clusters per height
// across a range of tree heights, written as CSV.

use std::error::Error;
use std::io;

use cga::cluster::{ClusterSpec, EdgeMode};
use cga::experiments::{run_threshold_sweep, write_sweep_csv, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = ClusterSpec::parse("0.5", "0.5", EdgeMode::Undirected)?;
    let mut cfg = ExperimentConfig::new(2, 2.0, 8..=10, spec);
    cfg.trials = 4;
    cfg.seed = 2024;
    cfg.scan_heights = vec![1, 2, 3];
    let reports = run_threshold_sweep(&cfg)?;
    write_sweep_csv(&cfg, &reports, io::stdout().lock())?;

    let clusters: usize = reports
        .iter()
        .flat_map(|r| &r.heights)
        .filter_map(|t| t.complete_clusters)
        .sum();
    eprintln!("{clusters} complete clusters over {} trials", reports.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
