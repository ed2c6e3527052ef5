// How often does a graph contain an externally sparse set smaller than
// m*, and how does that compare with the union bound?

use std::error::Error;

use cga::cluster::{ClusterSpec, EdgeMode};
use cga::experiments::{trend_sparse_below_mstar, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = ClusterSpec::parse("0.5", "0.5", EdgeMode::Undirected)?;
    let mut cfg = ExperimentConfig::new(2, 2.0, 4..=9, spec);
    cfg.trials = 100;
    cfg.seed = 9;
    for pt in trend_sparse_below_mstar(&cfg)? {
        for s in &pt.sizes {
            println!(
                "H={:2} m={} any={:.3} +- {:.3}  per-set={:.4}  per-set bound={:.4}  union bound={:.4}",
                pt.tree_height,
                s.m,
                s.any.rate(),
                s.any.stderr(),
                s.per_set.map_or(f64::NAN, |r| r.rate()),
                s.per_set_bound.value,
                s.union_bound
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
