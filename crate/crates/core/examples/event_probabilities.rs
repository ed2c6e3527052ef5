// Estimate how often a placed set is internally dense and sparse towards
// each of the three external regions.

use std::error::Error;

use cga::cluster::{ClusterSpec, EdgeMode};
use cga::experiments::{estimate_event_probs, ExperimentConfig, Placement, SetTemplate};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = ClusterSpec::parse("0.5", "0.5", EdgeMode::Undirected)?;
    let mut cfg = ExperimentConfig::new(2, 2.0, 8..=10, spec);
    cfg.trials = 50;
    cfg.seed = 5;
    cfg.hstar = Some(3);
    let template = SetTemplate {
        height: 2,
        size: 3,
        placement: Placement::Random,
    };
    for e in estimate_event_probs(&cfg, &template)? {
        println!(
            "H={:2} h*={} sets={:5}  D {:.3}  E1 {:.3}  E2 {:.3}  E3 {:.3}  all {:.4} +- {:.4}",
            e.tree_height,
            e.h_star_used,
            e.all.total,
            e.dense.rate(),
            e.e1.rate(),
            e.e2.rate(),
            e.e3.rate(),
            e.all.rate(),
            e.all.stderr()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
