// Internal edge counts of complete sets against their expectation.

use std::error::Error;

use cga::cluster::{ClusterSpec, EdgeMode};
use cga::experiments::{xs_statistics, ExperimentConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = ClusterSpec::parse("0.5", "0.5", EdgeMode::Undirected)?;
    let mut cfg = ExperimentConfig::new(2, 2.0, 10..=10, spec);
    cfg.trials = 50;
    for h in 1..=4 {
        for s in xs_statistics(&cfg, h)? {
            println!(
                "h={h}  mean {:.4} +- {:.4}  expected {:.4}  variance {:.4}",
                s.mean, s.stderr, s.expected, s.variance
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
