// List every cluster of a small graph by exhaustive search and compare
// the complete ones with the subtree scan.

use std::error::Error;

use cga::cluster::{ClusterSpec, EdgeMode};
use cga::generator::sample_graph;
use cga::search::{enumerate_clusters, enumerate_complete_clusters, DEFAULT_WORK_BUDGET};
use cga::tree::TreeParams;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = TreeParams::new(2, 4, 2.0)?;
    let g = sample_graph(&p, 3, false)?;
    let spec = ClusterSpec::parse("0.5", "0.5", EdgeMode::Undirected)?;

    let all = enumerate_clusters(&g, &spec, 5, DEFAULT_WORK_BUDGET)?;
    println!("{} clusters of size <= 5 on n = {}", all.len(), p.n());
    for c in &all.clusters {
        println!("  {:?}{}", c.set.members(), if c.complete { "  (complete)" } else { "" });
    }

    for h in 1..=2 {
        let complete = enumerate_complete_clusters(&g, &spec, h)?;
        let from_oracle = all.clusters.iter().filter(|c| c.complete && c.set.height() == h).count();
        assert_eq!(complete.len(), from_oracle);
        println!("height {h}: {} complete clusters", complete.len());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
