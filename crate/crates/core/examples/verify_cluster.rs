// Check candidate sets against the (alpha, beta)-cluster definition and
// see which region of the tree breaks external sparseness.

use std::error::Error;

use cga::cluster::{event_report, is_cluster, ClusterSpec, EdgeMode};
use cga::graph::Graph;
use cga::tree::{TreeParams, VertexSet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = TreeParams::new(2, 3, 2.0)?;
    // a 4-cycle on 0..4, a path on 4..8 and the bridge 3-4
    let edges = [(0, 1), (2, 3), (0, 2), (1, 3), (4, 5), (6, 7), (4, 6), (3, 4)];
    let g = Graph::from_edges(p, false, 0, edges)?;
    let spec = ClusterSpec::parse("0.5", "0.5", EdgeMode::Undirected)?;

    for members in [vec![0, 1], vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![0, 4]] {
        let m = VertexSet::new(members, &p)?;
        let r = event_report(&m, &g, &spec, p.height())?;
        println!(
            "{:?}: cluster={} dense={} e1={} e2={} e3={}",
            m.members(),
            is_cluster(&m, &g, &spec),
            r.dense,
            r.e1,
            r.e2,
            r.e3
        );
        for (name, w) in [("dense", r.dense_witness), ("e1", r.e1_witness), ("e2", r.e2_witness)] {
            if let Some(w) = w {
                println!("    {name} broken by vertex {} ({} edges)", w.vertex, w.edges);
            }
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
