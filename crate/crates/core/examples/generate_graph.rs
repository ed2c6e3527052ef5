// Sample a CGA graph, look at its degree profile by pair height, and
// round-trip it through the edge-list format.

use std::error::Error;

use cga::generator::{expected_edge_count, sample_graph};
use cga::graph::Graph;
use cga::tree::{pair_height, TreeParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = TreeParams::new(2, 10, 2.0)?;
    let g = sample_graph(&p, 7, false)?;
    println!("{}", g.header_line());
    println!("edges: {} (expected {:.1})", g.edge_count(), expected_edge_count(&p));

    let mut by_height = vec![0usize; p.height() as usize + 1];
    for (u, v) in g.edges() {
        by_height[pair_height(u, v, &p)? as usize] += 1;
    }
    for (h, count) in by_height.iter().enumerate().skip(1) {
        println!("  height {h:2}: {count}");
    }

    let text = g.to_edge_list_string();
    let back = Graph::parse_edge_list(&text)?;
    assert_eq!(back, g);
    println!("edge list round-trips ({} bytes)", text.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
