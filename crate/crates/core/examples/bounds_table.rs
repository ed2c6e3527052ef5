// Evaluate the threshold quantities and tail bounds over a few tree
// heights.

use std::error::Error;

use cga::bounds::{
    binom_tail_bound, binom_tail_simple, binomial_upper_tail, clique_count_lower_bound,
    exact_clique_probability, janson_bounds, m_star, sparse_set_bound, tail_threshold,
    threshold_constants,
};
use cga::tree::TreeParams;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (b, c, alpha) = (2, 2.0, 0.5);
    println!("m* = {}", m_star(alpha, b, c)?);
    println!("{:>3} {:>9} {:>7} {:>7} {:>12} {:>12} {:>12}", "H", "n", "h*", "h_eps", "cliques_lb", "cliques", "sparse_1");
    for height in [8, 12, 16, 20] {
        let p = TreeParams::new(b, height, c)?;
        let k = threshold_constants(&p, alpha, 0.1)?;
        let blocks = p.block_count(2) as f64;
        println!(
            "{height:>3} {:>9} {:>7.3} {:>7.3} {:>12.3e} {:>12.3} {:>12.3e}",
            p.n(),
            k.h_star,
            k.h_epsilon,
            clique_count_lower_bound(2, &p)?.value,
            blocks * exact_clique_probability(2, &p)?.value,
            sparse_set_bound(1, alpha, &p)?.value,
        );
    }

    let (n, prob) = (100, 0.01);
    let s = tail_threshold(n, prob, 10.0);
    println!("Pr(Bin(100, 0.01) >= {s}) = {:.3e}", binomial_upper_tail(n, prob, s));
    println!("  tail bound     {:.3e}", binom_tail_bound(n, prob, 10.0)?.value);
    println!("  simple bound   {:.3e}", binom_tail_simple(n, prob, s as f64)?.value);
    let j = janson_bounds(4.0, 2.0)?;
    println!("Janson, mu=4, t=2: upper {:.4} lower {:.4}", j.upper, j.lower);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
