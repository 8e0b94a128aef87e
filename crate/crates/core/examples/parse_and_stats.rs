//! Parse an instance in the `wec v1` text format and print its parameters.
//!
//! ```text
//! cargo run --example parse_and_stats [instance-file]
//! ```

use wec::offline::analyze_structure;
use wec::{compute_stats, parse_instance};

const SAMPLE: &str = "\
wec v1
# a 4-cycle with a parallel edge between a and b
edge a b 0.6
edge a b 1/3
edge b c 0.5
edge c d 3/4
edge d a 1/4
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    let instance = parse_instance(&text)?;
    let stats = compute_stats(&instance)?;
    println!(
        "{} edges on {} vertices: m = {} (exact: {}), n = {}, t = {}",
        instance.len(),
        instance.vertex_count(),
        stats.m,
        stats.m_is_exact,
        stats.n,
        stats.t
    );
    for (name, v) in &stats.per_vertex {
        println!(
            "  {name}: degree {}, weighted degree {}, m_v = {}, neighbours {}",
            v.degree, v.weighted_degree, v.m, v.neighbors
        );
    }
    let structure = analyze_structure(&instance)?;
    println!(
        "simple: {}, forest: {}, cycles: {}, y = {}",
        structure.is_simple, structure.is_forest, structure.cycle_count, structure.y
    );

    // Weights are exact: "0.6" is 3/5, and the load at a is exactly 3/5 + 1/3 + 1/4.
    assert_eq!(stats.vertex("a").unwrap().weighted_degree.to_string(), "71/60");
    Ok(())
}
