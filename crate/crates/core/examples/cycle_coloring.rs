//! Offline coloring of simple graphs with edge-disjoint cycles in `m + 1` colors.

use wec::generate::{random_cactus, trial_rng};
use wec::offline::{analyze_structure, color_edge_disjoint_cycles};
use wec::oracle::{exact_min_colors, verify_coloring};
use wec::{compute_stats, Instance, Weight};

fn main() {
    let one = Weight::ONE;
    let triangle = Instance::from_edges([("a", "b", one), ("b", "c", one), ("a", "c", one)]).unwrap();
    let c = color_edge_disjoint_cycles(&triangle).unwrap();
    println!(
        "unit triangle: {} colors, m = {}, optimum {}",
        c.max_color(),
        compute_stats(&triangle).unwrap().m,
        exact_min_colors(&triangle).unwrap()
    );

    let mut rng = trial_rng(5, 0);
    let mut flagged = 0;
    for i in 0..20 {
        let g = random_cactus(&mut rng, 10, 3);
        let s = analyze_structure(&g).unwrap();
        let m = compute_stats(&g).unwrap().m;
        let col = color_edge_disjoint_cycles(&g).unwrap();
        assert!(verify_coloring(&g, &col).unwrap().proper);
        flagged += col.bound_exceeded as usize;
        println!(
            "cactus {i:2}: {} edges, {} cycles, m = {m}, colors {} (target {})",
            g.len(),
            s.cycle_count,
            col.max_color(),
            m + s.y
        );
    }
    println!("bound exceeded on {flagged} of 20");
}
