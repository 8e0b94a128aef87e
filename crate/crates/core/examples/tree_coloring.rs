//! Offline coloring of a multigraph forest.

use wec::generate::{random_forest, trial_rng};
use wec::offline::{color_tree_harmonic, color_tree_nf};
use wec::oracle::{check_next_fit_transcript, verify_coloring, vertex_transcript};
use wec::{bounds, compute_stats};

fn main() {
    let forest = random_forest(&mut trial_rng(11, 0), 12, 60, 30);
    let stats = compute_stats(&forest).unwrap();
    println!("{} edges, m = {}", forest.len(), stats.m);

    let nf = color_tree_nf(&forest).unwrap();
    let h = color_tree_harmonic(&forest, 12).unwrap();
    assert!(verify_coloring(&forest, &nf).unwrap().proper);
    assert!(verify_coloring(&forest, &h).unwrap().proper);
    println!("tree-nf: {} colors (bound {})", nf.max_color(), bounds::tree_nf_colors(stats.m));
    println!(
        "tree-harmonic: {} colors (bound {})",
        h.max_color(),
        bounds::tree_harmonic_colors(stats.m, 12)
    );

    // Seen from any single vertex, tree-nf packs its edges NEXT-FIT style.
    let busiest = (0..forest.vertex_count())
        .max_by_key(|&x| forest.incidence()[x].len())
        .unwrap();
    let transcript = vertex_transcript(&forest, &nf, busiest);
    let colors: Vec<String> = transcript.iter().map(|(w, c)| format!("{w}:{c}")).collect();
    println!("at {}: {}", forest.vertices()[busiest], colors.join(" "));
    let bins = check_next_fit_transcript(&transcript, true).unwrap();
    println!("  {bins} bins, m_v = {}", stats.per_vertex[&forest.vertices()[busiest]].m);
}
