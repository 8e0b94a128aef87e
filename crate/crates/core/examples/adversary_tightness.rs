//! Worst-case inputs and how closely the algorithms follow the predictions.

use wec::adversary::{composed_family, gen_composed_tightness, gen_harmonic_worstcase, gen_nf_worstcase};
use wec::binpack::{exact_min_bins_with_limit, harmonic_pack, lower_bound, next_fit};
use wec::compute_stats;
use wec::online::color_online_harmonic;

fn main() {
    for p in [4, 16, 30] {
        let (s, pred) = gen_nf_worstcase(p).unwrap();
        let opt = exact_min_bins_with_limit(&s, s.len()).unwrap();
        println!(
            "NEXT-FIT p={p}: {} bins (predicted {}), optimum {opt} (predicted {})",
            next_fit(&s).total_bins,
            pred.predicted_total,
            pred.part("optimum")
        );
    }

    let (s, pred) = gen_harmonic_worstcase(12, 420).unwrap();
    let bins = harmonic_pack(&s, 12).total_bins;
    println!(
        "HARMONIC_12 n=420: {bins} bins (predicted {}), lower bound {}, ratio {:.4}",
        pred.predicted_total,
        lower_bound(&s),
        bins as f64 / lower_bound(&s) as f64
    );

    for k in [1, 2, 4, 8, 16] {
        let (k, per_pair, per_hub) = composed_family(k);
        let (g, pred) = gen_composed_tightness(k, per_pair, per_hub).unwrap();
        let colors = color_online_harmonic(&g, 12).max_color();
        let m = compute_stats(&g).unwrap().m;
        println!(
            "composed k={k:2}: {:6} edges, max color {colors} (predicted {}), m = {m}, ratio {:.4}",
            g.len(),
            pred.part("max_color_index"),
            colors as f64 / m as f64
        );
    }
}
