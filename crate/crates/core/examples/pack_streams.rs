//! The bounded-space packers against the exact optimum.

use wec::binpack::{exact_min_bins, first_fit_decreasing, harmonic_pack, next_fit, typed_harmonic_pack, typed_next_fit};
use wec::bounds;
use wec::generate::{random_stream, trial_rng};
use wec::Weight;

fn main() {
    let items: Vec<Weight> = ["0.6", "0.3", "0.45", "1/3", "0.2", "0.7", "1/7", "0.15"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let nf = next_fit(&items);
    println!("NEXT-FIT: {} bins", nf.total_bins);
    for (i, bin) in nf.bins.iter().enumerate() {
        let items: Vec<String> = bin.items.iter().map(Weight::to_string).collect();
        println!("  bin {i} [{:?}] load {}: {}", bin.status, bin.load, items.join(" "));
    }
    let h = harmonic_pack(&items, 12);
    println!("HARMONIC_12: {} bins", h.total_bins);
    for bin in &h.bins {
        println!("  type {} load {}", bin.type_tag.unwrap(), bin.load);
    }
    println!(
        "FFD: {} bins, optimum: {} bins",
        first_fit_decreasing(&items).len(),
        exact_min_bins(&items).unwrap()
    );

    // Labels keep items in separate bins, as the colorers do per neighbour.
    let typed: Vec<(Weight, u32)> = items.iter().enumerate().map(|(i, &w)| (w, i as u32 % 3)).collect();
    println!(
        "typed over 3 labels: NEXT-FIT {} bins, HARMONIC {} bins",
        typed_next_fit(&typed).total_bins,
        typed_harmonic_pack(&typed, 12).total_bins
    );

    let mut rng = trial_rng(1, 0);
    let mut worst = (0.0, 0.0);
    for _ in 0..200 {
        let s = random_stream(&mut rng, 24);
        let m = exact_min_bins(&s).unwrap();
        let (a, b) = (next_fit(&s).total_bins, harmonic_pack(&s, 12).total_bins);
        assert!(a <= bounds::next_fit_bins(m) && b <= bounds::harmonic_bins(m, 12));
        worst.0 = f64::max(worst.0, a as f64 / m as f64);
        worst.1 = f64::max(worst.1, b as f64 / m as f64);
    }
    println!("200 random streams: worst NEXT-FIT/OPT {:.3}, HARMONIC/OPT {:.3}", worst.0, worst.1);
}
