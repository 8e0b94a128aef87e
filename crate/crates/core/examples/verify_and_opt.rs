//! Checking colorings and computing the true optimum of small instances.

use std::collections::BTreeMap;

use wec::oracle::{exact_min_colors, verify_coloring};
use wec::{Color, Coloring, ColoringFile, Instance, Weight};

fn main() {
    let w = |s: &str| s.parse::<Weight>().unwrap();
    let g = Instance::from_edges([("u", "v", w("3/5")), ("u", "w", w("2/5")), ("v", "w", w("1/2"))]).unwrap();

    let same: BTreeMap<usize, Color> = (0..3).map(|i| (i, Color(1))).collect();
    let report = verify_coloring(&g, &Coloring::from_assignment(same)).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let file: ColoringFile = serde_json::from_str(r#"{"assignment": {"0": 1, "1": 1, "2": 2}}"#).unwrap();
    let report = verify_coloring(&g, &file.into()).unwrap();
    println!("second coloring proper: {}", report.proper);

    println!("fewest colors: {}", exact_min_colors(&g).unwrap());
}
