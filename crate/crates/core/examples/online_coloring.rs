//! Coloring edges as they arrive, step by step.

use wec::online::{OnlineColorer, Packing};
use wec::report::{run, Algorithm, RunOptions};
use wec::{Instance, Weight};

fn main() {
    let w = |s: &str| s.parse::<Weight>().unwrap();
    let instance = Instance::from_edges([
        ("s1", "m1", w("0.4")),
        ("s1", "m1", w("0.4")),
        ("s2", "m1", w("0.5")),
        ("s1", "m1", w("0.3")),
        ("s1", "m2", w("0.9")),
        ("s2", "m2", w("0.2")),
        ("s1", "m1", w("0.6")),
    ])
    .unwrap();

    let mut colorer = OnlineColorer::new(instance.vertex_count(), Packing::Harmonic { m: 12 });
    for (pos, e) in instance.edges().iter().enumerate() {
        let (u, v) = instance.endpoints(pos);
        let step = colorer.push(u, v, e.weight, e.arrival_index);
        let closed = step.closed.map(|c| format!(", closed {c}")).unwrap_or_default();
        println!("{} {}-{} weight {} -> color {}{closed}", e.arrival_index, e.u, e.v, e.weight, step.color);
    }
    let s1 = instance.vertex_index("s1").unwrap();
    println!("open colors at s1: {}", colorer.state().open_count(s1));

    for algo in [Algorithm::Nf, Algorithm::Harmonic] {
        let (_, report) = run(&instance, algo, &RunOptions::default()).unwrap();
        println!("{}", serde_json::to_string(&report).unwrap());
    }
}
