//! Every colorer on a seeded batch of random instances, with worst ratios.

use rayon::prelude::*;
use wec::generate::{random_cactus, random_forest, random_multigraph, trial_rng, MultigraphParams};
use wec::report::{run, Algorithm, RunOptions};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7u64);
    let trials = 200;
    for algo in Algorithm::ALL {
        let reports: Vec<_> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, t);
                let g = match algo {
                    Algorithm::TreeNf | Algorithm::TreeHarmonic => random_forest(&mut rng, 25, 150, 30),
                    Algorithm::Cycles => random_cactus(&mut rng, 12, 3),
                    _ => random_multigraph(&mut rng, MultigraphParams::default()),
                };
                run(&g, algo, &RunOptions::default()).unwrap().1
            })
            .collect();
        let worst = reports
            .iter()
            .map(|r| r.max_color_index as f64 / r.m as f64)
            .fold(0.0, f64::max);
        let within = reports.iter().filter(|r| r.within_bound == Some(true)).count();
        let violations: usize = reports.iter().map(|r| r.violations).sum();
        println!("{algo:>13}: worst colors/m {worst:.3}, within bound {within}/{trials}, violations {violations}");
    }
}
