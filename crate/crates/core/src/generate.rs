//! Seeded random instances and weight streams.
//!
//! Weights are drawn uniformly from the grid `{i/1000 : 1 <= i <= 1000}`.
//! Every generator takes the RNG explicitly; [`trial_rng`] derives an
//! independent stream per trial from one seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binpack::Label;
use crate::instance::Instance;
use crate::weight::Weight;

pub const GRID: i64 = 1000;

/// The RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn grid_weight<R: Rng>(rng: &mut R) -> Weight {
    Weight::new(rng.random_range(1..=GRID), GRID).unwrap()
}

pub fn random_stream<R: Rng>(rng: &mut R, len: usize) -> Vec<Weight> {
    (0..len).map(|_| grid_weight(rng)).collect()
}

/// Items labelled uniformly from `0..labels`.
pub fn random_typed_stream<R: Rng>(rng: &mut R, len: usize, labels: u32) -> Vec<(Weight, Label)> {
    (0..len)
        .map(|_| (grid_weight(rng), rng.random_range(0..labels.max(1))))
        .collect()
}

fn vertex_name(i: usize) -> String {
    format!("v{i:03}")
}

fn build<R: Rng>(rng: &mut R, pairs: Vec<(usize, usize)>) -> Instance {
    Instance::from_edges(
        pairs
            .into_iter()
            .map(|(u, v)| (vertex_name(u), vertex_name(v), grid_weight(rng))),
    )
    .expect("generated pairs have distinct endpoints")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultigraphParams {
    pub vertices: usize,
    pub edges: usize,
    /// Probability that an edge repeats an earlier endpoint pair.
    pub multi_edge_rate: f64,
    pub max_degree: usize,
}

impl Default for MultigraphParams {
    fn default() -> Self {
        MultigraphParams {
            vertices: 20,
            edges: 100,
            multi_edge_rate: 0.3,
            max_degree: 30,
        }
    }
}

/// Random multigraph with at most `params.edges` edges (fewer if the degree
/// cap leaves no room) and every degree at most `params.max_degree`.
pub fn random_multigraph<R: Rng>(rng: &mut R, params: MultigraphParams) -> Instance {
    let n = params.vertices.max(2);
    let mut degree = vec![0usize; n];
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(params.edges);
    let mut misses = 0;
    while pairs.len() < params.edges.max(1) && misses < 50 * n {
        let (u, v) = if !pairs.is_empty() && rng.random_bool(params.multi_edge_rate) {
            pairs[rng.random_range(0..pairs.len())]
        } else {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n - 1);
            (u, if v >= u { v + 1 } else { v })
        };
        if degree[u] >= params.max_degree || degree[v] >= params.max_degree {
            misses += 1;
            continue;
        }
        degree[u] += 1;
        degree[v] += 1;
        pairs.push((u, v));
    }
    build(rng, pairs)
}

/// Random spanning forest on `n` vertices: vertex `i` attaches to a uniform
/// earlier vertex, or starts a new component with probability `split`.
fn random_tree_pairs<R: Rng>(rng: &mut R, n: usize, split: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 1..n {
        if !rng.random_bool(split) {
            pairs.push((rng.random_range(0..i), i));
        }
    }
    pairs
}

/// Random multigraph forest: a random forest whose edges are given extra
/// parallel copies until `edges` edges exist or degrees hit `max_degree`.
/// Arrival order is shuffled.
pub fn random_forest<R: Rng>(rng: &mut R, vertices: usize, edges: usize, max_degree: usize) -> Instance {
    let n = vertices.max(2);
    let mut tree = random_tree_pairs(rng, n, 0.1);
    if tree.is_empty() {
        tree.push((0, 1));
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in &tree {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut pairs = tree.clone();
    let mut misses = 0;
    while pairs.len() < edges && misses < 50 * n {
        let (u, v) = tree[rng.random_range(0..tree.len())];
        if degree[u] >= max_degree || degree[v] >= max_degree {
            misses += 1;
            continue;
        }
        degree[u] += 1;
        degree[v] += 1;
        pairs.push((u, v));
    }
    pairs.shuffle(rng);
    build(rng, pairs)
}

/// Random simple graph whose cycles are pairwise edge-disjoint: a random
/// spanning tree plus up to `chords` chords, each closing a cycle over tree
/// edges that lie on no earlier cycle. Arrival order is shuffled.
pub fn random_cactus<R: Rng>(rng: &mut R, vertices: usize, chords: usize) -> Instance {
    let n = vertices.max(2);
    let parent: Vec<usize> = (0..n).map(|i| if i == 0 { 0 } else { rng.random_range(0..i) }).collect();
    let depth: Vec<usize> = {
        let mut d = vec![0; n];
        for i in 1..n {
            d[i] = d[parent[i]] + 1;
        }
        d
    };
    // on_cycle[i]: the tree edge (parent[i], i) already lies on a cycle
    let mut on_cycle = vec![false; n];
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (parent[i], i)).collect();
    for _ in 0..4 * chords {
        if pairs.len() - (n - 1) >= chords {
            break;
        }
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a == b || parent[a] == b || parent[b] == a {
            continue;
        }
        let (mut x, mut y) = (a, b);
        let mut path = Vec::new();
        while x != y {
            if depth[x] >= depth[y] {
                path.push(x);
                x = parent[x];
            } else {
                path.push(y);
                y = parent[y];
            }
        }
        if path.iter().any(|&i| on_cycle[i]) {
            continue;
        }
        for i in path {
            on_cycle[i] = true;
        }
        pairs.push((a, b));
    }
    pairs.shuffle(rng);
    build(rng, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offline::analyze_structure;

    #[test]
    fn trial_streams_differ_and_repeat() {
        let a: Vec<Weight> = random_stream(&mut trial_rng(7, 0), 5);
        let b: Vec<Weight> = random_stream(&mut trial_rng(7, 1), 5);
        assert_ne!(a, b);
        assert_eq!(a, random_stream(&mut trial_rng(7, 0), 5));
    }

    #[test]
    fn multigraph_respects_degree_cap() {
        let mut rng = trial_rng(1, 0);
        let params = MultigraphParams {
            vertices: 5,
            edges: 400,
            multi_edge_rate: 0.5,
            max_degree: 6,
        };
        let g = random_multigraph(&mut rng, params);
        for list in g.incidence() {
            assert!(list.len() <= 6);
        }
    }

    #[test]
    fn forests_and_cacti_have_their_shape() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..50 {
            let f = random_forest(&mut rng, 10, 30, 30);
            assert!(analyze_structure(&f).unwrap().is_forest);
            let c = random_cactus(&mut rng, 12, 3);
            let s = analyze_structure(&c).unwrap();
            assert!(s.is_simple);
            assert!(s.y <= 1);
        }
    }
}
