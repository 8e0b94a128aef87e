//! Edge-weighted multigraph instances, the `wec v1` text format, and the
//! instance parameters `m`, `n` and `t`.
//!
//! ```text
//! wec v1
//! # comment
//! edge a b 0.6
//! edge b c 1/3
//! ```
//!
//! Arrival order is line order. Vertex ids are arbitrary whitespace-free
//! strings; internally they are numbered in lexicographic order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binpack::{self, DEFAULT_EXACT_LIMIT};
use crate::error::{InstanceError, ParseError};
use crate::weight::{Load, Weight};

pub const HEADER: &str = "wec v1";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub u: String,
    pub v: String,
    pub weight: Weight,
    pub arrival_index: usize,
}

/// An undirected multigraph with its edges in arrival order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    edges: Vec<WeightedEdge>,
    vertices: Vec<String>,
    ends: Vec<(usize, usize)>,
}

impl Instance {
    /// Edges must have strictly increasing arrival indices and no self-loops.
    pub fn new(edges: Vec<WeightedEdge>) -> Result<Self, InstanceError> {
        for pair in edges.windows(2) {
            if pair[1].arrival_index <= pair[0].arrival_index {
                return Err(InstanceError::ArrivalOrder {
                    previous: pair[0].arrival_index,
                    found: pair[1].arrival_index,
                });
            }
        }
        if let Some(e) = edges.iter().find(|e| e.u == e.v) {
            return Err(InstanceError::SelfLoop {
                vertex: e.u.clone(),
                arrival_index: e.arrival_index,
            });
        }
        let names: BTreeSet<&str> = edges
            .iter()
            .flat_map(|e| [e.u.as_str(), e.v.as_str()])
            .collect();
        let vertices: Vec<String> = names.into_iter().map(str::to_owned).collect();
        let index = |name: &str| vertices.binary_search_by(|v| v.as_str().cmp(name)).unwrap();
        let ends = edges.iter().map(|e| (index(&e.u), index(&e.v))).collect();
        Ok(Instance {
            edges,
            vertices,
            ends,
        })
    }

    /// Builds an instance from `(u, v, weight)` triples, numbering arrivals from 0.
    pub fn from_edges<S: Into<String>>(
        edges: impl IntoIterator<Item = (S, S, Weight)>,
    ) -> Result<Self, InstanceError> {
        Self::new(
            edges
                .into_iter()
                .enumerate()
                .map(|(i, (u, v, weight))| WeightedEdge {
                    u: u.into(),
                    v: v.into(),
                    weight,
                    arrival_index: i,
                })
                .collect(),
        )
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertex names, sorted; a vertex's position here is its index.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Vertex indices of the edge at position `pos`.
    pub fn endpoints(&self, pos: usize) -> (usize, usize) {
        self.ends[pos]
    }

    pub fn weight(&self, pos: usize) -> Weight {
        self.edges[pos].weight
    }

    /// Position of the edge with the given arrival index.
    pub fn position_of(&self, arrival_index: usize) -> Option<usize> {
        self.edges
            .binary_search_by_key(&arrival_index, |e| e.arrival_index)
            .ok()
    }

    /// Edge positions incident to each vertex, in arrival order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (pos, &(u, v)) in self.ends.iter().enumerate() {
            inc[u].push(pos);
            inc[v].push(pos);
        }
        inc
    }

    /// The endpoint of edge `pos` that is not `x`.
    pub fn other_end(&self, pos: usize, x: usize) -> usize {
        let (u, v) = self.ends[pos];
        if u == x {
            v
        } else {
            u
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * self.edges.len() + 8);
        out.push_str(HEADER);
        out.push('\n');
        for e in &self.edges {
            let _ = writeln!(out, "edge {} {} {}", e.u, e.v, e.weight);
        }
        out
    }
}

/// Parses the `wec v1` line format. The header line is optional.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut edges = Vec::new();
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "wec" {
            if seen_content || fields.len() != 2 || fields[1] != "v1" {
                return Err(ParseError::Header {
                    line: line_no,
                    header: line.to_string(),
                });
            }
            seen_content = true;
            continue;
        }
        seen_content = true;
        if fields[0] != "edge" || fields.len() != 4 {
            return Err(ParseError::Malformed {
                line: line_no,
                reason: "expected `edge <u> <v> <weight>`".into(),
            });
        }
        let weight: Weight = fields[3].parse().map_err(|source| ParseError::Weight {
            line: line_no,
            source,
        })?;
        if fields[1] == fields[2] {
            return Err(ParseError::SelfLoop { line: line_no });
        }
        edges.push(WeightedEdge {
            u: fields[1].to_string(),
            v: fields[2].to_string(),
            weight,
            arrival_index: edges.len(),
        });
    }
    // Arrival indices are sequential and self-loops were rejected above.
    Ok(Instance::new(edges).expect("parsed edges are well formed"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexStats {
    /// Minimum bins for the incident weights (equal to `m_upper` when inexact).
    pub m: usize,
    pub m_lower: usize,
    pub m_upper: usize,
    pub m_is_exact: bool,
    pub degree: usize,
    pub weighted_degree: Load,
    pub neighbors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    pub m: usize,
    pub m_is_exact: bool,
    pub m_lower: usize,
    pub m_upper: usize,
    pub n: Load,
    pub t: usize,
    pub per_vertex: BTreeMap<String, VertexStats>,
}

impl InstanceStats {
    pub fn vertex(&self, name: &str) -> Option<&VertexStats> {
        self.per_vertex.get(name)
    }
}

pub fn compute_stats(instance: &Instance) -> Result<InstanceStats, InstanceError> {
    compute_stats_with_limit(instance, DEFAULT_EXACT_LIMIT)
}

/// Per-vertex `m` is searched exactly when the degree is at most `exact_limit`;
/// above it, `m` is exact only if the lower bound meets first-fit decreasing.
pub fn compute_stats_with_limit(
    instance: &Instance,
    exact_limit: usize,
) -> Result<InstanceStats, InstanceError> {
    if instance.is_empty() {
        return Err(InstanceError::Empty);
    }
    let incidence = instance.incidence();
    let per_vertex: Vec<VertexStats> = incidence
        .par_iter()
        .enumerate()
        .map(|(x, edges)| {
            let items: Vec<Weight> = edges.iter().map(|&p| instance.weight(p)).collect();
            let neighbors = edges
                .iter()
                .map(|&p| instance.other_end(p, x))
                .collect::<BTreeSet<_>>()
                .len();
            let (m_lower, m_upper) = match binpack::exact_min_bins_with_limit(&items, exact_limit) {
                Ok(m) => (m, m),
                Err(_) => (
                    binpack::lower_bound(&items),
                    binpack::first_fit_decreasing(&items).len(),
                ),
            };
            VertexStats {
                m: m_upper,
                m_lower,
                m_upper,
                m_is_exact: m_lower == m_upper,
                degree: items.len(),
                weighted_degree: items.iter().sum(),
                neighbors,
            }
        })
        .collect();

    let m_lower = per_vertex.iter().map(|s| s.m_lower).max().unwrap_or(0);
    let m_upper = per_vertex.iter().map(|s| s.m_upper).max().unwrap_or(0);
    let n = per_vertex
        .iter()
        .map(|s| s.weighted_degree.clone())
        .max()
        .unwrap_or_default();
    let t = per_vertex.iter().map(|s| s.neighbors).max().unwrap_or(0);
    Ok(InstanceStats {
        m: m_upper,
        m_is_exact: m_lower == m_upper,
        m_lower,
        m_upper,
        n,
        t,
        per_vertex: instance
            .vertices()
            .iter()
            .cloned()
            .zip(per_vertex)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn parses_decimal_and_fraction() {
        let inst = parse_instance("edge a b 0.5").unwrap();
        assert_eq!(inst.len(), 1);
        assert_eq!(inst.edges()[0].weight, w("1/2"));

        let inst = parse_instance("wec v1\nedge a b 1/3\n").unwrap();
        assert_eq!(inst.edges()[0].weight, Weight::new(1, 3).unwrap());
        assert_eq!(inst.edges()[0].arrival_index, 0);
    }

    #[test]
    fn self_loop_names_line() {
        let err = parse_instance("edge a a 0.5").unwrap_err();
        assert_eq!(err.to_string(), "self-loop at line 1");
        let err = parse_instance("wec v1\n# c\nedge a b 1\nedge c c 1\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 4 });
    }

    #[test]
    fn malformed_lines_are_reported() {
        assert!(matches!(
            parse_instance("wec v1\nedge a b\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("vertex a\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("edge a b 0\n"),
            Err(ParseError::Weight { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("edge a b 1.01\n"),
            Err(ParseError::Weight { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("wec v2\n"),
            Err(ParseError::Header { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("edge a b 1\nwec v1\n"),
            Err(ParseError::Header { line: 2, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let text = "wec v1\nedge x y 0.25\n# skip\n\nedge y z 2/7\nedge x y 1\n";
        let inst = parse_instance(text).unwrap();
        let again = parse_instance(&inst.to_text()).unwrap();
        assert_eq!(inst, again);
        assert_eq!(inst.to_text(), "wec v1\nedge x y 1/4\nedge y z 2/7\nedge x y 1\n");
    }

    #[test]
    fn stats_single_edge() {
        let inst = Instance::from_edges([("a", "b", Weight::ONE)]).unwrap();
        let s = compute_stats(&inst).unwrap();
        assert_eq!((s.m, s.t), (1, 1));
        assert_eq!(s.n, Load::one());
        assert!(s.m_is_exact);
    }

    #[test]
    fn stats_star() {
        let half = w("1/2");
        let inst = Instance::from_edges([("c", "x", half), ("c", "y", half), ("c", "z", half)]).unwrap();
        let s = compute_stats(&inst).unwrap();
        assert_eq!(s.m, 2);
        assert_eq!(s.n.to_string(), "3/2");
        assert_eq!(s.t, 3);
        assert_eq!(s.vertex("c").unwrap().degree, 3);
        assert_eq!(s.vertex("x").unwrap().m, 1);
    }

    #[test]
    fn stats_triangle() {
        let one = Weight::ONE;
        let inst = Instance::from_edges([("a", "b", one), ("b", "c", one), ("a", "c", one)]).unwrap();
        let s = compute_stats(&inst).unwrap();
        assert_eq!((s.m, s.t), (2, 2));
        assert_eq!(s.n.to_string(), "2");
    }

    #[test]
    fn neighbors_count_distinct_vertices() {
        let q = w("1/4");
        let inst = Instance::from_edges([("a", "b", q), ("a", "b", q), ("a", "b", q)]).unwrap();
        let s = compute_stats(&inst).unwrap();
        assert_eq!(s.t, 1);
        assert_eq!(s.vertex("a").unwrap().degree, 3);
    }

    #[test]
    fn inexact_above_limit_reports_bounds() {
        let edges: Vec<_> = (0..5).map(|i| ("hub".to_string(), format!("v{i}"), w("2/5"))).collect();
        let inst = Instance::from_edges(edges).unwrap();
        let s = compute_stats_with_limit(&inst, 3).unwrap();
        let hub = s.vertex("hub").unwrap();
        // lower bound ceil(2) = 2, FFD packs pairs into 3 bins
        assert_eq!((hub.m_lower, hub.m_upper), (2, 3));
        assert!(!s.m_is_exact);
        assert!(s.m_lower <= s.m && s.m <= s.m_upper);

        let exact = compute_stats(&inst).unwrap();
        assert_eq!(exact.m, 3);
    }

    #[test]
    fn empty_instance_has_no_stats() {
        let inst = parse_instance("wec v1\n").unwrap();
        assert_eq!(compute_stats(&inst), Err(InstanceError::Empty));
    }

    #[test]
    fn rejects_bad_arrival_order() {
        let e = |i| WeightedEdge {
            u: "a".into(),
            v: "b".into(),
            weight: Weight::ONE,
            arrival_index: i,
        };
        assert!(matches!(
            Instance::new(vec![e(3), e(3)]),
            Err(InstanceError::ArrivalOrder { .. })
        ));
        assert!(Instance::new(vec![e(3), e(7)]).is_ok());
    }
}
