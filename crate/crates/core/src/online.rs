//! Online weighted edge coloring.
//!
//! Every pair of neighbouring vertices keeps one open color per packing class
//! (a single class for NEXT-FIT, one per size class for HARMONIC). An arriving
//! edge joins its pair's open color when the load stays within one at both
//! endpoints; otherwise that color is closed for good and the pair opens the
//! least-numbered color that is empty at both endpoints.
//!
//! A color is *open* at `v` while some pair at `v` is filling it, *closed*
//! once retired, and *empty* otherwise.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::binpack::harmonic_type;
use crate::coloring::{Color, Coloring, Step};
use crate::instance::Instance;
use crate::weight::{Load, Weight};

/// Which bounded-space packing the per-pair colors follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Packing {
    NextFit,
    Harmonic { m: u32 },
}

impl Packing {
    pub fn class_of(&self, w: Weight) -> u32 {
        match *self {
            Packing::NextFit => 1,
            Packing::Harmonic { m } => harmonic_type(w, m).0,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct VertexPalette {
    /// (neighbour, class) -> open color
    open: HashMap<(usize, u32), Color>,
    closed: BTreeSet<Color>,
    loads: HashMap<Color, Load>,
    /// open ∪ closed
    used: HashSet<Color>,
    /// every color below this is non-empty here
    first_empty: u32,
}

impl VertexPalette {
    fn is_empty(&self, c: Color) -> bool {
        !self.used.contains(&c)
    }

    fn advance_first_empty(&mut self) {
        while self.used.contains(&Color(self.first_empty)) {
            self.first_empty += 1;
        }
    }
}

/// Per-vertex open/closed/empty bookkeeping with per-(vertex, color) loads.
#[derive(Debug, Clone)]
pub struct PaletteState {
    vertices: Vec<VertexPalette>,
}

impl PaletteState {
    pub fn new(vertex_count: usize) -> Self {
        PaletteState {
            vertices: (0..vertex_count)
                .map(|_| VertexPalette {
                    first_empty: 1,
                    ..Default::default()
                })
                .collect(),
        }
    }

    pub fn open_color(&self, v: usize, neighbor: usize, class: u32) -> Option<Color> {
        self.vertices[v].open.get(&(neighbor, class)).copied()
    }

    pub fn open_colors(&self, v: usize) -> impl Iterator<Item = ((usize, u32), Color)> + '_ {
        self.vertices[v].open.iter().map(|(&k, &c)| (k, c))
    }

    pub fn open_count(&self, v: usize) -> usize {
        self.vertices[v].open.len()
    }

    pub fn closed_colors(&self, v: usize) -> &BTreeSet<Color> {
        &self.vertices[v].closed
    }

    pub fn load(&self, v: usize, c: Color) -> Load {
        self.vertices[v].loads.get(&c).cloned().unwrap_or_default()
    }

    /// Neither open nor closed at `v`.
    pub fn is_empty_at(&self, v: usize, c: Color) -> bool {
        self.vertices[v].is_empty(c)
    }

    /// Least color that is empty at both `u` and `v`.
    pub fn select_color(&self, u: usize, v: usize) -> Color {
        let (pu, pv) = (&self.vertices[u], &self.vertices[v]);
        let mut c = Color(pu.first_empty.max(pv.first_empty));
        while !pu.is_empty(c) || !pv.is_empty(c) {
            c.0 += 1;
        }
        c
    }

    /// Designates `c` as the open color of `class` between `u` and `v`.
    pub fn open_pair(&mut self, u: usize, v: usize, class: u32, c: Color) {
        debug_assert!(self.is_empty_at(u, c) && self.is_empty_at(v, c));
        for (a, b) in [(u, v), (v, u)] {
            let p = &mut self.vertices[a];
            p.open.insert((b, class), c);
            p.used.insert(c);
            p.advance_first_empty();
        }
    }

    /// Retires the open color of `class` between `u` and `v` at both ends.
    pub fn close_pair(&mut self, u: usize, v: usize, class: u32) -> Option<Color> {
        let c = self.vertices[u].open.remove(&(v, class))?;
        let other = self.vertices[v].open.remove(&(u, class));
        debug_assert_eq!(other, Some(c));
        self.vertices[u].closed.insert(c);
        self.vertices[v].closed.insert(c);
        Some(c)
    }

    fn add_load(&mut self, u: usize, v: usize, c: Color, w: Weight) {
        for x in [u, v] {
            *self.vertices[x].loads.entry(c).or_default() += w;
        }
    }

    fn fits(&self, x: usize, c: Color, w: Weight) -> bool {
        self.vertices[x].loads.get(&c).is_none_or(|l| l.fits(w))
    }
}

/// Colors edges one at a time as they are revealed.
#[derive(Debug, Clone)]
pub struct OnlineColorer {
    packing: Packing,
    state: PaletteState,
    coloring: Coloring,
}

impl OnlineColorer {
    pub fn new(vertex_count: usize, packing: Packing) -> Self {
        OnlineColorer {
            packing,
            state: PaletteState::new(vertex_count),
            coloring: Coloring::default(),
        }
    }

    pub fn state(&self) -> &PaletteState {
        &self.state
    }

    /// Colors the edge `(u, v)` irrevocably and returns the decision.
    pub fn push(&mut self, u: usize, v: usize, w: Weight, arrival_index: usize) -> &Step {
        let class = self.packing.class_of(w);
        let current = self.state.open_color(u, v, class);
        let (color, closed) = match current {
            Some(c) if self.state.fits(u, c, w) && self.state.fits(v, c, w) => (c, None),
            _ => {
                if let Some(c) = current {
                    debug_assert_eq!(self.state.load(u, c), self.state.load(v, c));
                }
                let closed = self.state.close_pair(u, v, class);
                let fresh = self.state.select_color(u, v);
                self.state.open_pair(u, v, class, fresh);
                (fresh, closed)
            }
        };
        self.state.add_load(u, v, color, w);
        self.coloring.record(arrival_index, color, closed);
        self.coloring.trace.last().unwrap()
    }

    pub fn finish(self) -> Coloring {
        self.coloring
    }
}

fn run(instance: &Instance, packing: Packing) -> Coloring {
    let mut colorer = OnlineColorer::new(instance.vertex_count(), packing);
    for (pos, e) in instance.edges().iter().enumerate() {
        let (u, v) = instance.endpoints(pos);
        colorer.push(u, v, e.weight, e.arrival_index);
    }
    colorer.finish()
}

/// Online coloring with one NEXT-FIT color per neighbouring pair.
pub fn color_online_nf(instance: &Instance) -> Coloring {
    run(instance, Packing::NextFit)
}

/// Online coloring with one NEXT-FIT color per neighbouring pair and HARMONIC class.
pub fn color_online_harmonic(instance: &Instance, m: u32) -> Coloring {
    assert!(m >= 2, "HARMONIC needs at least two classes, got {m}");
    run(instance, Packing::Harmonic { m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn colors(c: &Coloring) -> Vec<u32> {
        c.assignment.values().map(|c| c.0).collect()
    }

    #[test]
    fn select_color_fresh_state() {
        let s = PaletteState::new(2);
        assert_eq!(s.select_color(0, 1), Color(1));
    }

    #[test]
    fn select_color_least_common_empty() {
        // u = 0 holds {1, 2}, v = 1 holds {1, 3}
        let mut s = PaletteState::new(6);
        s.open_pair(0, 2, 1, Color(1));
        s.open_pair(0, 3, 1, Color(2));
        s.open_pair(1, 4, 1, Color(3));
        s.close_pair(1, 4, 1);
        // colour 1 at v through a different neighbour
        s.vertices[1].used.insert(Color(1));
        s.vertices[1].closed.insert(Color(1));
        assert_eq!(s.select_color(0, 1), Color(4));
    }

    #[test]
    fn select_color_skips_prefix() {
        let mut s = PaletteState::new(10);
        for k in 1..=5 {
            s.open_pair(0, k as usize + 1, 1, Color(k));
        }
        assert_eq!(s.select_color(0, 1), Color(6));
    }

    #[test]
    fn never_reuses_closed_colors() {
        let mut s = PaletteState::new(3);
        s.open_pair(0, 1, 1, Color(1));
        s.close_pair(0, 1, 1);
        assert!(!s.is_empty_at(0, Color(1)));
        assert_eq!(s.select_color(0, 2), Color(2));
        assert_eq!(s.select_color(1, 2), Color(2));
    }

    #[test]
    fn nf_examples() {
        let inst = Instance::from_edges([("a", "b", Weight::ONE)]).unwrap();
        assert_eq!(colors(&color_online_nf(&inst)), [1]);

        let p = w("3/5");
        let inst = Instance::from_edges([("a", "b", p), ("a", "b", p), ("a", "b", p)]).unwrap();
        let c = color_online_nf(&inst);
        assert_eq!(colors(&c), [1, 2, 3]);
        assert_eq!(c.trace[1].closed, Some(Color(1)));
        assert_eq!(c.trace[2].closed, Some(Color(2)));

        let one = Weight::ONE;
        let inst = Instance::from_edges([("a", "b", one), ("b", "c", one), ("a", "c", one)]).unwrap();
        assert_eq!(colors(&color_online_nf(&inst)), [1, 2, 3]);
    }

    #[test]
    fn harmonic_examples() {
        let inst = Instance::from_edges([("a", "b", w("1/7"))]).unwrap();
        assert_eq!(colors(&color_online_harmonic(&inst, 12)), [1]);

        let inst = Instance::from_edges([("a", "b", w("3/5")), ("a", "b", w("2/5"))]).unwrap();
        assert_eq!(colors(&color_online_harmonic(&inst, 12)), [1, 2]);

        let t = w("2/5");
        let inst = Instance::from_edges([("a", "b", t), ("a", "b", t), ("a", "b", t)]).unwrap();
        let c = color_online_harmonic(&inst, 12);
        assert_eq!(colors(&c), [1, 1, 2]);
        assert_eq!(c.trace[2].closed, Some(Color(1)));
    }

    #[test]
    fn nf_packs_pair_until_full() {
        let q = w("1/4");
        let inst = Instance::from_edges(vec![("a", "b", q); 5]).unwrap();
        assert_eq!(colors(&color_online_nf(&inst)), [1, 1, 1, 1, 2]);
    }

    #[test]
    fn open_colors_bounded_by_neighbors_times_classes() {
        let edges = [
            ("a", "b", "1/2"),
            ("a", "c", "1/3"),
            ("a", "b", "1/5"),
            ("a", "c", "3/4"),
            ("a", "b", "1/2"),
        ];
        let inst = Instance::from_edges(edges.iter().map(|&(u, v, x)| (u, v, w(x)))).unwrap();
        let mut col = OnlineColorer::new(inst.vertex_count(), Packing::NextFit);
        for (pos, e) in inst.edges().iter().enumerate() {
            let (u, v) = inst.endpoints(pos);
            col.push(u, v, e.weight, e.arrival_index);
            assert!(col.state().open_count(0) <= 2);
        }
    }
}
