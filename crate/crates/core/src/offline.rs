//! Offline BFS colorers.
//!
//! Each connected component is traversed breadth-first from its
//! lexicographically least vertex, children in ascending id order. Visiting a
//! vertex colors every still-uncolored edge at it.
//!
//! - [`color_tree_nf`] / [`color_tree_harmonic`]: multigraph forests. The edges
//!   to each child are presented one child at a time to a NEXT-FIT (or
//!   HARMONIC) packer whose open colors carry over from the parent's group.
//! - [`color_edge_disjoint_cycles`]: simple graphs. Each visit packs all
//!   incident edges optimally and maps bins onto colors, keeping the colors of
//!   edges colored earlier wherever possible.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::binpack::{exact_packing, harmonic_type, DEFAULT_EXACT_LIMIT};
use crate::coloring::{Color, Coloring};
use crate::error::{Error, OracleError, StructureError};
use crate::instance::Instance;
use crate::weight::{Load, Weight};

/// Default cap on DFS steps spent enumerating cycles.
pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// At most one edge between any pair of vertices.
    pub is_simple: bool,
    /// The underlying simple graph (parallel edges merged) is acyclic.
    pub is_forest: bool,
    /// Largest number of simple cycles through one edge of the underlying simple graph.
    pub y: usize,
    pub cycle_count: usize,
    /// Root (least vertex id) of each connected component.
    pub components: Vec<String>,
}

pub fn analyze_structure(instance: &Instance) -> Result<StructureReport, OracleError> {
    analyze_structure_with_budget(instance, DEFAULT_CYCLE_BUDGET)
}

pub fn analyze_structure_with_budget(
    instance: &Instance,
    budget: usize,
) -> Result<StructureReport, OracleError> {
    let n = instance.vertex_count();
    let mut adj = vec![BTreeSet::new(); n];
    let mut is_simple = true;
    for pos in 0..instance.len() {
        let (u, v) = instance.endpoints(pos);
        if !adj[u].insert(v) {
            is_simple = false;
        }
        adj[v].insert(u);
    }
    let roots = component_roots(&adj);
    let simple_edges: usize = adj.iter().map(BTreeSet::len).sum::<usize>() / 2;
    let is_forest = simple_edges + roots.len() == n;
    let (y, cycle_count) = if is_forest {
        (0, 0)
    } else {
        count_cycles(&adj, budget)?
    };
    Ok(StructureReport {
        is_simple,
        is_forest,
        y,
        cycle_count,
        components: roots
            .into_iter()
            .map(|r| instance.vertices()[r].clone())
            .collect(),
    })
}

fn component_roots(adj: &[BTreeSet<usize>]) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut roots = Vec::new();
    for r in 0..adj.len() {
        if seen[r] {
            continue;
        }
        roots.push(r);
        seen[r] = true;
        let mut stack = vec![r];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    roots
}

/// Enumerates every simple cycle once (least vertex first, second vertex
/// below the last) and returns the largest per-edge count and the total.
fn count_cycles(adj: &[BTreeSet<usize>], budget: usize) -> Result<(usize, usize), OracleError> {
    struct Walk<'a> {
        adj: &'a [BTreeSet<usize>],
        path: Vec<usize>,
        on_path: Vec<bool>,
        per_edge: HashMap<(usize, usize), usize>,
        cycles: usize,
        steps: usize,
        budget: usize,
    }
    impl Walk<'_> {
        fn extend(&mut self, start: usize) -> Result<(), OracleError> {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(OracleError::CycleBudget {
                    budget: self.budget,
                });
            }
            let x = *self.path.last().unwrap();
            for &y in self.adj[x].iter() {
                if y == start && self.path.len() >= 3 && self.path[1] < x {
                    self.cycles += 1;
                    let path = &self.path;
                    for i in 0..path.len() {
                        let (a, b) = (path[i], path[(i + 1) % path.len()]);
                        *self.per_edge.entry((a.min(b), a.max(b))).or_default() += 1;
                    }
                } else if y > start && !self.on_path[y] {
                    self.path.push(y);
                    self.on_path[y] = true;
                    self.extend(start)?;
                    self.on_path[y] = false;
                    self.path.pop();
                }
            }
            Ok(())
        }
    }
    let mut walk = Walk {
        adj,
        path: Vec::new(),
        on_path: vec![false; adj.len()],
        per_edge: HashMap::new(),
        cycles: 0,
        steps: 0,
        budget,
    };
    for s in 0..adj.len() {
        walk.path.push(s);
        walk.on_path[s] = true;
        walk.extend(s)?;
        walk.on_path[s] = false;
        walk.path.pop();
    }
    let y = walk.per_edge.values().copied().max().unwrap_or(0);
    Ok((y, walk.cycles))
}

/// Breadth-first visiting order and child lists over the underlying simple graph.
struct Bfs {
    simple_edges: usize,
    order: Vec<usize>,
    roots: HashSet<usize>,
    children: Vec<Vec<usize>>,
}

fn bfs(instance: &Instance) -> Bfs {
    let n = instance.vertex_count();
    let mut adj = vec![BTreeSet::new(); n];
    for pos in 0..instance.len() {
        let (u, v) = instance.endpoints(pos);
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = HashSet::new();
    let mut children = vec![Vec::new(); n];
    for r in 0..n {
        if seen[r] {
            continue;
        }
        roots.insert(r);
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &x in &adj[u] {
                if !seen[x] {
                    seen[x] = true;
                    children[u].push(x);
                    queue.push_back(x);
                }
            }
        }
    }
    Bfs {
        simple_edges: adj.iter().map(BTreeSet::len).sum::<usize>() / 2,
        order,
        roots,
        children,
    }
}

/// Per-(vertex, color) loads shared by the offline colorers.
struct Loads {
    at: Vec<HashMap<Color, Load>>,
}

impl Loads {
    fn new(n: usize) -> Self {
        Loads {
            at: vec![HashMap::new(); n],
        }
    }

    fn get(&self, x: usize, c: Color) -> Load {
        self.at[x].get(&c).cloned().unwrap_or_default()
    }

    fn fits(&self, x: usize, c: Color, w: Weight) -> bool {
        self.at[x].get(&c).is_none_or(|l| l.fits(w))
    }

    fn used(&self, x: usize, c: Color) -> bool {
        self.at[x].contains_key(&c)
    }

    fn add(&mut self, u: usize, v: usize, c: Color, w: Weight) {
        *self.at[u].entry(c).or_default() += w;
        *self.at[v].entry(c).or_default() += w;
    }
}

/// Multigraph-forest coloring with NEXT-FIT continuation across child groups.
pub fn color_tree_nf(instance: &Instance) -> Result<Coloring, StructureError> {
    color_tree(instance, None)
}

/// Multigraph-forest coloring with one HARMONIC_M open color per size class.
pub fn color_tree_harmonic(instance: &Instance, m: u32) -> Result<Coloring, StructureError> {
    assert!(m >= 2, "HARMONIC needs at least two classes, got {m}");
    color_tree(instance, Some(m))
}

fn color_tree(instance: &Instance, harmonic: Option<u32>) -> Result<Coloring, StructureError> {
    let bfs = bfs(instance);
    let n = instance.vertex_count();
    if bfs.simple_edges + bfs.roots.len() != n {
        return Err(StructureError::NotForest);
    }

    let classes = harmonic.unwrap_or(1) as usize;
    let class_of = |w: Weight| match harmonic {
        Some(m) => harmonic_type(w, m).0 as usize - 1,
        None => 0,
    };
    let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for pos in 0..instance.len() {
        let (u, v) = instance.endpoints(pos);
        between.entry((u.min(v), u.max(v))).or_default().push(pos);
    }

    let mut loads = Loads::new(n);
    let mut coloring = Coloring::default();
    // open colors per class at the end of each vertex's parent group
    let mut carried: Vec<Option<Vec<Color>>> = vec![None; n];
    for &u in &bfs.order {
        let mut open: Vec<Color> = if bfs.roots.contains(&u) {
            (1..=classes as u32).map(Color).collect()
        } else {
            carried[u].take().expect("parent group colored before its child")
        };
        for &x in &bfs.children[u] {
            for &pos in &between[&(u.min(x), u.max(x))] {
                let w = instance.weight(pos);
                let class = class_of(w);
                let current = open[class];
                let (color, closed) = if loads.fits(u, current, w) && loads.fits(x, current, w) {
                    (current, None)
                } else {
                    let fresh = least_fresh(&loads, u, x, &open);
                    open[class] = fresh;
                    (fresh, Some(current))
                };
                loads.add(u, x, color, w);
                coloring.record(instance.edges()[pos].arrival_index, color, closed);
            }
            carried[x] = Some(open.clone());
        }
    }
    Ok(coloring)
}

/// Least color unused at `u` and `x` and not designated open for any class.
fn least_fresh(loads: &Loads, u: usize, x: usize, open: &[Color]) -> Color {
    let mut c = Color(1);
    while loads.used(u, c) || loads.used(x, c) || open.contains(&c) {
        c.0 += 1;
    }
    c
}

/// BFS coloring for simple graphs, targeting `m + y` colors.
///
/// At each visited vertex the incident edges are packed optimally into `m_v`
/// bins. Bins are matched to the colors of already-colored edges they contain
/// so as to keep as many of those colors as possible; every bin's uncolored
/// edges then take the first color (matched color first, then 1, 2, ...) that
/// keeps both endpoints proper. `bound_exceeded` is set when the largest color
/// index ends up above `m + y`.
pub fn color_edge_disjoint_cycles(instance: &Instance) -> Result<Coloring, Error> {
    color_edge_disjoint_cycles_with_limit(instance, DEFAULT_EXACT_LIMIT)
}

pub fn color_edge_disjoint_cycles_with_limit(
    instance: &Instance,
    exact_limit: usize,
) -> Result<Coloring, Error> {
    let structure = analyze_structure(instance)?;
    if !structure.is_simple {
        let mut seen = HashSet::new();
        for pos in 0..instance.len() {
            let (u, v) = instance.endpoints(pos);
            if !seen.insert((u.min(v), u.max(v))) {
                let names = instance.vertices();
                return Err(StructureError::NotSimple(names[u].clone(), names[v].clone()).into());
            }
        }
    }
    let bfs = bfs(instance);
    let incidence = instance.incidence();
    let mut loads = Loads::new(instance.vertex_count());
    let mut colored: Vec<Option<Color>> = vec![None; instance.len()];
    let mut coloring = Coloring::default();
    let mut m = 0;

    for &u in &bfs.order {
        let edges = &incidence[u];
        let items: Vec<Weight> = edges.iter().map(|&p| instance.weight(p)).collect();
        let bins = exact_packing(&items, exact_limit)?;
        m = m.max(bins.len());
        if edges.iter().all(|&p| colored[p].is_some()) {
            continue;
        }
        let bins: Vec<Vec<usize>> = bins
            .into_iter()
            .map(|b| b.into_iter().map(|i| edges[i]).collect())
            .collect();
        let matched = match_bins_to_colors(&bins, &colored);

        let mut bin_order: Vec<usize> = (0..bins.len()).filter(|b| matched.contains_key(b)).collect();
        bin_order.extend((0..bins.len()).filter(|b| !matched.contains_key(b)));
        for b in bin_order {
            let pending: Vec<usize> = bins[b].iter().copied().filter(|&p| colored[p].is_none()).collect();
            if pending.is_empty() {
                continue;
            }
            let feasible = |c: Color| {
                let mut at_u = loads.get(u, c);
                for &p in &pending {
                    let w = instance.weight(p);
                    if !loads.fits(instance.other_end(p, u), c, w) {
                        return false;
                    }
                    at_u += w;
                }
                !at_u.exceeds_one()
            };
            let color = matched
                .get(&b)
                .copied()
                .filter(|&c| feasible(c))
                .unwrap_or_else(|| {
                    let mut c = Color(1);
                    while !feasible(c) {
                        c.0 += 1;
                    }
                    c
                });
            for p in pending {
                let w = instance.weight(p);
                loads.add(u, instance.other_end(p, u), color, w);
                colored[p] = Some(color);
                coloring.record(instance.edges()[p].arrival_index, color, None);
            }
        }
    }
    coloring.bound_exceeded = coloring.max_color() as usize > m + structure.y;
    Ok(coloring)
}

/// Assigns distinct pre-existing colors to bins, maximising the number of
/// colored edges whose bin receives their own color.
fn match_bins_to_colors(bins: &[Vec<usize>], colored: &[Option<Color>]) -> BTreeMap<usize, Color> {
    let mut score: BTreeMap<Color, BTreeMap<usize, usize>> = BTreeMap::new();
    for (b, bin) in bins.iter().enumerate() {
        for &p in bin {
            if let Some(c) = colored[p] {
                *score.entry(c).or_default().entry(b).or_default() += 1;
            }
        }
    }
    let colors: Vec<Color> = score.keys().copied().collect();

    fn search(
        i: usize,
        colors: &[Color],
        score: &BTreeMap<Color, BTreeMap<usize, usize>>,
        taken: &mut Vec<(usize, Color)>,
        total: usize,
        best: &mut (usize, Vec<(usize, Color)>),
    ) {
        if i == colors.len() {
            if total > best.0 {
                *best = (total, taken.clone());
            }
            return;
        }
        for (&b, &s) in &score[&colors[i]] {
            if taken.iter().all(|&(tb, _)| tb != b) {
                taken.push((b, colors[i]));
                search(i + 1, colors, score, taken, total + s, best);
                taken.pop();
            }
        }
        search(i + 1, colors, score, taken, total, best);
    }

    let mut best = (0, Vec::new());
    if colors.len() <= 8 {
        search(0, &colors, &score, &mut Vec::new(), 0, &mut best);
    } else {
        let mut pairs: Vec<(usize, Color, usize)> = score
            .iter()
            .flat_map(|(&c, per_bin)| per_bin.iter().map(move |(&b, &s)| (s, c, b)))
            .collect();
        pairs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut used_colors = HashSet::new();
        for (_, c, b) in pairs {
            if best.1.iter().all(|&(tb, _)| tb != b) && used_colors.insert(c) {
                best.1.push((b, c));
            }
        }
    }
    best.1.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn inst(edges: &[(&str, &str, &str)]) -> Instance {
        Instance::from_edges(edges.iter().map(|&(u, v, x)| (u, v, w(x)))).unwrap()
    }

    fn colors(c: &Coloring) -> Vec<u32> {
        c.assignment.values().map(|c| c.0).collect()
    }

    #[test]
    fn structure_examples() {
        let path = analyze_structure(&inst(&[("a", "b", "1"), ("b", "c", "1")])).unwrap();
        assert!(path.is_forest && path.is_simple);
        assert_eq!(path.y, 0);
        assert_eq!(path.components, ["a"]);

        let tri = analyze_structure(&inst(&[("a", "b", "1"), ("b", "c", "1"), ("a", "c", "1")])).unwrap();
        assert!(tri.is_simple && !tri.is_forest);
        assert_eq!((tri.y, tri.cycle_count), (1, 1));

        let two = analyze_structure(&inst(&[
            ("a", "b", "1"),
            ("b", "c", "1"),
            ("a", "c", "1"),
            ("b", "d", "1"),
            ("c", "d", "1"),
        ]))
        .unwrap();
        assert_eq!((two.y, two.cycle_count), (2, 3));
    }

    #[test]
    fn parallel_edges_do_not_make_cycles() {
        let s = analyze_structure(&inst(&[("a", "b", "1/2"), ("a", "b", "1/2"), ("c", "d", "1")])).unwrap();
        assert!(!s.is_simple && s.is_forest);
        assert_eq!(s.components, ["a", "c"]);
    }

    #[test]
    fn cycle_budget_refuses() {
        let mut edges = Vec::new();
        let names: Vec<String> = (0..8).map(|i| format!("k{i}")).collect();
        for i in 0..8 {
            for j in i + 1..8 {
                edges.push((names[i].as_str(), names[j].as_str(), Weight::ONE));
            }
        }
        let k8 = Instance::from_edges(edges).unwrap();
        assert_eq!(
            analyze_structure_with_budget(&k8, 1000),
            Err(OracleError::CycleBudget { budget: 1000 })
        );
    }

    #[test]
    fn tree_nf_examples() {
        assert_eq!(colors(&color_tree_nf(&inst(&[("a", "b", "1")])).unwrap()), [1]);

        let c = color_tree_nf(&inst(&[("r", "u", "1"), ("u", "v", "1")])).unwrap();
        assert_eq!(colors(&c), [1, 2]);

        let star = inst(&[("r", "u", "3/5"), ("r", "u", "3/5"), ("r", "w", "3/5"), ("r", "w", "3/5")]);
        let c = color_tree_nf(&star).unwrap();
        assert_eq!(colors(&c), [1, 2, 3, 4]);
        assert!(c.max_color() <= 4);
    }

    #[test]
    fn tree_nf_carries_open_color_to_children() {
        // u's parent group ends on color 1 with load 1/2 at u; the child edge joins it.
        let c = color_tree_nf(&inst(&[("a", "u", "1/2"), ("u", "v", "1/4"), ("u", "v", "1/4")])).unwrap();
        assert_eq!(colors(&c), [1, 1, 1]);
    }

    #[test]
    fn tree_rejects_cycles() {
        let tri = inst(&[("a", "b", "1"), ("b", "c", "1"), ("a", "c", "1")]);
        assert_eq!(color_tree_nf(&tri), Err(StructureError::NotForest));
        assert_eq!(color_tree_harmonic(&tri, 12), Err(StructureError::NotForest));
    }

    #[test]
    fn tree_harmonic_examples() {
        assert_eq!(colors(&color_tree_harmonic(&inst(&[("a", "b", "1/5")]), 12).unwrap()), [5]);

        let c = color_tree_harmonic(&inst(&[("r", "u", "2/5"), ("r", "u", "2/5"), ("r", "u", "2/5")]), 12).unwrap();
        assert_eq!(c.colors_used(), 2);
        assert_eq!(colors(&c), [2, 2, 13]);
    }

    #[test]
    fn cycles_examples() {
        let tri = inst(&[("a", "b", "1"), ("b", "c", "1"), ("a", "c", "1")]);
        let c = color_edge_disjoint_cycles(&tri).unwrap();
        assert!(c.max_color() <= 3);
        assert!(!c.bound_exceeded);

        let path = inst(&[("a", "b", "1/2"), ("b", "c", "1/2"), ("c", "d", "1")]);
        let c = color_edge_disjoint_cycles(&path).unwrap();
        assert_eq!(colors(&c), [1, 1, 2]);
    }

    #[test]
    fn cycles_rejects_multigraph() {
        let g = inst(&[("a", "b", "1/2"), ("a", "b", "1/2")]);
        assert!(matches!(
            color_edge_disjoint_cycles(&g),
            Err(Error::Structure(StructureError::NotSimple(..)))
        ));
    }
}
