//! Ground truth: the properness verifier, an exhaustive minimum-color search
//! for tiny instances, and checkers that decide whether a per-vertex coloring
//! transcript is a NEXT-FIT (or HARMONIC) packing.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::binpack::harmonic_type;
use crate::coloring::{Color, Coloring};
use crate::error::{OracleError, VerifyError};
use crate::instance::Instance;
use crate::weight::{Load, Weight};

/// Edge count above which [`exact_min_colors`] refuses.
pub const EXACT_COLORS_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: String,
    pub color: Color,
    pub load: Load,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub proper: bool,
    pub violations: Vec<Violation>,
}

/// Checks every (vertex, color) load against 1. A load of exactly 1 is proper.
pub fn verify_coloring(instance: &Instance, coloring: &Coloring) -> Result<ViolationReport, VerifyError> {
    let known: HashSet<usize> = instance.edges().iter().map(|e| e.arrival_index).collect();
    let unknown: Vec<usize> = coloring
        .assignment
        .keys()
        .copied()
        .filter(|a| !known.contains(a))
        .collect();
    if !unknown.is_empty() {
        return Err(VerifyError::UnknownEdges(unknown));
    }
    let uncolored: Vec<usize> = instance
        .edges()
        .iter()
        .map(|e| e.arrival_index)
        .filter(|a| !coloring.assignment.contains_key(a))
        .collect();
    if !uncolored.is_empty() {
        return Err(VerifyError::Uncolored(uncolored));
    }
    if let Some((&a, _)) = coloring.assignment.iter().find(|(_, c)| c.0 == 0) {
        return Err(VerifyError::ZeroColor(a));
    }

    let mut loads: BTreeMap<(usize, Color), Load> = BTreeMap::new();
    for (pos, e) in instance.edges().iter().enumerate() {
        let c = coloring.assignment[&e.arrival_index];
        let (u, v) = instance.endpoints(pos);
        *loads.entry((u, c)).or_default() += e.weight;
        *loads.entry((v, c)).or_default() += e.weight;
    }
    let violations: Vec<Violation> = loads
        .into_iter()
        .filter(|(_, load)| load.exceeds_one())
        .map(|((x, color), load)| Violation {
            vertex: instance.vertices()[x].clone(),
            color,
            load,
        })
        .collect();
    Ok(ViolationReport {
        proper: violations.is_empty(),
        violations,
    })
}

/// Fewest colors admitting a proper coloring, by exhaustive search over
/// assignments (new colors are only ever opened in increasing order).
pub fn exact_min_colors(instance: &Instance) -> Result<usize, OracleError> {
    if instance.len() > EXACT_COLORS_LIMIT {
        return Err(OracleError::TooManyEdges {
            edges: instance.len(),
            limit: EXACT_COLORS_LIMIT,
        });
    }

    struct Search<'a> {
        instance: &'a Instance,
        loads: Vec<HashMap<usize, Load>>,
        colors_open: usize,
        best: usize,
    }
    impl Search<'_> {
        fn fits(&self, x: usize, c: usize, w: Weight) -> bool {
            self.loads[x].get(&c).is_none_or(|l| l.fits(w))
        }

        fn go(&mut self, pos: usize) {
            if self.colors_open >= self.best {
                return;
            }
            if pos == self.instance.len() {
                self.best = self.colors_open;
                return;
            }
            let (u, v) = self.instance.endpoints(pos);
            let w = self.instance.weight(pos);
            for c in 0..=self.colors_open {
                if !self.fits(u, c, w) || !self.fits(v, c, w) {
                    continue;
                }
                let opened = c == self.colors_open;
                if opened {
                    self.colors_open += 1;
                }
                let saved = [u, v].map(|x| self.loads[x].get(&c).cloned());
                for x in [u, v] {
                    *self.loads[x].entry(c).or_default() += w;
                }
                self.go(pos + 1);
                for (x, old) in [u, v].into_iter().zip(saved) {
                    match old {
                        Some(l) => self.loads[x].insert(c, l),
                        None => self.loads[x].remove(&c),
                    };
                }
                if opened {
                    self.colors_open -= 1;
                }
            }
        }
    }

    let mut search = Search {
        instance,
        loads: vec![HashMap::new(); instance.vertex_count()],
        colors_open: 0,
        best: instance.len() + 1,
    };
    search.go(0);
    Ok(search.best.min(instance.len()))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranscriptError {
    #[error("color {0} reappears after its bin was closed")]
    Reopened(Color),
    #[error("color {0} carries more than unit load")]
    Overfull(Color),
    #[error("color {closed} was closed although the next item fit")]
    PrematureClose { closed: Color },
    #[error("color {0} holds items of different size classes")]
    MixedClasses(Color),
}

/// The edges at `vertex` with their colors, in the order the colorer
/// processed them (the coloring's trace order).
pub fn vertex_transcript(instance: &Instance, coloring: &Coloring, vertex: usize) -> Vec<(Weight, Color)> {
    coloring
        .trace
        .iter()
        .filter_map(|step| {
            let pos = instance.position_of(step.arrival_index)?;
            let (u, v) = instance.endpoints(pos);
            (u == vertex || v == vertex).then(|| (instance.weight(pos), step.color))
        })
        .collect()
}

/// Checks that a transcript is a NEXT-FIT packing: each color is one
/// contiguous run of load at most 1, and every run ends only because the next
/// item would not fit. With `first_may_close_early`, the first run is exempt
/// from the last rule. Returns the number of bins.
pub fn check_next_fit_transcript(
    items: &[(Weight, Color)],
    first_may_close_early: bool,
) -> Result<usize, TranscriptError> {
    let mut finished: HashSet<Color> = HashSet::new();
    let mut current: Option<(Color, Load)> = None;
    let mut bins = 0;
    for &(w, c) in items {
        match &mut current {
            Some((open, load)) if *open == c => {
                *load += w;
                if load.exceeds_one() {
                    return Err(TranscriptError::Overfull(c));
                }
            }
            _ => {
                if let Some((open, load)) = current.take() {
                    let exempt = first_may_close_early && bins == 1;
                    if !exempt && load.fits(w) {
                        return Err(TranscriptError::PrematureClose { closed: open });
                    }
                    finished.insert(open);
                }
                if finished.contains(&c) {
                    return Err(TranscriptError::Reopened(c));
                }
                bins += 1;
                current = Some((c, Load::from(w)));
            }
        }
    }
    Ok(bins)
}

/// [`check_next_fit_transcript`] applied to each HARMONIC size class, with
/// classes required to use disjoint colors.
pub fn check_harmonic_transcript(
    items: &[(Weight, Color)],
    m: u32,
    first_may_close_early: bool,
) -> Result<usize, TranscriptError> {
    let mut by_class: BTreeMap<u32, Vec<(Weight, Color)>> = BTreeMap::new();
    let mut class_of_color: HashMap<Color, u32> = HashMap::new();
    for &(w, c) in items {
        let class = harmonic_type(w, m).0;
        if *class_of_color.entry(c).or_insert(class) != class {
            return Err(TranscriptError::MixedClasses(c));
        }
        by_class.entry(class).or_default().push((w, c));
    }
    by_class
        .values()
        .map(|run| check_next_fit_transcript(run, first_may_close_early))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn inst(edges: &[(&str, &str, &str)]) -> Instance {
        Instance::from_edges(edges.iter().map(|&(u, v, x)| (u, v, w(x)))).unwrap()
    }

    fn coloring(colors: &[u32]) -> Coloring {
        Coloring::from_assignment(colors.iter().enumerate().map(|(i, &c)| (i, Color(c))).collect())
    }

    #[test]
    fn load_of_exactly_one_is_proper() {
        let g = inst(&[("u", "v", "3/5"), ("u", "w", "2/5")]);
        let r = verify_coloring(&g, &coloring(&[1, 1])).unwrap();
        assert!(r.proper);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn overload_is_reported() {
        let g = inst(&[("u", "v", "3/5"), ("u", "w", "1/2")]);
        let r = verify_coloring(&g, &coloring(&[1, 1])).unwrap();
        assert!(!r.proper);
        assert_eq!(
            r.violations,
            [Violation {
                vertex: "u".into(),
                color: Color(1),
                load: Load::from(w("3/5")) + w("1/2"),
            }]
        );
        assert_eq!(r.violations[0].load.to_string(), "11/10");
    }

    #[test]
    fn partial_coloring_is_an_error() {
        let g = inst(&[("u", "v", "1/2"), ("u", "w", "1/2"), ("v", "w", "1/2")]);
        let partial = Coloring::from_assignment([(1, Color(1))].into_iter().collect());
        assert_eq!(verify_coloring(&g, &partial), Err(VerifyError::Uncolored(vec![0, 2])));
        let extra = coloring(&[1, 1, 1, 1]);
        assert_eq!(verify_coloring(&g, &extra), Err(VerifyError::UnknownEdges(vec![3])));
        assert_eq!(verify_coloring(&g, &coloring(&[1, 0, 1])), Err(VerifyError::ZeroColor(1)));
    }

    #[test]
    fn exact_min_colors_examples() {
        assert_eq!(exact_min_colors(&inst(&[("u", "v", "1")])).unwrap(), 1);
        assert_eq!(exact_min_colors(&inst(&[("u", "v", "1/2"), ("u", "v", "1/2")])).unwrap(), 1);
        let tri = inst(&[("a", "b", "1"), ("b", "c", "1"), ("a", "c", "1")]);
        assert_eq!(exact_min_colors(&tri).unwrap(), 3);
    }

    #[test]
    fn exact_min_colors_refuses_large() {
        let edges: Vec<_> = (0..11).map(|i| ("a".to_string(), format!("b{i}"), Weight::ONE)).collect();
        let g = Instance::from_edges(edges).unwrap();
        assert_eq!(
            exact_min_colors(&g),
            Err(OracleError::TooManyEdges { edges: 11, limit: 10 })
        );
    }

    #[test]
    fn transcript_checks() {
        let t = |v: &[(&str, u32)]| -> Vec<(Weight, Color)> { v.iter().map(|&(x, c)| (w(x), Color(c))).collect() };
        assert_eq!(check_next_fit_transcript(&t(&[("1/2", 4), ("1/2", 4), ("1/3", 2)]), false), Ok(2));
        assert_eq!(
            check_next_fit_transcript(&t(&[("1/2", 4), ("1/3", 2)]), false),
            Err(TranscriptError::PrematureClose { closed: Color(4) })
        );
        assert_eq!(check_next_fit_transcript(&t(&[("1/2", 4), ("1/3", 2)]), true), Ok(2));
        assert_eq!(
            check_next_fit_transcript(&t(&[("1/2", 4), ("1/3", 2), ("1/3", 2), ("1/2", 7), ("1/2", 7), ("1/2", 2)]), true),
            Err(TranscriptError::Reopened(Color(2)))
        );
        assert_eq!(
            check_next_fit_transcript(&t(&[("3/5", 1), ("3/5", 1)]), false),
            Err(TranscriptError::Overfull(Color(1)))
        );
        assert_eq!(
            check_harmonic_transcript(&t(&[("3/5", 1), ("2/5", 1)]), 12, false),
            Err(TranscriptError::MixedClasses(Color(1)))
        );
        assert_eq!(check_harmonic_transcript(&t(&[("3/5", 1), ("2/5", 2), ("2/5", 2)]), 12, false), Ok(2));
    }
}
