//! Running a colorer end to end: stats, coloring, verification and the
//! applicable palette bound, collected into one serializable [`RunReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::binpack::{DEFAULT_EXACT_LIMIT, DEFAULT_M};
use crate::bounds;
use crate::coloring::{Color, Coloring};
use crate::error::Error;
use crate::instance::{compute_stats_with_limit, Instance, InstanceStats};
use crate::offline::{analyze_structure, color_edge_disjoint_cycles_with_limit, color_tree_harmonic, color_tree_nf};
use crate::online::{color_online_harmonic, color_online_nf};
use crate::oracle::verify_coloring;
use crate::weight::Load;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Nf,
    Harmonic,
    TreeNf,
    TreeHarmonic,
    Cycles,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Nf,
        Algorithm::Harmonic,
        Algorithm::TreeNf,
        Algorithm::TreeHarmonic,
        Algorithm::Cycles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nf => "nf",
            Algorithm::Harmonic => "harmonic",
            Algorithm::TreeNf => "tree-nf",
            Algorithm::TreeHarmonic => "tree-harmonic",
            Algorithm::Cycles => "cycles",
        }
    }

    pub fn is_online(self) -> bool {
        matches!(self, Algorithm::Nf | Algorithm::Harmonic)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// HARMONIC class count.
    pub classes: u32,
    /// Largest vertex degree for which `m_v` is searched exactly.
    pub exact_limit: usize,
    /// Measure wall time; otherwise `runtime_ms` is 0 so reports are reproducible.
    pub timing: bool,
    pub include_assignment: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            classes: DEFAULT_M,
            exact_limit: DEFAULT_EXACT_LIMIT,
            timing: false,
            include_assignment: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub algorithm: String,
    pub m: usize,
    pub m_is_exact: bool,
    pub n: Load,
    pub t: usize,
    pub colors_used: usize,
    pub max_color_index: u32,
    pub bound: usize,
    /// HARMONIC online bound without the `+24` slack.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_strict: Option<usize>,
    /// `None` when `m` is not exact, or for HARMONIC with other than 12 classes.
    pub within_bound: Option<bool>,
    pub bound_exceeded_flagged: bool,
    pub violations: usize,
    pub runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<BTreeMap<usize, Color>>,
}

pub fn color_with(instance: &Instance, algorithm: Algorithm, options: &RunOptions) -> Result<Coloring, Error> {
    Ok(match algorithm {
        Algorithm::Nf => color_online_nf(instance),
        Algorithm::Harmonic => color_online_harmonic(instance, options.classes),
        Algorithm::TreeNf => color_tree_nf(instance)?,
        Algorithm::TreeHarmonic => color_tree_harmonic(instance, options.classes)?,
        Algorithm::Cycles => color_edge_disjoint_cycles_with_limit(instance, options.exact_limit)?,
    })
}

/// `(bound, strict bound)` for `algorithm` on an instance with these stats.
pub fn palette_bound(
    algorithm: Algorithm,
    stats: &InstanceStats,
    y: usize,
    classes: u32,
) -> (usize, Option<usize>) {
    let (m, t) = (stats.m, stats.t);
    match algorithm {
        Algorithm::Nf => (bounds::online_nf_colors(m, t), None),
        Algorithm::Harmonic => (
            bounds::online_harmonic_colors(m, t, classes),
            Some(bounds::online_harmonic_colors_strict(m, t, classes)),
        ),
        Algorithm::TreeNf => (bounds::tree_nf_colors(m), None),
        Algorithm::TreeHarmonic => (bounds::tree_harmonic_colors(m, classes), None),
        Algorithm::Cycles => (bounds::cycles_colors(m, y), None),
    }
}

/// Colors `instance`, verifies the result and returns both.
pub fn run(instance: &Instance, algorithm: Algorithm, options: &RunOptions) -> Result<(Coloring, RunReport), Error> {
    let stats = compute_stats_with_limit(instance, options.exact_limit)?;
    let start = Instant::now();
    let coloring = color_with(instance, algorithm, options)?;
    let elapsed = start.elapsed();
    let verdict = verify_coloring(instance, &coloring)?;

    let y = if algorithm == Algorithm::Cycles {
        analyze_structure(instance)?.y
    } else {
        0
    };
    let (bound, bound_strict) = palette_bound(algorithm, &stats, y, options.classes);
    let ratio_applies = !matches!(algorithm, Algorithm::Harmonic | Algorithm::TreeHarmonic) || options.classes == DEFAULT_M;
    let max_color_index = coloring.max_color();
    let report = RunReport {
        algorithm: algorithm.name().to_string(),
        m: stats.m,
        m_is_exact: stats.m_is_exact,
        n: stats.n.clone(),
        t: stats.t,
        colors_used: coloring.colors_used(),
        max_color_index,
        bound,
        bound_strict,
        within_bound: (stats.m_is_exact && ratio_applies).then_some(max_color_index as usize <= bound),
        bound_exceeded_flagged: coloring.bound_exceeded,
        violations: verdict.violations.len(),
        runtime_ms: if options.timing { elapsed.as_millis() as u64 } else { 0 },
        assignment: options.include_assignment.then(|| coloring.assignment.clone()),
    };
    Ok((coloring, report))
}
