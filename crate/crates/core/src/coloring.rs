use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A palette entry. Colors are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub u32);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One coloring decision, in processing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub arrival_index: usize,
    pub color: Color,
    /// Color retired at this step to make room for the edge, if any.
    pub closed: Option<Color>,
    /// Largest color index used so far.
    pub high_water: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    pub assignment: BTreeMap<usize, Color>,
    pub trace: Vec<Step>,
    /// Set by colorers that may exceed their target palette size.
    pub bound_exceeded: bool,
}

/// The on-disk coloring format: `{"assignment": {"<arrival_index>": <color>}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub assignment: BTreeMap<usize, Color>,
}

impl Coloring {
    pub fn from_assignment(assignment: BTreeMap<usize, Color>) -> Self {
        Coloring {
            assignment,
            ..Default::default()
        }
    }

    pub(crate) fn record(&mut self, arrival_index: usize, color: Color, closed: Option<Color>) {
        self.assignment.insert(arrival_index, color);
        let high_water = self
            .trace
            .last()
            .map_or(color, |s| s.high_water.max(color));
        self.trace.push(Step {
            arrival_index,
            color,
            closed,
            high_water,
        });
    }

    pub fn color_of(&self, arrival_index: usize) -> Option<Color> {
        self.assignment.get(&arrival_index).copied()
    }

    /// Largest color index, or 0 for an empty coloring.
    pub fn max_color(&self) -> u32 {
        self.assignment.values().map(|c| c.0).max().unwrap_or(0)
    }

    pub fn colors_used(&self) -> usize {
        self.assignment.values().collect::<BTreeSet<_>>().len()
    }

    pub fn to_file(&self) -> ColoringFile {
        ColoringFile {
            assignment: self.assignment.clone(),
        }
    }
}

impl From<ColoringFile> for Coloring {
    fn from(file: ColoringFile) -> Self {
        Coloring::from_assignment(file.assignment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format_uses_string_keys() {
        let mut c = Coloring::default();
        c.record(0, Color(2), None);
        c.record(10, Color(1), Some(Color(2)));
        let json = serde_json::to_string(&c.to_file()).unwrap();
        assert_eq!(json, r#"{"assignment":{"0":2,"10":1}}"#);
        let back: ColoringFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.assignment, c.assignment);
        assert_eq!(c.trace[1].high_water, Color(2));
        assert_eq!((c.max_color(), c.colors_used()), (2, 2));
    }
}
