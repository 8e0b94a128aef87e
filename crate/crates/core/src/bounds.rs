//! Guaranteed palette and bin counts, as exact integer formulas in `m` and `t`.
//!
//! Decimal ratios are applied with [`ceil_scaled`], never in floating point.

use crate::weight::ceil_scaled;

/// HARMONIC_12 packing ratio, 1.6926.
pub const HARMONIC_RATIO: (u64, u64) = (16926, 10000);
/// Twice the HARMONIC_12 ratio, 3.3852.
pub const ONLINE_HARMONIC_RATIO: (u64, u64) = (33852, 10000);
/// Ratio used for the forest HARMONIC colorer, 1.693.
pub const TREE_HARMONIC_RATIO: (u64, u64) = (1693, 1000);

fn scaled(m: usize, (num, den): (u64, u64)) -> usize {
    ceil_scaled(m as u64, num, den) as usize
}

/// NEXT-FIT bins: `2m - 1`.
pub fn next_fit_bins(m: usize) -> usize {
    (2 * m).saturating_sub(1)
}

/// HARMONIC_M bins: `ceil(1.6926 m) + M` (slack `M` for the open bins).
pub fn harmonic_bins(m: usize, classes: u32) -> usize {
    scaled(m, HARMONIC_RATIO) + classes as usize
}

/// Typed NEXT-FIT bins with `t` labels: `2m - 1 + t`.
pub fn typed_next_fit_bins(m: usize, t: usize) -> usize {
    next_fit_bins(m) + t
}

/// Typed HARMONIC_12 bins with `t` labels: `ceil(1.6926 m) + 12t + 12`.
pub fn typed_harmonic_bins(m: usize, t: usize, classes: u32) -> usize {
    scaled(m, HARMONIC_RATIO) + classes as usize * t + classes as usize
}

/// Online NEXT-FIT palette: `4m + 2t - 1`.
pub fn online_nf_colors(m: usize, t: usize) -> usize {
    (4 * m + 2 * t).saturating_sub(1)
}

/// Online HARMONIC_12 palette with slack: `ceil(3.3852 m) + 24t + 24`.
pub fn online_harmonic_colors(m: usize, t: usize, classes: u32) -> usize {
    online_harmonic_colors_strict(m, t, classes) + 2 * classes as usize
}

/// Online HARMONIC_12 palette without slack: `ceil(3.3852 m) + 24t`.
pub fn online_harmonic_colors_strict(m: usize, t: usize, classes: u32) -> usize {
    scaled(m, ONLINE_HARMONIC_RATIO) + 2 * classes as usize * t
}

/// Forest NEXT-FIT palette: `2m`.
pub fn tree_nf_colors(m: usize) -> usize {
    2 * m
}

/// Forest HARMONIC_12 palette: `ceil(1.693 m) + 12`.
pub fn tree_harmonic_colors(m: usize, classes: u32) -> usize {
    scaled(m, TREE_HARMONIC_RATIO) + classes as usize
}

/// Edge-disjoint-cycles palette: `m + y` (`m` on forests, `m + 1` when cycles are edge-disjoint).
pub fn cycles_colors(m: usize, y: usize) -> usize {
    m + y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        assert_eq!(next_fit_bins(3), 5);
        assert_eq!(next_fit_bins(0), 0);
        assert_eq!(harmonic_bins(10, 12), 17 + 12);
        assert_eq!(online_nf_colors(2, 2), 11);
        assert_eq!(online_harmonic_colors_strict(1, 1, 12), 4 + 24);
        assert_eq!(online_harmonic_colors(1, 1, 12), 4 + 48);
        assert_eq!(tree_harmonic_colors(1000, 12), 1693 + 12);
        assert_eq!(tree_harmonic_colors(1, 12), 2 + 12);
        assert_eq!(typed_harmonic_bins(2, 3, 12), 4 + 36 + 12);
        assert_eq!(cycles_colors(4, 1), 5);
    }
}
