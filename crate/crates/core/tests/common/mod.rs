//! Naive reference solvers shared by the test targets.

/// Fewest bins of capacity `cap` for `sizes`, by enumerating every set
/// partition as a restricted growth string.
pub fn brute_min_bins(sizes: &[u32], cap: u32) -> usize {
    fn go(sizes: &[u32], cap: u32, i: usize, bins: &mut Vec<u32>, best: &mut usize) {
        if bins.len() >= *best {
            return;
        }
        if i == sizes.len() {
            *best = bins.len();
            return;
        }
        for b in 0..bins.len() {
            if bins[b] + sizes[i] <= cap {
                bins[b] += sizes[i];
                go(sizes, cap, i + 1, bins, best);
                bins[b] -= sizes[i];
            }
        }
        bins.push(sizes[i]);
        go(sizes, cap, i + 1, bins, best);
        bins.pop();
    }
    let mut best = sizes.len() + 1;
    go(sizes, cap, 0, &mut Vec::new(), &mut best);
    best.min(sizes.len())
}
