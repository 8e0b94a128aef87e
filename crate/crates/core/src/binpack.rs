//! Bounded-space online bin packing and an exact offline solver.
//!
//! The online packers all share one engine: every item is routed to an open
//! bin selected by a key (a caller label, a size class, or both), and the bin
//! for that key behaves like NEXT-FIT. A bin that cannot take the next item of
//! its key is closed for good.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::ops::{Add, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::OracleError;
use crate::weight::{common_denominator, Load, Weight};

/// Default number of items above which [`exact_min_bins`] refuses to search.
pub const DEFAULT_EXACT_LIMIT: usize = 30;

/// Default number of HARMONIC size classes.
pub const DEFAULT_M: u32 = 12;

/// Caller-supplied item category for the typed packers.
pub type Label = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BinStatus {
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bin {
    pub items: Vec<Weight>,
    pub load: Load,
    pub status: BinStatus,
    /// HARMONIC size class of the bin's items, when packing by class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_tag: Option<u32>,
    /// Caller label of the bin's items, for the typed packers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
}

/// Outcome of an online packing run. Bins are listed in opening order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackResult {
    pub bins: Vec<Bin>,
    /// Bin index of each input item.
    pub assignment: Vec<usize>,
    /// Bin indices in the order they were closed.
    pub closing_order: Vec<usize>,
    pub total_bins: usize,
}

impl PackResult {
    pub fn closed_bins(&self) -> usize {
        self.closing_order.len()
    }

    pub fn open_bins(&self) -> usize {
        self.total_bins - self.closed_bins()
    }
}

/// HARMONIC size class: `k` for items in `(1/(k+1), 1/k]`, or `M` for items at most `1/M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct HarmonicType(pub u32);

pub fn harmonic_type(w: Weight, m: u32) -> HarmonicType {
    assert!(m >= 2, "HARMONIC needs at least two classes, got {m}");
    // w in (1/(k+1), 1/k]  <=>  k = floor(1/w)
    let k = (w.denom() / w.numer()).min(m as i64);
    HarmonicType(k as u32)
}

#[derive(Default)]
struct Engine {
    bins: Vec<Bin>,
    assignment: Vec<usize>,
    closing_order: Vec<usize>,
    open: HashMap<(Option<Label>, Option<u32>), usize>,
}

impl Engine {
    fn place(&mut self, w: Weight, label: Option<Label>, type_tag: Option<u32>) {
        let key = (label, type_tag);
        let target = match self.open.get(&key) {
            Some(&b) if self.bins[b].load.fits(w) => b,
            current => {
                if let Some(&b) = current {
                    self.bins[b].status = BinStatus::Closed;
                    self.closing_order.push(b);
                }
                self.bins.push(Bin {
                    items: Vec::new(),
                    load: Load::zero(),
                    status: BinStatus::Open,
                    type_tag,
                    label,
                });
                let b = self.bins.len() - 1;
                self.open.insert(key, b);
                b
            }
        };
        let bin = &mut self.bins[target];
        bin.items.push(w);
        bin.load += w;
        self.assignment.push(target);
    }

    fn finish(self) -> PackResult {
        let total_bins = self.bins.len();
        PackResult {
            bins: self.bins,
            assignment: self.assignment,
            closing_order: self.closing_order,
            total_bins,
        }
    }
}

/// NEXT-FIT: one open bin, closed as soon as an item does not fit.
pub fn next_fit(items: &[Weight]) -> PackResult {
    let mut engine = Engine::default();
    for &w in items {
        engine.place(w, None, None);
    }
    engine.finish()
}

/// HARMONIC_M: one NEXT-FIT bin per size class.
pub fn harmonic_pack(items: &[Weight], m: u32) -> PackResult {
    let mut engine = Engine::default();
    for &w in items {
        engine.place(w, None, Some(harmonic_type(w, m).0));
    }
    engine.finish()
}

/// NEXT-FIT with one open bin per label; items with different labels never share a bin.
pub fn typed_next_fit(items: &[(Weight, Label)]) -> PackResult {
    let mut engine = Engine::default();
    for &(w, label) in items {
        engine.place(w, Some(label), None);
    }
    engine.finish()
}

/// HARMONIC_M run independently per label.
pub fn typed_harmonic_pack(items: &[(Weight, Label)], m: u32) -> PackResult {
    let mut engine = Engine::default();
    for &(w, label) in items {
        engine.place(w, Some(label), Some(harmonic_type(w, m).0));
    }
    engine.finish()
}

/// `max(ceil(total weight), #items > 1/2)`, a lower bound on the optimum.
pub fn lower_bound(items: &[Weight]) -> usize {
    let total: Load = items.iter().sum();
    let large = items.iter().filter(|w| w.is_large()).count();
    (total.ceil() as usize).max(large)
}

/// Exact minimum number of unit bins, refusing above [`DEFAULT_EXACT_LIMIT`] items.
pub fn exact_min_bins(items: &[Weight]) -> Result<usize, OracleError> {
    exact_min_bins_with_limit(items, DEFAULT_EXACT_LIMIT)
}

pub fn exact_min_bins_with_limit(items: &[Weight], limit: usize) -> Result<usize, OracleError> {
    exact_packing(items, limit).map(|bins| bins.len())
}

/// An optimal packing as lists of item indices, refusing above `limit` items.
pub fn exact_packing(items: &[Weight], limit: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    if items.len() > limit {
        return Err(OracleError::TooManyItems {
            items: items.len(),
            limit,
        });
    }
    Ok(match Scaled::of(items) {
        Scaled::Small(sizes, cap) => solve(&sizes, cap),
        Scaled::Big(sizes, cap) => solve(&sizes, cap),
    })
}

/// First-fit decreasing, as lists of item indices. Ties keep input order.
pub fn first_fit_decreasing(items: &[Weight]) -> Vec<Vec<usize>> {
    match Scaled::of(items) {
        Scaled::Small(sizes, cap) => ffd(&sizes, &cap),
        Scaled::Big(sizes, cap) => ffd(&sizes, &cap),
    }
}

/// Items rescaled to integers over the common denominator.
enum Scaled {
    Small(Vec<u128>, u128),
    Big(Vec<BigUint>, BigUint),
}

impl Scaled {
    fn of(items: &[Weight]) -> Self {
        let lcm = common_denominator(items);
        let scale = |w: &Weight| -> BigInt { &lcm / BigInt::from(w.denom()) * BigInt::from(w.numer()) };
        // The largest intermediate value is the total of all items.
        let fits_small = (&lcm * BigInt::from(items.len() + 2)).to_u128().is_some();
        if fits_small {
            let sizes = items.iter().map(|w| scale(w).to_u128().unwrap()).collect();
            Scaled::Small(sizes, lcm.to_u128().unwrap())
        } else {
            let sizes = items.iter().map(|w| scale(w).to_biguint().unwrap()).collect();
            Scaled::Big(sizes, lcm.to_biguint().unwrap())
        }
    }
}

trait Size: Clone + Ord + Hash + Zero + Integer + ToPrimitive + for<'a> Add<&'a Self, Output = Self> {}
impl<T> Size for T where T: Clone + Ord + Hash + Zero + Integer + ToPrimitive + for<'a> Add<&'a T, Output = T> {}

fn ffd<T: Size>(sizes: &[T], cap: &T) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
    let mut loads: Vec<T> = Vec::new();
    let mut bins: Vec<Vec<usize>> = Vec::new();
    for i in order {
        let slot = loads
            .iter()
            .position(|l| l.clone() + &sizes[i] <= *cap);
        match slot {
            Some(b) => {
                loads[b] = loads[b].clone() + &sizes[i];
                bins[b].push(i);
            }
            None => {
                loads.push(sizes[i].clone());
                bins.push(vec![i]);
            }
        }
    }
    bins
}

fn solve<T: Size>(sizes: &[T], cap: T) -> Vec<Vec<usize>>
where
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    if sizes.is_empty() {
        return Vec::new();
    }
    let upper = ffd(sizes, &cap);
    for k in martello_toth(sizes, &cap)..upper.len() {
        if let Some(bins) = Completion::run(sizes, cap.clone(), k) {
            return bins;
        }
    }
    upper
}

/// The Martello-Toth bound `L2`: for each threshold `K <= cap/2`, items above
/// `cap - K` and items above `cap/2` each need their own bin, and items in
/// `[K, cap/2]` must fill whatever space the latter leave.
fn martello_toth<T: Size>(sizes: &[T], cap: &T) -> usize
where
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    let total = sizes.iter().fold(T::zero(), |acc, s| acc + s);
    let two = T::one() + &T::one();
    let large = |s: &T| s.clone() * two.clone() > *cap;
    let mut best = total.div_ceil(cap).to_usize().unwrap_or(usize::MAX);
    let mut thresholds: Vec<T> = sizes.iter().filter(|s| !large(s)).cloned().collect();
    thresholds.push(T::zero());
    thresholds.sort();
    thresholds.dedup();
    for k in &thresholds {
        let limit = cap - k;
        let (mut n1, mut n2) = (0usize, 0usize);
        let (mut free2, mut small) = (T::zero(), T::zero());
        for s in sizes {
            if *s > limit {
                n1 += 1;
            } else if large(s) {
                n2 += 1;
                free2 = free2 + &(cap - s);
            } else if s >= k {
                small = small + s;
            }
        }
        let extra = if small > free2 {
            (&small - &free2).div_ceil(cap).to_usize().unwrap_or(usize::MAX)
        } else {
            0
        };
        best = best.max(n1 + n2 + extra);
    }
    // At most two items above cap/3 share a bin; pair them greedily.
    let three = two.clone() + &T::one();
    let mut big: Vec<&T> = sizes.iter().filter(|s| (*s).clone() * three.clone() > *cap).collect();
    big.sort();
    let (mut lo, mut bins) = (0, 0);
    for hi in (0..big.len()).rev() {
        if hi < lo {
            break;
        }
        if hi > lo && big[hi].clone() + big[lo] <= *cap {
            lo += 1;
        }
        bins += 1;
    }
    best.max(bins)
}

/// Bin completion: the bin holding the largest remaining item is filled in
/// one step with a maximal feasible set of other items, so every search node
/// is a set of unpacked items and a number of bins left.
struct Completion<'a, T> {
    sizes: &'a [T],
    cap: T,
    bins: Vec<Vec<usize>>,
    failed: HashSet<(Vec<T>, usize)>,
}

impl<'a, T: Size> Completion<'a, T>
where
    for<'b> &'b T: Sub<&'b T, Output = T>,
{
    fn run(sizes: &'a [T], cap: T, k: usize) -> Option<Vec<Vec<usize>>> {
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
        let mut search = Completion {
            sizes,
            cap,
            bins: Vec::new(),
            failed: HashSet::new(),
        };
        search.pack(&order, k).then_some(search.bins)
    }

    /// `remaining` is sorted by decreasing size.
    fn pack(&mut self, remaining: &[usize], k: usize) -> bool {
        if remaining.is_empty() {
            return true;
        }
        let key_sizes: Vec<T> = remaining.iter().map(|&i| self.sizes[i].clone()).collect();
        if k == 0 || martello_toth(&key_sizes, &self.cap) > k {
            return false;
        }
        let key = (key_sizes, k);
        if self.failed.contains(&key) {
            return false;
        }
        let first = remaining[0];
        let rest = &remaining[1..];
        let room = &self.cap - &self.sizes[first];

        // runs of equal sizes: (start position, length)
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for p in 0..rest.len() {
            match groups.last_mut() {
                Some((start, len)) if self.sizes[rest[*start]] == self.sizes[rest[p]] => *len += 1,
                _ => groups.push((p, 1)),
            }
        }
        let mut tail = vec![T::zero(); groups.len() + 1];
        for g in (0..groups.len()).rev() {
            let (start, len) = groups[g];
            tail[g] = tail[g + 1].clone() + &(rest[start..start + len].iter().fold(T::zero(), |acc, &i| acc + &self.sizes[i]));
        }
        // The other k - 1 bins can absorb at most (k - 1) * cap.
        let mut spare = T::zero();
        for _ in 1..k {
            spare = spare + &self.cap;
        }
        let need = if tail[0] > spare { &tail[0] - &spare } else { T::zero() };
        // A completion lighter than the largest single item that fits is dominated by it.
        let single = rest
            .iter()
            .map(|&i| &self.sizes[i])
            .find(|s| **s <= room)
            .cloned()
            .unwrap_or_else(T::zero);
        let floor = need.max(single);

        let mut node = Node {
            rest,
            groups,
            tail,
            floor,
            counts: Vec::new(),
            first,
            k,
        };
        node.counts = vec![0; node.groups.len()];
        if self.complete(&mut node, 0, room, T::zero()) {
            return true;
        }
        self.failed.insert(key);
        false
    }

    /// Chooses how many items of each size run join `first`, largest first,
    /// recursing into the remaining items at each maximal choice.
    fn complete(&mut self, node: &mut Node<'_, T>, g: usize, room: T, used: T) -> bool {
        if used.clone() + &node.tail[g] < node.floor {
            return false;
        }
        if g == node.groups.len() {
            let maximal = node
                .groups
                .iter()
                .zip(node.counts.iter())
                .all(|(&(start, len), &c)| c == len || self.sizes[node.rest[start]] > room);
            if !maximal {
                return false;
            }
            let mut bin = vec![node.first];
            let mut next = Vec::with_capacity(node.rest.len());
            for (&(start, len), &c) in node.groups.iter().zip(node.counts.iter()) {
                bin.extend(&node.rest[start..start + c]);
                next.extend(&node.rest[start + c..start + len]);
            }
            self.bins.push(bin);
            if self.pack(&next, node.k - 1) {
                return true;
            }
            self.bins.pop();
            return false;
        }
        let (start, len) = node.groups[g];
        let size = self.sizes[node.rest[start]].clone();
        let mut most = 0;
        let mut left = room.clone();
        while most < len && size <= left {
            left = &left - &size;
            most += 1;
        }
        for c in (0..=most).rev() {
            node.counts[g] = c;
            let mut r = room.clone();
            let mut u = used.clone();
            for _ in 0..c {
                r = &r - &size;
                u = u + &size;
            }
            if self.complete(node, g + 1, r, u) {
                return true;
            }
        }
        node.counts[g] = 0;
        false
    }
}

struct Node<'r, T> {
    rest: &'r [usize],
    groups: Vec<(usize, usize)>,
    /// total size of the runs from each index on
    tail: Vec<T>,
    /// least total a completion must reach
    floor: T,
    counts: Vec<usize>,
    first: usize,
    k: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(v: &[&str]) -> Vec<Weight> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn loads(r: &PackResult) -> Vec<String> {
        r.bins.iter().map(|b| b.load.to_string()).collect()
    }

    #[test]
    fn next_fit_examples() {
        assert_eq!(next_fit(&[]).total_bins, 0);

        let r = next_fit(&ws(&["1/2", "1/2", "1/2", "1/2"]));
        assert_eq!(r.total_bins, 2);
        assert_eq!(loads(&r), ["1", "1"]);
        assert_eq!(r.open_bins(), 1);

        let r = next_fit(&ws(&["3/5", "1/2", "3/5", "1/2"]));
        assert_eq!(r.total_bins, 4);
        assert_eq!(r.closing_order, [0, 1, 2]);
    }

    #[test]
    fn harmonic_type_intervals() {
        assert_eq!(harmonic_type("3/5".parse().unwrap(), 12), HarmonicType(1));
        assert_eq!(harmonic_type("1".parse().unwrap(), 12), HarmonicType(1));
        assert_eq!(harmonic_type("1/2".parse().unwrap(), 12), HarmonicType(2));
        assert_eq!(harmonic_type("2/5".parse().unwrap(), 12), HarmonicType(2));
        assert_eq!(harmonic_type("1/3".parse().unwrap(), 12), HarmonicType(3));
        assert_eq!(harmonic_type("1/12".parse().unwrap(), 12), HarmonicType(12));
        assert_eq!(harmonic_type("1/11".parse().unwrap(), 12), HarmonicType(11));
        assert_eq!(harmonic_type("1/1000".parse().unwrap(), 12), HarmonicType(12));
        assert_eq!(harmonic_type("1/3".parse().unwrap(), 2), HarmonicType(2));
    }

    #[test]
    fn harmonic_pack_examples() {
        let r = harmonic_pack(&ws(&["3/5", "2/5"]), 12);
        assert_eq!(r.total_bins, 2);
        assert_eq!(r.bins[0].type_tag, Some(1));
        assert_eq!(r.bins[1].type_tag, Some(2));

        let r = harmonic_pack(&ws(&["2/5", "2/5", "2/5"]), 12);
        assert_eq!(r.total_bins, 2);
        assert_eq!(r.bins[0].status, BinStatus::Closed);
        assert_eq!(r.bins[0].items.len(), 2);
        assert_eq!(r.bins[1].status, BinStatus::Open);
        assert_eq!(r.bins[1].items.len(), 1);

        let r = harmonic_pack(&ws(&["3/5", "3/5", "3/5"]), 12);
        assert_eq!(r.total_bins, 3);
        assert!(r.bins.iter().all(|b| b.items.len() == 1));
    }

    #[test]
    fn unit_item_closes_on_next_same_type() {
        let r = harmonic_pack(&ws(&["1", "1/3", "1"]), 12);
        assert_eq!(r.total_bins, 3);
        assert_eq!(r.closing_order, [0]);
    }

    #[test]
    fn typed_next_fit_examples() {
        let items = ws(&["3/10"; 8]);
        let labelled: Vec<_> = items
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, (i % 2) as Label))
            .collect();
        let r = typed_next_fit(&labelled);
        assert_eq!(r.total_bins, 4);
        let counts: Vec<_> = r.bins.iter().map(|b| (b.label, b.items.len())).collect();
        assert_eq!(counts, [(Some(0), 3), (Some(1), 3), (Some(0), 1), (Some(1), 1)]);
        assert_eq!(r.open_bins(), 2);

        let single: Vec<_> = ws(&["3/5", "1/2", "3/5", "1/2"]).into_iter().map(|w| (w, 7)).collect();
        let plain = next_fit(&ws(&["3/5", "1/2", "3/5", "1/2"]));
        assert_eq!(typed_next_fit(&single).assignment, plain.assignment);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_min_bins(&ws(&["1"])).unwrap(), 1);
        assert_eq!(exact_min_bins(&ws(&["3/5", "1/2", "3/5", "1/2"])).unwrap(), 3);
        assert_eq!(exact_min_bins(&ws(&["1/2", "1/2", "1/2", "1/2"])).unwrap(), 2);
        assert_eq!(exact_min_bins(&[]).unwrap(), 0);
    }

    #[test]
    fn exact_refuses_above_limit() {
        let items = ws(&["1/100"; 31]);
        assert_eq!(
            exact_min_bins(&items),
            Err(OracleError::TooManyItems { items: 31, limit: 30 })
        );
        assert_eq!(exact_min_bins_with_limit(&items, 40).unwrap(), 1);
    }

    #[test]
    fn exact_beats_ffd_when_ffd_is_suboptimal() {
        let items = ws(&["49/100", "49/100", "26/100", "26/100", "25/100", "25/100"]);
        assert_eq!(first_fit_decreasing(&items).len(), 3);
        assert_eq!(exact_min_bins(&items).unwrap(), 2);
    }

    fn thousandths(v: &[i64]) -> Vec<Weight> {
        v.iter().map(|&i| Weight::new(i, 1000).unwrap()).collect()
    }

    #[test]
    fn exact_closes_a_wide_gap_between_bounds() {
        let items = thousandths(&[
            995, 850, 850, 834, 778, 719, 717, 602, 601, 571, 531, 527, 520, 494, 487, 463, 448, 436, 431, 424,
            423, 403, 397, 378, 376, 376, 345, 290, 197, 62,
        ]);
        assert_eq!(lower_bound(&items), 16);
        assert_eq!(exact_min_bins(&items).unwrap(), 18);
    }

    #[test]
    fn exact_finds_perfect_partition() {
        let items = thousandths(&[
            147, 139, 135, 132, 116, 110, 106, 104, 102, 93, 90, 87, 79, 70, 61, 56, 55, 46, 41, 36, 33, 32, 31,
            25, 24, 20, 15, 13, 1, 1,
        ]);
        assert_eq!(first_fit_decreasing(&items).len(), 3);
        assert_eq!(exact_min_bins(&items).unwrap(), 2);
    }

    #[test]
    fn exact_packing_is_a_valid_partition() {
        let items = ws(&["7/10", "3/10", "6/10", "4/10", "5/10", "5/10", "2/10", "8/10"]);
        let bins = exact_packing(&items, 30).unwrap();
        assert_eq!(bins.len(), 4);
        let mut seen = vec![false; items.len()];
        for bin in &bins {
            let load: Load = bin.iter().map(|&i| items[i]).sum();
            assert!(!load.exceeds_one());
            for &i in bin {
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn big_denominators_take_the_bignum_path() {
        let items = ws(&[
            "1/999999937",
            "1/999999929",
            "1/999999893",
            "1/999999883",
            "1/999999877",
            "999999000/999999937",
        ]);
        assert_eq!(exact_min_bins(&items).unwrap(), 1);
        assert_eq!(first_fit_decreasing(&items).len(), 1);
    }
}
