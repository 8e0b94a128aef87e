//! Worst-case inputs for the bounded-space packers and the online HARMONIC
//! colorer, each with a closed-form prediction of what the deterministic
//! algorithms will do on it.
//!
//! The HARMONIC stream uses the Sylvester-type sizes `1/2 + δ`, `1/3 + δ`,
//! `1/7 + δ` and `1/43 + δ` with `δ = 10^-6`: one item of each fits in a
//! single bin, yet HARMONIC_12 keeps them in four different classes and
//! spends `1 + 1/2 + 1/6 + 1/42 = 71/42` bins per copy.
//!
//! The composed instance stacks that waste twice. `k` disjoint pairs
//! `(u_i, v_i)` each receive a HARMONIC worst-case stream as parallel edges,
//! so every `u_i` holds colors `1..=B`. A hub `w` is then joined to each `u_i`
//! in turn by another worst-case stream; since `w` must avoid both its own
//! earlier colors and `1..=B`, the segments occupy consecutive ranges above
//! `B`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::binpack::harmonic_type;
use crate::error::AdversaryError;
use crate::instance::{Instance, WeightedEdge};
use crate::weight::Weight;

/// The `+δ` perturbation, `10^-6`.
pub fn delta() -> Weight {
    Weight::new(1, 1_000_000).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdversaryPrediction {
    pub predicted_total: usize,
    pub predicted_per_part: BTreeMap<String, usize>,
    pub parameters: BTreeMap<String, u64>,
}

impl AdversaryPrediction {
    pub fn part(&self, name: &str) -> usize {
        self.predicted_per_part[name]
    }
}

/// Alternating `1/2`, `1/(4p)`, repeated `p` times. NEXT-FIT closes a bin on
/// every half after the first and uses `p` bins; an optimal packing pairs the
/// halves and puts all small items in one bin.
pub fn gen_nf_worstcase(p: usize) -> Result<(Vec<Weight>, AdversaryPrediction), AdversaryError> {
    if p == 0 {
        return Err(AdversaryError("p must be at least 1".into()));
    }
    let half = Weight::new(1, 2).unwrap();
    let small = Weight::new(1, 4 * p as i64).map_err(|e| AdversaryError(e.to_string()))?;
    let stream: Vec<Weight> = (0..p).flat_map(|_| [half, small]).collect();
    // p halves need ceil(p/2) bins; the p small items total 1/4 and share the
    // half-empty bin when p is odd.
    let optimum = if p.is_multiple_of(2) { p / 2 + 1 } else { p.div_ceil(2) };
    let prediction = AdversaryPrediction {
        predicted_total: p,
        predicted_per_part: BTreeMap::from([("next_fit".into(), p), ("optimum".into(), optimum)]),
        parameters: BTreeMap::from([("p".into(), p as u64)]),
    };
    Ok((stream, prediction))
}

/// The four Sylvester-type sizes, each perturbed by `δ`.
pub fn sylvester_sizes() -> [Weight; 4] {
    [2, 3, 7, 43].map(|k| Weight::unit_fraction(k).unwrap().checked_add(delta()).unwrap())
}

/// Number of equal items of size `w` a HARMONIC_M bin of their class takes.
fn per_bin(w: Weight, m: u32) -> usize {
    let class = harmonic_type(w, m).0;
    if class < m {
        class as usize
    } else {
        (w.denom() / w.numer()) as usize
    }
}

/// HARMONIC_M bins for `copies` of each Sylvester size, by size.
fn sylvester_bins(copies: usize, m: u32) -> Vec<(u32, usize)> {
    sylvester_sizes()
        .iter()
        .map(|&w| (harmonic_type(w, m).0, copies.div_ceil(per_bin(w, m))))
        .collect()
}

/// `copies` items of each Sylvester size, grouped by size, largest first.
pub fn sylvester_stream(copies: usize) -> Vec<Weight> {
    sylvester_sizes()
        .iter()
        .flat_map(|&w| std::iter::repeat_n(w, copies))
        .collect()
}

/// HARMONIC_M worst case: `n` copies of each Sylvester size. Needs
/// `7 <= M <= 42` so the four sizes fall in classes 1, 2, 6 and M.
pub fn gen_harmonic_worstcase(m: u32, n: usize) -> Result<(Vec<Weight>, AdversaryPrediction), AdversaryError> {
    if !(7..=42).contains(&m) {
        return Err(AdversaryError(format!("M must lie in 7..=42, got {m}")));
    }
    if n == 0 {
        return Err(AdversaryError("copies must be at least 1".into()));
    }
    let bins = sylvester_bins(n, m);
    let mut per_part: BTreeMap<String, usize> = bins.iter().map(|&(class, b)| (format!("type_{class}"), b)).collect();
    let total = bins.iter().map(|&(_, b)| b).sum();
    per_part.insert("optimum".into(), n);
    let prediction = AdversaryPrediction {
        predicted_total: total,
        predicted_per_part: per_part,
        parameters: BTreeMap::from([("M".into(), m as u64), ("copies".into(), n as u64)]),
    };
    Ok((sylvester_stream(n), prediction))
}

/// `k` pairs with `per_pair` Sylvester copies each, then a hub joined to
/// every pair with `per_hub` copies. Requires `1 <= per_hub <= per_pair`.
///
/// Predicted maximum color index under the online HARMONIC_12 colorer is
/// `B + k * S`, where `B` and `S` are the HARMONIC bin counts of the pair and
/// hub-segment streams.
pub fn gen_composed_tightness(
    k: usize,
    per_pair: usize,
    per_hub: usize,
) -> Result<(Instance, AdversaryPrediction), AdversaryError> {
    const M: u32 = 12;
    if k == 0 || per_pair == 0 || per_hub == 0 {
        return Err(AdversaryError("all parameters must be at least 1".into()));
    }
    if per_hub > per_pair {
        return Err(AdversaryError(format!(
            "hub segment ({per_hub} copies) exceeds the per-pair budget ({per_pair} copies)"
        )));
    }
    let width = k.to_string().len();
    let name = |p: &str, i: usize| format!("{p}{i:0width$}");
    let mut edges = Vec::with_capacity(4 * k * (per_pair + per_hub));
    let mut push = |u: String, v: String, weight: Weight| {
        edges.push(WeightedEdge {
            u,
            v,
            weight,
            arrival_index: edges.len(),
        })
    };
    for i in 1..=k {
        for w in sylvester_stream(per_pair) {
            push(name("u", i), name("v", i), w);
        }
    }
    for i in 1..=k {
        for w in sylvester_stream(per_hub) {
            push("w".into(), name("u", i), w);
        }
    }
    let instance = Instance::new(edges).expect("generated edges are well formed");

    let pair_colors: usize = sylvester_bins(per_pair, M).iter().map(|&(_, b)| b).sum();
    let hub_colors: usize = sylvester_bins(per_hub, M).iter().map(|&(_, b)| b).sum();
    let max_color = pair_colors + k * hub_colors;
    // Each Sylvester copy needs its own bin (its 1/2 + δ item), and one copy fits in a bin.
    let m = (per_pair + per_hub).max(k * per_hub);
    let prediction = AdversaryPrediction {
        predicted_total: max_color,
        predicted_per_part: BTreeMap::from([
            ("pair_colors".into(), pair_colors),
            ("hub_segment_colors".into(), hub_colors),
            ("max_color_index".into(), max_color),
            ("m".into(), m),
            ("t".into(), k.max(2)),
            ("edges".into(), instance.len()),
        ]),
        parameters: BTreeMap::from([
            ("k".into(), k as u64),
            ("per_pair".into(), per_pair as u64),
            ("per_hub".into(), per_hub as u64),
        ]),
    };
    Ok((instance, prediction))
}

/// Scaling family for the composed instance: hub segments of 42 copies and
/// pairs sized so the hub and the `u_i` share the same `m = 42k`.
pub fn composed_family(k: usize) -> (usize, usize, usize) {
    let per_hub = 42;
    (k, per_hub * (k.max(2) - 1), per_hub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binpack::{harmonic_pack, next_fit, HarmonicType};

    #[test]
    fn nf_worstcase_small() {
        let (s, p) = gen_nf_worstcase(1).unwrap();
        assert_eq!(s, [Weight::new(1, 2).unwrap(), Weight::new(1, 4).unwrap()]);
        assert_eq!(next_fit(&s).total_bins, 1);
        assert_eq!(p.predicted_total, 1);

        let (s, p) = gen_nf_worstcase(4).unwrap();
        assert_eq!(s[1], Weight::new(1, 16).unwrap());
        assert_eq!(next_fit(&s).total_bins, 4);
        assert_eq!(p.part("optimum"), 3);
        assert!(gen_nf_worstcase(0).is_err());
    }

    #[test]
    fn sylvester_classes() {
        let sizes = sylvester_sizes();
        let classes: Vec<_> = sizes.iter().map(|&w| harmonic_type(w, 12)).collect();
        assert_eq!(classes, [HarmonicType(1), HarmonicType(2), HarmonicType(6), HarmonicType(12)]);
        assert_eq!(per_bin(sizes[3], 12), 42);
    }

    #[test]
    fn harmonic_worstcase_42() {
        let (s, p) = gen_harmonic_worstcase(12, 42).unwrap();
        assert_eq!(p.predicted_total, 71);
        assert_eq!(p.part("type_1"), 42);
        assert_eq!(p.part("type_2"), 21);
        assert_eq!(p.part("type_6"), 7);
        assert_eq!(p.part("type_12"), 1);
        assert_eq!(harmonic_pack(&s, 12).total_bins, 71);
        assert!(gen_harmonic_worstcase(6, 42).is_err());
    }

    #[test]
    fn composed_refusals() {
        assert!(gen_composed_tightness(0, 42, 42).is_err());
        assert!(gen_composed_tightness(2, 42, 84).is_err());
    }

    #[test]
    fn composed_shape() {
        let (inst, p) = gen_composed_tightness(3, 42, 42).unwrap();
        assert_eq!(inst.len(), 4 * 42 * 6);
        assert_eq!(inst.vertex_count(), 7);
        assert_eq!(p.part("max_color_index"), 71 + 3 * 71);
        assert_eq!(p.part("m"), 126);
    }
}
