//! Subsum sets `Sigma_k(S)`, zero-sum decisions, exact counting and witness extraction.
//!
//! The table is a layered boolean DP: `reach[c][g]` is true iff some sub-multiset
//! of cardinality `c` sums to `g`. Items are folded in one copy at a time.
//! Witnesses are recovered by a backward trace; the prefix tables that trace
//! needs are recomputed from square-root spaced checkpoints instead of being
//! stored, so tracing costs about two builds and `O(sqrt(s))` tables of memory.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::sequence::Sequence;

/// Default memory cap for subsum tables: 256 MiB.
pub const DEFAULT_MEMORY_CAP: usize = 256 << 20;

static MEMORY_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_MEMORY_CAP);

pub fn memory_cap() -> usize {
    MEMORY_CAP.load(Ordering::Relaxed)
}

pub fn set_memory_cap(bytes: usize) {
    MEMORY_CAP.store(bytes, Ordering::Relaxed);
}

/// Largest length for which exact counts fit the 64-bit accumulator.
pub const COUNT_WIDTH_GUARD: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsumKind {
    /// `Sigma(S)`, all nonempty subsums.
    All,
    /// `Sigma_k(S)`.
    Exact(usize),
    /// `Sigma_{<=k}(S)`.
    UpTo(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZeroSumConstraint {
    Any,
    ExactLength(usize),
    /// Length in `[1, exp(G)] = [1, p]`.
    Short,
}

/// A nonempty zero-sum sub-multiset of some source sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroSumWitness {
    sequence: Sequence,
}

impl ZeroSumWitness {
    /// Wraps a sequence that is claimed to be a zero-sum subsequence of `source`;
    /// the claim is checked.
    pub fn new(sequence: Sequence, source: &Sequence) -> Result<Self> {
        let w = ZeroSumWitness { sequence };
        if w.verify(source) {
            Ok(w)
        } else {
            Err(Error::Internal("witness does not re-verify against its source".into()))
        }
    }

    pub fn sequence(&self) -> &Sequence {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn into_sequence(self) -> Sequence {
        self.sequence
    }

    /// Independent check: nonempty, divides `source`, sums to zero.
    pub fn verify(&self, source: &Sequence) -> bool {
        !self.sequence.is_empty()
            && self.sequence.divides(source)
            && self.sequence.sigma().is_zero()
    }
}

/// Layered reachability over a list of items.
#[derive(Clone, Debug)]
pub struct SubsumTable {
    spec: GroupSpec,
    items: Vec<Element>,
    item_index: Vec<usize>,
    max_card: usize,
    layers: Vec<u8>,
}

struct Translations {
    cache: HashMap<usize, Vec<u32>>,
}

impl Translations {
    fn new(spec: &GroupSpec, item_index: &[usize]) -> Self {
        let mut cache = HashMap::new();
        for &i in item_index {
            cache.entry(i).or_insert_with(|| spec.translation(&spec.element_at(i)));
        }
        Translations { cache }
    }

    fn get(&self, i: usize) -> &[u32] {
        &self.cache[&i]
    }
}

/// Folds one item into the layers; `used` is the number of items already folded.
fn fold_item(layers: &mut [u8], order: usize, max_card: usize, used: usize, perm: &[u32]) {
    if max_card == 0 {
        return;
    }
    let top = used.min(max_card - 1);
    for c in (0..=top).rev() {
        let (lo, hi) = layers.split_at_mut((c + 1) * order);
        let src = &lo[c * order..];
        let dst = &mut hi[..order];
        for (x, &on) in src.iter().enumerate() {
            if on != 0 {
                dst[perm[x] as usize] = 1;
            }
        }
    }
}

fn empty_layers(order: usize, max_card: usize) -> Vec<u8> {
    let mut layers = vec![0u8; (max_card + 1) * order];
    layers[0] = 1;
    layers
}

fn checkpoint_interval(s: usize) -> usize {
    ((s as f64).sqrt().ceil() as usize).max(1)
}

impl SubsumTable {
    /// Full table over all copies of `seq`.
    pub fn build(seq: &Sequence) -> Result<Self> {
        Self::build_upto(seq, seq.len())
    }

    /// Table restricted to cardinalities `0..=max_card`.
    pub fn build_upto(seq: &Sequence, max_card: usize) -> Result<Self> {
        Self::from_items(seq.spec(), seq.items().cloned().collect(), max_card)
    }

    /// Table over an explicit item list; positions in witnesses refer to this list.
    pub fn from_items(spec: &GroupSpec, items: Vec<Element>, max_card: usize) -> Result<Self> {
        let s = items.len();
        let max_card = max_card.min(s);
        let order = spec.order();
        let table_bytes = (max_card + 1).saturating_mul(order);
        // the trace keeps up to 2 sqrt(s) + 1 extra tables alive
        let trace_tables = s / checkpoint_interval(s) + checkpoint_interval(s) + 2;
        let needed = table_bytes.saturating_mul(trace_tables + 1);
        let cap = memory_cap();
        if needed > cap {
            return Err(Error::MemoryCapExceeded { needed, cap });
        }
        let item_index: Vec<usize> = items.iter().map(|g| spec.index_of(g)).collect();
        let perms = Translations::new(spec, &item_index);
        let mut layers = empty_layers(order, max_card);
        for (used, &i) in item_index.iter().enumerate() {
            fold_item(&mut layers, order, max_card, used, perms.get(i));
        }
        Ok(SubsumTable { spec: *spec, items, item_index, max_card, layers })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Number of items `s`.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn max_card(&self) -> usize {
        self.max_card
    }

    pub fn items(&self) -> &[Element] {
        &self.items
    }

    fn layer(&self, c: usize) -> &[u8] {
        let order = self.spec.order();
        &self.layers[c * order..(c + 1) * order]
    }

    pub fn reach(&self, c: usize, g: &Element) -> bool {
        c <= self.max_card && self.layer(c)[self.spec.index_of(g)] != 0
    }

    pub(crate) fn reach_index(&self, c: usize, g: usize) -> bool {
        c <= self.max_card && self.layer(c)[g] != 0
    }

    /// `Sigma_c` as a sorted element list.
    pub fn layer_elements(&self, c: usize) -> Vec<Element> {
        if c > self.max_card {
            return Vec::new();
        }
        self.layer(c)
            .iter()
            .enumerate()
            .filter(|(_, &on)| on != 0)
            .map(|(i, _)| self.spec.element_at(i))
            .collect()
    }

    /// Union of the layers in `lo..=hi`, as a dense membership vector.
    pub(crate) fn union_mask(&self, lo: usize, hi: usize) -> Vec<bool> {
        let mut mask = vec![false; self.spec.order()];
        for c in lo..=hi.min(self.max_card) {
            for (m, &on) in mask.iter_mut().zip(self.layer(c)) {
                *m |= on != 0;
            }
        }
        mask
    }

    /// Smallest cardinality in `lo..=hi` reaching `g`.
    pub fn min_card_reaching(&self, g: &Element, lo: usize, hi: usize) -> Option<usize> {
        let idx = self.spec.index_of(g);
        (lo..=hi.min(self.max_card)).find(|&c| self.reach_index(c, idx))
    }

    fn rebuild_prefix(&self, from: &[u8], start: usize, end: usize, perms: &Translations) -> Vec<u8> {
        let order = self.spec.order();
        let mut layers = from.to_vec();
        for used in start..end {
            fold_item(&mut layers, order, self.max_card, used, perms.get(self.item_index[used]));
        }
        layers
    }

    /// Positions (into the item list) of a sub-multiset of cardinality `c` summing to `target`.
    pub fn witness_positions(&self, c: usize, target: &Element) -> Option<Vec<usize>> {
        if !self.reach(c, target) {
            return None;
        }
        let order = self.spec.order();
        let s = self.items.len();
        let perms = Translations::new(&self.spec, &self.item_index);
        let block = checkpoint_interval(s);
        // checkpoints[b] = table after folding the first b * block items
        let mut checkpoints = vec![empty_layers(order, self.max_card)];
        let mut start = 0;
        while start + block < s {
            let next = self.rebuild_prefix(checkpoints.last().unwrap(), start, start + block, &perms);
            checkpoints.push(next);
            start += block;
        }
        let mut card = c;
        let mut tgt = self.spec.index_of(target);
        let mut chosen = Vec::with_capacity(c);
        let mut i = s;
        while i > 0 && card > 0 {
            let b = (i - 1) / block;
            let base = b * block;
            // prefixes[k] = table of the first base + k items
            let mut prefixes = Vec::with_capacity(i - base);
            prefixes.push(checkpoints[b].clone());
            for used in base..i - 1 {
                let mut next = prefixes.last().unwrap().clone();
                fold_item(&mut next, order, self.max_card, used, perms.get(self.item_index[used]));
                prefixes.push(next);
            }
            while i > base && card > 0 {
                let prev = &prefixes[i - 1 - base];
                if prev[card * order + tgt] == 0 {
                    // item i-1 is needed
                    chosen.push(i - 1);
                    tgt = self.spec.sub_index(tgt, self.item_index[i - 1]);
                    card -= 1;
                    debug_assert!(prev[card * order + tgt] != 0);
                }
                i -= 1;
            }
        }
        debug_assert!(card == 0 && tgt == 0);
        chosen.reverse();
        Some(chosen)
    }

    /// Sub-multiset of cardinality `c` summing to `target`.
    pub fn witness(&self, c: usize, target: &Element) -> Option<Sequence> {
        let positions = self.witness_positions(c, target)?;
        let items = positions.into_iter().map(|i| self.items[i].clone());
        Some(Sequence::from_elements(&self.spec, items).expect("items belong to the group"))
    }
}

/// `build_table` under its operation name.
pub fn build_table(seq: &Sequence) -> Result<SubsumTable> {
    SubsumTable::build(seq)
}

/// `{0} ∪ Sigma(S)` plus whether `0` is reached by a nonempty sub-multiset.
fn reach_set(seq: &Sequence, stop_on_zero: bool) -> (Vec<bool>, bool) {
    let spec = seq.spec();
    let mut set = vec![false; spec.order()];
    set[0] = true;
    let mut zero_hit = false;
    let mut scratch = Vec::new();
    for (g, m) in seq.entries() {
        let perm = spec.translation(g);
        let neg = spec.index_of(&spec.neg_unchecked(g));
        for _ in 0..*m {
            if set[neg] {
                zero_hit = true;
                if stop_on_zero {
                    return (set, true);
                }
            }
            scratch.clear();
            scratch.extend(set.iter().enumerate().filter(|(_, &on)| on).map(|(x, _)| perm[x]));
            for &y in &scratch {
                set[y as usize] = true;
            }
        }
    }
    (set, zero_hit)
}

/// The subsum set of the requested kind, sorted.
pub fn subsums(seq: &Sequence, kind: SubsumKind) -> Result<Vec<Element>> {
    let spec = seq.spec();
    let s = seq.len();
    let check_k = |k: usize| {
        if k < 1 || k > s {
            Err(Error::BadK { k, len: s })
        } else {
            Ok(())
        }
    };
    let mask = match kind {
        SubsumKind::All => {
            let (mut set, zero_hit) = reach_set(seq, false);
            set[0] = zero_hit;
            set
        }
        SubsumKind::Exact(k) => {
            check_k(k)?;
            SubsumTable::build_upto(seq, k)?.union_mask(k, k)
        }
        SubsumKind::UpTo(k) => {
            check_k(k)?;
            SubsumTable::build_upto(seq, k)?.union_mask(1, k)
        }
    };
    Ok(mask
        .iter()
        .enumerate()
        .filter(|(_, &on)| on)
        .map(|(i, _)| spec.element_at(i))
        .collect())
}

/// `0 ∉ Sigma(S)`; the empty sequence is zero-sumfree.
pub fn is_zero_sumfree(seq: &Sequence) -> bool {
    !reach_set(seq, true).1
}

pub fn find_zero_sum(seq: &Sequence, constraint: ZeroSumConstraint) -> Result<Option<ZeroSumWitness>> {
    let s = seq.len();
    let (lo, hi) = match constraint {
        ZeroSumConstraint::Any => (1, s),
        ZeroSumConstraint::ExactLength(l) => (l, l),
        ZeroSumConstraint::Short => (1, (seq.spec().p() as usize).min(s)),
    };
    if lo == 0 || lo > s || hi < lo {
        return Ok(None);
    }
    if constraint == ZeroSumConstraint::Any && is_zero_sumfree(seq) {
        return Ok(None);
    }
    let table = SubsumTable::build_upto(seq, hi)?;
    let zero = seq.spec().zero();
    let Some(c) = table.min_card_reaching(&zero, lo, hi) else {
        return Ok(None);
    };
    let w = table.witness(c, &zero).expect("reachable cell has a witness");
    ZeroSumWitness::new(w, seq).map(Some)
}

/// Number of index subsets `I` (including the empty one) with zero sum.
pub fn count_zero_sum_subsequences(seq: &Sequence) -> Result<u64> {
    Ok(count_subsums(seq)?[0])
}

/// For every `g`, the number of index subsets (the empty one included) summing to `g`.
pub fn count_subsums(seq: &Sequence) -> Result<Vec<u64>> {
    let s = seq.len();
    if s > COUNT_WIDTH_GUARD {
        return Err(Error::WidthExceeded { len: s, max: COUNT_WIDTH_GUARD });
    }
    let spec = seq.spec();
    let mut counts = vec![0u64; spec.order()];
    counts[0] = 1;
    let mut next = vec![0u64; spec.order()];
    for (g, m) in seq.entries() {
        let perm = spec.translation(g);
        for _ in 0..*m {
            next.copy_from_slice(&counts);
            for (x, &n) in counts.iter().enumerate() {
                next[perm[x] as usize] += n;
            }
            std::mem::swap(&mut counts, &mut next);
        }
    }
    Ok(counts)
}

/// `sigma(S) = 0`, `S` nonempty, and no proper nonempty zero-sum sub-multiset.
pub fn is_minimal_zero_sum(seq: &Sequence) -> bool {
    if seq.is_empty() || !seq.sigma().is_zero() {
        return false;
    }
    // a proper zero-sum U forces a zero-sum on both sides of U; one avoids any fixed g
    let first = seq.entries()[0].0.clone();
    is_zero_sumfree(&seq.remove_one(&first).expect("first entry present"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u64, r: u32) -> GroupSpec {
        GroupSpec::new(p, r).unwrap()
    }

    fn seq(s: &GroupSpec, rows: &[&[u32]]) -> Sequence {
        Sequence::from_coords(s, rows).unwrap()
    }

    fn els(s: &GroupSpec, rows: &[&[u32]]) -> Vec<Element> {
        let mut v: Vec<Element> = rows.iter().map(|c| s.element(c).unwrap()).collect();
        v.sort();
        v
    }

    /// Direct enumeration over all index subsets.
    fn brute_subsums(sq: &Sequence) -> Vec<Vec<bool>> {
        let s = sq.spec();
        let items: Vec<Element> = sq.items().cloned().collect();
        let n = items.len();
        let mut out = vec![vec![false; s.order()]; n + 1];
        for mask in 0u32..(1 << n) {
            let picked = items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g);
            let g = s.sum(picked);
            out[mask.count_ones() as usize][s.index_of(&g)] = true;
        }
        out
    }

    #[test]
    fn build_table_examples() {
        let s = spec(2, 2);
        let t = build_table(&seq(&s, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(t.layer_elements(1), els(&s, &[&[0, 1], &[1, 0]]));
        assert_eq!(t.layer_elements(2), els(&s, &[&[1, 1]]));
        let e = build_table(&Sequence::empty(&s)).unwrap();
        assert_eq!(e.layer_elements(0), vec![s.zero()]);
        let s5 = spec(5, 2);
        let g = s5.element(&[2, 3]).unwrap();
        let gp = Sequence::from_pairs(&s5, [(g, 5)]).unwrap();
        assert!(build_table(&gp).unwrap().reach(5, &s5.zero()));
    }

    #[test]
    fn memory_cap_is_enforced() {
        let s = spec(101, 2);
        let g = s.element(&[1, 1]).unwrap();
        let big = Sequence::from_pairs(&s, [(g, 1000)]).unwrap();
        assert!(matches!(build_table(&big), Err(Error::MemoryCapExceeded { .. })));
    }

    #[test]
    fn subsums_examples() {
        let c5 = spec(5, 1);
        let s = seq(&c5, &[&[1], &[2], &[3]]);
        assert_eq!(subsums(&s, SubsumKind::Exact(2)).unwrap(), els(&c5, &[&[0], &[3], &[4]]));
        assert_eq!(subsums(&s, SubsumKind::All).unwrap(), c5.elements().collect::<Vec<_>>());
        assert_eq!(subsums(&s, SubsumKind::Exact(3)).unwrap(), vec![s.sigma()]);
        assert_eq!(subsums(&s, SubsumKind::UpTo(1)).unwrap(), els(&c5, &[&[1], &[2], &[3]]));
        assert!(matches!(subsums(&s, SubsumKind::Exact(0)), Err(Error::BadK { .. })));
        assert!(matches!(subsums(&s, SubsumKind::UpTo(4)), Err(Error::BadK { .. })));
    }

    #[test]
    fn zero_sumfree_examples() {
        let s = spec(3, 2);
        assert!(is_zero_sumfree(&seq(&s, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]])));
        assert!(!is_zero_sumfree(&seq(&s, &[&[1, 2], &[2, 1]])));
        assert!(is_zero_sumfree(&Sequence::empty(&s)));
        assert!(!is_zero_sumfree(&seq(&s, &[&[0, 0]])));
    }

    #[test]
    fn zero_sumfree_matches_enumeration_2x2x2x2() {
        // every zero-sumfree verdict of (1,0)^2 (0,1)^2 over C_3^2 from 2^4 subsets
        let s = spec(3, 2);
        let sq = seq(&s, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]);
        let brute = brute_subsums(&sq);
        assert!((1..=4).all(|c| !brute[c][0]));
    }

    #[test]
    fn find_zero_sum_examples() {
        let s = spec(2, 2);
        let sq = seq(&s, &[&[1, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let w = find_zero_sum(&sq, ZeroSumConstraint::ExactLength(2)).unwrap().unwrap();
        assert_eq!(w.sequence(), &seq(&s, &[&[1, 0], &[1, 0]]));
        assert!(w.verify(&sq));

        let free = seq(&spec(3, 2), &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]);
        for c in [ZeroSumConstraint::Any, ZeroSumConstraint::Short, ZeroSumConstraint::ExactLength(3)] {
            assert!(find_zero_sum(&free, c).unwrap().is_none());
        }

        let c7 = spec(7, 1);
        let ones = Sequence::from_pairs(&c7, [(c7.element(&[1]).unwrap(), 7)]).unwrap();
        let w = find_zero_sum(&ones, ZeroSumConstraint::Short).unwrap().unwrap();
        assert_eq!(w.sequence(), &ones);
        assert!(find_zero_sum(&ones, ZeroSumConstraint::ExactLength(8)).unwrap().is_none());
        assert!(find_zero_sum(&ones, ZeroSumConstraint::ExactLength(0)).unwrap().is_none());
    }

    #[test]
    fn count_examples() {
        let s = spec(5, 2);
        let free = seq(&s, &[&[1, 0], &[0, 1]]);
        assert_eq!(count_zero_sum_subsequences(&free).unwrap(), 1);
        let zeros = Sequence::empty(&s).pad_zeros(3);
        assert_eq!(count_zero_sum_subsequences(&zeros).unwrap(), 8);
        let pair = seq(&s, &[&[1, 2], &[4, 3]]);
        assert_eq!(count_zero_sum_subsequences(&pair).unwrap(), 2);
        let g = s.element(&[1, 0]).unwrap();
        let long = Sequence::from_pairs(&s, [(g, 63)]).unwrap();
        assert!(matches!(count_zero_sum_subsequences(&long), Err(Error::WidthExceeded { .. })));
    }

    #[test]
    fn minimal_zero_sum_examples() {
        let c3 = spec(3, 1);
        assert!(is_minimal_zero_sum(&seq(&c3, &[&[1], &[2]])));
        let s = spec(5, 2);
        let g = s.element(&[2, 1]).unwrap();
        assert!(is_minimal_zero_sum(&Sequence::from_pairs(&s, [(g, 5)]).unwrap()));
        assert!(!is_minimal_zero_sum(&seq(&s, &[&[0, 0], &[2, 1], &[3, 4]])));
        assert!(!is_minimal_zero_sum(&Sequence::empty(&s)));
        assert!(is_minimal_zero_sum(&seq(&s, &[&[0, 0]])));
    }

    #[test]
    fn witness_trace_long_sequence() {
        // long enough to cross several checkpoint blocks
        let s = spec(7, 2);
        let rows: Vec<Vec<u32>> = (0..40u32).map(|i| vec![(i * 3 + 1) % 7, (i * i + 2) % 7]).collect();
        let refs: Vec<&[u32]> = rows.iter().map(|r| r.as_slice()).collect();
        let sq = seq(&s, &refs);
        let t = build_table(&sq).unwrap();
        for c in 0..=sq.len() {
            for g in t.layer_elements(c) {
                let w = t.witness(c, &g).unwrap();
                assert_eq!(w.len(), c);
                assert_eq!(w.sigma(), g);
                assert!(w.divides(&sq));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_seq(max_len: usize) -> impl Strategy<Value = Sequence> {
            (prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..=2).prop_flat_map(move |(p, r)| {
                let s = GroupSpec::new(p, r).unwrap();
                prop::collection::vec(prop::collection::vec(0..p as u32, r as usize), 0..=max_len)
                    .prop_map(move |v| {
                        Sequence::from_elements(&s, v.into_iter().map(|c| s.element(&c).unwrap())).unwrap()
                    })
            })
        }

        proptest! {
            #[test]
            fn table_matches_enumeration(sq in arb_seq(12)) {
                let brute = brute_subsums(&sq);
                let t = build_table(&sq).unwrap();
                for c in 0..=sq.len() {
                    for (i, &on) in brute[c].iter().enumerate() {
                        prop_assert_eq!(t.reach_index(c, i), on);
                    }
                }
            }

            #[test]
            fn zero_sumfree_three_ways(sq in arb_seq(14)) {
                let free = is_zero_sumfree(&sq);
                prop_assert_eq!(free, count_zero_sum_subsequences(&sq).unwrap() == 1);
                let all = subsums(&sq, SubsumKind::All).unwrap();
                prop_assert_eq!(free, !all.contains(&sq.spec().zero()));
                prop_assert_eq!(free, find_zero_sum(&sq, ZeroSumConstraint::Any).unwrap().is_none());
            }

            #[test]
            fn complement_symmetry(sq in arb_seq(12)) {
                let s = *sq.spec();
                let t = build_table(&sq).unwrap();
                let sigma = sq.sigma();
                for c in 0..=sq.len() {
                    for g in t.layer_elements(c) {
                        let comp = s.sub(&sigma, &g).unwrap();
                        prop_assert!(t.reach(sq.len() - c, &comp));
                    }
                }
            }

            #[test]
            fn witnesses_reverify(sq in arb_seq(16), which in 0usize..3, l in 1usize..10) {
                let constraint = [ZeroSumConstraint::Any, ZeroSumConstraint::Short, ZeroSumConstraint::ExactLength(l)][which];
                if let Some(w) = find_zero_sum(&sq, constraint).unwrap() {
                    prop_assert!(w.verify(&sq));
                    match constraint {
                        ZeroSumConstraint::ExactLength(l) => prop_assert_eq!(w.len(), l),
                        ZeroSumConstraint::Short => prop_assert!(w.len() <= sq.spec().p() as usize),
                        ZeroSumConstraint::Any => {}
                    }
                }
            }

            #[test]
            fn monotone_under_supersequences(a in arb_seq(8), b in arb_seq(4)) {
                if a.spec() == b.spec() {
                    let ab = a.concat(&b).unwrap();
                    let ta = build_table(&a).unwrap();
                    let tab = build_table(&ab).unwrap();
                    for c in 0..=a.len() {
                        for g in ta.layer_elements(c) {
                            prop_assert!(tab.reach(c, &g));
                        }
                    }
                }
            }
        }
    }
}
