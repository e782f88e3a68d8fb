//! Extremal zero-sumfree sequences over `C_p ⊕ C_p` at small primes: maximal
//! length, the multiplicity property of the extremal ones, randomized generation,
//! and canonical forms under `GL_2(F_p)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::sequence::Sequence;
use crate::subsum::{find_zero_sum, is_zero_sumfree, ZeroSumConstraint};

/// Exhaustive search is permitted up to this prime without an override.
pub const EXHAUSTIVE_DEFAULT_MAX_P: u32 = 5;
/// Bitset reach sets hold at most 128 group elements.
pub const SEARCH_MAX_P: u32 = 11;
/// Number of pruned prefixes re-checked against the subsum oracle per run.
pub const PRUNE_SPOT_CHECKS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Randomized { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub p: u32,
    pub mode: SearchMode,
    pub symmetry: bool,
    /// Abort after this many search nodes; the partial catalog is flagged incomplete.
    pub node_budget: Option<u64>,
    /// Allows exhaustive mode above [`EXHAUSTIVE_DEFAULT_MAX_P`].
    pub allow_large: bool,
}

impl SearchConfig {
    pub fn exhaustive(p: u32) -> Self {
        SearchConfig { p, mode: SearchMode::Exhaustive, symmetry: true, node_budget: None, allow_large: false }
    }

    pub fn randomized(p: u32, samples: u64, seed: u64) -> Self {
        SearchConfig {
            p,
            mode: SearchMode::Randomized { samples, seed },
            symmetry: true,
            node_budget: None,
            allow_large: false,
        }
    }

    fn validate(&self) -> Result<GroupSpec> {
        let spec = GroupSpec::new(self.p as u64, 2)?;
        if self.p > SEARCH_MAX_P {
            return Err(Error::BadParams(format!("search supports p <= {SEARCH_MAX_P}")));
        }
        if self.mode == SearchMode::Exhaustive && self.p > EXHAUSTIVE_DEFAULT_MAX_P && !self.allow_large {
            return Err(Error::ExhaustiveNotPermitted(self.p));
        }
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalCatalog {
    pub p: u32,
    pub max_length: usize,
    /// Canonical forms of the zero-sumfree sequences of length `max_length`, sorted.
    pub sequences: Vec<Sequence>,
    pub min_h: Option<u32>,
    /// Catalog size by `h(S)`.
    pub h_histogram: BTreeMap<u32, usize>,
    /// True only for an exhaustive run that finished within budget.
    pub complete: bool,
    pub nodes: u64,
    pub pruned_checked: usize,
}

type Bits = u128;

struct Engine {
    spec: GroupSpec,
    /// Nonzero elements in lexicographic order.
    elems: Vec<Element>,
    /// Group index of `-g` for each candidate.
    neg: Vec<usize>,
    /// Translation permutation of each candidate.
    perm: Vec<Vec<u32>>,
}

impl Engine {
    fn new(spec: &GroupSpec) -> Self {
        let elems: Vec<Element> = spec.elements().filter(|g| !g.is_zero()).collect();
        let neg = elems.iter().map(|g| spec.index_of(&spec.neg_unchecked(g))).collect();
        let perm = elems.iter().map(|g| spec.translation(g)).collect();
        Engine { spec: *spec, elems, neg, perm }
    }

    fn position(&self, g: &Element) -> usize {
        self.elems.iter().position(|e| e == g).expect("nonzero element")
    }

    fn extend(&self, reach: Bits, i: usize) -> Bits {
        let perm = &self.perm[i];
        let mut next = reach;
        let mut rest = reach;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= 1 << perm[x];
        }
        next
    }

    fn blocked(&self, reach: Bits, i: usize) -> bool {
        reach >> self.neg[i] & 1 == 1
    }

    fn sequence(&self, chosen: &[usize]) -> Sequence {
        Sequence::from_elements(&self.spec, chosen.iter().map(|&i| self.elems[i].clone())).expect("valid elements")
    }
}

#[derive(Default)]
struct Local {
    best: usize,
    found: Vec<Vec<usize>>,
    pruned: Vec<(Vec<usize>, usize)>,
}

impl Local {
    fn record(&mut self, chosen: &[usize]) {
        if chosen.len() > self.best {
            self.best = chosen.len();
            self.found.clear();
        }
        if chosen.len() == self.best {
            self.found.push(chosen.to_vec());
        }
    }

    fn prune(&mut self, chosen: &[usize], i: usize) {
        if self.pruned.len() < PRUNE_SPOT_CHECKS {
            self.pruned.push((chosen.to_vec(), i));
        }
    }
}

struct Walk<'a> {
    engine: &'a Engine,
    /// Candidate positions allowed after the fixed prefix, ascending.
    allowed: &'a [usize],
    nodes: &'a AtomicU64,
    budget: u64,
    exhausted: &'a AtomicBool,
}

impl Walk<'_> {
    fn run(&self, start: usize, chosen: &mut Vec<usize>, reach: Bits, local: &mut Local) {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return;
        }
        local.record(chosen);
        for k in start..self.allowed.len() {
            let i = self.allowed[k];
            if self.engine.blocked(reach, i) {
                local.prune(chosen, i);
                continue;
            }
            chosen.push(i);
            self.run(k, chosen, self.engine.extend(reach, i), local);
            chosen.pop();
            if self.exhausted.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// How a root continues past its fixed prefix.
#[derive(Clone, Copy)]
enum Branch {
    /// Only the prefix itself.
    Only,
    /// The prefix, then `allowed[k]`, then anything from `k` on.
    From(usize),
    /// Everything from the start of `allowed`.
    All,
}

/// Collects zero-sumfree sequences by branch-and-prune over non-decreasing
/// multisets. With symmetry on, `(1,0)` is a member (Aut is transitive on nonzero
/// elements), and either everything lies in `<(1,0)>` or `(0,1)` is a member too
/// (the stabilizer of `(1,0)` is transitive on elements off that line).
fn exhaustive(spec: &GroupSpec, config: &SearchConfig) -> Result<ExtremalCatalog> {
    let engine = Engine::new(spec);
    let p = spec.p();
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let budget = config.node_budget.unwrap_or(u64::MAX);
    let all: Vec<usize> = (0..engine.elems.len()).collect();
    let e1 = engine.position(&spec.element(&[1, 0])?);
    let e2 = engine.position(&spec.element(&[0, 1])?);
    let on_line: Vec<usize> = (1..p).map(|a| engine.position(&spec.element(&[a, 0]).unwrap())).collect();

    let mut roots: Vec<(Vec<usize>, &[usize], Branch)> = Vec::new();
    let prefix = if config.symmetry {
        roots.push((vec![e1], &on_line, Branch::All));
        let mut pair = vec![e1, e2];
        pair.sort_unstable();
        pair
    } else {
        Vec::new()
    };
    roots.push((prefix.clone(), &all, Branch::Only));
    roots.extend((0..all.len()).map(|k| (prefix.clone(), &all[..], Branch::From(k))));

    let results: Vec<Local> = roots
        .par_iter()
        .map(|(prefix, allowed, branch)| {
            let mut local = Local::default();
            let walk = Walk { engine: &engine, allowed, nodes: &nodes, budget, exhausted: &exhausted };
            let mut reach: Bits = 1;
            for &i in prefix {
                reach = engine.extend(reach, i);
            }
            let mut chosen = prefix.clone();
            match *branch {
                Branch::Only => local.record(&chosen),
                Branch::All => walk.run(0, &mut chosen, reach, &mut local),
                Branch::From(k) => {
                    let i = allowed[k];
                    if engine.blocked(reach, i) {
                        local.prune(&chosen, i);
                    } else {
                        chosen.push(i);
                        walk.run(k, &mut chosen, engine.extend(reach, i), &mut local);
                    }
                }
            }
            local
        })
        .collect();

    let mut best = 0usize;
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut pruned = Vec::new();
    for local in results {
        if local.best > best {
            best = local.best;
            raw.clear();
        }
        if local.best == best {
            raw.extend(local.found);
        }
        for entry in local.pruned {
            if pruned.len() < PRUNE_SPOT_CHECKS {
                pruned.push(entry);
            }
        }
    }
    let found: BTreeSet<Sequence> =
        raw.par_iter().map(|c| canonical_form(&engine.sequence(c)).expect("rank 2")).collect();
    let pruned_checked = spot_check(&engine, &pruned)?;
    if let Some(bad) = found.iter().find(|s| !is_zero_sumfree(s)) {
        return Err(Error::Internal(format!("catalog entry is not zero-sumfree:\n{bad}")));
    }
    Ok(catalog(p, best, found, !exhausted.load(Ordering::Relaxed), nodes.load(Ordering::Relaxed), pruned_checked))
}

/// Every pruned prefix plus the rejected element must contain a zero-sum.
fn spot_check(engine: &Engine, pruned: &[(Vec<usize>, usize)]) -> Result<usize> {
    for (prefix, i) in pruned {
        let mut all = prefix.clone();
        all.push(*i);
        if find_zero_sum(&engine.sequence(&all), ZeroSumConstraint::Any)?.is_none() {
            return Err(Error::Internal("a pruned prefix has no zero-sum".into()));
        }
    }
    Ok(pruned.len())
}

fn catalog(p: u32, max_length: usize, found: BTreeSet<Sequence>, complete: bool, nodes: u64, pruned_checked: usize) -> ExtremalCatalog {
    let mut sequences: Vec<Sequence> = found.into_iter().collect();
    sequences.sort_by(|a, b| a.cmp_expanded(b));
    let mut h_histogram = BTreeMap::new();
    for s in &sequences {
        *h_histogram.entry(s.h()).or_insert(0) += 1;
    }
    let min_h = h_histogram.keys().next().copied();
    ExtremalCatalog { p, max_length, sequences, min_h, h_histogram, complete, nodes, pruned_checked }
}

/// The maximal length of a zero-sumfree sequence over `C_p^2`, with the extremal catalog.
pub fn max_zero_sumfree_length(config: &SearchConfig) -> Result<ExtremalCatalog> {
    let spec = config.validate()?;
    match config.mode {
        SearchMode::Exhaustive => exhaustive(&spec, config),
        SearchMode::Randomized { samples, seed } => randomized(&spec, samples, seed),
    }
}

/// Longest lengths first; the first length with any sampled success wins.
fn randomized(spec: &GroupSpec, samples: u64, seed: u64) -> Result<ExtremalCatalog> {
    let p = spec.p();
    let top = 2 * p as usize - 2;
    let mut nodes = 0u64;
    for length in (0..=top).rev() {
        let found: BTreeSet<Sequence> = (0..samples)
            .into_par_iter()
            .filter_map(|i| random_zero_sumfree(p, length, seed.wrapping_add(i)).ok())
            .map(|s| canonical_form(&s).expect("rank 2"))
            .collect();
        nodes += samples;
        if !found.is_empty() {
            return Ok(catalog(p, length, found, false, nodes, 0));
        }
    }
    Ok(catalog(p, 0, BTreeSet::from([Sequence::empty(spec)]), false, nodes, 0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyBReport {
    pub p: u32,
    pub length: usize,
    pub bound: u32,
    pub catalog_size: usize,
    pub min_h: Option<u32>,
    pub h_histogram: BTreeMap<u32, usize>,
    pub complete: bool,
}

/// Every zero-sumfree sequence of length `2p - 2` has an element of multiplicity
/// at least `p - 2`. Checked over the extremal catalog; `h` is invariant under
/// automorphisms, so orbit representatives suffice.
pub fn verify_property_b(config: &SearchConfig) -> Result<PropertyBReport> {
    let catalog = max_zero_sumfree_length(config)?;
    if config.mode == SearchMode::Exhaustive && !catalog.complete {
        return Err(Error::BudgetExceeded { nodes: catalog.nodes });
    }
    let p = config.p;
    let length = 2 * p as usize - 2;
    if catalog.max_length != length {
        return Err(Error::violation(
            "property-b",
            format!("maximal zero-sumfree length {} differs from 2p - 2 = {length}", catalog.max_length),
        ));
    }
    let bound = p.saturating_sub(2);
    if let Some(bad) = catalog.sequences.iter().find(|s| s.h() < bound) {
        return Err(Error::violation("property-b", format!("h = {} < {bound} for\n{bad}", bad.h())));
    }
    Ok(PropertyBReport {
        p,
        length,
        bound,
        catalog_size: catalog.sequences.len(),
        min_h: catalog.min_h,
        h_histogram: catalog.h_histogram,
        complete: catalog.complete,
    })
}

/// Restarts of the randomized depth-first builder.
pub const RANDOM_RESTARTS: u64 = 64;
/// Node budget per restart.
pub const RANDOM_NODES_PER_RESTART: u64 = 20_000;

/// A zero-sumfree sequence of the given length over `C_p^2`, deterministic per seed.
/// Lengths above `2p - 2` fail at once: no such sequence exists.
pub fn random_zero_sumfree(p: u32, length: usize, seed: u64) -> Result<Sequence> {
    let spec = GroupSpec::new(p as u64, 2)?;
    if p > SEARCH_MAX_P {
        return Err(Error::BadParams(format!("random generation supports p <= {SEARCH_MAX_P}")));
    }
    if length > 2 * p as usize - 2 {
        return Err(Error::Fail { length, attempts: 0 });
    }
    let engine = Engine::new(&spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RESTARTS {
        let mut budget = RANDOM_NODES_PER_RESTART;
        let mut chosen = Vec::with_capacity(length);
        if random_walk(&engine, length, 1, &mut chosen, &mut rng, &mut budget) {
            let s = engine.sequence(&chosen);
            debug_assert!(is_zero_sumfree(&s));
            return Ok(s);
        }
    }
    Err(Error::Fail { length, attempts: RANDOM_RESTARTS })
}

fn random_walk(
    engine: &Engine,
    length: usize,
    reach: Bits,
    chosen: &mut Vec<usize>,
    rng: &mut ChaCha8Rng,
    budget: &mut u64,
) -> bool {
    if chosen.len() == length {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let mut order: Vec<usize> = (0..engine.elems.len()).collect();
    order.shuffle(rng);
    // extremal sequences are dominated by one element, so favour repeats
    if let Some(&last) = chosen.last() {
        if rng.gen_bool(0.5) {
            order.retain(|&i| i != last);
            order.insert(0, last);
        }
    }
    for i in order {
        if engine.blocked(reach, i) {
            continue;
        }
        chosen.push(i);
        if random_walk(engine, length, engine.extend(reach, i), chosen, rng, budget) {
            return true;
        }
        chosen.pop();
        if *budget == 0 {
            return false;
        }
    }
    false
}

/// Applies the matrix with columns `(c1, c2)`: `(x, y) -> x c1 + y c2`.
fn apply(spec: &GroupSpec, c1: &[u32], c2: &[u32], g: &Element) -> Element {
    let p = spec.p();
    let (x, y) = (g.coords()[0], g.coords()[1]);
    let coord = |i: usize| (x * c1[i] + y * c2[i]) % p;
    spec.element(&[coord(0), coord(1)]).expect("reduced")
}

/// The lexicographically least image of `S` under `GL_2(F_p)`, comparing sorted
/// element lists.
///
/// The least image starts with its zeros and then as many copies of `(0,1)` as
/// possible, so some element of maximal nonzero multiplicity is sent to `(0,1)`.
/// Only those matrices are tried: for each such `g`, a fixed complement `u` and
/// every image `w` of `u` off the line `<(0,1)>`. This is exact for every `p`.
pub fn canonical_form(seq: &Sequence) -> Result<Sequence> {
    let spec = seq.spec();
    spec.require_rank(2)?;
    let p = spec.p();
    let nonzero: Vec<&(Element, u32)> = seq.entries().iter().filter(|(g, _)| !g.is_zero()).collect();
    let Some(top) = nonzero.iter().map(|(_, m)| *m).max() else { return Ok(seq.clone()) };
    let mut best: Option<Sequence> = None;
    for (g, _) in nonzero.iter().filter(|(_, m)| *m == top) {
        let (gx, gy) = (g.coords()[0], g.coords()[1]);
        let u: [u32; 2] = if gy != 0 { [1, 0] } else { [0, 1] };
        // det [g u] in original coordinates
        let det = (gx * u[1] + p * p - gy * u[0]) % p;
        debug_assert!(det != 0);
        for wx in 1..p {
            for wy in 0..p {
                // target matrix T: g -> (0,1), u -> (wx, wy); M = T [g u]^{-1}
                let inv_det = crate::group::inv_mod(det, p);
                // [g u]^{-1} = inv_det * [[u1, -u0], [-gy, gx]]
                let inv = [
                    [u[1] * inv_det % p, (p - u[0]) % p * inv_det % p],
                    [(p - gy) % p * inv_det % p, gx * inv_det % p],
                ];
                // T = [[0, wx], [1, wy]] (columns are the images)
                let t = [[0, wx], [1, wy]];
                let m = |r: usize, c: usize| (t[r][0] * inv[0][c] + t[r][1] * inv[1][c]) % p;
                let c1 = [m(0, 0), m(1, 0)];
                let c2 = [m(0, 1), m(1, 1)];
                let image = seq.map(|h| apply(spec, &c1, &c2, h));
                if best.as_ref().map_or(true, |b| image.cmp_expanded(b).is_lt()) {
                    best = Some(image);
                }
            }
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// All invertible 2x2 matrices, as column pairs.
pub fn general_linear(p: u32) -> Vec<([u32; 2], [u32; 2])> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p != 0 {
                        out.push(([a, c], [b, d]));
                    }
                }
            }
        }
    }
    out
}

/// Applies an automorphism given by its columns.
pub fn apply_automorphism(seq: &Sequence, columns: &([u32; 2], [u32; 2])) -> Result<Sequence> {
    let spec = seq.spec();
    spec.require_rank(2)?;
    Ok(seq.map(|g| apply(spec, &columns.0, &columns.1, g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_canonical(seq: &Sequence) -> Sequence {
        general_linear(seq.spec().p())
            .iter()
            .map(|m| apply_automorphism(seq, m).unwrap())
            .min_by(|a, b| a.cmp_expanded(b))
            .unwrap()
    }

    #[test]
    fn davenport_small() {
        let c2 = max_zero_sumfree_length(&SearchConfig::exhaustive(2)).unwrap();
        assert_eq!(c2.max_length, 2);
        assert!(c2.complete);
        let s2 = GroupSpec::new(2, 2).unwrap();
        assert_eq!(c2.sequences, vec![canonical_form(&Sequence::from_coords(&s2, &[&[1, 0], &[0, 1]]).unwrap()).unwrap()]);

        let c3 = max_zero_sumfree_length(&SearchConfig::exhaustive(3)).unwrap();
        assert_eq!(c3.max_length, 4);
        let s3 = GroupSpec::new(3, 2).unwrap();
        let example = Sequence::from_coords(&s3, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]).unwrap();
        assert!(c3.sequences.contains(&canonical_form(&example).unwrap()));
    }

    #[test]
    fn symmetry_on_and_off_agree() {
        for p in [2, 3] {
            let on = max_zero_sumfree_length(&SearchConfig::exhaustive(p)).unwrap();
            let off = max_zero_sumfree_length(&SearchConfig { symmetry: false, ..SearchConfig::exhaustive(p) }).unwrap();
            assert_eq!(on.max_length, off.max_length);
            assert_eq!(on.sequences, off.sequences);
            assert!(off.nodes > on.nodes);
        }
    }

    #[test]
    fn unreduced_brute_force_p2() {
        // all multisets of nonzero elements of C_2^2 up to length 4
        let s = GroupSpec::new(2, 2).unwrap();
        let nz: Vec<Element> = s.elements().filter(|g| !g.is_zero()).collect();
        let mut best = 0;
        for a in 0..=4u32 {
            for b in 0..=4 - a {
                for c in 0..=4 - a - b {
                    let q = Sequence::from_pairs(&s, [(nz[0].clone(), a), (nz[1].clone(), b), (nz[2].clone(), c)]).unwrap();
                    if is_zero_sumfree(&q) {
                        best = best.max(q.len());
                    }
                }
            }
        }
        assert_eq!(best, 2);
    }

    #[test]
    fn property_b_small() {
        let r = verify_property_b(&SearchConfig::exhaustive(3)).unwrap();
        assert_eq!(r.bound, 1);
        assert!(r.min_h.unwrap() >= 1);
        assert!(matches!(
            max_zero_sumfree_length(&SearchConfig::exhaustive(7)),
            Err(Error::ExhaustiveNotPermitted(7))
        ));
    }

    #[test]
    fn budget_marks_incomplete() {
        let cfg = SearchConfig { node_budget: Some(5), ..SearchConfig::exhaustive(5) };
        let c = max_zero_sumfree_length(&cfg).unwrap();
        assert!(!c.complete);
        assert!(matches!(verify_property_b(&cfg), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn random_generation() {
        let s = random_zero_sumfree(7, 8, 1).unwrap();
        assert_eq!(s.len(), 8);
        assert!(is_zero_sumfree(&s));
        assert_eq!(s, random_zero_sumfree(7, 8, 1).unwrap());
        assert!(matches!(random_zero_sumfree(7, 13, 1), Err(Error::Fail { .. })));
        for seed in 0..5 {
            assert!(is_zero_sumfree(&random_zero_sumfree(5, 8, seed).unwrap()));
        }
    }

    #[test]
    fn randomized_mode_reaches_extremal_length() {
        let c = max_zero_sumfree_length(&SearchConfig::randomized(3, 20, 0)).unwrap();
        assert_eq!(c.max_length, 4);
        assert!(!c.complete);
    }

    #[test]
    fn canonical_matches_full_orbit() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u32, 3, 5, 7] {
            let s = GroupSpec::new(p as u64, 2).unwrap();
            for _ in 0..15 {
                let len = rng.gen_range(0..8);
                let items: Vec<Element> =
                    (0..len).map(|_| s.element(&[rng.gen_range(0..p), rng.gen_range(0..p)]).unwrap()).collect();
                let q = Sequence::from_elements(&s, items).unwrap();
                assert_eq!(canonical_form(&q).unwrap(), brute_canonical(&q), "{q}");
            }
        }
    }

    #[test]
    fn swap_shares_canonical_form() {
        let s = GroupSpec::new(5, 2).unwrap();
        let q = Sequence::from_coords(&s, &[&[1, 2], &[3, 1], &[3, 1]]).unwrap();
        let swapped = q.map(|g| s.element(&[g.coords()[1], g.coords()[0]]).unwrap());
        assert_eq!(canonical_form(&q).unwrap(), canonical_form(&swapped).unwrap());
    }

    fn arb_seq(p: u32) -> impl Strategy<Value = Sequence> {
        let s = GroupSpec::new(p as u64, 2).unwrap();
        proptest::collection::vec((0..p, 0..p), 0..10).prop_map(move |v| {
            Sequence::from_elements(&s, v.into_iter().map(|(a, b)| s.element(&[a, b]).unwrap())).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn canonical_preserves_invariants(q in arb_seq(5)) {
            let c = canonical_form(&q).unwrap();
            prop_assert_eq!(c.len(), q.len());
            prop_assert_eq!(c.h(), q.h());
            let mut mq: Vec<u32> = q.entries().iter().map(|e| e.1).collect();
            let mut mc: Vec<u32> = c.entries().iter().map(|e| e.1).collect();
            mq.sort_unstable();
            mc.sort_unstable();
            prop_assert_eq!(mq, mc);
            prop_assert_eq!(is_zero_sumfree(&c), is_zero_sumfree(&q));
            prop_assert_eq!(canonical_form(&c).unwrap(), c);
        }

        #[test]
        fn automorphisms_commute_with_sigma(q in arb_seq(5), k in 0usize..480) {
            let gl = general_linear(5);
            let m = gl[k % gl.len()];
            let image = apply_automorphism(&q, &m).unwrap();
            let spec = q.spec();
            prop_assert_eq!(image.sigma(), apply(spec, &m.0, &m.1, &q.sigma()));
            prop_assert_eq!(is_zero_sumfree(&image), is_zero_sumfree(&q));
        }
    }
}
