//! Constructive case machinery for the multiplicity theorem on long zero-sumfree
//! sequences over `C_p ⊕ C_p`, and the two reductions built on it.
//!
//! At desk-scale primes the asymptotic inequalities usually fail, so every case
//! re-checks the inequalities it relies on and steps aside (`Inapplicable`) when
//! one fails. The exact subsum DP always has the last word.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Basis, Element, GroupSpec};
use crate::lemmas::{find_n_or_2n_zero_sum, find_zero_sumfree_translate, full_cover_length, sumset, Certificate};
use crate::sequence::Sequence;
use crate::subsum::{find_zero_sum, is_minimal_zero_sum, is_zero_sumfree, SubsumTable, ZeroSumConstraint, ZeroSumWitness};

/// The constant every `c` is raised to before the cases run.
pub const C_NORMALIZATION: f64 = 9.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    HypothesisFails,
    ConclusionHolds,
    ZeroSumFound,
    SmallPrimeCounterexample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    Case1,
    Case2,
    #[serde(rename = "case3-rebasis")]
    Case3Rebasis,
    FallbackDp,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseLabel::Case1 => "case1",
            CaseLabel::Case2 => "case2",
            CaseLabel::Case3Rebasis => "case3-rebasis",
            CaseLabel::FallbackDp => "fallback-dp",
        })
    }
}

/// One line of the case log: which step ran and what it concluded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseAttempt {
    pub step: String,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub p: u32,
    pub length: usize,
    /// `2p - c sqrt(p)`.
    pub required_length: f64,
    pub h: u32,
    /// `floor(p^{1/4 - epsilon})`, or the override.
    pub bound: u64,
    pub case: Option<CaseLabel>,
    pub witness: Option<ZeroSumWitness>,
    pub rebasis: Option<Basis>,
    pub attempts: Vec<CaseAttempt>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AnalyzeOptions {
    /// Replaces `floor(p^{1/4 - epsilon})`; `Some(u64::MAX)` forces the case machinery
    /// to run on every instance that meets the length hypothesis.
    pub bound_override: Option<u64>,
}

/// The sequence in basis coordinates, with the heaviest first-coordinate class of
/// its squarefree part pulled out.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseState {
    pub source: Sequence,
    pub basis: Basis,
    /// `source` in basis coordinates: `(phi_1, phi_2)`.
    pub coords: Sequence,
    pub t: Sequence,
    pub h0: u32,
    pub a: u32,
    /// `(a, b_1) ... (a, b_{h0})`, `b_i` distinct and ascending.
    pub w: Sequence,
    pub s1: Sequence,
}

impl CaseState {
    pub fn new(seq: &Sequence, basis: &Basis) -> Result<Self> {
        let spec = seq.spec();
        spec.require_rank(2)?;
        if basis.spec() != spec {
            return Err(Error::GroupMismatch);
        }
        let coords = seq.map(|g| basis.to_coords(g));
        let t = coords.max_squarefree();
        let mut per_a = vec![0u32; spec.p() as usize];
        for g in t.support() {
            per_a[g.coords()[0] as usize] += 1;
        }
        let h0 = per_a.iter().copied().max().unwrap_or(0);
        // smallest residue among the maximizers
        let a = per_a.iter().position(|&n| n == h0).unwrap_or(0) as u32;
        let w = t.filter(|g| g.coords()[0] == a);
        let s1 = coords.divide(&w)?;
        Ok(CaseState { source: seq.clone(), basis: basis.clone(), coords, t, h0, a, w, s1 })
    }

    fn spec(&self) -> &GroupSpec {
        self.source.spec()
    }

    /// Maps a sub-multiset of `coords` back to the source and verifies it as a zero-sum.
    fn finish(&self, parts: Vec<Element>) -> Result<ZeroSumWitness> {
        let back = parts.iter().map(|g| self.basis.recombine(g.coords()));
        let seq = Sequence::from_elements(self.spec(), back)?;
        ZeroSumWitness::new(seq, &self.source)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CaseOutcome {
    Witness(ZeroSumWitness),
    Inapplicable(String),
}

fn inapplicable(reason: impl Into<String>) -> Result<CaseOutcome> {
    Ok(CaseOutcome::Inapplicable(reason.into()))
}

fn cyclic(p: u32) -> GroupSpec {
    GroupSpec::new(p as u64, 1).expect("p already validated")
}

fn residue(spec1: &GroupSpec, v: u32) -> Element {
    spec1.element(&[v % spec1.p()]).expect("reduced residue")
}

fn neg_mod(x: u64, p: u32) -> u32 {
    ((p as u64 - x % p as u64) % p as u64) as u32
}

/// Subset-sum machinery over first coordinates of `pool`: the first `pool` entry
/// subset of cardinality in `[1, max_len]` with `phi_1` sum equal to `target`.
fn first_coordinate_hit(pool: &[Element], p: u32, target: u32, max_len: usize) -> Result<Option<Vec<Element>>> {
    let spec1 = cyclic(p);
    let items: Vec<Element> = pool.iter().map(|g| residue(&spec1, g.coords()[0])).collect();
    let max_len = max_len.min(items.len());
    if max_len == 0 {
        return Ok(None);
    }
    let table = SubsumTable::from_items(&spec1, items, max_len)?;
    let goal = residue(&spec1, target);
    let Some(card) = table.min_card_reaching(&goal, 1, max_len) else { return Ok(None) };
    let positions = table.witness_positions(card, &goal).expect("reachable");
    Ok(Some(positions.into_iter().map(|i| pool[i].clone()).collect()))
}

/// `h0 >= floor(sqrt(4p - 7)) + 1`: the `b`-values of `k` entries of `W` cover `C_p`
/// with `l = floor(k/2)`-subsets, which absorbs any second coordinate.
pub fn case1_extract(state: &CaseState) -> Result<CaseOutcome> {
    let p = state.spec().p();
    let k = full_cover_length(p);
    if (state.h0 as usize) < k {
        return inapplicable(format!("h0 = {} < {k}", state.h0));
    }
    let l = k / 2;
    let wk: Vec<Element> = state.w.items().take(k).cloned().collect();
    let spec1 = cyclic(p);
    let b_items: Vec<Element> = wk.iter().map(|g| residue(&spec1, g.coords()[1])).collect();
    let b_table = SubsumTable::from_items(&spec1, b_items, l)?;
    if b_table.layer_elements(l).len() != p as usize {
        return inapplicable(format!("Sigma_{l} of the b-values misses part of C_{p}"));
    }
    let s2 = state.coords.divide(&Sequence::from_elements(state.spec(), wk.clone())?)?;
    let nonzero: Vec<Element> = s2.items().filter(|g| g.coords()[0] != 0).cloned().collect();
    if nonzero.len() < p as usize {
        return inapplicable(format!("only {} entries of S_2 have nonzero first coordinate", nonzero.len()));
    }
    let target = neg_mod(l as u64 * state.a as u64, p);
    let Some(s3) = first_coordinate_hit(&nonzero, p, target, nonzero.len())? else {
        return inapplicable("no S_3 with the required first-coordinate sum");
    };
    let sigma2: u64 = s3.iter().map(|g| g.coords()[1] as u64).sum();
    let need = residue(&spec1, neg_mod(sigma2, p));
    let Some(positions) = b_table.witness_positions(l, &need) else {
        return inapplicable("second coordinate not absorbed");
    };
    let mut parts = s3;
    parts.extend(positions.into_iter().map(|i| wk[i].clone()));
    Ok(CaseOutcome::Witness(state.finish(parts)?))
}

/// `c_eff p^{1/4} <= h0 <= floor(sqrt(4p - 7))`: a short `S_4` fixes the first
/// coordinate, and Cauchy-Davenport on `<e_2>` closes the second.
pub fn case2_extract(state: &CaseState, c_eff: f64) -> Result<CaseOutcome> {
    let p = state.spec().p();
    let pf = p as f64;
    let h0 = state.h0 as usize;
    let upper = full_cover_length(p) - 1;
    if (h0 as f64) < c_eff * pf.powf(0.25) || h0 > upper {
        return inapplicable(format!("h0 = {h0} outside [{:.3}, {upper}]", c_eff * pf.powf(0.25)));
    }
    let k = h0 / 2;
    if k == 0 {
        return inapplicable("k = floor(h0/2) = 0");
    }
    let spec = state.spec();
    let spec1 = cyclic(p);
    let w_items: Vec<Element> = state.w.items().cloned().collect();
    let b_items: Vec<Element> = w_items.iter().map(|g| residue(&spec1, g.coords()[1])).collect();
    let b_table = SubsumTable::from_items(&spec1, b_items, k)?;
    let sigma_k: Vec<u32> = b_table.layer_elements(k).iter().map(|g| g.coords()[0]).collect();
    let half_bound = (pf).min(((h0 * h0 + 3) as f64) / 4.0);
    if (sigma_k.len() as f64) < half_bound {
        return inapplicable(format!("|Sigma_k(b)| = {} < {half_bound}", sigma_k.len()));
    }

    let mut first_counts = vec![0usize; p as usize];
    for g in state.s1.items() {
        first_counts[g.coords()[0] as usize] += 1;
    }
    let h1 = first_counts.iter().copied().max().unwrap_or(0);
    let pool: Vec<Element> =
        state.s1.items().filter(|g| g.coords()[0] != 0).take(p as usize).cloned().collect();
    if pool.len() < p as usize {
        return inapplicable(format!("only {} entries of S_1 have nonzero first coordinate", pool.len()));
    }
    let target = neg_mod(k as u64 * state.a as u64, p);
    let Some(s4) = first_coordinate_hit(&pool, p, target, h1)? else {
        return inapplicable(format!("no S_4 of length <= h1 = {h1}"));
    };
    let s4_seq = Sequence::from_elements(spec, s4.clone())?;
    let sigma2_s4: u64 = s4.iter().map(|g| g.coords()[1] as u64).sum();

    // A = sigma(S_4) + Sigma_k(W), recorded by the Sigma_k residue that produced it
    let mut a_set: BTreeMap<u32, u32> = BTreeMap::new();
    for &x in &sigma_k {
        a_set.entry(((sigma2_s4 + x as u64) % p as u64) as u32).or_insert(x);
    }
    let s5 = state.s1.divide(&s4_seq)?;
    let s5_items: Vec<Element> = s5.items().cloned().collect();
    let mut b_set: BTreeMap<u32, usize> = BTreeMap::new();
    let s5_table = (!s5_items.is_empty())
        .then(|| SubsumTable::from_items(spec, s5_items.clone(), s5_items.len()))
        .transpose()?;
    if let Some(table) = &s5_table {
        for y in 0..p {
            let g = spec.element(&[0, y])?;
            if let Some(card) = table.min_card_reaching(&g, 1, s5_items.len()) {
                b_set.insert(y, card);
            }
        }
    }
    if a_set.len() + b_set.len() < p as usize + 1 {
        return inapplicable(format!("|A| + |B| = {} < p + 1", a_set.len() + b_set.len()));
    }
    let a_vals: Vec<u32> = a_set.keys().copied().collect();
    let b_vals: Vec<u32> = b_set.keys().copied().collect();
    let covered = sumset(&spec1, &a_vals, &b_vals)?;
    debug_assert_eq!(covered.sum.len(), p as usize);
    let (y, card) = b_set
        .iter()
        .find(|(&y, _)| a_set.contains_key(&neg_mod(y as u64, p)))
        .map(|(&y, &c)| (y, c))
        .ok_or_else(|| Error::violation("case2", "A + B covers C_p but misses 0"))?;
    let x_key = neg_mod(y as u64, p);
    let x = a_set[&x_key];
    let w_positions = b_table.witness_positions(k, &residue(&spec1, x)).expect("x in Sigma_k");
    let target = spec.element(&[0, y])?;
    let s5_positions =
        s5_table.as_ref().and_then(|t| t.witness_positions(card, &target)).expect("y in B");
    let mut parts = s4;
    parts.extend(w_positions.into_iter().map(|i| w_items[i].clone()));
    parts.extend(s5_positions.into_iter().map(|i| s5_items[i].clone()));
    Ok(CaseOutcome::Witness(state.finish(parts)?))
}

/// Looks for a coset `g + H` of an order-`p` subgroup with more than
/// `floor(c_eff p^{1/2 - epsilon})` entries. If one exists, returns a basis with
/// `e_2` spanning `H`, so that coset has constant first coordinate.
pub fn case3_rebasis(seq: &Sequence, epsilon: f64, c_eff: f64) -> Result<Option<Basis>> {
    let spec = seq.spec();
    spec.require_rank(2)?;
    let p = spec.p();
    let cap = (c_eff * (p as f64).powf(0.5 - epsilon)).floor() as u64;
    let mut best: Option<(u64, usize)> = None;
    let lines = spec.order_p_subgroups()?;
    for (i, line) in lines.iter().enumerate() {
        let mut counts = vec![0u64; p as usize];
        for (g, m) in seq.entries() {
            counts[line.coset_label(spec, g) as usize] += *m as u64;
        }
        let heaviest = counts.iter().copied().max().unwrap_or(0);
        if heaviest > cap && best.map_or(true, |(n, _)| heaviest > n) {
            best = Some((heaviest, i));
        }
    }
    let Some((_, i)) = best else { return Ok(None) };
    let d = lines[i].direction().clone();
    let e1 = if d.coords()[0] == 1 { spec.element(&[0, 1])? } else { spec.element(&[1, 0])? };
    Basis::change(spec, e1, d).map(Some)
}

fn validate_params(epsilon: f64, c: f64) -> Result<()> {
    if !(epsilon.is_finite() && epsilon > 0.0 && epsilon < 0.25) {
        return Err(Error::BadParams(format!("epsilon must lie in (0, 1/4), got {epsilon}")));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::BadParams(format!("c must be positive, got {c}")));
    }
    Ok(())
}

/// `floor(p^{1/4 - epsilon})`.
pub fn multiplicity_bound(p: u32, epsilon: f64) -> u64 {
    (p as f64).powf(0.25 - epsilon).floor() as u64
}

pub fn analyze_theorem_1_1(seq: &Sequence, epsilon: f64, c: f64) -> Result<Verdict> {
    analyze_theorem_1_1_with(seq, epsilon, c, &AnalyzeOptions::default())
}

pub fn analyze_theorem_1_1_with(seq: &Sequence, epsilon: f64, c: f64, options: &AnalyzeOptions) -> Result<Verdict> {
    let spec = seq.spec();
    spec.require_rank(2)?;
    validate_params(epsilon, c)?;
    let p = spec.p();
    let pf = p as f64;
    let required_length = 2.0 * pf - c * pf.sqrt();
    let bound = options.bound_override.unwrap_or_else(|| multiplicity_bound(p, epsilon));
    let mut verdict = Verdict {
        kind: VerdictKind::HypothesisFails,
        p,
        length: seq.len(),
        required_length,
        h: seq.h(),
        bound,
        case: None,
        witness: None,
        rebasis: None,
        attempts: Vec::new(),
    };
    if (seq.len() as f64) < required_length {
        return Ok(verdict);
    }
    if seq.h() as u64 >= bound {
        verdict.kind = VerdictKind::ConclusionHolds;
        return Ok(verdict);
    }
    let c_eff = c.max(C_NORMALIZATION);
    let mut basis = Basis::standard(spec);
    for round in 0..2 {
        let state = CaseState::new(seq, &basis)?;
        let steps: [(CaseLabel, Box<dyn Fn(&CaseState) -> Result<CaseOutcome>>); 2] = [
            (CaseLabel::Case1, Box::new(case1_extract)),
            (CaseLabel::Case2, Box::new(move |s| case2_extract(s, c_eff))),
        ];
        for (label, step) in steps {
            let name = if round == 0 { label.to_string() } else { format!("{label} after rebasis") };
            match step(&state)? {
                CaseOutcome::Witness(w) => {
                    verdict.attempts.push(CaseAttempt { step: name, outcome: format!("witness of length {}", w.len()) });
                    verdict.kind = VerdictKind::ZeroSumFound;
                    verdict.case = Some(if round == 0 { label } else { CaseLabel::Case3Rebasis });
                    verdict.witness = Some(w);
                    if round == 1 {
                        verdict.rebasis = Some(basis);
                    }
                    return Ok(verdict);
                }
                CaseOutcome::Inapplicable(why) => verdict.attempts.push(CaseAttempt { step: name, outcome: why }),
            }
        }
        if round == 1 {
            break;
        }
        match case3_rebasis(seq, epsilon, c_eff)? {
            Some(b) => {
                verdict.attempts.push(CaseAttempt {
                    step: CaseLabel::Case3Rebasis.to_string(),
                    outcome: format!("heavy coset along {}", b.vectors()[1]),
                });
                basis = b;
            }
            None => {
                verdict.attempts.push(CaseAttempt {
                    step: CaseLabel::Case3Rebasis.to_string(),
                    outcome: "every coset within the cap".into(),
                });
                break;
            }
        }
    }
    verdict.case = Some(CaseLabel::FallbackDp);
    match find_zero_sum(seq, ZeroSumConstraint::Any)? {
        Some(w) => {
            verdict.attempts.push(CaseAttempt {
                step: CaseLabel::FallbackDp.to_string(),
                outcome: format!("zero-sum of length {}", w.len()),
            });
            verdict.kind = VerdictKind::ZeroSumFound;
            verdict.witness = Some(w);
        }
        None => {
            verdict.attempts.push(CaseAttempt {
                step: CaseLabel::FallbackDp.to_string(),
                outcome: format!("zero-sumfree with h = {} < {bound}", seq.h()),
            });
            verdict.kind = VerdictKind::SmallPrimeCounterexample;
        }
    }
    Ok(verdict)
}

/// Every intermediate object of the `3p - c sqrt(p) - 1` reduction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem12Report {
    pub padding: usize,
    pub padded: Sequence,
    /// Zero-sum of length `p` or `2p` inside the padded sequence.
    pub t: Sequence,
    /// `t` with its zeros removed.
    pub t1: Sequence,
    pub removed: Element,
    /// `t1` minus `removed`; zero-sumfree.
    pub reduced: Sequence,
    pub verdict: Verdict,
}

fn step_check(ok: bool, step: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::violation(step, detail()))
    }
}

pub fn reduce_theorem_1_2(seq: &Sequence, epsilon: f64, c: f64) -> Result<Theorem12Report> {
    let spec = seq.spec();
    spec.require_rank(2)?;
    validate_params(epsilon, c)?;
    let p = spec.p() as usize;
    let pf = p as f64;
    let len = seq.len();
    let lower = 3.0 * pf - c * pf.sqrt() - 1.0;
    if (len as f64) < lower || len > 3 * p - 2 {
        return Err(Error::BadLength(format!("need {lower:.3} <= |S| <= {}, got {len}", 3 * p - 2)));
    }
    let padding = 3 * p - 2 - len;
    if padding >= p {
        return Err(Error::BadLength(format!("padding {padding} must stay below p = {p}")));
    }
    if let Some(w) = find_zero_sum(seq, ZeroSumConstraint::Short)? {
        return Err(Error::HasShortZeroSum { length: w.len() });
    }
    let padded = seq.pad_zeros(padding as u32);
    let lemma = find_n_or_2n_zero_sum(&padded)?;
    let Certificate::ZeroSum { witness: t, .. } = lemma.certificate else {
        return Err(Error::Internal("length-n-or-2n search returned no witness".into()));
    };
    let zero = spec.zero();
    let t1 = t.filter(|g| !g.is_zero());
    step_check(t1.len() > p, "strip zeros", || format!("|T_1| = {} <= p", t1.len()))?;
    step_check(t.len() == 2 * p, "zero-sum length", || format!("|T| = {} != 2p", t.len()))?;
    step_check(t1.divides(seq), "T_1 | S", || "T_1 is not a subsequence of S".into())?;
    step_check(is_minimal_zero_sum(&t1), "minimality", || "T_1 is not a minimal zero-sum".into())?;
    let removed = t1.entries()[0].0.clone();
    debug_assert!(removed != zero);
    let reduced = t1.remove_one(&removed)?;
    step_check(is_zero_sumfree(&reduced), "remove g", || "T_1 g^{-1} has a zero-sum".into())?;
    let floor_term = (c * pf.sqrt()).floor() as usize;
    step_check(reduced.len() + floor_term >= 2 * p, "length of T_1 g^{-1}", || {
        format!("|T_1 g^-1| = {} < 2p - floor(c sqrt p) = {}", reduced.len(), 2 * p - floor_term.min(2 * p))
    })?;
    let verdict = analyze_theorem_1_1(&reduced, epsilon, c)?;
    Ok(Theorem12Report { padding, padded, t, t1, removed, reduced, verdict })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem13Report {
    pub k: usize,
    pub shift: Element,
    pub t: Sequence,
    pub translated: Sequence,
    pub h_s: u32,
    pub h_t: u32,
    pub h_translated: u32,
    pub verdict: Verdict,
}

pub fn reduce_theorem_1_3(seq: &Sequence, epsilon: f64, c: f64) -> Result<Theorem13Report> {
    let spec = seq.spec();
    spec.require_rank(2)?;
    validate_params(epsilon, c)?;
    let p = spec.p() as usize;
    let pf = p as f64;
    let order = spec.order();
    let len = seq.len();
    let lower = (order as f64) + 2.0 * pf - c * pf.sqrt() - 1.0;
    if (len as f64) < lower || len <= order {
        return Err(Error::BadLength(format!("need |S| >= max({lower:.3}, p^2 + 1), got {len}")));
    }
    let k = len - order;
    let lemma = find_zero_sumfree_translate(seq, k)?;
    let Certificate::Translate { shift, subsequence: t } = lemma.certificate else {
        return Err(Error::Internal("translate search returned no certificate".into()));
    };
    step_check(t.len() == k + 1, "|T| = k + 1", || format!("|T| = {}", t.len()))?;
    step_check(t.len() as f64 >= 2.0 * pf - c * pf.sqrt(), "length of T", || {
        format!("|T| = {} < 2p - c sqrt p", t.len())
    })?;
    let translated = t.translate(&shift)?;
    step_check(is_zero_sumfree(&translated), "g + T zero-sumfree", || "g + T has a zero-sum".into())?;
    let (h_s, h_t, h_translated) = (seq.h(), t.h(), translated.h());
    step_check(h_t == h_translated && h_s >= h_t, "multiplicity chain", || {
        format!("h(S) = {h_s}, h(T) = {h_t}, h(g + T) = {h_translated}")
    })?;
    let verdict = analyze_theorem_1_1(&translated, epsilon, c)?;
    Ok(Theorem13Report { k, shift, t, translated, h_s, h_t, h_translated, verdict })
}
