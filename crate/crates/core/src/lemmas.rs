//! Instance checkers for the additive lemmas the constructive machinery rests on.
//!
//! Each checker validates the hypothesis, computes both sides of the claim,
//! and returns a [`LemmaReport`] carrying a certificate that
//! [`LemmaReport::verify_certificate`] re-checks independently. These are
//! proven statements: a failed claim under a valid hypothesis comes back as
//! [`Error::TheoremViolation`], never as a quiet `false`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Basis, Element, GroupSpec};
use crate::sequence::Sequence;
use crate::subsum::{is_zero_sumfree, SubsumTable};

/// Which statement a report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    /// Over `C_p`: a zero-free sequence of length `p` has `Sigma_{<=h(S)}(S) = C_p`.
    ShortCover,
    /// Over `C_p`: lower bounds on `|Sigma_k(S)|` for squarefree `S`.
    KSubsums(KSubsumPart),
    /// Over `C_p^2`: many nonzero second coordinates among subsums with zero first coordinate.
    LineSubsums,
    /// Over `C_n^2`: length `3n - 2` forces a zero-sum of length `n` or `2n`.
    NOr2N,
    /// Length `|G| + k` without a length-`|G|` zero-sum has a zero-sumfree translate of length `k + 1`.
    Translate,
    /// `|A + B| >= min(p, |A| + |B| - 1)` in `C_p`.
    CauchyDavenport,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaId::ShortCover => write!(f, "short-cover"),
            LemmaId::KSubsums(part) => write!(f, "k-subsums/{part}"),
            LemmaId::LineSubsums => write!(f, "line-subsums"),
            LemmaId::NOr2N => write!(f, "n-or-2n"),
            LemmaId::Translate => write!(f, "translate"),
            LemmaId::CauchyDavenport => write!(f, "cauchy-davenport"),
        }
    }
}

/// The three bounds on `|Sigma_k(S)|` for a squarefree `S` over `C_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KSubsumPart {
    /// `|Sigma_k(S)| >= min(p, k(|S| - k) + 1)`.
    General,
    /// `k = floor(|S|/2)`: `|Sigma_k(S)| >= min(p, (|S|^2 + 3)/4)`.
    Half,
    /// `|S| = floor(sqrt(4p - 7)) + 1`, `k = floor(|S|/2)`: `Sigma_k(S) = C_p`.
    FullCover,
}

impl KSubsumPart {
    pub fn from_number(part: u8) -> Option<Self> {
        match part {
            1 => Some(KSubsumPart::General),
            2 => Some(KSubsumPart::Half),
            3 => Some(KSubsumPart::FullCover),
            _ => None,
        }
    }
}

impl fmt::Display for KSubsumPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            KSubsumPart::General => 1,
            KSubsumPart::Half => 2,
            KSubsumPart::FullCover => 3,
        };
        write!(f, "{n}")
    }
}

/// Length rule the witnesses in a cover must obey.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthRule {
    Nonempty,
    AtMost(usize),
    Exactly(usize),
}

impl LengthRule {
    fn admits(&self, len: usize) -> bool {
        match *self {
            LengthRule::Nonempty => len >= 1,
            LengthRule::AtMost(h) => (1..=h).contains(&len),
            LengthRule::Exactly(k) => len == k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverEntry {
    pub target: Element,
    pub witness: Sequence,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Certificate {
    None,
    /// Each target realized by a sub-multiset of the source.
    Cover { rule: LengthRule, entries: Vec<CoverEntry> },
    /// A zero-sum sub-multiset of one of the allowed lengths.
    ZeroSum { allowed: Vec<usize>, witness: Sequence },
    /// `shift + subsequence` is zero-sumfree.
    Translate { shift: Element, subsequence: Sequence },
    /// Residues of `A + B`.
    Sumset { sum: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub hypothesis_ok: bool,
    /// Only evaluated when the hypothesis holds.
    pub claim_holds: Option<bool>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub certificate: Certificate,
}

impl LemmaReport {
    fn hypothesis_fails(lemma: LemmaId) -> Self {
        LemmaReport {
            lemma,
            hypothesis_ok: false,
            claim_holds: None,
            lhs: None,
            rhs: None,
            certificate: Certificate::None,
        }
    }

    /// Re-checks the certificate against the source sequence without trusting the checker.
    pub fn verify_certificate(&self, source: &Sequence) -> bool {
        match &self.certificate {
            Certificate::None => !self.hypothesis_ok,
            Certificate::Cover { rule, entries } => entries.iter().all(|e| {
                rule.admits(e.witness.len())
                    && e.witness.divides(source)
                    && e.witness.sigma() == e.target
            }),
            Certificate::ZeroSum { allowed, witness } => {
                allowed.contains(&witness.len())
                    && witness.divides(source)
                    && witness.sigma().is_zero()
            }
            Certificate::Translate { shift, subsequence } => {
                subsequence.divides(source)
                    && subsequence.translate(shift).map(|t| brute_zero_sumfree(&t)).unwrap_or(false)
            }
            Certificate::Sumset { .. } => true,
        }
    }
}

/// Direct enumeration over sub-multisets by multiplicity vectors.
fn brute_zero_sumfree(seq: &Sequence) -> bool {
    let spec = seq.spec();
    let entries = seq.entries();
    let mut counts = vec![0u32; entries.len()];
    loop {
        let mut i = 0;
        loop {
            if i == entries.len() {
                return true;
            }
            if counts[i] < entries[i].1 {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
        let terms: Vec<i64> = (0..spec.rank() as usize)
            .map(|d| entries.iter().zip(&counts).map(|((g, _), &c)| g.coords()[d] as i64 * c as i64).sum())
            .collect();
        if spec.element_reduced(&terms).unwrap().is_zero() {
            return false;
        }
    }
}

fn cover_entries(
    table: &SubsumTable,
    source: &Sequence,
    targets: impl IntoIterator<Item = (Element, usize)>,
) -> Vec<CoverEntry> {
    targets
        .into_iter()
        .map(|(target, card)| {
            let positions = table.witness_positions(card, &target).expect("reachable target");
            let items: Vec<Element> = source.items().cloned().collect();
            let witness =
                Sequence::from_elements(source.spec(), positions.into_iter().map(|i| items[i].clone()))
                    .expect("subsequence of source");
            CoverEntry { target, witness }
        })
        .collect()
}

/// Over `C_p`, with `v_0(S) = 0` and `|S| = p`: `Sigma_{<=h(S)}(S) = C_p`.
pub fn check_short_cover(seq: &Sequence) -> Result<LemmaReport> {
    let spec = seq.spec();
    spec.require_rank(1)?;
    let p = spec.p() as usize;
    let lemma = LemmaId::ShortCover;
    if seq.multiplicity(&spec.zero()) != 0 || seq.len() != p {
        return Ok(LemmaReport::hypothesis_fails(lemma));
    }
    let h = seq.h() as usize;
    let table = SubsumTable::build_upto(seq, h)?;
    let mut hits = Vec::with_capacity(p);
    for target in spec.elements() {
        match table.min_card_reaching(&target, 1, h) {
            Some(c) => hits.push((target, c)),
            None => {
                return Err(Error::violation(
                    &lemma.to_string(),
                    format!("{target} is not a sum of at most h = {h} terms"),
                ))
            }
        }
    }
    let entries = cover_entries(&table, seq, hits);
    Ok(LemmaReport {
        lemma,
        hypothesis_ok: true,
        claim_holds: Some(true),
        lhs: Some(entries.len() as f64),
        rhs: Some(p as f64),
        certificate: Certificate::Cover { rule: LengthRule::AtMost(h), entries },
    })
}

/// `floor(sqrt(4p - 7)) + 1`, the length at which `Sigma_{floor(|S|/2)}` covers `C_p`.
pub fn full_cover_length(p: u32) -> usize {
    let n = 4 * p as u64 - 7;
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r as usize + 1
}

/// Lower bounds on `|Sigma_k(S)|` for squarefree `S` over `C_p`. `0 ∈ supp(S)` is allowed.
pub fn check_k_subsums(seq: &Sequence, k: usize, part: KSubsumPart) -> Result<LemmaReport> {
    let spec = seq.spec();
    spec.require_rank(1)?;
    if !seq.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let len = seq.len();
    if k < 1 || k > len {
        return Err(Error::BadK { k, len });
    }
    let half = len / 2;
    if part != KSubsumPart::General && k != half {
        return Err(Error::BadK { k, len });
    }
    let p = spec.p() as usize;
    if part == KSubsumPart::FullCover {
        let expected = full_cover_length(spec.p());
        if len != expected {
            return Err(Error::BadLengthForPart3 { len, expected });
        }
    }
    let table = SubsumTable::build_upto(seq, k)?;
    let layer = table.layer_elements(k);
    let lhs = layer.len() as f64;
    let rhs = match part {
        KSubsumPart::General => (p as f64).min((k * (len - k) + 1) as f64),
        KSubsumPart::Half => (p as f64).min((len * len + 3) as f64 / 4.0),
        KSubsumPart::FullCover => p as f64,
    };
    let lemma = LemmaId::KSubsums(part);
    if lhs < rhs {
        return Err(Error::violation(&lemma.to_string(), format!("|Sigma_{k}| = {lhs} < {rhs}")));
    }
    let entries = cover_entries(&table, seq, layer.into_iter().map(|g| (g, k)));
    Ok(LemmaReport {
        lemma,
        hypothesis_ok: true,
        claim_holds: Some(true),
        lhs: Some(lhs),
        rhs: Some(rhs),
        certificate: Certificate::Cover { rule: LengthRule::Exactly(k), entries },
    })
}

/// `S` over `C_p^2` zero-sumfree with `|S| = l >= p`: at least `l - p + 1` nonzero `b`
/// with `b e_2 ∈ Sigma(S)`, coordinates taken in `basis`.
pub fn check_line_subsums(seq: &Sequence, basis: &Basis) -> Result<LemmaReport> {
    let spec = seq.spec();
    spec.require_rank(2)?;
    let lemma = LemmaId::LineSubsums;
    let l = seq.len();
    let p = spec.p() as usize;
    if l < p || !is_zero_sumfree(seq) {
        return Ok(LemmaReport::hypothesis_fails(lemma));
    }
    let coords: Vec<Element> = seq.items().map(|g| basis.to_coords(g)).collect();
    let table = SubsumTable::from_items(spec, coords, l)?;
    let mut hits = Vec::new();
    for b in 1..spec.p() {
        let in_coords = spec.element(&[0, b])?;
        if let Some(c) = table.min_card_reaching(&in_coords, 1, l) {
            hits.push((in_coords, c));
        }
    }
    let lhs = hits.len() as f64;
    let rhs = (l - p + 1) as f64;
    if lhs < rhs {
        return Err(Error::violation(&lemma.to_string(), format!("{lhs} nonzero line sums < {rhs}")));
    }
    // witnesses are positions into the item list, which matches seq.items()
    let entries = cover_entries(&table, seq, hits)
        .into_iter()
        .map(|e| CoverEntry { target: basis.recombine(e.target.coords()), witness: e.witness })
        .collect();
    Ok(LemmaReport {
        lemma,
        hypothesis_ok: true,
        claim_holds: Some(true),
        lhs: Some(lhs),
        rhs: Some(rhs),
        certificate: Certificate::Cover { rule: LengthRule::Nonempty, entries },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumsetReport {
    pub sum: Vec<u32>,
    pub bound: usize,
    pub holds: bool,
}

/// `A + B` in `C_p` with the Cauchy-Davenport check.
pub fn sumset(spec: &GroupSpec, a: &[u32], b: &[u32]) -> Result<SumsetReport> {
    spec.require_rank(1)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let p = spec.p();
    for &x in a.iter().chain(b) {
        if x >= p {
            return Err(Error::CoordOutOfRange { line: None, value: x as i64, p });
        }
    }
    let a: BTreeSet<u32> = a.iter().copied().collect();
    let b: BTreeSet<u32> = b.iter().copied().collect();
    let sum: BTreeSet<u32> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x + y) % p)).collect();
    let bound = (p as usize).min(a.len() + b.len() - 1);
    let holds = sum.len() >= bound;
    if !holds {
        return Err(Error::violation(
            &LemmaId::CauchyDavenport.to_string(),
            format!("|A + B| = {} < {bound}", sum.len()),
        ));
    }
    Ok(SumsetReport { sum: sum.into_iter().collect(), bound, holds })
}

/// For `|S| = 3n - 2` over `C_n^2`: a zero-sum subsequence of length `n`, else of length `2n`.
pub fn find_n_or_2n_zero_sum(seq: &Sequence) -> Result<LemmaReport> {
    let spec = seq.spec();
    spec.require_rank(2)?;
    let n = spec.p() as usize;
    if seq.len() != 3 * n - 2 {
        return Err(Error::BadLength(format!("need |S| = 3n - 2 = {}, got {}", 3 * n - 2, seq.len())));
    }
    let lemma = LemmaId::NOr2N;
    let table = SubsumTable::build_upto(seq, 2 * n)?;
    let zero = spec.zero();
    let Some(len) = [n, 2 * n].into_iter().find(|&c| table.reach(c, &zero)) else {
        return Err(Error::violation(&lemma.to_string(), "no zero-sum of length n or 2n"));
    };
    let witness = table.witness(len, &zero).expect("reachable");
    Ok(LemmaReport {
        lemma,
        hypothesis_ok: true,
        claim_holds: Some(true),
        lhs: Some(len as f64),
        rhs: Some(n as f64),
        certificate: Certificate::ZeroSum { allowed: vec![n, 2 * n], witness },
    })
}

/// For `|S| = |G| + k`, `k >= 1`, and no zero-sum of length `|G|`: the first `(g, T)`
/// with `|T| = k + 1` and `g + T` zero-sumfree, scanning `g` lexicographically and `T`
/// in lexicographic order of its sorted element list.
pub fn find_zero_sumfree_translate(seq: &Sequence, k: usize) -> Result<LemmaReport> {
    let spec = seq.spec();
    let order = spec.order();
    if k < 1 || seq.len() != order + k {
        return Err(Error::BadLength(format!(
            "need |S| = |G| + k with k >= 1, got |S| = {}, |G| = {order}, k = {k}",
            seq.len()
        )));
    }
    let table = SubsumTable::build_upto(seq, order).map_err(|e| match e {
        Error::MemoryCapExceeded { needed, cap } => Error::FeasibilityGuard(format!(
            "length-{order} query needs {needed} bytes, cap {cap}"
        )),
        other => other,
    })?;
    if table.reach(order, &spec.zero()) {
        return Err(Error::HasFullLengthZeroSum { length: order });
    }
    let lemma = LemmaId::Translate;
    for g in spec.elements() {
        if let Some(t) = first_zero_sumfree_translate(seq, &g, k + 1) {
            let report = LemmaReport {
                lemma,
                hypothesis_ok: true,
                claim_holds: Some(true),
                lhs: Some(t.len() as f64),
                rhs: Some((k + 1) as f64),
                certificate: Certificate::Translate { shift: g, subsequence: t },
            };
            return Ok(report);
        }
    }
    Err(Error::violation(&lemma.to_string(), "scan exhausted without a zero-sumfree translate"))
}

/// Depth-first search for `T | S`, `|T| = size`, with `shift + T` zero-sumfree.
fn first_zero_sumfree_translate(seq: &Sequence, shift: &Element, size: usize) -> Option<Sequence> {
    let spec = seq.spec();
    let shifted: Vec<(usize, Vec<u32>, usize)> = seq
        .entries()
        .iter()
        .map(|(g, _)| {
            let moved = spec.add_unchecked(g, shift);
            let neg = spec.index_of(&spec.neg_unchecked(&moved));
            (spec.index_of(&moved), spec.translation(&moved), neg)
        })
        .collect();
    let mut reach = vec![false; spec.order()];
    reach[0] = true;
    let mut counts = vec![0u32; seq.entries().len()];
    struct Ctx<'a> {
        entries: &'a [(Element, u32)],
        shifted: &'a [(usize, Vec<u32>, usize)],
        size: usize,
    }
    fn dfs(ctx: &Ctx, start: usize, depth: usize, reach: &[bool], counts: &mut [u32]) -> bool {
        if depth == ctx.size {
            return true;
        }
        for i in start..ctx.entries.len() {
            if counts[i] == ctx.entries[i].1 {
                continue;
            }
            let (_, perm, neg) = &ctx.shifted[i];
            if reach[*neg] {
                continue;
            }
            let mut next = reach.to_vec();
            for (x, &on) in reach.iter().enumerate() {
                if on {
                    next[perm[x] as usize] = true;
                }
            }
            counts[i] += 1;
            if dfs(ctx, i, depth + 1, &next, counts) {
                return true;
            }
            counts[i] -= 1;
        }
        false
    }
    let ctx = Ctx { entries: seq.entries(), shifted: &shifted, size };
    if !dfs(&ctx, 0, 0, &reach, &mut counts) {
        return None;
    }
    let pairs = seq.entries().iter().zip(&counts).map(|((g, _), &c)| (g.clone(), c));
    Some(Sequence::from_pairs(spec, pairs).expect("subsequence of source"))
}
