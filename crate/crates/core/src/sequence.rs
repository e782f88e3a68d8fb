//! Sequences over `C_p^r` as multisets, with the text file format.
//!
//! ```text
//! # comment
//! group 3 2
//! 1 0 * 2
//! 0 1
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, SubgroupLine};

/// A finite multiset over the group, stored as sorted `(element, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Sequence {
    spec: GroupSpec,
    entries: Vec<(Element, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeqStats {
    pub length: usize,
    pub h: u32,
    pub supp_size: usize,
    pub sigma: Element,
    pub v0: u32,
}

impl Sequence {
    pub fn empty(spec: &GroupSpec) -> Self {
        Sequence { spec: *spec, entries: Vec::new() }
    }

    /// Canonicalizes arbitrary `(element, multiplicity)` pairs.
    pub fn from_pairs(
        spec: &GroupSpec,
        pairs: impl IntoIterator<Item = (Element, u32)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Element, u32> = BTreeMap::new();
        for (g, m) in pairs {
            if !spec.contains(&g) {
                spec.element(g.coords())?;
            }
            if m > 0 {
                *map.entry(g).or_insert(0) += m;
            }
        }
        Ok(Sequence { spec: *spec, entries: map.into_iter().collect() })
    }

    pub fn from_elements(spec: &GroupSpec, items: impl IntoIterator<Item = Element>) -> Result<Self> {
        Self::from_pairs(spec, items.into_iter().map(|g| (g, 1)))
    }

    /// Shorthand for tests and examples: rows of coordinates, one per copy.
    pub fn from_coords(spec: &GroupSpec, rows: &[&[u32]]) -> Result<Self> {
        let items = rows.iter().map(|c| spec.element(c)).collect::<Result<Vec<_>>>()?;
        Self::from_elements(spec, items)
    }

    pub(crate) fn from_sorted_unchecked(spec: GroupSpec, entries: Vec<(Element, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Sequence { spec, entries }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn entries(&self) -> &[(Element, u32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, g: &Element) -> u32 {
        self.entries
            .binary_search_by(|(e, _)| e.cmp(g))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.entries.iter().map(|(g, _)| g)
    }

    /// Every copy, in canonical order.
    pub fn items(&self) -> impl Iterator<Item = &Element> {
        self.entries.iter().flat_map(|(g, m)| std::iter::repeat(g).take(*m as usize))
    }

    pub fn h(&self) -> u32 {
        self.entries.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    pub fn sigma(&self) -> Element {
        let p = self.spec.p() as u64;
        let mut acc = vec![0u64; self.spec.rank() as usize];
        for (g, m) in &self.entries {
            for (a, &c) in acc.iter_mut().zip(g.coords()) {
                *a = (*a + c as u64 * *m as u64) % p;
            }
        }
        self.spec.element_reduced(&acc.iter().map(|&a| a as i64).collect::<Vec<_>>()).unwrap()
    }

    pub fn stats(&self) -> SeqStats {
        SeqStats {
            length: self.len(),
            h: self.h(),
            supp_size: self.entries.len(),
            sigma: self.sigma(),
            v0: self.multiplicity(&self.spec.zero()),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|(_, m)| *m <= 1)
    }

    /// `self | other` as multisets.
    pub fn divides(&self, other: &Sequence) -> bool {
        self.spec == other.spec
            && self.entries.iter().all(|(g, m)| other.multiplicity(g) >= *m)
    }

    /// The entries lying in the coset `g + H`.
    pub fn coset_restrict(&self, line: &SubgroupLine, g: &Element) -> Result<Sequence> {
        self.spec.require_rank(2)?;
        let label = line.coset_label(&self.spec, g);
        Ok(self.filter(|e| line.coset_label(&self.spec, e) == label))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Element) -> bool) -> Sequence {
        Sequence {
            spec: self.spec,
            entries: self.entries.iter().filter(|(e, _)| keep(e)).cloned().collect(),
        }
    }

    /// One copy of every support element.
    pub fn max_squarefree(&self) -> Sequence {
        Sequence {
            spec: self.spec,
            entries: self.entries.iter().map(|(g, _)| (g.clone(), 1)).collect(),
        }
    }

    pub fn translate(&self, g: &Element) -> Result<Sequence> {
        let shifted = self
            .entries
            .iter()
            .map(|(e, m)| Ok((self.spec.add(e, g)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Sequence::from_pairs(&self.spec, shifted)
    }

    /// Image under an arbitrary map on elements; counts merge where images collide.
    pub fn map(&self, f: impl Fn(&Element) -> Element) -> Sequence {
        Sequence::from_pairs(&self.spec, self.entries.iter().map(|(e, m)| (f(e), *m)))
            .expect("mapped element outside group")
    }

    /// The product `S T`.
    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        if self.spec != other.spec {
            return Err(Error::GroupMismatch);
        }
        Sequence::from_pairs(&self.spec, self.entries.iter().chain(&other.entries).cloned())
    }

    /// The quotient `S T^{-1}`.
    pub fn divide(&self, other: &Sequence) -> Result<Sequence> {
        if !other.divides(self) {
            return Err(Error::NotASubsequence);
        }
        let entries = self
            .entries
            .iter()
            .filter_map(|(g, m)| {
                let rest = m - other.multiplicity(g);
                (rest > 0).then(|| (g.clone(), rest))
            })
            .collect();
        Ok(Sequence { spec: self.spec, entries })
    }

    /// `0^k S`.
    pub fn pad_zeros(&self, k: u32) -> Sequence {
        let zero = Sequence::from_sorted_unchecked(
            self.spec,
            if k > 0 { vec![(self.spec.zero(), k)] } else { vec![] },
        );
        self.concat(&zero).unwrap()
    }

    /// Removes one copy of `g`.
    pub fn remove_one(&self, g: &Element) -> Result<Sequence> {
        let single = Sequence::from_sorted_unchecked(self.spec, vec![(g.clone(), 1)]);
        self.divide(&single)
    }

    /// Lexicographic comparison of the expanded sorted element lists.
    pub fn cmp_expanded(&self, other: &Sequence) -> std::cmp::Ordering {
        self.items().cmp(other.items())
    }
}

impl PartialOrd for Sequence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Group parameters first, then [`Sequence::cmp_expanded`].
impl Ord for Sequence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.spec.p(), self.spec.rank())
            .cmp(&(other.spec.p(), other.spec.rank()))
            .then_with(|| self.cmp_expanded(other))
    }
}

impl fmt::Display for Sequence {
    /// Canonical serialization; the multiplicity suffix appears only above 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {} {}", self.spec.p(), self.spec.rank())?;
        for (g, m) in &self.entries {
            let coords: Vec<String> = g.coords().iter().map(|c| c.to_string()).collect();
            if *m > 1 {
                writeln!(f, "{} * {m}", coords.join(" "))?;
            } else {
                writeln!(f, "{}", coords.join(" "))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut blocks = parse_sequences(text)?;
        match blocks.len() {
            0 => Err(Error::HeaderMissing),
            1 => Ok(blocks.remove(0)),
            _ => Err(Error::Parse {
                line: blocks_second_header_line(text),
                message: "more than one `group` header".into(),
            }),
        }
    }
}

pub fn parse_sequence(text: &str) -> Result<Sequence> {
    text.parse()
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn blocks_second_header_line(text: &str) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| strip_comment(l).starts_with("group"))
        .nth(1)
        .map(|(i, _)| i + 1)
        .unwrap_or(0)
}

/// Parses one or more concatenated blocks, each opened by a `group` header.
pub fn parse_sequences(text: &str) -> Result<Vec<Sequence>> {
    let mut out = Vec::new();
    let mut current: Option<(GroupSpec, Vec<(Element, u32)>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: lineno, message };
        if let Some(rest) = line.strip_prefix("group") {
            let nums: Vec<&str> = rest.split_whitespace().collect();
            if nums.len() != 2 || !rest.starts_with(char::is_whitespace) {
                return Err(parse_err("expected `group <p> <r>`".into()));
            }
            let p: u64 = nums[0].parse().map_err(|_| parse_err(format!("bad prime `{}`", nums[0])))?;
            let r: u32 = nums[1].parse().map_err(|_| parse_err(format!("bad rank `{}`", nums[1])))?;
            let spec = GroupSpec::new(p, r)?;
            if let Some((s, e)) = current.take() {
                out.push(Sequence::from_pairs(&s, e)?);
            }
            current = Some((spec, Vec::new()));
            continue;
        }
        let Some((spec, entries)) = current.as_mut() else {
            return Err(Error::HeaderMissing);
        };
        let (coords_part, mult) = match line.split_once('*') {
            Some((c, m)) => {
                let m: u32 = m
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(format!("bad multiplicity `{}`", m.trim())))?;
                if m == 0 {
                    return Err(parse_err("multiplicity must be at least 1".into()));
                }
                (c, m)
            }
            None => (line, 1),
        };
        let coords = coords_part
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| parse_err(format!("bad integer `{t}`"))))
            .collect::<Result<Vec<i64>>>()?;
        if coords.len() != spec.rank() as usize {
            return Err(parse_err(format!(
                "expected {} coordinates, found {}",
                spec.rank(),
                coords.len()
            )));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c < 0 || c >= spec.p() as i64) {
            return Err(Error::CoordOutOfRange { line: Some(lineno), value: bad, p: spec.p() });
        }
        let g = spec.element_reduced(&coords)?;
        entries.push((g, mult));
    }
    if let Some((s, e)) = current.take() {
        out.push(Sequence::from_pairs(&s, e)?);
    }
    Ok(out)
}
