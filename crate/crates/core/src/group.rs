//! Arithmetic over the elementary abelian group `C_p^r`.
//!
//! Elements are canonical residue vectors. Every element also has a dense
//! index in `[0, p^r)` (big-endian in the coordinates), so index order is the
//! lexicographic order of coordinates. The subsum tables work on indices.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// The ambient group `C_p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    p: u32,
    r: u32,
    order: usize,
}

/// Largest group order the crate will index densely.
pub const MAX_ORDER: usize = 1 << 32;

impl GroupSpec {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        if r < 1 {
            return Err(Error::BadRank(r));
        }
        let mut order: usize = 1;
        for _ in 0..r {
            order = order
                .checked_mul(p as usize)
                .filter(|&o| o <= MAX_ORDER)
                .ok_or(Error::GroupTooLarge { p, r })?;
        }
        Ok(GroupSpec { p: p as u32, r, order })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn require_rank(&self, r: u32) -> Result<()> {
        if self.r == r {
            Ok(())
        } else {
            Err(Error::RankUnsupported { required: r, found: self.r })
        }
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.r as usize])
    }

    /// Builds an element, rejecting coordinates outside `[0, p-1]`.
    pub fn element(&self, coords: &[u32]) -> Result<Element> {
        self.check_dim(coords.len())?;
        if let Some(&c) = coords.iter().find(|&&c| c >= self.p) {
            return Err(Error::CoordOutOfRange { line: None, value: c as i64, p: self.p });
        }
        Ok(Element(coords.to_vec()))
    }

    /// Builds an element from arbitrary integers, reducing mod `p`.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<Element> {
        self.check_dim(coords.len())?;
        let p = self.p as i64;
        Ok(Element(coords.iter().map(|&c| c.rem_euclid(p) as u32).collect()))
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.r as usize {
            return Err(Error::DimensionMismatch { expected: self.r as usize, found: len });
        }
        Ok(())
    }

    pub fn contains(&self, g: &Element) -> bool {
        g.0.len() == self.r as usize && g.0.iter().all(|&c| c < self.p)
    }

    fn check(&self, g: &Element) -> Result<()> {
        self.check_dim(g.0.len())?;
        if let Some(&c) = g.0.iter().find(|&&c| c >= self.p) {
            return Err(Error::CoordOutOfRange { line: None, value: c as i64, p: self.p });
        }
        Ok(())
    }

    pub fn add(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.add_unchecked(g, h))
    }

    pub fn neg(&self, g: &Element) -> Result<Element> {
        self.check(g)?;
        Ok(self.neg_unchecked(g))
    }

    pub fn sub(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.add_unchecked(g, &self.neg_unchecked(h)))
    }

    pub fn scalar_mul(&self, n: i64, g: &Element) -> Result<Element> {
        self.check(g)?;
        Ok(self.scale_unchecked(n, g))
    }

    pub(crate) fn add_unchecked(&self, g: &Element, h: &Element) -> Element {
        let p = self.p as u64;
        Element(
            g.0.iter()
                .zip(&h.0)
                .map(|(&a, &b)| ((a as u64 + b as u64) % p) as u32)
                .collect(),
        )
    }

    pub(crate) fn neg_unchecked(&self, g: &Element) -> Element {
        Element(g.0.iter().map(|&a| if a == 0 { 0 } else { self.p - a }).collect())
    }

    pub(crate) fn scale_unchecked(&self, n: i64, g: &Element) -> Element {
        let p = self.p as i64;
        let n = n.rem_euclid(p) as u64;
        Element(g.0.iter().map(|&a| ((a as u64 * n) % p as u64) as u32).collect())
    }

    /// Sum of a list of elements.
    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut acc = vec![0u64; self.r as usize];
        for g in items {
            for (a, &c) in acc.iter_mut().zip(&g.0) {
                *a += c as u64;
            }
        }
        Element(acc.into_iter().map(|a| (a % self.p as u64) as u32).collect())
    }

    /// Dense index of `g`; big-endian so that index order is lexicographic.
    pub fn index_of(&self, g: &Element) -> usize {
        g.0.iter().fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> Element {
        let p = self.p as usize;
        let mut coords = vec![0u32; self.r as usize];
        for c in coords.iter_mut().rev() {
            *c = (index % p) as u32;
            index /= p;
        }
        Element(coords)
    }

    /// All group elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// Index of `x + g` for every `x`, the translation by `g` as a permutation of indices.
    pub(crate) fn translation(&self, g: &Element) -> Vec<u32> {
        let p = self.p as usize;
        let mut perm = Vec::with_capacity(self.order);
        let mut digits = vec![0usize; self.r as usize];
        for _ in 0..self.order {
            let idx = digits
                .iter()
                .zip(&g.0)
                .fold(0usize, |acc, (&d, &c)| acc * p + (d + c as usize) % p);
            perm.push(idx as u32);
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d == p {
                    *d = 0;
                } else {
                    break;
                }
            }
        }
        perm
    }

    pub(crate) fn sub_index(&self, a: usize, b: usize) -> usize {
        let x = self.element_at(a);
        let y = self.element_at(b);
        self.index_of(&self.add_unchecked(&x, &self.neg_unchecked(&y)))
    }

    /// The pairing `<j, g> mod p` underlying the character `chi_j`.
    pub fn pairing(&self, chi: &CharacterId, g: &Element) -> u32 {
        let p = self.p as u64;
        (chi.0.iter().zip(&g.0).map(|(&j, &c)| j as u64 * c as u64 % p).sum::<u64>() % p) as u32
    }

    /// `chi_j(g) = exp(2 pi i <j, g> / p)`.
    pub fn character_value(&self, chi: &CharacterId, g: &Element) -> Complex64 {
        let t = self.pairing(chi, g);
        if t == 0 {
            return Complex64::new(1.0, 0.0);
        }
        Complex64::from_polar(1.0, 2.0 * PI * t as f64 / self.p as f64)
    }

    /// All `p^r` characters, indexed by dual vectors in lexicographic order.
    pub fn characters(&self) -> impl Iterator<Item = CharacterId> + '_ {
        self.elements().map(|e| CharacterId(e.0))
    }

    /// The `p + 1` subgroups of order `p` in `C_p^2`.
    pub fn order_p_subgroups(&self) -> Result<Vec<SubgroupLine>> {
        self.require_rank(2)?;
        let mut lines: Vec<SubgroupLine> =
            (0..self.p).map(|t| SubgroupLine { direction: Element(vec![1, t]) }).collect();
        lines.push(SubgroupLine { direction: Element(vec![0, 1]) });
        Ok(lines)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}^{}", self.p, self.r)
    }
}

/// A group element as a canonical residue vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Element(pub(crate) Vec<u32>);

impl Element {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dual vector `j` naming the character `chi_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharacterId(pub(crate) Vec<u32>);

impl CharacterId {
    pub fn new(spec: &GroupSpec, j: &[u32]) -> Result<Self> {
        Ok(CharacterId(spec.element(j)?.0))
    }

    pub fn principal(spec: &GroupSpec) -> Self {
        CharacterId(vec![0; spec.rank() as usize])
    }

    pub fn is_principal(&self) -> bool {
        self.0.iter().all(|&j| j == 0)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

/// An order-`p` subgroup of `C_p^2`, named by its canonical direction
/// `(1, t)` or `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubgroupLine {
    direction: Element,
}

impl SubgroupLine {
    /// Normalizes any nonzero direction to the canonical representative.
    pub fn through(spec: &GroupSpec, direction: &Element) -> Result<Self> {
        spec.require_rank(2)?;
        spec.check(direction)?;
        let (x, y) = (direction.0[0], direction.0[1]);
        if x == 0 && y == 0 {
            return Err(Error::ZeroDirection);
        }
        if x == 0 {
            return Ok(SubgroupLine { direction: Element(vec![0, 1]) });
        }
        let inv = inv_mod(x, spec.p());
        let t = (y as u64 * inv as u64 % spec.p() as u64) as u32;
        Ok(SubgroupLine { direction: Element(vec![1, t]) })
    }

    pub fn direction(&self) -> &Element {
        &self.direction
    }

    /// A label in `[0, p)` constant exactly on the cosets `g + H`.
    pub fn coset_label(&self, spec: &GroupSpec, g: &Element) -> u32 {
        let p = spec.p() as u64;
        let (dx, dy) = (self.direction.0[0], self.direction.0[1]);
        let (x, y) = (g.0[0] as u64, g.0[1] as u64);
        if dx == 0 {
            x as u32
        } else {
            // y - t x vanishes on (1, t)
            ((y + (p - dy as u64) * x) % p) as u32
        }
    }

    pub fn contains(&self, spec: &GroupSpec, g: &Element) -> bool {
        self.coset_label(spec, g) == 0
    }

    /// Every element of the subgroup, in multiple-of-direction order.
    pub fn members(&self, spec: &GroupSpec) -> Vec<Element> {
        (0..spec.p() as i64).map(|n| spec.scale_unchecked(n, &self.direction)).collect()
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// A basis `(e_1, ..., e_r)` of `C_p^r` with its inverse coordinate matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Basis {
    spec: GroupSpec,
    vectors: Vec<Element>,
    /// Row-major inverse of the matrix whose columns are `vectors`.
    inverse: Vec<Vec<u32>>,
}

impl Basis {
    pub fn standard(spec: &GroupSpec) -> Self {
        let r = spec.rank() as usize;
        let unit = |i: usize| (0..r).map(|k| (k == i) as u32).collect::<Vec<u32>>();
        Basis {
            spec: *spec,
            vectors: (0..r).map(|i| Element(unit(i))).collect(),
            inverse: (0..r).map(unit).collect(),
        }
    }

    pub fn new(spec: &GroupSpec, vectors: Vec<Element>) -> Result<Self> {
        let r = spec.rank() as usize;
        if vectors.len() != r {
            return Err(Error::DimensionMismatch { expected: r, found: vectors.len() });
        }
        for v in &vectors {
            spec.check(v)?;
        }
        // columns are the basis vectors
        let matrix: Vec<Vec<u32>> =
            (0..r).map(|row| vectors.iter().map(|v| v.0[row]).collect()).collect();
        let inverse = invert_mod(&matrix, spec.p()).ok_or(Error::SingularBasis)?;
        Ok(Basis { spec: *spec, vectors, inverse })
    }

    /// Basis change in rank 2.
    pub fn change(spec: &GroupSpec, e1: Element, e2: Element) -> Result<Self> {
        spec.require_rank(2)?;
        Basis::new(spec, vec![e1, e2])
    }

    pub fn vectors(&self) -> &[Element] {
        &self.vectors
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn is_standard(&self) -> bool {
        *self == Basis::standard(&self.spec)
    }

    /// Coefficients `(c_1, ..., c_r)` with `g = sum c_i e_i`.
    pub fn projections(&self, g: &Element) -> Vec<u32> {
        let p = self.spec.p() as u64;
        self.inverse
            .iter()
            .map(|row| {
                (row.iter().zip(&g.0).map(|(&m, &c)| m as u64 * c as u64 % p).sum::<u64>() % p)
                    as u32
            })
            .collect()
    }

    /// `g` expressed in basis coordinates, as an element of the same group.
    pub fn to_coords(&self, g: &Element) -> Element {
        Element(self.projections(g))
    }

    pub fn recombine(&self, coeffs: &[u32]) -> Element {
        let p = self.spec.p() as u64;
        let r = self.spec.rank() as usize;
        let mut acc = vec![0u64; r];
        for (v, &c) in self.vectors.iter().zip(coeffs) {
            for (a, &x) in acc.iter_mut().zip(&v.0) {
                *a = (*a + x as u64 * c as u64) % p;
            }
        }
        Element(acc.into_iter().map(|a| a as u32).collect())
    }
}

/// Gauss-Jordan inverse mod a prime; `None` when singular.
fn invert_mod(matrix: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = matrix.len();
    let pm = p as u64;
    let mut a: Vec<Vec<u64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u64> = row.iter().map(|&x| x as u64 % pm).collect();
            r.extend((0..n).map(|k| (k == i) as u64));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&row| a[row][col] != 0)?;
        a.swap(col, pivot);
        let inv = inv_mod(a[col][col] as u32, p) as u64;
        for x in a[col].iter_mut() {
            *x = *x * inv % pm;
        }
        for row in 0..n {
            if row != col && a[row][col] != 0 {
                let f = a[row][col];
                for k in 0..2 * n {
                    a[row][k] = (a[row][k] + pm - f * a[col][k] % pm) % pm;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].iter().map(|&x| x as u32).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &GroupSpec, c: &[u32]) -> Element {
        spec.element(c).unwrap()
    }

    #[test]
    fn make_group_examples() {
        let s = GroupSpec::new(7, 2).unwrap();
        assert_eq!((s.p(), s.rank(), s.order()), (7, 2, 49));
        assert!(matches!(GroupSpec::new(6, 2), Err(Error::NotPrime(6))));
        assert_eq!(GroupSpec::new(2, 1).unwrap().order(), 2);
        assert!(matches!(GroupSpec::new(5, 0), Err(Error::BadRank(0))));
    }

    #[test]
    fn element_ops() {
        let s = GroupSpec::new(3, 2).unwrap();
        assert_eq!(s.add(&g(&s, &[1, 2]), &g(&s, &[2, 2])).unwrap(), g(&s, &[0, 1]));
        assert_eq!(s.neg(&s.zero()).unwrap(), s.zero());
        assert_eq!(s.scalar_mul(3, &g(&s, &[1, 1])).unwrap(), s.zero());
        let bad = Element(vec![1, 2, 0]);
        assert!(matches!(s.add(&bad, &s.zero()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(999_983));
        assert!(!is_prime(999_981));
    }

    #[test]
    fn projections_examples() {
        let s5 = GroupSpec::new(5, 2).unwrap();
        assert_eq!(Basis::standard(&s5).projections(&g(&s5, &[2, 3])), vec![2, 3]);
        let s3 = GroupSpec::new(3, 2).unwrap();
        let b = Basis::change(&s3, g(&s3, &[1, 1]), g(&s3, &[0, 1])).unwrap();
        assert_eq!(b.projections(&g(&s3, &[1, 2])), vec![1, 1]);
        assert_eq!(b.projections(&s3.zero()), vec![0, 0]);
    }

    #[test]
    fn change_basis_examples() {
        let s3 = GroupSpec::new(3, 2).unwrap();
        assert!(Basis::change(&s3, g(&s3, &[1, 1]), g(&s3, &[0, 1])).is_ok());
        assert!(matches!(
            Basis::change(&s3, g(&s3, &[1, 1]), g(&s3, &[2, 2])),
            Err(Error::SingularBasis)
        ));
        let s7 = GroupSpec::new(7, 2).unwrap();
        assert!(Basis::change(&s7, g(&s7, &[0, 1]), g(&s7, &[1, 0])).is_ok());
    }

    #[test]
    fn projections_round_trip_exhaustive_small() {
        for p in [2u64, 3, 5] {
            let s = GroupSpec::new(p, 2).unwrap();
            let all: Vec<Element> = s.elements().collect();
            for e1 in &all {
                for e2 in &all {
                    let Ok(b) = Basis::change(&s, e1.clone(), e2.clone()) else { continue };
                    for x in &all {
                        assert_eq!(&b.recombine(&b.projections(x)), x);
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_lines() {
        let s3 = GroupSpec::new(3, 2).unwrap();
        let dirs: Vec<Element> =
            s3.order_p_subgroups().unwrap().iter().map(|l| l.direction().clone()).collect();
        assert_eq!(dirs, vec![g(&s3, &[1, 0]), g(&s3, &[1, 1]), g(&s3, &[1, 2]), g(&s3, &[0, 1])]);
        assert_eq!(GroupSpec::new(2, 2).unwrap().order_p_subgroups().unwrap().len(), 3);
        assert_eq!(GroupSpec::new(5, 2).unwrap().order_p_subgroups().unwrap().len(), 6);
        assert!(GroupSpec::new(5, 1).unwrap().order_p_subgroups().is_err());
    }

    #[test]
    fn subgroup_lines_partition_nonzero_elements() {
        for p in [2u64, 3, 5, 7] {
            let s = GroupSpec::new(p, 2).unwrap();
            let lines = s.order_p_subgroups().unwrap();
            let mut seen = std::collections::HashMap::new();
            for line in &lines {
                let members = line.members(&s);
                assert_eq!(members.len(), p as usize);
                for m in members {
                    assert!(line.contains(&s, &m));
                    *seen.entry(m).or_insert(0) += 1;
                }
            }
            assert_eq!(seen.len(), (p * p) as usize);
            for (e, n) in seen {
                assert_eq!(n, if e.is_zero() { lines.len() } else { 1 });
            }
        }
    }

    #[test]
    fn normalizing_direction() {
        let s = GroupSpec::new(5, 2).unwrap();
        let l = SubgroupLine::through(&s, &g(&s, &[2, 4])).unwrap();
        assert_eq!(l.direction(), &g(&s, &[1, 2]));
        let l = SubgroupLine::through(&s, &g(&s, &[0, 3])).unwrap();
        assert_eq!(l.direction(), &g(&s, &[0, 1]));
    }

    #[test]
    fn character_examples() {
        let s5 = GroupSpec::new(5, 2).unwrap();
        let chi0 = CharacterId::principal(&s5);
        assert_eq!(s5.character_value(&chi0, &g(&s5, &[3, 4])), Complex64::new(1.0, 0.0));
        let chi = CharacterId::new(&s5, &[1, 0]).unwrap();
        let v = s5.character_value(&chi, &g(&s5, &[1, 0]));
        assert!((v - Complex64::from_polar(1.0, 2.0 * PI / 5.0)).norm() < 1e-15);
        let s2 = GroupSpec::new(2, 2).unwrap();
        let chi = CharacterId::new(&s2, &[1, 1]).unwrap();
        let v = s2.character_value(&chi, &g(&s2, &[1, 0]));
        assert!((v + 1.0).norm() < 1e-15);
    }

    #[test]
    fn orthogonality() {
        for p in [2u64, 3, 5, 7] {
            let s = GroupSpec::new(p, 2).unwrap();
            for x in s.elements() {
                let total: Complex64 = s.characters().map(|c| s.character_value(&c, &x)).sum();
                let expect = if x.is_zero() { s.order() as f64 } else { 0.0 };
                assert!((total - expect).norm() < 1e-6, "p={p} x={x}");
            }
        }
    }

    #[test]
    fn translation_matches_add() {
        let s = GroupSpec::new(5, 2).unwrap();
        let h = g(&s, &[3, 1]);
        let perm = s.translation(&h);
        for (i, &j) in perm.iter().enumerate() {
            assert_eq!(s.element_at(j as usize), s.add(&s.element_at(i), &h).unwrap());
        }
        assert_eq!(s.index_of(&g(&s, &[2, 3])), 13);
        assert_eq!(s.element_at(13), g(&s, &[2, 3]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn spec_and_pair() -> impl Strategy<Value = (GroupSpec, Element, Element, CharacterId)> {
            prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]).prop_flat_map(|p| {
                let s = GroupSpec::new(p, 2).unwrap();
                let c = 0..p as u32;
                (
                    Just(s),
                    (c.clone(), c.clone()),
                    (c.clone(), c.clone()),
                    (c.clone(), c),
                )
                    .prop_map(|(s, a, b, j)| {
                        (s, Element(vec![a.0, a.1]), Element(vec![b.0, b.1]), CharacterId(vec![j.0, j.1]))
                    })
            })
        }

        proptest! {
            #[test]
            fn group_axioms((s, x, y, _) in spec_and_pair()) {
                prop_assert_eq!(s.add(&x, &y).unwrap(), s.add(&y, &x).unwrap());
                prop_assert!(s.add(&x, &s.neg(&x).unwrap()).unwrap().is_zero());
                prop_assert!(s.scalar_mul(s.p() as i64, &x).unwrap().is_zero());
            }

            #[test]
            fn character_multiplicative((s, x, y, chi) in spec_and_pair()) {
                let lhs = s.character_value(&chi, &s.add(&x, &y).unwrap());
                let rhs = s.character_value(&chi, &x) * s.character_value(&chi, &y);
                prop_assert!((lhs - rhs).norm() < 1e-9);
                prop_assert!((s.character_value(&chi, &x).norm() - 1.0).abs() < 1e-12);
            }

            #[test]
            fn random_basis_round_trip((s, x, y, chi) in spec_and_pair()) {
                if let Ok(b) = Basis::change(&s, x, y) {
                    let g = Element(chi.0);
                    prop_assert_eq!(b.recombine(&b.projections(&g)), g);
                }
            }
        }
    }
}
