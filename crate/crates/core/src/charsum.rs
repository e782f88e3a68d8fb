//! Character sums `f(chi) = prod (1 + chi(g_i))`, the orthogonality identity, the
//! coset-capped envelope `|f(chi)| <= 2^s exp(-pi^2 v / (2 p^2))`, and an effective
//! threshold for the inequality that closes the large-`p` argument.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_prime, CharacterId, GroupSpec};
use crate::sequence::Sequence;
use crate::subsum::{count_zero_sum_subsequences, COUNT_WIDTH_GUARD};

/// Longest sequence whose character sums are evaluated; `2^64` still fits an `f64` exactly.
pub const F_LENGTH_GUARD: usize = 64;

/// Multiplicity of each pairing value `<j, g> = t`, `t` in `[0, p)`.
fn level_counts(seq: &Sequence, chi: &CharacterId) -> Vec<u32> {
    let spec = seq.spec();
    let mut counts = vec![0u32; spec.p() as usize];
    for (g, m) in seq.entries() {
        counts[spec.pairing(chi, g) as usize] += m;
    }
    counts
}

/// `1 + exp(2 pi i t / p) = 2 cos(pi t / p) exp(i pi t / p)`, so the product splits
/// into a real magnitude part and a phase `pi N / p` with `N` an exact integer.
fn f_from_levels(counts: &[u32], p: u32) -> Complex64 {
    let mut magnitude = 1.0f64;
    let mut phase = 0u64;
    for (t, &m) in counts.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let factor = if 2 * t as u32 == p { 0.0 } else { 2.0 * (PI * t as f64 / p as f64).cos() };
        magnitude *= factor.powi(m as i32);
        phase = (phase + t as u64 * m as u64) % (2 * p as u64);
    }
    if phase == 0 {
        Complex64::new(magnitude, 0.0)
    } else {
        Complex64::from_polar(magnitude, PI * phase as f64 / p as f64)
    }
}

/// `f(chi)` over all entries with multiplicity.
pub fn f_value(seq: &Sequence, chi: &CharacterId) -> Result<Complex64> {
    if seq.len() > F_LENGTH_GUARD {
        return Err(Error::LengthGuard { len: seq.len(), max: F_LENGTH_GUARD });
    }
    check_character(seq.spec(), chi)?;
    Ok(f_from_levels(&level_counts(seq, chi), seq.spec().p()))
}

fn check_character(spec: &GroupSpec, chi: &CharacterId) -> Result<()> {
    let r = spec.rank() as usize;
    if chi.coords().len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: chi.coords().len() });
    }
    if let Some(&bad) = chi.coords().iter().find(|&&c| c >= spec.p()) {
        return Err(Error::CoordOutOfRange { line: None, value: bad as i64, p: spec.p() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharSpectrum {
    pub spec: GroupSpec,
    pub s: usize,
    /// One value per character, lexicographic in `j`.
    pub values: Vec<(CharacterId, Complex64)>,
}

impl CharSpectrum {
    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|(_, v)| v.norm()).collect()
    }
}

/// `f(chi)` for every character, evaluated in parallel.
pub fn spectrum(seq: &Sequence) -> Result<CharSpectrum> {
    let spec = *seq.spec();
    if seq.len() > F_LENGTH_GUARD {
        return Err(Error::LengthGuard { len: seq.len(), max: F_LENGTH_GUARD });
    }
    let chars: Vec<CharacterId> = spec.characters().collect();
    let values = chars
        .into_par_iter()
        .map(|chi| {
            let v = f_from_levels(&level_counts(seq, &chi), spec.p());
            (chi, v)
        })
        .collect();
    Ok(CharSpectrum { spec, s: seq.len(), values })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub sum_re: f64,
    pub sum_im: f64,
    /// `|G| * Z(S)`, with `Z(S)` counting zero-sum index subsets including the empty one.
    pub expected: f64,
    pub zero_sum_count: u64,
    pub relative_error: f64,
}

/// Neumaier's compensated sum.
fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Compares `sum_chi f(chi)` with `|G| * Z(S)`.
pub fn spectrum_identity_check(seq: &Sequence) -> Result<IdentityReport> {
    if seq.len() > COUNT_WIDTH_GUARD {
        return Err(Error::LengthGuard { len: seq.len(), max: COUNT_WIDTH_GUARD });
    }
    let spec = spectrum(seq)?;
    let sum_re = compensated_sum(spec.values.iter().map(|(_, v)| v.re));
    let sum_im = compensated_sum(spec.values.iter().map(|(_, v)| v.im));
    let zero_sum_count = count_zero_sum_subsequences(seq)?;
    let expected = seq.spec().order() as f64 * zero_sum_count as f64;
    let relative_error = Complex64::new(sum_re - expected, sum_im).norm() / expected;
    Ok(IdentityReport { sum_re, sum_im, expected, zero_sum_count, relative_error })
}

/// `s = (2k - 1) M + q`, `q` in `[0, 2M - 1]`, and the minimal energy `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VDecomposition {
    pub s: u64,
    pub m: u64,
    pub k: u64,
    pub q: u64,
    pub v: u64,
}

pub fn v_decompose(s: u64, m: u64) -> Result<VDecomposition> {
    if m == 0 {
        return Err(Error::BadM);
    }
    if s < m {
        return Ok(VDecomposition { s, m, k: 1, q: 0, v: 0 });
    }
    let k = (s + m) / (2 * m);
    let q = s + m - 2 * k * m;
    let squares = (k - 1) * k * (2 * k - 1) / 6;
    Ok(VDecomposition { s, m, k, q, v: 2 * m * squares + q * k * k })
}

/// The closed-form lower bound `s (s^2 - M^2) / (12 M^2)`, meaningful for `s >= M`.
pub fn v_lower_bound(s: u64, m: u64) -> f64 {
    let (s, m) = (s as f64, m as f64);
    s * (s * s - m * m) / (12.0 * m * m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticParams {
    pub epsilon: f64,
    pub c: f64,
    pub r: u32,
}

impl AsymptoticParams {
    pub fn new(epsilon: f64, c: f64, r: u32) -> Result<Self> {
        let p = AsymptoticParams { epsilon, c, r };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::BadParams(format!("epsilon must lie in (0, 1/2), got {}", self.epsilon)));
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::BadParams(format!("c must be positive, got {}", self.c)));
        }
        if self.r < 2 {
            return Err(Error::BadParams(format!("r must be at least 2, got {}", self.r)));
        }
        Ok(())
    }

    /// `M = floor(c p^{1/2 - epsilon})`.
    pub fn m_for(&self, p: u64) -> u64 {
        (self.c * (p as f64).powf(0.5 - self.epsilon)).floor() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopeReport {
    pub chi: CharacterId,
    pub m: u64,
    pub abs_f: f64,
    pub envelope: f64,
    pub decomposition: VDecomposition,
    pub holds: bool,
    /// `v >= s (s^2 - M^2) / (12 M^2)`; `None` when `s < M`.
    pub lower_bound: Option<f64>,
    pub lower_bound_holds: Option<bool>,
}

/// Checks the envelope at a non-principal `chi` after verifying that no coset of
/// `Ker(chi)` holds more than `M` entries.
pub fn a1_envelope_check(
    seq: &Sequence,
    params: &AsymptoticParams,
    chi: &CharacterId,
) -> Result<EnvelopeReport> {
    params.validate()?;
    let spec = seq.spec();
    if seq.len() > F_LENGTH_GUARD {
        return Err(Error::LengthGuard { len: seq.len(), max: F_LENGTH_GUARD });
    }
    check_character(spec, chi)?;
    if chi.is_principal() {
        return Err(Error::BadParams("the envelope applies to non-principal characters".into()));
    }
    let p = spec.p() as u64;
    let m = params.m_for(p);
    if m == 0 {
        return Err(Error::BadM);
    }
    let counts = level_counts(seq, chi);
    if let Some(&worst) = counts.iter().max().filter(|&&w| w as u64 > m) {
        return Err(Error::CapViolated { count: worst as usize, cap: m });
    }
    let abs_f = f_from_levels(&counts, spec.p()).norm();
    let s = seq.len() as u64;
    let decomposition = v_decompose(s, m)?;
    let pow2 = 2f64.powi(s as i32);
    let envelope = pow2 * (-(PI * PI) * decomposition.v as f64 / (2.0 * (p * p) as f64)).exp();
    let holds = abs_f <= envelope + 1e-9 * pow2;
    let lower_bound = (s >= m).then(|| v_lower_bound(s, m));
    let lower_bound_holds = lower_bound.map(|lb| decomposition.v as f64 >= lb - 1e-9 * lb.abs().max(1.0));
    Ok(EnvelopeReport {
        chi: chi.clone(),
        m,
        abs_f,
        envelope,
        decomposition,
        holds,
        lower_bound,
        lower_bound_holds,
    })
}

/// Default upper end of the threshold scan.
pub const THRESHOLD_SCAN_CAP: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub epsilon: f64,
    pub c: f64,
    pub r: u32,
    pub p_threshold: u64,
    #[serde(rename = "M_at_p")]
    pub m_at_p: u64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Left and right sides of the two inequalities at `(s, p, M)`:
/// (i) `s^2 - M^2 > p^2 / 2`, (ii) `pi^2 s (s^2 - M^2) / (24 M^2 p^2) > ln(2 p^r)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InequalityValues {
    pub first_lhs: f64,
    pub first_rhs: f64,
    pub second_lhs: f64,
    pub second_rhs: f64,
}

impl InequalityValues {
    pub fn holds(&self) -> bool {
        self.first_lhs > self.first_rhs && self.second_lhs > self.second_rhs
    }
}

pub fn inequality_values(params: &AsymptoticParams, p: u64, s: u64) -> InequalityValues {
    let m = params.m_for(p) as f64;
    let (s, pf) = (s as f64, p as f64);
    let gap = s * s - m * m;
    InequalityValues {
        first_lhs: gap,
        first_rhs: pf * pf / 2.0,
        second_lhs: if m == 0.0 { f64::NAN } else { PI * PI * s * gap / (24.0 * m * m * pf * pf) },
        second_rhs: (2.0f64).ln() + params.r as f64 * pf.ln(),
    }
}

/// Whether both inequalities hold at `p` with `s = p` and `M >= 1`.
pub fn threshold_condition(params: &AsymptoticParams, p: u64) -> bool {
    params.m_for(p) >= 1 && inequality_values(params, p, p).holds()
}

pub fn effective_threshold(params: &AsymptoticParams) -> Result<ThresholdReport> {
    effective_threshold_with_cap(params, THRESHOLD_SCAN_CAP)
}

/// Smallest prime `p <= cap` satisfying [`threshold_condition`].
pub fn effective_threshold_with_cap(params: &AsymptoticParams, cap: u64) -> Result<ThresholdReport> {
    params.validate()?;
    for p in 2..=cap {
        // the float test is cheap; primality is only checked when it passes
        if !threshold_condition(params, p) || !is_prime(p) {
            continue;
        }
        let at_p = inequality_values(params, p, p);
        let at_next = inequality_values(params, p, p + 1);
        if at_next.first_lhs < at_p.first_lhs || at_next.second_lhs < at_p.second_lhs {
            return Err(Error::MonotonicityViolated { p });
        }
        return Ok(ThresholdReport {
            epsilon: params.epsilon,
            c: params.c,
            r: params.r,
            p_threshold: p,
            m_at_p: params.m_for(p),
            lhs: at_p.second_lhs,
            rhs: at_p.second_rhs,
        });
    }
    Err(Error::NotFound { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(p: u64, r: u32) -> GroupSpec {
        GroupSpec::new(p, r).unwrap()
    }

    fn chi(s: &GroupSpec, j: &[u32]) -> CharacterId {
        CharacterId::new(s, j).unwrap()
    }

    #[test]
    fn f_value_examples() {
        let c2 = spec(2, 2);
        let s = Sequence::from_coords(&c2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(f_value(&s, &CharacterId::principal(&c2)).unwrap(), Complex64::new(4.0, 0.0));
        assert_eq!(f_value(&s, &chi(&c2, &[1, 0])).unwrap().norm(), 0.0);
        assert_eq!(f_value(&Sequence::empty(&c2), &chi(&c2, &[1, 1])).unwrap(), Complex64::new(1.0, 0.0));
        let long = Sequence::from_pairs(&c2, [(c2.element(&[1, 0]).unwrap(), 65)]).unwrap();
        assert!(matches!(f_value(&long, &chi(&c2, &[1, 0])), Err(Error::LengthGuard { .. })));
    }

    #[test]
    fn f_value_matches_direct_product() {
        let c7 = spec(7, 2);
        let s = Sequence::from_coords(&c7, &[&[1, 2], &[3, 4], &[3, 4], &[6, 0], &[0, 5]]).unwrap();
        for j in c7.characters() {
            let direct = s
                .items()
                .map(|g| Complex64::new(1.0, 0.0) + c7.character_value(&j, g))
                .fold(Complex64::new(1.0, 0.0), |a, b| a * b);
            assert!((direct - f_value(&s, &j).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn identity_examples() {
        let c2 = spec(2, 2);
        let s = Sequence::from_coords(&c2, &[&[1, 0], &[0, 1]]).unwrap();
        let r = spectrum_identity_check(&s).unwrap();
        assert_eq!((r.sum_re, r.expected), (4.0, 4.0));
        let z = Sequence::from_coords(&c2, &[&[0, 0]]).unwrap();
        let r = spectrum_identity_check(&z).unwrap();
        assert_eq!((r.sum_re, r.expected, r.zero_sum_count), (8.0, 8.0, 2));
    }

    #[test]
    fn v_examples() {
        let d = v_decompose(7, 2).unwrap();
        assert_eq!((d.k, d.q, d.v), (2, 1, 8));
        assert_eq!(v_decompose(3, 3).unwrap().v, 0);
        assert_eq!(v_decompose(0, 1).unwrap().v, 0);
        let d = v_decompose(5, 1).unwrap();
        assert_eq!((d.k, d.q, d.v), (3, 0, 10));
        assert_eq!(v_decompose(2, 5).unwrap(), VDecomposition { s: 2, m: 5, k: 1, q: 0, v: 0 });
        assert!(matches!(v_decompose(3, 0), Err(Error::BadM)));
    }

    /// Smallest `|j|` first, each residue value at most `M` times.
    fn greedy_v(s: u64, m: u64) -> u64 {
        let mut left = s;
        let mut v = 0;
        let take = left.min(m);
        left -= take;
        let mut j = 1u64;
        while left > 0 {
            let take = left.min(2 * m);
            v += take * j * j;
            left -= take;
            j += 1;
        }
        v
    }

    /// Minimum over all count vectors `c_j <= M` on residues `-R..=R`.
    fn search_v(s: u64, m: u64) -> u64 {
        let radius = s as i64;
        let values: Vec<i64> = (-radius..=radius).collect();
        fn go(values: &[i64], left: u64, m: u64) -> Option<u64> {
            if left == 0 {
                return Some(0);
            }
            let (&j, rest) = values.split_first()?;
            (0..=left.min(m))
                .filter_map(|c| go(rest, left - c, m).map(|v| v + c * (j * j) as u64))
                .min()
        }
        go(&values, s, m).unwrap()
    }

    #[test]
    fn v_closed_form_matches_oracles() {
        for m in 1..=5 {
            for s in 0..=60 {
                let d = v_decompose(s, m).unwrap();
                assert_eq!(d.v, greedy_v(s, m), "s={s} M={m}");
                if s >= m {
                    assert_eq!(d.s, (2 * d.k - 1) * m + d.q);
                    assert!(d.q < 2 * m);
                    assert!(d.v as f64 >= v_lower_bound(s, m) - 1e-9);
                    let q = d.q as i128;
                    let (s_, m_) = (s as i128, m as i128);
                    let alt = ((s_ - q - m_) * (s_ - q + m_) * (s_ - q) + 3 * q * (s_ - q + m_).pow(2))
                        / (12 * m_ * m_);
                    assert_eq!(d.v as i128, alt);
                }
            }
        }
        for m in 1..=3 {
            for s in 0..=8 {
                assert_eq!(greedy_v(s, m), search_v(s, m), "s={s} M={m}");
            }
        }
    }

    #[test]
    fn envelope_examples() {
        let c5 = spec(5, 2);
        let params = AsymptoticParams::new(0.45, 1.0, 2).unwrap();
        assert_eq!(params.m_for(5), 1);
        let s = Sequence::from_coords(&c5, &[&[0, 0], &[1, 0], &[4, 0], &[2, 0], &[3, 0]]).unwrap();
        let r = a1_envelope_check(&s, &params, &chi(&c5, &[1, 0])).unwrap();
        let c1 = 2.0 * (PI / 5.0).cos();
        let c2 = 2.0 * (2.0 * PI / 5.0).cos();
        assert!((r.abs_f - 2.0 * c1 * c1 * c2 * c2).abs() < 1e-12);
        assert_eq!(r.decomposition.v, 10);
        assert!(r.holds);

        let clumped = Sequence::from_coords(&c5, &[&[1, 0], &[1, 1]]).unwrap();
        assert!(matches!(
            a1_envelope_check(&clumped, &params, &chi(&c5, &[1, 0])),
            Err(Error::CapViolated { count: 2, cap: 1 })
        ));

        let single = Sequence::from_coords(&c5, &[&[0, 3]]).unwrap();
        let r = a1_envelope_check(&single, &params, &chi(&c5, &[1, 0])).unwrap();
        assert_eq!((r.abs_f, r.envelope), (2.0, 2.0));
    }

    #[test]
    fn threshold_small_params() {
        let params = AsymptoticParams::new(0.45, 0.5, 2).unwrap();
        let r = effective_threshold(&params).unwrap();
        assert!(is_prime(r.p_threshold));
        assert!(threshold_condition(&params, r.p_threshold));
        for q in 2..r.p_threshold {
            if is_prime(q) {
                assert!(!threshold_condition(&params, q));
            }
        }
        assert!(matches!(effective_threshold_with_cap(&params, 3), Err(Error::NotFound { cap: 3 })));
        assert!(AsymptoticParams::new(0.5, 1.0, 2).is_err());
        assert!(AsymptoticParams::new(0.2, 1.0, 1).is_err());
    }

    fn arb_seq(p: u64, max_len: usize) -> impl Strategy<Value = Sequence> {
        let s = spec(p, 2);
        proptest::collection::vec((0..p as u32, 0..p as u32), 0..=max_len).prop_map(move |v| {
            Sequence::from_elements(&s, v.into_iter().map(|(a, b)| s.element(&[a, b]).unwrap())).unwrap()
        })
    }

    proptest! {
        #[test]
        fn multiplicative_and_bounded(a in arb_seq(7, 20), b in arb_seq(7, 20), j1 in 0u32..7, j2 in 0u32..7) {
            let c7 = spec(7, 2);
            let x = chi(&c7, &[j1, j2]);
            let fa = f_value(&a, &x).unwrap();
            let fb = f_value(&b, &x).unwrap();
            let fab = f_value(&a.concat(&b).unwrap(), &x).unwrap();
            let scale = 2f64.powi((a.len() + b.len()) as i32);
            prop_assert!((fa * fb - fab).norm() <= 1e-9 * scale);
            prop_assert!(fab.norm() <= scale * (1.0 + 1e-12));
        }

        #[test]
        fn principal_is_exact(a in arb_seq(11, 40)) {
            let c = spec(11, 2);
            prop_assert_eq!(f_value(&a, &CharacterId::principal(&c)).unwrap(), Complex64::new(2f64.powi(a.len() as i32), 0.0));
        }

        #[test]
        fn identity_holds(a in arb_seq(5, 30)) {
            let r = spectrum_identity_check(&a).unwrap();
            prop_assert!(r.relative_error < 1e-9);
        }
    }

    #[test]
    fn zero_sumfree_identity_equals_order() {
        let c3 = spec(3, 2);
        let s = Sequence::from_coords(&c3, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]).unwrap();
        let r = spectrum_identity_check(&s).unwrap();
        assert_eq!(r.zero_sum_count, 1);
        assert!((r.sum_re - 9.0).abs() < 1e-9);
    }
}
