//! Computational zero-sum theory over `C_p^r`, with the rank-2 case `C_p ⊕ C_p`
//! as the main target.
//!
//! Every claim the toolkit makes comes with a witness that can be re-checked
//! against the exact subsum oracle in [`subsum`].

pub mod charsum;
pub mod error;
pub mod group;
pub mod lemmas;
pub mod search;
pub mod sequence;
pub mod subsum;
pub mod theorem;

pub use error::{Error, Result};
pub use group::{is_prime, Basis, CharacterId, Element, GroupSpec, SubgroupLine};
pub use sequence::{parse_sequence, parse_sequences, SeqStats, Sequence};
pub use subsum::{
    build_table, count_zero_sum_subsequences, find_zero_sum, is_minimal_zero_sum, is_zero_sumfree,
    subsums, SubsumKind, SubsumTable, ZeroSumConstraint, ZeroSumWitness,
};
pub use charsum::{
    a1_envelope_check, effective_threshold, effective_threshold_with_cap, f_value, spectrum,
    spectrum_identity_check, v_decompose, AsymptoticParams, CharSpectrum, EnvelopeReport, IdentityReport,
    ThresholdReport, VDecomposition,
};
pub use lemmas::{
    check_k_subsums, check_line_subsums, check_short_cover, find_n_or_2n_zero_sum,
    find_zero_sumfree_translate, sumset, Certificate, KSubsumPart, LemmaId, LemmaReport, SumsetReport,
};
pub use search::{
    canonical_form, max_zero_sumfree_length, random_zero_sumfree, verify_property_b, ExtremalCatalog,
    PropertyBReport, SearchConfig, SearchMode,
};
pub use theorem::{
    analyze_theorem_1_1, analyze_theorem_1_1_with, reduce_theorem_1_2, reduce_theorem_1_3, AnalyzeOptions,
    CaseLabel, CaseOutcome, CaseState, Theorem12Report, Theorem13Report, Verdict, VerdictKind,
};
