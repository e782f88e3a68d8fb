use zslab_core::theorem::{analyze_theorem_1_1_with, AnalyzeOptions};
use zslab_core::*;

fn c7() -> GroupSpec {
    GroupSpec::new(7, 2).unwrap()
}

#[test]
fn file_round_trip_preserves_sequences() {
    let text = "# two blocks\ngroup 7 2\n1 0 * 3\n0 1\n\ngroup 5 1\n2 * 4\n";
    let seqs = parse_sequences(text).unwrap();
    assert_eq!(seqs.len(), 2);
    assert_eq!(seqs[0].len(), 4);
    assert_eq!(seqs[1].multiplicity(&seqs[1].spec().element(&[2]).unwrap()), 4);
    for s in &seqs {
        assert_eq!(&parse_sequence(&s.to_string()).unwrap(), s);
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    match parse_sequence("group 7 2\n1 0\n1 2 3\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
    assert!(parse_sequence("group 6 2\n").is_err());
}

#[test]
fn witness_from_search_sequence_round_trips_through_text() {
    let s = random_zero_sumfree(7, 11, 3).unwrap();
    assert!(is_zero_sumfree(&s));
    let g = s.items().next().unwrap().clone();
    let extended = s.concat(&Sequence::from_elements(s.spec(), [s.spec().neg(&g).unwrap()]).unwrap()).unwrap();
    let w = find_zero_sum(&extended, ZeroSumConstraint::Any).unwrap().unwrap();
    assert!(w.verify(&extended));
    let back = parse_sequence(&w.sequence().to_string()).unwrap();
    assert_eq!(back.spec().sum(back.items()), c7().zero());
}

#[test]
fn zero_sum_count_matches_spectrum() {
    let s = parse_sequence("group 5 2\n1 0 * 2\n0 1 * 3\n1 1\n4 4\n").unwrap();
    let rep = spectrum_identity_check(&s).unwrap();
    assert_eq!(rep.zero_sum_count, count_zero_sum_subsequences(&s).unwrap());
    assert!(rep.relative_error < 1e-12);
}

#[test]
fn forced_analysis_agrees_with_dp_on_extremal_orbits() {
    let cat = max_zero_sumfree_length(&SearchConfig::exhaustive(3)).unwrap();
    let force = AnalyzeOptions { bound_override: Some(u64::MAX) };
    for s in &cat.sequences {
        let v = analyze_theorem_1_1_with(s, 0.1, 2.0, &force).unwrap();
        assert_eq!(v.kind, VerdictKind::SmallPrimeCounterexample);
    }
}

#[test]
fn lemma_certificates_verify_across_modules() {
    let spec = GroupSpec::new(11, 1).unwrap();
    let s = Sequence::from_elements(&spec, (1..=6).map(|v| spec.element(&[v]).unwrap())).unwrap();
    let rep = check_k_subsums(&s, 3, KSubsumPart::Half).unwrap();
    assert!(rep.verify_certificate(&s));
    let z = parse_sequence("group 3 2\n1 0 * 8\n0 1 * 2\n").unwrap();
    let t = find_zero_sumfree_translate(&z, 1).unwrap();
    assert!(t.verify_certificate(&z));
}

#[test]
fn threshold_regression() {
    let rep = effective_threshold(&AsymptoticParams::new(0.2, 1.0, 2).unwrap()).unwrap();
    assert_eq!(rep.p_threshold, 12143);
    assert_eq!(rep.m_at_p, 16);
}
