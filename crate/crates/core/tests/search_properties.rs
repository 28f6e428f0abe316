use npseq::diffset::{build_ra, classify_dpds, expected_dpds_params};
use npseq::search::{enumerate_and_classify, theorem3_roundtrip, verify_ell_bounds, SearchConfig, SearchFilter};
use npseq::sequence::{classify_nps, AlmostParySequence};
use npseq::theory::{nonexistence_verdict, pdpds_counting_identity, VerdictStatus};

#[test]
fn roundtrip_small_periods_have_no_violations() {
    for (p, period) in [(3u32, 5usize), (3, 6), (3, 7), (5, 7)] {
        let rep = theorem3_roundtrip(&SearchConfig::new(p, period, 2).with_normalize_phase(false)).unwrap();
        assert_eq!(rep.total_enumerated, (p as u64).pow(period as u32 - 2));
        assert!(rep.violations.is_empty(), "p={p} N={period}: {:?}", rep.violations);
    }
}

#[test]
fn roundtrip_contains_the_period_seven_example() {
    let rep = theorem3_roundtrip(&SearchConfig::new(3, 7, 2).with_normalize_phase(false)).unwrap();
    let m = rep.matches.iter().find(|m| m.sequence == "Z,Z,2,1,0,1,2").unwrap();
    assert_eq!(m.pdpds.unwrap().as_tuple(), [7, 3, 5, 1, 0, 0, 1, 2]);
}

#[test]
fn no_type_with_gamma2_below_minus_three() {
    let cfg = SearchConfig::new(3, 7, 2).with_filter(SearchFilter::Gamma2AtMost { bound: -3 });
    assert!(enumerate_and_classify(&cfg).unwrap().matches.is_empty());
}

#[test]
fn no_uniform_type_with_two_zeros() {
    let cfg = SearchConfig::new(3, 6, 2).with_filter(SearchFilter::Uniform);
    assert!(enumerate_and_classify(&cfg).unwrap().matches.is_empty());
}

#[test]
fn ell_bounds_period_six_contains_examples() {
    let rep = verify_ell_bounds(&SearchConfig::new(3, 6, 2).with_normalize_phase(false).with_filter(SearchFilter::All))
        .unwrap();
    assert!(rep.violations.is_empty());
    assert!(rep.ell_histogram.keys().all(|l| (2..=5).contains(l)));
    for (text, ell) in [("Z,Z,1,1,1,1", 2), ("Z,Z,2,1,1,2", 3), ("Z,Z,1,0,1,1", 4), ("Z,Z,2,2,0,0", 5)] {
        let m = rep.matches.iter().find(|m| m.sequence == text).unwrap();
        let seq = AlmostParySequence::parse(3, &m.sequence).unwrap();
        assert_eq!(seq.profile().ell, ell);
    }
}

#[test]
fn phase_normalization_scales_match_count() {
    for (p, period) in [(3u32, 6usize), (3, 7), (5, 6)] {
        let cfg = SearchConfig::new(p, period, 2);
        let normalized = enumerate_and_classify(&cfg).unwrap().matches.len();
        let full = enumerate_and_classify(&cfg.clone().with_normalize_phase(false)).unwrap().matches.len();
        assert_eq!(normalized * p as usize, full);
    }
}

#[test]
fn every_classified_match_passes_identities() {
    for (p, period) in [(3u32, 8usize), (5, 7)] {
        let rep = enumerate_and_classify(&SearchConfig::new(p, period, 2)).unwrap();
        for m in &rep.matches {
            assert!(pdpds_counting_identity(&m.pdpds.unwrap(), p));
        }
        assert!(rep.violations.is_empty());
    }
}

#[test]
fn verdicts_never_exclude_found_sequences() {
    for (p, period) in [(3u32, 5usize), (3, 6), (3, 7), (3, 8), (3, 9), (5, 6), (5, 7)] {
        let rep = enumerate_and_classify(&SearchConfig::new(p, period, 2)).unwrap();
        for m in &rep.matches {
            let t = m.nps.unwrap();
            let v = nonexistence_verdict(period as i64 - 2, p, t.gamma1, t.gamma2);
            assert_eq!(v.status, VerdictStatus::Undecided, "{} type {t}", m.sequence);
        }
    }
}

/// One zero: uniform type γ ⟺ R_a is a DPDS with the forced parameters.
#[test]
fn single_zero_uniform_type_matches_dpds() {
    for (p, period) in [(3u32, 5usize), (3, 7), (3, 8), (5, 6), (2, 8)] {
        let n = period - 1;
        let total = (p as u64).pow(n as u32);
        for idx in 0..total {
            let mut rest = idx;
            let exps: Vec<u32> = (0..n)
                .map(|_| {
                    let d = (rest % p as u64) as u32;
                    rest /= p as u64;
                    d
                })
                .collect();
            let seq = AlmostParySequence::with_leading_zeros(p, 1, &exps).unwrap();
            let uniform = classify_nps(&seq).filter(|t| t.uniform);
            let dpds = classify_dpds(&build_ra(&seq));
            let expected = uniform.and_then(|t| expected_dpds_params(n as i64, p, t.gamma1));
            assert_eq!(uniform.is_some(), dpds.is_some() && dpds == expected, "{seq}");
        }
    }
}
