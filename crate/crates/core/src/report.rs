//! One-shot analysis of a single sequence, shared by the command-line and
//! browser front ends.

use serde::Serialize;

use crate::diffset::{
    build_ra, classify_dpds_detailed, classify_pdpds_detailed, expected_dpds_params, expected_pdpds_params, DpdsParams,
    PdpdsParams,
};
use crate::sequence::{AlmostParySequence, AutocorrelationProfile, NpsType};
use crate::theory::{
    consecutive_constraint, dpds_counting_identity, ell_bounds, pdpds_counting_identity, second_component_identities,
    SecondComponentCounts, SecondComponentReport,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllBoundsCheck {
    pub lower: usize,
    pub upper: usize,
    pub holds: bool,
}

/// `R_a` of the rotation with both zeros leading, read as a PDPDS.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PdpdsAnalysis {
    pub rotated: String,
    pub set: String,
    pub params: Option<PdpdsParams>,
    pub violation: Option<String>,
    /// Parameters forced by the NPS type, when it has one and they are integral.
    pub expected: Option<PdpdsParams>,
    pub counting_identity: Option<bool>,
    pub second_component: Option<SecondComponentReport>,
}

/// `R_a` of the rotation with the zero (if any) leading, read as a DPDS.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DpdsAnalysis {
    pub rotated: String,
    pub set: String,
    pub params: Option<DpdsParams>,
    pub violation: Option<String>,
    pub expected: Option<DpdsParams>,
    pub counting_identity: Option<bool>,
    pub consecutive_constraint: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub sequence: String,
    pub p: u32,
    pub period: usize,
    pub nonzero: usize,
    pub zeros: usize,
    pub zero_positions: Vec<usize>,
    pub consecutive_zeros: bool,
    pub profile: AutocorrelationProfile,
    pub nps: Option<NpsType>,
    pub two_valued_set: Option<Vec<i64>>,
    pub ell_bounds: Option<EllBoundsCheck>,
    pub pdpds: Option<PdpdsAnalysis>,
    pub dpds: Option<DpdsAnalysis>,
}

impl SequenceReport {
    pub fn of(seq: &AlmostParySequence) -> Self {
        let profile = seq.profile();
        let nps = NpsType::from_profile(&profile);
        let n = seq.nonzero_count();
        let s = seq.zero_count();
        let consecutive = seq.has_consecutive_zeros();
        let ell_bounds = (consecutive && s >= 1 && n >= 1).then(|| {
            let (lower, upper) = ell_bounds(n, s, seq.p());
            EllBoundsCheck { lower, upper, holds: (lower..=upper).contains(&profile.ell) }
        });
        let rotated = if consecutive { seq.with_zeros_leading() } else { None };
        let pdpds = match (&rotated, s) {
            (Some(r), 2) if r.period() >= 3 => Some(pdpds_analysis(r)),
            _ => None,
        };
        let dpds = match (&rotated, s) {
            (Some(r), 0 | 1) if n >= 1 => Some(dpds_analysis(r)),
            _ => None,
        };
        Self {
            sequence: seq.to_text(),
            p: seq.p(),
            period: seq.period(),
            nonzero: n,
            zeros: s,
            zero_positions: seq.zero_positions().to_vec(),
            consecutive_zeros: consecutive,
            two_valued_set: profile.two_valued_set(),
            profile,
            nps,
            ell_bounds,
            pdpds,
            dpds,
        }
    }

    /// Named pass/fail results; `None` where a check does not apply.
    pub fn checks(&self) -> Vec<(&'static str, Option<bool>)> {
        let mut out = vec![("ell-bounds", self.ell_bounds.as_ref().map(|e| e.holds))];
        if let Some(pd) = &self.pdpds {
            // γ2 is undetermined with period 3.
            let agrees = match self.nps {
                _ if self.period < 4 => None,
                Some(_) => Some(pd.params.is_some() && pd.params == pd.expected),
                None => Some(pd.params.is_none()),
            };
            out.push(("nps-iff-pdpds", agrees));
            out.push(("pdpds-counting-identity", pd.counting_identity));
            out.push(("second-component-identities", pd.second_component.as_ref().map(|r| r.all_hold())));
        }
        if let Some(d) = &self.dpds {
            out.push(("dpds-counting-identity", d.counting_identity));
            out.push(("dpds-row-sums", d.consecutive_constraint));
        }
        out
    }

    /// True when no applicable check failed.
    pub fn all_checks_pass(&self) -> bool {
        self.checks().iter().all(|(_, c)| *c != Some(false))
    }
}

fn pdpds_analysis(rotated: &AlmostParySequence) -> PdpdsAnalysis {
    let set = build_ra(rotated);
    let n = rotated.nonzero_count() as i64;
    let p = rotated.p();
    let nps = NpsType::from_profile(&rotated.profile());
    let (params, violation) = match classify_pdpds_detailed(&set) {
        Ok(params) => (Some(params), None),
        Err(v) => (None, Some(v.to_string())),
    };
    let far_shifts = rotated.period() >= 4;
    let expected = nps.filter(|_| far_shifts).and_then(|t| expected_pdpds_params(n, p, t.gamma1, t.gamma2));
    let second_component = match (params, nps) {
        (Some(_), Some(t)) if far_shifts => {
            second_component_identities(&SecondComponentCounts::of(&set), n, p, t.gamma1, t.gamma2).ok()
        }
        _ => None,
    };
    PdpdsAnalysis {
        rotated: rotated.to_text(),
        set: set.to_string(),
        counting_identity: params.map(|pr| pdpds_counting_identity(&pr, p)),
        params,
        violation,
        expected,
        second_component,
    }
}

fn dpds_analysis(rotated: &AlmostParySequence) -> DpdsAnalysis {
    let set = build_ra(rotated);
    let n = rotated.nonzero_count() as i64;
    let s = rotated.zero_count() as i64;
    let p = rotated.p();
    let nps = NpsType::from_profile(&rotated.profile());
    let (params, violation) = match classify_dpds_detailed(&set) {
        Ok(params) => (Some(params), None),
        Err(v) => (None, Some(v.to_string())),
    };
    let expected = match nps {
        Some(t) if t.uniform && s == 1 => expected_dpds_params(n, p, t.gamma1),
        _ => None,
    };
    DpdsAnalysis {
        rotated: rotated.to_text(),
        set: set.to_string(),
        counting_identity: params.map(|d| dpds_counting_identity(n + s, p, n, d.lambda1, d.mu)),
        consecutive_constraint: params.map(|d| consecutive_constraint(s, n, d.lambda1, d.mu, p)),
        params,
        violation,
        expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(p: u32, text: &str) -> SequenceReport {
        SequenceReport::of(&AlmostParySequence::parse(p, text).unwrap())
    }

    #[test]
    fn five_term_example() {
        let r = report(3, "Z,Z,1,1,1");
        assert_eq!(r.nps, Some(NpsType::new(2, 1)));
        let pd = r.pdpds.as_ref().unwrap();
        assert_eq!(pd.params.unwrap().as_tuple(), [5, 3, 3, 1, 0, 2, 0, 0]);
        assert_eq!(pd.params, pd.expected);
        assert!(r.all_checks_pass());
    }

    #[test]
    fn zeros_are_rotated_to_the_front() {
        let r = report(3, "1,1,Z,Z,1");
        let pd = r.pdpds.as_ref().unwrap();
        assert_eq!(pd.rotated, "Z,Z,1,1,1");
        assert_eq!(pd.params.unwrap().as_tuple(), [5, 3, 3, 1, 0, 2, 0, 0]);
    }

    #[test]
    fn period_thirteen_dpds() {
        let r = report(3, "Z,2,2,2,0,2,1,1,2,0,2,2,2");
        let d = r.dpds.as_ref().unwrap();
        let params = d.params.unwrap();
        assert_eq!((params.lambda1, params.mu), (5, 3));
        assert_eq!(d.counting_identity, Some(true));
        assert_eq!(d.consecutive_constraint, Some(true));
        assert_eq!(d.expected, d.params);
    }

    #[test]
    fn no_zero_dpds() {
        let r = report(3, "2,2,2,2,0");
        let d = r.dpds.as_ref().unwrap();
        let params = d.params.unwrap();
        assert_eq!((params.lambda1, params.mu), (3, 1));
        assert_eq!(d.consecutive_constraint, Some(true));
    }

    #[test]
    fn non_nps_has_no_pdpds() {
        let r = report(3, "Z,Z,2,1,1,2");
        assert!(r.nps.is_none());
        let pd = r.pdpds.as_ref().unwrap();
        assert!(pd.params.is_none());
        assert!(pd.violation.is_some());
        assert!(r.all_checks_pass());
    }

    #[test]
    fn period_three_leaves_gamma2_open() {
        let r = report(3, "Z,Z,0");
        let pd = r.pdpds.as_ref().unwrap();
        assert!(pd.params.unwrap().far_class_empty());
        assert!(pd.expected.is_none() && pd.second_component.is_none());
        assert!(r.all_checks_pass());
    }

    #[test]
    fn split_zeros_skip_difference_sets() {
        let r = report(3, "Z,0,Z,1,1");
        assert!(!r.consecutive_zeros);
        assert!(r.pdpds.is_none() && r.dpds.is_none() && r.ell_bounds.is_none());
    }
}
