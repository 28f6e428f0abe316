//! Exhaustive enumeration of almost p-ary sequences with a leading run of
//! zero-symbols.
//!
//! Zeros sit at positions `0..s`; the remaining `N - s` exponents range over
//! `Z_p`. Autocorrelation is invariant under rotation, so this covers every
//! sequence whose zeros are consecutive. With phase normalization the first
//! nonzero exponent is fixed to 0, which loses nothing because adding a
//! constant to every exponent leaves each `C(t)` unchanged.
//!
//! Candidates are indexed `0..p^free` in lexicographic order of their
//! exponent vectors. A run with `jobs` workers splits that range into
//! contiguous blocks and concatenates the per-block reports in block order,
//! so output does not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::thread;

use serde::Serialize;

use crate::cyclotomic::check_prime;
use crate::diffset::{build_ra, classify_pdpds, expected_pdpds_params, PdpdsParams};
use crate::error::{Error, Result};
use crate::sequence::{AlmostParySequence, NpsType};
use crate::theory::{ell_bounds, pdpds_counting_identity, second_component_identities, SecondComponentCounts};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Which candidates are reported as matches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchFilter {
    /// Every candidate.
    All,
    /// Every nearly perfect candidate.
    #[default]
    AnyNps,
    /// Nearly perfect of exactly this type.
    Type { gamma1: i64, gamma2: i64 },
    /// Nearly perfect with `γ1 = γ2`.
    Uniform,
    /// Nearly perfect with `γ2 <= bound`.
    Gamma2AtMost { bound: i64 },
}

impl SearchFilter {
    pub fn accepts(&self, nps: Option<NpsType>) -> bool {
        match (self, nps) {
            (SearchFilter::All, _) => true,
            (_, None) => false,
            (SearchFilter::AnyNps, Some(_)) => true,
            (SearchFilter::Type { gamma1, gamma2 }, Some(t)) => t.gamma1 == *gamma1 && t.gamma2 == *gamma2,
            (SearchFilter::Uniform, Some(t)) => t.uniform,
            (SearchFilter::Gamma2AtMost { bound }, Some(t)) => t.gamma2 <= *bound,
        }
    }
}

impl fmt::Display for SearchFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchFilter::All => f.write_str("all"),
            SearchFilter::AnyNps => f.write_str("nps"),
            SearchFilter::Type { gamma1, gamma2 } => write!(f, "type({gamma1},{gamma2})"),
            SearchFilter::Uniform => f.write_str("uniform"),
            SearchFilter::Gamma2AtMost { bound } => write!(f, "gamma2<={bound}"),
        }
    }
}

/// Extra verification applied to every candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Classify; matches with two zeros get their PDPDS checked.
    Classify,
    /// Also check `ℓ` against its bounds on every candidate.
    EllBounds,
    /// Also check that NPS classification and PDPDS classification agree on
    /// every candidate (two zeros only).
    Theorem3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub p: u32,
    pub period: usize,
    pub zeros: usize,
    pub normalize_phase: bool,
    pub filter: SearchFilter,
    pub jobs: usize,
    pub budget: u128,
}

impl SearchConfig {
    pub fn new(p: u32, period: usize, zeros: usize) -> Self {
        Self {
            p,
            period,
            zeros,
            normalize_phase: true,
            filter: SearchFilter::default(),
            jobs: 1,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_filter(mut self, filter: SearchFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_normalize_phase(mut self, on: bool) -> Self {
        self.normalize_phase = on;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// Exponent positions actually enumerated.
    pub fn free_positions(&self) -> usize {
        let nonzero = self.period - self.zeros;
        if self.normalize_phase {
            nonzero - 1
        } else {
            nonzero
        }
    }

    /// `p^free`, or `None` on overflow.
    pub fn space_size(&self) -> Option<u128> {
        (self.p as u128).checked_pow(u32::try_from(self.free_positions()).ok()?)
    }

    fn validate(&self) -> Result<u64> {
        check_prime(self.p)?;
        if self.period < 2 {
            return Err(Error::InvalidParameter("period must be at least 2".into()));
        }
        if self.zeros >= self.period {
            return Err(Error::InvalidParameter(format!(
                "zero run {} must be shorter than the period {}",
                self.zeros, self.period
            )));
        }
        if self.jobs == 0 {
            return Err(Error::InvalidParameter("job count must be positive".into()));
        }
        match self.space_size() {
            Some(size) if size <= self.budget => Ok(size as u64),
            Some(size) => Err(Error::BudgetExceeded { required: size, budget: self.budget }),
            None => Err(Error::BudgetExceeded { required: u128::MAX, budget: self.budget }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchMatch {
    pub sequence: String,
    pub exponents: Vec<u32>,
    pub nps: Option<NpsType>,
    pub pdpds: Option<PdpdsParams>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub sequence: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub p: u32,
    pub period: usize,
    pub zeros: usize,
    pub normalize_phase: bool,
    pub filter: SearchFilter,
    pub total_enumerated: u64,
    pub matches: Vec<SearchMatch>,
    pub ell_histogram: BTreeMap<usize, u64>,
    pub violations: Vec<Violation>,
}

impl SearchReport {
    fn empty(config: &SearchConfig, mode: SearchMode) -> Self {
        Self {
            mode,
            p: config.p,
            period: config.period,
            zeros: config.zeros,
            normalize_phase: config.normalize_phase,
            filter: config.filter,
            total_enumerated: 0,
            matches: Vec::new(),
            ell_histogram: BTreeMap::new(),
            violations: Vec::new(),
        }
    }

    fn absorb(&mut self, other: SearchReport) {
        self.total_enumerated += other.total_enumerated;
        self.matches.extend(other.matches);
        for (ell, c) in other.ell_histogram {
            *self.ell_histogram.entry(ell).or_default() += c;
        }
        self.violations.extend(other.violations);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Matches only: `sequence,gamma1,gamma2,pdpds`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sequence,gamma1,gamma2,pdpds\n");
        for m in &self.matches {
            let (g1, g2) = m.nps.map(|t| (t.gamma1.to_string(), t.gamma2.to_string())).unwrap_or_default();
            let pd = m.pdpds.map(|p| p.to_string()).unwrap_or_default();
            out.push_str(&format!("\"{}\",{},{},\"{}\"\n", m.sequence, g1, g2, pd));
        }
        out
    }
}

/// Writes the exponent vector for candidate `index` into `out`.
fn decode(index: u64, p: u32, normalize: bool, out: &mut [u32]) {
    let start = usize::from(normalize);
    if normalize {
        out[0] = 0;
    }
    let mut rest = index;
    for slot in out[start..].iter_mut().rev() {
        *slot = (rest % p as u64) as u32;
        rest /= p as u64;
    }
}

fn examine(config: &SearchConfig, mode: SearchMode, exponents: &[u32], report: &mut SearchReport) {
    let seq = AlmostParySequence::with_leading_zeros(config.p, config.zeros, exponents)
        .expect("decoded exponents are in range");
    let profile = seq.profile();
    *report.ell_histogram.entry(profile.ell).or_default() += 1;
    let nps = NpsType::from_profile(&profile);
    let n = seq.nonzero_count();
    let mut violation = |reason: String| {
        report.violations.push(Violation { sequence: seq.to_text(), reason });
    };

    if mode == SearchMode::EllBounds {
        let (lo, hi) = ell_bounds(n, config.zeros, config.p);
        if profile.ell < lo || profile.ell > hi {
            violation(format!("ell = {} outside [{lo}, {hi}]", profile.ell));
        }
    }

    let two_zeros = config.zeros == 2;
    let pdpds = if two_zeros && (mode == SearchMode::Theorem3 || config.filter.accepts(nps)) {
        classify_pdpds(&build_ra(&seq))
    } else {
        None
    };

    if mode == SearchMode::Theorem3 {
        let expected = nps.and_then(|t| expected_pdpds_params(n as i64, config.p, t.gamma1, t.gamma2));
        let forward = nps.is_some();
        let backward = pdpds.is_some() && pdpds == expected;
        if forward != backward {
            violation(format!(
                "NPS type {} but PDPDS {} (expected {})",
                nps.map_or("none".into(), |t| t.to_string()),
                pdpds.map_or("none".into(), |p| p.to_string()),
                expected.map_or("none".into(), |p| p.to_string()),
            ));
        }
    }

    if !config.filter.accepts(nps) {
        return;
    }
    // With period 3 the far class is empty and γ2 is not determined, so the
    // identities that involve it are skipped.
    if let (true, Some(t)) = (two_zeros && config.period >= 4, nps) {
        match pdpds {
            Some(params) => {
                if !pdpds_counting_identity(&params, config.p) {
                    violation(format!("PDPDS {params} fails the counting identity"));
                }
                let counts = SecondComponentCounts::of(&build_ra(&seq));
                match second_component_identities(&counts, n as i64, config.p, t.gamma1, t.gamma2) {
                    Ok(rep) if rep.all_hold() => {}
                    Ok(_) => violation(format!("PDPDS {params} fails a second-component identity")),
                    Err(e) => violation(format!("type {t}: {e}")),
                }
            }
            None => violation(format!("NPS type {t} but R_a is not a PDPDS")),
        }
    }
    report.matches.push(SearchMatch { sequence: seq.to_text(), exponents: exponents.to_vec(), nps, pdpds });
}

fn run_range(config: &SearchConfig, mode: SearchMode, range: std::ops::Range<u64>) -> SearchReport {
    let mut report = SearchReport::empty(config, mode);
    let mut exponents = vec![0u32; config.period - config.zeros];
    for index in range {
        decode(index, config.p, config.normalize_phase, &mut exponents);
        examine(config, mode, &exponents, &mut report);
        report.total_enumerated += 1;
    }
    report
}

/// Runs the enumeration in `config.jobs` contiguous blocks.
pub fn run(config: &SearchConfig, mode: SearchMode) -> Result<SearchReport> {
    let size = config.validate()?;
    if mode == SearchMode::Theorem3 && (config.zeros != 2 || config.period < 4) {
        return Err(Error::InvalidParameter("the PDPDS round trip needs exactly 2 zeros and period >= 4".into()));
    }
    if mode == SearchMode::EllBounds && config.zeros == 0 {
        return Err(Error::InvalidParameter("ell bounds need at least one zero-symbol".into()));
    }
    let jobs = (config.jobs as u64).clamp(1, size.max(1));
    let bounds: Vec<u64> = (0..=jobs).map(|j| (size as u128 * j as u128 / jobs as u128) as u64).collect();
    let parts: Vec<SearchReport> = if jobs == 1 {
        vec![run_range(config, mode, 0..size)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .windows(2)
                .map(|w| {
                    let range = w[0]..w[1];
                    scope.spawn(move || run_range(config, mode, range))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        })
    };
    let mut report = SearchReport::empty(config, mode);
    for part in parts {
        report.absorb(part);
    }
    Ok(report)
}

pub fn enumerate_and_classify(config: &SearchConfig) -> Result<SearchReport> {
    run(config, SearchMode::Classify)
}

pub fn verify_ell_bounds(config: &SearchConfig) -> Result<SearchReport> {
    run(config, SearchMode::EllBounds)
}

pub fn theorem3_roundtrip(config: &SearchConfig) -> Result<SearchReport> {
    run(config, SearchMode::Theorem3)
}
