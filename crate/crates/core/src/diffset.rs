//! Subsets of `Z_N × Z_p`, their difference multisets, and the DPDS / PDPDS
//! parameter classifications.
//!
//! The group `H × P` with `H = <h>` of order `N` and `P = <g>` of order `p`
//! is written additively: the element `g^b h^i` is `(i, b)`.
//!
//! For the partial classification the nonidentity cells split into five
//! classes. "Near" shifts are `h ∈ {1, N-1}` (adjacent to the identity),
//! "far" shifts are `h ∈ {2, …, N-2}`:
//!
//! | class      | cells                       | parameter |
//! |------------|-----------------------------|-----------|
//! | far pure   | `h` far, `g = 0`            | `λ1`      |
//! | P pure     | `h = 0`, `g ≠ 0`            | `λ2`      |
//! | near pure  | `h` near, `g = 0`           | `λ3`      |
//! | far mixed  | `h` far, `g ≠ 0`            | `μ1`      |
//! | near mixed | `h` near, `g ≠ 0`           | `μ2`      |

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cyclotomic::check_prime;
use crate::error::{Error, Result};
use crate::sequence::{AlmostParySequence, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    /// Component in `H = Z_N`.
    pub h: usize,
    /// Component in `P = Z_p`.
    pub g: u32,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.g)
    }
}

/// A set of distinct elements of `Z_N × Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSubset {
    order_h: usize,
    p: u32,
    elements: Vec<GroupElement>,
}

impl GroupSubset {
    pub fn new(order_h: usize, p: u32, elements: Vec<GroupElement>) -> Result<Self> {
        check_prime(p)?;
        if order_h == 0 {
            return Err(Error::InvalidParameter("H must have positive order".into()));
        }
        let mut seen = BTreeSet::new();
        for e in &elements {
            if e.h >= order_h || e.g >= p {
                return Err(Error::InvalidParameter(format!("element {e} is outside Z_{order_h} x Z_{p}")));
            }
            if !seen.insert(*e) {
                return Err(Error::InvalidParameter(format!("duplicate element {e}")));
            }
        }
        Ok(Self { order_h, p, elements })
    }

    /// Parses `"(h,g);(h,g);…"`. An empty string is the empty set.
    pub fn parse(order_h: usize, p: u32, text: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let inner = item
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected (h,g), got {item:?}")))?;
            let (h, g) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("expected (h,g), got {item:?}")))?;
            let h = h.trim().parse().map_err(|_| Error::Parse(format!("bad H component in {item:?}")))?;
            let g = g.trim().parse().map_err(|_| Error::Parse(format!("bad P component in {item:?}")))?;
            elements.push(GroupElement { h, g });
        }
        Self::new(order_h, p, elements)
    }

    /// `R_a = {(i, b_i) : a_i ≠ 0}`.
    pub fn from_sequence(seq: &AlmostParySequence) -> Self {
        let elements = seq
            .symbols()
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Symbol::Zero => None,
                Symbol::Root(b) => Some(GroupElement { h: i, g: *b }),
            })
            .collect();
        Self { order_h: seq.period(), p: seq.p(), elements }
    }

    pub fn order_h(&self) -> usize {
        self.order_h
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn build_ra(seq: &AlmostParySequence) -> GroupSubset {
    GroupSubset::from_sequence(seq)
}

/// Dense `N × p` grid of difference multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceMultiset {
    order_h: usize,
    p: u32,
    counts: Vec<u64>,
}

impl DifferenceMultiset {
    pub fn of(set: &GroupSubset) -> Self {
        let n = set.order_h;
        let p = set.p as usize;
        let mut counts = vec![0u64; n * p];
        for a in &set.elements {
            for b in &set.elements {
                if a == b {
                    continue;
                }
                let dh = (a.h + n - b.h) % n;
                let dg = (a.g as usize + p - b.g as usize) % p;
                counts[dh * p + dg] += 1;
            }
        }
        Self { order_h: n, p: set.p, counts }
    }

    pub fn get(&self, h: usize, g: u32) -> u64 {
        self.counts[h * self.p as usize + g as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn order_h(&self) -> usize {
        self.order_h
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Nonidentity cells in row-major order.
    fn cells(&self) -> impl Iterator<Item = (usize, u32, u64)> + '_ {
        let p = self.p as usize;
        self.counts.iter().enumerate().skip(1).map(move |(idx, &c)| (idx / p, (idx % p) as u32, c))
    }
}

pub fn difference_multiset(set: &GroupSubset) -> DifferenceMultiset {
    DifferenceMultiset::of(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DpdsParams {
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub lambda1: i64,
    pub lambda2: i64,
    pub mu: i64,
}

impl fmt::Display for DpdsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{},{})", self.n, self.m, self.k, self.lambda1, self.lambda2, self.mu)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PdpdsParams {
    /// Order of `H` (the period `N`).
    pub n: i64,
    /// Order of `P`.
    pub m: i64,
    pub k: i64,
    pub lambda1: i64,
    pub lambda2: i64,
    pub lambda3: i64,
    pub mu1: i64,
    pub mu2: i64,
}

impl PdpdsParams {
    pub fn as_tuple(&self) -> [i64; 8] {
        [self.n, self.m, self.k, self.lambda1, self.lambda2, self.lambda3, self.mu1, self.mu2]
    }

    pub fn from_tuple(t: [i64; 8]) -> Self {
        Self { n: t[0], m: t[1], k: t[2], lambda1: t[3], lambda2: t[4], lambda3: t[5], mu1: t[6], mu2: t[7] }
    }

    /// Parses `"n,m,k,λ1,λ2,λ3,μ1,μ2"`, with or without parentheses.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let vals = inner
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad parameter {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let arr: [i64; 8] =
            vals.try_into().map_err(|v: Vec<i64>| Error::Parse(format!("expected 8 parameters, got {}", v.len())))?;
        Ok(Self::from_tuple(arr))
    }

    /// With `N = 3` there are no far shifts, so `λ1` and `μ1` are unconstrained
    /// and reported as zero.
    pub fn far_class_empty(&self) -> bool {
        self.n <= 3
    }
}

impl fmt::Display for PdpdsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.as_tuple();
        write!(f, "({},{},{},{},{},{},{},{})", t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7])
    }
}

/// Difference classes of the partial classification, in parameter order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DifferenceClass {
    FarPure,
    PPure,
    NearPure,
    FarMixed,
    NearMixed,
    /// DPDS class: every nonidentity element of `H`.
    HPure,
    /// DPDS class: every element outside `H ∪ P`.
    Mixed,
}

impl DifferenceClass {
    pub fn parameter(self) -> &'static str {
        match self {
            DifferenceClass::FarPure => "lambda1",
            DifferenceClass::PPure => "lambda2",
            DifferenceClass::NearPure => "lambda3",
            DifferenceClass::FarMixed => "mu1",
            DifferenceClass::NearMixed => "mu2",
            DifferenceClass::HPure => "lambda1",
            DifferenceClass::Mixed => "mu",
        }
    }
}

impl fmt::Display for DifferenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DifferenceClass::FarPure => "far H class",
            DifferenceClass::PPure => "P class",
            DifferenceClass::NearPure => "near H class",
            DifferenceClass::FarMixed => "far mixed class",
            DifferenceClass::NearMixed => "near mixed class",
            DifferenceClass::HPure => "H class",
            DifferenceClass::Mixed => "mixed class",
        };
        write!(f, "{name} ({})", self.parameter())
    }
}

/// First cell whose multiplicity disagrees with the rest of its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassViolation {
    pub class: DifferenceClass,
    pub expected: u64,
    pub found: u64,
    pub cell: GroupElement,
}

impl fmt::Display for ClassViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} is not constant: {} occurs {} times, expected {}",
            self.class, self.cell, self.found, self.expected
        )
    }
}

/// Running constant-per-class check.
struct ClassTally<const K: usize> {
    classes: [DifferenceClass; K],
    values: [Option<u64>; K],
}

impl<const K: usize> ClassTally<K> {
    fn new(classes: [DifferenceClass; K]) -> Self {
        Self { classes, values: [None; K] }
    }

    fn observe(&mut self, slot: usize, h: usize, g: u32, count: u64) -> Result<(), ClassViolation> {
        match self.values[slot] {
            None => {
                self.values[slot] = Some(count);
                Ok(())
            }
            Some(v) if v == count => Ok(()),
            Some(v) => Err(ClassViolation {
                class: self.classes[slot],
                expected: v,
                found: count,
                cell: GroupElement { h, g },
            }),
        }
    }

    fn value(&self, slot: usize) -> i64 {
        self.values[slot].unwrap_or(0) as i64
    }
}

/// Partial classification with a diagnostic on failure. Needs `N >= 3`.
pub fn classify_pdpds_detailed(set: &GroupSubset) -> Result<PdpdsParams, ClassViolation> {
    assert!(set.order_h >= 3, "partial classification needs |H| >= 3");
    let diff = DifferenceMultiset::of(set);
    let n = set.order_h;
    let mut tally = ClassTally::new([
        DifferenceClass::FarPure,
        DifferenceClass::PPure,
        DifferenceClass::NearPure,
        DifferenceClass::FarMixed,
        DifferenceClass::NearMixed,
    ]);
    for (h, g, c) in diff.cells() {
        let near = h == 1 || h == n - 1;
        let slot = match (h, g) {
            (0, _) => 1,
            (_, 0) if near => 2,
            (_, 0) => 0,
            _ if near => 4,
            _ => 3,
        };
        tally.observe(slot, h, g, c)?;
    }
    Ok(PdpdsParams {
        n: n as i64,
        m: set.p as i64,
        k: set.len() as i64,
        lambda1: tally.value(0),
        lambda2: tally.value(1),
        lambda3: tally.value(2),
        mu1: tally.value(3),
        mu2: tally.value(4),
    })
}

/// Partial classification; `None` when some class is not constant or
/// `N < 3`.
pub fn classify_pdpds(set: &GroupSubset) -> Option<PdpdsParams> {
    if set.order_h < 3 {
        return None;
    }
    classify_pdpds_detailed(set).ok()
}

pub fn classify_dpds_detailed(set: &GroupSubset) -> Result<DpdsParams, ClassViolation> {
    let diff = DifferenceMultiset::of(set);
    let mut tally = ClassTally::new([DifferenceClass::HPure, DifferenceClass::PPure, DifferenceClass::Mixed]);
    for (h, g, c) in diff.cells() {
        let slot = match (h, g) {
            (_, 0) => 0,
            (0, _) => 1,
            _ => 2,
        };
        tally.observe(slot, h, g, c)?;
    }
    Ok(DpdsParams {
        n: set.order_h as i64,
        m: set.p as i64,
        k: set.len() as i64,
        lambda1: tally.value(0),
        lambda2: tally.value(1),
        mu: tally.value(2),
    })
}

pub fn classify_dpds(set: &GroupSubset) -> Option<DpdsParams> {
    classify_dpds_detailed(set).ok()
}

/// Parameters that an NPS of type `(γ1, γ2)` with `n` nonzero symbols and
/// two leading zeros forces on its `R_a`; `None` unless
/// `p | n - γ2 - 2` and `p | n - γ1 - 1`.
pub fn expected_pdpds_params(n: i64, p: u32, gamma1: i64, gamma2: i64) -> Option<PdpdsParams> {
    let p = p as i64;
    let far = n - gamma2 - 2;
    let near = n - gamma1 - 1;
    if far.rem_euclid(p) != 0 || near.rem_euclid(p) != 0 {
        return None;
    }
    let mu1 = far / p;
    let mu2 = near / p;
    Some(PdpdsParams { n: n + 2, m: p, k: n, lambda1: mu1 + gamma2, lambda2: 0, lambda3: mu2 + gamma1, mu1, mu2 })
}

/// Parameters that a type-`γ` NPS with one leading zero forces on `R_a` as a
/// DPDS; `None` unless `p | n - γ - 1`.
pub fn expected_dpds_params(n: i64, p: u32, gamma: i64) -> Option<DpdsParams> {
    let p = p as i64;
    let c = n - gamma - 1;
    if c.rem_euclid(p) != 0 {
        return None;
    }
    Some(DpdsParams { n: n + 1, m: p, k: n, lambda1: c / p + gamma, lambda2: 0, mu: c / p })
}

/// Cellwise `R R^(-1)` minus the group-ring expression
/// `(k-λ1-λ2+μ1) + (λ1-μ1)H + (λ2-μ1)P + μ1 G + (λ3-λ1){h,h^-1}
/// + (μ2-μ1)({h,h^-1} × (P∖1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualGrid {
    pub order_h: usize,
    pub p: u32,
    /// Row-major, `cells[h * p + g]`.
    pub cells: Vec<i64>,
}

impl ResidualGrid {
    pub fn get(&self, h: usize, g: u32) -> i64 {
        self.cells[h * self.p as usize + g as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&c| c == 0)
    }

    /// Nonzero cells as `(h, g, residual)`.
    pub fn nonzero(&self) -> Vec<(usize, u32, i64)> {
        let p = self.p as usize;
        self.cells.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i / p, (i % p) as u32, c)).collect()
    }
}

pub fn group_ring_residual(set: &GroupSubset, params: &PdpdsParams) -> ResidualGrid {
    let n = set.order_h;
    let p = set.p as usize;
    let diff = DifferenceMultiset::of(set);
    let k = set.len() as i64;
    let PdpdsParams { lambda1: l1, lambda2: l2, lambda3: l3, mu1: m1, mu2: m2, k: pk, .. } = *params;
    let mut cells = Vec::with_capacity(n * p);
    for h in 0..n {
        for g in 0..p {
            let near = n > 1 && (h == 1 || h == n - 1);
            let mut rhs = m1;
            if h == 0 && g == 0 {
                rhs += pk - l1 - l2 + m1;
            }
            if g == 0 {
                rhs += l1 - m1;
            }
            if h == 0 {
                rhs += l2 - m1;
            }
            if near && g == 0 {
                rhs += l3 - l1;
            }
            if near && g != 0 {
                rhs += m2 - m1;
            }
            let mut lhs = diff.get(h, g as u32) as i64;
            if h == 0 && g == 0 {
                lhs += k;
            }
            cells.push(lhs - rhs);
        }
    }
    ResidualGrid { order_h: n, p: set.p, cells }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ra(p: u32, text: &str) -> GroupSubset {
        build_ra(&AlmostParySequence::parse(p, text).unwrap())
    }

    fn el(h: usize, g: u32) -> GroupElement {
        GroupElement { h, g }
    }

    /// Brute-force multiplicity of one difference, independent of the grid.
    fn count_difference(set: &GroupSubset, dh: usize, dg: u32) -> u64 {
        let (n, p) = (set.order_h(), set.p());
        let mut c = 0;
        for a in set.elements() {
            for b in set.elements() {
                if a != b && (a.h + n - b.h) % n == dh && (a.g + p - b.g) % p == dg {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn build_ra_examples() {
        assert_eq!(ra(3, "Z,Z,1,1,1").elements(), &[el(2, 1), el(3, 1), el(4, 1)]);
        assert!(ra(3, "Z,Z,Z").is_empty());
        assert_eq!(ra(3, "Z,Z,2,1,0,1,2").elements(), &[el(2, 2), el(3, 1), el(4, 0), el(5, 1), el(6, 2)]);
    }

    #[test]
    fn parse_subset() {
        let s = GroupSubset::parse(5, 3, "(2,1);(3,1);(4,1)").unwrap();
        assert_eq!(s, ra(3, "Z,Z,1,1,1"));
        assert_eq!(s.to_string(), "(2,1);(3,1);(4,1)");
        assert!(GroupSubset::parse(5, 3, "").unwrap().is_empty());
        assert!(matches!(GroupSubset::parse(5, 3, "(9,0)"), Err(Error::InvalidParameter(_))));
        assert!(matches!(GroupSubset::parse(5, 3, "(1,1);(1,1)"), Err(Error::InvalidParameter(_))));
        assert!(matches!(GroupSubset::parse(5, 3, "1,1"), Err(Error::Parse(_))));
        assert!(matches!(GroupSubset::parse(5, 4, "(1,1)"), Err(Error::NotPrime(4))));
    }

    #[test]
    fn difference_grid_example() {
        let d = difference_multiset(&ra(3, "Z,Z,1,1,1"));
        let mut expected = vec![0u64; 15];
        expected[3] = 2; // (1,0)
        expected[6] = 1; // (2,0)
        expected[9] = 1; // (3,0)
        expected[12] = 2; // (4,0)
        assert_eq!(d.counts, expected);
        assert_eq!(d.total(), 6);
    }

    #[test]
    fn full_group_is_uniform() {
        let all: Vec<_> = (0..3).flat_map(|h| (0..3).map(move |g| el(h, g))).collect();
        let set = GroupSubset::new(3, 3, all).unwrap();
        let d = difference_multiset(&set);
        for h in 0..3 {
            for g in 0..3 {
                let oracle = count_difference(&set, h, g);
                assert_eq!(d.get(h, g), oracle);
                if (h, g) != (0, 0) {
                    assert_eq!(oracle, 9);
                }
            }
        }
        assert_eq!(d.get(0, 0), 0);
    }

    #[test]
    fn singleton_has_no_differences() {
        let d = difference_multiset(&GroupSubset::new(4, 5, vec![el(2, 3)]).unwrap());
        assert_eq!(d.total(), 0);
    }

    #[test]
    fn pdpds_examples() {
        let a = classify_pdpds(&ra(3, "Z,Z,1,1,1")).unwrap();
        assert_eq!(a.as_tuple(), [5, 3, 3, 1, 0, 2, 0, 0]);
        let b = classify_pdpds(&ra(3, "Z,Z,2,1,0,1,2")).unwrap();
        assert_eq!(b.as_tuple(), [7, 3, 5, 1, 0, 0, 1, 2]);
        let empty = classify_pdpds(&GroupSubset::new(6, 5, vec![]).unwrap()).unwrap();
        assert_eq!(empty.as_tuple(), [6, 5, 0, 0, 0, 0, 0, 0]);
        assert!(classify_pdpds(&GroupSubset::new(2, 3, vec![]).unwrap()).is_none());
    }

    #[test]
    fn pdpds_failure_reports_class() {
        let v = classify_pdpds_detailed(&ra(3, "Z,Z,1,0,1,1")).unwrap_err();
        assert!(v.expected != v.found);
        assert!(v.to_string().contains("not constant"));
    }

    #[test]
    fn degenerate_three_element_group() {
        let p = classify_pdpds(&GroupSubset::new(3, 3, vec![el(1, 0), el(2, 0)]).unwrap()).unwrap();
        assert!(p.far_class_empty());
        assert_eq!(p.as_tuple(), [3, 3, 2, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn dpds_examples() {
        let r = ra(3, "Z,2,2,2,0,2,1,1,2,0,2,2,2");
        let d = classify_dpds(&r).unwrap();
        assert_eq!((d.n, d.m, d.k, d.lambda1, d.lambda2, d.mu), (13, 3, 12, 5, 0, 3));
        let e = classify_dpds(&GroupSubset::new(7, 3, vec![]).unwrap()).unwrap();
        assert_eq!((e.n, e.m, e.k, e.lambda1, e.lambda2, e.mu), (7, 3, 0, 0, 0, 0));
        let v = classify_dpds_detailed(&ra(3, "Z,Z,1,1,1")).unwrap_err();
        assert_eq!(v.class, DifferenceClass::HPure);
        assert_eq!((v.expected, v.found), (2, 1));
    }

    #[test]
    fn expected_params_examples() {
        assert_eq!(expected_pdpds_params(3, 3, 2, 1).unwrap().as_tuple(), [5, 3, 3, 1, 0, 2, 0, 0]);
        assert_eq!(expected_pdpds_params(5, 3, -2, 0).unwrap().as_tuple(), [7, 3, 5, 1, 0, 0, 1, 2]);
        for g1 in -5..5 {
            assert!(expected_pdpds_params(4, 3, g1, 1).is_none());
        }
        let d = expected_dpds_params(12, 3, 2).unwrap();
        assert_eq!((d.lambda1, d.mu), (5, 3));
    }

    #[test]
    fn residual_examples() {
        let r = ra(3, "Z,Z,1,1,1");
        let params = classify_pdpds(&r).unwrap();
        assert!(group_ring_residual(&r, &params).is_zero());

        let mut bumped = params;
        bumped.lambda1 += 1;
        let res = group_ring_residual(&r, &bumped);
        for h in 0..5 {
            for g in 0..3 {
                let far_pure = g == 0 && (2..=3).contains(&h);
                assert_eq!(res.get(h, g), if far_pure { -1 } else { 0 }, "cell ({h},{g})");
            }
        }

        let r7 = ra(3, "Z,Z,2,1,0,1,2");
        assert!(group_ring_residual(&r7, &classify_pdpds(&r7).unwrap()).is_zero());
    }

    #[test]
    fn params_text() {
        let p = PdpdsParams::parse("5,3,3,2,0,2,0,0").unwrap();
        assert_eq!(p.as_tuple(), [5, 3, 3, 2, 0, 2, 0, 0]);
        assert_eq!(PdpdsParams::parse(&p.to_string()).unwrap(), p);
        assert!(PdpdsParams::parse("1,2,3").is_err());
        assert!(PdpdsParams::parse("a,2,3,4,5,6,7,8").is_err());
    }

    fn random_subset() -> impl Strategy<Value = GroupSubset> {
        (3usize..=8, prop::sample::select(vec![3u32, 5])).prop_flat_map(|(n, p)| {
            prop::collection::btree_set((0..n, 0..p), 0..=n).prop_map(move |cells| {
                let els = cells.into_iter().map(|(h, g)| GroupElement { h, g }).collect();
                GroupSubset::new(n, p, els).unwrap()
            })
        })
    }

    /// Random tuples near the classified values so both outcomes occur.
    fn nearby_params(set: &GroupSubset, jitter: [i64; 5]) -> PdpdsParams {
        let base = classify_pdpds(set).unwrap_or(PdpdsParams {
            n: set.order_h() as i64,
            m: set.p() as i64,
            k: set.len() as i64,
            lambda1: 0,
            lambda2: 0,
            lambda3: 0,
            mu1: 0,
            mu2: 0,
        });
        PdpdsParams {
            lambda1: base.lambda1 + jitter[0],
            lambda2: base.lambda2 + jitter[1],
            lambda3: base.lambda3 + jitter[2],
            mu1: base.mu1 + jitter[3],
            mu2: base.mu2 + jitter[4],
            ..base
        }
    }

    proptest! {
        #[test]
        fn grid_matches_pairwise_count(set in random_subset()) {
            let d = difference_multiset(&set);
            let k = set.len() as u64;
            prop_assert_eq!(d.total(), k * k.saturating_sub(1));
            prop_assert_eq!(d.get(0, 0), 0);
            for h in 0..set.order_h() {
                for g in 0..set.p() {
                    prop_assert_eq!(d.get(h, g), count_difference(&set, h, g));
                }
            }
        }

        #[test]
        fn classification_iff_zero_residual(
            set in random_subset(),
            jitter in prop::array::uniform5(prop::sample::select(vec![0i64, 0, 0, 1, -1])),
        ) {
            let params = nearby_params(&set, jitter);
            let residual_zero = group_ring_residual(&set, &params).is_zero();
            let mut classified = classify_pdpds(&set) == Some(params);
            if set.order_h() == 3 {
                // No far cells: λ1 and μ1 are free in the residual.
                classified = classify_pdpds(&set).is_some_and(|c| {
                    PdpdsParams { lambda1: params.lambda1, mu1: params.mu1, ..c } == params
                });
            }
            prop_assert_eq!(classified, residual_zero);
        }

        #[test]
        fn uniform_partial_is_dpds(set in random_subset()) {
            if let Some(pd) = classify_pdpds(&set) {
                if pd.lambda1 == pd.lambda3 && pd.mu1 == pd.mu2 && !pd.far_class_empty() {
                    let d = classify_dpds(&set).unwrap();
                    prop_assert_eq!((d.lambda1, d.lambda2, d.mu), (pd.lambda1, pd.lambda2, pd.mu1));
                }
            }
        }
    }
}
