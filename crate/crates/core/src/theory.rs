//! Closed-form necessary conditions, counting identities and nonexistence
//! bounds for nearly perfect almost p-ary sequences.

use std::fmt;

use serde::Serialize;

use crate::arith::{distinct_prime_factors, floor_div, isqrt};
use crate::diffset::{GroupSubset, PdpdsParams};

/// DPDS counting identity `(N-1)(λ1 + μ(p-1)) = n² - n` with `N = n + s`.
pub fn dpds_counting_identity(period: i64, p: u32, n: i64, lambda1: i64, mu: i64) -> bool {
    let p = p as i128;
    let (period, n, lambda1, mu) = (period as i128, n as i128, lambda1 as i128, mu as i128);
    (period - 1) * (lambda1 + mu * (p - 1)) == n * n - n
}

/// Row sums below the diagonal of the difference table of a sequence with
/// `s` consecutive zeros: `n - i = λ1 + μ(p-1)` for every `i = 1..s`, which
/// forces `s <= 1`. For `s = 0` the condition reads `n = λ1 + μ(p-1)`.
pub fn consecutive_constraint(s: i64, n: i64, lambda1: i64, mu: i64, p: u32) -> bool {
    let row = lambda1 as i128 + mu as i128 * (p as i128 - 1);
    match s {
        0 => n as i128 == row,
        1 => n as i128 - 1 == row,
        _ => false,
    }
}

/// PDPDS counting identity
/// `(n-1)(λ1 + (p-1)μ1) + 2(λ3 + (p-1)μ2) = n² - n`, where `n = k` is the
/// number of nonzero symbols (and `|H| = n + 2`).
pub fn pdpds_counting_identity(params: &PdpdsParams, p: u32) -> bool {
    let p = p as i128;
    let n = params.k as i128;
    let lhs = (n - 1) * (params.lambda1 as i128 + (p - 1) * params.mu1 as i128)
        + 2 * (params.lambda3 as i128 + (p - 1) * params.mu2 as i128);
    lhs == n * n - n
}

/// `s_j` = number of elements of a subset with `j` in the `P` component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondComponentCounts {
    pub s_counts: Vec<i64>,
}

impl SecondComponentCounts {
    pub fn of(set: &GroupSubset) -> Self {
        let mut s_counts = vec![0i64; set.p() as usize];
        for e in set.elements() {
            s_counts[e.g as usize] += 1;
        }
        Self { s_counts }
    }

    pub fn total(&self) -> i64 {
        self.s_counts.iter().sum()
    }

    pub fn sum_of_squares(&self) -> i64 {
        self.s_counts.iter().map(|s| s * s).sum()
    }

    /// `Σ_j s_j s_{j-i}` with indices mod `p`.
    pub fn shifted_product(&self, i: usize) -> i64 {
        let p = self.s_counts.len();
        (0..p).map(|j| self.s_counts[j] * self.s_counts[(j + p - i % p) % p]).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(lhs: i64, rhs: i64) -> Self {
        Self { lhs, rhs, holds: lhs == rhs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftedChecks {
    pub i: usize,
    /// `Σ s_j s_{j-i}` against its closed form.
    pub cross: IdentityCheck,
    /// `(Σ s_j s_{j-i})(p-1) + Σ s_j² = n²`.
    pub total: IdentityCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondComponentReport {
    /// `Σ s_j²` against its closed form.
    pub squares: IdentityCheck,
    pub shifted: Vec<ShiftedChecks>,
}

impl SecondComponentReport {
    pub fn all_hold(&self) -> bool {
        self.squares.holds && self.shifted.iter().all(|s| s.cross.holds && s.total.holds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inapplicable;

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("p does not divide both n-γ2-2 and n-γ1-1")
    }
}

impl std::error::Error for Inapplicable {}

/// Quadratic identities on the `s_j` counts of the subset attached to an NPS
/// of type `(γ1, γ2)`, for every `i = 1..=ceil((p-1)/2)`.
pub fn second_component_identities(
    counts: &SecondComponentCounts,
    n: i64,
    p: u32,
    gamma1: i64,
    gamma2: i64,
) -> Result<SecondComponentReport, Inapplicable> {
    let pi = p as i64;
    let far = n - gamma2 - 2;
    let near = n - gamma1 - 1;
    if far.rem_euclid(pi) != 0 || near.rem_euclid(pi) != 0 {
        return Err(Inapplicable);
    }
    let (k1, k2) = (far / pi, near / pi);
    let sum_sq = counts.sum_of_squares();
    let squares = IdentityCheck::new(sum_sq, (k1 + gamma2) * (n - 1) + (k2 + gamma1) * 2 + n);
    let cross_rhs = k1 * (n - 1) + k2 * 2;
    let shifted = (1..=(p as usize - 1).div_ceil(2))
        .map(|i| {
            let cross = counts.shifted_product(i);
            ShiftedChecks {
                i,
                cross: IdentityCheck::new(cross, cross_rhs),
                total: IdentityCheck::new(cross * (pi - 1) + sum_sq, n * n),
            }
        })
        .collect();
    Ok(SecondComponentReport { squares, shifted })
}

/// Bounds `(min{s,p,n}, n-1+min{n,s})` on the number of distinct out-of-phase
/// coefficients of a sequence with `s >= 1` consecutive zeros.
pub fn ell_bounds(n: usize, s: usize, p: u32) -> (usize, usize) {
    let lower = s.min(p as usize).min(n);
    let upper = n - 1 + n.min(s);
    (lower, upper)
}

/// Whether `v` is a nonnegative integer combination of the distinct primes
/// dividing `m` (necessary for `v` m-th roots of unity to sum to zero).
pub fn lam_leung_feasible(m: u64, v: u64) -> bool {
    let primes = distinct_prime_factors(m);
    let v = v as usize;
    let mut reachable = vec![false; v + 1];
    reachable[0] = true;
    for total in 1..=v {
        reachable[total] = primes.iter().any(|&q| (q as usize) <= total && reachable[total - q as usize]);
    }
    reachable[v]
}

/// Upper bound `B` on `γ2` below which no NPS of type `(γ1, γ2)` with two
/// consecutive zeros exists.
///
/// With `A = n - γ2 - 2 = p k1` and `C = n - γ1 - 1 = p k2` the radicand
/// `p²k1² - 4pk1 + 8pk2` equals `D = A² - 4A + 8C`, so `p` drops out. `None`
/// when `D < 0`: then the quadratic in `γ2 + 2` has no real roots and the
/// bound never applies.
///
/// `B = floor((-A - 4 + sqrt(D)) / 2)` is evaluated as
/// `floor((-A - 4 + isqrt(D)) / 2)`. Write `x = -A - 4 + isqrt(D)` and
/// `sqrt(D) = isqrt(D) + f` with `0 <= f < 1`. If `x = 2m` then
/// `m <= (x + f)/2 < m + 1/2`; if `x = 2m + 1` then
/// `m + 1/2 <= (x + f)/2 < m + 1`. Either way both floors are `m`.
pub fn gamma2_upper_bound(n: i64, gamma1: i64, gamma2: i64) -> Option<i64> {
    let a = n as i128 - gamma2 as i128 - 2;
    let c = n as i128 - gamma1 as i128 - 1;
    bound_from_a_c(a, c)
}

pub(crate) fn bound_from_a_c(a: i128, c: i128) -> Option<i64> {
    let d = a * a - 4 * a + 8 * c;
    if d < 0 {
        return None;
    }
    let root = isqrt(d as u128) as i128;
    i64::try_from(floor_div(-a - 4 + root, 2)).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictStatus {
    DivisibilityFail,
    BoundFail,
    Corollary4Fail,
    Undecided,
}

impl VerdictStatus {
    pub fn excludes(self) -> bool {
        self != VerdictStatus::Undecided
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::DivisibilityFail => "divisibility-fail",
            VerdictStatus::BoundFail => "bound-fail",
            VerdictStatus::Corollary4Fail => "gamma2-below-minus-3",
            VerdictStatus::Undecided => "undecided",
        })
    }
}

/// Outcome of one nonexistence condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    /// `None` when the condition's hypotheses are not met.
    pub excludes: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonexistenceVerdict {
    pub status: VerdictStatus,
    pub bound: Option<i64>,
    pub checks: Vec<ConditionCheck>,
    pub details: String,
}

/// Applies, in order: the divisibility conditions, the `γ2 <= B` bound and
/// the `γ2 <= -3` exclusion. The status names the first condition that
/// excludes the type; every condition is still evaluated and listed.
///
/// The bound and the `γ2 <= -3` exclusion are stated for odd `p` and
/// nonnegative `k1, k2`, so they are reported as inapplicable for `p = 2` or
/// when `n - γ2 - 2` or `n - γ1 - 1` is negative. The bound is still evaluated
/// when divisibility fails so that every excluding condition is listed.
pub fn nonexistence_verdict(n: i64, p: u32, gamma1: i64, gamma2: i64) -> NonexistenceVerdict {
    let pi = p as i128;
    let a = n as i128 - gamma2 as i128 - 2;
    let c = n as i128 - gamma1 as i128 - 1;
    let div_a = a.rem_euclid(pi) == 0;
    let div_c = c.rem_euclid(pi) == 0;
    let bound = bound_from_a_c(a, c);
    let odd = p % 2 == 1;
    let naturals = a >= 0 && c >= 0;
    let bound_applies = odd && naturals;

    let mut checks = vec![
        ConditionCheck {
            name: "p | n-gamma2-2",
            excludes: Some(!div_a),
            detail: format!("n-gamma2-2 = {a}, {a} mod {p} = {}", a.rem_euclid(pi)),
        },
        ConditionCheck {
            name: "p | n-gamma1-1",
            excludes: Some(!div_c),
            detail: format!("n-gamma1-1 = {c}, {c} mod {p} = {}", c.rem_euclid(pi)),
        },
    ];
    let bound_excludes = bound.map(|b| gamma2 <= b);
    checks.push(ConditionCheck {
        name: "gamma2 <= B",
        excludes: if bound_applies { Some(bound_excludes.unwrap_or(false)) } else { None },
        detail: match bound {
            Some(b) => format!("B = {b}, D = {}", a * a - 4 * a + 8 * c),
            None => format!("D = {} < 0, no bound", a * a - 4 * a + 8 * c),
        },
    });
    let cor4_applies = odd && naturals;
    checks.push(ConditionCheck {
        name: "gamma2 <= -3",
        excludes: if cor4_applies { Some(gamma2 <= -3) } else { None },
        detail: format!("gamma2 = {gamma2}"),
    });

    let status = if !(div_a && div_c) {
        VerdictStatus::DivisibilityFail
    } else if bound_applies && bound_excludes == Some(true) {
        VerdictStatus::BoundFail
    } else if cor4_applies && gamma2 <= -3 {
        VerdictStatus::Corollary4Fail
    } else {
        VerdictStatus::Undecided
    };
    let failing: Vec<&str> = checks.iter().filter(|c| c.excludes == Some(true)).map(|c| c.name).collect();
    let details = if failing.is_empty() {
        "no condition excludes this type".to_string()
    } else {
        format!("excluded by: {}", failing.join(", "))
    };
    NonexistenceVerdict { status, bound, checks, details }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub gamma1: i64,
    pub gamma2: i64,
    #[serde(rename = "B")]
    pub bound: Option<i64>,
    pub not_exist: bool,
    /// Present when a prime was supplied: whether `p` divides both
    /// `n-γ2-2` and `n-γ1-1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisible: Option<bool>,
}

impl BoundRow {
    pub fn verdict(&self) -> &'static str {
        if self.not_exist {
            "not exist"
        } else {
            "undecided"
        }
    }
}

/// One row per `(γ1, γ2)` pair, sorted lexicographically. `B` is computed
/// from `A` and `C` without any divisibility filter; `not_exist` is
/// `γ2 <= B`.
pub fn generate_bound_table(n: i64, gamma1s: &[i64], gamma2s: &[i64], p: Option<u32>) -> Vec<BoundRow> {
    let mut rows: Vec<BoundRow> = gamma1s
        .iter()
        .flat_map(|&g1| gamma2s.iter().map(move |&g2| (g1, g2)))
        .map(|(gamma1, gamma2)| {
            let bound = gamma2_upper_bound(n, gamma1, gamma2);
            let divisible = p.map(|p| {
                let p = p as i64;
                (n - gamma2 - 2).rem_euclid(p) == 0 && (n - gamma1 - 1).rem_euclid(p) == 0
            });
            BoundRow { gamma1, gamma2, bound, not_exist: bound.is_some_and(|b| gamma2 <= b), divisible }
        })
        .collect();
    rows.sort_by_key(|r| (r.gamma1, r.gamma2));
    rows.dedup_by_key(|r| (r.gamma1, r.gamma2));
    rows
}

/// CSV with header `gamma1,gamma2,B,verdict`; an undefined bound is empty.
pub fn bound_table_csv(rows: &[BoundRow]) -> String {
    let mut out = String::from("gamma1,gamma2,B,verdict\n");
    for r in rows {
        let b = r.bound.map(|b| b.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", r.gamma1, r.gamma2, b, r.verdict()));
    }
    out
}
