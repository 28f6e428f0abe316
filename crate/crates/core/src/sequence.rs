//! Almost p-ary sequences and their periodic autocorrelation.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cyclotomic::{check_prime, CyclotomicInt};
use crate::error::{Error, Result};

/// One period entry: the zero-symbol or a root of unity `ζ_p^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    Root(u32),
}

impl Symbol {
    pub fn exponent(self) -> Option<u32> {
        match self {
            Symbol::Zero => None,
            Symbol::Root(b) => Some(b),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Zero => f.write_str("Z"),
            Symbol::Root(b) => write!(f, "{b}"),
        }
    }
}

/// One period of an almost p-ary sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlmostParySequence {
    p: u32,
    symbols: Vec<Symbol>,
    zero_positions: Vec<usize>,
}

impl AlmostParySequence {
    pub fn new(p: u32, symbols: Vec<Symbol>) -> Result<Self> {
        check_prime(p)?;
        if symbols.is_empty() {
            return Err(Error::InvalidParameter("a sequence needs at least one symbol".into()));
        }
        for s in &symbols {
            if let Symbol::Root(b) = *s {
                if b >= p {
                    return Err(Error::ExponentOutOfRange { exponent: b as u64, p });
                }
            }
        }
        let zero_positions =
            symbols.iter().enumerate().filter_map(|(i, s)| (*s == Symbol::Zero).then_some(i)).collect();
        Ok(Self { p, symbols, zero_positions })
    }

    /// Sequence with `zeros` leading zero-symbols followed by the given
    /// exponents.
    pub fn with_leading_zeros(p: u32, zeros: usize, exponents: &[u32]) -> Result<Self> {
        let symbols =
            std::iter::repeat_n(Symbol::Zero, zeros).chain(exponents.iter().map(|&b| Symbol::Root(b))).collect();
        Self::new(p, symbols)
    }

    /// Parses comma-separated tokens, each `Z` or a decimal exponent in
    /// `0..p`. Whitespace around tokens is ignored.
    pub fn parse(p: u32, text: &str) -> Result<Self> {
        check_prime(p)?;
        if text.trim().is_empty() {
            return Err(Error::Parse("empty sequence".into()));
        }
        let symbols = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.eq_ignore_ascii_case("z") {
                    return Ok(Symbol::Zero);
                }
                let b: u64 = tok.parse().map_err(|_| Error::Parse(format!("invalid token {tok:?}")))?;
                if b >= p as u64 {
                    return Err(Error::ExponentOutOfRange { exponent: b, p });
                }
                Ok(Symbol::Root(b as u32))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, symbols)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Period `N = n + s`.
    pub fn period(&self) -> usize {
        self.symbols.len()
    }

    /// Number of nonzero symbols `n`.
    pub fn nonzero_count(&self) -> usize {
        self.symbols.len() - self.zero_positions.len()
    }

    /// Number of zero-symbols `s`.
    pub fn zero_count(&self) -> usize {
        self.zero_positions.len()
    }

    pub fn zero_positions(&self) -> &[usize] {
        &self.zero_positions
    }

    /// Exponents `b_i` of the nonzero symbols in position order.
    pub fn exponents(&self) -> Vec<u32> {
        self.symbols.iter().filter_map(|s| s.exponent()).collect()
    }

    /// Start index of the cyclic run formed by the zero positions, if they
    /// form one. The all-zero and zero-free cases report start 0.
    pub fn zero_run_start(&self) -> Option<usize> {
        let n = self.period();
        let s = self.zero_count();
        if s == 0 || s == n {
            return Some(0);
        }
        // A cyclic run has exactly one zero whose predecessor is nonzero.
        let mut starts = self.zero_positions.iter().copied().filter(|&i| self.symbols[(i + n - 1) % n] != Symbol::Zero);
        let first = starts.next()?;
        starts.next().is_none().then_some(first)
    }

    pub fn has_consecutive_zeros(&self) -> bool {
        self.zero_run_start().is_some()
    }

    /// Cyclic left rotation by `k`: new index 0 holds old index `k`.
    pub fn rotate_left(&self, k: usize) -> Self {
        let mut symbols = self.symbols.clone();
        let len = symbols.len();
        symbols.rotate_left(k % len);
        Self::new(self.p, symbols).expect("rotation preserves validity")
    }

    /// Rotation that moves a consecutive zero run to the front.
    pub fn with_zeros_leading(&self) -> Option<Self> {
        self.zero_run_start().map(|k| self.rotate_left(k))
    }

    /// `b_i ← b_i + c (mod p)` on every nonzero symbol.
    pub fn shift_phase(&self, c: u32) -> Self {
        let symbols = self
            .symbols
            .iter()
            .map(|s| match *s {
                Symbol::Zero => Symbol::Zero,
                Symbol::Root(b) => Symbol::Root(((b as u64 + c as u64) % self.p as u64) as u32),
            })
            .collect();
        Self::new(self.p, symbols).expect("phase shift preserves validity")
    }

    /// Exact periodic autocorrelation `C(t) = Σ a_i · conj(a_{i+t})` over
    /// the full period; `t` is taken modulo the period.
    pub fn autocorrelation(&self, t: usize) -> CyclotomicInt {
        let n = self.period();
        let p = self.p as usize;
        let mut counts = vec![0i64; p];
        for (i, s) in self.symbols.iter().enumerate() {
            let (Symbol::Root(a), Symbol::Root(b)) = (*s, self.symbols[(i + t) % n]) else {
                continue;
            };
            counts[(a as usize + p - b as usize) % p] += 1;
        }
        CyclotomicInt::from_exponent_counts(self.p, counts).expect("counts bounded by the period")
    }

    /// Out-of-phase autocorrelation profile for `t = 1..N-1`.
    pub fn profile(&self) -> AutocorrelationProfile {
        AutocorrelationProfile::new((1..self.period()).map(|t| self.autocorrelation(t)).collect())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AlmostParySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The out-of-phase coefficients `C(1), …, C(N-1)` of a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutocorrelationProfile {
    /// `values[t - 1] = C(t)`.
    pub values: Vec<CyclotomicInt>,
    /// Number of distinct out-of-phase values.
    pub ell: usize,
    pub all_integral: bool,
    pub integral_values: Option<Vec<i64>>,
}

impl AutocorrelationProfile {
    pub fn new(values: Vec<CyclotomicInt>) -> Self {
        let ell = values.iter().collect::<BTreeSet<_>>().len();
        let integral_values: Option<Vec<i64>> = values.iter().map(CyclotomicInt::as_rational_integer).collect();
        Self { ell, all_integral: integral_values.is_some(), integral_values, values }
    }

    /// `C(t)` for `1 <= t < N`.
    pub fn at(&self, t: usize) -> &CyclotomicInt {
        &self.values[t - 1]
    }

    /// The period this profile belongs to.
    pub fn period(&self) -> usize {
        self.values.len() + 1
    }

    /// Sorted set of coefficient values when every coefficient is a rational
    /// integer and at most two distinct values occur, wherever they sit.
    pub fn two_valued_set(&self) -> Option<Vec<i64>> {
        let ints = self.integral_values.as_ref()?;
        let set: BTreeSet<i64> = ints.iter().copied().collect();
        (set.len() <= 2).then(|| set.into_iter().collect())
    }

    pub fn is_two_valued(&self) -> bool {
        self.two_valued_set().is_some()
    }
}

/// Nearly-perfect type `(γ1, γ2)`: `γ1` at shifts `1` and `N-1`, `γ2` at
/// every other out-of-phase shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NpsType {
    pub gamma1: i64,
    pub gamma2: i64,
    pub uniform: bool,
}

impl NpsType {
    pub fn new(gamma1: i64, gamma2: i64) -> Self {
        Self { gamma1, gamma2, uniform: gamma1 == gamma2 }
    }

    /// Positional classification of a profile. Requires period at least 3.
    /// With period 3 there are no far shifts and `γ2` is reported equal to
    /// `γ1`.
    pub fn from_profile(profile: &AutocorrelationProfile) -> Option<Self> {
        let period = profile.period();
        if period < 3 {
            return None;
        }
        let ints = profile.integral_values.as_ref()?;
        let gamma1 = ints[0];
        if ints[period - 2] != gamma1 {
            return None;
        }
        let far = &ints[1..period - 2];
        let gamma2 = far.first().copied().unwrap_or(gamma1);
        far.iter().all(|&v| v == gamma2).then(|| Self::new(gamma1, gamma2))
    }
}

impl fmt::Display for NpsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.gamma1, self.gamma2)
    }
}

pub fn classify_nps(seq: &AlmostParySequence) -> Option<NpsType> {
    NpsType::from_profile(&seq.profile())
}
