//! Exact arithmetic in the ring of integers `Z[ζ_p]` for a prime `p`.
//!
//! An element is stored as a length-`p` coefficient vector over the powers
//! `1, ζ, …, ζ^{p-1}`. Because `1 + ζ + … + ζ^{p-1} = 0`, that vector is only
//! determined up to adding a constant to every entry; the canonical
//! representative is the one whose last coefficient is zero. Since
//! `{1, ζ, …, ζ^{p-2}}` is an integral basis, two elements are equal exactly
//! when their canonical vectors coincide, so the derived `Eq`/`Hash` are the
//! ring equality.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Checks that `p` is prime.
pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicInt {
    p: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, coeffs: vec![0; p as usize] })
    }

    pub fn from_integer(p: u32, c: i64) -> Result<Self> {
        let mut z = Self::zero(p)?;
        z.coeffs[0] = c;
        Ok(z)
    }

    /// `ζ_p^b` in canonical form.
    pub fn from_root_power(p: u32, b: u32) -> Result<Self> {
        check_prime(p)?;
        if b >= p {
            return Err(Error::ExponentOutOfRange { exponent: b as u64, p });
        }
        let mut coeffs = vec![0; p as usize];
        coeffs[b as usize] = 1;
        Self::from_coeffs(p, coeffs)
    }

    /// Builds an element from an arbitrary (not necessarily canonical)
    /// coefficient vector of length `p`.
    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> Result<Self> {
        check_prime(p)?;
        if coeffs.len() != p as usize {
            return Err(Error::InvalidParameter(format!("expected {p} coefficients, got {}", coeffs.len())));
        }
        Self::canonical(p, coeffs)
    }

    /// Sum of `counts[j] · ζ^j`. Used by the autocorrelation kernel, which
    /// already works in exponent-histogram form.
    pub(crate) fn from_exponent_counts(p: u32, counts: Vec<i64>) -> Result<Self> {
        debug_assert_eq!(counts.len(), p as usize);
        Self::canonical(p, counts)
    }

    fn canonical(p: u32, mut coeffs: Vec<i64>) -> Result<Self> {
        let last = coeffs[p as usize - 1];
        if last != 0 {
            for c in coeffs.iter_mut() {
                *c = c.checked_sub(last).ok_or(Error::Overflow("canonicalization"))?;
            }
        }
        Ok(Self { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical coefficients; the last entry is always zero.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The first `p - 1` canonical coefficients, i.e. the coordinates in the
    /// integral basis `1, ζ, …, ζ^{p-2}`.
    pub fn basis_coords(&self) -> &[i64] {
        &self.coeffs[..self.p as usize - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(c)` when the element is the rational integer `c`.
    pub fn as_rational_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("add")))
            .collect::<Result<Vec<_>>>()?;
        Self::canonical(self.p, coeffs)
    }

    pub fn neg(&self) -> Result<Self> {
        let coeffs =
            self.coeffs.iter().map(|a| a.checked_neg().ok_or(Error::Overflow("neg"))).collect::<Result<Vec<_>>>()?;
        Self::canonical(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    /// Cyclic convolution of exponent vectors.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let p = self.p as usize;
        let mut out = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let term = a.checked_mul(b).ok_or(Error::Overflow("mul"))?;
                let slot = &mut out[(i + j) % p];
                *slot = slot.checked_add(term).ok_or(Error::Overflow("mul"))?;
            }
        }
        Self::canonical(self.p, out)
    }

    /// Complex conjugation: `ζ^j ↦ ζ^{-j}`.
    pub fn conj(&self) -> Result<Self> {
        let p = self.p as usize;
        let mut out = vec![0i64; p];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[(p - j) % p] = c;
        }
        Self::canonical(self.p, out)
    }

    /// Value under the embedding `ζ ↦ exp(2πi/p)`, as `(re, im)`.
    pub fn evaluate(&self) -> (f64, f64) {
        let p = self.p as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, &c)| {
            let theta = std::f64::consts::TAU * j as f64 / p;
            (re + c as f64 * theta.cos(), im + c as f64 * theta.sin())
        })
    }
}

impl fmt::Display for CyclotomicInt {
    /// Rational integers print as plain integers, everything else as the
    /// basis coordinates `[c0,…,c_{p-2}]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_rational_integer() {
            return write!(f, "{c}");
        }
        f.write_str("[")?;
        for (i, c) in self.basis_coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for CyclotomicInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_rational_integer() {
            Some(c) => serializer.serialize_i64(c),
            None => self.basis_coords().serialize(serializer),
        }
    }
}
