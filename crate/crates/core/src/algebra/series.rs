//! Integer noncommutative polynomials in `X_1, ..., X_m`, truncated at a total
//! degree bound.
//!
//! Truncation `Z<<X>> -> Z<X>/(deg > d)` is a ring homomorphism, so every
//! product computed here agrees with the untruncated product in all degrees
//! `<= degree_bound`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::word::GroupWord;
use crate::error::{Error, Result};

/// A word `X_{j_1} ... X_{j_k}` in the noncommuting variables; the empty
/// monomial is the constant term. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Monomial(vec![narrow(index)])
    }

    pub fn new(indices: &[usize]) -> Self {
        Monomial(indices.iter().map(|&i| narrow(i)).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices().collect()
    }

    fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

fn narrow(index: usize) -> u8 {
    assert!(
        (1..=u8::MAX as usize).contains(&index),
        "variable index {index} out of range"
    );
    index as u8
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for i in &self.0 {
            write!(f, "X{i}")?;
        }
        Ok(())
    }
}

/// Sparse truncated series. No stored monomial exceeds `degree_bound` and no
/// stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    degree_bound: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(degree_bound: usize) -> Self {
        TruncatedSeries {
            degree_bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree_bound: usize) -> Self {
        Self::monomial(Monomial::one(), BigInt::one(), degree_bound)
    }

    /// `c · mono`, or zero if `mono` is above the bound.
    pub fn monomial(mono: Monomial, coefficient: BigInt, degree_bound: usize) -> Self {
        let mut s = Self::zero(degree_bound);
        s.add_term(mono, coefficient);
        s
    }

    /// `1 + X_i`, the image of a meridian generator.
    pub fn meridian(index: usize, degree_bound: usize) -> Self {
        let mut s = Self::one(degree_bound);
        s.add_term(Monomial::var(index), BigInt::one());
        s
    }

    /// `1 - X_i + X_i^2 - ...`, the image of an inverse meridian.
    pub fn meridian_inverse(index: usize, degree_bound: usize) -> Self {
        let mut s = Self::zero(degree_bound);
        for k in 0..=degree_bound {
            let coeff = if k % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            s.add_term(Monomial::new(&vec![index; k]), coeff);
        }
        s
    }

    /// `(1 + X_i)^s` for any integer `s`.
    pub fn meridian_power(index: usize, s: i64, degree_bound: usize) -> Self {
        let base = if s >= 0 {
            Self::meridian(index, degree_bound)
        } else {
            Self::meridian_inverse(index, degree_bound)
        };
        base.pow(s.unsigned_abs())
    }

    /// Builds a series from `(indices, coefficient)` pairs; terms above the
    /// bound are discarded.
    pub fn from_terms<'a, I>(degree_bound: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a [usize], i64)>,
    {
        let mut s = Self::zero(degree_bound);
        for (indices, c) in terms {
            s.add_term(Monomial::new(indices), BigInt::from(c));
        }
        s
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(&self) -> BigInt {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of `mono`, zero if absent. Asking for a monomial above the
    /// degree bound is an error since the answer would not be trustworthy.
    pub fn coefficient(&self, mono: &Monomial) -> Result<BigInt> {
        if mono.degree() > self.degree_bound {
            return Err(Error::DegreeOverflow {
                degree: mono.degree(),
                bound: self.degree_bound,
            });
        }
        Ok(self.terms.get(mono).cloned().unwrap_or_default())
    }

    pub fn add_term(&mut self, mono: Monomial, coefficient: BigInt) {
        if mono.degree() > self.degree_bound || coefficient.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Drops everything above `degree_bound` (which may only shrink).
    pub fn truncate(&self, degree_bound: usize) -> Self {
        let degree_bound = degree_bound.min(self.degree_bound);
        TruncatedSeries {
            degree_bound,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= degree_bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.degree_bound);
        }
        TruncatedSeries {
            degree_bound: self.degree_bound,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u64) -> Self {
        let mut acc = Self::one(self.degree_bound);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficientwise reduction into `[0, n)`.
    pub fn reduce_mod(&self, n: u64) -> ResidueSeries {
        assert!(n >= 1, "modulus must be positive");
        let modulus = BigInt::from(n);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = c.mod_floor(&modulus);
            if !r.is_zero() {
                terms.insert(m.clone(), r);
            }
        }
        ResidueSeries {
            modulus: n,
            degree_bound: self.degree_bound,
            terms,
        }
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let bound = self.degree_bound.min(other.degree_bound);
        let mut out = self.truncate(bound);
        for (m, c) in &other.terms {
            let c = if negate_other { -c } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    fn product(&self, other: &Self) -> Self {
        let bound = self.degree_bound.min(other.degree_bound);
        let mut out = Self::zero(bound);
        // Bucket the right factor by degree so the inner loop can stop early.
        let mut by_degree: Vec<Vec<(&Monomial, &BigInt)>> = vec![Vec::new(); bound + 1];
        for (m, c) in &other.terms {
            if m.degree() <= bound {
                by_degree[m.degree()].push((m, c));
            }
        }
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > bound {
                continue;
            }
            for bucket in &by_degree[..=bound - da] {
                for (mb, cb) in bucket {
                    out.add_term(ma.concat(mb), ca * *cb);
                }
            }
        }
        out
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.combine(rhs, false)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.combine(rhs, true)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.product(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.degree_bound + 1);
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.cmp(b.0)));
        for (pos, (m, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if pos == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}

/// Image of a [`TruncatedSeries`] in `Z/n<X>`, coefficients in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSeries {
    modulus: u64,
    degree_bound: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ResidueSeries {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Magnus expansion `E(u)` truncated at `degree_bound`:
/// `α_i ↦ 1 + X_i`, `α_i^{-1} ↦ 1 - X_i + X_i^2 - ...`.
pub fn magnus_expand(word: &GroupWord, degree_bound: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(degree_bound);
    for letter in word.letters() {
        let factor =
            TruncatedSeries::meridian_power(letter.generator, letter.exponent, degree_bound);
        acc = &acc * &factor;
    }
    acc
}

pub fn series_coefficient(s: &TruncatedSeries, mono: &Monomial) -> Result<BigInt> {
    s.coefficient(mono)
}

pub fn series_mod(s: &TruncatedSeries, n: u64) -> ResidueSeries {
    s.reduce_mod(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::word::Letter;

    fn word(letters: &[(usize, i64)]) -> GroupWord {
        GroupWord::from_letters(letters.iter().map(|&(g, e)| Letter::new(g, e)))
    }

    fn series(bound: usize, terms: &[(&[usize], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(bound, terms.iter().copied())
    }

    #[test]
    fn expand_generator() {
        assert_eq!(
            magnus_expand(&word(&[(1, 1)]), 2),
            series(2, &[(&[], 1), (&[1], 1)])
        );
    }

    #[test]
    fn expand_inverse_generator() {
        assert_eq!(
            magnus_expand(&word(&[(1, -1)]), 2),
            series(2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)])
        );
    }

    #[test]
    fn expand_commutator() {
        // (1+X1)(1+X2)(1-X1+X1²)(1-X2+X2²) by hand, kept to degree 2.
        let c = word(&[(1, 1), (2, 1), (1, -1), (2, -1)]);
        assert_eq!(
            magnus_expand(&c, 2),
            series(2, &[(&[], 1), (&[1, 2], 1), (&[2, 1], -1)])
        );
    }

    #[test]
    fn coefficient_lookup() {
        let e = magnus_expand(&word(&[(1, 1)]), 2);
        assert_eq!(e.coefficient(&Monomial::var(1)).unwrap(), BigInt::from(1));
        let id = magnus_expand(&GroupWord::identity(), 2);
        assert_eq!(
            id.coefficient(&Monomial::new(&[1, 2])).unwrap(),
            BigInt::from(0)
        );
        let c = magnus_expand(&word(&[(1, 1), (2, 1), (1, -1), (2, -1)]), 2);
        assert_eq!(
            c.coefficient(&Monomial::new(&[2, 1])).unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn coefficient_above_bound_is_error() {
        let e = magnus_expand(&word(&[(1, 1)]), 2);
        assert!(matches!(
            e.coefficient(&Monomial::new(&[1, 1, 1])),
            Err(Error::DegreeOverflow {
                degree: 3,
                bound: 2
            })
        ));
    }

    #[test]
    fn reduction_mod_n() {
        let r = series(3, &[(&[], 1), (&[1, 2], 4)]).reduce_mod(2);
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(&Monomial::one()), BigInt::from(1));

        let r = series(3, &[(&[], 1), (&[1], 5)]).reduce_mod(3);
        assert_eq!(r.coefficient(&Monomial::var(1)), BigInt::from(2));

        let r = series(3, &[(&[], 1), (&[2, 1], 10)]).reduce_mod(4);
        assert_eq!(r.coefficient(&Monomial::new(&[2, 1])), BigInt::from(2));

        let r = series(3, &[(&[], 1), (&[2, 1], -7)]).reduce_mod(4);
        assert_eq!(r.coefficient(&Monomial::new(&[2, 1])), BigInt::from(1));

        assert!(series(3, &[(&[], 1), (&[1], 5)]).reduce_mod(1).is_empty());
    }

    #[test]
    fn meridian_power_inverts() {
        let p = TruncatedSeries::meridian_power(2, 3, 4);
        let q = TruncatedSeries::meridian_power(2, -3, 4);
        assert_eq!(&p * &q, TruncatedSeries::one(4));
        assert_eq!(
            TruncatedSeries::meridian_power(2, 0, 4),
            TruncatedSeries::one(4)
        );
    }

    #[test]
    fn truncation_drops_high_terms() {
        let s = series(1, &[(&[], 1), (&[1], 2), (&[1, 2], 3)]);
        assert_eq!(s.len(), 2);
        let prod = &TruncatedSeries::meridian(1, 1) * &TruncatedSeries::meridian(2, 1);
        assert_eq!(prod, series(1, &[(&[], 1), (&[1], 1), (&[2], 1)]));
    }

    #[test]
    fn mixed_bounds_use_the_smaller() {
        let a = TruncatedSeries::meridian(1, 3);
        let b = TruncatedSeries::meridian(1, 1);
        assert_eq!((&a * &b).degree_bound(), 1);
        assert_eq!((&a + &b).degree_bound(), 1);
    }

    #[test]
    fn display_is_readable() {
        let c = magnus_expand(&word(&[(1, 1), (2, 1), (1, -1), (2, -1)]), 2);
        assert_eq!(c.to_string(), "1 + X1X2 - X2X1");
        assert_eq!(TruncatedSeries::zero(2).to_string(), "0 + O(3)");
    }
}
