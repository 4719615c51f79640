//! Exact probabilities and finitely supported subdistributions.
//!
//! A [`Subdist`] is the free pointed convex algebra on its key type: the
//! point is the empty distribution and `+_p` is the pointwise convex
//! combination. Zero weights are never stored, so two subdistributions are
//! equal exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Parses `"num/den"`, or a bare integer such as `"0"` or `"1"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Parses a rational and checks that it lies in `[0,1]`.
pub fn parse_prob(s: &str) -> Result<Rational> {
    let p = parse_rational(s)?;
    check_prob(&p)?;
    Ok(p)
}

pub fn is_prob(p: &Rational) -> bool {
    !p.is_negative() && *p <= Rational::one()
}

pub fn check_prob(p: &Rational) -> Result<()> {
    if is_prob(p) {
        Ok(())
    } else {
        Err(Error::ProbabilityRange(p.to_string()))
    }
}

pub fn check_open_prob(p: &Rational) -> Result<()> {
    if p.is_positive() && *p < Rational::one() {
        Ok(())
    } else {
        Err(Error::OpenProbabilityRange(p.to_string()))
    }
}

/// Approximate decimal rendering, for display only.
pub fn to_f64(p: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    p.to_f64().unwrap_or(f64::NAN)
}

/// A finitely supported subdistribution over `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subdist<K: Ord> {
    weights: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Subdist<K> {
    fn default() -> Self {
        Subdist {
            weights: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Subdist<K> {
    /// The null subdistribution.
    pub fn null() -> Self {
        Self::default()
    }

    pub fn dirac(k: K) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(k, Rational::one());
        Subdist { weights }
    }

    /// Builds a subdistribution from (key, weight) pairs. Repeated keys are
    /// merged and zero weights dropped.
    pub fn from_weights<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, Rational)>,
    {
        let mut weights: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, w) in pairs {
            if w.is_negative() {
                return Err(Error::ProbabilityRange(w.to_string()));
            }
            if w.is_zero() {
                continue;
            }
            *weights.entry(k).or_insert_with(Rational::zero) += w;
        }
        let d = Subdist { weights };
        d.check_mass()?;
        Ok(d)
    }

    fn check_mass(&self) -> Result<()> {
        let m = self.mass();
        if m > Rational::one() {
            Err(Error::MassExceeded(m.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn weight(&self, k: &K) -> Rational {
        self.weights.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mass(&self) -> Rational {
        self.weights.values().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.weights.keys()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_null(&self) -> bool {
        self.weights.is_empty()
    }

    /// True when the subdistribution is a Dirac, i.e. a single key of weight 1.
    pub fn as_dirac(&self) -> Option<&K> {
        match self.weights.iter().next() {
            Some((k, w)) if self.weights.len() == 1 && w.is_one() => Some(k),
            _ => None,
        }
    }

    /// `self +_p other`, extended to `p` in the closed interval.
    pub fn convex_sum(&self, other: &Self, p: &Rational) -> Result<Self> {
        check_prob(p)?;
        let q = Rational::one() - p;
        let mut weights = BTreeMap::new();
        for (k, w) in &self.weights {
            let v = p * w;
            if !v.is_zero() {
                weights.insert(k.clone(), v);
            }
        }
        for (k, w) in &other.weights {
            let v = &q * w;
            if v.is_zero() {
                continue;
            }
            *weights.entry(k.clone()).or_insert_with(Rational::zero) += v;
        }
        Ok(Subdist { weights })
    }

    /// Multiplication by a scalar, `p·d = d +_p ⋆`.
    pub fn scale(&self, p: &Rational) -> Result<Self> {
        check_prob(p)?;
        Ok(self.scale_unchecked(p))
    }

    pub(crate) fn scale_unchecked(&self, p: &Rational) -> Self {
        if p.is_zero() {
            return Self::null();
        }
        Subdist {
            weights: self
                .weights
                .iter()
                .map(|(k, w)| (k.clone(), w * p))
                .collect(),
        }
    }

    /// `Σ p_i · d_i`, requiring `Σ p_i ≤ 1`.
    pub fn nary_sum<'a, I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a Rational, &'a Self)>,
        K: 'a,
    {
        let mut total = Rational::zero();
        let mut acc = Self::null();
        for (p, d) in terms {
            check_prob(p)?;
            total += p;
            acc.accumulate(&d.scale_unchecked(p));
        }
        if total > Rational::one() {
            return Err(Error::MassExceeded(total.to_string()));
        }
        Ok(acc)
    }

    /// Pointwise sum; fails if the result would exceed mass 1.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.accumulate(other);
        out.check_mass()?;
        Ok(out)
    }

    pub(crate) fn accumulate(&mut self, other: &Self) {
        for (k, w) in &other.weights {
            *self
                .weights
                .entry(k.clone())
                .or_insert_with(Rational::zero) += w;
        }
    }

    /// Pushforward along `f`; weights of keys with equal image are summed.
    pub fn map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Subdist<L> {
        let mut out = Subdist::<L>::null();
        for (k, w) in &self.weights {
            *out.weights.entry(f(k)).or_insert_with(Rational::zero) += w;
        }
        out
    }

    pub fn try_map<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<L, E>,
    ) -> Result<Subdist<L>, E> {
        let mut out = Subdist::<L>::null();
        for (k, w) in &self.weights {
            *out.weights.entry(f(k)?).or_insert_with(Rational::zero) += w;
        }
        Ok(out)
    }

    /// Pushforward of the product distribution `self × other` along `f`.
    /// The mass of the result is the product of the two masses.
    pub fn try_product<L, M, E>(
        &self,
        other: &Subdist<L>,
        mut f: impl FnMut(&K, &L) -> Result<M, E>,
    ) -> Result<Subdist<M>, E>
    where
        L: Ord + Clone,
        M: Ord + Clone,
    {
        let mut out = Subdist::<M>::null();
        for (k, v) in &self.weights {
            for (l, w) in &other.weights {
                *out.weights.entry(f(k, l)?).or_insert_with(Rational::zero) += v * w;
            }
        }
        Ok(out)
    }

    /// Normalises to total mass 1; the null subdistribution stays null.
    pub fn normalized(&self) -> Self {
        let m = self.mass();
        if m.is_zero() {
            return Self::null();
        }
        Subdist {
            weights: self
                .weights
                .iter()
                .map(|(k, w)| (k.clone(), w / &m))
                .collect(),
        }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Subdist<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.weights.iter().map(|(k, w)| (k, w.to_string())))
            .finish()
    }
}

impl<K: Ord + fmt::Display> fmt::Display for Subdist<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weights.is_empty() {
            return write!(f, "⋆");
        }
        write!(f, "{{")?;
        for (i, (k, w)) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {w}")?;
        }
        write!(f, "}}")
    }
}
