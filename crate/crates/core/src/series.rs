//! Truncated formal power series over a pointed cone in `Z^n`, graded by a
//! weight functional, with exact rational coefficients.
//!
//! A series keeps every term of weight `<= bound`; products drop pairs whose
//! weights sum past the bound. All coefficients are exact.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{self, Rational};
use crate::monoid::WeightFunctional;

pub type Monomial = Vec<i64>;

/// Which cone the support is declared to live in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeTag {
    K0,
    /// `K_0 + K_ij`, by flat slot.
    Cone(usize),
    /// `N^r` (free coordinates).
    Orthant,
    Mixed,
}

impl ConeTag {
    fn join(&self, other: &ConeTag) -> ConeTag {
        match (self, other) {
            (a, b) if a == b => a.clone(),
            (ConeTag::K0, ConeTag::Cone(s)) | (ConeTag::Cone(s), ConeTag::K0) => ConeTag::Cone(*s),
            _ => ConeTag::Mixed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedSeries {
    terms: BTreeMap<Monomial, Rational>,
    weight: WeightFunctional,
    bound: Rational64,
    tag: ConeTag,
}

/// Outcome of a coefficient test; on failure, carries the first offending
/// term in (weight, lexicographic) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVerdict {
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub exponent: Vec<i64>,
    /// `n` or `n/d`
    pub coefficient: String,
}

/// One serialized term: exponent, numerator and denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponent: Vec<i64>,
    pub numerator: String,
    pub denominator: String,
}

impl GradedSeries {
    pub fn zero(weight: WeightFunctional, bound: Rational64, tag: ConeTag) -> Self {
        GradedSeries { terms: BTreeMap::new(), weight, bound, tag }
    }

    pub fn constant(c: Rational, weight: WeightFunctional, bound: Rational64, tag: ConeTag) -> Self {
        let mut s = Self::zero(weight, bound, tag);
        let zero = vec![0; s.weight.len()];
        s.insert(zero, c);
        s
    }

    pub fn one(weight: WeightFunctional, bound: Rational64, tag: ConeTag) -> Self {
        Self::constant(Rational::one(), weight, bound, tag)
    }

    /// Builds a series from terms, summing repeats and dropping terms above
    /// the bound.
    pub fn from_terms<I>(terms: I, weight: WeightFunctional, bound: Rational64, tag: ConeTag) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut s = Self::zero(weight, bound, tag);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn weight(&self) -> &WeightFunctional {
        &self.weight
    }

    pub fn bound(&self) -> Rational64 {
        self.bound
    }

    pub fn tag(&self) -> &ConeTag {
        &self.tag
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn scaled_bound(&self) -> i64 {
        self.weight.scaled_bound(self.bound)
    }

    fn within(&self, k: &[i64]) -> bool {
        self.weight.scaled(k) <= self.scaled_bound()
    }

    fn insert(&mut self, k: Monomial, c: Rational) {
        if !c.is_zero() && self.within(&k) {
            self.terms.insert(k, c);
        }
    }

    /// Adds `c z^k`, ignoring it when `k` is above the bound.
    pub fn add_term(&mut self, k: Monomial, c: Rational) {
        if c.is_zero() || !self.within(&k) {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn coefficient(&self, k: &[i64]) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.weight.len()])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms sorted by (weight, lexicographic).
    pub fn ordered_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.weight.scaled(a.0).cmp(&self.weight.scaled(b.0)).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn truncate(&self, bound: Rational64) -> Self {
        let bound = bound.min(self.bound);
        let mut out = Self::zero(self.weight.clone(), bound, self.tag.clone());
        for (k, c) in &self.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn with_tag(mut self, tag: ConeTag) -> Self {
        self.tag = tag;
        self
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.weight != other.weight {
            return Err(Error::IncompatibleWeights);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let bound = self.bound.min(other.bound);
        let mut out = self.truncate(bound).with_tag(self.tag.join(&other.tag));
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.weight.clone(), self.bound, self.tag.clone());
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out
    }

    fn weighted_terms(&self) -> Vec<(i64, &Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (self.weight.scaled(k), k, c)).collect();
        v.sort_by_key(|t| t.0);
        v
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let bound = self.bound.min(other.bound);
        let limit = self.weight.scaled_bound(bound);
        let left = self.weighted_terms();
        let right = other.weighted_terms();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for &(wa, ka, ca) in &left {
            for &(wb, kb, cb) in &right {
                if wa + wb > limit {
                    break;
                }
                let k: Monomial = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match acc.get_mut(&k) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(k, prod);
                    }
                }
            }
        }
        let mut out = Self::zero(self.weight.clone(), bound, self.tag.join(&other.tag));
        for (k, c) in acc {
            out.insert(k, c);
        }
        Ok(out)
    }

    /// Nonconstant terms of a unit-like series, which must all have positive
    /// weight.
    fn positive_part(&self, what: &str) -> Result<Vec<(i64, &Monomial, &Rational)>> {
        let zero = vec![0; self.weight.len()];
        let rest: Vec<_> = self.weighted_terms().into_iter().filter(|t| *t.1 != zero).collect();
        if let Some(t) = rest.iter().find(|t| t.0 <= 0) {
            return Err(Error::SeriesPrecondition(format!(
                "{what}: term {:?} has nonpositive weight",
                t.1
            )));
        }
        Ok(rest)
    }

    /// `q` with `q u = a` up to the bound, by graded back-substitution.
    pub fn divide_by_unit(a: &Self, u: &Self) -> Result<Self> {
        a.check_compatible(u)?;
        let u0 = u.constant_term();
        if u0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let rest = u.positive_part("divisor")?;
        let bound = a.bound.min(u.bound);
        let limit = a.weight.scaled_bound(bound);
        let w = &a.weight;

        let mut queue: BinaryHeap<Reverse<(i64, Monomial)>> = BinaryHeap::new();
        let mut seen: HashSet<Monomial> = HashSet::new();
        for k in a.terms.keys() {
            let wk = w.scaled(k);
            if wk <= limit && seen.insert(k.clone()) {
                queue.push(Reverse((wk, k.clone())));
            }
        }
        let mut q: HashMap<Monomial, Rational> = HashMap::new();
        while let Some(Reverse((wk, k))) = queue.pop() {
            let mut val = a.coefficient(&k);
            for &(wm, m, um) in &rest {
                if wm > wk {
                    break;
                }
                let prev: Monomial = k.iter().zip(m).map(|(x, y)| x - y).collect();
                if let Some(qp) = q.get(&prev) {
                    val -= um * qp;
                }
            }
            if val.is_zero() {
                continue;
            }
            let coeff = val / &u0;
            for &(wm, m, _) in &rest {
                if wk + wm > limit {
                    break;
                }
                let next: Monomial = k.iter().zip(m).map(|(x, y)| x + y).collect();
                if seen.insert(next.clone()) {
                    queue.push(Reverse((wk + wm, next)));
                }
            }
            q.insert(k, coeff);
        }
        let mut out = Self::zero(a.weight.clone(), bound, a.tag.join(&u.tag));
        for (k, c) in q {
            out.insert(k, c);
        }
        Ok(out)
    }

    /// `sum_n s^n / n!`; `s` must have zero constant term and positive
    /// weights on its support.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::SeriesPrecondition("exp: nonzero constant term".into()));
        }
        self.positive_part("exp")?;
        let mut result = Self::one(self.weight.clone(), self.bound, self.tag.clone());
        let mut term = result.clone();
        let mut n: i64 = 1;
        loop {
            term = term.mul(self)?.scale(&Rational::new(1.into(), n.into()));
            if term.is_empty() {
                break;
            }
            result = result.add(&term)?;
            n += 1;
        }
        Ok(result)
    }

    /// `-sum_n (1 - u)^n / n`; `u` must have constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::SeriesPrecondition("log: constant term must be 1".into()));
        }
        self.positive_part("log")?;
        let one = Self::one(self.weight.clone(), self.bound, self.tag.clone());
        let v = one.sub(self)?;
        let mut result = Self::zero(self.weight.clone(), self.bound, self.tag.clone());
        let mut power = one;
        let mut n: i64 = 1;
        loop {
            power = power.mul(&v)?;
            if power.is_empty() {
                break;
            }
            result = result.sub(&power.scale(&Rational::new(1.into(), n.into())))?;
            n += 1;
        }
        Ok(result)
    }

    fn first_failing(&self, bad: impl Fn(&Rational) -> bool) -> CoefficientVerdict {
        match self.ordered_terms().into_iter().find(|(_, c)| bad(c)) {
            Some((k, c)) => CoefficientVerdict {
                passed: false,
                witness: Some(Witness { exponent: k.clone(), coefficient: exactmath::format_rational(c) }),
            },
            None => CoefficientVerdict { passed: true, witness: None },
        }
    }

    pub fn is_integral(&self) -> CoefficientVerdict {
        self.first_failing(|c| !exactmath::is_integer(c))
    }

    pub fn is_nonnegative(&self) -> CoefficientVerdict {
        self.first_failing(|c| c.is_negative())
    }

    /// Re-indexes the support through `map`, under a new grading.
    pub fn map_monomials(
        &self,
        map: impl Fn(&[i64]) -> Monomial,
        weight: WeightFunctional,
        bound: Rational64,
        tag: ConeTag,
    ) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (map(k), c.clone())), weight, bound, tag)
    }

    /// Serialized terms in deterministic order.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.ordered_terms()
            .into_iter()
            .map(|(k, c)| TermRecord {
                exponent: k.clone(),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })
            .collect()
    }

    /// Exact equality of the coefficients on all monomials of weight `<=
    /// bound`.
    pub fn agrees_up_to(&self, other: &Self, bound: Rational64) -> bool {
        self.truncate(bound).terms == other.truncate(bound).terms
    }
}

/// A truncated power series in one variable; `coeffs[n]` multiplies `t^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSeries {
    pub coeffs: Vec<Rational>,
}

impl UnivariateSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        UnivariateSeries { coeffs }
    }

    /// Number of stored coefficients (terms `t^0 .. t^(len-1)`).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        UnivariateSeries { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = vec![Rational::zero(); self.len()];
        if let Some(c) = out.first_mut() {
            *c = Rational::one();
        }
        let mut out = UnivariateSeries { coeffs: out };
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `f(t) -> t^shift f(t^stretch)`, keeping `len` terms.
    pub fn substitute_power(&self, stretch: usize, shift: usize, len: usize) -> Self {
        let mut out = vec![Rational::zero(); len];
        for (n, c) in self.coeffs.iter().enumerate() {
            let e = shift + n * stretch;
            if e < len {
                out[e] = c.clone();
            }
        }
        UnivariateSeries { coeffs: out }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(exactmath::is_integer)
    }
}
