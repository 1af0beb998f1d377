//! Exact integer and rational arithmetic: factorials, harmonic numbers and
//! the (extended) multinomial coefficient used by every series coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok(factorial_u(n as u64))
}

pub(crate) fn factorial_u(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `H(n) = 1 + 1/2 + ... + 1/n`, with `H(0) = 0`.
pub fn harmonic(n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok(harmonic_u(n as u64))
}

pub(crate) fn harmonic_u(n: u64) -> Rational {
    // Sum over a common denominator n! would be wasteful; accumulate
    // numerator/denominator and reduce once.
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for i in 1..=n {
        let i = BigInt::from(i);
        num = num * &i + &den;
        den *= i;
    }
    Rational::new(num, den)
}

/// `H(hi) - H(lo)` for `hi >= lo >= 0`, summing only the tail.
pub(crate) fn harmonic_diff(hi: u64, lo: u64) -> Rational {
    debug_assert!(hi >= lo);
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for i in lo + 1..=hi {
        let i = BigInt::from(i);
        num = num * &i + &den;
        den *= i;
    }
    Rational::new(num, den)
}

/// Multinomial coefficient `(k_1 + ... + k_m)! / (k_1! ... k_m!)`.
pub fn comb(ks: &[i64]) -> Result<BigInt> {
    if let Some(&k) = ks.iter().find(|&&k| k < 0) {
        return Err(Error::NegativeArgument(k));
    }
    Ok(comb_nonneg(ks.iter().map(|&k| k as u64)))
}

/// Multinomial built as a product of binomials, which keeps every
/// intermediate value an integer.
pub(crate) fn comb_nonneg<I: IntoIterator<Item = u64>>(ks: I) -> BigInt {
    let mut total: u64 = 0;
    let mut acc = BigInt::one();
    for k in ks {
        for i in 1..=k {
            total += 1;
            acc = acc * total / i;
        }
    }
    acc
}

/// Extended multinomial with exactly one negative slot `j`:
///
/// `(-1)^(k_j + 1) * (sum k)! * (-k_j - 1)! / prod_{i != j} k_i!`
pub fn comb_extended(ks: &[i64], j: usize) -> Result<Rational> {
    let kj = *ks.get(j).ok_or_else(|| {
        Error::ExtendedComb(format!("slot {j} out of range for {} entries", ks.len()))
    })?;
    if kj >= 0 {
        return Err(Error::ExtendedComb(format!(
            "entry at slot {j} must be negative, got {kj}"
        )));
    }
    if let Some((i, &k)) = ks.iter().enumerate().find(|&(i, &k)| i != j && k < 0) {
        return Err(Error::ExtendedComb(format!(
            "entry at slot {i} must be nonnegative, got {k}"
        )));
    }
    let sum: i64 = ks.iter().sum();
    if sum < 0 {
        return Err(Error::ExtendedComb(format!(
            "entries must have nonnegative sum, got {sum}"
        )));
    }
    Ok(comb_extended_unchecked(ks, j))
}

pub(crate) fn comb_extended_unchecked(ks: &[i64], j: usize) -> Rational {
    let kj = ks[j];
    let sum: i64 = ks.iter().sum();
    let mut num = factorial_u(sum as u64) * factorial_u((-kj - 1) as u64);
    // (-1)^(k_j + 1): positive exactly when k_j is odd.
    if kj % 2 == 0 {
        num = -num;
    }
    let den = ks
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .fold(BigInt::one(), |acc, (_, &k)| acc * factorial_u(k as u64));
    Rational::new(num, den)
}

pub(crate) fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Renders `n/d` (or `n` when integral), the wire format for coefficients.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(factorial(5).unwrap(), BigInt::from(120));
        assert_eq!(factorial(10).unwrap(), BigInt::from(3_628_800));
        assert!(factorial(-1).is_err());
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0).unwrap(), q(0, 1));
        assert_eq!(harmonic(1).unwrap(), q(1, 1));
        assert_eq!(harmonic(3).unwrap(), q(11, 6));
        assert!(harmonic(-3).is_err());
        assert_eq!(harmonic_diff(5, 1), q(77, 60));
    }

    #[test]
    fn comb_values() {
        assert_eq!(comb(&[0, 0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(comb(&[1, 1, 1, 1, 1]).unwrap(), BigInt::from(120));
        assert_eq!(comb(&[2, 3]).unwrap(), BigInt::from(10));
        assert_eq!(comb(&[2, 2, 2, 2, 2]).unwrap(), BigInt::from(113_400));
        assert!(matches!(comb(&[1, -1]), Err(Error::NegativeArgument(-1))));
    }

    #[test]
    fn comb_extended_values() {
        assert_eq!(comb_extended(&[-2, 1, 0, 1], 0).unwrap(), q(-1, 1));
        assert_eq!(comb_extended(&[-1, 1, 0], 0).unwrap(), q(1, 1));
        assert_eq!(comb_extended(&[-2, 1, 2], 0).unwrap(), q(-1, 2));
    }

    #[test]
    fn comb_extended_rejects_each_precondition() {
        let e = comb_extended(&[1, 1], 0).unwrap_err().to_string();
        assert!(e.contains("must be negative"), "{e}");
        let e = comb_extended(&[-1, -1, 3], 0).unwrap_err().to_string();
        assert!(e.contains("slot 1 must be nonnegative"), "{e}");
        let e = comb_extended(&[-3, 1], 0).unwrap_err().to_string();
        assert!(e.contains("nonnegative sum"), "{e}");
        assert!(comb_extended(&[-1], 4).is_err());
    }

    #[test]
    fn rational_wire_format() {
        assert_eq!(format_rational(&q(645_061_600, 3)), "645061600/3");
        assert_eq!(format_rational(&q(-4, 2)), "-2");
        assert_eq!(parse_rational("6/4"), Some(q(3, 2)));
        assert_eq!(parse_rational("-7"), Some(q(-7, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }

    /// Coefficients of (x_1 + ... + x_m)^n by repeated expansion.
    fn expand_power(m: usize, n: usize) -> HashMap<Vec<i64>, BigInt> {
        let mut poly: HashMap<Vec<i64>, BigInt> = HashMap::new();
        poly.insert(vec![0; m], BigInt::one());
        for _ in 0..n {
            let mut next: HashMap<Vec<i64>, BigInt> = HashMap::new();
            for (mono, c) in &poly {
                for i in 0..m {
                    let mut e = mono.clone();
                    e[i] += 1;
                    *next.entry(e).or_insert_with(BigInt::zero) += c;
                }
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn comb_matches_multinomial_expansion() {
        for m in 1..=4 {
            for n in 0..=8 {
                for (mono, c) in expand_power(m, n) {
                    assert_eq!(comb(&mono).unwrap(), c, "{mono:?}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn comb_is_symmetric(mut ks in proptest::collection::vec(0i64..6, 1..5), seed in 0usize..24) {
            let before = comb(&ks).unwrap();
            let len = ks.len();
            ks.rotate_left(seed % len);
            if len > 1 { ks.swap(0, len - 1); }
            prop_assert_eq!(before, comb(&ks).unwrap());
        }

        #[test]
        fn harmonic_step(n in 0i64..200) {
            let step = harmonic(n + 1).unwrap() - harmonic(n).unwrap();
            prop_assert_eq!(step, q(1, n + 1));
        }

        #[test]
        fn extended_comb_is_reduced(rest in proptest::collection::vec(0i64..5, 1..4), neg in 1i64..4) {
            let mut ks = vec![-neg];
            ks.extend(rest);
            prop_assume!(ks.iter().sum::<i64>() >= 0);
            let v = comb_extended(&ks, 0).unwrap();
            prop_assert!(v.denom() > &BigInt::zero());
            prop_assert!(num_integer::Integer::gcd(v.numer(), v.denom()).is_one());
        }
    }
}
