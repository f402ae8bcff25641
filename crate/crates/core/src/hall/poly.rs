//! Polynomials in q fitted through point counts at several primes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PRIME_ALLOWLIST;

/// Univariate polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HallPolynomial {
    coeffs: Vec<BigRational>,
}

impl HallPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HallPolynomial { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![BigRational::from_integer(c.into())])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_int(&self, q: i64) -> BigRational {
        self.eval(&BigRational::from_integer(q.into()))
    }

    /// The value at q = 1.
    pub fn euler_value(&self) -> BigRational {
        self.eval_int(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && *c >= BigRational::zero())
    }

    /// Newton interpolation through the given (x, y) samples.
    pub fn interpolate(points: &[(i64, BigRational)]) -> Self {
        let n = points.len();
        let xs: Vec<BigRational> = points.iter().map(|(x, _)| BigRational::from_integer((*x).into())).collect();
        let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // Expand the Newton form into monomial coefficients.
        let mut coeffs = vec![BigRational::zero(); n.max(1)];
        let mut basis = vec![BigRational::one()];
        for (k, c) in dd.iter().enumerate() {
            for (i, b) in basis.iter().enumerate() {
                coeffs[i] += c * b;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * &xs[k];
            }
            basis = next;
        }
        Self::new(coeffs)
    }

    /// Fit a polynomial of degree at most `degree_budget` through counts
    /// sampled at successive allowlisted primes.
    ///
    /// Sampling continues until the fit through all samples so far agrees
    /// with the fit through all but the last one, and there are at least
    /// `degree_budget + 2` samples.
    pub fn fit<F>(degree_budget: usize, mut count: F) -> Result<Self>
    where
        F: FnMut(u32) -> Result<BigRational>,
    {
        let mut points = Vec::new();
        let mut previous: Option<HallPolynomial> = None;
        for &p in PRIME_ALLOWLIST.iter() {
            points.push((i64::from(p), count(p)?));
            let fit = Self::interpolate(&points);
            if points.len() >= degree_budget + 2 && previous.as_ref() == Some(&fit) {
                return Ok(fit);
            }
            previous = Some(fit);
        }
        Err(Error::NoStabilization(PRIME_ALLOWLIST.len()))
    }
}

impl fmt::Display for HallPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_polynomials() {
        let target = |q: i64| q * q * q - 2 * q + 7;
        let pts: Vec<(i64, BigRational)> = [2, 3, 5, 7].iter().map(|&x| (x, rat(target(x)))).collect();
        let p = HallPolynomial::interpolate(&pts);
        assert_eq!(p.coeffs(), &[rat(7), rat(-2), rat(0), rat(1)]);
        assert_eq!(p.to_string(), "q^3 - 2q + 7");
    }

    #[test]
    fn fit_stops_after_budget() {
        let mut calls = 0;
        let p = HallPolynomial::fit(1, |q| {
            calls += 1;
            Ok(rat(i64::from(q) + 1))
        })
        .unwrap();
        assert_eq!(p.euler_value(), rat(2));
        assert_eq!(calls, 3);
    }

    #[test]
    fn fit_reports_failure() {
        let err = HallPolynomial::fit(0, |q| Ok(rat(1i64 << q))).unwrap_err();
        assert_eq!(err, Error::NoStabilization(11));
    }

    #[test]
    fn zero_polynomial() {
        let p = HallPolynomial::interpolate(&[(2, rat(0)), (3, rat(0))]);
        assert_eq!(p.degree(), None);
        assert_eq!(p.to_string(), "0");
    }
}
