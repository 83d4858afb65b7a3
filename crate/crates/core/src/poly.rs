//! Integer Laurent polynomials in one variable q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ring::{add_i64, mul_i64};

/// Coefficients stored densely from `low` upward. Bounds are tight: the
/// first and last stored coefficients are nonzero, and the zero polynomial
/// stores nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial::default()
    }

    pub fn one() -> Self {
        LaurentPolynomial::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        LaurentPolynomial { low: e, coeffs: vec![c] }.trimmed()
    }

    /// Sum of `c q^e` over the given terms; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPolynomial::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, c: i64, e: i64) {
        if c == 0 {
            return;
        }
        if self.coeffs.is_empty() {
            self.low = e;
            self.coeffs.push(c);
            return;
        }
        if e < self.low {
            let pad = (self.low - e) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(0, pad));
            self.low = e;
        }
        let k = (e - self.low) as usize;
        if k >= self.coeffs.len() {
            self.coeffs.resize(k + 1, 0);
        }
        self.coeffs[k] = add_i64(self.coeffs[k], c);
        self.trim();
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    fn trimmed(mut self) -> Self {
        self.trim();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> i64 {
        if e < self.low {
            return 0;
        }
        self.coeffs.get((e - self.low) as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms as (coefficient, exponent), ascending in exponent.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (c, self.low + k as i64))
            .collect()
    }

    /// p(q) ↦ p(q⁻¹).
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial::from_terms(self.terms().into_iter().map(|(c, e)| (c, -e)))
    }

    /// p(q) ↦ p(q^k) for k ≠ 0.
    pub fn substitute_power(&self, k: i64) -> Self {
        LaurentPolynomial::from_terms(self.terms().into_iter().map(|(c, e)| (c, e * k)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPolynomial::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Ascending terms `c q^e` joined with ` + ` / ` - `; unit coefficients
    /// are omitted and a constant term prints as the bare number.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (c, e)) in self.terms().into_iter().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "{mag}q^{e}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (c, e) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|&c| mul_i64(c, -1)).collect() }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, &x) in self.coeffs.iter().enumerate() {
            for (b, &y) in rhs.coeffs.iter().enumerate() {
                coeffs[a + b] = add_i64(coeffs[a + b], mul_i64(x, y));
            }
        }
        LaurentPolynomial { low: self.low + rhs.low, coeffs }.trimmed()
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}
