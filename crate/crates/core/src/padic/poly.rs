use std::fmt;

use num_bigint::BigInt;

use super::number::Padic;
use crate::error::{Error, Result};

/// Polynomial over `Q_p`, coefficients stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicPolynomial {
    p: u64,
    coeffs: Vec<Padic>,
}

impl PadicPolynomial {
    /// Exact zero coefficients at the top are dropped; an indeterminate
    /// leading coefficient is rejected.
    pub fn new(p: u64, mut coeffs: Vec<Padic>) -> Result<Self> {
        while coeffs.last().is_some_and(Padic::is_exact_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        if coeffs.last().unwrap().is_indeterminate() {
            return Err(Error::PrecisionExhausted(
                "leading coefficient vanishes at working precision".into(),
            ));
        }
        if coeffs.iter().any(|c| c.p() != p) {
            return Err(Error::InvalidInput("coefficients over different primes".into()));
        }
        Ok(PadicPolynomial { p, coeffs })
    }

    pub fn from_ints(p: u64, coeffs: &[i64], prec: i64) -> Result<Self> {
        Self::new(p, coeffs.iter().map(|&c| Padic::from_int(p, c, prec)).collect())
    }

    pub fn from_bigints(p: u64, coeffs: &[BigInt], prec: i64) -> Result<Self> {
        Self::new(p, coeffs.iter().map(|c| Padic::from_int(p, c.clone(), prec)).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Padic {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Padic::exact_zero(self.p))
    }

    pub fn leading(&self) -> &Padic {
        self.coeffs.last().unwrap()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Padic) -> Padic {
        let mut acc = Padic::exact_zero(self.p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.degree() == 0 {
            return Err(Error::InvalidInput("derivative of a constant".into()));
        }
        let d = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_int(i as i64))
            .collect();
        Self::new(self.p, d)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = vec![Padic::exact_zero(self.p); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.p, out)
    }

    /// Lower every coefficient to at most `prec` digits.
    pub fn truncate(&self, prec: i64) -> Result<Self> {
        Self::new(self.p, self.coeffs.iter().map(|c| c.truncate(prec)).collect())
    }
}

impl fmt::Display for PadicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
