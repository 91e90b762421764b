//! Capped-precision p-adic numbers with honest precision propagation.
//!
//! A [`Padic`] is either an exact zero or a value `p^val * unit` known modulo
//! `p^prec` (absolute precision). Every arithmetic operation computes the
//! worst-case absolute precision of its result from the precisions and
//! valuations of its operands, so a result never claims digits that depend on
//! unknown input digits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default absolute precision (in p-adic digits).
pub const DEFAULT_PRECISION: i64 = 64;

/// p-adic valuation: an integer or `+∞` for an exact zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    ExactZero,
    /// `p^val * unit + O(p^prec)`; `unit == 0` encodes an indeterminate zero
    /// (then `val == prec`).
    Approx { val: i64, unit: BigInt, prec: i64 },
}

/// Element of `Q_p` at capped absolute precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    p: u64,
    kind: Kind,
}

pub(crate) fn p_pow(p: u64, k: i64) -> BigInt {
    debug_assert!(k >= 0);
    Pow::pow(BigInt::from(p), k as u64)
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl Padic {
    /// Build `num * p^v + O(p^prec)`, normalizing the representation.
    fn make(p: u64, num: BigInt, mut v: i64, prec: i64) -> Padic {
        if prec <= v {
            return Padic::zero(p, prec);
        }
        let m = p_pow(p, prec - v);
        let mut num = num.mod_floor(&m);
        if num.is_zero() {
            return Padic::zero(p, prec);
        }
        let pb = BigInt::from(p);
        loop {
            let (q, r) = num.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            num = q;
            v += 1;
        }
        Padic { p, kind: Kind::Approx { val: v, unit: num, prec } }
    }

    /// The exact zero.
    pub fn exact_zero(p: u64) -> Padic {
        Padic { p, kind: Kind::ExactZero }
    }

    /// An indeterminate zero: some element of `p^prec Z_p`.
    pub fn zero(p: u64, prec: i64) -> Padic {
        Padic { p, kind: Kind::Approx { val: prec, unit: BigInt::zero(), prec } }
    }

    pub fn one(p: u64, prec: i64) -> Padic {
        Padic::from_int(p, 1, prec)
    }

    /// An integer at absolute precision `prec`. The integer `0` is exact.
    pub fn from_int(p: u64, n: impl Into<BigInt>, prec: i64) -> Padic {
        let n = n.into();
        if n.is_zero() {
            return Padic::exact_zero(p);
        }
        Padic::make(p, n, 0, prec)
    }

    /// `p^val * unit + O(p^prec)` with arbitrary integer `unit`.
    pub fn from_parts(p: u64, unit: BigInt, val: i64, prec: i64) -> Padic {
        Padic::make(p, unit, val, prec)
    }

    /// The rational `num/den` at absolute precision `prec`.
    pub fn from_ratio(p: u64, num: impl Into<BigInt>, den: impl Into<BigInt>, prec: i64) -> Result<Padic> {
        let num = num.into();
        let mut den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Padic::exact_zero(p));
        }
        let pb = BigInt::from(p);
        let mut k = 0i64;
        while (&den % &pb).is_zero() {
            den /= &pb;
            k += 1;
        }
        let m = p_pow(p, (prec + k).max(1));
        let inv = mod_inverse(&den, &m).expect("unit denominator");
        Ok(Padic::make(p, num * inv, -k, prec))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute precision; `None` for the exact zero.
    pub fn precision(&self) -> Option<i64> {
        match &self.kind {
            Kind::ExactZero => None,
            Kind::Approx { prec, .. } => Some(*prec),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.kind, Kind::ExactZero)
    }

    /// True when the value is zero to its full precision but not flagged exact.
    pub fn is_indeterminate(&self) -> bool {
        matches!(&self.kind, Kind::Approx { unit, .. } if unit.is_zero())
    }

    /// Either exact zero or indeterminate zero.
    pub fn is_zero_at_precision(&self) -> bool {
        self.is_exact_zero() || self.is_indeterminate()
    }

    /// The p-adic valuation. Fails for an indeterminate zero.
    pub fn valuation(&self) -> Result<Valuation> {
        match &self.kind {
            Kind::ExactZero => Ok(Valuation::Infinity),
            Kind::Approx { val, unit, prec } => {
                if unit.is_zero() {
                    Err(Error::PrecisionExhausted(format!(
                        "value is zero modulo {}^{prec}; valuation undetermined",
                        self.p
                    )))
                } else {
                    Ok(Valuation::Finite(*val))
                }
            }
        }
    }

    /// A lower bound for the valuation (`i64::MAX` for exact zero).
    pub fn val_lower_bound(&self) -> i64 {
        match &self.kind {
            Kind::ExactZero => i64::MAX,
            Kind::Approx { val, .. } => *val,
        }
    }

    /// Relative precision (number of known unit digits).
    pub fn relative_precision(&self) -> Option<i64> {
        match &self.kind {
            Kind::ExactZero => None,
            Kind::Approx { val, prec, .. } => Some(prec - val),
        }
    }

    pub fn unit_part(&self) -> Option<&BigInt> {
        match &self.kind {
            Kind::Approx { unit, .. } if !unit.is_zero() => Some(unit),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.val_lower_bound() >= 0
    }

    /// Representative in `[0, p^prec)` of an integral element.
    pub fn representative(&self) -> Result<BigInt> {
        match &self.kind {
            Kind::ExactZero => Ok(BigInt::zero()),
            Kind::Approx { val, unit, prec } => {
                if unit.is_zero() {
                    if *prec >= 0 {
                        return Ok(BigInt::zero());
                    }
                    return Err(Error::PrecisionExhausted("negative precision".into()));
                }
                if *val < 0 {
                    return Err(Error::InvalidInput(format!("element of valuation {val} is not integral")));
                }
                Ok(unit * p_pow(self.p, *val))
            }
        }
    }

    /// Residue modulo `p` of an integral element.
    pub fn residue(&self) -> Result<u64> {
        match &self.kind {
            Kind::ExactZero => Ok(0),
            Kind::Approx { val, unit, prec } => {
                if unit.is_zero() {
                    return if *prec >= 1 {
                        Ok(0)
                    } else {
                        Err(Error::PrecisionExhausted("residue needs one digit".into()))
                    };
                }
                match val.cmp(&0) {
                    std::cmp::Ordering::Less => {
                        Err(Error::InvalidInput("residue of a non-integral element".into()))
                    }
                    std::cmp::Ordering::Greater => Ok(0),
                    std::cmp::Ordering::Equal => Ok((unit % BigInt::from(self.p)).to_u64().unwrap()),
                }
            }
        }
    }

    /// Lower the absolute precision to at most `prec`.
    pub fn truncate(&self, prec: i64) -> Padic {
        match &self.kind {
            Kind::ExactZero => Padic::zero(self.p, prec),
            Kind::Approx { val, unit, prec: old } => {
                if prec >= *old {
                    self.clone()
                } else {
                    Padic::make(self.p, unit.clone(), *val, prec)
                }
            }
        }
    }

    /// Treat the stored representative as exact and extend it to `prec` digits.
    pub fn lift_to(&self, prec: i64) -> Padic {
        match &self.kind {
            Kind::ExactZero => self.clone(),
            Kind::Approx { val, unit, prec: old } => {
                if unit.is_zero() {
                    Padic::exact_zero(self.p)
                } else if prec <= *old {
                    self.clone()
                } else {
                    Padic::make(self.p, unit.clone(), *val, prec)
                }
            }
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Padic> {
        match &self.kind {
            Kind::ExactZero => Err(Error::InvalidInput("division by exact zero".into())),
            Kind::Approx { val, unit, prec } => {
                if unit.is_zero() {
                    return Err(Error::PrecisionExhausted("division by an indeterminate zero".into()));
                }
                let r = prec - val;
                let m = p_pow(self.p, r);
                let inv = mod_inverse(unit, &m).expect("unit is coprime to p");
                Ok(Padic::make(self.p, inv, -val, prec - 2 * val))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Padic) -> Result<Padic> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiply by `p^k` (exact shift, precision shifts with it).
    pub fn shift(&self, k: i64) -> Padic {
        match &self.kind {
            Kind::ExactZero => self.clone(),
            Kind::Approx { val, unit, prec } => Padic {
                p: self.p,
                kind: Kind::Approx { val: val + k, unit: unit.clone(), prec: prec + k },
            },
        }
    }

    /// `self^n`; `n = 0` gives 1 at the precision of `self`.
    pub fn pow(&self, mut n: u64) -> Padic {
        if n == 0 {
            return Padic::one(self.p, self.precision().unwrap_or(DEFAULT_PRECISION).max(1));
        }
        let mut base = self.clone();
        let mut acc: Option<Padic> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc.unwrap()
    }

    /// Multiply by an exact integer.
    pub fn mul_int(&self, n: impl Into<BigInt>) -> Padic {
        let n: BigInt = n.into();
        if n.is_zero() {
            return Padic::exact_zero(self.p);
        }
        match &self.kind {
            Kind::ExactZero => self.clone(),
            Kind::Approx { val, unit, prec } => {
                let pb = BigInt::from(self.p);
                let mut m = n;
                let mut k = 0;
                loop {
                    let (q, r) = m.div_rem(&pb);
                    if !r.is_zero() {
                        break;
                    }
                    m = q;
                    k += 1;
                }
                Padic::make(self.p, unit * m, val + k, prec + k)
            }
        }
    }

    /// True when `self - other` is zero modulo `p^n` with certainty.
    pub fn eq_mod(&self, other: &Padic, n: i64) -> bool {
        let d = self - other;
        d.is_exact_zero() || d.val_lower_bound() >= n
    }

    /// Equality of the values modulo the smaller of the two precisions.
    pub fn eq_at_shared_precision(&self, other: &Padic) -> bool {
        let d = self - other;
        d.is_zero_at_precision()
    }

    fn add_impl(&self, rhs: &Padic) -> Padic {
        assert_eq!(self.p, rhs.p, "mixing different primes");
        match (&self.kind, &rhs.kind) {
            (Kind::ExactZero, _) => rhs.clone(),
            (_, Kind::ExactZero) => self.clone(),
            (Kind::Approx { val: va, unit: ua, prec: pa }, Kind::Approx { val: vb, unit: ub, prec: pb }) => {
                let prec = (*pa).min(*pb);
                let v0 = (*va).min(*vb).min(prec);
                let mut num = BigInt::zero();
                if !ua.is_zero() && *va < prec {
                    num += ua * p_pow(self.p, va - v0);
                }
                if !ub.is_zero() && *vb < prec {
                    num += ub * p_pow(self.p, vb - v0);
                }
                Padic::make(self.p, num, v0, prec)
            }
        }
    }

    fn mul_impl(&self, rhs: &Padic) -> Padic {
        assert_eq!(self.p, rhs.p, "mixing different primes");
        match (&self.kind, &rhs.kind) {
            (Kind::ExactZero, _) | (_, Kind::ExactZero) => Padic::exact_zero(self.p),
            (Kind::Approx { val: va, unit: ua, prec: pa }, Kind::Approx { val: vb, unit: ub, prec: pb }) => {
                let prec = (pa + vb).min(pb + va);
                Padic::make(self.p, ua * ub, va + vb, prec)
            }
        }
    }

    fn neg_impl(&self) -> Padic {
        match &self.kind {
            Kind::ExactZero => self.clone(),
            Kind::Approx { val, unit, prec } => Padic::make(self.p, -unit, *val, *prec),
        }
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::ExactZero => write!(f, "0"),
            Kind::Approx { val, unit, prec } => {
                if unit.is_zero() {
                    write!(f, "O({}^{})", self.p, prec)
                } else if *val >= 0 {
                    write!(f, "{} + O({}^{})", unit * p_pow(self.p, *val), self.p, prec)
                } else {
                    write!(f, "{}*{}^{} + O({}^{})", unit, self.p, val, self.p, prec)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Padic> for &Padic {
            type Output = Padic;
            fn $method(self, rhs: &Padic) -> Padic {
                self.$imp(rhs)
            }
        }
        impl $tr<Padic> for Padic {
            type Output = Padic;
            fn $method(self, rhs: Padic) -> Padic {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&Padic> for Padic {
            type Output = Padic;
            fn $method(self, rhs: &Padic) -> Padic {
                (&self).$imp(rhs)
            }
        }
        impl $tr<Padic> for &Padic {
            type Output = Padic;
            fn $method(self, rhs: Padic) -> Padic {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Mul, mul, mul_impl);

impl Sub<&Padic> for &Padic {
    type Output = Padic;
    fn sub(self, rhs: &Padic) -> Padic {
        self.add_impl(&rhs.neg_impl())
    }
}
impl Sub<Padic> for Padic {
    type Output = Padic;
    fn sub(self, rhs: Padic) -> Padic {
        &self - &rhs
    }
}
impl Sub<&Padic> for Padic {
    type Output = Padic;
    fn sub(self, rhs: &Padic) -> Padic {
        &self - rhs
    }
}
impl Sub<Padic> for &Padic {
    type Output = Padic;
    fn sub(self, rhs: Padic) -> Padic {
        self - &rhs
    }
}

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        self.neg_impl()
    }
}
impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        self.neg_impl()
    }
}

/// Sign-aware helper used by callers that print balanced representatives.
pub(crate) fn balanced(rep: &BigInt, modulus: &BigInt) -> BigInt {
    let r = rep.mod_floor(modulus);
    if (&r * 2u32) > *modulus {
        r - modulus
    } else if r.is_negative() {
        r + modulus
    } else {
        r
    }
}
