use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use super::unramified::{UElem, UnramifiedRing};
use crate::error::{Error, Result};
use crate::padic::{charpoly, Fq, Padic, PadicPolynomial, Valuation, DEFAULT_PRECISION};

/// Element `sum_i c_i(y) pi^i` (`i < e`) of a [`LocalField`].
pub type FieldElem = Vec<UElem>;

const NEWTON_LIMIT: usize = 96;

/// Stops an iteration once its error no longer shrinks past `threshold`.
pub(crate) struct Stall {
    threshold: i64,
    prev: i64,
}

impl Stall {
    pub(crate) fn new(threshold: i64) -> Self {
        Stall { threshold, prev: i64::MIN }
    }

    pub(crate) fn done(&mut self, lb: i64) -> bool {
        let stuck = lb <= self.prev && lb >= self.threshold;
        self.prev = self.prev.max(lb);
        stuck
    }
}

/// Finite extension of `Q_p` presented as an Eisenstein extension of degree
/// `e` of the unramified ring of degree `f`.
#[derive(Clone, Debug)]
pub struct LocalField {
    p: u64,
    f: usize,
    e: usize,
    prec: i64,
    unram: Arc<UnramifiedRing>,
    /// `h_0, ..., h_e` with `h_e = 1`.
    eis: Vec<UElem>,
    w: OnceLock<(FieldElem, FieldElem)>,
    primitive: OnceLock<std::result::Result<PadicPolynomial, Error>>,
}

fn small_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Build `U_f[x]/(eisenstein)` at [`DEFAULT_PRECISION`]. Each coefficient is
/// given by its integer coordinates in `y` (a single integer when `f = 1`).
pub fn make_field(p: u64, f: usize, eisenstein: &[Vec<BigInt>]) -> Result<LocalField> {
    LocalField::new(p, f, eisenstein, DEFAULT_PRECISION)
}

impl LocalField {
    pub fn new(p: u64, f: usize, eisenstein: &[Vec<BigInt>], prec: i64) -> Result<Self> {
        if !small_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        if f == 0 {
            return Err(Error::InvalidInput("residue degree must be positive".into()));
        }
        if prec < 4 {
            return Err(Error::InvalidInput("precision must be at least 4".into()));
        }
        if eisenstein.iter().any(|c| c.len() > f) {
            return Err(Error::InvalidInput(format!(
                "coefficients must have at most {f} coordinates in y"
            )));
        }
        let unram = Arc::new(UnramifiedRing::new(p, f, prec));
        let coeffs: Vec<UElem> = eisenstein.iter().map(|c| unram.from_ints(c)).collect();
        Self::from_unit_poly(unram, coeffs, prec)
    }

    /// The field `Q_p` itself.
    pub fn qp(p: u64, prec: i64) -> Result<Self> {
        Self::new(p, 1, &[vec![BigInt::from(-(p as i64))], vec![BigInt::from(1)]], prec)
    }

    /// Build from an Eisenstein polynomial already over `unram`.
    pub(crate) fn from_unit_poly(unram: Arc<UnramifiedRing>, mut coeffs: Vec<UElem>, prec: i64) -> Result<Self> {
        while coeffs.last().is_some_and(|c| unram.is_exact_zero(c)) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::NotEisenstein("degree must be at least 1".into()));
        }
        let e = coeffs.len() - 1;
        let lead = &coeffs[e];
        if unram.valuation(lead)? != Valuation::Finite(0) {
            return Err(Error::NotEisenstein("leading coefficient is not a unit".into()));
        }
        let li = unram.inv(lead)?;
        let coeffs: Vec<UElem> = coeffs.iter().map(|c| unram.mul(c, &li)).collect();
        match unram.valuation(&coeffs[0]) {
            Ok(Valuation::Finite(1)) => {}
            _ => return Err(Error::NotEisenstein("constant term must have valuation exactly 1".into())),
        }
        for (i, c) in coeffs.iter().enumerate().take(e).skip(1) {
            if unram.val_lower_bound(c) < 1 {
                return Err(Error::NotEisenstein(format!("coefficient of x^{i} is a unit")));
            }
        }
        Ok(LocalField {
            p: unram.p(),
            f: unram.degree(),
            e,
            prec,
            unram,
            eis: coeffs,
            w: OnceLock::new(),
            primitive: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn degree(&self) -> usize {
        self.e * self.f
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn unramified(&self) -> &Arc<UnramifiedRing> {
        &self.unram
    }

    pub fn is_qp(&self) -> bool {
        self.degree() == 1
    }

    /// Eisenstein coefficients `h_0..h_e`.
    pub fn eisenstein(&self) -> &[UElem] {
        &self.eis
    }

    /// Eisenstein coefficients as balanced integer coordinates modulo `p^prec`.
    pub fn eisenstein_ints(&self) -> Vec<Vec<BigInt>> {
        let m = crate::padic::p_pow(self.p, self.prec);
        self.eis
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| crate::padic::balanced(&x.representative().unwrap_or_default(), &m))
                    .collect()
            })
            .collect()
    }

    /// Identifying data: two fields with equal presentations are the same
    /// object for Galois-level purposes.
    pub fn presentation(&self) -> (u64, usize, Vec<Vec<BigInt>>) {
        let cmp = (self.prec / 2).max(2);
        let m = crate::padic::p_pow(self.p, cmp);
        let coeffs = self
            .eis
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| x.truncate(cmp).representative().unwrap_or_default() % &m)
                    .collect()
            })
            .collect();
        (self.p, self.f, coeffs)
    }

    pub fn same_presentation(&self, other: &LocalField) -> bool {
        self.presentation() == other.presentation()
    }

    // ----- elements -----

    pub fn zero(&self) -> FieldElem {
        vec![self.unram.zero(); self.e]
    }

    pub fn from_u(&self, u: UElem) -> FieldElem {
        let mut v = self.zero();
        v[0] = u;
        v
    }

    pub fn one(&self) -> FieldElem {
        self.from_u(self.unram.one())
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> FieldElem {
        self.from_u(self.unram.from_int(n))
    }

    pub fn from_padic(&self, c: Padic) -> FieldElem {
        self.from_u(self.unram.from_padic(c))
    }

    pub fn pi(&self) -> FieldElem {
        if self.e == 1 {
            return self.from_u(self.unram.neg(&self.eis[0]));
        }
        let mut v = self.zero();
        v[1] = self.unram.one();
        v
    }

    pub fn y(&self) -> FieldElem {
        self.from_u(self.unram.y())
    }

    /// The primitive element `pi + y`.
    pub fn theta(&self) -> FieldElem {
        self.add(&self.pi(), &self.y())
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.iter().zip(b).map(|(x, y)| self.unram.add(x, y)).collect()
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.iter().zip(b).map(|(x, y)| self.unram.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        a.iter().map(|x| self.unram.neg(x)).collect()
    }

    pub fn scale_u(&self, a: &FieldElem, u: &UElem) -> FieldElem {
        a.iter().map(|x| self.unram.mul(x, u)).collect()
    }

    pub fn scale_padic(&self, a: &FieldElem, c: &Padic) -> FieldElem {
        a.iter().map(|x| self.unram.scale(x, c)).collect()
    }

    /// Multiply by `p^k`.
    pub fn shift_p(&self, a: &FieldElem, k: i64) -> FieldElem {
        a.iter().map(|x| self.unram.shift(x, k)).collect()
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let e = self.e;
        let u = &self.unram;
        let mut prod = vec![u.zero(); 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if u.is_exact_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if u.is_exact_zero(y) {
                    continue;
                }
                prod[i + j] = u.add(&prod[i + j], &u.mul(x, y));
            }
        }
        for k in (e..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], u.zero());
            if u.is_exact_zero(&c) {
                continue;
            }
            for j in 0..e {
                let idx = k - e + j;
                prod[idx] = u.sub(&prod[idx], &u.mul(&c, &self.eis[j]));
            }
        }
        prod.truncate(e);
        prod
    }

    pub fn pow(&self, a: &FieldElem, mut n: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_exact_zero(&self, a: &FieldElem) -> bool {
        a.iter().all(|c| self.unram.is_exact_zero(c))
    }

    pub fn is_zero_at_precision(&self, a: &FieldElem) -> bool {
        a.iter().all(|c| self.unram.is_zero_at_precision(c))
    }

    /// Lower bound for the valuation in units of `v(pi) = 1`.
    pub fn val_lower_bound(&self, a: &FieldElem) -> i64 {
        a.iter()
            .enumerate()
            .filter(|(_, c)| !self.unram.is_exact_zero(c))
            .map(|(i, c)| self.unram.val_lower_bound(c).saturating_mul(self.e as i64).saturating_add(i as i64))
            .min()
            .unwrap_or(i64::MAX)
    }

    /// Valuation normalized by `v(pi) = 1`.
    pub fn valuation(&self, a: &FieldElem) -> Result<Valuation> {
        let mut known: Option<i64> = None;
        let mut unknown: Option<i64> = None;
        for (i, c) in a.iter().enumerate() {
            match self.unram.valuation(c) {
                Ok(Valuation::Infinity) => {}
                Ok(Valuation::Finite(v)) => {
                    let w = v * self.e as i64 + i as i64;
                    known = Some(known.map_or(w, |k| k.min(w)));
                }
                Err(_) => {
                    let w = self.unram.val_lower_bound(c) * self.e as i64 + i as i64;
                    unknown = Some(unknown.map_or(w, |k| k.min(w)));
                }
            }
        }
        match (known, unknown) {
            (None, None) => Ok(Valuation::Infinity),
            (Some(k), None) => Ok(Valuation::Finite(k)),
            (Some(k), Some(u)) if k < u => Ok(Valuation::Finite(k)),
            _ => Err(Error::PrecisionExhausted("field element vanishes at working precision".into())),
        }
    }

    pub fn lift_to(&self, a: &FieldElem, prec: i64) -> FieldElem {
        a.iter().map(|c| self.unram.lift_to(c, prec)).collect()
    }

    /// Residue of an integral element.
    pub fn residue(&self, a: &FieldElem) -> Result<Fq> {
        if self.val_lower_bound(a) < 0 {
            self.valuation(a)?;
            return Err(Error::InvalidInput("residue of a non-integral element".into()));
        }
        self.unram.residue(&a[0])
    }

    /// `w = pi^e / p` and its inverse.
    fn w_pair(&self) -> &(FieldElem, FieldElem) {
        self.w.get_or_init(|| {
            let w: FieldElem = self.eis[..self.e]
                .iter()
                .map(|h| self.unram.shift(&self.unram.neg(h), -1))
                .collect();
            let wi = self.inv_unit(&w).expect("w is a unit");
            (w, wi)
        })
    }

    /// Residue of `pi^e / p`.
    pub fn residue_w(&self) -> Fq {
        self.residue(&self.w_pair().0).expect("w is integral")
    }

    /// Residue of `a / pi^m`, assuming `v(a) >= m`.
    pub fn lead_residue(&self, a: &FieldElem, m: i64) -> Result<Fq> {
        let k = self.unram.residue_field();
        if self.val_lower_bound(a) > m {
            return Ok(k.zero());
        }
        let e = self.e as i64;
        let q = m.div_euclid(e);
        let l = m.rem_euclid(e) as usize;
        let c = self.unram.shift(&a[l], -q);
        let r = self.unram.residue(&c)?;
        let rw = self.residue_w();
        let factor = if q >= 0 {
            k.pow(&k.inv(&rw).unwrap(), q as u64)
        } else {
            k.pow(&rw, (-q) as u64)
        };
        Ok(k.mul(&r, &factor))
    }

    /// Multiply by `pi^m`, `m` of any sign.
    pub fn mul_pi_pow(&self, a: &FieldElem, m: i64) -> FieldElem {
        if m == 0 {
            return a.clone();
        }
        let e = self.e as i64;
        let (w, wi) = self.w_pair();
        if m > 0 {
            let q = m / e;
            let r = m % e;
            let mut out = self.mul(a, &self.pow(w, q as u64));
            out = self.shift_p(&out, q);
            for _ in 0..r {
                out = self.mul(&out, &self.pi());
            }
            out
        } else {
            let n = -m;
            let q = (n + e - 1) / e;
            let r = q * e - n;
            let mut out = self.mul(a, &self.pow(wi, q as u64));
            for _ in 0..r {
                out = self.mul(&out, &self.pi());
            }
            self.shift_p(&out, -q)
        }
    }

    fn inv_unit(&self, u: &FieldElem) -> Result<FieldElem> {
        let k = self.unram.residue_field();
        let r = self.residue(u)?;
        let ri = k
            .inv(&r)
            .ok_or_else(|| Error::PrecisionExhausted("unit residue vanished".into()))?;
        let two = self.from_int(2);
        let one = self.one();
        let mut x = self.from_u(self.unram.lift_residue(&ri));
        let mut stall = Stall::new(self.e as i64 * self.prec / 2);
        for _ in 0..NEWTON_LIMIT {
            let ux = self.mul(u, &x);
            let err = self.sub(&ux, &one);
            if self.is_zero_at_precision(&err) || stall.done(self.val_lower_bound(&err)) {
                return Ok(x);
            }
            x = self.lift_to(&self.mul(&x, &self.sub(&two, &ux)), self.prec);
        }
        Err(Error::PrecisionExhausted("inversion did not converge".into()))
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        let v = match self.valuation(a)? {
            Valuation::Finite(v) => v,
            Valuation::Infinity => return Err(Error::InvalidInput("inverse of zero".into())),
        };
        let u = self.mul_pi_pow(a, -v);
        let ui = self.inv_unit(&u)?;
        Ok(self.mul_pi_pow(&ui, -v))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Coordinates over `Q_p` in the basis `y^j pi^i` (index `i*f + j`).
    pub fn coordinates(&self, a: &FieldElem) -> Vec<Padic> {
        a.iter().flat_map(|c| c.iter().cloned()).collect()
    }

    /// Deterministic sort key: integral coordinates modulo `p^digits`.
    pub fn key(&self, a: &FieldElem, digits: i64) -> Vec<BigInt> {
        let m = crate::padic::p_pow(self.p, digits);
        self.coordinates(a)
            .iter()
            .map(|c| {
                let t = c.truncate(digits);
                match t.representative() {
                    Ok(r) => r % &m,
                    Err(_) => BigInt::from(-1),
                }
            })
            .collect()
    }

    /// Minimal polynomial over `Q_p` of [`Self::theta`] (its characteristic
    /// polynomial, which has degree `[E:Q_p]`).
    pub fn primitive_poly(&self) -> Result<PadicPolynomial> {
        self.primitive
            .get_or_init(|| {
                let n = self.degree();
                let theta = self.theta();
                let mut cols = Vec::with_capacity(n);
                for i in 0..self.e {
                    for j in 0..self.f {
                        let mut b = self.zero();
                        b[i][j] = Padic::one(self.p, self.prec);
                        cols.push(self.coordinates(&self.mul(&theta, &b)));
                    }
                }
                let m: Vec<Vec<Padic>> = (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect();
                let cp = charpoly(&m, &Padic::one(self.p, self.prec));
                PadicPolynomial::new(self.p, cp)
            })
            .clone()
    }

    /// Evaluate a polynomial over `Q_p` at an element.
    pub fn eval_qp_poly(&self, f: &PadicPolynomial, x: &FieldElem) -> FieldElem {
        f.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), &self.from_padic(c.clone())))
    }

    /// Evaluate a polynomial over this field.
    pub fn poly_eval(&self, poly: &[FieldElem], x: &FieldElem) -> FieldElem {
        poly.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }
}

impl fmt::Display for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_qp() {
            return write!(f, "Q_{}", self.p);
        }
        write!(f, "Q_{}(f={}, e={}; ", self.p, self.f, self.e)?;
        let ints = self.eisenstein_ints();
        let terms: Vec<String> = ints
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| c.iter().any(|x| *x != BigInt::from(0)))
            .map(|(i, c)| {
                let coeff = if self.f == 1 {
                    c[0].to_string()
                } else {
                    let parts: Vec<String> = c
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| **x != BigInt::from(0))
                        .map(|(j, x)| match j {
                            0 => x.to_string(),
                            1 => format!("{x}*y"),
                            _ => format!("{x}*y^{j}"),
                        })
                        .collect();
                    format!("({})", parts.join(" + "))
                };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}*x"),
                    _ => format!("{coeff}*x^{i}"),
                }
            })
            .collect();
        write!(f, "{})", terms.join(" + "))
    }
}
