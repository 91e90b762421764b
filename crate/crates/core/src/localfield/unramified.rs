use std::sync::OnceLock;

use num_bigint::BigInt;

use super::field::Stall;
use crate::error::{Error, Result};
use crate::padic::{Fq, FqPoly, Padic, ResidueField, Valuation};

/// Element of the unramified ring: coefficients in `y`, lowest first.
pub type UElem = Vec<Padic>;

const NEWTON_LIMIT: usize = 96;

/// `Z_p[y]/(G)` with `G` the integer lift of [`crate::padic::smallest_irreducible`].
#[derive(Debug)]
pub struct UnramifiedRing {
    p: u64,
    f: usize,
    prec: i64,
    residue: ResidueField,
    modulus: Vec<Padic>,
    frob: OnceLock<Vec<UElem>>,
}

impl Clone for UnramifiedRing {
    fn clone(&self) -> Self {
        let frob = OnceLock::new();
        if let Some(v) = self.frob.get() {
            let _ = frob.set(v.clone());
        }
        UnramifiedRing {
            p: self.p,
            f: self.f,
            prec: self.prec,
            residue: self.residue.clone(),
            modulus: self.modulus.clone(),
            frob,
        }
    }
}

impl PartialEq for UnramifiedRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.residue == other.residue
    }
}

impl UnramifiedRing {
    pub fn new(p: u64, f: usize, prec: i64) -> Self {
        let residue = ResidueField::new(p, f);
        let modulus = residue
            .modulus()
            .iter()
            .map(|&c| Padic::from_int(p, c, prec))
            .collect();
        UnramifiedRing { p, f, prec, residue, modulus, frob: OnceLock::new() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.residue
    }

    /// Integer coefficients of the defining polynomial `G`, lowest first.
    pub fn modulus_ints(&self) -> Vec<u64> {
        self.residue.modulus().to_vec()
    }

    pub fn zero(&self) -> UElem {
        vec![Padic::exact_zero(self.p); self.f]
    }

    pub fn one(&self) -> UElem {
        self.from_padic(Padic::one(self.p, self.prec))
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> UElem {
        self.from_padic(Padic::from_int(self.p, n, self.prec))
    }

    pub fn from_padic(&self, c: Padic) -> UElem {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    pub fn from_ints(&self, coeffs: &[BigInt]) -> UElem {
        let mut v = self.zero();
        for (i, c) in coeffs.iter().enumerate() {
            v[i] = Padic::from_int(self.p, c.clone(), self.prec);
        }
        v
    }

    /// The class of `y` (zero when `f = 1`).
    pub fn y(&self) -> UElem {
        if self.f == 1 {
            return self.zero();
        }
        let mut v = self.zero();
        v[1] = Padic::one(self.p, self.prec);
        v
    }

    /// Lift of a residue by its digits.
    pub fn lift_residue(&self, a: &Fq) -> UElem {
        a.iter().map(|&c| Padic::from_int(self.p, c, self.prec)).collect()
    }

    pub fn add(&self, a: &UElem, b: &UElem) -> UElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &UElem, b: &UElem) -> UElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &UElem) -> UElem {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &UElem, c: &Padic) -> UElem {
        a.iter().map(|x| x * c).collect()
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, a: &UElem, k: i64) -> UElem {
        a.iter().map(|x| x.shift(k)).collect()
    }

    pub fn mul(&self, a: &UElem, b: &UElem) -> UElem {
        let f = self.f;
        let zero = Padic::exact_zero(self.p);
        let mut prod = vec![zero; 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_exact_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_exact_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + &(x * y);
            }
        }
        for k in (f..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], Padic::exact_zero(self.p));
            if c.is_exact_zero() {
                continue;
            }
            for j in 0..f {
                if self.modulus[j].is_exact_zero() {
                    continue;
                }
                let idx = k - f + j;
                prod[idx] = &prod[idx] - &(&c * &self.modulus[j]);
            }
        }
        prod.truncate(f);
        prod
    }

    pub fn pow(&self, a: &UElem, mut n: u64) -> UElem {
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

    pub fn is_exact_zero(&self, a: &UElem) -> bool {
        a.iter().all(Padic::is_exact_zero)
    }

    pub fn is_zero_at_precision(&self, a: &UElem) -> bool {
        a.iter().all(Padic::is_zero_at_precision)
    }

    pub fn val_lower_bound(&self, a: &UElem) -> i64 {
        a.iter().map(Padic::val_lower_bound).min().unwrap()
    }

    /// p-adic valuation: the minimum over the `y`-coordinates.
    pub fn valuation(&self, a: &UElem) -> Result<Valuation> {
        let mut known: Option<i64> = None;
        let mut unknown: Option<i64> = None;
        for c in a {
            if c.is_exact_zero() {
                continue;
            }
            if c.is_indeterminate() {
                let b = c.val_lower_bound();
                unknown = Some(unknown.map_or(b, |u| u.min(b)));
            } else {
                let v = c.val_lower_bound();
                known = Some(known.map_or(v, |k| k.min(v)));
            }
        }
        match (known, unknown) {
            (None, None) => Ok(Valuation::Infinity),
            (Some(k), None) => Ok(Valuation::Finite(k)),
            (Some(k), Some(u)) if k <= u => Ok(Valuation::Finite(k)),
            _ => Err(Error::PrecisionExhausted("unramified element vanishes at working precision".into())),
        }
    }

    pub fn residue(&self, a: &UElem) -> Result<Fq> {
        a.iter().map(Padic::residue).collect()
    }

    pub fn lift_to(&self, a: &UElem, prec: i64) -> UElem {
        a.iter().map(|c| c.lift_to(prec)).collect()
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: &UElem) -> Result<UElem> {
        let v = match self.valuation(a)? {
            Valuation::Finite(v) => v,
            Valuation::Infinity => return Err(Error::InvalidInput("inverse of zero".into())),
        };
        let u = self.shift(a, -v);
        let r = self.residue(&u)?;
        let r_inv = self.residue.inv(&r).expect("unit residue");
        let two = self.from_int(2);
        let mut x = self.lift_residue(&r_inv);
        let mut stall = Stall::new(self.prec / 2);
        for _ in 0..NEWTON_LIMIT {
            let err = self.sub(&self.mul(&u, &x), &self.one());
            if self.is_zero_at_precision(&err) || stall.done(self.val_lower_bound(&err)) {
                return Ok(self.shift(&x, -v));
            }
            x = self.lift_to(&self.mul(&x, &self.sub(&two, &self.mul(&u, &x))), self.prec);
        }
        Err(Error::PrecisionExhausted("unit inversion did not converge".into()))
    }

    /// Teichmüller lift: the unique `(q-1)`-th root of unity (or zero) with residue `a`.
    pub fn teichmuller(&self, a: &Fq) -> Result<UElem> {
        if self.residue.is_zero(a) {
            return Ok(self.zero());
        }
        let q = self.residue.order();
        let mut x = self.lift_residue(a);
        // x <- x^q converges digit by digit; Newton on X^(q-1) - 1 doubles
        let qm1 = Padic::from_int(self.p, (q - 1) as i64, self.prec);
        let mut stall = Stall::new(self.prec / 2);
        for _ in 0..NEWTON_LIMIT {
            let xq1 = self.pow(&x, q - 1);
            let err = self.sub(&xq1, &self.one());
            if self.is_zero_at_precision(&err) || stall.done(self.val_lower_bound(&err)) {
                return Ok(x);
            }
            // x - (x^(q-1) - 1) / ((q-1) x^(q-2)) = x - err * x / ((q-1) x^(q-1))
            let denom = self.scale(&xq1, &qm1);
            let step = self.mul(&self.mul(&err, &x), &self.inv(&denom)?);
            x = self.lift_to(&self.sub(&x, &step), self.prec);
        }
        Err(Error::PrecisionExhausted("Teichmüller lift did not converge".into()))
    }

    pub fn poly_eval(&self, poly: &[UElem], x: &UElem) -> UElem {
        poly.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    fn poly_derivative(&self, poly: &[UElem]) -> Vec<UElem> {
        poly.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.iter().map(|x| x.mul_int(i as i64)).collect())
            .collect()
    }

    /// Newton iteration from a simple residue root to a root in the ring.
    pub fn newton_root(&self, poly: &[UElem], start: &UElem) -> Result<UElem> {
        let d = self.poly_derivative(poly);
        let mut x = start.clone();
        let mut stall = Stall::new(self.prec / 2);
        for _ in 0..NEWTON_LIMIT {
            let fx = self.poly_eval(poly, &x);
            if self.is_zero_at_precision(&fx) || stall.done(self.val_lower_bound(&fx)) {
                return Ok(x);
            }
            let step = self.mul(&fx, &self.inv(&self.poly_eval(&d, &x))?);
            x = self.lift_to(&self.sub(&x, &step), self.prec);
        }
        Err(Error::PrecisionExhausted("Newton iteration in the unramified ring did not converge".into()))
    }

    /// Roots in this ring of a polynomial with squarefree reduction. Returns
    /// the roots and the degrees of residue factors that do not split.
    pub fn simple_roots(&self, poly: &[UElem]) -> Result<(Vec<UElem>, Vec<usize>)> {
        let k = &self.residue;
        let red: FqPoly = k.poly_trim(poly.iter().map(|c| self.residue(c)).collect::<Result<_>>()?);
        if red.len() < poly.len() {
            return Err(Error::InvalidInput("leading coefficient is not a unit".into()));
        }
        let obstructions: Vec<usize> = k.factor_degrees(&red).into_iter().filter(|&d| d > 1).collect();
        let mut roots = Vec::new();
        for (r, m) in k.roots(&red) {
            if m > 1 {
                return Err(Error::InvalidInput("residue polynomial is not squarefree".into()));
            }
            roots.push(self.newton_root(poly, &self.lift_residue(&r))?);
        }
        Ok((roots, obstructions))
    }

    /// `Frob^k(y)` for `k` in `0..f`.
    pub fn frobenius_images(&self) -> &[UElem] {
        self.frob.get_or_init(|| {
            let g: Vec<UElem> = self.modulus.iter().map(|c| self.from_padic(c.clone())).collect();
            let mut out = vec![self.y()];
            for k in 1..self.f {
                let start = self.pow(&out[k - 1], self.p);
                let r = self
                    .newton_root(&g, &start)
                    .expect("Frobenius image of y exists in the unramified ring");
                out.push(r);
            }
            out
        })
    }

    /// Apply `Frob^k`.
    pub fn frobenius(&self, a: &UElem, k: usize) -> UElem {
        let k = k % self.f;
        if k == 0 {
            return a.clone();
        }
        let img = &self.frobenius_images()[k];
        let poly: Vec<UElem> = a.iter().map(|c| self.from_padic(c.clone())).collect();
        self.poly_eval(&poly, img)
    }

    /// Substitute `y -> eta` where `eta` lies in `target`.
    pub fn map_into(&self, a: &UElem, target: &UnramifiedRing, eta: &UElem) -> UElem {
        let poly: Vec<UElem> = a.iter().map(|c| target.from_padic(c.clone())).collect();
        target.poly_eval(&poly, eta)
    }
}
