//! Roots of polynomials over a [`LocalField`] lying in that field.
//!
//! The search walks the Newton polygon segment by segment. A segment of
//! non-integral slope or a residual polynomial without enough roots in the
//! residue field means some roots live in a larger field; the first such
//! event is reported as an [`Obstruction`] describing the extension needed.
//! Simple residue roots are lifted by Newton iteration, clustered ones are
//! refined recursively after a translation.

use num_rational::Rational64;

use super::field::{FieldElem, LocalField, Stall};
use crate::error::{Error, Result};
use crate::padic::{hull_segments, lower_hull, Fq, FqPoly, Valuation};

const NEWTON_LIMIT: usize = 96;
const DEPTH_LIMIT: usize = 48;

/// Why some roots of a polynomial are not in the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// A residual polynomial has an irreducible factor of this degree.
    Unramified { degree: usize },
    /// Roots of valuation `a/b` (lowest terms, `b > 1`) whose normalized
    /// `b`-th power `x^b / pi^a` has residue `residue`.
    Ramified { b: u64, a: i64, residue: Fq },
}

/// All roots found in the field plus the first obstruction met, if any.
#[derive(Clone, Debug)]
pub struct RootSearch {
    pub roots: Vec<FieldElem>,
    pub obstruction: Option<Obstruction>,
}

fn trim(k: &LocalField, mut h: Vec<FieldElem>) -> Result<Vec<FieldElem>> {
    while h.last().is_some_and(|c| k.is_exact_zero(c)) {
        h.pop();
    }
    if h.last().is_some_and(|c| k.is_zero_at_precision(c)) {
        return Err(Error::PrecisionExhausted("leading coefficient vanishes at working precision".into()));
    }
    Ok(h)
}

/// `h(x + c)`.
pub fn taylor_shift(k: &LocalField, h: &[FieldElem], c: &FieldElem) -> Vec<FieldElem> {
    let mut b = h.to_vec();
    let n = b.len();
    if n < 2 {
        return b;
    }
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            b[j] = k.add(&b[j], &k.mul(c, &b[j + 1]));
        }
    }
    b
}

fn derivative(k: &LocalField, h: &[FieldElem]) -> Vec<FieldElem> {
    h.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.scale_padic(c, &crate::padic::Padic::from_int(k.p(), i as i64, k.precision() + 8)))
        .collect()
}

fn newton(k: &LocalField, h: &[FieldElem], start: FieldElem) -> Result<FieldElem> {
    let d = derivative(k, h);
    let mut x = start;
    let mut stall = Stall::new(k.e() as i64 * k.precision() / 2);
    for _ in 0..NEWTON_LIMIT {
        let hx = k.poly_eval(h, &x);
        if k.is_zero_at_precision(&hx) || stall.done(k.val_lower_bound(&hx)) {
            return Ok(x);
        }
        let step = k.div(&hx, &k.poly_eval(&d, &x))?;
        x = k.lift_to(&k.sub(&x, &step), k.precision());
    }
    Err(Error::PrecisionExhausted("Newton iteration in the field did not converge".into()))
}

/// Find the roots of `h` in `k` (all of them, or only those of positive
/// valuation when `strict`).
pub fn find_roots(k: &LocalField, h: &[FieldElem]) -> Result<RootSearch> {
    let mut out = RootSearch { roots: Vec::new(), obstruction: None };
    search(k, h.to_vec(), false, 0, &mut out, &|x| x)?;
    Ok(out)
}

fn search(
    k: &LocalField,
    h: Vec<FieldElem>,
    strict: bool,
    depth: usize,
    out: &mut RootSearch,
    back: &dyn Fn(FieldElem) -> FieldElem,
) -> Result<()> {
    if depth > DEPTH_LIMIT {
        return Err(Error::PrecisionExhausted("roots cannot be separated at working precision".into()));
    }
    let mut h = trim(k, h)?;
    if h.len() <= 1 {
        return Ok(());
    }
    while k.is_zero_at_precision(&h[0]) {
        if !k.is_exact_zero(&h[0]) {
            // a root agreeing with 0 to working precision; certified when
            // the linear coefficient dominates
            let v1 = match k.valuation(&h[1]) {
                Ok(Valuation::Finite(v)) => v,
                _ => return Err(Error::PrecisionExhausted("roots cannot be separated at working precision".into())),
            };
            if k.val_lower_bound(&h[0]) <= 2 * v1 {
                return Err(Error::PrecisionExhausted("roots cannot be separated at working precision".into()));
            }
        }
        out.roots.push(back(k.zero()));
        h.remove(0);
        if h.len() <= 1 {
            return Ok(());
        }
    }
    let mut known: Vec<(i64, Rational64)> = Vec::new();
    let mut unknown: Vec<(i64, i64)> = Vec::new();
    for (i, c) in h.iter().enumerate() {
        match k.valuation(c) {
            Ok(Valuation::Finite(v)) => known.push((i as i64, Rational64::from(v))),
            Ok(Valuation::Infinity) => {}
            Err(_) => unknown.push((i as i64, k.val_lower_bound(c))),
        }
    }
    if known.first().map(|p| p.0) != Some(0) {
        return Err(Error::PrecisionExhausted("constant coefficient vanishes at working precision".into()));
    }
    let hull = lower_hull(&known);
    for &(i, lb) in &unknown {
        if Rational64::from(lb) < crate::padic::newton_hull_height(&hull, i) {
            return Err(Error::PrecisionExhausted("polygon undetermined at working precision".into()));
        }
    }
    let mut start = 0i64;
    for (slope, len) in hull_segments(&known) {
        let i0 = start;
        start += len as i64;
        let r = -slope;
        if r < Rational64::from(0) || (strict && r == Rational64::from(0)) {
            continue;
        }
        let v0 = *hull.iter().find(|p| p.0 == i0).map(|p| &p.1).unwrap();
        debug_assert!(v0.is_integer());
        let v0 = v0.to_integer();
        let a = *r.numer();
        let b = *r.denom();
        let kres = k.unramified().residue_field();
        if b > 1 {
            // residual polynomial in u = x^b / pi^a
            let m = len as i64 / b;
            let mut rp: FqPoly = Vec::new();
            for j in 0..=m {
                let idx = (i0 + j * b) as usize;
                rp.push(k.lead_residue(&h[idx], v0 - j * a)?);
            }
            let rp = kres.poly_trim(rp);
            let obs = match kres.roots(&rp).first() {
                Some((u0, _)) => Obstruction::Ramified { b: b as u64, a, residue: u0.clone() },
                None => Obstruction::Unramified {
                    degree: kres.factor_degrees(&rp).into_iter().find(|&d| d > 1).unwrap_or(2),
                },
            };
            if out.obstruction.is_none() {
                out.obstruction = Some(obs);
            }
            continue;
        }
        // integral root valuation a: x = pi^a u with u a unit
        let mline = v0 + i0 * a;
        let g: Vec<FieldElem> = h
            .iter()
            .enumerate()
            .map(|(i, c)| k.mul_pi_pow(c, i as i64 * a - mline))
            .collect();
        let mut rp: FqPoly = Vec::new();
        for j in 0..=len {
            rp.push(k.residue(&g[i0 as usize + j])?);
        }
        let rp = kres.poly_trim(rp);
        if let Some(d) = kres.factor_degrees(&rp).into_iter().find(|&d| d > 1) {
            if out.obstruction.is_none() {
                out.obstruction = Some(Obstruction::Unramified { degree: d });
            }
        }
        for (ubar, mult) in kres.roots(&rp) {
            let lift = k.from_u(k.unramified().lift_residue(&ubar));
            if mult == 1 {
                let u = newton(k, &g, lift)?;
                out.roots.push(back(k.mul_pi_pow(&u, a)));
            } else {
                let shifted = taylor_shift(k, &g, &lift);
                let next = move |x: FieldElem| back(k.mul_pi_pow(&k.add(&lift, &x), a));
                search(k, shifted, true, depth + 1, out, &next)?;
            }
        }
    }
    Ok(())
}

/// Check that the roots are pairwise distinct at working precision and
/// return the largest valuation of a pairwise difference.
pub fn separation(k: &LocalField, roots: &[FieldElem]) -> Result<Option<i64>> {
    let mut worst: Option<i64> = None;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = k.sub(&roots[i], &roots[j]);
            match k.valuation(&d) {
                Ok(Valuation::Finite(v)) => worst = Some(worst.map_or(v, |w| w.max(v))),
                _ => {
                    return Err(Error::PrecisionExhausted(
                        "two roots coincide at working precision".into(),
                    ))
                }
            }
        }
    }
    Ok(worst)
}
