use std::sync::Arc;

use num_integer::Integer;

use super::field::LocalField;
use super::roots::Obstruction;
use super::unramified::{UElem, UnramifiedRing};
use crate::error::{Error, Result};

/// Unramified extension of degree `d`: the residue degree becomes `f*d`
/// and the Eisenstein polynomial is transported along `y -> eta`, where
/// `eta` is the first root of the old defining polynomial.
pub fn extend_unramified(k: &LocalField, d: usize) -> Result<LocalField> {
    let old = k.unramified();
    let new = Arc::new(UnramifiedRing::new(k.p(), old.degree() * d, k.precision()));
    let g: Vec<UElem> = old.modulus_ints().iter().map(|&c| new.from_int(c)).collect();
    let (roots, _) = new.simple_roots(&g)?;
    let eta = roots
        .first()
        .ok_or_else(|| Error::InvalidInput("defining polynomial has no root in the extension".into()))?;
    let coeffs: Vec<UElem> = k.eisenstein().iter().map(|h| old.map_into(h, &new, eta)).collect();
    LocalField::from_unit_poly(new, coeffs, k.precision())
}

/// Tame extension adjoining `P` with `P^b = t^s pi`, where `t` is the
/// Teichmüller lift of `residue` and `s a = 1 mod b`. It contains an element
/// of valuation `a/b` whose normalized `b`-th power has residue `residue`.
pub fn extend_tame(k: &LocalField, b: u64, a: i64, residue: &[u64]) -> Result<LocalField> {
    if b.is_multiple_of(k.p()) {
        return Err(Error::UnsupportedExtension(format!(
            "wildly ramified step of degree {b} over a {}-adic field",
            k.p()
        )));
    }
    let bi = b as i64;
    let ap = a.rem_euclid(bi);
    let ext = ap.extended_gcd(&bi);
    debug_assert_eq!(ext.gcd, 1);
    let s = ext.x.rem_euclid(bi) as u64;
    let u = k.unramified();
    let t = u.teichmuller(&residue.to_vec())?;
    let e = k.e();
    let mut coeffs = vec![u.zero(); (b as usize) * e + 1];
    for (i, h) in k.eisenstein().iter().enumerate() {
        let scale = u.pow(&t, s * (e - i) as u64);
        coeffs[b as usize * i] = u.mul(h, &scale);
    }
    LocalField::from_unit_poly(u.clone(), coeffs, k.precision())
}

pub fn extend(k: &LocalField, obstruction: &Obstruction) -> Result<LocalField> {
    match obstruction {
        Obstruction::Unramified { degree } => extend_unramified(k, *degree),
        Obstruction::Ramified { b, a, residue } => extend_tame(k, *b, *a, residue),
    }
}
