use num_rational::Rational64;

use super::number::Valuation;
use super::poly::PadicPolynomial;
use crate::error::{Error, Result};

/// Vertices of the lower convex hull of `points` (sorted by strictly
/// increasing abscissa). Collinear interior points are dropped.
pub fn lower_hull(points: &[(i64, Rational64)]) -> Vec<(i64, Rational64)> {
    let mut hull: Vec<(i64, Rational64)> = Vec::with_capacity(points.len());
    for &(x, y) in points {
        while hull.len() >= 2 {
            let (ax, ay) = hull[hull.len() - 2];
            let (bx, by) = hull[hull.len() - 1];
            // drop b when it is on or above the chord a-c
            if (by - ay) * Rational64::from(x - ax) >= (y - ay) * Rational64::from(bx - ax) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    hull
}

/// Slopes of the lower hull, left to right, with horizontal lengths.
pub fn hull_segments(points: &[(i64, Rational64)]) -> Vec<(Rational64, usize)> {
    lower_hull(points)
        .windows(2)
        .map(|w| {
            let dx = w[1].0 - w[0].0;
            ((w[1].1 - w[0].1) / Rational64::from(dx), dx as usize)
        })
        .collect()
}

/// Height of the piecewise-linear hull at abscissa `x`.
pub(crate) fn hull_height(hull: &[(i64, Rational64)], x: i64) -> Rational64 {
    for w in hull.windows(2) {
        if w[0].0 <= x && x <= w[1].0 {
            let t = Rational64::from(x - w[0].0) / Rational64::from(w[1].0 - w[0].0);
            return w[0].1 + (w[1].1 - w[0].1) * t;
        }
    }
    hull[0].1
}

/// Root valuations of `f` read off its Newton polygon, ascending, as
/// `(valuation, number of roots)`.
pub fn newton_polygon(f: &PadicPolynomial) -> Result<Vec<(Rational64, usize)>> {
    let mut known = Vec::new();
    let mut unknown = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_exact_zero() {
            continue;
        }
        match c.valuation() {
            Ok(Valuation::Finite(v)) => known.push((i as i64, Rational64::from(v))),
            Ok(Valuation::Infinity) => {}
            Err(_) => unknown.push((i as i64, c.precision().unwrap())),
        }
    }
    if f.coeff(0).is_exact_zero() {
        return Err(Error::InvalidInput("zero is a root: infinite root valuation".into()));
    }
    if known.first().map(|p| p.0) != Some(0) {
        return Err(Error::PrecisionExhausted("constant coefficient valuation undetermined".into()));
    }
    let hull = lower_hull(&known);
    for (i, n) in unknown {
        if Rational64::from(n) < hull_height(&hull, i) {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of x^{i} is zero mod p^{n} and may lie below the polygon"
            )));
        }
    }
    let mut out: Vec<(Rational64, usize)> = hull_segments(&known)
        .into_iter()
        .map(|(s, len)| (-s, len))
        .collect();
    out.reverse();
    Ok(out)
}

/// Merge two slope multisets (the polygon of a product).
pub fn minkowski_merge(a: &[(Rational64, usize)], b: &[(Rational64, usize)]) -> Vec<(Rational64, usize)> {
    let mut all: Vec<(Rational64, usize)> = a.iter().chain(b).copied().collect();
    all.sort();
    let mut out: Vec<(Rational64, usize)> = Vec::new();
    for (s, m) in all {
        match out.last_mut() {
            Some(last) if last.0 == s => last.1 += m,
            _ => out.push((s, m)),
        }
    }
    out.retain(|(_, m)| *m > 0);
    out
}
