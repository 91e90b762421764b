//! Capped-precision p-adic arithmetic and polynomial tools.

mod hensel;
mod linalg;
mod newton;
mod number;
mod poly;
pub mod residue;

pub use hensel::hensel_lift;
pub use linalg::charpoly;
pub(crate) use newton::hull_height as newton_hull_height;
pub use newton::{hull_segments, lower_hull, minkowski_merge, newton_polygon};
pub use number::{Padic, Valuation, DEFAULT_PRECISION};
pub(crate) use number::{balanced, p_pow};
pub use poly::PadicPolynomial;
pub use residue::{smallest_irreducible, Fq, FqPoly, ResidueField};

/// p-adic valuation of `x`; `Infinity` only for an exact zero.
pub fn valuation(x: &Padic) -> crate::Result<Valuation> {
    x.valuation()
}
