//! Lift a square root of 6 modulo 5 to 20 digits and read off a Newton polygon.

use cmbkf::padic::{hensel_lift, newton_polygon, Padic, PadicPolynomial};

fn main() -> cmbkf::Result<()> {
    let f = PadicPolynomial::from_ints(5, &[-6, 0, 1], 24)?;
    let r = hensel_lift(&f, &Padic::from_int(5, 1, 24), 20)?;
    println!("sqrt(6) in Z_5 = {r}");
    println!("f(r) = {}", f.eval(&r));

    let g = PadicPolynomial::from_ints(5, &[5, -6, 1], 24)?;
    for (slope, mult) in newton_polygon(&g)? {
        println!("slope {slope} with multiplicity {mult}");
    }
    Ok(())
}
