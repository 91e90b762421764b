//! Elementary divisors of a lattice over `Q[[xi]]/xi^8` and a non-free cokernel.

use cmbkf::drlattice::{cokernel_divisors, snf, LatticePair, TruncatedDVRMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;

fn series(c: &[i64]) -> Vec<BigRational> {
    c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

fn main() -> cmbkf::Result<()> {
    let zero = BigRational::from_integer(BigInt::from(0));
    let a = TruncatedDVRMatrix::new(
        &zero,
        8,
        vec![vec![series(&[0, 1, 2]), series(&[1])], vec![series(&[0, 0, 3]), series(&[0, 1])]],
    )?;
    let s = snf(&a)?;
    println!("divisors {:?}", s.divisors);
    let l = LatticePair::from_presentation(a)?;
    println!("graded pieces {:?}", l.filtration().gr);

    let f = TruncatedDVRMatrix::new(&zero, 8, vec![vec![series(&[1])]])?;
    let c = cokernel_divisors(&f, &LatticePair::from_divisors(vec![1]), &LatticePair::from_divisors(vec![0]))?;
    println!("xi B -> B: divisors {:?}, free {}", c.divisors, c.free);
    Ok(())
}
