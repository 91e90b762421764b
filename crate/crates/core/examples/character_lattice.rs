//! Character lattices, coinduction and norm maps for the symmetric group on three letters.

use cmbkf::localfield::FiniteGroup;
use cmbkf::torus::{coinduction_iso, is_injective, norm_char_map};

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn main() -> cmbkf::Result<()> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let table = perms.iter().map(|a| perms.iter().map(|b| index(&compose(a, b))).collect()).collect();
    let g = FiniteGroup::from_table(table)?;

    let h = vec![0, 1];
    let c = coinduction_iso(&g, &h)?;
    let f = c.inverse(&[3, -1, 2]);
    println!("function on G: {f:?}");
    println!("back to Z[G/H]: {:?}", c.forward(&f)?);

    let m = norm_char_map(&g, &h, &[0])?;
    println!("norm Z[G/H] -> Z[G]:");
    for row in &m {
        println!("  {row:?}");
    }
    println!("injective: {}", is_injective(&m));
    Ok(())
}
