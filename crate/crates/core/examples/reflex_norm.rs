//! Reflex data of a CM type on `Q_5(5^(1/3))`.

use cmbkf::cmtype::{reflex, CMType};
use cmbkf::localfield::{GaloisOptions, LocalField};
use num_bigint::BigInt;

fn main() -> cmbkf::Result<()> {
    let eis: Vec<Vec<BigInt>> = [-5, 0, 0, 1].iter().map(|&c| vec![BigInt::from(c)]).collect();
    let e = LocalField::new(5, 1, &eis, 40)?;
    for phi in [vec![1, 0, 0], vec![1, 1, 0], vec![2, 2, 2]] {
        let t = CMType::for_field(&e, phi.clone(), &GaloisOptions::default())?;
        let r = reflex(&t);
        println!("phi {phi:?}: reflex degree {}, stabilizer {:?}", r.degree, r.subgroup);
        for row in &r.norm_matrix {
            println!("  {row:?}");
        }
    }
    Ok(())
}
