//! Build the CM module of a type on `Q25(sqrt5)` and print its realizations.

use cmbkf::bkf::{build_module, crystalline_realization, hodge_tate, report};
use cmbkf::cmtype::CMType;
use cmbkf::localfield::{GaloisOptions, LocalField};
use num_bigint::BigInt;

fn main() -> cmbkf::Result<()> {
    let eis: Vec<Vec<BigInt>> = [-5, 0, 1].iter().map(|&c| vec![BigInt::from(c)]).collect();
    let e = LocalField::new(5, 2, &eis, 40)?;
    let t = CMType::for_field(&e, vec![2, 0, -1, 1], &GaloisOptions::default())?;
    let m = build_module(&t);
    println!("lattice divisors {:?}", m.lattice.divisors);
    println!("Hodge-Tate {:?}", hodge_tate(&m));
    let iso = crystalline_realization(&m);
    println!("Frobenius permutes components {:?}", iso.permutation);
    for (s, k) in &iso.newton_slopes {
        println!("slope {s} with multiplicity {k}");
    }
    println!("{}", serde_json::to_string_pretty(&report(&t)).unwrap());
    Ok(())
}
