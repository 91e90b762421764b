//! Galois closure of `Q_5(5^(1/3))` and the action on its three embeddings.

use std::sync::Arc;

use cmbkf::localfield::{splitting_context, GaloisOptions, LocalField};
use num_bigint::BigInt;

fn main() -> cmbkf::Result<()> {
    let eis: Vec<Vec<BigInt>> = [-5, 0, 0, 1].iter().map(|&c| vec![BigInt::from(c)]).collect();
    let e = Arc::new(LocalField::new(5, 1, &eis, 40)?);
    let ctx = splitting_context(&e, &GaloisOptions::default())?;
    let l = ctx.field().expect("closure is a field");
    println!("closure: e = {}, f = {}, |G| = {}", l.e(), l.f(), ctx.group().order());
    let homs = ctx.hom_set(&e)?;
    for g in ctx.group().elements() {
        let perm: Vec<usize> = (0..homs.gset.size()).map(|x| homs.gset.act(g, x)).collect();
        println!("g{g}: {perm:?}");
    }
    println!("inertia {:?}, frobenius g{}", ctx.inertia(), ctx.frobenius());
    Ok(())
}
