//! FA-matrices of a tensor product are Kronecker products of the factors' FA-matrices.

use farank::fusion::{Insertion, RankEngine};
use farank::registry::{affine_sl2, tensor, virasoro};
use farank::verify::verify_tensor_laws;

fn main() -> farank::error::Result<()> {
    let a = virasoro(2, 5)?;
    let b = affine_sl2(1)?;
    let t = tensor(&a, &b);
    println!("tensor labels: {:?}", t.labels());
    let (ea, eb, et) = (RankEngine::new(a), RankEngine::new(b), RankEngine::new(t.clone()));

    let ins = Insertion::from_indices(t.len(), &[t.resolve_label("W1_2*W1")?; 4])?;
    let left = Insertion::from_indices(2, &[0; 4])?;
    let right = Insertion::from_indices(2, &[1; 4])?;
    for g in 0..=2 {
        let whole = et.rank(&ins, g)?;
        let (r1, r2) = (ea.rank(&left, g)?, eb.rank(&right, g)?);
        println!("genus {g}: {whole} = {r1} * {r2}");
    }

    print!("{}", verify_tensor_laws(&ea, &eb, &et, 3, 2)?);
    Ok(())
}
