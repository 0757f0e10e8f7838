//! Rational generating functions of rank sequences, and the continued-fraction form for the
//! minimal models V(2, 2l + 1).

use farank::fusion::{Insertion, RankEngine};
use farank::genfunc::{indexing_function, rf_equal, virasoro_boundary_cf};
use farank::registry::virasoro;

fn main() -> farank::error::Result<()> {
    for l in 1..=5usize {
        let spec = virasoro(2, 2 * l as i64 + 1)?;
        let engine = RankEngine::new(spec.clone());
        let v = spec.vacuum();
        let step = Insertion::single(spec.len(), spec.min_weight_module());
        let f = indexing_function(&engine, &Insertion::empty(spec.len()), &step, v, spec.dual(v), 0)?;
        let cf = virasoro_boundary_cf(l)?;
        let coeffs: Vec<String> = f.integer_series(10)?.iter().map(ToString::to_string).collect();
        println!("V(2,{}): {f}", 2 * l + 1);
        println!("  continued fraction agrees: {}", rf_equal(&f, &cf));
        println!("  {}", coeffs.join(" "));
    }

    for (p, q) in [(2, 5), (3, 4), (4, 5)] {
        let spec = virasoro(p, q)?;
        let engine = RankEngine::new(spec.clone());
        let v = spec.vacuum();
        let step = Insertion::single(spec.len(), spec.max_weight_module());
        let f = indexing_function(&engine, &Insertion::empty(spec.len()), &step, v, spec.dual(v), 0)?;
        println!("V({p},{q}) with step W_max: {f}");
    }
    Ok(())
}
