//! Genus-zero ranks of the Yang-Lee model with n copies of its nontrivial module, computed
//! from fusion matrices and cross-checked against the state sum.

use farank::fusion::{Insertion, RankEngine};
use farank::oracle::rank_oracle;
use farank::registry::virasoro;

fn main() -> farank::error::Result<()> {
    let spec = virasoro(2, 5)?;
    let w = spec.min_weight_module();
    let engine = RankEngine::new(spec.clone());
    println!("labels: {:?}, W_min = {}", spec.labels(), spec.label(w));
    for n in 3..=15 {
        let ins = Insertion::empty(spec.len()).with_added(w, n);
        let rank = engine.rank(&ins, 0)?;
        let check = if n <= 9 {
            format!("state sum {}", rank_oracle(&spec, &ins, 0)?)
        } else {
            String::new()
        };
        println!("n = {n:>2}  rank = {rank:>4}  {check}");
    }
    for g in 1..=4 {
        let ins = Insertion::empty(spec.len()).with_added(w, 2);
        println!("genus {g}, two points: {}", engine.rank(&ins, g)?);
    }
    Ok(())
}
