//! Prints the genus-zero fusion matrices and the genus-one averaging matrix of a few models.

use farank::fusion::RankEngine;
use farank::registry::{affine_sl2, virasoro};
use farank::spec::VoaSpec;

fn show(name: &str, spec: VoaSpec) {
    let engine = RankEngine::new(spec);
    let spec = engine.spec();
    println!("== {name}: {:?}", spec.labels());
    for w in 0..spec.len() {
        let m = engine.fusion_matrix(w).unwrap().matrix.to_i64_rows().unwrap();
        println!("R[{}] = {m:?}", spec.label(w));
    }
    let avg = engine.averaging_matrix().matrix.to_i64_rows().unwrap();
    println!("averaging = {avg:?}");
}

fn main() {
    show("V(2,7)", virasoro(2, 7).unwrap());
    show("V(3,4)", virasoro(3, 4).unwrap());
    show("sl2 level 3", affine_sl2(3).unwrap());
}
