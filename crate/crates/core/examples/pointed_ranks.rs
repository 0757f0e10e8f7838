//! Ranks for a pointed VOA: |G|^g when the insertions multiply to the identity, zero
//! otherwise. Loads the group table from a JSON file.

use farank::fusion::{Insertion, RankEngine};
use farank::registry::{pointed, PointedData};

fn main() -> farank::error::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/z5.json");
    let data = PointedData::from_json(&std::fs::read_to_string(path).expect("z5.json"))?;
    let spec = pointed(&data)?;
    let engine = RankEngine::new(spec.clone());
    let x = spec.resolve_label("x")?;
    for n in 0..=10u32 {
        let ins = Insertion::empty(spec.len()).with_added(x, n);
        let ranks: Vec<String> = (0..=3).map(|g| engine.rank(&ins, g).unwrap().to_string()).collect();
        println!("x^{n:<2} genus 0..3: {}", ranks.join(" "));
    }
    Ok(())
}
