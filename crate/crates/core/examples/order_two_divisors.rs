//! First Chern classes for an order-two module: boundary coefficients are a_S on odd-size
//! subsets and zero on even ones, and the genus-zero F-curve check holds iff a_S >= 0.

use farank::divisor::{c1, degree_on_m04, f_check_genus0};
use farank::fusion::RankEngine;
use farank::rational::{int, rat};
use farank::registry::{pointed, virasoro, PointedData};

fn main() -> farank::error::Result<()> {
    let ising = virasoro(3, 4)?;
    let s = ising.max_weight_module();
    let engine = RankEngine::new(ising);
    assert!(engine.is_order_two(s)?);
    let d = c1(&engine, &[s; 4], 0)?;
    print!("{d}");
    println!("degree on M_0,4: {}", degree_on_m04(&d)?);
    let d6 = c1(&engine, &[s; 6], 0)?;
    println!("n = 6 genus-0 check holds: {}", f_check_genus0(&d6)?.holds);

    let negative = PointedData::cyclic_with(vec![int(0), rat(-1, 2)], int(1))?;
    let engine = RankEngine::new(pointed(&negative)?);
    let d = c1(&engine, &[1; 6], 0)?;
    let check = f_check_genus0(&d)?;
    println!("a_S = -1/2: holds = {}, witness = {:?}", check.holds, check.witness);
    Ok(())
}
