//! F-curve reports for lattice VOAs and the number of holomorphic factors needed to make
//! the vacuum divisor nef.

use farank::divisor::{padding_exponent, pointed_nef_report};
use farank::rational::int;
use farank::registry::root_lattice;

fn main() -> farank::error::Result<()> {
    for name in ["A1", "A2", "A3", "A4", "D4", "D5", "E6", "E7", "E8"] {
        let data = root_lattice(name)?;
        let report = pointed_nef_report(&data);
        let statuses: Vec<&str> = report.types.iter().map(|s| s.as_str()).collect();
        let pad = padding_exponent(&data, &int(8))
            .map_or("-".to_string(), |r| r.to_string());
        println!("{name:<3} {}  E8 copies needed: {pad}", statuses.join(" "));
    }
    println!();
    print!("{}", pointed_nef_report(&root_lattice("E8")?));
    Ok(())
}
