//! Round-trips a spec through JSON and shows how a broken file is rejected.

use farank::registry::affine_sl2;
use farank::spec::{load_spec, save_spec};

fn main() {
    let spec = affine_sl2(2).unwrap();
    let text = save_spec(&spec);
    println!("{text}");
    println!("content hash: {}", spec.content_hash());
    assert_eq!(load_spec(&text).unwrap(), spec);

    let broken = text.replace("\"vacuum\": 0", "\"vacuum\": 1");
    match load_spec(&broken) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
}
