//! Constructors for the built-in VOA families and the selector syntax used by the CLI.

mod pointed;
mod sl2;
mod virasoro;

use std::path::Path;

pub use pointed::{
    pointed, root_lattice, root_lattice_a, root_lattice_d, root_lattice_e6, root_lattice_e7,
    root_lattice_e8, PointedData,
};
pub use sl2::{affine_sl2, sl2_central_charge, sl2_fusion_half_sum, sl2_fusion_pattern, sl2_weight};
pub use virasoro::{
    virasoro, virasoro_central_charge, virasoro_fusion, virasoro_labels, virasoro_weight,
    VirasoroLabel,
};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::spec::VoaSpec;

/// Tensor product. Modules are pairs in lexicographic order `(a, x) -> a·l₂ + x`.
pub fn tensor(v1: &VoaSpec, v2: &VoaSpec) -> VoaSpec {
    let l2 = v2.len();
    let l = v1.len() * l2;
    let labels = (0..l)
        .map(|k| format!("{}*{}", v1.label(k / l2), v2.label(k % l2)))
        .collect();
    let dual = (0..l)
        .map(|k| v1.dual(k / l2) * l2 + v2.dual(k % l2))
        .collect();
    let weights = (0..l)
        .map(|k| v1.weight(k / l2) + v2.weight(k % l2))
        .collect();
    let order = (0..l)
        .map(|k| v1.display_order()[k / l2] * l2 + v2.display_order()[k % l2])
        .collect();
    let flag = match (
        v1.strongly_generated_degree_one(),
        v2.strongly_generated_degree_one(),
    ) {
        (Some(a), Some(b)) => Some(a && b),
        _ => None,
    };
    VoaSpec::new(
        labels,
        v1.vacuum() * l2 + v2.vacuum(),
        dual,
        |a, b, c| {
            v1.three_point(a / l2, b / l2, c / l2) * v2.three_point(a % l2, b % l2, c % l2)
        },
        weights,
        v1.central_charge() + v2.central_charge(),
    )
    .expect("tensor product of valid specs is valid")
    .with_display_order(order)
    .with_degree_one_flag(flag)
}

/// A holomorphic VOA of central charge `c`: a single module `V`.
pub fn holomorphic(central_charge: Rational) -> VoaSpec {
    VoaSpec::new(
        vec!["V".to_string()],
        0,
        vec![0],
        |_, _, _| 1,
        vec![int(0)],
        central_charge,
    )
    .expect("holomorphic spec is valid")
}

const SELECTOR_PREFIXES: [&str; 7] = [
    "virasoro:",
    "sl2:",
    "pointed:",
    "tensor:",
    "holomorphic:",
    "file:",
    "lattice:",
];

/// Parses a VOA selector:
///
/// * `virasoro:p,q`, `sl2:l`, `holomorphic:c`
/// * `pointed:<path>` (group-table JSON) or a built-in group such as `pointed:Z2xZ2`
/// * `file:<path>` (spec JSON)
/// * `lattice:A3`, `lattice:D4`, `lattice:E8`, …
/// * `tensor:(sel,sel)`, nesting allowed
pub fn resolve_selector(selector: &str) -> Result<VoaSpec> {
    let selector = selector.trim();
    let unknown = || Error::UnknownSelector(selector.to_string());
    let (kind, arg) = selector.split_once(':').ok_or_else(unknown)?;
    let arg = arg.trim();
    match kind.trim() {
        "virasoro" => {
            let (p, q) = arg.split_once(',').ok_or_else(unknown)?;
            let p: i64 = p.trim().parse().map_err(|_| unknown())?;
            let q: i64 = q.trim().parse().map_err(|_| unknown())?;
            virasoro(p, q)
        }
        "sl2" => affine_sl2(arg.parse().map_err(|_| unknown())?),
        "holomorphic" => Ok(holomorphic(rational::parse_fraction(arg)?)),
        "pointed" => match builtin_pointed().into_iter().find(|(n, _)| n[8..] == *arg) {
            Some((_, data)) => pointed(&data),
            None => pointed(&PointedData::from_json(&read(arg)?)?),
        },
        "file" => VoaSpec::from_json(&read(arg)?),
        "lattice" => pointed(&root_lattice(arg)?),
        "tensor" => {
            let inner = arg
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(unknown)?;
            match split_tensor_args(inner).as_slice() {
                [a, b] => Ok(tensor(&resolve_selector(a)?, &resolve_selector(b)?)),
                _ => Err(unknown()),
            }
        }
        _ => Err(unknown()),
    }
}

/// The two factor selectors of a `tensor:(a,b)` selector.
pub fn tensor_factors(selector: &str) -> Option<(String, String)> {
    let inner = selector
        .trim()
        .strip_prefix("tensor:")?
        .trim()
        .strip_prefix('(')?
        .strip_suffix(')')?;
    match <[String; 2]>::try_from(split_tensor_args(inner)) {
        Ok([a, b]) => Some((a, b)),
        Err(_) => None,
    }
}

/// Splits on top-level commas, then re-joins pieces that do not start a new selector
/// (so `virasoro:2,5,sl2:1` becomes `virasoro:2,5` and `sl2:1`).
fn split_tensor_args(inner: &str) -> Vec<String> {
    let mut raw = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                raw.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    raw.push(cur);
    let mut parts: Vec<String> = Vec::new();
    for token in raw {
        let t = token.trim();
        let starts_new = SELECTOR_PREFIXES.iter().any(|p| t.starts_with(p));
        match parts.last_mut() {
            Some(last) if !starts_new => {
                last.push(',');
                last.push_str(t);
            }
            _ => parts.push(t.to_string()),
        }
    }
    parts
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Io(format!("{path}: {e}")))
}

/// Named specs exercised by the test suites and listed by the CLI `registry` command.
pub fn builtin_specs() -> Vec<(String, VoaSpec)> {
    let mut out: Vec<(String, VoaSpec)> = Vec::new();
    for (p, q) in [(2, 3), (2, 5), (2, 7), (2, 9), (3, 4), (3, 5), (4, 5)] {
        out.push((format!("virasoro:{p},{q}"), virasoro(p, q).expect("valid")));
    }
    for level in 1..=4 {
        out.push((format!("sl2:{level}"), affine_sl2(level).expect("valid")));
    }
    for (name, data) in builtin_pointed() {
        out.push((name, pointed(&data).expect("valid")));
    }
    for name in ["A1", "A2", "A3", "A4", "D4", "E6", "E7", "E8"] {
        out.push((
            format!("lattice:{name}"),
            pointed(&root_lattice(name).expect("known")).expect("valid"),
        ));
    }
    out.push(("holomorphic:24".into(), holomorphic(int(24))));
    out.push((
        "tensor:(virasoro:2,5,sl2:1)".into(),
        tensor(
            &virasoro(2, 5).expect("valid"),
            &affine_sl2(1).expect("valid"),
        ),
    ));
    out.push((
        "tensor:(pointed:Z2,virasoro:3,4)".into(),
        tensor(
            &pointed(&z2_half()).expect("valid"),
            &virasoro(3, 4).expect("valid"),
        ),
    ));
    out
}

/// `Z/2` with weights `(0, 1/2)` and `c = 1/2`.
pub fn z2_half() -> PointedData {
    PointedData::cyclic(2)
        .with_weights(vec![int(0), rational::rat(1, 2)], rational::rat(1, 2))
        .expect("valid weights")
}

/// Small abelian groups `Z/2, Z/3, Z/4, Z/2×Z/2, Z/6`. All weights are zero except for
/// `Z/2`, which is [`z2_half`].
pub fn builtin_pointed() -> Vec<(String, PointedData)> {
    let z2 = PointedData::cyclic(2);
    vec![
        ("pointed:Z2".into(), z2_half()),
        ("pointed:Z3".into(), PointedData::cyclic(3)),
        ("pointed:Z4".into(), PointedData::cyclic(4)),
        ("pointed:Z2xZ2".into(), PointedData::product(&z2, &z2)),
        ("pointed:Z6".into(), PointedData::cyclic(6)),
    ]
}
