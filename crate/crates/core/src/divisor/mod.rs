//! First Chern classes of bundles of coinvariants and F-curve positivity checks.

mod class;
mod nef;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use class::{boundary_keys, canonical_key, BoundaryKey, DivisorClass};
pub use nef::{padding_exponent, pointed_nef_report, CheckStatus, NefReport};

use crate::error::{Error, Result};
use crate::fusion::{check_stable, Insertion, RankEngine};
use crate::rational::{from_big, int, Rational};
use crate::registry::PointedData;

/// `c_1` of the bundle with the ordered insertions `ins` in genus `genus`.
///
/// `λ` gets `rank·c/2`, `ψ_i` gets `rank·a_{ins[i]}`, and each boundary divisor gets the
/// weighted sum over the module glued at the node of the ranks on its components.
pub fn c1(engine: &RankEngine, ins: &[usize], genus: usize) -> Result<DivisorClass> {
    let spec = engine.spec();
    let l = spec.len();
    let n = ins.len();
    check_stable(genus, n)?;
    let all = Insertion::from_indices(l, ins)?;
    let rank = from_big(&engine.rank(&all, genus)?);
    let mut d = DivisorClass::zero(genus, n);
    d.lambda = &rank * spec.central_charge() / int(2);
    d.psi = ins.iter().map(|&w| &rank * spec.weight(w)).collect();
    if genus >= 1 {
        let mut b = Rational::zero();
        for gamma in 0..l {
            let a = spec.weight(gamma);
            if a.is_zero() {
                continue;
            }
            let glued = all.with_added(gamma, 1).with_added(spec.dual(gamma), 1);
            b += a * from_big(&engine.rank(&glued, genus - 1)?);
        }
        d.b_irr = Some(b);
    }
    let keys: Vec<BoundaryKey> = d.boundary.keys().cloned().collect();
    for (h, set) in keys {
        let inside: Vec<usize> = set.iter().map(|&p| ins[p - 1]).collect();
        let outside: Vec<usize> = (1..=n)
            .filter(|p| !set.contains(p))
            .map(|p| ins[p - 1])
            .collect();
        let inside = Insertion::from_indices(l, &inside)?;
        let outside = Insertion::from_indices(l, &outside)?;
        let mut b = Rational::zero();
        for gamma in 0..l {
            let a = spec.weight(gamma);
            if a.is_zero() {
                continue;
            }
            let left = engine.rank(&inside.with_added(gamma, 1), h)?;
            if left.is_zero() {
                continue;
            }
            let right = engine.rank(&outside.with_added(spec.dual(gamma), 1), genus - h)?;
            b += a * from_big(&(left * right));
        }
        d.boundary.insert((h, set), b);
    }
    Ok(d)
}

/// Closed form of `c_1` for a pointed VOA: with `m = |G|`, every coefficient is `m^g` times
/// `c/2`, `a_{β_i}`, `a_average` (for `δ_irr`) or `a_{∏_{j∈I} β_j}` (for `δ_{h:I}`). The class is
/// zero when `∏ β_i ≠ e`.
pub fn c1_pointed_closed_form(
    data: &PointedData,
    beta: &[usize],
    genus: usize,
) -> Result<DivisorClass> {
    let n = beta.len();
    check_stable(genus, n)?;
    for &x in beta {
        if x >= data.order() {
            return Err(Error::IndexOutOfRange {
                index: x,
                len: data.order(),
            });
        }
    }
    let mut d = DivisorClass::zero(genus, n);
    if data.product_of(beta) != data.identity() {
        return Ok(d);
    }
    let scale = from_big(&BigInt::from(data.order()).pow(genus as u32));
    d.lambda = &scale * data.central_charge() / int(2);
    d.psi = beta.iter().map(|&x| &scale * data.weight(x)).collect();
    if genus >= 1 {
        d.b_irr = Some(&scale * data.average_weight());
    }
    for ((_, set), b) in d.boundary.iter_mut() {
        let elems: Vec<usize> = set.iter().map(|&p| beta[p - 1]).collect();
        *b = &scale * data.weight(data.product_of(&elems));
    }
    Ok(d)
}

/// Degree on `M_{0,4}`: `Σ ψ_i − (b_{0,{1,2}} + b_{0,{1,3}} + b_{0,{1,4}})`.
pub fn degree_on_m04(d: &DivisorClass) -> Result<Rational> {
    if (d.g, d.n) != (0, 4) {
        return Err(Error::WrongModuli {
            expected: "(g, n) = (0, 4)",
            g: d.g,
            n: d.n,
        });
    }
    let psi: Rational = d.psi.iter().sum();
    Ok(psi - d.b(0, &[1, 2]) - d.b(0, &[1, 3]) - d.b(0, &[1, 4]))
}

fn require_positive_genus(d: &DivisorClass) -> Result<()> {
    if d.g == 0 {
        return Err(Error::WrongModuli {
            expected: "positive genus",
            g: d.g,
            n: d.n,
        });
    }
    Ok(())
}

/// Type-1 combination `λ − 12·b_irr + b_{1:∅}`.
pub fn type1_value(d: &DivisorClass) -> Result<Rational> {
    require_positive_genus(d)?;
    Ok(&d.lambda - int(12) * d.b_irr_or_zero() + d.b(1, &[]))
}

/// `λ − 12·b_irr + b_{1:∅} ≥ 0`.
pub fn f_check_type1(d: &DivisorClass) -> Result<bool> {
    Ok(!type1_value(d)?.is_negative())
}

/// `b_irr ≥ 0`.
pub fn f_check_type2(d: &DivisorClass) -> Result<bool> {
    require_positive_genus(d)?;
    Ok(!d.b_irr_or_zero().is_negative())
}

/// Outcome of the genus-zero four-part inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genus0Check {
    pub holds: bool,
    /// The first violated partition `[I, J, K, L]` (1-based point labels).
    pub witness: Option<[Vec<usize>; 4]>,
}

/// Genus-zero coefficient `b_{0,I}` with `b_{0,{i}} = ψ_i` and `b_{0,I} = b_{0,I^c}`.
fn b0(d: &DivisorClass, set: &[usize]) -> Rational {
    let complement: Vec<usize> = (1..=d.n).filter(|p| !set.contains(p)).collect();
    match (set, complement.as_slice()) {
        ([p], _) | (_, [p]) => d.psi[p - 1].clone(),
        _ => d.b(0, set),
    }
}

/// Checks `b_I + b_J + b_K + b_L ≥ b_{I∪J} + b_{I∪K} + b_{I∪L}` for every partition of the
/// points into four nonempty parts.
pub fn f_check_genus0(d: &DivisorClass) -> Result<Genus0Check> {
    if d.g != 0 {
        return Err(Error::WrongModuli {
            expected: "genus zero",
            g: d.g,
            n: d.n,
        });
    }
    let mut witness = None;
    for_each_four_partition(d.n, |parts| {
        let lhs: Rational = parts.iter().map(|p| b0(d, p)).sum();
        let union = |a: &[usize], b: &[usize]| {
            let mut u = [a, b].concat();
            u.sort_unstable();
            u
        };
        let rhs = b0(d, &union(&parts[0], &parts[1]))
            + b0(d, &union(&parts[0], &parts[2]))
            + b0(d, &union(&parts[0], &parts[3]));
        if lhs < rhs {
            witness = Some(parts.clone());
            false
        } else {
            true
        }
    });
    Ok(Genus0Check {
        holds: witness.is_none(),
        witness,
    })
}

/// Calls `f` on every unordered partition of `{1..n}` into four nonempty blocks until it
/// returns `false`.
fn for_each_four_partition(n: usize, mut f: impl FnMut(&[Vec<usize>; 4]) -> bool) {
    // Restricted growth strings with exactly four distinct values.
    fn rec(
        i: usize,
        n: usize,
        used: usize,
        block: &mut Vec<usize>,
        f: &mut dyn FnMut(&[Vec<usize>; 4]) -> bool,
    ) -> bool {
        if n - i < 4 - used {
            return true;
        }
        if i == n {
            let mut parts: [Vec<usize>; 4] = Default::default();
            for (p, &b) in block.iter().enumerate() {
                parts[b].push(p + 1);
            }
            return f(&parts);
        }
        for b in 0..=used.min(3) {
            block.push(b);
            let next = if b == used { used + 1 } else { used };
            let go_on = rec(i + 1, n, next, block, f);
            block.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(0, n, 0, &mut Vec::with_capacity(n), &mut f);
}

/// The order-two boundary value `a_S·[|I| odd]`.
pub fn order_two_boundary(a_s: &Rational, set_size: usize) -> Rational {
    if set_size % 2 == 1 {
        a_s.clone()
    } else {
        Rational::zero()
    }
}
