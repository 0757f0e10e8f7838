//! Affine `sl_2` VOAs at positive integer level.

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::spec::VoaSpec;

/// Level-`level` fusion rule in the "pattern" form: `i + j ≡ p (mod 2)`, `|i - j| <= p`, and
/// `p <= i + j <= 2·level - p`.
pub fn sl2_fusion_pattern(level: usize, p: usize, i: usize, j: usize) -> bool {
    (i + j) % 2 == p % 2 && i.abs_diff(j) <= p && p <= i + j && i + j + p <= 2 * level
}

/// Level-`level` fusion rule in the "half-sum" form: `p + i + j = 2m` for some `m <= level`
/// with `p, i, j <= m`.
pub fn sl2_fusion_half_sum(level: usize, p: usize, i: usize, j: usize) -> bool {
    let s = p + i + j;
    if s % 2 != 0 {
        return false;
    }
    let m = s / 2;
    m <= level && p <= m && i <= m && j <= m
}

/// Symmetric triangle form used to build the tensor.
fn sl2_three_point(level: usize, p: usize, i: usize, j: usize) -> u32 {
    let s = p + i + j;
    (s % 2 == 0 && s <= 2 * level && p <= i + j && i <= p + j && j <= p + i).into()
}

/// `h_p = p(p + 2) / (4(level + 2))`.
pub fn sl2_weight(level: usize, p: usize) -> Rational {
    rat((p * (p + 2)) as i64, 4 * (level as i64 + 2))
}

/// `c = 3·level / (level + 2)`.
pub fn sl2_central_charge(level: usize) -> Rational {
    rat(3 * level as i64, level as i64 + 2)
}

/// The affine VOA `L_{sl_2}(level, 0)` with modules `W0, …, W{level}`.
pub fn affine_sl2(level: i64) -> Result<VoaSpec> {
    if level < 1 {
        return Err(Error::InvalidLevel(level));
    }
    let k = level as usize;
    Ok(VoaSpec::new(
        (0..=k).map(|p| format!("W{p}")).collect(),
        0,
        (0..=k).collect(),
        |p, i, j| sl2_three_point(k, p, i, j),
        (0..=k).map(|p| sl2_weight(k, p)).collect(),
        sl2_central_charge(k),
    )?
    .with_degree_one_flag(Some(true)))
}
