//! F-curve report for pointed VOAs.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::rational::{self, ceil, int, Rational};
use crate::registry::PointedData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    /// The condition is equivalent to non-negativity on this F-curve type and holds.
    EquivalentHolds,
    /// The condition is equivalent to non-negativity on this F-curve type and fails.
    EquivalentFails,
    /// A sufficient condition for non-negativity holds.
    SufficientHolds,
    /// The available sufficient condition does not apply.
    Unknown,
}

impl CheckStatus {
    fn equivalent(holds: bool) -> Self {
        if holds {
            Self::EquivalentHolds
        } else {
            Self::EquivalentFails
        }
    }

    fn sufficient(holds: bool) -> Self {
        if holds {
            Self::SufficientHolds
        } else {
            Self::Unknown
        }
    }

    pub fn is_nonnegative(self) -> bool {
        matches!(self, Self::EquivalentHolds | Self::SufficientHolds)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::EquivalentHolds => "equivalent-holds",
            Self::EquivalentFails => "equivalent-fails",
            Self::SufficientHolds => "sufficient-holds",
            Self::Unknown => "unknown",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Status per F-curve type (index 0 is type 1) plus the `M_{g,1}` vacuum-divisor verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefReport {
    pub types: [CheckStatus; 6],
    pub central_charge: Rational,
    pub average_weight: Rational,
    pub max_weight: Rational,
    /// `c ≥ 24·a_average ≥ 0`.
    pub vacuum_divisor_nef: bool,
}

impl NefReport {
    pub fn status(&self, curve_type: usize) -> CheckStatus {
        self.types[curve_type - 1]
    }

    pub fn all_nonnegative(&self) -> bool {
        self.types.iter().all(|s| s.is_nonnegative())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "central_charge": rational::to_fraction_string(&self.central_charge),
            "a_average": rational::to_fraction_string(&self.average_weight),
            "a_max": rational::to_fraction_string(&self.max_weight),
            "types": self
                .types
                .iter()
                .enumerate()
                .map(|(i, s)| serde_json::json!({"type": i + 1, "status": s.as_str()}))
                .collect::<Vec<_>>(),
            "vacuum_divisor_nef": self.vacuum_divisor_nef,
        })
    }
}

impl fmt::Display for NefReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c          {}", rational::display(&self.central_charge))?;
        writeln!(f, "a_average  {}", rational::display(&self.average_weight))?;
        writeln!(f, "a_max      {}", rational::display(&self.max_weight))?;
        for (i, s) in self.types.iter().enumerate() {
            writeln!(f, "type {}     {s}", i + 1)?;
        }
        writeln!(
            f,
            "D_g,1(V,{{V}}) F-nef: {}",
            if self.vacuum_divisor_nef { "yes" } else { "no" }
        )
    }
}

/// Per-type verdicts for coinvariant divisors of a pointed VOA in positive genus.
///
/// Types 1 and 2 are decided exactly (`c ≥ 24·a_average` and `a_average ≥ 0`). Types 3 to 5
/// use sufficient conditions: all weights non-negative, `2·a_average ≥ a_max`, and
/// subadditivity `a_x + a_y ≥ a_{xy}`. Type 6 follows the degree-one generation flag.
pub fn pointed_nef_report(data: &PointedData) -> NefReport {
    let c = data.central_charge().clone();
    let avg = data.average_weight();
    let max = data.max_weight();
    let m = data.order();
    let type1 = c >= int(24) * &avg;
    let type2 = !avg.is_negative();
    let type3 = data.weights().iter().all(|a| !a.is_negative());
    let type4 = int(2) * &avg >= max;
    let type5 = (0..m).all(|x| {
        (0..m).all(|y| data.weight(x) + data.weight(y) >= *data.weight(data.mul(x, y)))
    });
    let type6 = data.strongly_generated_degree_one() == Some(true);
    NefReport {
        types: [
            CheckStatus::equivalent(type1),
            CheckStatus::equivalent(type2),
            CheckStatus::sufficient(type3),
            CheckStatus::sufficient(type4),
            CheckStatus::sufficient(type5),
            CheckStatus::sufficient(type6),
        ],
        vacuum_divisor_nef: type1 && type2,
        central_charge: c,
        average_weight: avg,
        max_weight: max,
    }
}

/// Smallest `r ≥ 0` such that tensoring with `r` copies of a holomorphic VOA of central
/// charge `c_h` makes the vacuum divisor F-nef: `max(0, ⌈(24·a_average − c) / c_h⌉)`.
///
/// `None` when `a_average < 0` (no amount of padding helps) or `c_h ≤ 0`.
pub fn padding_exponent(data: &PointedData, c_h: &Rational) -> Option<BigInt> {
    let avg = data.average_weight();
    if avg.is_negative() || !c_h.is_positive() {
        return None;
    }
    let r = ceil(&((int(24) * avg - data.central_charge()) / c_h));
    Some(if r.is_negative() { BigInt::zero() } else { r })
}
