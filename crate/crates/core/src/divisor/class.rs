//! Divisor classes on the moduli space of stable pointed curves in the standard basis
//! `λ, ψ_i, δ_irr, δ_{h:I}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A boundary index `(h, I)` with `I` a sorted set of 1-based point labels.
pub type BoundaryKey = (usize, Vec<usize>);

/// Rational coefficients of a divisor class.
///
/// The class is `lambda·λ + Σ psi_i ψ_i − b_irr δ_irr − Σ b_{h:I} δ_{h:I}`. Boundary keys are
/// canonical: `(h, I)` and `(g − h, I^c)` name the same divisor, and the stored one has
/// `h < g − h`, or `h = g − h` with point 1 in `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub g: usize,
    pub n: usize,
    pub lambda: Rational,
    pub psi: Vec<Rational>,
    pub b_irr: Option<Rational>,
    pub boundary: BTreeMap<BoundaryKey, Rational>,
}

/// Canonical representative of `(h, I)`, or `None` when the stratum is not stable.
pub fn canonical_key(g: usize, n: usize, h: usize, set: &[usize]) -> Option<BoundaryKey> {
    if h > g {
        return None;
    }
    let mut inside: Vec<usize> = set.to_vec();
    inside.sort_unstable();
    inside.dedup();
    if inside.iter().any(|&p| p == 0 || p > n) {
        return None;
    }
    let complement: Vec<usize> = (1..=n).filter(|p| !inside.contains(p)).collect();
    let side_stable = |genus: usize, points: usize| genus >= 1 || points >= 2;
    if !side_stable(h, inside.len()) || !side_stable(g - h, complement.len()) {
        return None;
    }
    let other = g - h;
    let keep = h < other || (h == other && (n == 0 || inside.first() == Some(&1)));
    Some(if keep { (h, inside) } else { (other, complement) })
}

/// All canonical stable boundary keys, sorted.
pub fn boundary_keys(g: usize, n: usize) -> Vec<BoundaryKey> {
    let mut keys: Vec<BoundaryKey> = Vec::new();
    for h in 0..=g {
        for mask in 0u64..(1u64 << n) {
            let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if let Some(key) = canonical_key(g, n, h, &set) {
                keys.push(key);
            }
        }
    }
    keys.sort();
    keys.dedup();
    keys
}

impl DivisorClass {
    /// The zero class with every stable boundary key present.
    pub fn zero(g: usize, n: usize) -> Self {
        Self {
            g,
            n,
            lambda: Rational::zero(),
            psi: vec![Rational::zero(); n],
            b_irr: (g >= 1).then(Rational::zero),
            boundary: boundary_keys(g, n)
                .into_iter()
                .map(|k| (k, Rational::zero()))
                .collect(),
        }
    }

    /// Coefficient `b_{h:I}`, read through the canonical key; zero for unstable strata.
    pub fn b(&self, h: usize, set: &[usize]) -> Rational {
        canonical_key(self.g, self.n, h, set)
            .and_then(|k| self.boundary.get(&k).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn b_irr_or_zero(&self) -> Rational {
        self.b_irr.clone().unwrap_or_else(Rational::zero)
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if (self.g, self.n) != (other.g, other.n) {
            return Err(Error::WrongModuli {
                expected: "classes on the same moduli space",
                g: other.g,
                n: other.n,
            });
        }
        Ok(())
    }

    /// `a·self + b·other`.
    pub fn linear_combination(&self, a: &Rational, other: &Self, b: &Rational) -> Result<Self> {
        self.check_same_space(other)?;
        let boundary = boundary_keys(self.g, self.n)
            .into_iter()
            .map(|k| {
                let x = self.boundary.get(&k).cloned().unwrap_or_default();
                let y = other.boundary.get(&k).cloned().unwrap_or_default();
                (k, a * x + b * y)
            })
            .collect();
        Ok(Self {
            g: self.g,
            n: self.n,
            lambda: a * &self.lambda + b * &other.lambda,
            psi: self
                .psi
                .iter()
                .zip(&other.psi)
                .map(|(x, y)| a * x + b * y)
                .collect(),
            b_irr: match (&self.b_irr, &other.b_irr) {
                (Some(x), Some(y)) => Some(a * x + b * y),
                _ => None,
            },
            boundary,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DivisorJson::from(self)).expect("divisor serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(DivisorJson::from(self)).expect("divisor serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DivisorJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.psi.len() != raw.n {
            return Err(Error::Parse(format!("{} psi coefficients for n = {}", raw.psi.len(), raw.n)));
        }
        let mut boundary = BTreeMap::new();
        for entry in raw.boundary {
            let key = canonical_key(raw.g, raw.n, entry.h, &entry.set).ok_or_else(|| {
                Error::Parse(format!("unstable boundary index ({}, {:?})", entry.h, entry.set))
            })?;
            boundary.insert(key, entry.b);
        }
        Ok(Self {
            g: raw.g,
            n: raw.n,
            lambda: raw.lambda,
            psi: raw.psi,
            b_irr: raw.b_irr,
            boundary,
        })
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "divisor on M_{{{},{}}}", self.g, self.n)?;
        writeln!(f, "  lambda      {}", rational::display(&self.lambda))?;
        for (i, p) in self.psi.iter().enumerate() {
            writeln!(f, "  psi_{:<7} {}", i + 1, rational::display(p))?;
        }
        if let Some(b) = &self.b_irr {
            writeln!(f, "  b_irr       {}", rational::display(b))?;
        }
        for ((h, set), b) in &self.boundary {
            let names: Vec<String> = set.iter().map(ToString::to_string).collect();
            let key = format!("b_{{{h}:{{{}}}}}", names.join(","));
            writeln!(f, "  {key:<11} {}", rational::display(b))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BoundaryJson {
    h: usize,
    #[serde(rename = "I")]
    set: Vec<usize>,
    #[serde(with = "rational")]
    b: Rational,
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    g: usize,
    n: usize,
    #[serde(with = "rational")]
    lambda: Rational,
    #[serde(with = "rational::vec")]
    psi: Vec<Rational>,
    #[serde(with = "rational::option")]
    b_irr: Option<Rational>,
    boundary: Vec<BoundaryJson>,
}

impl From<&DivisorClass> for DivisorJson {
    fn from(d: &DivisorClass) -> Self {
        Self {
            g: d.g,
            n: d.n,
            lambda: d.lambda.clone(),
            psi: d.psi.clone(),
            b_irr: d.b_irr.clone(),
            boundary: d
                .boundary
                .iter()
                .map(|((h, set), b)| BoundaryJson {
                    h: *h,
                    set: set.clone(),
                    b: b.clone(),
                })
                .collect(),
        }
    }
}
