//! Finite fusion data of a strongly rational VOA and its JSON encoding.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::{self, Rational};

/// Labels, vacuum, dual involution, symmetric three-point ranks, weights and central charge.
///
/// Module indices are positions in `labels`. `three_point(a, b, c)` is the rank of the
/// genus-zero three-pointed bundle with modules `a, b, c`; the fusion rule is
/// `N_{a,b}^c = three_point(a, b, dual(c))`.
#[derive(Clone, Debug)]
pub struct VoaSpec {
    labels: Vec<String>,
    vacuum: usize,
    dual: Vec<usize>,
    three_point: Vec<u32>,
    weights: Vec<Rational>,
    central_charge: Rational,
    strongly_generated_degree_one: Option<bool>,
    display_order: Vec<usize>,
}

impl PartialEq for VoaSpec {
    // display_order is presentation metadata and does not take part in equality.
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.vacuum == other.vacuum
            && self.dual == other.dual
            && self.three_point == other.three_point
            && self.weights == other.weights
            && self.central_charge == other.central_charge
            && self.strongly_generated_degree_one == other.strongly_generated_degree_one
    }
}

impl Eq for VoaSpec {}

impl VoaSpec {
    /// Builds and validates a spec. `three_point` is evaluated on every ordered triple.
    pub fn new(
        labels: Vec<String>,
        vacuum: usize,
        dual: Vec<usize>,
        three_point: impl Fn(usize, usize, usize) -> u32,
        weights: Vec<Rational>,
        central_charge: Rational,
    ) -> Result<Self> {
        let spec = Self::from_parts_unchecked(
            labels,
            vacuum,
            dual,
            three_point,
            weights,
            central_charge,
        );
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a spec without checking any invariant. Useful for exercising the verifier
    /// on deliberately broken data.
    pub fn from_parts_unchecked(
        labels: Vec<String>,
        vacuum: usize,
        dual: Vec<usize>,
        three_point: impl Fn(usize, usize, usize) -> u32,
        weights: Vec<Rational>,
        central_charge: Rational,
    ) -> Self {
        let l = labels.len();
        let mut tensor = Vec::with_capacity(l * l * l);
        for a in 0..l {
            for b in 0..l {
                for c in 0..l {
                    tensor.push(three_point(a, b, c));
                }
            }
        }
        Self {
            labels,
            vacuum,
            dual,
            three_point: tensor,
            weights,
            central_charge,
            strongly_generated_degree_one: None,
            display_order: (0..l).collect(),
        }
    }

    pub fn with_degree_one_flag(mut self, flag: Option<bool>) -> Self {
        self.strongly_generated_degree_one = flag;
        self
    }

    /// Sets the permutation listing internal indices in the order used by the
    /// published tables.
    pub fn with_display_order(mut self, order: Vec<usize>) -> Self {
        assert!(is_permutation(&order, self.len()), "display order must be a permutation");
        self.display_order = order;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    /// Number of irreducible modules.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn vacuum(&self) -> usize {
        self.vacuum
    }

    pub fn dual(&self, index: usize) -> usize {
        self.dual[index]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.weights[index]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn central_charge(&self) -> &Rational {
        &self.central_charge
    }

    pub fn strongly_generated_degree_one(&self) -> Option<bool> {
        self.strongly_generated_degree_one
    }

    pub fn display_order(&self) -> &[usize] {
        &self.display_order
    }

    #[inline]
    pub fn three_point(&self, a: usize, b: usize, c: usize) -> u32 {
        let l = self.len();
        self.three_point[(a * l + b) * l + c]
    }

    /// Fusion multiplicity of `c` in `a ⊠ b`.
    pub fn fusion_rule(&self, a: usize, b: usize, c: usize) -> u32 {
        self.three_point(a, b, self.dual[c])
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// Index of the module with the smallest (resp. largest) conformal weight.
    pub fn min_weight_module(&self) -> usize {
        (0..self.len())
            .min_by(|&a, &b| self.weights[a].cmp(&self.weights[b]))
            .expect("nonempty spec")
    }

    pub fn max_weight_module(&self) -> usize {
        (0..self.len())
            .max_by(|&a, &b| self.weights[a].cmp(&self.weights[b]))
            .expect("nonempty spec")
    }

    /// Resolves a label, or one of the aliases `V` (vacuum), `Wmin`, `Wmax`, `@k` (raw index).
    pub fn resolve_label(&self, name: &str) -> Result<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Ok(i);
        }
        match name {
            "V" => Ok(self.vacuum),
            "Wmin" => Ok(self.min_weight_module()),
            "Wmax" => Ok(self.max_weight_module()),
            _ => {
                if let Some(idx) = name.strip_prefix('@') {
                    let i: usize = idx
                        .parse()
                        .map_err(|_| Error::UnknownLabel(name.to_string()))?;
                    self.check_index(i)?;
                    Ok(i)
                } else {
                    Err(Error::UnknownLabel(name.to_string()))
                }
            }
        }
    }

    /// The genus-zero fusion matrix of `w` from the raw tensor, entry `(i, j) = S(w, i, j')`.
    pub(crate) fn raw_fusion_matrix(&self, w: usize) -> IntMatrix {
        IntMatrix::from_fn(self.len(), |i, j| {
            BigInt::from(self.three_point(w, i, self.dual[j]))
        })
    }

    /// Checks every structural invariant, reporting the first failure with a witness.
    pub fn validate(&self) -> Result<()> {
        let l = self.len();
        let fail = |invariant: &'static str, witness: String| {
            Err(Error::InvalidSpec { invariant, witness })
        };
        if l == 0 {
            return fail("nonempty", "no modules".into());
        }
        if self.vacuum >= l {
            return fail("vacuum-in-range", format!("vacuum = {}", self.vacuum));
        }
        if self.dual.len() != l {
            return fail("dual-length", format!("{} entries for {l} modules", self.dual.len()));
        }
        if self.weights.len() != l {
            return fail(
                "weights-length",
                format!("{} weights for {l} modules", self.weights.len()),
            );
        }
        if self.display_order.len() != l || !is_permutation(&self.display_order, l) {
            return fail("display-order-permutation", format!("{:?}", self.display_order));
        }
        for a in 0..l {
            let d = self.dual[a];
            if d >= l || self.dual[d] != a {
                return fail("dual-involution", format!("dual({a}) = {d}"));
            }
            if self.weights[d] != self.weights[a] {
                return fail(
                    "dual-preserves-weights",
                    format!(
                        "a_{a} = {} but a_{d} = {}",
                        self.weights[a], self.weights[d]
                    ),
                );
            }
        }
        for a in 0..l {
            for b in 0..l {
                for c in 0..l {
                    let s = self.three_point(a, b, c);
                    let perms = [
                        self.three_point(a, c, b),
                        self.three_point(b, a, c),
                        self.three_point(b, c, a),
                        self.three_point(c, a, b),
                        self.three_point(c, b, a),
                    ];
                    if perms.iter().any(|&p| p != s) {
                        return fail(
                            "three-point-symmetric",
                            format!("S({a},{b},{c}) = {s} differs from a permutation"),
                        );
                    }
                }
            }
        }
        for a in 0..l {
            for b in 0..l {
                let expected = u32::from(b == self.dual[a]);
                let got = self.three_point(self.vacuum, a, b);
                if got != expected {
                    return fail(
                        "vacuum-pairing",
                        format!("S(vacuum, {a}, {b}) = {got}, expected {expected}"),
                    );
                }
            }
        }
        let fusion: Vec<IntMatrix> = (0..l).map(|w| self.raw_fusion_matrix(w)).collect();
        for i in 0..l {
            for j in i + 1..l {
                if !fusion[i].commutes_with(&fusion[j]) {
                    return fail(
                        "fusion-commutative",
                        format!("fusion matrices of {i} and {j} do not commute"),
                    );
                }
            }
        }
        Ok(())
    }

    /// Tensor orbits `a <= b <= c` with nonzero value.
    pub fn three_point_orbits(&self) -> Vec<[usize; 4]> {
        let l = self.len();
        let mut out = Vec::new();
        for a in 0..l {
            for b in a..l {
                for c in b..l {
                    let v = self.three_point(a, b, c);
                    if v != 0 {
                        out.push([a, b, c, v as usize]);
                    }
                }
            }
        }
        out
    }

    /// Serializes to the exchange JSON format.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SpecJson::from(self)).expect("spec serializes")
    }

    /// Parses and validates the exchange JSON format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SpecJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_spec()
    }

    /// A stable content hash of the serialized form.
    pub fn content_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn is_permutation(order: &[usize], len: usize) -> bool {
    let mut seen = vec![false; len];
    order.len() == len
        && order
            .iter()
            .all(|&i| i < len && !std::mem::replace(&mut seen[i], true))
}

/// `load_spec`: parse and validate.
pub fn load_spec(text: &str) -> Result<VoaSpec> {
    VoaSpec::from_json(text)
}

/// `save_spec`: canonical JSON text.
pub fn save_spec(spec: &VoaSpec) -> String {
    spec.to_json()
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    labels: Vec<String>,
    vacuum: usize,
    dual: Vec<usize>,
    #[serde(with = "rational::vec")]
    weights: Vec<Rational>,
    #[serde(with = "rational")]
    central_charge: Rational,
    three_point: Vec<[usize; 4]>,
    #[serde(default)]
    strongly_generated_degree_one: Option<bool>,
}

impl From<&VoaSpec> for SpecJson {
    fn from(spec: &VoaSpec) -> Self {
        Self {
            labels: spec.labels.clone(),
            vacuum: spec.vacuum,
            dual: spec.dual.clone(),
            weights: spec.weights.clone(),
            central_charge: spec.central_charge.clone(),
            three_point: spec.three_point_orbits(),
            strongly_generated_degree_one: spec.strongly_generated_degree_one,
        }
    }
}

impl SpecJson {
    fn into_spec(self) -> Result<VoaSpec> {
        let l = self.labels.len();
        let mut orbits: BTreeMap<[usize; 3], u32> = BTreeMap::new();
        for [a, b, c, v] in &self.three_point {
            for &i in [a, b, c] {
                if i >= l {
                    return Err(Error::InvalidSpec {
                        invariant: "three-point-index-in-range",
                        witness: format!("index {i} in entry [{a},{b},{c},{v}]"),
                    });
                }
            }
            let mut key = [*a, *b, *c];
            key.sort_unstable();
            let value = u32::try_from(*v).map_err(|_| Error::Parse(format!("rank {v} too large")))?;
            if let Some(prev) = orbits.insert(key, value) {
                if prev != value {
                    return Err(Error::InvalidSpec {
                        invariant: "three-point-orbit-unique",
                        witness: format!("orbit {key:?} listed with values {prev} and {value}"),
                    });
                }
            }
        }
        let lookup = |a: usize, b: usize, c: usize| {
            let mut key = [a, b, c];
            key.sort_unstable();
            orbits.get(&key).copied().unwrap_or(0)
        };
        let spec = VoaSpec::from_parts_unchecked(
            self.labels,
            self.vacuum,
            self.dual,
            lookup,
            self.weights,
            self.central_charge,
        )
        .with_degree_one_flag(self.strongly_generated_degree_one);
        spec.validate()?;
        Ok(spec)
    }
}
