//! Pointed VOAs: fusion ring equal to the group ring of a finite abelian group.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::RankEngine;
use crate::rational::{self, int, rat, Rational};
use crate::spec::VoaSpec;

/// Group table plus conformal weights and central charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedData {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    weights: Vec<Rational>,
    central_charge: Rational,
    labels: Vec<String>,
    strongly_generated_degree_one: Option<bool>,
}

impl PointedData {
    /// Validates that `mul` is an abelian group table and that weights are inverse-invariant.
    pub fn new(mul: Vec<Vec<usize>>, weights: Vec<Rational>, central_charge: Rational) -> Result<Self> {
        let m = mul.len();
        let bad = |msg: String| Err(Error::NotAGroup(msg));
        if m == 0 {
            return bad("empty table".into());
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != m {
                return bad(format!("row {a} has {} entries, expected {m}", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= m) {
                return bad(format!("entry {x} in row {a} out of range"));
            }
        }
        let Some(identity) = (0..m).find(|&e| (0..m).all(|x| mul[e][x] == x && mul[x][e] == x))
        else {
            return bad("no identity element".into());
        };
        let mut inverse = Vec::with_capacity(m);
        for a in 0..m {
            match (0..m).find(|&b| mul[a][b] == identity) {
                Some(b) => inverse.push(b),
                None => return bad(format!("element {a} has no inverse")),
            }
        }
        for a in 0..m {
            for b in 0..m {
                if mul[a][b] != mul[b][a] {
                    return bad(format!("{a}·{b} != {b}·{a}"));
                }
                for c in 0..m {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad(format!("({a}·{b})·{c} != {a}·({b}·{c})"));
                    }
                }
            }
        }
        if weights.len() != m {
            return bad(format!("{} weights for {m} elements", weights.len()));
        }
        for a in 0..m {
            if weights[a] != weights[inverse[a]] {
                return bad(format!("weight of {a} differs from weight of its inverse"));
            }
        }
        let labels = (0..m)
            .map(|a| if a == identity { "e".to_string() } else { format!("g{a}") })
            .collect();
        Ok(Self {
            mul,
            identity,
            inverse,
            weights,
            central_charge,
            labels,
            strongly_generated_degree_one: None,
        })
    }

    /// `Z/m` with generator `x`, labels `e, x, x2, …`, all weights zero and `c = 0`.
    pub fn cyclic(m: usize) -> Self {
        let mul = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        let labels = (0..m)
            .map(|a| match a {
                0 => "e".to_string(),
                1 => "x".to_string(),
                _ => format!("x{a}"),
            })
            .collect();
        Self::new(mul, vec![int(0); m], int(0))
            .expect("cyclic table is a group")
            .with_labels(labels)
    }

    /// `Z/m` with the given weights (indexed by residue) and central charge.
    pub fn cyclic_with(weights: Vec<Rational>, central_charge: Rational) -> Result<Self> {
        let m = weights.len();
        Self::cyclic(m).with_weights(weights, central_charge)
    }

    /// Direct product, elements ordered lexicographically `(a, b) -> a·|B| + b`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let (ma, mb) = (a.order(), b.order());
        let mul = (0..ma * mb)
            .map(|x| {
                (0..ma * mb)
                    .map(|y| a.mul[x / mb][y / mb] * mb + b.mul[x % mb][y % mb])
                    .collect()
            })
            .collect();
        let weights = (0..ma * mb)
            .map(|x| &a.weights[x / mb] + &b.weights[x % mb])
            .collect();
        let labels = (0..ma * mb)
            .map(|x| format!("{}*{}", a.labels[x / mb], b.labels[x % mb]))
            .collect();
        let flag = match (a.strongly_generated_degree_one, b.strongly_generated_degree_one) {
            (Some(x), Some(y)) => Some(x && y),
            _ => None,
        };
        Self::new(mul, weights, &a.central_charge + &b.central_charge)
            .expect("product of groups is a group")
            .with_labels(labels)
            .with_degree_one_flag(flag)
    }

    pub fn with_weights(mut self, weights: Vec<Rational>, central_charge: Rational) -> Result<Self> {
        let labels = std::mem::take(&mut self.labels);
        let flag = self.strongly_generated_degree_one;
        Ok(Self::new(self.mul, weights, central_charge)?
            .with_labels(labels)
            .with_degree_one_flag(flag))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = labels;
        self
    }

    pub fn with_degree_one_flag(mut self, flag: Option<bool>) -> Self {
        self.strongly_generated_degree_one = flag;
        self
    }

    /// Reads the group structure back from a spec whose fusion matrices are permutations.
    pub fn from_spec(spec: &VoaSpec) -> Option<Self> {
        let table = RankEngine::new(spec.clone()).is_pointed()?;
        Some(
            Self::new(table.mul, spec.weights().to_vec(), spec.central_charge().clone())
                .ok()?
                .with_labels(spec.labels().to_vec())
                .with_degree_one_flag(spec.strongly_generated_degree_one()),
        )
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn product_of(&self, elements: &[usize]) -> usize {
        elements.iter().fold(self.identity, |acc, &x| self.mul[acc][x])
    }

    pub fn weight(&self, a: usize) -> &Rational {
        &self.weights[a]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn central_charge(&self) -> &Rational {
        &self.central_charge
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn strongly_generated_degree_one(&self) -> Option<bool> {
        self.strongly_generated_degree_one
    }

    /// Mean conformal weight over the group.
    pub fn average_weight(&self) -> Rational {
        let sum: Rational = self.weights.iter().sum();
        sum / int(self.order() as i64)
    }

    pub fn max_weight(&self) -> Rational {
        self.weights.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> String {
        let raw = PointedJson {
            order: self.order(),
            table: self.mul.clone(),
            weights: self.weights.clone(),
            central_charge: self.central_charge.clone(),
            labels: Some(self.labels.clone()),
            strongly_generated_degree_one: self.strongly_generated_degree_one,
        };
        serde_json::to_string_pretty(&raw).expect("pointed data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PointedJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.table.len() != raw.order {
            return Err(Error::NotAGroup(format!(
                "order {} but table has {} rows",
                raw.order,
                raw.table.len()
            )));
        }
        let mut data = Self::new(raw.table, raw.weights, raw.central_charge)?
            .with_degree_one_flag(raw.strongly_generated_degree_one);
        if let Some(labels) = raw.labels {
            if labels.len() != data.order() {
                return Err(Error::Parse(format!(
                    "{} labels for a group of order {}",
                    labels.len(),
                    data.order()
                )));
            }
            data = data.with_labels(labels);
        }
        Ok(data)
    }
}

#[derive(Serialize, Deserialize)]
struct PointedJson {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(with = "rational::vec")]
    weights: Vec<Rational>,
    #[serde(with = "rational")]
    central_charge: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default)]
    strongly_generated_degree_one: Option<bool>,
}

/// The pointed spec: `S(a, b, c) = 1` iff `a·b·c = e`, and `dual(a) = a⁻¹`.
pub fn pointed(data: &PointedData) -> Result<VoaSpec> {
    let m = data.order();
    Ok(VoaSpec::new(
        data.labels.clone(),
        data.identity,
        (0..m).map(|a| data.inverse(a)).collect(),
        |a, b, c| (data.mul(data.mul(a, b), c) == data.identity).into(),
        data.weights.clone(),
        data.central_charge.clone(),
    )?
    .with_degree_one_flag(data.strongly_generated_degree_one))
}

/// Discriminant data of the root lattice `A_r`: `Z/(r + 1)` with weights
/// `j(r + 1 - j) / (2(r + 1))` and `c = r`.
pub fn root_lattice_a(r: usize) -> PointedData {
    let n = r as i64 + 1;
    let weights = (0..n).map(|j| rat(j * (n - j), 2 * n)).collect();
    PointedData::cyclic_with(weights, int(r as i64))
        .expect("valid weights")
        .with_degree_one_flag(Some(true))
}

/// Discriminant data of `D_k` (`k >= 3`). For odd `k` the group is `Z/4` generated by a spinor
/// class; for even `k` it is `Z/2 × Z/2` ordered `(0, v, s, c)`.
pub fn root_lattice_d(k: usize) -> PointedData {
    assert!(k >= 3, "D_k needs k >= 3");
    let spin = rat(k as i64, 8);
    let vector = rat(1, 2);
    let data = if k % 2 == 1 {
        PointedData::cyclic_with(vec![int(0), spin.clone(), vector, spin], int(k as i64))
            .expect("valid weights")
            .with_labels(["0", "s", "v", "c"].map(String::from).to_vec())
    } else {
        // v + s = c in the Klein four-group.
        let mul = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        PointedData::new(mul, vec![int(0), vector, spin.clone(), spin], int(k as i64))
            .expect("Klein four-group")
            .with_labels(["0", "v", "s", "c"].map(String::from).to_vec())
    };
    data.with_degree_one_flag(Some(true))
}

pub fn root_lattice_e6() -> PointedData {
    PointedData::cyclic_with(vec![int(0), rat(2, 3), rat(2, 3)], int(6))
        .expect("valid weights")
        .with_degree_one_flag(Some(true))
}

pub fn root_lattice_e7() -> PointedData {
    PointedData::cyclic_with(vec![int(0), rat(3, 4)], int(7))
        .expect("valid weights")
        .with_degree_one_flag(Some(true))
}

/// `E_8`: trivial group, `c = 8`.
pub fn root_lattice_e8() -> PointedData {
    PointedData::cyclic_with(vec![int(0)], int(8))
        .expect("valid weights")
        .with_degree_one_flag(Some(true))
}

/// Looks up `A<r>`, `D<k>`, `E6`, `E7` or `E8`.
pub fn root_lattice(name: &str) -> Result<PointedData> {
    let unknown = || Error::UnknownSelector(format!("lattice:{name}"));
    let (kind, rank) = name.split_at(name.len().min(1));
    let rank: usize = rank.parse().map_err(|_| unknown())?;
    match (kind, rank) {
        ("A", r) if r >= 1 => Ok(root_lattice_a(r)),
        ("D", k) if k >= 3 => Ok(root_lattice_d(k)),
        ("E", 6) => Ok(root_lattice_e6()),
        ("E", 7) => Ok(root_lattice_e7()),
        ("E", 8) => Ok(root_lattice_e8()),
        _ => Err(unknown()),
    }
}
