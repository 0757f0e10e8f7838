//! Consistency laws between the matrix formulas, the state-sum oracle, and tensor products.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::divisor;
use crate::error::Result;
use crate::fusion::{Insertion, RankEngine};
use crate::matrix::IntMatrix;
use crate::oracle::{oracle_fa_matrix, rank_oracle};
use crate::rational::from_big;
use crate::registry::PointedData;
use crate::spec::VoaSpec;

/// Outcome of one law over all cases in range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub name: &'static str,
    pub cases: usize,
    /// First counterexample, if any.
    pub witness: Option<String>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub laws: Vec<LawResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.laws.extend(other.laws);
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "laws": self.laws.iter().map(|l| serde_json::json!({
                "name": l.name,
                "cases": l.cases,
                "passed": l.passed(),
                "witness": l.witness,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for law in &self.laws {
            match &law.witness {
                None => writeln!(f, "PASS {:<24} {} cases", law.name, law.cases)?,
                Some(w) => writeln!(f, "FAIL {:<24} {w}", law.name)?,
            }
        }
        Ok(())
    }
}

struct Law {
    name: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl Law {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            witness: None,
        }
    }

    /// Records one case; keeps only the first failure.
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(describe());
        }
    }

    fn done(self) -> LawResult {
        LawResult {
            name: self.name,
            cases: self.cases,
            witness: self.witness,
        }
    }
}

fn show(spec: &VoaSpec, ins: &Insertion) -> String {
    let parts: Vec<String> = ins
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| format!("{}^{c}", spec.label(i)))
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Checks, for all insertion multisets with at most `max_n` points and genera summing to at
/// most `max_g`:
///
/// * `fusion-commutative`: fusion matrices commute pairwise;
/// * `FA1`: rank matrices multiply, `M(β, g₁)·M(γ, g₂) = M(β + γ, g₁ + g₂)`;
/// * `FA2`: `Tr M(β, g) = rank(β, g + 1)`;
/// * `V3`: the averaging matrix equals the genus-one rank matrix;
/// * `oracle-agreement`: the matrix formula matches the state sum for FA-matrices and ranks.
///
/// Rank matrices `M` here come from the state-sum oracle, so the laws test the fusion data
/// itself rather than the matrix-product implementation.
pub fn verify_fa_properties(engine: &RankEngine, max_n: usize, max_g: usize) -> VerifyReport {
    let spec = engine.spec();
    let l = spec.len();
    let multisets = Insertion::all_up_to(l, max_n);
    let mut oracle: HashMap<(Insertion, usize), IntMatrix> = HashMap::new();
    let mut fa = |ins: &Insertion, g: usize| -> IntMatrix {
        oracle
            .entry((ins.clone(), g))
            .or_insert_with(|| oracle_fa_matrix(spec, ins, g))
            .clone()
    };

    let mut comm = Law::new("fusion-commutative");
    let fusion: Vec<IntMatrix> = (0..l)
        .map(|w| engine.fusion_matrix(w).expect("index in range").matrix)
        .collect();
    for i in 0..l {
        for j in i + 1..l {
            comm.check(fusion[i].commutes_with(&fusion[j]), || {
                format!("R[{}] R[{}] != R[{}] R[{}]", spec.label(i), spec.label(j), spec.label(j), spec.label(i))
            });
        }
    }

    let mut fa1 = Law::new("FA1");
    for beta in &multisets {
        for gamma in &multisets {
            if beta.len() + gamma.len() > max_n {
                continue;
            }
            let union = beta.union(gamma);
            for g1 in 0..=max_g {
                for g2 in 0..=max_g - g1 {
                    let lhs = &fa(beta, g1) * &fa(gamma, g2);
                    let rhs = fa(&union, g1 + g2);
                    fa1.check(lhs == rhs, || {
                        format!(
                            "M({}, {g1}) M({}, {g2}) != M({}, {})",
                            show(spec, beta),
                            show(spec, gamma),
                            show(spec, &union),
                            g1 + g2
                        )
                    });
                }
            }
        }
    }

    let mut fa2 = Law::new("FA2");
    let mut agree = Law::new("oracle-agreement");
    for ins in &multisets {
        for g in 0..=max_g {
            let m = fa(ins, g);
            let rank = rank_oracle(spec, ins, g + 1);
            fa2.check(rank.as_ref().is_ok_and(|r| *r == m.trace()), || {
                format!(
                    "Tr M({}, {g}) = {} but rank at genus {} is {:?}",
                    show(spec, ins),
                    m.trace(),
                    g + 1,
                    rank
                )
            });
            let matrix = engine.fa_matrix(ins, g).expect("sizes match").matrix;
            agree.check(matrix == m, || {
                format!("FA-matrix of ({}, {g}) differs from the state sum", show(spec, ins))
            });
            let direct = engine.rank(ins, g).expect("sizes match");
            let by_sum = rank_oracle(spec, ins, g);
            agree.check(by_sum.as_ref().is_ok_and(|r| *r == direct), || {
                format!(
                    "rank({}, {g}) = {direct} but the state sum gives {by_sum:?}",
                    show(spec, ins)
                )
            });
        }
    }

    let mut v3 = Law::new("V3");
    let avg = engine.averaging_matrix().matrix;
    let empty = Insertion::empty(l);
    let genus_one = fa(&empty, 1);
    v3.check(avg == genus_one, || {
        format!("averaging matrix {avg:?} != genus-one rank matrix {genus_one:?}")
    });

    VerifyReport {
        laws: vec![comm.done(), fa1.done(), fa2.done(), v3.done(), agree.done()],
    }
}

/// Projects a multiset over the modules of `tensor(v1, v2)` onto the two factors.
fn split_insertion(l1: usize, l2: usize, ins: &Insertion) -> (Insertion, Insertion) {
    let mut a = vec![0u32; l1];
    let mut b = vec![0u32; l2];
    for (k, &c) in ins.counts().iter().enumerate() {
        a[k / l2] += c;
        b[k % l2] += c;
    }
    (Insertion::from_counts(a), Insertion::from_counts(b))
}

/// Laws relating a tensor product to its factors, for insertions of at most `max_n` points
/// and genus at most `max_g`:
///
/// * `kronecker-fusion` and `kronecker-fa`: FA-matrices of the product are Kronecker products;
/// * `rank-multiplicative`: ranks multiply;
/// * `c1-tensor`: `c1(S⊗T) = rank₂·c1(S) + rank₁·c1(T)` on stable `(g, n)`.
pub fn verify_tensor_laws(
    e1: &RankEngine,
    e2: &RankEngine,
    product: &RankEngine,
    max_n: usize,
    max_g: usize,
) -> Result<VerifyReport> {
    let (l1, l2) = (e1.modules(), e2.modules());
    let ps = product.spec();
    let mut fusion = Law::new("kronecker-fusion");
    for k in 0..ps.len() {
        let lhs = product.fusion_matrix(k)?.matrix;
        let rhs = e1.fusion_matrix(k / l2)?.matrix.kron(&e2.fusion_matrix(k % l2)?.matrix);
        fusion.check(lhs == rhs, || format!("fusion matrix of {}", ps.label(k)));
    }
    let mut fa = Law::new("kronecker-fa");
    let mut mult = Law::new("rank-multiplicative");
    let mut chern = Law::new("c1-tensor");
    for ins in Insertion::all_up_to(ps.len(), max_n) {
        let (s, t) = split_insertion(l1, l2, &ins);
        for g in 0..=max_g {
            let lhs = product.fa_matrix(&ins, g)?.matrix;
            let rhs = e1.fa_matrix(&s, g)?.matrix.kron(&e2.fa_matrix(&t, g)?.matrix);
            fa.check(lhs == rhs, || format!("FA-matrix of ({}, {g})", show(ps, &ins)));
            let r = product.rank(&ins, g)?;
            let (r1, r2) = (e1.rank(&s, g)?, e2.rank(&t, g)?);
            mult.check(r == &r1 * &r2, || {
                format!("rank({}, {g}) = {r} but factors give {r1} * {r2}", show(ps, &ins))
            });
            if 2 * g + ins.len() <= 2 {
                continue;
            }
            let order = ins.indices();
            let left: Vec<usize> = order.iter().map(|k| k / l2).collect();
            let right: Vec<usize> = order.iter().map(|k| k % l2).collect();
            let whole = divisor::c1(product, &order, g)?;
            let combo = divisor::c1(e1, &left, g)?.linear_combination(
                &from_big(&r2),
                &divisor::c1(e2, &right, g)?,
                &from_big(&r1),
            )?;
            chern.check(whole == combo, || {
                format!("c1 of ({}, {g}) is not additive", show(ps, &ins))
            });
        }
    }
    Ok(VerifyReport {
        laws: vec![fusion.done(), fa.done(), mult.done(), chern.done()],
    })
}

/// Laws specific to pointed VOAs, for insertions of at most `max_n` points and genus at most
/// `max_g`:
///
/// * `pointed-rank`: `rank = |G|^g` when the insertions multiply to the identity, else 0;
/// * `pointed-c1`: the closed form of `c1` matches the general formula on stable `(g, n)`.
pub fn verify_pointed_laws(
    engine: &RankEngine,
    data: &PointedData,
    max_n: usize,
    max_g: usize,
) -> Result<VerifyReport> {
    let spec = engine.spec();
    let m = BigInt::from(data.order());
    let mut ranks = Law::new("pointed-rank");
    let mut chern = Law::new("pointed-c1");
    for ins in Insertion::all_up_to(spec.len(), max_n) {
        let order = ins.indices();
        let trivial = data.product_of(&order) == data.identity();
        for g in 0..=max_g {
            let expected = if trivial { m.pow(g as u32) } else { BigInt::zero() };
            let got = engine.rank(&ins, g)?;
            ranks.check(got == expected, || {
                format!("rank({}, {g}) = {got}, expected {expected}", show(spec, &ins))
            });
            if 2 * g + ins.len() <= 2 {
                continue;
            }
            let general = divisor::c1(engine, &order, g)?;
            let closed = divisor::c1_pointed_closed_form(data, &order, g)?;
            chern.check(general == closed, || {
                format!("c1 of ({}, {g}) differs from the closed form", show(spec, &ins))
            });
        }
    }
    Ok(VerifyReport {
        laws: vec![ranks.done(), chern.done()],
    })
}

/// Ranks of `(count points of w, genus)` computed both ways, for spot checks.
pub fn rank_both_ways(engine: &RankEngine, ins: &Insertion, genus: usize) -> Result<(BigInt, BigInt)> {
    Ok((engine.rank(ins, genus)?, rank_oracle(engine.spec(), ins, genus)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::registry;

    #[test]
    fn builtin_specs_pass() {
        for (name, spec) in registry::builtin_specs().into_iter().take(8) {
            let report = verify_fa_properties(&RankEngine::new(spec), 3, 2);
            assert!(report.passed(), "{name}:\n{report}");
        }
    }

    #[test]
    fn non_symmetric_tensor_fails_fa1() {
        // Yang-Lee data with one orientation of S(W, W, V) removed.
        let good = registry::virasoro(2, 5).unwrap();
        let broken = VoaSpec::from_parts_unchecked(
            good.labels().to_vec(),
            good.vacuum(),
            good.duals().to_vec(),
            |a, b, c| {
                if (a, b, c) == (0, 1, 0) {
                    0
                } else {
                    good.three_point(a, b, c)
                }
            },
            vec![rat(-1, 5), int(0)],
            rat(-22, 5),
        );
        assert!(broken.validate().is_err());
        let report = verify_fa_properties(&RankEngine::new(broken), 3, 1);
        let fa1 = report.law("FA1").unwrap();
        assert!(!fa1.passed());
        assert!(fa1.witness.as_ref().unwrap().starts_with("M("));
        assert!(!report.passed());
    }

    #[test]
    fn tensor_laws_hold() {
        let a = registry::virasoro(2, 5).unwrap();
        let b = registry::affine_sl2(1).unwrap();
        let t = registry::tensor(&a, &b);
        let report = verify_tensor_laws(
            &RankEngine::new(a),
            &RankEngine::new(b),
            &RankEngine::new(t),
            3,
            1,
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn pointed_laws_hold() {
        for (name, data) in registry::builtin_pointed() {
            let e = RankEngine::new(registry::pointed(&data).unwrap());
            let report = verify_pointed_laws(&e, &data, 3, 2).unwrap();
            assert!(report.passed(), "{name}:\n{report}");
        }
    }
}
