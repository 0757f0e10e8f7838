//! Discrete-series Virasoro VOAs `V_{p,q}`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::spec::VoaSpec;

/// A Kac label `(m, n)` with `1 <= m < p`, `1 <= n < q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VirasoroLabel {
    pub m: i64,
    pub n: i64,
}

impl VirasoroLabel {
    /// The representative of `{(m, n), (p - m, q - n)}` that is smallest lexicographically.
    pub fn canonical(m: i64, n: i64, p: i64, q: i64) -> Self {
        let a = Self { m, n };
        let b = Self { m: p - m, n: q - n };
        a.min(b)
    }

    pub fn partner(self, p: i64, q: i64) -> Self {
        Self {
            m: p - self.m,
            n: q - self.n,
        }
    }
}

/// `h_{m,n} = ((np - mq)^2 - (p - q)^2) / (4pq)`.
pub fn virasoro_weight(p: i64, q: i64, label: VirasoroLabel) -> Rational {
    let a = label.n * p - label.m * q;
    rat(a * a - (p - q) * (p - q), 4 * p * q)
}

/// `c_{p,q} = 1 - 6(p - q)^2 / (pq)`.
pub fn virasoro_central_charge(p: i64, q: i64) -> Rational {
    int(1) - rat(6 * (p - q) * (p - q), p * q)
}

/// Truncated Clebsch-Gordan condition in one Kac coordinate.
fn admissible(a: i64, b: i64, c: i64, p: i64) -> bool {
    (a - b).abs() < c && c <= (a + b - 1).min(2 * p - 1 - a - b) && (a + b + c) % 2 == 1
}

/// Fusion multiplicity of three Kac labels in `V_{p,q}`.
pub fn virasoro_fusion(p: i64, q: i64, x: VirasoroLabel, y: VirasoroLabel, z: VirasoroLabel) -> u32 {
    [z, z.partner(p, q)]
        .iter()
        .any(|r| admissible(x.m, y.m, r.m, p) && admissible(x.n, y.n, r.n, q))
        .into()
}

fn check_params(p: i64, q: i64) -> Result<()> {
    let fail = |reason| Err(Error::InvalidVirasoro { p, q, reason });
    if p < 2 || q < 2 {
        return fail("p and q must be at least 2");
    }
    if p == q {
        return fail("p and q must differ");
    }
    if p.gcd(&q) != 1 {
        return fail("p and q must be coprime");
    }
    Ok(())
}

/// Canonical Kac labels sorted by increasing conformal weight.
pub fn virasoro_labels(p: i64, q: i64) -> Result<Vec<VirasoroLabel>> {
    check_params(p, q)?;
    let mut labels: Vec<VirasoroLabel> = (1..p)
        .flat_map(|m| (1..q).map(move |n| VirasoroLabel::canonical(m, n, p, q)))
        .collect();
    labels.sort_unstable();
    labels.dedup();
    labels.sort_by_key(|&lab| virasoro_weight(p, q, lab));
    Ok(labels)
}

/// The Virasoro VOA `V_{p,q}`, modules ordered by increasing conformal weight.
pub fn virasoro(p: i64, q: i64) -> Result<VoaSpec> {
    let labels = virasoro_labels(p, q)?;
    let l = labels.len();
    let names = labels.iter().map(|x| format!("W{}_{}", x.m, x.n)).collect();
    let vacuum = labels
        .iter()
        .position(|&x| x == VirasoroLabel::canonical(1, 1, p, q))
        .expect("vacuum label present");
    let weights = labels.iter().map(|&x| virasoro_weight(p, q, x)).collect();
    VoaSpec::new(
        names,
        vacuum,
        (0..l).collect(),
        |a, b, c| virasoro_fusion(p, q, labels[a], labels[b], labels[c]),
        weights,
        virasoro_central_charge(p, q),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    #[test]
    fn yang_lee_data() {
        let v = virasoro(2, 5).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.weights(), &[rat(-1, 5), int(0)]);
        assert_eq!(v.central_charge(), &rat(-22, 5));
        assert_eq!(v.labels(), &["W1_2", "W1_1"]);
    }

    #[test]
    fn ising_data() {
        let v = virasoro(3, 4).unwrap();
        assert_eq!(v.weights(), &[int(0), rat(1, 16), rat(1, 2)]);
        assert_eq!(v.central_charge(), &rat(1, 2));
        // sigma x sigma = 1 + epsilon
        assert_eq!(v.fusion_rule(1, 1, 0), 1);
        assert_eq!(v.fusion_rule(1, 1, 2), 1);
        assert_eq!(v.fusion_rule(1, 1, 1), 0);
        assert_eq!(v.fusion_rule(2, 2, 0), 1);
    }

    #[test]
    fn holomorphic_and_module_counts() {
        assert_eq!(virasoro(2, 3).unwrap().len(), 1);
        for (p, q) in [(2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (5, 7)] {
            assert_eq!(virasoro(p, q).unwrap().len() as i64, (p - 1) * (q - 1) / 2);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        for (p, q) in [(2, 4), (3, 3), (1, 5), (6, 9)] {
            assert!(matches!(virasoro(p, q), Err(Error::InvalidVirasoro { .. })));
        }
    }

    #[test]
    fn min_weight_row_is_antitriangular() {
        for t in 1..=6usize {
            let v = virasoro(2, 2 * t as i64 + 1).unwrap();
            let r = v.raw_fusion_matrix(v.min_weight_module());
            let expected = IntMatrix::from_fn(t, |i, j| (i + j < t).into());
            assert_eq!(r, expected, "t = {t}");
        }
    }

    #[test]
    fn swapping_p_and_q_relabels() {
        for (p, q) in [(2, 5), (3, 4), (3, 5), (4, 5), (2, 9)] {
            let a = virasoro(p, q).unwrap();
            let b = virasoro(q, p).unwrap();
            let la = virasoro_labels(p, q).unwrap();
            let lb = virasoro_labels(q, p).unwrap();
            // (m, n) for (p, q) is (n, m) for (q, p).
            let map: Vec<usize> = la
                .iter()
                .map(|x| {
                    let y = VirasoroLabel::canonical(x.n, x.m, q, p);
                    lb.iter().position(|&z| z == y).unwrap()
                })
                .collect();
            assert_eq!(a.central_charge(), b.central_charge());
            for i in 0..a.len() {
                assert_eq!(a.weight(i), b.weight(map[i]));
                for j in 0..a.len() {
                    for k in 0..a.len() {
                        assert_eq!(a.three_point(i, j, k), b.three_point(map[i], map[j], map[k]));
                    }
                }
            }
        }
    }
}
