//! Independent state-sum evaluation of ranks by gluing three-point values along a
//! trivalent graph.
//!
//! A subtree `X` of the graph is summarized by the vector `F_X(μ) = N(X + μ)`: the rank with
//! the legs of `X` and one open leg labelled `μ`. Two subtrees are joined at a trivalent
//! vertex, and the root edge is closed by pairing `μ` with its dual. Two different graph
//! shapes are evaluated; factorization guarantees they agree.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fusion::Insertion;
use crate::matrix::IntMatrix;
use crate::spec::VoaSpec;

type Vector = Vec<BigInt>;

/// One piece of the decomposition: a marked leg or a handle.
#[derive(Clone, Copy, Debug)]
enum Piece {
    Leg(usize),
    Handle,
}

struct Glue<'a> {
    spec: &'a VoaSpec,
}

impl Glue<'_> {
    fn l(&self) -> usize {
        self.spec.len()
    }

    /// `F_x(μ) = δ(μ, x')`.
    fn leg(&self, x: usize) -> Vector {
        let mut v = vec![BigInt::zero(); self.l()];
        v[self.spec.dual(x)] = BigInt::from(1);
        v
    }

    /// Genus-one piece with one open leg: `Σ_λ S(μ, λ, λ')`.
    fn handle(&self) -> Vector {
        (0..self.l())
            .map(|mu| {
                (0..self.l())
                    .map(|lam| BigInt::from(self.spec.three_point(mu, lam, self.spec.dual(lam))))
                    .sum()
            })
            .collect()
    }

    fn piece(&self, p: Piece) -> Vector {
        match p {
            Piece::Leg(x) => self.leg(x),
            Piece::Handle => self.handle(),
        }
    }

    /// `F_{AB}(μ) = Σ_{α,β} F_A(α) F_B(β) S(α', β', μ)`.
    fn join(&self, a: &Vector, b: &Vector) -> Vector {
        let l = self.l();
        let mut out = vec![BigInt::zero(); l];
        for alpha in 0..l {
            if a[alpha].is_zero() {
                continue;
            }
            let da = self.spec.dual(alpha);
            for beta in 0..l {
                if b[beta].is_zero() {
                    continue;
                }
                let ab = &a[alpha] * &b[beta];
                let db = self.spec.dual(beta);
                for (mu, slot) in out.iter_mut().enumerate() {
                    let s = self.spec.three_point(da, db, mu);
                    if s != 0 {
                        *slot += &ab * BigInt::from(s);
                    }
                }
            }
        }
        out
    }

    /// `Σ_λ F_A(λ) F_B(λ')`.
    fn close(&self, a: &Vector, b: &Vector) -> BigInt {
        (0..self.l())
            .map(|lam| &a[lam] * &b[self.spec.dual(lam)])
            .sum()
    }

    /// Vector of an empty subtree: the one-point genus-zero rank `N(μ) = δ(μ, vacuum)`.
    fn empty(&self) -> Vector {
        let mut v = vec![BigInt::zero(); self.l()];
        v[self.spec.vacuum()] = BigInt::from(1);
        v
    }

    fn caterpillar_vector(&self, pieces: &[Piece]) -> Vector {
        let mut iter = pieces.iter();
        let Some(&first) = iter.next() else {
            return self.empty();
        };
        iter.fold(self.piece(first), |acc, &p| self.join(&acc, &self.piece(p)))
    }

    fn balanced_vector(&self, legs: &[usize]) -> Vector {
        match legs {
            [] => self.empty(),
            [x] => self.leg(*x),
            _ => {
                let (left, right) = legs.split_at(legs.len() / 2);
                self.join(&self.balanced_vector(left), &self.balanced_vector(right))
            }
        }
    }
}

/// Pads with vacuum legs until the graph has a root edge and `2g - 2 + n > 0`.
fn padded_legs(spec: &VoaSpec, ins: &Insertion, genus: usize) -> Vec<usize> {
    let mut legs = ins.indices();
    while legs.len() + genus < 2 || 2 * genus + legs.len() <= 2 {
        legs.push(spec.vacuum());
    }
    legs
}

/// Left-deep chain over the legs followed by `genus` handles.
pub fn rank_caterpillar(spec: &VoaSpec, ins: &Insertion, genus: usize) -> BigInt {
    let glue = Glue { spec };
    let mut pieces: Vec<Piece> = padded_legs(spec, ins, genus)
        .into_iter()
        .map(Piece::Leg)
        .collect();
    pieces.extend(std::iter::repeat_n(Piece::Handle, genus));
    let last = pieces.pop().expect("at least two pieces");
    glue.close(&glue.caterpillar_vector(&pieces), &glue.piece(last))
}

/// Cuts every handle open into a pair of legs `(λ, λ')`, sums over the labels outside, and
/// evaluates each genus-zero term on a balanced binary tree with the legs reversed.
pub fn rank_balanced(spec: &VoaSpec, ins: &Insertion, genus: usize) -> BigInt {
    let glue = Glue { spec };
    let l = spec.len();
    let mut base = padded_legs(spec, ins, genus);
    base.reverse();
    let mut total = BigInt::zero();
    let mut labels = vec![0usize; genus];
    loop {
        let mut legs = base.clone();
        for &lam in &labels {
            legs.push(lam);
            legs.push(spec.dual(lam));
        }
        let (left, right) = legs.split_at(legs.len() / 2);
        total += glue.close(&glue.balanced_vector(left), &glue.balanced_vector(right));
        // Advance the handle labels like an odometer.
        let mut k = 0;
        loop {
            if k == genus {
                return total;
            }
            labels[k] += 1;
            if labels[k] < l {
                break;
            }
            labels[k] = 0;
            k += 1;
        }
    }
}

/// Rank by state sum; both decompositions are evaluated and must agree.
pub fn rank_oracle(spec: &VoaSpec, ins: &Insertion, genus: usize) -> Result<BigInt> {
    let caterpillar = rank_caterpillar(spec, ins, genus);
    let balanced = rank_balanced(spec, ins, genus);
    if caterpillar != balanced {
        return Err(Error::OracleMismatch {
            caterpillar: caterpillar.to_string(),
            balanced: balanced.to_string(),
        });
    }
    Ok(caterpillar)
}

/// FA-matrix by state sum: entry `(i, j)` is the rank with extra legs `W_i` and `W_j'`.
pub fn oracle_fa_matrix(spec: &VoaSpec, ins: &Insertion, genus: usize) -> IntMatrix {
    let glue = Glue { spec };
    let mut pieces: Vec<Piece> = ins.indices().into_iter().map(Piece::Leg).collect();
    pieces.extend(std::iter::repeat_n(Piece::Handle, genus));
    let f = glue.caterpillar_vector(&pieces);
    IntMatrix::from_fn(spec.len(), |i, j| {
        let dj = spec.dual(j);
        (0..spec.len())
            .map(|alpha| &f[alpha] * BigInt::from(spec.three_point(spec.dual(alpha), i, dj)))
            .sum()
    })
}
