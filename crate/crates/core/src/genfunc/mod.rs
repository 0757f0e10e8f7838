//! Generating functions of rank sequences along an arithmetic progression of insertions.
//!
//! The ranks `rank(β + (n + 3)α, g; i, j)` for `n = 0, 1, …` are the Maclaurin coefficients of
//! the `(i, j)` entry of `P · A³ · (Id − A z)⁻¹` with `P` the FA-matrix of `β` at genus `g` and
//! `A` the genus-zero FA-matrix of `α`. That entry is a rational function with integer
//! coefficients, computed here exactly via Cramer's rule over `Z[z]`.

mod poly;
mod ratfunc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use poly::Poly;
pub use ratfunc::{rf_equal, RationalFunction};

use crate::error::{Error, Result};
use crate::fusion::{FaMatrix, Insertion, RankEngine};
use crate::matrix::IntMatrix;
use crate::rational::Rational;

/// Determinant over `Z[z]` by fraction-free (Bareiss) elimination with row pivoting.
pub fn poly_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// `Id − A z` as a matrix of polynomials.
fn id_minus_z(step: &IntMatrix) -> Vec<Vec<Poly>> {
    let l = step.size();
    (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let one = if i == j { BigInt::one() } else { BigInt::zero() };
                    Poly::new(vec![one, -step.get(i, j)])
                })
                .collect()
        })
        .collect()
}

/// `det(Id − A z)`.
pub fn characteristic_denominator(step: &IntMatrix) -> Poly {
    poly_det(id_minus_z(step))
}

/// Entry `(i, j)` of `prefix · step³ · (Id − step·z)⁻¹` as a canonical rational function.
pub fn resolvent_entry(
    prefix: &IntMatrix,
    step: &IntMatrix,
    i: usize,
    j: usize,
) -> Result<RationalFunction> {
    let l = step.size();
    if prefix.size() != l {
        return Err(Error::DimensionMismatch(format!(
            "prefix is {0}x{0}, step is {l}x{l}",
            prefix.size()
        )));
    }
    for idx in [i, j] {
        if idx >= l {
            return Err(Error::IndexOutOfRange { index: idx, len: l });
        }
    }
    let p = prefix.checked_mul(&step.pow(3))?;
    let a = id_minus_z(step);
    let den = poly_det(a.clone());
    // (P · adj A)_{ij} is det A with row j replaced by row i of P.
    let mut replaced = a;
    replaced[j] = p.row(i).iter().map(|c| Poly::constant(c.clone())).collect();
    let num = poly_det(replaced);
    RationalFunction::new(num, den)
}

/// Generating function `Σ_n rank(deviation + (n + 3)·step, genus; W_i, W_j') z^n`.
pub fn indexing_function(
    engine: &RankEngine,
    deviation: &Insertion,
    step: &Insertion,
    i: usize,
    j: usize,
    genus: usize,
) -> Result<RationalFunction> {
    if step.is_empty() {
        return Err(Error::EmptyStep);
    }
    let prefix = engine.fa_matrix(deviation, genus)?;
    let step = engine.fa_matrix(step, 0)?;
    resolvent_entry(&prefix.matrix, &step.matrix, i, j)
}

/// Like [`resolvent_entry`] on tagged FA-matrices.
pub fn resolvent_entry_fa(
    prefix: &FaMatrix,
    step: &FaMatrix,
    i: usize,
    j: usize,
) -> Result<RationalFunction> {
    resolvent_entry(&prefix.matrix, &step.matrix, i, j)
}

/// Coefficient of `z^n` in the expansion at zero.
pub fn series_coeff(rf: &RationalFunction, n: usize) -> Result<Rational> {
    rf.series_coeff(n)
}

/// `1 / (−z − 1 / (−z − … − 1 / (−z + bottom)))` with `layers` copies of `−z`.
pub fn continued_fraction(layers: usize, bottom: i64) -> Result<RationalFunction> {
    if layers == 0 {
        return Err(Error::ZeroLayers);
    }
    let minus_z = RationalFunction::from_poly(Poly::from_i64s(&[0, -1]));
    let mut t = RationalFunction::from_poly(Poly::from_i64s(&[bottom, -1]));
    for _ in 1..layers {
        t = &minus_z - &t.recip().expect("partial denominators never vanish");
    }
    Ok(t.recip().expect("continued fraction is nonzero"))
}

/// Generating function of `rank(W_min^(n+3))` in genus zero for `V_{2,2l+1}`, as an `l`-layer
/// continued fraction whose innermost term is `−z + 1` for odd `l` and `−z − 1` for even `l`.
pub fn virasoro_boundary_cf(l: usize) -> Result<RationalFunction> {
    let bottom = if l % 2 == 1 { 1 } else { -1 };
    continued_fraction(l, bottom)
}
