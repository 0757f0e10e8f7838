//! Square matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A dense square matrix with `BigInt` entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    size: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![BigInt::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        Self { size, entries }
    }

    /// Builds a matrix from small integer rows. Panics if the rows are not square.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let size = rows.len();
        Self::from_fn(size, |i, j| {
            let row = rows[i].as_ref();
            assert_eq!(row.len(), size, "row {i} has wrong length");
            BigInt::from(row[j])
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.size + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.size.max(1)).take(self.size)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn trace(&self) -> BigInt {
        (0..self.size).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            size: self.size,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.size, self.size, other.size, other.size
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::identity(self.size);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Kronecker product, indexed lexicographically: `((a, x), (b, y)) -> A[a][b] * B[x][y]`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.size;
        Self::from_fn(self.size * m, |r, c| {
            self.get(r / m, c / m) * other.get(r % m, c % m)
        })
    }

    /// Reindexes rows and columns: the result has entry `(k, l) = self[order[k]][order[l]]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.size);
        Self::from_fn(self.size, |k, l| self.get(order[k], order[l]).clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    /// If this is a permutation matrix, returns `sigma` with `self[i][sigma[i]] = 1`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.size;
        let mut sigma = Vec::with_capacity(n);
        let mut col_used = vec![false; n];
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                let e = self.get(i, j);
                if e.is_one() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(j);
                } else if !e.is_zero() {
                    return None;
                }
            }
            let j = hit?;
            if std::mem::replace(&mut col_used[j], true) {
                return None;
            }
            sigma.push(j);
        }
        Some(sigma)
    }

    pub fn is_permutation(&self) -> bool {
        self.as_permutation().is_some()
    }

    pub fn permutation(sigma: &[usize]) -> Self {
        let n = sigma.len();
        Self::from_fn(n, |i, j| {
            if sigma[i] == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul_unchecked(other) == other.mul_unchecked(self)
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.rows()
            .map(|r| r.iter().map(|e| e.to_i64()).collect())
            .collect()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on a size mismatch; use [`IntMatrix::checked_mul`] for a fallible product.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix sizes must agree")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.size, rhs.size, "matrix sizes must agree");
        IntMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fibonacci_power() {
        let r = IntMatrix::from_rows(&[[1, 1], [1, 0]]);
        assert_eq!(r.pow(10), IntMatrix::from_rows(&[[89, 55], [55, 34]]));
        assert_eq!(r.pow(0), IntMatrix::identity(2));
        assert_eq!(r.pow(100).get(0, 1).to_string(), "354224848179261915075");
    }

    #[test]
    fn kron_layout() {
        let a = IntMatrix::from_rows(&[[1, 2], [3, 4]]);
        let b = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let k = a.kron(&b);
        assert_eq!(
            k,
            IntMatrix::from_rows(&[[0, 1, 0, 2], [1, 0, 2, 0], [0, 3, 0, 4], [3, 0, 4, 0]])
        );
    }

    #[test]
    fn permutation_detection() {
        assert!(IntMatrix::identity(3).is_permutation());
        assert!(!IntMatrix::from_rows(&[[1, 1], [1, 0]]).is_permutation());
        assert!(!IntMatrix::from_rows(&[[1, 0], [1, 0]]).is_permutation());
        assert!(!IntMatrix::from_rows(&[[2, 0], [0, 1]]).is_permutation());
    }

    #[test]
    fn mismatched_sizes_error() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::identity(3);
        assert!(matches!(a.checked_mul(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn small_involutions_exhaustive() {
        // Every 3x3 matrix with entries in {0, 1, 2} squaring to the identity.
        for code in 0..3usize.pow(9) {
            let m = IntMatrix::from_fn(3, |i, j| BigInt::from((code / 3usize.pow((3 * i + j) as u32)) % 3));
            if (&m * &m).is_identity() {
                assert!(m.is_permutation(), "{m:?}");
            }
        }
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        // Non-negative integer involutions are permutation matrices.
        #[test]
        fn nonnegative_involutions_are_permutations(
            sigma in perm_strategy(6),
            tau in perm_strategy(6),
        ) {
            // Build an involution by conjugating a product of disjoint transpositions.
            let mut inv: Vec<usize> = (0..6).collect();
            for pair in sigma.chunks(2).take(2) {
                inv.swap(pair[0], pair[1]);
            }
            let p = IntMatrix::permutation(&tau);
            let a = &(&p * &IntMatrix::permutation(&inv)) * &p.transpose();
            prop_assert!((&a * &a).is_identity());
            prop_assert!(a.is_nonnegative());
            prop_assert!(a.is_permutation());
        }

        #[test]
        fn kron_is_multiplicative(
            a in proptest::collection::vec(0i64..4, 4),
            b in proptest::collection::vec(0i64..4, 9),
            c in proptest::collection::vec(0i64..4, 4),
            d in proptest::collection::vec(0i64..4, 9),
        ) {
            let m = |v: &Vec<i64>, n: usize| IntMatrix::from_fn(n, |i, j| BigInt::from(v[i * n + j]));
            let (a, b, c, d) = (m(&a, 2), m(&b, 3), m(&c, 2), m(&d, 3));
            prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
        }
    }
}
