//! FA-matrices and the matrix rank formula.
//!
//! For an insertion multiset `S` and genus `g`, the FA-matrix has entry `(i, j)` equal to
//! the rank of the bundle on the moduli of genus `g` curves with markings `S, W_i, W_j'`.
//! It factors as the product of the genus-zero fusion matrices of the inserted modules
//! times the `g`-th power of the averaging matrix.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::spec::VoaSpec;

/// A multiset of module indices, stored as per-module counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    counts: Vec<u32>,
}

impl Insertion {
    pub fn empty(modules: usize) -> Self {
        Self {
            counts: vec![0; modules],
        }
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    /// Collects an ordered tuple into its multiset.
    pub fn from_indices(modules: usize, indices: &[usize]) -> Result<Self> {
        let mut counts = vec![0; modules];
        for &i in indices {
            if i >= modules {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: modules,
                });
            }
            counts[i] += 1;
        }
        Ok(Self { counts })
    }

    pub fn single(modules: usize, index: usize) -> Self {
        let mut counts = vec![0; modules];
        counts[index] = 1;
        Self { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn modules(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, index: usize) -> u32 {
        self.counts[index]
    }

    /// Total number of marked points.
    pub fn len(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn with_added(&self, index: usize, times: u32) -> Self {
        let mut counts = self.counts.clone();
        counts[index] += times;
        Self { counts }
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.modules(), other.modules());
        Self {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self + times * other`.
    pub fn add_scaled(&self, other: &Self, times: u32) -> Self {
        Self {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + times * b)
                .collect(),
        }
    }

    /// Indices with multiplicity, in increasing index order.
    pub fn indices(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect()
    }

    fn check(&self, modules: usize) -> Result<()> {
        if self.counts.len() != modules {
            return Err(Error::DimensionMismatch(format!(
                "insertion over {} modules used with a spec of {modules}",
                self.counts.len()
            )));
        }
        Ok(())
    }

    /// Every multiset over `modules` labels with at most `max_len` points.
    pub fn all_up_to(modules: usize, max_len: usize) -> Vec<Insertion> {
        fn rec(i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Insertion>) {
            if i == cur.len() {
                out.push(Insertion::from_counts(cur.clone()));
                return;
            }
            for c in 0..=left {
                cur[i] = c as u32;
                rec(i + 1, left - c, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        rec(0, max_len, &mut vec![0; modules], &mut out);
        out
    }
}

/// A square FA-matrix tagged with the genus and insertion multiset it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaMatrix {
    pub matrix: IntMatrix,
    pub genus: usize,
    pub insertions: Insertion,
}

impl FaMatrix {
    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.matrix.get(i, j)
    }

    pub fn trace(&self) -> BigInt {
        self.matrix.trace()
    }
}

impl fmt::Display for FaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// Multiplication table of the fusion group of a pointed spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub identity: usize,
    /// `mul[a][b]` is the index of `a · b`.
    pub mul: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul[a][b] == self.identity)
            .expect("group element has an inverse")
    }

    pub fn product(&self, elements: &[usize]) -> usize {
        elements
            .iter()
            .fold(self.identity, |acc, &x| self.mul[acc][x])
    }
}

const FA_MEMO_LIMIT: usize = 1 << 16;

/// A spec together with memoized fusion and averaging matrices.
///
/// All queries take `&self`; caches are populated lazily and are safe to share between
/// threads.
pub struct RankEngine {
    spec: Arc<VoaSpec>,
    fusion: OnceLock<Vec<IntMatrix>>,
    averaging: OnceLock<IntMatrix>,
    fa_memo: Mutex<HashMap<(Insertion, usize), IntMatrix>>,
}

impl fmt::Debug for RankEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RankEngine")
            .field("modules", &self.spec.len())
            .finish_non_exhaustive()
    }
}

impl RankEngine {
    pub fn new(spec: VoaSpec) -> Self {
        Self::from_arc(Arc::new(spec))
    }

    pub fn from_arc(spec: Arc<VoaSpec>) -> Self {
        Self {
            spec,
            fusion: OnceLock::new(),
            averaging: OnceLock::new(),
            fa_memo: Mutex::new(HashMap::new()),
        }
    }

    /// Seeds the caches with precomputed matrices, e.g. from an on-disk cache.
    pub fn with_precomputed(spec: VoaSpec, fusion: Vec<IntMatrix>, averaging: IntMatrix) -> Self {
        let engine = Self::new(spec);
        let _ = engine.fusion.set(fusion);
        let _ = engine.averaging.set(averaging);
        engine
    }

    pub fn spec(&self) -> &VoaSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> Arc<VoaSpec> {
        Arc::clone(&self.spec)
    }

    pub fn modules(&self) -> usize {
        self.spec.len()
    }

    pub(crate) fn fusion_matrices(&self) -> &[IntMatrix] {
        self.fusion.get_or_init(|| {
            (0..self.spec.len())
                .map(|w| self.spec.raw_fusion_matrix(w))
                .collect()
        })
    }

    pub(crate) fn averaging_raw(&self) -> &IntMatrix {
        self.averaging.get_or_init(|| {
            let fusion = self.fusion_matrices();
            let spec = &self.spec;
            let mut acc = IntMatrix::zeros(spec.len());
            for w in 0..spec.len() {
                let weight = fusion[spec.dual(w)].trace();
                acc = &acc + &fusion[w].scale(&weight);
            }
            acc
        })
    }

    /// Genus-zero FA-matrix of a single module: entry `(i, j) = S(w, i, j')`.
    pub fn fusion_matrix(&self, w: usize) -> Result<FaMatrix> {
        self.spec.check_index(w)?;
        Ok(FaMatrix {
            matrix: self.fusion_matrices()[w].clone(),
            genus: 0,
            insertions: Insertion::single(self.modules(), w),
        })
    }

    /// `Σ_w Tr(R_{w'}) R_w`, the genus-one FA-matrix with no insertions.
    pub fn averaging_matrix(&self) -> FaMatrix {
        FaMatrix {
            matrix: self.averaging_raw().clone(),
            genus: 1,
            insertions: Insertion::empty(self.modules()),
        }
    }

    fn fa_raw(&self, ins: &Insertion, genus: usize) -> Result<IntMatrix> {
        ins.check(self.modules())?;
        let key = (ins.clone(), genus);
        if let Some(m) = self.fa_memo.lock().expect("memo lock").get(&key) {
            return Ok(m.clone());
        }
        let fusion = self.fusion_matrices();
        let mut acc = IntMatrix::identity(self.modules());
        for (w, &count) in ins.counts().iter().enumerate() {
            if count > 0 {
                acc = &acc * &fusion[w].pow(u64::from(count));
            }
        }
        if genus > 0 {
            acc = &acc * &self.averaging_raw().pow(genus as u64);
        }
        let mut memo = self.fa_memo.lock().expect("memo lock");
        if memo.len() >= FA_MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(key, acc.clone());
        Ok(acc)
    }

    /// FA-matrix of an insertion multiset at a given genus.
    pub fn fa_matrix(&self, ins: &Insertion, genus: usize) -> Result<FaMatrix> {
        Ok(FaMatrix {
            matrix: self.fa_raw(ins, genus)?,
            genus,
            insertions: ins.clone(),
        })
    }

    /// Rank of the bundle of coinvariants of genus `genus` with the given insertions.
    ///
    /// For positive genus this is the trace of the genus `g - 1` FA-matrix; in genus zero it
    /// is the `(vacuum, vacuum')` entry, which accounts for two extra vacuum insertions.
    pub fn rank(&self, ins: &Insertion, genus: usize) -> Result<BigInt> {
        if genus == 0 {
            let v = self.spec.vacuum();
            Ok(self.fa_raw(ins, 0)?.get(v, self.spec.dual(v)).clone())
        } else {
            Ok(self.fa_raw(ins, genus - 1)?.trace())
        }
    }

    /// Like [`RankEngine::rank`], but rejecting unstable `(g, n)`.
    pub fn rank_stable(&self, ins: &Insertion, genus: usize) -> Result<BigInt> {
        check_stable(genus, ins.len())?;
        self.rank(ins, genus)
    }

    /// Rank with two extra markings `W_i` and `W_j'`.
    pub fn rank_with_frame(
        &self,
        ins: &Insertion,
        genus: usize,
        i: usize,
        j: usize,
    ) -> Result<BigInt> {
        self.spec.check_index(i)?;
        self.spec.check_index(j)?;
        Ok(self.fa_raw(ins, genus)?.get(i, j).clone())
    }

    /// Rank for an ordered tuple of module indices.
    pub fn rank_of(&self, indices: &[usize], genus: usize) -> Result<BigInt> {
        self.rank(&Insertion::from_indices(self.modules(), indices)?, genus)
    }

    /// The group table when every fusion matrix is a permutation matrix.
    pub fn is_pointed(&self) -> Option<GroupTable> {
        let l = self.modules();
        let fusion = self.fusion_matrices();
        if !fusion.iter().all(IntMatrix::is_permutation) {
            return None;
        }
        // a · b is the unique c with N_{a,b}^c = 1.
        let mut mul = vec![vec![0; l]; l];
        for a in 0..l {
            for b in 0..l {
                let hits: Vec<usize> = (0..l)
                    .filter(|&c| self.spec.fusion_rule(a, b, c) != 0)
                    .collect();
                match hits.as_slice() {
                    [c] if self.spec.fusion_rule(a, b, *c) == 1 => mul[a][b] = *c,
                    _ => return None,
                }
            }
        }
        Some(GroupTable {
            identity: self.spec.vacuum(),
            mul,
        })
    }

    /// `w ≠ vacuum` and `R_w² = Id`.
    pub fn is_order_two(&self, w: usize) -> Result<bool> {
        self.spec.check_index(w)?;
        if w == self.spec.vacuum() {
            return Ok(false);
        }
        let r = &self.fusion_matrices()[w];
        Ok((r * r).is_identity())
    }
}

/// Errors unless `2g - 2 + n > 0`.
pub fn check_stable(genus: usize, points: usize) -> Result<()> {
    let value = 2 * genus as i64 - 2 + points as i64;
    if value <= 0 {
        Err(Error::Unstable {
            g: genus,
            n: points,
            value,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    fn yang_lee() -> RankEngine {
        RankEngine::new(registry::virasoro(2, 5).unwrap())
    }

    #[test]
    fn yang_lee_fusion_and_averaging() {
        let e = yang_lee();
        let wmin = e.spec().min_weight_module();
        let v = e.spec().vacuum();
        assert_eq!(wmin, 0);
        assert_eq!(v, 1);
        assert_eq!(
            e.fusion_matrix(wmin).unwrap().matrix,
            IntMatrix::from_rows(&[[1, 1], [1, 0]])
        );
        assert!(e.fusion_matrix(v).unwrap().matrix.is_identity());
        // Tr(R_W) R_W + Tr(Id) Id
        assert_eq!(
            e.averaging_matrix().matrix,
            IntMatrix::from_rows(&[[3, 1], [1, 2]])
        );
    }

    #[test]
    fn fa_matrix_examples() {
        let e = yang_lee();
        let ins = Insertion::from_counts(vec![2, 0]);
        assert_eq!(
            e.fa_matrix(&ins, 0).unwrap().matrix,
            IntMatrix::from_rows(&[[2, 1], [1, 1]])
        );
        assert!(e
            .fa_matrix(&Insertion::empty(2), 0)
            .unwrap()
            .matrix
            .is_identity());
    }

    #[test]
    fn ranks() {
        let e = yang_lee();
        // W^3, W^4, W^5, W^6
        let got: Vec<BigInt> = (3..=6)
            .map(|n| e.rank(&Insertion::from_counts(vec![n, 0]), 0).unwrap())
            .collect();
        assert_eq!(got, [1, 2, 3, 5].map(BigInt::from));
        // genus one with a single vacuum: number of modules
        assert_eq!(
            e.rank(&Insertion::from_counts(vec![0, 1]), 1).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            e.rank_with_frame(&Insertion::empty(2), 0, 0, 0).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn index_errors() {
        let e = yang_lee();
        assert!(matches!(
            e.fusion_matrix(2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
        assert!(e.rank_with_frame(&Insertion::empty(2), 0, 0, 5).is_err());
        assert!(e.rank(&Insertion::empty(3), 0).is_err());
        assert!(Insertion::from_indices(2, &[0, 3]).is_err());
    }

    #[test]
    fn strict_stability() {
        let e = yang_lee();
        assert!(matches!(
            e.rank_stable(&Insertion::from_counts(vec![2, 0]), 0),
            Err(Error::Unstable { .. })
        ));
        assert!(e.rank_stable(&Insertion::from_counts(vec![3, 0]), 0).is_ok());
        assert!(e.rank_stable(&Insertion::empty(2), 1).is_err());
        assert!(e.rank_stable(&Insertion::empty(2), 2).is_ok());
    }

    #[test]
    fn pointed_detection() {
        assert!(yang_lee().is_pointed().is_none());
        let holo = RankEngine::new(registry::virasoro(2, 3).unwrap());
        let table = holo.is_pointed().unwrap();
        assert_eq!(table.order(), 1);
        let z3 = RankEngine::new(registry::pointed(&registry::PointedData::cyclic(3)).unwrap());
        let t = z3.is_pointed().unwrap();
        assert_eq!(t.mul[1][1], 2);
        assert_eq!(t.mul[1][2], 0);
        assert_eq!(t.inverse(1), 2);
    }

    #[test]
    fn order_two_modules() {
        let ising = RankEngine::new(registry::virasoro(3, 4).unwrap());
        let wmax = ising.spec().max_weight_module();
        assert!(ising.is_order_two(wmax).unwrap());
        assert!(!ising.is_order_two(ising.spec().vacuum()).unwrap());
        let sl2 = RankEngine::new(registry::affine_sl2(4).unwrap());
        assert!(sl2.is_order_two(4).unwrap());
        assert!(!sl2.is_order_two(2).unwrap());
    }

    #[test]
    fn multiset_enumeration() {
        assert_eq!(Insertion::all_up_to(2, 2).len(), 6);
        assert_eq!(Insertion::all_up_to(3, 4).len(), 35);
    }

    #[test]
    fn engine_is_shareable_across_threads() {
        let e = Arc::new(RankEngine::new(registry::affine_sl2(3).unwrap()));
        let ins = Insertion::from_counts(vec![0, 4, 2, 1]);
        let serial = e.rank(&ins, 3).unwrap();
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let e = Arc::clone(&e);
                let ins = ins.clone();
                std::thread::spawn(move || e.rank(&ins, 3).unwrap())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), serial);
        }
    }
}
