//! Optional on-disk cache of fusion and averaging matrices, keyed by a spec's content hash.
//!
//! Layout: `b"FARC"`, format version (`u32` LE), module count (`u32` LE), then the `l` fusion
//! matrices followed by the averaging matrix, row-major, each entry a `u32` byte length and
//! the little-endian two's-complement bytes of the integer. Files with another version are
//! ignored and overwritten.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::fusion::RankEngine;
use crate::matrix::IntMatrix;
use crate::spec::VoaSpec;

pub const CACHE_ENV: &str = "FA_RANK_CACHE_DIR";
pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 4] = b"FARC";

/// The cache directory named by `FA_RANK_CACHE_DIR`, if set and nonempty.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

pub fn cache_path(dir: &Path, spec: &VoaSpec) -> PathBuf {
    dir.join(format!("{}.farc", spec.content_hash()))
}

pub fn encode(fusion: &[IntMatrix], averaging: &IntMatrix) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(averaging.size() as u32).to_le_bytes());
    for m in fusion.iter().chain(std::iter::once(averaging)) {
        for row in m.rows() {
            for x in row {
                let bytes = x.to_signed_bytes_le();
                out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
                out.extend_from_slice(&bytes);
            }
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Option<&[u8]> {
        if self.bytes.len() < n {
            return None;
        }
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        Some(head)
    }

    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().ok()?))
    }

    fn matrix(&mut self, l: usize) -> Option<IntMatrix> {
        let mut entries = Vec::with_capacity(l * l);
        for _ in 0..l * l {
            let len = self.u32()? as usize;
            entries.push(BigInt::from_signed_bytes_le(self.take(len)?));
        }
        Some(IntMatrix::from_fn(l, |i, j| entries[i * l + j].clone()))
    }
}

/// Decodes a cache file for `modules` modules; `None` on any mismatch or truncation.
pub fn decode(bytes: &[u8], modules: usize) -> Option<(Vec<IntMatrix>, IntMatrix)> {
    let mut r = Reader { bytes };
    if r.take(4)? != MAGIC || r.u32()? != FORMAT_VERSION || r.u32()? as usize != modules {
        return None;
    }
    let fusion = (0..modules)
        .map(|_| r.matrix(modules))
        .collect::<Option<Vec<_>>>()?;
    let averaging = r.matrix(modules)?;
    r.bytes.is_empty().then_some((fusion, averaging))
}

/// A rank engine for `spec`, seeded from `dir` when a valid cache file exists. On a miss the
/// matrices are computed and written back; write failures are ignored.
pub fn cached_engine(spec: VoaSpec, dir: Option<&Path>) -> RankEngine {
    let Some(dir) = dir else {
        return RankEngine::new(spec);
    };
    let path = cache_path(dir, &spec);
    if let Some((fusion, averaging)) = std::fs::read(&path)
        .ok()
        .and_then(|bytes| decode(&bytes, spec.len()))
    {
        return RankEngine::with_precomputed(spec, fusion, averaging);
    }
    let engine = RankEngine::new(spec);
    let bytes = encode(engine.fusion_matrices(), engine.averaging_raw());
    if std::fs::create_dir_all(dir).is_ok() {
        let tmp = path.with_extension("tmp");
        if std::fs::write(&tmp, bytes).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
    engine
}
