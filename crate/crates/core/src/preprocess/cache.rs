//! Binary dump of preprocessing results.
//!
//! All integers are little-endian. Layout:
//!
//! ```text
//! magic     8 bytes  "BOXDTWPP"
//! version   u32
//! arith     u8       scalar mode tag
//! g         u32
//! s_rows    u32
//! s_cols    u32
//! print     32 bytes SHA-256 fingerprint of inputs and parameters
//! stats     3 x u64  guesses, dominance pairs reported, accepted pairs
//! sigmas    u32 count, then g*g code bytes each
//! sigs      u32 count, u32 paths per signature, then per signature:
//!           u32 sigma id, u64 per path
//! index     s_rows*s_cols x u32, row-major
//! rows      u32 count, then per entry: u32 sigma, u64 path, u32 group,
//!           i64 infinities, scalar
//! cols      same as rows
//! ```

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::GridCostModel;
use crate::scalar::{Penalized, Scalar};
use crate::staircase::{BoxGrid, BoxSignature, PackedPath, SignAssignment};

use super::{PreprocessStats, Preprocessed, SigmaId, SignatureStore, ValueTables};

pub const CACHE_MAGIC: &[u8; 8] = b"BOXDTWPP";
pub const CACHE_VERSION: u32 = 1;

/// Digest identifying the inputs and parameters a cache was built for.
pub fn fingerprint<S: Scalar>(grid: &BoxGrid<'_, S>, model: &GridCostModel<S>) -> [u8; 32] {
    let mut buf = Vec::new();
    buf.push(S::MODE.tag());
    buf.push(u8::from(model.is_ged()));
    buf.push(model.metric().kind().tag());
    buf.extend_from_slice(&(model.metric().dim() as u32).to_le_bytes());
    if let Some(rho) = model.rho() {
        rho.write_le(&mut buf);
    }
    buf.extend_from_slice(&(grid.g() as u32).to_le_bytes());
    for seq in [grid.a(), grid.b()] {
        buf.extend_from_slice(&(seq.len() as u64).to_le_bytes());
        for v in seq.raw_coords() {
            v.write_le(&mut buf);
        }
    }
    Sha256::digest(&buf).into()
}

fn put_u32(out: &mut Vec<u8>, v: usize) {
    out.extend_from_slice(&(v as u32).to_le_bytes());
}

fn put_table<S: Scalar>(
    out: &mut Vec<u8>,
    table: &rustc_hash::FxHashMap<(SigmaId, PackedPath, u32), Penalized<S>>,
) {
    let mut keys: Vec<_> = table.keys().copied().collect();
    keys.sort_unstable();
    put_u32(out, keys.len());
    for key in keys {
        let v = &table[&key];
        out.extend_from_slice(&key.0 .0.to_le_bytes());
        out.extend_from_slice(&key.1 .0.to_le_bytes());
        out.extend_from_slice(&key.2.to_le_bytes());
        out.extend_from_slice(&v.infinities.to_le_bytes());
        v.finite.write_le(out);
    }
}

/// Serializes `pre` tagged with `print`.
pub fn save_cache<S: Scalar>(pre: &Preprocessed<S>, print: &[u8; 32]) -> Vec<u8> {
    let st = &pre.signatures;
    let mut out = Vec::new();
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    out.push(S::MODE.tag());
    put_u32(&mut out, st.g);
    put_u32(&mut out, st.s_rows);
    put_u32(&mut out, st.s_cols);
    out.extend_from_slice(print);
    for v in [
        pre.stats.guesses,
        pre.stats.dominance_pairs_reported,
        pre.stats.accepted_pairs,
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    put_u32(&mut out, st.sigmas.len());
    for s in &st.sigmas {
        out.extend_from_slice(s.codes());
    }
    put_u32(&mut out, st.unique.len());
    put_u32(&mut out, st.unique.first().map_or(0, |s| s.paths.len()));
    for (sig, id) in st.unique.iter().zip(&st.sigma_of) {
        out.extend_from_slice(&id.0.to_le_bytes());
        for p in &sig.paths {
            out.extend_from_slice(&p.0.to_le_bytes());
        }
    }
    for &k in &st.index {
        out.extend_from_slice(&k.to_le_bytes());
    }
    let (rows, cols) = pre.tables.entries();
    put_table(&mut out, rows);
    put_table(&mut out, cols);
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Cache(format!("truncated at byte {}", self.pos)))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    fn scalar<S: Scalar>(&mut self) -> Result<S> {
        let (v, used) = S::read_le(&self.bytes[self.pos..])
            .ok_or_else(|| Error::Cache(format!("bad scalar at byte {}", self.pos)))?;
        self.pos += used;
        Ok(v)
    }

    fn table<S: Scalar>(
        &mut self,
        mut insert: impl FnMut(SigmaId, PackedPath, usize, Penalized<S>),
    ) -> Result<()> {
        let n = self.u32()?;
        for _ in 0..n {
            let sigma = SigmaId(self.u32()?);
            let path = PackedPath(self.u64()?);
            let group = self.u32()? as usize;
            let infinities = self.u64()? as i64;
            let finite = self.scalar()?;
            insert(sigma, path, group, Penalized { infinities, finite });
        }
        Ok(())
    }
}

/// Reads a cache produced by [`save_cache`], rejecting it unless the
/// fingerprint and scalar mode match.
pub fn load_cache<S: Scalar>(bytes: &[u8], print: &[u8; 32]) -> Result<Preprocessed<S>> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(8)? != CACHE_MAGIC {
        return Err(Error::Cache("not a preprocessing cache".into()));
    }
    let version = r.u32()?;
    if version != CACHE_VERSION {
        return Err(Error::Cache(format!("unsupported cache version {version}")));
    }
    if r.u8()? != S::MODE.tag() {
        return Err(Error::Cache(
            "cache was built for a different arithmetic mode".into(),
        ));
    }
    let g = r.u32()? as usize;
    let s_rows = r.u32()? as usize;
    let s_cols = r.u32()? as usize;
    if r.take(32)? != print {
        return Err(Error::Cache(
            "cache fingerprint does not match the inputs".into(),
        ));
    }
    let stats = PreprocessStats {
        guesses: r.u64()?,
        dominance_pairs_reported: r.u64()?,
        accepted_pairs: r.u64()?,
    };
    let n_sigmas = r.u32()? as usize;
    let mut sigmas = Vec::with_capacity(n_sigmas);
    for _ in 0..n_sigmas {
        sigmas.push(SignAssignment::new(g, r.take(g * g)?.to_vec()));
    }
    let n_unique = r.u32()? as usize;
    let n_paths = r.u32()? as usize;
    let mut unique = Vec::with_capacity(n_unique);
    let mut sigma_of = Vec::with_capacity(n_unique);
    for _ in 0..n_unique {
        let id = r.u32()?;
        let sigma = sigmas
            .get(id as usize)
            .ok_or_else(|| Error::Cache(format!("sigma id {id} out of range")))?
            .clone();
        let paths = (0..n_paths)
            .map(|_| r.u64().map(PackedPath))
            .collect::<Result<Vec<_>>>()?;
        unique.push(BoxSignature { paths, sigma });
        sigma_of.push(SigmaId(id));
    }
    let mut index = Vec::with_capacity(s_rows * s_cols);
    for _ in 0..s_rows * s_cols {
        let k = r.u32()?;
        if k as usize >= n_unique {
            return Err(Error::Cache(format!("signature index {k} out of range")));
        }
        index.push(k);
    }
    let mut tables = ValueTables::new();
    r.table(|s, p, i, v| tables.insert_row(s, p, i, v))?;
    r.table(|s, p, j, v| tables.insert_col(s, p, j, v))?;
    if r.pos != bytes.len() {
        return Err(Error::Cache("trailing bytes after cache payload".into()));
    }
    let signatures = SignatureStore {
        g,
        s_rows,
        s_cols,
        unique,
        sigma_of,
        sigmas,
        index,
    };
    Ok(Preprocessed {
        signatures,
        tables,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Metric;
    use crate::preprocess::preprocess_direct;
    use crate::scalar::Rational;
    use crate::sequence::PointSequence;
    use crate::staircase::decompose;

    #[test]
    fn round_trip() {
        let a = PointSequence::from_scalars("a", vec![1i64, 4, -2, 8, 5]).unwrap();
        let b = PointSequence::from_scalars("b", vec![0i64, 3, 3, 7]).unwrap();
        let grid = decompose(&a, &b, 3).unwrap();
        let model = GridCostModel::ged(Metric::abs1d(), 2).unwrap();
        let pre = preprocess_direct(&grid, &model, false).unwrap();
        let print = fingerprint(&grid, &model);
        let bytes = save_cache(&pre, &print);
        assert_eq!(&bytes[..8], CACHE_MAGIC);
        let back: Preprocessed<i64> = load_cache(&bytes, &print).unwrap();
        assert_eq!(back.signatures, pre.signatures);
        assert_eq!(back.tables, pre.tables);
        assert_eq!(save_cache(&back, &print), bytes);
    }

    #[test]
    fn rejects_mismatch_and_corruption() {
        let a = PointSequence::from_scalars("a", vec![1i64, 4, -2]).unwrap();
        let grid = decompose(&a, &a, 2).unwrap();
        let model = GridCostModel::dtw(Metric::abs1d());
        let pre = preprocess_direct(&grid, &model, false).unwrap();
        let print = fingerprint(&grid, &model);
        let bytes = save_cache(&pre, &print);
        assert!(load_cache::<i64>(&bytes, &[0; 32]).is_err());
        assert!(load_cache::<Rational>(&bytes, &print).is_err());
        assert!(load_cache::<i64>(&bytes[..bytes.len() - 1], &print).is_err());
        let other = GridCostModel::ged(Metric::abs1d(), 1).unwrap();
        assert_ne!(fingerprint(&grid, &other), print);
    }
}
