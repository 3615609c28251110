//! First stage of the boxed algorithm: per-box shortest-path signatures and
//! the value tables that make any stored path cost an `O(1)` lookup.

mod cache;
mod direct;
mod faithful;
mod fredman;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::scalar::{Ext, Penalized, Scalar};
use crate::staircase::{BoxSignature, PackedPath, SignAssignment};

pub use cache::{fingerprint, load_cache, save_cache, CACHE_MAGIC, CACHE_VERSION};
pub use direct::preprocess_direct;
pub use faithful::{
    build_guess_points, preprocess_faithful, preprocess_faithful_with, GuessPointBatch, GuessSpace,
};
pub use fredman::{col_value, compare_paths_fredman, row_value};

/// Interned sign assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaId(pub u32);

/// Per-box signatures, deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureStore {
    g: usize,
    s_rows: usize,
    s_cols: usize,
    unique: Vec<BoxSignature>,
    sigma_of: Vec<SigmaId>,
    sigmas: Vec<SignAssignment>,
    index: Vec<u32>,
}

impl SignatureStore {
    pub fn g(&self) -> usize {
        self.g
    }

    pub fn s_rows(&self) -> usize {
        self.s_rows
    }

    pub fn s_cols(&self) -> usize {
        self.s_cols
    }

    /// Number of distinct signatures actually stored.
    pub fn unique_count(&self) -> usize {
        self.unique.len()
    }

    fn slot(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || j == 0 || i > self.s_rows || j > self.s_cols {
            return Err(Error::PreprocessIncomplete(format!(
                "no signature for box ({i}, {j})"
            )));
        }
        Ok(self.index[(i - 1) * self.s_cols + (j - 1)] as usize)
    }

    pub fn signature(&self, i: usize, j: usize) -> Result<&BoxSignature> {
        Ok(&self.unique[self.slot(i, j)?])
    }

    pub fn sigma_id(&self, i: usize, j: usize) -> Result<SigmaId> {
        Ok(self.sigma_of[self.slot(i, j)?])
    }

    pub fn sigma(&self, id: SigmaId) -> &SignAssignment {
        &self.sigmas[id.0 as usize]
    }

    /// Signatures of every box in row-major order.
    pub fn per_box(&self) -> impl Iterator<Item = &BoxSignature> {
        self.index.iter().map(|&k| &self.unique[k as usize])
    }
}

/// Incremental builder that interns signatures and sign assignments.
pub(crate) struct StoreBuilder {
    store: SignatureStore,
    sig_ids: FxHashMap<BoxSignature, u32>,
    sigma_ids: FxHashMap<SignAssignment, SigmaId>,
}

impl StoreBuilder {
    pub(crate) fn new(g: usize, s_rows: usize, s_cols: usize) -> Self {
        StoreBuilder {
            store: SignatureStore {
                g,
                s_rows,
                s_cols,
                unique: Vec::new(),
                sigma_of: Vec::new(),
                sigmas: Vec::new(),
                index: Vec::with_capacity(s_rows * s_cols),
            },
            sig_ids: FxHashMap::default(),
            sigma_ids: FxHashMap::default(),
        }
    }

    pub(crate) fn intern_sigma(&mut self, sigma: &SignAssignment) -> SigmaId {
        if let Some(&id) = self.sigma_ids.get(sigma) {
            return id;
        }
        let id = SigmaId(self.store.sigmas.len() as u32);
        self.store.sigmas.push(sigma.clone());
        self.sigma_ids.insert(sigma.clone(), id);
        id
    }

    /// Appends the next box in row-major order.
    pub(crate) fn push(&mut self, sig: BoxSignature) -> SigmaId {
        if let Some(&k) = self.sig_ids.get(&sig) {
            self.store.index.push(k);
            return self.store.sigma_of[k as usize];
        }
        let sigma = self.intern_sigma(&sig.sigma);
        let k = self.store.unique.len() as u32;
        self.store.unique.push(sig.clone());
        self.store.sigma_of.push(sigma);
        self.sig_ids.insert(sig, k);
        self.store.index.push(k);
        sigma
    }

    pub(crate) fn finish(self) -> SignatureStore {
        debug_assert_eq!(
            self.store.index.len(),
            self.store.s_rows * self.store.s_cols
        );
        self.store
    }
}

/// Rows-values and columns-values of stored `(sigma, path)` keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValueTables<S> {
    rows: Table<S>,
    cols: Table<S>,
}

type Table<S> = FxHashMap<(SigmaId, PackedPath, u32), Penalized<S>>;

impl<S: Scalar> ValueTables<S> {
    pub fn new() -> Self {
        ValueTables {
            rows: FxHashMap::default(),
            cols: FxHashMap::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len() + self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() && self.cols.is_empty()
    }

    pub fn insert_row(&mut self, sigma: SigmaId, path: PackedPath, i: usize, v: Penalized<S>) {
        self.rows.insert((sigma, path, i as u32), v);
    }

    pub fn insert_col(&mut self, sigma: SigmaId, path: PackedPath, j: usize, v: Penalized<S>) {
        self.cols.insert((sigma, path, j as u32), v);
    }

    pub fn has_row(&self, sigma: SigmaId, path: PackedPath, i: usize) -> bool {
        self.rows.contains_key(&(sigma, path, i as u32))
    }

    pub fn has_col(&self, sigma: SigmaId, path: PackedPath, j: usize) -> bool {
        self.cols.contains_key(&(sigma, path, j as u32))
    }

    pub fn row(&self, sigma: SigmaId, path: PackedPath, i: usize) -> Result<&Penalized<S>> {
        self.rows.get(&(sigma, path, i as u32)).ok_or_else(|| {
            Error::Lookup(format!(
                "rows-value of {path:?} under sigma {} for group {i}",
                sigma.0
            ))
        })
    }

    pub fn col(&self, sigma: SigmaId, path: PackedPath, j: usize) -> Result<&Penalized<S>> {
        self.cols.get(&(sigma, path, j as u32)).ok_or_else(|| {
            Error::Lookup(format!(
                "columns-value of {path:?} under sigma {} for group {j}",
                sigma.0
            ))
        })
    }

    pub(crate) fn entries(&self) -> (&Table<S>, &Table<S>) {
        (&self.rows, &self.cols)
    }
}

/// Counters gathered while preprocessing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PreprocessStats {
    /// Guesses tried (faithful mode only).
    pub guesses: u64,
    /// Dominating pairs reported by the dominance engine over all guesses.
    pub dominance_pairs_reported: u64,
    /// Boxes that received their signature from a dominating pair.
    pub accepted_pairs: u64,
}

/// Output of either preprocessing mode.
#[derive(Clone, Debug)]
pub struct Preprocessed<S> {
    pub signatures: SignatureStore,
    pub tables: ValueTables<S>,
    pub stats: PreprocessStats,
}

/// Stored shortest path of box `(i, j)` for admissible pair `pair_index`.
pub fn query_shortest_path(
    signatures: &SignatureStore,
    i: usize,
    j: usize,
    pair_index: usize,
) -> Result<PackedPath> {
    let sig = signatures.signature(i, j)?;
    sig.paths.get(pair_index).copied().ok_or_else(|| {
        Error::Input(format!(
            "pair index {pair_index} out of range (box has {} pairs)",
            sig.paths.len()
        ))
    })
}

/// `V_row[i] - V_col[j]` for the key `(sigma, path)`.
pub fn query_path_cost<S: Scalar>(
    tables: &ValueTables<S>,
    sigma: SigmaId,
    i: usize,
    j: usize,
    path: PackedPath,
) -> Result<Ext<S>> {
    let row = tables.row(sigma, path, i)?;
    let col = tables.col(sigma, path, j)?;
    Ok((row.clone() - col.clone()).to_ext())
}
