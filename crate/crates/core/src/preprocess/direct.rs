use rayon::prelude::*;

use crate::error::Result;
use crate::model::GridCostModel;
use crate::scalar::Scalar;
use crate::staircase::{shortest_paths_direct, BoxGrid, BoxSignature, PairCatalog};

use super::fredman::{col_value, row_value};
use super::{PreprocessStats, Preprocessed, SigmaId, StoreBuilder, ValueTables};

/// Computes every box signature by in-box dynamic programming.
///
/// With `parallel` set, boxes are solved on the rayon pool; the result is
/// identical either way.
pub fn preprocess_direct<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    parallel: bool,
) -> Result<Preprocessed<S>> {
    grid.check_metric(model.metric())?;
    let catalog = PairCatalog::new(grid.g())?;
    let boxes: Vec<(usize, usize)> = (1..=grid.s_rows())
        .flat_map(|i| (1..=grid.s_cols()).map(move |j| (i, j)))
        .collect();
    let solve = |&(i, j): &(usize, usize)| shortest_paths_direct(grid, model, &catalog, i, j);
    let sigs: Vec<BoxSignature> = if parallel {
        boxes.par_iter().map(solve).collect()
    } else {
        boxes.iter().map(solve).collect()
    };

    let mut builder = StoreBuilder::new(grid.g(), grid.s_rows(), grid.s_cols());
    let mut tables = ValueTables::new();
    for (&(i, j), sig) in boxes.iter().zip(sigs) {
        let sigma = builder.push(sig.clone());
        fill_tables(grid, model, &mut tables, sigma, &sig, i, j);
    }
    Ok(Preprocessed {
        signatures: builder.finish(),
        tables,
        stats: PreprocessStats::default(),
    })
}

pub(crate) fn fill_tables<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    tables: &mut ValueTables<S>,
    sigma: SigmaId,
    sig: &BoxSignature,
    i: usize,
    j: usize,
) {
    for &p in &sig.paths {
        if !tables.has_row(sigma, p, i) {
            tables.insert_row(sigma, p, i, row_value(grid, model, i, p, &sig.sigma));
        }
        if !tables.has_col(sigma, p, j) {
            tables.insert_col(sigma, p, j, col_value(grid, model, j, p, &sig.sigma));
        }
    }
}
