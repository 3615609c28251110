use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::GridCostModel;
use crate::scalar::{Penalized, Scalar};
use crate::staircase::{BoxGrid, Move, PackedPath, SignAssignment};

fn charged<S: Scalar>(model: &GridCostModel<S>, mv: Move) -> bool {
    !model.is_ged() || mv.is_diagonal()
}

/// Rows-value of `path` in group `A_i` under `sigma`: the part of the path
/// cost that depends only on `A_i`, with the GED gap charges folded in.
pub fn row_value<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    i: usize,
    path: PackedPath,
    sigma: &SignAssignment,
) -> Penalized<S> {
    let metric = model.metric();
    let mut acc = Penalized::zero();
    for (mv, (l, m)) in path.steps(grid.g()) {
        if grid.dead_row(model, i, l) {
            acc.infinities += 1;
        }
        if charged(model, mv) {
            acc.finite = acc.finite + metric.signed_form(sigma.code(l, m), grid.a_value(i, l));
        } else if let Some(rho) = model.rho() {
            acc.finite = acc.finite + rho.clone();
        }
    }
    acc
}

/// Columns-value of `path` in group `B_j` under `sigma`.
pub fn col_value<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    j: usize,
    path: PackedPath,
    sigma: &SignAssignment,
) -> Penalized<S> {
    let metric = model.metric();
    let mut acc = Penalized::zero();
    for (mv, (l, m)) in path.steps(grid.g()) {
        if grid.dead_col(model, j, m) {
            acc.infinities -= 1;
        }
        if charged(model, mv) {
            acc.finite = acc.finite + metric.signed_form(sigma.code(l, m), grid.b_value(j, m));
        }
    }
    acc
}

/// Orders `cost(p)` against `cost(q)` in box `(i, j)` by comparing a sum over
/// `A_i` alone with a sum over `B_j` alone.
///
/// Exact whenever `sigma` is correct for the box. Infinite costs compare by
/// their number of forbidden coordinates first.
pub fn compare_paths_fredman<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    (i, j): (usize, usize),
    p: PackedPath,
    q: PackedPath,
    sigma: &SignAssignment,
) -> Result<Ordering> {
    let g = grid.g();
    if p.start() != q.start() || p.end(g) != q.end(g) {
        return Err(Error::Input(format!(
            "paths {p:?} and {q:?} do not share endpoints"
        )));
    }
    let a_side = row_value(grid, model, i, p, sigma) - row_value(grid, model, i, q, sigma);
    let b_side = col_value(grid, model, j, p, sigma) - col_value(grid, model, j, q, sigma);
    Ok(a_side.cmp(&b_side))
}
