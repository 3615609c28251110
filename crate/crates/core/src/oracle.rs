//! Reference quadratic dynamic programs for DTW and GED.
//!
//! `M[l, m]` is the minimal cost of a staircase path from `(0, 0)` to
//! `(l, m)` in the grid graph of the cost model. Borders are initialized as
//! `M[0, 0] = 0` and, for `k >= 1`, `M[k, 0] = M[0, k] = inf` (DTW) or
//! `rho * k` (GED). Ties among predecessors prefer diagonal, then left, then
//! down, so tracebacks are deterministic.

use crate::alignment::{Coupling, MonotoneMatching};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::model::GridCostModel;
use crate::scalar::{Ext, Scalar};
use crate::sequence::PointSequence;

/// Predecessor of a DP cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    None,
    /// From `(l, m - 1)`.
    Left,
    /// From `(l - 1, m)`.
    Down,
    /// From `(l - 1, m - 1)`.
    Diag,
}

/// Full `(n+1) x (m+1)` DP matrix with back pointers.
#[derive(Clone, Debug)]
pub struct DpMatrix<S> {
    rows: usize,
    cols: usize,
    values: Vec<Ext<S>>,
    back: Vec<Step>,
}

impl<S: Scalar> DpMatrix<S> {
    pub fn value(&self, l: usize, m: usize) -> &Ext<S> {
        &self.values[l * self.cols + m]
    }

    pub fn step(&self, l: usize, m: usize) -> Step {
        self.back[l * self.cols + m]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Grid positions of the optimal path, from `(0, 0)` to `(n, m)`.
    pub fn trace(&self) -> Vec<(usize, usize)> {
        let (mut l, mut m) = (self.rows - 1, self.cols - 1);
        let mut path = vec![(l, m)];
        loop {
            match self.step(l, m) {
                Step::None => break,
                Step::Left => m -= 1,
                Step::Down => l -= 1,
                Step::Diag => {
                    l -= 1;
                    m -= 1;
                }
            }
            path.push((l, m));
        }
        path.reverse();
        path
    }
}

/// Result of a quadratic run plus its work count.
#[derive(Clone, Debug)]
pub struct QuadraticSolution<S> {
    pub distance: S,
    /// Grid path from `(0, 0)` to `(n, m)` when traceback was requested.
    pub path: Option<Vec<(usize, usize)>>,
    pub cell_updates: u64,
}

pub(crate) fn check_inputs<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    metric: &Metric,
) -> Result<()> {
    for seq in [a, b] {
        if seq.is_empty() {
            return Err(Error::Input(format!("sequence `{}` is empty", seq.label())));
        }
        if seq.dim() != metric.dim() {
            return Err(Error::DimensionMismatch {
                expected: metric.dim(),
                found: seq.dim(),
            });
        }
    }
    Ok(())
}

fn border<S: Scalar>(model: &GridCostModel<S>, k: usize) -> Ext<S> {
    if k == 0 {
        return Ext::zero();
    }
    match model {
        GridCostModel::Dtw { .. } => Ext::Infinity,
        GridCostModel::Ged { rho, .. } => Ext::Finite(rho.times(k as u64)),
    }
}

/// One cell of the recurrence given its three predecessors.
#[inline]
fn relax<S: Scalar>(
    model: &GridCostModel<S>,
    d: S,
    diag: &Ext<S>,
    left: &Ext<S>,
    down: &Ext<S>,
) -> (Ext<S>, Step) {
    let (c_diag, c_left, c_down) = match model {
        GridCostModel::Dtw { .. } => (
            diag.plus_scalar(&d),
            left.plus_scalar(&d),
            down.plus_scalar(&d),
        ),
        GridCostModel::Ged { rho, .. } => (
            diag.plus_scalar(&d),
            left.plus_scalar(rho),
            down.plus_scalar(rho),
        ),
    };
    let mut best = (c_diag, Step::Diag);
    if c_left < best.0 {
        best = (c_left, Step::Left);
    }
    if c_down < best.0 {
        best = (c_down, Step::Down);
    }
    best
}

/// Fills the full DP matrix (kept for traceback).
pub fn fill_matrix<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    model: &GridCostModel<S>,
) -> Result<DpMatrix<S>> {
    let metric = model.metric();
    check_inputs(a, b, metric)?;
    let (rows, cols) = (a.len() + 1, b.len() + 1);
    let mut values = vec![Ext::Infinity; rows * cols];
    let mut back = vec![Step::None; rows * cols];
    for m in 0..cols {
        values[m] = border(model, m);
        if m > 0 && model.is_ged() {
            back[m] = Step::Left;
        }
    }
    for l in 1..rows {
        values[l * cols] = border(model, l);
        if model.is_ged() {
            back[l * cols] = Step::Down;
        }
        let p = a.point(l - 1);
        for m in 1..cols {
            let d = metric.dist_unchecked(p, b.point(m - 1));
            let (v, step) = relax(
                model,
                d,
                &values[(l - 1) * cols + m - 1],
                &values[l * cols + m - 1],
                &values[(l - 1) * cols + m],
            );
            values[l * cols + m] = v;
            back[l * cols + m] = step;
        }
    }
    Ok(DpMatrix {
        rows,
        cols,
        values,
        back,
    })
}

/// Quadratic DP; two rolling rows unless `traceback` is set.
pub fn solve_quadratic<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    model: &GridCostModel<S>,
    traceback: bool,
) -> Result<QuadraticSolution<S>> {
    let cell_updates = (a.len() * b.len()) as u64;
    if traceback {
        let matrix = fill_matrix(a, b, model)?;
        let distance = finite_result(matrix.value(a.len(), b.len()).clone())?;
        return Ok(QuadraticSolution {
            distance,
            path: Some(matrix.trace()),
            cell_updates,
        });
    }
    let metric = model.metric();
    check_inputs(a, b, metric)?;
    let cols = b.len() + 1;
    let mut prev: Vec<Ext<S>> = (0..cols).map(|m| border(model, m)).collect();
    let mut cur = vec![Ext::Infinity; cols];
    for l in 1..=a.len() {
        cur[0] = border(model, l);
        let p = a.point(l - 1);
        for m in 1..cols {
            let d = metric.dist_unchecked(p, b.point(m - 1));
            cur[m] = relax(model, d, &prev[m - 1], &cur[m - 1], &prev[m]).0;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let distance = finite_result(prev[cols - 1].clone())?;
    Ok(QuadraticSolution {
        distance,
        path: None,
        cell_updates,
    })
}

pub(crate) fn finite_result<S: Scalar>(v: Ext<S>) -> Result<S> {
    v.into_finite()
        .ok_or_else(|| Error::Invariant("optimal alignment cost is infinite".into()))
}

/// Converts a DTW grid path (starting at the origin) into a coupling.
pub fn coupling_from_path(path: &[(usize, usize)]) -> Coupling {
    Coupling::new(
        path.iter()
            .copied()
            .filter(|&(l, m)| l > 0 && m > 0)
            .collect(),
    )
}

/// Keeps the cells of a GED grid path that are entered diagonally.
pub fn matching_from_path(path: &[(usize, usize)]) -> MonotoneMatching {
    MonotoneMatching::new(
        path.windows(2)
            .filter(|w| w[1].0 == w[0].0 + 1 && w[1].1 == w[0].1 + 1)
            .map(|w| w[1])
            .collect(),
    )
}

/// Quadratic DTW distance and an optimal coupling.
pub fn dtw_quadratic<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    metric: &Metric,
) -> Result<(S, Coupling)> {
    let sol = solve_quadratic(a, b, &GridCostModel::dtw(*metric), true)?;
    let coupling = coupling_from_path(sol.path.as_deref().expect("traceback requested"));
    Ok((sol.distance, coupling))
}

/// Quadratic geometric edit distance and an optimal monotone matching.
pub fn ged_quadratic<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    rho: &S,
    metric: &Metric,
) -> Result<(S, MonotoneMatching)> {
    let model = GridCostModel::ged(*metric, rho.clone())?;
    let sol = solve_quadratic(a, b, &model, true)?;
    let matching = matching_from_path(sol.path.as_deref().expect("traceback requested"));
    Ok((sol.distance, matching))
}
