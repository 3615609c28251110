//! Path costs inside one box and the direct per-box shortest-path solver.
//!
//! Costs exclude the start position. Entering a forbidden cell (DTW border,
//! any padding) contributes one symbolic infinity per forbidden coordinate,
//! so that ties among infinite paths still break deterministically and the
//! same comparison can be split into `A`-only and `B`-only sums.

use crate::model::GridCostModel;
use crate::scalar::{Ext, Penalized, Scalar};

use super::boundary::{boundary_len, l_position, r_position, Pos};
use super::grid::BoxGrid;
use super::path::{Move, PackedPath, PairCatalog};
use super::sign::{sign_assignment, SignAssignment};

/// Cell weights of one box under a cost model.
#[derive(Clone, Debug)]
pub struct BoxCosts<S> {
    g: usize,
    dist: Vec<S>,
    infinities: Vec<i64>,
    rho: Option<S>,
}

impl<S: Scalar> BoxCosts<S> {
    pub fn new(grid: &BoxGrid<'_, S>, model: &GridCostModel<S>, i: usize, j: usize) -> Self {
        let g = grid.g();
        let metric = model.metric();
        let mut dist = Vec::with_capacity(g * g);
        let mut infinities = Vec::with_capacity(g * g);
        for l in 1..=g {
            let a = grid.a_value(i, l);
            let row_dead = i64::from(grid.dead_row(model, i, l));
            for m in 1..=g {
                dist.push(metric.dist_unchecked(a, grid.b_value(j, m)));
                infinities.push(row_dead + i64::from(grid.dead_col(model, j, m)));
            }
        }
        BoxCosts {
            g,
            dist,
            infinities,
            rho: model.rho().cloned(),
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `D(l, m)` as an extended value (infinite on forbidden cells).
    pub fn cell(&self, (l, m): Pos) -> Ext<S> {
        let k = (l - 1) * self.g + (m - 1);
        if self.infinities[k] > 0 {
            Ext::Infinity
        } else {
            Ext::Finite(self.dist[k].clone())
        }
    }

    /// Weight of the move that enters `pos`.
    #[inline]
    pub fn weight(&self, mv: Move, (l, m): Pos) -> Penalized<S> {
        let k = (l - 1) * self.g + (m - 1);
        let finite = match (&self.rho, mv) {
            (Some(rho), Move::Up | Move::Right) => rho.clone(),
            _ => self.dist[k].clone(),
        };
        Penalized {
            infinities: self.infinities[k],
            finite,
        }
    }

    pub fn refined_cost(&self, path: PackedPath) -> Penalized<S> {
        path.steps(self.g)
            .fold(Penalized::zero(), |acc, (mv, pos)| {
                acc + self.weight(mv, pos)
            })
    }
}

/// Cost of `path` in box `(i, j)`; `Infinity` if it enters a forbidden cell.
pub fn path_cost<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    i: usize,
    j: usize,
    path: PackedPath,
) -> Ext<S> {
    BoxCosts::new(grid, model, i, j).refined_cost(path).to_ext()
}

/// Shortest paths of one box for every admissible pair, plus its sign assignment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxSignature {
    /// One path per admissible pair, in catalog order.
    pub paths: Vec<PackedPath>,
    pub sigma: SignAssignment,
}

#[derive(Clone)]
struct Best<S> {
    cost: Penalized<S>,
    word: PackedPath,
    len: usize,
}

/// Minimal `(cost, encoding)` path from `L(start)` to every cell of the box.
fn single_source<S: Scalar>(costs: &BoxCosts<S>, start: usize) -> Vec<Option<Best<S>>> {
    let g = costs.g();
    let mut best: Vec<Option<Best<S>>> = vec![None; g * g];
    let origin = l_position(g, start);
    best[(origin.0 - 1) * g + origin.1 - 1] = Some(Best {
        cost: Penalized::zero(),
        word: PackedPath::from_start(start),
        len: 0,
    });
    for l in origin.0..=g {
        for m in origin.1..=g {
            if (l, m) == origin {
                continue;
            }
            let mut cell: Option<Best<S>> = None;
            for (mv, from) in [
                (Move::Up, (l.wrapping_sub(1), m)),
                (Move::Right, (l, m.wrapping_sub(1))),
                (Move::UpRight, (l.wrapping_sub(1), m.wrapping_sub(1))),
            ] {
                if from.0 < origin.0 || from.1 < origin.1 || from.0 == 0 || from.1 == 0 {
                    continue;
                }
                let Some(prev) = &best[(from.0 - 1) * g + from.1 - 1] else {
                    continue;
                };
                let cand = Best {
                    cost: prev.cost.clone() + costs.weight(mv, (l, m)),
                    word: prev.word.push(prev.len, mv),
                    len: prev.len + 1,
                };
                let better = match &cell {
                    None => true,
                    Some(cur) => (&cand.cost, cand.word) < (&cur.cost, cur.word),
                };
                if better {
                    cell = Some(cand);
                }
            }
            best[(l - 1) * g + m - 1] = cell;
        }
    }
    best
}

/// Shortest path for every admissible pair of box `(i, j)` by in-box DP from
/// each `L` start. Ties go to the smallest packed encoding.
pub fn shortest_paths_direct<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    catalog: &PairCatalog,
    i: usize,
    j: usize,
) -> BoxSignature {
    let costs = BoxCosts::new(grid, model, i, j);
    let g = grid.g();
    let mut paths = Vec::with_capacity(catalog.len());
    let mut current: Option<(usize, Vec<Option<Best<S>>>)> = None;
    for pair in catalog.pairs() {
        if current.as_ref().map(|c| c.0) != Some(pair.v) {
            current = Some((pair.v, single_source(&costs, pair.v)));
        }
        let table = &current.as_ref().expect("set above").1;
        let (l, m) = r_position(g, pair.w);
        let best = table[(l - 1) * g + m - 1]
            .as_ref()
            .expect("admissible pairs are reachable");
        paths.push(best.word);
    }
    debug_assert_eq!(paths.len(), catalog.len());
    debug_assert!(catalog.pairs().iter().all(|p| p.v <= boundary_len(g)));
    BoxSignature {
        paths,
        sigma: sign_assignment(grid, model.metric(), i, j),
    }
}
