//! Second stage: boxed dynamic programming over boundary values.
//!
//! Boxes are visited row-major. For each box the `L` boundary values are
//! stitched from the box below (`L(1..=g)`) and the box to the left
//! (`L(g..=2g-1)`), or taken from the DP border in the first box row or
//! column. The `R` boundary then follows from
//! `M[w] = min_u M[u] + cost(P*_{u,w})`, solved by divide and conquer over
//! `w` using the non-crossing property of minimal pairs.

use std::time::Instant;

use crate::alignment::{Coupling, MonotoneMatching};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::model::GridCostModel;
use crate::oracle::{check_inputs, coupling_from_path, finite_result, matching_from_path};
use crate::preprocess::{
    preprocess_direct, preprocess_faithful_with, query_path_cost, GuessSpace, PreprocessStats,
    Preprocessed,
};
use crate::scalar::{Ext, Scalar};
use crate::sequence::PointSequence;
use crate::staircase::{
    boundary_len, connectable, decompose, l_position, BoxCosts, BoxGrid, Move, PackedPath,
    PairCatalog, Pos,
};

/// Where an `R` value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `R(1)` and `R(2g-1)` are the same cells as `L(1)` and `L(2g-1)`.
    Shared,
    /// Reached from `L(u)` along the stored shortest path.
    Path { u: usize, path: PackedPath },
}

/// Values on one side of a box, indexed `1..=2g-1` (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryValues<S> {
    pub values: Vec<Ext<S>>,
    pub provenance: Option<Vec<Provenance>>,
}

impl<S: Scalar> BoundaryValues<S> {
    pub fn get(&self, k: usize) -> &Ext<S> {
        &self.values[k - 1]
    }
}

/// The optimal source `u` for target `w`, with its cumulative cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPair<S> {
    pub w: usize,
    pub u: usize,
    pub ccost: Ext<S>,
}

/// Work counters of the boxed stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompactStats {
    pub boxes: u64,
    /// `(u, w)` candidates evaluated across all boxes.
    pub candidate_evaluations: u64,
    /// Largest per-box candidate count.
    pub max_box_evaluations: u64,
    /// Cell updates of the in-box DP that reads off an interior target.
    pub finishing_cell_updates: u64,
    /// Pairs of minimal pairs checked for crossing.
    pub monge_checks: u64,
    pub monge_violations: u64,
}

impl CompactStats {
    /// Per-box ceiling `4 (4g-2) (1 + log2(2g-1))` on candidate evaluations.
    pub fn box_bound(g: usize) -> f64 {
        let g = g as f64;
        4.0 * (4.0 * g - 2.0) * (1.0 + (2.0 * g - 1.0).log2())
    }
}

/// Admissible-pair index lookup by `(u, w)`.
#[derive(Clone, Debug)]
struct PairTable {
    g: usize,
    index: Vec<Option<u32>>,
}

impl PairTable {
    fn new(catalog: &PairCatalog) -> Self {
        let g = catalog.g();
        let len = boundary_len(g);
        let mut index = vec![None; len * len];
        for (k, p) in catalog.pairs().iter().enumerate() {
            index[(p.v - 1) * len + (p.w - 1)] = Some(k as u32);
        }
        PairTable { g, index }
    }

    fn get(&self, u: usize, w: usize) -> Option<usize> {
        let len = boundary_len(self.g);
        self.index[(u - 1) * len + (w - 1)].map(|k| k as usize)
    }
}

/// Minimal pairs for every `w` in `w_range`, sources drawn from `u_range`
/// (both inclusive, 1-based).
///
/// The median `w` is scanned directly; the recursion then restricts smaller
/// targets to sources `<= u*` and larger targets to sources `>= u*`. When
/// the median is unreachable (infinite), only the lower bound is applied.
/// Ties go to the smaller `u`. `evaluations` counts every admissible
/// candidate looked at.
pub fn minimal_pairs_dc<S: Scalar>(
    g: usize,
    u_range: (usize, usize),
    w_range: (usize, usize),
    lookup: &mut dyn FnMut(usize, usize) -> Result<Ext<S>>,
    l_values: &[Ext<S>],
    evaluations: &mut u64,
) -> Result<Vec<MinimalPair<S>>> {
    let mut out = Vec::with_capacity(w_range.1 + 1 - w_range.0);
    dc(g, u_range, w_range, lookup, l_values, evaluations, &mut out)?;
    Ok(out)
}

fn dc<S: Scalar>(
    g: usize,
    (u_lo, u_hi): (usize, usize),
    (w_lo, w_hi): (usize, usize),
    lookup: &mut dyn FnMut(usize, usize) -> Result<Ext<S>>,
    l_values: &[Ext<S>],
    evaluations: &mut u64,
    out: &mut Vec<MinimalPair<S>>,
) -> Result<()> {
    if w_lo > w_hi {
        return Ok(());
    }
    let w = (w_lo + w_hi) / 2;
    let mut best: Option<(Ext<S>, usize)> = None;
    for u in u_lo..=u_hi {
        if !connectable(g, u, w) {
            continue;
        }
        *evaluations += 1;
        let value = &l_values[u - 1];
        let ccost = if value.is_finite() {
            value.plus(&lookup(u, w)?)
        } else {
            Ext::Infinity
        };
        if best.as_ref().is_none_or(|(c, _)| ccost < *c) {
            best = Some((ccost, u));
        }
    }
    let (ccost, u) = best.ok_or_else(|| {
        Error::Invariant(format!(
            "no admissible source in [{u_lo}, {u_hi}] for R({w})"
        ))
    })?;
    let left_hi = if ccost.is_finite() { u } else { u_hi };
    dc(
        g,
        (u_lo, left_hi),
        (w_lo, w - 1),
        lookup,
        l_values,
        evaluations,
        out,
    )?;
    out.push(MinimalPair { w, u, ccost });
    dc(
        g,
        (u, u_hi),
        (w + 1, w_hi),
        lookup,
        l_values,
        evaluations,
        out,
    )
}

/// Options of the boxed stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompactOptions {
    pub traceback: bool,
    /// Verify that minimal-pair paths never cross (see [`CompactStats`]).
    pub check_monge: bool,
}

impl Default for CompactOptions {
    fn default() -> Self {
        CompactOptions {
            traceback: false,
            check_monge: cfg!(debug_assertions),
        }
    }
}

/// Per-run context shared by all boxes.
struct Ctx<'p, 'g, S> {
    grid: &'p BoxGrid<'g, S>,
    model: &'p GridCostModel<S>,
    pre: &'p Preprocessed<S>,
    pairs: PairTable,
    opts: CompactOptions,
}

/// Propagates the `L` values of box `(i, j)` to its `R` boundary.
pub fn box_propagate<S: Scalar>(
    i: usize,
    j: usize,
    l_values: &[Ext<S>],
    pre: &Preprocessed<S>,
    opts: CompactOptions,
    stats: &mut CompactStats,
) -> Result<BoundaryValues<S>> {
    let g = pre.signatures.g();
    let catalog = PairCatalog::new(g)?;
    propagate(&PairTable::new(&catalog), i, j, l_values, pre, opts, stats)
}

fn propagate<S: Scalar>(
    pairs: &PairTable,
    i: usize,
    j: usize,
    l_values: &[Ext<S>],
    pre: &Preprocessed<S>,
    opts: CompactOptions,
    stats: &mut CompactStats,
) -> Result<BoundaryValues<S>> {
    let g = pairs.g;
    let len = boundary_len(g);
    let sig = pre.signatures.signature(i, j)?;
    let sigma = pre.signatures.sigma_id(i, j)?;
    let path_of = |u: usize, w: usize| -> Result<PackedPath> {
        let k = pairs
            .get(u, w)
            .ok_or_else(|| Error::Invariant(format!("({u}, {w}) is not an admissible pair")))?;
        sig.paths
            .get(k)
            .copied()
            .ok_or_else(|| Error::PreprocessIncomplete(format!("box ({i}, {j}) lacks pair {k}")))
    };
    let mut lookup = |u: usize, w: usize| -> Result<Ext<S>> {
        query_path_cost(&pre.tables, sigma, i, j, path_of(u, w)?)
    };

    let mut evaluations = 0u64;
    let minimal = if len > 2 {
        minimal_pairs_dc(
            g,
            (1, len),
            (2, len - 1),
            &mut lookup,
            l_values,
            &mut evaluations,
        )?
    } else {
        Vec::new()
    };
    stats.boxes += 1;
    stats.candidate_evaluations += evaluations;
    stats.max_box_evaluations = stats.max_box_evaluations.max(evaluations);

    let mut values = Vec::with_capacity(len);
    values.push(l_values[0].clone());
    values.extend(minimal.iter().map(|p| p.ccost.clone()));
    values.push(l_values[len - 1].clone());

    let mut routes = Vec::with_capacity(minimal.len());
    for p in &minimal {
        routes.push(path_of(p.u, p.w)?);
    }
    if opts.check_monge {
        check_non_crossing(g, &minimal, &routes, stats);
    }
    let provenance = opts.traceback.then(|| {
        let mut prov = Vec::with_capacity(len);
        prov.push(Provenance::Shared);
        prov.extend(
            minimal
                .iter()
                .zip(&routes)
                .map(|(p, &path)| Provenance::Path { u: p.u, path }),
        );
        prov.push(Provenance::Shared);
        prov
    });
    Ok(BoundaryValues { values, provenance })
}

/// Lowest and highest row of `path` in every column `1..=g` (0 if unvisited).
fn column_span(g: usize, path: PackedPath) -> Vec<(usize, usize)> {
    let mut span = vec![(0usize, 0usize); g + 1];
    let mut visit = |(l, m): Pos| {
        let s = &mut span[m];
        if s.0 == 0 {
            *s = (l, l);
        } else {
            s.0 = s.0.min(l);
            s.1 = s.1.max(l);
        }
    };
    visit(l_position(g, path.start()));
    for (_, pos) in path.steps(g) {
        visit(pos);
    }
    span
}

/// For finite minimal pairs with `w > w'`: `u >= u'`, and in every shared
/// column the path to `w` is weakly above the path to `w'`.
fn check_non_crossing<S: Scalar>(
    g: usize,
    minimal: &[MinimalPair<S>],
    routes: &[PackedPath],
    stats: &mut CompactStats,
) {
    let spans: Vec<_> = routes.iter().map(|&p| column_span(g, p)).collect();
    for hi in 0..minimal.len() {
        if !minimal[hi].ccost.is_finite() {
            continue;
        }
        for lo in 0..hi {
            if !minimal[lo].ccost.is_finite() {
                continue;
            }
            stats.monge_checks += 1;
            let mut ok = minimal[hi].u >= minimal[lo].u;
            for m in 1..=g {
                let (a, b) = (spans[hi][m], spans[lo][m]);
                if a.0 != 0 && b.0 != 0 && (a.0 < b.0 || a.1 < b.1) {
                    ok = false;
                }
            }
            if !ok {
                stats.monge_violations += 1;
            }
        }
    }
}

/// DP border value at global `(r, c)` with `r == 0 || c == 0`.
fn border_value<S: Scalar>(model: &GridCostModel<S>, (r, c): Pos) -> Ext<S> {
    match model.rho() {
        _ if r == 0 && c == 0 => Ext::zero(),
        None => Ext::Infinity,
        Some(rho) => Ext::Finite(rho.times((r + c) as u64)),
    }
}

impl<S: Scalar> Ctx<'_, '_, S> {
    fn g(&self) -> usize {
        self.grid.g()
    }

    /// `L` values of box `(i, j)` from the neighbours' `R` values.
    fn stitch(
        &self,
        i: usize,
        j: usize,
        below: Option<&[Ext<S>]>,
        left: Option<&[Ext<S>]>,
    ) -> Result<Vec<Ext<S>>> {
        let g = self.g();
        let len = boundary_len(g);
        let mut l = vec![Ext::Infinity; len];
        for (k, slot) in l.iter_mut().enumerate().take(g) {
            *slot = match below {
                Some(r) => r[g + k - 1].clone(),
                None => border_value(self.model, self.grid.global(i, j, l_position(g, k + 1))),
            };
        }
        for (k, slot) in l.iter_mut().enumerate().skip(g - 1) {
            let v = match left {
                Some(r) => r[k + 1 - g].clone(),
                None => border_value(self.model, self.grid.global(i, j, l_position(g, k + 1))),
            };
            if k == g - 1 && *slot != v {
                return Err(Error::Invariant(format!(
                    "stitched corner of box ({i}, {j}) disagrees: {} vs {}",
                    slot, v
                )));
            }
            *slot = v;
        }
        Ok(l)
    }

    /// In-box DP from the `L` values up to local `target`, with back pointers.
    fn finish(
        &self,
        i: usize,
        j: usize,
        l: &[Ext<S>],
        target: Pos,
        stats: &mut CompactStats,
    ) -> (Ext<S>, Vec<Option<Move>>) {
        let g = self.g();
        let costs = BoxCosts::new(self.grid, self.model, i, j);
        let mut val = vec![Ext::Infinity; g * g];
        let mut back = vec![None; g * g];
        let at = |l: usize, m: usize| (l - 1) * g + (m - 1);
        for m in 1..=g {
            val[at(1, m)] = l[g - m].clone();
        }
        for r in 2..=g {
            val[at(r, 1)] = l[g + r - 2].clone();
        }
        for r in 2..=target.0 {
            for m in 2..=target.1 {
                let mut best: Option<(Ext<S>, Move)> = None;
                for (mv, from) in [
                    (Move::UpRight, (r - 1, m - 1)),
                    (Move::Right, (r, m - 1)),
                    (Move::Up, (r - 1, m)),
                ] {
                    let c = val[at(from.0, from.1)].plus(&costs.weight(mv, (r, m)).to_ext());
                    if best.as_ref().is_none_or(|(b, _)| c < *b) {
                        best = Some((c, mv));
                    }
                }
                let (c, mv) = best.expect("three predecessors");
                val[at(r, m)] = c;
                back[at(r, m)] = Some(mv);
                stats.finishing_cell_updates += 1;
            }
        }
        (val[at(target.0, target.1)].clone(), back)
    }

    fn run(&self) -> Result<(Ext<S>, Option<Vec<Pos>>, CompactStats)> {
        let g = self.g();
        let (s_rows, s_cols) = (self.grid.s_rows(), self.grid.s_cols());
        let (_, _, target) = self.grid.target();
        let interior_target = target.0 < g && target.1 < g;
        let mut stats = CompactStats::default();
        let mut below_row: Vec<Vec<Ext<S>>> = Vec::new();
        let mut prov: Vec<Vec<Provenance>> = Vec::new();
        let mut final_value = Ext::Infinity;
        let mut finish_back = Vec::new();

        for i in 1..=s_rows {
            let mut row: Vec<Vec<Ext<S>>> = Vec::with_capacity(s_cols);
            for j in 1..=s_cols {
                let below = (i > 1).then(|| below_row[j - 1].as_slice());
                let left = (j > 1).then(|| row[j - 2].as_slice());
                let l = self.stitch(i, j, below, left)?;
                if i == s_rows && j == s_cols && interior_target {
                    let (v, back) = self.finish(i, j, &l, target, &mut stats);
                    final_value = v;
                    finish_back = back;
                    row.push(l);
                    continue;
                }
                let r = propagate(&self.pairs, i, j, &l, self.pre, self.opts, &mut stats)?;
                if let Some(p) = r.provenance {
                    prov.push(p);
                }
                if i == s_rows && j == s_cols {
                    let w = if target.0 == g {
                        2 * g - target.1
                    } else {
                        target.0
                    };
                    final_value = r.values[w - 1].clone();
                }
                row.push(r.values);
            }
            below_row = row;
        }

        let path = if self.opts.traceback && final_value.is_finite() {
            Some(self.trace(&prov, &finish_back, target, interior_target)?)
        } else {
            None
        };
        Ok((final_value, path, stats))
    }

    /// Global cells of the optimal path from `(0, 0)` to `(n, m)`.
    fn trace(
        &self,
        prov: &[Vec<Provenance>],
        finish_back: &[Option<Move>],
        target: Pos,
        interior: bool,
    ) -> Result<Vec<Pos>> {
        enum Loc {
            R(usize, usize, usize),
            L(usize, usize, usize),
        }
        let g = self.g();
        let (s_rows, s_cols) = (self.grid.s_rows(), self.grid.s_cols());
        let mut rev = vec![self.grid.global(s_rows, s_cols, target)];
        let mut loc = if interior {
            let mut pos = target;
            while pos.0 > 1 && pos.1 > 1 {
                let mv = finish_back[(pos.0 - 1) * g + pos.1 - 1]
                    .ok_or_else(|| Error::Invariant("broken back pointer in final box".into()))?;
                pos = match mv {
                    Move::Up => (pos.0 - 1, pos.1),
                    Move::Right => (pos.0, pos.1 - 1),
                    Move::UpRight => (pos.0 - 1, pos.1 - 1),
                };
                rev.push(self.grid.global(s_rows, s_cols, pos));
            }
            let u = if pos.0 == 1 {
                g - pos.1 + 1
            } else {
                g + pos.0 - 1
            };
            Loc::L(s_rows, s_cols, u)
        } else {
            let w = if target.0 == g {
                2 * g - target.1
            } else {
                target.0
            };
            Loc::R(s_rows, s_cols, w)
        };

        loop {
            match loc {
                Loc::R(i, j, w) => match prov[(i - 1) * s_cols + (j - 1)][w - 1] {
                    Provenance::Shared => loc = Loc::L(i, j, w),
                    Provenance::Path { u, path } => {
                        let cells = path.decode().positions(g);
                        for &pos in cells.iter().rev().skip(1) {
                            rev.push(self.grid.global(i, j, pos));
                        }
                        loc = Loc::L(i, j, u);
                    }
                },
                Loc::L(i, j, u) => {
                    let (r, c) = self.grid.global(i, j, l_position(g, u));
                    if (r, c) == (0, 0) {
                        break;
                    }
                    if u <= g && i > 1 {
                        loc = Loc::R(i - 1, j, g + u - 1);
                    } else if u >= g && j > 1 {
                        loc = Loc::R(i, j - 1, u + 1 - g);
                    } else if r == 0 {
                        rev.extend((0..c).rev().map(|k| (0, k)));
                        break;
                    } else {
                        rev.extend((0..r).rev().map(|k| (k, 0)));
                        break;
                    }
                }
            }
        }
        rev.reverse();
        if rev.first() != Some(&(0, 0)) {
            return Err(Error::Invariant(
                "traceback did not reach the origin".into(),
            ));
        }
        Ok(rev)
    }
}

/// How the boxed algorithm obtains its box signatures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PreprocessMode {
    #[default]
    Direct,
    Faithful(GuessSpace),
}

/// Options for [`solve_subquadratic`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SubquadraticOptions {
    pub mode: PreprocessMode,
    pub compact: CompactOptions,
    /// Solve boxes of the direct preprocessing on the rayon pool.
    pub parallel: bool,
}

/// Result of the boxed algorithm with its work counters.
#[derive(Clone, Debug)]
pub struct SubquadraticSolution<S> {
    pub distance: S,
    /// Global grid path from `(0, 0)` to `(n, m)` when traceback was requested.
    pub path: Option<Vec<Pos>>,
    pub preprocess: PreprocessStats,
    pub compact: CompactStats,
    pub unique_signatures: usize,
    pub preprocess_ms: f64,
    pub compact_ms: f64,
}

/// Runs the boxed stage on an already preprocessed grid.
pub fn solve_preprocessed<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    pre: &Preprocessed<S>,
    opts: CompactOptions,
) -> Result<(Ext<S>, Option<Vec<Pos>>, CompactStats)> {
    let st = &pre.signatures;
    if st.g() != grid.g() || st.s_rows() != grid.s_rows() || st.s_cols() != grid.s_cols() {
        return Err(Error::PreprocessIncomplete(
            "signatures were built for a different grid".into(),
        ));
    }
    let catalog = PairCatalog::new(grid.g())?;
    let ctx = Ctx {
        grid,
        model,
        pre,
        pairs: PairTable::new(&catalog),
        opts,
    };
    ctx.run()
}

/// Preprocesses and solves in one call.
pub fn solve_subquadratic<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    model: &GridCostModel<S>,
    g: usize,
    opts: &SubquadraticOptions,
) -> Result<SubquadraticSolution<S>> {
    check_inputs(a, b, model.metric())?;
    let grid = decompose(a, b, g)?;
    let started = Instant::now();
    let pre = match opts.mode {
        PreprocessMode::Direct => preprocess_direct(&grid, model, opts.parallel)?,
        PreprocessMode::Faithful(space) => preprocess_faithful_with(&grid, model, space)?,
    };
    let preprocess_ms = started.elapsed().as_secs_f64() * 1e3;
    let started = Instant::now();
    let (value, path, compact) = solve_preprocessed(&grid, model, &pre, opts.compact)?;
    let compact_ms = started.elapsed().as_secs_f64() * 1e3;
    if compact.monge_violations > 0 {
        return Err(Error::Invariant(format!(
            "{} crossing minimal-pair paths detected",
            compact.monge_violations
        )));
    }
    Ok(SubquadraticSolution {
        distance: finite_result(value)?,
        path,
        preprocess: pre.stats,
        compact,
        unique_signatures: pre.signatures.unique_count(),
        preprocess_ms,
        compact_ms,
    })
}

fn traced<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    model: &GridCostModel<S>,
    g: usize,
) -> Result<(S, Vec<Pos>)> {
    let opts = SubquadraticOptions {
        compact: CompactOptions {
            traceback: true,
            ..CompactOptions::default()
        },
        ..SubquadraticOptions::default()
    };
    let sol = solve_subquadratic(a, b, model, g, &opts)?;
    let path = sol
        .path
        .ok_or_else(|| Error::Invariant("traceback missing".into()))?;
    Ok((sol.distance, path))
}

/// Subquadratic DTW distance and an optimal coupling.
pub fn dtw_subquadratic<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    metric: &Metric,
    g: usize,
) -> Result<(S, Coupling)> {
    let (d, path) = traced(a, b, &GridCostModel::dtw(*metric), g)?;
    Ok((d, coupling_from_path(&path)))
}

/// Subquadratic geometric edit distance and an optimal monotone matching.
pub fn ged_subquadratic<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    rho: &S,
    metric: &Metric,
    g: usize,
) -> Result<(S, MonotoneMatching)> {
    let model = GridCostModel::ged(*metric, rho.clone())?;
    let (d, path) = traced(a, b, &model, g)?;
    Ok((d, matching_from_path(&path)))
}
