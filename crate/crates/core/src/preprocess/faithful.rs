//! Guess-and-verify preprocessing: every box signature is found as a
//! bichromatic dominating pair between a point per group of `A` and a point
//! per group of `B`.

use crate::dominance::{dominating_pairs_dnc, ColoredPointSet};
use crate::error::{Error, Result};
use crate::model::GridCostModel;
use crate::scalar::{Penalized, Scalar};
use crate::staircase::{
    pair_of, paths_between, shortest_paths_direct, BoxGrid, BoxSignature, PackedPath, PairCatalog,
    SignAssignment,
};

use super::direct::fill_tables;
use super::fredman::{col_value, row_value};
use super::{PreprocessStats, Preprocessed, StoreBuilder, ValueTables};

/// Which path-set guesses the faithful loop enumerates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GuessSpace {
    /// Only paths that are shortest for at least one box.
    #[default]
    Pruned,
    /// Every path of every admissible pair.
    Exhaustive,
}

/// Blue points `alpha_i` (one per group of `A`) and red points `beta_j` (one
/// per group of `B`) for a single guess.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessPointBatch<S> {
    pub dim: usize,
    pub alpha: Vec<Vec<Penalized<S>>>,
    pub beta: Vec<Vec<Penalized<S>>>,
}

impl<S: Scalar> GuessPointBatch<S> {
    /// Red ids are `j`, blue ids are `i` (both 1-based).
    pub fn colored_set(&self) -> ColoredPointSet<Penalized<S>> {
        let red = self
            .beta
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, p)| (k + 1, p))
            .collect();
        let blue = self
            .alpha
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, p)| (k + 1, p))
            .collect();
        ColoredPointSet::from_parts(self.dim, red, blue).expect("guess points share one dimension")
    }
}

/// Builds the points of one guess.
///
/// For each admissible pair and each path `P'` of that pair, `alpha_i` holds
/// `V_row_i(P) - V_row_i(P')` and `beta_j` holds `V_col_j(P) - V_col_j(P')`,
/// where `P` is the guessed path. The trailing coordinates validate `sigma`
/// cell by cell.
pub fn build_guess_points<S: Scalar>(
    guess: &[PackedPath],
    sigma: &SignAssignment,
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
) -> Result<GuessPointBatch<S>> {
    let g = grid.g();
    let catalog = PairCatalog::new(g)?;
    check_guess(&catalog, guess)?;
    let alternatives: Vec<Vec<PackedPath>> = catalog
        .pairs()
        .iter()
        .map(|p| paths_between(g, p.v, p.w))
        .collect();
    Ok(guess_points(guess, &alternatives, sigma, grid, model))
}

fn check_guess(catalog: &PairCatalog, guess: &[PackedPath]) -> Result<()> {
    if guess.len() != catalog.len() {
        return Err(Error::Input(format!(
            "guess has {} paths, expected {}",
            guess.len(),
            catalog.len()
        )));
    }
    for (pair, &p) in catalog.pairs().iter().zip(guess) {
        if pair_of(catalog.g(), p) != Some(*pair) {
            return Err(Error::Input(format!(
                "guessed path {p:?} does not connect ({}, {})",
                pair.v, pair.w
            )));
        }
    }
    Ok(())
}

fn guess_points<S: Scalar>(
    guess: &[PackedPath],
    alternatives: &[Vec<PackedPath>],
    sigma: &SignAssignment,
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
) -> GuessPointBatch<S> {
    let g = grid.g();
    let metric = model.metric();
    let mut scratch = Vec::new();
    let alpha: Vec<Vec<Penalized<S>>> = (1..=grid.s_rows())
        .map(|i| {
            let mut pt = Vec::new();
            for (&p, alts) in guess.iter().zip(alternatives) {
                let base = row_value(grid, model, i, p, sigma);
                pt.extend(
                    alts.iter()
                        .map(|&q| base.clone() - row_value(grid, model, i, q, sigma)),
                );
            }
            for l in 1..=g {
                for m in 1..=g {
                    scratch.clear();
                    metric.validation_forms(sigma.code(l, m), grid.a_value(i, l), &mut scratch);
                    pt.extend(scratch.drain(..).map(Penalized::finite));
                }
            }
            pt
        })
        .collect();
    let beta: Vec<Vec<Penalized<S>>> = (1..=grid.s_cols())
        .map(|j| {
            let mut pt = Vec::new();
            for (&p, alts) in guess.iter().zip(alternatives) {
                let base = col_value(grid, model, j, p, sigma);
                pt.extend(
                    alts.iter()
                        .map(|&q| base.clone() - col_value(grid, model, j, q, sigma)),
                );
            }
            for l in 1..=g {
                for m in 1..=g {
                    scratch.clear();
                    metric.validation_forms(sigma.code(l, m), grid.b_value(j, m), &mut scratch);
                    pt.extend(scratch.drain(..).map(Penalized::finite));
                }
            }
            pt
        })
        .collect();
    let dim = alternatives.iter().map(Vec::len).sum::<usize>() + g * g * metric.validation_width();
    GuessPointBatch { dim, alpha, beta }
}

/// Faithful preprocessing over the pruned guess space.
pub fn preprocess_faithful<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
) -> Result<Preprocessed<S>> {
    preprocess_faithful_with(grid, model, GuessSpace::Pruned)
}

/// Enumerates `(sigma, path-set)` guesses in lexicographic order (sign
/// assignment first), reports dominating pairs for each, and gives every box
/// the first guess that dominates it. Only `g = 2` is supported.
pub fn preprocess_faithful_with<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    model: &GridCostModel<S>,
    space: GuessSpace,
) -> Result<Preprocessed<S>> {
    let g = grid.g();
    if g != 2 {
        return Err(Error::Config(format!(
            "faithful preprocessing requires g = 2, got {g}"
        )));
    }
    grid.check_metric(model.metric())?;
    let catalog = PairCatalog::new(g)?;
    let alternatives: Vec<Vec<PackedPath>> = catalog
        .pairs()
        .iter()
        .map(|p| paths_between(g, p.v, p.w))
        .collect();
    let candidates: Vec<Vec<PackedPath>> = match space {
        GuessSpace::Exhaustive => alternatives.clone(),
        GuessSpace::Pruned => {
            let mut seen = vec![Vec::new(); catalog.len()];
            for i in 1..=grid.s_rows() {
                for j in 1..=grid.s_cols() {
                    let sig = shortest_paths_direct(grid, model, &catalog, i, j);
                    for (k, p) in sig.paths.into_iter().enumerate() {
                        seen[k].push(p);
                    }
                }
            }
            for s in &mut seen {
                s.sort_unstable();
                s.dedup();
            }
            seen
        }
    };

    let (s_rows, s_cols) = (grid.s_rows(), grid.s_cols());
    let mut assigned: Vec<Option<BoxSignature>> = vec![None; s_rows * s_cols];
    let mut stats = PreprocessStats::default();
    let code_count = model.metric().sign_code_count();
    let mut sigma = SignAssignment::positive(g);
    loop {
        let mut choice = vec![0usize; catalog.len()];
        loop {
            let guess: Vec<PackedPath> = choice
                .iter()
                .zip(&candidates)
                .map(|(&c, list)| list[c])
                .collect();
            let batch = guess_points(&guess, &alternatives, &sigma, grid, model);
            let pairs = dominating_pairs_dnc(&batch.colored_set())?;
            stats.guesses += 1;
            stats.dominance_pairs_reported += pairs.len() as u64;
            for (j, i) in pairs {
                let slot = &mut assigned[(i - 1) * s_cols + (j - 1)];
                let replace = match slot {
                    None => true,
                    Some(prev) => (&sigma, &guess) < (&prev.sigma, &prev.paths),
                };
                if replace {
                    if slot.is_none() {
                        stats.accepted_pairs += 1;
                    }
                    *slot = Some(BoxSignature {
                        paths: guess.clone(),
                        sigma: sigma.clone(),
                    });
                }
            }
            if !advance(&mut choice, &candidates) {
                break;
            }
        }
        if !sigma.advance(code_count) {
            break;
        }
    }

    let mut builder = StoreBuilder::new(g, s_rows, s_cols);
    let mut tables = ValueTables::new();
    for (k, sig) in assigned.into_iter().enumerate() {
        let (i, j) = (k / s_cols + 1, k % s_cols + 1);
        let sig =
            sig.ok_or_else(|| Error::Invariant(format!("no guess dominated box ({i}, {j})")))?;
        let id = builder.push(sig.clone());
        fill_tables(grid, model, &mut tables, id, &sig, i, j);
    }
    Ok(Preprocessed {
        signatures: builder.finish(),
        tables,
        stats,
    })
}

fn advance(choice: &mut [usize], candidates: &[Vec<PackedPath>]) -> bool {
    for (c, list) in choice.iter_mut().zip(candidates).rev() {
        if *c + 1 < list.len() {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}
