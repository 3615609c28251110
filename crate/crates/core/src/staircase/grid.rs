//! Box decomposition of the DP domain.
//!
//! Box `(i, j)` (1-based) covers DP rows `(i-1)(g-1) ..= (i-1)(g-1) + g-1`
//! and the analogous columns, so local position `(l, m)` of box `(i, j)` is
//! `M[(i-1)(g-1) + l - 1, (j-1)(g-1) + m - 1]`. Consecutive boxes share one
//! row or column. Local row 1 of the first box row is the DP border row 0;
//! rows past the end of `A` in the last box row are padding.

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::model::GridCostModel;
use crate::scalar::Scalar;
use crate::sequence::PointSequence;

use super::path::check_g;

/// What a box row (or column) holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    /// DP border row/column 0 (no sequence element).
    Border,
    /// Sequence element, 0-based.
    Element(usize),
    /// Past the end of the sequence.
    Padding,
}

#[derive(Clone, Debug)]
pub struct BoxGrid<'a, S> {
    a: &'a PointSequence<S>,
    b: &'a PointSequence<S>,
    g: usize,
    s_rows: usize,
    s_cols: usize,
    zero: Vec<S>,
}

/// Splits `A` and `B` into overlapping groups for box size `g`.
pub fn decompose<'a, S: Scalar>(
    a: &'a PointSequence<S>,
    b: &'a PointSequence<S>,
    g: usize,
) -> Result<BoxGrid<'a, S>> {
    check_g(g)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::Input("sequences must be nonempty".into()));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(BoxGrid {
        a,
        b,
        g,
        s_rows: a.len().div_ceil(g - 1),
        s_cols: b.len().div_ceil(g - 1),
        zero: vec![S::zero(); a.dim()],
    })
}

fn slot(len: usize, g: usize, group: usize, local: usize) -> Slot {
    let global = (group - 1) * (g - 1) + local - 1;
    match global {
        0 => Slot::Border,
        k if k <= len => Slot::Element(k - 1),
        _ => Slot::Padding,
    }
}

impl<'a, S: Scalar> BoxGrid<'a, S> {
    pub fn g(&self) -> usize {
        self.g
    }

    /// Number of box rows (groups of `A`).
    pub fn s_rows(&self) -> usize {
        self.s_rows
    }

    /// Number of box columns (groups of `B`).
    pub fn s_cols(&self) -> usize {
        self.s_cols
    }

    pub fn box_count(&self) -> usize {
        self.s_rows * self.s_cols
    }

    pub fn a(&self) -> &'a PointSequence<S> {
        self.a
    }

    pub fn b(&self) -> &'a PointSequence<S> {
        self.b
    }

    pub fn row_slot(&self, i: usize, l: usize) -> Slot {
        slot(self.a.len(), self.g, i, l)
    }

    pub fn col_slot(&self, j: usize, m: usize) -> Slot {
        slot(self.b.len(), self.g, j, m)
    }

    /// Group `A_i` as slots for local rows `1..=g`.
    pub fn group_a(&self, i: usize) -> Vec<Slot> {
        (1..=self.g).map(|l| self.row_slot(i, l)).collect()
    }

    pub fn group_b(&self, j: usize) -> Vec<Slot> {
        (1..=self.g).map(|m| self.col_slot(j, m)).collect()
    }

    /// `A_i(l)`, or the zero vector for border and padding rows.
    pub fn a_value(&self, i: usize, l: usize) -> &[S] {
        match self.row_slot(i, l) {
            Slot::Element(k) => self.a.point(k),
            _ => &self.zero,
        }
    }

    pub fn b_value(&self, j: usize, m: usize) -> &[S] {
        match self.col_slot(j, m) {
            Slot::Element(k) => self.b.point(k),
            _ => &self.zero,
        }
    }

    /// Global DP position of local `(l, m)` in box `(i, j)`.
    pub fn global(&self, i: usize, j: usize, (l, m): (usize, usize)) -> (usize, usize) {
        (
            (i - 1) * (self.g - 1) + l - 1,
            (j - 1) * (self.g - 1) + m - 1,
        )
    }

    /// Box and local position holding global `(n, m)` in the last box.
    pub fn target(&self) -> (usize, usize, (usize, usize)) {
        let l = self.a.len() - (self.s_rows - 1) * (self.g - 1) + 1;
        let m = self.b.len() - (self.s_cols - 1) * (self.g - 1) + 1;
        (self.s_rows, self.s_cols, (l, m))
    }

    pub fn check_metric(&self, metric: &Metric) -> Result<()> {
        if metric.dim() != self.a.dim() {
            return Err(Error::DimensionMismatch {
                expected: metric.dim(),
                found: self.a.dim(),
            });
        }
        metric.check_signable()
    }

    /// Whether entering a row with this slot is forbidden (infinite) under `model`.
    ///
    /// DTW forbids the border and padding; GED only forbids padding, since
    /// moving along the border row costs `rho` per step.
    pub fn dead_row(&self, model: &GridCostModel<S>, i: usize, l: usize) -> bool {
        dead(model, self.row_slot(i, l))
    }

    pub fn dead_col(&self, model: &GridCostModel<S>, j: usize, m: usize) -> bool {
        dead(model, self.col_slot(j, m))
    }
}

fn dead<S: Scalar>(model: &GridCostModel<S>, slot: Slot) -> bool {
    match (model, slot) {
        (_, Slot::Element(_)) => false,
        (_, Slot::Padding) => true,
        (GridCostModel::Dtw { .. }, Slot::Border) => true,
        (GridCostModel::Ged { .. }, Slot::Border) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(n: usize) -> PointSequence<i64> {
        PointSequence::from_scalars("s", (1..=n as i64).collect()).unwrap()
    }

    #[test]
    fn four_elements_g3() {
        let (a, b) = (seq(4), seq(4));
        let grid = decompose(&a, &b, 3).unwrap();
        assert_eq!(grid.s_rows(), 2);
        assert_eq!(
            grid.group_a(1),
            vec![Slot::Border, Slot::Element(0), Slot::Element(1)]
        );
        assert_eq!(
            grid.group_a(2),
            vec![Slot::Element(1), Slot::Element(2), Slot::Element(3)]
        );
        assert_eq!(grid.target(), (2, 2, (3, 3)));
    }

    #[test]
    fn three_elements_g2() {
        let (a, b) = (seq(3), seq(1));
        let grid = decompose(&a, &b, 2).unwrap();
        assert_eq!(grid.s_rows(), 3);
        assert_eq!(grid.s_cols(), 1);
        for i in 1..=3 {
            let group = grid.group_a(i);
            let elements = group
                .iter()
                .filter(|s| matches!(s, Slot::Element(_)))
                .count();
            assert!((1..=2).contains(&elements));
        }
        assert_eq!(grid.group_a(2), vec![Slot::Element(0), Slot::Element(1)]);
    }

    #[test]
    fn short_final_group_is_padded() {
        let (a, b) = (seq(5), seq(5));
        let grid = decompose(&a, &b, 3).unwrap();
        assert_eq!(grid.s_rows(), 3);
        assert_eq!(
            grid.group_a(3),
            vec![Slot::Element(3), Slot::Element(4), Slot::Padding]
        );
        assert_eq!(grid.target(), (3, 3, (2, 2)));
        assert_eq!(grid.a_value(3, 3), &[0]);
    }

    #[test]
    fn global_mapping_and_overlap() {
        let (a, b) = (seq(6), seq(6));
        let grid = decompose(&a, &b, 4).unwrap();
        assert_eq!(grid.global(1, 1, (1, 1)), (0, 0));
        assert_eq!(grid.global(1, 2, (1, 1)), grid.global(1, 1, (1, 4)));
        assert_eq!(grid.global(2, 1, (1, 2)), grid.global(1, 1, (4, 2)));
        assert_eq!(grid.global(2, 2, (4, 4)), (6, 6));
    }

    #[test]
    fn rejects_bad_g() {
        let a = seq(4);
        assert!(decompose(&a, &a, 1).is_err());
        assert!(decompose(&a, &a, 14).is_err());
    }
}
