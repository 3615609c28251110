use crate::metric::Metric;
use crate::scalar::Scalar;

use super::grid::BoxGrid;

/// Per-cell sign codes of a `g x g` box, row-major over `(l, m)`.
///
/// The code meaning depends on the metric (see [`crate::metric`]). Ordering
/// is lexicographic over cells, so the correct assignment of a box is the
/// smallest valid one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignAssignment {
    g: usize,
    codes: Vec<u8>,
}

impl SignAssignment {
    pub fn new(g: usize, codes: Vec<u8>) -> Self {
        assert_eq!(
            codes.len(),
            g * g,
            "sign assignment must cover the whole box"
        );
        SignAssignment { g, codes }
    }

    /// The all-zero code assignment (every cell `+1`).
    pub fn positive(g: usize) -> Self {
        SignAssignment {
            g,
            codes: vec![0; g * g],
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn code(&self, l: usize, m: usize) -> u8 {
        self.codes[(l - 1) * self.g + (m - 1)]
    }

    pub fn codes(&self) -> &[u8] {
        &self.codes
    }

    /// Advances to the next assignment in lexicographic order; `false` once exhausted.
    pub fn advance(&mut self, code_count: u8) -> bool {
        for c in self.codes.iter_mut().rev() {
            if *c + 1 < code_count {
                *c += 1;
                return true;
            }
            *c = 0;
        }
        false
    }
}

/// The correct sign assignment of box `(i, j)`; zero differences resolve to `+1`.
pub fn sign_assignment<S: Scalar>(
    grid: &BoxGrid<'_, S>,
    metric: &Metric,
    i: usize,
    j: usize,
) -> SignAssignment {
    let g = grid.g();
    let mut codes = Vec::with_capacity(g * g);
    for l in 1..=g {
        let a = grid.a_value(i, l);
        for m in 1..=g {
            codes.push(metric.sign_code(a, grid.b_value(j, m)));
        }
    }
    SignAssignment { g, codes }
}

/// True when `sigma` linearizes every cell distance of box `(i, j)` correctly.
pub fn is_correct_for<S: Scalar>(
    sigma: &SignAssignment,
    grid: &BoxGrid<'_, S>,
    metric: &Metric,
    i: usize,
    j: usize,
) -> bool {
    let g = grid.g();
    (1..=g).all(|l| {
        (1..=g)
            .all(|m| metric.code_is_valid(sigma.code(l, m), grid.a_value(i, l), grid.b_value(j, m)))
    })
}
