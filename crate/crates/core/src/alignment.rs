//! Couplings (DTW alignments) and monotone matchings (GED alignments).
//!
//! Index pairs are 1-based throughout: `(1, 1)` pairs the first points.

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::scalar::Scalar;
use crate::sequence::PointSequence;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coupling {
    pub pairs: Vec<(usize, usize)>,
}

impl Coupling {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Coupling { pairs }
    }

    /// Checks the coupling structure for sequences of lengths `(n, m)`,
    /// reporting the first violating pair.
    pub fn validate(&self, n: usize, m: usize) -> Result<()> {
        let bad = |position: usize, message: String| Error::Validation {
            what: "coupling",
            position,
            message,
        };
        let first = *self
            .pairs
            .first()
            .ok_or_else(|| bad(0, "coupling is empty".into()))?;
        if first != (1, 1) {
            return Err(bad(0, format!("first pair is {first:?}, expected (1, 1)")));
        }
        for (k, w) in self.pairs.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            let step = (b.0.wrapping_sub(a.0), b.1.wrapping_sub(a.1));
            if !matches!(step, (0, 1) | (1, 0) | (1, 1)) {
                return Err(bad(
                    k + 1,
                    format!("step {a:?} -> {b:?} is not right/up/diagonal"),
                ));
            }
        }
        let last = *self.pairs.last().expect("nonempty");
        if last != (n, m) {
            return Err(bad(
                self.pairs.len() - 1,
                format!("last pair is {last:?}, expected ({n}, {m})"),
            ));
        }
        Ok(())
    }

    pub fn transposed(&self) -> Coupling {
        Coupling {
            pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MonotoneMatching {
    pub pairs: Vec<(usize, usize)>,
}

impl MonotoneMatching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        MonotoneMatching { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs must be in range and strictly increasing in both coordinates.
    pub fn validate(&self, n: usize, m: usize) -> Result<()> {
        let bad = |position: usize, message: String| Error::Validation {
            what: "matching",
            position,
            message,
        };
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            if i == 0 || j == 0 || i > n || j > m {
                return Err(bad(
                    k,
                    format!("pair ({i}, {j}) out of range for lengths ({n}, {m})"),
                ));
            }
            if k > 0 {
                let (pi, pj) = self.pairs[k - 1];
                if i <= pi || j <= pj {
                    return Err(bad(
                        k,
                        format!("pair ({i}, {j}) does not strictly follow ({pi}, {pj})"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn transposed(&self) -> MonotoneMatching {
        MonotoneMatching {
            pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }
}

fn check_dims<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    metric: &Metric,
) -> Result<()> {
    for seq in [a, b] {
        if seq.dim() != metric.dim() {
            return Err(Error::DimensionMismatch {
                expected: metric.dim(),
                found: seq.dim(),
            });
        }
    }
    Ok(())
}

/// Sum of `dist(p_i, q_j)` over all pairs of a valid coupling.
pub fn coupling_cost<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    coupling: &Coupling,
    metric: &Metric,
) -> Result<S> {
    check_dims(a, b, metric)?;
    coupling.validate(a.len(), b.len())?;
    Ok(coupling.pairs.iter().fold(S::zero(), |acc, &(i, j)| {
        acc + metric.dist_unchecked(a.point(i - 1), b.point(j - 1))
    }))
}

/// Matched distances plus `rho` for every unmatched point of either sequence.
pub fn matching_cost<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    matching: &MonotoneMatching,
    rho: &S,
    metric: &Metric,
) -> Result<S> {
    check_dims(a, b, metric)?;
    matching.validate(a.len(), b.len())?;
    let matched = matching.pairs.iter().fold(S::zero(), |acc, &(i, j)| {
        acc + metric.dist_unchecked(a.point(i - 1), b.point(j - 1))
    });
    let gaps = (a.len() + b.len() - 2 * matching.len()) as u64;
    Ok(matched + rho.times(gaps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> PointSequence<i64> {
        PointSequence::from_scalars("s", v.to_vec()).unwrap()
    }

    #[test]
    fn coupling_cost_examples() {
        let m = Metric::abs1d();
        let c = Coupling::new(vec![(1, 1)]);
        assert_eq!(coupling_cost(&seq(&[0]), &seq(&[0]), &c, &m).unwrap(), 0);
        let c = Coupling::new(vec![(1, 1), (2, 1)]);
        assert_eq!(coupling_cost(&seq(&[0, 3]), &seq(&[1]), &c, &m).unwrap(), 3);
        let c = Coupling::new(vec![(1, 1), (2, 2)]);
        assert_eq!(
            coupling_cost(&seq(&[1, 2]), &seq(&[1, 2]), &c, &m).unwrap(),
            0
        );
    }

    #[test]
    fn coupling_validation_reports_first_violation() {
        let c = Coupling::new(vec![(1, 1), (2, 2), (2, 4), (3, 4)]);
        match c.validate(3, 4).unwrap_err() {
            Error::Validation { position, .. } => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Coupling::new(vec![(1, 2), (2, 2)]).validate(2, 2).is_err());
        assert!(Coupling::new(vec![(1, 1), (1, 2)]).validate(2, 2).is_err());
        assert!(Coupling::new(vec![(1, 1), (1, 1), (2, 2)])
            .validate(2, 2)
            .is_err());
    }

    #[test]
    fn matching_cost_examples() {
        let m = Metric::abs1d();
        let empty = MonotoneMatching::default();
        assert_eq!(
            matching_cost(&seq(&[0]), &seq(&[10]), &empty, &1, &m).unwrap(),
            2
        );
        let one = MonotoneMatching::new(vec![(1, 1)]);
        assert_eq!(
            matching_cost(&seq(&[0]), &seq(&[10]), &one, &1, &m).unwrap(),
            10
        );
        let full = MonotoneMatching::new(vec![(1, 1), (2, 2)]);
        assert_eq!(
            matching_cost(&seq(&[1, 5]), &seq(&[1, 5]), &full, &7, &m).unwrap(),
            0
        );
    }

    #[test]
    fn matching_validation() {
        assert!(MonotoneMatching::new(vec![(1, 2), (2, 1)])
            .validate(2, 2)
            .is_err());
        assert!(MonotoneMatching::new(vec![(1, 1), (1, 2)])
            .validate(2, 2)
            .is_err());
        assert!(MonotoneMatching::new(vec![(3, 1)]).validate(2, 2).is_err());
        assert!(MonotoneMatching::new(vec![(1, 2), (2, 3)])
            .validate(2, 3)
            .is_ok());
    }

    #[test]
    fn cost_is_symmetric_under_transposition() {
        let m = Metric::abs1d();
        let (a, b) = (seq(&[4, -1, 7]), seq(&[2, 2]));
        let c = Coupling::new(vec![(1, 1), (2, 1), (3, 2)]);
        assert_eq!(
            coupling_cost(&a, &b, &c, &m).unwrap(),
            coupling_cost(&b, &a, &c.transposed(), &m).unwrap()
        );
        let mm = MonotoneMatching::new(vec![(1, 2)]);
        assert_eq!(
            matching_cost(&a, &b, &mm, &3, &m).unwrap(),
            matching_cost(&b, &a, &mm.transposed(), &3, &m).unwrap()
        );
    }
}
