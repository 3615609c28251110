use std::fmt;

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::scalar::Scalar;

/// Edge weights of the alignment grid graph.
///
/// * `Dtw`: every edge entering cell `(l, m)` weighs `dist(p_l, q_m)`.
/// * `Ged`: horizontal and vertical edges weigh `rho`; the diagonal edge
///   entering `(l, m)` weighs `dist(p_l, q_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridCostModel<S> {
    Dtw { metric: Metric },
    Ged { metric: Metric, rho: S },
}

impl<S: Scalar> GridCostModel<S> {
    pub fn dtw(metric: Metric) -> Self {
        GridCostModel::Dtw { metric }
    }

    pub fn ged(metric: Metric, rho: S) -> Result<Self> {
        if rho < S::zero() {
            return Err(Error::Config(format!(
                "gap penalty must be non-negative, got {rho}"
            )));
        }
        Ok(GridCostModel::Ged { metric, rho })
    }

    pub fn metric(&self) -> &Metric {
        match self {
            GridCostModel::Dtw { metric } | GridCostModel::Ged { metric, .. } => metric,
        }
    }

    pub fn rho(&self) -> Option<&S> {
        match self {
            GridCostModel::Dtw { .. } => None,
            GridCostModel::Ged { rho, .. } => Some(rho),
        }
    }

    pub fn is_ged(&self) -> bool {
        matches!(self, GridCostModel::Ged { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GridCostModel::Dtw { .. } => "dtw",
            GridCostModel::Ged { .. } => "ged",
        }
    }
}

impl<S: Scalar> fmt::Display for GridCostModel<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridCostModel::Dtw { metric } => write!(f, "dtw[{metric}]"),
            GridCostModel::Ged { metric, rho } => write!(f, "ged[{metric}, rho={rho}]"),
        }
    }
}
