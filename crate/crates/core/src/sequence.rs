use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point in `R^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<S> {
    pub coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Point { coords }
    }

    pub fn scalar(v: S) -> Self {
        Point { coords: vec![v] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Nonempty ordered sequence of points sharing one dimension.
///
/// Coordinates are stored flat, point `k` (0-based) occupying
/// `coords[k*dim .. (k+1)*dim]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSequence<S> {
    label: String,
    dim: usize,
    coords: Vec<S>,
}

impl<S: Scalar> PointSequence<S> {
    pub fn new(label: impl Into<String>, points: Vec<Point<S>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::Input("point sequence must be nonempty".into()))?;
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::Input("points must have dimension at least 1".into()));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            coords.extend(p.coords);
        }
        Ok(PointSequence {
            label: label.into(),
            dim,
            coords,
        })
    }

    /// One-dimensional sequence from plain scalars.
    pub fn from_scalars(label: impl Into<String>, values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("point sequence must be nonempty".into()));
        }
        Ok(PointSequence {
            label: label.into(),
            dim: 1,
            coords: values,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates of point `k`, 0-based.
    pub fn point(&self, k: usize) -> &[S] {
        &self.coords[k * self.dim..(k + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[S]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn raw_coords(&self) -> &[S] {
        &self.coords
    }
}
