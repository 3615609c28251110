//! Distance functions and the per-cell sign codes that linearize them.
//!
//! For a fixed sign code, every supported distance becomes a difference of
//! two linear forms, `form(code, a) - form(code, b)`, which is what lets a
//! path-cost comparison split into an `A`-only side and a `B`-only side.
//!
//! Code layout per cell:
//! * `Abs1D`: `0` is `+1`, `1` is `-1`.
//! * `L1`: bit `k` set means coordinate `k` enters with sign `-1`.
//! * `Linf`: `2k + neg` selects the maximizing coordinate `k` and its sign.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Abs1D,
    L1,
    Linf,
}

impl MetricKind {
    pub fn tag(self) -> u8 {
        match self {
            MetricKind::Abs1D => 0,
            MetricKind::L1 => 1,
            MetricKind::Linf => 2,
        }
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "abs" | "abs1d" => Ok(MetricKind::Abs1D),
            "l1" => Ok(MetricKind::L1),
            "linf" => Ok(MetricKind::Linf),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricKind::Abs1D => "abs1d",
            MetricKind::L1 => "l1",
            MetricKind::Linf => "linf",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Metric {
    kind: MetricKind,
    dim: usize,
}

/// Largest dimension for which sign codes are supported (L1 needs `2^d` codes
/// in a byte, and validation coordinates grow with `d`).
pub const MAX_SIGNED_DIM: usize = 3;

impl Metric {
    pub fn new(kind: MetricKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("metric dimension must be at least 1".into()));
        }
        if kind == MetricKind::Abs1D && dim != 1 {
            return Err(Error::Config(format!(
                "abs1d metric requires dim=1, got dim={dim}"
            )));
        }
        Ok(Metric { kind, dim })
    }

    pub fn abs1d() -> Self {
        Metric {
            kind: MetricKind::Abs1D,
            dim: 1,
        }
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dist<S: Scalar>(&self, p: &[S], q: &[S]) -> Result<S> {
        for len in [p.len(), q.len()] {
            if len != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: len,
                });
            }
        }
        Ok(self.dist_unchecked(p, q))
    }

    pub(crate) fn dist_unchecked<S: Scalar>(&self, p: &[S], q: &[S]) -> S {
        match self.kind {
            MetricKind::Abs1D => (p[0].clone() - q[0].clone()).abs(),
            MetricKind::L1 => p
                .iter()
                .zip(q)
                .fold(S::zero(), |acc, (a, b)| acc + (a.clone() - b.clone()).abs()),
            MetricKind::Linf => p
                .iter()
                .zip(q)
                .map(|(a, b)| (a.clone() - b.clone()).abs())
                .max()
                .expect("dimension is at least 1"),
        }
    }

    /// Fails unless sign codes are defined for this metric's dimension.
    pub fn check_signable(&self) -> Result<()> {
        if self.dim > MAX_SIGNED_DIM {
            return Err(Error::Config(format!(
                "boxed algorithms support dimension at most {MAX_SIGNED_DIM}, got {}",
                self.dim
            )));
        }
        Ok(())
    }

    /// Number of distinct sign codes for a single cell.
    pub fn sign_code_count(&self) -> u8 {
        match self.kind {
            MetricKind::Abs1D => 2,
            MetricKind::L1 => 1 << self.dim,
            MetricKind::Linf => 2 * self.dim as u8,
        }
    }

    /// The correct sign code for the pair `(a, b)`; the smallest valid code
    /// when several are valid (zero differences resolve to `+1`, and for
    /// `Linf` the lowest maximizing coordinate wins).
    pub fn sign_code<S: Scalar>(&self, a: &[S], b: &[S]) -> u8 {
        let zero = S::zero();
        match self.kind {
            MetricKind::Abs1D => u8::from(a[0] < b[0]),
            MetricKind::L1 => a.iter().zip(b).enumerate().fold(0u8, |code, (k, (x, y))| {
                if x.clone() - y.clone() < zero {
                    code | (1 << k)
                } else {
                    code
                }
            }),
            MetricKind::Linf => {
                let mut best = 0usize;
                let mut best_abs = (a[0].clone() - b[0].clone()).abs();
                for k in 1..self.dim {
                    let v = (a[k].clone() - b[k].clone()).abs();
                    if v > best_abs {
                        best = k;
                        best_abs = v;
                    }
                }
                let neg = a[best] < b[best];
                (2 * best + usize::from(neg)) as u8
            }
        }
    }

    /// The linear form selected by `code`, applied to `x`.
    pub fn signed_form<S: Scalar>(&self, code: u8, x: &[S]) -> S {
        match self.kind {
            MetricKind::Abs1D => {
                if code == 0 {
                    x[0].clone()
                } else {
                    -x[0].clone()
                }
            }
            MetricKind::L1 => x.iter().enumerate().fold(S::zero(), |acc, (k, v)| {
                if code & (1 << k) == 0 {
                    acc + v.clone()
                } else {
                    acc - v.clone()
                }
            }),
            MetricKind::Linf => {
                let k = (code / 2) as usize;
                if code.is_multiple_of(2) {
                    x[k].clone()
                } else {
                    -x[k].clone()
                }
            }
        }
    }

    /// True when `form(code, a) - form(code, b)` equals `dist(a, b)`.
    pub fn code_is_valid<S: Scalar>(&self, code: u8, a: &[S], b: &[S]) -> bool {
        self.signed_form(code, a) - self.signed_form(code, b) == self.dist_unchecked(a, b)
    }

    /// Number of validation coordinates contributed by one cell.
    pub fn validation_width(&self) -> usize {
        match self.kind {
            MetricKind::Abs1D | MetricKind::L1 => self.dim,
            MetricKind::Linf => 2 * self.dim,
        }
    }

    /// Appends the validation coordinates of one cell for one side.
    ///
    /// With `alpha = forms(a)` and `beta = forms(b)`, `alpha <= beta`
    /// coordinatewise holds exactly when `code` is valid for `(a, b)`.
    pub fn validation_forms<S: Scalar>(&self, code: u8, x: &[S], out: &mut Vec<S>) {
        match self.kind {
            MetricKind::Abs1D | MetricKind::L1 => {
                for (k, v) in x.iter().enumerate() {
                    // -s_k x_k
                    if code & (1 << k) == 0 {
                        out.push(-v.clone());
                    } else {
                        out.push(v.clone());
                    }
                }
            }
            MetricKind::Linf => {
                let lead = self.signed_form(code, x);
                for v in x {
                    out.push(v.clone() - lead.clone());
                    out.push(-v.clone() - lead.clone());
                }
            }
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(d={})", self.kind, self.dim)
    }
}
