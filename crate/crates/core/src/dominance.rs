//! Bichromatic dominating-pair reporting.
//!
//! A red point `p` dominates a blue point `q` when `p[k] >= q[k]` for every
//! coordinate `k`. Both engines report every such `(red_id, blue_id)` pair.

use crate::error::{Error, Result};

/// Red and blue points in `T^d`, each tagged with a caller-chosen id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColoredPointSet<T> {
    d: usize,
    red: Vec<(usize, Vec<T>)>,
    blue: Vec<(usize, Vec<T>)>,
}

impl<T: Ord + Clone> ColoredPointSet<T> {
    pub fn new(d: usize) -> Self {
        ColoredPointSet {
            d,
            red: Vec::new(),
            blue: Vec::new(),
        }
    }

    pub fn from_parts(
        d: usize,
        red: Vec<(usize, Vec<T>)>,
        blue: Vec<(usize, Vec<T>)>,
    ) -> Result<Self> {
        let set = ColoredPointSet { d, red, blue };
        set.validate()?;
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn red(&self) -> &[(usize, Vec<T>)] {
        &self.red
    }

    pub fn blue(&self) -> &[(usize, Vec<T>)] {
        &self.blue
    }

    pub fn push_red(&mut self, id: usize, coords: Vec<T>) -> Result<()> {
        check_len(self.d, &coords)?;
        self.red.push((id, coords));
        Ok(())
    }

    pub fn push_blue(&mut self, id: usize, coords: Vec<T>) -> Result<()> {
        check_len(self.d, &coords)?;
        self.blue.push((id, coords));
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Input(
                "dominance dimension must be at least 1".into(),
            ));
        }
        for (_, p) in self.red.iter().chain(&self.blue) {
            check_len(self.d, p)?;
        }
        Ok(())
    }
}

fn check_len<T>(d: usize, coords: &[T]) -> Result<()> {
    if coords.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: coords.len(),
        });
    }
    Ok(())
}

fn dominates<T: Ord>(red: &[T], blue: &[T]) -> bool {
    red.iter().zip(blue).all(|(r, b)| r >= b)
}

/// All dominating pairs by direct comparison, in `(red_id, blue_id)` order.
pub fn dominating_pairs_naive<T: Ord + Clone>(
    set: &ColoredPointSet<T>,
) -> Result<Vec<(usize, usize)>> {
    set.validate()?;
    let mut out = Vec::new();
    for (rid, r) in &set.red {
        for (bid, b) in &set.blue {
            if dominates(r, b) {
                out.push((*rid, *bid));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// All dominating pairs by divide and conquer on the last coordinate.
///
/// Output order is unspecified.
pub fn dominating_pairs_dnc<T: Ord + Clone>(
    set: &ColoredPointSet<T>,
) -> Result<Vec<(usize, usize)>> {
    set.validate()?;
    let mut out = Vec::new();
    let red: Vec<usize> = (0..set.red.len()).collect();
    let blue: Vec<usize> = (0..set.blue.len()).collect();
    let mut engine = Dnc { set, out: &mut out };
    engine.solve(red, blue, set.d);
    Ok(out)
}

struct Dnc<'a, T> {
    set: &'a ColoredPointSet<T>,
    out: &'a mut Vec<(usize, usize)>,
}

impl<T: Ord + Clone> Dnc<'_, T> {
    fn r(&self, k: usize) -> &[T] {
        &self.set.red[k].1
    }

    fn b(&self, k: usize) -> &[T] {
        &self.set.blue[k].1
    }

    fn report(&mut self, r: usize, b: usize) {
        self.out.push((self.set.red[r].0, self.set.blue[b].0));
    }

    /// Reports pairs among `red x blue` that dominate on coordinates `0..k`.
    fn solve(&mut self, red: Vec<usize>, blue: Vec<usize>, k: usize) {
        if red.is_empty() || blue.is_empty() {
            return;
        }
        if k == 0 {
            for &r in &red {
                for &b in &blue {
                    self.report(r, b);
                }
            }
            return;
        }
        if red.len() == 1 || blue.len() == 1 {
            for &r in &red {
                for &b in &blue {
                    if dominates(&self.r(r)[..k], &self.b(b)[..k]) {
                        self.report(r, b);
                    }
                }
            }
            return;
        }
        if k == 1 {
            self.sweep(red, blue);
            return;
        }

        let c = k - 1;
        let mut values: Vec<&T> = red
            .iter()
            .map(|&r| &self.r(r)[c])
            .chain(blue.iter().map(|&b| &self.b(b)[c]))
            .collect();
        values.sort_unstable();
        let (min, max) = (values[0], values[values.len() - 1]);
        if min == max {
            self.solve(red, blue, c);
            return;
        }
        let mut split = values[(values.len() - 1) / 2];
        if split == max {
            let below = values.partition_point(|v| *v < max);
            split = values[below - 1];
        }
        let split = split.clone();

        let (red_lo, red_hi): (Vec<usize>, Vec<usize>) =
            red.into_iter().partition(|&r| self.r(r)[c] <= split);
        let (blue_lo, blue_hi): (Vec<usize>, Vec<usize>) =
            blue.into_iter().partition(|&b| self.b(b)[c] <= split);
        self.solve(red_hi.clone(), blue_lo.clone(), c);
        self.solve(red_lo, blue_lo, k);
        self.solve(red_hi, blue_hi, k);
    }

    fn sweep(&mut self, red: Vec<usize>, mut blue: Vec<usize>) {
        blue.sort_unstable_by(|&x, &y| self.b(x)[0].cmp(&self.b(y)[0]));
        for r in red {
            let end = blue.partition_point(|&b| self.b(b)[0] <= self.r(r)[0]);
            for idx in 0..end {
                self.report(r, blue[idx]);
            }
        }
    }
}
