//! Exhaustive reference solvers shared by the integration tests.

#![allow(dead_code)]

use boxdtw::{Metric, PointSequence, Scalar};

/// Minimum cost over every coupling, by explicit enumeration.
pub fn brute_dtw<S: Scalar>(a: &PointSequence<S>, b: &PointSequence<S>, metric: &Metric) -> S {
    fn walk<S: Scalar>(
        a: &PointSequence<S>,
        b: &PointSequence<S>,
        metric: &Metric,
        i: usize,
        j: usize,
        acc: S,
        best: &mut Option<S>,
    ) {
        let acc = acc + metric.dist(a.point(i), b.point(j)).unwrap();
        if i + 1 == a.len() && j + 1 == b.len() {
            if best.as_ref().is_none_or(|b| acc < *b) {
                *best = Some(acc);
            }
            return;
        }
        if i + 1 < a.len() {
            walk(a, b, metric, i + 1, j, acc.clone(), best);
        }
        if j + 1 < b.len() {
            walk(a, b, metric, i, j + 1, acc.clone(), best);
        }
        if i + 1 < a.len() && j + 1 < b.len() {
            walk(a, b, metric, i + 1, j + 1, acc, best);
        }
    }
    let mut best = None;
    walk(a, b, metric, 0, 0, S::zero(), &mut best);
    best.expect("at least one coupling")
}

/// Every coupling of `n` and `m` points as 1-based index pairs.
pub fn all_couplings(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    fn walk(n: usize, m: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (i, j) = *cur.last().unwrap();
        if i == n && j == m {
            out.push(cur.clone());
            return;
        }
        for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
            if i + di <= n && j + dj <= m {
                cur.push((i + di, j + dj));
                walk(n, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(n, m, &mut vec![(1, 1)], &mut out);
    out
}

/// Every monotone matching of `n` and `m` points (strictly increasing pairs).
pub fn all_matchings(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    fn walk(
        n: usize,
        m: usize,
        i0: usize,
        j0: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        out.push(cur.clone());
        for i in i0 + 1..=n {
            for j in j0 + 1..=m {
                cur.push((i, j));
                walk(n, m, i, j, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(n, m, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Minimum over every monotone matching of matched distances plus `rho`
/// per unmatched point.
pub fn brute_ged<S: Scalar>(
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    rho: &S,
    metric: &Metric,
) -> S {
    all_matchings(a.len(), b.len())
        .into_iter()
        .map(|mm| {
            let matched = mm.iter().fold(S::zero(), |acc, &(i, j)| {
                acc + metric.dist(a.point(i - 1), b.point(j - 1)).unwrap()
            });
            matched + rho.times((a.len() + b.len() - 2 * mm.len()) as u64)
        })
        .min()
        .expect("the empty matching always exists")
}

pub fn scalars(v: &[i64]) -> PointSequence<i64> {
    PointSequence::from_scalars("s", v.to_vec()).unwrap()
}
