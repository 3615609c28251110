//! Oracle-equivalence and invariant checks on generated instances.

use boxdtw::compactdp::{CompactOptions, SubquadraticOptions};
use boxdtw::dominance::{dominating_pairs_dnc, dominating_pairs_naive, ColoredPointSet};
use boxdtw::gen::InstanceGen;
use boxdtw::oracle::{coupling_from_path, matching_from_path};
use boxdtw::preprocess::preprocess_faithful;
use boxdtw::staircase::{for_each_path, PackedPath};
use boxdtw::{
    coupling_cost, decompose, matching_cost, preprocess_direct, solve_quadratic,
    solve_subquadratic, GridCostModel, Metric, MetricKind, PointSequence,
};
use rand::Rng;

use crate::report::SelftestReport;

struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn oracle(
    t: &mut Tally,
    a: &PointSequence<i64>,
    b: &PointSequence<i64>,
    model: &GridCostModel<i64>,
    g: usize,
) {
    let tag = || format!("{} n={} m={} g={g}", model.name(), a.len(), b.len());
    let want = match solve_quadratic(a, b, model, false) {
        Ok(s) => s.distance,
        Err(e) => return t.check(false, || format!("{}: quadratic failed: {e}", tag())),
    };
    let opts = SubquadraticOptions {
        compact: CompactOptions {
            traceback: true,
            check_monge: true,
        },
        ..SubquadraticOptions::default()
    };
    let sol = match solve_subquadratic(a, b, model, g, &opts) {
        Ok(s) => s,
        Err(e) => return t.check(false, || format!("{}: subquadratic failed: {e}", tag())),
    };
    t.check(sol.distance == want, || {
        format!("{}: {} != {want}", tag(), sol.distance)
    });
    let path = sol.path.unwrap_or_default();
    let recost = match model.rho() {
        None => coupling_cost(a, b, &coupling_from_path(&path), model.metric()),
        Some(rho) => matching_cost(a, b, &matching_from_path(&path), rho, model.metric()),
    };
    t.check(recost.as_ref() == Ok(&want), || {
        format!("{}: alignment re-costs to {recost:?}", tag())
    });
}

pub fn run_selftest(seed: u64, instances: usize) -> SelftestReport {
    let mut gen = InstanceGen::new(seed);
    let mut t = Tally {
        checks: 0,
        failures: Vec::new(),
    };
    let abs = Metric::abs1d();

    for k in 0..instances {
        let (a, b) = gen.pair::<i64>(40, 1, -100, 100);
        let rho = [0, 1, 17][k % 3];
        for g in 2..=4 {
            oracle(&mut t, &a, &b, &GridCostModel::dtw(abs), g);
            oracle(&mut t, &a, &b, &GridCostModel::ged(abs, rho).unwrap(), g);
        }
        let kind = if k % 2 == 0 {
            MetricKind::L1
        } else {
            MetricKind::Linf
        };
        let metric = Metric::new(kind, 2).unwrap();
        let (a, b) = gen.pair::<i64>(24, 2, -50, 50);
        oracle(&mut t, &a, &b, &GridCostModel::dtw(metric), 2 + k % 2);
    }

    for k in 0..instances.min(10) {
        let (a, b) = gen.pair::<i64>(20, 1, -20, 20);
        let grid = decompose(&a, &b, 2).unwrap();
        let model = GridCostModel::dtw(abs);
        match (
            preprocess_faithful(&grid, &model),
            preprocess_direct(&grid, &model, false),
        ) {
            (Ok(f), Ok(d)) => {
                t.check(f.signatures.per_box().eq(d.signatures.per_box()), || {
                    format!("faithful instance {k}: signatures differ")
                });
                let boxes = grid.box_count() as u64;
                t.check(f.stats.accepted_pairs == boxes, || {
                    format!(
                        "faithful instance {k}: {} accepted pairs for {boxes} boxes",
                        f.stats.accepted_pairs
                    )
                });
            }
            (f, d) => t.check(false, || {
                format!("faithful instance {k}: {:?} / {:?}", f.err(), d.err())
            }),
        }
    }

    for k in 0..instances {
        let rng = gen.rng();
        let d = rng.gen_range(1..=6);
        let mut set = ColoredPointSet::new(d);
        for id in 0..rng.gen_range(0..=60) {
            let p: Vec<i64> = (0..d).map(|_| rng.gen_range(0..4)).collect();
            let res = if rng.gen_bool(0.5) {
                set.push_red(id, p)
            } else {
                set.push_blue(id, p)
            };
            res.expect("point has the set's dimension");
        }
        let mut got = dominating_pairs_dnc(&set).unwrap_or_default();
        got.sort_unstable();
        let want = dominating_pairs_naive(&set).unwrap_or_default();
        t.check(got == want, || {
            format!("dominance set {k}: engines disagree")
        });
    }

    for g in 2..=7 {
        let mut bad = 0u64;
        let walked = for_each_path(g, |start, moves, word| {
            let encoded = moves
                .iter()
                .enumerate()
                .fold(PackedPath::from_start(start), |w, (i, &mv)| w.push(i, mv));
            if encoded != word || word.start() != start || !word.moves().eq(moves.iter().copied()) {
                bad += 1;
            }
        });
        t.check(walked.is_ok() && bad == 0, || {
            format!("encoding at g={g}: {bad} round-trip failures")
        });
    }

    SelftestReport {
        seed,
        checks: t.checks,
        failures: t.failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selftest_passes() {
        let r = run_selftest(3, 4);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert!(r.checks > 40);
    }
}
