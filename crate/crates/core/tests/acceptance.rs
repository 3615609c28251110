//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). Exits non-zero when any
//! criterion fails.

mod common;

use std::time::Instant;

use boxdtw::dominance::{dominating_pairs_dnc, dominating_pairs_naive, ColoredPointSet};
use boxdtw::gen::InstanceGen;
use boxdtw::oracle::{coupling_from_path, matching_from_path};
use boxdtw::preprocess::{compare_paths_fredman, preprocess_faithful};
use boxdtw::staircase::path::MAX_MOVES;
use boxdtw::staircase::{
    for_each_path, paths_between, sign_assignment, BoxCosts, PackedPath, PairCatalog,
};
use boxdtw::{
    coupling_cost, decompose, dtw_quadratic, ged_quadratic, matching_cost, preprocess_direct,
    solve_preprocessed, solve_subquadratic, CompactOptions, CompactStats, GridCostModel, Metric,
    MetricKind, PointSequence, SubquadraticOptions,
};
use common::{all_couplings, all_matchings, brute_dtw, brute_ged};
use rand::seq::SliceRandom;
use rand::Rng;

const SEED: u64 = 0x5eed_2024;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, name: &str, pass: bool, detail: String, started: Instant) {
        if !pass {
            self.failed += 1;
        }
        println!(
            "[{}] {id:>2} {name}: {detail} ({:.1}s)",
            if pass { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64()
        );
    }
}

fn checked_opts() -> SubquadraticOptions {
    SubquadraticOptions {
        compact: CompactOptions {
            traceback: true,
            check_monge: true,
        },
        ..SubquadraticOptions::default()
    }
}

#[derive(Default)]
struct RunLog {
    runs: u64,
    mismatches: Vec<String>,
    monge_checks: u64,
    monge_violations: u64,
    // per run: (g, n, m, stats)
    stats: Vec<(usize, usize, usize, CompactStats)>,
}

/// Subquadratic DTW against the quadratic oracle, re-costing the coupling.
fn check_dtw(
    a: &PointSequence<i64>,
    b: &PointSequence<i64>,
    metric: &Metric,
    g: usize,
    log: &mut RunLog,
) {
    log.runs += 1;
    let tag = format!("dtw n={} m={} g={g}", a.len(), b.len());
    let (want, _) = dtw_quadratic(a, b, metric).unwrap();
    match solve_subquadratic(a, b, &GridCostModel::dtw(*metric), g, &checked_opts()) {
        Ok(sol) => {
            log.monge_checks += sol.compact.monge_checks;
            log.stats.push((g, a.len(), b.len(), sol.compact));
            let coupling = coupling_from_path(&sol.path.unwrap());
            let recost = coupling
                .validate(a.len(), b.len())
                .and_then(|_| coupling_cost(a, b, &coupling, metric));
            if sol.distance != want || recost.as_ref().ok() != Some(&want) {
                log.mismatches.push(format!(
                    "{tag}: got {} want {want} recost {recost:?}",
                    sol.distance
                ));
            }
        }
        Err(e) => {
            if matches!(e, boxdtw::Error::Invariant(_)) {
                log.monge_violations += 1;
            }
            log.mismatches.push(format!("{tag}: {e}"));
        }
    }
}

fn check_ged(
    a: &PointSequence<i64>,
    b: &PointSequence<i64>,
    rho: i64,
    metric: &Metric,
    g: usize,
    log: &mut RunLog,
) {
    log.runs += 1;
    let tag = format!("ged n={} m={} g={g} rho={rho}", a.len(), b.len());
    let (want, _) = ged_quadratic(a, b, &rho, metric).unwrap();
    let model = GridCostModel::ged(*metric, rho).unwrap();
    match solve_subquadratic(a, b, &model, g, &checked_opts()) {
        Ok(sol) => {
            log.monge_checks += sol.compact.monge_checks;
            let mm = matching_from_path(&sol.path.unwrap());
            let recost = mm
                .validate(a.len(), b.len())
                .and_then(|_| matching_cost(a, b, &mm, &rho, metric));
            if sol.distance != want || recost.as_ref().ok() != Some(&want) {
                log.mismatches.push(format!(
                    "{tag}: got {} want {want} recost {recost:?}",
                    sol.distance
                ));
            }
        }
        Err(e) => {
            if matches!(e, boxdtw::Error::Invariant(_)) {
                log.monge_violations += 1;
            }
            log.mismatches.push(format!("{tag}: {e}"));
        }
    }
}

fn summary(log: &RunLog) -> String {
    let first = log
        .mismatches
        .first()
        .map(|s| format!("; first: {s}"))
        .unwrap_or_default();
    format!(
        "{} runs, {} mismatches{first}",
        log.runs,
        log.mismatches.len()
    )
}

fn criterion_1_and_2(report: &mut Report) -> (RunLog, RunLog) {
    let metric = Metric::abs1d();
    let mut gen = InstanceGen::new(SEED);
    let started = Instant::now();
    let mut dtw = RunLog::default();
    let mut inst = Vec::with_capacity(1000);
    for _ in 0..1000 {
        let (a, b) = gen.pair::<i64>(256, 1, -1_000_000, 1_000_000);
        for g in [2, 3, 4] {
            check_dtw(&a, &b, &metric, g, &mut dtw);
        }
        inst.push((a, b));
    }
    report.line(
        "1",
        "DTW oracle equivalence (1000 instances, n,m <= 256, g in {2,3,4})",
        dtw.mismatches.is_empty() && dtw.runs == 3000,
        summary(&dtw),
        started,
    );

    let started = Instant::now();
    let mut ged = RunLog::default();
    for (k, (a, b)) in inst.iter().enumerate() {
        let g = [2, 3, 4][k % 3];
        for rho in [0, 1, 17] {
            check_ged(a, b, rho, &metric, g, &mut ged);
        }
    }
    report.line(
        "2",
        "GED oracle equivalence (same 1000 instances, rho in {0,1,17}, g cycling {2,3,4})",
        ged.mismatches.is_empty() && ged.runs == 3000,
        summary(&ged),
        started,
    );
    (dtw, ged)
}

/// Every length pair with `n + m <= 8` over the alphabet {0, 1, 3}, plus
/// random wide-range values.
fn criterion_3(report: &mut Report) {
    let started = Instant::now();
    let metric = Metric::abs1d();
    let mut gen = InstanceGen::new(SEED ^ 3);
    let (mut instances, mut bad) = (0u64, Vec::new());
    let alphabet = [0i64, 1, 3];
    let check = |a: &[i64], b: &[i64], bad: &mut Vec<String>| {
        let sa = common::scalars(a);
        let sb = common::scalars(b);
        let (d, _) = dtw_quadratic(&sa, &sb, &metric).unwrap();
        if d != brute_dtw(&sa, &sb, &metric) {
            bad.push(format!("dtw {a:?} {b:?}"));
        }
        for rho in [0i64, 1, 2, 17] {
            let (d, _) = ged_quadratic(&sa, &sb, &rho, &metric).unwrap();
            if d != brute_ged(&sa, &sb, &rho, &metric) {
                bad.push(format!("ged rho={rho} {a:?} {b:?}"));
            }
        }
    };
    for n in 1..=7usize {
        for m in 1..=(8 - n) {
            let couplings = all_couplings(n, m).len();
            let matchings = all_matchings(n, m).len();
            assert!(couplings > 0 && matchings > 0);
            let total = alphabet.len().pow((n + m) as u32);
            for code in 0..total {
                let mut c = code;
                let mut vals = Vec::with_capacity(n + m);
                for _ in 0..n + m {
                    vals.push(alphabet[c % 3]);
                    c /= 3;
                }
                check(&vals[..n], &vals[n..], &mut bad);
                instances += 1;
            }
            for _ in 0..50 {
                let a: Vec<i64> = (0..n)
                    .map(|_| gen.rng().gen_range(-1_000_000..=1_000_000))
                    .collect();
                let b: Vec<i64> = (0..m)
                    .map(|_| gen.rng().gen_range(-1_000_000..=1_000_000))
                    .collect();
                check(&a, &b, &mut bad);
                instances += 1;
            }
        }
    }
    let first = bad
        .first()
        .map(|s| format!("; first: {s}"))
        .unwrap_or_default();
    report.line(
        "3",
        "brute-force grounding (all n+m <= 8)",
        bad.is_empty(),
        format!("{instances} instances, {} mismatches{first}", bad.len()),
        started,
    );
}

fn criterion_4(report: &mut Report) {
    let started = Instant::now();
    let metric = Metric::abs1d();
    let mut gen = InstanceGen::new(SEED ^ 4);
    let mut bad = Vec::new();
    let (mut accepted, mut boxes) = (0u64, 0u64);
    for k in 0..100 {
        let (a, b) = gen.pair::<i64>(60, 1, -50, 50);
        let model = if k % 2 == 0 {
            GridCostModel::dtw(metric)
        } else {
            GridCostModel::ged(metric, [0, 1, 17][k % 3]).unwrap()
        };
        let grid = decompose(&a, &b, 2).unwrap();
        let faithful = preprocess_faithful(&grid, &model).unwrap();
        let direct = preprocess_direct(&grid, &model, false).unwrap();
        let s2 = (grid.s_rows() * grid.s_cols()) as u64;
        accepted += faithful.stats.accepted_pairs;
        boxes += s2;
        if faithful.stats.accepted_pairs != s2 {
            bad.push(format!(
                "instance {k}: accepted {} != s^2 {s2}",
                faithful.stats.accepted_pairs
            ));
        }
        if !faithful
            .signatures
            .per_box()
            .eq(direct.signatures.per_box())
        {
            bad.push(format!("instance {k}: signatures differ"));
        }
        let opts = CompactOptions {
            traceback: false,
            check_monge: true,
        };
        let (df, _, _) = solve_preprocessed(&grid, &model, &faithful, opts).unwrap();
        let (dd, _, _) = solve_preprocessed(&grid, &model, &direct, opts).unwrap();
        let want = boxdtw::oracle::solve_quadratic(&a, &b, &model, false)
            .unwrap()
            .distance;
        if df != dd || df.finite() != Some(&want) {
            bad.push(format!("instance {k}: distances {df:?} / {dd:?} / {want}"));
        }
    }
    let first = bad
        .first()
        .map(|s| format!("; first: {s}"))
        .unwrap_or_default();
    report.line(
        "4",
        "faithful preprocessing at g = 2 (100 instances, n <= 60)",
        bad.is_empty(),
        format!(
            "{} problems, accepted pairs {accepted} over {boxes} boxes{first}",
            bad.len()
        ),
        started,
    );
}

fn criterion_5(report: &mut Report) {
    let started = Instant::now();
    let mut gen = InstanceGen::new(SEED ^ 5);
    let rng = gen.rng();
    let (mut bad, mut pairs, mut points) = (0usize, 0usize, 0usize);
    for _ in 0..500 {
        let d = rng.gen_range(1..=8);
        let total = rng.gen_range(0..=500);
        let span = *[2i64, 5, 50, 1_000_000].choose(rng).unwrap();
        let mut pool: Vec<Vec<i64>> = Vec::new();
        let mut set = ColoredPointSet::new(d);
        for id in 0..total {
            let coords = if !pool.is_empty() && rng.gen_bool(0.3) {
                pool.choose(rng).unwrap().clone()
            } else {
                (0..d).map(|_| rng.gen_range(-span..=span)).collect()
            };
            pool.push(coords.clone());
            if rng.gen_bool(0.5) {
                set.push_red(id, coords).unwrap();
            } else {
                set.push_blue(id, coords).unwrap();
            }
        }
        points += total;
        let want = dominating_pairs_naive(&set).unwrap();
        let mut got = dominating_pairs_dnc(&set).unwrap();
        got.sort_unstable();
        pairs += want.len();
        if got != want {
            bad += 1;
        }
    }
    report.line(
        "5",
        "dominance engine (500 colored sets, |Q| <= 500, d <= 8, duplicates)",
        bad == 0,
        format!("{points} points, {pairs} dominating pairs, {bad} mismatching sets"),
        started,
    );
}

fn criterion_6(report: &mut Report) {
    let started = Instant::now();
    let mut gen = InstanceGen::new(SEED ^ 6);
    let (mut comparisons, mut bad) = (0u64, Vec::new());
    for k in 0..50 {
        let (a, b) = gen.pair::<i64>(14, 1, -20, 20);
        let metric = Metric::abs1d();
        let model = if k % 2 == 0 {
            GridCostModel::dtw(metric)
        } else {
            GridCostModel::ged(metric, gen.rng().gen_range(0..=12)).unwrap()
        };
        for g in [2, 3] {
            let grid = decompose(&a, &b, g).unwrap();
            let catalog = PairCatalog::new(g).unwrap();
            let groups: Vec<Vec<PackedPath>> = catalog
                .pairs()
                .iter()
                .map(|p| paths_between(g, p.v, p.w))
                .collect();
            for i in 1..=grid.s_rows() {
                for j in 1..=grid.s_cols() {
                    let sigma = sign_assignment(&grid, model.metric(), i, j);
                    let costs = BoxCosts::new(&grid, &model, i, j);
                    for paths in &groups {
                        for &p in paths {
                            for &q in paths {
                                comparisons += 1;
                                let got =
                                    compare_paths_fredman(&grid, &model, (i, j), p, q, &sigma)
                                        .unwrap();
                                let (cp, cq) = (costs.refined_cost(p), costs.refined_cost(q));
                                let ext = boxdtw::staircase::path_cost(&grid, &model, i, j, p)
                                    .cmp(&boxdtw::staircase::path_cost(&grid, &model, i, j, q));
                                let both_inf = !cp.to_ext().is_finite() && !cq.to_ext().is_finite();
                                if got != cp.cmp(&cq) || (!both_inf && got != ext) {
                                    bad.push(format!(
                                        "instance {k} g={g} box ({i},{j}) {p:?} vs {q:?}"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let first = bad
        .first()
        .map(|s| format!("; first: {s}"))
        .unwrap_or_default();
    report.line(
        "6",
        "Fredman comparison soundness (50 instances, g in {2,3}, all boxes and same-endpoint pairs)",
        bad.is_empty() && comparisons > 0,
        format!("{comparisons} comparisons, {} disagreements{first}", bad.len()),
        started,
    );
}

fn criterion_7(report: &mut Report, dtw: &RunLog, ged: &RunLog) {
    let started = Instant::now();
    let checks = dtw.monge_checks + ged.monge_checks;
    let violations = dtw.monge_violations + ged.monge_violations;
    report.line(
        "7",
        "non-crossing minimal pairs over criteria 1-2",
        violations == 0 && checks > 0,
        format!("{checks} pair checks, {violations} violations"),
        started,
    );
}

fn criterion_8(report: &mut Report, dtw: &RunLog) {
    let started = Instant::now();
    let over_box: Vec<_> = dtw
        .stats
        .iter()
        .filter(|(g, _, _, s)| s.max_box_evaluations as f64 > CompactStats::box_bound(*g))
        .collect();
    let worst = dtw
        .stats
        .iter()
        .map(|(g, _, _, s)| s.max_box_evaluations as f64 / CompactStats::box_bound(*g))
        .fold(0.0, f64::max);
    let per_box_ok = over_box.is_empty() && !dtw.stats.is_empty();

    let mut aggregate_ok = true;
    let mut ratios = Vec::new();
    for g in [3, 4] {
        let (mut evals, mut cells, mut runs, mut over) = (0u64, 0u64, 0u64, 0u64);
        for (_, n, m, s) in dtw
            .stats
            .iter()
            .filter(|(gg, n, m, _)| *gg == g && (*n).min(*m) >= 64)
        {
            evals += s.candidate_evaluations;
            cells += (n * m) as u64;
            runs += 1;
            if s.candidate_evaluations >= (n * m) as u64 {
                over += 1;
            }
        }
        aggregate_ok &= runs > 0 && over == 0;
        ratios.push(format!(
            "g={g}: {runs} runs, evaluations/cells = {:.2}, {over} runs not below",
            evals as f64 / cells.max(1) as f64
        ));
    }
    report.line(
        "8",
        "work-count bound (per-box ceiling; aggregate below n*m for n >= 64, g >= 3)",
        per_box_ok && aggregate_ok,
        format!(
            "per-box: {} ({} runs over, worst ratio {worst:.2}); aggregate: {} ({})",
            if per_box_ok { "holds" } else { "violated" },
            over_box.len(),
            if aggregate_ok { "holds" } else { "violated" },
            ratios.join("; ")
        ),
        started,
    );
}

fn criterion_9(report: &mut Report) {
    let started = Instant::now();
    let mut gen = InstanceGen::new(SEED ^ 9);
    let mut log = RunLog::default();
    for k in 0..200 {
        let kind = if k % 2 == 0 {
            MetricKind::L1
        } else {
            MetricKind::Linf
        };
        let d = 2 + (k / 2) % 2;
        let g = 2 + (k / 4) % 2;
        let metric = Metric::new(kind, d).unwrap();
        let (a, b) = gen.pair::<i64>(128, d, -1000, 1000);
        check_dtw(&a, &b, &metric, g, &mut log);
        check_ged(&a, &b, [0, 1, 17][k % 3], &metric, g, &mut log);
    }
    report.line(
        "9",
        "L1 / Linf oracle equivalence (200 instances, d in {2,3}, n <= 128, g in {2,3})",
        log.mismatches.is_empty() && log.monge_violations == 0,
        summary(&log),
        started,
    );
}

const PATH_COUNTS: [u64; 12] = [
    7, 49, 273, 1483, 8083, 44357, 244933, 1359511, 7578591, 42399993, 237947097, 1338894243,
];

fn criterion_10(report: &mut Report) {
    let started = Instant::now();
    let mut bad = Vec::new();
    let mut total = 0u64;
    for g in 2..=13usize {
        let mut count = 0u64;
        let mut errors = 0u64;
        for_each_path(g, |start, moves, word| {
            count += 1;
            let encoded = moves
                .iter()
                .enumerate()
                .fold(PackedPath::from_start(start), |w, (t, &mv)| w.push(t, mv));
            let fits = moves.len() <= MAX_MOVES && 5 + 2 * moves.len() <= 64;
            if encoded != word
                || word.start() != start
                || !word.moves().eq(moves.iter().copied())
                || !fits
            {
                errors += 1;
            }
        })
        .unwrap();
        total += count;
        if errors > 0 || count != PATH_COUNTS[g - 2] {
            bad.push(format!("g={g}: {count} paths, {errors} round-trip errors"));
        }
    }
    report.line(
        "10",
        "path encoding round trip (full enumeration, g = 2..13)",
        bad.is_empty(),
        format!(
            "{total} paths, all in one 64-bit word; {} problems {}",
            bad.len(),
            bad.join(", ")
        ),
        started,
    );
}

fn main() {
    let mut report = Report { failed: 0 };
    let only: Option<Vec<String>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').map(str::to_owned).collect());
    let want = |id: &str| only.as_ref().is_none_or(|o| o.iter().any(|x| x == id));
    if want("1") || want("2") || want("7") || want("8") {
        let (dtw, ged) = criterion_1_and_2(&mut report);
        criterion_7(&mut report, &dtw, &ged);
        criterion_8(&mut report, &dtw);
    }
    if want("3") {
        criterion_3(&mut report);
    }
    if want("4") {
        criterion_4(&mut report);
    }
    if want("5") {
        criterion_5(&mut report);
    }
    if want("6") {
        criterion_6(&mut report);
    }
    if want("9") {
        criterion_9(&mut report);
    }
    if want("10") {
        criterion_10(&mut report);
    }
    println!("acceptance: {} criteria failed", report.failed);
    if report.failed > 0 {
        std::process::exit(1);
    }
}
