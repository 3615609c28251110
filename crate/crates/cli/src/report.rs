use serde::Serialize;

/// Work counters shared by both algorithms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WorkUnits {
    pub cell_updates: u64,
    pub candidate_evaluations: u64,
    pub dominance_pairs_reported: u64,
}

/// Result of one distance computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub distance: f64,
    /// Exact value as printed by the arithmetic mode.
    pub distance_exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling_or_matching: Option<Vec<(usize, usize)>>,
    pub algorithm: String,
    pub g: Option<usize>,
    pub work_units: WorkUnits,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub problem: String,
    pub n: usize,
    pub m: usize,
    pub quadratic: Report,
    pub subquadratic: Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: u64,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Output {
    Single(Report),
    Bench(BenchReport),
    Selftest(SelftestReport),
}

const TSV_HEADER: &str =
    "algorithm\tg\tdistance\tcell_updates\tcandidate_evaluations\tdominance_pairs_reported\twall_time_ms\talignment";

fn tsv_row(r: &Report) -> String {
    let g = r.g.map(|g| g.to_string()).unwrap_or_else(|| "-".into());
    let alignment = r
        .coupling_or_matching
        .as_ref()
        .map(|p| {
            p.iter()
                .map(|(i, j)| format!("{i}:{j}"))
                .collect::<Vec<_>>()
                .join(",")
        })
        .unwrap_or_else(|| "-".into());
    format!(
        "{}\t{g}\t{}\t{}\t{}\t{}\t{:.3}\t{alignment}",
        r.algorithm,
        r.distance_exact,
        r.work_units.cell_updates,
        r.work_units.candidate_evaluations,
        r.work_units.dominance_pairs_reported,
        r.wall_time_ms
    )
}

impl Output {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_tsv(&self) -> String {
        match self {
            Output::Single(r) => format!("{TSV_HEADER}\n{}\n", tsv_row(r)),
            Output::Bench(b) => format!(
                "{TSV_HEADER}\n{}\n{}\n",
                tsv_row(&b.quadratic),
                tsv_row(&b.subquadratic)
            ),
            Output::Selftest(s) => {
                let mut out = format!(
                    "seed\tchecks\tfailures\n{}\t{}\t{}\n",
                    s.seed,
                    s.checks,
                    s.failures.len()
                );
                for f in &s.failures {
                    out.push_str(&format!("# {f}\n"));
                }
                out
            }
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self, Output::Selftest(s) if !s.failures.is_empty())
    }
}
