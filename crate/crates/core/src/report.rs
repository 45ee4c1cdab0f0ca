//! Exhaustive survey over `(type, S_P)` pairs.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{verify_case, CaseReport};
use crate::root_system::{LieType, ParabolicSubset, RootData};

/// Cases whose shifted box has more points than this skip the degree bound.
pub const DEGREE_BOX_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub failures: Vec<String>,
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl SurveyReport {
    pub fn ok(&self) -> bool {
        self.summary.failures.is_empty()
    }
}

/// Every `(type, S_P)` with rank at most `max_rank` and `S_P` proper, in
/// type order then by subset mask.
pub fn survey_cases(max_rank: usize) -> Vec<(LieType, ParabolicSubset)> {
    LieType::all_up_to_rank(max_rank)
        .into_iter()
        .flat_map(|t| {
            ParabolicSubset::all_proper(t.rank())
                .into_iter()
                .map(move |p| (t, p))
        })
        .collect()
}

/// Runs [`verify_case`] over the survey. `jobs = 0` uses the default
/// rayon pool size. Output order does not depend on `jobs`.
pub fn run_survey(max_rank: usize, jobs: usize) -> Result<SurveyReport> {
    if max_rank == 0 {
        return Err(Error::InvalidRank {
            family: '*',
            rank: 0,
        });
    }
    let start = Instant::now();
    let types = LieType::all_up_to_rank(max_rank);
    let data: Vec<RootData> = types.iter().map(|&t| RootData::of_type(t)).collect();
    let cases: Vec<(usize, ParabolicSubset)> = types
        .iter()
        .enumerate()
        .flat_map(|(i, t)| ParabolicSubset::all_proper(t.rank()).into_iter().map(move |p| (i, p)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let reports: Vec<Result<CaseReport>> = pool.install(|| {
        cases
            .par_iter()
            .map(|(i, p)| verify_case(&data[*i], p, DEGREE_BOX_LIMIT))
            .collect()
    });
    let reports = reports.into_iter().collect::<Result<Vec<_>>>()?;

    let failures = reports
        .iter()
        .flat_map(|r| {
            r.failures
                .iter()
                .map(move |f| format!("{} S_P={:?}: {f}", r.type_label, r.parabolic))
        })
        .collect();
    Ok(SurveyReport {
        summary: Summary {
            cases: reports.len(),
            failures,
            wall_time: start.elapsed().as_secs_f64(),
        },
        cases: reports,
    })
}

/// One CSV row per case.
pub fn csv_header() -> &'static str {
    "type,S_P,b2,dim,n_beta,index_k0,box_points_checked,box_all_zero,value_at_minus_c1,pasquier_lhs,mukai_lhs,mukai_equality,degree_bound,failures"
}

pub fn csv_row(r: &CaseReport) -> String {
    let sp = r
        .parabolic
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let nb = r
        .n_beta
        .iter()
        .map(|(b, n)| format!("{b}:{n}"))
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.type_label,
        sp,
        r.b2,
        r.dim,
        nb,
        r.index_k0,
        r.box_points_checked,
        r.box_all_zero,
        r.value_at_minus_c1,
        r.pasquier.lhs,
        r.mukai.lhs,
        r.mukai_equality,
        r.degree_bound.map(|b| b.to_string()).unwrap_or_default(),
        r.failures.len()
    )
}
