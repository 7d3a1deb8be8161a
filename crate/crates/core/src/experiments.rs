//! Verification campaigns over enumerated and random graph populations.
//!
//! Work is split into fixed-size chunks that are processed in parallel and
//! merged in chunk order, so every result is identical for any worker count.

use std::ops::Range;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, BoundId, Status, Structure, Tolerances, TuranTable, ViolationKind};
use crate::eigen::{symmetric_eigenvalues_with, EigenError, JacobiOptions};
use crate::generate::{enumerate_labeled_graphs, gnp, pair_count, random_regular, turan, turan_edges, MAX_ENUMERATION_ORDER};
use crate::graph::{Graph, GraphError};
use crate::oracle::{greedy_independent_set, max_independent_set};
use crate::serial::{format_real, sig12, sig12_opt};
use crate::spectra::adjacency_spectrum;

/// Edge masks (or samples, or trials) per work unit.
pub const CHUNK_SIZE: u64 = 4096;

/// At most this many violation records are kept; the count is always exact.
pub const MAX_RECORDED_VIOLATIONS: usize = 1000;

/// Largest order for which tightness runs use the exact independence number.
pub const EXACT_ALPHA_MAX_ORDER: usize = 60;

pub const MAX_TIGHTNESS_ORDER: usize = 2000;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

type Result<T> = std::result::Result<T, ExperimentError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentOptions {
    pub workers: usize,
    pub tol: Tolerances,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions {
            workers: 1,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Exhaustive,
    Tightness,
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Population {
    pub mode: &'static str,
    pub n_min: usize,
    pub n_max: usize,
    pub d: Option<usize>,
    pub r: Option<usize>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

/// An offending graph with what went wrong.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationRecord {
    pub n: usize,
    pub bound: Option<String>,
    pub kind: String,
    pub detail: String,
    pub graph: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentResult {
    pub kind: ExperimentKind,
    pub population: Population,
    pub pass: bool,
    pub graphs_examined: u64,
    pub violation_count: u64,
    pub violations: Vec<ViolationRecord>,
    pub stats: Stats,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Stats {
    Exhaustive(ExhaustiveStats),
    Tightness(TightnessStats),
    Conjecture(ConjectureStats),
}

impl ExperimentResult {
    fn new(kind: ExperimentKind, population: Population, graphs: u64, violations: Violations, stats: Stats) -> Self {
        ExperimentResult {
            kind,
            population,
            pass: violations.count == 0,
            graphs_examined: graphs,
            violation_count: violations.count,
            violations: violations.records,
            stats,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    /// CSV summary; see the README for the column layout of each kind.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let f = format_real;
        match &self.stats {
            Stats::Exhaustive(s) => {
                w.write_record([
                    "bound", "applicable", "vacuous", "not_applicable", "errored", "equalities", "min_margin",
                    "mean_margin", "max_margin", "violations",
                ])
                .unwrap();
                for b in &s.bounds {
                    let violations = self
                        .violations
                        .iter()
                        .filter(|v| v.bound.as_deref() == Some(b.bound.label()))
                        .count();
                    w.write_record([
                        b.bound.label().to_string(),
                        b.applicable.to_string(),
                        b.vacuous.to_string(),
                        b.not_applicable.to_string(),
                        b.errored.to_string(),
                        b.equalities.to_string(),
                        f(b.min_margin),
                        f(b.mean_margin),
                        f(b.max_margin),
                        violations.to_string(),
                    ])
                    .unwrap();
                }
            }
            Stats::Tightness(s) => {
                w.write_record([
                    "trial", "seed", "tau", "rhs", "alpha_reference", "reference", "ratio", "rhs_positive",
                    "positivity_predicted",
                ])
                .unwrap();
                for t in &s.trials {
                    w.write_record([
                        t.trial.to_string(),
                        t.seed.to_string(),
                        f(t.tau),
                        f(t.rhs),
                        t.alpha_reference.to_string(),
                        t.reference.to_string(),
                        f(t.ratio),
                        t.rhs_positive.to_string(),
                        t.positivity_predicted.to_string(),
                    ])
                    .unwrap();
                }
            }
            Stats::Conjecture(s) => {
                w.write_record(["n", "m", "mu", "turan_mu", "turan_edges", "graph"]).unwrap();
                for c in &s.counterexamples {
                    w.write_record([
                        s.n.to_string(),
                        c.m.to_string(),
                        f(c.mu),
                        f(s.turan_mu),
                        s.turan_edges.to_string(),
                        c.graph.trim_end().replace('\n', ";"),
                    ])
                    .unwrap();
                }
            }
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

#[derive(Debug, Clone, Default)]
struct Violations {
    count: u64,
    records: Vec<ViolationRecord>,
}

impl Violations {
    fn push(&mut self, record: ViolationRecord) {
        self.count += 1;
        if self.records.len() < MAX_RECORDED_VIOLATIONS {
            self.records.push(record);
        }
    }

    fn merge(&mut self, other: Violations) {
        self.count += other.count;
        let room = MAX_RECORDED_VIOLATIONS - self.records.len();
        self.records.extend(other.records.into_iter().take(room));
    }
}

fn run_chunked<A, F>(total: u64, workers: usize, f: F) -> Result<Vec<A>>
where
    A: Send,
    F: Fn(Range<u64>) -> A + Sync,
{
    if workers == 0 {
        return Err(ExperimentError::InvalidParameters("worker count must be at least 1".into()));
    }
    let chunks: Vec<Range<u64>> = (0..total.div_ceil(CHUNK_SIZE))
        .map(|c| c * CHUNK_SIZE..((c + 1) * CHUNK_SIZE).min(total))
        .collect();
    if workers == 1 {
        return Ok(chunks.into_iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ExperimentError::ThreadPool(e.to_string()))?;
    Ok(pool.install(|| chunks.into_par_iter().map(&f).collect()))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundStats {
    pub bound: BoundId,
    pub applicable: u64,
    pub vacuous: u64,
    pub not_applicable: u64,
    pub errored: u64,
    pub equalities: u64,
    #[serde(serialize_with = "sig12")]
    pub min_margin: f64,
    #[serde(serialize_with = "sig12")]
    pub mean_margin: f64,
    #[serde(serialize_with = "sig12")]
    pub max_margin: f64,
    #[serde(skip)]
    margin_sum: f64,
}

impl BoundStats {
    fn new(bound: BoundId) -> Self {
        BoundStats {
            bound,
            applicable: 0,
            vacuous: 0,
            not_applicable: 0,
            errored: 0,
            equalities: 0,
            min_margin: f64::INFINITY,
            mean_margin: f64::NAN,
            max_margin: f64::NEG_INFINITY,
            margin_sum: 0.0,
        }
    }

    fn checked(&self) -> u64 {
        self.applicable + self.vacuous
    }

    fn merge(&mut self, o: &BoundStats) {
        self.applicable += o.applicable;
        self.vacuous += o.vacuous;
        self.not_applicable += o.not_applicable;
        self.errored += o.errored;
        self.equalities += o.equalities;
        self.min_margin = self.min_margin.min(o.min_margin);
        self.max_margin = self.max_margin.max(o.max_margin);
        self.margin_sum += o.margin_sum;
    }

    fn finish(&mut self) {
        if self.checked() > 0 {
            self.mean_margin = self.margin_sum / self.checked() as f64;
        } else {
            self.min_margin = f64::NAN;
            self.max_margin = f64::NAN;
        }
    }
}

/// Equality census for a bound with a structural characterisation.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub bound: BoundId,
    pub numeric_equalities: u64,
    pub structural_matches: u64,
    pub inconsistencies: u64,
}

/// Complete regular multipartite graphs found by the classifier versus the
/// closed-form count `Σ_{s | n} n!/((s!)^(n/s) (n/s)!)`.
#[derive(Debug, Clone, Serialize)]
pub struct StructureCount {
    pub n: usize,
    pub classified: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustiveStats {
    pub per_order: Vec<u64>,
    pub bounds: Vec<BoundStats>,
    pub census: Vec<CensusRow>,
    pub regular_multipartite: Vec<StructureCount>,
}

const CENSUS_BOUNDS: [BoundId; 6] = [
    BoundId::SpectralTuran,
    BoundId::MuIndependence,
    BoundId::TuranDominance,
    BoundId::SmallestEigenvalueClique,
    BoundId::LaplacianClique,
    BoundId::LaplacianIndependence,
];

#[derive(Debug, Clone)]
struct ExhaustiveChunk {
    bounds: Vec<BoundStats>,
    census: Vec<CensusRow>,
    regular_multipartite: u64,
    violations: Violations,
}

/// Number of labeled complete regular multipartite graphs on `n` vertices.
pub fn regular_multipartite_count(n: usize) -> u64 {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    (1..=n)
        .filter(|s| n % s == 0)
        .map(|s| {
            let parts = n / s;
            fact(n) / (fact(s).pow(parts as u32) * fact(parts))
        })
        .sum()
}

/// Runs every bound on every labeled graph of order `1..=n_max`.
pub fn exhaustive_verify(n_max: usize) -> Result<ExperimentResult> {
    exhaustive_verify_with(n_max, ExperimentOptions::default())
}

pub fn exhaustive_verify_with(n_max: usize, opts: ExperimentOptions) -> Result<ExperimentResult> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&n_max) {
        return Err(ExperimentError::InvalidParameters(format!(
            "n_max must be in 1..={MAX_ENUMERATION_ORDER}, got {n_max}"
        )));
    }
    let mut bounds: Vec<BoundStats> = BoundId::ALL.iter().map(|&b| BoundStats::new(b)).collect();
    let mut census: Vec<CensusRow> = CENSUS_BOUNDS
        .iter()
        .map(|&bound| CensusRow {
            bound,
            numeric_equalities: 0,
            structural_matches: 0,
            inconsistencies: 0,
        })
        .collect();
    let mut violations = Violations::default();
    let mut per_order = Vec::new();
    let mut regular_multipartite = Vec::new();
    for n in 1..=n_max {
        let table = TuranTable::new(n)?;
        let total = 1u64 << pair_count(n);
        let chunks = run_chunked(total, opts.workers, |range| exhaustive_chunk(n, range, &table, opts.tol))?;
        let mut classified = 0;
        for c in chunks {
            for (a, b) in bounds.iter_mut().zip(&c.bounds) {
                a.merge(b);
            }
            for (a, b) in census.iter_mut().zip(&c.census) {
                a.numeric_equalities += b.numeric_equalities;
                a.structural_matches += b.structural_matches;
                a.inconsistencies += b.inconsistencies;
            }
            classified += c.regular_multipartite;
            violations.merge(c.violations);
        }
        let expected = regular_multipartite_count(n);
        if classified != expected {
            violations.push(ViolationRecord {
                n,
                bound: None,
                kind: "census_mismatch".into(),
                detail: format!("classified {classified} complete regular multipartite graphs, expected {expected}"),
                graph: String::new(),
            });
        }
        regular_multipartite.push(StructureCount { n, classified, expected });
        per_order.push(total);
    }
    for b in &mut bounds {
        b.finish();
    }
    let graphs = per_order.iter().sum();
    let stats = ExhaustiveStats {
        per_order,
        bounds,
        census,
        regular_multipartite,
    };
    let population = Population {
        mode: "exhaustive",
        n_min: 1,
        n_max,
        d: None,
        r: None,
        trials: None,
        seed: None,
    };
    Ok(ExperimentResult::new(
        ExperimentKind::Exhaustive,
        population,
        graphs,
        violations,
        Stats::Exhaustive(stats),
    ))
}

fn exhaustive_chunk(n: usize, range: Range<u64>, table: &TuranTable, tol: Tolerances) -> ExhaustiveChunk {
    let mut out = ExhaustiveChunk {
        bounds: BoundId::ALL.iter().map(|&b| BoundStats::new(b)).collect(),
        census: CENSUS_BOUNDS
            .iter()
            .map(|&bound| CensusRow {
                bound,
                numeric_equalities: 0,
                structural_matches: 0,
                inconsistencies: 0,
            })
            .collect(),
        regular_multipartite: 0,
        violations: Violations::default(),
    };
    let graphs = enumerate_labeled_graphs(n).expect("order checked").range(range.start, range.end);
    for g in graphs {
        let ctx = bounds::BoundContext::build(&g, Some(table), tol);
        if matches!(&ctx.structure, Ok(c) if c.regular) {
            out.regular_multipartite += 1;
        }
        let report = bounds::report_from_context(&ctx);
        for (stats, e) in out.bounds.iter_mut().zip(&report.evaluations) {
            match e.status {
                Status::Applicable => stats.applicable += 1,
                Status::Vacuous => stats.vacuous += 1,
                Status::NotApplicable => stats.not_applicable += 1,
                Status::Errored => stats.errored += 1,
            }
            if e.status.is_checked() {
                stats.equalities += e.equality as u64;
                stats.min_margin = stats.min_margin.min(e.margin);
                stats.max_margin = stats.max_margin.max(e.margin);
                stats.margin_sum += e.margin;
            }
        }
        for row in out.census.iter_mut() {
            if let Some(c) = report.certificate(row.bound) {
                row.numeric_equalities += c.numeric_equality as u64;
                row.structural_matches += (c.structure != Structure::None) as u64;
                row.inconsistencies += (!c.consistent) as u64;
            }
        }
        for v in report.violations(tol.eq) {
            out.violations.push(ViolationRecord {
                n,
                bound: Some(v.bound.label().to_string()),
                kind: violation_kind(v.kind).into(),
                detail: v.detail,
                graph: g.to_edge_list(),
            });
        }
    }
    out
}

fn violation_kind(kind: ViolationKind) -> &'static str {
    match kind {
        ViolationKind::BoundFailed => "bound_failed",
        ViolationKind::StrictnessFailed => "strictness_failed",
        ViolationKind::CertificateInconsistent => "certificate_inconsistent",
        ViolationKind::WitnessIdentity => "witness_identity",
        ViolationKind::Errored => "errored",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub seed: u64,
    #[serde(serialize_with = "sig12")]
    pub tau: f64,
    #[serde(serialize_with = "sig12")]
    pub rhs: f64,
    pub alpha_reference: usize,
    pub reference: &'static str,
    #[serde(serialize_with = "sig12")]
    pub ratio: f64,
    pub rhs_positive: bool,
    /// `n > d + 1` and `(d+1)/τ > ln(d+1)`.
    pub positivity_predicted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TightnessStats {
    pub n: usize,
    pub d: usize,
    pub exact_reference: bool,
    pub positive_rhs: u64,
    pub rhs_reaches_reference: u64,
    #[serde(serialize_with = "sig12")]
    pub ratio_min: f64,
    #[serde(serialize_with = "sig12")]
    pub ratio_mean: f64,
    #[serde(serialize_with = "sig12")]
    pub ratio_max: f64,
    #[serde(serialize_with = "sig12")]
    pub tau_min: f64,
    #[serde(serialize_with = "sig12")]
    pub tau_max: f64,
    pub trials: Vec<TrialRow>,
}

/// Seeds for `count` independent runs derived from one master seed.
pub fn derive_seeds(seed: u64, count: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.next_u64()).collect()
}

/// Compares the logarithmic lower bound on `α` with the independence number
/// of random `d`-regular graphs. The reference is exact up to
/// [`EXACT_ALPHA_MAX_ORDER`] vertices and a greedy independent set above;
/// only exact references are asserted against.
pub fn tightness_regular(n: usize, d: usize, trials: u64, seed: u64) -> Result<ExperimentResult> {
    tightness_regular_with(n, d, trials, seed, ExperimentOptions::default())
}

pub fn tightness_regular_with(
    n: usize,
    d: usize,
    trials: u64,
    seed: u64,
    opts: ExperimentOptions,
) -> Result<ExperimentResult> {
    if d < 3 || d >= n || n > MAX_TIGHTNESS_ORDER || (n * d) % 2 != 0 || trials == 0 {
        return Err(ExperimentError::InvalidParameters(format!(
            "need 3 <= d < n <= {MAX_TIGHTNESS_ORDER}, n*d even and trials >= 1 (n={n}, d={d}, trials={trials})"
        )));
    }
    let seeds = derive_seeds(seed, trials);
    let exact = n <= EXACT_ALPHA_MAX_ORDER;
    let chunks = run_chunked_each(trials, opts.workers, |t| tightness_trial(n, d, t, seeds[t as usize], exact))?;
    let mut rows = Vec::with_capacity(trials as usize);
    let mut violations = Violations::default();
    for row in chunks {
        let (row, g) = row?;
        if row.rhs_positive != row.positivity_predicted {
            violations.push(ViolationRecord {
                n,
                bound: Some(BoundId::LogIndependence.label().into()),
                kind: "positivity_mismatch".into(),
                detail: format!("trial {}: rhs {} with tau {}", row.trial, row.rhs, row.tau),
                graph: g.to_edge_list(),
            });
        }
        if exact && row.rhs >= row.alpha_reference as f64 {
            violations.push(ViolationRecord {
                n,
                bound: Some(BoundId::LogIndependence.label().into()),
                kind: "bound_failed".into(),
                detail: format!("trial {}: rhs {} >= alpha {}", row.trial, row.rhs, row.alpha_reference),
                graph: g.to_edge_list(),
            });
        }
        rows.push(row);
    }
    let ratios = rows.iter().map(|r| r.ratio);
    let taus = rows.iter().map(|r| r.tau);
    let stats = TightnessStats {
        n,
        d,
        exact_reference: exact,
        positive_rhs: rows.iter().filter(|r| r.rhs_positive).count() as u64,
        rhs_reaches_reference: rows.iter().filter(|r| r.rhs >= r.alpha_reference as f64).count() as u64,
        ratio_min: ratios.clone().fold(f64::INFINITY, f64::min),
        ratio_mean: ratios.clone().sum::<f64>() / rows.len() as f64,
        ratio_max: ratios.fold(f64::NEG_INFINITY, f64::max),
        tau_min: taus.clone().fold(f64::INFINITY, f64::min),
        tau_max: taus.fold(f64::NEG_INFINITY, f64::max),
        trials: rows,
    };
    let population = Population {
        mode: "random_regular",
        n_min: n,
        n_max: n,
        d: Some(d),
        r: None,
        trials: Some(trials),
        seed: Some(seed),
    };
    Ok(ExperimentResult::new(
        ExperimentKind::Tightness,
        population,
        trials,
        violations,
        Stats::Tightness(stats),
    ))
}

fn run_chunked_each<A, F>(total: u64, workers: usize, f: F) -> Result<Vec<A>>
where
    A: Send,
    F: Fn(u64) -> A + Sync,
{
    if workers == 0 {
        return Err(ExperimentError::InvalidParameters("worker count must be at least 1".into()));
    }
    if workers == 1 {
        return Ok((0..total).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ExperimentError::ThreadPool(e.to_string()))?;
    Ok(pool.install(|| (0..total).into_par_iter().map(&f).collect()))
}

fn tightness_trial(n: usize, d: usize, trial: u64, seed: u64, exact: bool) -> Result<(TrialRow, Graph)> {
    let g = random_regular(n, d, seed)?;
    let tau = adjacency_spectrum(&g.complement())?.smallest().abs();
    let rhs = bounds::thm1_rhs(n, d as f64, tau);
    let alpha_reference = if exact {
        max_independent_set(&g).size
    } else {
        greedy_independent_set(&g).len()
    };
    let dp1 = d as f64 + 1.0;
    let row = TrialRow {
        trial,
        seed,
        tau,
        rhs,
        alpha_reference,
        reference: if exact { "exact" } else { "greedy" },
        ratio: rhs / alpha_reference as f64,
        rhs_positive: rhs > 0.0,
        positivity_predicted: n as f64 > dp1 && dp1 / tau > dp1.ln(),
    };
    Ok((row, g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub m: usize,
    #[serde(serialize_with = "sig12")]
    pub mu: f64,
    pub graph: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureStats {
    pub r: usize,
    pub n: usize,
    pub turan_edges: usize,
    #[serde(serialize_with = "sig12")]
    pub turan_mu: f64,
    /// Whether counterexamples count as violations (the case `r = 2`).
    pub asserted: bool,
    /// Graphs with at least as many edges as the Turán graph.
    pub dense_graphs: u64,
    /// Smallest `μ(G) − μ(T_r(n))` over the dense graphs.
    #[serde(serialize_with = "sig12_opt")]
    pub closest_gap: Option<f64>,
    pub candidates_rejected: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, Default)]
struct ConjectureChunk {
    dense: u64,
    closest: Option<f64>,
    rejected: u64,
    found: Vec<Counterexample>,
}

/// Searches for graphs with `μ(G) < μ(T_r(n))` but `e(G) ≥ e(T_r(n))`.
pub fn conjecture_search(r: usize, n: usize, mode: SearchMode) -> Result<ExperimentResult> {
    conjecture_search_with(r, n, mode, ExperimentOptions::default())
}

pub fn conjecture_search_with(r: usize, n: usize, mode: SearchMode, opts: ExperimentOptions) -> Result<ExperimentResult> {
    if r < 2 || r >= n {
        return Err(ExperimentError::InvalidParameters(format!("need 2 <= r < n (r={r}, n={n})")));
    }
    if mode == SearchMode::Exhaustive && n > MAX_ENUMERATION_ORDER {
        return Err(ExperimentError::InvalidParameters(format!(
            "exhaustive search needs n <= {MAX_ENUMERATION_ORDER}"
        )));
    }
    let t = turan(n, r)?;
    let turan_m = turan_edges(n, r);
    let turan_mu = adjacency_spectrum(&t)?.largest();
    let tight_turan_mu = tight_mu(&t)?;
    let eps = opts.tol.eq * turan_mu.max(1.0);
    let examine = |g: &Graph, out: &mut ConjectureChunk| {
        if g.m() < turan_m {
            return;
        }
        out.dense += 1;
        let Ok(spec) = adjacency_spectrum(g) else {
            out.rejected += 1;
            return;
        };
        let mu = spec.largest();
        let gap = mu - turan_mu;
        out.closest = Some(out.closest.map_or(gap, |c: f64| c.min(gap)));
        if gap < -eps {
            match tight_mu(g) {
                Ok(mu_tight) if mu_tight < tight_turan_mu - eps => out.found.push(Counterexample {
                    m: g.m(),
                    mu: mu_tight,
                    graph: g.to_edge_list(),
                }),
                _ => out.rejected += 1,
            }
        }
    };
    let (total, chunks, population) = match mode {
        SearchMode::Exhaustive => {
            let total = 1u64 << pair_count(n);
            let chunks = run_chunked(total, opts.workers, |range| {
                let mut out = ConjectureChunk::default();
                for mask in range {
                    if (mask.count_ones() as usize) < turan_m {
                        continue;
                    }
                    let g = Graph::from_edge_mask(n, mask).expect("n >= 1");
                    examine(&g, &mut out);
                }
                out
            })?;
            let population = Population {
                mode: "exhaustive",
                n_min: n,
                n_max: n,
                d: None,
                r: Some(r),
                trials: None,
                seed: None,
            };
            (total, chunks, population)
        }
        SearchMode::Sample { count, seed } => {
            let seeds = derive_seeds(seed, count);
            let chunks = run_chunked(count, opts.workers, |range| {
                let mut out = ConjectureChunk::default();
                for i in range {
                    let mut rng = ChaCha8Rng::seed_from_u64(seeds[i as usize]);
                    let p: f64 = rng.gen();
                    let g = gnp(n, p, rng.next_u64()).expect("valid probability");
                    examine(&g, &mut out);
                }
                out
            })?;
            let population = Population {
                mode: "sample",
                n_min: n,
                n_max: n,
                d: None,
                r: Some(r),
                trials: Some(count),
                seed: Some(seed),
            };
            (count, chunks, population)
        }
    };
    let mut merged = ConjectureChunk::default();
    for c in chunks {
        merged.dense += c.dense;
        merged.rejected += c.rejected;
        merged.closest = match (merged.closest, c.closest) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        merged.found.extend(c.found);
    }
    let asserted = r == 2;
    let mut violations = Violations::default();
    if asserted {
        for c in &merged.found {
            violations.push(ViolationRecord {
                n,
                bound: None,
                kind: "counterexample".into(),
                detail: format!("m = {} >= {turan_m} but mu = {} < {turan_mu}", c.m, c.mu),
                graph: c.graph.clone(),
            });
        }
    }
    let stats = ConjectureStats {
        r,
        n,
        turan_edges: turan_m,
        turan_mu,
        asserted,
        dense_graphs: merged.dense,
        closest_gap: merged.closest,
        candidates_rejected: merged.rejected,
        counterexamples: merged.found,
    };
    Ok(ExperimentResult::new(
        ExperimentKind::Conjecture,
        population,
        total,
        violations,
        Stats::Conjecture(stats),
    ))
}

fn tight_mu(g: &Graph) -> std::result::Result<f64, EigenError> {
    let values = symmetric_eigenvalues_with(&g.adjacency_matrix(), g.n(), JacobiOptions::tight())?;
    Ok(*values.last().expect("n >= 1"))
}
