//! Exact clique and independence numbers, and the Motzkin–Straus program.
//!
//! Every bound in [`crate::bounds`] is judged against these values; nothing
//! here is estimated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{iter_bits, Graph};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("restarts must be at least 1")]
    NoRestarts,
    #[error("point has {got} coordinates, graph has {n} vertices")]
    Dimension { n: usize, got: usize },
    #[error("not a simplex point: {0}")]
    NotSimplex(String),
    #[error("objective {value} is not within 1e-6 of the optimum {optimum}")]
    NotNearOptimal { value: f64, optimum: f64 },
    #[error("oracle inconsistency: {0}")]
    Inconsistent(String),
}

/// A maximum clique (or independent set) with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    pub witness: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Maximum clique
// ---------------------------------------------------------------------------

/// Exact maximum clique by branch and bound over bit rows, with greedy
/// colouring bounds. Vertices are processed in descending-degree order.
pub fn max_clique(g: &Graph) -> CliqueResult {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    let deg = g.degrees();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let words = g.words();
    let mut rows = vec![0u64; n * words];
    for (i, &v) in order.iter().enumerate() {
        for u in g.neighbors(v) {
            let j = pos[u];
            rows[i * words + j / 64] |= 1 << (j % 64);
        }
    }
    let mut search = CliqueSearch {
        words,
        rows,
        best: vec![order[0]],
        current: Vec::new(),
        order: &order,
    };
    let mut all = vec![0u64; words];
    for i in 0..n {
        all[i / 64] |= 1 << (i % 64);
    }
    search.expand(all);
    let mut witness = search.best;
    witness.sort_unstable();
    CliqueResult {
        size: witness.len(),
        witness,
    }
}

struct CliqueSearch<'a> {
    words: usize,
    rows: Vec<u64>,
    best: Vec<usize>,
    current: Vec<usize>,
    order: &'a [usize],
}

impl CliqueSearch<'_> {
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Greedy sequential colouring of `cand`; returns vertices grouped by
    /// colour class with their (1-based) colour numbers.
    fn colour(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let mut verts = Vec::new();
        let mut colours = Vec::new();
        let mut k = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            k += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first_bit(&q) {
                q[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (qw, rw) in q.iter_mut().zip(self.row(v)) {
                    *qw &= !rw;
                }
                verts.push(v);
                colours.push(k);
            }
        }
        (verts, colours)
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        let (verts, colours) = self.colour(&cand);
        for i in (0..verts.len()).rev() {
            if self.current.len() + colours[i] <= self.best.len() {
                return;
            }
            let v = verts[i];
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.row(v)).map(|(c, r)| c & r).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.iter().map(|&x| self.order[x]).collect();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Maximum independent set, as a maximum clique of the complement.
pub fn max_independent_set(g: &Graph) -> CliqueResult {
    max_clique(&g.complement())
}

/// Independent set built by repeatedly taking a vertex of minimum degree in
/// the remaining graph (lowest index on ties) and deleting its closed
/// neighbourhood. A lower bound on `α`.
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let words = g.words();
    let mut alive = vec![0u64; words];
    for i in 0..n {
        alive[i / 64] |= 1 << (i % 64);
    }
    let mut chosen = Vec::new();
    loop {
        let pick = iter_bits(&alive)
            .map(|v| {
                let d: u32 = g.row(v).iter().zip(&alive).map(|(r, a)| (r & a).count_ones()).sum();
                (d, v)
            })
            .min();
        let Some((_, v)) = pick else { break };
        chosen.push(v);
        alive[v / 64] &= !(1 << (v % 64));
        for (a, r) in alive.iter_mut().zip(g.row(v)) {
            *a &= !r;
        }
    }
    chosen.sort_unstable();
    chosen
}

// ---------------------------------------------------------------------------
// Motzkin–Straus
// ---------------------------------------------------------------------------

/// A point of the probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, OracleError> {
        if let Some(x) = coords.iter().find(|x| !(**x >= 0.0)) {
            return Err(OracleError::NotSimplex(format!("negative or NaN coordinate {x}")));
        }
        let s: f64 = coords.iter().sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(OracleError::NotSimplex(format!("coordinates sum to {s}")));
        }
        Ok(SimplexPoint { coords })
    }

    /// Uniform weight on `support`.
    pub fn uniform_on(n: usize, support: &[usize]) -> Result<Self, OracleError> {
        let mut coords = vec![0.0; n];
        for &i in support {
            coords[i] = 1.0 / support.len() as f64;
        }
        Self::new(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// `⟨Ax, x⟩` for the adjacency matrix of `g`.
pub fn quadratic_form(g: &Graph, x: &[f64]) -> f64 {
    (0..g.n())
        .map(|i| x[i] * g.neighbors(i).map(|j| x[j]).sum::<f64>())
        .sum()
}

pub const REPLICATOR_MAX_ITERATIONS: usize = 100_000;
pub const REPLICATOR_STEP_TOLERANCE: f64 = 1e-13;
/// Coordinates above this belong to the support of a simplex point.
pub const SUPPORT_CUTOFF: f64 = 1e-7;

/// Best replicator fixed point over all restarts.
#[derive(Debug, Clone, Serialize)]
pub struct MotzkinStraus {
    pub value: f64,
    pub point: SimplexPoint,
    /// 0 = uniform start, `1..=restarts` = random starts, last = clique-seeded.
    pub restart: usize,
    pub iterations: usize,
    /// No run ever decreased the objective.
    pub monotone: bool,
}

/// Outcome of a single replicator trajectory.
#[derive(Debug, Clone)]
pub struct ReplicatorRun {
    pub value: f64,
    pub point: Vec<f64>,
    pub iterations: usize,
    pub monotone: bool,
}

/// One replicator trajectory from `start`.
pub fn replicator_run(g: &Graph, start: &SimplexPoint) -> Result<ReplicatorRun, OracleError> {
    if start.coords.len() != g.n() {
        return Err(OracleError::Dimension { n: g.n(), got: start.coords.len() });
    }
    Ok(replicator(&g.adjacency_matrix(), g.n(), start.coords.clone()))
}

/// Runs `x'ᵢ = xᵢ(Ax)ᵢ / ⟨Ax,x⟩` from `start` until the largest coordinate
/// change drops below `1e-13` or the iteration cap is hit.
fn replicator(dense: &[f64], n: usize, mut x: Vec<f64>) -> ReplicatorRun {
    let mut ax = vec![0.0; n];
    let mul = |x: &[f64], ax: &mut [f64]| {
        for i in 0..n {
            ax[i] = dense[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum();
        }
    };
    mul(&x, &mut ax);
    let mut value: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
    let mut monotone = true;
    let mut iterations = 0;
    while iterations < REPLICATOR_MAX_ITERATIONS && value > 0.0 {
        iterations += 1;
        let mut change: f64 = 0.0;
        let mut sum = 0.0;
        for i in 0..n {
            let next = x[i] * ax[i] / value;
            change = change.max((next - x[i]).abs());
            x[i] = next;
            sum += next;
        }
        for xi in x.iter_mut() {
            *xi /= sum;
        }
        mul(&x, &mut ax);
        let next_value: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        if next_value < value - 1e-14 {
            monotone = false;
        }
        value = next_value;
        if change < REPLICATOR_STEP_TOLERANCE {
            break;
        }
    }
    ReplicatorRun {
        value,
        point: x,
        iterations,
        monotone,
    }
}

/// Maximises `⟨Ax, x⟩` over the simplex. Starts: the uniform point,
/// `restarts` random points, and uniform weight on a maximum clique. The
/// best value wins, ties going to the lowest restart index.
pub fn motzkin_straus_maximize(
    g: &Graph,
    restarts: usize,
    seed: u64,
) -> Result<MotzkinStraus, OracleError> {
    if restarts == 0 {
        return Err(OracleError::NoRestarts);
    }
    let n = g.n();
    if g.m() == 0 {
        let point = SimplexPoint::uniform_on(n, &[0])?;
        return Ok(MotzkinStraus {
            value: 0.0,
            point,
            restart: 0,
            iterations: 0,
            monotone: true,
        });
    }
    let dense = g.adjacency_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = Vec::with_capacity(restarts + 2);
    starts.push(vec![1.0 / n as f64; n]);
    for _ in 0..restarts {
        let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let s: f64 = raw.iter().sum();
        starts.push(raw.into_iter().map(|x| x / s).collect());
    }
    let clique = max_clique(g);
    starts.push(SimplexPoint::uniform_on(n, &clique.witness)?.coords);

    let mut best: Option<(usize, ReplicatorRun)> = None;
    let mut monotone = true;
    for (idx, mut start) in starts.into_iter().enumerate() {
        if quadratic_form(g, &start) <= 0.0 {
            // independent support: mix with the uniform point
            for x in start.iter_mut() {
                *x = 0.5 * *x + 0.5 / n as f64;
            }
        }
        let run = replicator(&dense, n, start);
        monotone &= run.monotone;
        if best.as_ref().is_none_or(|(_, b)| run.value > b.value) {
            best = Some((idx, run));
        }
    }
    let (restart, run) = best.expect("at least two starts");
    let point = clean_simplex(run.point)?;
    Ok(MotzkinStraus {
        value: run.value,
        point,
        restart,
        iterations: run.iterations,
        monotone,
    })
}

fn clean_simplex(mut x: Vec<f64>) -> Result<SimplexPoint, OracleError> {
    for xi in x.iter_mut() {
        *xi = xi.max(0.0);
    }
    let s: f64 = x.iter().sum();
    for xi in x.iter_mut() {
        *xi /= s;
    }
    SimplexPoint::new(x)
}

/// Structure of an optimal Motzkin–Straus point: the support induces a
/// complete ω-partite graph and each part carries mass `1/ω`.
#[derive(Debug, Clone, Serialize)]
pub struct MsEquality {
    pub omega: usize,
    pub parts: Vec<Vec<usize>>,
    pub masses: Vec<f64>,
    /// Part count is ω and every mass is within `1e-6` of `1/ω`.
    pub consistent: bool,
}

pub fn ms_equality_structure(g: &Graph, point: &SimplexPoint) -> Result<MsEquality, OracleError> {
    let n = g.n();
    let x = point.coords();
    if x.len() != n {
        return Err(OracleError::Dimension { n, got: x.len() });
    }
    let omega = max_clique(g).size;
    let optimum = 1.0 - 1.0 / omega as f64;
    let value = quadratic_form(g, x);
    if (value - optimum).abs() > 1e-6 {
        return Err(OracleError::NotNearOptimal { value, optimum });
    }
    let support: Vec<usize> = (0..n).filter(|&i| x[i] > SUPPORT_CUTOFF).collect();
    let induced = g.induced(&support).map_err(|e| OracleError::Inconsistent(e.to_string()))?;
    let cert = induced.classify_complete_multipartite().map_err(|r| {
        let [a, b, c] = r.triple.map(|i| support[i]);
        OracleError::Inconsistent(format!(
            "support of a claimed optimum is not complete multipartite (vertices {a}, {b}, {c})"
        ))
    })?;
    let parts: Vec<Vec<usize>> = cert
        .parts
        .iter()
        .map(|p| p.iter().map(|&i| support[i]).collect())
        .collect();
    let masses: Vec<f64> = parts.iter().map(|p| p.iter().map(|&i| x[i]).sum()).collect();
    let consistent = parts.len() == omega
        && masses.iter().all(|m| (m - 1.0 / omega as f64).abs() <= 1e-6);
    Ok(MsEquality {
        omega,
        parts,
        masses,
        consistent,
    })
}
