//! Adjacency and Laplacian spectra of graphs.

use serde::Serialize;

use crate::eigen::{self, EigenError};
use crate::graph::Graph;

/// Absolute eigenvalue tolerance for graphs of order up to 64.
pub const EPS_SPEC: f64 = 1e-9;

/// Orders above this use the tridiagonal QL route for eigenvalues.
pub const JACOBI_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Adjacency,
    Laplacian,
}

/// Eigenvalues with multiplicity. Adjacency spectra are sorted descending
/// (`μ₁ ≥ … ≥ μₙ`), Laplacian spectra ascending (`0 = λ₁ ≤ … ≤ λₙ`).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub values: Vec<f64>,
}

impl Spectrum {
    /// Spectral radius `μ₁` (adjacency) or `λₙ` (Laplacian).
    pub fn largest(&self) -> f64 {
        match self.kind {
            SpectrumKind::Adjacency => self.values[0],
            SpectrumKind::Laplacian => *self.values.last().unwrap(),
        }
    }

    pub fn smallest(&self) -> f64 {
        match self.kind {
            SpectrumKind::Adjacency => *self.values.last().unwrap(),
            SpectrumKind::Laplacian => self.values[0],
        }
    }

    /// `λ₂`, the algebraic connectivity; zero for `n = 1`.
    pub fn second_smallest(&self) -> f64 {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v.get(1).copied().unwrap_or(0.0)
    }

    /// Residuals of the trace identities for a graph with `m` edges on `n`
    /// vertices; every entry must be within [`EPS_SPEC`] (scaled as noted).
    pub fn invariant_residuals(&self, n: usize, m: usize) -> SpectrumResiduals {
        let two_m = 2.0 * m as f64;
        let sum: f64 = self.values.iter().sum();
        match self.kind {
            SpectrumKind::Adjacency => {
                let sq: f64 = self.values.iter().map(|x| x * x).sum();
                SpectrumResiduals {
                    trace: sum.abs(),
                    second: (sq - two_m).abs() / two_m.max(1.0),
                    lowest: 0.0,
                    range: 0.0,
                }
            }
            SpectrumKind::Laplacian => {
                let lo = self.values[0];
                let hi = *self.values.last().unwrap();
                SpectrumResiduals {
                    trace: (sum - two_m).abs(),
                    second: 0.0,
                    lowest: lo.abs(),
                    range: (-lo).max(hi - n as f64).max(0.0),
                }
            }
        }
    }

    pub fn satisfies_invariants(&self, n: usize, m: usize, eps: f64) -> bool {
        let r = self.invariant_residuals(n, m);
        r.trace <= eps && r.second <= eps && r.lowest <= eps && r.range <= eps
    }
}

/// See [`Spectrum::invariant_residuals`]. `second` is relative to `max(1, 2m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumResiduals {
    pub trace: f64,
    pub second: f64,
    pub lowest: f64,
    pub range: f64,
}

fn eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>, EigenError> {
    if n <= JACOBI_MAX_ORDER {
        eigen::symmetric_eigenvalues(matrix, n)
    } else {
        eigen::tridiagonal_ql_eigenvalues(matrix, n)
    }
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum, EigenError> {
    let mut values = eigenvalues(&g.adjacency_matrix(), g.n())?;
    values.reverse();
    Ok(Spectrum {
        kind: SpectrumKind::Adjacency,
        values,
    })
}

pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum, EigenError> {
    let values = eigenvalues(&g.laplacian_matrix(), g.n())?;
    Ok(Spectrum {
        kind: SpectrumKind::Laplacian,
        values,
    })
}

/// `μₙ` and a unit eigenvector for it.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

pub fn smallest_adjacency_eigenpair(g: &Graph) -> Result<Eigenpair, EigenError> {
    let n = g.n();
    let e = eigen::symmetric_eigen(&g.adjacency_matrix(), n)?;
    let mut vector = e.vector(0);
    let norm = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in vector.iter_mut() {
        *x /= norm;
    }
    Ok(Eigenpair {
        value: e.values[0],
        vector,
    })
}

/// Complement identities: `λₙ(Ḡ) = n − λ₂(G)` and `μ(G) + μ(Ḡ) ≥ n − 1`, the
/// latter tight exactly for regular graphs.
#[derive(Debug, Clone, Serialize)]
pub struct ComplementRelation {
    pub laplacian_gap: f64,
    pub mu_sum: f64,
    pub n_minus_one: f64,
    pub regular: bool,
    pub laplacian_ok: bool,
    pub mu_sum_ok: bool,
    pub equality_iff_regular: bool,
}

impl ComplementRelation {
    pub fn holds(&self) -> bool {
        self.laplacian_ok && self.mu_sum_ok && self.equality_iff_regular
    }
}

pub fn complement_relation_check(g: &Graph) -> Result<ComplementRelation, EigenError> {
    let comp = g.complement();
    let n = g.n() as f64;
    let lap = laplacian_spectrum(g)?;
    let lap_c = laplacian_spectrum(&comp)?;
    // λ₂ needs two vertices
    let laplacian_gap = if g.n() < 2 {
        0.0
    } else {
        (lap_c.largest() - (n - lap.second_smallest())).abs()
    };
    let mu_sum = adjacency_spectrum(g)?.largest() + adjacency_spectrum(&comp)?.largest();
    let regular = g.regular_degree().is_some();
    let tight = (mu_sum - (n - 1.0)).abs() <= EPS_SPEC;
    Ok(ComplementRelation {
        laplacian_gap,
        mu_sum,
        n_minus_one: n - 1.0,
        regular,
        laplacian_ok: laplacian_gap <= EPS_SPEC,
        mu_sum_ok: mu_sum >= n - 1.0 - EPS_SPEC,
        equality_iff_regular: tight == regular,
    })
}
