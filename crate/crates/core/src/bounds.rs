//! Evaluation of the spectral bounds on `ω(G)` and `α(G)`.
//!
//! Each bound is computed from a [`BoundContext`] holding the graph, its
//! spectra, and the exact clique and independence numbers. A
//! [`BoundEvaluation`] records the bound value, the oracle quantity it
//! constrains, and the signed margin; bounds with a known equality case also
//! produce an [`EqualityCertificate`] that ties numeric equality to graph
//! structure.

use serde::Serialize;
use thiserror::Error;

use crate::eigen::EigenError;
use crate::generate::turan;
use crate::graph::{Graph, MultipartiteCertificate, Refutation};
use crate::oracle::{max_clique, max_independent_set, CliqueResult};
use crate::serial::{sig12, sig12_opt};
use crate::spectra::{adjacency_spectrum, laplacian_spectrum, smallest_adjacency_eigenpair, Eigenpair, Spectrum};

/// Relative tolerance for equality detection and for the non-strict check of
/// every inequality.
pub const EPS_EQ: f64 = 1e-7;

/// Entries of an eigenvector with magnitude below this count as zero.
pub const THETA_ZERO: f64 = 1e-10;

/// Tolerance for the witness identities of the exact `α` formula for regular
/// graphs.
pub const THM4_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BoundId {
    /// `μₙ < −(2/ω)(2m/n²)^ω n`
    #[serde(rename = "bnd1")]
    SmallestEigenvalue,
    /// `α > (n/(d+1) − 1)(ln((d+1)/τ) − ln ln(d+1))` for `d ≥ 2`
    #[serde(rename = "bnd1.1")]
    LogIndependence,
    /// `μ ≤ (1 − 1/ω) n`, as `ω ≥ n/(n − μ)`
    #[serde(rename = "bnd4")]
    Wilf,
    /// `m ≤ (1 − 1/ω) n²/2`
    #[serde(rename = "conTT")]
    ConciseTuran,
    /// `μ² ≤ 2(1 − 1/ω) m`, with its equality characterisation
    #[serde(rename = "thm2")]
    SpectralTuran,
    /// `ω ≥ 2m/(2m − μ²)`
    #[serde(rename = "bnd6.1")]
    EdwardsElphick,
    /// `α ≥ (n(n−1) − 2m)/(n(n−1) − 2m − (n−1−μ)²)`
    #[serde(rename = "bnd6.2")]
    MuIndependence,
    /// `μ(G) ≤ μ(T_ω(n))`, equality only for the Turán graph
    #[serde(rename = "bnd5")]
    TuranDominance,
    /// `ω ≥ 1 + dn/((n−d)(d−μₙ))`
    #[serde(rename = "mub")]
    SmallestEigenvalueClique,
    /// `μₙ ≤ −d²/(n−d)` for triangle-free graphs
    #[serde(rename = "mun_triangle_free")]
    TriangleFree,
    /// Triangle-count upper bound on `μₙ` for graphs without isolated vertices
    #[serde(rename = "ineq1")]
    TriangleCount,
    /// `ω ≥ 1 + dn/(λ(n−d))`
    #[serde(rename = "bnd2")]
    LaplacianClique,
    /// `α ≥ 1 + (n−1−d)n/((n−λ₂)(1+d))`
    #[serde(rename = "bnd2.1")]
    LaplacianIndependence,
    /// `ω ≥ 2m/(2m − (λ−Δ)²)`, never above 2
    #[serde(rename = "bnd3")]
    LaplacianDegree,
    /// `(λ−Δ)² ≤ m`
    #[serde(rename = "bnd3.1")]
    LaplacianDegreeVacuity,
    /// `α ≥ n²/(n(d+1) + (μₙ+1) max(θ₊², θ₋²))` for regular graphs
    #[serde(rename = "bnd7")]
    WilfTheta,
    /// The exact `α` formula for regular graphs evaluated at a maximum
    /// independent set
    #[serde(rename = "thm4")]
    ExactRegularAlpha,
}

impl BoundId {
    pub const ALL: [BoundId; 17] = [
        BoundId::SmallestEigenvalue,
        BoundId::LogIndependence,
        BoundId::Wilf,
        BoundId::ConciseTuran,
        BoundId::SpectralTuran,
        BoundId::EdwardsElphick,
        BoundId::MuIndependence,
        BoundId::TuranDominance,
        BoundId::SmallestEigenvalueClique,
        BoundId::TriangleFree,
        BoundId::TriangleCount,
        BoundId::LaplacianClique,
        BoundId::LaplacianIndependence,
        BoundId::LaplacianDegree,
        BoundId::LaplacianDegreeVacuity,
        BoundId::WilfTheta,
        BoundId::ExactRegularAlpha,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BoundId::SmallestEigenvalue => "bnd1",
            BoundId::LogIndependence => "bnd1.1",
            BoundId::Wilf => "bnd4",
            BoundId::ConciseTuran => "conTT",
            BoundId::SpectralTuran => "thm2",
            BoundId::EdwardsElphick => "bnd6.1",
            BoundId::MuIndependence => "bnd6.2",
            BoundId::TuranDominance => "bnd5",
            BoundId::SmallestEigenvalueClique => "mub",
            BoundId::TriangleFree => "mun_triangle_free",
            BoundId::TriangleCount => "ineq1",
            BoundId::LaplacianClique => "bnd2",
            BoundId::LaplacianIndependence => "bnd2.1",
            BoundId::LaplacianDegree => "bnd3",
            BoundId::LaplacianDegreeVacuity => "bnd3.1",
            BoundId::WilfTheta => "bnd7",
            BoundId::ExactRegularAlpha => "thm4",
        }
    }

    pub fn from_label(label: &str) -> Option<BoundId> {
        BoundId::ALL.into_iter().find(|b| b.label() == label)
    }

    /// Name of the quantity the bound constrains.
    pub fn target_name(self) -> &'static str {
        use BoundId::*;
        match self {
            SmallestEigenvalue | TriangleFree | TriangleCount => "mu_n",
            LogIndependence | MuIndependence | LaplacianIndependence | WilfTheta | ExactRegularAlpha => {
                "alpha"
            }
            Wilf | EdwardsElphick | SmallestEigenvalueClique | LaplacianClique | LaplacianDegree => "omega",
            ConciseTuran => "m",
            SpectralTuran => "mu^2",
            TuranDominance => "mu",
            LaplacianDegreeVacuity => "(lambda-Delta)^2",
        }
    }

    fn direction(self) -> Direction {
        use BoundId::*;
        match self {
            SmallestEigenvalue | TriangleFree | TriangleCount | ConciseTuran | SpectralTuran
            | TuranDominance | LaplacianDegreeVacuity => Direction::Upper,
            _ => Direction::Lower,
        }
    }

    /// The inequality is strict for every graph (or every graph but its
    /// certified equality case).
    fn strict(self) -> bool {
        matches!(
            self,
            BoundId::SmallestEigenvalue | BoundId::LogIndependence | BoundId::TuranDominance
        )
    }

    /// Value at or below which a lower bound says nothing.
    fn trivial_floor(self) -> Option<f64> {
        match (self, self.direction()) {
            (BoundId::LaplacianDegree, _) => Some(2.0),
            (_, Direction::Lower) => Some(1.0),
            _ => None,
        }
    }
}

impl std::fmt::Display for BoundId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Applicable,
    /// Hypotheses hold but the value is trivial; still checked.
    Vacuous,
    NotApplicable,
    Errored,
}

impl Status {
    pub fn is_checked(self) -> bool {
        matches!(self, Status::Applicable | Status::Vacuous)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `value ≤ target`
    Lower,
    /// `target ≤ value`
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub eq: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eq: EPS_EQ }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEvaluation {
    pub bound: BoundId,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(serialize_with = "sig12")]
    pub value: f64,
    #[serde(serialize_with = "sig12")]
    pub target: f64,
    pub direction: Direction,
    #[serde(serialize_with = "sig12")]
    pub margin: f64,
    pub equality: bool,
    pub strict_expected: bool,
}

impl BoundEvaluation {
    fn checked(bound: BoundId, value: f64, target: f64, tol: f64) -> Self {
        Self::checked_scaled(bound, value, target, tol, 1f64.max(target.abs()))
    }

    fn checked_scaled(bound: BoundId, value: f64, target: f64, tol: f64, scale: f64) -> Self {
        let direction = bound.direction();
        let margin = match direction {
            Direction::Lower => target - value,
            Direction::Upper => value - target,
        };
        let vacuous = bound.trivial_floor().is_some_and(|floor| value <= floor + tol);
        BoundEvaluation {
            bound,
            status: if vacuous { Status::Vacuous } else { Status::Applicable },
            reason: None,
            value,
            target,
            direction,
            margin,
            equality: margin.abs() <= tol * scale,
            strict_expected: bound.strict(),
        }
    }

    fn not_applicable(bound: BoundId, reason: &str) -> Self {
        BoundEvaluation {
            bound,
            status: Status::NotApplicable,
            reason: Some(reason.to_string()),
            value: f64::NAN,
            target: f64::NAN,
            direction: bound.direction(),
            margin: f64::NAN,
            equality: false,
            strict_expected: bound.strict(),
        }
    }

    fn errored(bound: BoundId, message: String) -> Self {
        BoundEvaluation {
            status: Status::Errored,
            reason: Some(message),
            ..Self::not_applicable(bound, "")
        }
    }

    /// The inequality holds within `tol` (relative to the target scale).
    pub fn holds(&self, tol: f64) -> bool {
        !self.status.is_checked() || self.margin >= -tol * 1f64.max(self.target.abs())
    }
}

/// Graph structure that explains an equality case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    CompleteRegularMultipartite { parts: Vec<usize> },
    CompleteBipartite { parts: Vec<usize> },
    UnionEqualCliques { count: usize, size: usize },
    TuranGraph { r: usize, parts: Vec<usize> },
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualityCertificate {
    pub bound: BoundId,
    pub structure: Structure,
    pub numeric_equality: bool,
    /// Numeric equality holds exactly when the structure is present.
    pub consistent: bool,
}

impl EqualityCertificate {
    fn new(bound: BoundId, numeric_equality: bool, structure: Structure) -> Self {
        let consistent = numeric_equality == (structure != Structure::None);
        EqualityCertificate {
            bound,
            structure,
            numeric_equality,
            consistent,
        }
    }
}

/// Adjacency and Laplacian spectra of `G` and the adjacency spectrum of `Ḡ`.
#[derive(Debug, Clone)]
pub struct Spectra {
    pub adjacency: Spectrum,
    pub laplacian: Spectrum,
    pub complement_adjacency: Spectrum,
}

impl Spectra {
    pub fn compute(g: &Graph, complement: &Graph) -> Result<Self, EigenError> {
        Ok(Spectra {
            adjacency: adjacency_spectrum(g)?,
            laplacian: laplacian_spectrum(g)?,
            complement_adjacency: adjacency_spectrum(complement)?,
        })
    }

    /// `μ = μ₁(G)`
    pub fn mu(&self) -> f64 {
        self.adjacency.largest()
    }

    pub fn mu_n(&self) -> f64 {
        self.adjacency.smallest()
    }

    /// `λ = λₙ(G)`
    pub fn lambda(&self) -> f64 {
        self.laplacian.largest()
    }

    pub fn lambda_2(&self) -> f64 {
        self.laplacian.second_smallest()
    }

    /// `τ = |μₙ(Ḡ)|`
    pub fn tau(&self) -> f64 {
        self.complement_adjacency.smallest().abs()
    }

    pub fn mu_complement(&self) -> f64 {
        self.complement_adjacency.largest()
    }
}

/// `μ₁(T_r(n))` for `r = 1..=n`, built from the Turán graphs themselves.
#[derive(Debug, Clone)]
pub struct TuranTable {
    n: usize,
    mu: Vec<f64>,
}

impl TuranTable {
    pub fn new(n: usize) -> Result<Self, EigenError> {
        let mu = (1..=n)
            .map(|r| turan_mu(n, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TuranTable { n, mu })
    }

    pub fn get(&self, n: usize, r: usize) -> Option<f64> {
        (n == self.n && (1..=n).contains(&r)).then(|| self.mu[r - 1])
    }
}

pub fn turan_mu(n: usize, r: usize) -> Result<f64, EigenError> {
    let t = turan(n, r).expect("1 <= r <= n");
    Ok(adjacency_spectrum(&t)?.largest())
}

/// Everything a bound needs about one graph.
#[derive(Debug, Clone)]
pub struct BoundContext {
    pub graph: Graph,
    pub complement: Graph,
    pub n: usize,
    pub m: usize,
    /// Average degree `2m/n`.
    pub d: f64,
    pub max_degree: usize,
    pub regular: Option<usize>,
    pub omega: CliqueResult,
    pub alpha: CliqueResult,
    pub spectra: Result<Spectra, EigenError>,
    pub triangles: Vec<usize>,
    pub structure: Result<MultipartiteCertificate, Refutation>,
    pub complement_structure: Result<MultipartiteCertificate, Refutation>,
    pub turan_mu: Result<f64, EigenError>,
    /// Smallest adjacency eigenpair, for regular graphs with edges.
    pub smallest_pair: Option<Result<Eigenpair, EigenError>>,
    pub tol: Tolerances,
}

impl BoundContext {
    pub fn new(g: &Graph) -> Self {
        Self::build(g, None, Tolerances::default())
    }

    pub fn build(g: &Graph, table: Option<&TuranTable>, tol: Tolerances) -> Self {
        let complement = g.complement();
        let n = g.n();
        let m = g.m();
        let omega = max_clique(g);
        let alpha = max_clique(&complement);
        let regular = g.regular_degree();
        let turan_mu = match table.and_then(|t| t.get(n, omega.size)) {
            Some(mu) => Ok(mu),
            None => turan_mu(n, omega.size),
        };
        let smallest_pair = (regular.is_some() && m > 0 && n >= 2).then(|| smallest_adjacency_eigenpair(g));
        BoundContext {
            spectra: Spectra::compute(g, &complement),
            n,
            m,
            d: g.average_degree(),
            max_degree: g.max_degree(),
            regular,
            triangles: g.triangles_per_vertex(),
            structure: g.classify_complete_multipartite(),
            complement_structure: complement.classify_complete_multipartite(),
            turan_mu,
            smallest_pair,
            omega,
            alpha,
            complement,
            graph: g.clone(),
            tol,
        }
    }

    fn spectra(&self) -> Result<&Spectra, String> {
        self.spectra.as_ref().map_err(|e| e.to_string())
    }

    fn omega(&self) -> f64 {
        self.omega.size as f64
    }

    fn alpha(&self) -> f64 {
        self.alpha.size as f64
    }

    fn complete_regular_multipartite(&self) -> Structure {
        match &self.structure {
            Ok(c) if c.regular => Structure::CompleteRegularMultipartite { parts: c.part_sizes() },
            _ => Structure::None,
        }
    }

    fn union_of_equal_cliques(&self) -> Structure {
        match &self.complement_structure {
            Ok(c) if c.regular => Structure::UnionEqualCliques {
                count: c.parts.len(),
                size: c.parts[0].len(),
            },
            _ => Structure::None,
        }
    }
}

macro_rules! spectra_or_err {
    ($ctx:expr, $id:expr) => {
        match $ctx.spectra() {
            Ok(s) => s,
            Err(e) => return BoundEvaluation::errored($id, e),
        }
    };
}

macro_rules! spectra_or_err_cert {
    ($ctx:expr, $id:expr) => {
        match $ctx.spectra() {
            Ok(s) => s,
            Err(e) => return (BoundEvaluation::errored($id, e), None),
        }
    };
}

/// `μₙ < −(2/ω)(2m/n²)^ω · n`.
pub fn bnd1_smallest_eig_check(ctx: &BoundContext) -> BoundEvaluation {
    let id = BoundId::SmallestEigenvalue;
    if ctx.m == 0 {
        return BoundEvaluation::not_applicable(id, "edgeless graph");
    }
    let s = spectra_or_err!(ctx, id);
    let n = ctx.n as f64;
    let w = ctx.omega.size as i32;
    let value = -(2.0 / ctx.omega()) * (2.0 * ctx.m as f64 / (n * n)).powi(w) * n;
    BoundEvaluation::checked(id, value, s.mu_n(), ctx.tol.eq)
}

/// Lower bound on `α` from `d` and `τ = |μₙ(Ḡ)|`, valid for `d ≥ 2`.
pub fn thm1_independence_bound(ctx: &BoundContext) -> BoundEvaluation {
    let id = BoundId::LogIndependence;
    if ctx.d < 2.0 {
        return BoundEvaluation::not_applicable(id, "average degree below 2");
    }
    if ctx.complement.m() == 0 {
        return BoundEvaluation::not_applicable(id, "complement is edgeless, tau = 0");
    }
    let s = spectra_or_err!(ctx, id);
    let value = thm1_rhs(ctx.n, ctx.d, s.tau());
    BoundEvaluation::checked(id, value, ctx.alpha(), ctx.tol.eq)
}

/// `(n/(d+1) − 1)(ln((d+1)/τ) − ln ln(d+1))`.
pub fn thm1_rhs(n: usize, d: f64, tau: f64) -> f64 {
    (n as f64 / (d + 1.0) - 1.0) * (((d + 1.0) / tau).ln() - (d + 1.0).ln().ln())
}

/// Wilf: `ω ≥ n/(n − μ)`.
pub fn wilf_clique_bound(ctx: &BoundContext) -> BoundEvaluation {
    let id = BoundId::Wilf;
    let s = spectra_or_err!(ctx, id);
    let n = ctx.n as f64;
    let value = n / (n - s.mu());
    BoundEvaluation::checked(id, value, ctx.omega(), ctx.tol.eq)
}

/// Concise Turán: `m ≤ (ω−1)/(2ω) · n²`.
pub fn concise_turan_check(ctx: &BoundContext) -> BoundEvaluation {
    let n = ctx.n as f64;
    let w = ctx.omega();
    let value = (w - 1.0) / (2.0 * w) * n * n;
    BoundEvaluation::checked(BoundId::ConciseTuran, value, ctx.m as f64, ctx.tol.eq)
}

/// `μ² ≤ 2(1 − 1/ω)m`, with the certificate for its equality case: for
/// graphs without isolated vertices, equality holds iff `ω = 2` and the
/// graph is complete bipartite, or `ω ≥ 3` and it is complete regular
/// `ω`-partite.
pub fn spectral_turan_bound(ctx: &BoundContext) -> (BoundEvaluation, Option<EqualityCertificate>) {
    let id = BoundId::SpectralTuran;
    let s = spectra_or_err_cert!(ctx, id);
    let w = ctx.omega();
    let two_m = 2.0 * ctx.m as f64;
    let value = (w - 1.0) / w * two_m;
    let mu = s.mu();
    let eval = BoundEvaluation::checked_scaled(id, value, mu * mu, ctx.tol.eq, two_m.max(1.0));
    if ctx.n < 2 || ctx.graph.has_isolated_vertex() {
        return (eval, None);
    }
    let structure = match &ctx.structure {
        Ok(c) if ctx.omega.size == 2 && c.parts.len() == 2 => {
            Structure::CompleteBipartite { parts: c.part_sizes() }
        }
        Ok(c) if ctx.omega.size >= 3 && c.regular => {
            Structure::CompleteRegularMultipartite { parts: c.part_sizes() }
        }
        _ => Structure::None,
    };
    let cert = EqualityCertificate::new(id, eval.equality, structure);
    (eval, Some(cert))
}

/// Equality certificate for `μ² = 2(1 − 1/ω)m`; `None` when the graph has
/// isolated vertices.
pub fn thm2_equality_certificate(ctx: &BoundContext) -> Option<EqualityCertificate> {
    spectral_turan_bound(ctx).1
}

/// `ω ≥ 2m/(2m − μ²)`.
pub fn edwards_elphick_clique_bound(ctx: &BoundContext) -> BoundEvaluation {
    let id = BoundId::EdwardsElphick;
    if ctx.m == 0 {
        return BoundEvaluation::not_applicable(id, "edgeless graph: 0/0");
    }
    let s = spectra_or_err!(ctx, id);
    let two_m = 2.0 * ctx.m as f64;
    let denom = two_m - s.mu() * s.mu();
    let value = if denom > 0.0 { two_m / denom } else { f64::INFINITY };
    BoundEvaluation::checked(id, value, ctx.omega(), ctx.tol.eq)
}

/// `α ≥ (n(n−1) − 2m)/(n(n−1) − 2m − (n−1−μ)²)`; equality iff the graph is
/// a union of `α` cliques of equal size.
pub fn mu_independence_bound(ctx: &BoundContext) -> (BoundEvaluation, Option<EqualityCertificate>) {
    let id = BoundId::MuIndependence;
    if ctx.complement.m() == 0 {
        return (BoundEvaluation::not_applicable(id, "complement is edgeless"), None);
    }
    let s = spectra_or_err_cert!(ctx, id);
    let n = ctx.n as f64;
    let num = n * (n - 1.0) - 2.0 * ctx.m as f64;
    let gap = n - 1.0 - s.mu();
    let denom = num - gap * gap;
    if denom <= ctx.tol.eq {
        let mut eval = BoundEvaluation::checked(id, 1.0, ctx.alpha(), ctx.tol.eq);
        eval.status = Status::Vacuous;
        eval.reason = Some("denominator vanishes".into());
        return (eval, None);
    }
    let eval = BoundEvaluation::checked(id, num / denom, ctx.alpha(), ctx.tol.eq);
    let cert = EqualityCertificate::new(id, eval.equality, ctx.union_of_equal_cliques());
    (eval, Some(cert))
}

/// `μ(G) ≤ μ(T_ω(n))`, strict unless `G` is the Turán graph itself.
pub fn turan_spectral_dominance(ctx: &BoundContext) -> (BoundEvaluation, Option<EqualityCertificate>) {
    let id = BoundId::TuranDominance;
    let s = spectra_or_err_cert!(ctx, id);
    let turan_mu = match &ctx.turan_mu {
        Ok(v) => *v,
        Err(e) => return (BoundEvaluation::errored(id, e.to_string()), None),
    };
    let eval = BoundEvaluation::checked(id, turan_mu, s.mu(), ctx.tol.eq);
    let structure = match &ctx.structure {
        Ok(c) if c.balanced() && c.parts.len() == ctx.omega.size => Structure::TuranGraph {
            r: c.parts.len(),
            parts: c.part_sizes(),
        },
        _ => Structure::None,
    };
    let cert = EqualityCertificate::new(id, eval.equality, structure);
    (eval, Some(cert))
}

/// `ω ≥ 1 + dn/((n−d)(d−μₙ))`; equality iff complete regular `ω`-partite.
pub fn thm3_clique_bound(ctx: &BoundContext) -> (BoundEvaluation, Option<EqualityCertificate>) {
    let id = BoundId::SmallestEigenvalueClique;
    if ctx.n < 2 {
        return (BoundEvaluation::not_applicable(id, "single vertex"), None);
    }
    let s = spectra_or_err_cert!(ctx, id);
    let n = ctx.n as f64;
    let d = ctx.d;
    let value = if ctx.m == 0 {
        1.0
    } else {
        1.0 + d * n / ((n - d) * (d - s.mu_n()))
    };
    let eval = BoundEvaluation::checked(id, value, ctx.omega(), ctx.tol.eq);
    let cert = EqualityCertificate::new(id, eval.equality, ctx.complete_regular_multipartite());
    (eval, Some(cert))
}

/// `μₙ ≤ −d²/(n−d)` for triangle-free graphs with at least one edge.
pub fn triangle_free_mun_check(ctx: &BoundContext) -> BoundEvaluation {
    let id = BoundId::TriangleFree;
    if ctx.m == 0 {
        return BoundEvaluation::not_applicable(id, "edgeless graph");
    }
    if ctx.triangles.iter().any(|&t| t > 0) {
        return BoundEvaluation::not_applicable(id, "graph contains a triangle");
    }
    let s = spectra_or_err!(ctx, id);
    let n = ctx.n as f64;
    let value = -ctx.d * ctx.d / (n - ctx.d);
    BoundEvaluation::checked(id, value, s.mu_n(), ctx.tol.eq)
}

/// `μₙ ≤ 2n/(n²−2m) Σ t(u)/d(u) − 4m²/(n(n²−2m))` for graphs without
/// isolated vertices.
pub fn lemma2_mun_upper(ctx: &BoundContext) -> BoundEvaluation {
    let id = BoundId::TriangleCount;
    if ctx.graph.has_isolated_vertex() {
        return BoundEvaluation::not_applicable(id, "graph has an isolated vertex");
    }
    let s = spectra_or_err!(ctx, id);
    let n = ctx.n as f64;
    let m = ctx.m as f64;
    let gap = n * n - 2.0 * m;
    let ratio: f64 = (0..ctx.n)
        .map(|u| ctx.triangles[u] as f64 / ctx.graph.degree(u) as f64)
        .sum();
    let value = 2.0 * n / gap * ratio - 4.0 * m * m / (n * gap);
    BoundEvaluation::checked(id, value, s.mu_n(), ctx.tol.eq)
}

/// `ω ≥ 1 + dn/(λ(n−d))`; equality iff regular complete `ω`-partite.
pub fn laplacian_clique_bound(ctx: &BoundContext) -> (BoundEvaluation, Option<EqualityCertificate>) {
    let id = BoundId::LaplacianClique;
    if ctx.m == 0 {
        return (BoundEvaluation::not_applicable(id, "edgeless graph: lambda = 0"), None);
    }
    let s = spectra_or_err_cert!(ctx, id);
    let n = ctx.n as f64;
    let d = ctx.d;
    let value = 1.0 + d * n / (s.lambda() * (n - d));
    let eval = BoundEvaluation::checked(id, value, ctx.omega(), ctx.tol.eq);
    let cert = EqualityCertificate::new(id, eval.equality, ctx.complete_regular_multipartite());
    (eval, Some(cert))
}

/// `α ≥ 1 + (n−1−d)n/((n−λ₂)(1+d))`; equality iff a union of `α` disjoint
/// cliques of equal order.
pub fn laplacian_independence_bound(ctx: &BoundContext) -> (BoundEvaluation, Option<EqualityCertificate>) {
    let id = BoundId::LaplacianIndependence;
    if ctx.complement.m() == 0 {
        return (BoundEvaluation::not_applicable(id, "complete graph: 0/0"), None);
    }
    let s = spectra_or_err_cert!(ctx, id);
    let n = ctx.n as f64;
    let d = ctx.d;
    let value = 1.0 + (n - 1.0 - d) * n / ((n - s.lambda_2()) * (1.0 + d));
    let eval = BoundEvaluation::checked(id, value, ctx.alpha(), ctx.tol.eq);
    let cert = EqualityCertificate::new(id, eval.equality, ctx.union_of_equal_cliques());
    (eval, Some(cert))
}

/// `ω ≥ 2m/(2m − (λ−Δ)²)` together with `(λ−Δ)² ≤ m`, which caps the former
/// at 2.
pub fn llt_bound_with_prop1(ctx: &BoundContext) -> (BoundEvaluation, BoundEvaluation) {
    let (id, vid) = (BoundId::LaplacianDegree, BoundId::LaplacianDegreeVacuity);
    if ctx.m == 0 {
        return (
            BoundEvaluation::not_applicable(id, "edgeless graph"),
            BoundEvaluation::not_applicable(vid, "edgeless graph"),
        );
    }
    let s = match ctx.spectra() {
        Ok(s) => s,
        Err(e) => return (BoundEvaluation::errored(id, e.clone()), BoundEvaluation::errored(vid, e)),
    };
    let two_m = 2.0 * ctx.m as f64;
    let gap = s.lambda() - ctx.max_degree as f64;
    let sq = gap * gap;
    let value = if two_m > sq { two_m / (two_m - sq) } else { f64::INFINITY };
    (
        BoundEvaluation::checked(id, value, ctx.omega(), ctx.tol.eq),
        BoundEvaluation::checked(vid, ctx.m as f64, sq, ctx.tol.eq),
    )
}

/// `θ₊(u)` and `θ₋(u)`: reciprocals of the largest positive and the
/// largest-magnitude negative entry. Entries within [`THETA_ZERO`] of zero
/// are ignored.
pub fn theta_pair(u: &[f64]) -> (Option<f64>, Option<f64>) {
    let pos = u.iter().copied().filter(|&x| x > THETA_ZERO).fold(None, |a: Option<f64>, x| {
        Some(a.map_or(x, |a| a.max(x)))
    });
    let neg = u.iter().copied().filter(|&x| x < -THETA_ZERO).fold(None, |a: Option<f64>, x| {
        Some(a.map_or(-x, |a| a.max(-x)))
    });
    (pos.map(|p| 1.0 / p), neg.map(|q| 1.0 / q))
}

/// `θ₋(u)`.
pub fn theta_minus(u: &[f64]) -> Option<f64> {
    theta_pair(u).1
}

/// Wilf's eigenvector bound for regular graphs, evaluated at the computed
/// `μₙ`-eigenvector `u` and at `−u`; the better value is kept.
pub fn wilf_theta_bound(ctx: &BoundContext) -> BoundEvaluation {
    let id = BoundId::WilfTheta;
    let Some(d) = ctx.regular else {
        return BoundEvaluation::not_applicable(id, "graph is not regular");
    };
    let pair = match &ctx.smallest_pair {
        None => return BoundEvaluation::not_applicable(id, "edgeless graph"),
        Some(Err(e)) => return BoundEvaluation::errored(id, e.to_string()),
        Some(Ok(p)) => p,
    };
    match wilf_theta_value(ctx.n, d, pair) {
        Some(value) => BoundEvaluation::checked(id, value, ctx.alpha(), ctx.tol.eq),
        None => BoundEvaluation::errored(id, "eigenvector has no sign change".into()),
    }
}

/// `n²/(n(d+1) + (μₙ+1)·max(θ₊², θ₋²))`.
pub fn wilf_theta_value(n: usize, d: usize, pair: &Eigenpair) -> Option<f64> {
    let (plus, minus) = theta_pair(&pair.vector);
    let theta = plus?.max(minus?);
    let n = n as f64;
    let denom = n * (d as f64 + 1.0) + (pair.value + 1.0) * theta * theta;
    (denom > 0.0).then(|| n * n / denom)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Thm4Error {
    #[error("witness is not an independent set: {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("witness has size {got} but the independence number is {alpha}")]
    NotMaximum { got: usize, alpha: usize },
    #[error("witness vertex {0} out of range")]
    OutOfRange(usize),
}

/// Witness identities for the exact independence number of a regular graph.
///
/// With `x` uniform on a maximum independent set, `u = x − j` lies in
/// `R₀(n)` and `v = u/‖u‖` in `S(n)`. The report records the residual of
/// `⟨Au,u⟩ + ⟨u,u⟩ = 1/α − (d+1)/n`, the residual of the scaling
/// `n²(⟨Au,u⟩ + ⟨u,u⟩) = (⟨v,Av⟩ + 1)θ₋²(v)`, and the formula value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm4Report {
    pub n: usize,
    pub d: usize,
    pub alpha: usize,
    pub witness: Vec<usize>,
    pub membership_ok: bool,
    #[serde(serialize_with = "sig12")]
    pub witness_term: f64,
    #[serde(serialize_with = "sig12")]
    pub eq2_residual: f64,
    #[serde(serialize_with = "sig12")]
    pub scaled_term: f64,
    #[serde(serialize_with = "sig12")]
    pub scaling_residual: f64,
    #[serde(serialize_with = "sig12")]
    pub formula_value: f64,
    pub formula_rounds_to_alpha: bool,
    /// `(μₙ + 1)·max(θ₊², θ₋²)` at the computed eigenvector, a feasible value
    /// of the minimised expression.
    #[serde(serialize_with = "sig12_opt")]
    pub eigenvector_term: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Thm4Check {
    Checked(Thm4Report),
    NotApplicable { reason: String, alpha: usize },
}

pub fn thm4_exact_alpha_check(g: &Graph, witness: &[usize]) -> Result<Thm4Check, Thm4Error> {
    let n = g.n();
    if let Some(&v) = witness.iter().find(|&&v| v >= n) {
        return Err(Thm4Error::OutOfRange(v));
    }
    for (i, &a) in witness.iter().enumerate() {
        if let Some(&b) = witness[i + 1..].iter().find(|&&b| g.has_edge(a, b) || a == b) {
            return Err(Thm4Error::NotIndependent(a, b));
        }
    }
    let alpha = max_independent_set(g).size;
    if witness.len() != alpha {
        return Err(Thm4Error::NotMaximum { got: witness.len(), alpha });
    }
    let Some(d) = g.regular_degree() else {
        return Ok(Thm4Check::NotApplicable {
            reason: "graph is not regular".into(),
            alpha,
        });
    };
    if alpha == n {
        return Ok(Thm4Check::NotApplicable {
            reason: "edgeless graph: u = 0 is not in S(n)".into(),
            alpha,
        });
    }
    let nf = n as f64;
    let mut u = vec![-1.0 / nf; n];
    for &i in witness {
        u[i] += 1.0 / alpha as f64;
    }
    let form = |x: &[f64]| -> f64 {
        (0..n).map(|i| x[i] * g.neighbors(i).map(|j| x[j]).sum::<f64>()).sum()
    };
    let uu: f64 = u.iter().map(|x| x * x).sum();
    let witness_term = form(&u) + uu;
    let expected = 1.0 / alpha as f64 - (d as f64 + 1.0) / nf;
    let eq2_residual = (witness_term - expected).abs();

    let norm = uu.sqrt();
    let v: Vec<f64> = u.iter().map(|x| x / norm).collect();
    let theta = theta_minus(&v).unwrap_or(f64::NAN);
    let scaled_term = (form(&v) + 1.0) * theta * theta;
    let scaling_residual = (nf * nf * witness_term - scaled_term).abs();

    // u ∈ R₀(n): coordinates sum to zero with minimum exactly −1/n;
    // v ∈ S(n): unit norm, coordinates sum to zero; f(v) = θ₋(v)v/n = u.
    let min_u = u.iter().copied().fold(f64::INFINITY, f64::min);
    let f_v_ok = v
        .iter()
        .zip(&u)
        .all(|(vi, ui)| (theta * vi / nf - ui).abs() <= THM4_TOLERANCE);
    let membership_ok = u.iter().sum::<f64>().abs() <= 1e-12
        && (min_u + 1.0 / nf).abs() <= 1e-15
        && (v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() <= 1e-12
        && v.iter().sum::<f64>().abs() <= 1e-12
        && f_v_ok;

    let formula_value = nf * nf / (nf * (d as f64 + 1.0) + scaled_term);
    let formula_rounds_to_alpha = formula_value.round() as usize == alpha;

    let eigenvector_term = smallest_adjacency_eigenpair(g).ok().and_then(|p| {
        let (plus, minus) = theta_pair(&p.vector);
        Some((p.value + 1.0) * plus?.max(minus?).powi(2))
    });
    let min_ok = eigenvector_term.is_none_or(|e| scaled_term <= e + THM4_TOLERANCE * nf * nf);

    let passed = membership_ok
        && eq2_residual <= THM4_TOLERANCE
        && scaling_residual <= THM4_TOLERANCE
        && formula_rounds_to_alpha
        && min_ok;
    Ok(Thm4Check::Checked(Thm4Report {
        n,
        d,
        alpha,
        witness: witness.to_vec(),
        membership_ok,
        witness_term,
        eq2_residual,
        scaled_term,
        scaling_residual,
        formula_value,
        formula_rounds_to_alpha,
        eigenvector_term,
        passed,
    }))
}

fn thm4_evaluation(ctx: &BoundContext) -> (BoundEvaluation, Option<Thm4Check>) {
    let id = BoundId::ExactRegularAlpha;
    match thm4_exact_alpha_check(&ctx.graph, &ctx.alpha.witness) {
        Err(e) => (BoundEvaluation::errored(id, e.to_string()), None),
        Ok(Thm4Check::NotApplicable { reason, alpha }) => (
            BoundEvaluation::not_applicable(id, &reason),
            Some(Thm4Check::NotApplicable { reason, alpha }),
        ),
        Ok(Thm4Check::Checked(r)) => {
            let eval = BoundEvaluation::checked(id, r.formula_value, ctx.alpha(), ctx.tol.eq);
            (eval, Some(Thm4Check::Checked(r)))
        }
    }
}

/// Per-graph quantities reported alongside the evaluations.
#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "sig12")]
    pub d: f64,
    pub max_degree: usize,
    pub omega: usize,
    pub alpha: usize,
    #[serde(serialize_with = "sig12")]
    pub mu_1: f64,
    #[serde(serialize_with = "sig12")]
    pub mu_n: f64,
    #[serde(serialize_with = "sig12")]
    pub lambda_2: f64,
    #[serde(serialize_with = "sig12")]
    pub lambda_n: f64,
    #[serde(serialize_with = "sig12")]
    pub tau: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub graph: GraphSummary,
    pub evaluations: Vec<BoundEvaluation>,
    pub certificates: Vec<EqualityCertificate>,
    pub thm4: Option<Thm4Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The inequality fails beyond tolerance.
    BoundFailed,
    /// A strict inequality is attained outside its certified equality case.
    StrictnessFailed,
    /// Numeric equality and structural classification disagree.
    CertificateInconsistent,
    /// A witness identity for the exact regular-graph formula fails.
    WitnessIdentity,
    Errored,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub bound: BoundId,
    pub kind: ViolationKind,
    pub detail: String,
}

impl BoundReport {
    pub fn evaluation(&self, id: BoundId) -> &BoundEvaluation {
        self.evaluations
            .iter()
            .find(|e| e.bound == id)
            .expect("every bound appears in a report")
    }

    pub fn certificate(&self, id: BoundId) -> Option<&EqualityCertificate> {
        self.certificates.iter().find(|c| c.bound == id)
    }

    /// Bounds whose equality flag is set.
    pub fn equalities(&self) -> Vec<BoundId> {
        self.evaluations
            .iter()
            .filter(|e| e.status.is_checked() && e.equality)
            .map(|e| e.bound)
            .collect()
    }

    pub fn violations(&self, tol: f64) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in &self.evaluations {
            match e.status {
                Status::Errored => out.push(Violation {
                    bound: e.bound,
                    kind: ViolationKind::Errored,
                    detail: e.reason.clone().unwrap_or_default(),
                }),
                Status::NotApplicable => {}
                Status::Applicable | Status::Vacuous => {
                    if !e.holds(tol) {
                        out.push(Violation {
                            bound: e.bound,
                            kind: ViolationKind::BoundFailed,
                            detail: format!(
                                "value {} vs {} {} (margin {:e})",
                                e.value,
                                e.bound.target_name(),
                                e.target,
                                e.margin
                            ),
                        });
                    } else if e.strict_expected && e.equality && !self.certified_equality(e.bound) {
                        out.push(Violation {
                            bound: e.bound,
                            kind: ViolationKind::StrictnessFailed,
                            detail: format!("strict inequality attained (margin {:e})", e.margin),
                        });
                    }
                }
            }
        }
        for c in &self.certificates {
            if !c.consistent {
                out.push(Violation {
                    bound: c.bound,
                    kind: ViolationKind::CertificateInconsistent,
                    detail: format!(
                        "numeric equality {} but structure {:?}",
                        c.numeric_equality, c.structure
                    ),
                });
            }
        }
        if let Some(Thm4Check::Checked(r)) = &self.thm4 {
            if !r.passed {
                out.push(Violation {
                    bound: BoundId::ExactRegularAlpha,
                    kind: ViolationKind::WitnessIdentity,
                    detail: format!(
                        "eq2 residual {:e}, scaling residual {:e}, formula {}",
                        r.eq2_residual, r.scaling_residual, r.formula_value
                    ),
                });
            }
        }
        out
    }

    fn certified_equality(&self, id: BoundId) -> bool {
        self.certificate(id)
            .is_some_and(|c| c.consistent && c.structure != Structure::None)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per bound: `bound,status,value,target,margin,equality,reason`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["bound", "status", "value", "target", "margin", "equality", "reason"])
            .unwrap();
        let real = crate::serial::format_real;
        for e in &self.evaluations {
            let status = serde_json::to_value(e.status).unwrap();
            w.write_record([
                e.bound.label().to_string(),
                status.as_str().unwrap().to_string(),
                real(e.value),
                real(e.target),
                real(e.margin),
                e.equality.to_string(),
                e.reason.clone().unwrap_or_default(),
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    /// Human-readable table.
    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = format!(
            "n={} m={} d={:.6} Delta={} omega={} alpha={}\nmu_1={:.9} mu_n={:.9} lambda_2={:.9} lambda_n={:.9} tau={:.9}\n\n",
            g.n, g.m, g.d, g.max_degree, g.omega, g.alpha, g.mu_1, g.mu_n, g.lambda_2, g.lambda_n, g.tau
        );
        out.push_str(&format!(
            "{:<18} {:<15} {:>14} {:>14} {:>14}  {}\n",
            "bound", "status", "value", "target", "margin", "eq"
        ));
        for e in &self.evaluations {
            let status = match e.status {
                Status::Applicable => "applicable",
                Status::Vacuous => "vacuous",
                Status::NotApplicable => "not_applicable",
                Status::Errored => "errored",
            };
            out.push_str(&format!(
                "{:<18} {:<15} {:>14.9} {:>14.9} {:>14.3e}  {}\n",
                e.bound.label(),
                status,
                e.value,
                e.target,
                e.margin,
                if e.equality { "=" } else { "" }
            ));
        }
        out
    }
}

/// Runs every bound on `g` with default tolerances.
pub fn full_report(g: &Graph) -> BoundReport {
    report_from_context(&BoundContext::new(g))
}

pub fn full_report_with(g: &Graph, table: Option<&TuranTable>, tol: Tolerances) -> BoundReport {
    report_from_context(&BoundContext::build(g, table, tol))
}

pub fn report_from_context(ctx: &BoundContext) -> BoundReport {
    let mut evaluations = Vec::with_capacity(BoundId::ALL.len());
    let mut certificates = Vec::new();
    let mut push = |(e, c): (BoundEvaluation, Option<EqualityCertificate>)| {
        evaluations.push(e);
        certificates.extend(c);
    };
    push((bnd1_smallest_eig_check(ctx), None));
    push((thm1_independence_bound(ctx), None));
    push((wilf_clique_bound(ctx), None));
    push((concise_turan_check(ctx), None));
    push(spectral_turan_bound(ctx));
    push((edwards_elphick_clique_bound(ctx), None));
    push(mu_independence_bound(ctx));
    push(turan_spectral_dominance(ctx));
    push(thm3_clique_bound(ctx));
    push((triangle_free_mun_check(ctx), None));
    push((lemma2_mun_upper(ctx), None));
    push(laplacian_clique_bound(ctx));
    push(laplacian_independence_bound(ctx));
    let (llt, prop1) = llt_bound_with_prop1(ctx);
    push((llt, None));
    push((prop1, None));
    push((wilf_theta_bound(ctx), None));
    let (thm4_eval, thm4) = thm4_evaluation(ctx);
    push((thm4_eval, None));

    let nan = f64::NAN;
    let sp = ctx.spectra.as_ref().ok();
    BoundReport {
        graph: GraphSummary {
            n: ctx.n,
            m: ctx.m,
            d: ctx.d,
            max_degree: ctx.max_degree,
            omega: ctx.omega.size,
            alpha: ctx.alpha.size,
            mu_1: sp.map_or(nan, Spectra::mu),
            mu_n: sp.map_or(nan, Spectra::mu_n),
            lambda_2: sp.map_or(nan, Spectra::lambda_2),
            lambda_n: sp.map_or(nan, Spectra::lambda),
            tau: sp.map_or(nan, Spectra::tau),
        },
        evaluations,
        certificates,
        thm4,
    }
}
