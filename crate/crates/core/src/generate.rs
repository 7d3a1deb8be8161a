//! Graph families: complete multipartite and Turán graphs, unions of
//! cliques, random regular graphs, G(n, p), and exhaustive labeled
//! enumeration for small orders.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError};

/// Largest order supported by [`enumerate_labeled_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Complete multipartite graph with the given part sizes; vertices of part
/// `i` are consecutive.
pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Graph, GraphError> {
    if part_sizes.is_empty() {
        return Err(GraphError::NoParts);
    }
    if part_sizes.contains(&0) {
        return Err(GraphError::EmptyPart);
    }
    let n = part_sizes.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (p, &s) in part_sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, s));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.set_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Part sizes of the Turán graph `T_r(n)`: `r` parts differing by at most one,
/// larger parts first.
pub fn turan_part_sizes(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

/// Turán graph `T_r(n)`.
pub fn turan(n: usize, r: usize) -> Result<Graph, GraphError> {
    if r == 0 || r > n {
        return Err(GraphError::InvalidParameters(format!(
            "Turán graph needs 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    complete_multipartite(&turan_part_sizes(n, r))
}

/// Edge count of `T_r(n)`.
pub fn turan_edges(n: usize, r: usize) -> usize {
    let sizes = turan_part_sizes(n, r);
    let within: usize = sizes.iter().map(|s| s * s.saturating_sub(1) / 2).sum();
    n * (n - 1) / 2 - within
}

/// Disjoint union of `count` copies of `K_size`.
pub fn union_of_cliques(count: usize, size: usize) -> Result<Graph, GraphError> {
    if count == 0 || size == 0 {
        return Err(GraphError::InvalidParameters(format!(
            "union of cliques needs count, size >= 1, got {count}, {size}"
        )));
    }
    let mut g = Graph::empty(count * size)?;
    for c in 0..count {
        let base = c * size;
        for u in 0..size {
            for v in u + 1..size {
                g.set_edge(base + u, base + v);
            }
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameters(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("Petersen edges are simple")
}

/// Uniform-ish random `d`-regular graph from the pairing model.
///
/// Points are shuffled and paired; pairs that would form a loop or a repeated
/// edge are returned to the pool and re-shuffled. A round in which no valid
/// pair can be formed any more abandons the attempt. At most `10·n·d`
/// attempts are made.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(GraphError::InvalidParameters(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    if d == 0 {
        return Graph::empty(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 10 * n * d;
    for _ in 0..budget {
        if let Some(g) = try_pairing(n, d, &mut rng) {
            return Ok(g);
        }
    }
    Err(GraphError::RetryBudgetExhausted { n, d, attempts: budget })
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut g = Graph::empty(n).ok()?;
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !points.is_empty() {
        points.shuffle(rng);
        let mut leftover = Vec::new();
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u != v && !g.has_edge(u, v) {
                g.set_edge(u, v);
            } else {
                leftover.extend_from_slice(pair);
            }
        }
        if !leftover.is_empty() && !has_valid_pair(&g, &leftover) {
            return None;
        }
        points = leftover;
    }
    Some(g)
}

fn has_valid_pair(g: &Graph, points: &[usize]) -> bool {
    let mut vs: Vec<usize> = points.to_vec();
    vs.sort_unstable();
    vs.dedup();
    vs.iter()
        .enumerate()
        .any(|(i, &u)| vs[i + 1..].iter().any(|&v| !g.has_edge(u, v)))
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameters(format!("edge probability {p} not in [0, 1]")));
    }
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.set_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Number of vertex pairs, i.e. the edge-mask width, for order `n`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices in edge-mask order.
pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs, GraphError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::EnumerationRange(n));
    }
    Ok(LabeledGraphs {
        n,
        next: 0,
        end: 1u64 << pair_count(n),
    })
}

/// Iterator over labeled graphs; see [`enumerate_labeled_graphs`].
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    /// Restricts the stream to edge masks in `start..end`.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.end);
        self.next = start.min(self.end);
        self
    }

    pub fn total(&self) -> u64 {
        1u64 << pair_count(self.n)
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = Graph::from_edge_mask(self.n, self.next).expect("n >= 1");
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn octahedron() {
        let g = complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(g.m(), 12);
        assert_eq!(g.regular_degree(), Some(4));
        assert_eq!(g, turan(6, 3).unwrap());
    }

    #[test]
    fn small_multipartite_cases() {
        assert_eq!(complete_multipartite(&[1, 1, 1]).unwrap(), Graph::complete(3).unwrap());
        assert_eq!(complete_multipartite(&[3, 3]).unwrap().m(), 9);
        assert_eq!(complete_multipartite(&[]), Err(GraphError::NoParts));
        assert_eq!(complete_multipartite(&[2, 0]), Err(GraphError::EmptyPart));
    }

    #[test]
    fn turan_sizes() {
        assert_eq!(turan_part_sizes(7, 3), vec![3, 2, 2]);
        assert_eq!(turan_edges(4, 2), 4);
        assert_eq!(turan_edges(7, 3), turan(7, 3).unwrap().m());
    }

    #[test]
    fn clique_unions() {
        let g = union_of_cliques(2, 3).unwrap();
        assert_eq!((g.n(), g.m()), (6, 6));
        assert_eq!(union_of_cliques(1, 4).unwrap(), Graph::complete(4).unwrap());
        let matching = union_of_cliques(3, 2).unwrap();
        assert_eq!((matching.n(), matching.m()), (6, 3));
        assert_eq!(matching.regular_degree(), Some(1));
    }

    #[test]
    fn regular_on_four_vertices_is_a_four_cycle() {
        for seed in 0..20 {
            let g = random_regular(4, 2, seed).unwrap();
            assert_eq!(g.regular_degree(), Some(2));
            assert_eq!(g.m(), 4);
            // C4: every vertex has exactly one non-neighbour and no triangles
            assert_eq!(g.triangle_count(), 0);
        }
    }

    #[test]
    fn regular_extremes() {
        assert_eq!(random_regular(5, 4, 9).unwrap(), Graph::complete(5).unwrap());
        let g = random_regular(10, 3, 1).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(g.m(), 15);
    }

    #[test]
    fn regular_rejects_infeasible() {
        assert!(random_regular(5, 3, 0).is_err());
        assert!(random_regular(4, 4, 0).is_err());
    }

    #[test]
    fn regular_is_seed_deterministic() {
        assert_eq!(random_regular(30, 5, 7).unwrap(), random_regular(30, 5, 7).unwrap());
    }

    #[test]
    fn dense_regular_generation_succeeds() {
        let g = random_regular(200, 50, 3).unwrap();
        assert_eq!(g.regular_degree(), Some(50));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labeled_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_labeled_graphs(2).unwrap().count(), 2);
        assert_eq!(enumerate_labeled_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_labeled_graphs(5).unwrap().count(), 1024);
        assert!(enumerate_labeled_graphs(8).is_err());
        assert!(enumerate_labeled_graphs(0).is_err());
    }

    #[test]
    fn enumeration_is_exhaustive_and_distinct() {
        let all: std::collections::HashSet<_> = enumerate_labeled_graphs(4).unwrap().collect();
        assert_eq!(all.len(), 64);
        let ranged: Vec<_> = enumerate_labeled_graphs(4).unwrap().range(10, 20).collect();
        assert_eq!(ranged.len(), 10);
        assert_eq!(ranged[0], Graph::from_edge_mask(4, 10).unwrap());
    }

    proptest! {
        #[test]
        fn multipartite_round_trip(sizes in prop::collection::vec(1usize..5, 1..5)) {
            prop_assume!(sizes.iter().sum::<usize>() <= 12);
            let g = complete_multipartite(&sizes).unwrap();
            let cert = g.classify_complete_multipartite().unwrap();
            let mut got = cert.part_sizes();
            let mut want = sizes.clone();
            got.sort_unstable();
            want.sort_unstable();
            prop_assert_eq!(got, want);
            prop_assert_eq!(cert.regular, sizes.iter().all(|&s| s == sizes[0]));
        }

        #[test]
        fn random_regular_degrees(n in 4usize..40, d in 1usize..8, seed: u64) {
            prop_assume!(d < n && (n * d) % 2 == 0);
            let g = random_regular(n, d, seed).unwrap();
            prop_assert_eq!(g.regular_degree(), Some(d));
        }
    }
}
