//! Deterministic generators for the test families.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// Restarts allowed before [`Family::RandomRegular`] gives up.
pub const RANDOM_REGULAR_MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    /// `K_{1,n-1}` on `n` vertices with centre `0`.
    Star {
        n: usize,
    },
    /// Erdős–Rényi `G(n, p)`.
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
    RandomRegular {
        n: usize,
        d: usize,
        seed: u64,
    },
    /// Rook's graph `K_n □ K_n`; vertex `(row, col)` is `row * n + col`.
    Rook {
        n: usize,
    },
}

impl Family {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            Family::Complete { n } => {
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Family::Cycle { n } => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "cycle needs n >= 3, got {n}"
                    )));
                }
                Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n)))
            }
            Family::Path { n } => Graph::from_edges(n, (1..n).map(|v| (v - 1, v))),
            Family::Star { n } => {
                if n == 0 {
                    return Err(Error::InvalidParameter("star needs n >= 1".into()));
                }
                Graph::from_edges(n, (1..n).map(|v| (0, v)))
            }
            Family::Gnp { n, p, seed } => gnp(n, p, seed),
            Family::RandomRegular { n, d, seed } => random_regular(n, d, seed),
            Family::Rook { n } => rook(n),
        }
    }
}

fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

fn rook(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("rook graph needs n >= 1".into()));
    }
    let mut edges = Vec::with_capacity(n * n * (n - 1));
    for u in 0..n * n {
        let (ru, cu) = (u / n, u % n);
        for v in u + 1..n * n {
            if ru == v / n || cu == v % n {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n * n, edges)
}

/// Pairing model with incremental rejection: shuffle the open stubs, keep every
/// consecutive pair that forms a new simple edge, put the rest back and repeat.
/// An attempt is abandoned when no simple pairing of the leftover stubs is
/// possible.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d > 0 && d >= n {
        return Err(Error::InvalidParameter(format!(
            "random regular graph needs d < n, got n = {n}, d = {d}"
        )));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "n * d must be even, got n = {n}, d = {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_REGULAR_MAX_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::GenerationFailed {
        attempts: RANDOM_REGULAR_MAX_ATTEMPTS,
    })
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let mut edges: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(n * d / 2);
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        stubs.shuffle(rng);
        let mut leftover = Vec::new();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u != v && edges.insert((u, v)) {
                continue;
            }
            leftover.extend_from_slice(pair);
        }
        if !leftover.is_empty() && !has_simple_pair(&leftover, &edges) {
            return None;
        }
        stubs = leftover;
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Some(edges)
}

fn has_simple_pair(stubs: &[Vertex], edges: &HashSet<(Vertex, Vertex)>) -> bool {
    let mut open: Vec<Vertex> = stubs.to_vec();
    open.sort_unstable();
    open.dedup();
    open.iter()
        .enumerate()
        .any(|(i, &u)| open[i + 1..].iter().any(|&v| !edges.contains(&(u, v))))
}
