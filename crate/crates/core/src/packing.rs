//! k-limited packings: verification, the randomized construction, greedy
//! maximal extension, and exact branch-and-bound oracles for `L_k(G)` and the
//! k-tuple domination number `γ_{×k}(G)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::log_binomial;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Largest instance admitted to the exact solvers unless overridden.
pub const DEFAULT_ORACLE_CAP: usize = 30;

/// A graph together with the packing parameter `k ≥ 1`.
#[derive(Clone, Copy, Debug)]
pub struct PackingInstance<'g> {
    graph: &'g Graph,
    k: usize,
}

impl<'g> PackingInstance<'g> {
    pub fn new(graph: &'g Graph, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(Self { graph, k })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Per-vertex `|N[v] ∩ x|`.
    fn closed_counts(&self, x: &VertexSet) -> Vec<usize> {
        (0..self.graph.n())
            .map(|v| self.graph.closed_count_unchecked(v, x))
            .collect()
    }

    fn can_add(&self, counts: &[usize], v: Vertex) -> bool {
        counts[v] < self.k && self.graph.neighbors(v).iter().all(|&w| counts[w] < self.k)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackingResult {
    pub set: VertexSet,
    pub size: usize,
    /// Seed of the randomized run; `None` for deterministic solvers.
    pub seed: Option<u64>,
    pub is_maximal: bool,
}

impl PackingResult {
    fn new(set: VertexSet, seed: Option<u64>, is_maximal: bool) -> Self {
        Self {
            size: set.len(),
            set,
            seed,
            is_maximal,
        }
    }
}

/// `true` iff `|N[v] ∩ x| ≤ k` for every vertex `v`.
pub fn verify_packing(inst: &PackingInstance<'_>, x: &VertexSet) -> Result<bool> {
    x.check_universe(inst.graph.n())?;
    Ok(inst.closed_counts(x).into_iter().all(|c| c <= inst.k))
}

/// `true` iff `|N[v] ∩ y| ≥ k` for every vertex `v`.
pub fn verify_ktuple_dominating(inst: &PackingInstance<'_>, y: &VertexSet) -> Result<bool> {
    y.check_universe(inst.graph.n())?;
    Ok(inst.closed_counts(y).into_iter().all(|c| c >= inst.k))
}

/// `true` iff `x` is a k-limited packing and no vertex outside it can be added.
pub fn is_maximal_packing(inst: &PackingInstance<'_>, x: &VertexSet) -> Result<bool> {
    if !verify_packing(inst, x)? {
        return Ok(false);
    }
    let counts = inst.closed_counts(x);
    Ok((0..inst.graph.n()).all(|v| x.contains(v) || !inst.can_add(&counts, v)))
}

/// Selection probability `p = (1 / (C(Δ+1, k+1) (1+k)))^{1/k}` for `1 ≤ k ≤ Δ`.
pub fn compute_p(delta: usize, k: usize) -> Result<f64> {
    if k == 0 || k > delta {
        return Err(Error::InvalidParameter(format!(
            "selection probability needs 1 <= k <= max degree, got k = {k}, max degree = {delta}"
        )));
    }
    let ln_c = log_binomial(delta as u64 + 1, k as u64 + 1)?;
    Ok((-(ln_c + (1.0 + k as f64).ln()) / k as f64).exp())
}

/// Randomized k-limited packing.
///
/// 1. Every vertex joins `A` with probability [`compute_p`], one draw per
///    vertex in ascending order.
/// 2. One ascending pass: with `r = |N(v) ∩ A|` against the current `A`, drop
///    the `r - k + 1` largest-index members of `N(v) ∩ A` when `v ∈ A` and
///    `r ≥ k`, or the `r - k` largest when `v ∉ A` and `r > k`.
/// 3. Greedy extension to a maximal packing.
///
/// When `k ≥ Δ + 1` every vertex set is a packing and `V(G)` is returned.
pub fn randomized_packing(inst: &PackingInstance<'_>, seed: u64) -> Result<PackingResult> {
    let g = inst.graph;
    let delta = g.max_degree()?;
    let k = inst.k;
    if k > delta {
        return Ok(PackingResult::new(VertexSet::full(g.n()), Some(seed), true));
    }

    let p = compute_p(delta, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = VertexSet::empty(g.n());
    for v in 0..g.n() {
        if rng.random::<f64>() < p {
            a.insert(v);
        }
    }

    let mut hits = Vec::with_capacity(delta);
    for v in 0..g.n() {
        hits.clear();
        hits.extend(g.neighbors(v).iter().copied().filter(|&w| a.contains(w)));
        let r = hits.len();
        let excess = if a.contains(v) {
            (r + 1).saturating_sub(k)
        } else {
            r.saturating_sub(k)
        };
        // neighbour lists are ascending, so the tail holds the largest indices
        for &w in &hits[r - excess..] {
            a.remove(w);
        }
    }
    debug_assert!(verify_packing(inst, &a)?);

    let x = extend_to_maximal(inst, &a)?;
    Ok(PackingResult::new(x, Some(seed), true))
}

/// Scans vertices in ascending order and adds each one whose addition keeps
/// `|N[w] ∩ X| ≤ k` for itself and all its neighbours.
pub fn extend_to_maximal(inst: &PackingInstance<'_>, x: &VertexSet) -> Result<VertexSet> {
    if !verify_packing(inst, x)? {
        return Err(Error::NotAPacking { k: inst.k });
    }
    let g = inst.graph;
    let mut counts = inst.closed_counts(x);
    let mut out = x.clone();
    for v in 0..g.n() {
        if !out.contains(v) && inst.can_add(&counts, v) {
            out.insert(v);
            counts[v] += 1;
            for &w in g.neighbors(v) {
                counts[w] += 1;
            }
        }
    }
    Ok(out)
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        Err(Error::Capacity { n: g.n(), cap })
    } else {
        Ok(())
    }
}

/// Maximum k-limited packing by depth-first include/exclude search over
/// ascending vertices.
pub fn exact_lk(inst: &PackingInstance<'_>, cap: usize) -> Result<PackingResult> {
    check_cap(inst.graph, cap)?;
    let n = inst.graph.n();
    let seed = extend_to_maximal(inst, &VertexSet::empty(n))?;
    let mut search = MaxPacking {
        inst,
        counts: vec![0; n],
        chosen: Vec::with_capacity(n),
        best: seed.to_vec(),
    };
    search.branch(0);
    let set = VertexSet::from_vertices(n, search.best)?;
    Ok(PackingResult::new(set, None, true))
}

struct MaxPacking<'a, 'g> {
    inst: &'a PackingInstance<'g>,
    counts: Vec<usize>,
    chosen: Vec<Vertex>,
    best: Vec<Vertex>,
}

impl MaxPacking<'_, '_> {
    fn branch(&mut self, v: Vertex) {
        let n = self.counts.len();
        if self.chosen.len() + (n - v) <= self.best.len() {
            return;
        }
        if v == n {
            self.best.clone_from(&self.chosen);
            return;
        }
        let g = self.inst.graph;
        if self.inst.can_add(&self.counts, v) {
            self.counts[v] += 1;
            for &w in g.neighbors(v) {
                self.counts[w] += 1;
            }
            self.chosen.push(v);
            self.branch(v + 1);
            self.chosen.pop();
            self.counts[v] -= 1;
            for &w in g.neighbors(v) {
                self.counts[w] -= 1;
            }
        }
        self.branch(v + 1);
    }
}

/// Minimum k-tuple dominating set. Defined only when `δ ≥ k - 1`.
pub fn exact_ktuple_domination(inst: &PackingInstance<'_>, cap: usize) -> Result<PackingResult> {
    let g = inst.graph;
    let n = g.n();
    let k = inst.k;
    if n > 0 && g.min_degree()? + 1 < k {
        return Err(Error::Undefined(format!(
            "k-tuple domination needs min degree >= k - 1, got min degree {} with k = {k}",
            g.min_degree()?
        )));
    }
    check_cap(g, cap)?;
    let mut search = MinDomination {
        inst,
        covered: vec![0; n],
        open: g.degrees().map(|d| d + 1).collect(),
        chosen: Vec::with_capacity(n),
        best: (0..n).collect(),
    };
    search.branch(0);
    let set = VertexSet::from_vertices(n, search.best)?;
    Ok(PackingResult::new(set, None, false))
}

struct MinDomination<'a, 'g> {
    inst: &'a PackingInstance<'g>,
    /// `|N[w] ∩ chosen|`
    covered: Vec<usize>,
    /// members of `N[w]` not yet decided
    open: Vec<usize>,
    chosen: Vec<Vertex>,
    best: Vec<Vertex>,
}

impl MinDomination<'_, '_> {
    fn deficit(&self) -> usize {
        self.covered
            .iter()
            .map(|&c| self.inst.k.saturating_sub(c))
            .max()
            .unwrap_or(0)
    }

    fn branch(&mut self, v: Vertex) {
        let deficit = self.deficit();
        if self.chosen.len() + deficit >= self.best.len() {
            return;
        }
        if deficit == 0 {
            self.best.clone_from(&self.chosen);
            return;
        }
        let n = self.covered.len();
        if v == n {
            return;
        }
        let g = self.inst.graph;
        let k = self.inst.k;

        // exclude v
        self.open[v] -= 1;
        for &w in g.neighbors(v) {
            self.open[w] -= 1;
        }
        let feasible = std::iter::once(&v)
            .chain(g.neighbors(v))
            .all(|&w| self.covered[w] + self.open[w] >= k);
        if feasible {
            self.branch(v + 1);
        }

        // include v
        self.covered[v] += 1;
        for &w in g.neighbors(v) {
            self.covered[w] += 1;
        }
        self.chosen.push(v);
        self.branch(v + 1);
        self.chosen.pop();
        self.covered[v] -= 1;
        self.open[v] += 1;
        for &w in g.neighbors(v) {
            self.covered[w] -= 1;
            self.open[w] += 1;
        }
    }
}
