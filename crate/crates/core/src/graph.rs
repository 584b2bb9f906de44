//! Simple undirected graphs stored as packed adjacency bit rows.
//!
//! Row `v` holds one bit per vertex, so neighborhood intersections (triangle
//! counts, `e(G[N(v)])`) cost `O(n / 64)` per pair.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::stream_rng;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    deg: Vec<usize>,
    m: usize,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("m", &self.m).finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph { n, words, rows: vec![0; n * words], deg: vec![0; n], m: 0 }
    }

    /// Builds a graph from unordered pairs. Duplicate pairs collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_insert(u, v)?;
        }
        Ok(g)
    }

    fn try_insert(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.insert(u, v);
        Ok(())
    }

    /// Caller guarantees `u != v`, both in range.
    fn insert(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            return;
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        self.deg[u] += 1;
        self.deg[v] += 1;
        self.m += 1;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.deg[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Packed neighbor bits of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &bits)| BitIter { bits, base: w * 64 })
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// `|N(u) ∩ N(v)|`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let mut mask = vec![0u64; self.words];
        for &v in set {
            mask[v / 64] |= 1 << (v % 64);
        }
        let twice: usize = set
            .iter()
            .map(|&v| self.row(v).iter().zip(&mask).map(|(a, b)| (a & b).count_ones() as usize).sum::<usize>())
            .sum();
        twice / 2
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency_dense(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        for (u, v) in self.edges() {
            a[u * self.n + v] = 1.0;
            a[v * self.n + u] = 1.0;
        }
        a
    }

    /// Adjacency lists, one sorted vector per vertex.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|v| self.neighbors(v).map(|u| x[u]).sum()).collect()
    }

    /// `xᵀ A x`, summed over edges.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        2.0 * self.edges().map(|(u, v)| x[u] * x[v]).sum::<f64>()
    }
}

struct BitIter {
    bits: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let tz = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(self.base + tz)
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// A named graph family.
///
/// The first eight variants are the extremal examples the toolkit is built
/// around; the rest are fixtures used by tests and the corpus.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamily {
    Complete { n: usize },
    /// Balanced complete `r`-partite graph; vertex `v` lies in part `v mod r`.
    Turan { n: usize, r: usize },
    UnionCliques { sizes: Vec<usize> },
    CompleteBipartite { a: usize, b: usize },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    /// `u ~ v` iff `(u - v) mod n` lies in the connection set.
    Circulant { n: usize, connection: Vec<usize> },
    /// Prime `q ≡ 1 (mod 4)`; `u ~ v` iff `u - v` is a nonzero square mod `q`.
    Paley { q: usize },
    /// `K_n` with all edges inside the first `k` vertices removed.
    CompleteMinusClique { n: usize, k: usize },
    Empty { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    Star { leaves: usize },
    Petersen,
    /// Three cliques `A, B, C` of size `m`; `A` is complete to `B` and `C`,
    /// `B` and `C` see nothing of each other.
    CherryBlowup { m: usize },
    /// A clique on a random `k`-subset of `n` vertices plus `G(n, p)` noise.
    PlantedClique { n: usize, k: usize, p: f64, seed: u64 },
}

impl GraphFamily {
    /// Short human-readable label, e.g. `turan(6,2)`.
    pub fn label(&self) -> String {
        use GraphFamily::*;
        match self {
            Complete { n } => format!("complete({n})"),
            Turan { n, r } => format!("turan({n},{r})"),
            UnionCliques { sizes } => format!("union_cliques({sizes:?})"),
            CompleteBipartite { a, b } => format!("complete_bipartite({a},{b})"),
            ErdosRenyi { n, p, seed } => format!("erdos_renyi({n},{p},{seed})"),
            Circulant { n, connection } => format!("circulant({n},{connection:?})"),
            Paley { q } => format!("paley({q})"),
            CompleteMinusClique { n, k } => format!("complete_minus_clique({n},{k})"),
            Empty { n } => format!("empty({n})"),
            Cycle { n } => format!("cycle({n})"),
            Path { n } => format!("path({n})"),
            Star { leaves } => format!("star({leaves})"),
            Petersen => String::from("petersen"),
            CherryBlowup { m } => format!("cherry_blowup({m})"),
            PlantedClique { n, k, p, seed } => format!("planted_clique({n},{k},{p},{seed})"),
        }
    }
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param("p", p, "a probability in [0, 1]"))
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidFamily(msg)
}

/// Connection set of the Paley graph on `q` vertices: nonzero squares mod `q`.
pub fn quadratic_residues(q: usize) -> Vec<usize> {
    let set: BTreeSet<usize> = (1..q).map(|x| x * x % q).collect();
    set.into_iter().collect()
}

fn circulant(n: usize, connection: &[usize]) -> Result<Graph> {
    for &s in connection {
        if s == 0 || s >= n {
            return Err(bad(format!("connection element {s} must lie in 1..{n}")));
        }
        if !connection.contains(&(n - s)) {
            return Err(bad(format!("connection set is not symmetric: {s} present, {} missing", n - s)));
        }
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for &s in connection {
            let v = (u + s) % n;
            g.insert(u, v);
        }
    }
    Ok(g)
}

/// Builds the named graph. Random families are deterministic in `seed`.
pub fn generate(family: &GraphFamily) -> Result<Graph> {
    use GraphFamily::*;
    let g = match family {
        Complete { n } => {
            let mut g = Graph::empty(*n);
            for u in 0..*n {
                for v in u + 1..*n {
                    g.insert(u, v);
                }
            }
            g
        }
        Turan { n, r } => {
            if *r == 0 {
                return Err(bad(String::from("turan needs r >= 1")));
            }
            let mut g = Graph::empty(*n);
            for u in 0..*n {
                for v in u + 1..*n {
                    if u % r != v % r {
                        g.insert(u, v);
                    }
                }
            }
            g
        }
        UnionCliques { sizes } => {
            if sizes.contains(&0) {
                return Err(bad(String::from("clique sizes must be positive")));
            }
            let n = sizes.iter().sum();
            let mut g = Graph::empty(n);
            let mut start = 0;
            for &s in sizes {
                for u in start..start + s {
                    for v in u + 1..start + s {
                        g.insert(u, v);
                    }
                }
                start += s;
            }
            g
        }
        CompleteBipartite { a, b } => {
            let mut g = Graph::empty(a + b);
            for u in 0..*a {
                for v in *a..a + b {
                    g.insert(u, v);
                }
            }
            g
        }
        ErdosRenyi { n, p, seed } => {
            check_probability(*p)?;
            let mut rng = stream_rng(*seed, 0);
            let mut g = Graph::empty(*n);
            for u in 0..*n {
                for v in u + 1..*n {
                    if rng.random_bool(*p) {
                        g.insert(u, v);
                    }
                }
            }
            g
        }
        Circulant { n, connection } => circulant(*n, connection)?,
        Paley { q } => {
            if !is_prime(*q) || q % 4 != 1 {
                return Err(bad(format!("paley needs a prime q = 1 mod 4, got {q}")));
            }
            circulant(*q, &quadratic_residues(*q))?
        }
        CompleteMinusClique { n, k } => {
            if k > n {
                return Err(bad(format!("removed clique size {k} exceeds n = {n}")));
            }
            let mut g = Graph::empty(*n);
            for u in 0..*n {
                for v in u + 1..*n {
                    if v >= *k {
                        g.insert(u, v);
                    }
                }
            }
            g
        }
        Empty { n } => Graph::empty(*n),
        Cycle { n } => {
            if *n < 3 {
                return Err(bad(format!("cycle needs n >= 3, got {n}")));
            }
            circulant(*n, &[1, n - 1])?
        }
        Path { n } => {
            let mut g = Graph::empty(*n);
            for u in 1..*n {
                g.insert(u - 1, u);
            }
            g
        }
        Star { leaves } => {
            let mut g = Graph::empty(leaves + 1);
            for v in 1..=*leaves {
                g.insert(0, v);
            }
            g
        }
        Petersen => {
            let mut g = Graph::empty(10);
            for i in 0..5 {
                g.insert(i, (i + 1) % 5);
                g.insert(i, i + 5);
                g.insert(5 + i, 5 + (i + 2) % 5);
            }
            g
        }
        CherryBlowup { m } => {
            if *m == 0 {
                return Err(bad(String::from("cherry blow-up needs m >= 1")));
            }
            let mut g = Graph::empty(3 * m);
            for part in 0..3 {
                for u in part * m..(part + 1) * m {
                    for v in u + 1..(part + 1) * m {
                        g.insert(u, v);
                    }
                }
            }
            for u in 0..*m {
                for v in *m..3 * m {
                    g.insert(u, v);
                }
            }
            g
        }
        PlantedClique { n, k, p, seed } => {
            check_probability(*p)?;
            if k > n {
                return Err(bad(format!("planted clique size {k} exceeds n = {n}")));
            }
            let mut g = generate(&ErdosRenyi { n: *n, p: *p, seed: *seed })?;
            let mut order: Vec<usize> = (0..*n).collect();
            order.shuffle(&mut stream_rng(*seed, 1));
            let clique = &order[..*k];
            for (i, &u) in clique.iter().enumerate() {
                for &v in &clique[i + 1..] {
                    g.insert(u, v);
                }
            }
            g
        }
    };
    Ok(g)
}

// ---------------------------------------------------------------------------
// Subgraphs and counters
// ---------------------------------------------------------------------------

/// Induced subgraph on `set`, relabeled `0..|set|` by ascending original index.
/// Duplicates in `set` are ignored.
pub fn induced_subgraph(g: &Graph, set: &[usize]) -> Result<Graph> {
    let mut vs: Vec<usize> = set.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let mut h = Graph::empty(vs.len());
    for (i, &u) in vs.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                h.insert(i, j);
            }
        }
    }
    Ok(h)
}

/// Number of triangles, counted combinatorially from bit-row intersections.
pub fn triangle_count(g: &Graph) -> u64 {
    let mut thrice = 0u64;
    for (u, v) in g.edges() {
        thrice += g.common_neighbors(u, v) as u64;
    }
    thrice / 3
}

/// Number of induced `K_{1,2}`: `Σ_v C(deg v, 2) − 3·t(G)`.
pub fn cherry_count(g: &Graph) -> u64 {
    let paths: u64 = g.degrees().iter().map(|&d| (d as u64) * (d as u64).saturating_sub(1) / 2).sum();
    paths - 3 * triangle_count(g)
}

/// Degeneracy: the largest degree seen when repeatedly deleting a
/// minimum-degree vertex.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = g.degrees().to_vec();
    let mut alive = vec![true; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| deg[v]).expect("a live vertex remains");
        best = best.max(deg[v]);
        alive[v] = false;
        for u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

/// Edge density `p(G) = 2m / n²`.
pub fn density(g: &Graph) -> Result<f64> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(2.0 * g.m() as f64 / (g.n() as f64 * g.n() as f64))
}

// ---------------------------------------------------------------------------
// Cluster editing
// ---------------------------------------------------------------------------

/// Largest `n` accepted by exact cluster editing (Bell(12) ≈ 4.2M partitions).
pub const EXACT_CLUSTER_EDIT_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterEditMode {
    Exact,
    /// Best of `seeds` random-pivot runs, stream `(seed, run)` per run.
    Pivot { seeds: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EditMode {
    Exact,
    PivotHeuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterEditResult {
    pub edit_count: usize,
    /// Cluster id per vertex, numbered by first appearance.
    pub partition: Vec<usize>,
    pub mode: EditMode,
}

/// Number of vertex pairs whose adjacency disagrees with the union of cliques
/// induced by `partition`.
pub fn edit_count_of(g: &Graph, partition: &[usize]) -> usize {
    let n = g.n();
    let mut count = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) != (partition[u] == partition[v]) {
                count += 1;
            }
        }
    }
    count
}

fn canonical_labels(partition: &[usize]) -> Vec<usize> {
    let mut map: Vec<(usize, usize)> = Vec::new();
    partition
        .iter()
        .map(|&c| match map.iter().find(|(old, _)| *old == c) {
            Some(&(_, new)) => new,
            None => {
                let new = map.len();
                map.push((c, new));
                new
            }
        })
        .collect()
}

struct ExactEdit<'a> {
    g: &'a Graph,
    labels: Vec<usize>,
    best: usize,
    best_labels: Vec<usize>,
}

impl ExactEdit<'_> {
    // Restricted-growth enumeration: vertex v joins one of the `blocks`
    // existing clusters or opens a new one. `cost` counts disagreements among
    // vertices 0..v.
    fn search(&mut self, v: usize, blocks: usize, cost: usize) {
        if cost >= self.best {
            return;
        }
        if v == self.g.n() {
            self.best = cost;
            self.best_labels.clone_from(&self.labels);
            return;
        }
        for c in 0..=blocks {
            let mut add = 0;
            for u in 0..v {
                if self.g.has_edge(u, v) != (self.labels[u] == c) {
                    add += 1;
                }
            }
            self.labels[v] = c;
            self.search(v + 1, blocks.max(c + 1), cost + add);
        }
    }
}

fn pivot_run(g: &Graph, seed: u64, run: u64) -> Vec<usize> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut stream_rng(seed, run));
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for &pivot in &order {
        if label[pivot] != usize::MAX {
            continue;
        }
        label[pivot] = next;
        for u in g.neighbors(pivot) {
            if label[u] == usize::MAX {
                label[u] = next;
            }
        }
        next += 1;
    }
    label
}

/// Distance to the nearest disjoint union of cliques, exactly (`n <= 12`) or
/// as the best of several random-pivot runs.
pub fn cluster_edit(g: &Graph, mode: ClusterEditMode) -> Result<ClusterEditResult> {
    match mode {
        ClusterEditMode::Exact => {
            if g.n() > EXACT_CLUSTER_EDIT_CAP {
                return Err(Error::TooLarge { what: "exact cluster editing", n: g.n(), cap: EXACT_CLUSTER_EDIT_CAP });
            }
            // Seed the bound with the best pivot run so pruning starts early.
            let warm = pivot_run(g, 0, 0);
            let mut search = ExactEdit {
                g,
                labels: vec![0; g.n()],
                best: edit_count_of(g, &warm) + 1,
                best_labels: warm,
            };
            search.search(0, 0, 0);
            Ok(ClusterEditResult {
                edit_count: edit_count_of(g, &search.best_labels),
                partition: canonical_labels(&search.best_labels),
                mode: EditMode::Exact,
            })
        }
        ClusterEditMode::Pivot { seeds, seed } => {
            if seeds == 0 {
                return Err(Error::param("seeds", 0.0, "at least one pivot run"));
            }
            let mut best: Option<(usize, Vec<usize>)> = None;
            for run in 0..seeds as u64 {
                let labels = pivot_run(g, seed, run);
                let cost = edit_count_of(g, &labels);
                if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    best = Some((cost, labels));
                }
            }
            let (edit_count, labels) = best.expect("seeds >= 1");
            Ok(ClusterEditResult { edit_count, partition: canonical_labels(&labels), mode: EditMode::PivotHeuristic })
        }
    }
}
