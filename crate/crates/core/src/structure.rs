//! Spectral partitioning into near-cliques.
//!
//! Vertices are grouped by their rounded embedding vectors, part pairs are
//! classified as dense, sparse or impure, and the outcome is either an
//! explicit test vector certifying a very negative least eigenvalue or
//! evidence (bad-pair census, cherry counts, an explicit cluster edit) that
//! the graph is close to a disjoint union of cliques.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{cherry_count, cluster_edit, ClusterEditMode, ClusterEditResult, Graph, EXACT_CLUSTER_EDIT_CAP};
use crate::spectral::{embedding_vectors, EmbeddingVectors, Spectrum};

/// Default grid side for [`partition_by_embedding`].
pub const DEFAULT_ETA: f64 = 0.05;

/// Largest `μ` for which dense-dense-sparse triples certify `λ_n ≤ −min/10`.
pub const WITNESS_MU_LIMIT: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartPartition {
    /// Parts ordered by their smallest vertex; each part is sorted.
    pub parts: Vec<Vec<usize>>,
    /// `part_of[v]` is the index of the part containing `v`.
    pub part_of: Vec<usize>,
    pub eta: f64,
    /// Centroid of the embedding vectors in each part.
    pub representatives: Vec<Vec<f64>>,
}

impl PartPartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest `‖H_u − H_v‖_∞` over pairs in a common part.
    pub fn max_within_diameter(&self, emb: &EmbeddingVectors) -> f64 {
        let mut worst: f64 = 0.0;
        for part in &self.parts {
            for d in 0..emb.dim() {
                let (lo, hi) = part
                    .iter()
                    .map(|&v| emb.rows[v][d])
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
                worst = worst.max(hi - lo);
            }
        }
        worst
    }
}

/// Groups vertices by rounding every embedding coordinate to the nearest
/// multiple of `eta`. Two vertices share a part iff all rounded coordinates
/// agree, so within a part coordinates differ by at most `eta`.
pub fn partition_by_embedding(emb: &EmbeddingVectors, eta: f64) -> Result<PartPartition> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::param("eta", eta, "eta > 0"));
    }
    let n = emb.rows.len();
    let mut cells: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut part_of = vec![0; n];
    for v in 0..n {
        let key: Vec<i64> = emb.rows[v].iter().map(|x| (x / eta).round() as i64).collect();
        let id = *cells.entry(key).or_insert_with(|| {
            parts.push(Vec::new());
            parts.len() - 1
        });
        parts[id].push(v);
        part_of[v] = id;
    }
    let dim = emb.dim();
    let representatives = parts
        .iter()
        .map(|p| {
            let mut c = vec![0.0; dim];
            for &v in p {
                for (ci, x) in c.iter_mut().zip(&emb.rows[v]) {
                    *ci += x;
                }
            }
            c.iter_mut().for_each(|x| *x /= p.len() as f64);
            c
        })
        .collect();
    Ok(PartPartition { parts, part_of, eta, representatives })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    Dense,
    Sparse,
    Impure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairClassification {
    pub mu: f64,
    /// `classes[i][j]`, symmetric.
    pub classes: Vec<Vec<PairClass>>,
    /// `e(V_i, V_j)`: ordered pairs `(u, v) ∈ V_i × V_j` with `uv ∈ E`.
    /// Diagonal entries therefore count each internal edge twice.
    pub edges: Vec<Vec<usize>>,
    /// `a_ij`: inner product of the part representatives.
    pub inner: Vec<Vec<f64>>,
}

impl PairClassification {
    pub fn class(&self, i: usize, j: usize) -> PairClass {
        self.classes[i][j]
    }
}

/// Classifies every part pair, diagonal included: dense if
/// `e ≥ (1−μ)|V_i||V_j|`, else sparse if `e ≤ μ|V_i||V_j|`, else impure.
///
/// `μ` may be anywhere in `(0, 1)`; for `μ ≥ ½` both thresholds can hold and
/// dense takes priority.
pub fn classify_pairs(g: &Graph, parts: &PartPartition, mu: f64) -> Result<PairClassification> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::param("mu", mu, "mu in (0, 1)"));
    }
    if parts.part_of.len() != g.n() {
        return Err(Error::param("parts", parts.part_of.len() as f64, "a partition of the graph's vertices"));
    }
    let t = parts.len();
    let mut edges = vec![vec![0usize; t]; t];
    for (u, v) in g.edges() {
        let (a, b) = (parts.part_of[u], parts.part_of[v]);
        edges[a][b] += 1;
        edges[b][a] += 1;
    }
    let mut classes = vec![vec![PairClass::Impure; t]; t];
    let mut inner = vec![vec![0.0; t]; t];
    for i in 0..t {
        for j in 0..t {
            let size = (parts.parts[i].len() * parts.parts[j].len()) as f64;
            let e = edges[i][j] as f64;
            classes[i][j] = if e >= (1.0 - mu) * size {
                PairClass::Dense
            } else if e <= mu * size {
                PairClass::Sparse
            } else {
                PairClass::Impure
            };
            inner[i][j] = parts.representatives[i].iter().zip(&parts.representatives[j]).map(|(a, b)| a * b).sum();
        }
    }
    Ok(PairClassification { mu, classes, edges, inner })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenWitness {
    /// Parts `(i, j, k)`: `(i,j)` and `(i,k)` dense, `(j,k)` sparse.
    pub triple: (usize, usize, usize),
    pub x: Vec<f64>,
    /// `xᵀAx / xᵀx`.
    pub rayleigh: f64,
    /// `−min(|V_i|, |V_j|, |V_k|) / 10`.
    pub bound: f64,
    pub min_part: usize,
}

/// Searches for a dense-dense-sparse part triple and returns its test vector.
///
/// Among all valid triples the one with the largest smallest part wins, ties
/// broken by the lexicographically smallest `(i, j, k)` with `j ≤ k`. The
/// vector puts `1/|V_i|` on `V_i` and `−1/|V_j|`, `−1/|V_k|` on the other two
/// parts (a single negative block when `j = k`). The Rayleigh quotient is
/// computed exactly from the graph and checked against `−min/10`.
pub fn find_eigen_witness(g: &Graph, parts: &PartPartition, classes: &PairClassification) -> Result<Option<EigenWitness>> {
    if !(classes.mu < WITNESS_MU_LIMIT) {
        return Err(Error::param("mu", classes.mu, "mu < 0.1 for eigenvalue witnesses"));
    }
    let t = parts.len();
    let size = |i: usize| parts.parts[i].len();
    let mut best: Option<((usize, usize, usize), usize)> = None;
    for i in 0..t {
        for j in 0..t {
            if classes.class(i, j) != PairClass::Dense {
                continue;
            }
            for k in j..t {
                if classes.class(i, k) == PairClass::Dense && classes.class(j, k) == PairClass::Sparse {
                    let mp = size(i).min(size(j)).min(size(k));
                    if best.is_none_or(|(_, b)| mp > b) {
                        best = Some(((i, j, k), mp));
                    }
                }
            }
        }
    }
    let Some(((i, j, k), min_part)) = best else { return Ok(None) };
    let mut x = vec![0.0; g.n()];
    for &v in &parts.parts[i] {
        x[v] = 1.0 / size(i) as f64;
    }
    for &v in &parts.parts[j] {
        x[v] = -1.0 / size(j) as f64;
    }
    for &v in &parts.parts[k] {
        x[v] = -1.0 / size(k) as f64;
    }
    let rayleigh = g.quadratic_form(&x) / x.iter().map(|a| a * a).sum::<f64>();
    let bound = -(min_part as f64) / 10.0;
    if rayleigh > bound + 1e-9 {
        return Err(Error::SpectrumDefect { what: "witness Rayleigh quotient above -min/10", value: rayleigh, tol: bound });
    }
    Ok(Some(EigenWitness { triple: (i, j, k), x, rayleigh, bound, min_part }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BadPairCensus {
    pub delta: f64,
    /// `δ^{1/3}`, the purity level the census classifies with.
    pub mu: f64,
    pub t_cap: usize,
    /// Parts of at most `δ n / t_cap` vertices count as small.
    pub small_threshold: f64,
    pub small_part: usize,
    pub impure: usize,
    pub contradiction: usize,
    pub total: usize,
    /// `4 δ^{1/3} n²`.
    pub bound: f64,
    pub within_bound: bool,
}

/// Counts bad ordered vertex pairs `(u, v) ∈ V × V` (including `u = v`),
/// each in the first category that applies: small part, then impure part
/// pair, then adjacency contradicting the pair's class.
pub fn bad_pair_census(
    g: &Graph,
    parts: &PartPartition,
    classes: &PairClassification,
    delta: f64,
    t_cap: usize,
) -> Result<BadPairCensus> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta", delta, "delta in (0, 1)"));
    }
    if t_cap == 0 {
        return Err(Error::param("t_cap", 0.0, "t_cap >= 1"));
    }
    let n = g.n();
    let small_threshold = delta * n as f64 / t_cap as f64;
    let small: Vec<bool> = parts.parts.iter().map(|p| p.len() as f64 <= small_threshold).collect();
    let (mut small_part, mut impure, mut contradiction) = (0, 0, 0);
    for u in 0..n {
        let a = parts.part_of[u];
        for v in 0..n {
            let b = parts.part_of[v];
            if small[a] || small[b] {
                small_part += 1;
                continue;
            }
            match classes.class(a, b) {
                PairClass::Impure => impure += 1,
                PairClass::Dense if u == v || !g.has_edge(u, v) => contradiction += 1,
                PairClass::Sparse if u != v && g.has_edge(u, v) => contradiction += 1,
                _ => {}
            }
        }
    }
    let total = small_part + impure + contradiction;
    let mu = delta.cbrt();
    let bound = 4.0 * mu * (n * n) as f64;
    Ok(BadPairCensus {
        delta,
        mu,
        t_cap,
        small_threshold,
        small_part,
        impure,
        contradiction,
        total,
        bound,
        within_bound: total as f64 <= bound,
    })
}

fn is_bad(g: &Graph, parts: &PartPartition, classes: &PairClassification, small: &[bool], u: usize, v: usize) -> bool {
    let (a, b) = (parts.part_of[u], parts.part_of[v]);
    if small[a] || small[b] {
        return true;
    }
    match classes.class(a, b) {
        PairClass::Impure => true,
        PairClass::Dense => u == v || !g.has_edge(u, v),
        PairClass::Sparse => u != v && g.has_edge(u, v),
    }
}

/// Cherries `(u; v, w)`, with center `u` adjacent to `v` and `w` and `vw` a
/// non-edge, whose three pairs are all good for the given census settings.
pub fn good_cherry_count(g: &Graph, parts: &PartPartition, classes: &PairClassification, delta: f64, t_cap: usize) -> u64 {
    let small_threshold = delta * g.n() as f64 / t_cap.max(1) as f64;
    let small: Vec<bool> = parts.parts.iter().map(|p| p.len() as f64 <= small_threshold).collect();
    let adj = g.adjacency_lists();
    let mut count = 0;
    for u in 0..g.n() {
        let nb = &adj[u];
        for (a, &v) in nb.iter().enumerate() {
            if is_bad(g, parts, classes, &small, u, v) {
                continue;
            }
            for &w in &nb[a + 1..] {
                if !g.has_edge(v, w)
                    && !is_bad(g, parts, classes, &small, u, w)
                    && !is_bad(g, parts, classes, &small, v, w)
                {
                    count += 1;
                }
            }
        }
    }
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StructureParams {
    pub eps: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
    pub mu: f64,
}

impl Default for StructureParams {
    fn default() -> Self {
        StructureParams { eps: 0.1, gamma: 0.2, delta: 0.1, eta: DEFAULT_ETA, mu: 0.05 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    EigenWitness,
    ClosenessEvidence,
    HypothesisViolated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    /// `Σ_{i ∉ L_{γn}} λ_i²`.
    pub tail: f64,
    /// `δ n²`.
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CherryStats {
    pub total: u64,
    pub good: u64,
    /// `12 δ^{1/3} n³`.
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureVerdict {
    pub outcome: Outcome,
    pub params: StructureParams,
    pub hypothesis: Hypothesis,
    pub parts: usize,
    /// `γ^{9.5}`, the grid side the worst-case analysis would use.
    pub paper_eta: f64,
    /// `log10` of the worst-case part count `⌈2γ^{−10} + 1⌉^{γ^{−2}}`.
    pub paper_t_log10: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<EigenWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<BadPairCensus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cherries: Option<CherryStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edit_certificate: Option<ClusterEditResult>,
}

/// Spectral partition of `g` at `(γ, η)`.
pub fn spectral_partition(s: &Spectrum, gamma: f64, eta: f64) -> Result<(EmbeddingVectors, PartPartition)> {
    let emb = embedding_vectors(s, gamma)?;
    let parts = partition_by_embedding(&emb, eta)?;
    Ok((emb, parts))
}

/// Runs the full pipeline.
///
/// The gate is `Σ_{i∉L_{γn}} λ_i² ≤ δn²`. When it holds, a dense-dense-sparse
/// triple at `μ` yields an eigen-witness; otherwise the verdict carries the
/// bad-pair census at `δ^{1/3}`, cherry statistics and an explicit cluster
/// edit (exact up to 12 vertices, best of 32 pivot runs beyond).
pub fn structure_verdict(g: &Graph, s: &Spectrum, params: &StructureParams) -> Result<StructureVerdict> {
    let n = g.n();
    let nf = n as f64;
    let StructureParams { gamma, delta, eta, mu, .. } = *params;
    if !(mu > 0.0 && mu < WITNESS_MU_LIMIT) {
        return Err(Error::param("mu", mu, "mu in (0, 0.1)"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta", delta, "delta in (0, 1)"));
    }
    let tail = s.tail_square_mass(gamma * nf);
    let bound = delta * nf * nf;
    let hypothesis = Hypothesis { tail, bound, holds: tail <= bound };
    let paper_eta = gamma.powf(9.5);
    let paper_t_log10 = gamma.powi(-2) * (2.0 * gamma.powi(-10) + 1.0).ceil().log10();

    let mut verdict = StructureVerdict {
        outcome: Outcome::HypothesisViolated,
        params: *params,
        hypothesis,
        parts: 0,
        paper_eta,
        paper_t_log10,
        witness: None,
        census: None,
        cherries: None,
        edit_certificate: None,
    };
    if !verdict.hypothesis.holds {
        return Ok(verdict);
    }

    let (_, parts) = spectral_partition(s, gamma, eta)?;
    verdict.parts = parts.len();
    let classes = classify_pairs(g, &parts, mu)?;
    if let Some(w) = find_eigen_witness(g, &parts, &classes)? {
        verdict.outcome = Outcome::EigenWitness;
        verdict.witness = Some(w);
        return Ok(verdict);
    }

    let census_classes = classify_pairs(g, &parts, delta.cbrt())?;
    let t_cap = parts.len();
    verdict.census = Some(bad_pair_census(g, &parts, &census_classes, delta, t_cap)?);
    let cbound = 12.0 * delta.cbrt() * nf.powi(3);
    let total = cherry_count(g);
    verdict.cherries = Some(CherryStats {
        total,
        good: good_cherry_count(g, &parts, &census_classes, delta, t_cap),
        bound: cbound,
        within_bound: total as f64 <= cbound,
    });
    let mode = if n <= EXACT_CLUSTER_EDIT_CAP {
        ClusterEditMode::Exact
    } else {
        ClusterEditMode::Pivot { seeds: 32, seed: 0 }
    };
    verdict.edit_certificate = Some(cluster_edit(g, mode)?);
    verdict.outcome = Outcome::ClosenessEvidence;
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DichotomyCheck {
    pub delta: f64,
    pub mu: f64,
    pub good_cherries: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<EigenWitness>,
    /// Witness Rayleigh quotient at least `λ_n − 1e-8`.
    pub rayleigh_consistent: bool,
    pub holds: bool,
}

/// Checks that a good cherry (at purity `δ^{1/3}`) is never present without an
/// eigen-witness at the same purity, irrespective of the spectral gate.
/// Requires `δ^{1/3} < 0.1`.
pub fn dichotomy_check(g: &Graph, s: &Spectrum, gamma: f64, eta: f64, delta: f64) -> Result<DichotomyCheck> {
    let mu = delta.cbrt();
    let (_, parts) = spectral_partition(s, gamma, eta)?;
    let classes = classify_pairs(g, &parts, mu)?;
    let witness = find_eigen_witness(g, &parts, &classes)?;
    let good_cherries = good_cherry_count(g, &parts, &classes, delta, parts.len());
    let rayleigh_consistent = witness.as_ref().is_none_or(|w| w.rayleigh >= s.lambda_min() - 1e-8);
    let holds = rayleigh_consistent && (witness.is_some() || good_cherries == 0);
    Ok(DichotomyCheck { delta, mu, good_cherries, witness, rayleigh_consistent, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily};
    use crate::spectral::decompose;
    use approx::assert_abs_diff_eq;

    fn gs(f: GraphFamily) -> (Graph, Spectrum) {
        let g = generate(&f).unwrap();
        let s = decompose(&g, None).unwrap();
        (g, s)
    }

    #[test]
    fn partitions_of_simple_graphs() {
        let (_, s) = gs(GraphFamily::Complete { n: 12 });
        let (emb, p) = spectral_partition(&s, 0.3, 0.05).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.max_within_diameter(&emb) <= 0.05);
        let (_, s) = gs(GraphFamily::UnionCliques { sizes: vec![8, 8] });
        let (_, p) = spectral_partition(&s, 0.2, 0.05).unwrap();
        assert_eq!(p.parts, vec![(0..8).collect::<Vec<_>>(), (8..16).collect()]);
        let (_, s) = gs(GraphFamily::Empty { n: 6 });
        let (emb, p) = spectral_partition(&s, 0.5, 0.05).unwrap();
        assert_eq!(emb.dim(), 0);
        assert_eq!(p.len(), 1);
    }

    fn manual(n: usize, parts: Vec<Vec<usize>>) -> PartPartition {
        let mut part_of = vec![0; n];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                part_of[v] = i;
            }
        }
        let representatives = vec![Vec::new(); parts.len()];
        PartPartition { parts, part_of, eta: 0.05, representatives }
    }

    #[test]
    fn classification_examples() {
        let g = generate(&GraphFamily::UnionCliques { sizes: vec![8, 8] }).unwrap();
        let p = manual(16, vec![(0..8).collect(), (8..16).collect()]);
        let c = classify_pairs(&g, &p, 0.125).unwrap();
        assert_eq!(c.edges[0][0], 56);
        assert_eq!(c.class(0, 0), PairClass::Dense);
        assert_eq!(c.class(1, 1), PairClass::Dense);
        assert_eq!(c.class(0, 1), PairClass::Sparse);

        let g = generate(&GraphFamily::CompleteBipartite { a: 8, b: 8 }).unwrap();
        let c = classify_pairs(&g, &p, 0.05).unwrap();
        assert_eq!(c.class(0, 1), PairClass::Dense);
        assert_eq!(c.class(0, 0), PairClass::Sparse);

        let g = generate(&GraphFamily::Path { n: 3 }).unwrap();
        let singles = manual(3, vec![vec![0], vec![1], vec![2]]);
        let c = classify_pairs(&g, &singles, 0.05).unwrap();
        assert!((0..3).all(|i| c.class(i, i) == PairClass::Sparse));
    }

    #[test]
    fn cherry_blowup_witness() {
        for m in [5, 10, 20] {
            let (g, s) = gs(GraphFamily::CherryBlowup { m });
            let v = structure_verdict(&g, &s, &StructureParams::default()).unwrap();
            assert_eq!(v.outcome, Outcome::EigenWitness, "m = {m}");
            let w = v.witness.unwrap();
            let expect = -((m + 3) as f64) / 3.0;
            assert_abs_diff_eq!(w.rayleigh, expect, epsilon = 1e-9);
            assert!(w.rayleigh >= s.lambda_min() - 1e-8);
        }
    }

    #[test]
    fn cherry_blowup_spectrum() {
        let m = 6;
        let (_, s) = gs(GraphFamily::CherryBlowup { m });
        let mf = m as f64;
        let r2 = 2f64.sqrt();
        assert_abs_diff_eq!(s.lambda(0), mf * (1.0 + r2) - 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.lambda(1), mf - 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.lambda_min(), mf * (1.0 - r2) - 1.0, epsilon = 1e-9);
        assert!(s.lambdas()[2..3 * m - 1].iter().all(|l| (l + 1.0).abs() < 1e-9));
    }

    #[test]
    fn unions_of_cliques_give_closeness() {
        let (g, s) = gs(GraphFamily::UnionCliques { sizes: vec![30, 30] });
        let v = structure_verdict(&g, &s, &StructureParams::default()).unwrap();
        assert_eq!(v.outcome, Outcome::ClosenessEvidence);
        assert_eq!(v.edit_certificate.unwrap().edit_count, 0);
        assert_eq!(v.cherries.unwrap().total, 0);
        let (g, s) = gs(GraphFamily::UnionCliques { sizes: vec![3, 4, 5] });
        let v = structure_verdict(&g, &s, &StructureParams::default()).unwrap();
        assert_eq!(v.edit_certificate.unwrap().edit_count, 0);
    }

    #[test]
    fn witness_needs_small_mu() {
        let (g, s) = gs(GraphFamily::CherryBlowup { m: 5 });
        let (_, p) = spectral_partition(&s, 0.2, 0.05).unwrap();
        let c = classify_pairs(&g, &p, 0.2).unwrap();
        assert!(find_eigen_witness(&g, &p, &c).is_err());
        let (g, _) = gs(GraphFamily::Empty { n: 4 });
        let p = manual(4, vec![vec![0, 1, 2, 3]]);
        let c = classify_pairs(&g, &p, 0.05).unwrap();
        assert_eq!(find_eigen_witness(&g, &p, &c).unwrap(), None);
    }

    #[test]
    fn census_examples() {
        let sizes = vec![8; 8];
        let (g, s) = gs(GraphFamily::UnionCliques { sizes });
        assert_abs_diff_eq!(s.tail_square_mass(0.2 * 64.0), 448.0, epsilon = 1e-8);
        let p = manual(64, (0..8).map(|c| (8 * c..8 * c + 8).collect()).collect());
        let delta: f64 = 0.2;
        let c = classify_pairs(&g, &p, delta.cbrt()).unwrap();
        let census = bad_pair_census(&g, &p, &c, delta, p.len()).unwrap();
        assert!(census.within_bound);
        // Diagonal pairs (u, u) in dense parts are the only contradictions.
        assert_eq!((census.small_part, census.impure, census.contradiction), (0, 0, 64));

        let (g, s) = gs(GraphFamily::CompleteBipartite { a: 10, b: 10 });
        let v = structure_verdict(&g, &s, &StructureParams { delta: 0.1, ..StructureParams::default() }).unwrap();
        assert_eq!(v.outcome, Outcome::HypothesisViolated);
        assert_abs_diff_eq!(v.hypothesis.tail, 100.0, epsilon = 1e-8);

        let g = Graph::empty(5);
        let p = manual(5, vec![(0..5).collect()]);
        let c = classify_pairs(&g, &p, 0.5).unwrap();
        assert_eq!(bad_pair_census(&g, &p, &c, 0.1, 1).unwrap().total, 0);
    }
}
