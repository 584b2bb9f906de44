//! Adjacency spectra and the quantities derived from them.
//!
//! Indices are 0-based throughout: `lambdas[0]` is the largest eigenvalue.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;
#[allow(unused_imports)]
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{dot, norm_inf, symmetric_eigen};

/// Full eigendecomposition of an adjacency matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    n: usize,
    m: usize,
    lambdas: Vec<f64>,
    vectors: Vec<f64>,
    residual: f64,
    orthogonality: f64,
    tolerance: f64,
}

/// Default residual tolerance `1e-8 · n · max(1, |λ_1|)`.
pub fn default_tolerance(n: usize, lambda_1: f64) -> f64 {
    1e-8 * n as f64 * lambda_1.abs().max(1.0)
}

/// Eigendecomposition of `A_G`, verified before it is returned.
///
/// Passing `None` uses [`default_tolerance`]. The residual `max ‖Av − λv‖`,
/// orthonormality defect, `|Σλ|` and `|Σλ² − 2m|` must all stay within the
/// tolerance or [`Error::SpectrumDefect`] is returned.
pub fn decompose(g: &Graph, tol: Option<f64>) -> Result<Spectrum> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let eig = symmetric_eigen(&g.adjacency_dense(), n)?;
    let tol = tol.unwrap_or_else(|| default_tolerance(n, eig.values[0]));

    let mut residual: f64 = 0.0;
    for i in 0..n {
        let v = eig.vector(i);
        let av = g.mul_vec(v);
        let r: f64 = av.iter().zip(v).map(|(a, x)| (a - eig.values[i] * x).powi(2)).sum::<f64>().sqrt();
        residual = residual.max(r);
    }
    let mut orthogonality: f64 = 0.0;
    for i in 0..n {
        for j in 0..=i {
            let target = if i == j { 1.0 } else { 0.0 };
            orthogonality = orthogonality.max((dot(eig.vector(i), eig.vector(j)) - target).abs());
        }
    }
    let trace: f64 = eig.values.iter().sum();
    let trace2: f64 = eig.values.iter().map(|l| l * l).sum();

    for (what, value) in [
        ("residual", residual),
        ("orthonormality", orthogonality),
        ("eigenvalue sum", trace.abs()),
        ("squared eigenvalue sum minus 2m", (trace2 - 2.0 * g.m() as f64).abs()),
    ] {
        if !(value <= tol) {
            return Err(Error::SpectrumDefect { what, value, tol });
        }
    }

    Ok(Spectrum { n, m: g.m(), lambdas: eig.values, vectors: eig.vectors, residual, orthogonality, tolerance: tol })
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count of the source graph.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Eigenvalues, descending.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn lambda(&self, i: usize) -> f64 {
        self.lambdas[i]
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambdas[0]
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambdas[self.n - 1]
    }

    /// Unit eigenvector for `lambdas[i]`.
    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.n..(i + 1) * self.n]
    }

    /// Eigenvectors as consecutive rows of an `n × n` row-major array.
    pub fn vectors_flat(&self) -> &[f64] {
        &self.vectors
    }

    /// Largest `‖A v_i − λ_i v_i‖₂` observed.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Largest `|⟨v_i, v_j⟩ − δ_ij|` observed.
    pub fn orthogonality_defect(&self) -> f64 {
        self.orthogonality
    }

    /// Tolerance the decomposition was checked against.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn profile(&self) -> ThresholdProfile<'_> {
        threshold_profile(self)
    }

    /// `Σ_{i ∉ L_h} λ_i²`.
    pub fn tail_square_mass(&self, h: f64) -> f64 {
        let k = level_count(&self.lambdas, h);
        self.lambdas[k..].iter().map(|l| l * l).sum()
    }

    /// `Σ_i λ_i³`.
    pub fn cubic_trace(&self) -> f64 {
        self.lambdas.iter().map(|l| l * l * l).sum()
    }
}

fn level_count(lambdas: &[f64], t: f64) -> usize {
    lambdas.partition_point(|&l| l >= t)
}

/// `E(G) = Σ|λ_i|`.
pub fn energy(s: &Spectrum) -> f64 {
    s.lambdas.iter().map(|l| l.abs()).sum()
}

/// `(Σ λ_i³) / 6`, the triangle count read off the spectrum.
pub fn triangle_count_spectral(s: &Spectrum) -> f64 {
    s.cubic_trace() / 6.0
}

/// Level sets `L_T = {i : λ_i ≥ T}` and threshold sums `S_T = Σ_{L_T} λ_i`.
///
/// Because eigenvalues are sorted, `L_T` is always a prefix `0..k` and each
/// query is a binary search plus a prefix-sum lookup.
#[derive(Clone, Debug)]
pub struct ThresholdProfile<'a> {
    lambdas: &'a [f64],
    prefix: Vec<f64>,
}

pub fn threshold_profile(s: &Spectrum) -> ThresholdProfile<'_> {
    let mut prefix = Vec::with_capacity(s.n + 1);
    let mut acc = 0.0;
    prefix.push(acc);
    for &l in &s.lambdas {
        acc += l;
        prefix.push(acc);
    }
    ThresholdProfile { lambdas: &s.lambdas, prefix }
}

impl ThresholdProfile<'_> {
    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambdas[0]
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambdas[self.lambdas.len() - 1]
    }

    pub fn level_set(&self, t: f64) -> Range<usize> {
        0..level_count(self.lambdas, t)
    }

    pub fn level_size(&self, t: f64) -> usize {
        level_count(self.lambdas, t)
    }

    pub fn sum(&self, t: f64) -> f64 {
        self.prefix[level_count(self.lambdas, t)]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatnessRow {
    pub index: usize,
    pub lambda: f64,
    pub sup_norm: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatnessReport {
    pub rows: Vec<FlatnessRow>,
    /// Largest `‖v_i‖_∞ − √n/|λ_i|`; negative means every index has room.
    pub max_slack: f64,
    pub pass: bool,
}

impl FlatnessReport {
    pub fn flagged(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().filter(|r| !r.pass).map(|r| r.index)
    }
}

/// Checks `‖v_i‖_∞ ≤ √n / |λ_i| + tol` for every index with `|λ_i| > 1e-9`.
pub fn flatness_check(s: &Spectrum, tol: f64) -> FlatnessReport {
    let sqrt_n = (s.n as f64).sqrt();
    let mut rows = Vec::new();
    let mut max_slack = f64::NEG_INFINITY;
    for (i, &lambda) in s.lambdas.iter().enumerate() {
        if lambda.abs() <= 1e-9 {
            continue;
        }
        let sup_norm = norm_inf(s.vector(i));
        let bound = sqrt_n / lambda.abs();
        max_slack = max_slack.max(sup_norm - bound);
        rows.push(FlatnessRow { index: i, lambda, sup_norm, bound, pass: sup_norm <= bound + tol });
    }
    let pass = rows.iter().all(|r| r.pass);
    FlatnessReport { rows, max_slack, pass }
}

/// Per-vertex vectors `H_v` with `H_{v,i} = √λ_i · v_{i,v}` over `i ∈ L_{γn}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingVectors {
    pub gamma: f64,
    /// The index set `S = L_{γn}`.
    pub indices: Vec<usize>,
    /// `rows[v]` is `H_v`, of length `indices.len()`.
    pub rows: Vec<Vec<f64>>,
    /// `max_v ‖H_v‖_∞`, at most `γ^{-1/2}`.
    pub max_entry: f64,
}

impl EmbeddingVectors {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }
}

pub fn embedding_vectors(s: &Spectrum, gamma: f64) -> Result<EmbeddingVectors> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::param("gamma", gamma, "a fraction in (0, 1)"));
    }
    if gamma * (s.n as f64) < 1.0 {
        return Err(Error::param("gamma", gamma, "gamma * n >= 1"));
    }
    let indices: Vec<usize> = s.profile().level_set(gamma * s.n as f64).collect();
    let scales: Vec<f64> = indices.iter().map(|&i| s.lambdas[i].sqrt()).collect();
    let rows: Vec<Vec<f64>> = (0..s.n)
        .map(|v| indices.iter().zip(&scales).map(|(&i, sc)| sc * s.vector(i)[v]).collect())
        .collect();
    let max_entry = rows.iter().map(|r| norm_inf(r)).fold(0.0, f64::max);
    let cap = gamma.powf(-0.5);
    if max_entry > cap + s.tolerance {
        return Err(Error::SpectrumDefect { what: "embedding sup norm above gamma^(-1/2)", value: max_entry, tol: cap });
    }
    Ok(EmbeddingVectors { gamma, indices, rows, max_entry })
}

/// `Σ_{i ∉ set} λ_i²`, the squared Frobenius distance from `A` to its
/// projection onto the eigenvectors in `set`.
pub fn residual_gram_mass(s: &Spectrum, set: &[usize]) -> f64 {
    let mut keep = vec![false; s.n];
    for &i in set {
        keep[i] = true;
    }
    s.lambdas.iter().zip(&keep).filter(|(_, k)| !**k).map(|(l, _)| l * l).sum()
}

/// `‖Σ_{i∈set} λ_i v_i v_iᵀ − A‖_F²`, computed entry by entry.
pub fn residual_gram_mass_explicit(g: &Graph, s: &Spectrum, set: &[usize]) -> f64 {
    let n = s.n;
    let mut total = 0.0;
    for u in 0..n {
        for w in 0..n {
            let approx: f64 = set.iter().map(|&i| s.lambdas[i] * s.vector(i)[u] * s.vector(i)[w]).sum();
            let a = if g.has_edge(u, w) { 1.0 } else { 0.0 };
            total += (approx - a) * (approx - a);
        }
    }
    total
}

/// Closed-form circulant spectrum `λ_k = Σ_{s∈S} cos(2πks/n)`, descending.
///
/// `connection` must already be symmetric, so each unordered neighbor pair
/// contributes `2cos(2πks/n)` in total.
pub fn circulant_spectrum(n: usize, connection: &[usize]) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n)
        .map(|k| {
            connection
                .iter()
                .map(|&s| (2.0 * core::f64::consts::PI * (k * s % n) as f64 / n as f64).cos())
                .sum()
        })
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out
}
