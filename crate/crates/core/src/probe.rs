//! Gaussian probes on Hadamard-product subspaces.
//!
//! A probe is a standard Gaussian vector on a subspace `W ⊆ Rⁿ`, optionally
//! clipped entrywise. The identity `Σ λ_i⟨v_i,q⟩² = Σ λ_iλ_j⟨v_i∘v_j,q⟩²`
//! (a restatement of `A = A∘A` for 0/1 matrices) holds for every `q`, and the
//! truncation Monte Carlo estimates the two moment bounds clipping must obey.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{axpy, dot, hadamard, norm2};
use crate::rng::normal_vector;
use crate::spectral::Spectrum;

/// Fewest Monte Carlo samples accepted by [`truncation_effect_estimate`].
pub const MIN_SAMPLES: usize = 100;

/// Standard errors of slack allowed by the statistical pass criterion.
pub const SIGMAS: f64 = 4.0;

/// Orthonormal basis of a subspace of `Rⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub n: usize,
    pub basis: Vec<Vec<f64>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `‖Π_W w‖₂²`.
    pub fn projection_norm_sq(&self, w: &[f64]) -> f64 {
        self.basis.iter().map(|b| dot(b, w).powi(2)).sum()
    }

    /// Largest `|⟨b_i, b_j⟩ − δ_ij|`.
    pub fn gram_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate().take(i + 1) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(a, b) - target).abs());
            }
        }
        worst
    }
}

/// Default rank tolerance `1e-10 · √n`.
pub fn default_rank_tol(n: usize) -> f64 {
    1e-10 * (n as f64).sqrt()
}

/// Orthonormal basis of an arbitrary vector family by column-pivoted modified
/// Gram–Schmidt with one re-orthogonalization pass. Candidates whose residual
/// norm falls below `rank_tol` are discarded.
pub fn orthonormal_span(n: usize, mut candidates: Vec<Vec<f64>>, rank_tol: f64) -> Subspace {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut norms: Vec<f64> = candidates.iter().map(|c| norm2(c)).collect();
    let mut alive: Vec<bool> = vec![true; candidates.len()];
    loop {
        let pick = (0..candidates.len())
            .filter(|&k| alive[k])
            .max_by(|&a, &b| norms[a].total_cmp(&norms[b]).then(b.cmp(&a)));
        let Some(k) = pick else { break };
        alive[k] = false;
        let mut v = core::mem::take(&mut candidates[k]);
        for b in &basis {
            let c = dot(b, &v);
            axpy(-c, b, &mut v);
        }
        let norm = norm2(&v);
        if norm <= rank_tol {
            // Pivoting picks the largest residual, so everything left is smaller.
            break;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        for j in 0..candidates.len() {
            if alive[j] {
                let c = dot(&v, &candidates[j]);
                axpy(-c, &v, &mut candidates[j]);
                norms[j] = norm2(&candidates[j]);
            }
        }
        basis.push(v);
    }
    Subspace { n, basis }
}

/// Product vectors `v_i ∘ v_j` for `i ≤ j` in `L_T`, in row-major pair order.
pub fn hadamard_products(s: &Spectrum, t: f64) -> Vec<((usize, usize), Vec<f64>)> {
    let k = s.profile().level_size(t);
    let mut out = Vec::with_capacity(k * (k + 1) / 2);
    for i in 0..k {
        for j in i..k {
            out.push(((i, j), hadamard(s.vector(i), s.vector(j))));
        }
    }
    out
}

/// Orthonormal basis of `W = span{v_i ∘ v_j : i, j ∈ L_T}`.
pub fn hadamard_span(s: &Spectrum, t: f64, rank_tol: Option<f64>) -> Result<Subspace> {
    if s.profile().level_size(t) == 0 {
        return Err(Error::EmptyLevelSet(t));
    }
    let tol = rank_tol.unwrap_or_else(|| default_rank_tol(s.n()));
    let products = hadamard_products(s, t).into_iter().map(|(_, v)| v).collect();
    Ok(orthonormal_span(s.n(), products, tol))
}

/// A probe vector and where it came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeVector {
    pub entries: Vec<f64>,
    pub seed: u64,
    /// Index of the random stream the coefficients were drawn from.
    pub index: u64,
    /// Dimension of the subspace the probe was sampled on.
    pub subspace_dim: usize,
    /// Clipping factor, if the probe has been clipped.
    pub beta: Option<f64>,
    /// `‖q‖₂` before any clipping; the clip level `β‖q‖₂/√n` is always taken
    /// from this norm.
    pub source_norm: f64,
}

impl ProbeVector {
    /// Wraps an arbitrary vector as an unclipped probe.
    pub fn from_entries(entries: Vec<f64>) -> Self {
        let source_norm = norm2(&entries);
        let subspace_dim = entries.len();
        ProbeVector { entries, seed: 0, index: 0, subspace_dim, beta: None, source_norm }
    }

    pub fn is_clipped(&self) -> bool {
        self.beta.is_some()
    }
}

/// `q = Σ x_i b_i` with `x_i` i.i.d. standard normal from stream `(seed, index)`.
pub fn sample_gaussian(w: &Subspace, seed: u64, index: u64) -> Result<ProbeVector> {
    if w.dim() == 0 {
        return Err(Error::param("dim", 0.0, "a subspace of dimension >= 1"));
    }
    let coeffs = normal_vector(seed, index, w.dim());
    let mut q = vec![0.0; w.n];
    for (c, b) in coeffs.iter().zip(&w.basis) {
        axpy(*c, b, &mut q);
    }
    let source_norm = norm2(&q);
    Ok(ProbeVector { entries: q, seed, index, subspace_dim: w.dim(), beta: None, source_norm })
}

/// Standard Gaussian on all of `Rⁿ` from stream `(seed, index)`.
pub fn sample_gaussian_full(n: usize, seed: u64, index: u64) -> ProbeVector {
    let q = normal_vector(seed, index, n);
    let source_norm = norm2(&q);
    ProbeVector { entries: q, seed, index, subspace_dim: n, beta: None, source_norm }
}

/// `T_β q`: clamps every entry to `±β x` where `x = ‖q‖₂ / √n`.
///
/// `x` is computed from the norm of the unclipped source, so clipping an
/// already clipped probe with the same `β` changes nothing.
pub fn clip(q: &ProbeVector, beta: f64) -> Result<ProbeVector> {
    if !(beta > 0.0) {
        return Err(Error::param("beta", beta, "beta > 0"));
    }
    let n = q.entries.len();
    let level = beta * q.source_norm / (n as f64).sqrt();
    let entries = q.entries.iter().map(|&x| x.clamp(-level, level)).collect();
    Ok(ProbeVector { entries, beta: Some(beta), ..q.clone() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HadamardCheck {
    /// `Σ_i λ_i ⟨v_i, q⟩²`.
    pub lhs: f64,
    /// `Σ_{i,j} λ_i λ_j ⟨v_i ∘ v_j, q⟩²`.
    pub rhs: f64,
    /// `qᵀ A q` evaluated on the graph directly.
    pub quadratic_form: f64,
    pub pass: bool,
}

/// Evaluates both sides of `Σ λ_i⟨v_i,q⟩² = Σ λ_iλ_j⟨v_i∘v_j,q⟩²` and the
/// direct form `qᵀAq`; passes when all three agree within `tol · (1 + |lhs|)`.
pub fn hadamard_identity_check(g: &Graph, s: &Spectrum, q: &ProbeVector, tol: f64) -> HadamardCheck {
    let n = s.n();
    let x = &q.entries;
    let lambdas = s.lambdas();
    let lhs: f64 = (0..n).map(|i| lambdas[i] * dot(s.vector(i), x).powi(2)).sum();
    // ⟨v_i ∘ v_j, q⟩ = (V D_q Vᵀ)_{ij} with the eigenvectors as rows of V.
    let scaled: Vec<Vec<f64>> = (0..n).map(|i| hadamard(s.vector(i), x)).collect();
    let mut rhs = 0.0;
    for i in 0..n {
        let li = lambdas[i];
        if li == 0.0 {
            continue;
        }
        let wi = &scaled[i];
        rhs += li * li * dot(wi, s.vector(i)).powi(2);
        let mut off = 0.0;
        for j in i + 1..n {
            off += lambdas[j] * dot(wi, s.vector(j)).powi(2);
        }
        rhs += 2.0 * li * off;
    }
    let quadratic_form = g.quadratic_form(x);
    let scale = tol * (1.0 + lhs.abs());
    let pass = (lhs - rhs).abs() <= scale && (lhs - quadratic_form).abs() <= scale;
    HadamardCheck { lhs, rhs, quadratic_form, pass }
}

/// How the clipping factor is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "rule", content = "beta")]
pub enum ClipRule {
    /// `β = 2n⁴ / T⁴`.
    Paper,
    Fixed(f64),
    /// No clipping (`β = ∞`).
    Disabled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentPart {
    /// `E⟨v_i∘v_j, T_β q⟩² ≥ (‖v_i∘v_j‖ − 1/(2√n))₊²`, a lower bound.
    Product,
    /// `E⟨v_i, T_β q⟩² ≤ 25`, an upper bound.
    Single,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentRow {
    pub part: MomentPart,
    pub pair: (usize, usize),
    pub mean: f64,
    pub stderr: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationReport {
    pub t: f64,
    pub beta: Option<f64>,
    pub samples: usize,
    pub subspace_dim: usize,
    pub rows: Vec<MomentRow>,
    pub pass: bool,
}

#[derive(Default, Clone, Copy)]
struct Moments {
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn mean_stderr(&self, k: usize) -> (f64, f64) {
        let kf = k as f64;
        let mean = self.sum / kf;
        let var = ((self.sum_sq - kf * mean * mean) / (kf - 1.0)).max(0.0);
        (mean, (var / kf).sqrt())
    }
}

/// Monte Carlo estimate of both truncation moment bounds at threshold `T`.
///
/// Sample `k` uses stream `(seed, k)`. Part 1 covers every pair `i ≤ j` in
/// `L_T`, part 2 every `i` in `L_{T²/8n}`; a row passes when the bound lies
/// within `4` standard errors of the mean or on its safe side.
pub fn truncation_effect_estimate(
    s: &Spectrum,
    t: f64,
    samples: usize,
    seed: u64,
    rule: ClipRule,
) -> Result<TruncationReport> {
    let n = s.n();
    let nf = n as f64;
    if !(t > 0.0 && t <= nf) {
        return Err(Error::param("T", t, "T in (0, n]"));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples { samples, min: MIN_SAMPLES });
    }
    let w = hadamard_span(s, t, None)?;
    let beta = match rule {
        ClipRule::Paper => Some(2.0 * nf.powi(4) / t.powi(4)),
        ClipRule::Fixed(b) => Some(b),
        ClipRule::Disabled => None,
    };
    let products = hadamard_products(s, t);
    let singles: Vec<usize> = s.profile().level_set(t * t / (8.0 * nf)).collect();

    let mut prod_moments = vec![Moments::default(); products.len()];
    let mut single_moments = vec![Moments::default(); singles.len()];
    for k in 0..samples as u64 {
        let raw = sample_gaussian(&w, seed, k)?;
        let q = match beta {
            Some(b) => clip(&raw, b)?,
            None => raw,
        };
        for ((_, p), acc) in products.iter().zip(&mut prod_moments) {
            acc.push(dot(p, &q.entries).powi(2));
        }
        for (&i, acc) in singles.iter().zip(&mut single_moments) {
            acc.push(dot(s.vector(i), &q.entries).powi(2));
        }
    }

    let mut rows = Vec::with_capacity(products.len() + singles.len());
    let shift = 1.0 / (2.0 * nf.sqrt());
    for (((i, j), p), acc) in products.iter().zip(&prod_moments) {
        let (mean, stderr) = acc.mean_stderr(samples);
        let bound = (norm2(p) - shift).max(0.0).powi(2);
        let pass = mean + SIGMAS * stderr >= bound;
        rows.push(MomentRow { part: MomentPart::Product, pair: (*i, *j), mean, stderr, bound, pass });
    }
    for (&i, acc) in singles.iter().zip(&single_moments) {
        let (mean, stderr) = acc.mean_stderr(samples);
        let pass = mean - SIGMAS * stderr <= 25.0;
        rows.push(MomentRow { part: MomentPart::Single, pair: (i, i), mean, stderr, bound: 25.0, pass });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(TruncationReport { t, beta, samples, subspace_dim: w.dim(), rows, pass })
}
