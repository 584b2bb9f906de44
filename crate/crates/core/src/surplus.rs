//! Max-cut, surplus and certificates for `sp(G) = mc(G) − m/2` and its
//! semidefinite relaxation `sp*(G) = sup { ½⟨−A, M⟩ : M ⪰ 0, M_ii ≤ 1 }`.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{degeneracy, induced_subgraph, Graph};
use crate::linalg::{dot, norm2};
use crate::rng::{normal_vector, stream_rng};
use crate::spectral::{decompose, energy, Spectrum};

/// Default largest `n` for [`maxcut_exact`].
pub const EXACT_MAXCUT_CAP: usize = 26;

/// Surplus as an exact half-integer: stores `2·sp = 2·cut − m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surplus {
    pub twice: i64,
}

impl Surplus {
    pub fn from_cut(cut_edges: usize, m: usize) -> Self {
        Surplus { twice: 2 * cut_edges as i64 - m as i64 }
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Serialize for Surplus {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub side: Vec<bool>,
    pub cut_edges: usize,
}

impl Cut {
    pub fn evaluate(g: &Graph, side: Vec<bool>) -> Cut {
        let cut_edges = g.edges().filter(|&(u, v)| side[u] != side[v]).count();
        Cut { side, cut_edges }
    }

    pub fn surplus(&self, g: &Graph) -> Surplus {
        Surplus::from_cut(self.cut_edges, g.m())
    }
}

struct Bnb<'a> {
    adj: &'a [Vec<usize>],
    order: Vec<usize>,
    pos: Vec<usize>,
    side: Vec<bool>,
    // Assigned neighbors of each vertex on side 0 / side 1.
    a0: Vec<usize>,
    a1: Vec<usize>,
    best: usize,
    best_side: Vec<bool>,
}

impl Bnb<'_> {
    // `sum_max`: Σ over unassigned u of max(a0[u], a1[u]).
    // `free_edges`: edges with both ends unassigned.
    fn search(&mut self, depth: usize, cut: usize, sum_max: usize, free_edges: usize) {
        if cut + sum_max + free_edges <= self.best {
            return;
        }
        if depth == self.order.len() {
            self.best = cut;
            self.best_side.clone_from(&self.side);
            return;
        }
        let v = self.order[depth];
        let choices: &[bool] = if depth == 0 { &[false] } else { &[false, true] };
        // Try the side that cuts more edges first.
        let prefer_true = self.a0[v] > self.a1[v];
        for k in 0..choices.len() {
            let s = if choices.len() == 1 { false } else { (k == 0) == prefer_true };
            let gain = if s { self.a0[v] } else { self.a1[v] };
            let mut sm = sum_max - self.a0[v].max(self.a1[v]);
            let mut fe = free_edges;
            for &u in &self.adj[v] {
                if self.pos[u] > depth {
                    fe -= 1;
                    let old = self.a0[u].max(self.a1[u]);
                    if s {
                        self.a1[u] += 1;
                    } else {
                        self.a0[u] += 1;
                    }
                    sm = sm + self.a0[u].max(self.a1[u]) - old;
                }
            }
            self.side[v] = s;
            self.search(depth + 1, cut + gain, sm, fe);
            for &u in &self.adj[v] {
                if self.pos[u] > depth {
                    if s {
                        self.a1[u] -= 1;
                    } else {
                        self.a0[u] -= 1;
                    }
                }
            }
        }
    }
}

/// Maximum cut by depth-first branch and bound.
///
/// Vertices are assigned in descending-degree order. The bound adds to the
/// current cut, for every unassigned vertex, the larger of its assigned
/// neighbor counts on either side, plus every edge among unassigned vertices.
/// The search is seeded with a local-search cut.
pub fn maxcut_exact(g: &Graph, cap: usize) -> Result<Cut> {
    let n = g.n();
    if n > cap {
        return Err(Error::TooLarge { what: "exact max-cut", n, cap });
    }
    if n == 0 {
        return Ok(Cut { side: Vec::new(), cut_edges: 0 });
    }
    let warm = maxcut_local(g, 0, 4);
    let adj = g.adjacency_lists();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bnb = Bnb {
        adj: &adj,
        order,
        pos,
        side: vec![false; n],
        a0: vec![0; n],
        a1: vec![0; n],
        best: warm.cut_edges,
        best_side: warm.side,
    };
    bnb.search(0, 0, 0, g.m());
    Ok(Cut::evaluate(g, bnb.best_side))
}

/// Maximum cut by a Gray-code sweep over all `2^{n−1}` bipartitions with
/// vertex `n−1` pinned to side 0. Each step flips one vertex and updates the
/// cut in `O(deg)`.
pub fn maxcut_gray(g: &Graph, cap: usize) -> Result<Cut> {
    let n = g.n();
    if n > cap {
        return Err(Error::TooLarge { what: "Gray-code max-cut", n, cap });
    }
    if n <= 1 {
        return Ok(Cut { side: vec![false; n], cut_edges: 0 });
    }
    let adj = g.adjacency_lists();
    let mut side = vec![false; n];
    // same[v]: neighbors of v currently on v's side.
    let mut same: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let mut cut: i64 = 0;
    let mut best = 0;
    let mut best_code: u64 = 0;
    let mut code: u64 = 0;
    for k in 1..(1u64 << (n - 1)) {
        let v = k.trailing_zeros() as usize;
        code ^= 1 << v;
        let deg = g.degree(v) as i64;
        cut += 2 * same[v] - deg;
        same[v] = deg - same[v];
        side[v] = !side[v];
        for &u in &adj[v] {
            if side[u] == side[v] {
                same[u] += 1;
            } else {
                same[u] -= 1;
            }
        }
        if cut > best {
            best = cut;
            best_code = code;
        }
    }
    let best_side = (0..n).map(|v| best_code >> v & 1 == 1).collect();
    Ok(Cut::evaluate(g, best_side))
}

fn local_search(adj: &[Vec<usize>], side: &mut [bool]) {
    let n = side.len();
    loop {
        let mut improved = false;
        for v in 0..n {
            let same = adj[v].iter().filter(|&&u| side[u] == side[v]).count();
            if 2 * same > adj[v].len() {
                side[v] = !side[v];
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

/// Best of `restarts` single-flip local searches from random sides, restart
/// `r` drawing from stream `(seed, r)`. Every local optimum cuts at least
/// half the edges at each vertex, hence at least `⌈m/2⌉` in total.
pub fn maxcut_local(g: &Graph, seed: u64, restarts: usize) -> Cut {
    let adj = g.adjacency_lists();
    let mut best: Option<Cut> = None;
    for r in 0..restarts.max(1) as u64 {
        let mut rng = stream_rng(seed, r);
        let mut side: Vec<bool> = (0..g.n()).map(|_| rng.random_bool(0.5)).collect();
        local_search(&adj, &mut side);
        let cut = Cut::evaluate(g, side);
        if best.as_ref().is_none_or(|b| cut.cut_edges > b.cut_edges) {
            best = Some(cut);
        }
    }
    best.expect("at least one restart")
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    ExactCut,
    Edwards,
    Degeneracy,
    EnergyLower,
    CubicLower,
    SdpLower,
    DualUpper,
    MixingUpper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Target {
    Sp,
    SpStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum Witness {
    Cut { side: Vec<bool> },
    /// Rows `U_k` of a factor `M = U Uᵀ`; every row has norm at most 1.
    Factor { rows: Vec<Vec<f64>> },
    /// Uniform dual `y_i = y` with `A/2 + yI ⪰ 0`.
    UniformDual { y: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurplusCertificate {
    pub kind: CertificateKind,
    pub target: Target,
    pub direction: Direction,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// `½⟨−A, UUᵀ⟩ = −Σ_{uv∈E} ⟨U_u, U_v⟩`.
pub fn factor_objective(g: &Graph, rows: &[Vec<f64>]) -> f64 {
    -g.edges().map(|(u, v)| dot(&rows[u], &rows[v])).sum::<f64>()
}

fn max_row_norm(rows: &[Vec<f64>]) -> f64 {
    rows.iter().map(|r| norm2(r)).fold(0.0, f64::max)
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-8 * a.abs().max(b.abs()).max(1.0)
}

impl SurplusCertificate {
    /// Re-evaluates the witness and checks it reproduces `value` within `1e-8`
    /// relative. Dual witnesses are checked against a fresh decomposition.
    /// Certificates without a witness verify vacuously.
    pub fn verify(&self, g: &Graph) -> bool {
        match &self.witness {
            None => true,
            Some(Witness::Cut { side }) => {
                side.len() == g.n() && {
                    let cut = Cut::evaluate(g, side.clone());
                    rel_close(cut.surplus(g).value(), self.value)
                }
            }
            Some(Witness::Factor { rows }) => {
                rows.len() == g.n()
                    && max_row_norm(rows) <= 1.0 + 1e-9
                    && rel_close(factor_objective(g, rows), self.value)
            }
            Some(Witness::UniformDual { y }) => {
                if g.n() == 0 {
                    return self.value == 0.0;
                }
                let Ok(s) = decompose(g, None) else { return false };
                let need = (-s.lambda_min()).max(0.0) / 2.0;
                *y >= need - 1e-9 * need.max(1.0) && rel_close(g.n() as f64 * y, self.value)
            }
        }
    }
}

/// Lower bound on `sp` from an explicit cut.
pub fn cut_certificate(g: &Graph, cut: &Cut) -> SurplusCertificate {
    SurplusCertificate {
        kind: CertificateKind::ExactCut,
        target: Target::Sp,
        direction: Direction::Lower,
        value: cut.surplus(g).value(),
        witness: Some(Witness::Cut { side: cut.side.clone() }),
    }
}

/// `sp ≥ √(m/8 + 1/64) − 1/8`.
pub fn edwards_floor(g: &Graph) -> SurplusCertificate {
    let m = g.m() as f64;
    SurplusCertificate {
        kind: CertificateKind::Edwards,
        target: Target::Sp,
        direction: Direction::Lower,
        value: (m / 8.0 + 1.0 / 64.0).sqrt() - 0.125,
        witness: None,
    }
}

/// `sp ≥ m / (2(d+1))` for a `d`-degenerate graph.
pub fn degeneracy_floor(g: &Graph) -> SurplusCertificate {
    let d = degeneracy(g) as f64;
    SurplusCertificate {
        kind: CertificateKind::Degeneracy,
        target: Target::Sp,
        direction: Direction::Lower,
        value: g.m() as f64 / (2.0 * (d + 1.0)),
        witness: None,
    }
}

/// `sp* ≥ ¼E(G)` via `M = Σ_{λ_i ≤ 0} v_i v_iᵀ`.
pub fn energy_certificate(s: &Spectrum) -> SurplusCertificate {
    let idx: Vec<usize> = (0..s.n()).filter(|&i| s.lambda(i) <= 0.0).collect();
    let rows = (0..s.n()).map(|k| idx.iter().map(|&i| s.vector(i)[k]).collect()).collect();
    SurplusCertificate {
        kind: CertificateKind::EnergyLower,
        target: Target::SpStar,
        direction: Direction::Lower,
        value: energy(s) / 4.0,
        witness: Some(Witness::Factor { rows }),
    }
}

/// `sp* ≥ (1/2n) Σ_{λ_j<0} (−λ_j)³` via `M = (1/n) Σ_{λ_j<0} λ_j² v_j v_jᵀ`.
pub fn cubic_certificate(s: &Spectrum) -> SurplusCertificate {
    let nf = s.n() as f64;
    let idx: Vec<usize> = (0..s.n()).filter(|&i| s.lambda(i) < 0.0).collect();
    let scale: Vec<f64> = idx.iter().map(|&i| -s.lambda(i) / nf.sqrt()).collect();
    let rows = (0..s.n()).map(|k| idx.iter().zip(&scale).map(|(&i, c)| c * s.vector(i)[k]).collect()).collect();
    let value = idx.iter().map(|&i| (-s.lambda(i)).powi(3)).sum::<f64>() / (2.0 * nf);
    SurplusCertificate {
        kind: CertificateKind::CubicLower,
        target: Target::SpStar,
        direction: Direction::Lower,
        value,
        witness: Some(Witness::Factor { rows }),
    }
}

/// `sp* ≤ n · max(−λ_n, 0) / 2` by weak duality with uniform dual `y = max(−λ_n, 0)/2`.
pub fn dual_upper(s: &Spectrum) -> SurplusCertificate {
    let y = (-s.lambda_min()).max(0.0) / 2.0;
    SurplusCertificate {
        kind: CertificateKind::DualUpper,
        target: Target::SpStar,
        direction: Direction::Upper,
        value: s.n() as f64 * y,
        witness: Some(Witness::UniformDual { y }),
    }
}

/// `sp ≤ n · max(−λ_n, 0)`, the expander-mixing bound.
pub fn mixing_upper(g: &Graph, s: &Spectrum) -> SurplusCertificate {
    debug_assert_eq!(g.n(), s.n());
    SurplusCertificate {
        kind: CertificateKind::MixingUpper,
        target: Target::Sp,
        direction: Direction::Upper,
        value: g.n() as f64 * (-s.lambda_min()).max(0.0),
        witness: None,
    }
}

// ---------------------------------------------------------------------------
// Low-rank SDP ascent
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum SdpInit {
    /// Gaussian rows of width `rank`, normalized, from stream `(seed, 0)`.
    Random,
    /// A feasible factor, typically a certificate witness.
    Factor(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SdpOptions {
    /// Width of the factor; `None` means `⌈√(2n)⌉`. Ignored for warm starts.
    pub rank: Option<usize>,
    pub iters: usize,
    /// Stop once an iteration improves the objective by less than
    /// `tol · max(1, |value|)`.
    pub tol: f64,
    pub seed: u64,
    pub init: SdpInit,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions { rank: None, iters: 200, tol: 1e-9, seed: 0, init: SdpInit::Random }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SdpResult {
    pub certificate: SurplusCertificate,
    /// Objective after initialization and after every accepted iteration.
    pub history: Vec<f64>,
    pub step: f64,
}

/// Lower estimate of the spectral norm from 20 power iterations, clamped
/// below by `max(average degree, √max degree)`, both of which bound `λ_1`
/// from below.
pub fn spectral_norm_estimate(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 || g.m() == 0 {
        return 0.0;
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut est: f64 = 0.0;
    for _ in 0..20 {
        let y = g.mul_vec(&x);
        let norm = norm2(&y);
        if norm == 0.0 {
            break;
        }
        est = norm;
        x = y.into_iter().map(|v| v / norm).collect();
    }
    let avg = 2.0 * g.m() as f64 / n as f64;
    est.max(avg).max((g.max_degree() as f64).sqrt())
}

fn project_rows(rows: &mut [Vec<f64>]) {
    for r in rows {
        let norm = norm2(r);
        if norm > 1.0 {
            r.iter_mut().for_each(|x| *x /= norm);
        }
    }
}

/// Projected gradient ascent on `f(U) = ½⟨−A, UUᵀ⟩` over factors with row
/// norms at most 1.
///
/// The step is `1/(2L̂)` with `L̂` from [`spectral_norm_estimate`]; a step that
/// would lower `f` is halved until it does not, so the history is
/// nondecreasing and every iterate is feasible.
pub fn sdp_lower(g: &Graph, opts: &SdpOptions) -> Result<SdpResult> {
    let n = g.n();
    let rank = opts.rank.unwrap_or_else(|| ((2 * n) as f64).sqrt().ceil() as usize).max(1);
    let mut u: Vec<Vec<f64>> = match &opts.init {
        SdpInit::Random => {
            let flat = normal_vector(opts.seed, 0, n * rank);
            flat.chunks(rank).map(|c| c.to_vec()).collect()
        }
        SdpInit::Factor(rows) => {
            if rows.len() != n {
                return Err(Error::param("init rows", rows.len() as f64, "one row per vertex"));
            }
            rows.clone()
        }
    };
    if let SdpInit::Random = opts.init {
        for r in &mut u {
            let norm = norm2(r);
            if norm > 0.0 {
                r.iter_mut().for_each(|x| *x /= norm);
            }
        }
    }
    project_rows(&mut u);
    let width = u.first().map_or(0, |r| r.len());
    let adj = g.adjacency_lists();
    let l_hat = spectral_norm_estimate(g);
    let base_step = if l_hat > 0.0 { 1.0 / (2.0 * l_hat) } else { 0.0 };

    let mut value = factor_objective(g, &u);
    let mut history = vec![value];
    if g.m() > 0 && width > 0 {
        for _ in 0..opts.iters {
            // Ascent direction −AU.
            let grad: Vec<Vec<f64>> = adj
                .iter()
                .map(|nb| {
                    let mut acc = vec![0.0; width];
                    for &w in nb {
                        for (a, x) in acc.iter_mut().zip(&u[w]) {
                            *a -= x;
                        }
                    }
                    acc
                })
                .collect();
            let mut step = base_step;
            let mut accepted = None;
            for _ in 0..30 {
                let mut cand: Vec<Vec<f64>> = u
                    .iter()
                    .zip(&grad)
                    .map(|(r, gr)| r.iter().zip(gr).map(|(x, d)| x + step * d).collect())
                    .collect();
                project_rows(&mut cand);
                let v = factor_objective(g, &cand);
                if !v.is_finite() {
                    return Err(Error::NonFinite("sdp ascent"));
                }
                if v >= value {
                    accepted = Some((cand, v));
                    break;
                }
                step /= 2.0;
            }
            let Some((cand, v)) = accepted else { break };
            let gain = v - value;
            u = cand;
            value = v;
            history.push(value);
            if gain < opts.tol * value.abs().max(1.0) {
                break;
            }
        }
    }
    Ok(SdpResult {
        certificate: SurplusCertificate {
            kind: CertificateKind::SdpLower,
            target: Target::SpStar,
            direction: Direction::Lower,
            value,
            witness: Some(Witness::Factor { rows: u }),
        },
        history,
        step: base_step,
    })
}

/// [`sdp_lower`] started from the better of the energy and cubic factors, so
/// the result dominates both spectral certificates.
pub fn sdp_lower_warm(g: &Graph, s: &Spectrum, iters: usize, tol: f64) -> Result<SdpResult> {
    let e = energy_certificate(s);
    let c = cubic_certificate(s);
    let start = if c.value > e.value { c } else { e };
    let Some(Witness::Factor { rows }) = start.witness else { unreachable!("spectral certificates carry factors") };
    sdp_lower(g, &SdpOptions { rank: None, iters, tol, seed: 0, init: SdpInit::Factor(rows) })
}

// ---------------------------------------------------------------------------
// Monotonicity under induced subgraphs
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// Certified lower bound for `G` ≥ certified upper bound for `H`.
    Confirmed,
    /// Certified upper bound for `G` < certified lower bound for `H`.
    Violated,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub sp_g: Surplus,
    pub sp_h: Surplus,
    pub sp_pass: bool,
    pub sp_star_lower_g: f64,
    pub sp_star_upper_g: f64,
    pub sp_star_lower_h: f64,
    pub sp_star_upper_h: f64,
    pub sp_star: Comparison,
}

/// Checks `sp(G) ≥ sp(G[S])` exactly and compares `sp*` sandwiches.
pub fn monotonicity_check(g: &Graph, set: &[usize], cap: usize) -> Result<MonotonicityReport> {
    let h = induced_subgraph(g, set)?;
    let sp_g = maxcut_exact(g, cap)?.surplus(g);
    let sp_h = maxcut_exact(&h, cap)?.surplus(&h);
    let bounds = |x: &Graph| -> Result<(f64, f64)> {
        if x.n() == 0 {
            return Ok((0.0, 0.0));
        }
        let s = decompose(x, None)?;
        let lower = sdp_lower_warm(x, &s, 200, 1e-10)?.certificate.value;
        Ok((lower, dual_upper(&s).value))
    };
    let (lg, ug) = bounds(g)?;
    let (lh, uh) = bounds(&h)?;
    let slack = 1e-9 * ug.abs().max(1.0);
    let sp_star = if lg + slack >= uh {
        Comparison::Confirmed
    } else if ug + slack < lh {
        Comparison::Violated
    } else {
        Comparison::Inconclusive
    };
    Ok(MonotonicityReport {
        sp_g,
        sp_h,
        sp_pass: sp_g >= sp_h,
        sp_star_lower_g: lg,
        sp_star_upper_g: ug,
        sp_star_lower_h: lh,
        sp_star_upper_h: uh,
        sp_star,
    })
}
