//! Density increment: high-degree peeling, densest neighborhoods and the
//! iterated step that trades vertices for edge density while keeping
//! `p³n` from decreasing.
//!
//! Densities here are `p(G) = 2m / n²`, so a clique on `k` vertices has
//! density `1 − 1/k`.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, triangle_count, Graph};

pub const DEFAULT_KAPPA: f64 = 1e-2;
pub const PAPER_KAPPA: f64 = 1e-10;
pub const DEFAULT_PEEL_FACTOR: f64 = 4.0;
pub const DEFAULT_DENSITY_TARGET: f64 = 0.3;
pub const DEFAULT_STEP_CAP: usize = 64;

/// `p³ n`.
pub fn potential(p: f64, n: usize) -> f64 {
    p.powi(3) * n as f64
}

/// `2m / n²`, zero for the empty vertex set.
pub fn edge_density(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        0.0
    } else {
        2.0 * g.m() as f64 / (n * n) as f64
    }
}

/// Removes a vertex of largest current degree (lowest index on ties) while
/// that degree is at least `threshold`. Returns the removed vertices in
/// removal order and the remaining vertices in increasing order.
pub fn peel_high_degree(g: &Graph, threshold: f64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(threshold > 0.0) {
        return Err(Error::param("threshold", threshold, "threshold > 0"));
    }
    let n = g.n();
    let mut deg = g.degrees().to_vec();
    let mut alive = vec![true; n];
    let mut removed = Vec::new();
    loop {
        let best = (0..n).filter(|&v| alive[v]).max_by(|&a, &b| deg[a].cmp(&deg[b]).then(b.cmp(&a)));
        match best {
            Some(v) if deg[v] as f64 >= threshold => {
                alive[v] = false;
                removed.push(v);
                for u in g.neighbors(v) {
                    deg[u] -= 1;
                }
            }
            _ => break,
        }
    }
    let rest = (0..n).filter(|&v| alive[v]).collect();
    Ok((removed, rest))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensestNeighborhood {
    pub vertex: usize,
    /// `e(G[N(v0)])`.
    pub edges: usize,
    /// `Σ_v 2e(G[N(v)])`.
    pub twice_sum: u64,
    /// `6 t(G)` from the combinatorial triangle counter.
    pub six_triangles: u64,
}

impl DensestNeighborhood {
    pub fn identity_holds(&self) -> bool {
        self.twice_sum == self.six_triangles
    }
}

/// Number of edges inside the open neighborhood of `v`.
pub fn neighborhood_edges(g: &Graph, v: usize) -> usize {
    let nb: Vec<usize> = g.neighbors(v).collect();
    g.edges_within(&nb)
}

/// Vertex maximizing `e(G[N(v)])`, lowest index on ties. Errors when the
/// identity `Σ_v 2e(G[N(v)]) = 6t(G)` fails.
pub fn densest_neighborhood(g: &Graph) -> Result<DensestNeighborhood> {
    if g.n() == 0 {
        return Err(Error::param("n", 0.0, "n >= 1"));
    }
    let mut best = (0, 0);
    let mut twice_sum = 0u64;
    for v in 0..g.n() {
        let e = neighborhood_edges(g, v);
        twice_sum += 2 * e as u64;
        if e > best.1 {
            best = (v, e);
        }
    }
    let six_triangles = 6 * triangle_count(g);
    let out = DensestNeighborhood { vertex: best.0, edges: best.1, twice_sum, six_triangles };
    if !out.identity_holds() {
        return Err(Error::SpectrumDefect {
            what: "neighborhood edge sum differs from 6t(G)",
            value: twice_sum as f64,
            tol: six_triangles as f64,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    DoubleDensity,
    SqrtDensity,
    EarlyExit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IncrementStep {
    pub input_vertices: Vec<usize>,
    pub output_vertices: Vec<usize>,
    pub case: CaseTag,
    pub p0: f64,
    pub p1: f64,
    /// Peeled vertices, in removal order.
    pub peeled: Vec<usize>,
    /// Density of the graph left after peeling.
    pub remainder_density: f64,
    /// Vertex whose neighborhood seeded the sqrt-density candidate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<usize>,
    /// Why both case postconditions failed, for early exits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<alloc::string::String>,
}

impl IncrementStep {
    pub fn n0(&self) -> usize {
        self.input_vertices.len()
    }

    pub fn n1(&self) -> usize {
        self.output_vertices.len()
    }
}

/// Pads `base` with the highest-degree vertices of `pool` (lowest index on
/// ties) until it holds `target` vertices. Returns a sorted set.
fn pad(g: &Graph, base: &[usize], pool: &[usize], target: usize) -> Vec<usize> {
    let mut inside = vec![false; g.n()];
    let mut out: Vec<usize> = base.to_vec();
    for &v in base {
        inside[v] = true;
    }
    let mut rest: Vec<usize> = pool.iter().copied().filter(|&v| !inside[v]).collect();
    rest.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    for v in rest {
        if out.len() >= target {
            break;
        }
        out.push(v);
    }
    out.sort_unstable();
    out
}

fn density_of(g: &Graph, set: &[usize]) -> f64 {
    if set.is_empty() {
        return 0.0;
    }
    2.0 * g.edges_within(set) as f64 / (set.len() * set.len()) as f64
}

/// One density-increment step on `g` (all vertex ids local to `g`).
///
/// Peels at `peel_factor · p₀n₀`. If the remainder has density at most
/// `p₀/4`, the candidate is `R` padded to `⌈n₀/8⌉` vertices; otherwise it is
/// `N(v₀)` for the densest-neighborhood vertex of the remainder, padded from
/// the remainder to `⌊20pn⌋` vertices. When `⌊20pn⌋` would swallow the whole
/// remainder the closed neighborhood `N[v₀]` is padded to `⌈p₀n₀⌉` instead.
/// A candidate is accepted only when its
/// case postcondition holds; if the preferred case fails the other one is
/// tried, and if both fail the step is an early exit that keeps the input.
pub fn increment_step(g: &Graph, kappa: f64, peel_factor: f64) -> Result<IncrementStep> {
    if g.m() == 0 {
        return Err(Error::param("m", 0.0, "at least one edge"));
    }
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(Error::param("kappa", kappa, "kappa in (0, 1]"));
    }
    let n0 = g.n();
    let p0 = edge_density(g);
    let (peeled, rest) = peel_high_degree(g, peel_factor * p0 * n0 as f64)?;
    let remainder = induced_subgraph(g, &rest)?;
    let p = edge_density(&remainder);
    let input_vertices: Vec<usize> = (0..n0).collect();

    let double = || {
        let w = pad(g, &peeled, &input_vertices, n0.div_ceil(8));
        let p1 = density_of(g, &w);
        let ok = 8 * w.len() >= n0 && p1 >= 2.0 * p0;
        (w, p1, ok)
    };
    let sqrt = || -> Result<(Vec<usize>, f64, bool, Option<usize>)> {
        if remainder.m() == 0 {
            return Ok((Vec::new(), 0.0, false, None));
        }
        let best = densest_neighborhood(&remainder)?;
        let mut nb: Vec<usize> = remainder.neighbors(best.vertex).map(|u| rest[u]).collect();
        let wide = (20.0 * p * rest.len() as f64).floor() as usize;
        let size = if wide < rest.len() {
            wide
        } else {
            nb.push(rest[best.vertex]);
            (p0 * n0 as f64).ceil() as usize
        };
        let w = pad(g, &nb, &rest, size);
        let p1 = density_of(g, &w);
        let ok = w.len() as f64 >= p0 * n0 as f64 && p1 >= kappa * p0.sqrt();
        Ok((w, p1, ok, Some(best.vertex).map(|v| rest[v])))
    };

    let step = |case, output_vertices, p1, v0, diagnostics| IncrementStep {
        input_vertices: input_vertices.clone(),
        output_vertices,
        case,
        p0,
        p1,
        peeled: peeled.clone(),
        remainder_density: p,
        v0,
        diagnostics,
    };

    let prefer_double = p <= p0 / 4.0;
    if prefer_double {
        let (w, p1, ok) = double();
        if ok {
            return Ok(step(CaseTag::DoubleDensity, w, p1, None, None));
        }
    }
    let (ws, ps, oks, v0) = sqrt()?;
    if oks {
        return Ok(step(CaseTag::SqrtDensity, ws, ps, v0, None));
    }
    if !prefer_double {
        let (w, p1, ok) = double();
        if ok {
            return Ok(step(CaseTag::DoubleDensity, w, p1, None, None));
        }
    }
    let why = alloc::format!(
        "remainder density {p:.6} vs p0/4 = {:.6}; sqrt candidate density {ps:.6} on {} vertices",
        p0 / 4.0,
        ws.len()
    );
    Ok(step(CaseTag::EarlyExit, input_vertices.clone(), p0, v0, Some(why)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    DensityTarget,
    PreconditionFailed,
    StepCap,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub step: usize,
    pub n_i: usize,
    pub p_i: f64,
    pub case: CaseTag,
    #[serde(rename = "|R|")]
    pub peeled: usize,
    pub potential: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IncrementTrace {
    /// Steps with vertex sets expressed in the original graph's labels.
    pub steps: Vec<IncrementStep>,
    pub termination: Termination,
    pub kappa: f64,
    pub density_target: f64,
    pub regime_cap: f64,
    /// Vertices of the last graph in the sequence.
    pub final_vertices: Vec<usize>,
    pub final_density: f64,
    /// `p³n` never dropped (relative tolerance `1e-9`) across tagged steps
    /// that start at density at most `regime_cap`.
    pub potential_monotone: bool,
}

impl IncrementTrace {
    pub fn rows(&self) -> Vec<TraceRow> {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| TraceRow {
                step: i,
                n_i: s.n0(),
                p_i: s.p0,
                case: s.case,
                peeled: s.peeled.len(),
                potential: potential(s.p0, s.n0()),
            })
            .collect()
    }
}

/// `κ⁶`: below this density a sqrt-density step cannot lower `p³n`, since
/// `κ³ p^{3/2} · p n ≥ p³ n` iff `p ≤ κ⁶`.
pub fn regime_cap(kappa: f64) -> f64 {
    kappa.powi(6)
}

fn map_labels(step: &mut IncrementStep, labels: &[usize]) {
    for set in [&mut step.input_vertices, &mut step.output_vertices, &mut step.peeled] {
        set.iter_mut().for_each(|v| *v = labels[*v]);
    }
    if let Some(v) = step.v0.as_mut() {
        *v = labels[*v];
    }
}

/// Iterates [`increment_step`] until the density reaches `density_target`, a
/// step exits early (or the current graph has no edges), or `step_cap` steps
/// have run.
pub fn increment_loop(g: &Graph, density_target: f64, kappa: f64, step_cap: usize) -> Result<IncrementTrace> {
    if !(density_target > 0.0 && density_target < 1.0) {
        return Err(Error::param("density_target", density_target, "density_target in (0, 1)"));
    }
    if step_cap == 0 {
        return Err(Error::param("step_cap", 0.0, "step_cap >= 1"));
    }
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(Error::param("kappa", kappa, "kappa in (0, 1]"));
    }
    let cap = regime_cap(kappa);
    let mut labels: Vec<usize> = (0..g.n()).collect();
    let mut current = g.clone();
    let mut steps = Vec::new();
    let mut monotone = true;
    let termination = loop {
        if edge_density(&current) >= density_target {
            break Termination::DensityTarget;
        }
        if current.m() == 0 {
            break Termination::PreconditionFailed;
        }
        if steps.len() >= step_cap {
            break Termination::StepCap;
        }
        let mut step = increment_step(&current, kappa, DEFAULT_PEEL_FACTOR)?;
        if step.case == CaseTag::EarlyExit {
            map_labels(&mut step, &labels);
            steps.push(step);
            break Termination::PreconditionFailed;
        }
        let (before, after) = (potential(step.p0, step.n0()), potential(step.p1, step.n1()));
        if step.p0 <= cap && after < before * (1.0 - 1e-9) {
            monotone = false;
        }
        current = induced_subgraph(&current, &step.output_vertices)?;
        map_labels(&mut step, &labels);
        labels = step.output_vertices.clone();
        steps.push(step);
    };
    let final_density = edge_density(&current);
    Ok(IncrementTrace {
        steps,
        termination,
        kappa,
        density_target,
        regime_cap: cap,
        final_vertices: labels,
        final_density,
        potential_monotone: monotone,
    })
}
