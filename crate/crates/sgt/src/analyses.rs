//! Per-graph analyses. Each returns report rows; errors become failing rows.

use serde_json::json;
use sgt_core::graph::{cluster_edit, quadratic_residues, triangle_count, ClusterEditMode};
use sgt_core::increment::{densest_neighborhood, increment_loop, IncrementTrace, Termination};
use sgt_core::probe::{clip, hadamard_identity_check, sample_gaussian_full, truncation_effect_estimate, ClipRule};
use sgt_core::recursion::{
    geometric_grid, key_recursion_floor, surplus_recursion_floor, surplus_recursion_gate, verify_key_recursion,
    verify_solver_against_spectrum, verify_surplus_recursion, RecursionParams,
};
use sgt_core::spectral::{circulant_spectrum, flatness_check, triangle_count_spectral};
use sgt_core::structure::{dichotomy_check, structure_verdict, Outcome};
use sgt_core::surplus::{
    cut_certificate, degeneracy_floor, dual_upper, edwards_floor, energy_certificate, maxcut_exact, maxcut_gray, maxcut_local,
    mixing_upper, sdp_lower_warm,
};
use sgt_core::{Graph, GraphFamily, Spectrum, Verdict};

use crate::params::Params;
use crate::report::Row;

/// A graph with its verified spectrum and the context rows are labelled with.
pub struct Subject<'a> {
    pub suite: &'a str,
    pub label: &'a str,
    pub family: Option<&'a GraphFamily>,
    pub g: &'a Graph,
    pub s: &'a Spectrum,
    pub params: &'a Params,
}

impl Subject<'_> {
    fn row(&self, check: &str, verdict: Verdict) -> Row {
        Row::new(self.suite, self.label, check, verdict)
    }

    fn error(&self, check: &str, err: impl std::fmt::Display) -> Row {
        Row::error(self.suite, self.label, check, err)
    }
}

/// Connection set when `family` is a circulant with a known closed-form spectrum.
pub fn circulant_connection(family: &GraphFamily) -> Option<(usize, Vec<usize>)> {
    match family {
        GraphFamily::Circulant { n, connection } => Some((*n, connection.clone())),
        GraphFamily::Paley { q } => Some((*q, quadratic_residues(*q))),
        GraphFamily::Cycle { n } if *n >= 3 => Some((*n, vec![1, n - 1])),
        GraphFamily::Complete { n } => Some((*n, (1..*n).collect())),
        _ => None,
    }
}

pub fn identities(x: &Subject<'_>) -> Vec<Row> {
    let (g, s) = (x.g, x.s);
    let nf = g.n() as f64;
    let mut rows = Vec::new();

    let trace: f64 = s.lambdas().iter().sum();
    rows.push(x.row("trace", Verdict::from_bool(trace.abs() <= 1e-6)).value(trace.abs()).bound(1e-6));

    let square: f64 = s.lambdas().iter().map(|l| l * l).sum();
    let defect = (square - 2.0 * g.m() as f64).abs();
    rows.push(x.row("square-trace", Verdict::from_bool(defect <= 1e-6 * nf)).value(defect).bound(1e-6 * nf));

    let t = triangle_count(g) as f64;
    let defect = (triangle_count_spectral(s) - t).abs();
    let tol = 1e-6 * t.max(1.0);
    rows.push(x.row("cubic-trace", Verdict::from_bool(defect <= tol)).value(defect).bound(tol));

    if let Some((n, conn)) = x.family.and_then(circulant_connection) {
        let closed = circulant_spectrum(n, &conn);
        let err = closed.iter().zip(s.lambdas()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        rows.push(x.row("circulant-dft", Verdict::from_bool(err <= 1e-8)).value(err).bound(1e-8));
    }

    let flat = flatness_check(s, 1e-8);
    let mut row = x.row("flatness", Verdict::from_bool(flat.pass)).bound(1e-8);
    if !flat.rows.is_empty() {
        row = row.value(flat.max_slack);
    }
    rows.push(row);
    rows
}

/// Threshold for the solver check: the geometric midpoint of its valid range.
fn solver_threshold(params: &RecursionParams, n: usize) -> f64 {
    (n as f64).powf((params.p + params.q) / 2.0)
}

pub fn recursion(x: &Subject<'_>) -> Vec<Row> {
    let s = x.s;
    let prof = s.profile();
    let mut rows = Vec::new();

    let points = x.params.grid_points;
    let grid = geometric_grid(key_recursion_floor(s.lambda_min(), s.n()), s.lambda_max(), points);
    rows.push(match verify_key_recursion(&prof, s.lambda_min(), &grid) {
        Ok(r) => x.row("key-recursion", r.verdict).value(r.worst_ratio).bound(1.0).detail(json!({ "grid_points": r.rows.len() })),
        Err(e) => x.error("key-recursion", e),
    });

    let upper = dual_upper(s).value;
    let gate = surplus_recursion_gate(s.n(), x.params.c);
    let grid = geometric_grid(surplus_recursion_floor(s.n(), x.params.c), s.lambda_max(), points);
    rows.push(match verify_surplus_recursion(&prof, upper, x.params.c, &grid) {
        Ok(r) => x
            .row("surplus-recursion", r.verdict)
            .value(r.worst_ratio)
            .bound(1.0)
            .detail(json!({ "sp_star_upper": upper, "gate": gate, "grid_points": r.rows.len() })),
        Err(e) => x.error("surplus-recursion", e),
    });

    let solvers = [
        ("solver-least-eigenvalue", RecursionParams::least_eigenvalue(x.params.solver_eps)),
        ("solver-increment", RecursionParams::increment(x.params.increment_gamma, x.params.c)),
    ];
    for (check, params) in solvers {
        let out = params.and_then(|p| verify_solver_against_spectrum(s, &p, solver_threshold(&p, s.n())));
        rows.push(match out {
            Ok(c) => x.row(check, c.verdict).value(c.tail).bound(c.bound).detail(c),
            Err(e) => x.error(check, e),
        });
    }
    rows
}

/// Hadamard identity on `probes` Gaussian probes, raw and clipped.
pub fn hadamard(x: &Subject<'_>, seed: u64) -> Vec<Row> {
    let n = x.g.n();
    let tol = x.params.hadamard_tol;
    let mut worst = [0.0f64; 2];
    let mut failures = [0usize; 2];
    for k in 0..x.params.probes as u64 {
        let raw = sample_gaussian_full(n, seed, k);
        let clipped = match clip(&raw, x.params.clip_beta) {
            Ok(q) => q,
            Err(e) => return vec![x.error("hadamard-clipped", e)],
        };
        for (slot, q) in [raw, clipped].iter().enumerate() {
            let c = hadamard_identity_check(x.g, x.s, q, tol);
            let rel = (c.lhs - c.rhs).abs().max((c.lhs - c.quadratic_form).abs()) / (1.0 + c.lhs.abs());
            worst[slot] = worst[slot].max(rel);
            failures[slot] += usize::from(!c.pass);
        }
    }
    ["hadamard-raw", "hadamard-clipped"]
        .iter()
        .enumerate()
        .map(|(slot, check)| {
            x.row(check, Verdict::from_bool(failures[slot] == 0))
                .value(worst[slot])
                .bound(tol)
                .detail(json!({ "probes": x.params.probes, "failures": failures[slot] }))
        })
        .collect()
}

/// Truncation moment bounds at threshold `t` with the clip level `2n⁴/T⁴`.
pub fn truncation(x: &Subject<'_>, t: f64, seed: u64) -> Row {
    match truncation_effect_estimate(x.s, t, x.params.samples, seed, ClipRule::Paper) {
        Ok(r) => {
            let failing: Vec<_> = r.rows.iter().filter(|m| !m.pass).collect();
            let worst_z = r
                .rows
                .iter()
                .filter(|m| m.stderr > 0.0)
                .map(|m| match m.part {
                    sgt_core::probe::MomentPart::Product => (m.bound - m.mean) / m.stderr,
                    sgt_core::probe::MomentPart::Single => (m.mean - m.bound) / m.stderr,
                })
                .fold(f64::NEG_INFINITY, f64::max);
            let mut row = x.row("truncation", Verdict::from_bool(r.pass)).bound(sgt_core::probe::SIGMAS).detail(json!({
                "T": r.t,
                "beta": r.beta,
                "samples": r.samples,
                "subspace_dim": r.subspace_dim,
                "moment_rows": r.rows.len(),
                "failing": failing,
            }));
            if worst_z.is_finite() {
                row = row.value(worst_z);
            }
            row
        }
        Err(e) => x.error("truncation", e),
    }
}

fn close_le(a: f64, b: f64) -> bool {
    a <= b + 1e-6 * a.abs().max(b.abs()).max(1.0)
}

/// Certificates for `sp` and `sp*`. With `exact` and `n` within the sandwich
/// cap, `sp` is computed exactly and checked against an independent sweep.
pub fn surplus(x: &Subject<'_>, exact: bool, seed: u64) -> Vec<Row> {
    let (g, s, p) = (x.g, x.s, x.params);
    let mut rows = Vec::new();
    let edwards = edwards_floor(g).value;
    let degeneracy = degeneracy_floor(g).value;
    let mixing = mixing_upper(g, s).value;

    if exact && g.n() <= p.sandwich_cap {
        match (maxcut_exact(g, p.exact_maxcut_cap), maxcut_gray(g, p.exact_maxcut_cap)) {
            (Ok(cut), Ok(oracle)) => {
                let sp = cut.surplus(g).value();
                let cert = cut_certificate(g, &cut);
                rows.push(
                    x.row("maxcut-oracle", Verdict::from_bool(cut.cut_edges == oracle.cut_edges && cert.verify(g)))
                        .value(cut.cut_edges as f64)
                        .bound(oracle.cut_edges as f64),
                );
                let ok = edwards.max(degeneracy) <= sp + 1e-9 && sp <= mixing + 1e-9;
                rows.push(x.row("sp-sandwich", Verdict::from_bool(ok)).value(sp).bound(mixing).detail(json!({
                    "sp": sp,
                    "edwards": edwards,
                    "degeneracy": degeneracy,
                    "mixing_upper": mixing,
                })));
            }
            (Err(e), _) | (_, Err(e)) => rows.push(x.error("maxcut-oracle", e)),
        }
    } else if exact {
        rows.push(x.row("sp-sandwich", Verdict::NotApplicable).detail(json!({ "reason": "n above sandwich cap" })));
    } else {
        let cut = maxcut_local(g, seed, p.local_restarts);
        let sp = cut.surplus(g).value();
        rows.push(x.row("sp-local", Verdict::from_bool(sp <= mixing + 1e-9)).value(sp).bound(mixing).detail(json!({
            "sp_lower": sp,
            "edwards": edwards,
            "degeneracy": degeneracy,
            "mixing_upper": mixing,
        })));
    }

    let energy = energy_certificate(s).value;
    let dual = dual_upper(s).value;
    match sdp_lower_warm(g, s, p.sdp_iters, p.sdp_tol) {
        Ok(sdp) => {
            let v = sdp.certificate.value;
            let monotone = sdp.history.windows(2).all(|w| w[1] >= w[0]);
            rows.push(
                x.row("sdp-certificate", Verdict::from_bool(monotone && sdp.certificate.verify(g)))
                    .value(v)
                    .detail(json!({ "iterations": sdp.history.len() - 1, "step": sdp.step })),
            );
            rows.push(
                x.row("sp-star-sandwich", Verdict::from_bool(close_le(energy, v) && close_le(v, dual)))
                    .value(v)
                    .bound(dual)
                    .detail(json!({ "energy": energy, "sdp_lower": v, "dual_upper": dual })),
            );
            let neg = (-s.lambda_min()).max(0.0);
            let lhs = neg.powi(3);
            let rhs = 2.0 * g.n() as f64 * v;
            rows.push(x.row("cubic", Verdict::from_bool(lhs <= rhs + 1e-6)).value(lhs).bound(rhs));
        }
        Err(e) => rows.push(x.error("sdp-certificate", e)),
    }
    rows
}

pub fn structure(x: &Subject<'_>, seed: u64) -> Vec<Row> {
    let (g, s, p) = (x.g, x.s, x.params);
    let n = g.n();
    let nf = n as f64;
    let mut rows = Vec::new();

    if n <= p.exact_edit_cap {
        let exact = cluster_edit(g, ClusterEditMode::Exact);
        let pivot = cluster_edit(g, ClusterEditMode::Pivot { seeds: p.pivot_runs, seed });
        rows.push(match (exact, pivot) {
            (Ok(e), Ok(h)) => {
                let union = matches!(x.family, Some(GraphFamily::UnionCliques { .. }));
                let ok = h.edit_count >= e.edit_count && (!union || e.edit_count == 0);
                x.row("cluster-edit", Verdict::from_bool(ok))
                    .value(e.edit_count as f64)
                    .bound(h.edit_count as f64)
                    .detail(json!({ "exact": e.edit_count, "pivot": h.edit_count }))
            }
            (Err(e), _) | (_, Err(e)) => x.error("cluster-edit", e),
        });
    }

    if p.gamma * nf < 1.0 {
        let reason = json!({ "reason": "embedding needs gamma * n >= 1" });
        rows.push(x.row("structure-verdict", Verdict::NotApplicable).detail(reason.clone()));
        rows.push(x.row("dichotomy", Verdict::NotApplicable).detail(reason));
        return rows;
    }

    let verdict = structure_verdict(g, s, &p.structure());
    match &verdict {
        Ok(v) => {
            let (status, census) = match v.outcome {
                Outcome::HypothesisViolated => (Verdict::NotApplicable, None),
                Outcome::EigenWitness => (Verdict::Pass, None),
                Outcome::ClosenessEvidence => {
                    let c = v.census.as_ref().expect("closeness carries a census");
                    (Verdict::Pass, Some(c))
                }
            };
            rows.push(
                x.row("structure-verdict", status)
                    .value(v.hypothesis.tail)
                    .bound(v.hypothesis.bound)
                    .detail(json!({
                        "outcome": v.outcome,
                        "parts": v.parts,
                        "witness_rayleigh": v.witness.as_ref().map(|w| w.rayleigh),
                        "witness_bound": v.witness.as_ref().map(|w| w.bound),
                        "edits": v.edit_certificate.as_ref().map(|e| e.edit_count),
                        "good_cherries": v.cherries.as_ref().map(|c| c.good),
                    })),
            );
            if let Some(c) = census {
                rows.push(
                    x.row("bad-pair-census", Verdict::from_bool(c.within_bound))
                        .value(c.total as f64)
                        .bound(c.bound)
                        .detail(json!({ "small_part": c.small_part, "impure": c.impure, "contradiction": c.contradiction })),
                );
            }
        }
        Err(e) => rows.push(x.error("structure-verdict", e)),
    }

    let delta = p.dichotomy_delta;
    let tail = s.tail_square_mass(p.gamma * nf);
    let gate_open = tail <= delta * nf * nf;
    match dichotomy_check(g, s, p.gamma, p.eta, delta) {
        Ok(d) => {
            let detail = json!({
                "mu": d.mu,
                "good_cherries": d.good_cherries,
                "witness_rayleigh": d.witness.as_ref().map(|w| w.rayleigh),
                "rayleigh_consistent": d.rayleigh_consistent,
            });
            let gated = if gate_open { Verdict::from_bool(d.holds) } else { Verdict::NotApplicable };
            rows.push(x.row("dichotomy-gated", gated).value(tail).bound(delta * nf * nf).detail(detail.clone()));
            rows.push(x.row("dichotomy", Verdict::from_bool(d.holds)).value(d.good_cherries as f64).detail(detail));
        }
        Err(e) => rows.push(x.error("dichotomy", e)),
    }

    if let Some(&GraphFamily::CherryBlowup { m }) = x.family {
        if (5..=20).contains(&m) {
            let bound = -((m + 3) as f64) / 3.0 + 1e-8;
            let rayleigh = verdict.as_ref().ok().and_then(|v| v.witness.as_ref()).map(|w| w.rayleigh);
            let mut row = x.row("cherry-witness", Verdict::from_bool(rayleigh.is_some_and(|r| r <= bound))).bound(bound);
            if let Some(r) = rayleigh {
                row = row.value(r);
            }
            rows.push(row);
        }
    }

    rows
}

/// Loop summary used by rows and by the planted-clique aggregate.
pub fn trace_detail(t: &IncrementTrace) -> serde_json::Value {
    json!({
        "termination": t.termination,
        "steps": t.steps.len(),
        "final_n": t.final_vertices.len(),
        "final_density": t.final_density,
        "regime_cap": t.regime_cap,
        "trace": t.rows(),
    })
}

pub fn increment(x: &Subject<'_>) -> (Vec<Row>, Option<IncrementTrace>) {
    let (g, p) = (x.g, x.params);
    let mut rows = Vec::new();
    rows.push(match densest_neighborhood(g) {
        Ok(d) => x
            .row("neighborhood-identity", Verdict::from_bool(d.identity_holds()))
            .value(d.twice_sum as f64)
            .bound(d.six_triangles as f64),
        Err(e) => x.error("neighborhood-identity", e),
    });
    if g.m() == 0 {
        rows.push(x.row("increment-loop", Verdict::NotApplicable).detail(json!({ "reason": "no edges" })));
        return (rows, None);
    }
    match increment_loop(g, p.density_target, p.kappa, p.step_cap) {
        Ok(t) => {
            rows.push(
                x.row("increment-loop", Verdict::from_bool(t.potential_monotone))
                    .value(t.final_density)
                    .bound(p.density_target)
                    .detail(trace_detail(&t)),
            );
            (rows, Some(t))
        }
        Err(e) => {
            rows.push(x.error("increment-loop", e));
            (rows, None)
        }
    }
}

pub fn reached_target(t: &IncrementTrace) -> bool {
    t.termination == Termination::DensityTarget
}
