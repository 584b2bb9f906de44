//! Finite checks of the threshold-sum recursions and the recursion solver.
//!
//! All checks report a tri-state [`Verdict`]: a grid point or spectrum that
//! falls outside an inequality's hypotheses is never counted as a pass.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{energy, Spectrum, ThresholdProfile};
use crate::Verdict;

/// Constant `c` of the surplus recursion.
pub const SURPLUS_C: f64 = 1.0 / 99.0;

/// Default number of geometric grid points.
pub const DEFAULT_GRID_POINTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecursionRow {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "S_T")]
    pub s_t: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecursionReport {
    pub rows: Vec<RecursionRow>,
    pub verdict: Verdict,
    /// Largest `lhs / rhs` over the grid (0 when every left side vanishes).
    pub worst_ratio: f64,
}

/// `lhs ≤ rhs` up to relative `1e-6` plus absolute `1e-9 · n²`.
pub fn within_tolerance(lhs: f64, rhs: f64, n: usize) -> bool {
    let n2 = (n * n) as f64;
    lhs <= rhs + 1e-6 * lhs.abs().max(rhs.abs()) + 1e-9 * n2
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else if rhs == 0.0 {
        f64::INFINITY
    } else {
        lhs / rhs
    }
}

/// Checks `S_T² ≤ factor · n · S_{T² / (divisor · n)}` at every grid point.
fn check_grid(prof: &ThresholdProfile<'_>, grid: &[f64], factor: f64, divisor: f64) -> RecursionReport {
    let n = prof.n();
    let nf = n as f64;
    let rows: Vec<RecursionRow> = grid
        .iter()
        .map(|&t| {
            let s_t = prof.sum(t);
            let rhs = factor * nf * prof.sum(t * t / (divisor * nf));
            let lhs = s_t * s_t;
            RecursionRow { t, s_t, rhs, ratio: ratio(lhs, rhs), pass: within_tolerance(lhs, rhs, n) }
        })
        .collect();
    let worst_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let verdict = Verdict::from_bool(rows.iter().all(|r| r.pass));
    RecursionReport { rows, verdict, worst_ratio }
}

/// `points` thresholds spaced geometrically from `lo` to `hi`.
///
/// A zero floor starts the grid at 1; if `hi` does not exceed the start the
/// grid is the single start point.
pub fn geometric_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let start = if lo > 0.0 { lo } else { 1.0 };
    if points <= 1 || hi <= start {
        return alloc::vec![start];
    }
    let step = (hi / start).ln() / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|k| start * (step * k as f64).exp()).collect();
    grid[0] = start;
    grid[points - 1] = hi;
    grid
}

/// Smallest threshold at which the key recursion is claimed: `4 · max(−λ_n, 0) · √n`.
pub fn key_recursion_floor(lambda_n: f64, n: usize) -> f64 {
    4.0 * (-lambda_n).max(0.0) * (n as f64).sqrt()
}

/// Default grid for [`verify_key_recursion`].
pub fn key_recursion_grid(prof: &ThresholdProfile<'_>) -> Vec<f64> {
    geometric_grid(key_recursion_floor(prof.lambda_min(), prof.n()), prof.lambda_max(), DEFAULT_GRID_POINTS)
}

/// Checks `S_T² ≤ 2n · S_{T²/4n}` on `grid`.
pub fn verify_key_recursion(prof: &ThresholdProfile<'_>, lambda_n: f64, grid: &[f64]) -> Result<RecursionReport> {
    let floor = key_recursion_floor(lambda_n, prof.n());
    if let Some(&t) = grid.iter().find(|&&t| !(t >= floor * (1.0 - 1e-9))) {
        return Err(Error::BelowValidityFloor { t, floor });
    }
    Ok(check_grid(prof, grid, 2.0, 4.0))
}

/// Smallest threshold at which the surplus recursion is claimed: `n^{1−2c}`.
pub fn surplus_recursion_floor(n: usize, c: f64) -> f64 {
    (n as f64).powf(1.0 - 2.0 * c)
}

/// Largest certified `sp*` upper bound that opens the surplus-recursion gate: `½ n^{1+c}`.
pub fn surplus_recursion_gate(n: usize, c: f64) -> f64 {
    0.5 * (n as f64).powf(1.0 + c)
}

pub fn surplus_recursion_grid(prof: &ThresholdProfile<'_>, c: f64) -> Vec<f64> {
    geometric_grid(surplus_recursion_floor(prof.n(), c), prof.lambda_max(), DEFAULT_GRID_POINTS)
}

/// Checks `S_T² ≤ 250n · S_{T²/8n}` on `grid`.
///
/// The inequality is only claimed when `sp*(G) ≤ ½ n^{1+c}`; `sp_star_upper`
/// must be a certified upper bound on `sp*`. If it exceeds the gate the
/// report is `NotApplicable` with no rows.
pub fn verify_surplus_recursion(
    prof: &ThresholdProfile<'_>,
    sp_star_upper: f64,
    c: f64,
    grid: &[f64],
) -> Result<RecursionReport> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::param("c", c, "a constant in (0, 1/2)"));
    }
    let floor = surplus_recursion_floor(prof.n(), c);
    if let Some(&t) = grid.iter().find(|&&t| !(t >= floor * (1.0 - 1e-9))) {
        return Err(Error::BelowValidityFloor { t, floor });
    }
    if !(sp_star_upper <= surplus_recursion_gate(prof.n(), c)) {
        return Ok(RecursionReport { rows: Vec::new(), verdict: Verdict::NotApplicable, worst_ratio: 0.0 });
    }
    Ok(check_grid(prof, grid, 250.0, 8.0))
}

/// Parameters of the generic recursion solver.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RecursionParams {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

impl RecursionParams {
    pub fn new(p: f64, q: f64, r: f64, c: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::param("p", p, "p in (0, 1)"));
        }
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::param("r", r, "r in (0, 1)"));
        }
        if !(q > 1.0 && q < 2.0) {
            return Err(Error::param("q", q, "q in (1, 2)"));
        }
        if !(c >= 1.0) {
            return Err(Error::param("C", c, "C >= 1"));
        }
        if !(q + p.max(r) < 2.0) {
            return Err(Error::param("q", q, "q + max(p, r) < 2"));
        }
        Ok(RecursionParams { p, q, r, c })
    }

    /// `s = (q − 1) / (1 − r)`.
    pub fn s(&self) -> f64 {
        (self.q - 1.0) / (1.0 - self.r)
    }

    /// Parameters for graphs of small surplus: `((2+c)/3, 1+c, 1−2c, 250)`.
    pub fn surplus(c: f64) -> Result<Self> {
        Self::new((2.0 + c) / 3.0, 1.0 + c, 1.0 - 2.0 * c, 250.0)
    }

    /// Parameters for the density-increment regime: `((2+γ)/3, 1+γ, 1−2c, 250)`.
    pub fn increment(gamma: f64, c: f64) -> Result<Self> {
        Self::new((2.0 + gamma) / 3.0, 1.0 + gamma, 1.0 - 2.0 * c, 250.0)
    }

    /// Parameters for the least-eigenvalue regime: `(1/4−ε, 5/4−ε, 3/4−ε, 4)`.
    pub fn least_eigenvalue(eps: f64) -> Result<Self> {
        Self::new(0.25 - eps, 1.25 - eps, 0.75 - eps, 4.0)
    }
}

/// Closed-form tail bound `(2C^{1+s} / (1−s)) · n^{1+s} · H^{1−s}`.
pub fn solve_recursion(params: &RecursionParams, n: usize, h: f64) -> Result<f64> {
    let nf = n as f64;
    let lo = nf.powf(params.p + params.q - 1.0);
    if !(h >= lo && h <= nf) {
        return Err(Error::param("H", h, "H in [n^(p+q-1), n]"));
    }
    let s = params.s();
    Ok(2.0 * params.c.powf(1.0 + s) / (1.0 - s) * nf.powf(1.0 + s) * h.powf(1.0 - s))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverCheck {
    pub verdict: Verdict,
    /// `−λ_n ≤ C n^p`.
    pub least_eigenvalue_ok: bool,
    /// `Σ|λ_i| ≤ C n^q`.
    pub energy_ok: bool,
    /// `S_T² ≤ C n S_{T²/Cn}` along `T_1 = C n^r`, `T_{k+1} = (C n T_k)^{1/2}`.
    pub recursion_ok: bool,
    /// `n^{1+s} H^{1−s} ≥ C² n^{p+q}`, which absorbs the negative-eigenvalue mass.
    pub size_ok: bool,
    pub tail: f64,
    pub bound: f64,
    pub slack: f64,
}

/// Compares `Σ_{i∉L_H} λ_i²` with [`solve_recursion`], gated on the solver's
/// hypotheses.
///
/// Besides the three spectral hypotheses the gate checks the finite-`n`
/// condition the solver needs to fold the negative eigenvalues into its
/// bound. The recursion hypothesis is checked exactly at the thresholds the
/// solver's induction visits, so an open gate makes the conclusion a theorem.
pub fn verify_solver_against_spectrum(s: &Spectrum, params: &RecursionParams, h: f64) -> Result<SolverCheck> {
    let bound = solve_recursion(params, s.n(), h)?;
    let n = s.n();
    let nf = n as f64;
    let cn = params.c * nf;
    let prof = s.profile();
    let tail = s.tail_square_mass(h);

    let least_eigenvalue_ok = -s.lambda_min() <= params.c * nf.powf(params.p);
    let energy_ok = energy(s) <= params.c * nf.powf(params.q);
    let mut recursion_ok = true;
    let mut t = params.c * nf.powf(params.r);
    for _ in 0..256 {
        let lhs = prof.sum(t).powi(2);
        let rhs = cn * prof.sum(t * t / cn);
        if !within_tolerance(lhs, rhs, n) {
            recursion_ok = false;
            break;
        }
        if t > prof.lambda_max() || t >= h {
            break;
        }
        let next = (cn * t).sqrt();
        if next <= t * (1.0 + 1e-12) {
            break;
        }
        t = next;
    }
    let sv = params.s();
    let size_ok = nf.powf(1.0 + sv) * h.powf(1.0 - sv) >= params.c * params.c * nf.powf(params.p + params.q);

    let verdict = if least_eigenvalue_ok && energy_ok && recursion_ok && size_ok {
        Verdict::from_bool(within_tolerance(tail, bound, n))
    } else {
        Verdict::NotApplicable
    };
    Ok(SolverCheck { verdict, least_eigenvalue_ok, energy_ok, recursion_ok, size_ok, tail, bound, slack: bound - tail })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TopConcentration {
    pub verdict: Verdict,
    /// `λ_n ≥ −n^{1/4−ε}`.
    pub gate_open: bool,
    /// `H = (εδ)^{1/ε} · n`.
    pub h: f64,
    /// `Σ_{λ_i ≤ H} λ_i²`.
    pub mass: f64,
    /// `δ n²`.
    pub bound: f64,
}

/// Checks `Σ_{λ_i ≤ (εδ)^{1/ε} n} λ_i² ≤ δ n²` when `λ_n ≥ −n^{1/4−ε}`.
///
/// For small `ε` the threshold `H` underflows to essentially zero, so the
/// check measures the non-positive part of the spectrum and is only
/// meaningful for large `n`.
pub fn check_top_concentration(s: &Spectrum, eps: f64, delta: f64) -> Result<TopConcentration> {
    if !(eps > 0.0 && eps < 0.01) {
        return Err(Error::param("eps", eps, "eps in (0, 0.01)"));
    }
    if !(delta > 0.0 && delta < 0.01) {
        return Err(Error::param("delta", delta, "delta in (0, 0.01)"));
    }
    let nf = s.n() as f64;
    let h = (eps * delta).powf(1.0 / eps) * nf;
    let mass: f64 = s.lambdas().iter().filter(|&&l| l <= h).map(|l| l * l).sum();
    let bound = delta * nf * nf;
    let gate_open = s.lambda_min() >= -nf.powf(0.25 - eps);
    let verdict = if gate_open { Verdict::from_bool(mass <= bound) } else { Verdict::NotApplicable };
    Ok(TopConcentration { verdict, gate_open, h, mass, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily};
    use crate::spectral::decompose;
    use approx::assert_abs_diff_eq;

    fn spectrum(f: GraphFamily) -> Spectrum {
        decompose(&generate(&f).unwrap(), None).unwrap()
    }

    #[test]
    fn complete_graph_at_the_floor() {
        let s = spectrum(GraphFamily::Complete { n: 100 });
        let prof = s.profile();
        assert_abs_diff_eq!(key_recursion_floor(s.lambda_min(), 100), 40.0, epsilon = 1e-9);
        let r = verify_key_recursion(&prof, s.lambda_min(), &[40.0]).unwrap();
        assert_abs_diff_eq!(r.rows[0].s_t, 99.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.rows[0].rhs, 200.0 * 99.0, epsilon = 1e-6);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(matches!(
            verify_key_recursion(&prof, s.lambda_min(), &[39.0]),
            Err(Error::BelowValidityFloor { .. })
        ));
    }

    #[test]
    fn empty_graph_passes_trivially() {
        let s = spectrum(GraphFamily::Empty { n: 10 });
        let prof = s.profile();
        let grid = key_recursion_grid(&prof);
        assert_eq!(verify_key_recursion(&prof, s.lambda_min(), &grid).unwrap().verdict, Verdict::Pass);
        let grid = surplus_recursion_grid(&prof, SURPLUS_C);
        assert_eq!(verify_surplus_recursion(&prof, 0.0, SURPLUS_C, &grid).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn surplus_gate_rejects() {
        let s = spectrum(GraphFamily::CompleteBipartite { a: 10, b: 10 });
        let prof = s.profile();
        let grid = surplus_recursion_grid(&prof, SURPLUS_C);
        let r = verify_surplus_recursion(&prof, 1e6, SURPLUS_C, &grid).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(r.rows.is_empty());
    }

    #[test]
    fn geometric_grid_endpoints() {
        let g = geometric_grid(2.0, 64.0, 6);
        assert_eq!(g.len(), 6);
        assert_eq!(g[0], 2.0);
        assert_eq!(g[5], 64.0);
        assert_abs_diff_eq!(g[1], 4.0, epsilon = 1e-12);
        assert_eq!(geometric_grid(0.0, 0.5, 32), alloc::vec![1.0]);
    }

    #[test]
    fn solver_exponents() {
        let c = 1.0 / 99.0;
        assert_abs_diff_eq!(RecursionParams::surplus(c).unwrap().s(), 0.5, epsilon = 1e-12);
        let gamma = 1.0 / 200.0;
        let p = RecursionParams::increment(gamma, c).unwrap();
        assert_abs_diff_eq!(p.s(), 99.0 / 400.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.s(), gamma / (2.0 * c), epsilon = 1e-12);
        let eps = 0.01;
        assert_abs_diff_eq!(RecursionParams::least_eigenvalue(eps).unwrap().s(), 0.24 / 0.26, epsilon = 1e-12);
    }

    #[test]
    fn solver_rejects_bad_input() {
        assert!(RecursionParams::new(0.5, 1.6, 0.5, 1.0).is_err());
        assert!(RecursionParams::new(0.5, 0.9, 0.5, 1.0).is_err());
        assert!(RecursionParams::new(0.5, 1.2, 0.5, 0.5).is_err());
        let p = RecursionParams::surplus(SURPLUS_C).unwrap();
        assert!(solve_recursion(&p, 100, 1000.0).is_err());
        assert!(solve_recursion(&p, 100, 1.0).is_err());
    }

    #[test]
    fn solver_against_complete_graph() {
        // K_n has λ = (n−1, −1, …): energy 2(n−1), −λ_n = 1, tail below n−1 is n−1.
        let n = 64;
        let s = spectrum(GraphFamily::Complete { n });
        let params = RecursionParams::new(0.5, 1.2, 0.5, 1.0).unwrap();
        let h = (n as f64) * 0.9;
        let r = verify_solver_against_spectrum(&s, &params, h).unwrap();
        assert!(r.least_eigenvalue_ok && r.energy_ok && r.recursion_ok && r.size_ok);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_abs_diff_eq!(r.tail, (n - 1) as f64, epsilon = 1e-8);
    }

    #[test]
    fn top_concentration_gates() {
        let s = spectrum(GraphFamily::Empty { n: 8 });
        assert_eq!(check_top_concentration(&s, 0.005, 0.005).unwrap().verdict, Verdict::Pass);
        let s = spectrum(GraphFamily::CompleteBipartite { a: 10, b: 10 });
        assert_eq!(check_top_concentration(&s, 0.005, 0.005).unwrap().verdict, Verdict::NotApplicable);
        let s = spectrum(GraphFamily::UnionCliques { sizes: alloc::vec![100, 100] });
        let r = check_top_concentration(&s, 0.005, 0.009).unwrap();
        assert!(r.gate_open);
        assert_abs_diff_eq!(r.mass, 198.0, epsilon = 1e-6);
        assert_eq!(r.verdict, Verdict::Pass);
    }
}
