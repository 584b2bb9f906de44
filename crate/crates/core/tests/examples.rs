//! Worked examples, each checked against an oracle computed here rather than
//! by the library.

use approx::assert_abs_diff_eq;
use sgt_core::graph::{
    cherry_count, cluster_edit, degeneracy, density, generate, induced_subgraph, quadratic_residues, triangle_count,
    ClusterEditMode, Graph, GraphFamily,
};
use sgt_core::increment::{densest_neighborhood, increment_loop, increment_step, CaseTag, Termination, DEFAULT_KAPPA};
use sgt_core::probe::{
    clip, hadamard_identity_check, hadamard_span, sample_gaussian, truncation_effect_estimate, ClipRule, ProbeVector,
};
use sgt_core::recursion::{
    check_top_concentration, solve_recursion, verify_key_recursion, verify_solver_against_spectrum,
    verify_surplus_recursion, surplus_recursion_grid, RecursionParams, SURPLUS_C,
};
use sgt_core::spectral::{
    decompose, embedding_vectors, energy, flatness_check, residual_gram_mass, triangle_count_spectral, Spectrum,
};
use sgt_core::structure::{
    bad_pair_census, classify_pairs, find_eigen_witness, spectral_partition, structure_verdict, Outcome,
    StructureParams,
};
use sgt_core::surplus::{
    cubic_certificate, degeneracy_floor, dual_upper, edwards_floor, energy_certificate, maxcut_exact, maxcut_local,
    mixing_upper, monotonicity_check, sdp_lower, sdp_lower_warm, SdpOptions, EXACT_MAXCUT_CAP,
};
use sgt_core::Verdict;

fn family(f: GraphFamily) -> Graph {
    generate(&f).unwrap()
}

fn spec(g: &Graph) -> Spectrum {
    decompose(g, None).unwrap()
}

fn k(n: usize) -> Graph {
    family(GraphFamily::Complete { n })
}

/// Cut size maximized over all `2^(n-1)` sides, by plain enumeration.
fn brute_maxcut(g: &Graph) -> usize {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u64..1 << n.saturating_sub(1))
        .map(|mask| edges.iter().filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1)).count())
        .max()
        .unwrap_or(0)
}

/// Minimum edit count over all set partitions (restricted growth strings).
fn brute_cluster_edit(g: &Graph) -> usize {
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut best = usize::MAX;
    fn rec(g: &Graph, i: usize, label: &mut Vec<usize>, max: usize, best: &mut usize) {
        let n = g.n();
        if i == n {
            let mut cost = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) != (label[u] == label[v]) {
                        cost += 1;
                    }
                }
            }
            *best = (*best).min(cost);
            return;
        }
        for l in 0..=max + 1 {
            label[i] = l;
            rec(g, i + 1, label, max.max(l), best);
        }
    }
    if n == 0 {
        return 0;
    }
    rec(g, 1, &mut label, 0, &mut best);
    best
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn assert_spectrum(s: &Spectrum, expect: &[f64]) {
    let expect = sorted_desc(expect.to_vec());
    assert_eq!(s.lambdas().len(), expect.len());
    for (a, b) in s.lambdas().iter().zip(&expect) {
        assert_abs_diff_eq!(*a, *b, epsilon = 1e-9);
    }
}

#[test]
fn generators() {
    let t = family(GraphFamily::Turan { n: 6, r: 2 });
    assert_eq!(t.m(), 9);
    assert!(t.degrees().iter().all(|&d| d == 3));
    assert_eq!(brute_maxcut(&t), t.m());
    assert_eq!(t.edges().count(), 9);

    let u = family(GraphFamily::UnionCliques { sizes: vec![3, 2] });
    assert_eq!(u.m(), 4);
    assert!(!u.has_edge(2, 3));

    let residues: Vec<usize> = (1..5).map(|x| x * x % 5).collect();
    assert!(residues.contains(&1) && residues.contains(&4));
    let mut qr = quadratic_residues(5);
    qr.sort_unstable();
    assert_eq!(qr, vec![1, 4]);
    let p = family(GraphFamily::Paley { q: 5 });
    assert_eq!(p.m(), 5);
    assert!(p.degrees().iter().all(|&d| d == 2));
    assert_eq!(triangle_count(&p), 0);
}

#[test]
fn induced_subgraphs() {
    assert_eq!(induced_subgraph(&k(4), &[0, 1, 2]).unwrap(), k(3));
    let p3 = family(GraphFamily::Path { n: 3 });
    assert_eq!(induced_subgraph(&p3, &[0, 2]).unwrap(), Graph::empty(2));
    let pet = family(GraphFamily::Petersen);
    let nb: Vec<usize> = pet.neighbors(0).collect();
    assert_eq!(nb.len(), 3);
    for &a in &nb {
        for &b in &nb {
            assert!(!pet.has_edge(a, b));
        }
    }
    assert_eq!(induced_subgraph(&pet, &nb).unwrap().m(), 0);
}

#[test]
fn counts() {
    assert_eq!(triangle_count(&k(4)), 4);
    assert_eq!(triangle_count(&family(GraphFamily::Cycle { n: 5 })), 0);
    assert_eq!(triangle_count(&family(GraphFamily::CompleteBipartite { a: 3, b: 3 })), 0);
    assert_eq!(cherry_count(&family(GraphFamily::Path { n: 3 })), 1);
    assert_eq!(cherry_count(&family(GraphFamily::UnionCliques { sizes: vec![5, 3, 1, 4] })), 0);
    assert_eq!(cherry_count(&family(GraphFamily::Star { leaves: 3 })), 3);
    assert_eq!(degeneracy(&k(4)), 3);
    assert_eq!(degeneracy(&family(GraphFamily::Path { n: 7 })), 1);
    assert_eq!(degeneracy(&family(GraphFamily::Star { leaves: 5 })), 1);
    assert_eq!(degeneracy(&family(GraphFamily::Cycle { n: 5 })), 2);
    assert_abs_diff_eq!(density(&k(4)).unwrap(), 0.75);
    assert_abs_diff_eq!(density(&Graph::empty(10)).unwrap(), 0.0);
    assert_abs_diff_eq!(density(&family(GraphFamily::CompleteBipartite { a: 5, b: 5 })).unwrap(), 0.5);
}

#[test]
fn cluster_editing_against_partition_enumeration() {
    let p3 = family(GraphFamily::Path { n: 3 });
    assert_eq!(brute_cluster_edit(&p3), 1);
    assert_eq!(cluster_edit(&p3, ClusterEditMode::Exact).unwrap().edit_count, 1);
    assert_eq!(cluster_edit(&k(6), ClusterEditMode::Exact).unwrap().edit_count, 0);
    // A 5-cycle has no triangle, so any part with three or more vertices
    // needs at least one added edge per missing pair; enumeration gives 3.
    let c5 = family(GraphFamily::Cycle { n: 5 });
    assert_eq!(brute_cluster_edit(&c5), 3);
    assert_eq!(cluster_edit(&c5, ClusterEditMode::Exact).unwrap().edit_count, 3);
    for seed in 0..6 {
        let g = family(GraphFamily::ErdosRenyi { n: 8, p: 0.5, seed });
        assert_eq!(cluster_edit(&g, ClusterEditMode::Exact).unwrap().edit_count, brute_cluster_edit(&g));
    }
}

#[test]
fn spectra() {
    assert_spectrum(&spec(&k(4)), &[3.0, -1.0, -1.0, -1.0]);
    assert_spectrum(&spec(&family(GraphFamily::CompleteBipartite { a: 3, b: 3 })), &[3.0, 0.0, 0.0, 0.0, 0.0, -3.0]);
    let c8: Vec<f64> = (0..8).map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 8.0).cos()).collect();
    assert_spectrum(&spec(&family(GraphFamily::Cycle { n: 8 })), &c8);
    let r2 = 2f64.sqrt();
    assert_spectrum(&spec(&family(GraphFamily::Cycle { n: 8 })), &[2.0, r2, r2, 0.0, 0.0, -r2, -r2, -2.0]);

    for n in [2, 5, 9] {
        assert_abs_diff_eq!(energy(&spec(&k(n))), 2.0 * (n as f64 - 1.0), epsilon = 1e-9);
    }
    assert_eq!(energy(&spec(&Graph::empty(4))), 0.0);
    assert_abs_diff_eq!(energy(&spec(&family(GraphFamily::CompleteBipartite { a: 3, b: 3 }))), 6.0, epsilon = 1e-9);

    let s = spec(&k(4));
    let prof = s.profile();
    assert_eq!(prof.level_set(2.0), 0..1);
    assert_abs_diff_eq!(prof.sum(2.0), 3.0, epsilon = 1e-9);
    assert_abs_diff_eq!(prof.sum(0.0), energy(&s) / 2.0, epsilon = 1e-9);
    assert_eq!(prof.sum(3.5), 0.0);
    assert_eq!(prof.level_size(3.5), 0);

    assert_abs_diff_eq!(triangle_count_spectral(&s), (27.0 - 3.0) / 6.0, epsilon = 1e-9);
    assert_abs_diff_eq!(triangle_count_spectral(&spec(&family(GraphFamily::Cycle { n: 5 }))), 0.0, epsilon = 1e-9);
}

#[test]
fn flatness_and_embeddings() {
    let s = spec(&k(4));
    let f = flatness_check(&s, 1e-9);
    assert_abs_diff_eq!(f.rows[0].sup_norm, 0.5, epsilon = 1e-12);
    assert_abs_diff_eq!(f.rows[0].bound, 2.0 / 3.0, epsilon = 1e-12);
    let b = spec(&family(GraphFamily::CompleteBipartite { a: 3, b: 3 }));
    let f = flatness_check(&b, 1e-9);
    assert_abs_diff_eq!(f.rows[0].sup_norm, 1.0 / 6f64.sqrt(), epsilon = 1e-12);
    assert_abs_diff_eq!(f.rows[0].bound, 6f64.sqrt() / 3.0, epsilon = 1e-12);
    assert_eq!(f.rows.len(), 2);

    let e = embedding_vectors(&s, 0.5).unwrap();
    assert_eq!(e.indices, vec![0]);
    assert!(e.rows.iter().all(|h| (h[0] - 3f64.sqrt() / 2.0).abs() < 1e-12));
    let e = embedding_vectors(&spec(&Graph::empty(5)), 0.5).unwrap();
    assert_eq!(e.dim(), 0);
    let e = embedding_vectors(&b, 0.4).unwrap();
    assert!(e.rows.iter().all(|h| (h[0] - 0.5f64.sqrt()).abs() < 1e-12));

    assert_abs_diff_eq!(residual_gram_mass(&s, &[0]), 3.0, epsilon = 1e-9);
    assert_abs_diff_eq!(residual_gram_mass(&s, &[]), 12.0, epsilon = 1e-9);
    assert_abs_diff_eq!(residual_gram_mass(&b, &[0]), 9.0, epsilon = 1e-9);
}

#[test]
fn key_recursion_on_complete_graph() {
    let s = spec(&k(100));
    let prof = s.profile();
    assert_abs_diff_eq!(prof.sum(40.0), 99.0, epsilon = 1e-8);
    assert_abs_diff_eq!(prof.sum(40.0 * 40.0 / 400.0), 99.0, epsilon = 1e-8);
    let r = verify_key_recursion(&prof, s.lambda_min(), &[40.0]).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_abs_diff_eq!(r.rows[0].s_t, 99.0, epsilon = 1e-8);
    assert_abs_diff_eq!(r.rows[0].rhs, 200.0 * 99.0, epsilon = 1e-6);
    assert!(verify_key_recursion(&prof, s.lambda_min(), &[39.0]).is_err());

    let e = spec(&Graph::empty(6));
    assert_ne!(verify_key_recursion(&e.profile(), 0.0, &[1.0, 3.0]).unwrap().verdict, Verdict::Fail);
}

#[test]
fn key_recursion_on_random_graphs() {
    for seed in 0..100 {
        let g = family(GraphFamily::ErdosRenyi { n: 100, p: 0.5, seed });
        let s = spec(&g);
        let prof = s.profile();
        let grid = sgt_core::recursion::key_recursion_grid(&prof);
        let r = verify_key_recursion(&prof, s.lambda_min(), &grid).unwrap();
        assert!(r.rows.iter().all(|row| row.pass), "seed {seed}");
    }
}

#[test]
fn surplus_recursion_examples() {
    let g = family(GraphFamily::UnionCliques { sizes: vec![4; 25] });
    let s = spec(&g);
    let upper = dual_upper(&s).value;
    assert_abs_diff_eq!(upper, 50.0, epsilon = 1e-8);
    let grid = surplus_recursion_grid(&s.profile(), SURPLUS_C);
    let r = verify_surplus_recursion(&s.profile(), upper, SURPLUS_C, &grid).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);

    let b = spec(&family(GraphFamily::CompleteBipartite { a: 10, b: 10 }));
    let r = verify_surplus_recursion(&b.profile(), dual_upper(&b).value, SURPLUS_C, &[]).unwrap();
    assert_eq!(r.verdict, Verdict::NotApplicable);
}

#[test]
fn solver_exponents() {
    let p = RecursionParams::surplus(1.0 / 99.0).unwrap();
    assert_abs_diff_eq!(p.s(), 0.5, epsilon = 1e-12);
    let p = RecursionParams::increment(1.0 / 200.0, 1.0 / 99.0).unwrap();
    assert_abs_diff_eq!(p.s(), 99.0 / 400.0, epsilon = 1e-12);
    let p = RecursionParams::least_eigenvalue(0.01).unwrap();
    assert_abs_diff_eq!(p.s(), 0.24 / 0.26, epsilon = 1e-12);

    let check = verify_solver_against_spectrum(&spec(&Graph::empty(20)), &p, 10.0).unwrap();
    assert_eq!(check.tail, 0.0);
    assert!(check.bound >= 0.0);

    // K_n: tail below H is n − 1 (the eigenvalues −1); with C = 1 and the
    // least-eigenvalue exponents every gate opens for moderate n.
    let n = 64;
    let params = RecursionParams::new(0.25, 1.2, 0.75, 2.0).unwrap();
    let s = spec(&k(n));
    let h = 32.0;
    let c = verify_solver_against_spectrum(&s, &params, h).unwrap();
    assert_abs_diff_eq!(c.tail, n as f64 - 1.0, epsilon = 1e-8);
    let sv = (1.2 - 1.0) / (1.0 - 0.75);
    let oracle = 2.0 * 2f64.powf(1.0 + sv) / (1.0 - sv) * (n as f64).powf(1.0 + sv) * h.powf(1.0 - sv);
    assert_abs_diff_eq!(solve_recursion(&params, n, h).unwrap(), oracle, epsilon = 1e-6 * oracle);
    assert_eq!(c.verdict, Verdict::Pass, "{c:?}");
}

#[test]
fn top_concentration_examples() {
    let n = 40;
    let s = spec(&family(GraphFamily::UnionCliques { sizes: vec![n / 2, n / 2] }));
    let r = check_top_concentration(&s, 0.005, 0.005).unwrap();
    assert!(r.gate_open);
    assert_abs_diff_eq!(r.mass, (n - 2) as f64, epsilon = 1e-8);
    assert_eq!(check_top_concentration(&spec(&Graph::empty(5)), 0.005, 0.005).unwrap().verdict, Verdict::Pass);
    let b = spec(&family(GraphFamily::CompleteBipartite { a: n / 2, b: n / 2 }));
    assert_eq!(check_top_concentration(&b, 0.005, 0.005).unwrap().verdict, Verdict::NotApplicable);
}

#[test]
fn hadamard_spans() {
    let w = hadamard_span(&spec(&k(4)), 2.0, None).unwrap();
    assert_eq!(w.dim(), 1);
    assert!(w.basis[0].iter().all(|x| (x.abs() - 0.5).abs() < 1e-12));
    let w = hadamard_span(&spec(&k(2)), 0.5, None).unwrap();
    assert_eq!(w.dim(), 1);
    assert!(w.basis[0].iter().all(|x| (x.abs() - 0.5f64.sqrt()).abs() < 1e-12));
    let w = hadamard_span(&spec(&family(GraphFamily::CompleteBipartite { a: 3, b: 3 })), 2.0, None).unwrap();
    assert_eq!(w.dim(), 1);

    let w = hadamard_span(&spec(&k(5)), 2.0, None).unwrap();
    let q = sample_gaussian(&w, 9, 4).unwrap();
    let ratio = q.entries[0] / w.basis[0][0];
    assert!(q.entries.iter().zip(&w.basis[0]).all(|(a, b)| (a - ratio * b).abs() < 1e-12));
}

#[test]
fn gaussian_norm_matches_dimension() {
    let g = family(GraphFamily::Petersen);
    let w = hadamard_span(&spec(&g), 1.5, None).unwrap();
    let mean: f64 = (0..10_000u64)
        .map(|k| sample_gaussian(&w, 17, k).unwrap().entries.iter().map(|x| x * x).sum::<f64>())
        .sum::<f64>()
        / 10_000.0;
    assert!((mean - w.dim() as f64).abs() <= 0.05 * w.dim() as f64, "{mean} vs {}", w.dim());
}

#[test]
fn clipping_examples() {
    let zero = ProbeVector::from_entries(vec![0.0; 3]);
    assert_eq!(clip(&zero, 2.0).unwrap().entries, vec![0.0; 3]);
    let q = ProbeVector::from_entries(vec![3.0, -1.0]);
    let c = clip(&q, 1.0).unwrap();
    assert_abs_diff_eq!(c.entries[0], 5f64.sqrt(), epsilon = 1e-12);
    assert_abs_diff_eq!(c.entries[1], -1.0, epsilon = 1e-12);
    let q = ProbeVector::from_entries(vec![1.0, -2.0, 0.5, 0.25]);
    let inactive = 1.01 * 2.0 * 2.0 / (1.0f64 + 4.0 + 0.25 + 0.0625).sqrt();
    assert_eq!(clip(&q, inactive).unwrap().entries, q.entries);
}

#[test]
fn hadamard_identity_examples() {
    let g = k(2);
    let s = spec(&g);
    let q = ProbeVector::from_entries(vec![1.0, 0.0]);
    let h = hadamard_identity_check(&g, &s, &q, 1e-9);
    assert_abs_diff_eq!(h.lhs, 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(h.rhs, 0.25 - 0.5 + 0.25, epsilon = 1e-12);
    assert!(h.pass);
    let pet = family(GraphFamily::Petersen);
    let s = spec(&pet);
    let h = hadamard_identity_check(&pet, &s, &ProbeVector::from_entries(vec![0.0; 10]), 1e-9);
    assert_eq!((h.lhs, h.rhs), (0.0, 0.0));
    for i in 0..100 {
        let q = sgt_core::probe::sample_gaussian_full(10, 77, i);
        assert!(hadamard_identity_check(&pet, &s, &q, 1e-6).pass);
    }
}

#[test]
fn truncation_examples() {
    let r = truncation_effect_estimate(&spec(&k(4)), 2.0, 10_000, 1, ClipRule::Paper).unwrap();
    assert!(r.pass, "{r:?}");
    let r = truncation_effect_estimate(&spec(&k(6)), 2.0, 2_000, 2, ClipRule::Disabled).unwrap();
    assert!(r.rows.iter().filter(|row| row.part == sgt_core::probe::MomentPart::Single).all(|row| row.mean <= 1.0 + 4.0 * row.stderr + 1e-12));
    let g = family(GraphFamily::UnionCliques { sizes: vec![8; 8] });
    let s = spec(&g);
    // T = 4√n = 32 lies above λ₁ = 7, so L_T is empty and the call is rejected.
    assert!(truncation_effect_estimate(&s, 4.0 * 8.0, 2_000, 3, ClipRule::Paper).is_err());
    let r = truncation_effect_estimate(&s, s.lambda_max(), 2_000, 3, ClipRule::Paper).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn maxcut_examples() {
    for (g, mc, sp) in [
        (k(4), 4, 1.0),
        (family(GraphFamily::Cycle { n: 5 }), 4, 1.5),
        (family(GraphFamily::CompleteBipartite { a: 3, b: 3 }), 9, 4.5),
        (family(GraphFamily::Petersen), 12, 4.5),
    ] {
        assert_eq!(brute_maxcut(&g), mc);
        let c = maxcut_exact(&g, EXACT_MAXCUT_CAP).unwrap();
        assert_eq!(c.cut_edges, mc);
        assert_eq!(c.surplus(&g).value(), sp);
    }
    assert_eq!(maxcut_local(&k(4), 0, 8).cut_edges, 4);
    assert_eq!(maxcut_local(&family(GraphFamily::Petersen), 0, 32).cut_edges, 12);
}

#[test]
fn certificate_examples() {
    let g4 = k(4);
    let s4 = spec(&g4);
    let b = family(GraphFamily::CompleteBipartite { a: 3, b: 3 });
    let sb = spec(&b);
    let e = spec(&Graph::empty(5));

    assert_abs_diff_eq!(energy_certificate(&s4).value, 1.5, epsilon = 1e-9);
    assert_abs_diff_eq!(energy_certificate(&sb).value, 1.5, epsilon = 1e-9);
    assert_eq!(energy_certificate(&e).value, 0.0);
    assert_abs_diff_eq!(cubic_certificate(&s4).value, 3.0 / 8.0, epsilon = 1e-9);
    assert_abs_diff_eq!(cubic_certificate(&sb).value, 27.0 / 12.0, epsilon = 1e-9);
    assert_eq!(cubic_certificate(&e).value, 0.0);
    assert_abs_diff_eq!(dual_upper(&s4).value, 2.0, epsilon = 1e-9);
    assert_abs_diff_eq!(dual_upper(&sb).value, 9.0, epsilon = 1e-9);
    assert_eq!(dual_upper(&e).value, 0.0);
    assert_abs_diff_eq!(mixing_upper(&g4, &s4).value, 4.0, epsilon = 1e-9);
    let u = family(GraphFamily::UnionCliques { sizes: vec![4; 25] });
    assert_abs_diff_eq!(mixing_upper(&u, &spec(&u)).value, 100.0, epsilon = 1e-8);
    assert_eq!(mixing_upper(&Graph::empty(5), &e).value, 0.0);
    assert_abs_diff_eq!(degeneracy_floor(&g4).value, 0.75, epsilon = 1e-12);
    assert_eq!(degeneracy_floor(&Graph::empty(3)).value, 0.0);
    let c5 = family(GraphFamily::Cycle { n: 5 });
    assert_abs_diff_eq!(edwards_floor(&c5).value, (5.0f64 / 8.0 + 1.0 / 64.0).sqrt() - 1.0 / 8.0, epsilon = 1e-12);
    assert_eq!(edwards_floor(&Graph::empty(3)).value, 0.0);

    let sdp = sdp_lower_warm(&g4, &s4, 200, 1e-10).unwrap();
    assert!(sdp.certificate.value >= 1.5 - 1e-6);
    assert!(sdp.certificate.value <= 2.0 + 1e-6);
    let sdp = sdp_lower(&Graph::empty(4), &SdpOptions::default()).unwrap();
    assert_eq!(sdp.certificate.value, 0.0);
    let sdp = sdp_lower(&b, &SdpOptions::default()).unwrap();
    assert!(sdp.certificate.value >= 4.5 - 1e-6 && sdp.certificate.value <= 9.0 + 1e-6, "{}", sdp.certificate.value);
}

#[test]
fn monotonicity_examples() {
    let r = monotonicity_check(&k(4), &[0, 1, 2], EXACT_MAXCUT_CAP).unwrap();
    assert_eq!((r.sp_g.value(), r.sp_h.value()), (1.0, 0.5));
    assert!(r.sp_pass);
    let pet = family(GraphFamily::Petersen);
    let all: Vec<usize> = (0..10).collect();
    let r = monotonicity_check(&pet, &all, EXACT_MAXCUT_CAP).unwrap();
    assert_eq!(r.sp_g, r.sp_h);
    let r = monotonicity_check(&pet, &[0, 1, 2, 3, 4, 5], EXACT_MAXCUT_CAP).unwrap();
    assert!(r.sp_pass);
    let h = induced_subgraph(&pet, &[0, 1, 2, 3, 4, 5]).unwrap();
    assert_eq!(r.sp_h.twice, 2 * brute_maxcut(&h) as i64 - h.m() as i64);
}

#[test]
fn structure_examples() {
    let (_, p) = spectral_partition(&spec(&k(9)), 0.4, 0.05).unwrap();
    assert_eq!(p.len(), 1);
    let two = family(GraphFamily::UnionCliques { sizes: vec![8, 8] });
    let (_, p) = spectral_partition(&spec(&two), 0.2, 0.05).unwrap();
    assert_eq!(p.len(), 2);
    let c = classify_pairs(&two, &p, 0.125).unwrap();
    assert_eq!(c.edges[0][0], 8 * 7);
    assert_eq!(c.edges[0][1], 0);
    assert!(find_eigen_witness(&two, &p, &classify_pairs(&two, &p, 0.05).unwrap()).unwrap().is_none());

    for m in [10usize, 20] {
        let g = family(GraphFamily::CherryBlowup { m });
        // Oracle: xᵀAx with x = (1/m on A, −1/m on B and C).
        let mut x = vec![0.0; 3 * m];
        for (v, xv) in x.iter_mut().enumerate() {
            *xv = if v < m { 1.0 / m as f64 } else { -1.0 / m as f64 };
        }
        let mut quad = 0.0;
        for (u, v) in g.edges() {
            quad += 2.0 * x[u] * x[v];
        }
        let oracle = quad / x.iter().map(|a| a * a).sum::<f64>();
        assert_abs_diff_eq!(oracle, -((m + 3) as f64) / 3.0, epsilon = 1e-12);
        let v = structure_verdict(&g, &spec(&g), &StructureParams::default()).unwrap();
        assert_eq!(v.outcome, Outcome::EigenWitness);
        let w = v.witness.unwrap();
        assert_abs_diff_eq!(w.rayleigh, oracle, epsilon = 1e-9);
        assert!(w.rayleigh <= -(m as f64) / 10.0);
    }

    let eights = family(GraphFamily::UnionCliques { sizes: vec![8; 8] });
    let s = spec(&eights);
    assert_abs_diff_eq!(s.tail_square_mass(0.1 * 64.0), 56.0, epsilon = 1e-8);
    let params = StructureParams { gamma: 0.1, delta: 0.2, ..StructureParams::default() };
    let v = structure_verdict(&eights, &s, &params).unwrap();
    assert!(v.hypothesis.holds);
    assert!(v.census.unwrap().within_bound);

    let kb = family(GraphFamily::CompleteBipartite { a: 10, b: 10 });
    let v = structure_verdict(&kb, &spec(&kb), &StructureParams { delta: 0.1, ..StructureParams::default() }).unwrap();
    assert_abs_diff_eq!(v.hypothesis.tail, 100.0, epsilon = 1e-8);
    assert_eq!(v.outcome, Outcome::HypothesisViolated);

    let empty = Graph::empty(6);
    let (_, p) = spectral_partition(&spec(&empty), 0.5, 0.05).unwrap();
    let c = classify_pairs(&empty, &p, 0.05).unwrap();
    assert_eq!(bad_pair_census(&empty, &p, &c, 0.1, 1).unwrap().total, 0);
    assert!(find_eigen_witness(&empty, &p, &c).unwrap().is_none());

    let u = family(GraphFamily::UnionCliques { sizes: vec![2, 5, 3] });
    let v = structure_verdict(&u, &spec(&u), &StructureParams::default()).unwrap();
    assert_eq!(v.outcome, Outcome::ClosenessEvidence);
    assert_eq!(v.edit_certificate.unwrap().edit_count, 0);
}

#[test]
fn increment_examples() {
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            edges.push((u, v));
        }
    }
    edges.push((0, 5));
    let g = Graph::from_edges(6, &edges).unwrap();
    let d = densest_neighborhood(&g).unwrap();
    assert_eq!(d.edges, 6);
    assert!(d.vertex < 5);

    let n = 12;
    let step = increment_step(&k(n), DEFAULT_KAPPA, 4.0).unwrap();
    assert!(step.peeled.is_empty());
    assert_eq!(step.case, CaseTag::SqrtDensity);
    let p0 = (n - 1) as f64 / n as f64;
    assert_abs_diff_eq!(step.p0, p0, epsilon = 1e-12);
    assert!(step.p1 >= DEFAULT_KAPPA * p0.sqrt());

    let g = family(GraphFamily::UnionCliques { sizes: [vec![20], vec![1; 200]].concat() });
    let p0 = 2.0 * 190.0 / (220.0 * 220.0);
    let step = increment_step(&g, DEFAULT_KAPPA, 4.0).unwrap();
    assert_abs_diff_eq!(step.p0, p0, epsilon = 1e-12);
    assert!(step.p1 >= DEFAULT_KAPPA * p0.sqrt());
    assert!((0..20).all(|v| step.output_vertices.contains(&v)));

    let fours = family(GraphFamily::UnionCliques { sizes: vec![4; 25] });
    let t = increment_loop(&fours, 0.7, DEFAULT_KAPPA, 64).unwrap();
    assert_eq!(t.termination, Termination::DensityTarget);
    assert_abs_diff_eq!(t.final_density, 0.75, epsilon = 1e-12);
    assert_eq!(t.final_vertices.len(), 4);
}
