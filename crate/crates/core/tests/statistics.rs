use sgt_core::graph::{generate, GraphFamily};
use sgt_core::linalg::dot;
use sgt_core::probe::{hadamard_span, orthonormal_span, sample_gaussian};
use sgt_core::rng::normal_vector;
use sgt_core::spectral::decompose;
use sgt_core::surplus::{maxcut_exact, maxcut_local, EXACT_MAXCUT_CAP};

const SAMPLES: u64 = 10_000;

/// For a standard Gaussian `q` on a subspace `W`, `E⟨q, u⟩² = ‖P_W u‖²`.
fn check_second_moments(w: &sgt_core::probe::Subspace, seed: u64) {
    let n = w.n;
    for t in 0..4 {
        let u = normal_vector(seed ^ 0xabcd, t, n);
        let expect = w.projection_norm_sq(&u);
        let mut acc = 0.0;
        for k in 0..SAMPLES {
            let q = sample_gaussian(w, seed, k).unwrap();
            acc += dot(&q.entries, &u).powi(2);
        }
        let mean = acc / SAMPLES as f64;
        assert!((mean - expect).abs() <= 0.05 * expect, "mean {mean} vs {expect}");
    }
}

#[test]
fn gaussian_second_moments_on_random_subspace() {
    let candidates: Vec<Vec<f64>> = (0..5).map(|i| normal_vector(11, i, 20)).collect();
    let w = orthonormal_span(20, candidates, 1e-10);
    assert_eq!(w.dim(), 5);
    check_second_moments(&w, 3);
}

#[test]
fn gaussian_second_moments_on_hadamard_span() {
    let g = generate(&GraphFamily::Petersen).unwrap();
    let s = decompose(&g, None).unwrap();
    let w = hadamard_span(&s, 1.5, None).unwrap();
    assert!(w.dim() > 0 && w.dim() < 10);
    check_second_moments(&w, 5);
}

#[test]
fn local_search_usually_finds_the_maximum_cut() {
    let mut hits = 0;
    let total = 200;
    for i in 0..total {
        let n = 4 + (i % 13) as usize;
        let p = 0.2 + 0.6 * ((i * 37 % 100) as f64 / 100.0);
        let g = generate(&GraphFamily::ErdosRenyi { n, p, seed: 1000 + i }).unwrap();
        let local = maxcut_local(&g, i, 32);
        assert!(2 * local.cut_edges >= g.m());
        if local.cut_edges == maxcut_exact(&g, EXACT_MAXCUT_CAP).unwrap().cut_edges {
            hits += 1;
        }
    }
    assert!(hits * 100 >= 95 * total, "{hits}/{total}");
}
