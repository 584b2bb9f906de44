//! The deterministic evaluation corpus and the suites run over it.
//!
//! The corpus holds 300 graphs on at most 256 vertices: a fixed list of
//! structured families followed by `G(n, p)` instances whose seeds derive from
//! the corpus seed. Suites fan out over graphs on a rayon pool; rows come back
//! in corpus order whatever the worker count.

use rayon::prelude::*;
use serde_json::json;
use sgt_core::graph::generate;
use sgt_core::spectral::decompose;
use sgt_core::{GraphFamily, Verdict};

use crate::analyses::{self, reached_target, Subject};
use crate::params::Params;
use crate::report::Row;

pub const CORPUS_SIZE: usize = 300;
pub const MAX_N: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Identities,
    Recursion,
    Probe,
    Surplus,
    Structure,
    Increment,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Identities, Suite::Recursion, Suite::Probe, Suite::Surplus, Suite::Structure, Suite::Increment];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Recursion => "recursion",
            Suite::Probe => "probe",
            Suite::Surplus => "surplus",
            Suite::Structure => "structure",
            Suite::Increment => "increment",
            Suite::All => "all",
        }
    }
}

/// SplitMix64 finalizer; derives per-instance seeds from the corpus seed.
pub fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn structured() -> Vec<GraphFamily> {
    use GraphFamily::*;
    let mut out = Vec::new();
    for n in [1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 32, 64, 128] {
        out.push(Complete { n });
    }
    for n in [1, 2, 5, 16] {
        out.push(Empty { n });
    }
    for (n, r) in [(6, 2), (9, 3), (12, 3), (12, 4), (20, 4), (30, 5), (40, 2), (64, 4), (100, 5)] {
        out.push(Turan { n, r });
    }
    for sizes in [
        vec![3, 2],
        vec![4, 4],
        vec![4; 5],
        vec![5, 5, 5],
        vec![2, 3, 4, 5, 6],
        vec![6; 4],
        vec![8; 8],
        vec![10, 10],
        vec![16; 4],
        vec![4; 25],
    ] {
        out.push(UnionCliques { sizes });
    }
    for (a, b) in [(1, 3), (3, 3), (4, 6), (5, 5), (4, 12), (10, 10), (32, 32)] {
        out.push(CompleteBipartite { a, b });
    }
    for n in [3, 4, 5, 6, 7, 8, 10, 13, 20, 30, 64] {
        out.push(Cycle { n });
    }
    for n in [2, 3, 4, 7, 10, 20] {
        out.push(Path { n });
    }
    for leaves in [1, 3, 5, 9, 15] {
        out.push(Star { leaves });
    }
    out.push(Petersen);
    for q in [5, 13, 17, 29, 37, 41, 53, 61, 101, 149, 197, 241] {
        out.push(Paley { q });
    }
    for (n, connection) in [
        (8, vec![1, 7]),
        (10, vec![1, 3, 7, 9]),
        (12, vec![2, 10]),
        (15, vec![1, 4, 11, 14]),
        (20, vec![1, 2, 18, 19]),
        (24, vec![3, 8, 16, 21]),
        (31, vec![1, 5, 26, 30]),
        (40, vec![1, 10, 30, 39]),
        (64, vec![1, 2, 3, 61, 62, 63]),
        (100, vec![1, 7, 93, 99]),
    ] {
        out.push(Circulant { n, connection });
    }
    for (n, k) in [(8, 3), (12, 4), (16, 4), (20, 5), (36, 6), (64, 8)] {
        out.push(CompleteMinusClique { n, k });
    }
    for m in 1..=20 {
        out.push(CherryBlowup { m });
    }
    out
}

/// Vertex counts of the random part, weighted toward small graphs so that the
/// exact oracles see most of them.
fn random_sizes(count: usize) -> Vec<usize> {
    let small: Vec<usize> = (5..=20).collect();
    let medium = [24, 28, 32, 40, 48, 56, 64];
    let large = [80, 96, 112, 128];
    let huge = [160, 200, 256];
    let mut sizes = Vec::with_capacity(count);
    let mut k = 0;
    while sizes.len() < count {
        let pick = match k % 10 {
            0..=5 => small[(k / 10 * 6 + k % 10) % small.len()],
            6..=8 => medium[(k / 10 * 3 + k % 10 - 6) % medium.len()],
            _ if k % 30 == 29 => huge[(k / 30) % huge.len()],
            _ => large[(k / 10) % large.len()],
        };
        sizes.push(pick);
        k += 1;
    }
    sizes
}

/// The corpus for `seed`: structured families first, then `G(n, p)` fill.
pub fn corpus(seed: u64) -> Vec<GraphFamily> {
    let mut out = structured();
    let planted = [(40, 8, 0.2), (60, 10, 0.1), (100, 15, 0.05)];
    for (i, &(n, k, p)) in planted.iter().enumerate() {
        out.push(GraphFamily::PlantedClique { n, k, p, seed: mix(seed, i as u64) });
    }
    let fill = CORPUS_SIZE - out.len();
    let densities = [0.1, 0.2, 0.3, 0.5, 0.7, 0.9];
    for (i, n) in random_sizes(fill).into_iter().enumerate() {
        let p = densities[i % densities.len()];
        out.push(GraphFamily::ErdosRenyi { n, p, seed: mix(seed, 1000 + i as u64) });
    }
    out
}

/// Graphs for the truncation Monte Carlo, probed at `T = λ₁/2`.
pub fn designated(seed: u64) -> Vec<GraphFamily> {
    use GraphFamily::*;
    let mut out = vec![
        Complete { n: 16 },
        Complete { n: 32 },
        Turan { n: 20, r: 4 },
        Turan { n: 30, r: 5 },
        UnionCliques { sizes: vec![8; 8] },
        UnionCliques { sizes: vec![4; 5] },
        CompleteBipartite { a: 10, b: 10 },
        Petersen,
        Paley { q: 13 },
        Paley { q: 29 },
        Paley { q: 37 },
        Cycle { n: 13 },
        Circulant { n: 20, connection: vec![1, 2, 18, 19] },
        CompleteMinusClique { n: 16, k: 4 },
        CompleteMinusClique { n: 36, k: 6 },
        CherryBlowup { m: 6 },
    ];
    let all = corpus(seed);
    let random = all.iter().filter(|f| matches!(f, ErdosRenyi { n, p, .. } if (24..=64).contains(n) && *p >= 0.3));
    out.extend(random.take(3).cloned());
    out.push(all[all.iter().position(|f| matches!(f, PlantedClique { n: 60, .. })).expect("planted instance")].clone());
    out
}

/// Planted-clique instances for the increment loop: `K_k` on a random
/// `k`-subset of 100 vertices plus `G(100, 0.02)`, `k` cycling over 10..=20.
pub fn planted(seed: u64, count: usize) -> Vec<GraphFamily> {
    (0..count)
        .map(|i| GraphFamily::PlantedClique { n: 100, k: 10 + i % 11, p: 0.02, seed: mix(seed, 5000 + i as u64) })
        .collect()
}

fn with_subject<F>(suite: &str, family: &GraphFamily, params: &Params, f: F) -> Vec<Row>
where
    F: FnOnce(&Subject<'_>) -> Vec<Row>,
{
    let label = family.label();
    let g = match generate(family) {
        Ok(g) => g,
        Err(e) => return vec![Row::error(suite, &label, "generate", e)],
    };
    let s = match decompose(&g, None) {
        Ok(s) => s,
        Err(e) => return vec![Row::error(suite, &label, "spectrum", e)],
    };
    f(&Subject { suite, label: &label, family: Some(family), g: &g, s: &s, params })
}

fn fan_out<F>(items: &[GraphFamily], f: F) -> Vec<Row>
where
    F: Fn(usize, &GraphFamily) -> Vec<Row> + Sync + Send,
{
    let nested: Vec<Vec<Row>> = items.par_iter().enumerate().map(|(i, fam)| f(i, fam)).collect();
    nested.into_iter().flatten().collect()
}

fn suite_rows(suite: Suite, seed: u64, params: &Params) -> Vec<Row> {
    let name = suite.name();
    let graphs = corpus(seed);
    match suite {
        Suite::Identities => fan_out(&graphs, |_, f| with_subject(name, f, params, analyses::identities)),
        Suite::Recursion => fan_out(&graphs, |_, f| with_subject(name, f, params, analyses::recursion)),
        Suite::Probe => {
            let mut rows = fan_out(&graphs, |i, f| with_subject(name, f, params, |x| analyses::hadamard(x, mix(seed, i as u64))));
            rows.extend(fan_out(&designated(seed), |i, f| {
                with_subject(name, f, params, |x| vec![analyses::truncation(x, x.s.lambda_max() / 2.0, mix(seed, 9000 + i as u64))])
            }));
            rows
        }
        Suite::Surplus => fan_out(&graphs, |i, f| with_subject(name, f, params, |x| analyses::surplus(x, true, mix(seed, i as u64)))),
        Suite::Structure => fan_out(&graphs, |i, f| {
            if f.n_hint() > params.dichotomy_cap {
                return Vec::new();
            }
            with_subject(name, f, params, |x| analyses::structure(x, mix(seed, i as u64)))
        }),
        Suite::Increment => {
            let mut rows = fan_out(&graphs, |_, f| with_subject(name, f, params, |x| analyses::increment(x).0));
            let instances = planted(seed, params.planted_instances);
            let outcomes: Vec<(Vec<Row>, bool)> = instances
                .par_iter()
                .map(|f| {
                    let mut reached = false;
                    let rows = with_subject(name, f, params, |x| {
                        let (rows, trace) = analyses::increment(x);
                        reached = trace.as_ref().is_some_and(reached_target);
                        rows
                    });
                    (rows, reached)
                })
                .collect();
            let hits = outcomes.iter().filter(|(_, r)| *r).count();
            let misses: Vec<String> =
                instances.iter().zip(&outcomes).filter(|(_, (_, r))| !r).map(|(f, _)| f.label()).collect();
            for (r, _) in outcomes {
                rows.extend(r);
            }
            let rate = if instances.is_empty() { 0.0 } else { hits as f64 / instances.len() as f64 };
            let verdict = if instances.is_empty() { Verdict::NotApplicable } else { Verdict::from_bool(rate >= 0.95) };
            rows.push(
                Row::new(name, "planted_clique(100,10..20,0.02)", "planted-success-rate", verdict)
                    .value(rate)
                    .bound(0.95)
                    .detail(json!({ "instances": instances.len(), "reached": hits, "missed": misses })),
            );
            rows
        }
        Suite::All => Suite::EACH.iter().flat_map(|&s| suite_rows(s, seed, params)).collect(),
    }
}

/// Runs `suite` over the corpus for `seed` on `workers` threads (0 = rayon default).
pub fn run_corpus(suite: Suite, seed: u64, params: &Params, workers: usize) -> Vec<Row> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| suite_rows(suite, seed, params))
}

trait SizeHint {
    fn n_hint(&self) -> usize;
}

impl SizeHint for GraphFamily {
    fn n_hint(&self) -> usize {
        use GraphFamily::*;
        match self {
            Complete { n }
            | Turan { n, .. }
            | ErdosRenyi { n, .. }
            | Circulant { n, .. }
            | CompleteMinusClique { n, .. }
            | Empty { n }
            | Cycle { n }
            | Path { n }
            | PlantedClique { n, .. } => *n,
            UnionCliques { sizes } => sizes.iter().sum(),
            CompleteBipartite { a, b } => a + b,
            Paley { q } => *q,
            Star { leaves } => leaves + 1,
            Petersen => 10,
            CherryBlowup { m } => 3 * m,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let c = corpus(7);
        assert_eq!(c.len(), CORPUS_SIZE);
        for f in &c {
            let g = generate(f).unwrap();
            assert_eq!(g.n(), f.n_hint(), "{}", f.label());
            assert!(g.n() <= MAX_N);
        }
        assert_eq!(corpus(7), c);
        assert_ne!(corpus(8), c);
        let d = designated(7);
        assert_eq!(d.len(), 20);
        assert!(d.iter().all(|f| c.contains(f)));
    }

    #[test]
    fn planted_sizes() {
        let p = planted(1, 100);
        assert_eq!(p.len(), 100);
        let ks: std::collections::BTreeSet<usize> =
            p.iter().map(|f| if let GraphFamily::PlantedClique { k, .. } = f { *k } else { 0 }).collect();
        assert_eq!(ks, (10..=20).collect());
    }
}
