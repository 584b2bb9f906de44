//! Command-line front end. Exit codes: 0 all checks pass, 1 some check
//! failed, 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sgt_core::graph::generate;
use sgt_core::spectral::{decompose, energy};
use sgt_core::{Graph, GraphFamily, Spectrum, Verdict};

use crate::analyses::{self, Subject};
use crate::corpus::{run_corpus, Suite};
use crate::edgelist::{parse_edge_list, write_edge_list};
use crate::params::{Params, Preset};
use crate::report::{Format, Report, Row};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "sgt", version, about = "Spectral graph toolkit: generate graphs, run analyses and corpus suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for random families.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eigendecomposition and trace identities.
    Spectrum(Analysis),
    /// Key recursion, surplus recursion and the recursion solver.
    Recursion(Analysis),
    /// Hadamard identity on random probes and the truncation estimate.
    Probe {
        #[command(flatten)]
        analysis: Analysis,
        /// Threshold for the truncation estimate; defaults to λ₁/2.
        #[arg(long = "t")]
        threshold: Option<f64>,
    },
    /// Surplus certificates.
    Surplus {
        #[command(flatten)]
        analysis: Analysis,
        /// Compute sp exactly and check it against the certificates.
        #[arg(long)]
        exact: bool,
    },
    /// Spectral partition, eigen-witness search and closeness evidence.
    Structure(Analysis),
    /// Density-increment loop.
    Increment(Analysis),
    /// Run a suite over the deterministic corpus.
    Corpus {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Worker threads; 0 picks the number of CPUs.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
pub struct Analysis {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Preset::Desk)]
    pub preset: Preset,
    /// Parameter override, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Seed for random families and sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Complete,
    Turan,
    UnionCliques,
    CompleteBipartite,
    ErdosRenyi,
    Circulant,
    Paley,
    CompleteMinusClique,
    Empty,
    Cycle,
    Path,
    Star,
    Petersen,
    CherryBlowup,
    PlantedClique,
}

/// Where the graph comes from: an edge-list file or a family with its sizes.
#[derive(Args, Debug)]
pub struct Source {
    /// Edge-list file.
    #[arg(long = "in", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Vertex count; with `--in` it overrides the file's vertex count.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub leaves: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub connection: Vec<usize>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: FamilyName) -> anyhow::Result<T> {
    v.ok_or_else(|| anyhow!("--{flag} is required for family {}", family.to_possible_value().unwrap().get_name()))
}

impl Source {
    pub fn family(&self, seed: u64) -> anyhow::Result<GraphFamily> {
        use FamilyName as F;
        let f = self.family.ok_or_else(|| anyhow!("either --in or --family is required"))?;
        let n = || need(self.n, "n", f);
        Ok(match f {
            F::Complete => GraphFamily::Complete { n: n()? },
            F::Turan => GraphFamily::Turan { n: n()?, r: need(self.r, "r", f)? },
            F::UnionCliques => {
                if self.sizes.is_empty() {
                    bail!("--sizes is required for family union-cliques");
                }
                GraphFamily::UnionCliques { sizes: self.sizes.clone() }
            }
            F::CompleteBipartite => GraphFamily::CompleteBipartite { a: need(self.a, "a", f)?, b: need(self.b, "b", f)? },
            F::ErdosRenyi => GraphFamily::ErdosRenyi { n: n()?, p: need(self.p, "p", f)?, seed },
            F::Circulant => GraphFamily::Circulant { n: n()?, connection: self.connection.clone() },
            F::Paley => GraphFamily::Paley { q: need(self.q, "q", f)? },
            F::CompleteMinusClique => GraphFamily::CompleteMinusClique { n: n()?, k: need(self.k, "k", f)? },
            F::Empty => GraphFamily::Empty { n: n()? },
            F::Cycle => GraphFamily::Cycle { n: n()? },
            F::Path => GraphFamily::Path { n: n()? },
            F::Star => GraphFamily::Star { leaves: need(self.leaves, "leaves", f)? },
            F::Petersen => GraphFamily::Petersen,
            F::CherryBlowup => GraphFamily::CherryBlowup { m: need(self.m, "m", f)? },
            F::PlantedClique => {
                GraphFamily::PlantedClique { n: n()?, k: need(self.k, "k", f)?, p: need(self.p, "p", f)?, seed }
            }
        })
    }

    /// Label, family (when generated) and graph.
    pub fn load(&self, seed: u64) -> anyhow::Result<(String, Option<GraphFamily>, Graph)> {
        if let Some(path) = &self.input {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let g = parse_edge_list(&text, self.n).with_context(|| format!("in {}", path.display()))?;
            return Ok((path.display().to_string(), None, g));
        }
        let family = self.family(seed)?;
        let g = generate(&family).with_context(|| format!("cannot generate {}", family.label()))?;
        Ok((family.label(), Some(family), g))
    }
}

impl Output {
    fn params(&self) -> anyhow::Result<Params> {
        Ok(Params::with_overrides(self.preset, self.params.iter().map(String::as_str))?)
    }

    fn emit(&self, report: &Report) -> anyhow::Result<u8> {
        let bytes = report.render(self.format);
        match &self.out {
            Some(path) => fs::write(path, &bytes).with_context(|| format!("cannot write {}", path.display()))?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
    }
}

fn spectrum_of(g: &Graph) -> anyhow::Result<Spectrum> {
    decompose(g, None).context("eigendecomposition")
}

fn single<F>(a: &Analysis, suite: &str, f: F) -> anyhow::Result<u8>
where
    F: FnOnce(&Subject<'_>) -> Vec<Row>,
{
    let params = a.output.params()?;
    let (label, family, g) = a.source.load(a.output.seed)?;
    let s = spectrum_of(&g)?;
    let rows = f(&Subject { suite, label: &label, family: family.as_ref(), g: &g, s: &s, params: &params });
    a.output.emit(&Report::new(a.output.preset, params, rows))
}

/// Executes a parsed command and returns its exit code.
pub fn execute(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Gen { source, out, seed } => {
            let (_, _, g) = source.load(seed)?;
            let text = write_edge_list(&g);
            match out {
                Some(path) => fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?,
                None => std::io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(EXIT_PASS)
        }
        Command::Spectrum(a) => single(&a, "spectrum", |x| {
            let mut rows = vec![Row::new(x.suite, x.label, "eigendecomposition", Verdict::Pass)
                .value(x.s.residual())
                .bound(x.s.tolerance())
                .detail(json!({
                    "n": x.s.n(),
                    "m": x.s.m(),
                    "energy": energy(x.s),
                    "orthogonality_defect": x.s.orthogonality_defect(),
                    "lambdas": x.s.lambdas(),
                }))];
            rows.extend(analyses::identities(x));
            rows
        }),
        Command::Recursion(a) => single(&a, "recursion", analyses::recursion),
        Command::Probe { analysis, threshold } => {
            let seed = analysis.output.seed;
            single(&analysis, "probe", |x| {
                let mut rows = analyses::hadamard(x, seed);
                let t = threshold.unwrap_or(x.s.lambda_max() / 2.0);
                rows.push(if t > 0.0 {
                    analyses::truncation(x, t, seed)
                } else {
                    Row::new(x.suite, x.label, "truncation", Verdict::NotApplicable)
                        .detail(json!({ "reason": "no positive threshold" }))
                });
                rows
            })
        }
        Command::Surplus { analysis, exact } => {
            let seed = analysis.output.seed;
            single(&analysis, "surplus", |x| analyses::surplus(x, exact, seed))
        }
        Command::Structure(a) => {
            let seed = a.output.seed;
            single(&a, "structure", |x| analyses::structure(x, seed))
        }
        Command::Increment(a) => single(&a, "increment", |x| analyses::increment(x).0),
        Command::Corpus { suite, workers, output } => {
            let params = output.params()?;
            let rows = run_corpus(suite, output.seed, &params, workers);
            output.emit(&Report::new(output.preset, params, rows))
        }
    }
}

/// Parses `args` and runs; prints usage errors to stderr.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
