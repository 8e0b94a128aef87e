//! The `wec` command line.
//!
//! Every subcommand writes JSON on stdout and diagnostics on stderr. Exit
//! codes: 0 success, 1 verification failure, 2 parse, structure or usage
//! error, 3 oracle refusal.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::adversary::{gen_composed_tightness, gen_harmonic_worstcase, gen_nf_worstcase};
use crate::binpack::{
    exact_packing, first_fit_decreasing, harmonic_pack, lower_bound, next_fit, typed_harmonic_pack,
    typed_next_fit, Label, DEFAULT_EXACT_LIMIT, DEFAULT_M,
};
use crate::coloring::{Coloring, ColoringFile};
use crate::error::{Error, ParseError};
use crate::generate::{random_cactus, random_forest, random_multigraph, trial_rng, MultigraphParams};
use crate::instance::{compute_stats_with_limit, parse_instance, Instance};
use crate::offline::analyze_structure;
use crate::oracle::{exact_min_colors, verify_coloring};
use crate::report::{run as run_algorithm, Algorithm, RunOptions, RunReport};
use crate::weight::Weight;

#[derive(Debug, Parser)]
#[command(name = "wec", version, about = "Weighted edge coloring toolkit")]
struct Cli {
    /// Largest per-vertex degree for which m_v is computed by exact search.
    #[arg(long, global = true, env = "WEC_EXACT_LIMIT", default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphKind {
    Multigraph,
    Forest,
    Cactus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PackAlgo {
    Nf,
    Harmonic,
    TypedNf,
    TypedHarmonic,
    Ffd,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ColorAlgo {
    Nf,
    Harmonic,
    TreeNf,
    TreeHarmonic,
    Cycles,
}

impl From<ColorAlgo> for Algorithm {
    fn from(a: ColorAlgo) -> Self {
        match a {
            ColorAlgo::Nf => Algorithm::Nf,
            ColorAlgo::Harmonic => Algorithm::Harmonic,
            ColorAlgo::TreeNf => Algorithm::TreeNf,
            ColorAlgo::TreeHarmonic => Algorithm::TreeHarmonic,
            ColorAlgo::Cycles => Algorithm::Cycles,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AdversaryKind {
    Nf,
    Harmonic,
    Composed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded random instance.
    Gen {
        #[arg(long, value_enum, default_value = "multigraph")]
        kind: GraphKind,
        #[arg(long, default_value_t = 20)]
        vertices: usize,
        #[arg(long, default_value_t = 100)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        multi_rate: f64,
        #[arg(long, default_value_t = 30)]
        max_degree: usize,
        /// Instance file to write; without it the text is embedded in the JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pack a stream of weights read one per line (`<weight> <label>` when typed).
    Pack {
        #[arg(long, value_enum, default_value = "nf")]
        algo: PackAlgo,
        #[arg(long = "M", default_value_t = DEFAULT_M, value_parser = clap::value_parser!(u32).range(2..))]
        classes: u32,
        /// Read from this file instead of stdin.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Color an instance and report the palette against its bound.
    Color {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "nf")]
        algo: ColorAlgo,
        #[arg(long = "M", default_value_t = DEFAULT_M, value_parser = clap::value_parser!(u32).range(2..))]
        classes: u32,
        /// Record wall time in runtime_ms (otherwise 0).
        #[arg(long)]
        timing: bool,
        /// Include the per-edge assignment in the report.
        #[arg(long)]
        assignment: bool,
    },
    /// Check a coloring file against an instance.
    Verify { instance: PathBuf, coloring: PathBuf },
    /// Exact minimum palette size (at most 10 edges).
    Opt { instance: PathBuf },
    /// Instance statistics: m, n, t and per-vertex detail.
    Stats { instance: PathBuf },
    /// Emit a worst-case input and the predicted behaviour on it.
    Adversary {
        #[arg(long, value_enum)]
        kind: AdversaryKind,
        /// nf: number of (1/2, 1/(4p)) repetitions.
        #[arg(long, default_value_t = 30)]
        p: usize,
        #[arg(long = "M", default_value_t = DEFAULT_M)]
        classes: u32,
        /// harmonic: copies of each size.
        #[arg(long, default_value_t = 42)]
        copies: usize,
        /// composed: number of pairs.
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// composed: copies per pair.
        #[arg(long, default_value_t = 126)]
        per_pair: usize,
        /// composed: copies per hub segment.
        #[arg(long, default_value_t = 42)]
        per_hub: usize,
        /// Stream (nf, harmonic) or instance (composed) file to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color a seeded batch of random instances and aggregate the reports.
    Bench {
        #[arg(long, value_enum, default_value = "nf")]
        algo: ColorAlgo,
        /// Defaults to forest for tree colorers, cactus for cycles, multigraph otherwise.
        #[arg(long, value_enum)]
        kind: Option<GraphKind>,
        #[arg(long, default_value_t = 20)]
        vertices: usize,
        #[arg(long, default_value_t = 100)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long = "M", default_value_t = DEFAULT_M, value_parser = clap::value_parser!(u32).range(2..))]
        classes: u32,
        /// Include every trial's report, not just the summary.
        #[arg(long)]
        full: bool,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Error(Error),
    Io(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Error(Error::Oracle(_)) => 3,
            Failure::Error(Error::Verify(_)) | Failure::Verification(_) => 1,
            Failure::Error(_) | Failure::Io(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Error(e) => e.to_string(),
            Failure::Io(m) | Failure::Verification(m) => m.clone(),
        }
    }
}

type CmdResult = Result<serde_json::Value, (Failure, Option<serde_json::Value>)>;

fn fail<E: Into<Failure>>(e: E) -> (Failure, Option<serde_json::Value>) {
    (e.into(), None)
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))
    }
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("writing {}: {e}", path.display())))
}

fn load_instance(path: &Path, stdin: &mut dyn Read) -> Result<Instance, Failure> {
    let text = read_input(path, stdin)?;
    parse_instance(&text).map_err(|e| Failure::Error(e.into()))
}

fn parse_stream(text: &str) -> Result<Vec<(Weight, Option<Label>)>, Error> {
    let mut items = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let w: Weight = fields
            .next()
            .unwrap()
            .parse()
            .map_err(|source| ParseError::Weight { line, source })?;
        let label = match fields.next() {
            None => None,
            Some(l) => Some(l.parse::<Label>().map_err(|_| ParseError::Malformed {
                line,
                reason: format!("label `{l}` is not a non-negative integer"),
            })?),
        };
        if fields.next().is_some() {
            return Err(ParseError::Malformed {
                line,
                reason: "expected `<weight> [label]`".into(),
            }
            .into());
        }
        items.push((w, label));
    }
    Ok(items)
}

fn stream_text(items: &[Weight]) -> String {
    items.iter().map(|w| format!("{w}\n")).collect()
}

/// Runs the command line `args` (program name first) with `stdin` as standard input.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let render = |v: &serde_json::Value| serde_json::to_string_pretty(v).unwrap() + "\n";
    match dispatch(cli, stdin) {
        Ok(value) => Outcome {
            code: 0,
            stdout: render(&value),
            stderr: String::new(),
        },
        Err((failure, value)) => Outcome {
            code: failure.code(),
            stdout: value.as_ref().map(render).unwrap_or_default(),
            stderr: format!("error: {}\n", failure.message()),
        },
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> CmdResult {
    let exact_limit = cli.exact_limit;
    match cli.command {
        Command::Gen {
            kind,
            vertices,
            edges,
            seed,
            multi_rate,
            max_degree,
            out,
        } => {
            if !(0.0..=1.0).contains(&multi_rate) {
                return Err(fail(Failure::Io(format!("--multi-rate {multi_rate} outside [0, 1]"))));
            }
            let instance = generate(kind, vertices, edges, multi_rate, max_degree, &mut trial_rng(seed, 0));
            let text = instance.to_text();
            let mut summary = json!({
                "kind": format!("{kind:?}").to_lowercase(),
                "seed": seed,
                "vertices": instance.vertex_count(),
                "edges": instance.len(),
            });
            match out {
                Some(path) => {
                    write_output(&path, &text).map_err(fail)?;
                    summary["out"] = json!(path.display().to_string());
                }
                None => summary["instance"] = json!(text),
            }
            Ok(summary)
        }
        Command::Pack { algo, classes, input } => {
            let text = read_input(input.as_deref().unwrap_or(Path::new("-")), stdin).map_err(fail)?;
            let items = parse_stream(&text).map_err(fail)?;
            let weights: Vec<Weight> = items.iter().map(|&(w, _)| w).collect();
            let typed = || -> Result<Vec<(Weight, Label)>, Failure> {
                items
                    .iter()
                    .enumerate()
                    .map(|(i, &(w, l))| {
                        l.map(|l| (w, l))
                            .ok_or_else(|| Failure::Io(format!("item {} has no label; typed packing needs `<weight> <label>`", i + 1)))
                    })
                    .collect()
            };
            Ok(match algo {
                PackAlgo::Nf => to_json(&next_fit(&weights)),
                PackAlgo::Harmonic => to_json(&harmonic_pack(&weights, classes)),
                PackAlgo::TypedNf => to_json(&typed_next_fit(&typed().map_err(fail)?)),
                PackAlgo::TypedHarmonic => to_json(&typed_harmonic_pack(&typed().map_err(fail)?, classes)),
                PackAlgo::Ffd => offline_packing_json(&weights, first_fit_decreasing(&weights)),
                PackAlgo::Exact => {
                    let bins = exact_packing(&weights, exact_limit).map_err(|e| fail(Error::from(e)))?;
                    offline_packing_json(&weights, bins)
                }
            })
        }
        Command::Color {
            instance,
            algo,
            classes,
            timing,
            assignment,
        } => {
            let instance = load_instance(&instance, stdin).map_err(fail)?;
            let options = RunOptions {
                classes,
                exact_limit,
                timing,
                include_assignment: assignment,
            };
            let (_, report) = run_algorithm(&instance, algo.into(), &options).map_err(fail)?;
            let value = to_json(&report);
            if report.violations > 0 {
                let msg = format!("coloring has {} violations", report.violations);
                return Err((Failure::Verification(msg), Some(value)));
            }
            Ok(value)
        }
        Command::Verify { instance, coloring } => {
            let instance = load_instance(&instance, stdin).map_err(fail)?;
            let text = read_input(&coloring, stdin).map_err(fail)?;
            let file: ColoringFile = serde_json::from_str(&text)
                .map_err(|e| fail(Failure::Io(format!("malformed coloring file: {e}"))))?;
            let report = verify_coloring(&instance, &Coloring::from(file)).map_err(|e| fail(Error::from(e)))?;
            let value = to_json(&report);
            if !report.proper {
                let msg = format!("{} (vertex, color) loads exceed 1", report.violations.len());
                return Err((Failure::Verification(msg), Some(value)));
            }
            Ok(value)
        }
        Command::Opt { instance } => {
            let instance = load_instance(&instance, stdin).map_err(fail)?;
            let min_colors = exact_min_colors(&instance).map_err(|e| fail(Error::from(e)))?;
            let stats = compute_stats_with_limit(&instance, exact_limit).map_err(|e| fail(Error::from(e)))?;
            Ok(json!({ "min_colors": min_colors, "m": stats.m, "m_is_exact": stats.m_is_exact }))
        }
        Command::Stats { instance } => {
            let instance = load_instance(&instance, stdin).map_err(fail)?;
            let stats = compute_stats_with_limit(&instance, exact_limit).map_err(|e| fail(Error::from(e)))?;
            let mut value = to_json(&stats);
            value["edges"] = json!(instance.len());
            value["vertices"] = json!(instance.vertex_count());
            value["structure"] = match analyze_structure(&instance) {
                Ok(s) => to_json(&s),
                Err(_) => serde_json::Value::Null,
            };
            Ok(value)
        }
        Command::Adversary {
            kind,
            p,
            classes,
            copies,
            k,
            per_pair,
            per_hub,
            out,
        } => {
            let (text, prediction) = match kind {
                AdversaryKind::Nf => {
                    let (s, pr) = gen_nf_worstcase(p).map_err(|e| fail(Error::from(e)))?;
                    (stream_text(&s), pr)
                }
                AdversaryKind::Harmonic => {
                    let (s, pr) = gen_harmonic_worstcase(classes, copies).map_err(|e| fail(Error::from(e)))?;
                    (stream_text(&s), pr)
                }
                AdversaryKind::Composed => {
                    let (g, pr) = gen_composed_tightness(k, per_pair, per_hub).map_err(|e| fail(Error::from(e)))?;
                    (g.to_text(), pr)
                }
            };
            let mut value = to_json(&prediction);
            if let Some(path) = out {
                write_output(&path, &text).map_err(fail)?;
                value["out"] = json!(path.display().to_string());
            }
            Ok(value)
        }
        Command::Bench {
            algo,
            kind,
            vertices,
            edges,
            seed,
            trials,
            classes,
            full,
        } => {
            let algorithm = Algorithm::from(algo);
            let kind = kind.unwrap_or(match algorithm {
                Algorithm::TreeNf | Algorithm::TreeHarmonic => GraphKind::Forest,
                Algorithm::Cycles => GraphKind::Cactus,
                _ => GraphKind::Multigraph,
            });
            let options = RunOptions {
                classes,
                exact_limit,
                timing: false,
                include_assignment: false,
            };
            let reports: Vec<RunReport> = (0..trials)
                .into_par_iter()
                .map(|trial| {
                    let instance = generate(kind, vertices, edges, 0.3, 30, &mut trial_rng(seed, trial));
                    run_algorithm(&instance, algorithm, &options).map(|(_, r)| r)
                })
                .collect::<Result<_, _>>()
                .map_err(fail)?;
            let mut value = json!({
                "algorithm": algorithm.name(),
                "kind": format!("{kind:?}").to_lowercase(),
                "seed": seed,
                "trials": trials,
                "summary": summarize(&reports),
            });
            if full {
                value["reports"] = to_json(&reports);
            }
            let violations: usize = reports.iter().map(|r| r.violations).sum();
            if violations > 0 {
                return Err((Failure::Verification(format!("{violations} violations across trials")), Some(value)));
            }
            Ok(value)
        }
    }
}

fn generate(
    kind: GraphKind,
    vertices: usize,
    edges: usize,
    multi_rate: f64,
    max_degree: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Instance {
    match kind {
        GraphKind::Multigraph => random_multigraph(
            rng,
            MultigraphParams {
                vertices,
                edges,
                multi_edge_rate: multi_rate,
                max_degree,
            },
        ),
        GraphKind::Forest => random_forest(rng, vertices, edges, max_degree),
        GraphKind::Cactus => random_cactus(rng, vertices, edges.saturating_sub(vertices.saturating_sub(1))),
    }
}

fn offline_packing_json(weights: &[Weight], bins: Vec<Vec<usize>>) -> serde_json::Value {
    let bins: Vec<Vec<Weight>> = bins.into_iter().map(|b| b.into_iter().map(|i| weights[i]).collect()).collect();
    json!({
        "total_bins": bins.len(),
        "lower_bound": lower_bound(weights),
        "bins": to_json(&bins),
    })
}

#[derive(Debug, Serialize)]
struct Summary {
    instances_with_exact_m: usize,
    within_bound: usize,
    outside_bound: usize,
    strict_bound_exceedances: usize,
    bound_exceeded_flagged: usize,
    violations: usize,
    max_color_index: u32,
    /// Largest max_color_index / m, as an exact fraction.
    worst_ratio: String,
    per_m: BTreeMap<usize, u32>,
}

fn summarize(reports: &[RunReport]) -> Summary {
    let mut worst = (0u32, 1usize);
    let mut per_m: BTreeMap<usize, u32> = BTreeMap::new();
    for r in reports {
        if r.m > 0 && (r.max_color_index as u64) * (worst.1 as u64) > (worst.0 as u64) * (r.m as u64) {
            worst = (r.max_color_index, r.m);
        }
        let e = per_m.entry(r.m).or_default();
        *e = (*e).max(r.max_color_index);
    }
    Summary {
        instances_with_exact_m: reports.iter().filter(|r| r.m_is_exact).count(),
        within_bound: reports.iter().filter(|r| r.within_bound == Some(true)).count(),
        outside_bound: reports.iter().filter(|r| r.within_bound == Some(false)).count(),
        strict_bound_exceedances: reports
            .iter()
            .filter(|r| r.bound_strict.is_some_and(|b| r.max_color_index as usize > b))
            .count(),
        bound_exceeded_flagged: reports.iter().filter(|r| r.bound_exceeded_flagged).count(),
        violations: reports.iter().map(|r| r.violations).sum(),
        max_color_index: reports.iter().map(|r| r.max_color_index).max().unwrap_or(0),
        worst_ratio: format!("{}/{}", worst.0, worst.1),
        per_m,
    }
}
