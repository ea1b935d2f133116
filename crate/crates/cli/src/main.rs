use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hyperdecomp::analysis::LevelReport;
use hyperdecomp::generators::{
    hyperpa, learn_params, naivepa, null_model, subset_sampling, GenParams, GeneratorRun, HyperPaConfig, SamplingRule,
    SubsetSamplingConfig, DEFAULT_P,
};
use hyperdecomp::io;
use hyperdecomp::{
    analyze, decompose, decompose_weighted, dedup, evaluate, recover, AnalysisConfig, DecomposeConfig, Hypergraph,
    Pattern, RecoverOptions,
};

#[derive(Parser)]
#[command(name = "hyperdecomp", version, about = "Multi-level hypergraph decomposition and pattern analysis")]
struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "HYPERDECOMP_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the k-level decomposed graph of a hypergraph.
    Decompose(DecomposeArgs),
    /// Per-level component, degree, diameter, clustering and spectrum statistics.
    Analyze(AnalyzeArgs),
    /// Grow a hypergraph with one of the generators.
    Generate(GenerateArgs),
    /// Score a generated hypergraph against a real one.
    Evaluate(EvaluateArgs),
    /// Rebuild a hypergraph from weighted decomposed graphs of levels 1..m-1.
    Recover(RecoverArgs),
}

/// Inputs are a directory holding `*-nverts.txt`, `*-simplices.txt` and
/// optionally `*-times.txt`, or a file with one hyperedge per line.
#[derive(Args)]
struct DecomposeArgs {
    input: PathBuf,
    #[arg(long)]
    level: usize,
    /// Ignore hyperedges larger than this. Unlimited by default.
    #[arg(long)]
    max_edge_size: Option<usize>,
    /// Keep hyperedge multiplicities as edge weights and size-1 hyperedges
    /// as self-loops. Uses every hyperedge.
    #[arg(long, conflicts_with = "max_edge_size")]
    weighted: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 3, 4])]
    levels: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_enum, default_values_t = vec![PatternArg::P1, PatternArg::P2, PatternArg::P3, PatternArg::P4, PatternArg::P5])]
    patterns: Vec<PatternArg>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Count nodes of the universe that appear in no hyperedge as singleton
    /// components at level 1.
    #[arg(long)]
    count_isolated: bool,
    /// Output directory; created if missing.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PatternArg {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl From<PatternArg> for Pattern {
    fn from(p: PatternArg) -> Self {
        match p {
            PatternArg::P1 => Pattern::P1,
            PatternArg::P2 => Pattern::P2,
            PatternArg::P3 => Pattern::P3,
            PatternArg::P4 => Pattern::P4,
            PatternArg::P5 => Pattern::P5,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Hyperpa,
    Naivepa,
    Subset,
    Null,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Random,
    Recent,
    MostRecent,
}

#[derive(Args)]
struct GenerateArgs {
    /// Hypergraph to learn parameters from, after removing duplicate
    /// hyperedges. The null model shuffles it as read.
    #[arg(required_unless_present = "params")]
    input: Option<PathBuf>,
    /// JSON parameters, either bare or inside an earlier run manifest.
    #[arg(long, conflicts_with = "input")]
    params: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Subset sampling: chance of reusing a node of a sampled hyperedge.
    #[arg(long, default_value_t = DEFAULT_P)]
    p: f64,
    #[arg(long, value_enum, default_value = "random")]
    rule: RuleArg,
    /// Window length for `--rule most-recent`.
    #[arg(long, default_value_t = 10)]
    window: usize,
    /// Weight the window towards newer hyperedges.
    #[arg(long)]
    window_recent: bool,
    /// HyperPA: fill groups larger than this by independent
    /// degree-proportional node draws.
    #[arg(long)]
    subset_cap: Option<usize>,
    /// Use file order instead of timestamps when the input has none.
    #[arg(long)]
    line_order: bool,
    #[arg(long)]
    out: PathBuf,
    /// Defaults to `<out>.manifest.json`.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    real: PathBuf,
    generated: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 3, 4])]
    levels: Vec<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RecoverArgs {
    /// Weighted decomposed graphs, one per level, as written by
    /// `decompose --weighted`.
    #[arg(required = true)]
    graphs: Vec<PathBuf>,
    #[arg(long)]
    max_size: Option<usize>,
    /// Peel in a seeded random order.
    #[arg(long)]
    shuffle_seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

/// Files written so far; removed again if the command fails.
#[derive(Default)]
struct Outputs {
    written: Vec<PathBuf>,
    dirs: Vec<PathBuf>,
}

impl Outputs {
    fn track(&mut self, path: &Path, res: hyperdecomp::Result<()>) -> Result<()> {
        res?;
        self.written.push(path.to_path_buf());
        Ok(())
    }

    fn ensure_dir(&mut self, dir: &Path) -> Result<()> {
        if !dir.exists() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            self.dirs.push(dir.to_path_buf());
        }
        Ok(())
    }

    fn discard(self) {
        for p in self.written {
            let _ = fs::remove_file(p);
        }
        for d in self.dirs.into_iter().rev() {
            let _ = fs::remove_dir(d);
        }
    }
}

fn load(path: &Path) -> Result<Hypergraph> {
    let h = if path.is_dir() {
        io::read_simplex_dir(path)?.hypergraph
    } else {
        io::read_line_format(path)?
    };
    Ok(h)
}

fn argv() -> Vec<String> {
    std::env::args().collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let mut out = Outputs::default();
    let res = match &cli.command {
        Command::Decompose(a) => cmd_decompose(a, &mut out),
        Command::Analyze(a) => cmd_analyze(a, &mut out),
        Command::Generate(a) => cmd_generate(a, &mut out),
        Command::Evaluate(a) => cmd_evaluate(a, &mut out),
        Command::Recover(a) => cmd_recover(a, &mut out),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            out.discard();
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_decompose(a: &DecomposeArgs, out: &mut Outputs) -> Result<()> {
    let h = load(&a.input)?;
    if a.weighted {
        let g = decompose_weighted(&h, a.level)?;
        out.track(&a.out, io::write_weighted_graph(&g, &a.out))?;
        println!("nodes={} edges={} self_loops={}", g.base().node_count(), g.base().edge_count(), g.self_loops().len());
    } else {
        let cfg = match a.max_edge_size {
            Some(m) => DecomposeConfig::new(a.level, m)?,
            None => DecomposeConfig::uncapped(a.level)?,
        };
        let g = decompose(&h, cfg)?;
        out.track(&a.out, io::write_decomposed_graph(&g, &a.out))?;
        println!("nodes={} edges={}", g.node_count(), g.edge_count());
    }
    Ok(())
}

#[derive(Serialize)]
struct LevelOutput<'a> {
    #[serde(flatten)]
    report: &'a LevelReport,
    patterns: BTreeMap<Pattern, &'static str>,
}

#[derive(Serialize)]
struct AnalyzeSummary {
    argv: Vec<String>,
    seed: u64,
    edges: usize,
    universe: usize,
    levels: Vec<usize>,
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut Outputs) -> Result<()> {
    let h = dedup(&load(&a.input)?);
    let wanted: BTreeSet<Pattern> = a.patterns.iter().map(|&p| p.into()).collect();
    let mut cfg = AnalysisConfig {
        count_isolated_nodes: a.count_isolated,
        compute_spectrum: wanted.contains(&Pattern::P5),
        fit_tails: wanted.contains(&Pattern::P2) || wanted.contains(&Pattern::P5),
        ..Default::default()
    };
    cfg.diameter.seed = a.seed;
    cfg.spectrum.lanczos.seed = a.seed;
    cfg.tail.lilliefors.seed = a.seed;

    let levels: BTreeSet<usize> = a.levels.iter().copied().collect();
    if levels.is_empty() || levels.contains(&0) {
        bail!("--levels must list levels >= 1");
    }
    let mut reports = levels
        .par_iter()
        .map(|&k| Ok(analyze(&h, &[k], &cfg)?.remove(0)))
        .collect::<Result<Vec<LevelReport>>>()?;

    out.ensure_dir(&a.out)?;
    for r in &mut reports {
        if !wanted.contains(&Pattern::P2) {
            r.degree_tail = None;
        }
        if !wanted.contains(&Pattern::P3) {
            r.effective_diameter = None;
        }
        if !wanted.contains(&Pattern::P4) {
            r.clustering = None;
            r.transitivity = None;
        }
        let mut patterns = BTreeMap::new();
        for &p in &wanted {
            let status = match p {
                Pattern::P3 | Pattern::P4 if r.is_shattered() => "not applicable",
                Pattern::P1 if r.is_shattered() => "shattered",
                Pattern::P1 => "giant",
                _ => "reported",
            };
            patterns.insert(p, status);
        }
        let stem = a.out.join(format!("level-{}", r.level));
        let json = stem.with_extension("json");
        out.track(&json, io::write_json(&LevelOutput { report: r, patterns }, &json))?;
        if wanted.contains(&Pattern::P2) {
            let p = a.out.join(format!("level-{}-degrees.tsv", r.level));
            out.track(&p, io::write_tsv(&io::degree_tsv(&r.degrees), &p))?;
        }
        if let Some(s) = &r.spectrum {
            let p = a.out.join(format!("level-{}-spectrum.tsv", r.level));
            out.track(&p, io::write_tsv(&io::spectrum_tsv(s), &p))?;
        }
        let fmt = |x: Option<f64>| x.map_or_else(|| "n/a".to_string(), |v| format!("{:.4}", v));
        println!(
            "level={} nodes={} edges={} giant={} largest={:.4} diameter={} clustering={}",
            r.level,
            r.nodes,
            r.edges,
            r.components.is_giant,
            r.components.largest_frac,
            fmt(r.effective_diameter),
            fmt(r.clustering)
        );
    }
    let summary = AnalyzeSummary {
        argv: argv(),
        seed: a.seed,
        edges: h.len(),
        universe: h.n(),
        levels: levels.into_iter().collect(),
    };
    let p = a.out.join("summary.json");
    out.track(&p, io::write_json(&summary, &p))
}

fn load_params(path: &Path) -> Result<GenParams> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let inner = match v.get("params").or_else(|| v.get("run").and_then(|r| r.get("params"))) {
        Some(p) if !p.is_null() => p.clone(),
        _ => v,
    };
    let params: GenParams =
        serde_json::from_value(inner).with_context(|| format!("{} holds no generator parameters", path.display()))?;
    params.validate()?;
    Ok(params)
}

fn with_line_order(h: Hypergraph) -> Result<Hypergraph> {
    let n = h.n();
    let edges = h
        .into_edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.with_timestamp(Some(i as i64)))
        .collect();
    Ok(Hypergraph::new(n, edges)?)
}

#[derive(Serialize)]
struct GenerateManifest<'a> {
    argv: Vec<String>,
    run: &'a hyperdecomp::generators::RunManifest,
}

fn cmd_generate(a: &GenerateArgs, out: &mut Outputs) -> Result<()> {
    let input = a.input.as_deref().map(load).transpose()?;
    let input = match input {
        Some(h) if a.line_order && !h.is_timestamped() => Some(with_line_order(h)?),
        other => other,
    };
    let params = || -> Result<GenParams> {
        match (&a.params, &input) {
            (Some(p), _) => load_params(p),
            (None, Some(h)) => Ok(learn_params(&dedup(h))?),
            (None, None) => bail!("either an input hypergraph or --params is required"),
        }
    };
    let run: GeneratorRun = match a.model {
        ModelArg::Hyperpa => hyperpa(
            &params()?,
            &HyperPaConfig {
                seed: a.seed,
                subset_cap: a.subset_cap,
            },
        )?,
        ModelArg::Naivepa => naivepa(&params()?, a.seed)?,
        ModelArg::Subset => {
            let rule = match a.rule {
                RuleArg::Random => SamplingRule::Random,
                RuleArg::Recent => SamplingRule::Recent,
                RuleArg::MostRecent => SamplingRule::MostRecent {
                    k: a.window,
                    recent: a.window_recent,
                },
            };
            subset_sampling(&params()?, &SubsetSamplingConfig { p: a.p, rule, seed: a.seed })?
        }
        ModelArg::Null => {
            let h = input.as_ref().context("the null model needs an input hypergraph, not --params")?;
            null_model(h, a.seed)?
        }
    };
    out.track(&a.out, io::write_line_format(&run.hypergraph, &a.out))?;
    let manifest = a.manifest.clone().unwrap_or_else(|| {
        let mut s = a.out.clone().into_os_string();
        s.push(".manifest.json");
        PathBuf::from(s)
    });
    let m = GenerateManifest {
        argv: argv(),
        run: &run.manifest,
    };
    out.track(&manifest, io::write_json(&m, &manifest))?;
    print!("nodes={} edges={}", run.manifest.nodes, run.manifest.edges);
    if let (Some(f), Some(nodes)) = (run.manifest.fallback_count, run.manifest.fallback_nodes) {
        print!(" fallback={f} fallback_nodes={nodes}");
    }
    println!();
    Ok(())
}

#[derive(Serialize)]
struct EvaluateOutput<'a> {
    argv: Vec<String>,
    levels: &'a [usize],
    card: &'a hyperdecomp::ScoreCard,
}

fn cmd_evaluate(a: &EvaluateArgs, out: &mut Outputs) -> Result<()> {
    let real = dedup(&load(&a.real)?);
    let gen = dedup(&load(&a.generated)?);
    let mut cfg = AnalysisConfig::default();
    cfg.diameter.seed = a.seed;
    cfg.spectrum.lanczos.seed = a.seed;
    let card = evaluate(&real, &gen, &a.levels, &cfg)?;
    for l in &card.levels {
        let cells: Vec<String> = l
            .patterns
            .iter()
            .map(|p| {
                let mark = if !p.applicable {
                    "n/a"
                } else if p.awarded {
                    "yes"
                } else {
                    "no"
                };
                format!("{:?}={mark}", p.pattern)
            })
            .collect();
        println!("level={} {}", l.level, cells.join(" "));
    }
    println!("score={}/{}", card.total, card.applicable);
    out.track(
        &a.out,
        io::write_json(
            &EvaluateOutput {
                argv: argv(),
                levels: &a.levels,
                card: &card,
            },
            &a.out,
        ),
    )
}

fn cmd_recover(a: &RecoverArgs, out: &mut Outputs) -> Result<()> {
    let mut graphs = BTreeMap::new();
    for p in &a.graphs {
        let g = io::read_weighted_graph(p)?;
        if graphs.insert(g.level(), g).is_some() {
            bail!("{}: level given twice", p.display());
        }
    }
    let h = recover(
        &graphs,
        RecoverOptions {
            max_size: a.max_size,
            shuffle_seed: a.shuffle_seed,
        },
    )?;
    out.track(&a.out, io::write_line_format(&h, &a.out))?;
    println!("edges={}", h.len());
    Ok(())
}
