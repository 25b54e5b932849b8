//! `kmh`: command-line front end to the `kmeans_hardness` library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 size
//! guard exceeded under `--strict`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use kmeans_hardness::formats::{
    parse_clustering, parse_cover, parse_kmeans_instance, write_clustering, write_cover, write_kmeans_instance,
    SpectralRow,
};
use kmeans_hardness::graph::Graph;
use kmeans_hardness::harness::{
    gap_report, lloyd_random_init, load_graph_dir, render_gap_report, triangle_free_suite, verify_instance,
    write_graph_dir, KRule, OutputFormat, RunConfig, LLOYD_MAX_ITERS, SWAP_MAX_ROUNDS,
};
use kmeans_hardness::kmeans::{brute_force_kmeans, jl_project_with, kmeanspp_lloyd, JlEntries, local_search_swap};
use kmeans_hardness::oracles::max_independent_set;
use kmeans_hardness::reduction::{build_kmeans_instance, cover_to_clustering, extract_cover, Clustering, Cover};
use kmeans_hardness::rng::{derive_seed, DEFAULT_SEED};
use kmeans_hardness::spectral::{
    kronecker_product, plan_product_reduction, product_with, round_product_is, spectral_radius, Expander,
    ExpanderSource, ProductIsVector,
};
use kmeans_hardness::{Error, KMeansInstance};

#[derive(Parser)]
#[command(name = "kmh", version, about = "Graph-to-k-means reductions, exact oracles and spectral products")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Master seed; every randomized step derives its own seed from it.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    /// Largest vertex count handed to exact vertex cover oracles.
    #[arg(long, global = true, default_value_t = 30)]
    max_oracle_n: usize,
    /// Largest edge count handed to exact partition oracles.
    #[arg(long, global = true, default_value_t = 10)]
    max_oracle_m: usize,
    #[arg(long, global = true, default_value = "tsv")]
    format: String,
    /// Exit 3 when a size guard stops any part of the work.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a named or random graph (or a directory suite).
    GenGraph {
        #[arg(value_enum)]
        kind: GraphKind,
        #[arg(short, default_value_t = 5)]
        n: usize,
        /// Edge probability for gnp.
        #[arg(short, default_value_t = 0.5)]
        p: f64,
        /// Edge count for gnm.
        #[arg(short, default_value_t = 5)]
        m: usize,
        /// Output file, or directory for `suite`.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Graph to k-means instance, one point per edge.
    Reduce {
        graph: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Cluster a k-means instance.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "local-search")]
        method: Method,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Vertex cover from a clustering of a graph's edges.
    Extract {
        graph: PathBuf,
        clustering: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Star clustering of a graph's edges from a vertex cover.
    CoverToClustering {
        graph: PathBuf,
        cover: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Kronecker product with a given graph or an automatically chosen expander.
    Product {
        graph: PathBuf,
        /// Right factor; omit together with --auto.
        right: Option<PathBuf>,
        /// Pick a triangle-free expander for `--epsilon`.
        #[arg(long)]
        auto: bool,
        /// Product edge-list output; spectral rows go to stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Refuse to write products with more edges than this.
        #[arg(long, default_value_t = 5_000_000)]
        max_edges: usize,
    },
    /// Spectral rows for one or more graphs.
    Spectrum { graphs: Vec<PathBuf> },
    /// Round an independent set of G ⊗ H back onto G.
    RoundIs {
        graph: PathBuf,
        right: PathBuf,
        /// 0-based product indices, whitespace separated; defaults to an
        /// exact maximum independent set of the product.
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Run the invariant suite on one graph.
    Verify {
        graph: PathBuf,
        #[arg(short, long)]
        k: Option<usize>,
    },
    /// Gap report over every graph file in a directory.
    Report {
        dir: PathBuf,
        /// vc, vc+N, vc-N, m/D or a fixed number.
        #[arg(long, default_value = "vc")]
        k_rule: String,
    },
    /// Random projection of a k-means instance.
    JlProject {
        instance: PathBuf,
        /// projection entries: rademacher or gaussian
        #[arg(long, default_value = "rademacher")]
        entries: JlEntries,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Path,
    Cycle,
    Complete,
    Star,
    Petersen,
    Gnp,
    Gnm,
    /// All connected triangle-free graphs on up to n vertices.
    Suite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Lloyd,
    KmeansppLloyd,
    LocalSearch,
    BruteForce,
}

/// Error carrying its exit code.
struct Exit(u8, anyhow::Error);

fn classify(strict: bool) -> impl Fn(anyhow::Error) -> Exit {
    move |e| {
        let guard = matches!(e.downcast_ref::<Error>(), Some(Error::GuardExceeded { .. }));
        Exit(if guard && strict { 3 } else { 2 }, e)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_instance(path: &Path) -> anyhow::Result<KMeansInstance> {
    parse_kmeans_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn graph_id(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph").to_string()
}

fn spectral_rows(rows: &[SpectralRow], format: OutputFormat) -> String {
    let mut out = String::new();
    if format == OutputFormat::Tsv {
        out.push_str(SpectralRow::TSV_HEADER);
        out.push('\n');
    }
    for r in rows {
        match format {
            OutputFormat::Tsv => out.push_str(&r.to_tsv()),
            OutputFormat::Json => out.push_str(&serde_json::to_string(r).expect("row serializes")),
        }
        out.push('\n');
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Exit> {
    let g = &cli.global;
    let strict = g.strict;
    let input = classify(strict);
    let format: OutputFormat = g.format.parse().map_err(|e: Error| input(e.into()))?;
    let cfg = RunConfig {
        seed: g.seed,
        epsilon: g.epsilon,
        trials: g.trials,
        max_oracle_n: g.max_oracle_n,
        max_oracle_m: g.max_oracle_m,
        format,
        strict,
    };
    cfg.validate().map_err(|e| input(e.into()))?;
    dispatch(cli.cmd, &cfg).map_err(input)
}

fn dispatch(cmd: Cmd, cfg: &RunConfig) -> anyhow::Result<u8> {
    match cmd {
        Cmd::GenGraph { kind, n, p, m, out } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, "gen-graph"));
            let g = match kind {
                GraphKind::Path => Graph::path(n),
                GraphKind::Cycle => Graph::cycle(n),
                GraphKind::Complete => Graph::complete(n),
                GraphKind::Star => Graph::star(n),
                GraphKind::Petersen => Graph::petersen(),
                GraphKind::Gnp => Graph::gnp(n, p, &mut rng),
                GraphKind::Gnm => Graph::gnm(n, m, &mut rng),
                GraphKind::Suite => {
                    let dir = out.context("suite needs --out <dir>")?;
                    let suite = triangle_free_suite(n);
                    write_graph_dir(&dir, &suite)?;
                    eprintln!("wrote {} graphs to {}", suite.len(), dir.display());
                    return Ok(0);
                }
            };
            emit(out.as_deref(), &g.to_edge_list())?;
        }
        Cmd::Reduce { graph, k, out } => {
            let inst = build_kmeans_instance(&read_graph(&graph)?, k)?;
            emit(out.as_deref(), &write_kmeans_instance(&inst))?;
        }
        Cmd::Solve { instance, method, out } => {
            let inst = read_instance(&instance)?;
            let seed = derive_seed(cfg.seed, "solve");
            let (assignment, cost) = match method {
                Method::Lloyd => {
                    let r = lloyd_random_init(&inst, seed)?;
                    (r.assignment, r.cost)
                }
                Method::KmeansppLloyd => {
                    let r = kmeanspp_lloyd(&inst.points, inst.k, LLOYD_MAX_ITERS, seed)?;
                    (r.assignment, r.cost)
                }
                Method::LocalSearch => {
                    let r = local_search_swap(&inst.points, inst.k, seed, SWAP_MAX_ROUNDS)?;
                    (r.assignment, r.cost)
                }
                Method::BruteForce => {
                    let (a, cost) = brute_force_kmeans(&inst.points, inst.k)?;
                    (Clustering::new(inst.k, a)?, cost)
                }
            };
            eprintln!("cost\t{cost}");
            emit(out.as_deref(), &write_clustering(&assignment))?;
        }
        Cmd::Extract { graph, clustering, out } => {
            let g = read_graph(&graph)?;
            let c = parse_clustering(&read(&clustering)?)?;
            let x = extract_cover(&g, &c)?;
            eprintln!(
                "clusters\t{}\ncost\t{}\ndelta\t{}\nsize_bound\t{}\nsize\t{}",
                x.k,
                x.total_cost,
                x.delta,
                x.size_bound(),
                x.cover.len()
            );
            emit(out.as_deref(), &write_cover(g.n(), &x.cover.vertices))?;
        }
        Cmd::CoverToClustering { graph, cover, out } => {
            let g = read_graph(&graph)?;
            let (n, vs) = parse_cover(&read(&cover)?)?;
            anyhow::ensure!(n == g.n(), "cover is for {n} vertices, graph has {}", g.n());
            let c = cover_to_clustering(&g, &Cover::new(&g, vs))?;
            emit(out.as_deref(), &write_clustering(&c))?;
        }
        Cmd::Product { graph, right, auto, out, max_edges } => return product(cfg, &graph, right, auto, out, max_edges),
        Cmd::Spectrum { graphs } => {
            let rows = graphs
                .iter()
                .map(|p| Ok(SpectralRow::new(graph_id(p), &spectral_radius(&read_graph(p)?)?)))
                .collect::<anyhow::Result<Vec<_>>>()?;
            print!("{}", spectral_rows(&rows, cfg.format));
        }
        Cmd::RoundIs { graph, right, set } => {
            let g = read_graph(&graph)?;
            let h = read_graph(&right)?;
            let f = match set {
                Some(p) => {
                    let idx = read(&p)?
                        .split_whitespace()
                        .map(|t| t.parse::<usize>().with_context(|| format!("bad index '{t}'")))
                        .collect::<anyhow::Result<Vec<_>>>()?;
                    ProductIsVector::from_indices(g.n(), h.n(), &idx)?
                }
                None => {
                    let (p, _) = kronecker_product(&g, &h)?;
                    ProductIsVector::from_indices(g.n(), h.n(), &max_independent_set(&p)?.witness)?
                }
            };
            let r = round_product_is(&g, &h, &f, cfg.trials, derive_seed(cfg.seed, "round-is"))?;
            let best: Vec<String> = r.best.iter().map(|v| (v + 1).to_string()).collect();
            println!("product_set_size\t{}", f.norm_sq());
            println!("trials\t{}", r.sizes.len());
            println!("mean\t{}", r.mean);
            println!("std_error\t{}", r.std_error());
            println!("bound\t{}", r.bound);
            println!("meets_bound\t{}", r.meets_bound());
            println!("best_size\t{}", r.best.len());
            println!("best\t{}", best.join(" "));
        }
        Cmd::Verify { graph, k } => {
            let report = verify_instance(&read_graph(&graph)?, k, cfg)?;
            print!("{}", report.render(cfg.format));
            return Ok(report.exit_code(cfg.strict) as u8);
        }
        Cmd::Report { dir, k_rule } => {
            let rule: KRule = k_rule.parse()?;
            let rows = gap_report(&load_graph_dir(&dir)?, rule, cfg)?;
            print!("{}", render_gap_report(&rows, cfg.format));
            if rows.iter().any(|r| !r.consistent()) {
                return Ok(1);
            }
        }
        Cmd::JlProject { instance, entries, out } => {
            let inst = read_instance(&instance)?;
            let r = jl_project_with(&inst.points, cfg.epsilon, derive_seed(cfg.seed, "jl"), entries)?;
            eprintln!("target_dim\t{}\nmax_distortion\t{}", r.target_dim, r.max_distortion);
            let projected = KMeansInstance { points: r.projected, k: inst.k, provenance: inst.provenance };
            emit(out.as_deref(), &write_kmeans_instance(&projected))?;
        }
    }
    Ok(0)
}

fn describe(source: &ExpanderSource) -> String {
    match source {
        ExpanderSource::Catalog(name) => format!("catalog:{name}"),
        ExpanderSource::Pairing { attempt } => format!("pairing:attempt{attempt}"),
        ExpanderSource::Cayley { generators } => format!("cayley:{} generators", generators.len()),
    }
}

fn product(
    cfg: &RunConfig,
    graph: &Path,
    right: Option<PathBuf>,
    auto: bool,
    out: Option<PathBuf>,
    max_edges: usize,
) -> anyhow::Result<u8> {
    let g = read_graph(graph)?;
    let mut rows = vec![SpectralRow::new(graph_id(graph), &spectral_radius(&g)?)];
    let expander = match (right, auto) {
        (Some(_), true) | (None, false) => anyhow::bail!("give exactly one of a right factor or --auto"),
        (Some(h_path), false) => {
            let h = read_graph(&h_path)?;
            if !h.is_triangle_free() {
                eprintln!("warning: right factor has a triangle; product triangle-freeness is not guaranteed");
            }
            let rep = spectral_radius(&h)?;
            rows.push(SpectralRow::new(graph_id(&h_path), &rep));
            let Some(d) = h.regular_degree() else {
                // irregular right factor: plain product, no approximation guarantee
                eprintln!("warning: right factor is not regular; no approximation bound applies");
                let (p, _) = kronecker_product(&g, &h)?;
                return finish(cfg, p, rows, out, max_edges);
            };
            Expander { graph: h, degree: d, rho: rep.rho, source: ExpanderSource::Catalog("user") }
        }
        (None, true) => {
            let plan = plan_product_reduction(g.max_degree(), cfg.epsilon, derive_seed(cfg.seed, "product"))?;
            eprintln!(
                "plan\tDelta={}\tepsilon={}\td={}\tN={}\trho={:.6}\trho_target={:.6}\tloss={:.6}\tsource={}",
                plan.max_degree,
                plan.epsilon,
                plan.degree,
                plan.nodes,
                plan.rho,
                plan.rho_target,
                plan.loss(),
                describe(&plan.source)
            );
            let edges = plan.product_edges(g.m());
            match plan.expander {
                Some(e) if edges <= max_edges => e,
                _ => {
                    eprintln!(
                        "skipped\tproduct would have {} nodes and {edges} edges (limit {max_edges})",
                        plan.product_nodes(g.n())
                    );
                    print!("{}", spectral_rows(&rows, cfg.format));
                    return Ok(if cfg.strict { 3 } else { 0 });
                }
            }
        }
    };
    let red = product_with(&g, expander, cfg.epsilon)?;
    eprintln!("ratio_bound\t{}", red.ratio_bound);
    finish(cfg, red.product, rows, out, max_edges)
}

fn finish(
    cfg: &RunConfig,
    p: Graph,
    mut rows: Vec<SpectralRow>,
    out: Option<PathBuf>,
    max_edges: usize,
) -> anyhow::Result<u8> {
    if p.m() > max_edges {
        eprintln!("skipped\tproduct has {} edges (limit {max_edges})", p.m());
        print!("{}", spectral_rows(&rows, cfg.format));
        return Ok(if cfg.strict { 3 } else { 0 });
    }
    eprintln!("product\tn={}\tm={}\ttriangle_free={}", p.n(), p.m(), p.is_triangle_free());
    if p.n() <= kmeans_hardness::spectral::MAX_EIGENSOLVE_NODES && p.n() >= 2 {
        rows.push(SpectralRow::new("product", &spectral_radius(&p)?));
    }
    match out {
        Some(path) => std::fs::write(&path, p.to_edge_list()).with_context(|| format!("writing {}", path.display()))?,
        None => eprintln!("note: no --out given; product not written"),
    }
    print!("{}", spectral_rows(&rows, cfg.format));
    Ok(0)
}
