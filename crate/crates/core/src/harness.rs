//! Orchestration shared by the `kmh` binary and the examples: run
//! configuration, the per-instance verification suite and gap reports.

use std::fmt;
use std::path::Path;

use num_traits::Zero;
use rand::seq::index::sample;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kmeans::{euclidean_cost_exact, kmeanspp_lloyd, lloyd, local_search_swap, SolverResult};
use crate::oracles::{brute_force_edge_partition, greedy_vertex_cover, min_vertex_cover, MAX_PARTITION_EDGES, MAX_VC_VERTICES};
use crate::reduction::{
    build_kmeans_instance, classify_cluster, cluster_stats, clustering_cost, cover_to_clustering,
    edge_clustering_cost, extract_cover, ClusterShape, Clustering, Cover, KMeansInstance, Rational,
};
use crate::rng::{derive_seed, rng_from_seed, DEFAULT_SEED};

pub const LLOYD_MAX_ITERS: usize = 1000;
pub const SWAP_MAX_ROUNDS: usize = 1000;
/// Largest edge count for which every edge subset is checked against the
/// cluster cost bounds.
pub const MAX_SUBSET_EDGES: usize = 14;
/// Absolute slack when comparing floating heuristic costs to exact optima.
pub const COST_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(Self::Tsv),
            "json" | "json-lines" | "jsonl" => Ok(Self::Json),
            _ => Err(Error::InvalidParameter(format!("unknown format '{s}' (tsv | json)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub epsilon: f64,
    pub trials: usize,
    /// Exact vertex-cover oracles run only up to this many vertices.
    pub max_oracle_n: usize,
    /// Exact partition oracles run only up to this many edges.
    pub max_oracle_m: usize,
    pub format: OutputFormat,
    /// Treat skipped checks and refused outputs as failures (exit 3).
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            epsilon: 0.5,
            trials: 1000,
            max_oracle_n: 30,
            max_oracle_m: 10,
            format: OutputFormat::Tsv,
            strict: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon = {} must lie in (0, 1)", self.epsilon)));
        }
        if self.trials == 0 || self.max_oracle_n == 0 || self.max_oracle_m == 0 {
            return Err(Error::InvalidParameter("trials and oracle guards must be positive".into()));
        }
        Ok(())
    }

    fn vc_oracle_ok(&self, g: &Graph) -> bool {
        g.n() <= self.max_oracle_n.min(MAX_VC_VERTICES)
    }

    fn partition_oracle_ok(&self, g: &Graph) -> bool {
        g.m() <= self.max_oracle_m.min(MAX_PARTITION_EDGES)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self { name: name.into(), status, detail: detail.into() }
    }

    fn skip(name: &str, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status: Status::Skip, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.status, self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Skip).count()
    }

    /// 1 on any failure; otherwise 3 if `strict` and something was skipped.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.failed() > 0 {
            1
        } else if strict && self.skipped() > 0 {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match format {
                OutputFormat::Tsv => out.push_str(&c.to_string()),
                OutputFormat::Json => out.push_str(&serde_json::to_string(c).expect("check serializes")),
            }
            out.push('\n');
        }
        out
    }
}

/// `(cost − m + k) / k` for a clustering with `k` non-empty clusters.
pub fn global_delta(cost: Rational, m: usize, k: usize) -> Rational {
    (cost - Rational::from_integer(m as i64) + Rational::from_integer(k as i64)) / Rational::from_integer(k as i64)
}

fn single_cluster(m: usize) -> Clustering {
    Clustering::new(1, vec![0; m]).expect("k = 1 is valid")
}

/// Exact optimum over edge partitions with at most `k` blocks.
fn optimal_partition(g: &Graph, k: usize, cfg: &RunConfig) -> Option<(Rational, Clustering)> {
    if !cfg.partition_oracle_ok(g) {
        return None;
    }
    brute_force_edge_partition(g, k).ok().map(|r| (r.value, r.witness))
}

/// Runs every invariant check that applies to `(g, k)`. When `k` is `None`
/// it defaults to `VC(g)` (or the greedy cover size when the oracle is
/// guarded out), clamped to `1..=m`.
pub fn verify_instance(g: &Graph, k: Option<usize>, cfg: &RunConfig) -> Result<VerifyReport> {
    if g.m() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let m = g.m();
    let vc = cfg.vc_oracle_ok(g).then(|| min_vertex_cover(g)).transpose()?;
    let k = k.unwrap_or_else(|| vc.as_ref().map_or(greedy_vertex_cover(g).len(), |r| r.value)).clamp(1, m);
    let inst = build_kmeans_instance(g, k)?;
    let triangle_free = g.is_triangle_free();
    let mut checks = Vec::new();

    let greedy = Cover::new(g, greedy_vertex_cover(g));
    let opt = optimal_partition(g, k, cfg);
    let swap = local_search_swap(&inst.points, k, derive_seed(cfg.seed, "verify-swap"), SWAP_MAX_ROUNDS)?;

    // Euclidean cost of each clustering against the combinatorial formula.
    let mut samples: Vec<(&str, Clustering)> = vec![
        ("single-cluster", single_cluster(m)),
        ("greedy-cover-stars", cover_to_clustering(g, &greedy)?),
        ("local-search", swap.assignment.clone()),
    ];
    if let Some((_, c)) = &opt {
        samples.push(("optimal-partition", c.clone()));
    }
    let mut mismatches = Vec::new();
    for (label, c) in &samples {
        let euclid = euclidean_cost_exact(&inst.points, c.assignment())?;
        let comb = clustering_cost(&inst, c)?;
        if euclid != comb {
            mismatches.push(format!("{label}: {euclid} vs {comb}"));
        }
    }
    checks.push(Check::new(
        "cost-equivalence",
        mismatches.is_empty(),
        if mismatches.is_empty() { format!("{} clusterings agree exactly", samples.len()) } else { mismatches.join("; ") },
    ));

    // m_F − 1 ≤ Cost(F) ≤ 2 m_F − 1
    let subsets: Vec<Vec<usize>> = if m <= MAX_SUBSET_EDGES {
        (1u32..1 << m).map(|mask| (0..m).filter(|&e| mask >> e & 1 == 1).collect()).collect()
    } else {
        samples.iter().flat_map(|(_, c)| c.non_empty_blocks()).collect()
    };
    let mut bad = None;
    for s in &subsets {
        let st = cluster_stats(g, s)?;
        let mf = Rational::from_integer(st.edges as i64);
        if st.cost < mf - 1 || st.cost > mf * 2 - 1 {
            bad = Some(format!("edges {s:?}: cost {}", st.cost));
            break;
        }
    }
    checks.push(Check::new(
        "cost-bounds",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{} edge subsets within [m_F - 1, 2 m_F - 1]", subsets.len())),
    ));

    match &opt {
        None => checks.push(Check::skip("dichotomy", format!("m = {m} exceeds partition guard"))),
        Some((_, c)) => {
            let mut bad = None;
            let mut shapes = Vec::new();
            for block in c.non_empty_blocks() {
                let shape = classify_cluster(g, &block)?;
                let delta = cluster_stats(g, &block)?.delta;
                let cheap_ok = delta >= Rational::new(1, 2)
                    || (delta.is_zero() && matches!(shape, ClusterShape::Star { .. } | ClusterShape::Triangle));
                if !cheap_ok {
                    bad = Some(format!("cluster {block:?} has delta {delta}"));
                }
                shapes.push(match shape {
                    ClusterShape::Star { .. } => "star".to_string(),
                    ClusterShape::Triangle => "triangle".to_string(),
                    ClusterShape::Other { delta } => format!("other(delta={delta})"),
                });
            }
            checks.push(Check::new("dichotomy", bad.is_none(), bad.unwrap_or_else(|| shapes.join(","))));
        }
    }

    match &vc {
        None => checks.push(Check::skip("completeness", format!("n = {} exceeds vertex cover guard", g.n()))),
        Some(r) => {
            let cover = Cover::new(g, r.witness.iter().copied());
            let c = cover_to_clustering(g, &cover)?;
            let cost = edge_clustering_cost(g, &c)?;
            let want = Rational::from_integer((m - r.value) as i64);
            checks.push(Check::new(
                "completeness",
                cover.valid && c.non_empty_count() == r.value && cost == want,
                format!("VC = {}, star clustering cost {cost}, m - VC = {want}", r.value),
            ));
        }
    }

    match &opt {
        None => checks.push(Check::skip("soundness", format!("m = {m} exceeds partition guard"))),
        Some((_, c)) => {
            let x = extract_cover(g, c)?;
            let bound = x.size_bound();
            let size = Rational::from_integer(x.cover.len() as i64);
            let ok = x.cover.valid && (!triangle_free || size <= bound);
            let note = if triangle_free { "" } else { " (bound not claimed: graph has triangles)" };
            checks.push(Check::new(
                "soundness",
                ok,
                format!("cover size {} vs k(1+3δ) = {bound} with δ = {}{note}", x.cover.len(), x.delta),
            ));
        }
    }

    match (&opt, &vc) {
        (Some((cost, _)), Some(r)) if triangle_free => {
            let at_threshold = *cost == Rational::from_integer((m - k) as i64);
            checks.push(Check::new(
                "threshold",
                at_threshold == (r.value <= k),
                format!("optimum {cost}, m - k = {}, VC = {}, k = {k}", m - k, r.value),
            ));
        }
        (Some(_), Some(_)) => checks.push(Check::skip("threshold", "graph has triangles")),
        _ => checks.push(Check::skip("threshold", "oracle guarded out")),
    }

    match &opt {
        None => checks.push(Check::skip("heuristics", "no exact optimum")),
        Some((cost, _)) => {
            let opt_f = *cost.numer() as f64 / *cost.denom() as f64;
            let runs = heuristics(&inst, cfg.seed)?;
            let below: Vec<String> = runs
                .iter()
                .filter(|(_, r)| r.cost < opt_f - COST_SLACK)
                .map(|(name, r)| format!("{name} = {}", r.cost))
                .collect();
            let costs: Vec<String> = runs.iter().map(|(name, r)| format!("{name} = {:.6}", r.cost)).collect();
            checks.push(Check::new(
                "heuristics",
                below.is_empty(),
                format!("optimum {cost}; {}", if below.is_empty() { costs.join(", ") } else { below.join(", ") }),
            ));
        }
    }
    Ok(VerifyReport { checks })
}

/// Lloyd from `k` uniformly random points.
pub fn lloyd_random_init(inst: &KMeansInstance, seed: u64) -> Result<SolverResult> {
    let mut rng = rng_from_seed(derive_seed(seed, "lloyd-init"));
    let idx = sample(&mut rng, inst.num_points(), inst.k.min(inst.num_points()));
    let init: Vec<Vec<f64>> = idx.iter().map(|i| inst.points.point(i).to_vec()).collect();
    lloyd(&inst.points, inst.k, &init, LLOYD_MAX_ITERS, seed)
}

/// Lloyd, k-means++ then Lloyd, and swap local search, each on its own
/// derived seed.
pub fn heuristics(inst: &KMeansInstance, seed: u64) -> Result<Vec<(&'static str, SolverResult)>> {
    Ok(vec![
        ("lloyd", lloyd_random_init(inst, derive_seed(seed, "lloyd"))?),
        ("kmeans++", kmeanspp_lloyd(&inst.points, inst.k, LLOYD_MAX_ITERS, derive_seed(seed, "kmeans++"))?),
        ("local-search", local_search_swap(&inst.points, inst.k, derive_seed(seed, "local-search"), SWAP_MAX_ROUNDS)?),
    ])
}

/// How `k` is chosen per graph in a gap report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRule {
    /// `VC(g) + offset`.
    Vc(i64),
    Fixed(usize),
    /// `ceil(m / D)`.
    EdgesOver(usize),
}

impl std::str::FromStr for KRule {
    type Err = Error;

    /// `vc`, `vc+1`, `vc-1`, `m/3`, or a plain number.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown k rule '{s}' (vc, vc+N, vc-N, m/D, N)"));
        if let Some(rest) = s.strip_prefix("vc") {
            return match rest {
                "" => Ok(Self::Vc(0)),
                _ if rest.starts_with('+') => rest[1..].parse().map(Self::Vc).map_err(|_| bad()),
                _ if rest.starts_with('-') => rest[1..].parse::<i64>().map(|x| Self::Vc(-x)).map_err(|_| bad()),
                _ => Err(bad()),
            };
        }
        if let Some(d) = s.strip_prefix("m/") {
            return match d.parse() {
                Ok(0) | Err(_) => Err(bad()),
                Ok(d) => Ok(Self::EdgesOver(d)),
            };
        }
        s.parse().map(Self::Fixed).map_err(|_| bad())
    }
}

impl KRule {
    /// `None` when the rule needs an oracle that was guarded out or yields
    /// a `k` outside `1..=m`.
    pub fn resolve(&self, g: &Graph, vc: Option<usize>) -> Option<usize> {
        let k = match *self {
            KRule::Vc(off) => vc? as i64 + off,
            KRule::Fixed(k) => k as i64,
            KRule::EdgesOver(d) => g.m().div_ceil(d) as i64,
        };
        (1..=g.m() as i64).contains(&k).then_some(k as usize)
    }
}

fn ser_ratio<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub vc_exact: Option<usize>,
    /// `m − k`
    pub bound: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub kmeans_opt: Option<Rational>,
    pub lloyd: f64,
    pub kmeanspp: f64,
    pub local_search: f64,
    pub cover_size: usize,
    pub cover_valid: bool,
    /// Slack of the clustering the cover was extracted from.
    #[serde(serialize_with = "ser_ratio")]
    pub delta: Option<Rational>,
}

impl GapRow {
    pub const TSV_HEADER: &'static str =
        "graph_id\tn\tm\tk\tvc_exact\tm_minus_k\tkmeans_opt\tlloyd\tkmeanspp_lloyd\tlocal_search\tcover_size\tdelta";

    pub fn to_tsv(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}",
            self.graph_id,
            self.n,
            self.m,
            self.k,
            opt(self.vc_exact.map(|v| v.to_string())),
            self.bound,
            opt(self.kmeans_opt.map(|v| v.to_string())),
            self.lloyd,
            self.kmeanspp,
            self.local_search,
            self.cover_size,
            opt(self.delta.map(|v| v.to_string())),
        )
    }

    /// `kmeans_opt ≥ m − k`, heuristics ≥ `kmeans_opt`, cover valid.
    pub fn consistent(&self) -> bool {
        let Some(opt) = self.kmeans_opt else { return self.cover_valid };
        let opt_f = *opt.numer() as f64 / *opt.denom() as f64;
        self.cover_valid
            && opt >= Rational::from_integer(self.bound as i64)
            && [self.lloyd, self.kmeanspp, self.local_search].iter().all(|&c| c >= opt_f - COST_SLACK)
    }
}

/// One row per graph whose `k` resolves; rows come back sorted by graph id.
pub fn gap_report(graphs: &[(String, Graph)], rule: KRule, cfg: &RunConfig) -> Result<Vec<GapRow>> {
    let mut rows = Vec::new();
    for (id, g) in graphs {
        if g.m() == 0 {
            continue;
        }
        let vc = cfg.vc_oracle_ok(g).then(|| min_vertex_cover(g)).transpose()?.map(|r| r.value);
        let Some(k) = rule.resolve(g, vc) else { continue };
        let inst = build_kmeans_instance(g, k)?;
        let seed = derive_seed(cfg.seed, id);
        let runs = heuristics(&inst, seed)?;
        let opt = optimal_partition(g, k, cfg);
        let source = match &opt {
            Some((_, c)) => c.clone(),
            None => runs[2].1.assignment.clone(),
        };
        let x = extract_cover(g, &source)?;
        rows.push(GapRow {
            graph_id: id.clone(),
            n: g.n(),
            m: g.m(),
            k,
            vc_exact: vc,
            bound: g.m() - k,
            kmeans_opt: opt.map(|(c, _)| c),
            lloyd: runs[0].1.cost,
            kmeanspp: runs[1].1.cost,
            local_search: runs[2].1.cost,
            cover_size: x.cover.len(),
            cover_valid: x.cover.valid,
            delta: Some(x.delta),
        });
    }
    rows.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
    Ok(rows)
}

pub fn render_gap_report(rows: &[GapRow], format: OutputFormat) -> String {
    let mut out = String::new();
    if format == OutputFormat::Tsv {
        out.push_str(GapRow::TSV_HEADER);
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

/// Every regular, non-hidden file in `dir`, parsed as an edge list and keyed
/// by file stem, sorted by id.
pub fn load_graph_dir(dir: &Path) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("");
        if !path.is_file() || name.starts_with('.') {
            continue;
        }
        let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name).to_string();
        let text = std::fs::read_to_string(&path)?;
        let g = Graph::parse(&text).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Parse { line, msg: format!("{}: {msg}", path.display()) },
            other => other,
        })?;
        out.push((id, g));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Writes `graphs` into `dir` as `<id>.edges`.
pub fn write_graph_dir(dir: &Path, graphs: &[(String, Graph)]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (id, g) in graphs {
        std::fs::write(dir.join(format!("{id}.edges")), g.to_edge_list())?;
    }
    Ok(())
}

/// All connected triangle-free graphs on `2..=max_n` vertices, with ids
/// `tf<n>_<index>`.
pub fn triangle_free_suite(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let gs = crate::graph::enumerate::connected_graphs(n);
        for (i, g) in gs.into_iter().filter(Graph::is_triangle_free).enumerate() {
            out.push((format!("tf{n}_{i:03}"), g));
        }
    }
    out
}
