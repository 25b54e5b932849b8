//! Text formats for clusterings, k-means instances, covers and spectral
//! rows. Graphs use the edge-list format in [`crate::graph`].
//!
//! ```text
//! clustering <num_points> <k>        kmeans <num_points> <dim> <k>
//! <point> <cluster>                  <x_1> ... <x_dim>        (per point)
//!                                    prov <point> <u> <v>     (optional)
//! cover <n> <size>
//! v <vertex>
//! ```
//!
//! Points are 0-indexed; clusters and graph vertices are 1-indexed. Lines
//! starting with `c` and blank lines are ignored on input.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{canon, Edge, Vertex};
use crate::kmeans::PointSet;
use crate::reduction::{Clustering, KMeansInstance};
use crate::spectral::SpectralReport;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t: Vec<&str> = l.split_whitespace().collect();
        match t.first() {
            None | Some(&"c") => None,
            Some(_) => Some((i + 1, t)),
        }
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, format!("bad {what} '{tok}'")))
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &str,
    arity: usize,
) -> Result<(usize, Vec<usize>)> {
    let (ln, t) = lines.next().ok_or_else(|| perr(1, format!("missing '{keyword}' header")))?;
    if t[0] != keyword || t.len() != arity + 1 {
        return Err(perr(ln, format!("expected '{keyword}' header with {arity} fields")));
    }
    let vals = t[1..].iter().map(|s| num(ln, s, "header field")).collect::<Result<_>>()?;
    Ok((ln, vals))
}

pub fn write_clustering(c: &Clustering) -> String {
    let mut out = format!("clustering {} {}\n", c.num_points(), c.k());
    for (p, &cl) in c.assignment().iter().enumerate() {
        out.push_str(&format!("{p} {}\n", cl + 1));
    }
    out
}

pub fn parse_clustering(text: &str) -> Result<Clustering> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "clustering", 2)?;
    let (num_points, k) = (h[0], h[1]);
    if k == 0 {
        return Err(perr(hl, "k must be positive"));
    }
    let mut assignment = vec![usize::MAX; num_points];
    for (ln, t) in lines {
        if t.len() != 2 {
            return Err(perr(ln, "expected '<point> <cluster>'"));
        }
        let p: usize = num(ln, t[0], "point index")?;
        let c: usize = num(ln, t[1], "cluster id")?;
        if p >= num_points {
            return Err(perr(ln, format!("point {p} outside 0..{num_points}")));
        }
        if c == 0 || c > k {
            return Err(perr(ln, format!("cluster {c} outside 1..={k}")));
        }
        if assignment[p] != usize::MAX {
            return Err(perr(ln, format!("point {p} assigned twice")));
        }
        assignment[p] = c - 1;
    }
    if let Some(p) = assignment.iter().position(|&c| c == usize::MAX) {
        return Err(Error::UnassignedPoint(p));
    }
    Clustering::new(k, assignment)
}

pub fn write_kmeans_instance(inst: &KMeansInstance) -> String {
    let mut out = format!("kmeans {} {} {}\n", inst.num_points(), inst.dim(), inst.k);
    for p in inst.points.points() {
        let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(prov) = &inst.provenance {
        for (p, &(u, v)) in prov.iter().enumerate() {
            out.push_str(&format!("prov {p} {} {}\n", u + 1, v + 1));
        }
    }
    out
}

pub fn parse_kmeans_instance(text: &str) -> Result<KMeansInstance> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "kmeans", 3)?;
    let (num_points, dim, k) = (h[0], h[1], h[2]);
    if num_points == 0 || dim == 0 || k == 0 {
        return Err(perr(hl, "num_points, dim and k must be positive"));
    }
    let mut points = Vec::with_capacity(num_points);
    let mut prov: Vec<Option<Edge>> = vec![None; num_points];
    let mut any_prov = false;
    for (ln, t) in lines {
        if t[0] == "prov" {
            if t.len() != 4 {
                return Err(perr(ln, "expected 'prov <point> <u> <v>'"));
            }
            let p: usize = num(ln, t[1], "point index")?;
            let u: usize = num(ln, t[2], "vertex")?;
            let v: usize = num(ln, t[3], "vertex")?;
            if p >= num_points {
                return Err(perr(ln, format!("point {p} outside 0..{num_points}")));
            }
            if u == 0 || v == 0 || u == v {
                return Err(perr(ln, "provenance endpoints must be distinct and 1-based"));
            }
            if prov[p].replace(canon(u - 1, v - 1)).is_some() {
                return Err(perr(ln, format!("point {p} has two provenance lines")));
            }
            any_prov = true;
            continue;
        }
        if points.len() == num_points {
            return Err(perr(ln, "more coordinate lines than points"));
        }
        if t.len() != dim {
            return Err(perr(ln, format!("expected {dim} coordinates, found {}", t.len())));
        }
        let row = t.iter().map(|s| num::<f64>(ln, s, "coordinate")).collect::<Result<Vec<_>>>()?;
        if row.iter().any(|x| !x.is_finite()) {
            return Err(perr(ln, "coordinates must be finite"));
        }
        points.push(row);
    }
    if points.len() != num_points {
        return Err(perr(hl, format!("header promises {num_points} points, found {}", points.len())));
    }
    let provenance = if any_prov {
        let p = prov.iter().position(Option::is_none);
        if let Some(p) = p {
            return Err(perr(hl, format!("point {p} lacks provenance")));
        }
        Some(prov.into_iter().map(Option::unwrap).collect())
    } else {
        None
    };
    Ok(KMeansInstance { points: PointSet::new(points)?, k, provenance })
}

pub fn write_cover(n: usize, vertices: &[Vertex]) -> String {
    let mut out = format!("cover {n} {}\n", vertices.len());
    for &v in vertices {
        out.push_str(&format!("v {}\n", v + 1));
    }
    out
}

/// Returns `(n, vertices)` with vertices 0-based and sorted.
pub fn parse_cover(text: &str) -> Result<(usize, Vec<Vertex>)> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "cover", 2)?;
    let (n, size) = (h[0], h[1]);
    let mut vs = Vec::with_capacity(size);
    for (ln, t) in lines {
        if t.len() != 2 || t[0] != "v" {
            return Err(perr(ln, "expected 'v <vertex>'"));
        }
        let v: usize = num(ln, t[1], "vertex")?;
        if v == 0 || v > n {
            return Err(perr(ln, format!("vertex {v} outside 1..={n}")));
        }
        vs.push(v - 1);
    }
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != size {
        return Err(perr(hl, format!("header promises {size} distinct vertices, found {}", vs.len())));
    }
    Ok((n, vs))
}

/// One row of a spectral report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralRow {
    pub graph_id: String,
    pub n: usize,
    /// `None` for irregular graphs.
    pub d: Option<usize>,
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma_n: f64,
    pub rho: f64,
}

impl SpectralRow {
    pub const TSV_HEADER: &'static str = "graph_id\tn\td\tsigma1\tsigma2\tsigma_n\trho";

    pub fn new(graph_id: impl Into<String>, rep: &SpectralReport) -> Self {
        Self {
            graph_id: graph_id.into(),
            n: rep.eigenvalues.len(),
            d: rep.regular_degree,
            sigma1: rep.sigma1(),
            sigma2: rep.sigma2(),
            sigma_n: rep.sigma_n(),
            rho: rep.rho,
        }
    }

    pub fn to_tsv(&self) -> String {
        let d = self.d.map_or("-".to_string(), |d| d.to_string());
        format!(
            "{}\t{}\t{}\t{:.10}\t{:.10}\t{:.10}\t{:.10}",
            self.graph_id, self.n, d, self.sigma1, self.sigma2, self.sigma_n, self.rho
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::reduction::build_kmeans_instance;
    use crate::spectral::spectral_radius;

    #[test]
    fn clustering_round_trip() {
        let c = Clustering::new(3, vec![0, 2, 2, 1]).unwrap();
        let text = write_clustering(&c);
        assert_eq!(text, "clustering 4 3\n0 1\n1 3\n2 3\n3 2\n");
        assert_eq!(parse_clustering(&text).unwrap(), c);
    }

    #[test]
    fn clustering_errors() {
        assert!(matches!(parse_clustering("clustering 2 1\n0 1\n"), Err(Error::UnassignedPoint(1))));
        assert!(matches!(parse_clustering("clustering 1 1\n0 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_clustering("clustering 1 1\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_clustering("kmeans 1 1 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn reduction_instance_round_trip() {
        let inst = build_kmeans_instance(&Graph::path(4), 2).unwrap();
        let text = write_kmeans_instance(&inst);
        assert!(text.starts_with("kmeans 3 4 2\n1 1 0 0\n"));
        assert!(text.contains("prov 2 3 4\n"));
        assert_eq!(parse_kmeans_instance(&text).unwrap(), inst);

        let bare = parse_kmeans_instance("c plain points\nkmeans 2 1 1\n0.5\n-1.25\n").unwrap();
        assert!(bare.provenance.is_none());
        assert_eq!(bare.points.point(1), &[-1.25]);
    }

    #[test]
    fn instance_errors() {
        assert!(parse_kmeans_instance("kmeans 2 1 1\n0\n").is_err());
        assert!(parse_kmeans_instance("kmeans 1 2 1\n0\n").is_err());
        assert!(parse_kmeans_instance("kmeans 2 1 1\n0\n1\nprov 0 1 2\n").is_err());
        assert!(parse_kmeans_instance("kmeans 1 1 1\nnan\n").is_err());
    }

    #[test]
    fn cover_round_trip() {
        let text = write_cover(5, &[1, 3, 4]);
        assert_eq!(text, "cover 5 3\nv 2\nv 4\nv 5\n");
        assert_eq!(parse_cover(&text).unwrap(), (5, vec![1, 3, 4]));
        assert!(parse_cover("cover 3 1\nv 4\n").is_err());
        assert!(parse_cover("cover 3 2\nv 1\n").is_err());
    }

    #[test]
    fn spectral_rows() {
        let row = SpectralRow::new("petersen", &spectral_radius(&Graph::petersen()).unwrap());
        assert_eq!(row.d, Some(3));
        assert!(row.to_tsv().starts_with("petersen\t10\t3\t3.0000000000\t1.0000000000\t-2.0000000000\t2.0000000000"));
        let json = serde_json::to_string(&row).unwrap();
        assert!(json.contains("\"rho\":2.0") || json.contains("\"rho\":1.99999"));
        let irregular = SpectralRow::new("p3", &spectral_radius(&Graph::path(3)).unwrap());
        assert!(irregular.to_tsv().starts_with("p3\t3\t-\t"));
    }
}
